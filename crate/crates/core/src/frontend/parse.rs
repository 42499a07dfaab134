use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{FieldElement, FieldError, NumberField, Rational};
use crate::puiseux::{BivarPoly, PuiseuxError, PuiseuxPoly};
use crate::treebuild::{RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}: `t` is used but no field is declared")]
    FieldRequired { line: usize },
    #[error("line {line}: invalid field: {source}")]
    Field { line: usize, source: FieldError },
    #[error("line {line}: {source}")]
    Series { line: usize, source: PuiseuxError },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Output switches; not part of the input text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub oracle: bool,
    pub json: Option<PathBuf>,
    pub dot_dir: Option<PathBuf>,
    pub quiet: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub field: NumberField,
    pub unit: BivarPoly,
    pub roots: RootSystem,
    pub options: Options,
}

/// Monomial key `(t exponent, x exponent, y exponent)`.
type Key = (u32, Rational, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly(BTreeMap<Key, Rational>);

impl Poly {
    fn constant(c: Rational) -> Self {
        let mut p = Poly::default();
        p.add((0, Rational::zero(), 0), c);
        p
    }

    fn var(key: Key) -> Self {
        let mut p = Poly::default();
        p.add(key, Rational::one());
        p
    }

    fn add(&mut self, k: Key, c: Rational) {
        let e = self.0.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    fn plus(mut self, other: &Poly, sign: i64) -> Self {
        for (k, c) in &other.0 {
            self.add(k.clone(), c * Rational::from_integer(sign.into()));
        }
        self
    }

    fn times(&self, other: &Poly) -> Self {
        let mut out = Poly::default();
        for ((ta, xa, ya), ca) in &self.0 {
            for ((tb, xb, yb), cb) in &other.0 {
                out.add((ta + tb, xa + xb, ya + yb), ca * cb);
            }
        }
        out
    }

    fn uses(&self, pick: impl Fn(&Key) -> bool) -> bool {
        self.0.keys().any(pick)
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    /// column of `src[0]` in the original line, 1-based
    offset: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, offset: usize, line: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, offset, line }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> InputError {
        InputError::Syntax { line: self.line, column: self.offset + self.pos, expected: expected.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), InputError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("`{}`", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn uint(&mut self) -> Result<BigInt, InputError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// `n` or `n/d`.
    fn rational(&mut self) -> Result<Rational, InputError> {
        let n = self.uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.uint()?;
            if d.is_zero() {
                self.pos -= 1;
                return Err(self.err("a non-zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn small_uint(&mut self) -> Result<u32, InputError> {
        let save = self.pos;
        let n = self.uint()?;
        n.to_u32().ok_or_else(|| {
            self.pos = save;
            self.err("a small exponent")
        })
    }

    fn expr(&mut self) -> Result<Poly, InputError> {
        let mut acc = Poly::default();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let t = self.term()?;
            acc = acc.plus(&t, sign);
            sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                return Ok(acc);
            };
        }
    }

    fn term(&mut self) -> Result<Poly, InputError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.times(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, InputError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let e = if self.eat(b'^') {
                    if self.eat(b'(') {
                        let e = self.rational()?;
                        self.expect(b')')?;
                        e
                    } else {
                        Rational::from_integer(self.uint()?)
                    }
                } else {
                    Rational::one()
                };
                Ok(Poly::var((0, e, 0)))
            }
            Some(c @ (b't' | b'y')) => {
                self.pos += 1;
                let k = if self.eat(b'^') { self.small_uint()? } else { 1 };
                Ok(Poly::var(if c == b't' { (k, Rational::zero(), 0) } else { (0, Rational::zero(), k) }))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                if self.eat(b'^') {
                    let k = self.small_uint()?;
                    let mut out = Poly::constant(Rational::one());
                    for _ in 0..k {
                        out = out.times(&inner);
                    }
                    return Ok(out);
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.rational()?)),
            _ => Err(self.err("a number, `x`, `y`, `t` or `(`")),
        }
    }
}

fn parse_poly(src: &str, offset: usize, line: usize) -> Result<Poly, InputError> {
    let mut lx = Lexer::new(src, offset, line);
    let p = lx.expr()?;
    if !lx.at_end() {
        return Err(lx.err("an operator or end of expression"));
    }
    Ok(p)
}

enum Stmt {
    Field { minpoly: Poly, conj: Poly },
    Unit(Poly),
    Real(Poly),
    Complex(Poly, u32),
}

/// Splits `key = rest`; returns the key and the column where `rest` starts.
fn split_assignment(text: &str) -> Option<(&str, usize)> {
    let eq = text.find('=')?;
    Some((text[..eq].trim(), eq + 1))
}

fn univariate_t(p: &Poly, line: usize, col: usize, what: &str) -> Result<Vec<Rational>, InputError> {
    let mut out = Vec::new();
    for ((t, x, y), c) in &p.0 {
        if !x.is_zero() || *y != 0 {
            return Err(InputError::Syntax { line, column: col, expected: format!("{what} in `t` only") });
        }
        let t = *t as usize;
        if out.len() <= t {
            out.resize(t + 1, Rational::zero());
        }
        out[t] = c.clone();
    }
    Ok(out)
}

fn coeff_in(field: &NumberField, t_coeffs: &BTreeMap<u32, Rational>) -> FieldElement {
    let deg = t_coeffs.keys().max().map_or(0, |&k| k as usize);
    let mut v = vec![Rational::zero(); deg + 1];
    for (&k, c) in t_coeffs {
        v[k as usize] = c.clone();
    }
    field.element(v)
}

/// Groups by `(x exponent, y exponent)` into coefficients in the field.
fn to_field_terms(p: &Poly, field: &NumberField) -> BTreeMap<(u32, Rational), FieldElement> {
    let mut grouped: BTreeMap<(u32, Rational), BTreeMap<u32, Rational>> = BTreeMap::new();
    for ((t, x, y), c) in &p.0 {
        grouped.entry((*y, x.clone())).or_default().insert(*t, c.clone());
    }
    grouped.into_iter().map(|(k, tc)| (k, coeff_in(field, &tc))).collect()
}

fn to_series(p: &Poly, field: &NumberField, line: usize) -> Result<PuiseuxPoly, InputError> {
    let terms = to_field_terms(p, field);
    if terms.keys().any(|(y, _)| *y != 0) {
        return Err(InputError::Syntax { line, column: 1, expected: "a series in `x` (no `y`)".into() });
    }
    PuiseuxPoly::from_terms(field, terms.into_iter().map(|((_, x), c)| (x, c)))
        .map_err(|source| InputError::Series { line, source })
}

fn to_bivar(p: &Poly, field: &NumberField, line: usize) -> Result<BivarPoly, InputError> {
    let terms = to_field_terms(p, field);
    let deg = terms.keys().map(|(y, _)| *y as usize).max().unwrap_or(0);
    let mut rows: Vec<Vec<(Rational, FieldElement)>> = vec![Vec::new(); deg + 1];
    for ((y, x), c) in terms {
        rows[y as usize].push((x, c));
    }
    let coeffs = rows
        .into_iter()
        .map(|r| PuiseuxPoly::from_terms(field, r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|source| InputError::Series { line, source })?;
    Ok(BivarPoly::from_coeffs(field, coeffs))
}

/// Parses the line-oriented problem format and validates the root system.
pub fn parse_input(text: &str) -> Result<ProblemSpec, InputError> {
    let mut stmts: Vec<(usize, Stmt)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let syntax = |column: usize, expected: &str| InputError::Syntax { line, column, expected: expected.into() };

        if let Some(rest) = body.trim_start().strip_prefix("field") {
            let after = lead + "field".len();
            let colon = rest.find(':').ok_or_else(|| syntax(after + 1, "`t:`"))?;
            if rest[..colon].trim() != "t" {
                return Err(syntax(after + 1, "the generator name `t`"));
            }
            let spec = &rest[colon + 1..];
            let spec_col = after + colon + 2;
            let semi = spec.find(';').ok_or_else(|| syntax(spec_col + spec.len(), "`; conj = ...`"))?;
            let mut parts = Vec::new();
            for (part, col, key) in [(&spec[..semi], spec_col, "minpoly"), (&spec[semi + 1..], spec_col + semi + 1, "conj")] {
                let (k, rhs) = split_assignment(part).ok_or_else(|| syntax(col, &format!("`{key} =`")))?;
                if k != key {
                    return Err(syntax(col, &format!("`{key}`")));
                }
                parts.push(parse_poly(&part[rhs..], col + rhs, line)?);
            }
            let conj = parts.pop().unwrap();
            let minpoly = parts.pop().unwrap();
            stmts.push((line, Stmt::Field { minpoly, conj }));
            continue;
        }

        let (key, rhs) = split_assignment(body).ok_or_else(|| syntax(lead + 1, "`key = value`"))?;
        let rhs_col = rhs + 1;
        let stmt = match key {
            "unit" => Stmt::Unit(parse_poly(&body[rhs..], rhs_col, line)?),
            "real_root" => Stmt::Real(parse_poly(&body[rhs..], rhs_col, line)?),
            "complex_root" => {
                let rest = &body[rhs..];
                let (series, mult) = match rest.find(';') {
                    None => (rest, 1),
                    Some(semi) => {
                        let tail = &rest[semi + 1..];
                        let tail_col = rhs_col + semi + 1;
                        let (k, v) = split_assignment(tail).ok_or_else(|| syntax(tail_col, "`mult = <k>`"))?;
                        if k != "mult" {
                            return Err(syntax(tail_col, "`mult`"));
                        }
                        let mut lx = Lexer::new(&tail[v..], tail_col + v, line);
                        let m = lx.small_uint()?;
                        if !lx.at_end() || m == 0 {
                            return Err(syntax(tail_col + v, "a positive integer multiplicity"));
                        }
                        (&rest[..semi], m)
                    }
                };
                Stmt::Complex(parse_poly(series, rhs_col, line)?, mult)
            }
            _ => return Err(syntax(lead + 1, "`field`, `unit`, `real_root` or `complex_root`")),
        };
        stmts.push((line, stmt));
    }

    let mut field = None;
    for (line, s) in &stmts {
        if let Stmt::Field { minpoly, conj } = s {
            if field.is_some() {
                return Err(InputError::Syntax { line: *line, column: 1, expected: "a single field declaration".into() });
            }
            let m = univariate_t(minpoly, *line, 1, "minimal polynomial")?;
            let c = univariate_t(conj, *line, 1, "conjugation image")?;
            field = Some(NumberField::new(m, c).map_err(|source| InputError::Field { line: *line, source })?);
        }
    }
    let declared = field.is_some();
    let field = field.unwrap_or_else(NumberField::rationals);

    let mut unit = None;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for (line, s) in &stmts {
        let line = *line;
        let uses_t = |p: &Poly| p.uses(|k| k.0 > 0);
        match s {
            Stmt::Field { .. } => {}
            Stmt::Unit(p) => {
                if uses_t(p) && !declared {
                    return Err(InputError::FieldRequired { line });
                }
                if unit.is_some() {
                    return Err(InputError::Syntax { line, column: 1, expected: "a single unit".into() });
                }
                unit = Some(to_bivar(p, &field, line)?);
            }
            Stmt::Real(p) | Stmt::Complex(p, _) => {
                if uses_t(p) && !declared {
                    return Err(InputError::FieldRequired { line });
                }
                let series = to_series(p, &field, line)?;
                match s {
                    Stmt::Complex(_, m) => complex.push((series, *m)),
                    _ => real.push(series),
                }
            }
        }
    }
    let unit = unit.unwrap_or_else(|| BivarPoly::constant(PuiseuxPoly::constant(FieldElement::one(&field))));
    let roots = RootSystem::new(&field, real, complex)?;
    Ok(ProblemSpec { field, unit, roots, options: Options::default() })
}

impl ProblemSpec {
    /// Canonical text form; `parse_input` reads it back to an equal spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.field.minimal_polynomial() != [Rational::zero(), Rational::one()] {
            let mut m = String::new();
            crate::exact::write_poly_in(&mut m, self.field.minimal_polynomial(), "t").unwrap();
            let mut c = String::new();
            crate::exact::write_poly_in(&mut c, self.field.conjugation_image(), "t").unwrap();
            writeln!(out, "field t: minpoly = {m}; conj = {c}").unwrap();
        }
        writeln!(out, "unit = {}", self.unit).unwrap();
        for xi in self.roots.real_roots() {
            writeln!(out, "real_root = {xi}").unwrap();
        }
        for c in self.roots.complex_roots() {
            writeln!(out, "complex_root = {}; mult = {}", c.series, c.multiplicity).unwrap();
        }
        out
    }
}
