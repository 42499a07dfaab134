//! Finite Newton-Puiseux polynomials in `x` and polynomials in `y` over them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{FieldElement, FieldError, NumberField, Rational};
use crate::treebuild::RootSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("initial coefficient of the zero series is undefined")]
    ZeroSeries,
    #[error("the two series are equal")]
    EqualSeries,
    #[error("negative exponent {0}")]
    NegativeExponent(Rational),
    #[error("evaluation point {0} must be positive")]
    NonPositivePoint(Rational),
    #[error("x0^{exponent} is irrational at x0 = {point}")]
    IncompatiblePoint { point: Rational, exponent: Rational },
    #[error("unit vanishes at the origin")]
    UnitVanishes,
    #[error("coefficient of y^{0} in the reconstructed product is not real")]
    NonRealProduct(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A rational exponent or `+inf`; used both for valuations and for the
/// exponent function on contact trees. `Infinity` sorts above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(Rational),
    Infinity,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::Finite(Rational::zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Exponent::Finite(r) => Some(r),
            Exponent::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl From<Rational> for Exponent {
    fn from(r: Rational) -> Self {
        Exponent::Finite(r)
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinity,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{r}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

/// `x0^e` for positive rational `x0`, when it is rational.
pub fn rational_pow(x0: &Rational, e: &Rational) -> Option<Rational> {
    let q = e.denom().to_u32()?;
    let p = e.numer().to_i32()?;
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(q);
        (num_traits::pow(r.clone(), q as usize) == *n).then_some(r)
    };
    let base = Rational::new(root(x0.numer())?, root(x0.denom())?);
    Some(num_traits::pow::Pow::pow(&base, p))
}

/// `sum c_e x^e` over finitely many non-negative rational exponents with
/// non-zero coefficients in a [`NumberField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Rational, FieldElement>,
    field: NumberField,
}

impl PuiseuxPoly {
    pub fn zero(field: &NumberField) -> Self {
        PuiseuxPoly { terms: BTreeMap::new(), field: field.clone() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `c * x^e`. Panics on a negative exponent.
    pub fn monomial(c: FieldElement, e: Rational) -> Self {
        assert!(!e.is_negative(), "negative exponent {e}");
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PuiseuxPoly { terms, field }
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms(
        field: &NumberField,
        terms: impl IntoIterator<Item = (Rational, FieldElement)>,
    ) -> Result<Self, PuiseuxError> {
        let mut out = PuiseuxPoly::zero(field);
        for (e, c) in terms {
            if e.is_negative() {
                return Err(PuiseuxError::NegativeExponent(e));
            }
            if c.field() != field {
                return Err(FieldError::Mismatch.into());
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Real polynomial from `(exponent, rational coefficient)` pairs.
    pub fn real(
        field: &NumberField,
        terms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self, PuiseuxError> {
        Self::from_terms(field, terms.into_iter().map(|(e, c)| (e, FieldElement::from_rational(field, c))))
    }

    fn add_term(&mut self, e: Rational, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Rational) -> Option<&FieldElement> {
        self.terms.get(e)
    }

    /// Smallest exponent carrying a non-zero coefficient; `Infinity` for 0.
    pub fn val(&self) -> Exponent {
        match self.terms.keys().next() {
            Some(e) => Exponent::Finite(e.clone()),
            None => Exponent::Infinity,
        }
    }

    /// Initial coefficient, the coefficient at exponent `val(self)`.
    pub fn lc(&self) -> Result<&FieldElement, PuiseuxError> {
        self.terms.values().next().ok_or(PuiseuxError::ZeroSeries)
    }

    /// True when every coefficient is rational.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(FieldElement::is_rational)
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect();
        PuiseuxPoly { terms, field: self.field.clone() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = PuiseuxPoly::zero(&self.field);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = PuiseuxPoly::constant(FieldElement::one(&self.field));
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The same polynomial over `Q`, when every coefficient is rational.
    pub fn over_rationals(&self) -> Option<Self> {
        let q = NumberField::rationals();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), FieldElement::from_rational(&q, c.rational_value().ok()?));
        }
        Some(PuiseuxPoly { terms, field: q })
    }

    /// The same series over `field`; `self` must be over `Q`.
    pub(crate) fn lift_rational(&self, field: &NumberField) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), FieldElement::from_rational(field, c.rational_value().expect("rational coefficient"))))
            .collect();
        PuiseuxPoly { terms, field: field.clone() }
    }

    /// Least common multiple of the exponent denominators (1 for the zero polynomial).
    pub fn exponent_denominator_lcm(&self) -> BigInt {
        self.terms.keys().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// Compares in the real total order: `self < other` iff `lc(other - self) > 0`.
    /// `Equal` only when the polynomials coincide.
    pub fn real_cmp(&self, other: &Self) -> Result<Ordering, PuiseuxError> {
        let diff = other - self;
        match diff.terms.values().next() {
            None => Ok(Ordering::Equal),
            Some(c) => {
                let lead = c.rational_value()?;
                // the whole difference must be real for the order to make sense
                for c in diff.terms.values() {
                    c.rational_value()?;
                }
                Ok(if lead.is_positive() { Ordering::Less } else { Ordering::Greater })
            }
        }
    }

    /// Strict real order; errors when the polynomials are equal.
    pub fn real_less(&self, other: &Self) -> Result<bool, PuiseuxError> {
        match self.real_cmp(other)? {
            Ordering::Equal => Err(PuiseuxError::EqualSeries),
            o => Ok(o == Ordering::Less),
        }
    }

    /// Exact value at a positive rational `x0`, when every `x0^e` is rational.
    pub fn eval_exact(&self, x0: &Rational) -> Result<Rational, PuiseuxError> {
        if !x0.is_positive() {
            return Err(PuiseuxError::NonPositivePoint(x0.clone()));
        }
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let c = c.rational_value()?;
            let p = rational_pow(x0, e).ok_or_else(|| PuiseuxError::IncompatiblePoint {
                point: x0.clone(),
                exponent: e.clone(),
            })?;
            sum += c * p;
        }
        Ok(sum)
    }

    /// Value at `x = base^d`, where every exponent times `d` must be an integer.
    /// Avoids root extraction when the caller already knows a `d`-th root of the point.
    pub fn eval_at_power(&self, base: &Rational, d: u64) -> Result<Rational, PuiseuxError> {
        let d_big = BigInt::from(d);
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let c = c.rational_value()?;
            let scaled = e * Rational::from_integer(d_big.clone());
            if !scaled.is_integer() {
                return Err(PuiseuxError::IncompatiblePoint {
                    point: num_traits::pow::Pow::pow(base, d),
                    exponent: e.clone(),
                });
            }
            let k = scaled.to_integer().to_u64().expect("exponent fits in u64");
            sum += c * num_traits::pow::Pow::pow(base, k);
        }
        Ok(sum)
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        PuiseuxPoly { terms, field: self.field.clone() }
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        // Exponents are scaled to integers over a common denominator.
        let l = self.exponent_denominator_lcm().lcm(&rhs.exponent_denominator_lcm());
        let scaled = |p: &'_ PuiseuxPoly| -> Option<Vec<i64>> {
            p.terms.keys().map(|e| (e * Rational::from_integer(l.clone())).to_integer().to_i64()).collect()
        };
        if let (Some(ka), Some(kb)) = (scaled(self), scaled(rhs)) {
            let mut acc: BTreeMap<i64, FieldElement> = BTreeMap::new();
            for (i, a) in ka.iter().zip(self.terms.values()) {
                for (j, b) in kb.iter().zip(rhs.terms.values()) {
                    let c = a * b;
                    match acc.entry(i + j) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(c);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().add_assign(&c),
                    }
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Rational::new(k.into(), l.clone()), c))
                .collect();
            return PuiseuxPoly { terms, field: self.field.clone() };
        }
        let mut out = PuiseuxPoly::zero(&self.field);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

/// Writes `c*x^(e)` terms joined by signs, in the input-file syntax.
impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let coeff = if c.is_rational() {
                let r = &c.coeffs()[0];
                if k > 0 {
                    f.write_str(if r.is_negative() { " - " } else { " + " })?;
                } else if r.is_negative() {
                    f.write_str("-")?;
                }
                r.abs().to_string()
            } else {
                if k > 0 {
                    f.write_str(" + ")?;
                }
                format!("({c})")
            };
            if e.is_zero() {
                f.write_str(&coeff)?;
            } else {
                if coeff != "1" {
                    write!(f, "{coeff}*")?;
                }
                if e.is_one() {
                    f.write_str("x")?;
                } else if e.is_integer() {
                    write!(f, "x^{e}")?;
                } else {
                    write!(f, "x^({e})")?;
                }
            }
        }
        Ok(())
    }
}

/// `sum_k a_k(x) y^k` with Puiseux-polynomial coefficients; the highest
/// stored coefficient is non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    y_coeffs: Vec<PuiseuxPoly>,
    field: NumberField,
}

impl BivarPoly {
    pub fn zero(field: &NumberField) -> Self {
        BivarPoly { y_coeffs: Vec::new(), field: field.clone() }
    }

    pub fn from_coeffs(field: &NumberField, mut y_coeffs: Vec<PuiseuxPoly>) -> Self {
        while y_coeffs.last().is_some_and(PuiseuxPoly::is_zero) {
            y_coeffs.pop();
        }
        BivarPoly { y_coeffs, field: field.clone() }
    }

    pub fn constant(c: PuiseuxPoly) -> Self {
        let field = c.field().clone();
        Self::from_coeffs(&field, vec![c])
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[PuiseuxPoly] {
        &self.y_coeffs
    }

    /// Coefficient of `y^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> PuiseuxPoly {
        self.y_coeffs.get(k).cloned().unwrap_or_else(|| PuiseuxPoly::zero(&self.field))
    }

    /// Value at `x = y = 0`.
    pub fn constant_term(&self) -> FieldElement {
        self.y_coeffs
            .first()
            .and_then(|c| c.coeff(&Rational::zero()).cloned())
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_real(&self) -> bool {
        self.y_coeffs.iter().all(PuiseuxPoly::is_real)
    }

    /// Multiplies by the linear factor `y - root`.
    pub fn mul_linear(&self, root: &PuiseuxPoly) -> Self {
        let n = self.y_coeffs.len();
        let mut out = vec![PuiseuxPoly::zero(&self.field); n + 1];
        for (k, a) in self.y_coeffs.iter().enumerate() {
            out[k + 1] = &out[k + 1] + a;
            out[k] = &out[k] - &(a * root);
        }
        Self::from_coeffs(&self.field, out)
    }

    /// Reconstructs `u * prod (y - xi_i) * prod (y - eta_l)^m_l` and certifies
    /// that the expansion has real coefficients.
    pub fn product_from_roots(rs: &RootSystem, unit: &BivarPoly) -> Result<Self, PuiseuxError> {
        let u0 = unit.constant_term();
        if u0.is_zero() {
            return Err(PuiseuxError::UnitVanishes);
        }
        if !u0.is_rational() {
            return Err(PuiseuxError::NonRealProduct(0));
        }
        if unit.field() != rs.field() {
            return Err(FieldError::Mismatch.into());
        }
        // Each conjugate pair collapses to a real quadratic, so the expansion
        // runs over Q whenever the unit does.
        let Some(mut f) = unit.over_rationals() else {
            return Self::product_in_field(rs, unit);
        };
        for xi in rs.real_roots() {
            f = f.mul_linear(&xi.over_rationals().expect("real roots are rational"));
        }
        let complex = rs.complex_roots();
        for (l, eta) in complex.iter().enumerate() {
            let c = rs.conjugate_index(l);
            if c < l {
                continue;
            }
            if c == l {
                return Self::product_in_field(rs, unit);
            }
            let pair = Self::constant(PuiseuxPoly::constant(FieldElement::one(rs.field())))
                .mul_linear(&eta.series)
                .mul_linear(&complex[c].series);
            let Some(pair) = pair.over_rationals() else {
                return Self::product_in_field(rs, unit);
            };
            for _ in 0..eta.multiplicity {
                f = &f * &pair;
            }
        }
        Ok(f)
    }

    fn product_in_field(rs: &RootSystem, unit: &BivarPoly) -> Result<Self, PuiseuxError> {
        let mut f = unit.clone();
        for xi in rs.real_roots() {
            f = f.mul_linear(xi);
        }
        for eta in rs.complex_roots() {
            for _ in 0..eta.multiplicity {
                f = f.mul_linear(&eta.series);
            }
        }
        if let Some(k) = f.y_coeffs.iter().position(|c| !c.is_real()) {
            return Err(PuiseuxError::NonRealProduct(k));
        }
        Ok(f)
    }

    /// Termwise primitive in `y` with zero constant of integration.
    pub fn integrate_y(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![PuiseuxPoly::zero(&self.field)];
        for (k, a) in self.y_coeffs.iter().enumerate() {
            let inv = Rational::new(BigInt::one(), BigInt::from(k + 1));
            out.push(a.scale(&FieldElement::from_rational(&self.field, inv)));
        }
        Self::from_coeffs(&self.field, out)
    }

    /// Substitutes `y := xi` and expands (Horner scheme).
    /// A polynomial over `Q` may be composed with a series over any field.
    pub fn compose(&self, xi: &PuiseuxPoly) -> PuiseuxPoly {
        if self.field != xi.field && self.field == NumberField::rationals() {
            if let Some(q) = xi.over_rationals() {
                return self.compose(&q);
            }
            let lifted = self.y_coeffs.iter().map(|c| c.lift_rational(&xi.field)).collect();
            return BivarPoly::from_coeffs(&xi.field, lifted).compose(xi);
        }
        let mut acc = PuiseuxPoly::zero(&self.field);
        for a in self.y_coeffs.iter().rev() {
            acc = &(&acc * xi) + a;
        }
        acc
    }

    /// Exact value at `(x0, y0)`.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Result<Rational, PuiseuxError> {
        let mut acc = Rational::zero();
        for a in self.y_coeffs.iter().rev() {
            acc = acc * y0 + a.eval_exact(x0)?;
        }
        Ok(acc)
    }

    /// The same polynomial over `Q`, when every coefficient is rational.
    pub fn over_rationals(&self) -> Option<Self> {
        let coeffs = self.y_coeffs.iter().map(PuiseuxPoly::over_rationals).collect::<Option<Vec<_>>>()?;
        Some(BivarPoly::from_coeffs(&NumberField::rationals(), coeffs))
    }

    /// Lcm of the denominators of every `x`-exponent.
    pub fn exponent_denominator_lcm(&self) -> BigInt {
        self.y_coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.exponent_denominator_lcm()))
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.y_coeffs.len().max(rhs.y_coeffs.len());
        let out = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        BivarPoly::from_coeffs(&self.field, out)
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.y_coeffs.len().max(rhs.y_coeffs.len());
        let out = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        BivarPoly::from_coeffs(&self.field, out)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero(&self.field);
        }
        let mut out = vec![PuiseuxPoly::zero(&self.field); self.y_coeffs.len() + rhs.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            for (j, b) in rhs.y_coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BivarPoly::from_coeffs(&self.field, out)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, a) in self.y_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*y")?,
                _ => write!(f, "({a})*y^{k}")?,
            }
        }
        Ok(())
    }
}
