#![allow(dead_code)]

use morsify::exact::{int, FieldElement, NumberField, Rational};
use morsify::{BivarPoly, PuiseuxPoly, RootSystem};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rational(rng: &mut impl Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-20..=20);
        let d: i64 = rng.gen_range(1..=20);
        if !nonzero || n != 0 {
            return Rational::new(n.into(), d.into());
        }
    }
}

/// Positive exponent with denominator at most 4, below 4.
pub fn exponent(rng: &mut impl Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=4);
    let p: i64 = rng.gen_range(1..=3 * q);
    Rational::new(p.into(), q.into())
}

/// Terms with exponents above `floor`, rational coefficients.
fn tail(rng: &mut impl Rng, floor: &Rational, count: usize) -> Vec<(Rational, Rational)> {
    (0..count)
        .map(|_| (floor + exponent(rng), rational(rng, true)))
        .collect()
}

fn truncate(terms: &[(Rational, Rational)], cut: &Rational) -> Vec<(Rational, Rational)> {
    terms.iter().filter(|(e, _)| e < cut).cloned().collect()
}

/// A random root system over the Gaussian numbers with up to `max_real`
/// real roots and `max_pairs` conjugate pairs, plus a unit. Roots often
/// share initial segments so that trees have deep, wide vertices.
/// Returns `None` for draws that fail validation (e.g. repeated roots).
pub fn random_problem(rng: &mut impl Rng, max_real: usize, max_pairs: usize) -> Option<(RootSystem, BivarPoly)> {
    let f = NumberField::gaussian();
    let n = rng.gen_range(2..=max_real);
    let mut reals: Vec<Vec<(Rational, Rational)>> = Vec::new();
    for _ in 0..n {
        let terms = match reals.choose(rng) {
            Some(parent) if rng.gen_bool(0.6) && !parent.is_empty() => {
                let (cut, _) = parent.choose(rng).unwrap().clone();
                let mut t = truncate(parent, &cut);
                if rng.gen_bool(0.3) {
                    // same exponent, different coefficient
                    t.push((cut.clone(), rational(rng, true)));
                }
                let k = if rng.gen_bool(0.25) { 2 } else { 1 };
                t.extend(tail(rng, &cut, k));
                t
            }
            _ => {
                if rng.gen_bool(0.1) {
                    Vec::new()
                } else {
                    let k = if rng.gen_bool(0.25) { 2 } else { 1 };
                    tail(rng, &Rational::from_integer(0.into()), k)
                }
            }
        };
        reals.push(terms);
    }
    let real: Vec<PuiseuxPoly> = reals.iter().map(|t| PuiseuxPoly::real(&f, t.iter().cloned()).unwrap()).collect();

    let mut complex = Vec::new();
    for _ in 0..rng.gen_range(0..=max_pairs) {
        let mut terms: Vec<(Rational, FieldElement)> = match reals.choose(rng) {
            Some(parent) if rng.gen_bool(0.5) && !parent.is_empty() => {
                let (cut, _) = parent.choose(rng).unwrap().clone();
                truncate(parent, &cut)
                    .into_iter()
                    .map(|(e, c)| (e, FieldElement::from_rational(&f, c)))
                    .collect()
            }
            _ => Vec::new(),
        };
        let floor = terms.last().map(|(e, _)| e.clone()).unwrap_or_else(|| int(0));
        let e = &floor + exponent(rng);
        let im = rational(rng, true);
        let re = rational(rng, false);
        terms.push((e.clone(), f.element(vec![re, im])));
        if rng.gen_bool(0.3) {
            terms.push((&e + exponent(rng), f.element(vec![rational(rng, false), rational(rng, false)])));
        }
        let eta = PuiseuxPoly::from_terms(&f, terms).unwrap();
        let m = if rng.gen_bool(0.2) { 2 } else { 1 };
        complex.push((eta.conj(), m));
        complex.push((eta, m));
    }
    let rs = RootSystem::new(&f, real, complex).ok()?;

    let c0 = FieldElement::from_rational(&f, rational(rng, true));
    let mut unit = vec![PuiseuxPoly::constant(c0)];
    if rng.gen_bool(0.2) {
        unit[0] = &unit[0] + &PuiseuxPoly::real(&f, [(exponent(rng), rational(rng, true))]).unwrap();
        unit.push(PuiseuxPoly::real(&f, [(exponent(rng), rational(rng, false))]).unwrap());
    }
    Some((rs, BivarPoly::from_coeffs(&f, unit)))
}
