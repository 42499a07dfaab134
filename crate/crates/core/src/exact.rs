//! Exact scalars: arbitrary-precision rationals and a small quotient ring
//! `Q[t]/(m(t))` carrying a user-declared conjugation.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator. Number-field elements are coordinate
//! vectors in the basis `1, t, ..., t^(d-1)` and are reduced after every
//! operation, so equality and zero tests are plain coordinate comparisons.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("operands belong to different number fields")]
    Mismatch,
    #[error("element is not rational (non-zero coordinate on t^{0})")]
    NotRational(usize),
    #[error("minimal polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("conjugation does not map a root of the minimal polynomial to a root")]
    ConjugationNotHomomorphism,
    #[error("conjugation applied twice does not give back t")]
    ConjugationNotInvolution,
}

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    /// Coefficients low to high, monic, length `d + 1`.
    minpoly: Vec<Rational>,
    /// Image of `t` under conjugation, reduced, length `d`.
    conj: Vec<Rational>,
}

/// The ring `Q[t]/(m(t))` together with an involution fixing `Q`.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds `Q[t]/(minpoly)` with conjugation `t -> conj_image(t)`.
    ///
    /// Coefficient vectors run from the constant term upwards. The minimal
    /// polynomial is scaled to be monic; the conjugation image is reduced
    /// modulo it. Construction fails unless the conjugation is a ring
    /// endomorphism (`m(conj(t)) = 0`) and an involution.
    pub fn new(minpoly: Vec<Rational>, conj_image: Vec<Rational>) -> Result<Self, FieldError> {
        let mut minpoly = trim(minpoly);
        if minpoly.len() < 2 {
            return Err(FieldError::DegreeTooSmall);
        }
        let lead = minpoly.last().cloned().unwrap();
        if !lead.is_one() {
            for c in &mut minpoly {
                *c = &*c / &lead;
            }
        }
        let conj = reduce_mod(conj_image, &minpoly);
        let field = NumberField(Arc::new(FieldData { minpoly, conj }));

        let image = field.element(field.0.conj.clone());
        // m(conj(t)) must vanish in the quotient
        let mut acc = FieldElement::zero(&field);
        for c in field.0.minpoly.iter().rev() {
            acc = &(&acc * &image) + &FieldElement::from_rational(&field, c.clone());
        }
        if !acc.is_zero() {
            return Err(FieldError::ConjugationNotHomomorphism);
        }
        let twice = field.generator().conj().conj();
        if twice != field.generator() {
            return Err(FieldError::ConjugationNotInvolution);
        }
        Ok(field)
    }

    /// `Q` itself, presented as `Q[t]/(t)` with the identity conjugation.
    pub fn rationals() -> Self {
        static Q: std::sync::OnceLock<NumberField> = std::sync::OnceLock::new();
        Q.get_or_init(|| {
            NumberField(Arc::new(FieldData {
                minpoly: vec![Rational::zero(), Rational::one()],
                conj: vec![Rational::zero()],
            }))
        })
        .clone()
    }

    /// `Q(i)` as `Q[t]/(t^2 + 1)` with `t -> -t`.
    pub fn gaussian() -> Self {
        NumberField::new(vec![int(1), int(0), int(1)], vec![int(0), int(-1)])
            .expect("Q(i) is a valid field")
    }

    /// `Q(rho)`, `rho = exp(2 pi i / 3)`, as `Q[t]/(t^2 + t + 1)` with `t -> -1 - t`.
    pub fn eisenstein() -> Self {
        NumberField::new(vec![int(1), int(1), int(1)], vec![int(-1), int(-1)])
            .expect("Q(rho) is a valid field")
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.0.minpoly
    }

    pub fn conjugation_image(&self) -> &[Rational] {
        &self.0.conj
    }

    /// True for the degree-one presentation of `Q`.
    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn generator(&self) -> FieldElement {
        self.element(vec![Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary polynomial in `t` (constant term first) into the field.
    pub fn element(&self, poly: Vec<Rational>) -> FieldElement {
        FieldElement { coeffs: reduce_mod(poly, &self.0.minpoly), field: self.clone() }
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `poly` by the monic `modulus`, padded to length `deg(modulus)`.
fn reduce_mod(poly: Vec<Rational>, modulus: &[Rational]) -> Vec<Rational> {
    let d = modulus.len() - 1;
    let mut p = trim(poly);
    while p.len() > d {
        let lead = p.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = p.len() - d;
        for (k, m) in modulus[..d].iter().enumerate() {
            p[shift + k] -= &lead * m;
        }
    }
    p.resize(d, Rational::zero());
    p
}

/// An element of a [`NumberField`], always reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    coeffs: Vec<Rational>,
    field: NumberField,
}

impl FieldElement {
    pub fn zero(field: &NumberField) -> Self {
        FieldElement { coeffs: vec![Rational::zero(); field.degree()], field: field.clone() }
    }

    pub fn one(field: &NumberField) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &NumberField, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = r;
        FieldElement { coeffs, field: field.clone() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value on basis element `1`, provided every other coordinate vanishes.
    pub fn rational_value(&self) -> Result<Rational, FieldError> {
        match self.coeffs.iter().skip(1).position(|c| !c.is_zero()) {
            Some(k) => Err(FieldError::NotRational(k + 1)),
            None => Ok(self.coeffs[0].clone()),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FieldElement { coeffs, field: self.field.clone() })
    }

    /// In-place sum; panics on a field mismatch.
    pub(crate) fn add_assign(&mut self, other: &Self) {
        self.same_field(other).expect("field mismatch in addition");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FieldElement { coeffs, field: self.field.clone() })
    }

    /// Product reduced modulo the minimal polynomial.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let d = self.coeffs.len();
        if d == 1 {
            let coeffs = vec![&self.coeffs[0] * &other.coeffs[0]];
            return Ok(FieldElement { coeffs, field: self.field.clone() });
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElement { coeffs: reduce_mod(prod, &self.field.0.minpoly), field: self.field.clone() })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement { coeffs: self.coeffs.iter().map(|c| c * r).collect(), field: self.field.clone() }
    }

    /// Applies the field's conjugation: substitutes the image of `t` and reduces.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let image = FieldElement { coeffs: self.field.0.conj.clone(), field: self.field.clone() };
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &image) + &FieldElement::from_rational(&self.field, c.clone());
        }
        acc
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().map(|c| -c).collect(), field: self.field.clone() }
    }
}

/// Formats as a polynomial in `t`, e.g. `-1-t` or `1/2+3*t^2`. Rational
/// elements print as the bare rational.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly_in(f, &self.coeffs, "t")
    }
}

pub(crate) fn write_poly_in(f: &mut impl fmt::Write, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        first = false;
        match k {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if k == 1 {
                    f.write_str(var)?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
