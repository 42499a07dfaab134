use std::cmp::Ordering;

use thiserror::Error;

use crate::exact::NumberField;
use crate::puiseux::{Exponent, PuiseuxError, PuiseuxPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("at least one real root is required")]
    NoRealRoots,
    #[error("{kind} root #{index} has non-positive valuation (constant term present)")]
    NonPositiveValuation { kind: &'static str, index: usize },
    #[error("real root #{0} has a non-rational coefficient")]
    RealRootNotRational(usize),
    #[error("real roots #{0} and #{1} coincide; the series is not right-reduced")]
    NotRightReduced(usize, usize),
    #[error("conjugate of complex root #{0} is missing or has a different multiplicity")]
    ConjugationClosureViolated(usize),
    #[error("complex root #{0} equals its own conjugate; list it as a real root")]
    SelfConjugate(usize),
    #[error("complex root #{0} is listed twice")]
    DuplicateComplexRoot(usize),
    #[error("complex root #{0} has multiplicity zero")]
    ZeroMultiplicity(usize),
    #[error("root #{0} is defined over a different number field")]
    FieldMismatch(usize),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRoot {
    pub series: PuiseuxPoly,
    pub multiplicity: u32,
}

/// Validated Newton-Puiseux roots of a right-reduced real series: distinct
/// real roots in increasing real order, and non-real roots with
/// multiplicities, closed under conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    field: NumberField,
    real: Vec<PuiseuxPoly>,
    complex: Vec<ComplexRoot>,
}

impl RootSystem {
    /// Validates and sorts. Indices in errors are 1-based positions in the
    /// lists as given.
    pub fn new(
        field: &NumberField,
        real: Vec<PuiseuxPoly>,
        complex: Vec<(PuiseuxPoly, u32)>,
    ) -> Result<Self, RootError> {
        if real.is_empty() {
            return Err(RootError::NoRealRoots);
        }
        for (i, r) in real.iter().enumerate() {
            if r.field() != field {
                return Err(RootError::FieldMismatch(i + 1));
            }
            if !positive_val(r) {
                return Err(RootError::NonPositiveValuation { kind: "real", index: i + 1 });
            }
            if !r.is_real() {
                return Err(RootError::RealRootNotRational(i + 1));
            }
        }
        for i in 0..real.len() {
            for j in i + 1..real.len() {
                if real[i] == real[j] {
                    return Err(RootError::NotRightReduced(i + 1, j + 1));
                }
            }
        }
        for (l, (eta, m)) in complex.iter().enumerate() {
            if eta.field() != field {
                return Err(RootError::FieldMismatch(l + 1));
            }
            if !positive_val(eta) {
                return Err(RootError::NonPositiveValuation { kind: "complex", index: l + 1 });
            }
            if *m == 0 {
                return Err(RootError::ZeroMultiplicity(l + 1));
            }
            if eta.conj() == *eta {
                return Err(RootError::SelfConjugate(l + 1));
            }
            if complex[..l].iter().any(|(other, _)| other == eta) {
                return Err(RootError::DuplicateComplexRoot(l + 1));
            }
        }
        for (l, (eta, m)) in complex.iter().enumerate() {
            let bar = eta.conj();
            if !complex.iter().any(|(other, k)| *other == bar && k == m) {
                return Err(RootError::ConjugationClosureViolated(l + 1));
            }
        }

        let mut real = real;
        // all real and pairwise distinct, so the comparator cannot fail
        real.sort_by(|a, b| a.real_cmp(b).unwrap_or(Ordering::Equal));
        let complex = complex
            .into_iter()
            .map(|(series, multiplicity)| ComplexRoot { series, multiplicity })
            .collect();
        Ok(RootSystem { field: field.clone(), real, complex })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// `xi_1 < ... < xi_n` in the real order.
    pub fn real_roots(&self) -> &[PuiseuxPoly] {
        &self.real
    }

    pub fn complex_roots(&self) -> &[ComplexRoot] {
        &self.complex
    }

    pub fn n_real(&self) -> usize {
        self.real.len()
    }

    /// Index of the conjugate of complex root `l`.
    pub fn conjugate_index(&self, l: usize) -> usize {
        let bar = self.complex[l].series.conj();
        self.complex.iter().position(|c| c.series == bar).expect("closure validated at construction")
    }

    /// Total degree in `y` of the reconstructed product (without the unit).
    pub fn degree(&self) -> usize {
        self.real.len() + self.complex.iter().map(|c| c.multiplicity as usize).sum::<usize>()
    }
}

fn positive_val(p: &PuiseuxPoly) -> bool {
    match p.val() {
        Exponent::Infinity => true,
        Exponent::Finite(v) => v > num_traits::Zero::zero(),
    }
}
