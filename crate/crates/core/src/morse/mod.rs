//! Area series, the integrated exponent function, the injectivity condition,
//! the integrated planar structure, snakes and the discriminant tree.

mod area;
mod discriminant;
mod integration;
mod report;

use thiserror::Error;

use crate::exact::Rational;
use crate::puiseux::{Exponent, PuiseuxError};
use crate::treebuild::{RootError, TreeError};

pub use area::{area_series, critical_value_series, sigma, AreaSeries, EmbeddedTrees};
pub use discriminant::{check_theorem_b, discriminant_tree, TheoremB};
pub use integration::{
    check_injectivity, integrated_tree, integration_table, integration_tables, pairwise_signs, sign_of_difference,
    snake, Injectivity, InjectivityWitness, IntegrationTable, PairSign, Sign, Snake,
};
pub use report::{analyze, MorsificationReport};

/// Root and area indices carried by errors are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error("need at least two real roots")]
    TooFewRealRoots,
    #[error("critical values of xi_{0} and xi_{next} agree as series", next = .0 + 1)]
    EqualCriticalValueSeries(usize),
    #[error("the injectivity condition fails")]
    InjectivityRequired,
    #[error("the order of the critical values of xi_{0} and xi_{1} is not determined by initial coefficients")]
    IndeterminateSign(usize, usize),
    #[error("critical value series #{0} and #{1} coincide")]
    EqualDiscriminantRoots(usize, usize),
    #[error("sigma at the wedge of xi_{r} and xi_{next} is {sigma} but val(S_{r}) is {val}", next = .r + 1)]
    SigmaMismatch { r: usize, sigma: Rational, val: Exponent },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
}
