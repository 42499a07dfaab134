//! Recovers the snake of `F_{x0}` by exact evaluation at small rational
//! `x0`, without looking at trees or initial coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::morse::Snake;
use crate::puiseux::{BivarPoly, PuiseuxError};
use crate::treebuild::RootSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("need at least two real roots")]
    TooFewRealRoots,
    #[error("no stable snake after {0} samples")]
    NoStabilization(u32),
    #[error("exponent denominators are too large for exact sampling")]
    DenominatorTooLarge,
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// First `j` in `x0 = 2^(-jD)`.
    pub start: u32,
    /// Consecutive agreeing samples required.
    pub window: u32,
    /// A run ending at `j` is accepted only if the sample at `j + confirm_gap`
    /// shows the same snake; otherwise sampling resumes from there. 0 disables.
    pub confirm_gap: u32,
    pub max_samples: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { start: 1, window: 3, confirm_gap: 5, max_samples: 64 }
    }
}

/// Critical points `xi_i(x0)` and values `F(x0, xi_i(x0))` at one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub j: u32,
    pub x0: Rational,
    pub critical: Vec<(Rational, Rational)>,
}

impl Sample {
    /// The snake seen at this sample, or `None` when the points are not in
    /// real order or two points or two values tie.
    pub fn snake(&self) -> Option<Snake> {
        let c = &self.critical;
        if c.windows(2).any(|w| w[0].0 >= w[1].0) {
            return None;
        }
        let mut order: Vec<usize> = (0..c.len()).collect();
        order.sort_by(|&a, &b| c[a].1.cmp(&c[b].1));
        if order.windows(2).any(|w| c[w[0]].1 == c[w[1]].1) {
            return None;
        }
        Snake::from_target_order(&order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub snake: Snake,
    /// The last sample of the agreeing run.
    pub x0_used: Rational,
    pub stabilization_count: u32,
    pub samples_taken: u32,
    pub critical: Vec<(Rational, Rational)>,
}

/// Lcm of every exponent denominator in `F` and the real roots.
pub fn sampling_denominator(primitive: &BivarPoly, rs: &RootSystem) -> BigInt {
    rs.real_roots()
        .iter()
        .fold(primitive.exponent_denominator_lcm(), |acc, xi| acc.lcm(&xi.exponent_denominator_lcm()))
}

/// Evaluates at `x0 = 2^(-j d)`.
pub fn sample(primitive: &BivarPoly, rs: &RootSystem, j: u32, d: u64) -> Result<Sample, OracleError> {
    let base = Rational::new(BigInt::one(), BigInt::one() << j);
    let x0 = num_traits::pow::Pow::pow(&base, d);
    let coeffs: Vec<Rational> =
        primitive.coeffs().iter().map(|a| a.eval_at_power(&base, d)).collect::<Result<_, _>>()?;
    let mut critical = Vec::with_capacity(rs.n_real());
    for xi in rs.real_roots() {
        let y0 = xi.eval_at_power(&base, d)?;
        let value = coeffs.iter().rev().fold(Rational::zero(), |acc, a| acc * &y0 + a);
        critical.push((y0, value));
    }
    Ok(Sample { j, x0, critical })
}

pub fn numeric_snake(primitive: &BivarPoly, rs: &RootSystem) -> Result<OracleResult, OracleError> {
    numeric_snake_with(primitive, rs, OracleConfig::default())
}

/// Halves `x0` until the same snake is seen at `window` consecutive samples
/// and again `confirm_gap` steps further. Samples with ties or out-of-order
/// points break the run.
pub fn numeric_snake_with(
    primitive: &BivarPoly,
    rs: &RootSystem,
    config: OracleConfig,
) -> Result<OracleResult, OracleError> {
    if rs.n_real() < 2 {
        return Err(OracleError::TooFewRealRoots);
    }
    let d = sampling_denominator(primitive, rs).to_u64().ok_or(OracleError::DenominatorTooLarge)?;
    let mut run: Option<(Snake, u32)> = None;
    let mut j = config.start;
    let mut taken = 0;
    while taken < config.max_samples {
        let s = sample(primitive, rs, j, d)?;
        taken += 1;
        let Some(snake) = s.snake() else {
            run = None;
            j += 1;
            continue;
        };
        let count = match &run {
            Some((prev, c)) if *prev == snake => c + 1,
            _ => 1,
        };
        if count >= config.window {
            if config.confirm_gap == 0 {
                return Ok(OracleResult { snake, x0_used: s.x0, stabilization_count: count, samples_taken: taken, critical: s.critical });
            }
            if taken == config.max_samples {
                break;
            }
            j += config.confirm_gap;
            let c = sample(primitive, rs, j, d)?;
            taken += 1;
            match c.snake() {
                Some(again) if again == snake => {
                    return Ok(OracleResult {
                        snake,
                        x0_used: c.x0,
                        stabilization_count: count,
                        samples_taken: taken,
                        critical: c.critical,
                    });
                }
                other => run = other.map(|sn| (sn, 1)),
            }
        } else {
            run = Some((snake, count));
        }
        j += 1;
    }
    Err(OracleError::NoStabilization(config.max_samples))
}

pub fn cross_check(theorem_a: &Snake, oracle: &OracleResult) -> bool {
    *theorem_a == oracle.snake
}
