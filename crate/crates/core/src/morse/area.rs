use num_traits::Zero;

use crate::exact::Rational;
use crate::puiseux::{BivarPoly, Exponent, PuiseuxPoly};
use crate::treebuild::{build_contact_tree, build_embedded_trees, ContactTree, LeafLabel, RootSystem, VertexId};

use super::MorseError;

/// `S_r = F(xi_{r+1}) - F(xi_r)` with its valuation and initial coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaSeries {
    /// 1-based, `1 <= r <= n - 1`.
    pub index: usize,
    pub series: PuiseuxPoly,
    pub sigma: Rational,
    pub s: Rational,
    /// `xi_r ∧ xi_{r+1}` in the real contact tree of `rs`.
    pub wedge_vertex: VertexId,
}

/// `delta_i = F(xi_i)` for every real root, in real order.
pub fn critical_value_series(primitive: &BivarPoly, rs: &RootSystem) -> Vec<PuiseuxPoly> {
    rs.real_roots().iter().map(|xi| primitive.compose(xi)).collect()
}

/// The `n - 1` area series of `F` along consecutive real roots.
pub fn area_series(primitive: &BivarPoly, rs: &RootSystem) -> Result<Vec<AreaSeries>, MorseError> {
    if rs.n_real() < 2 {
        return Err(MorseError::TooFewRealRoots);
    }
    let tr = build_contact_tree(rs.real_roots())?;
    areas_of(&critical_value_series(primitive, rs), &tr)
}

/// Area series from precomputed critical values and the real tree they come from.
pub(crate) fn areas_of(deltas: &[PuiseuxPoly], tr: &ContactTree) -> Result<Vec<AreaSeries>, MorseError> {
    let mut out = Vec::with_capacity(deltas.len() - 1);
    for r in 0..deltas.len() - 1 {
        let series = &deltas[r + 1] - &deltas[r];
        let Exponent::Finite(sigma) = series.val() else {
            return Err(MorseError::EqualCriticalValueSeries(r + 1));
        };
        let s = series.lc()?.rational_value().map_err(crate::puiseux::PuiseuxError::from)?;
        let a = tr.leaf_vertex(LeafLabel::Real(r)).expect("leaf for every root");
        let b = tr.leaf_vertex(LeafLabel::Real(r + 1)).expect("leaf for every root");
        out.push(AreaSeries { index: r + 1, series, sigma, s, wedge_vertex: tr.wedge(a, b) });
    }
    Ok(out)
}

/// `T_C` with the real tree `T_R` extracted from it. Vertex ids of `real`
/// coincide with those of `build_contact_tree(rs.real_roots())`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedTrees {
    pub complex: ContactTree,
    pub real: ContactTree,
    pub real_to_complex: Vec<VertexId>,
}

impl EmbeddedTrees {
    pub fn new(rs: &RootSystem) -> Result<Self, MorseError> {
        let complex = build_embedded_trees(rs)?;
        let (real, real_to_complex) = complex.real_part();
        Ok(EmbeddedTrees { complex, real, real_to_complex })
    }
}

/// Integrated exponent at a vertex `p` of `T_R`: `E(p)` plus
/// `mult(gamma) * E(p ∧ gamma)` summed over every root `gamma`, real or not.
/// Conjugate leaves are visited one at a time.
pub fn sigma(trees: &EmbeddedTrees, p: VertexId) -> Rational {
    let tc = &trees.complex;
    let pc = trees.real_to_complex[p];
    let e = |v: VertexId| tc.exponent(v).finite().cloned().expect("wedges below a leaf have finite exponent");
    let mut total = e(pc);
    for leaf in tc.leaves() {
        let w = tc.wedge(pc, leaf);
        let m = tc.vertex(leaf).multiplicity;
        total += e(w) * Rational::from_integer(m.into());
    }
    debug_assert!(!total.is_zero() || pc == tc.root());
    total
}
