use std::collections::BTreeMap;

use crate::exact::Rational;
use crate::puiseux::{BivarPoly, Exponent, PuiseuxPoly};
use crate::treebuild::{wedge_map, ContactTree, RootSystem, VertexId, WedgeMap};

use super::area::areas_of;
use super::discriminant::tree_of_values;
use super::{
    check_injectivity, check_theorem_b, critical_value_series, integrated_tree,
    integration_tables, pairwise_signs, sigma, snake, AreaSeries, EmbeddedTrees, Injectivity, IntegrationTable,
    MorseError, PairSign, Snake, TheoremB,
};

/// Everything derived from one root system.
#[derive(Clone, Debug)]
pub struct MorsificationReport {
    pub roots: RootSystem,
    pub unit: BivarPoly,
    /// `f = u * prod (y - gamma)`.
    pub polar: BivarPoly,
    /// `F`, the `y`-primitive of `f` vanishing at `y = 0`.
    pub primitive: BivarPoly,
    pub trees: EmbeddedTrees,
    pub wedge_map: WedgeMap,
    pub areas: Vec<AreaSeries>,
    /// Integrated exponent at every internal vertex of `T_R`.
    pub sigma: BTreeMap<VertexId, Rational>,
    pub tables: Vec<IntegrationTable>,
    pub injectivity: Injectivity,
    pub signs: Vec<PairSign>,
    pub critical_values: Vec<PuiseuxPoly>,
    /// `None` when two critical value series coincide (only possible when
    /// injectivity fails).
    pub discriminant: Option<ContactTree>,
    pub integrated: Option<ContactTree>,
    pub snake: Option<Snake>,
    pub theorem_b: Option<TheoremB>,
}

impl MorsificationReport {
    pub fn real_tree(&self) -> &ContactTree {
        &self.trees.real
    }

    pub fn complex_tree(&self) -> &ContactTree {
        &self.trees.complex
    }
}

/// Runs the full analysis. Fails on inconsistent input and on a disagreement
/// between `sigma` and the valuation of an area series.
pub fn analyze(rs: &RootSystem, unit: &BivarPoly) -> Result<MorsificationReport, MorseError> {
    let polar = BivarPoly::product_from_roots(rs, unit)?;
    let primitive = polar.integrate_y();
    let trees = EmbeddedTrees::new(rs)?;
    let wm = wedge_map(&trees.real);
    let critical_values = critical_value_series(&primitive, rs);
    let areas = if rs.n_real() >= 2 { areas_of(&critical_values, &trees.real)? } else { Vec::new() };

    let sigma: BTreeMap<VertexId, Rational> =
        trees.real.internal_vertices().into_iter().map(|p| (p, sigma(&trees, p))).collect();
    for a in &areas {
        let s = &sigma[&a.wedge_vertex];
        if *s != a.sigma {
            return Err(MorseError::SigmaMismatch { r: a.index, sigma: s.clone(), val: Exponent::Finite(a.sigma.clone()) });
        }
    }

    let tables = integration_tables(&trees.real, &wm, &areas);
    let injectivity = check_injectivity(&tables);
    let signs = pairwise_signs(&trees.real, &tables, rs.n_real());
    let discriminant = match tree_of_values(&critical_values) {
        Ok(t) => Some(t),
        Err(e @ MorseError::EqualDiscriminantRoots(..)) if injectivity.passes() => return Err(e),
        Err(MorseError::EqualDiscriminantRoots(..)) => None,
        Err(e) => return Err(e),
    };

    let (integrated, snake, theorem_b) = if injectivity.passes() {
        let it = integrated_tree(&trees.real, &tables)?;
        let sn = snake(&it);
        let tb = discriminant.as_ref().map(|d| check_theorem_b(&it, &sigma, d));
        (Some(it), Some(sn), tb)
    } else {
        (None, None, None)
    };

    Ok(MorsificationReport {
        roots: rs.clone(),
        unit: unit.clone(),
        polar,
        primitive,
        trees,
        wedge_map: wm,
        areas,
        sigma,
        tables,
        injectivity,
        signs,
        critical_values,
        discriminant,
        integrated,
        snake,
        theorem_b,
    })
}
