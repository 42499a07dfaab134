use std::collections::BTreeMap;

use crate::exact::Rational;
use crate::puiseux::{BivarPoly, Exponent, PuiseuxPoly};
use crate::treebuild::{build_contact_tree, ContactTree, LeafLabel, RootSystem, TreeError, VertexId};

use super::{critical_value_series, MorseError};

/// Real contact tree of the critical value series `delta_i = F(xi_i)`.
pub fn discriminant_tree(primitive: &BivarPoly, rs: &RootSystem) -> Result<ContactTree, MorseError> {
    tree_of_values(&critical_value_series(primitive, rs))
}

pub(crate) fn tree_of_values(deltas: &[PuiseuxPoly]) -> Result<ContactTree, MorseError> {
    build_contact_tree(deltas).map_err(|e| match e {
        TreeError::DuplicateRoot(i, j) => MorseError::EqualDiscriminantRoots(i + 1, j + 1),
        e => e.into(),
    })
}

/// Outcome of comparing the integrated tree with the discriminant tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremB {
    pub isomorphic: bool,
    /// Image of each integrated-tree vertex, when the label-preserving map exists.
    pub vertex_map: Vec<Option<VertexId>>,
    pub mismatches: Vec<String>,
}

/// Checks that the unique label-preserving map from the integrated tree to
/// the discriminant tree is a planar isomorphism sending `sigma` to `E`.
/// `sigma` must hold a value for every internal vertex of `integrated`.
pub fn check_theorem_b(
    integrated: &ContactTree,
    sigma: &BTreeMap<VertexId, Rational>,
    discriminant: &ContactTree,
) -> TheoremB {
    let mut mismatches = Vec::new();
    let image_leaf = |v: VertexId| discriminant.leaf_vertex(integrated.leaf_label(v)?);
    let first_leaf = |mut v: VertexId| {
        while !integrated.is_leaf(v) {
            v = integrated.children(v)[0];
        }
        v
    };
    let mut vertex_map = vec![None; integrated.len()];
    for v in 0..integrated.len() {
        vertex_map[v] = if v == integrated.root() {
            Some(discriminant.root())
        } else if integrated.is_leaf(v) {
            image_leaf(v)
        } else if let [a, b, ..] = integrated.children(v) {
            match (image_leaf(first_leaf(*a)), image_leaf(first_leaf(*b))) {
                (Some(x), Some(y)) => Some(discriminant.wedge(x, y)),
                _ => None,
            }
        } else {
            None
        };
        if vertex_map[v].is_none() {
            mismatches.push(format!("vertex {v} has no image"));
        }
    }
    if integrated.len() != discriminant.len() {
        mismatches.push(format!("{} vertices against {}", integrated.len(), discriminant.len()));
    }
    let mut hit = vec![false; discriminant.len()];
    for (v, img) in vertex_map.iter().enumerate() {
        let Some(w) = *img else { continue };
        if std::mem::replace(&mut hit[w], true) {
            mismatches.push(format!("vertex {v} collides at image {w}"));
        }
        let parent_ok = match integrated.parent(v) {
            None => discriminant.parent(w).is_none(),
            Some(p) => vertex_map[p].is_some() && discriminant.parent(w) == vertex_map[p],
        };
        if !parent_ok {
            mismatches.push(format!("parent of vertex {v} is not preserved"));
        }
        if v != integrated.root() && !integrated.is_leaf(v) {
            let e = discriminant.exponent(w);
            match sigma.get(&v) {
                Some(s) if *e == Exponent::Finite(s.clone()) => {}
                s => mismatches.push(format!("sigma {s:?} at vertex {v} against E = {e}")),
            }
        }
        let kids: Vec<Option<VertexId>> = integrated.children(v).iter().map(|&c| vertex_map[c]).collect();
        let target: Vec<Option<VertexId>> = discriminant.children(w).iter().map(|&c| Some(c)).collect();
        if kids != target {
            mismatches.push(format!("children order differs at vertex {v}"));
        }
    }
    for (v, vx) in discriminant.vertices() {
        if let Some(LeafLabel::Real(_)) = vx.leaf {
            if !hit[v] {
                mismatches.push(format!("discriminant leaf {v} is not reached"));
            }
        }
    }
    TheoremB { isomorphic: mismatches.is_empty(), vertex_map, mismatches }
}
