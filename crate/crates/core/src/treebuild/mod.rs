//! Contact trees of finite sets of Puiseux polynomials, their real planar
//! structure and the wedge map.

mod contact;
mod planar;
mod roots;

use thiserror::Error;

pub use contact::{build_contact_tree, build_embedded_trees, ContactTree, Leaf, LeafLabel, Vertex, VertexId};
pub use planar::{is_planar_order, BasicInterval, WedgeMap};
pub use roots::{ComplexRoot, RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a contact tree needs at least one series")]
    Empty,
    #[error("series #{0} and #{1} coincide")]
    DuplicateRoot(usize, usize),
    #[error("series #{0} has non-positive valuation")]
    NonPositiveValuation(usize),
}

/// Greatest lower bound of two vertices.
pub fn wedge(tree: &ContactTree, p: VertexId, q: VertexId) -> VertexId {
    tree.wedge(p, q)
}

/// The wedge map of the planar structure carried by `tree`.
pub fn wedge_map(tree: &ContactTree) -> WedgeMap {
    WedgeMap::new(tree)
}

#[cfg(test)]
mod tests;
