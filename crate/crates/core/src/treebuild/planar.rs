use std::collections::{BTreeMap, HashMap};

use super::contact::{ContactTree, VertexId};

/// Two adjacent elements `(k, k+1)` of a finite ordered set, stored by the
/// index `k` of the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicInterval(pub usize);

impl BasicInterval {
    pub fn lower(self) -> usize {
        self.0
    }

    pub fn upper(self) -> usize {
        self.0 + 1
    }
}

/// True iff `order` (a list of the planar leaves of `tree`) comes from some
/// planar structure: the leaves below every vertex form a contiguous block.
pub fn is_planar_order(tree: &ContactTree, order: &[VertexId]) -> bool {
    let leaves = tree.planar_leaves();
    if leaves.len() != order.len() {
        return false;
    }
    let pos: HashMap<VertexId, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    if pos.len() != order.len() || leaves.iter().any(|v| !pos.contains_key(v)) {
        return false;
    }
    // (min, max, count) of positions below each vertex, children before parents
    let mut span: Vec<Option<(usize, usize, usize)>> = vec![None; tree.len()];
    for v in (0..tree.len()).rev() {
        if !tree.is_real(v) {
            continue;
        }
        let s = if tree.is_leaf(v) {
            let k = pos[&v];
            (k, k, 1)
        } else {
            let mut acc: Option<(usize, usize, usize)> = None;
            for &c in tree.children(v) {
                let Some((a, b, n)) = span[c] else { continue };
                acc = Some(match acc {
                    None => (a, b, n),
                    Some((a0, b0, n0)) => (a0.min(a), b0.max(b), n0 + n),
                });
            }
            match acc {
                Some(s) => s,
                None => continue,
            }
        };
        if s.1 - s.0 + 1 != s.2 {
            return false;
        }
        span[v] = Some(s);
    }
    true
}

/// The wedge map of a planar tree: leaf basic interval `k` goes to the pair
/// of outgoing edges `(a, a+1)` at `P = l_k ∧ l_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeMap {
    leaves: Vec<VertexId>,
    forward: Vec<(VertexId, BasicInterval)>,
    inverse: BTreeMap<VertexId, Vec<Option<BasicInterval>>>,
}

impl WedgeMap {
    pub fn new(tree: &ContactTree) -> Self {
        let leaves = tree.planar_leaves();
        let mut inverse: BTreeMap<VertexId, Vec<Option<BasicInterval>>> = BTreeMap::new();
        for v in 0..tree.len() {
            if tree.children(v).len() >= 2 {
                inverse.insert(v, vec![None; tree.children(v).len() - 1]);
            }
        }
        let mut forward = Vec::with_capacity(leaves.len().saturating_sub(1));
        for k in 0..leaves.len().saturating_sub(1) {
            let (lo, hi) = (leaves[k], leaves[k + 1]);
            let p = tree.wedge(lo, hi);
            let idx = |leaf| {
                let c = tree.child_toward(p, leaf).expect("leaf lies strictly below its wedge");
                tree.children(p).iter().position(|&x| x == c).expect("real child")
            };
            let a = idx(lo);
            let edge = BasicInterval(a);
            debug_assert_eq!(idx(hi), a + 1);
            forward.push((p, edge));
            if let Some(slot) = inverse.get_mut(&p).and_then(|s| s.get_mut(a)) {
                *slot = Some(BasicInterval(k));
            }
        }
        WedgeMap { leaves, forward, inverse }
    }

    /// Planar leaves in order; basic interval `k` is `(leaves[k], leaves[k+1])`.
    pub fn leaves(&self) -> &[VertexId] {
        &self.leaves
    }

    pub fn apply(&self, leaf_interval: BasicInterval) -> (VertexId, BasicInterval) {
        self.forward[leaf_interval.0]
    }

    /// `iota`: the leaf basic interval sent to edge interval `edge` at `p`.
    pub fn inverse(&self, p: VertexId, edge: BasicInterval) -> Option<BasicInterval> {
        self.inverse.get(&p).and_then(|s| s.get(edge.0).copied().flatten())
    }

    /// Vertices with at least two planar children, each with its list of
    /// preimages indexed by edge interval.
    pub fn targets(&self) -> impl Iterator<Item = (VertexId, &[Option<BasicInterval>])> {
        self.inverse.iter().map(|(&p, s)| (p, s.as_slice()))
    }

    pub fn source_len(&self) -> usize {
        self.forward.len()
    }

    pub fn target_len(&self) -> usize {
        self.inverse.values().map(Vec::len).sum()
    }

    /// Injective and surjective onto the edge intervals.
    pub fn is_bijective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        let injective = self.forward.iter().all(|t| seen.insert(*t));
        let hit = self.inverse.values().all(|s| s.iter().all(Option::is_some));
        injective && hit && self.source_len() == self.target_len()
    }
}
