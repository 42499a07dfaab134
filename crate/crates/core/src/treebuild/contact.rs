use std::cmp::Ordering;

use crate::puiseux::{Exponent, PuiseuxPoly};

use super::{RootSystem, TreeError};

pub type VertexId = usize;

/// What a leaf stands for: the `i`-th real root or the `l`-th complex root
/// (both 0-based, real roots in increasing real order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeafLabel {
    Real(usize),
    Complex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub parent: Option<VertexId>,
    /// The exponent function `E`: `0` at the root, `inf` at leaves.
    pub exponent: Exponent,
    /// Children carrying a real leaf, in planar order.
    pub children: Vec<VertexId>,
    /// Children whose subtree holds only non-real leaves. No order is
    /// attached to these; they are kept sorted by label for determinism.
    pub complex_children: Vec<VertexId>,
    pub leaf: Option<LeafLabel>,
    pub multiplicity: u32,
    /// Marks the real contact tree inside the complex one.
    pub real: bool,
    depth: usize,
}

/// A rooted contact tree. Vertex `0` is the root `O` (exponent 0, one child).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactTree {
    vertices: Vec<Vertex>,
}

/// Input leaf for [`ContactTree::from_leaves`].
#[derive(Clone, Copy, Debug)]
pub struct Leaf<'a> {
    pub series: &'a PuiseuxPoly,
    pub label: LeafLabel,
    pub multiplicity: u32,
}

struct Builder<'a> {
    leaves: &'a [Leaf<'a>],
    vals: Vec<Vec<Exponent>>,
    vertices: Vec<Vertex>,
    /// for each built vertex, one leaf index below it (a real one when possible)
    rep: Vec<usize>,
}

impl Builder<'_> {
    fn push(&mut self, parent: Option<VertexId>, exponent: Exponent, leaf: Option<usize>) -> VertexId {
        let id = self.vertices.len();
        let (label, multiplicity, real) = match leaf {
            Some(i) => (Some(self.leaves[i].label), self.leaves[i].multiplicity, self.leaves[i].series.is_real()),
            None => (None, 0, false),
        };
        let depth = parent.map_or(0, |p| self.vertices[p].depth + 1);
        self.vertices.push(Vertex {
            parent,
            exponent,
            children: Vec::new(),
            complex_children: Vec::new(),
            leaf: label,
            multiplicity,
            real,
            depth,
        });
        self.rep.push(leaf.unwrap_or(usize::MAX));
        if let Some(p) = parent {
            self.vertices[p].children.push(id);
        }
        id
    }

    fn grow(&mut self, parent: VertexId, members: Vec<usize>) {
        if members.len() == 1 {
            self.push(Some(parent), Exponent::Infinity, Some(members[0]));
            return;
        }
        let first = members[0];
        let e = members[1..].iter().map(|&m| self.vals[first][m].clone()).min().unwrap();
        let v = self.push(Some(parent), e.clone(), None);
        let mut rest = members;
        while !rest.is_empty() {
            let a = rest[0];
            let (class, others): (Vec<usize>, Vec<usize>) =
                rest.into_iter().partition(|&b| b == a || self.vals[a][b] > e);
            self.grow(v, class);
            rest = others;
        }
    }

    /// Fills `real` flags and representatives bottom-up (children have larger ids).
    fn mark(&mut self) {
        for v in (0..self.vertices.len()).rev() {
            if self.vertices[v].leaf.is_some() {
                continue;
            }
            let kids = self.vertices[v].children.clone();
            let real = kids.iter().any(|&c| self.vertices[c].real);
            self.vertices[v].real = real;
            let pick = kids.iter().find(|&&c| self.vertices[c].real).or(kids.first()).copied().unwrap();
            self.rep[v] = self.rep[pick];
        }
    }

    fn min_label(&self, v: VertexId) -> LeafLabel {
        match self.vertices[v].leaf {
            Some(l) => l,
            None => self.vertices[v].children.iter().map(|&c| self.min_label(c)).min().unwrap(),
        }
    }

    fn order_children(&mut self) {
        for v in 0..self.vertices.len() {
            let kids = std::mem::take(&mut self.vertices[v].children);
            let (mut real, mut complex): (Vec<_>, Vec<_>) = kids.into_iter().partition(|&c| self.vertices[c].real);
            real.sort_by(|&a, &b| {
                let sa = self.leaves[self.rep[a]].series;
                let sb = self.leaves[self.rep[b]].series;
                sa.real_cmp(sb).unwrap_or(Ordering::Equal)
            });
            complex.sort_by_key(|&c| self.min_label(c));
            self.vertices[v].children = real;
            self.vertices[v].complex_children = complex;
        }
    }
}

impl ContactTree {
    /// Contact tree of pairwise-distinct series with positive valuations.
    /// Real leaves are ordered by the real total order at every vertex.
    pub fn from_leaves(leaves: &[Leaf<'_>]) -> Result<Self, TreeError> {
        if leaves.is_empty() {
            return Err(TreeError::Empty);
        }
        for (i, l) in leaves.iter().enumerate() {
            if let Exponent::Finite(v) = l.series.val() {
                if v <= num_traits::Zero::zero() {
                    return Err(TreeError::NonPositiveValuation(i));
                }
            }
        }
        let n = leaves.len();
        let mut vals = vec![vec![Exponent::Infinity; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = (leaves[j].series - leaves[i].series).val();
                if v.is_infinite() {
                    return Err(TreeError::DuplicateRoot(i, j));
                }
                vals[i][j] = v.clone();
                vals[j][i] = v;
            }
        }
        let mut b = Builder { leaves, vals, vertices: Vec::new(), rep: Vec::new() };
        let root = b.push(None, Exponent::zero(), None);
        b.grow(root, (0..n).collect());
        b.mark();
        b.order_children();
        Ok(ContactTree { vertices: b.vertices }.renumbered())
    }

    /// Renumbers vertices in depth-first preorder (planar children first).
    fn renumbered(self) -> Self {
        let mut order = Vec::with_capacity(self.vertices.len());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            order.push(v);
            let vx = &self.vertices[v];
            stack.extend(vx.complex_children.iter().rev());
            stack.extend(vx.children.iter().rev());
        }
        let mut new_id = vec![0; self.vertices.len()];
        for (k, &v) in order.iter().enumerate() {
            new_id[v] = k;
        }
        let vertices = order
            .iter()
            .map(|&v| {
                let mut vx = self.vertices[v].clone();
                vx.parent = vx.parent.map(|p| new_id[p]);
                vx.children = vx.children.iter().map(|&c| new_id[c]).collect();
                vx.complex_children = vx.complex_children.iter().map(|&c| new_id[c]).collect();
                vx
            })
            .collect();
        ContactTree { vertices }
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices.iter().enumerate()
    }

    pub fn exponent(&self, v: VertexId) -> &Exponent {
        &self.vertices[v].exponent
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.vertices[v].parent
    }

    /// Planar (real) children.
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.vertices[v].children
    }

    pub fn all_children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let vx = &self.vertices[v];
        vx.children.iter().chain(&vx.complex_children).copied()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.vertices[v].leaf.is_some()
    }

    pub fn leaf_label(&self, v: VertexId) -> Option<LeafLabel> {
        self.vertices[v].leaf
    }

    pub fn leaf_vertex(&self, label: LeafLabel) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.leaf == Some(label))
    }

    pub fn is_real(&self, v: VertexId) -> bool {
        self.vertices[v].real
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.vertices[v].depth
    }

    /// Every leaf, real and complex, in preorder.
    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Real leaves in the order induced by the planar structure.
    pub fn planar_leaves(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            if self.is_leaf(v) {
                if self.vertices[v].real {
                    out.push(v);
                }
                continue;
            }
            stack.extend(self.vertices[v].children.iter().rev());
        }
        out
    }

    /// Vertices other than the root and the leaves.
    pub fn internal_vertices(&self) -> Vec<VertexId> {
        (1..self.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    /// Internal vertices of the real sub-tree: real vertices with at least
    /// two real children, in preorder.
    pub fn real_internal_vertices(&self) -> Vec<VertexId> {
        (1..self.len())
            .filter(|&v| !self.is_leaf(v) && self.vertices[v].real && self.vertices[v].children.len() >= 2)
            .collect()
    }

    /// `p` lies on the segment from the root to `q`.
    pub fn precedes_or_eq(&self, p: VertexId, q: VertexId) -> bool {
        let mut q = q;
        while self.vertices[q].depth > self.vertices[p].depth {
            q = self.vertices[q].parent.unwrap();
        }
        p == q
    }

    /// Greatest lower bound of `p` and `q` for the tree order.
    pub fn wedge(&self, p: VertexId, q: VertexId) -> VertexId {
        let (mut p, mut q) = (p, q);
        while self.vertices[p].depth > self.vertices[q].depth {
            p = self.vertices[p].parent.unwrap();
        }
        while self.vertices[q].depth > self.vertices[p].depth {
            q = self.vertices[q].parent.unwrap();
        }
        while p != q {
            p = self.vertices[p].parent.unwrap();
            q = self.vertices[q].parent.unwrap();
        }
        p
    }

    /// The child of `p` on the way to its strict descendant `q`.
    pub fn child_toward(&self, p: VertexId, q: VertexId) -> Option<VertexId> {
        if self.vertices[q].depth <= self.vertices[p].depth {
            return None;
        }
        let mut q = q;
        while self.vertices[q].depth > self.vertices[p].depth + 1 {
            q = self.vertices[q].parent.unwrap();
        }
        (self.vertices[q].parent == Some(p)).then_some(q)
    }

    /// Leaves below `v` (including `v` itself when it is a leaf).
    pub fn descendant_leaves(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if self.is_leaf(u) {
                out.push(u);
            }
            stack.extend(self.all_children(u));
        }
        out.sort_unstable();
        out
    }

    /// The real contact tree as a standalone tree, with points of valency two
    /// removed, plus the map from its vertices to vertices of `self`.
    pub fn real_part(&self) -> (ContactTree, Vec<VertexId>) {
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut map = Vec::new();
        let mut stack: Vec<(VertexId, Option<VertexId>)> = vec![(self.root(), None)];
        while let Some((v, new_parent)) = stack.pop() {
            let mut v = v;
            if new_parent.is_some() {
                while !self.is_leaf(v) && self.vertices[v].children.len() == 1 {
                    v = self.vertices[v].children[0];
                }
            }
            let id = vertices.len();
            let src = &self.vertices[v];
            vertices.push(Vertex {
                parent: new_parent,
                exponent: src.exponent.clone(),
                children: Vec::new(),
                complex_children: Vec::new(),
                leaf: src.leaf,
                multiplicity: src.multiplicity,
                real: true,
                depth: new_parent.map_or(0, |p| vertices[p].depth + 1),
            });
            map.push(v);
            if let Some(p) = new_parent {
                vertices[p].children.push(id);
            }
            for &c in src.children.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        // children were pushed in reverse stack order; restore planar order
        // by sorting on the source vertex ids, which are in planar preorder
        for v in 0..vertices.len() {
            let mut kids = std::mem::take(&mut vertices[v].children);
            kids.sort_by_key(|&c| map[c]);
            vertices[v].children = kids;
        }
        let tree = ContactTree { vertices };
        let order = tree.preorder();
        let tree = tree.renumbered();
        let map = order.into_iter().map(|old| map[old]).collect();
        (tree, map)
    }

    fn preorder(&self) -> Vec<VertexId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            order.push(v);
            let vx = &self.vertices[v];
            stack.extend(vx.complex_children.iter().rev());
            stack.extend(vx.children.iter().rev());
        }
        order
    }

    /// Replaces the planar order at `v` by a permutation of its children.
    pub(crate) fn set_children_order(&mut self, v: VertexId, order: Vec<VertexId>) {
        debug_assert_eq!(
            {
                let mut a = order.clone();
                a.sort_unstable();
                a
            },
            {
                let mut b = self.vertices[v].children.clone();
                b.sort_unstable();
                b
            }
        );
        self.vertices[v].children = order;
    }
}

/// Contact tree of a list of series; leaf `i` is labelled `Real(i)`.
pub fn build_contact_tree(roots: &[PuiseuxPoly]) -> Result<ContactTree, TreeError> {
    let leaves: Vec<Leaf<'_>> = roots
        .iter()
        .enumerate()
        .map(|(i, s)| Leaf { series: s, label: LeafLabel::Real(i), multiplicity: 1 })
        .collect();
    ContactTree::from_leaves(&leaves)
}

/// The complex contact tree `T_C` of all roots, with the real contact tree
/// marked inside it. Each non-real root is one leaf carrying its multiplicity.
pub fn build_embedded_trees(rs: &RootSystem) -> Result<ContactTree, TreeError> {
    let mut leaves: Vec<Leaf<'_>> = rs
        .real_roots()
        .iter()
        .enumerate()
        .map(|(i, s)| Leaf { series: s, label: LeafLabel::Real(i), multiplicity: 1 })
        .collect();
    for (l, c) in rs.complex_roots().iter().enumerate() {
        leaves.push(Leaf { series: &c.series, label: LeafLabel::Complex(l), multiplicity: c.multiplicity });
    }
    ContactTree::from_leaves(&leaves)
}
