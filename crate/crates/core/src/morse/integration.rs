use std::fmt;

use num_traits::{Signed, Zero};

use crate::exact::Rational;
use crate::treebuild::{BasicInterval, ContactTree, LeafLabel, VertexId, WedgeMap};

use super::{AreaSeries, MorseError};

/// Discrete integration map at an internal vertex `P` of `T_R`: entry `k`
/// is the sum of `s_{iota(1)} .. s_{iota(k)}` over the first `k` outgoing
/// edge intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrationTable {
    pub vertex: VertexId,
    pub exponent: Rational,
    /// `iota(k)` for `k = 1 .. p-1`, as 1-based area indices.
    pub area_indices: Vec<usize>,
    pub partial_sums: Vec<Rational>,
}

impl IntegrationTable {
    /// First pair `a < b` (lexicographic) with equal entries.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let t = &self.partial_sums;
        (0..t.len()).flat_map(|a| (a + 1..t.len()).map(move |b| (a, b))).find(|&(a, b)| t[a] == t[b])
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    /// `s_{iota(a+1)} + .. + s_{iota(b)}`, the difference of entries `b` and `a`.
    pub fn consecutive_sum(&self, a: usize, b: usize) -> Rational {
        &self.partial_sums[b] - &self.partial_sums[a]
    }
}

pub fn integration_table(tree: &ContactTree, wm: &WedgeMap, areas: &[AreaSeries], p: VertexId) -> IntegrationTable {
    let edges = tree.children(p).len();
    let mut area_indices = Vec::with_capacity(edges.saturating_sub(1));
    let mut partial_sums = vec![Rational::zero()];
    for k in 0..edges.saturating_sub(1) {
        let iota = wm.inverse(p, BasicInterval(k)).expect("wedge map is surjective").lower();
        area_indices.push(iota + 1);
        let next = partial_sums.last().unwrap() + &areas[iota].s;
        partial_sums.push(next);
    }
    let exponent = tree.exponent(p).finite().cloned().expect("internal vertex");
    IntegrationTable { vertex: p, exponent, area_indices, partial_sums }
}

/// Tables for every internal vertex of the real tree, in preorder.
pub fn integration_tables(tree: &ContactTree, wm: &WedgeMap, areas: &[AreaSeries]) -> Vec<IntegrationTable> {
    tree.real_internal_vertices().into_iter().map(|p| integration_table(tree, wm, areas, p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityWitness {
    pub vertex: VertexId,
    pub exponent: Rational,
    /// Colliding table entries `a < b` (0-based).
    pub entries: (usize, usize),
    /// Outgoing edges `a+1 ..= b+1` (1-based) whose areas sum to zero.
    pub zero_sum_range: (usize, usize),
    /// 1-based area indices `iota(a+1) .. iota(b)`.
    pub zero_sum_areas: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Injectivity {
    Pass,
    /// Every failing vertex in preorder; the first one is the primary witness.
    Fail(Vec<InjectivityWitness>),
}

impl Injectivity {
    pub fn passes(&self) -> bool {
        matches!(self, Injectivity::Pass)
    }

    pub fn witness(&self) -> Option<&InjectivityWitness> {
        match self {
            Injectivity::Pass => None,
            Injectivity::Fail(w) => w.first(),
        }
    }
}

pub fn check_injectivity(tables: &[IntegrationTable]) -> Injectivity {
    let failures: Vec<_> = tables
        .iter()
        .filter_map(|t| {
            let (a, b) = t.collision()?;
            Some(InjectivityWitness {
                vertex: t.vertex,
                exponent: t.exponent.clone(),
                entries: (a, b),
                zero_sum_range: (a + 1, b + 1),
                zero_sum_areas: t.area_indices[a..b].to_vec(),
            })
        })
        .collect();
    if failures.is_empty() {
        Injectivity::Pass
    } else {
        Injectivity::Fail(failures)
    }
}

/// Same tree with every internal vertex's children sorted by their
/// integration-table values.
pub fn integrated_tree(tree: &ContactTree, tables: &[IntegrationTable]) -> Result<ContactTree, MorseError> {
    if tables.iter().any(|t| !t.is_injective()) {
        return Err(MorseError::InjectivityRequired);
    }
    let mut out = tree.clone();
    for t in tables {
        let kids = tree.children(t.vertex);
        let mut idx: Vec<usize> = (0..kids.len()).collect();
        idx.sort_by(|&a, &b| t.partial_sums[a].cmp(&t.partial_sums[b]));
        out.set_children_order(t.vertex, idx.into_iter().map(|k| kids[k]).collect());
    }
    Ok(out)
}

/// Permutation `pi` with `pi(i)` the 1-based rank of the critical value at
/// the `i`-th critical point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Snake {
    target_ranks: Vec<usize>,
}

impl Snake {
    /// From 1-based ranks; `None` unless they form a permutation of `1..=n`.
    pub fn from_ranks(ranks: Vec<usize>) -> Option<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n || seen[r - 1] {
                return None;
            }
            seen[r - 1] = true;
        }
        Some(Snake { target_ranks: ranks })
    }

    /// From the 0-based root indices listed by increasing critical value.
    pub fn from_target_order(order: &[usize]) -> Option<Self> {
        let mut ranks = vec![0; order.len()];
        for (k, &i) in order.iter().enumerate() {
            *ranks.get_mut(i)? = k + 1;
        }
        Self::from_ranks(ranks)
    }

    pub fn n(&self) -> usize {
        self.target_ranks.len()
    }

    /// `ranks()[i]` is the rank of root `i` (0-based index, 1-based rank).
    pub fn ranks(&self) -> &[usize] {
        &self.target_ranks
    }

    /// 0-based root indices by increasing critical value.
    pub fn target_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (i, &r) in self.target_ranks.iter().enumerate() {
            order[r - 1] = i;
        }
        order
    }
}

impl fmt::Display for Snake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, r) in self.target_ranks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Reads the snake off the leaf order of the integrated tree.
pub fn snake(integrated: &ContactTree) -> Snake {
    let order: Vec<usize> = integrated
        .planar_leaves()
        .into_iter()
        .map(|v| match integrated.leaf_label(v) {
            Some(LeafLabel::Real(i)) => i,
            other => panic!("planar leaf with label {other:?}"),
        })
        .collect();
    Snake::from_target_order(&order).expect("leaves are labelled 0..n")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    fn of(r: &Rational) -> Option<Sign> {
        if r.is_positive() {
            Some(Sign::Positive)
        } else if r.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Sign of `F(xi_j(x0)) - F(xi_i(x0))` for small `x0 > 0`, for 0-based
/// `i < j`, read from the table at `xi_i ∧ xi_j`.
pub fn sign_of_difference(
    tree: &ContactTree,
    tables: &[IntegrationTable],
    i: usize,
    j: usize,
) -> Result<Sign, MorseError> {
    assert!(i < j, "sign_of_difference needs i < j");
    let li = tree.leaf_vertex(LeafLabel::Real(i)).expect("leaf xi_i");
    let lj = tree.leaf_vertex(LeafLabel::Real(j)).expect("leaf xi_j");
    let p = tree.wedge(li, lj);
    let pos = |leaf| {
        let c = tree.child_toward(p, leaf).unwrap();
        tree.children(p).iter().position(|&x| x == c).unwrap()
    };
    let (a, b) = (pos(li), pos(lj));
    let table = tables.iter().find(|t| t.vertex == p).expect("table for every internal vertex");
    Sign::of(&table.consecutive_sum(a, b)).ok_or(MorseError::IndeterminateSign(i + 1, j + 1))
}

/// `sign_of_difference` for one pair `i < j` (0-based); `None` when indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSign {
    pub i: usize,
    pub j: usize,
    pub sign: Option<Sign>,
}

pub fn pairwise_signs(tree: &ContactTree, tables: &[IntegrationTable], n: usize) -> Vec<PairSign> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(PairSign { i, j, sign: sign_of_difference(tree, tables, i, j).ok() });
        }
    }
    out
}
