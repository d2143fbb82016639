//! Spanning-tree counting and the unlabelled spanning-tree census.
//!
//! The labelled count is the Kirchhoff determinant of the reduced
//! Laplacian, evaluated exactly over big integers with Bareiss
//! fraction-free elimination. The census enumerates every spanning tree
//! (branch-and-bound over edges, each recursion leaf emitting exactly one
//! tree), buckets them by free canonical code, and compares the number of
//! distinct shapes against explicit floors.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::counting::{ratio_parts, BigRational};
use crate::graph::Graph;
use crate::numeric::ceil_exp_ratio;
use crate::tree::{CanonCode, Tree};

/// Default ceiling on Kirchhoff matrix order.
pub const DEFAULT_KIRCHHOFF_CAP: usize = 500;
/// Default ceiling on the number of spanning trees enumerated.
pub const DEFAULT_TREE_CAP: u64 = 1_000_000;
/// Denominator of the unconditional floor exp(n / LEE_DEN) on distinct
/// spanning-tree shapes of a connected graph with minimum degree >= 3.
pub const LEE_DEN: u64 = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("matrix of order {n} exceeds the configured cap {cap}")]
    ResourceLimit { n: usize, cap: usize },
    #[error("graph has {count} spanning trees, over the enumeration cap {cap}")]
    OverCap { count: BigUint, cap: u64 },
    #[error("graph is disconnected: no spanning trees")]
    Disconnected,
}

/// Exact number of labelled spanning trees (zero iff disconnected).
pub fn kirchhoff_count(g: &Graph) -> Result<BigUint, CensusError> {
    kirchhoff_count_capped(g, DEFAULT_KIRCHHOFF_CAP)
}

pub fn kirchhoff_count_capped(g: &Graph, cap: usize) -> Result<BigUint, CensusError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(CensusError::ResourceLimit { n, cap });
    }
    if n == 1 {
        return Ok(BigUint::one()); // the empty tree on one vertex
    }
    // Reduced Laplacian: drop row/column 0.
    let dim = n - 1;
    let mut m = vec![BigInt::zero(); dim * dim];
    for v in 1..n {
        m[(v - 1) * dim + (v - 1)] = BigInt::from(g.degree(v));
    }
    for &(u, v) in g.edges() {
        if u >= 1 && v >= 1 {
            m[(u - 1) * dim + (v - 1)] = BigInt::from(-1);
            m[(v - 1) * dim + (u - 1)] = BigInt::from(-1);
        }
    }
    let det = bareiss_determinant(&mut m, dim);
    debug_assert!(!det.is_negative(), "tree counts are non-negative");
    Ok(det.magnitude().clone())
}

/// Exact determinant by Bareiss fraction-free Gaussian elimination: every
/// division is exact, intermediate entries stay at minor-determinant size.
fn bareiss_determinant(m: &mut [BigInt], dim: usize) -> BigInt {
    if dim == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..dim {
        if m[k * dim + k].is_zero() {
            let Some(pivot_row) = (k + 1..dim).find(|&r| !m[r * dim + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..dim {
                m.swap(k * dim + j, pivot_row * dim + j);
            }
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = &m[k * dim + k] * &m[i * dim + j] - &m[i * dim + k] * &m[k * dim + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                m[i * dim + j] = q;
            }
            m[i * dim + k] = BigInt::zero();
        }
        prev = m[k * dim + k].clone();
    }
    let last = m[(dim - 1) * dim + (dim - 1)].clone();
    if sign < 0 {
        -last
    } else {
        last
    }
}

/// Enumerate every spanning tree of `g`, invoking `visit` once per tree, in
/// a deterministic order. The exact count is pre-computed and must not
/// exceed `cap`. Returns the number of trees visited.
///
/// Branching: edges are processed in sorted order; each edge that joins two
/// distinct components is either contracted (include) or deleted (exclude),
/// and the exclude branch is taken only when the remaining edges still
/// connect the graph — so every recursion leaf yields exactly one tree and
/// the work is linear in the output.
pub fn for_each_spanning_tree(
    g: &Graph,
    cap: u64,
    mut visit: impl FnMut(&Tree),
) -> Result<u64, CensusError> {
    let count = kirchhoff_count(g)?;
    if count.is_zero() {
        return Err(CensusError::Disconnected);
    }
    if count > BigUint::from(cap) {
        return Err(CensusError::OverCap { count, cap });
    }
    let n = g.vertex_count();
    let edges = g.edges();
    let mut dsu = Dsu::new(n);
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    let mut emitted = 0u64;
    enumerate(
        g,
        edges,
        0,
        &mut dsu,
        &mut chosen,
        &mut emitted,
        &mut visit,
    );
    debug_assert_eq!(BigUint::from(emitted), count, "enumeration must be exact");
    Ok(emitted)
}

fn enumerate(
    g: &Graph,
    edges: &[(usize, usize)],
    next: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<(usize, usize)>,
    emitted: &mut u64,
    visit: &mut impl FnMut(&Tree),
) {
    let n = g.vertex_count();
    if chosen.len() == n - 1 {
        *emitted += 1;
        visit(&Tree::from_edges_unchecked(n, chosen.clone()));
        return;
    }
    let (u, v) = edges[next];
    if dsu.find(u) != dsu.find(v) {
        // Include branch.
        let snapshot = dsu.union(u, v);
        chosen.push((u, v));
        enumerate(g, edges, next + 1, dsu, chosen, emitted, visit);
        chosen.pop();
        dsu.rollback(snapshot);
        // Exclude branch, only if the rest still connects everything.
        if connects_without(dsu, &edges[next + 1..]) {
            enumerate(g, edges, next + 1, dsu, chosen, emitted, visit);
        }
    } else {
        // Edge inside a component: skipping it is forced (a cycle edge).
        enumerate(g, edges, next + 1, dsu, chosen, emitted, visit);
    }
}

/// Would the current components merge to one using only `rest`?
fn connects_without(dsu: &Dsu, rest: &[(usize, usize)]) -> bool {
    let mut scratch = dsu.clone();
    let mut components = scratch.components();
    for &(u, v) in rest {
        if components == 1 {
            return true;
        }
        if scratch.find(u) != scratch.find(v) {
            scratch.union(u, v);
            components -= 1;
        }
    }
    components == 1
}

/// Union-find with rollback (union by size, no path compression, so undo is
/// a simple stack pop).
#[derive(Clone)]
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>, // (child root, parent root)
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Union the components of u and v; returns the history length to pass
    /// to [`Dsu::rollback`].
    fn union(&mut self, u: usize, v: usize) -> usize {
        let mark = self.history.len();
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            return mark;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((b, a));
        mark
    }

    fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let (child, parent) = self.history.pop().unwrap();
            self.parent[child] = child;
            self.size[parent] -= self.size[child];
        }
    }

    fn components(&self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.parent[x] == x)
            .count()
    }
}

/// Floors the census is compared against.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    /// ceil(exp(n / 2000)): unconditional floor for connected graphs with
    /// minimum degree >= 3.
    pub degree_floor: BigUint,
    pub degree_floor_applies: bool,
    pub degree_floor_met: bool,
    /// Optional exponential floor (alpha_ref - epsilon)^n, recorded as its
    /// decimal digit count; informational — it is a statement about large n
    /// and spectral families, not something small graphs are expected to
    /// meet.
    pub exponential: Option<ExponentialFloor>,
}

#[derive(Clone, Debug)]
pub struct ExponentialFloor {
    pub epsilon: BigRational,
    /// Number of decimal digits of ceil((alpha_ref - epsilon)^n).
    pub threshold_digits: usize,
    pub met: bool,
}

/// Full unlabelled spanning-tree census of a connected graph.
#[derive(Clone, Debug)]
pub struct SpanningTreeCensus {
    pub labelled_count: BigUint,
    /// Spanning-tree counts per isomorphism class, keyed by canonical code.
    pub classes: BTreeMap<CanonCode, u64>,
    pub distinct: usize,
    pub bounds: BoundsReport,
}

/// Enumerate, bucket by shape, and evaluate floors. `epsilon`, when given,
/// adds the informational exponential floor to the report.
pub fn unlabelled_census(
    g: &Graph,
    cap: u64,
    epsilon: Option<&BigRational>,
) -> Result<SpanningTreeCensus, CensusError> {
    let mut classes: BTreeMap<CanonCode, u64> = BTreeMap::new();
    let total = for_each_spanning_tree(g, cap, |t| {
        *classes.entry(t.canon_free()).or_insert(0) += 1;
    })?;
    let distinct = classes.len();
    let n = g.vertex_count();
    let degree_floor = ceil_exp_ratio(n as u64, LEE_DEN);
    let degree_floor_applies =
        g.is_connected() && (0..n).all(|v| g.degree(v) >= 3);
    let degree_floor_met = BigUint::from(distinct) >= degree_floor;
    let exponential = epsilon.map(|eps| {
        let base = crate::counting::alpha_ref() - eps;
        let (p, q) = ratio_parts(&base);
        let pn = p.pow(n as u32);
        let qn = q.pow(n as u32);
        let threshold = pn.div_ceil(&qn);
        let met = BigUint::from(distinct) * qn >= pn;
        ExponentialFloor {
            epsilon: eps.clone(),
            threshold_digits: threshold.to_string().len(),
            met,
        }
    });
    debug_assert_eq!(
        BigUint::from(classes.values().sum::<u64>()),
        BigUint::from(total),
        "class sizes must add up to the labelled count"
    );
    Ok(SpanningTreeCensus {
        labelled_count: BigUint::from(total),
        classes,
        distinct,
        bounds: BoundsReport {
            degree_floor,
            degree_floor_applies,
            degree_floor_met,
            exponential,
        },
    })
}
