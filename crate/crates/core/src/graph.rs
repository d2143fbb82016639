//! Simple undirected graphs and deterministic generators.
//!
//! Graphs are stored as validated edge lists with adjacency. The random
//! regular generator is the pairing (configuration) model with rejection:
//! conditioned on acceptance that is the uniform distribution on simple
//! d-regular graphs. An attempt is abandoned as soon as a loop or repeated
//! edge appears, which changes nothing about the accepted distribution —
//! the remaining pairing would have been rejected anyway.

use rand::Rng;
use thiserror::Error;

use crate::rng;

/// Default ceiling on pairing-model attempts before giving up.
pub const DEFAULT_PAIRING_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(
        "no simple {d}-regular graph found on {n} vertices within {attempts} pairing attempts"
    )]
    RejectionBudgetExceeded { n: usize, d: usize, attempts: u64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

impl Graph {
    /// Validate and build a simple graph from an edge list.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge {
                    u: w[0].0,
                    v: w[0].1,
                });
            }
        }
        Ok(Graph::from_sorted(n, norm))
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Graph { n, edges, adj }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Ok(Graph::from_sorted(n, edges))
    }

    /// Cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::BadParameters(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Ok(Graph::from_edges(n, edges).expect("cycle is simple"))
    }

    /// Uniform random simple d-regular graph via the pairing model.
    ///
    /// Deterministic in `seed` (one ChaCha12 stream drives all attempts).
    /// Fails with [`GraphError::RejectionBudgetExceeded`] when `budget`
    /// attempts all produce a loop or multi-edge.
    pub fn random_regular(
        n: usize,
        d: usize,
        seed: u64,
        budget: u64,
    ) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if d >= n || !(n * d).is_multiple_of(2) {
            return Err(GraphError::BadParameters(format!(
                "d-regular on n vertices needs d < n and n*d even, got n = {n}, d = {d}"
            )));
        }
        if d == 0 {
            return Ok(Graph::from_sorted(n, Vec::new()));
        }
        let mut rng = rng::seeded(seed);
        let total = n * d;
        // points[0..m] are the unmatched half-edges; point p belongs to
        // vertex p / d.
        let mut points: Vec<usize> = Vec::with_capacity(total);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(total / 2);
        let mut attempts = 0u64;
        'attempt: loop {
            attempts += 1;
            if attempts > budget {
                return Err(GraphError::RejectionBudgetExceeded {
                    n,
                    d,
                    attempts: budget,
                });
            }
            points.clear();
            points.extend(0..total);
            for a in adj.iter_mut() {
                a.clear();
            }
            edges.clear();
            let mut m = total;
            while m > 0 {
                // Match a fixed free point with a uniformly random other
                // free point: this yields a uniform perfect matching.
                let j = rng.random_range(1..m);
                let (pu, pv) = (points[0], points[j]);
                points[j] = points[m - 1];
                points[0] = points[m - 2];
                m -= 2;
                let (u, v) = (pu / d, pv / d);
                if u == v || adj[u].contains(&v) {
                    continue 'attempt; // doomed pairing; restart
                }
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u.min(v), u.max(v)));
            }
            edges.sort_unstable();
            return Ok(Graph::from_sorted(n, std::mem::take(&mut edges)));
        }
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_sorted(self.n + other.n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges normalized as `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }
}
