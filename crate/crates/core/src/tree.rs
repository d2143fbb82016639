//! Trees with validated structure and canonical forms.
//!
//! A [`Tree`] is an undirected tree on vertices `0..n`. Canonical codes are
//! balanced-parenthesis bytestrings: two trees get the same code exactly when
//! they are isomorphic, so codes double as hash/ordering keys for
//! isomorphism classes. Free (unrooted) trees are canonicalized through
//! their center, which is an isomorphism invariant.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("not a tree: vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("not a tree: self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("not a tree: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("not a tree: {n} vertices need {expected} edges, got {actual}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("not a tree: vertex {v} is not reachable from vertex 0")]
    Disconnected { v: usize },
    #[error("degree statistics are undefined on a single vertex")]
    SingleVertex,
    #[error("root {root} out of range for n = {n}")]
    RootOutOfRange { root: usize, n: usize },
    #[error("tree is empty (n = 0)")]
    Empty,
}

/// Canonical form of a tree, ordered and hashable.
///
/// Rooted codes are balanced parentheses; free codes carry a leading `1` or
/// `2` for the center size so one- and two-center trees can never collide.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode(Vec<u8>);

impl CanonCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Display for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("codes are ASCII"))
    }
}

impl fmt::Debug for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonCode({self})")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Tree {
    /// Validate and build a tree from an edge list. Every violation is
    /// reported by name: range, loops, duplicates, edge count, connectivity.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(TreeError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(TreeError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(TreeError::SelfLoop { v: u });
            }
            norm.push((u.min(v), u.max(v)));
        }
        if norm.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                actual: norm.len(),
            });
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(TreeError::DuplicateEdge {
                    u: w[0].0,
                    v: w[0].1,
                });
            }
        }
        let tree = Tree::from_sorted_edges(n, norm);
        // n-1 edges, no duplicates: connected iff acyclic. BFS from 0.
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &tree.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            let v = seen.iter().position(|&s| !s).unwrap();
            return Err(TreeError::Disconnected { v });
        }
        Ok(tree)
    }

    /// Internal constructor for edges already known to form a tree.
    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Tree {
        let mut norm: Vec<(usize, usize)> =
            edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        let tree = Tree::from_sorted_edges(n, norm);
        debug_assert!(
            Tree::from_edges(n, tree.edges.iter().copied()).is_ok(),
            "caller promised a valid tree"
        );
        tree
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Tree {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Tree { n, edges, adj }
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

    /// `(max_degree, leaf_count)`. Degenerate on one vertex, by design:
    /// a lone vertex has no meaningful leaf count.
    pub fn degree_stats(&self) -> Result<(usize, usize), TreeError> {
        if self.n == 1 {
            return Err(TreeError::SingleVertex);
        }
        let max = (0..self.n).map(|v| self.degree(v)).max().unwrap();
        let leaves = (0..self.n).filter(|&v| self.degree(v) == 1).count();
        Ok((max, leaves))
    }

    /// Center of the tree: one or two adjacent vertices, found by peeling
    /// leaves layer by layer.
    pub fn center(&self) -> Vec<usize> {
        if self.n <= 2 {
            return (0..self.n).collect();
        }
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                removed[leaf] = true;
                for &w in &self.adj[leaf] {
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut center: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        center.sort_unstable();
        center
    }

    /// Canonical code of the unrooted tree. Equal codes <=> isomorphic.
    pub fn canon_free(&self) -> CanonCode {
        let center = self.center();
        match center[..] {
            [c] => {
                let mut code = vec![b'1'];
                code.extend(ahu_code(self, c, None));
                CanonCode(code)
            }
            [c1, c2] => {
                // Split the central edge; canonicalize each side rooted at
                // its center endpoint, then order the halves.
                let a = ahu_code(self, c1, Some((c1, c2)));
                let b = ahu_code(self, c2, Some((c1, c2)));
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let mut code = vec![b'2'];
                code.extend(lo);
                code.extend(hi);
                CanonCode(code)
            }
            _ => unreachable!("a tree has one or two center vertices"),
        }
    }

    pub fn is_isomorphic_to(&self, other: &Tree) -> bool {
        self.n == other.n && self.canon_free() == other.canon_free()
    }
}

/// A tree plus a distinguished root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Tree,
    root: usize,
}

impl RootedTree {
    pub fn new(tree: Tree, root: usize) -> Result<RootedTree, TreeError> {
        if root >= tree.n {
            return Err(TreeError::RootOutOfRange { root, n: tree.n });
        }
        Ok(RootedTree { tree, root })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.n
    }

    /// Canonical code of the rooted tree (root must map to root).
    pub fn canon(&self) -> CanonCode {
        CanonCode(ahu_code(&self.tree, self.root, None))
    }

    pub fn is_isomorphic_to(&self, other: &RootedTree) -> bool {
        self.vertex_count() == other.vertex_count() && self.canon() == other.canon()
    }
}

/// Canonical balanced-parenthesis code of the subtree hanging from `root`,
/// never crossing `blocked` (used to split a tree at its central edge).
/// Children codes are concatenated in ascending byte order, which makes the
/// code independent of labelling.
fn ahu_code(tree: &Tree, root: usize, blocked: Option<(usize, usize)>) -> Vec<u8> {
    let n = tree.n;
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = VecDeque::from([root]);
    let mut visited = vec![false; n];
    visited[root] = true;
    let crosses = |u: usize, w: usize| {
        blocked.is_some_and(|(a, b)| (u == a && w == b) || (u == b && w == a))
    };
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in &tree.adj[u] {
            if !visited[w] && !crosses(u, w) {
                visited[w] = true;
                parent[w] = u;
                children[u].push(w);
                queue.push_back(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids: Vec<Vec<u8>> = children[u]
            .iter()
            .map(|&c| std::mem::take(&mut codes[c]))
            .collect();
        kids.sort_unstable();
        let total: usize = kids.iter().map(Vec::len).sum();
        let mut code = Vec::with_capacity(total + 2);
        code.push(b'(');
        for k in kids {
            code.extend(k);
        }
        code.push(b')');
        codes[u] = code;
    }
    std::mem::take(&mut codes[root])
}
