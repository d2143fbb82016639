//! Packing tuples of small rooted trees into single large trees, and the
//! exact-arithmetic growth certificates that packing yields.
//!
//! For a block size k and target order n, [`compute_params`] splits
//! n = l*k + a + b: l blocks of k vertices strung on a spine, plus two
//! pendant paths of distinct lengths a < b that mark the spine's two ends.
//! [`encode`] maps each l-tuple of rooted k-vertex trees to a tree on n
//! vertices; [`decode`] inverts it exactly on the image and reports, for
//! everything else, which structural feature is missing. Distinct tuples
//! give non-isomorphic trees, so the image realizes a_k^l isomorphism
//! classes on n vertices — all with maximum degree k+1 and a constant
//! fraction of leaves. [`certify`] turns that count into a verified
//! inequality against a requested exponential target.

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::counting::{
    alpha_ref, choose_k, ratio_parts, BigRational, CountError, CountTable, DEFAULT_CHOOSE_K_CAP,
};
use crate::tree::{RootedTree, Tree};
use crate::treegen::LevelSequence;

/// Default ceiling on the threshold search in [`certified_threshold`].
pub const DEFAULT_THRESHOLD_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpineError {
    #[error("block size must be at least 2, got k = {k}")]
    BlockTooSmall { k: usize },
    #[error("spine parameters need n >= 8k: got n = {n} with k = {k}, minimum {min_n}")]
    TooSmall { n: usize, k: usize, min_n: usize },
    #[error("tuple has {got} blocks, parameters require {want}")]
    WrongBlockCount { got: usize, want: usize },
    #[error("block {index} has {got} vertices, parameters require {want}")]
    WrongBlockSize { index: usize, got: usize, want: usize },
    #[error("tree is not an encoding: {0}")]
    NotInImage(NotInImageReason),
    #[error("no threshold at or below n = {cap} certifies epsilon = {epsilon}")]
    ThresholdNotFound { epsilon: String, cap: usize },
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Why a tree cannot be a spine encoding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotInImageReason {
    #[error("expected exactly 2 pendant paths longer than k = {k}, found {found}")]
    WrongLongPathCount { k: usize, found: usize },
    #[error("the two long pendant paths both have length {len}")]
    EqualLengths { len: usize },
    #[error("bad parameters: {detail}")]
    BadParams { detail: String },
    #[error("spine block {index} has {got} vertices, expected {expected}")]
    BadBlockSize {
        index: usize,
        got: usize,
        expected: usize,
    },
}

/// Split of n into l blocks of k vertices plus marker paths of a and b
/// vertices. Invariants: a = 2k+1 < b, a + b + l*k = n, l >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpineParams {
    pub n: usize,
    pub k: usize,
    /// Number of blocks, floor(n/k) - 6.
    pub l: usize,
    /// Vertices reserved for the two marker paths (6k <= r < 7k).
    pub r: usize,
    /// Shorter marker path, 2k + 1 vertices.
    pub a: usize,
    /// Longer marker path, r - a vertices; at least 4k - 1 > a.
    pub b: usize,
}

/// Derive the canonical split for (n, k). Requires k >= 2 and n >= 8k (the
/// smallest n giving two blocks and both marker paths).
pub fn compute_params(n: usize, k: usize) -> Result<SpineParams, SpineError> {
    if k < 2 {
        return Err(SpineError::BlockTooSmall { k });
    }
    if n < 8 * k {
        return Err(SpineError::TooSmall { n, k, min_n: 8 * k });
    }
    let l = n / k - 6;
    let r = n - l * k;
    let a = 2 * k + 1;
    let b = r - a;
    debug_assert!(l >= 2);
    debug_assert!((6 * k..7 * k).contains(&r));
    debug_assert!(a < b, "marker paths must have distinct lengths");
    debug_assert_eq!(l * k + a + b, n);
    Ok(SpineParams { n, k, l, r, a, b })
}

/// An ordered tuple of rooted trees, the domain of the encoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeTuple {
    blocks: Vec<RootedTree>,
}

impl TreeTuple {
    pub fn new(blocks: Vec<RootedTree>) -> TreeTuple {
        TreeTuple { blocks }
    }

    pub fn blocks(&self) -> &[RootedTree] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The same tuple with every block relabelled into canonical preorder —
    /// the exact form [`decode`] returns.
    pub fn canonical(&self) -> TreeTuple {
        TreeTuple {
            blocks: self
                .blocks
                .iter()
                .map(|b| LevelSequence::from_rooted(b).to_tree())
                .collect(),
        }
    }
}

/// Encode a tuple of l rooted k-vertex trees as one tree on n vertices.
///
/// Layout: block i is relabelled into canonical preorder on vertices
/// [i*k, (i+1)*k) with its root at i*k; spine edges join consecutive roots;
/// the a-path hangs off the first root, the b-path off the last. Since
/// a != b the two spine ends are distinguishable, so the tuple order is
/// recoverable and the map is injective on isomorphism classes.
pub fn encode(params: &SpineParams, tuple: &TreeTuple) -> Result<Tree, SpineError> {
    if tuple.len() != params.l {
        return Err(SpineError::WrongBlockCount {
            got: tuple.len(),
            want: params.l,
        });
    }
    for (index, block) in tuple.blocks().iter().enumerate() {
        if block.vertex_count() != params.k {
            return Err(SpineError::WrongBlockSize {
                index,
                got: block.vertex_count(),
                want: params.k,
            });
        }
    }
    let (n, k, l) = (params.n, params.k, params.l);
    let mut edges = Vec::with_capacity(n - 1);
    for (i, block) in tuple.blocks().iter().enumerate() {
        let canonical = LevelSequence::from_rooted(block).to_tree();
        debug_assert_eq!(canonical.root(), 0);
        let offset = i * k;
        for &(u, v) in canonical.tree().edges() {
            edges.push((offset + u, offset + v));
        }
    }
    for i in 0..l - 1 {
        edges.push((i * k, (i + 1) * k));
    }
    // Marker paths: a vertices chained off root 0, then b vertices chained
    // off the last root.
    let mut prev = 0;
    for p in l * k..l * k + params.a {
        edges.push((prev, p));
        prev = p;
    }
    prev = (l - 1) * k;
    for p in l * k + params.a..n {
        edges.push((prev, p));
        prev = p;
    }
    Ok(Tree::from_edges_unchecked(n, edges))
}

/// Invert [`encode`]: recover the tuple of blocks in canonical preorder
/// form, or explain which structural feature rules the tree out.
pub fn decode(tree: &Tree, k: usize) -> Result<TreeTuple, SpineError> {
    let n = tree.vertex_count();
    let params = match compute_params(n, k) {
        Ok(p) => p,
        Err(SpineError::TooSmall { n, k, min_n }) => {
            return Err(SpineError::NotInImage(NotInImageReason::BadParams {
                detail: format!("n = {n} is below the minimum {min_n} for k = {k}"),
            }))
        }
        Err(e) => return Err(e),
    };
    // Maximal pendant paths: from each leaf, walk through degree-2 vertices
    // to the first vertex of degree >= 3 (the anchor). Paths longer than k
    // can only be the two markers: a path inside a k-vertex block has at
    // most k - 1 vertices.
    let mut long_paths: Vec<(usize, Vec<usize>)> = Vec::new(); // (anchor, path from leaf)
    for leaf in (0..n).filter(|&v| tree.degree(v) == 1) {
        let mut path = Vec::new();
        let mut prev = usize::MAX;
        let mut cur = leaf;
        let anchor = loop {
            if tree.degree(cur) >= 3 {
                break Some(cur);
            }
            path.push(cur);
            match tree.neighbors(cur).iter().find(|&&w| w != prev) {
                Some(&w) => {
                    prev = cur;
                    cur = w;
                }
                None => break None, // the whole tree is a bare path
            }
        };
        if let Some(anchor) = anchor {
            if path.len() > k {
                long_paths.push((anchor, path));
            }
        }
    }
    if long_paths.len() != 2 {
        return Err(SpineError::NotInImage(
            NotInImageReason::WrongLongPathCount {
                k,
                found: long_paths.len(),
            },
        ));
    }
    long_paths.sort_by_key(|(_, p)| p.len());
    let (first, second) = (&long_paths[0], &long_paths[1]);
    if first.1.len() == second.1.len() {
        return Err(SpineError::NotInImage(NotInImageReason::EqualLengths {
            len: first.1.len(),
        }));
    }
    if first.1.len() != params.a || second.1.len() != params.b {
        return Err(SpineError::NotInImage(NotInImageReason::BadParams {
            detail: format!(
                "marker paths have {} and {} vertices, parameters require {} and {}",
                first.1.len(),
                second.1.len(),
                params.a,
                params.b
            ),
        }));
    }
    let (x_first, x_last) = (first.0, second.0);
    if x_first == x_last {
        return Err(SpineError::NotInImage(NotInImageReason::BadParams {
            detail: "both marker paths attach to the same vertex".into(),
        }));
    }
    // Strip the marker paths; what is left is the spine with its blocks.
    let mut removed = vec![false; n];
    for v in first.1.iter().chain(&second.1) {
        removed[*v] = true;
    }
    // Spine = the unique x_first -> x_last path.
    let spine = tree_path(tree, x_first, x_last, &removed);
    let on_spine = {
        let mut on = vec![false; n];
        for &s in &spine {
            on[s] = true;
        }
        on
    };
    if spine.len() != params.l {
        return Err(SpineError::NotInImage(NotInImageReason::BadParams {
            detail: format!(
                "spine has {} vertices, parameters require {}",
                spine.len(),
                params.l
            ),
        }));
    }
    // Block i = component of spine vertex i after cutting spine edges.
    let mut blocks = Vec::with_capacity(params.l);
    for (index, &root) in spine.iter().enumerate() {
        let block = extract_block(tree, root, &removed, &on_spine);
        if block.vertex_count() != k {
            return Err(SpineError::NotInImage(NotInImageReason::BadBlockSize {
                index,
                got: block.vertex_count(),
                expected: k,
            }));
        }
        blocks.push(LevelSequence::from_rooted(&block).to_tree());
    }
    Ok(TreeTuple { blocks })
}

/// Vertices of the unique path from `from` to `to`, avoiding removed
/// vertices (both endpoints inclusive).
fn tree_path(tree: &Tree, from: usize, to: usize, removed: &[bool]) -> Vec<usize> {
    let n = tree.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![from];
    let mut seen = vec![false; n];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            break;
        }
        for &w in tree.neighbors(u) {
            if !seen[w] && !removed[w] {
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// The block hanging from `root`: its component after deleting marker-path
/// vertices and cutting all edges between spine vertices, relabelled by
/// discovery order and returned rooted at the spine vertex.
fn extract_block(tree: &Tree, root: usize, removed: &[bool], on_spine: &[bool]) -> RootedTree {
    let n = tree.vertex_count();
    let mut label = vec![usize::MAX; n];
    label[root] = 0;
    let mut order = vec![root];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in tree.neighbors(u) {
            if removed[w] || (on_spine[u] && on_spine[w]) || label[w] != usize::MAX {
                continue;
            }
            label[w] = order.len();
            order.push(w);
            edges.push((label[u], label[w]));
        }
    }
    let block = Tree::from_edges_unchecked(order.len(), edges);
    RootedTree::new(block, 0).expect("root 0 exists")
}

/// Everything [`certify`] proves about one (epsilon, n) pair, with the
/// exact integers behind the verdict summarized by their digit counts.
#[derive(Clone, Debug)]
pub struct FamilyCertificate {
    pub epsilon: BigRational,
    pub n: usize,
    /// Block size k: the smallest k whose per-vertex yield a_k^(1/k)
    /// exceeds alpha_ref - epsilon/3.
    pub k: usize,
    pub l: usize,
    /// Max degree across the constructed family: k + 1.
    pub delta: usize,
    /// Certified leaf fraction: every family member has >= rho * n leaves.
    pub rho: BigRational,
    /// Number of distinct isomorphism classes realized: a_k^l.
    pub realized: BigUint,
    /// Decimal digit count of the realized count and of the target
    /// ceil((alpha_ref - epsilon)^n).
    pub realized_digits: usize,
    pub target_digits: usize,
    /// Exact comparison a_k^l >= (alpha_ref - epsilon)^n.
    pub verdict: bool,
}

/// Certify that the spine family on n vertices realizes at least
/// (alpha_ref - epsilon)^n isomorphism classes, by exact integer
/// comparison. Fails with the structural errors of [`compute_params`] when
/// n is too small for the chosen block size.
pub fn certify(epsilon: &BigRational, n: usize) -> Result<FamilyCertificate, SpineError> {
    let mut table = CountTable::new();
    certify_with(epsilon, n, &mut table, DEFAULT_CHOOSE_K_CAP)
}

/// [`certify`] against a caller-managed count table (reused across calls).
pub fn certify_with(
    epsilon: &BigRational,
    n: usize,
    table: &mut CountTable,
    search_cap: usize,
) -> Result<FamilyCertificate, SpineError> {
    let k = choose_k(epsilon, table, search_cap)?;
    let params = compute_params(n, k)?;
    let ak = table.rooted(k).expect("choose_k computed a_k").clone();
    let realized = ak.pow(params.l as u32);
    let base = alpha_ref() - epsilon;
    let (p, q) = ratio_parts(&base);
    let (pn, qn) = (p.pow(n as u32), q.pow(n as u32));
    let verdict = &realized * &qn >= pn;
    let target_digits = pn.div_ceil(&qn).to_string().len();
    Ok(FamilyCertificate {
        epsilon: epsilon.clone(),
        n,
        k,
        l: params.l,
        delta: k + 1,
        rho: BigRational::new(1.into(), (3 * k as i64).into()),
        realized_digits: realized.to_string().len(),
        realized,
        target_digits,
        verdict,
    })
}

/// Smallest n* such that [`certify`] passes for every n in [n*, cap].
///
/// The verdict is not monotone in n — the realized count a_k^l jumps only
/// when n crosses a multiple of k while the target grows every step — so
/// the minimum is found per residue block: within a block of k consecutive
/// n the last one is hardest, and block minima only improve (a_k beats the
/// per-vertex target by choice of k).
pub fn certified_threshold(epsilon: &BigRational, cap: usize) -> Result<usize, SpineError> {
    let mut table = CountTable::new();
    let k = choose_k(epsilon, &mut table, DEFAULT_CHOOSE_K_CAP)?;
    let ak = table.rooted(k).expect("choose_k computed a_k").clone();
    let base = alpha_ref() - epsilon;
    let (p, q) = ratio_parts(&base);
    let trivial = p <= q; // target below 1: every valid n passes
    let mut m = 8; // first block with l >= 2
    loop {
        let n_start = m * k;
        if n_start > cap {
            return Err(SpineError::ThresholdNotFound {
                epsilon: epsilon.to_string(),
                cap,
            });
        }
        if trivial {
            return Ok(n_start);
        }
        // Hardest n in the block [m*k, (m+1)*k): the last one.
        let n_worst = n_start + k - 1;
        let l = m - 6;
        let realized = ak.pow(l as u32);
        let pass = realized * q.pow(n_worst as u32) >= p.pow(n_worst as u32);
        if pass {
            return Ok(n_start);
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treegen::all_rooted;
    use num_bigint::BigInt;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn params_arithmetic() {
        let p = compute_params(16, 2).unwrap();
        assert_eq!((p.l, p.r, p.a, p.b), (2, 12, 5, 7));
        let p = compute_params(100, 3).unwrap();
        assert_eq!(p.l, 100 / 3 - 6);
        assert_eq!(p.l * 3 + p.a + p.b, 100);
        assert!(p.a < p.b);
        assert!((6 * 3..7 * 3).contains(&p.r));
    }

    #[test]
    fn params_domain_errors() {
        assert_eq!(
            compute_params(15, 2),
            Err(SpineError::TooSmall {
                n: 15,
                k: 2,
                min_n: 16
            })
        );
        assert_eq!(compute_params(100, 1), Err(SpineError::BlockTooSmall { k: 1 }));
    }

    #[test]
    fn encode_decode_round_trip_smallest_instance() {
        // n = 16, k = 2: two blocks, each the unique 2-vertex rooted tree.
        let params = compute_params(16, 2).unwrap();
        let block = || all_rooted(2).unwrap().next().unwrap();
        let tuple = TreeTuple::new(vec![block(), block()]);
        let tree = encode(&params, &tuple).unwrap();
        assert_eq!(tree.vertex_count(), 16);
        let back = decode(&tree, 2).unwrap();
        assert_eq!(back, tuple.canonical());
        let (max_deg, leaves) = tree.degree_stats().unwrap();
        assert!(max_deg <= 3);
        assert!(leaves >= 4); // l + 2
    }

    #[test]
    fn tuple_order_is_preserved() {
        // n = 40, k = 4: l = 4 blocks, one of each rooted shape on 4 vertices.
        let params = compute_params(40, 4).unwrap();
        let blocks: Vec<_> = all_rooted(4).unwrap().collect();
        assert_eq!(blocks.len(), 4);
        let tuple = TreeTuple::new(blocks.clone());
        let back = decode(&encode(&params, &tuple).unwrap(), 4).unwrap();
        for (orig, dec) in tuple.blocks().iter().zip(back.blocks()) {
            assert_eq!(orig.canon(), dec.canon());
        }
        // And a reordered tuple decodes to the reordered sequence.
        let mut rev = blocks;
        rev.reverse();
        let tuple_rev = TreeTuple::new(rev);
        let back_rev = decode(&encode(&params, &tuple_rev).unwrap(), 4).unwrap();
        assert_ne!(back, back_rev);
    }

    #[test]
    fn encode_rejects_wrong_shapes() {
        let params = compute_params(16, 2).unwrap();
        let two = || all_rooted(2).unwrap().next().unwrap();
        let three = all_rooted(3).unwrap().next().unwrap();
        assert_eq!(
            encode(&params, &TreeTuple::new(vec![two()])),
            Err(SpineError::WrongBlockCount { got: 1, want: 2 })
        );
        assert_eq!(
            encode(&params, &TreeTuple::new(vec![two(), three])),
            Err(SpineError::WrongBlockSize {
                index: 1,
                got: 3,
                want: 2
            })
        );
    }

    #[test]
    fn decode_rejects_non_images() {
        // A bare path has no anchors at all.
        let path = Tree::from_edges(16, (0..15).map(|i| (i, i + 1))).unwrap();
        assert_eq!(
            decode(&path, 2),
            Err(SpineError::NotInImage(
                NotInImageReason::WrongLongPathCount { k: 2, found: 0 }
            ))
        );
        // A star has no pendant path longer than 1.
        let star = Tree::from_edges(16, (1..16).map(|v| (0, v))).unwrap();
        assert_eq!(
            decode(&star, 2),
            Err(SpineError::NotInImage(
                NotInImageReason::WrongLongPathCount { k: 2, found: 0 }
            ))
        );
        // Too few vertices for any parameters.
        let small = Tree::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert!(matches!(
            decode(&small, 2),
            Err(SpineError::NotInImage(NotInImageReason::BadParams { .. }))
        ));
    }

    #[test]
    fn decode_reports_equal_marker_lengths() {
        // n = 16, k = 2, so "long" means > 2 vertices. Two 5-vertex pendant
        // paths hang from anchors 1 and 2; extra leaves (3, 4, 15) pad the
        // anchors to degree 3 and fill out n.
        let mut edges = vec![(0, 1), (0, 2), (0, 15), (1, 3), (2, 4)];
        let mut next = 5;
        for start in [1, 2] {
            let mut prev = start;
            for _ in 0..5 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        let tree = Tree::from_edges(16, edges).unwrap();
        assert_eq!(
            decode(&tree, 2),
            Err(SpineError::NotInImage(NotInImageReason::EqualLengths {
                len: 5
            }))
        );
    }

    #[test]
    fn certificate_is_exact_and_stable() {
        let eps = ratio(1, 1);
        let cert_n = |n: usize| certify(&eps, n).unwrap();
        let c = cert_n(1000);
        assert_eq!(c.delta, c.k + 1);
        assert_eq!(c.rho, BigRational::new(1.into(), (3 * c.k as i64).into()));
        assert!(c.realized_digits > 0 && c.target_digits > 0);
        // Same inputs, same verdict and numbers.
        let d = cert_n(1000);
        assert_eq!(c.verdict, d.verdict);
        assert_eq!(c.realized, d.realized);
    }

    #[test]
    fn threshold_is_tight() {
        let eps = ratio(1, 1);
        let n_star = certified_threshold(&eps, 1_000_000).unwrap();
        // Everything from the threshold up passes (spot-check the block
        // boundaries near n*), and the step just below fails.
        let k = certify(&eps, n_star).unwrap().k;
        assert_eq!(n_star % k, 0);
        assert!(certify(&eps, n_star).unwrap().verdict);
        assert!(certify(&eps, n_star + k - 1).unwrap().verdict);
        assert!(!certify(&eps, n_star - 1).unwrap().verdict);
    }

    #[test]
    fn huge_epsilon_makes_every_n_pass() {
        // alpha_ref - eps < 1: the target is below one class.
        let eps = ratio(2, 1);
        let n_star = certified_threshold(&eps, 1_000_000).unwrap();
        let k = choose_k(&eps, &mut CountTable::new(), 100).unwrap();
        assert_eq!(n_star, 8 * k);
    }
}
