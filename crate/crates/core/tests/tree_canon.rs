//! Canonical codes versus explicit-witness isomorphism search: equal codes
//! must come with an isomorphism, distinct codes must survive an exhaustive
//! non-isomorphism check, and class counts must match the known sequences.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use spantree::tree::{CanonCode, RootedTree, Tree};
use spantree::treegen::LevelSequence;

// Known prefixes of the unlabelled tree counts.
const FREE_COUNTS: [usize; 7] = [1, 1, 1, 2, 3, 6, 11];
const ROOTED_COUNTS: [usize; 6] = [1, 1, 2, 4, 9, 20];

/// Labelled edge lists together with the root each was canonicalised at.
type RootedWitnesses = Vec<(Vec<(usize, usize)>, usize)>;

#[test]
fn free_canon_agrees_with_brute_force_up_to_seven_vertices() {
    for n in 1..=7usize {
        let mut classes: BTreeMap<CanonCode, Vec<Vec<(usize, usize)>>> = BTreeMap::new();
        for edges in common::all_labelled_trees(n) {
            let tree = Tree::from_edges(n, edges.clone()).expect("decoded trees are valid");
            classes.entry(tree.canon_free()).or_default().push(edges);
        }
        assert_eq!(
            classes.len(),
            FREE_COUNTS[n - 1],
            "distinct codes on {n} vertices"
        );
        let reps: Vec<&Vec<(usize, usize)>> =
            classes.values().map(|members| &members[0]).collect();
        // Equal code implies isomorphic: exhibit a witness member-to-rep.
        for members in classes.values() {
            for member in members {
                assert!(
                    common::isomorphic(n, member, &members[0]),
                    "same code, no isomorphism: {member:?} vs {:?}",
                    members[0]
                );
            }
        }
        // Distinct codes imply non-isomorphic: exhaustive search finds none.
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                assert!(
                    !common::isomorphic(n, a, b),
                    "distinct codes yet isomorphic: {a:?} vs {b:?}"
                );
            }
        }
    }
}

#[test]
fn rooted_canon_agrees_with_brute_force_up_to_six_vertices() {
    for n in 1..=6usize {
        let mut classes: BTreeMap<CanonCode, RootedWitnesses> = BTreeMap::new();
        for edges in common::all_labelled_trees(n) {
            for root in 0..n {
                let tree = Tree::from_edges(n, edges.clone()).expect("valid tree");
                let rooted = RootedTree::new(tree, root).expect("root in range");
                classes
                    .entry(rooted.canon())
                    .or_default()
                    .push((edges.clone(), root));
            }
        }
        assert_eq!(
            classes.len(),
            ROOTED_COUNTS[n - 1],
            "distinct rooted codes on {n} vertices"
        );
        for members in classes.values() {
            let (rep, rep_root) = &members[0];
            for (edges, root) in members {
                assert!(
                    common::rooted_isomorphic(n, edges, rep, (*root, *rep_root)),
                    "same rooted code, no root-preserving isomorphism"
                );
            }
        }
        let reps: Vec<&(Vec<(usize, usize)>, usize)> =
            classes.values().map(|m| &m[0]).collect();
        for (i, (a, ra)) in reps.iter().enumerate() {
            for (b, rb) in reps.iter().skip(i + 1) {
                assert!(
                    !common::rooted_isomorphic(n, a, b, (*ra, *rb)),
                    "distinct rooted codes yet isomorphic"
                );
            }
        }
    }
}

#[test]
fn centers_match_the_eccentricity_definition() {
    for n in 1..=7usize {
        for edges in common::all_labelled_trees(n) {
            let tree = Tree::from_edges(n, edges).expect("valid tree");
            let mut centers = eccentricity_centers(&tree);
            let mut got = tree.center();
            got.sort_unstable();
            centers.sort_unstable();
            assert_eq!(got, centers);
        }
    }
}

/// Vertices of minimum eccentricity, straight from the definition.
fn eccentricity_centers(tree: &Tree) -> Vec<usize> {
    let n = tree.vertex_count();
    let mut ecc = vec![0usize; n];
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in tree.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        ecc[s] = dist.into_iter().max().unwrap();
    }
    let min = *ecc.iter().min().unwrap();
    (0..n).filter(|&v| ecc[v] == min).collect()
}

/// Random parent-pointer vectors: v's parent is drawn from 0..v.
fn parent_vector(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max_n).prop_flat_map(|n| {
        (1..n)
            .map(|v| (0..v).prop_map(move |p| p))
            .collect::<Vec<_>>()
    })
}

proptest! {
    /// Canon codes are invariant under relabelling: a random tree and a
    /// random permutation of it always share both free and rooted codes.
    #[test]
    fn canon_is_label_invariant(parents in parent_vector(10), shuffle_seed in any::<u64>()) {
        let n = parents.len() + 1;
        let edges: Vec<(usize, usize)> =
            parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();

        // A full permutation from a seed, via decreasing-modulus swaps.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = shuffle_seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }

        let relabelled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        let a = Tree::from_edges(n, edges).unwrap();
        let b = Tree::from_edges(n, relabelled).unwrap();
        prop_assert_eq!(a.canon_free(), b.canon_free());
        let ra = RootedTree::new(a, 0).unwrap();
        let rb = RootedTree::new(b, perm[0]).unwrap();
        prop_assert_eq!(ra.canon(), rb.canon());
    }

    /// Level-sequence canonicalization round-trips arbitrary rooted trees.
    #[test]
    fn level_sequence_round_trip_preserves_the_rooted_class(parents in parent_vector(12)) {
        let n = parents.len() + 1;
        let edges: Vec<(usize, usize)> =
            parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let tree = Tree::from_edges(n, edges).unwrap();
        let rooted = RootedTree::new(tree, 0).unwrap();
        let seq = LevelSequence::from_rooted(&rooted);
        prop_assert!(seq.is_canonical());
        prop_assert_eq!(seq.to_tree().canon(), rooted.canon());
    }
}
