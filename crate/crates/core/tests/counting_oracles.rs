//! The closed recurrences against brute force: bucket every labelled tree
//! by canonical code and compare class counts with the count tables.

mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use spantree::counting::{self, choose_k, CountTable};
use spantree::tree::{CanonCode, RootedTree, Tree};

#[test]
fn free_counts_match_labelled_tree_bucketing_up_to_eight_vertices() {
    let mut table = CountTable::new();
    table.ensure_free(8).unwrap();
    for n in 1..=8usize {
        let mut codes: HashSet<CanonCode> = HashSet::new();
        for edges in common::all_labelled_trees(n) {
            codes.insert(Tree::from_edges(n, edges).unwrap().canon_free());
        }
        assert_eq!(
            BigUint::from(codes.len()),
            *table.free(n).unwrap(),
            "free classes on {n} vertices"
        );
    }
}

#[test]
fn rooted_counts_match_labelled_tree_bucketing_up_to_seven_vertices() {
    let mut table = CountTable::new();
    table.ensure_rooted(7).unwrap();
    for n in 1..=7usize {
        let mut codes: HashSet<CanonCode> = HashSet::new();
        for edges in common::all_labelled_trees(n) {
            for root in 0..n {
                let tree = Tree::from_edges(n, edges.clone()).unwrap();
                codes.insert(RootedTree::new(tree, root).unwrap().canon());
            }
        }
        assert_eq!(
            BigUint::from(codes.len()),
            *table.rooted(n).unwrap(),
            "rooted classes on {n} vertices"
        );
    }
}

#[test]
fn ratio_estimates_increase_toward_the_reference_value() {
    // Consecutive-quotient estimates are increasing in k and stay below
    // the rational reference 2.956 used by the certificates.
    let table = counting::rooted_counts(60).unwrap();
    let ratio = |k: usize| {
        let num = table.rooted(k).unwrap();
        let den = table.rooted(k - 1).unwrap();
        (num.clone(), den.clone())
    };
    let mut prev = ratio(10);
    for k in [20usize, 30, 40, 50, 60] {
        let cur = ratio(k);
        // prev < cur as fractions: prev.0 * cur.1 < cur.0 * prev.1.
        assert!(
            &prev.0 * &cur.1 < &cur.0 * &prev.1,
            "ratio estimate should grow from k = {} to {k}",
            k - 10
        );
        prev = cur;
    }
    let (num, den) = prev;
    assert!(num * BigUint::from(1000u32) < den * BigUint::from(2956u32));
}

#[test]
fn chosen_block_size_is_the_least_that_clears_the_per_vertex_target() {
    // Independent recomputation of the selection rule for eps = 1: the
    // target is 2956/1000 - 1/3 = 1967/750 per vertex, and k is accepted
    // when a_k * 750^k > 1967^k.
    let mut table = CountTable::new();
    let eps = num_rational::Ratio::new(num_bigint::BigInt::from(1), 1.into());
    let k = choose_k(&eps, &mut table, 5_000).unwrap();
    assert_eq!(k, 58);
    let clears = |k: usize, table: &CountTable| {
        let p = BigUint::from(1967u32).pow(k as u32);
        let q = BigUint::from(750u32).pow(k as u32);
        table.rooted(k).unwrap() * q > p
    };
    assert!(clears(k, &table));
    for below in [k - 1, k - 2, k / 2, 2] {
        assert!(!clears(below, &table), "k = {below} should not clear the target");
    }
}

#[test]
fn block_size_selection_pins_across_the_slack_range() {
    // The per-vertex target is 2956/1000 - eps/3, which stays well above 1
    // even when eps eats almost the whole reference value: slack never
    // collapses the answer to the degenerate k = 2.
    let mut table = CountTable::new();
    let rational = |p: i64, q: i64| {
        num_rational::Ratio::new(num_bigint::BigInt::from(p), q.into())
    };
    for (eps, expected) in [
        (rational(1, 2), 143usize),
        (rational(1, 1), 58),
        (rational(2, 1), 22),
        (rational(2955, 1000), 11),
    ] {
        let k = choose_k(&eps, &mut table, 5_000).unwrap();
        assert_eq!(k, expected, "eps = {eps}");
    }
}
