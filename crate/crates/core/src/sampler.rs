//! Uniform spanning-tree sampling and empirical shape distributions.
//!
//! Wilson's algorithm: grow the tree from a root by loop-erased random
//! walks. The returned tree is exactly uniform over all spanning trees —
//! remarkably, regardless of which vertex is the root. Samples are drawn on
//! independent, stably numbered RNG streams, so sample i is the same tree
//! whether computed serially or on a thread pool.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use thiserror::Error;

use crate::census::{unlabelled_census, CensusError};
use crate::graph::Graph;
use crate::rng;
use crate::tree::{CanonCode, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("graph is disconnected: no spanning trees to sample")]
    Disconnected,
    #[error("thread count must be at least 1")]
    NoThreads,
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// One uniform spanning tree (stream 0 of `seed`).
pub fn sample_spanning_tree(g: &Graph, seed: u64) -> Result<Tree, SamplerError> {
    sample_spanning_tree_stream(g, seed, 0)
}

/// One uniform spanning tree from the given RNG stream.
pub fn sample_spanning_tree_stream(
    g: &Graph,
    seed: u64,
    stream: u64,
) -> Result<Tree, SamplerError> {
    if !g.is_connected() {
        return Err(SamplerError::Disconnected);
    }
    let mut rng = rng::seeded_stream(seed, stream);
    Ok(wilson(g, &mut rng, 0))
}

/// Loop-erased random walk sampler, rooted at `root`.
fn wilson(g: &Graph, rng: &mut impl rand::Rng, root: usize) -> Tree {
    let n = g.vertex_count();
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n]; // successor pointer along current walk
    in_tree[root] = true;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for start in 0..n {
        if in_tree[start] {
            continue;
        }
        // Random walk from `start` until the tree is hit; cycles are erased
        // implicitly by overwriting the successor pointer.
        let mut u = start;
        while !in_tree[u] {
            next[u] = *g.neighbors(u).choose(rng).expect("connected, so deg >= 1");
            u = next[u];
        }
        // Freeze the loop-erased path.
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            edges.push((u, next[u]));
            u = next[u];
        }
    }
    Tree::from_edges_unchecked(n, edges)
}

/// Empirical distribution over spanning-tree shapes.
#[derive(Clone, Debug)]
pub struct ClassDistribution {
    pub n: usize,
    pub total: u64,
    /// Occurrences per canonical code; keys sorted for stable iteration.
    pub counts: BTreeMap<CanonCode, u64>,
    /// Collision benchmark e^(-(1 - epsilon) n) the top class frequency is
    /// compared against (report only).
    pub epsilon: f64,
    pub threshold: f64,
    /// Seed is present for sampled distributions, absent for exact ones.
    pub seed: Option<u64>,
    pub generator: &'static str,
}

impl ClassDistribution {
    /// Frequency of the most common shape (zero on an empty sample).
    pub fn max_class_frequency(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let max = self.counts.values().copied().max().unwrap_or(0);
        max as f64 / self.total as f64
    }

    /// Does the most common shape stay under the collision benchmark?
    pub fn under_threshold(&self) -> bool {
        self.max_class_frequency() <= self.threshold
    }

    fn benchmark(n: usize, epsilon: f64) -> f64 {
        (-(1.0 - epsilon) * n as f64).exp()
    }
}

/// Draw `samples` uniform spanning trees and bucket them by shape.
pub fn class_distribution(
    g: &Graph,
    samples: u64,
    seed: u64,
    epsilon: f64,
) -> Result<ClassDistribution, SamplerError> {
    class_distribution_threaded(g, samples, seed, epsilon, 1)
}

/// Multi-threaded variant. Output is byte-identical for any thread count:
/// sample i always comes from RNG stream i.
pub fn class_distribution_threaded(
    g: &Graph,
    samples: u64,
    seed: u64,
    epsilon: f64,
    threads: usize,
) -> Result<ClassDistribution, SamplerError> {
    if threads == 0 {
        return Err(SamplerError::NoThreads);
    }
    if !g.is_connected() {
        return Err(SamplerError::Disconnected);
    }
    let threads = threads.min(samples.max(1) as usize);
    let mut counts: BTreeMap<CanonCode, u64> = BTreeMap::new();
    if threads <= 1 {
        for i in 0..samples {
            let mut rng = rng::seeded_stream(seed, i);
            let t = wilson(g, &mut rng, 0);
            *counts.entry(t.canon_free()).or_insert(0) += 1;
        }
    } else {
        let partials = std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(threads);
            for w in 0..threads as u64 {
                let g = &g;
                handles.push(scope.spawn(move || {
                    let mut local: BTreeMap<CanonCode, u64> = BTreeMap::new();
                    let mut i = w;
                    while i < samples {
                        let mut rng = rng::seeded_stream(seed, i);
                        let t = wilson(g, &mut rng, 0);
                        *local.entry(t.canon_free()).or_insert(0) += 1;
                        i += threads as u64;
                    }
                    local
                }));
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("sampler thread panicked"))
                .collect::<Vec<_>>()
        });
        for partial in partials {
            for (code, c) in partial {
                *counts.entry(code).or_insert(0) += c;
            }
        }
    }
    Ok(ClassDistribution {
        n: g.vertex_count(),
        total: samples,
        counts,
        epsilon,
        threshold: ClassDistribution::benchmark(g.vertex_count(), epsilon),
        seed: Some(seed),
        generator: rng::GENERATOR_ID,
    })
}

/// Exact shape distribution from exhaustive enumeration: each class is
/// weighted by its number of labelled spanning trees.
pub fn exact_class_distribution(
    g: &Graph,
    cap: u64,
    epsilon: f64,
) -> Result<ClassDistribution, SamplerError> {
    let census = unlabelled_census(g, cap, None)?;
    let total: u64 = census.classes.values().sum();
    Ok(ClassDistribution {
        n: g.vertex_count(),
        total,
        counts: census.classes,
        epsilon,
        threshold: ClassDistribution::benchmark(g.vertex_count(), epsilon),
        seed: None,
        generator: rng::GENERATOR_ID,
    })
}
