//! Exhaustive enumeration of unlabelled trees.
//!
//! Rooted trees on k vertices are enumerated through canonical level
//! sequences: the depth sequence of a preorder walk in which every vertex's
//! children appear in non-increasing subtree order. Canonical sequences are
//! in bijection with unlabelled rooted trees, and the successor rule walks
//! them in lexicographically decreasing order — from the path down to the
//! star — visiting each exactly once. Free trees are obtained by
//! deduplicating rooted trees under the free canonical form.

use std::collections::HashSet;

use thiserror::Error;

use crate::tree::{CanonCode, RootedTree, Tree};

/// Default ceiling on rooted enumeration size (a_20 is ~13 million trees).
pub const DEFAULT_ROOTED_CAP: usize = 20;
/// Default ceiling on free enumeration size (keyed to rooted cost at k=16).
pub const DEFAULT_FREE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("enumeration for k = {k} exceeds the configured cap {cap}")]
    ResourceLimit { k: usize, cap: usize },
    #[error("level sequence is not canonical at position {position}")]
    NotCanonical { position: usize },
    #[error("level sequence must be non-empty and start at depth 1")]
    BadShape,
}

/// Depth sequence of a rooted tree in canonical preorder. The root has
/// depth 1 and each entry exceeds its predecessor by at most one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LevelSequence {
    s: Vec<u32>,
}

impl LevelSequence {
    /// First sequence in enumeration order: the path `1, 2, ..., k`.
    pub fn first(k: usize) -> LevelSequence {
        assert!(k >= 1);
        LevelSequence {
            s: (1..=k as u32).collect(),
        }
    }

    /// Validate an arbitrary depth vector: depth 1 root, steps of at most
    /// +1, and canonicity (each vertex's child subtrees in non-increasing
    /// order).
    pub fn from_depths(s: Vec<u32>) -> Result<LevelSequence, GenError> {
        if s.is_empty() || s[0] != 1 {
            return Err(GenError::BadShape);
        }
        for i in 1..s.len() {
            if s[i] < 1 || s[i] > s[i - 1] + 1 {
                return Err(GenError::NotCanonical { position: i });
            }
        }
        let seq = LevelSequence { s };
        match seq.first_violation() {
            None => Ok(seq),
            Some(position) => Err(GenError::NotCanonical { position }),
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn depths(&self) -> &[u32] {
        &self.s
    }

    /// Next canonical sequence in decreasing lexicographic order, or `None`
    /// after the star. The rule: find the last entry `p` deeper than 2,
    /// decrement it by moving to its parent's depth + 1 — concretely, copy
    /// the window starting at the parent `q` forward until the sequence is
    /// filled.
    pub fn successor(&self) -> Option<LevelSequence> {
        debug_assert_eq!(self.first_violation(), None, "input must be canonical");
        let s = &self.s;
        let p = s.iter().rposition(|&d| d > 2)?;
        let q = (0..p).rfind(|&j| s[j] == s[p] - 1).expect("parent exists");
        let mut t = s.clone();
        let w = p - q;
        for i in p..t.len() {
            t[i] = t[i - w];
        }
        Some(LevelSequence { s: t })
    }

    /// Build the rooted tree: vertex `i` is the i-th vertex in preorder,
    /// its parent the nearest earlier vertex one level up.
    pub fn to_tree(&self) -> RootedTree {
        let n = self.s.len();
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        // stack[d] = latest vertex seen at depth d+1
        let mut stack: Vec<usize> = Vec::new();
        for (i, &d) in self.s.iter().enumerate() {
            let d = d as usize;
            stack.truncate(d - 1);
            if let Some(&parent) = stack.last() {
                edges.push((parent, i));
            }
            debug_assert_eq!(stack.len(), d - 1, "depth step greater than one");
            stack.push(i);
        }
        RootedTree::new(Tree::from_edges_unchecked(n, edges), 0).expect("root 0 in range")
    }

    /// Canonical level sequence of an arbitrary rooted tree.
    pub fn from_rooted(rt: &RootedTree) -> LevelSequence {
        let tree = rt.tree();
        let n = tree.vertex_count();
        let mut visited = vec![false; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::from([rt.root()]);
        visited[rt.root()] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in tree.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        // Depth vector of each subtree, children sorted descending so the
        // concatenation is lexicographically maximal.
        let mut seqs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &u in order.iter().rev() {
            let mut kids: Vec<Vec<u32>> = children[u]
                .iter()
                .map(|&c| std::mem::take(&mut seqs[c]))
                .collect();
            kids.sort_unstable_by(|a, b| b.cmp(a));
            let mut seq = Vec::with_capacity(1 + kids.iter().map(Vec::len).sum::<usize>());
            seq.push(1);
            for kid in kids {
                seq.extend(kid.iter().map(|d| d + 1));
            }
            seqs[u] = seq;
        }
        LevelSequence {
            s: std::mem::take(&mut seqs[rt.root()]),
        }
    }

    /// Position of the first canonicity violation, if any.
    fn first_violation(&self) -> Option<usize> {
        if self.s.is_empty() || self.s[0] != 1 {
            return Some(0);
        }
        for i in 1..self.s.len() {
            if self.s[i] < 1 || self.s[i] > self.s[i - 1] + 1 {
                return Some(i);
            }
        }
        // Shape is fine; canonicity holds iff re-canonicalizing the tree
        // reproduces the sequence. Report the first differing index.
        let canon = Self::from_rooted(&self.to_tree()).s;
        self.s.iter().zip(&canon).position(|(a, b)| a != b)
    }

    pub fn is_canonical(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// Iterator over all canonical level sequences on `k` vertices.
#[derive(Clone, Debug)]
pub struct LevelSequences {
    next: Option<LevelSequence>,
}

impl Iterator for LevelSequences {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        let current = self.next.take()?;
        self.next = current.successor();
        Some(current)
    }
}

/// All canonical level sequences on `k` vertices, path first, star last.
pub fn all_sequences(k: usize) -> LevelSequences {
    LevelSequences {
        next: if k == 0 { None } else { Some(LevelSequence::first(k)) },
    }
}

/// Iterator over all unlabelled rooted trees on `k` vertices, one per
/// isomorphism class, in enumeration order.
pub struct RootedTrees {
    seqs: LevelSequences,
}

impl Iterator for RootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        self.seqs.next().map(|s| s.to_tree())
    }
}

pub fn all_rooted(k: usize) -> Result<RootedTrees, GenError> {
    all_rooted_capped(k, DEFAULT_ROOTED_CAP)
}

pub fn all_rooted_capped(k: usize, cap: usize) -> Result<RootedTrees, GenError> {
    if k == 0 || k > cap {
        return Err(GenError::ResourceLimit { k, cap });
    }
    Ok(RootedTrees {
        seqs: all_sequences(k),
    })
}

/// Iterator over all unlabelled free trees on `k` vertices: rooted
/// enumeration deduplicated by the free canonical form, which preserves
/// first-appearance order.
pub struct FreeTrees {
    inner: RootedTrees,
    seen: HashSet<CanonCode>,
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        for rt in self.inner.by_ref() {
            let code = rt.tree().canon_free();
            if self.seen.insert(code) {
                return Some(rt.tree().clone());
            }
        }
        None
    }
}

pub fn all_free(k: usize) -> Result<FreeTrees, GenError> {
    all_free_capped(k, DEFAULT_FREE_CAP)
}

pub fn all_free_capped(k: usize, cap: usize) -> Result<FreeTrees, GenError> {
    if k == 0 || k > cap {
        return Err(GenError::ResourceLimit { k, cap });
    }
    Ok(FreeTrees {
        inner: all_rooted_capped(k, cap)?,
        seen: HashSet::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_and_last_sequences() {
        let seqs: Vec<_> = all_sequences(4).collect();
        assert_eq!(seqs[0].depths(), &[1, 2, 3, 4]);
        assert_eq!(seqs.last().unwrap().depths(), &[1, 2, 2, 2]);
        assert_eq!(seqs.len(), 4); // a_4 = 4
    }

    #[test]
    fn sequences_strictly_decrease() {
        let seqs: Vec<_> = all_sequences(7).collect();
        for w in seqs.windows(2) {
            assert!(w[0] > w[1], "{:?} !> {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn round_trip_through_tree() {
        for seq in all_sequences(8) {
            let rt = seq.to_tree();
            assert_eq!(LevelSequence::from_rooted(&rt), seq);
        }
    }

    #[test]
    fn from_depths_rejects_non_canonical() {
        // Children out of order: the deep branch must come first.
        assert_eq!(
            LevelSequence::from_depths(vec![1, 2, 2, 3]),
            Err(GenError::NotCanonical { position: 2 })
        );
        assert_eq!(
            LevelSequence::from_depths(vec![1, 3]),
            Err(GenError::NotCanonical { position: 1 })
        );
        assert_eq!(LevelSequence::from_depths(vec![2]), Err(GenError::BadShape));
        assert!(LevelSequence::from_depths(vec![1, 2, 3, 2]).is_ok());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            all_rooted_capped(21, 20),
            Err(GenError::ResourceLimit { k: 21, cap: 20 })
        ));
        assert!(all_rooted_capped(21, 21).is_ok());
        assert!(matches!(
            all_free(17),
            Err(GenError::ResourceLimit { k: 17, cap: 16 })
        ));
    }

    #[test]
    fn small_counts_match_hand_enumeration() {
        // Rooted trees: 1, 1, 2, 4, 9 for k = 1..5; free: 1, 1, 1, 2, 3.
        let rooted: Vec<usize> = (1..=5).map(|k| all_rooted(k).unwrap().count()).collect();
        assert_eq!(rooted, vec![1, 1, 2, 4, 9]);
        let free: Vec<usize> = (1..=5).map(|k| all_free(k).unwrap().count()).collect();
        assert_eq!(free, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn rooted_trees_are_pairwise_distinct() {
        let codes: Vec<_> = all_rooted(9).unwrap().map(|t| t.canon()).collect();
        let mut dedup = codes.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(codes.len(), dedup.len());
    }
}
