//! Tree enumeration, spanning-tree counting, and spectral certificates.
//!
//! The crate is organized around one pipeline: enumerate unlabelled trees
//! ([`treegen`]), count them exactly ([`counting`]), pack tuples of small
//! trees into long caterpillar-like trees with an invertible codec
//! ([`spine`]), and measure how many unlabelled spanning trees concrete
//! graphs actually have ([`census`], [`sampler`]), with spectral expansion
//! checks ([`spectral`]) deciding which graphs qualify.

pub mod census;
pub mod counting;
pub mod format;
pub mod graph;
pub mod numeric;
pub mod rng;
pub mod sampler;
pub mod spectral;
pub mod spine;
pub mod tree;
pub mod treegen;

pub use graph::Graph;
pub use tree::{CanonCode, RootedTree, Tree, TreeError};
