//! Algorithms for k-quasi-transitive digraphs.
//!
//! A digraph is *k-quasi-transitive* when every directed path with exactly `k`
//! arcs has its endpoints adjacent in at least one direction. This crate covers
//! recognition and generation of such digraphs, `(k+1)`-king discovery and
//! counting, `(k+2)`-kernel construction, and an oracle layer that checks the
//! structural lemmas of the family on concrete instances.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command line live in the `qk` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod components;
pub mod corpus;
pub mod digraph;
pub mod distance;
pub mod error;
pub mod kernels;
pub mod kings;
pub mod oracle;
pub mod qt;

pub use components::{strong_components, Condensation};
pub use digraph::{Digraph, Vertex};
pub use distance::{distance_matrix, distances_from, DistanceMatrix, INFINITY};
pub use error::Error;

/// Size caps for the exhaustive routines.
///
/// Path enumeration and subset search are exponential; instances above the
/// cap are rejected with [`Error::InstanceTooLarge`] instead of running.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count accepted by path enumeration.
    pub path_enum_cap: usize,
    /// Largest vertex count accepted by exhaustive kernel search.
    pub kernel_search_cap: usize,
}

impl Limits {
    pub const DEFAULT_PATH_ENUM_CAP: usize = 64;
    pub const DEFAULT_KERNEL_SEARCH_CAP: usize = 20;
}

impl Default for Limits {
    fn default() -> Self {
        Limits { path_enum_cap: Self::DEFAULT_PATH_ENUM_CAP, kernel_search_cap: Self::DEFAULT_KERNEL_SEARCH_CAP }
    }
}
