//! Approximate distance labels for K4-free bridged graphs.
//!
//! [`codec::encode_graph`] assigns every vertex a label of `O(log³ n)` bits
//! and [`codec::decode`] returns, from two labels alone, an estimate `r`
//! with `d(u, v) <= r <= 4 d(u, v)`.

pub mod blocks;
pub mod boundary;
pub mod class_check;
pub mod codec;
pub mod error;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod metric;
pub mod star;
pub mod tree_labels;
pub mod verify;

pub use class_check::{check_class, ClassReport, ClassWitness};
pub use error::{EncodeError, GraphError, StructureError};
pub use graph::{Graph, VertexSet};
pub use metric::{all_pairs, DistanceMatrix};
