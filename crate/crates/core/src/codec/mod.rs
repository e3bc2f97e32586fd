//! Hierarchical vertex labels: the encoder, the decoder, the byte format of a
//! single label and the label file.

mod decode;
mod encode;
mod file;
mod wire;

use serde::Serialize;
use thiserror::Error;

use crate::star::StarLabel;
use crate::tree_labels::TreeLabel;

pub use decode::{decode, decode_traced, dist_cc, dist_pc, Branch, Decoded};
pub use encode::{
    encode_graph, encode_graph_traced, encode_unchecked, EncodeTrace, PairClass, TraceNode,
};
pub use file::{instance_hash, LabelSet, FILE_MAGIC};
pub use wire::{deserialize, serialize, WIRE_VERSION};

/// A boundary-tree vertex as stored in a level record: its exact tree label
/// and its distance to the labelled vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidePart {
    pub tree: TreeLabel,
    pub dist: u32,
}

/// One level of a vertex label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    /// Id of the median at this level, in the input graph.
    pub median: u32,
    pub dist: u32,
    pub star: StarLabel,
    /// Panel vertex: first exit. Cone vertex: entrance on the panel with the
    /// smaller star label.
    pub left: Option<SidePart>,
    /// Panel vertex: second exit. Cone vertex: entrance on the other panel.
    pub right: Option<SidePart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLabel {
    pub id: u32,
    pub levels: Vec<LevelRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed label at byte {offset}: {msg}")]
    Wire { offset: usize, msg: String },
    #[error("label file line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("label file checksum mismatch: header says {expected}, body hashes to {found}")]
    Checksum { expected: String, found: String },
    #[error("labels belong to instance {found}, expected {expected}")]
    InstanceMismatch { expected: String, found: String },
    #[error("no label for vertex {0}")]
    UnknownVertex(u32),
}
