use serde::Serialize;
use thiserror::Error;

use crate::class_check::ClassWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {0} vertices; at most 65534 are supported")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },
    #[error("metric projection onto an empty set")]
    EmptyTarget,
}

/// A structural fact about K4-free bridged graphs that failed on the input,
/// found while building stars, fibers or boundary trees. Vertex ids refer to
/// the graph handed to the failing operation.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureError {
    #[error("projection of {vertex} on N[{center}] is {projection:?}")]
    ProjectionSize {
        center: usize,
        vertex: usize,
        projection: Vec<usize>,
    },
    #[error("vertex {vertex} projects on {pair:?} but no apex of the star is one step closer")]
    MissingApex { vertex: usize, pair: (usize, usize) },
    #[error("apexes {first} and {second} are both one step closer to {vertex}")]
    AmbiguousApex {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("boundary vertex {vertex} of fiber F({root}) has parent candidates {candidates:?}")]
    BoundaryParent {
        root: usize,
        vertex: usize,
        candidates: Vec<usize>,
    },
    #[error("entrance of {vertex} on F({panel}) is ambiguous among {candidates:?}")]
    EntranceNotUnique {
        vertex: usize,
        panel: usize,
        candidates: Vec<usize>,
    },
    #[error("projection of {vertex} on F({panel}) leaves the total boundary at {outside}")]
    ProjectionOffBoundary {
        vertex: usize,
        panel: usize,
        outside: usize,
    },
    #[error("cone F({cone}) has {panels} adjacent panels instead of two")]
    ConePanels { cone: usize, panels: usize },
    #[error("exits of {vertex} in F({root}): {detail}")]
    ExitShape {
        vertex: usize,
        root: usize,
        detail: String,
    },
}

impl StructureError {
    /// Rewrites every vertex id through `f`, e.g. from subgraph-local to global ids.
    pub fn map_vertices(self, f: impl Fn(usize) -> usize) -> Self {
        use StructureError::*;
        let all = |v: Vec<usize>| v.into_iter().map(&f).collect();
        match self {
            ProjectionSize {
                center,
                vertex,
                projection,
            } => ProjectionSize {
                center: f(center),
                vertex: f(vertex),
                projection: all(projection),
            },
            MissingApex { vertex, pair } => MissingApex {
                vertex: f(vertex),
                pair: (f(pair.0), f(pair.1)),
            },
            AmbiguousApex {
                vertex,
                first,
                second,
            } => AmbiguousApex {
                vertex: f(vertex),
                first: f(first),
                second: f(second),
            },
            BoundaryParent {
                root,
                vertex,
                candidates,
            } => BoundaryParent {
                root: f(root),
                vertex: f(vertex),
                candidates: all(candidates),
            },
            EntranceNotUnique {
                vertex,
                panel,
                candidates,
            } => EntranceNotUnique {
                vertex: f(vertex),
                panel: f(panel),
                candidates: all(candidates),
            },
            ProjectionOffBoundary {
                vertex,
                panel,
                outside,
            } => ProjectionOffBoundary {
                vertex: f(vertex),
                panel: f(panel),
                outside: f(outside),
            },
            ConePanels { cone, panels } => ConePanels {
                cone: f(cone),
                panels,
            },
            ExitShape {
                vertex,
                root,
                detail,
            } => ExitShape {
                vertex: f(vertex),
                root: f(root),
                detail,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("input is not K4-free bridged: {0}")]
    Class(ClassWitness),
    #[error("class violation during encoding: {0}")]
    Structure(#[from] StructureError),
}
