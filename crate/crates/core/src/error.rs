use std::fmt;

use thiserror::Error;

use crate::plane::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Structural problems found while validating an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("edge {edge} has an endpoint out of range")]
    EndpointOutOfRange { edge: u32 },
    #[error("rotation at vertex {vertex} lists dart {dart} twice")]
    DuplicateDart { vertex: u32, dart: String },
    #[error("rotation at vertex {vertex} lists dart {dart}, which does not leave that vertex")]
    ForeignDart { vertex: u32, dart: String },
    #[error("rotation at vertex {vertex} is missing dart {dart}")]
    MissingDart { vertex: u32, dart: String },
    #[error(
        "Euler check failed for component {component}: v - e + f = {vertices} - {edges} + {faces} = {}",
        *vertices as i64 - *edges as i64 + *faces as i64
    )]
    Euler {
        component: usize,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("expected {expected} component anchors, got {found}")]
    AnchorCount { expected: usize, found: usize },
    #[error("anchor of component {component} is out of range: {detail}")]
    AnchorOutOfRange { component: usize, detail: String },
    #[error("component {component} is anchored in the outer face of component {parent}")]
    AnchorInOuterFace { component: usize, parent: usize },
    #[error("nesting cycle through component {component}")]
    NestingCycle { component: usize },
}

impl EmbeddingError {
    /// Which invariant family the error belongs to.
    pub fn category(&self) -> &'static str {
        match self {
            EmbeddingError::EndpointOutOfRange { .. } => "edges",
            EmbeddingError::DuplicateDart { .. }
            | EmbeddingError::ForeignDart { .. }
            | EmbeddingError::MissingDart { .. } => "rotation",
            EmbeddingError::Euler { .. } => "euler",
            EmbeddingError::AnchorCount { .. }
            | EmbeddingError::AnchorOutOfRange { .. }
            | EmbeddingError::AnchorInOuterFace { .. }
            | EmbeddingError::NestingCycle { .. } => "nesting",
        }
    }
}

/// A violated precondition of the partition theorem or of one of its lemmas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    SelfLoop { edge: u32 },
    IsolatedVertex { vertex: u32 },
    TwoFace { face: usize },
    Disconnected { components: usize },
    MinDegree { vertex: u32, degree: usize },
    Empty,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::SelfLoop { edge } => write!(f, "self-loop present (edge {edge})"),
            Precondition::IsolatedVertex { vertex } => {
                write!(f, "isolated vertex present (vertex {vertex})")
            }
            Precondition::TwoFace { face } => write!(f, "2-face present (face {face})"),
            Precondition::Disconnected { components } => {
                write!(f, "graph is not connected ({components} components)")
            }
            Precondition::MinDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} < 2")
            }
            Precondition::Empty => write!(f, "graph has no vertices"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(#[from] EmbeddingError),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
    #[error("vertex {vertex} has degree {degree}; at least 2 is required")]
    DegreeTooLow { vertex: Vertex, degree: usize },
    #[error("no corner {u}-v-{w} with two true edges on face {face}")]
    NotAChord { face: usize, u: Vertex, w: Vertex },
    #[error("chord would be a self-loop at vertex {0}")]
    WouldSelfLoop(Vertex),
    #[error("vertex {0} is already happy")]
    VertexAlreadyHappy(Vertex),
    #[error("no dummy edge at {from} transfers unhappiness to exactly {to}")]
    NoTransferEdge { from: Vertex, to: Vertex },
    #[error("augmentation did not converge within {steps} steps")]
    NonConvergence { steps: usize },
    #[error("self-loop present (edge {0})")]
    SelfLoopPresent(u32),
    #[error("graph is not 4-colorable; the input is not planar")]
    NotFourColorable,
    #[error("not a simple plane triangulation: {0}")]
    NotATriangulation(String),
    #[error("vertices {0} and {1} are adjacent; the set is not independent")]
    NotIndependent(Vertex, Vertex),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}
