//! Plane multigraphs, and partitions of their vertices into two sets that
//! are each dominating and face-hitting.
//!
//! The crate covers the whole pipeline:
//!
//! - [`plane`], [`builder`], [`plg`]: dart-based embeddings with nested
//!   components, face tracing, validation and a text format.
//! - [`verify`]: domination, face-hitting and coloring audits.
//! - [`augment`], [`fourcolor`], [`domatic`]: the constructive two-coloring.
//! - [`triangulation`]: small dominating sets of plane triangulations from
//!   independent sets, with bound comparisons.
//! - [`oracle`]: exact solvers for small graphs.
//! - [`generators`]: seeded instance families.

pub mod augment;
pub mod builder;
pub mod domatic;
pub mod error;
pub mod fourcolor;
pub mod generators;
pub mod oracle;
pub mod plane;
pub mod plg;
pub mod triangulation;
pub mod verify;

pub use augment::{augment, AugmentedGraph, EdgeKind};
pub use domatic::{lemma_coloring, theorem_coloring, theorem_partition, trim};
pub use error::{EmbeddingError, Error, Precondition, Result};
pub use fourcolor::{four_color, to_simple, verify_proper, FourColoring, SimpleGraph};
pub use plane::{Anchor, Dart, FaceWalk, GlobalFace, PlaneMultigraph, Vertex};
pub use plg::{parse_plg, write_plg};
pub use triangulation::{corollary_dominating_set, BoundReport};
pub use verify::{audit_two_coloring, is_dominating, is_face_hitting, Side, TwoColoring};
