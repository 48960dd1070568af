//! Verification and exhaustive-search toolkit for edge-critical uniquely
//! 3-colorable planar graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: representation, mutation, interchange formats, planarity,
//!   faces, duals and canonical labelling.
//! * [`coloring`]: 3-colorings as vertex partitions, the labelled count
//!   oracle and precoloring extension.
//! * [`criticality`]: the two edge-criticality oracles and classification.
//! * [`structure`]: maximal triangle-subgraphs, the auxiliary graph `H_G`,
//!   cycle dependence and the discharging ledger.
//! * [`bounds`]: the edge-count ledger and size-table checks.
//! * [`audit`]: the full battery of structural checks on one instance.
//! * [`search`]: isomorph-free enumeration, size tables and witness hunts.

pub mod audit;
pub mod bounds;
pub mod coloring;
pub mod criticality;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod search;
pub mod structure;

pub use audit::{audit, AuditReport, Check, Mode, Verdict};
pub use bounds::{bound_report, size_table_assert, BoundReport};
pub use coloring::{chromatic_value, is_uniquely_3_colorable, proper_3_partitions, ColorPartition};
pub use criticality::{classify, ClassificationReport};
pub use error::{Error, Result};
pub use fixtures::fixture;
pub use graph::bits::VertexSet;
pub use graph::edgelist::{emit_edge_list, parse_edge_list};
pub use graph::graph6::{emit_graph6, parse_graph6};
pub use graph::{canonical_form, embed, is_planar, Graph, PlanarEmbedding};
pub use structure::{build_hg, triangle_components, AuxGraph, TriangleDecomposition};
