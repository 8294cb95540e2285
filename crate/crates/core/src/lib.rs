//! Graph-state machinery for quantum LANs.
//!
//! A QLAN distributes one multipartite *graph state* from a set of
//! orchestrator nodes to a set of client nodes; afterwards, single-qubit
//! Pauli measurements on the orchestrator qubits rewrite the entanglement
//! topology seen by the clients without any further qubit transmission.
//! This crate implements the whole pipeline as deterministic graph
//! algebra, together with an independent quantum oracle that certifies
//! every rewrite at the state-vector / stabilizer level:
//!
//! * [`graph`] — immutable simple graphs with the primitive operations the
//!   rewrite calculus is built from (neighborhoods, induced subgraphs,
//!   local complementation, vertex deletion, lexicographic shortest paths).
//! * [`measure`] — the single-qubit Pauli measurement rewrite rules for
//!   graph states and validated measurement plans.
//! * [`model`] — QLAN resource states: roles, chain and generalized
//!   tree-like builders, design-principle validation, bridge statistics,
//!   and client proximity.
//! * [`topology`] — executable topology synthesis: entanglement bus, EPR
//!   extraction, entanglement rolling, enhanced rings, ring reduction with
//!   replayable certificates, Schmidt-measure bounds, persistency, and a
//!   demand planner.
//! * [`oracle`] — a brute-force certifier: stabilizer tableaus,
//!   a dense state-vector backend, canonical graph extraction with a
//!   replayable local-Clifford record, and local-complementation orbit
//!   search.
//! * [`gf2`] — small dense GF(2) linear algebra shared by the oracle and
//!   the Schmidt-measure bounds.
//!
//! All container types iterate in sorted order, so every operation in the
//! crate is deterministic: same inputs, byte-identical outputs.

#![forbid(unsafe_code)]

pub mod gf2;
pub mod graph;
pub mod io;
pub mod measure;
pub mod model;
pub mod oracle;
pub mod topology;

pub use graph::{Graph, GraphError, Path, VertexId};
pub use io::GraphDoc;
pub use measure::{MeasureError, MeasurementPlan, MeasurementStep, PauliBasis};
pub use model::{DesignClause, DesignParams, ModelError, QlanState, Role};
pub use oracle::{OracleError, OracleLimits, StabilizerTableau};
pub use topology::{Demand, TopologyError, TopologyReport};
