//! Independent verification of the graph rewrite rules.
//!
//! The rewrite rules in [`crate::measure`] are pure graph surgery. This
//! module re-derives their effect from first principles so the two
//! implementations can certify each other:
//!
//! 1. [`StabilizerTableau`] prepares the graph state's stabilizer
//!    generators and simulates a single-qubit Pauli measurement the way
//!    a stabilizer simulator would — no knowledge of the rewrite rules.
//! 2. [`StabilizerTableau::canonical_graph`] reduces the post-measurement
//!    tableau back to graph form, recording the local gates it applied.
//! 3. [`lc_equivalent`] decides whether that canonical graph and the
//!    rewrite rule's prediction describe the same state up to local
//!    Clifford corrections, by searching the local-complementation orbit.
//! 4. The [`dense`] submodule evaluates actual state vectors at small
//!    scale, checking the tableau arithmetic itself.
//!
//! [`verify_rule`] packages the whole pipeline: given a graph and one
//! measurement step, it checks both outcome branches and reports a
//! verdict.

mod dense;
mod tableau;

pub use dense::{graph_to_dense, tableau_to_dense, DenseState};
pub use tableau::StabilizerTableau;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::measure::{
    measure_x, measure_x_isolated, measure_y, measure_z, MeasureError, MeasurementStep, PauliBasis,
};

/// The two results of a projective Pauli measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Eigenvalue +1.
    Plus,
    /// Eigenvalue -1.
    Minus,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+",
            Outcome::Minus => "-",
        })
    }
}

/// Single-qubit Clifford gates the canonicalizer is allowed to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalGate {
    /// Hadamard.
    H,
    /// Phase gate `diag(1, i)`.
    S,
    /// Pauli Z.
    Z,
}

/// One gate application, addressed by qubit label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateOp {
    /// Which gate.
    pub gate: LocalGate,
    /// Which qubit.
    pub qubit: VertexId,
}

/// Resource caps for the brute-force machinery.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Largest qubit count for dense state-vector work.
    pub dense_cap: usize,
    /// Largest number of graphs an orbit search may visit.
    pub orbit_cap: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            dense_cap: 14,
            orbit_cap: 1_000_000,
        }
    }
}

/// Failures of the verification machinery.
#[derive(Debug, Error)]
pub enum OracleError {
    /// A graph operation failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A rewrite-rule application failed.
    #[error(transparent)]
    Rewrite(#[from] MeasureError),
    /// The tableau has no qubit with this label.
    #[error("no qubit labeled {0} in the tableau")]
    UnknownQubit(VertexId),
    /// A deterministic measurement cannot yield the requested outcome.
    #[error("measurement outcome is determined to be {determined}, not {requested}")]
    InconsistentOutcome {
        /// The outcome the caller asked to project onto.
        requested: Outcome,
        /// The outcome fixed by the state.
        determined: Outcome,
    },
    /// The instance is too large for the requested brute-force check.
    #[error("{n} qubits exceed the cap of {cap} for this operation")]
    TooManyQubits {
        /// Requested size.
        n: usize,
        /// Allowed maximum.
        cap: usize,
    },
    /// The local-complementation orbit search visited too many graphs.
    #[error("orbit search exceeded the cap of {cap} graphs")]
    OrbitCapExceeded {
        /// The configured cap.
        cap: usize,
    },
    /// The tableau does not describe a full stabilizer state.
    #[error("tableau rows do not span a full stabilizer group")]
    RankDeficient,
    /// The tableau violates a structural invariant.
    #[error("corrupt tableau: {reason}")]
    CorruptTableau {
        /// What went wrong.
        reason: String,
    },
}

/// Build the stabilizer tableau of the graph state of `g`.
pub fn graph_to_tableau(g: &Graph) -> Result<StabilizerTableau, OracleError> {
    StabilizerTableau::from_graph(g)
}

/// Sorted edge list used as the BFS identity of a labeled graph.
type EdgeKey = Vec<(VertexId, VertexId)>;

fn edge_key(g: &Graph) -> EdgeKey {
    g.edges()
}

/// Decide whether `a` and `b` are equivalent under local
/// complementations, i.e. whether their graph states differ only by
/// local Clifford operations.
///
/// Returns a witness: a vertex sequence whose local complementations,
/// applied to `a` in order, produce exactly `b`. `Some(vec![])` means
/// the graphs are already equal; `None` means the whole orbit of `a`
/// was searched without finding `b` (graphs on different vertex sets
/// are never equivalent).
pub fn lc_equivalent(
    a: &Graph,
    b: &Graph,
    limits: &OracleLimits,
) -> Result<Option<Vec<VertexId>>, OracleError> {
    if a.vertex_set() != b.vertex_set() {
        return Ok(None);
    }
    let target = edge_key(b);
    let start = edge_key(a);
    if start == target {
        return Ok(Some(Vec::new()));
    }
    // Breadth-first search with parent pointers, so witnesses are
    // shortest. Complementing a vertex of degree < 2 changes nothing,
    // so those moves are skipped.
    let vertices: Vec<VertexId> = a.vertices().collect();
    let mut seen: BTreeMap<EdgeKey, Option<(EdgeKey, VertexId)>> = BTreeMap::new();
    seen.insert(start.clone(), None);
    let mut queue: VecDeque<Graph> = VecDeque::new();
    queue.push_back(a.clone());
    while let Some(g) = queue.pop_front() {
        let g_key = edge_key(&g);
        for &v in &vertices {
            if g.degree(v).unwrap_or(0) < 2 {
                continue;
            }
            let h = g.local_complement(v).expect("vertex exists");
            let h_key = edge_key(&h);
            if seen.contains_key(&h_key) {
                continue;
            }
            seen.insert(h_key.clone(), Some((g_key.clone(), v)));
            if seen.len() > limits.orbit_cap {
                return Err(OracleError::OrbitCapExceeded {
                    cap: limits.orbit_cap,
                });
            }
            if h_key == target {
                let mut path = Vec::new();
                let mut cur = h_key;
                while let Some(Some((prev, v))) = seen.get(&cur) {
                    path.push(*v);
                    cur = prev.clone();
                }
                path.reverse();
                return Ok(Some(path));
            }
            queue.push_back(h);
        }
    }
    Ok(None)
}

/// One outcome branch of a rule verification.
#[derive(Debug, Clone)]
pub struct BranchReport {
    /// Which measurement outcome this branch projected onto.
    pub outcome: Outcome,
    /// True when the state fixed the opposite outcome, so this branch
    /// does not occur and there was nothing to check.
    pub skipped: bool,
    /// Canonical graph recovered from the post-measurement tableau.
    pub canonical: Option<Graph>,
    /// Local-complementation sequence from the canonical graph to the
    /// rewrite rule's prediction.
    pub witness: Option<Vec<VertexId>>,
    /// Whether this branch confirms the rule.
    pub pass: bool,
}

/// The oracle's verdict on one measurement step.
#[derive(Debug, Clone)]
pub struct RuleVerdict {
    /// What the rewrite rule predicts.
    pub predicted: Graph,
    /// Evidence per outcome.
    pub branches: Vec<BranchReport>,
    /// True when every occurring branch confirmed the rule and at least
    /// one branch occurred.
    pub pass: bool,
}

/// Verify one measurement step of the rewrite calculus against the
/// stabilizer simulation.
///
/// The step's rewrite prediction is computed, then both measurement
/// outcomes are simulated on the tableau; each post-measurement state is
/// canonicalized back to a graph, which must be locally equivalent to
/// the prediction. When the state is small enough, the canonicalization
/// record is additionally replayed against a dense state vector.
///
/// An X step may omit its support exactly when the target is isolated.
pub fn verify_rule(
    g: &Graph,
    step: &MeasurementStep,
    limits: &OracleLimits,
) -> Result<RuleVerdict, OracleError> {
    let predicted = match (step.basis, step.support) {
        (PauliBasis::Z, None) => measure_z(g, step.target)?,
        (PauliBasis::Y, None) => measure_y(g, step.target)?,
        (PauliBasis::X, Some(support)) => measure_x(g, step.target, support)?,
        (PauliBasis::X, None) => measure_x_isolated(g, step.target)?,
        (basis, Some(_)) => {
            return Err(MeasureError::SupportForbidden {
                target: step.target,
                basis,
            }
            .into())
        }
    };

    let tableau = graph_to_tableau(g)?;
    let mut branches = Vec::new();
    for outcome in [Outcome::Plus, Outcome::Minus] {
        let post = match tableau.measure(step.target, step.basis, outcome) {
            Ok(post) => post,
            Err(OracleError::InconsistentOutcome { .. }) => {
                branches.push(BranchReport {
                    outcome,
                    skipped: true,
                    canonical: None,
                    witness: None,
                    pass: true,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let (canonical, record) = post.canonical_graph()?;
        let mut pass = true;
        if post.qubit_count() <= limits.dense_cap {
            // Independent check of the canonicalization itself: undoing
            // the recorded gates on |canonical> must reproduce the
            // post-measurement state exactly.
            let reference = tableau_to_dense(&post, limits)?;
            let mut replay = graph_to_dense(&canonical, limits)?;
            for op in record.iter().rev() {
                replay.apply_gate_inverse(op.gate, op.qubit)?;
            }
            pass &= replay.fidelity(&reference) > 1.0 - 1e-9;
        }
        let witness = lc_equivalent(&canonical, &predicted, limits)?;
        pass &= witness.is_some();
        branches.push(BranchReport {
            outcome,
            skipped: false,
            canonical: Some(canonical),
            witness,
            pass,
        });
    }
    let ran = branches.iter().any(|b| !b.skipped);
    let pass = ran && branches.iter().all(|b| b.pass);
    Ok(RuleVerdict {
        predicted,
        branches,
        pass,
    })
}

/// All simple graphs on vertices `0..n`, in lexicographic order of their
/// edge bitmask. Capped at `n <= 6` (32768 graphs).
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, OracleError> {
    const CAP: usize = 6;
    if n > CAP {
        return Err(OracleError::TooManyQubits { n, cap: CAP });
    }
    let pairs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
        .flat_map(|a| ((a + 1)..n as VertexId).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        out.push(Graph::build(0..n as VertexId, edges).expect("valid edges"));
    }
    Ok(out)
}

/// `count` random graphs on vertices `0..n`, each pair included with
/// probability 1/2, drawn from a seeded deterministic generator.
pub fn sample_graphs(n: usize, count: usize, seed: u64) -> Result<Vec<Graph>, OracleError> {
    const CAP: usize = 64;
    if n > CAP {
        return Err(OracleError::TooManyQubits { n, cap: CAP });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut edges = Vec::new();
        for a in 0..n as VertexId {
            for b in (a + 1)..n as VertexId {
                if rng.random::<bool>() {
                    edges.push((a, b));
                }
            }
        }
        out.push(Graph::build(0..n as VertexId, edges).expect("valid edges"));
    }
    Ok(out)
}

/// Every measurement step that is well-formed on `g`: Z and Y on each
/// vertex, X on each vertex once per neighbor, and bare X on isolated
/// vertices.
pub fn valid_steps(g: &Graph) -> Vec<MeasurementStep> {
    let mut steps = Vec::new();
    for v in g.vertices() {
        steps.push(MeasurementStep::z(v));
        steps.push(MeasurementStep::y(v));
        let nbrs = g.open_neighborhood(v).expect("own vertex");
        if nbrs.is_empty() {
            steps.push(MeasurementStep {
                target: v,
                basis: PauliBasis::X,
                support: None,
            });
        } else {
            for &b in nbrs {
                steps.push(MeasurementStep::x(v, b));
            }
        }
    }
    steps
}
