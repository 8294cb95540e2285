//! QLAN resource states: role bookkeeping, chain and generalized
//! tree-like constructions, design-principle validation, and the
//! structural queries (client degree, bridge rank, proximity) that the
//! topology procedures build on.
//!
//! A QLAN holds a graph state whose qubits split into two hierarchy
//! levels: *orchestrator* qubits, retained by the super-node that created
//! the state and performs all measurements, and *client* qubits, one per
//! network node. All entanglement runs vertically between the two levels,
//! which keeps the state two-colorable and lets the orchestrator reshape
//! client-level connectivity without touching any client qubit.
//!
//! Two resource families are built here:
//!
//! * the *chain* state — one orchestrator qubit between each pair of
//!   consecutive clients;
//! * the *generalized tree-like* state — `n_o` star subgraphs of client
//!   degree `k_c`, consecutive stars sharing `k_b_min` bridge clients,
//!   with clients numbered by the up/down labeling scheme so that every
//!   vertex index is reproducible.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

/// Which hierarchy level a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Qubit retained by the orchestrator super-node.
    Orchestrator,
    /// Qubit distributed to a client node.
    Client,
}

/// Errors from model construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// An underlying graph operation failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The role map does not cover exactly the graph's vertices.
    #[error("role map does not match the vertex set")]
    RolesMismatch,
    /// A fictitious marker points at a non-client vertex.
    #[error("fictitious vertex {0} is not a client")]
    FictitiousNotClient(VertexId),
    /// A client was passed where an orchestrator is required.
    #[error("vertex {0} is not an orchestrator")]
    NotAnOrchestrator(VertexId),
    /// An orchestrator was passed where a client is required.
    #[error("vertex {0} is not a client")]
    NotAClient(VertexId),
    /// Chain states need at least two clients.
    #[error("a chain state needs k >= 2 clients, got {k}")]
    ChainTooSmall { k: usize },
    /// Tree-like parameters outside the basic constraints.
    #[error(
        "tree-like parameters need k_c > k_b_min >= 1 and n_o >= 1, \
         got k_c={k_c}, k_b_min={k_b_min}, n_o={n_o}"
    )]
    InvalidTreeParams {
        k_c: usize,
        k_b_min: usize,
        n_o: usize,
    },
    /// Parameters that the up/down labeling scheme cannot express: with
    /// three or more stars, the internal stars carry bridges on both
    /// sides, which needs `ceil(k_c/2) >= 2*ceil(k_b_min/2)` and
    /// `floor(k_c/2) >= 2*floor(k_b_min/2)`.
    #[error(
        "tree-like labeling cannot place {n_o} stars of degree {k_c} \
         sharing {k_b_min} bridges: internal stars would overlap"
    )]
    UnrepresentableTree {
        k_c: usize,
        k_b_min: usize,
        n_o: usize,
    },
    /// Padded construction needs more real clients than shared bridges.
    #[error("padded construction needs k > k_b_min, got k={k}, k_b_min={k_b_min}")]
    TooFewClients { k: usize, k_b_min: usize },
    /// Proximity of a client to itself is undefined.
    #[error("client proximity of {0} to itself is undefined")]
    SameClient(VertexId),
    /// Proximity requires the two clients to be connected.
    #[error("clients {a} and {b} are not connected")]
    Disconnected { a: VertexId, b: VertexId },
    /// The state does not decompose into a path of client stars.
    #[error("state is not tree-like: {reason}")]
    NotTreeLike { reason: String },
    /// The state is not a chain.
    #[error("state is not a chain: {reason}")]
    NotChain { reason: String },
}

/// A graph state together with the orchestrator/client role of every
/// vertex and an optional set of fictitious padding clients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QlanState {
    /// The underlying graph.
    pub graph: Graph,
    /// Role of every vertex; keys are exactly the graph's vertices.
    pub roles: BTreeMap<VertexId, Role>,
    /// Padding clients: ordinary vertices for all graph math, but
    /// excluded from traffic planning.
    pub fictitious: BTreeSet<VertexId>,
}

impl QlanState {
    /// Assemble a state, checking that roles cover exactly the vertices
    /// and that fictitious markers point at clients.
    pub fn new(
        graph: Graph,
        roles: BTreeMap<VertexId, Role>,
        fictitious: BTreeSet<VertexId>,
    ) -> Result<Self, ModelError> {
        if roles.keys().copied().collect::<BTreeSet<_>>() != graph.vertex_set() {
            return Err(ModelError::RolesMismatch);
        }
        for &v in &fictitious {
            if roles.get(&v) != Some(&Role::Client) {
                return Err(ModelError::FictitiousNotClient(v));
            }
        }
        Ok(Self {
            graph,
            roles,
            fictitious,
        })
    }

    /// The role of `v`, if `v` is a vertex.
    pub fn role(&self, v: VertexId) -> Option<Role> {
        self.roles.get(&v).copied()
    }

    /// Whether `v` is an orchestrator vertex.
    pub fn is_orchestrator(&self, v: VertexId) -> bool {
        self.role(v) == Some(Role::Orchestrator)
    }

    /// Whether `v` is a client vertex.
    pub fn is_client(&self, v: VertexId) -> bool {
        self.role(v) == Some(Role::Client)
    }

    /// All orchestrator vertices in ascending id order.
    pub fn orchestrators(&self) -> Vec<VertexId> {
        self.roles
            .iter()
            .filter(|(_, r)| **r == Role::Orchestrator)
            .map(|(&v, _)| v)
            .collect()
    }

    /// All client vertices in ascending id order.
    pub fn clients(&self) -> Vec<VertexId> {
        self.roles
            .iter()
            .filter(|(_, r)| **r == Role::Client)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Client degree of orchestrator `o`: how many clients it touches.
    pub fn client_degree(&self, o: VertexId) -> Result<usize, ModelError> {
        if !self.is_orchestrator(o) {
            return Err(ModelError::NotAnOrchestrator(o));
        }
        Ok(self
            .graph
            .open_neighborhood(o)?
            .iter()
            .filter(|&&v| self.is_client(v))
            .count())
    }

    /// Bridge rank of client `c`: how many orchestrators it touches.
    /// A client is a *bridge* when its rank exceeds one.
    pub fn bridge_rank(&self, c: VertexId) -> Result<usize, ModelError> {
        if !self.is_client(c) {
            return Err(ModelError::NotAClient(c));
        }
        Ok(self
            .graph
            .open_neighborhood(c)?
            .iter()
            .filter(|&&v| self.is_orchestrator(v))
            .count())
    }

    /// Bridge degree of orchestrator `o` at rank `r`: how many of its
    /// client neighbors are r-rank bridges.
    pub fn bridge_degree(&self, o: VertexId, r: usize) -> Result<usize, ModelError> {
        if !self.is_orchestrator(o) {
            return Err(ModelError::NotAnOrchestrator(o));
        }
        let mut count = 0;
        for &c in self.graph.open_neighborhood(o)? {
            if self.is_client(c) && self.bridge_rank(c)? == r {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Client proximity `d(c_i, c_j)`: one plus the number of bridge
    /// clients strictly between the endpoints on the shortest path.
    ///
    /// Endpoints are excluded from the bridge count even when they are
    /// bridges themselves; this is what makes the proximity of adjacent
    /// clients (one shared star) exactly 1.
    pub fn client_proximity(&self, ci: VertexId, cj: VertexId) -> Result<usize, ModelError> {
        if !self.is_client(ci) {
            return Err(ModelError::NotAClient(ci));
        }
        if !self.is_client(cj) {
            return Err(ModelError::NotAClient(cj));
        }
        if ci == cj {
            return Err(ModelError::SameClient(ci));
        }
        let path = self
            .graph
            .shortest_path(ci, cj)?
            .ok_or(ModelError::Disconnected { a: ci, b: cj })?;
        let mut bridges = 0;
        for &v in path.interior() {
            if self.is_client(v) && self.bridge_rank(v)? > 1 {
                bridges += 1;
            }
        }
        Ok(1 + bridges)
    }

    /// Decompose the state into a path of client stars; see
    /// [`StarDecomposition`].
    pub fn star_decomposition(&self) -> Result<StarDecomposition, ModelError> {
        StarDecomposition::recognize(self)
    }

    /// Recognize the state as a chain and return its canonical client
    /// and orchestrator orders.
    pub fn chain_view(&self) -> Result<ChainView, ModelError> {
        ChainView::recognize(self)
    }
}

/// Measured design parameters of a conformant QLAN state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    /// Number of orchestration qubits.
    pub n_o: usize,
    /// Number of client qubits.
    pub k: usize,
    /// Client degree, uniform over orchestrators.
    pub k_c: usize,
    /// The single bridge rank present.
    pub r: usize,
    /// Maximum bridge degree over orchestrators.
    pub k_b_max: usize,
    /// Minimum bridge degree over orchestrators.
    pub k_b_min: usize,
}

/// The four design-principle clauses a QLAN resource state must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignClause {
    /// (i) every vertex carries exactly one of the two roles.
    #[serde(rename = "i")]
    RolePartition,
    /// (ii) more than one orchestrator qubit and at least one client.
    #[serde(rename = "ii")]
    PopulationCounts,
    /// (iii) every edge joins an orchestrator to a client.
    #[serde(rename = "iii")]
    VerticalEdgesOnly,
    /// (iv) uniform client degree, a single bridge rank with every
    /// orchestrator holding at least one bridge, and bridge degrees
    /// taking at most two values.
    #[serde(rename = "iv")]
    UniformDegrees,
}

impl std::fmt::Display for DesignClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DesignClause::RolePartition => "i",
            DesignClause::PopulationCounts => "ii",
            DesignClause::VerticalEdgesOnly => "iii",
            DesignClause::UniformDegrees => "iv",
        })
    }
}

/// Outcome of [`validate_design_principles`]: measured parameters on
/// success, the violated clauses otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    /// Measured parameters; present exactly when `violations` is empty.
    pub params: Option<DesignParams>,
    /// Violated clauses, in clause order.
    pub violations: Vec<DesignClause>,
}

impl DesignReport {
    /// Whether the state satisfies every clause.
    pub fn is_conformant(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a state against the four design-principle clauses.
///
/// Violations are data, not errors, so arbitrary user states can be
/// linted. A state passes exactly when it has the two-level vertical
/// structure with uniform client degree and a single bridge rank.
pub fn validate_design_principles(s: &QlanState) -> DesignReport {
    let mut violations = Vec::new();

    let role_keys: BTreeSet<VertexId> = s.roles.keys().copied().collect();
    if role_keys != s.graph.vertex_set() {
        violations.push(DesignClause::RolePartition);
    }

    let orchestrators = s.orchestrators();
    let clients = s.clients();
    if orchestrators.len() <= 1 || clients.is_empty() {
        violations.push(DesignClause::PopulationCounts);
    }

    let vertical = s.graph.edges().into_iter().all(|(a, b)| {
        matches!(
            (s.role(a), s.role(b)),
            (Some(Role::Orchestrator), Some(Role::Client))
                | (Some(Role::Client), Some(Role::Orchestrator))
        )
    });
    if !vertical {
        violations.push(DesignClause::VerticalEdgesOnly);
    }

    let degrees = measure_uniform_degrees(s, &orchestrators, &clients);
    let Some((k_c, r, k_b_max, k_b_min)) = degrees else {
        violations.push(DesignClause::UniformDegrees);
        return DesignReport {
            params: None,
            violations,
        };
    };

    let params = if violations.is_empty() {
        Some(DesignParams {
            n_o: orchestrators.len(),
            k: clients.len(),
            k_c,
            r,
            k_b_max,
            k_b_min,
        })
    } else {
        None
    };
    DesignReport { params, violations }
}

/// Clause (iv) measurement: `Some((k_c, r, k_b_max, k_b_min))` when the
/// client degrees are uniform, exactly one bridge rank occurs, and every
/// orchestrator holds at least one bridge of that rank with at most two
/// distinct bridge degrees overall.
fn measure_uniform_degrees(
    s: &QlanState,
    orchestrators: &[VertexId],
    clients: &[VertexId],
) -> Option<(usize, usize, usize, usize)> {
    if orchestrators.is_empty() {
        return None;
    }
    let client_degrees: BTreeSet<usize> = orchestrators
        .iter()
        .map(|&o| s.client_degree(o).expect("role checked"))
        .collect();
    if client_degrees.len() != 1 {
        return None;
    }
    let k_c = *client_degrees.first().expect("nonempty");

    let ranks: BTreeSet<usize> = clients
        .iter()
        .map(|&c| s.bridge_rank(c).expect("role checked"))
        .filter(|&r| r > 1)
        .collect();
    if ranks.len() != 1 {
        return None;
    }
    let r = *ranks.first().expect("nonempty");

    let bridge_degrees: Vec<usize> = orchestrators
        .iter()
        .map(|&o| s.bridge_degree(o, r).expect("role checked"))
        .collect();
    if bridge_degrees.contains(&0) {
        return None;
    }
    let distinct: BTreeSet<usize> = bridge_degrees.iter().copied().collect();
    if distinct.len() > 2 {
        return None;
    }
    let k_b_max = *distinct.last().expect("nonempty");
    let k_b_min = *distinct.first().expect("nonempty");
    Some((k_c, r, k_b_max, k_b_min))
}

/// Build the k-client chain state: clients `c_1..c_k` get ids `0..k-1`,
/// orchestrators `o_1..o_{k-1}` get ids `k..2k-2`, and `o_i` is adjacent
/// to `c_i` and `c_{i+1}`.
pub fn build_chain_state(k: usize) -> Result<QlanState, ModelError> {
    if k < 2 {
        return Err(ModelError::ChainTooSmall { k });
    }
    let k = k as u32;
    let clients = 0..k;
    let orchestrators = k..(2 * k - 1);
    let vertices = clients.clone().chain(orchestrators.clone());
    let edges = (0..k - 1).flat_map(|i| {
        let o = k + i;
        [(o, i), (o, i + 1)]
    });
    let graph = Graph::build(vertices, edges)?;
    let roles = clients
        .map(|c| (c, Role::Client))
        .chain(orchestrators.map(|o| (o, Role::Orchestrator)))
        .collect();
    QlanState::new(graph, roles, BTreeSet::new())
}

/// Build the generalized tree-like state with `n_o` stars of client
/// degree `k_c`, consecutive stars sharing `k_b_min` bridges.
///
/// The state has `k = n_o*(k_c - k_b_min) + k_b_min` clients `c_1..c_k`
/// (ids `0..k-1`) and orchestrators `o_1..o_{n_o}` (ids `k..k+n_o-1`).
/// Clients are numbered by the up/down scheme: ids `1..k_f` form the
/// "up" half, walked with a stride that overlaps consecutive stars in
/// `ceil(k_b_min/2)` shared clients, and ids `k_f+1..k` form the "down"
/// half with overlap `floor(k_b_min/2)`. With `k_c = 2` this degenerates
/// into the chain pattern, which is used directly.
pub fn build_tree_like_state(
    k_c: usize,
    k_b_min: usize,
    n_o: usize,
) -> Result<QlanState, ModelError> {
    if k_b_min < 1 || k_c <= k_b_min || n_o < 1 {
        return Err(ModelError::InvalidTreeParams { k_c, k_b_min, n_o });
    }
    if k_c == 2 {
        // k_b_min is forced to 1; the stars form exactly the chain
        // pattern on n_o + 1 clients.
        return build_chain_state(n_o + 1);
    }
    let up = k_c.div_ceil(2);
    let down = k_c / 2;
    let up_shared = k_b_min.div_ceil(2);
    let down_shared = k_b_min / 2;
    if n_o >= 3 && (up < 2 * up_shared || down < 2 * down_shared) {
        return Err(ModelError::UnrepresentableTree { k_c, k_b_min, n_o });
    }

    let k = n_o * (k_c - k_b_min) + k_b_min;
    let k_f = up * n_o - up_shared * (n_o - 1);
    // Strides may be -1 for two stars (total overlap); never smaller.
    let up_stride = up as i64 - up_shared as i64 - 1;
    let down_stride = down as i64 - down_shared as i64 - 1;

    let mut edges = Vec::with_capacity(n_o * k_c);
    for i in 1..=n_o {
        let o_id = (k + i - 1) as VertexId;
        let shift = (i - 1) as i64;
        let up_start = i as i64 + up_stride * shift;
        for j in up_start..up_start + up as i64 {
            debug_assert!(1 <= j && j <= k_f as i64, "up label out of range");
            edges.push((o_id, (j - 1) as VertexId));
        }
        let down_start = (i + k_f) as i64 + down_stride * shift;
        for l in down_start..down_start + down as i64 {
            debug_assert!((k_f as i64) < l && l <= k as i64, "down label out of range");
            edges.push((o_id, (l - 1) as VertexId));
        }
    }

    let clients = 0..k as VertexId;
    let orchestrators = k as VertexId..(k + n_o) as VertexId;
    let graph = Graph::build(clients.clone().chain(orchestrators.clone()), edges)?;
    let roles = clients
        .map(|c| (c, Role::Client))
        .chain(orchestrators.map(|o| (o, Role::Orchestrator)))
        .collect();
    QlanState::new(graph, roles, BTreeSet::new())
}

/// Build a tree-like state serving `k` real clients with star degree
/// `k_c` and bridge count `k_b_min`, padding with fictitious clients
/// when `k` does not fit the star arithmetic exactly.
///
/// The star count is the smallest `n_o` with
/// `n_o*(k_c - k_b_min) + k_b_min >= k`; the highest-id surplus clients
/// are marked fictitious.
pub fn build_tree_like_state_padded(
    k: usize,
    k_c: usize,
    k_b_min: usize,
) -> Result<QlanState, ModelError> {
    if k_b_min < 1 || k_c <= k_b_min {
        return Err(ModelError::InvalidTreeParams {
            k_c,
            k_b_min,
            n_o: 0,
        });
    }
    if k <= k_b_min {
        return Err(ModelError::TooFewClients { k, k_b_min });
    }
    let per_star = k_c - k_b_min;
    let n_o = (k - k_b_min).div_ceil(per_star);
    let mut state = build_tree_like_state(k_c, k_b_min, n_o)?;
    let k_actual = state.clients().len();
    state.fictitious = (k as VertexId..k_actual as VertexId).collect();
    Ok(state)
}

/// A tree-like state decomposed into its path of client stars.
///
/// `orchestrators[i]` is the center of star `i`; `stars[i]` is its
/// client neighborhood; `bridges[i]` is the overlap between stars `i`
/// and `i+1`. Recognition is structural — it accepts any state with this
/// shape, however it was built, and orients the star path from the
/// smaller-id endpoint so equal states decompose identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    /// Star centers in path order.
    pub orchestrators: Vec<VertexId>,
    /// Client neighborhood of each star, same order.
    pub stars: Vec<BTreeSet<VertexId>>,
    /// Shared clients of each consecutive star pair (one entry fewer
    /// than stars).
    pub bridges: Vec<BTreeSet<VertexId>>,
    /// Uniform star size.
    pub k_c: usize,
    /// Uniform bridge count between consecutive stars (0 when there is
    /// a single star).
    pub k_b_min: usize,
}

impl StarDecomposition {
    /// Number of stars.
    pub fn n_o(&self) -> usize {
        self.orchestrators.len()
    }

    /// Indices of the stars containing client `c` (one for leaf
    /// clients, two for bridges).
    pub fn home_stars(&self, c: VertexId) -> Vec<usize> {
        self.stars
            .iter()
            .enumerate()
            .filter(|(_, star)| star.contains(&c))
            .map(|(i, _)| i)
            .collect()
    }

    /// The designated bridge of consecutive star pair `pair`: with the
    /// bridges in ascending id order, the one at position
    /// `ceil(k_b_min/2) - 1`. On canonically labeled states this is the
    /// last up-half bridge of the pair.
    pub fn designated_bridge(&self, pair: usize) -> VertexId {
        let set = &self.bridges[pair];
        *set.iter()
            .nth(self.k_b_min.div_ceil(2) - 1)
            .expect("bridge sets have k_b_min >= 1 members")
    }

    fn recognize(s: &QlanState) -> Result<Self, ModelError> {
        let fail = |reason: &str| ModelError::NotTreeLike {
            reason: reason.to_string(),
        };
        let orchestrators = s.orchestrators();
        let clients = s.clients();
        if orchestrators.is_empty() {
            return Err(fail("no orchestrator vertices"));
        }
        if clients.is_empty() {
            return Err(fail("no client vertices"));
        }
        for (a, b) in s.graph.edges() {
            if s.role(a) == s.role(b) {
                return Err(fail("has an edge within one hierarchy level"));
            }
        }
        for &c in &clients {
            match s.bridge_rank(c)? {
                0 => return Err(fail("has an isolated client")),
                1 | 2 => {}
                _ => return Err(fail("has a client of bridge rank above two")),
            }
        }

        let stars_by_center: BTreeMap<VertexId, BTreeSet<VertexId>> = orchestrators
            .iter()
            .map(|&o| {
                (
                    o,
                    s.graph.open_neighborhood(o).expect("orchestrator").clone(),
                )
            })
            .collect();
        let sizes: BTreeSet<usize> = stars_by_center.values().map(BTreeSet::len).collect();
        if sizes.len() != 1 {
            return Err(fail("star sizes are not uniform"));
        }
        let k_c = *sizes.first().expect("nonempty");
        if k_c == 0 {
            return Err(fail("has an isolated orchestrator"));
        }

        // Stars sharing a client must form a path; its order is the
        // star order.
        let mut link_edges = Vec::new();
        for (i, &a) in orchestrators.iter().enumerate() {
            for &b in &orchestrators[i + 1..] {
                if !stars_by_center[&a].is_disjoint(&stars_by_center[&b]) {
                    link_edges.push((a, b));
                }
            }
        }
        let link_graph = Graph::build(orchestrators.iter().copied(), link_edges)?;
        let ordered = link_graph
            .as_path_order()
            .ok_or_else(|| fail("stars do not overlap along a single path"))?;

        let stars: Vec<BTreeSet<VertexId>> =
            ordered.iter().map(|o| stars_by_center[o].clone()).collect();
        let bridges: Vec<BTreeSet<VertexId>> = stars
            .windows(2)
            .map(|w| w[0].intersection(&w[1]).copied().collect())
            .collect();
        let bridge_sizes: BTreeSet<usize> = bridges.iter().map(BTreeSet::len).collect();
        if bridge_sizes.len() > 1 {
            return Err(fail("bridge counts are not uniform"));
        }
        let k_b_min = bridge_sizes.first().copied().unwrap_or(0);

        Ok(Self {
            orchestrators: ordered,
            stars,
            bridges,
            k_c,
            k_b_min,
        })
    }
}

/// A chain state in canonical order: `clients[i]` is `c_{i+1}` and
/// `orchestrators[i]` is `o_{i+1}`, with `o_{i+1}` adjacent to exactly
/// `clients[i]` and `clients[i+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainView {
    /// Clients in chain order.
    pub clients: Vec<VertexId>,
    /// Orchestrators in chain order.
    pub orchestrators: Vec<VertexId>,
}

impl ChainView {
    /// Number of clients.
    pub fn k(&self) -> usize {
        self.clients.len()
    }

    fn recognize(s: &QlanState) -> Result<Self, ModelError> {
        let decomp = s.star_decomposition().map_err(|e| match e {
            ModelError::NotTreeLike { reason } => ModelError::NotChain { reason },
            other => other,
        })?;
        let fail = |reason: &str| ModelError::NotChain {
            reason: reason.to_string(),
        };
        if decomp.k_c != 2 {
            return Err(fail("star size is not two"));
        }
        if decomp.n_o() > 1 && decomp.k_b_min != 1 {
            return Err(fail("consecutive stars do not share exactly one client"));
        }
        let mut clients = Vec::with_capacity(decomp.n_o() + 1);
        if decomp.n_o() == 1 {
            clients.extend(decomp.stars[0].iter().copied());
        } else {
            let first = decomp.stars[0]
                .difference(&decomp.bridges[0])
                .copied()
                .next()
                .expect("two-client star minus one bridge");
            clients.push(first);
            for bridge in &decomp.bridges {
                clients.push(*bridge.iter().next().expect("one bridge"));
            }
            let last_star = decomp.stars.last().expect("at least one star");
            let last_bridge = decomp.bridges.last().expect("n_o > 1");
            let last = last_star
                .difference(last_bridge)
                .copied()
                .next()
                .expect("two-client star minus one bridge");
            clients.push(last);
        }
        Ok(Self {
            clients,
            orchestrators: decomp.orchestrators,
        })
    }
}
