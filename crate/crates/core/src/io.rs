//! Wire formats: JSON documents and DOT rendering.
//!
//! Graphs travel as a flat document of vertex and edge lists, with
//! optional role and fictitious annotations for full QLAN states.
//! Everything serializes in deterministic order (sorted vertices,
//! sorted edges, sorted object keys), so identical inputs always
//! produce identical bytes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::measure::MeasurementPlan;
use crate::model::{ModelError, QlanState, Role};
use crate::topology::{Check, RingReduction, SchmidtBounds, TopologyReport};

/// Errors from document parsing.
#[derive(Debug, Error)]
pub enum DocError {
    /// The edge list references unknown vertices or self-loops.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The role map is inconsistent with the graph.
    #[error(transparent)]
    Model(#[from] ModelError),
    /// A role map key is not a vertex id.
    #[error("role key {0:?} is not a vertex id")]
    BadRoleKey(String),
    /// A state was requested from a document without role annotations.
    #[error("document has no role annotations, so it only describes a bare graph")]
    MissingRoles,
}

/// The JSON shape of a graph, with optional QLAN annotations.
///
/// Role keys are vertex ids as strings, because JSON object keys are
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    /// All vertices, ascending.
    pub vertices: Vec<VertexId>,
    /// All edges, each with smaller endpoint first, ascending.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Role per vertex, present only for QLAN states.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<BTreeMap<String, Role>>,
    /// Fictitious padding clients, present only for QLAN states.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fictitious: Option<Vec<VertexId>>,
}

impl GraphDoc {
    /// Describe a bare graph.
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            vertices: g.vertices().collect(),
            edges: g.edges(),
            roles: None,
            fictitious: None,
        }
    }

    /// Describe a full QLAN state.
    pub fn from_state(s: &QlanState) -> Self {
        Self {
            vertices: s.graph.vertices().collect(),
            edges: s.graph.edges(),
            roles: Some(s.roles.iter().map(|(&v, &r)| (v.to_string(), r)).collect()),
            fictitious: Some(s.fictitious.iter().copied().collect()),
        }
    }

    /// Rebuild the bare graph, ignoring any annotations.
    pub fn to_graph(&self) -> Result<Graph, DocError> {
        Ok(Graph::build(
            self.vertices.iter().copied(),
            self.edges.iter().copied(),
        )?)
    }

    /// Rebuild the full QLAN state; fails without role annotations.
    pub fn to_state(&self) -> Result<QlanState, DocError> {
        let graph = self.to_graph()?;
        let Some(raw_roles) = &self.roles else {
            return Err(DocError::MissingRoles);
        };
        let mut roles: BTreeMap<VertexId, Role> = BTreeMap::new();
        for (key, &role) in raw_roles {
            let v: VertexId = key.parse().map_err(|_| DocError::BadRoleKey(key.clone()))?;
            roles.insert(v, role);
        }
        let fictitious: BTreeSet<VertexId> = self.fictitious.iter().flatten().copied().collect();
        Ok(QlanState::new(graph, roles, fictitious)?)
    }
}

/// The JSON shape of a topology procedure report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    /// The state the procedure started from.
    pub initial: GraphDoc,
    /// The emitted measurement plan.
    pub plan: MeasurementPlan,
    /// The graph after the whole plan.
    #[serde(rename = "final")]
    pub final_graph: GraphDoc,
    /// The graph after each step.
    pub trajectory: Vec<GraphDoc>,
    /// Named verifications.
    pub checks: Vec<Check>,
    /// Informational remarks, never verified.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&TopologyReport> for ReportDoc {
    fn from(r: &TopologyReport) -> Self {
        Self {
            initial: GraphDoc::from_state(&r.initial),
            plan: r.plan.clone(),
            final_graph: GraphDoc::from_graph(&r.final_graph),
            trajectory: r.trajectory.iter().map(GraphDoc::from_graph).collect(),
            checks: r.checks.clone(),
            notes: r.notes.clone(),
        }
    }
}

/// The JSON shape of a ring reduction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionDoc {
    /// The enhanced ring.
    pub ring: GraphDoc,
    /// Its sparse locally equivalent representative.
    pub reduced: GraphDoc,
    /// Anchors whose local complementations replay the ring.
    pub certificate: Vec<VertexId>,
    /// Schmidt measure bracket of the ring state.
    pub schmidt: Option<SchmidtBounds>,
}

impl ReductionDoc {
    /// Package a reduction, optionally with Schmidt bounds.
    pub fn new(r: &RingReduction, schmidt: Option<SchmidtBounds>) -> Self {
        Self {
            ring: GraphDoc::from_graph(&r.ring),
            reduced: GraphDoc::from_graph(&r.reduced),
            certificate: r.certificate.clone(),
            schmidt,
        }
    }
}

fn dot_render(
    g: &Graph,
    role_of: impl Fn(VertexId) -> Option<Role>,
    dashed: impl Fn(VertexId) -> bool,
) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        let shape = match role_of(v) {
            Some(Role::Orchestrator) => "diamond",
            _ => "circle",
        };
        let style = if dashed(v) { ", style=dashed" } else { "" };
        out.push_str(&format!("  {v} [shape={shape}{style}];\n"));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  {a} -- {b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Render a bare graph as DOT; every vertex is a circle.
pub fn graph_to_dot(g: &Graph) -> String {
    dot_render(g, |_| None, |_| false)
}

/// Render a QLAN state as DOT: orchestrators are diamonds, clients
/// circles, fictitious clients dashed.
pub fn state_to_dot(s: &QlanState) -> String {
    dot_render(&s.graph, |v| s.role(v), |v| s.fictitious.contains(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_chain_state;

    #[test]
    fn bare_graph_serializes_without_annotations() {
        let g = Graph::build(0..3u32, [(0, 1), (1, 2)]).unwrap();
        let doc = GraphDoc::from_graph(&g);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2]]}"#);
        let back: GraphDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_graph().unwrap().edge_set(), g.edge_set());
    }

    #[test]
    fn state_documents_round_trip() {
        let s = build_chain_state(3).unwrap();
        let doc = GraphDoc::from_state(&s);
        let json = serde_json::to_string(&doc).unwrap();
        let back: GraphDoc = serde_json::from_str(&json).unwrap();
        let restored = back.to_state().unwrap();
        assert_eq!(restored, s);
    }

    #[test]
    fn state_json_uses_string_role_keys() {
        let s = build_chain_state(2).unwrap();
        let json = serde_json::to_string(&GraphDoc::from_state(&s)).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[0,1,2],"edges":[[0,2],[1,2]],"roles":{"0":"client","1":"client","2":"orchestrator"},"fictitious":[]}"#
        );
    }

    #[test]
    fn bad_role_keys_are_rejected() {
        let json = r#"{"vertices":[0],"edges":[],"roles":{"zero":"client"}}"#;
        let doc: GraphDoc = serde_json::from_str(json).unwrap();
        assert!(matches!(doc.to_state(), Err(DocError::BadRoleKey(_))));
    }

    #[test]
    fn bare_documents_cannot_become_states() {
        let doc = GraphDoc::from_graph(&Graph::build([0], []).unwrap());
        assert!(matches!(doc.to_state(), Err(DocError::MissingRoles)));
    }

    #[test]
    fn role_maps_must_cover_the_vertices() {
        let json = r#"{"vertices":[0,1],"edges":[],"roles":{"0":"client"}}"#;
        let doc: GraphDoc = serde_json::from_str(json).unwrap();
        assert!(matches!(
            doc.to_state(),
            Err(DocError::Model(ModelError::RolesMismatch))
        ));
    }

    #[test]
    fn report_documents_expose_the_expected_keys() {
        let s = build_chain_state(2).unwrap();
        let report = crate::topology::to_bus(&s).unwrap();
        let doc = ReportDoc::from(&report);
        let value: serde_json::Value = serde_json::to_value(&doc).unwrap();
        let keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(|k| k.as_str())
            .collect();
        assert_eq!(
            keys,
            vec!["checks", "final", "initial", "plan", "trajectory"]
        );
        let back: ReportDoc = serde_json::from_value(value).unwrap();
        assert_eq!(back.plan, report.plan);
    }

    #[test]
    fn dot_output_is_frozen() {
        let s = build_chain_state(2).unwrap();
        assert_eq!(
            state_to_dot(&s),
            "graph {\n  0 [shape=circle];\n  1 [shape=circle];\n  2 [shape=diamond];\n  0 -- 2;\n  1 -- 2;\n}\n"
        );
    }

    #[test]
    fn plain_dot_uses_circles_only() {
        let g = Graph::build(0..2u32, [(0, 1)]).unwrap();
        assert_eq!(
            graph_to_dot(&g),
            "graph {\n  0 [shape=circle];\n  1 [shape=circle];\n  0 -- 1;\n}\n"
        );
    }
}
