//! Single-qubit Pauli measurements as graph rewrites.
//!
//! Measuring one qubit of a graph state in a Pauli basis leaves the
//! remaining qubits in another graph state (up to local corrections), and
//! the new graph follows from the old one by purely combinatorial rules:
//!
//! * `Z` on `a` — delete `a`.
//! * `Y` on `a` — locally complement at `a`, then delete `a`.
//! * `X` on `a` with support `b0 ∈ N_a` — locally complement at `b0`,
//!   apply the `Y` rule at `a`, and locally complement at `b0` again.
//!
//! The `X` rule needs an adjacent *support* vertex that absorbs the
//!   correction; different supports give locally equivalent results. An
//! isolated vertex has no support, so its `X` measurement simply removes
//! it ([`measure_x_isolated`]).
//!
//! A [`MeasurementPlan`] is an ordered list of steps applied to evolving
//! graphs; [`MeasurementPlan::apply`] returns the full trajectory so
//! callers can inspect every intermediate stage.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

/// The measurement basis of a single step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PauliBasis {
    /// Pauli-X; the rewrite needs a support neighbor.
    X,
    /// Pauli-Y; local complementation followed by deletion.
    Y,
    /// Pauli-Z; plain vertex deletion.
    Z,
}

impl std::fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PauliBasis::X => "X",
            PauliBasis::Y => "Y",
            PauliBasis::Z => "Z",
        })
    }
}

/// Errors from measurement rewrites and plan application.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    /// An underlying graph operation failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// An `X` step was given without a support vertex.
    #[error("X measurement of vertex {target} requires a support vertex")]
    SupportRequired { target: VertexId },
    /// A `Y` or `Z` step carried a support vertex.
    #[error("{basis} measurement of vertex {target} must not carry a support vertex")]
    SupportForbidden { target: VertexId, basis: PauliBasis },
    /// The support vertex is not adjacent to the target when the step runs.
    #[error("support {support} is not adjacent to measurement target {target}")]
    SupportNotAdjacent { target: VertexId, support: VertexId },
    /// `measure_x_isolated` was called on a vertex that has neighbors.
    #[error("vertex {target} has neighbors; X measurement needs a support")]
    TargetNotIsolated { target: VertexId },
    /// Two steps of one plan name the same target.
    #[error("plan measures vertex {target} more than once")]
    DuplicateTarget { target: VertexId },
    /// A step failed; `index` locates it within the plan.
    #[error("plan step {index} failed: {source}")]
    AtStep {
        index: usize,
        #[source]
        source: Box<MeasureError>,
    },
}

/// Measure `a` in the `Z` basis: `G − a`.
pub fn measure_z(g: &Graph, a: VertexId) -> Result<Graph, MeasureError> {
    Ok(g.delete_vertex(a)?)
}

/// Measure `a` in the `Y` basis: `τ_a(G) − a`.
pub fn measure_y(g: &Graph, a: VertexId) -> Result<Graph, MeasureError> {
    Ok(g.local_complement(a)?.delete_vertex(a)?)
}

/// Measure `a` in the `X` basis with support `b0`:
/// `τ_{b0}( τ_a(τ_{b0}(G)) − a )`.
///
/// `b0` must be a neighbor of `a`; any neighbor works, and all choices
/// yield locally equivalent graphs.
pub fn measure_x(g: &Graph, a: VertexId, b0: VertexId) -> Result<Graph, MeasureError> {
    if !g.open_neighborhood(a)?.contains(&b0) {
        return Err(MeasureError::SupportNotAdjacent {
            target: a,
            support: b0,
        });
    }
    let pre = g.local_complement(b0)?;
    let mid = pre.local_complement(a)?.delete_vertex(a)?;
    Ok(mid.local_complement(b0)?)
}

/// Measure an isolated vertex in the `X` basis: the outcome is
/// deterministic and the vertex is simply removed.
pub fn measure_x_isolated(g: &Graph, a: VertexId) -> Result<Graph, MeasureError> {
    if g.degree(a)? != 0 {
        return Err(MeasureError::TargetNotIsolated { target: a });
    }
    Ok(g.delete_vertex(a)?)
}

/// One measurement: a target vertex, a basis, and (for `X` only) the
/// support vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementStep {
    /// The vertex being measured out.
    pub target: VertexId,
    /// The measurement basis.
    pub basis: PauliBasis,
    /// Support vertex for `X` steps; must be absent otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<VertexId>,
}

impl MeasurementStep {
    /// A `Z` step.
    pub fn z(target: VertexId) -> Self {
        Self {
            target,
            basis: PauliBasis::Z,
            support: None,
        }
    }

    /// A `Y` step.
    pub fn y(target: VertexId) -> Self {
        Self {
            target,
            basis: PauliBasis::Y,
            support: None,
        }
    }

    /// An `X` step with its support vertex.
    pub fn x(target: VertexId, support: VertexId) -> Self {
        Self {
            target,
            basis: PauliBasis::X,
            support: Some(support),
        }
    }

    /// Check the basis/support pairing rule for this step alone.
    pub fn validate_shape(&self) -> Result<(), MeasureError> {
        match (self.basis, self.support) {
            (PauliBasis::X, None) => Err(MeasureError::SupportRequired {
                target: self.target,
            }),
            (PauliBasis::Y | PauliBasis::Z, Some(_)) => Err(MeasureError::SupportForbidden {
                target: self.target,
                basis: self.basis,
            }),
            (PauliBasis::X, Some(s)) if s == self.target => Err(MeasureError::SupportNotAdjacent {
                target: self.target,
                support: s,
            }),
            _ => Ok(()),
        }
    }

    /// Apply this step to `g`.
    pub fn apply(&self, g: &Graph) -> Result<Graph, MeasureError> {
        self.validate_shape()?;
        match self.basis {
            PauliBasis::Z => measure_z(g, self.target),
            PauliBasis::Y => measure_y(g, self.target),
            PauliBasis::X => measure_x(g, self.target, self.support.expect("shape validated")),
        }
    }
}

/// An ordered list of measurement steps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MeasurementPlan {
    /// Steps in application order.
    pub steps: Vec<MeasurementStep>,
}

impl MeasurementPlan {
    /// A plan from a list of steps.
    pub fn new(steps: Vec<MeasurementStep>) -> Self {
        Self { steps }
    }

    /// Structural validation: every step has a legal basis/support shape
    /// and no vertex is measured twice. Adjacency of supports depends on
    /// the evolving graph, so it is checked only during [`Self::apply`].
    pub fn validate(&self) -> Result<(), MeasureError> {
        let mut seen = std::collections::BTreeSet::new();
        for (index, step) in self.steps.iter().enumerate() {
            step.validate_shape()
                .map_err(|source| MeasureError::AtStep {
                    index,
                    source: Box::new(source),
                })?;
            if !seen.insert(step.target) {
                return Err(MeasureError::AtStep {
                    index,
                    source: Box::new(MeasureError::DuplicateTarget {
                        target: step.target,
                    }),
                });
            }
        }
        Ok(())
    }

    /// Run the plan on `g`.
    ///
    /// Returns the final graph and the trajectory of intermediate graphs,
    /// one per step (the last trajectory entry equals the final graph).
    /// Errors carry the index of the offending step.
    pub fn apply(&self, g: &Graph) -> Result<(Graph, Vec<Graph>), MeasureError> {
        self.validate()?;
        let mut trajectory = Vec::with_capacity(self.steps.len());
        let mut current = g.clone();
        for (index, step) in self.steps.iter().enumerate() {
            current = step
                .apply(&current)
                .map_err(|source| MeasureError::AtStep {
                    index,
                    source: Box::new(source),
                })?;
            trajectory.push(current.clone());
        }
        Ok((current, trajectory))
    }
}
