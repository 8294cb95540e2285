//! Dense statevector evaluation: the oracle's own cross-check.
//!
//! Everything the tableau machinery claims can be re-derived here by
//! brute force at small scale — graph states from their amplitude
//! formula, tableau states from stabilizer projectors, and single-qubit
//! gate replays — so the two quantum representations certify each other
//! before either is trusted to certify a graph rewrite.

use num_complex::Complex64;

use crate::graph::{Graph, VertexId};

use super::tableau::{PauliRow, StabilizerTableau};
use super::{LocalGate, OracleError, OracleLimits};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A normalized state vector over labeled qubits. Qubit `i` (tableau
/// order) maps to bit `i` of the amplitude index, lowest bit first.
#[derive(Debug, Clone)]
pub struct DenseState {
    labels: Vec<VertexId>,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// Qubit labels in bit order.
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    /// Amplitudes, indexed by basis state.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `|<self|other>|`; the two states must share the same labels.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        assert_eq!(self.labels, other.labels, "fidelity needs matching qubits");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Apply a single-qubit gate.
    pub fn apply_gate(&mut self, gate: LocalGate, qubit: VertexId) -> Result<(), OracleError> {
        self.apply(gate, qubit, false)
    }

    /// Apply the inverse of a single-qubit gate.
    pub fn apply_gate_inverse(
        &mut self,
        gate: LocalGate,
        qubit: VertexId,
    ) -> Result<(), OracleError> {
        self.apply(gate, qubit, true)
    }

    fn apply(
        &mut self,
        gate: LocalGate,
        qubit: VertexId,
        inverse: bool,
    ) -> Result<(), OracleError> {
        let q = self
            .labels
            .iter()
            .position(|&l| l == qubit)
            .ok_or(OracleError::UnknownQubit(qubit))?;
        let bit = 1usize << q;
        match gate {
            LocalGate::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                        self.amps[b] = (a0 + a1) * s;
                        self.amps[b | bit] = (a0 - a1) * s;
                    }
                }
            }
            LocalGate::S => {
                let phase = if inverse { -I } else { I };
                for b in 0..self.amps.len() {
                    if b & bit != 0 {
                        self.amps[b] *= phase;
                    }
                }
            }
            LocalGate::Z => {
                for b in 0..self.amps.len() {
                    if b & bit != 0 {
                        self.amps[b] = -self.amps[b];
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every generator of `t` fixes this state (eigenvalue +1
    /// within 1e-10). Labels must match the tableau's.
    pub fn stabilized_by(&self, t: &StabilizerTableau) -> bool {
        if self.labels != t.labels() {
            return false;
        }
        t.raw_rows().iter().all(|&row| {
            let acted = apply_row(&self.amps, row);
            acted
                .iter()
                .zip(&self.amps)
                .all(|(a, b)| (a - b).norm() < 1e-10)
        })
    }
}

/// Evaluate the graph state of `g` directly: the amplitude of basis
/// state `b` is `2^(-n/2) * (-1)^m` with `m` the number of edges whose
/// endpoints are both set in `b`.
pub fn graph_to_dense(g: &Graph, limits: &OracleLimits) -> Result<DenseState, OracleError> {
    let n = g.vertex_count();
    if n > limits.dense_cap {
        return Err(OracleError::TooManyQubits {
            n,
            cap: limits.dense_cap,
        });
    }
    let labels: Vec<VertexId> = g.vertices().collect();
    let pos = |v: VertexId| labels.binary_search(&v).expect("own vertex");
    let edge_bits: Vec<usize> = g
        .edges()
        .into_iter()
        .map(|(a, b)| (1 << pos(a)) | (1 << pos(b)))
        .collect();
    let scale = 2f64.powf(-(n as f64) / 2.0);
    let amps = (0..1usize << n)
        .map(|b| {
            let m = edge_bits.iter().filter(|&&e| b & e == e).count();
            if m % 2 == 0 {
                ONE * scale
            } else {
                -ONE * scale
            }
        })
        .collect();
    Ok(DenseState { labels, amps })
}

/// Recover the dense state of a tableau by applying the stabilizer
/// projector `prod_i (I + g_i)/2` to basis states until one survives.
pub fn tableau_to_dense(
    t: &StabilizerTableau,
    limits: &OracleLimits,
) -> Result<DenseState, OracleError> {
    let n = t.qubit_count();
    if n > limits.dense_cap {
        return Err(OracleError::TooManyQubits {
            n,
            cap: limits.dense_cap,
        });
    }
    let dim = 1usize << n;
    for candidate in 0..dim {
        let mut amps = vec![Complex64::ZERO; dim];
        amps[candidate] = ONE;
        for &row in t.raw_rows() {
            let acted = apply_row(&amps, row);
            for (a, b) in amps.iter_mut().zip(acted) {
                *a = (*a + b) * 0.5;
            }
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq > 1e-9 {
            let scale = norm_sq.sqrt().recip();
            for a in &mut amps {
                *a *= scale;
            }
            return Ok(DenseState {
                labels: t.labels().to_vec(),
                amps,
            });
        }
    }
    Err(OracleError::CorruptTableau {
        reason: "stabilizer projector annihilated every basis state".into(),
    })
}

/// Apply one Pauli operator to an amplitude vector.
fn apply_row(amps: &[Complex64], row: PauliRow) -> Vec<Complex64> {
    let base = match (row.x & row.z).count_ones() % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    } * if row.neg { -ONE } else { ONE };
    let x = row.x as usize;
    let z = row.z as usize;
    let mut out = vec![Complex64::ZERO; amps.len()];
    for (b, &a) in amps.iter().enumerate() {
        if a == Complex64::ZERO {
            continue;
        }
        let sign = if (b & z).count_ones() % 2 == 1 {
            -ONE
        } else {
            ONE
        };
        out[b ^ x] += a * base * sign;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn single_vertex_is_plus() {
        let g = Graph::build([7], []).unwrap();
        let d = graph_to_dense(&g, &limits()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((d.amplitudes()[0] - ONE * s).norm() < 1e-12);
        assert!((d.amplitudes()[1] - ONE * s).norm() < 1e-12);
    }

    #[test]
    fn k2_amplitudes_carry_one_minus_sign() {
        let g = Graph::build([0, 1], [(0, 1)]).unwrap();
        let d = graph_to_dense(&g, &limits()).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in d.amplitudes().iter().zip(expected) {
            assert!((a - ONE * e).norm() < 1e-12);
        }
    }

    #[test]
    fn dense_cap_is_enforced() {
        let g = Graph::build(0..15u32, []).unwrap();
        assert!(matches!(
            graph_to_dense(&g, &limits()),
            Err(OracleError::TooManyQubits { n: 15, cap: 14 })
        ));
    }

    #[test]
    fn graph_states_are_stabilized_by_their_tableaus() {
        for (n, edges) in [
            (1, vec![]),
            (2, vec![(0, 1)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ] {
            let g = Graph::build(0..n as u32, edges).unwrap();
            let t = StabilizerTableau::from_graph(&g).unwrap();
            let d = graph_to_dense(&g, &limits()).unwrap();
            assert!(d.stabilized_by(&t), "n={n}");
        }
    }

    #[test]
    fn projector_recovery_matches_direct_evaluation() {
        let g = Graph::build(0..5u32, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let t = StabilizerTableau::from_graph(&g).unwrap();
        let via_projectors = tableau_to_dense(&t, &limits()).unwrap();
        let direct = graph_to_dense(&g, &limits()).unwrap();
        assert!(via_projectors.fidelity(&direct) > 1.0 - 1e-12);
    }

    #[test]
    fn gates_compose_with_their_inverses() {
        let g = Graph::build(0..3u32, [(0, 1), (1, 2)]).unwrap();
        let d0 = graph_to_dense(&g, &limits()).unwrap();
        let mut d = d0.clone();
        for gate in [LocalGate::H, LocalGate::S, LocalGate::Z, LocalGate::S] {
            d.apply_gate(gate, 1).unwrap();
        }
        for gate in [LocalGate::S, LocalGate::Z, LocalGate::S, LocalGate::H] {
            d.apply_gate_inverse(gate, 1).unwrap();
        }
        assert!(d.fidelity(&d0) > 1.0 - 1e-12);
    }

    #[test]
    fn canonicalization_record_replays_to_the_input_state() {
        // Measure a few qubits of a path state, canonicalize the result,
        // and undo the recorded gates on the canonical graph's state: the
        // original post-measurement state must reappear.
        let g = Graph::build(0..6u32, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let t = StabilizerTableau::from_graph(&g).unwrap();
        for (q, basis, outcome) in [
            (
                2,
                crate::measure::PauliBasis::Y,
                super::super::Outcome::Plus,
            ),
            (
                4,
                crate::measure::PauliBasis::X,
                super::super::Outcome::Minus,
            ),
        ] {
            let post = t.measure(q, basis, outcome).unwrap();
            let reference = tableau_to_dense(&post, &limits()).unwrap();
            let (canon, record) = post.canonical_graph().unwrap();
            let mut replay = graph_to_dense(&canon, &limits()).unwrap();
            for op in record.iter().rev() {
                replay.apply_gate_inverse(op.gate, op.qubit).unwrap();
            }
            assert!(
                replay.fidelity(&reference) > 1.0 - 1e-9,
                "replay diverged for ({q}, {basis:?})"
            );
        }
    }
}
