//! Stabilizer tableaus: the quantum side of the oracle.
//!
//! A tableau stores one stabilizer generator per row in the binary
//! symplectic picture — per-qubit X/Z bits packed into words plus a sign
//! bit — labeled by the graph vertices the qubits came from. Graph states
//! enter through their standard generators (X on the vertex, Z on each
//! neighbor); measurements use anticommuting-generator replacement; and a
//! Gaussian-elimination canonicalization maps any full-rank tableau back
//! to a graph plus a recorded sequence of single-qubit Cliffords, which
//! is what lets the oracle compare quantum states against graph rewrites.

use std::collections::BTreeSet;

use crate::gf2;
use crate::graph::{Graph, VertexId};
use crate::measure::PauliBasis;

use super::{GateOp, LocalGate, OracleError, Outcome};

/// One Pauli operator on up to 64 qubits: sign and per-qubit X/Z bits.
/// Bit `q` of `x`/`z` gives qubit `q`'s literal: 00 = I, 10 = X,
/// 11 = Y, 01 = Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PauliRow {
    pub(crate) x: u64,
    pub(crate) z: u64,
    pub(crate) neg: bool,
}

impl PauliRow {
    pub(crate) const IDENTITY: Self = Self {
        x: 0,
        z: 0,
        neg: false,
    };

    /// The single-qubit operator `basis` at bit position `pos`.
    fn single(pos: u32, basis: PauliBasis) -> Self {
        let bit = 1u64 << pos;
        let (x, z) = match basis {
            PauliBasis::X => (bit, 0),
            PauliBasis::Y => (bit, bit),
            PauliBasis::Z => (0, bit),
        };
        Self { x, z, neg: false }
    }

    /// Whether the two operators commute (symplectic inner product zero).
    pub(crate) fn commutes_with(self, other: Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// The product `self * other`, valid only for commuting operators
    /// (otherwise the result would carry a factor of i).
    pub(crate) fn mul(self, other: Self) -> Self {
        let mut quarter_turns: i32 = 2 * (self.neg as i32 + other.neg as i32);
        let mut support = self.x | self.z | other.x | other.z;
        while support != 0 {
            let q = support.trailing_zeros();
            support &= support - 1;
            let (x1, z1) = (self.x >> q & 1, self.z >> q & 1);
            let (x2, z2) = (other.x >> q & 1, other.z >> q & 1);
            // i-exponent of the single-qubit product, in {-1, 0, +1}.
            quarter_turns += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 as i32 - x2 as i32,
                (1, 0) => z2 as i32 * (2 * x2 as i32 - 1),
                _ => x2 as i32 * (1 - 2 * z2 as i32),
            };
        }
        let quarter_turns = quarter_turns.rem_euclid(4);
        debug_assert!(
            quarter_turns % 2 == 0,
            "product of anticommuting Pauli operators"
        );
        Self {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            neg: quarter_turns == 2,
        }
    }

    /// Whether the operator acts on bit position `pos`.
    fn touches(self, pos: u32) -> bool {
        (self.x | self.z) >> pos & 1 == 1
    }

    /// The combined symplectic vector (x in the low word, z in the high).
    fn symplectic(self) -> u128 {
        self.x as u128 | (self.z as u128) << 64
    }

    /// Remove bit position `pos`, shifting higher bits down.
    fn drop_bit(self, pos: u32) -> Self {
        Self {
            x: squeeze(self.x, pos),
            z: squeeze(self.z, pos),
            neg: self.neg,
        }
    }
}

fn squeeze(mask: u64, pos: u32) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    let high = if pos == 63 {
        0
    } else {
        (mask >> (pos + 1)) << pos
    };
    low | high
}

/// A full-rank stabilizer tableau: `n` pairwise-commuting independent
/// generators over `n` labeled qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    labels: Vec<VertexId>,
    rows: Vec<PauliRow>,
}

impl StabilizerTableau {
    /// The graph state of `g`: one generator per vertex `a`, X on `a`
    /// and Z on each of its neighbors, all signs positive.
    pub fn from_graph(g: &Graph) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        if n > 64 {
            return Err(OracleError::TooManyQubits { n, cap: 64 });
        }
        let labels: Vec<VertexId> = g.vertices().collect();
        let pos_of = |v: VertexId| labels.binary_search(&v).expect("own vertex") as u32;
        let rows = labels
            .iter()
            .map(|&a| {
                let mut z = 0u64;
                for &b in g.open_neighborhood(a).expect("own vertex") {
                    z |= 1 << pos_of(b);
                }
                PauliRow {
                    x: 1 << pos_of(a),
                    z,
                    neg: false,
                }
            })
            .collect();
        Ok(Self { labels, rows })
    }

    /// Number of qubits.
    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    /// Qubit labels in tableau order.
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub(crate) fn raw_rows(&self) -> &[PauliRow] {
        &self.rows
    }

    fn position(&self, q: VertexId) -> Result<u32, OracleError> {
        self.labels
            .iter()
            .position(|&l| l == q)
            .map(|p| p as u32)
            .ok_or(OracleError::UnknownQubit(q))
    }

    /// Generators as sign-prefixed literal strings, e.g. `"+XZI"`,
    /// qubit order following [`Self::labels`].
    pub fn generator_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                let mut s = String::with_capacity(self.labels.len() + 1);
                s.push(if row.neg { '-' } else { '+' });
                for q in 0..self.labels.len() as u32 {
                    s.push(match (row.x >> q & 1, row.z >> q & 1) {
                        (0, 0) => 'I',
                        (1, 0) => 'X',
                        (1, 1) => 'Y',
                        _ => 'Z',
                    });
                }
                s
            })
            .collect()
    }

    /// Verify the structural invariants: one generator per qubit, all
    /// pairs commuting, independent over GF(2).
    pub fn check_invariants(&self) -> Result<(), OracleError> {
        if self.rows.len() != self.labels.len() {
            return Err(OracleError::CorruptTableau {
                reason: "generator count differs from qubit count".into(),
            });
        }
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                if !a.commutes_with(*b) {
                    return Err(OracleError::CorruptTableau {
                        reason: "generators do not commute".into(),
                    });
                }
            }
        }
        let rank = gf2::rank_u128(self.rows.iter().map(|r| r.symplectic()));
        if rank != self.rows.len() {
            return Err(OracleError::CorruptTableau {
                reason: "generators are dependent".into(),
            });
        }
        Ok(())
    }

    /// Measure qubit `q` in `basis`, requesting the given outcome.
    ///
    /// Returns the post-measurement tableau on the remaining qubits.
    /// When the measured operator is in the stabilizer group the outcome
    /// is forced; requesting the other sign is an
    /// [`OracleError::InconsistentOutcome`].
    pub fn measure(
        &self,
        q: VertexId,
        basis: PauliBasis,
        outcome: Outcome,
    ) -> Result<Self, OracleError> {
        let pos = self.position(q)?;
        let op = PauliRow::single(pos, basis);
        let mut rows = self.rows.clone();

        let anti: Vec<usize> = (0..rows.len())
            .filter(|&i| !rows[i].commutes_with(op))
            .collect();

        let lead = if let Some(&pivot) = anti.first() {
            // Random branch: fold the other anticommuting generators
            // into the pivot, then replace the pivot by the measured
            // operator with the requested sign.
            for &r in &anti[1..] {
                rows[r] = rows[r].mul(rows[pivot]);
            }
            rows[pivot] = PauliRow {
                neg: outcome == Outcome::Minus,
                ..op
            };
            pivot
        } else {
            // Deterministic branch: the operator is in the group up to
            // sign. Express it as a product of generators to read off
            // the forced sign.
            let vectors: Vec<u128> = rows.iter().map(|r| r.symplectic()).collect();
            let subset = gf2::solve_subset_u128(&vectors, op.symplectic()).ok_or(
                OracleError::CorruptTableau {
                    reason: "commuting operator outside the group span".into(),
                },
            )?;
            let mut product = PauliRow::IDENTITY;
            for &i in &subset {
                product = product.mul(rows[i]);
            }
            debug_assert_eq!((product.x, product.z), (op.x, op.z));
            let determined = if product.neg {
                Outcome::Minus
            } else {
                Outcome::Plus
            };
            if determined != outcome {
                return Err(OracleError::InconsistentOutcome {
                    requested: outcome,
                    determined,
                });
            }
            let lead = *subset.first().expect("nontrivial operator");
            rows[lead] = product;
            lead
        };

        // Multiply the measured operator into every other generator still
        // touching the qubit (their literal there equals the measured one,
        // so it cancels), then drop the generator and the qubit.
        let lead_row = rows[lead];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != lead && row.touches(pos) {
                *row = row.mul(lead_row);
            }
        }
        rows.remove(lead);
        let rows = rows.into_iter().map(|r| r.drop_bit(pos)).collect();
        let mut labels = self.labels.clone();
        labels.remove(pos as usize);
        Ok(Self { labels, rows })
    }

    /// Reduce the tableau to graph form.
    ///
    /// Returns the graph `G` and the single-qubit gates that were applied
    /// (in order) to turn the input state `|psi>` into `|G>`; replaying
    /// their inverses in reverse on `|G>` recovers `|psi>` exactly.
    pub fn canonical_graph(&self) -> Result<(Graph, Vec<GateOp>), OracleError> {
        self.check_invariants()
            .map_err(|_| OracleError::RankDeficient)?;
        let mut t = self.clone();
        let n = t.rows.len();
        let mut record = Vec::new();

        // Make the X block invertible. Each pass row-reduces the X block;
        // a row with zero X part must hold a Z literal on some non-pivot
        // column (otherwise it could not commute with the pivot rows), and
        // a Hadamard there strictly grows the X rank.
        let mut guard = 0;
        loop {
            let (pivot_cols, zero_rows) = t.x_row_reduce();
            let Some(&s) = zero_rows.first() else { break };
            guard += 1;
            if guard > n {
                return Err(OracleError::CorruptTableau {
                    reason: "X-block reduction made no progress".into(),
                });
            }
            let z = t.rows[s].z;
            let col = (0..n as u32)
                .find(|&c| z >> c & 1 == 1 && !pivot_cols.contains(&c))
                .ok_or(OracleError::RankDeficient)?;
            t.apply_gate(LocalGate::H, col);
            record.push(GateOp {
                gate: LocalGate::H,
                qubit: t.labels[col as usize],
            });
        }

        // Gauss-Jordan the X block to the identity.
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| t.rows[r].x >> col & 1 == 1)
                .ok_or(OracleError::RankDeficient)?;
            t.rows.swap(col, pivot);
            let p = t.rows[col];
            for r in 0..n {
                if r != col && t.rows[r].x >> col & 1 == 1 {
                    t.rows[r] = t.rows[r].mul(p);
                }
            }
        }

        // With X = I the Z block is symmetric; clear its diagonal with
        // phase gates (. on qubit i turns the Y literal of row i into X).
        for i in 0..n {
            if t.rows[i].z >> i & 1 == 1 {
                t.apply_gate(LocalGate::S, i as u32);
                record.push(GateOp {
                    gate: LocalGate::S,
                    qubit: t.labels[i],
                });
            }
        }

        // Clear the remaining signs with Pauli-Z gates.
        for i in 0..n {
            if t.rows[i].neg {
                t.apply_gate(LocalGate::Z, i as u32);
                record.push(GateOp {
                    gate: LocalGate::Z,
                    qubit: t.labels[i],
                });
            }
        }

        // Read the adjacency out of the Z block.
        let mut edges = Vec::new();
        for i in 0..n {
            debug_assert_eq!(t.rows[i].x, 1 << i);
            debug_assert!(!t.rows[i].neg);
            for j in i + 1..n {
                let ij = t.rows[i].z >> j & 1;
                let ji = t.rows[j].z >> i & 1;
                if ij != ji {
                    return Err(OracleError::CorruptTableau {
                        reason: "canonical Z block is not symmetric".into(),
                    });
                }
                if ij == 1 {
                    edges.push((t.labels[i], t.labels[j]));
                }
            }
        }
        let graph = Graph::build(t.labels.iter().copied(), edges)?;
        Ok((graph, record))
    }

    /// Conjugate every generator by a single-qubit gate at bit `col`.
    fn apply_gate(&mut self, gate: LocalGate, col: u32) {
        let bit = 1u64 << col;
        for row in &mut self.rows {
            let x = row.x & bit != 0;
            let z = row.z & bit != 0;
            match gate {
                // H: X <-> Z, Y -> -Y.
                LocalGate::H => {
                    if x && z {
                        row.neg = !row.neg;
                    } else if x != z {
                        row.x ^= bit;
                        row.z ^= bit;
                    }
                }
                // S: X -> Y, Y -> -X, Z fixed.
                LocalGate::S => {
                    if x && z {
                        row.neg = !row.neg;
                    }
                    if x {
                        row.z ^= bit;
                    }
                }
                // Z: X -> -X, Y -> -Y.
                LocalGate::Z => {
                    if x {
                        row.neg = !row.neg;
                    }
                }
            }
        }
    }

    /// Row-reduce the X block in place (full row operations). Returns
    /// the pivot columns and the indices of rows left with zero X part.
    fn x_row_reduce(&mut self) -> (BTreeSet<u32>, Vec<usize>) {
        let n = self.rows.len();
        let mut pivot_cols = BTreeSet::new();
        let mut rank = 0usize;
        for col in 0..self.labels.len() as u32 {
            let Some(r) = (rank..n).find(|&r| self.rows[r].x >> col & 1 == 1) else {
                continue;
            };
            self.rows.swap(rank, r);
            let p = self.rows[rank];
            for i in 0..n {
                if i != rank && self.rows[i].x >> col & 1 == 1 {
                    self.rows[i] = self.rows[i].mul(p);
                }
            }
            pivot_cols.insert(col);
            rank += 1;
        }
        (pivot_cols, (rank..n).collect())
    }
}
