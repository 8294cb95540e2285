//! Bit-packed GF(2) linear algebra.
//!
//! Rows are machine words (one bit per column, up to 128 columns), which
//! keeps rank computations and subset solving allocation-light. The
//! workhorse is an XOR basis maintained in decreasing leading-bit order,
//! so reduction sweeps each bit position exactly once.

/// Rank of a set of rows over GF(2), up to 64 columns.
pub fn rank_u64<I: IntoIterator<Item = u64>>(rows: I) -> usize {
    rank_u128(rows.into_iter().map(u128::from))
}

/// Rank of a set of rows over GF(2), up to 128 columns.
pub fn rank_u128<I: IntoIterator<Item = u128>>(rows: I) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for row in rows {
        if let Some(reduced) = reduce(&basis, row) {
            insert_sorted(&mut basis, reduced);
        }
    }
    basis.len()
}

/// Find a subset of `rows` whose XOR equals `target`.
///
/// Returns the indices of one such subset (in ascending order), or `None`
/// when `target` is outside the span. At most 64 rows are supported so
/// the combination fits one word.
pub fn solve_subset_u128(rows: &[u128], target: u128) -> Option<Vec<usize>> {
    assert!(rows.len() <= 64, "subset solver supports at most 64 rows");
    // Basis of (vector, combination-of-original-rows) pairs.
    let mut basis: Vec<(u128, u64)> = Vec::new();
    for (i, &row) in rows.iter().enumerate() {
        let mut v = row;
        let mut combo = 1u64 << i;
        for &(bv, bc) in &basis {
            if (v ^ bv) < v {
                v ^= bv;
                combo ^= bc;
            }
        }
        if v != 0 {
            let pos = basis.partition_point(|&(bv, _)| bv > v);
            basis.insert(pos, (v, combo));
        }
    }
    let mut t = target;
    let mut combo = 0u64;
    for &(bv, bc) in &basis {
        if (t ^ bv) < t {
            t ^= bv;
            combo ^= bc;
        }
    }
    (t == 0).then(|| (0..rows.len()).filter(|&i| combo >> i & 1 == 1).collect())
}

/// Reduce `row` against `basis` (sorted descending); `None` if dependent.
fn reduce(basis: &[u128], mut row: u128) -> Option<u128> {
    for &b in basis {
        row = row.min(row ^ b);
    }
    (row != 0).then_some(row)
}

fn insert_sorted(basis: &mut Vec<u128>, value: u128) {
    let pos = basis.partition_point(|&b| b > value);
    basis.insert(pos, value);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_dependent_rows() {
        assert_eq!(rank_u64([0b001, 0b010, 0b100]), 3);
        assert_eq!(rank_u64([0b011, 0b101, 0b110]), 2); // third = xor of first two
        assert_eq!(rank_u64([0, 0]), 0);
        assert_eq!(rank_u64(std::iter::empty()), 0);
    }

    #[test]
    fn rank_handles_shared_leading_bits() {
        // All rows share the top bit; rank must still come out right.
        // The last row is the XOR of the first three.
        assert_eq!(rank_u64([0b1001, 0b1010, 0b1100, 0b1111]), 3);
        assert_eq!(rank_u64([0b1001, 0b1010, 0b1110]), 3);
        assert_eq!(rank_u64([0b1001, 0b1010, 0b0011]), 2);
    }

    #[test]
    fn subset_solver_finds_combinations() {
        let rows = [0b011u128, 0b110, 0b101];
        // 0b011 ^ 0b110 = 0b101: both {0,1} and {2} are solutions; the
        // solver returns one of them and it must reproduce the target.
        let solution = solve_subset_u128(&rows, 0b101).unwrap();
        let xor = solution.iter().fold(0u128, |acc, &i| acc ^ rows[i]);
        assert_eq!(xor, 0b101);

        assert_eq!(solve_subset_u128(&rows, 0), Some(vec![]));
        assert!(solve_subset_u128(&[0b01, 0b10], 0b100).is_none());
    }

    #[test]
    fn subset_solver_on_singular_systems() {
        let rows = [0b11u128, 0b11, 0b01];
        let solution = solve_subset_u128(&rows, 0b10).unwrap();
        let xor = solution.iter().fold(0u128, |acc, &i| acc ^ rows[i]);
        assert_eq!(xor, 0b10);
    }
}
