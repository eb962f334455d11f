//! Exact rank of rational matrices by fraction-free (Bareiss) elimination.
//!
//! Rows are cleared to integers first (scaling a row by its denominator lcm
//! does not change the row space), then eliminated with the two-step
//! determinant identity so every intermediate division is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scales a rational row to integers by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in row {
        l = num_integer::lcm(l, c.denom().abs());
    }
    row.iter()
        .map(|c| {
            let scaled = c * BigRational::from_integer(l.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

/// Rank of the rational matrix together with the indices of the input rows
/// chosen as pivots, in pivot order.
pub fn rational_rank_with_pivots(rows: &[Vec<BigRational>]) -> (usize, Vec<usize>) {
    if rows.is_empty() {
        return (0, Vec::new());
    }
    let ncols = rows[0].len();
    assert!(
        rows.iter().all(|r| r.len() == ncols),
        "rows must share a length"
    );
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let mut origin: Vec<usize> = (0..m.len()).collect();
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(found) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        origin.swap(rank, found);
        pivots.push(origin[rank]);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for j in (col + 1)..ncols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                let q = &num / &prev;
                debug_assert!((&q * &prev) == num, "fraction-free step must divide exactly");
                row[j] = q;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    (rank, pivots)
}

/// Rank of the rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    rational_rank_with_pivots(rows).0
}
