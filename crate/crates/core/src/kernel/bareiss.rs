//! Fraction-free (Bareiss) row echelon form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row echelon form produced by [`echelon`].
pub(crate) struct Echelon {
    /// The nonzero rows, in pivot order.
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Fraction-free elimination, column by column. The pivot for a column is
/// the remaining row with the smallest original index whose entry there is
/// nonzero. All divisions are exact.
pub(crate) fn echelon(matrix: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    // (original index, row)
    let mut rows: Vec<(usize, Vec<BigInt>)> = matrix.into_iter().enumerate().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(sel) = (r..rows.len())
            .filter(|&i| !rows[i].1[c].is_zero())
            .min_by_key(|&i| rows[i].0)
        else {
            continue;
        };
        rows.swap(r, sel);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r].1;
        let piv = pivot_row[c].clone();
        for (_, row) in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut val = &piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    val -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    let (q, rem) = val.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    val = q;
                }
                row[j] = val;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon {
        rows: rows.into_iter().map(|(_, row)| row).collect(),
        pivots,
        cols,
    }
}

impl Echelon {
    /// Kernel basis: one vector per free column `f`, with `x_f = 1` and the
    /// other free coordinates zero, scaled to a primitive integer vector.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                // x = y / (common scale); kept integral throughout
                let mut y = vec![BigInt::zero(); self.cols];
                y[f] = BigInt::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
                    let mut s = BigInt::zero();
                    for j in p + 1..self.cols {
                        if !row[j].is_zero() && !y[j].is_zero() {
                            s += &row[j] * &y[j];
                        }
                    }
                    if s.is_zero() {
                        continue;
                    }
                    let u = &row[p];
                    let g = s.gcd(u);
                    let mut m = u / &g;
                    let mut val = -(s / &g);
                    if m.is_negative() {
                        m = -m;
                        val = -val;
                    }
                    if !m.is_one() {
                        for x in y.iter_mut() {
                            if !x.is_zero() {
                                *x *= &m;
                            }
                        }
                    }
                    y[p] = val;
                }
                super::normalize(&mut y);
                y
            })
            .collect()
    }
}
