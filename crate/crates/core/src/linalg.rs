//! Dense integer matrices and fraction-free determinants.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major matrix of machine integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `self * self^T`.
    pub fn gram(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.rows);
        for a in 0..self.rows {
            for b in a..self.rows {
                let s: i64 = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .map(|(x, y)| x * y)
                    .sum();
                out.set(a, b, s);
                out.set(b, a, s);
            }
        }
        out
    }

    pub fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// division is exact.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    det_bareiss_big(m.to_big_rows())
}

pub fn det_bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    /// Leibniz expansion over all permutations.
    fn det_leibniz(m: &IntMatrix) -> i128 {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i128;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &IntMatrix, sign: i128, total: &mut i128) {
            let n = perm.len();
            if k == n {
                let p: i128 = (0..n).map(|r| m.get(r, perm[r]) as i128).product();
                *total += sign * p;
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                let s = if i == k { sign } else { -sign };
                rec(k + 1, perm, m, s, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, 1, &mut total);
        total
    }

    #[test]
    fn small_determinants() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(det_bareiss(&m), BigInt::from(-2));
        let z = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det_bareiss(&z), BigInt::from(-1));
        assert_eq!(det_bareiss(&IntMatrix::zeros(0, 0)), BigInt::one());
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(det_bareiss(&singular).is_zero());
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(n in 1usize..6, seed in proptest::collection::vec(-3i64..=3, 36)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|r| seed[r * n..(r + 1) * n].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            prop_assert_eq!(det_bareiss(&m), BigInt::from(det_leibniz(&m)));
        }
    }
}
