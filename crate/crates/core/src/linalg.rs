//! Dense exact matrices over ℚ.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination after clearing
//! row denominators. The elimination runs in `i128` with checked arithmetic
//! and restarts in `BigInt` if an intermediate minor overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational64>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational64::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational64>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Matrix product `self · rhs`. Panics on shape mismatch.
    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let rows = self.integer_rows();
        match bareiss_rank_i128(rows.clone()) {
            Some(r) => r,
            None => bareiss_rank_big(
                rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
            ),
        }
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let l = row.iter().fold(1i128, |acc, x| acc.lcm(&i128::from(*x.denom())));
                row.iter().map(|x| i128::from(*x.numer()) * (l / i128::from(*x.denom()))).collect()
            })
            .collect()
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in rank + 1..rows {
            let factor = m[r][col];
            for c in col..cols {
                let v = pivot.checked_mul(m[r][c])?.checked_sub(factor.checked_mul(m[rank][c])?)?;
                m[r][c] = v / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(QMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(QMatrix::identity(5).rank(), 5);
        let m = QMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let m = QMatrix::from_rows(&[vec![r(1, 2), r(1, 3)], vec![r(3, 2), r(1, 1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn big_fallback_matches() {
        // Hilbert-like integer matrix with large entries forces overflow in i128.
        let big = 1i64 << 40;
        let m = QMatrix::from_integers(&[
            vec![big, big - 1, 3, 7],
            vec![big - 5, big, 11, 13],
            vec![big + 3, big - 9, 17, 19],
            vec![2 * big - 5, 2 * big - 1, 14, 20],
        ]);
        let rows = m.integer_rows();
        let big_rank =
            bareiss_rank_big(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        assert_eq!(m.rank(), big_rank);
        assert_eq!(big_rank, 3);
    }

    #[test]
    fn product_with_identity() {
        let m = QMatrix::from_integers(&[vec![1, -2], vec![3, 4], vec![0, 5]]);
        assert_eq!(m.mul(&QMatrix::identity(2)), m);
        assert_eq!(QMatrix::identity(3).mul(&m), m);
    }

    proptest! {
        // rank(A) = rank(Aᵀ) and rank(A·B) ≤ min(rank A, rank B)
        #[test]
        fn rank_invariants(a in proptest::collection::vec(-3i64..4, 12), b in proptest::collection::vec(-3i64..4, 12)) {
            let ma = QMatrix::from_integers(&a.chunks(4).map(|c| c.to_vec()).collect::<Vec<_>>());
            let mb = QMatrix::from_integers(&b.chunks(3).map(|c| c.to_vec()).collect::<Vec<_>>());
            let mut t = QMatrix::zeros(4, 3);
            for i in 0..3 { for j in 0..4 { t.set(j, i, ma.get(i, j)); } }
            prop_assert_eq!(ma.rank(), t.rank());
            let prod = ma.mul(&mb);
            prop_assert!(prod.rank() <= ma.rank().min(mb.rank()));
        }
    }
}
