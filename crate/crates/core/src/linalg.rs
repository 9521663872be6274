//! Exact linear algebra over the rationals.
//!
//! Kernels are computed by fraction-free Gauss-Jordan elimination on integer
//! rows (denominators are cleared row by row first). Every row is divided by
//! the gcd of its entries after each update, which keeps the integers small
//! without introducing fractions. Pivots are taken column by column from left
//! to right, always from the first eligible row, so the resulting kernel basis
//! depends only on the column order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// Reduced row echelon form of an integer matrix.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn normalize_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

impl RowEchelon {
    pub fn new(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        rows.retain(|r| r.iter().any(|v| !v.is_zero()));
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pr);
            normalize_row(&mut rows[rank]);
            if rows[rank][col].is_negative() {
                for v in rows[rank].iter_mut() {
                    *v = -&*v;
                }
            }
            let (before, rest) = rows.split_at_mut(rank);
            let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
            let piv = pivot_row[col].clone();
            for row in before.iter_mut().chain(after.iter_mut()) {
                if row[col].is_zero() {
                    continue;
                }
                let a = row[col].clone();
                for (v, p) in row.iter_mut().zip(pivot_row.iter()) {
                    *v = &*v * &piv - &a * p;
                }
                normalize_row(row);
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        RowEchelon { rows, pivots, ncols }
    }

    pub fn from_rational(rows: &[Vec<Rational>], ncols: usize) -> Self {
        RowEchelon::new(integer_rows(rows), ncols)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Integer kernel basis, one primitive vector per free column (ascending).
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let l = self
                .rows
                .iter()
                .zip(&self.pivots)
                .filter(|(r, _)| !r[free].is_zero())
                .fold(BigInt::one(), |l, (r, &p)| l.lcm(&r[p]));
            let mut v = vec![BigInt::zero(); self.ncols];
            v[free] = l.clone();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !r[free].is_zero() {
                    v[p] = -(&r[free] * (&l / &r[p]));
                }
            }
            normalize_row(&mut v);
            out.push(v);
        }
        out
    }
}

/// Scale each rational row by the lcm of its denominators.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    RowEchelon::from_rational(rows, ncols).nullspace()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    RowEchelon::from_rational(rows, ncols).rank()
}

/// Turn per-column sparse images `(key, value)` into dense rows, one row per
/// distinct key in key order.
pub fn assemble_columns<K: Ord + Clone>(columns: &[Vec<(K, Rational)>]) -> Vec<Vec<Rational>> {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    for col in columns {
        for (k, _) in col {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    // Re-number in key order for determinism.
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let mut rows = vec![vec![Rational::zero(); columns.len()]; index.len()];
    for (j, col) in columns.iter().enumerate() {
        for (k, v) in col {
            rows[index[k]][j] += v;
        }
    }
    rows
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Principal submatrix / block selection.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Solve `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let m = rhs.cols;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| self[(i, j)].clone()).collect();
                row.extend((0..m).map(|j| rhs[(i, j)].clone()));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::InvalidInput("singular matrix in exact solve".into()))?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for v in a[c].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Ok(RatMatrix::from_fn(n, m, |i, j| a[i][n + j].clone()))
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det *= &a[c][c];
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pivot_row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v -= &f * pv;
                }
            }
        }
        det
    }

    /// `L D L^T` factorization of a symmetric positive definite matrix; returns
    /// unit lower-triangular `L` and the diagonal `D`.
    pub fn ldlt(&self) -> Result<(RatMatrix, Vec<Rational>)> {
        assert!(self.is_symmetric(), "ldlt needs a symmetric matrix");
        let n = self.rows;
        let mut l = RatMatrix::identity(n);
        let mut d: Vec<Rational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                let lk = &l[(j, k)];
                if !lk.is_zero() {
                    dj -= lk * lk * &d[k];
                }
            }
            if !dj.is_positive() {
                return Err(Error::Eigensolver("matrix is not positive definite".into()));
            }
            for i in (j + 1)..n {
                let mut v = self[(i, j)].clone();
                for k in 0..j {
                    let (a, b) = (&l[(i, k)], &l[(j, k)]);
                    if !a.is_zero() && !b.is_zero() {
                        v -= a * b * &d[k];
                    }
                }
                l[(i, j)] = v / &dj;
            }
            d.push(dj);
        }
        Ok((l, d))
    }

    /// Exact positive semidefiniteness test by symmetric elimination.
    pub fn is_positive_semidefinite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        for j in 0..n {
            let pivot = a[j][j].clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if (j + 1..n).any(|i| !a[i][j].is_zero()) {
                    return false;
                }
                continue;
            }
            let pivot_row = a[j].clone();
            for row in a.iter_mut().skip(j + 1) {
                if row[j].is_zero() {
                    continue;
                }
                let f = &row[j] / &pivot;
                for (v, pv) in row.iter_mut().zip(&pivot_row).skip(j) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        true
    }

    /// Inverse of a unit lower-triangular matrix.
    pub fn unit_lower_inverse(&self) -> RatMatrix {
        let n = self.rows;
        let mut inv = RatMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                let mut s = Rational::zero();
                for k in j..i {
                    let a = &self[(i, k)];
                    if !a.is_zero() {
                        s += a * &inv[(k, j)];
                    }
                }
                inv[(i, j)] = -s;
            }
        }
        inv
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| crate::poly::to_f64(&self[(i, j)]))
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn nullspace_of_small_matrix() {
        // x + 2y + 3z = 0, 2x + 4y + 6z = 0 -> kernel of dimension 2
        let rows = vec![ints(&[1, 2, 3]), ints(&[2, 4, 6])];
        let e = RowEchelon::new(rows, 3);
        assert_eq!(e.rank(), 1);
        let ns = e.nullspace();
        assert_eq!(ns, vec![ints(&[-2, 1, 0]), ints(&[-3, 0, 1])]);
    }

    #[test]
    fn nullspace_vectors_annihilate_rational_rows() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3), int(0), int(1)],
            vec![int(0), rat(2, 5), int(1), rat(-1, 7)],
        ];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let s: Rational = r.iter().zip(v).map(|(a, b)| a * Rational::from_integer(b.clone())).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn ldlt_and_solve() {
        let a = RatMatrix::from_fn(3, 3, |i, j| rat(1, (i + j + 1) as i64));
        let (l, d) = a.ldlt().unwrap();
        let dm = RatMatrix::from_fn(3, 3, |i, j| if i == j { d[i].clone() } else { int(0) });
        assert_eq!(l.mul(&dm).mul(&l.transpose()), a);
        assert_eq!(l.unit_lower_inverse().mul(&l), RatMatrix::identity(3));
        let x = a.solve(&RatMatrix::identity(3)).unwrap();
        assert_eq!(a.mul(&x), RatMatrix::identity(3));
        assert_eq!(a.determinant(), rat(1, 2160));
    }
}
