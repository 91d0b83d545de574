//! Exact linear algebra over ℚ(i): dense matrices with Gauss-Jordan
//! elimination, and an incremental sparse echelon basis used for
//! span-membership queries.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::scalar::GaussianRational as GQ;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GQ>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GQ::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GQ>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GQ::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GQ] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<GQ> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GQ>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        m[(i, j)] += &p;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[GQ]) -> Vec<GQ> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = GQ::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &GQ) -> Matrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose().scale(&-GQ::one())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Gauss-Jordan elimination with exact arithmetic.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<GQ>> {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GQ::zero(); self.cols];
                v[f] = GQ::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rref[(row, f)];
                }
                v
            })
            .collect()
    }

    /// A particular solution of `A x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[GQ]) -> Option<Vec<GQ>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GQ::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GQ::one();
        }
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rref[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GQ;
    fn index(&self, (i, j): (usize, usize)) -> &GQ {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GQ {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub type SparseVec = BTreeMap<usize, GQ>;

/// Incrementally built semi-echelon basis of a subspace of `ℚ(i)^N`. Each
/// stored row has a distinct leading column, normalized to one.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut floor = 0usize;
        loop {
            let Some((&c, _)) = v.range(floor..).next() else {
                return v;
            };
            let Some(row) = self.rows.get(&c) else {
                // Leading entry without a pivot: keep going to reduce the tail
                // so stored rows stay short, but `c` survives.
                floor = c + 1;
                continue;
            };
            let f = v[&c].clone();
            for (&j, a) in row {
                let d = &f * a;
                let e = v.entry(j).or_default();
                *e -= &d;
                if e.is_zero() {
                    v.remove(&j);
                }
            }
            floor = c + 1;
        }
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&lead, lv)) = v.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero lead");
        let v: SparseVec = v.into_iter().map(|(j, a)| (j, &a * &inv)).collect();
        self.rows.insert(lead, v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn hermitian_projector_rank_one() {
        let m = Matrix::from_rows(vec![
            vec![GQ::from_int(1), GQ::i()],
            vec![-GQ::i(), GQ::from_int(1)],
        ]);
        assert!(m.is_hermitian());
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_ints(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[GQ::from_int(3), GQ::from_int(5)]).unwrap();
        assert_eq!(x, vec![GQ::from_ratio(4, 5), GQ::from_ratio(7, 5)]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let sing = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[GQ::from_int(1), GQ::from_int(1)]).is_none());
        assert!(sing.solve(&[GQ::from_int(1), GQ::from_int(2)]).is_some());
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        let v = |pairs: &[(usize, i64)]| -> SparseVec {
            pairs.iter().map(|&(j, a)| (j, GQ::from_int(a))).collect()
        };
        assert!(e.insert(v(&[(0, 1), (2, 1)])));
        assert!(e.insert(v(&[(1, 2), (2, -1)])));
        assert!(!e.insert(v(&[(0, 2), (1, 2), (2, 1)])));
        assert!(e.contains(v(&[(0, 1), (1, 4), (2, -1)])));
        assert!(!e.contains(v(&[(2, 1)])));
        assert_eq!(e.rank(), 2);
    }
}
