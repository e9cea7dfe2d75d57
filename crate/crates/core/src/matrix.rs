//! Dense exact matrices and the elimination kernel.
//!
//! Row reduction runs fraction-free (Bareiss) over the field's integer
//! ring, then divides once at the end to reach reduced row-echelon form.
//! Pivots are the first nonzero entry in column order.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::scalar::ExactField;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: ExactField> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = F::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` fixes the width when `rows`
    /// is empty.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "row length does not match column count");
            data.extend(row);
            count += 1;
        }
        Matrix {
            rows: count,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_int(x)).collect()),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [F] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[F]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(F::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a.clone() * other[(k, c)].clone();
                    out[(r, c)] = out[(r, c)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len());
        self.iter_rows()
            .map(|row| crate::scalar::dot(row, x))
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_rows(
            cols.len(),
            self.iter_rows()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect()),
        )
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_rows(self.cols, rows.iter().map(|&r| self.row(r).to_vec()))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_rows(
            self.cols + other.cols,
            (0..self.rows).map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend_from_slice(other.row(r));
                row
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref<F> {
        let (echelon, pivots) = bareiss_echelon(self);
        let rank = pivots.len();
        let mut rows: Vec<Vec<F>> = echelon
            .into_iter()
            .take(rank)
            .map(|row| row.into_iter().map(F::from_ring).collect())
            .collect();
        for (k, &p) in pivots.iter().enumerate() {
            let inv = F::one() / rows[k][p].clone();
            for x in rows[k].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
        }
        for (k, &p) in pivots.iter().enumerate().rev() {
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        rows.resize(self.rows, vec![F::zero(); self.cols]);
        Rref {
            matrix: Matrix::from_rows(self.cols, rows),
            pivots,
        }
    }

    /// Rows form a basis of `{x : A x = 0}`, one per free column.
    pub fn nullspace_basis(&self) -> Matrix<F> {
        self.rref().nullspace()
    }

    pub fn solve_classified(&self, b: &[F]) -> SolveReport<F> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let rhs = Matrix::from_rows(1, b.iter().map(|x| vec![x.clone()]));
        let aug = self.hstack(&rhs).rref();
        let n = self.cols;
        if aug.pivots.last() == Some(&n) {
            return SolveReport::None;
        }
        let mut particular = vec![F::zero(); n];
        for (k, &p) in aug.pivots.iter().enumerate() {
            particular[p] = aug.matrix[(k, n)].clone();
        }
        let coefficient = Rref {
            matrix: aug.matrix.select_columns(&(0..n).collect::<Vec<_>>()),
            pivots: aug.pivots,
        };
        let nullspace = coefficient.nullspace();
        if nullspace.is_empty() {
            SolveReport::Unique(particular)
        } else {
            SolveReport::Affine {
                particular,
                nullspace,
            }
        }
    }
}

/// Forward fraction-free elimination. Every division is exact in the ring.
fn bareiss_echelon<F: ExactField>(m: &Matrix<F>) -> (Vec<Vec<F::Ring>>, Vec<usize>) {
    let mut a: Vec<Vec<F::Ring>> = m.iter_rows().map(F::clear_denominators).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = <F::Ring as num_traits::One>::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone();
                row[j] = v / prev.clone();
            }
            row[c] = F::Ring::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: ExactField> {
    /// Same shape as the input; rows past `rank()` are zero.
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: ExactField> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows.
    pub fn basis(&self) -> Matrix<F> {
        self.matrix
            .select_rows(&(0..self.rank()).collect::<Vec<_>>())
    }

    pub fn nullspace(&self) -> Matrix<F> {
        let n = self.matrix.cols;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
            let mut x = vec![F::zero(); n];
            x[f] = F::one();
            for (k, &p) in self.pivots.iter().enumerate() {
                x[p] = -self.matrix[(k, f)].clone();
            }
            x
        });
        Matrix::from_rows(n, rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveKind {
    Unique,
    None,
    Affine,
}

impl fmt::Display for SolveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveKind::Unique => "unique solution",
            SolveKind::None => "no solution",
            SolveKind::Affine => "non-unique solutions",
        })
    }
}

/// Outcome of [`Matrix::solve_classified`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolveReport<F: ExactField> {
    Unique(Vec<F>),
    None,
    Affine {
        particular: Vec<F>,
        /// Rows span the solution set's direction space.
        nullspace: Matrix<F>,
    },
}

impl<F: ExactField> SolveReport<F> {
    pub fn kind(&self) -> SolveKind {
        match self {
            SolveReport::Unique(_) => SolveKind::Unique,
            SolveReport::None => SolveKind::None,
            SolveReport::Affine { .. } => SolveKind::Affine,
        }
    }

    pub fn particular(&self) -> Option<&[F]> {
        match self {
            SolveReport::Unique(x) | SolveReport::Affine { particular: x, .. } => Some(x),
            SolveReport::None => None,
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (r, c): (usize, usize)) -> &F {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<F: ExactField> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (k, row) in self.iter_rows().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(F::to_literal).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str("]")
    }
}
