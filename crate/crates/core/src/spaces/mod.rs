//! Vector and affine spaces on finite labelled index sets.
//!
//! A space on `X` is a subspace of `F^X`. It is stored as a representative
//! matrix in reduced row-echelon form over the sorted labels, so two spaces
//! are equal exactly when their representations are.

mod affine;
mod compose;
pub mod json;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::Matrix;
use crate::scalar::ExactField;

pub use affine::AffineSpace;

#[derive(Clone, Debug, PartialEq)]
pub struct VectorSpace<F: ExactField> {
    labels: Vec<Label>,
    basis: Matrix<F>,
}

/// Sorts `labels` and returns, for each sorted position, the original index.
fn sort_labels(labels: Vec<Label>) -> Result<(Vec<Label>, Vec<usize>)> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    for w in order.windows(2) {
        if labels[w[0]] == labels[w[1]] {
            return Err(Error::DuplicateLabel(labels[w[0]].clone()));
        }
    }
    let sorted = order.iter().map(|&k| labels[k].clone()).collect();
    Ok((sorted, order))
}

pub(crate) fn label_union(a: &[Label], b: &[Label]) -> Vec<Label> {
    let set: BTreeSet<&Label> = a.iter().chain(b).collect();
    set.into_iter().cloned().collect()
}

impl<F: ExactField> VectorSpace<F> {
    /// Span of `vectors`, whose coordinates follow `labels` in the given order.
    pub fn span(labels: Vec<Label>, vectors: impl IntoIterator<Item = Vec<F>>) -> Result<Self> {
        let n = labels.len();
        let rows = vectors
            .into_iter()
            .map(|v| {
                if v.len() == n {
                    Ok(v)
                } else {
                    Err(Error::LengthMismatch {
                        expected: n,
                        found: v.len(),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let (sorted, order) = sort_labels(labels)?;
        let m = Matrix::from_rows(n, rows).select_columns(&order);
        Ok(Self::from_sorted(sorted, &m))
    }

    /// Row space of `m`, whose columns follow `labels`.
    pub fn row_space(labels: Vec<Label>, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: m.cols(),
            });
        }
        let (sorted, order) = sort_labels(labels)?;
        Ok(Self::from_sorted(sorted, &m.select_columns(&order)))
    }

    /// Solution set of `equations · x = 0`.
    pub fn solutions(labels: Vec<Label>, equations: &Matrix<F>) -> Result<Self> {
        if equations.cols() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: equations.cols(),
            });
        }
        Self::row_space(labels, &equations.nullspace_basis())
    }

    pub(crate) fn from_sorted(labels: Vec<Label>, m: &Matrix<F>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(labels.len(), m.cols());
        VectorSpace {
            labels,
            basis: m.rref().basis(),
        }
    }

    /// `0_X`.
    pub fn zero(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        Self::row_space(labels, &Matrix::zeros(0, n))
    }

    /// `F_X`.
    pub fn full(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        Self::row_space(labels, &Matrix::identity(n))
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Canonical representative matrix (RREF, full row rank).
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Size of the index set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.len()
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    fn positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| {
                self.position(l)
                    .ok_or_else(|| Error::NotInIndexSet(l.clone()))
            })
            .collect()
    }

    /// Basis rows re-expressed on the superset `labels` (zeros elsewhere).
    pub(crate) fn embed(&self, labels: &[Label]) -> Matrix<F> {
        let map: Vec<Option<usize>> = labels.iter().map(|l| self.position(l)).collect();
        Matrix::from_rows(
            labels.len(),
            self.basis.iter_rows().map(|row| {
                map.iter()
                    .map(|p| p.map_or_else(F::zero, |k| row[k].clone()))
                    .collect()
            }),
        )
    }

    /// Reorders a vector given on `self.labels()` into `order`.
    pub fn coordinates(&self, x: &[F], order: &[Label]) -> Result<Vec<F>> {
        let pos = self.positions(order)?;
        Ok(pos.into_iter().map(|k| x[k].clone()).collect())
    }

    /// Residual of `x` after reducing against the canonical basis.
    pub(crate) fn reduce(&self, x: &[F]) -> Vec<F> {
        let mut r = x.to_vec();
        for row in self.basis.iter_rows() {
            let p = row
                .iter()
                .position(|v| !v.is_zero())
                .expect("nonzero basis row");
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in r.iter_mut().zip(row) {
                *a = a.clone() - f.clone() * b.clone();
            }
        }
        r
    }

    /// Membership of `x`, whose coordinates follow `self.labels()`.
    pub fn contains(&self, x: &[F]) -> Result<bool> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: x.len(),
            });
        }
        Ok(self.reduce(x).iter().all(Zero::is_zero))
    }

    /// `self ⊆ other`, both on the same index set.
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        if self.labels != other.labels {
            return Err(Error::IndexSetMismatch);
        }
        Ok(self
            .basis
            .iter_rows()
            .all(|row| other.reduce(row).iter().all(Zero::is_zero)))
    }

    /// Set equality; errors when the index sets differ.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.labels != other.labels {
            return Err(Error::IndexSetMismatch);
        }
        Ok(self.basis == other.basis)
    }

    /// Bilinear dual: `{g : Σ f(e) g(e) = 0 for all f}`.
    pub fn perp(&self) -> Self {
        Self::from_sorted(self.labels.clone(), &self.basis.nullspace_basis())
    }

    pub fn conj(&self) -> Self {
        Self::from_sorted(self.labels.clone(), &self.basis.conj())
    }

    /// Sesquilinear dual: `{g : Σ f(e) conj(g(e)) = 0 for all f}`.
    pub fn star(&self) -> Self {
        self.perp().conj()
    }

    /// The dual that matches the field: `perp` over Q, `star` over Q(i).
    /// The two coincide on real spaces.
    pub fn dual(&self) -> Self {
        self.star()
    }

    /// `V ∘ T`.
    pub fn restrict(&self, t: &[Label]) -> Result<Self> {
        let pos = self.positions(t)?;
        Self::row_space(t.to_vec(), &self.basis.select_columns(&pos))
    }

    /// `V × T`.
    pub fn contract(&self, t: &[Label]) -> Result<Self> {
        let keep = self.positions(t)?;
        let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
        let drop: Vec<usize> = (0..self.len()).filter(|k| !keep_set.contains(k)).collect();
        // Eliminate with the discarded columns first; rows pivoting past them
        // vanish on X - T.
        let mut order = drop.clone();
        order.extend(&keep);
        let r = self.basis.select_columns(&order).rref();
        let rows: Vec<usize> = r
            .pivots
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p >= drop.len())
            .map(|(k, _)| k)
            .collect();
        let tail: Vec<usize> = (drop.len()..order.len()).collect();
        let m = r.matrix.select_rows(&rows).select_columns(&tail);
        Self::row_space(t.to_vec(), &m)
    }

    /// `V_X + V_Y` on `X ∪ Y`.
    pub fn sum(&self, other: &Self) -> Self {
        let labels = label_union(&self.labels, &other.labels);
        let m = self.embed(&labels).vstack(&other.embed(&labels));
        Self::from_sorted(labels, &m)
    }

    /// Direct sum on disjoint index sets.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if let Some(l) = self.labels.iter().find(|l| other.position(l).is_some()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
        Ok(self.sum(other))
    }

    /// `V_X ∩ V_Y` on `X ∪ Y`, each side padded with `F` off its own set.
    pub fn intersect(&self, other: &Self) -> Self {
        let labels = label_union(&self.labels, &other.labels);
        let a = self.padded(&labels);
        let b = other.padded(&labels);
        Self::from_sorted(labels, &zassenhaus_intersection(&a, &b))
    }

    /// Rows spanning `self ⊕ F_{labels - X}`.
    fn padded(&self, labels: &[Label]) -> Matrix<F> {
        let mut m = self.embed(labels);
        for (k, l) in labels.iter().enumerate() {
            if self.position(l).is_none() {
                let mut e = vec![F::zero(); labels.len()];
                e[k] = F::one();
                m = m.vstack(&Matrix::from_rows(labels.len(), [e]));
            }
        }
        m
    }

    /// Negates the coordinates on `y`.
    pub fn signflip(&self, y: &[Label]) -> Result<Self> {
        let pos = self.positions(y)?;
        let mut m = self.basis.clone();
        for r in 0..m.rows() {
            for &c in &pos {
                m[(r, c)] = -m[(r, c)].clone();
            }
        }
        Ok(Self::from_sorted(self.labels.clone(), &m))
    }

    /// Renames every label through `f`, which must be injective on the index set.
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Self> {
        let new: Vec<Label> = self.labels.iter().map(f).collect();
        let (sorted, order) = sort_labels(new).map_err(|_| Error::NotBijective)?;
        Ok(Self::from_sorted(
            sorted,
            &self.basis.select_columns(&order),
        ))
    }

    /// Renames through an explicit map; every label must be a key.
    pub fn relabel_map(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        if let Some(l) = self.labels.iter().find(|l| !map.contains_key(l)) {
            return Err(Error::NotInIndexSet(l.clone()));
        }
        self.relabel(|l| map[l].clone())
    }

    /// A random-looking but deterministic member: the sum of basis rows
    /// weighted by `weights`.
    pub fn combination(&self, weights: &[F]) -> Vec<F> {
        assert_eq!(weights.len(), self.dim());
        let mut x = vec![F::zero(); self.len()];
        for (w, row) in weights.iter().zip(self.basis.iter_rows()) {
            for (a, b) in x.iter_mut().zip(row) {
                *a = a.clone() + w.clone() * b.clone();
            }
        }
        x
    }
}

/// Basis of `rowspace(a) ∩ rowspace(b)` via the Zassenhaus block reduction.
fn zassenhaus_intersection<F: ExactField>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.cols();
    let block = a.hstack(a).vstack(&b.hstack(&Matrix::zeros(b.rows(), n)));
    let r = block.rref();
    let rows: Vec<usize> = r
        .pivots
        .iter()
        .enumerate()
        .filter(|&(_, &p)| p >= n)
        .map(|(k, _)| k)
        .collect();
    r.matrix
        .select_rows(&rows)
        .select_columns(&(n..2 * n).collect::<Vec<_>>())
}
