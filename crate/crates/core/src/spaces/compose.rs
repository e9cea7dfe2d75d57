//! Matched (`↔`) and skewed (`⇌`) composition.
//!
//! `K_SP ↔ K_PQ` keeps the pairs `(f_S, h_Q)` that agree on a shared middle
//! vector `g_P`. It is computed by parametrising both operands by their bases
//! and solving for the coefficients that make the `P` parts agree.

use std::collections::BTreeSet;

use super::{label_union, AffineSpace, VectorSpace};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, SolveReport};
use crate::scalar::ExactField;

struct Split {
    /// Labels of the result, `S ∪ Q`, sorted.
    outer: Vec<Label>,
    /// Column positions of `P` in each operand.
    p_left: Vec<usize>,
    p_right: Vec<usize>,
    /// Where each outer label comes from: `(false, k)` left, `(true, k)` right.
    source: Vec<(bool, usize)>,
}

fn split<F: ExactField>(
    left: &VectorSpace<F>,
    right: &VectorSpace<F>,
    shared: Option<&[Label]>,
) -> Result<Split> {
    let common: BTreeSet<&Label> = left
        .labels()
        .iter()
        .filter(|l| right.position(l).is_some())
        .collect();
    if let Some(p) = shared {
        let given: BTreeSet<&Label> = p.iter().collect();
        if given.len() != p.len() {
            return Err(Error::SharedSetMismatch("repeated label in P".into()));
        }
        if given != common {
            return Err(Error::SharedSetMismatch(
                "P must be exactly the labels common to both operands".into(),
            ));
        }
    }
    let p: Vec<Label> = common.into_iter().cloned().collect();
    let p_left = p.iter().map(|l| left.position(l).unwrap()).collect();
    let p_right = p.iter().map(|l| right.position(l).unwrap()).collect();
    let outer: Vec<Label> = label_union(left.labels(), right.labels())
        .into_iter()
        .filter(|l| p.binary_search(l).is_err())
        .collect();
    let source = outer
        .iter()
        .map(|l| match left.position(l) {
            Some(k) => (false, k),
            None => (true, right.position(l).unwrap()),
        })
        .collect();
    Ok(Split {
        outer,
        p_left,
        p_right,
        source,
    })
}

impl Split {
    /// Coefficient system `Mᵀ c = rhs` with `M = [A_P; -B_P]`.
    fn system<F: ExactField>(&self, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
        a.select_columns(&self.p_left)
            .vstack(&b.select_columns(&self.p_right).neg())
            .transpose()
    }

    /// Maps coefficients `c = (a, b)` to the outer vector `(aA_S, bB_Q)`,
    /// plus the base points `x`, `y`.
    fn image<F: ExactField>(
        &self,
        a: &Matrix<F>,
        b: &Matrix<F>,
        c: &[F],
        x: Option<&[F]>,
        y: Option<&[F]>,
    ) -> Vec<F> {
        let (ca, cb) = c.split_at(a.rows());
        self.source
            .iter()
            .map(|&(right, k)| {
                let (m, coeffs, base) = if right { (b, cb, y) } else { (a, ca, x) };
                let start = base.map_or_else(F::zero, |v| v[k].clone());
                coeffs
                    .iter()
                    .zip(m.iter_rows())
                    .fold(start, |acc, (w, row)| acc + w.clone() * row[k].clone())
            })
            .collect()
    }
}

impl<F: ExactField> VectorSpace<F> {
    /// `self ↔ other`, `P` being the labels the two share.
    pub fn matched(&self, other: &Self) -> Self {
        self.matched_impl(other, None)
            .expect("implicit P always valid")
    }

    /// `self ↔ other` with `P` given explicitly; it must equal the shared labels.
    pub fn matched_over(&self, other: &Self, p: &[Label]) -> Result<Self> {
        self.matched_impl(other, Some(p))
    }

    fn matched_impl(&self, other: &Self, p: Option<&[Label]>) -> Result<Self> {
        let s = split(self, other, p)?;
        let (a, b) = (self.basis(), other.basis());
        let kernel = s.system(a, b).nullspace_basis();
        let rows: Vec<Vec<F>> = kernel
            .iter_rows()
            .map(|c| s.image(a, b, c, None, None))
            .collect();
        let n = s.outer.len();
        Ok(Self::from_sorted(s.outer, &Matrix::from_rows(n, rows)))
    }

    /// `self ⇌ other`: matched after negating `other` on the shared labels.
    pub fn skewed(&self, other: &Self) -> Self {
        let p: Vec<Label> = self
            .labels()
            .iter()
            .filter(|l| other.position(l).is_some())
            .cloned()
            .collect();
        let flipped = other.signflip(&p).expect("shared labels belong to other");
        self.matched(&flipped)
    }
}

impl<F: ExactField> AffineSpace<F> {
    /// `self ↔ other`; void when no shared middle vector exists.
    pub fn matched(&self, other: &Self) -> Self {
        self.matched_impl(other, None)
            .expect("implicit P always valid")
    }

    pub fn matched_over(&self, other: &Self, p: &[Label]) -> Result<Self> {
        self.matched_impl(other, Some(p))
    }

    fn matched_impl(&self, other: &Self, p: Option<&[Label]>) -> Result<Self> {
        let (v, w) = (self.translate(), other.translate());
        let s = split(v, w, p)?;
        let translate = v.matched_impl(w, p)?;
        let (Some(x), Some(y)) = (self.offset(), other.offset()) else {
            return Ok(AffineSpace::void(s.outer));
        };
        let (a, b) = (v.basis(), w.basis());
        let rhs: Vec<F> = s
            .p_left
            .iter()
            .zip(&s.p_right)
            .map(|(&i, &j)| y[j].clone() - x[i].clone())
            .collect();
        match s.system(a, b).solve_classified(&rhs) {
            SolveReport::None => Ok(AffineSpace::void(s.outer)),
            report => {
                let c = report.particular().expect("consistent");
                let offset = s.image(a, b, c, Some(x), Some(y));
                AffineSpace::from_parts(offset, translate)
            }
        }
    }

    /// Decides `self ↔ other ≠ ∅` without building the composition: solvable
    /// iff some `λ`, `σ` give `λᵀB_P + α_P = σᵀA_P + β_P`.
    pub fn matched_nonvoid(&self, other: &Self) -> bool {
        let (Some(x), Some(y)) = (self.offset(), other.offset()) else {
            return false;
        };
        let (v, w) = (self.translate(), other.translate());
        let s = split(v, w, None).expect("implicit P always valid");
        let rhs: Vec<F> = s
            .p_left
            .iter()
            .zip(&s.p_right)
            .map(|(&i, &j)| y[j].clone() - x[i].clone())
            .collect();
        s.system(v.basis(), w.basis()).solve_classified(&rhs) != SolveReport::None
    }

    pub fn skewed(&self, other: &Self) -> Self {
        let p: Vec<Label> = self
            .labels()
            .iter()
            .filter(|l| other.translate().position(l).is_some())
            .cloned()
            .collect();
        let flipped = other.signflip(&p).expect("shared labels belong to other");
        self.matched(&flipped)
    }
}
