use std::collections::BTreeMap;

use num_traits::Zero;

use super::VectorSpace;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, SolveReport};
use crate::scalar::ExactField;

/// `x + V` on a labelled index set, or the empty set.
///
/// The stored offset is canonical: it is the unique member that vanishes on
/// every pivot column of the translate's representative matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpace<F: ExactField> {
    offset: Option<Vec<F>>,
    translate: VectorSpace<F>,
}

impl<F: ExactField> AffineSpace<F> {
    /// `offset + translate`, offset coordinates following `translate.labels()`.
    pub fn from_parts(offset: Vec<F>, translate: VectorSpace<F>) -> Result<Self> {
        if offset.len() != translate.len() {
            return Err(Error::LengthMismatch {
                expected: translate.len(),
                found: offset.len(),
            });
        }
        let offset = translate.reduce(&offset);
        Ok(AffineSpace {
            offset: Some(offset),
            translate,
        })
    }

    /// `offset + span(directions)`, all given in `labels` order.
    pub fn new(labels: Vec<Label>, offset: Vec<F>, directions: Vec<Vec<F>>) -> Result<Self> {
        if offset.len() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: offset.len(),
            });
        }
        let translate = VectorSpace::span(labels.clone(), directions)?;
        let offset = translate.coordinates_from(&offset, &labels)?;
        Self::from_parts(offset, translate)
    }

    pub fn point(labels: Vec<Label>, x: Vec<F>) -> Result<Self> {
        Self::new(labels, x, Vec::new())
    }

    pub fn void(labels: Vec<Label>) -> Self {
        AffineSpace {
            offset: None,
            translate: VectorSpace::zero(labels).expect("labels come from a valid space"),
        }
    }

    pub fn from_vector_space(v: VectorSpace<F>) -> Self {
        let n = v.len();
        AffineSpace {
            offset: Some(vec![F::zero(); n]),
            translate: v,
        }
    }

    /// Solution set of `equations · x = rhs`; void when inconsistent.
    pub fn solutions(labels: Vec<Label>, equations: &Matrix<F>, rhs: &[F]) -> Result<Self> {
        if equations.cols() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                found: equations.cols(),
            });
        }
        if equations.rows() != rhs.len() {
            return Err(Error::LengthMismatch {
                expected: equations.rows(),
                found: rhs.len(),
            });
        }
        match equations.solve_classified(rhs) {
            SolveReport::None => {
                let (sorted, _) = super::sort_labels(labels)?;
                Ok(Self::void(sorted))
            }
            SolveReport::Unique(x) => Self::point(labels, x),
            SolveReport::Affine {
                particular,
                nullspace,
            } => Self::new(labels, particular, nullspace.row_vecs()),
        }
    }

    pub fn labels(&self) -> &[Label] {
        self.translate.labels()
    }

    pub fn is_void(&self) -> bool {
        self.offset.is_none()
    }

    /// Canonical member; `None` when void.
    pub fn offset(&self) -> Option<&[F]> {
        self.offset.as_deref()
    }

    /// Vector space translate. Meaningless (zero) for a void space.
    pub fn translate(&self) -> &VectorSpace<F> {
        &self.translate
    }

    /// An affine space is a vector space iff it contains 0.
    pub fn is_vector_space(&self) -> bool {
        self.offset
            .as_ref()
            .is_some_and(|x| x.iter().all(Zero::is_zero))
    }

    pub fn contains(&self, x: &[F]) -> Result<bool> {
        let Some(offset) = &self.offset else {
            if x.len() != self.labels().len() {
                return Err(Error::LengthMismatch {
                    expected: self.labels().len(),
                    found: x.len(),
                });
            }
            return Ok(false);
        };
        if x.len() != offset.len() {
            return Err(Error::LengthMismatch {
                expected: offset.len(),
                found: x.len(),
            });
        }
        let d: Vec<F> = x
            .iter()
            .zip(offset)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        self.translate.contains(&d)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.labels() != other.labels() {
            return Err(Error::IndexSetMismatch);
        }
        Ok(self == other)
    }

    /// Equations `(C | s)` with independent rows whose solution set is `self`.
    /// `None` when void.
    pub fn equations(&self) -> Option<(Matrix<F>, Vec<F>)> {
        let x = self.offset.as_ref()?;
        let c = self.translate.basis().nullspace_basis();
        let s = c.mul_vec(x);
        Some((c, s))
    }

    pub fn restrict(&self, t: &[Label]) -> Result<Self> {
        let translate = self.translate.restrict(t)?;
        match &self.offset {
            None => Ok(Self::void(translate.labels().to_vec())),
            Some(x) => {
                let x_t = self.translate.coordinates(x, translate.labels())?;
                Self::from_parts(x_t, translate)
            }
        }
    }

    /// Members vanishing off `t`, projected onto `t`.
    pub fn contract(&self, t: &[Label]) -> Result<Self> {
        let translate = self.translate.contract(t)?;
        let Some(x) = &self.offset else {
            return Ok(Self::void(translate.labels().to_vec()));
        };
        let rest: Vec<Label> = self
            .labels()
            .iter()
            .filter(|l| translate.position(l).is_none())
            .cloned()
            .collect();
        let rest_pos: Vec<usize> = rest
            .iter()
            .map(|l| self.translate.position(l).unwrap())
            .collect();
        // x_R + aᵀA_R = 0
        let a = self.translate.basis();
        let system = a.select_columns(&rest_pos).transpose();
        let rhs: Vec<F> = rest_pos.iter().map(|&k| -x[k].clone()).collect();
        match system.solve_classified(&rhs) {
            SolveReport::None => Ok(Self::void(translate.labels().to_vec())),
            report => {
                let c = report.particular().unwrap();
                let member: Vec<F> = (0..self.labels().len())
                    .map(|k| {
                        c.iter()
                            .zip(a.iter_rows())
                            .fold(x[k].clone(), |acc, (w, row)| {
                                acc + w.clone() * row[k].clone()
                            })
                    })
                    .collect();
                let on_t = self.translate.coordinates(&member, translate.labels())?;
                Self::from_parts(on_t, translate)
            }
        }
    }

    /// Intersection on `X ∪ Y`, each side padded with `F` off its own set.
    pub fn intersect(&self, other: &Self) -> Self {
        let labels = super::label_union(self.labels(), other.labels());
        let translate = self.translate.intersect(&other.translate);
        let (Some(x), Some(y)) = (&self.offset, &other.offset) else {
            return Self::void(labels);
        };
        let a = self.translate.padded(&labels);
        let b = other.translate.padded(&labels);
        let xe = self.translate.extend_vector(x, &labels);
        let ye = other.translate.extend_vector(y, &labels);
        // x + aA = y + bB
        let system = a.vstack(&b.neg()).transpose();
        let rhs: Vec<F> = ye
            .iter()
            .zip(&xe)
            .map(|(p, q)| p.clone() - q.clone())
            .collect();
        match system.solve_classified(&rhs) {
            SolveReport::None => Self::void(labels),
            report => {
                let c = report.particular().unwrap();
                let member: Vec<F> = (0..labels.len())
                    .map(|k| {
                        c.iter()
                            .take(a.rows())
                            .zip(a.iter_rows())
                            .fold(xe[k].clone(), |acc, (w, row)| {
                                acc + w.clone() * row[k].clone()
                            })
                    })
                    .collect();
                Self::from_parts(member, translate).expect("same labels")
            }
        }
    }

    pub fn signflip(&self, y: &[Label]) -> Result<Self> {
        let translate = self.translate.signflip(y)?;
        match &self.offset {
            None => Ok(Self::void(translate.labels().to_vec())),
            Some(x) => {
                let mut x = x.clone();
                for l in y {
                    let k = self.translate.position(l).unwrap();
                    x[k] = -x[k].clone();
                }
                Self::from_parts(x, translate)
            }
        }
    }

    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Self> {
        let new: Vec<Label> = self.labels().iter().map(&f).collect();
        let translate = self.translate.relabel(&f)?;
        match &self.offset {
            None => Ok(Self::void(translate.labels().to_vec())),
            Some(x) => {
                let x = translate.coordinates_from(x, &new)?;
                Self::from_parts(x, translate)
            }
        }
    }

    pub fn relabel_map(&self, map: &BTreeMap<Label, Label>) -> Result<Self> {
        if let Some(l) = self.labels().iter().find(|l| !map.contains_key(l)) {
            return Err(Error::NotInIndexSet(l.clone()));
        }
        self.relabel(|l| map[l].clone())
    }

    /// Direct sum on disjoint index sets.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let translate = self.translate.direct_sum(&other.translate)?;
        let labels = translate.labels().to_vec();
        match (&self.offset, &other.offset) {
            (Some(x), Some(y)) => {
                let xe = self.translate.extend_vector(x, &labels);
                let ye = other.translate.extend_vector(y, &labels);
                let z = xe.into_iter().zip(ye).map(|(a, b)| a + b).collect();
                Self::from_parts(z, translate)
            }
            _ => Ok(Self::void(labels)),
        }
    }

    /// `offset + Σ w_k b_k` over the canonical basis.
    pub fn member(&self, weights: &[F]) -> Option<Vec<F>> {
        let x = self.offset.as_ref()?;
        let d = self.translate.combination(weights);
        Some(x.iter().zip(d).map(|(a, b)| a.clone() + b).collect())
    }
}

impl<F: ExactField> VectorSpace<F> {
    /// Reorders `x`, whose coordinates follow `order`, into `self.labels()`.
    pub fn coordinates_from(&self, x: &[F], order: &[Label]) -> Result<Vec<F>> {
        if x.len() != order.len() || order.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: x.len(),
            });
        }
        let mut out = vec![F::zero(); self.len()];
        for (v, l) in x.iter().zip(order) {
            let k = self
                .position(l)
                .ok_or_else(|| Error::NotInIndexSet(l.clone()))?;
            out[k] = v.clone();
        }
        Ok(out)
    }

    /// `x` (on `self.labels()`) padded with zeros to the superset `labels`.
    pub(crate) fn extend_vector(&self, x: &[F], labels: &[Label]) -> Vec<F> {
        labels
            .iter()
            .map(|l| self.position(l).map_or_else(F::zero, |k| x[k].clone()))
            .collect()
    }
}
