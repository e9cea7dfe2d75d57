//! Passivity of a device space, decided exactly.

use num_traits::Signed;

use super::duals::edge_pairs;
use crate::error::Result;
use crate::label::Decoration;
use crate::matrix::Matrix;
use crate::scalar::{inner, ExactField};
use crate::spaces::VectorSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    /// Some vector gives a negative value.
    Indefinite,
}

/// `G_kl = ½(<v_k, i_l> + <i_k, v_l>)` over the canonical basis, with
/// `<a, b> = Σ conj(a) b`. For `x = Σ c_k b_k` the absorbed power
/// `Re <v, i>` equals `c* G c`.
pub fn gram_matrix<F: ExactField>(v: &VectorSpace<F>) -> Result<Matrix<F>> {
    let edges = edge_pairs(v.labels())?;
    let split = |row: &[F]| -> (Vec<F>, Vec<F>) {
        let pick = |d: Decoration| {
            edges
                .iter()
                .map(|e| row[v.position(&e.with_decoration(d)).expect("paired")].clone())
                .collect()
        };
        (pick(Decoration::Prime), pick(Decoration::DoublePrime))
    };
    let parts: Vec<(Vec<F>, Vec<F>)> = v.basis().iter_rows().map(split).collect();
    let half = F::from_ratio(1, 2);
    let n = parts.len();
    let mut g = Matrix::zeros(n, n);
    for (k, (vk, ik)) in parts.iter().enumerate() {
        for (l, (vl, il)) in parts.iter().enumerate() {
            g[(k, l)] = half.clone() * (inner(vk, il) + inner(ik, vl));
        }
    }
    Ok(g)
}

/// Exact LDL* with positive diagonal pivots. A negative diagonal, or a
/// nonzero off-diagonal entry once every diagonal is zero, exhibits a
/// negative value of the form.
pub fn definiteness<F: ExactField>(g: &Matrix<F>) -> Definiteness {
    assert_eq!(g.rows(), g.cols(), "hermitian matrix must be square");
    let mut a = g.clone();
    let mut alive: Vec<usize> = (0..a.rows()).collect();
    let mut deficient = false;
    while !alive.is_empty() {
        if alive.iter().any(|&k| a[(k, k)].real_part().is_negative()) {
            return Definiteness::Indefinite;
        }
        let Some(pos) = alive
            .iter()
            .position(|&k| a[(k, k)].real_part().is_positive())
        else {
            let off_diagonal = alive
                .iter()
                .any(|&r| alive.iter().any(|&c| r != c && !a[(r, c)].is_zero()));
            if off_diagonal {
                return Definiteness::Indefinite;
            }
            deficient = true;
            break;
        };
        let k = alive.remove(pos);
        let pivot = a[(k, k)].clone();
        for &r in &alive {
            let f = a[(r, k)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for &c in &alive {
                let v = a[(r, c)].clone() - f.clone() * a[(k, c)].clone();
                a[(r, c)] = v;
            }
        }
    }
    if deficient {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::PositiveDefinite
    }
}

/// Absorbed power is nonnegative on every member.
pub fn is_passive<F: ExactField>(v: &VectorSpace<F>) -> Result<bool> {
    Ok(definiteness(&gram_matrix(v)?) != Definiteness::Indefinite)
}

/// Absorbed power is positive on every nonzero member.
pub fn is_strictly_passive<F: ExactField>(v: &VectorSpace<F>) -> Result<bool> {
    Ok(definiteness(&gram_matrix(v)?) == Definiteness::PositiveDefinite)
}
