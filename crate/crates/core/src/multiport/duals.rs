//! Duals of device characteristics and the properties defined through them.
//!
//! All of these use the field's dual: the bilinear one over Q and the
//! sesquilinear one over Q(i).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::label::{Decoration, Label};
use crate::scalar::ExactField;
use crate::spaces::{AffineSpace, VectorSpace};

/// Edges of a space whose labels come in `e'`, `e''` pairs.
pub fn edge_pairs(labels: &[Label]) -> Result<Vec<Label>> {
    let mut primes = BTreeSet::new();
    let mut doubles = BTreeSet::new();
    for l in labels {
        match l.decoration {
            Decoration::Prime => primes.insert(l.edge()),
            Decoration::DoublePrime => doubles.insert(l.edge()),
            Decoration::Plain => {
                return Err(Error::MalformedPairing(format!(
                    "`{l}` is neither a voltage nor a current"
                )))
            }
        };
    }
    if let Some(e) = primes.symmetric_difference(&doubles).next() {
        return Err(Error::MalformedPairing(format!(
            "edge `{e}` lacks one of its copies"
        )));
    }
    Ok(primes.into_iter().collect())
}

fn voltage_labels(edges: &[Label]) -> Vec<Label> {
    edges
        .iter()
        .map(|e| e.with_decoration(Decoration::Prime))
        .collect()
}

fn current_labels(edges: &[Label]) -> Vec<Label> {
    edges
        .iter()
        .map(|e| e.with_decoration(Decoration::DoublePrime))
        .collect()
}

/// `V^⊥` (or `V^*`) on the same labels.
pub fn ortho_dual<F: ExactField>(v: &VectorSpace<F>) -> Result<VectorSpace<F>> {
    edge_pairs(v.labels())?;
    Ok(v.dual())
}

/// The dual with voltage and current interchanged, the new currents negated.
pub fn adjoint_space<F: ExactField>(v: &VectorSpace<F>) -> Result<VectorSpace<F>> {
    let edges = edge_pairs(v.labels())?;
    v.dual()
        .relabel(Label::swap_prime)?
        .signflip(&current_labels(&edges))
}

/// The dual with voltage and current interchanged.
pub fn dirac_dual<F: ExactField>(v: &VectorSpace<F>) -> Result<VectorSpace<F>> {
    edge_pairs(v.labels())?;
    v.dual().relabel(Label::swap_prime)
}

pub fn is_reciprocal<F: ExactField>(v: &VectorSpace<F>) -> Result<bool> {
    Ok(adjoint_space(v)? == *v)
}

pub fn is_dirac<F: ExactField>(v: &VectorSpace<F>) -> Result<bool> {
    Ok(dirac_dual(v)? == *v)
}

/// `V = (V∘S') ⊕ (V∘S')^d` with the dual moved to the currents.
pub fn is_ideal_transformer<F: ExactField>(v: &VectorSpace<F>) -> Result<bool> {
    let edges = edge_pairs(v.labels())?;
    let on_voltages = v.restrict(&voltage_labels(&edges))?;
    let on_currents = on_voltages.dual().relabel(Label::swap_prime)?;
    Ok(on_voltages.direct_sum(&on_currents)? == *v)
}

/// The translate has dimension equal to the number of edges.
pub fn is_proper<F: ExactField>(a: &AffineSpace<F>) -> Result<bool> {
    let edges = edge_pairs(a.labels())?;
    Ok(!a.is_void() && a.translate().dim() == edges.len())
}
