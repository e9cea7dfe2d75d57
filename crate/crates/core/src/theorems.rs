//! Implicit inversion and implicit duality.
//!
//! For `V_SP <-> V_PQ = V_SQ` the shared sets are always the labels the two
//! operands have in common; the explicit-set variants reject anything else.

use crate::error::{Containment, Error, Result};
use crate::label::Label;
use crate::scalar::ExactField;
use crate::spaces::{AffineSpace, VectorSpace};

fn shared(a: &[Label], b: &[Label]) -> Vec<Label> {
    a.iter().filter(|l| b.contains(l)).cloned().collect()
}

fn check_shared(a: &[Label], b: &[Label], expected: &[Label]) -> Result<()> {
    let mut want = expected.to_vec();
    want.sort();
    if shared(a, b) != want {
        return Err(Error::SharedSetMismatch(format!(
            "operands share {:?}, expected {:?}",
            shared(a, b)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            want.iter().map(ToString::to_string).collect::<Vec<_>>(),
        )));
    }
    Ok(())
}

/// The first containment that fails for `V_SP <-> ? = V_SQ`, if any.
fn failed_containment<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_sq: &VectorSpace<F>,
    s: &[Label],
) -> Result<Option<Containment>> {
    if !v_sq.restrict(s)?.is_subspace_of(&v_sp.restrict(s)?)? {
        return Ok(Some(Containment::Restriction));
    }
    if !v_sp.contract(s)?.is_subspace_of(&v_sq.contract(s)?)? {
        return Ok(Some(Containment::Contraction));
    }
    Ok(None)
}

/// Whether some `V_PQ` satisfies `V_SP <-> V_PQ = V_SQ`.
pub fn iit_exists<F: ExactField>(v_sp: &VectorSpace<F>, v_sq: &VectorSpace<F>) -> bool {
    let s = shared(v_sp.labels(), v_sq.labels());
    failed_containment(v_sp, v_sq, &s)
        .expect("shared labels lie in both spaces")
        .is_none()
}

pub fn iit_exists_over<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_sq: &VectorSpace<F>,
    s: &[Label],
) -> Result<bool> {
    check_shared(v_sp.labels(), v_sq.labels(), s)?;
    Ok(iit_exists(v_sp, v_sq))
}

/// `V_SP <-> V_SQ`, which solves `V_SP <-> V_PQ = V_SQ` when any solution
/// exists. The round trip is checked before returning.
pub fn iit_solve<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_sq: &VectorSpace<F>,
) -> Result<VectorSpace<F>> {
    let s = shared(v_sp.labels(), v_sq.labels());
    if let Some(c) = failed_containment(v_sp, v_sq, &s)? {
        return Err(Error::NoImplicitInverse(c));
    }
    let v_pq = v_sp.matched(v_sq);
    if v_sp.matched(&v_pq) != *v_sq {
        return Err(Error::RoundTrip);
    }
    Ok(v_pq)
}

pub fn iit_solve_over<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_sq: &VectorSpace<F>,
    s: &[Label],
) -> Result<VectorSpace<F>> {
    check_shared(v_sp.labels(), v_sq.labels(), s)?;
    iit_solve(v_sp, v_sq)
}

/// `V_SP∘P ⊇ V_PQ∘P` and `V_SP×P ⊆ V_PQ×P`, the conditions under which a
/// solution of the inversion is unique.
pub fn iit_uniqueness_holds<F: ExactField>(v_sp: &VectorSpace<F>, v_pq: &VectorSpace<F>) -> bool {
    let p = shared(v_sp.labels(), v_pq.labels());
    failed_containment(v_sp, v_pq, &p)
        .expect("shared labels lie in both spaces")
        .is_none()
}

pub fn iit_uniqueness_holds_over<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_pq: &VectorSpace<F>,
    p: &[Label],
) -> Result<bool> {
    check_shared(v_sp.labels(), v_pq.labels(), p)?;
    Ok(iit_uniqueness_holds(v_sp, v_pq))
}

/// Recovers `A_PQ` from `A_SP` and `A_SQ = A_SP <-> A_PQ`.
///
/// The answer is `A_SP <-> A_SQ`; it is the unique such space whose
/// translate meets the uniqueness conditions.
pub fn affine_iit_recover<F: ExactField>(
    a_sp: &AffineSpace<F>,
    a_sq: &AffineSpace<F>,
) -> Result<AffineSpace<F>> {
    if a_sp.is_void() || a_sq.is_void() {
        return Err(Error::Void);
    }
    let a_pq = a_sp.matched(a_sq);
    if a_pq.is_void() || a_sp.matched(&a_pq) != *a_sq {
        return Err(Error::RoundTrip);
    }
    Ok(a_pq)
}

/// Checks `(V_SP <-> V_PQ)^d = V_SP^d ⇌ V_PQ^d` for a dual operator `d`,
/// computing both sides.
fn duality_holds<F: ExactField>(
    v_sp: &VectorSpace<F>,
    v_pq: &VectorSpace<F>,
    d: impl Fn(&VectorSpace<F>) -> VectorSpace<F>,
) -> bool {
    let lhs = d(&v_sp.matched(v_pq));
    let rhs = d(v_sp).skewed(&d(v_pq));
    lhs == rhs
}

/// The duality identity with the bilinear dual.
pub fn idt_check<F: ExactField>(v_sp: &VectorSpace<F>, v_pq: &VectorSpace<F>) -> bool {
    duality_holds(v_sp, v_pq, VectorSpace::perp)
}

/// The duality identity with the sesquilinear dual.
pub fn idt_check_star<F: ExactField>(v_sp: &VectorSpace<F>, v_pq: &VectorSpace<F>) -> bool {
    duality_holds(v_sp, v_pq, VectorSpace::star)
}
