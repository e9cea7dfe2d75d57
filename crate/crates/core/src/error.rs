use thiserror::Error;

use crate::label::Label;
use crate::matrix::SolveKind;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has {found} coordinates, index set has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("label `{0}` appears twice in an index set")]
    DuplicateLabel(Label),
    #[error("label `{0}` is not in the index set")]
    NotInIndexSet(Label),
    #[error("operands are on different index sets")]
    IndexSetMismatch,
    #[error("relabelling is not a bijection on the index set")]
    NotBijective,
    #[error("shared index set mismatch: {0}")]
    SharedSetMismatch(String),
    #[error("affine space is void")]
    Void,
    #[error("implicit inversion has no solution: {0}")]
    NoImplicitInverse(Containment),
    #[error("recovered space fails the round trip check")]
    RoundTrip,
    #[error("malformed primed/double-primed pairing: {0}")]
    MalformedPairing(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("device `{0}`: {1}")]
    Device(String, String),
    #[error("multiport is not regular (augmented network has {0})")]
    NotRegular(SolveKind),
    #[error("label `{0}` collides between terminated networks")]
    LabelCollision(Label),
    #[error("coupling: {0}")]
    Coupling(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// The containment that fails when `V_SP <-> V_PQ = V_SQ` has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// `V_SP ∘ S ⊇ V_SQ ∘ S`
    Restriction,
    /// `V_SP × S ⊆ V_SQ × S`
    Contraction,
}

impl std::fmt::Display for Containment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Containment::Restriction => "V_SP∘S does not contain V_SQ∘S",
            Containment::Contraction => "V_SP×S is not contained in V_SQ×S",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
