//! JSON form of a space:
//! `{"labels":[...], "basis":[["p/q",...]], "offset":[...]|null, "void":bool}`.

use serde::{Deserialize, Serialize};

use super::{AffineSpace, VectorSpace};
use crate::label::Label;
use crate::matrix::Matrix;
use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub labels: Vec<String>,
    pub basis: Vec<Vec<String>>,
    pub offset: Option<Vec<String>>,
    pub void: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Label(#[from] crate::label::LabelError),
    #[error(transparent)]
    Literal(#[from] crate::scalar::LiteralError),
    #[error(transparent)]
    Space(#[from] crate::error::Error),
    #[error("row width does not match label count")]
    Shape,
}

fn literals<F: ExactField>(row: &[F]) -> Vec<String> {
    row.iter().map(F::to_literal).collect()
}

fn parse_row<F: ExactField>(row: &[String]) -> Result<Vec<F>, JsonError> {
    row.iter()
        .map(|s| F::parse_literal(s).map_err(JsonError::from))
        .collect()
}

impl<F: ExactField> VectorSpace<F> {
    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            labels: self.labels().iter().map(ToString::to_string).collect(),
            basis: self.basis().iter_rows().map(literals).collect(),
            offset: None,
            void: false,
        }
    }

    pub fn from_json(j: &SpaceJson) -> Result<Self, JsonError> {
        let labels = j
            .labels
            .iter()
            .map(|s| s.parse::<Label>())
            .collect::<Result<Vec<_>, _>>()?;
        let rows = j
            .basis
            .iter()
            .map(|r| parse_row::<F>(r))
            .collect::<Result<Vec<_>, _>>()?;
        if rows.iter().any(|r| r.len() != labels.len()) {
            return Err(JsonError::Shape);
        }
        let n = labels.len();
        Ok(Self::row_space(labels, &Matrix::from_rows(n, rows))?)
    }
}

impl<F: ExactField> AffineSpace<F> {
    pub fn to_json(&self) -> SpaceJson {
        let mut j = self.translate().to_json();
        if self.is_void() {
            j.basis.clear();
        }
        j.offset = self.offset().map(literals);
        j.void = self.is_void();
        j
    }

    pub fn from_json(j: &SpaceJson) -> Result<Self, JsonError> {
        let translate = VectorSpace::<F>::from_json(j)?;
        if j.void {
            return Ok(Self::void(translate.labels().to_vec()));
        }
        let labels: Vec<Label> = j
            .labels
            .iter()
            .map(|s| s.parse::<Label>())
            .collect::<Result<_, _>>()?;
        let offset = match &j.offset {
            Some(o) => parse_row::<F>(o)?,
            None => vec![F::zero(); labels.len()],
        };
        if offset.len() != labels.len() {
            return Err(JsonError::Shape);
        }
        let offset = translate.coordinates_from(&offset, &labels)?;
        Ok(Self::from_parts(offset, translate)?)
    }
}
