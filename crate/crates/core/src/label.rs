//! Column labels.
//!
//! An edge `e` has voltage copy `e'`, current copy `e''`, and a tilde twin
//! `e~` (with its own `e~'`, `e~''`) used when a multiport is coupled to a
//! copy of itself. Labels order lexicographically on
//! `(base, decoration, tilde)`; every space stores its columns in that order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Plain,
    Prime,
    DoublePrime,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub base: String,
    pub decoration: Decoration,
    pub tilde: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid label `{0}`")]
pub struct LabelError(pub String);

impl Label {
    pub fn plain(base: impl Into<String>) -> Self {
        Label {
            base: base.into(),
            decoration: Decoration::Plain,
            tilde: false,
        }
    }

    /// Voltage copy `e'`.
    pub fn prime(base: impl Into<String>) -> Self {
        Label::plain(base).with_decoration(Decoration::Prime)
    }

    /// Current copy `e''`.
    pub fn double_prime(base: impl Into<String>) -> Self {
        Label::plain(base).with_decoration(Decoration::DoublePrime)
    }

    pub fn with_decoration(&self, decoration: Decoration) -> Self {
        Label {
            decoration,
            ..self.clone()
        }
    }

    pub fn with_tilde(&self, tilde: bool) -> Self {
        Label {
            tilde,
            ..self.clone()
        }
    }

    /// The edge this label is a copy of.
    pub fn edge(&self) -> Label {
        self.with_decoration(Decoration::Plain)
    }

    /// `e' <-> e''`; plain labels are unchanged.
    pub fn swap_prime(&self) -> Self {
        let decoration = match self.decoration {
            Decoration::Plain => Decoration::Plain,
            Decoration::Prime => Decoration::DoublePrime,
            Decoration::DoublePrime => Decoration::Prime,
        };
        self.with_decoration(decoration)
    }

    pub fn is_valid_base(base: &str) -> bool {
        !base.is_empty()
            && base
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '[' | ']' | ':'))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if self.tilde {
            f.write_str("~")?;
        }
        f.write_str(match self.decoration {
            Decoration::Plain => "",
            Decoration::Prime => "'",
            Decoration::DoublePrime => "''",
        })
    }
}

impl FromStr for Label {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (rest, decoration) = if let Some(r) = s.strip_suffix("''") {
            (r, Decoration::DoublePrime)
        } else if let Some(r) = s.strip_suffix('\'') {
            (r, Decoration::Prime)
        } else {
            (s, Decoration::Plain)
        };
        let (base, tilde) = match rest.strip_suffix('~') {
            Some(b) => (b, true),
            None => (rest, false),
        };
        if !Label::is_valid_base(base) {
            return Err(LabelError(s.to_string()));
        }
        Ok(Label {
            base: base.to_string(),
            decoration,
            tilde,
        })
    }
}
