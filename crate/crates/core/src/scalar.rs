//! Exact scalar fields.
//!
//! Two fields are supported: the rationals and the Gaussian rationals
//! `Q(i)`. Both are backed by arbitrary precision integers, so nothing in
//! this crate ever rounds. Generic code is written against [`ExactField`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary precision rational number in lowest terms.
pub type Rational = BigRational;

/// `p + q i` with rational `p`, `q`.
pub type GaussianRational = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Rational,
    Gaussian,
}

impl FieldMode {
    pub fn name(self) -> &'static str {
        match self {
            FieldMode::Rational => "rational",
            FieldMode::Gaussian => "gaussian",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty literal")]
    Empty,
    #[error("division by zero in literal `{0}`")]
    DivisionByZero(String),
    #[error("malformed literal `{0}`")]
    Malformed(String),
    #[error("imaginary literal `{0}` in a rational field")]
    ImaginaryInRational(String),
}

/// An exact field usable by every algorithm in the crate.
///
/// `Ring` is an integral domain whose fraction field is `Self`; the
/// fraction-free elimination runs there.
pub trait ExactField:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    type Ring: Clone + Debug + Num + Neg<Output = Self::Ring> + Send + Sync;

    const MODE: FieldMode;

    fn conj(&self) -> Self;

    fn from_int(n: i64) -> Self;

    fn from_rational(r: Rational) -> Self;

    fn real_part(&self) -> Rational;

    fn is_real(&self) -> bool;

    /// Multiply `row` by a common denominator so every entry lands in `Ring`.
    fn clear_denominators(row: &[Self]) -> Vec<Self::Ring>;

    fn from_ring(r: Self::Ring) -> Self;

    fn parse_literal(text: &str) -> Result<Self, LiteralError>;

    fn to_literal(&self) -> String;

    /// `i`, when the field has one.
    fn imaginary_unit() -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

fn parse_rational(text: &str) -> Result<Rational, LiteralError> {
    if text.is_empty() {
        return Err(LiteralError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(LiteralError::Malformed(text.to_string()));
    }
    let num: BigInt = num
        .parse()
        .map_err(|_| LiteralError::Malformed(text.to_string()))?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(LiteralError::Malformed(text.to_string()));
            }
            d.parse()
                .map_err(|_| LiteralError::Malformed(text.to_string()))?
        }
    };
    if den.is_zero() {
        return Err(LiteralError::DivisionByZero(text.to_string()));
    }
    Ok(Rational::new(num, den))
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl ExactField for Rational {
    type Ring = BigInt;

    const MODE: FieldMode = FieldMode::Rational;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn is_real(&self) -> bool {
        true
    }

    fn clear_denominators(row: &[Self]) -> Vec<BigInt> {
        let l = lcm_of_denominators(row.iter());
        row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn from_ring(r: BigInt) -> Self {
        Rational::from_integer(r)
    }

    fn parse_literal(text: &str) -> Result<Self, LiteralError> {
        if text.ends_with('i') {
            return Err(LiteralError::ImaginaryInRational(text.to_string()));
        }
        parse_rational(text)
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }
}

impl ExactField for GaussianRational {
    type Ring = Complex<BigInt>;

    const MODE: FieldMode = FieldMode::Gaussian;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_int(n: i64) -> Self {
        Complex::new(Rational::from_int(n), Rational::zero())
    }

    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn clear_denominators(row: &[Self]) -> Vec<Complex<BigInt>> {
        let l = lcm_of_denominators(row.iter().flat_map(|z| [&z.re, &z.im]));
        let scale = |r: &Rational| r.numer() * (&l / r.denom());
        row.iter()
            .map(|z| Complex::new(scale(&z.re), scale(&z.im)))
            .collect()
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }

    fn from_ring(r: Complex<BigInt>) -> Self {
        Complex::new(Rational::from_integer(r.re), Rational::from_integer(r.im))
    }

    fn parse_literal(text: &str) -> Result<Self, LiteralError> {
        if text.is_empty() {
            return Err(LiteralError::Empty);
        }
        let Some(body) = text.strip_suffix('i') else {
            return Ok(Complex::new(parse_rational(text)?, Rational::zero()));
        };
        // The only sign that can appear after position 0 separates the parts.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other).map_err(|e| match e {
                LiteralError::Malformed(_) => LiteralError::Malformed(text.to_string()),
                e => e,
            })?,
        };
        Ok(Complex::new(re, im))
    }

    fn to_literal(&self) -> String {
        let imag = |im: &Rational| {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.to_string(),
            (true, false) => imag(&self.im),
            (false, false) => {
                let im = imag(&self.im);
                if self.im.is_negative() {
                    format!("{}{}", self.re, im)
                } else {
                    format!("{}+{}", self.re, im)
                }
            }
        }
    }
}

/// Σ conj(a_k) b_k. Reduces to the plain dot product over the rationals.
pub fn inner<F: ExactField>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.conj() * y.clone())
}

/// Σ a_k b_k, no conjugation.
pub fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
