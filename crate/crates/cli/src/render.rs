//! Human-readable forms of spaces and results.

use ila_core::label::Decoration;
use ila_core::matrix::Matrix;
use ila_core::{AffineSpace, ExactField, Label};
use num_traits::Signed;

/// `v(p)` for `p'`, `i(p)` for `p''`.
pub fn variable(l: &Label) -> String {
    let edge = l.edge();
    match l.decoration {
        Decoration::Prime => format!("v({edge})"),
        Decoration::DoublePrime => format!("i({edge})"),
        Decoration::Plain => edge.to_string(),
    }
}

fn is_negative<F: ExactField>(x: &F) -> bool {
    x.is_real() && x.real_part().is_negative()
}

fn magnitude<F: ExactField>(x: &F) -> String {
    if x.is_real() {
        x.real_part().abs().to_string()
    } else {
        format!("({})", x.to_literal())
    }
}

/// `c1 x1 + c2 x2 - ... = s`.
pub fn equation<F: ExactField>(labels: &[Label], row: &[F], rhs: &F) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(row) {
        if c.is_zero() {
            continue;
        }
        let negative = is_negative(c);
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let unit = if negative {
            (-c.clone()).is_one()
        } else {
            c.is_one()
        };
        if !unit {
            out.push_str(&magnitude(c));
            out.push(' ');
        }
        out.push_str(&variable(l));
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} = {}", rhs.to_literal())
}

/// Defining equations in reduced echelon form, one per line.
pub fn equations<F: ExactField>(a: &AffineSpace<F>) -> String {
    let Some((eqs, rhs)) = a.equations() else {
        return "  void: no port condition is consistent\n".to_string();
    };
    if eqs.rows() == 0 {
        return "  unconstrained\n".to_string();
    }
    let column = Matrix::from_rows(1, rhs.into_iter().map(|x| vec![x]));
    let reduced = eqs.hstack(&column).rref().basis();
    let n = a.labels().len();
    reduced
        .iter_rows()
        .map(|row| format!("  {}\n", equation(a.labels(), &row[..n], &row[n])))
        .collect()
}

pub fn literals<F: ExactField>(xs: &[F]) -> Vec<String> {
    xs.iter().map(F::to_literal).collect()
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
