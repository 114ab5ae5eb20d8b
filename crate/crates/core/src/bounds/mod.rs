//! Lower and upper bounds on `A(n, d)`.
//!
//! Every evaluator returns a [`BoundValue`]. Finite-length bounds are exact
//! integers; rate-level and `sqrt(n)`-regime formulas are doubles flagged
//! [`Rigor::AsymptoticHeuristic`] because an `o(1)` or `O(1)` term was
//! dropped to evaluate them.

mod classical;
mod rate;
mod spectral;
mod table;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use classical::{
    cyclic_lower, gv_lower, hamming_upper, mceliece_upper, plotkin_upper, singleton_upper, vol,
};
pub use rate::{rate_bounds, RateBounds, MRRW_GRID_POINTS};
pub use spectral::{applicability_boundary, best_new_upper, new_upper, BallSpectra};
pub use table::{
    bound_table, format_significant, regime_table, regime_to_csv, rm_reference, table, to_csv,
    to_json, RegimeRow, RmRow, TableRow, CSV_HEADER, TABLE_RADIUS,
};

/// `(n, d)` together with the derived quantities used across the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CodeParameters {
    pub n: u64,
    pub d: u64,
    /// `n - 2d`.
    pub j: i64,
    /// `d / n`.
    pub delta: f64,
    /// `j / (2 sqrt(n))`, so that `d = n/2 - a sqrt(n)`.
    pub a: f64,
}

impl CodeParameters {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        if n == 0 || d == 0 || d > n {
            return Err(Error::OutOfRange(format!(
                "need 1 <= d <= n, got n = {n}, d = {d}"
            )));
        }
        let j = n as i64 - 2 * d as i64;
        Ok(CodeParameters {
            n,
            d,
            j,
            delta: d as f64 / n as f64,
            a: j as f64 / (2.0 * (n as f64).sqrt()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rigor {
    Rigorous,
    AsymptoticHeuristic,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

impl Rigor {
    pub fn as_str(self) -> &'static str {
        match self {
            Rigor::Rigorous => "rigorous",
            Rigor::AsymptoticHeuristic => "asymptotic-heuristic",
        }
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub kind: BoundKind,
    #[serde(serialize_with = "serialize_opt_big")]
    pub value_exact: Option<BigUint>,
    pub value_log2: f64,
    pub rigor: Rigor,
    pub label: String,
    pub condition: Option<String>,
}

impl BoundValue {
    pub(crate) fn exact(kind: BoundKind, label: impl Into<String>, value: BigUint) -> Self {
        BoundValue {
            kind,
            value_log2: log2_big(&value),
            value_exact: Some(value),
            rigor: Rigor::Rigorous,
            label: label.into(),
            condition: None,
        }
    }

    pub(crate) fn heuristic(kind: BoundKind, label: impl Into<String>, value_log2: f64) -> Self {
        BoundValue {
            kind,
            value_exact: None,
            value_log2,
            rigor: Rigor::AsymptoticHeuristic,
            label: label.into(),
            condition: None,
        }
    }

    pub(crate) fn with_condition(mut self, condition: impl Into<String>) -> Self {
        self.condition = Some(condition.into());
        self
    }

    pub fn is_rigorous(&self) -> bool {
        self.rigor == Rigor::Rigorous
    }
}

fn serialize_opt_big<S: serde::Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// `log2(x)` for an arbitrary-size integer; `-inf` at zero.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().unwrap().to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

/// Binary entropy, `0` at both endpoints and outside `(0, 1)`.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Standard normal tail `P(Z > x)`.
pub fn q_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Johnson radius `(1 - sqrt(1 - 2 delta)) / 2`; `delta` is clamped to `[0, 1/2]`.
pub fn j2(delta: f64) -> f64 {
    let delta = delta.clamp(0.0, 0.5);
    0.5 * (1.0 - (1.0 - 2.0 * delta).sqrt())
}

/// `H2((1 - sqrt(1 - x)) / 2)`; `x` is clamped to `[0, 1]` so rounding just
/// past either end of the domain does not produce NaN.
pub fn g(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    h2(0.5 * (1.0 - (1.0 - x).sqrt()))
}
