use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    cyclic_lower, gv_lower, h2, hamming_upper, mceliece_upper, new_upper, plotkin_upper, q_tail,
    singleton_upper, BallSpectra, BoundKind, BoundValue, CodeParameters,
};
use crate::error::{Error, Result};

/// First line of every CSV table; bump the version when columns change.
pub const CSV_HEADER: &str = "# codebounds-table v1";

/// Largest ball radius tried for the `new_r*` rows of a table.
pub const TABLE_RADIUS: u32 = 8;

const COLUMNS: [&str; 9] = [
    "n",
    "d",
    "j",
    "bound",
    "kind",
    "rigor",
    "value_log2",
    "value_exact",
    "condition",
];

/// A bound evaluated at a concrete `(n, d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub d: u64,
    pub j: i64,
    pub bound: BoundValue,
}

impl TableRow {
    pub fn new(n: u64, d: u64, bound: BoundValue) -> Self {
        TableRow {
            n,
            d,
            j: n as i64 - 2 * d as i64,
            bound,
        }
    }
}

/// Every bound that applies at `(n, d)`, sorted by label.
pub fn bound_table(n: u64, d: u64) -> Result<Vec<TableRow>> {
    let params = CodeParameters::new(n, d)?;
    let mut bounds = vec![
        hamming_upper(n, d)?,
        singleton_upper(n, d)?,
        plotkin_upper(n, d)?,
    ];
    if 2 * d <= n {
        bounds.push(gv_lower(n, d)?);
        bounds.push(mceliece_upper(n, d)?);
    }
    let mut spectra = BallSpectra::new(n);
    for r in 1..=TABLE_RADIUS.min((n / 2) as u32) {
        match new_upper(&params, r, &spectra.lambda(r)?) {
            Ok(b) => bounds.push(b),
            Err(Error::NotApplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut rows: Vec<TableRow> = bounds.into_iter().map(|b| TableRow::new(n, d, b)).collect();
    if (n + 1).is_power_of_two() {
        let m = (n + 1).trailing_zeros();
        for c in 1..(m / 2).max(1) {
            if let Ok(row) = cyclic_lower(m, c) {
                if row.d == d {
                    rows.push(row);
                }
            }
        }
    }
    rows.sort_by(|a, b| a.bound.label.cmp(&b.bound.label));
    Ok(rows)
}

/// Tables for several `(n, d)`, merged in `(n, d, label)` order.
///
/// `workers = 0` uses the global thread pool; the result does not depend on
/// the worker count.
pub fn table(pairs: &[(u64, u64)], workers: usize) -> Result<Vec<TableRow>> {
    let run = || {
        pairs
            .par_iter()
            .map(|&(n, d)| bound_table(n, d))
            .collect::<Result<Vec<_>>>()
    };
    let parts = if workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?
            .install(run)?
    };
    let mut rows: Vec<TableRow> = parts.into_iter().flatten().collect();
    rows.sort_by(|a, b| (a.n, a.d, &a.bound.label).cmp(&(b.n, b.d, &b.bound.label)));
    rows.dedup_by(|a, b| (a.n, a.d, &a.bound.label) == (b.n, b.d, &b.bound.label));
    Ok(rows)
}

/// `x` with `digits` significant digits in plain decimal notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Serialize)]
struct FlatRow<'a> {
    n: u64,
    d: u64,
    j: i64,
    bound: &'a str,
    kind: &'a str,
    rigor: &'a str,
    value_log2: f64,
    value_exact: Option<String>,
    condition: Option<&'a str>,
}

fn flatten(row: &TableRow) -> FlatRow<'_> {
    FlatRow {
        n: row.n,
        d: row.d,
        j: row.j,
        bound: &row.bound.label,
        kind: row.bound.kind.as_str(),
        rigor: row.bound.rigor.as_str(),
        value_log2: format_significant(row.bound.value_log2, 12)
            .parse()
            .unwrap_or(f64::NAN),
        value_exact: row.bound.value_exact.as_ref().map(BigUint::to_string),
        condition: row.bound.condition.as_deref(),
    }
}

/// Versioned CSV with 12 significant digits for `value_log2`.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(COLUMNS).unwrap();
    for row in rows {
        let exact = row
            .bound
            .value_exact
            .as_ref()
            .map(BigUint::to_string)
            .unwrap_or_default();
        w.write_record([
            row.n.to_string().as_str(),
            &row.d.to_string(),
            &row.j.to_string(),
            &row.bound.label,
            row.bound.kind.as_str(),
            row.bound.rigor.as_str(),
            &format_significant(row.bound.value_log2, 12),
            &exact,
            row.bound.condition.as_deref().unwrap_or(""),
        ])
        .unwrap();
    }
    let body = String::from_utf8(w.into_inner().unwrap()).unwrap();
    format!("{CSV_HEADER}\n{body}")
}

/// The CSV rows as a JSON array of objects with the same columns.
pub fn to_json(rows: &[TableRow]) -> String {
    let flat: Vec<FlatRow> = rows.iter().map(flatten).collect();
    serde_json::to_string_pretty(&flat).unwrap() + "\n"
}

/// A display formula for the regime `d = n/2 - a sqrt(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeRow {
    pub n: u64,
    pub a: f64,
    pub bound: BoundValue,
    /// The rigorous Plotkin value at `d = ceil(n/2 - a sqrt n)`, on the Plotkin row only.
    pub corollary: Option<BoundValue>,
}

/// The `sqrt(n)`-regime forms of the classical bounds with all `o(.)` and
/// `O(.)` terms set to zero.
pub fn regime_table(a: f64, n_list: &[u64]) -> Result<Vec<RegimeRow>> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::OutOfRange(format!("a must be positive, got {a}")));
    }
    let mut rows = vec![];
    for &n in n_list {
        if n < 2 {
            return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
        }
        let nf = n as f64;
        let s = nf.sqrt();
        let row = |bound: BoundValue| RegimeRow {
            n,
            a,
            bound,
            corollary: None,
        };
        use BoundKind::{Lower, Upper};
        rows.push(row(BoundValue::heuristic(
            Lower,
            "gv_sp",
            -q_tail(2.0 * a).log2(),
        )
        .with_condition("1/Q(2a); O(1/sqrt n) dropped")));
        rows.push(row(BoundValue::heuristic(
            Upper,
            "hamming_sp",
            (1.0 - h2(0.25)) * nf,
        )
        .with_condition(
            "(1 - H2(1/4)) n; o(n) dropped; displayed cap 2^(0.189 n)",
        )));
        rows.push(row(BoundValue::heuristic(Upper, "singleton_sp", nf / 2.0)
            .with_condition("n/2; o(n) dropped")));
        let d = (nf / 2.0 - a * s).ceil().clamp(1.0, nf) as u64;
        rows.push(RegimeRow {
            corollary: Some(plotkin_upper(n, d)?.with_condition(format!("rigorous at d = {d}"))),
            ..row(
                BoundValue::heuristic(Upper, "plotkin_sp", (2.0 * nf).log2() + 2.0 * a * s)
                    .with_condition("2n 2^(2a sqrt n)"),
            )
        });
        rows.push(row(BoundValue::heuristic(
            Upper,
            "eb_sp",
            3.0 * nf.log2() + a / std::f64::consts::LN_2 * s,
        )
        .with_condition("n^3 2^((a/ln 2) sqrt n); O(1) taken as 0")));
        let delta = 0.5 - a / s;
        if delta > 0.0 {
            let exponent = h2(0.5 - (delta * (1.0 - delta)).sqrt()) * nf;
            rows.push(row(BoundValue::heuristic(Upper, "mrrw_sp", exponent)
                .with_condition("n H2(1/2 - sqrt(delta(1-delta))); o(n) dropped")));
        }
    }
    Ok(rows)
}

/// Regime rows as CSV; `corollary_exact` is filled on the Plotkin row.
pub fn regime_to_csv(rows: &[RegimeRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record([
        "n",
        "a",
        "bound",
        "kind",
        "rigor",
        "value_log2",
        "corollary_exact",
        "condition",
    ])
    .unwrap();
    for row in rows {
        let corollary = row
            .corollary
            .as_ref()
            .and_then(|c| c.value_exact.as_ref())
            .map(BigUint::to_string)
            .unwrap_or_default();
        w.write_record([
            row.n.to_string().as_str(),
            &format_significant(row.a, 12),
            &row.bound.label,
            row.bound.kind.as_str(),
            row.bound.rigor.as_str(),
            &format_significant(row.bound.value_log2, 12),
            &corollary,
            row.bound.condition.as_deref().unwrap_or(""),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// `(n, k, d)` of a Reed-Muller code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RmRow {
    pub label: String,
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

/// First- and second-order Reed-Muller parameters at length `2^m`.
pub fn rm_reference(m: u32) -> Result<[RmRow; 2]> {
    if !(2..=62).contains(&m) {
        return Err(Error::OutOfRange(format!("need 2 <= m <= 62, got {m}")));
    }
    let (n, m64) = (1u64 << m, m as u64);
    Ok([
        RmRow {
            label: format!("RM({m},1)"),
            n,
            k: m64 + 1,
            d: n / 2,
        },
        RmRow {
            label: format!("RM({m},2)"),
            n,
            k: 1 + m64 + m64 * (m64 - 1) / 2,
            d: n / 4,
        },
    ])
}
