//! Numerical replay of the covering argument behind the eigenvalue bound
//! `|C| <= n / (lambda_B - (n - 2d)) |B|`.
//!
//! With `f` the Perron function of `B = B_r(0, n)`, `phi` defined through
//! `phi^ = sqrt(1_C * 1_C)` and `F = phi * f`, every intermediate quantity of
//! the proof is computed on the full cube and each inequality is checked at
//! a relative tolerance. When `d > n/2` the coefficient of `E^2 F` in the
//! second estimate has to be `max(n, 2d)` rather than `n`; the replay uses
//! that coefficient and reports it.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{butterfly, pairwise_min_distance};
use crate::bounds::vol;
use crate::error::{Error, Result};
use crate::spectrum::{
    ball_operator, top_eigenvalue, top_eigenvector, SpectrumMode, DEFAULT_TOLERANCE,
};

/// Relative tolerance for every step of the replay.
pub const REPLAY_TOLERANCE: f64 = 1e-9;

/// Largest word length accepted by [`covering_replay`].
pub const MAX_REPLAY_LENGTH: u32 = 15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayStep {
    pub name: &'static str,
    /// `"<="`, `">="` or `"="`, read as `lhs relation rhs`.
    pub relation: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed margin divided by the step's scale; negative means violated.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayReport {
    pub n: u32,
    pub r: u32,
    pub d: u32,
    pub size: usize,
    pub lambda: f64,
    pub ball_size: f64,
    /// Coefficient of `E^2 F` in the second estimate, `max(n, 2d)`.
    pub coefficient: f64,
    /// `n / (lambda - (n - 2d)) |B|`.
    pub bound: f64,
    /// `max(n, 2d) / (lambda - (n - 2d)) |B|`.
    pub rigorous_bound: f64,
    pub steps: Vec<ReplayStep>,
    pub pass: bool,
}

fn step(name: &'static str, relation: &'static str, lhs: f64, rhs: f64, scale: f64) -> ReplayStep {
    let scale = scale.max(lhs.abs()).max(rhs.abs()).max(f64::MIN_POSITIVE);
    let margin = match relation {
        "<=" => rhs - lhs,
        ">=" => lhs - rhs,
        _ => -(lhs - rhs).abs(),
    };
    let slack = margin / scale;
    ReplayStep {
        name,
        relation,
        lhs,
        rhs,
        slack,
        pass: slack >= -REPLAY_TOLERANCE,
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn wht(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    butterfly(&mut out);
    let size = v.len() as f64;
    out.iter_mut().for_each(|x| *x /= size);
    out
}

fn synthesize(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    butterfly(&mut out);
    out
}

fn adjacency(n: u32, v: &[f64]) -> Vec<f64> {
    (0..v.len())
        .map(|x| (0..n).map(|i| v[x ^ (1 << i)]).sum())
        .collect()
}

/// Replays the proof for `code` (which must contain `0`) with ball radius
/// `r`, failing with [`Error::ChainViolation`] if any step does not hold.
pub fn covering_replay(n: u32, code: &[u32], r: u32) -> Result<ReplayReport> {
    if !(1..=MAX_REPLAY_LENGTH).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "replay needs 1 <= n <= {MAX_REPLAY_LENGTH}, got {n}"
        )));
    }
    if r == 0 || 2 * r > n {
        return Err(Error::InvalidRadius {
            r: r as u64,
            n: n as u64,
        });
    }
    if !code.contains(&0) {
        return Err(Error::InvalidParameters(
            "the code must contain the zero word".into(),
        ));
    }
    let mut words = code.to_vec();
    words.sort_unstable();
    words.dedup();
    if let Some(&w) = words.iter().find(|&&w| w >> n != 0) {
        return Err(Error::InvalidParameters(format!(
            "codeword {w:#b} is outside F_2^{n}"
        )));
    }
    let d = pairwise_min_distance(&words).unwrap_or(n);
    let j = n as f64 - 2.0 * d as f64;
    let nf = n as f64;
    let cube = 1usize << n;

    // Perron function of the ball, lifted from the radial eigenvector
    let op = ball_operator(SpectrumMode::Finite(n as u64), r)?;
    let lambda = top_eigenvalue(&op, DEFAULT_TOLERANCE);
    if lambda <= j {
        return Err(Error::NotApplicable(format!(
            "lambda_B{r}({n}) = {lambda} <= n - 2d = {j}"
        )));
    }
    let v = top_eigenvector(&op, lambda);
    let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
    let mut binom = 1.0;
    let mut radial = vec![];
    for (i, vi) in v.iter().enumerate() {
        radial.push(sign * vi / f64::sqrt(binom));
        binom = binom * (nf - i as f64) / (i as f64 + 1.0);
    }
    let f: Vec<f64> = (0..cube)
        .map(|x| radial.get(x.count_ones() as usize).copied().unwrap_or(0.0))
        .collect();
    let ball_size = vol(r as u64, n as u64)?.to_f64().unwrap();

    // phi^ = sqrt(1_C * 1_C), computed as (1_C * 1_C) = H(H(1_C)^2) / 4^n
    let mut auto = vec![0.0f64; cube];
    for &w in &words {
        auto[w as usize] = 1.0;
    }
    butterfly(&mut auto);
    auto.iter_mut().for_each(|x| *x *= *x);
    butterfly(&mut auto);
    let phi_hat: Vec<f64> = auto
        .iter()
        .map(|x| (x / (cube as f64 * cube as f64)).max(0.0).sqrt())
        .collect();
    let phi = synthesize(&phi_hat);
    let phi_conv = synthesize(&phi_hat.iter().map(|x| x * x).collect::<Vec<_>>());

    let f_hat = wht(&f);
    let big_f_hat: Vec<f64> = phi_hat.iter().zip(&f_hat).map(|(a, b)| a * b).collect();
    let big_f = synthesize(&big_f_hat);
    let af = adjacency(n, &f);
    let a_big_f = adjacency(n, &big_f);

    let e_f = mean(&f);
    let e_f2 = mean(&f.iter().map(|x| x * x).collect::<Vec<_>>());
    let e_phi = mean(&phi);
    let e_phi2 = mean(&phi.iter().map(|x| x * x).collect::<Vec<_>>());
    let e_big_f = mean(&big_f);
    let e_big_f2 = mean(&big_f.iter().map(|x| x * x).collect::<Vec<_>>());
    let quad = mean(
        &a_big_f
            .iter()
            .zip(&big_f)
            .map(|(a, b)| a * b)
            .collect::<Vec<_>>(),
    );
    let spectral_quad: f64 = big_f_hat
        .iter()
        .enumerate()
        .map(|(z, x)| (nf - 2.0 * z.count_ones() as f64) * x * x)
        .sum();
    let coefficient = nf.max(2.0 * d as f64);
    let size = words.len() as f64;
    let f_max = f.iter().cloned().fold(0.0, f64::max);
    let gap_residual = big_f_hat
        .iter()
        .enumerate()
        .filter(|(z, _)| (1..d).contains(&z.count_ones()))
        .map(|(_, x)| x.abs())
        .fold(0.0, f64::max);
    let big_f_hat_max = big_f_hat.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let perron_residual = af
        .iter()
        .zip(&f)
        .map(|(a, b)| a - lambda * b)
        .fold(f64::INFINITY, f64::min);
    let phi_conv_min = phi_conv.iter().cloned().fold(f64::INFINITY, f64::min);
    let phi_conv_max = phi_conv.iter().map(|x| x.abs()).fold(0.0, f64::max);

    let bound = nf / (lambda - j) * ball_size;
    let steps = vec![
        step(
            "perron_pointwise",
            ">=",
            perron_residual,
            0.0,
            lambda * f_max,
        ),
        step(
            "cauchy_support",
            "<=",
            e_f * e_f,
            e_f2 * ball_size / cube as f64,
            0.0,
        ),
        step(
            "phi_convolution_nonnegative",
            ">=",
            phi_conv_min,
            0.0,
            phi_conv_max,
        ),
        step("improve_ratio", "=", e_phi2 / (e_phi * e_phi), size, 0.0),
        step("fourier_gap", "=", gap_residual, 0.0, big_f_hat_max),
        step("first_estimate", ">=", quad, lambda * e_big_f2, 0.0),
        step("parseval_quadratic_form", "=", quad, spectral_quad, 0.0),
        step(
            "second_estimate",
            "<=",
            spectral_quad,
            coefficient * e_big_f * e_big_f + j * e_big_f2,
            coefficient * e_big_f * e_big_f + j.abs() * e_big_f2,
        ),
        step(
            "mean_factorization",
            "=",
            e_big_f * e_big_f,
            e_phi * e_phi * e_f * e_f,
            0.0,
        ),
        step(
            "energy_lower",
            ">=",
            e_big_f2,
            e_phi2 * e_f2 / cube as f64,
            0.0,
        ),
        step(
            "two_estimates",
            ">=",
            coefficient * e_phi * e_phi * e_f * e_f,
            (lambda - j) / cube as f64 * e_phi2 * e_f2,
            0.0,
        ),
        step("final_bound", "<=", size, bound, 0.0),
    ];
    let report = ReplayReport {
        n,
        r,
        d,
        size: words.len(),
        lambda,
        ball_size,
        coefficient,
        bound,
        rigorous_bound: coefficient / (lambda - j) * ball_size,
        pass: steps.iter().all(|s| s.pass),
        steps,
    };
    if let Some(bad) = report.steps.iter().find(|s| !s.pass) {
        return Err(Error::ChainViolation {
            step: bad.name.to_string(),
            lhs: bad.lhs,
            rhs: bad.rhs,
        });
    }
    Ok(report)
}
