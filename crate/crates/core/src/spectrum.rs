//! Top eigenvalue of the hypercube subgraph induced by a Hamming ball.
//!
//! The ball `B_r(0, n)` is invariant under coordinate permutations, so its
//! Perron vector can be taken radial (a function of Hamming weight only).
//! On radial functions the adjacency operator acts as
//!
//! ```text
//! (A f)(i) = i f(i-1) + (n - i) f(i+1),    0 <= i <= r,  f(r+1) = 0,
//! ```
//!
//! which is similar to the symmetric tridiagonal matrix with zero diagonal
//! and squared off-diagonals `(i+1)(n-i)`. Dividing by `n` and letting
//! `n -> infinity` leaves squared off-diagonals `i+1`; its top eigenvalue is
//! the constant `t_r` with `lambda_{B_r}(n) ~ t_r sqrt(n)`.
//!
//! Certification never touches a square root: a rational radial witness `f`
//! is scored with the exact Rayleigh quotient
//!
//! ```text
//! R(f) = 2 sum_{i<r} C(n,i)(n-i) f(i) f(i+1) / sum_{i<=r} C(n,i) f(i)^2
//! ```
//!
//! and any such `R(f)` is a lower bound on the top eigenvalue.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_DIGITS: u32 = 12;
pub const MAX_ASYMPTOTIC_RADIUS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumMode {
    /// Finite word length `n`.
    Finite(u64),
    /// The `n -> infinity` limit normalized by `sqrt(n)`.
    Asymptotic,
}

/// Symmetric tridiagonal, zero diagonal, stored as squared off-diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TridiagonalOperator {
    pub mode: SpectrumMode,
    pub offdiag_sq: Vec<u64>,
}

impl TridiagonalOperator {
    pub fn size(&self) -> usize {
        self.offdiag_sq.len() + 1
    }

    pub fn radius(&self) -> u32 {
        self.offdiag_sq.len() as u32
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the
    /// LDL^T pivots of `T - x I`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = -x;
        if q < 0.0 {
            count += 1;
        }
        for &b2 in &self.offdiag_sq {
            let pivot = if q == 0.0 { -f64::MIN_POSITIVE } else { q };
            q = -x - b2 as f64 / pivot;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn max_row_sum(&self) -> f64 {
        let b: Vec<f64> = self.offdiag_sq.iter().map(|&x| (x as f64).sqrt()).collect();
        (0..self.size())
            .map(|i| {
                let left = if i > 0 { b[i - 1] } else { 0.0 };
                let right = b.get(i).copied().unwrap_or(0.0);
                left + right
            })
            .fold(0.0, f64::max)
    }
}

/// Radial reduction of the ball adjacency for radius `r`.
pub fn ball_operator(mode: SpectrumMode, r: u32) -> Result<TridiagonalOperator> {
    let offdiag_sq = match mode {
        SpectrumMode::Finite(n) => {
            if r < 1 || 2 * r as u64 > n {
                return Err(Error::InvalidRadius { r: r as u64, n });
            }
            (0..r as u64).map(|i| (i + 1) * (n - i)).collect()
        }
        SpectrumMode::Asymptotic => {
            if r < 1 {
                return Err(Error::InvalidRadius { r: r as u64, n: 0 });
            }
            (1..=r as u64).collect()
        }
    };
    Ok(TridiagonalOperator { mode, offdiag_sq })
}

/// Largest eigenvalue by Sturm-count bisection on `[0, max row sum]`.
pub fn top_eigenvalue(op: &TridiagonalOperator, tol: f64) -> f64 {
    let size = op.size();
    let mut lo = 0.0f64;
    let mut hi = op.max_row_sum() * (1.0 + 1e-15) + f64::MIN_POSITIVE;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if op.count_below(mid) == size {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unit top eigenvector of the symmetric form by shifted inverse iteration.
///
/// The shift sits just above `lambda`, so `T - shift I` is negative definite
/// and the tridiagonal solve needs no pivoting.
pub fn top_eigenvector(op: &TridiagonalOperator, lambda: f64) -> Vec<f64> {
    let size = op.size();
    let b: Vec<f64> = op.offdiag_sq.iter().map(|&x| (x as f64).sqrt()).collect();
    let shift = lambda + lambda.abs().max(1.0) * 1e-9;
    let mut v = vec![1.0f64; size];
    for _ in 0..4 {
        v = solve_shifted(&b, shift, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        v.iter_mut().for_each(|x| *x *= sign / norm);
    }
    v
}

// Thomas algorithm for (T - shift I) x = rhs with zero diagonal T.
fn solve_shifted(b: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let size = rhs.len();
    let mut diag = vec![-shift; size];
    let mut y = rhs.to_vec();
    for i in 1..size {
        let w = b[i - 1] / diag[i - 1];
        diag[i] -= w * b[i - 1];
        y[i] -= w * y[i - 1];
    }
    let mut x = vec![0.0; size];
    x[size - 1] = y[size - 1] / diag[size - 1];
    for i in (0..size - 1).rev() {
        x[i] = (y[i] - b[i] * x[i + 1]) / diag[i];
    }
    x
}

/// A rational lower bound on `lambda_{B_r}(n)` with its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCertificate {
    pub n: u64,
    pub r: u32,
    pub lambda_float: f64,
    pub lambda_certified: BigRational,
    /// Radial witness `f(0..=r)`, normalized so `f(0) = 1`.
    pub witness: Vec<BigRational>,
}

impl EigenCertificate {
    pub fn lambda_certified_f64(&self) -> f64 {
        ratio_to_f64(&self.lambda_certified)
    }

    pub fn report(&self) -> EigenReport {
        EigenReport {
            n: serde_json::Value::from(self.n),
            r: self.r,
            lambda_float: self.lambda_float,
            lambda_certified_num: Some(self.lambda_certified.numer().to_string()),
            lambda_certified_den: Some(self.lambda_certified.denom().to_string()),
        }
    }
}

/// JSON view of a spectral computation.
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    /// The word length, or the string `"asymptotic"`.
    pub n: serde_json::Value,
    pub r: u32,
    pub lambda_float: f64,
    pub lambda_certified_num: Option<String>,
    pub lambda_certified_den: Option<String>,
}

/// Exact radial Rayleigh quotient of `f` (entries `f(0..=r)`) on `B_r(0, n)`.
pub fn radial_rayleigh_quotient(n: u64, f: &[BigRational]) -> Option<BigRational> {
    let mut num = BigRational::zero();
    let mut den = BigRational::zero();
    let mut binom = BigUint::one();
    for (i, fi) in f.iter().enumerate() {
        let c = BigRational::from_integer(BigInt::from(binom.clone()));
        den += &c * fi * fi;
        if let Some(next) = f.get(i + 1) {
            let weight = &c * BigRational::from_integer(BigInt::from(2 * (n - i as u64)));
            num += weight * fi * next;
        }
        binom = binom * (n - i as u64) / (i as u64 + 1);
    }
    (!den.is_zero()).then(|| num / den)
}

/// Certifies `lambda_{B_r}(n)` from below with an exact rational.
///
/// The float eigenvector is turned into a radial function, normalized to
/// `f(0) = 1`, and every entry rounded to `digits` significant decimal
/// digits. Ratios between consecutive entries are accumulated in log space,
/// so tiny entries at large `n` neither underflow nor lose precision.
pub fn certify(op: &TridiagonalOperator, digits: u32) -> Result<EigenCertificate> {
    let SpectrumMode::Finite(n) = op.mode else {
        return Err(Error::InvalidParameters(
            "certification needs a finite word length".into(),
        ));
    };
    if digits == 0 {
        return Err(Error::InvalidParameters("digits must be positive".into()));
    }
    let r = op.radius();
    let lambda = top_eigenvalue(op, DEFAULT_TOLERANCE);
    let v = top_eigenvector(op, lambda);

    // f(i) = v_i / sqrt(C(n, i)); f(i)/f(i-1) = (v_i/v_{i-1}) sqrt(i/(n-i+1)).
    // A non-positive float entry truncates the witness, which keeps it valid.
    let mut log10_f = 0.0f64;
    let mut witness = vec![BigRational::one()];
    for i in 1..v.len() {
        if v[i] <= 0.0 || witness[i - 1].is_zero() {
            witness.push(BigRational::zero());
            continue;
        }
        log10_f +=
            (v[i] / v[i - 1]).log10() + 0.5 * ((i as f64) / ((n - i as u64 + 1) as f64)).log10();
        witness.push(round_significant(log10_f, digits));
    }
    let lambda_certified = radial_rayleigh_quotient(n, &witness).ok_or(Error::DegenerateWitness)?;
    Ok(EigenCertificate {
        n,
        r,
        lambda_float: lambda,
        lambda_certified,
        witness,
    })
}

/// `10^x` rounded to `digits` significant digits, as an exact rational.
fn round_significant(log10_value: f64, digits: u32) -> BigRational {
    let exponent = log10_value.floor() as i64 - (digits as i64 - 1);
    let mantissa = 10f64.powf(log10_value - exponent as f64).round();
    let mantissa = BigInt::from(mantissa as i64);
    let ten = BigInt::from(10);
    if exponent >= 0 {
        BigRational::from_integer(mantissa * num_traits::pow(ten, exponent as usize))
    } else {
        BigRational::new(mantissa, num_traits::pow(ten, (-exponent) as usize))
    }
}

/// Best-effort conversion that survives numerators and denominators
/// outside the f64 range.
pub fn ratio_to_f64(x: &BigRational) -> f64 {
    if let (Some(a), Some(b)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    let shift = x.numer().bits() as i64 - x.denom().bits() as i64;
    let scaled = if shift > 0 {
        x / BigRational::from_integer(BigInt::one() << shift as usize)
    } else {
        x * BigRational::from_integer(BigInt::one() << (-shift) as usize)
    };
    let base =
        scaled.numer().to_f64().unwrap_or(f64::NAN) / scaled.denom().to_f64().unwrap_or(f64::NAN);
    let base = if base.is_finite() {
        base
    } else {
        // both parts overflowed; keep 64 leading bits of each
        let nb = scaled.numer().abs().bits().saturating_sub(64);
        let db = scaled.denom().bits().saturating_sub(64);
        let a = (scaled.numer() >> nb as usize).to_f64().unwrap();
        let b = (scaled.denom() >> db as usize).to_f64().unwrap();
        a / b * 2f64.powi(nb as i32 - db as i32)
    };
    base * 2f64.powi(shift as i32)
}

/// The quotient of the explicit radius-3 test function with
/// `f(0) = 1`, `f(1) = t/sqrt(n)`, `f(2) = (t^2 - 1)/(n - 1)` and
/// `f(3) = (t sqrt(n) f(2) - 2 f(1))/(n - 2)`, which satisfies the eigen
/// relation `lambda f(i) = i f(i-1) + (n-i) f(i+1)` for `i < 3` with
/// `lambda = t sqrt(n)`.
pub fn radius3_test_quotient(n: u64, t: f64) -> Result<f64> {
    if n < 16 || t <= 0.0 || !t.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "test function needs n >= 16 and t > 0, got n = {n}, t = {t}"
        )));
    }
    let nf = n as f64;
    let s = nf.sqrt();
    let f1 = t / s;
    let f2 = (t * t - 1.0) / (nf - 1.0);
    let f3 = (t * s * f2 - 2.0 * f1) / (nf - 2.0);
    let f = [1.0, f1, f2, f3];
    let binom = [
        1.0,
        nf,
        nf * (nf - 1.0) / 2.0,
        nf * (nf - 1.0) * (nf - 2.0) / 6.0,
    ];
    let num: f64 = (0..3)
        .map(|i| 2.0 * binom[i] * (nf - i as f64) * f[i] * f[i + 1])
        .sum();
    let den: f64 = (0..4).map(|i| binom[i] * f[i] * f[i]).sum();
    Ok(num / den)
}

/// `t_r`: top eigenvalue of the normalized asymptotic operator.
pub fn asymptotic_constant(r: u32) -> Result<f64> {
    if !(1..=MAX_ASYMPTOTIC_RADIUS).contains(&r) {
        return Err(Error::InvalidRadius { r: r as u64, n: 0 });
    }
    Ok(top_eigenvalue(
        &ball_operator(SpectrumMode::Asymptotic, r)?,
        DEFAULT_TOLERANCE,
    ))
}

/// Float and (for finite `n`) certified spectral data for one `(n, r)`.
pub fn eigen_report(mode: SpectrumMode, r: u32, digits: u32) -> Result<EigenReport> {
    match mode {
        SpectrumMode::Asymptotic => Ok(EigenReport {
            n: serde_json::Value::from("asymptotic"),
            r,
            lambda_float: asymptotic_constant(r)?,
            lambda_certified_num: None,
            lambda_certified_den: None,
        }),
        SpectrumMode::Finite(_) => Ok(certify(&ball_operator(mode, r)?, digits)?.report()),
    }
}
