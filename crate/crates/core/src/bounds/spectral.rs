use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{vol, BoundKind, BoundValue, CodeParameters};
use crate::error::{Error, Result};
use crate::spectrum::{
    ball_operator, certify, ratio_to_f64, EigenCertificate, SpectrumMode, DEFAULT_DIGITS,
};

/// Certified lower bounds on `lambda_{B_r}(n)` for one `n`, computed on demand.
#[derive(Debug, Clone)]
pub struct BallSpectra {
    n: u64,
    digits: u32,
    certificates: BTreeMap<u32, EigenCertificate>,
}

impl BallSpectra {
    pub fn new(n: u64) -> Self {
        Self::with_digits(n, DEFAULT_DIGITS)
    }

    pub fn with_digits(n: u64, digits: u32) -> Self {
        BallSpectra {
            n,
            digits,
            certificates: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn certificate(&mut self, r: u32) -> Result<&EigenCertificate> {
        if !self.certificates.contains_key(&r) {
            let op = ball_operator(SpectrumMode::Finite(self.n), r)?;
            self.certificates.insert(r, certify(&op, self.digits)?);
        }
        Ok(&self.certificates[&r])
    }

    pub fn lambda(&mut self, r: u32) -> Result<BigRational> {
        Ok(self.certificate(r)?.lambda_certified.clone())
    }
}

/// `|C| <= n / (lambda - (n - 2d)) Vol(r, n)` evaluated with a certified
/// `lambda_hat <= lambda_{B_r}(n)`.
///
/// When `d > n/2` the numerator `n` is replaced by `2d`: the step
/// `sum_z (n - 2|z|) F^(z)^2 <= n E^2 F + (n - 2d) E F^2` only holds with
/// `max(n, 2d)` in front of `E^2 F` once `n - 2d` is negative.
pub fn new_upper(params: &CodeParameters, r: u32, lambda_hat: &BigRational) -> Result<BoundValue> {
    let CodeParameters { n, d, j, .. } = *params;
    if r == 0 || 2 * r as u64 > n {
        return Err(Error::InvalidRadius { r: r as u64, n });
    }
    let j_big = BigInt::from(j);
    let gap = lambda_hat - BigRational::from_integer(j_big.clone());
    if !gap.is_positive() {
        return Err(Error::NotApplicable(format!(
            "lambda_B{r}({n}) >= {:.6} does not exceed n - 2d = {j}",
            ratio_to_f64(lambda_hat)
        )));
    }
    let numerator = n.max(2 * d);
    let top = BigInt::from(numerator) * BigInt::from(vol(r as u64, n)?) * lambda_hat.denom();
    let bottom = lambda_hat.numer() - j_big * lambda_hat.denom();
    let value = (top / bottom).to_biguint().expect("positive quotient");
    Ok(
        BoundValue::exact(BoundKind::Upper, format!("new_r{r}"), value)
            .with_condition(format!("lambda_B{r} >= {:.10}", ratio_to_f64(lambda_hat))),
    )
}

/// The smallest applicable [`new_upper`] over `r = 1..=r_max`, labelled
/// `new_best`; ties go to the smaller radius.
pub fn best_new_upper(
    params: &CodeParameters,
    r_max: u32,
    spectra: &mut BallSpectra,
) -> Result<BoundValue> {
    if spectra.n() != params.n {
        return Err(Error::InvalidParameters(format!(
            "spectra are for n = {}, parameters have n = {}",
            spectra.n(),
            params.n
        )));
    }
    let top = r_max.min((params.n / 2) as u32);
    let mut best: Option<(u32, BoundValue)> = None;
    for r in 1..=top {
        let lambda = spectra.lambda(r)?;
        match new_upper(params, r, &lambda) {
            Ok(b) => {
                if best
                    .as_ref()
                    .is_none_or(|(_, cur)| b.value_exact < cur.value_exact)
                {
                    best = Some((r, b));
                }
            }
            Err(Error::NotApplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let (r, mut b) = best.ok_or_else(|| {
        Error::NotApplicable(format!(
            "no radius r <= {top} has lambda_B > n - 2d = {} at n = {}",
            params.j, params.n
        ))
    })?;
    b.label = "new_best".into();
    b.condition = Some(format!("r = {r}; {}", b.condition.unwrap_or_default()));
    Ok(b)
}

/// Largest `t = (n - 2d) / (2 sqrt n)` at which [`best_new_upper`] still
/// applies, found by bisection on `d`.
pub fn applicability_boundary(n: u64, r_max: u32, spectra: &mut BallSpectra) -> Result<f64> {
    let applies = |d: u64, spectra: &mut BallSpectra| -> Result<bool> {
        match best_new_upper(&CodeParameters::new(n, d)?, r_max, spectra) {
            Ok(_) => Ok(true),
            Err(Error::NotApplicable(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };
    // the smallest d that applies; d = n always applies (lambda > 0 > -n)
    let (mut lo, mut hi) = (1u64, n);
    if applies(lo, spectra)? {
        hi = lo;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if applies(mid, spectra)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let j = n as i64 - 2 * hi as i64;
    Ok(j.to_f64().unwrap() / (2.0 * (n as f64).sqrt()))
}
