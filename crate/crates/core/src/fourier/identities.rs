use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{convolve, inner, sum_transform, wht, BooleanFunction};
use crate::error::Result;

/// A function with small random rational values `p / q`.
pub fn random_function<R: Rng>(n: u32, rng: &mut R) -> Result<BooleanFunction> {
    let values = (0..1u32 << n)
        .map(|_| {
            BigRational::new(
                rng.gen_range(-20i64..=20).into(),
                rng.gen_range(1i64..=12).into(),
            )
        })
        .collect();
    BooleanFunction::new(n, values)
}

/// Outcome of the exact identity suite at one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: u32,
    pub trials: usize,
    pub seed: u64,
    /// `f^^ = 2^-n f` and `H H f = 2^n f`.
    pub double_transform: bool,
    /// `E f = f^(0)`.
    pub expectation: bool,
    /// `<f, g> = sum_z f^(z) g^(z)`.
    pub parseval: bool,
    /// `<f * g, h> = <f, g * h>`.
    pub convolution_adjoint: bool,
    /// `L^(z) = n - 2 |z|`.
    pub kernel_spectrum: bool,
    /// `A f = f * L`.
    pub adjacency: bool,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.double_transform
            && self.expectation
            && self.parseval
            && self.convolution_adjoint
            && self.kernel_spectrum
            && self.adjacency
    }
}

/// Checks the identities on `trials` random triples in exact arithmetic.
pub fn verify_identities(n: u32, trials: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let size = BigRational::from_integer(BigInt::one() << n);
    let kernel = BooleanFunction::adjacency_kernel(n)?;
    let kernel_hat = wht(&kernel);

    let mut report = IdentityReport {
        n,
        trials,
        seed,
        double_transform: true,
        expectation: true,
        parseval: true,
        convolution_adjoint: true,
        kernel_spectrum: (0..1u32 << n).all(|z| {
            *kernel_hat.get(z)
                == BigRational::from_integer((n as i64 - 2 * z.count_ones() as i64).into())
        }),
        adjacency: true,
    };
    for _ in 0..trials {
        let f = random_function(n, &mut rng)?;
        let g = random_function(n, &mut rng)?;
        let h = random_function(n, &mut rng)?;
        let (f_hat, g_hat) = (wht(&f), wht(&g));

        report.double_transform &=
            wht(&f_hat).scale(&size) == f && sum_transform(&sum_transform(&f)) == f.scale(&size);
        report.expectation &= f.expectation() == *f_hat.get(0);
        let spectral: BigRational = f_hat
            .values()
            .iter()
            .zip(g_hat.values())
            .map(|(a, b)| a * b)
            .sum();
        report.parseval &= inner(&f, &g)? == spectral;
        report.convolution_adjoint &=
            inner(&convolve(&f, &g)?, &h)? == inner(&f, &convolve(&g, &h)?)?;
        report.adjacency &= f.adjacency() == convolve(&f, &kernel)?;
    }
    Ok(report)
}
