//! Fourier analysis on `F_2^n` with exact rational tables.
//!
//! Conventions: `<f, g> = E f g` under the uniform measure,
//! `f^(z) = <f, chi_z> = 2^-n sum_x f(x) (-1)^<x,z>`, `f = sum_z f^(z) chi_z`,
//! and `(f * g)(x) = E_y f(y) g(x + y)`. With this normalization applying the
//! transform twice gives `2^-n f`; the unnormalized sum transform `H`
//! satisfies `H H f = 2^n f`.

mod identities;
mod replay;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use identities::{random_function, verify_identities, IdentityReport};
pub use replay::{covering_replay, ReplayReport, ReplayStep, REPLAY_TOLERANCE};

/// Largest dimension for dense tables.
pub const MAX_DIMENSION: u32 = 16;

/// A real function on `F_2^n`, indexed by the integer bitmask of the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: u32,
    values: Vec<BigRational>,
}

impl BooleanFunction {
    pub fn new(n: u32, values: Vec<BigRational>) -> Result<Self> {
        check_dimension(n)?;
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: values.len(),
            });
        }
        Ok(BooleanFunction { n, values })
    }

    pub fn from_fn(n: u32, f: impl Fn(u32) -> BigRational) -> Result<Self> {
        check_dimension(n)?;
        Ok(BooleanFunction {
            n,
            values: (0..1u32 << n).map(f).collect(),
        })
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::from_fn(n, |_| BigRational::zero())
    }

    /// `1_S`.
    pub fn indicator(n: u32, set: &[u32]) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for &x in set {
            let slot = f.values.get_mut(x as usize).ok_or_else(|| {
                Error::InvalidParameters(format!("point {x:#b} is outside F_2^{n}"))
            })?;
            *slot = BigRational::one();
        }
        Ok(f)
    }

    /// `chi_z(x) = (-1)^<x, z>`.
    pub fn character(n: u32, z: u32) -> Result<Self> {
        Self::from_fn(n, |x| BigRational::from_integer(parity_sign(x & z).into()))
    }

    /// `L(x) = 2^n` on weight-one points, so that `A f = f * L`.
    pub fn adjacency_kernel(n: u32) -> Result<Self> {
        let scale = BigRational::from_integer(BigInt::one() << n);
        Self::from_fn(n, |x| {
            if x.count_ones() == 1 {
                scale.clone()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, x: u32) -> &BigRational {
        &self.values[x as usize]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|v| v * c)
    }

    fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        BooleanFunction {
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        same_dimension(self, other)?;
        Ok(BooleanFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// `E f`.
    pub fn expectation(&self) -> BigRational {
        let sum: BigRational = self.values.iter().sum();
        sum / BigRational::from_integer(BigInt::one() << self.n)
    }

    /// `(A f)(x) = sum of f over the n neighbours of x`.
    pub fn adjacency(&self) -> Self {
        let n = self.n;
        BooleanFunction {
            n,
            values: (0..1u32 << n)
                .map(|x| (0..n).map(|i| &self.values[(x ^ (1 << i)) as usize]).sum())
                .collect(),
        }
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if n > MAX_DIMENSION {
        return Err(Error::OutOfRange(format!(
            "dense tables need n <= {MAX_DIMENSION}, got {n}"
        )));
    }
    Ok(())
}

fn same_dimension(f: &BooleanFunction, g: &BooleanFunction) -> Result<()> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch(f.n, g.n));
    }
    Ok(())
}

fn parity_sign(x: u32) -> i32 {
    if x.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// In-place unnormalized transform `v(z) <- sum_x v(x) (-1)^<x,z>`.
pub(crate) fn butterfly<T>(v: &mut [T])
where
    T: Clone + for<'a> std::ops::AddAssign<&'a T> + for<'a> std::ops::SubAssign<&'a T>,
{
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let a0 = a.clone();
                *a += &*b;
                let mut d = a0;
                d -= &*b;
                *b = d;
            }
        }
        h *= 2;
    }
}

/// `H f` scaled by `1 / extra`, run on integers over a common denominator.
fn transform(f: &BooleanFunction, extra: &BigInt) -> BooleanFunction {
    let common = f
        .values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = f
        .values
        .iter()
        .map(|v| v.numer() * (&common / v.denom()))
        .collect();
    butterfly(&mut ints);
    let den = common * extra;
    BooleanFunction {
        n: f.n,
        values: ints
            .into_iter()
            .map(|x| BigRational::new(x, den.clone()))
            .collect(),
    }
}

/// `f^(z) = 2^-n sum_x f(x) chi_z(x)`.
pub fn wht(f: &BooleanFunction) -> BooleanFunction {
    transform(f, &(BigInt::one() << f.n))
}

/// The unnormalized sum transform `H`.
pub fn sum_transform(f: &BooleanFunction) -> BooleanFunction {
    transform(f, &BigInt::one())
}

/// `f = sum_z f^(z) chi_z`, the inverse of [`wht`].
pub fn synthesize(f_hat: &BooleanFunction) -> BooleanFunction {
    sum_transform(f_hat)
}

/// `(f * g)(x) = E_y f(y) g(x + y)`, via `(f * g)^ = f^ g^`.
pub fn convolve(f: &BooleanFunction, g: &BooleanFunction) -> Result<BooleanFunction> {
    same_dimension(f, g)?;
    Ok(synthesize(&wht(f).mul(&wht(g))?))
}

/// The same convolution straight from the definition, `O(4^n)`.
pub fn convolve_direct(f: &BooleanFunction, g: &BooleanFunction) -> Result<BooleanFunction> {
    same_dimension(f, g)?;
    let size = BigRational::from_integer(BigInt::one() << f.n);
    BooleanFunction::from_fn(f.n, |x| {
        let s: BigRational = (0..1u32 << f.n).map(|y| f.get(y) * g.get(x ^ y)).sum();
        s / &size
    })
}

/// `<f, g> = E f g`.
pub fn inner(f: &BooleanFunction, g: &BooleanFunction) -> Result<BigRational> {
    Ok(f.mul(g)?.expectation())
}

/// Whether `(1_C * 1_C)(x) = 0` for every `0 < |x| < d`, i.e. whether the
/// code has minimum distance at least `d`. Runs in exact integers.
pub fn distance_check(n: u32, code: &[u32], d: u32) -> Result<bool> {
    check_dimension(n)?;
    let mut t = vec![0i64; 1 << n];
    for &c in code {
        *t.get_mut(c as usize).ok_or_else(|| {
            Error::InvalidParameters(format!("codeword {c:#b} is outside F_2^{n}"))
        })? = 1;
    }
    // H(H(1_C)^2) = 2^n * 2^n (1_C * 1_C)
    butterfly(&mut t);
    for v in &mut t {
        *v *= *v;
    }
    butterfly(&mut t);
    Ok((1u32..1 << n)
        .filter(|x| x.count_ones() < d)
        .all(|x| t[x as usize] == 0))
}

/// Minimum pairwise distance by direct scan, `None` for fewer than two words.
pub fn pairwise_min_distance(code: &[u32]) -> Option<u32> {
    let mut best = None;
    for (i, &a) in code.iter().enumerate() {
        for &b in &code[i + 1..] {
            let w = (a ^ b).count_ones();
            best = Some(best.map_or(w, |cur: u32| cur.min(w)));
        }
    }
    best
}
