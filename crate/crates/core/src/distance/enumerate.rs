use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::ConstructionSpec;
use crate::error::{Error, Result};
use crate::finite_field::BitPolynomial;

/// Rows of a binary generator matrix, each packed into `ceil(n / 64)` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl GeneratorMatrix {
    pub fn new(n: usize, rows: &[BitPolynomial]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters(
                "code length must be positive".into(),
            ));
        }
        let stride = n.div_ceil(64);
        let mut packed = vec![0u64; stride * rows.len()];
        for (r, row) in rows.iter().enumerate() {
            if let Some(deg) = row.degree() {
                if deg >= n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        actual: deg + 1,
                    });
                }
            }
            packed[r * stride..r * stride + row.words().len()].copy_from_slice(row.words());
        }
        Ok(Self {
            n,
            stride,
            rows: packed,
        })
    }

    /// Rows `x^i g(x)` for `i < k`.
    pub fn from_spec(spec: &ConstructionSpec) -> Self {
        let rows: Vec<BitPolynomial> = (0..spec.k).map(|i| spec.generator.shl(i)).collect();
        Self::new(spec.n, &rows).expect("x^i g(x) has degree below n")
    }

    /// The length-`n` repetition code.
    pub fn repetition(n: usize) -> Self {
        let row = BitPolynomial::from_coeffs(std::iter::repeat_n(true, n));
        Self::new(n, &[row]).expect("degree n - 1")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len() / self.stride
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.stride..(i + 1) * self.stride]
    }

    /// Same code with rows reordered by `perm` (row `i` of the result is row
    /// `perm[i]` of `self`).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len());
        for &p in perm {
            rows.extend_from_slice(self.row(p));
        }
        Self {
            n: self.n,
            stride: self.stride,
            rows,
        }
    }
}

/// Limits on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest dimension `k` for which `2^k` codewords will be enumerated.
    pub max_dimension: u32,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
}

impl Budget {
    pub const MIN_DISTANCE_DEFAULT: u32 = 24;
    pub const WEIGHT_DISTRIBUTION_DEFAULT: u32 = 20;

    pub fn min_distance() -> Self {
        Self {
            max_dimension: Self::MIN_DISTANCE_DEFAULT,
            workers: 0,
        }
    }

    pub fn weight_distribution() -> Self {
        Self {
            max_dimension: Self::WEIGHT_DISTRIBUTION_DEFAULT,
            workers: 0,
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers, ..self }
    }

    fn check(&self, k: usize) -> Result<()> {
        if k as u64 > self.max_dimension as u64 {
            return Err(Error::BudgetExceeded(format!(
                "dimension {k} exceeds the enumeration limit {}",
                self.max_dimension
            )));
        }
        Ok(())
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        if self.workers == 0 {
            job()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool")
                .install(job)
        }
    }
}

/// Number of codewords of each Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .skip(1)
            .position(|&c| c > 0)
            .map(|i| i + 1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

// Fixed message-prefix split: the result cannot depend on the worker count.
const PREFIX_BITS: usize = 6;

/// Visits every codeword in one prefix block in Gray-code order.
fn for_each_in_block(
    g: &GeneratorMatrix,
    prefix: u64,
    low_bits: usize,
    mut visit: impl FnMut(u64, &[u64]),
) {
    let k = g.dimension();
    let mut word = vec![0u64; g.stride];
    for i in low_bits..k {
        if prefix >> (i - low_bits) & 1 == 1 {
            for (w, r) in word.iter_mut().zip(g.row(i)) {
                *w ^= r;
            }
        }
    }
    let mut message = prefix << low_bits;
    visit(message, &word);
    for step in 1u64..(1u64 << low_bits) {
        let flip = step.trailing_zeros() as usize;
        message ^= 1 << flip;
        for (w, r) in word.iter_mut().zip(g.row(flip)) {
            *w ^= r;
        }
        visit(message, &word);
    }
}

fn split(k: usize) -> (usize, usize) {
    let prefix = PREFIX_BITS.min(k);
    (prefix, k - prefix)
}

fn popcount(word: &[u64]) -> usize {
    word.iter().map(|w| w.count_ones() as usize).sum()
}

/// Exact minimum weight of a nonzero codeword.
pub fn min_distance(g: &GeneratorMatrix, budget: &Budget) -> Result<usize> {
    let k = g.dimension();
    if k == 0 {
        return Err(Error::InvalidParameters("code has dimension zero".into()));
    }
    budget.check(k)?;
    let (prefix_bits, low_bits) = split(k);
    let best = budget.run(|| {
        (0u64..1 << prefix_bits)
            .into_par_iter()
            .map(|prefix| {
                let mut best = usize::MAX;
                for_each_in_block(g, prefix, low_bits, |_, word| {
                    let w = popcount(word);
                    if w > 0 && w < best {
                        best = w;
                    }
                });
                best
            })
            .min()
            .unwrap_or(usize::MAX)
    });
    if best == usize::MAX {
        return Err(Error::InvalidParameters(
            "code has no nonzero codeword".into(),
        ));
    }
    Ok(best)
}

/// Histogram of codeword weights over all `2^k` messages.
pub fn weight_distribution(g: &GeneratorMatrix, budget: &Budget) -> Result<WeightDistribution> {
    let k = g.dimension();
    budget.check(k)?;
    let n = g.len();
    let (prefix_bits, low_bits) = split(k);
    let counts = budget.run(|| {
        (0u64..1 << prefix_bits)
            .into_par_iter()
            .map(|prefix| {
                let mut counts = vec![0u64; n + 1];
                for_each_in_block(g, prefix, low_bits, |_, word| counts[popcount(word)] += 1);
                counts
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    });
    Ok(WeightDistribution { counts })
}

/// Result record for the command-line `distance` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub d_min: usize,
    pub designed_distance: u64,
    pub meets_design: bool,
    pub seconds: f64,
}

/// Enumerates the constructed code and compares against its designed distance.
pub fn distance_report(spec: &ConstructionSpec, budget: &Budget) -> Result<DistanceReport> {
    let start = std::time::Instant::now();
    let d_min = min_distance(&GeneratorMatrix::from_spec(spec), budget)?;
    Ok(DistanceReport {
        n: spec.n,
        k: spec.k,
        d_min,
        designed_distance: spec.designed_distance,
        meets_design: d_min as u64 >= spec.designed_distance,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::build_code;

    // Plain binary-counting enumeration, independent of the Gray-code walk.
    fn brute_force_distribution(spec: &ConstructionSpec) -> Vec<u64> {
        let mut counts = vec![0u64; spec.n + 1];
        for msg in 0u64..1 << spec.k {
            let bits: Vec<bool> = (0..spec.k).map(|i| msg >> i & 1 == 1).collect();
            counts[spec.encode(&bits).unwrap().weight] += 1;
        }
        counts
    }

    #[test]
    fn repetition_code() {
        let g = GeneratorMatrix::repetition(5);
        assert_eq!(min_distance(&g, &Budget::min_distance()).unwrap(), 5);
        let wd = weight_distribution(
            &GeneratorMatrix::repetition(3),
            &Budget::weight_distribution(),
        )
        .unwrap();
        assert_eq!(wd.counts, vec![1, 0, 0, 1]);
    }

    #[test]
    fn construction_4_1() {
        let spec = build_code(4, 1).unwrap();
        let g = GeneratorMatrix::from_spec(&spec);
        let d = min_distance(&g, &Budget::min_distance()).unwrap();
        assert!(d as u64 >= spec.designed_distance);
        // three copies of the [5, 4, 2] even-weight code
        assert_eq!(d, 6);
        let wd = weight_distribution(&g, &Budget::weight_distribution()).unwrap();
        assert_eq!(wd.total(), 16);
        assert_eq!(wd.counts[0], 1);
        assert_eq!(wd.min_distance(), Some(d));
        assert_eq!(wd.counts, brute_force_distribution(&spec));
    }

    #[test]
    fn construction_6_1_balanced_coordinates() {
        let spec = build_code(6, 1).unwrap();
        let wd = weight_distribution(
            &GeneratorMatrix::from_spec(&spec),
            &Budget::weight_distribution(),
        )
        .unwrap();
        let total_weight: u64 = wd
            .counts
            .iter()
            .enumerate()
            .map(|(w, &c)| w as u64 * c)
            .sum();
        assert_eq!(total_weight, 63 * 32);
        assert_eq!(wd.counts, brute_force_distribution(&spec));
    }

    #[test]
    fn construction_6_2() {
        let spec = build_code(6, 2).unwrap();
        let d = min_distance(&GeneratorMatrix::from_spec(&spec), &Budget::min_distance()).unwrap();
        assert!(d >= 16);
        let brute = brute_force_distribution(&spec);
        assert_eq!(
            Some(d),
            brute.iter().skip(1).position(|&c| c > 0).map(|i| i + 1)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let spec = build_code(6, 2).unwrap();
        let tight = Budget {
            max_dimension: 8,
            workers: 0,
        };
        let g = GeneratorMatrix::from_spec(&spec);
        assert!(matches!(
            min_distance(&g, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            weight_distribution(&g, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn invariant_under_row_permutation_and_workers() {
        let spec = build_code(8, 1).unwrap();
        let g = GeneratorMatrix::from_spec(&spec);
        let base = min_distance(&g, &Budget::min_distance().with_workers(1)).unwrap();
        let perm: Vec<usize> = (0..g.dimension()).rev().collect();
        let permuted = g.permute_rows(&perm);
        assert_eq!(
            min_distance(&permuted, &Budget::min_distance()).unwrap(),
            base
        );
        assert_eq!(
            min_distance(&g, &Budget::min_distance().with_workers(4)).unwrap(),
            base
        );
        let wd1 = weight_distribution(&g, &Budget::weight_distribution().with_workers(1)).unwrap();
        let wd4 =
            weight_distribution(&permuted, &Budget::weight_distribution().with_workers(4)).unwrap();
        assert_eq!(wd1, wd4);
    }

    #[test]
    fn small_dimension_below_prefix_split() {
        let rows = [
            BitPolynomial::from_mask(0b0111),
            BitPolynomial::from_mask(0b1110),
        ];
        let g = GeneratorMatrix::new(4, &rows).unwrap();
        assert_eq!(min_distance(&g, &Budget::min_distance()).unwrap(), 2);
        let wd = weight_distribution(&g, &Budget::weight_distribution()).unwrap();
        assert_eq!(wd.counts, vec![1, 0, 1, 2, 0]);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(GeneratorMatrix::new(0, &[]).is_err());
        let g = GeneratorMatrix::new(4, &[]).unwrap();
        assert!(min_distance(&g, &Budget::min_distance()).is_err());
        assert!(GeneratorMatrix::new(3, &[BitPolynomial::from_mask(0b1000)]).is_err());
    }
}
