//! Binary cyclic codes of length `2^m - 1` whose check polynomial is the
//! product of the minimal polynomials of `alpha^(1 + 2^(m/2 + i))`,
//! `i = 1..=c`.
//!
//! The resulting code has dimension `c*m` and, by the BCH bound, minimum
//! distance at least `2^(m-1) - 2^(m/2 + c - 1)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{cyclotomic_orbit, minimal_polynomial, BitPolynomial, FieldContext};

/// A cyclotomic coset modulo `2^m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub representative: u32,
    pub members: BTreeSet<u32>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.members.contains(&e)
    }
}

fn check_parameters(m: u32, c: u32) -> Result<()> {
    if !m.is_multiple_of(2) || m < 4 {
        return Err(Error::InvalidParameters(format!(
            "m = {m} must be even and at least 4"
        )));
    }
    if m > crate::finite_field::MAX_DEGREE {
        return Err(Error::UnsupportedDegree(m));
    }
    if c < 1 || c > m / 2 - 1 {
        return Err(Error::InvalidParameters(format!(
            "c = {c} must lie in 1..={} for m = {m}",
            m / 2 - 1
        )));
    }
    Ok(())
}

/// The coset `{2^j + 2^(m/2 + i + j) mod 2^m - 1 : j = 0..m-1}`.
///
/// The set is built directly from that formula and then checked against the
/// doubling orbit of the representative `1 + 2^(m/2 + i)`; both must agree
/// and have exactly `m` members.
pub fn coset_exponents(m: u32, i: u32) -> Result<CyclotomicCoset> {
    check_parameters(m, i)?;
    let order = (1u64 << m) - 1;
    let pow2 = |e: u32| 1u64 << (e % m);
    let members: BTreeSet<u32> = (0..m)
        .map(|j| ((pow2(j) + pow2(m / 2 + i + j)) % order) as u32)
        .collect();
    let representative = (1 + (1u64 << (m / 2 + i))) as u32;
    let orbit: BTreeSet<u32> = cyclotomic_orbit(representative, order as u32)
        .into_iter()
        .collect();
    if orbit != members || members.len() != m as usize {
        return Err(Error::InvalidParameters(format!(
            "coset of {representative} has {} members, expected {m}",
            orbit.len()
        )));
    }
    Ok(CyclotomicCoset {
        representative,
        members,
    })
}

/// The constructed code together with everything needed to audit it.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub m: u32,
    pub c: u32,
    pub n: usize,
    pub k: usize,
    pub generator: BitPolynomial,
    /// `h(x) = prod M_{alpha_i}(x)`, so that `g * h = x^n - 1`.
    pub check_polynomial: BitPolynomial,
    pub cosets: Vec<CyclotomicCoset>,
    pub designed_distance: u64,
    pub field: FieldContext,
}

/// `2^(m-1) - 2^(m/2 + c - 1)`.
pub fn theorem_distance(m: u32, c: u32) -> u64 {
    (1u64 << (m - 1)) - (1u64 << (m / 2 + c - 1))
}

/// Builds the code for even `m >= 4` and `1 <= c <= m/2 - 1`.
pub fn build_code(m: u32, c: u32) -> Result<ConstructionSpec> {
    check_parameters(m, c)?;
    let field = FieldContext::new(m)?;
    let n = field.order() as usize;

    let cosets = (1..=c)
        .map(|i| coset_exponents(m, i))
        .collect::<Result<Vec<_>>>()?;
    for (a, ca) in cosets.iter().enumerate() {
        for cb in &cosets[a + 1..] {
            if !ca.members.is_disjoint(&cb.members) {
                return Err(Error::CosetCollision(ca.representative, cb.representative));
            }
        }
    }

    let mut check = BitPolynomial::one();
    for coset in &cosets {
        check = &check * &minimal_polynomial(&field, coset.representative)?;
    }
    let xn1 = &BitPolynomial::monomial(n) + &BitPolynomial::one();
    let generator = xn1.div_exact(&check)?;
    let k = (c * m) as usize;
    if generator.degree() != Some(n - k) {
        return Err(Error::InexactDivision(format!(
            "generator degree {:?}, expected {}",
            generator.degree(),
            n - k
        )));
    }

    let mut spec = ConstructionSpec {
        m,
        c,
        n,
        k,
        generator,
        check_polynomial: check,
        cosets,
        designed_distance: 0,
        field,
    };
    spec.designed_distance = bch_certificate(&spec)?.designed_distance;
    Ok(spec)
}

/// Outcome of checking the BCH root structure of the generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BchCertificate {
    /// First exponent `t = 2^(m-1) + 2^(m/2 + c - 1) + 1` of the claimed root run.
    pub window_start: u64,
    /// Length of the claimed run `t..=2^m - 1`, all verified to be roots.
    pub window_len: u64,
    /// `window_len + 1`, the distance the construction guarantees.
    pub designed_distance: u64,
    /// Start of the longest cyclic run of consecutive roots `alpha^j`.
    pub longest_run_start: u64,
    pub longest_run_len: u64,
    /// `longest_run_len + 1`: the best plain BCH bound the generator supports.
    pub best_distance: u64,
}

/// Evaluates `g(alpha^j)` for every exponent, confirms the claimed window of
/// consecutive roots, and reports the longest cyclic run of roots.
pub fn bch_certificate(spec: &ConstructionSpec) -> Result<BchCertificate> {
    let n = spec.n as u64;
    let field = &spec.field;
    let is_root: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|j| field.eval(&spec.generator, field.alpha_pow(j)).is_zero())
        .collect();

    let t = (1u64 << (spec.m - 1)) + (1u64 << (spec.m / 2 + spec.c - 1)) + 1;
    // exponents t..=2^m - 1, where 2^m - 1 is the same point as 0
    for j in t..=n {
        if !is_root[(j % n) as usize] {
            return Err(Error::CertificateFailure(format!(
                "alpha^{j} is not a root of the generator"
            )));
        }
        if let Some(coset) = spec.cosets.iter().find(|c| c.contains((j % n) as u32)) {
            return Err(Error::CertificateFailure(format!(
                "exponent {j} lies in the coset of {}",
                coset.representative
            )));
        }
    }
    let window_len = n + 1 - t;

    let (longest_run_start, longest_run_len) = longest_cyclic_run(&is_root);
    Ok(BchCertificate {
        window_start: t,
        window_len,
        designed_distance: window_len + 1,
        longest_run_start,
        longest_run_len,
        best_distance: longest_run_len + 1,
    })
}

/// Longest run of `true` in a cyclic sequence, as `(start, len)`.
/// Ties go to the smallest start.
fn longest_cyclic_run(flags: &[bool]) -> (u64, u64) {
    let n = flags.len();
    if flags.iter().all(|&f| f) {
        return (0, n as u64);
    }
    // rotate so the scan starts just after a non-root
    let pivot = flags.iter().position(|&f| !f).expect("some non-root");
    let mut best = (0u64, 0u64);
    let mut run_start = 0usize;
    let mut run_len = 0usize;
    for step in 1..=n {
        let idx = (pivot + step) % n;
        if flags[idx] {
            if run_len == 0 {
                run_start = idx;
            }
            run_len += 1;
            let cand = (run_start as u64, run_len as u64);
            if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
                best = cand;
            }
        } else {
            run_len = 0;
        }
    }
    best
}

/// A codeword of a cyclic code of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub n: usize,
    pub poly: BitPolynomial,
    pub weight: usize,
}

impl Codeword {
    pub fn bits(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.poly.coeff(i)).collect()
    }

    /// Cyclic shift by one position: `x * c(x) mod x^n - 1`.
    pub fn rotate(&self) -> Codeword {
        let mut poly = self.poly.shl(1);
        if poly.coeff(self.n) {
            poly.set_coeff(self.n, false);
            poly.set_coeff(0, !poly.coeff(0));
        }
        Codeword {
            n: self.n,
            weight: self.weight,
            poly,
        }
    }
}

impl ConstructionSpec {
    /// Non-systematic encoding `c(x) = u(x) g(x)`.
    pub fn encode(&self, message: &[bool]) -> Result<Codeword> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: message.len(),
            });
        }
        let u = BitPolynomial::from_coeffs(message.iter().copied());
        Ok(self.encode_poly(&u))
    }

    pub(crate) fn encode_poly(&self, u: &BitPolynomial) -> Codeword {
        let poly = u * &self.generator;
        Codeword {
            n: self.n,
            weight: poly.weight(),
            poly,
        }
    }

    /// Every codeword as an `n`-bit mask (bit `i` is the coefficient of
    /// `x^i`), in message order. Needs `n <= 64` and `k <= 20`.
    pub fn codeword_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 || self.k > 20 {
            return Err(Error::BudgetExceeded(format!(
                "listing codewords needs n <= 64 and k <= 20, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        Ok((0u64..1 << self.k)
            .map(|msg| {
                let u = BitPolynomial::from_mask(msg);
                self.encode_poly(&u)
                    .poly
                    .to_mask()
                    .expect("degree below 64")
            })
            .collect())
    }

    /// Whether `word` (a polynomial of degree < n) is a multiple of `g`.
    pub fn contains(&self, word: &BitPolynomial) -> bool {
        word.degree().is_none_or(|d| d < self.n)
            && word.divrem(&self.generator).is_ok_and(|(_, r)| r.is_zero())
    }

    pub fn summary(&self) -> SpecSummary {
        SpecSummary {
            m: self.m,
            c: self.c,
            n: self.n,
            k: self.k,
            generator_hex: self.generator.to_hex(),
            designed_distance: self.designed_distance,
        }
    }
}

/// JSON export of a constructed code. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecSummary {
    pub m: u32,
    pub c: u32,
    pub n: usize,
    pub k: usize,
    pub generator_hex: String,
    pub designed_distance: u64,
}

/// All `(m, c)` pairs the construction accepts with `m <= max_m`.
pub fn valid_parameters(max_m: u32) -> impl Iterator<Item = (u32, u32)> {
    (4..=max_m)
        .step_by(2)
        .flat_map(|m| (1..m / 2).map(move |c| (m, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codeword_masks_are_codewords() {
        let spec = build_code(4, 1).unwrap();
        let words = spec.codeword_masks().unwrap();
        assert_eq!(words.len(), 16);
        assert_eq!(words[0], 0);
        for &w in &words {
            assert!(spec.contains(&BitPolynomial::from_mask(w)));
        }
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 16);
    }

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_exponents(4, 1).unwrap().members, set(&[9, 3, 6, 12]));
        assert_eq!(
            coset_exponents(6, 1).unwrap().members,
            set(&[17, 34, 5, 10, 20, 40])
        );
        let c62 = coset_exponents(6, 2).unwrap();
        assert_eq!(c62.members, set(&[33, 3, 6, 12, 24, 48]));
        assert_eq!(c62.representative, 33);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build_code(6, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_code(5, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_code(2, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_code(6, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(
            build_code(18, 1),
            Err(Error::UnsupportedDegree(18))
        ));
        assert!(matches!(
            coset_exponents(4, 2),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn build_4_1() {
        let spec = build_code(4, 1).unwrap();
        assert_eq!((spec.n, spec.k), (15, 4));
        assert_eq!(spec.generator.degree(), Some(11));
        assert_eq!(spec.check_polynomial, BitPolynomial::from_mask(0x1f));
        assert_eq!(spec.designed_distance, 4);
    }

    #[test]
    fn build_6_2() {
        let spec = build_code(6, 2).unwrap();
        assert_eq!((spec.n, spec.k, spec.designed_distance), (63, 12, 16));
        assert_eq!(spec.generator.degree(), Some(51));
    }

    #[test]
    fn certificate_examples() {
        let cert = bch_certificate(&build_code(4, 1).unwrap()).unwrap();
        assert_eq!(cert.window_start, 13);
        assert_eq!(cert.window_len, 3);
        assert_eq!(cert.designed_distance, 4);
        // non-roots are exactly {3, 6, 9, 12}; the run 13, 14, 0, 1, 2 wraps
        assert_eq!((cert.longest_run_start, cert.longest_run_len), (13, 5));

        let cert = bch_certificate(&build_code(6, 1).unwrap()).unwrap();
        assert_eq!(cert.window_start, 41);
        assert_eq!(cert.designed_distance, 24);
        // non-roots {5, 10, 17, 20, 34, 40}: longest run 41..=62, 0..=4
        assert_eq!((cert.longest_run_start, cert.longest_run_len), (41, 27));

        assert_eq!(
            bch_certificate(&build_code(6, 2).unwrap())
                .unwrap()
                .designed_distance,
            16
        );
    }

    #[test]
    fn generator_times_check_is_x_n_minus_one() {
        for (m, c) in valid_parameters(10) {
            let spec = build_code(m, c).unwrap();
            let prod = &spec.generator * &spec.check_polynomial;
            assert_eq!(
                prod,
                &BitPolynomial::monomial(spec.n) + &BitPolynomial::one()
            );
            let covered: usize = spec.cosets.iter().map(CyclotomicCoset::len).sum();
            assert_eq!(covered, spec.k);
            assert_eq!(spec.designed_distance, theorem_distance(m, c));
            let cert = bch_certificate(&spec).unwrap();
            assert!(cert.best_distance >= cert.designed_distance);
        }
    }

    #[test]
    fn designed_distance_dominates_sqrt_form() {
        for (m, c) in valid_parameters(16) {
            let n = ((1u64 << m) - 1) as f64;
            let rhs = n / 2.0 - 2f64.powi(c as i32 - 1) * n.sqrt();
            assert!(theorem_distance(m, c) as f64 >= rhs, "m={m} c={c}");
        }
    }

    #[test]
    fn cosets_disjoint_up_to_m_16() {
        for m in (4..=16).step_by(2) {
            let cosets: Vec<_> = (1..m / 2).map(|i| coset_exponents(m, i).unwrap()).collect();
            for a in 0..cosets.len() {
                for b in a + 1..cosets.len() {
                    assert!(cosets[a].members.is_disjoint(&cosets[b].members));
                }
            }
        }
    }

    #[test]
    fn encode_examples() {
        let spec = build_code(4, 1).unwrap();
        let zero = spec.encode(&[false; 4]).unwrap();
        assert_eq!(zero.weight, 0);
        let one = spec.encode(&[true, false, false, false]).unwrap();
        assert_eq!(one.poly, spec.generator);
        let x = spec.encode(&[false, true, false, false]).unwrap();
        let x_plus_1 = spec.encode(&[true, true, false, false]).unwrap();
        assert_eq!(x_plus_1.poly, &x.poly + &one.poly);
        assert_eq!(
            spec.encode(&[true; 3]).unwrap_err(),
            Error::LengthMismatch {
                expected: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn cyclic_closure_exhaustive() {
        for (m, c) in [(4, 1), (6, 1), (6, 2)] {
            let spec = build_code(m, c).unwrap();
            for msg in 0u64..(1 << spec.k) {
                let bits: Vec<bool> = (0..spec.k).map(|i| msg >> i & 1 == 1).collect();
                let word = spec.encode(&bits).unwrap();
                let shifted = word.rotate();
                assert_eq!(shifted.poly.weight(), word.weight);
                assert!(spec.contains(&shifted.poly), "m={m} c={c} msg={msg}");
            }
        }
    }

    #[test]
    fn summary_json_field_order() {
        let json = serde_json::to_string(&build_code(4, 1).unwrap().summary()).unwrap();
        let g = build_code(4, 1).unwrap().generator.to_hex();
        assert_eq!(
            json,
            format!(r#"{{"m":4,"c":1,"n":15,"k":4,"generator_hex":"{g}","designed_distance":4}}"#)
        );
    }

    #[test]
    fn longest_run_edge_cases() {
        assert_eq!(longest_cyclic_run(&[true, true, true]), (0, 3));
        assert_eq!(longest_cyclic_run(&[false, false]), (0, 0));
        assert_eq!(
            longest_cyclic_run(&[true, false, true, true, false]),
            (2, 2)
        );
        assert_eq!(longest_cyclic_run(&[true, false, false, true]), (3, 2));
    }
}
