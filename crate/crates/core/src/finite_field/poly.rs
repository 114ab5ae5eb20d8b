//! Polynomials over GF(2), packed little-endian into 64-bit words.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A polynomial over GF(2). Bit `i` of the packed words is the coefficient
/// of `x^i`.
///
/// The representation is canonical: the last word is never zero, so the zero
/// polynomial is the empty word vector and derived equality is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPolynomial {
    words: Vec<u64>,
}

impl BitPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_mask(1)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(k, true);
        p
    }

    /// Builds a polynomial from a coefficient mask, e.g. `0x13` is `x^4 + x + 1`.
    pub fn from_mask(mask: u64) -> Self {
        Self::from_words(vec![mask])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    /// Builds a polynomial from coefficients listed from `x^0` upwards.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let w = i / 64;
        if value {
            if self.words.len() <= w {
                self.words.resize(w + 1, 0);
            }
            self.words[w] |= 1 << (i % 64);
        } else if w < self.words.len() {
            self.words[w] &= !(1 << (i % 64));
            self.normalize();
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// The low 64 coefficients as a mask, if the degree allows it.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// `self ^= other * x^shift`.
    pub(crate) fn xor_shifted(&mut self, other: &BitPolynomial, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                self.words[i + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        self.normalize();
    }

    pub fn shl(&self, shift: usize) -> BitPolynomial {
        let mut out = BitPolynomial::zero();
        out.xor_shifted(self, shift);
        out
    }

    /// Long division: returns `(q, r)` with `self = q * divisor + r` and
    /// `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &BitPolynomial) -> Result<(BitPolynomial, BitPolynomial)> {
        let db = divisor.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let mut rem = self.clone();
        let mut quot = BitPolynomial::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let s = dr - db;
            quot.set_coeff(s, true);
            rem.xor_shifted(divisor, s);
        }
        Ok((quot, rem))
    }

    /// Exact quotient, failing with [`Error::InexactDivision`] on a nonzero remainder.
    pub fn div_exact(&self, divisor: &BitPolynomial) -> Result<BitPolynomial> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "{self} mod {divisor} = {r}"
            )));
        }
        Ok(q)
    }

    /// Lowercase hex of the coefficient word, most significant digit first.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let mut s = String::with_capacity(2 + self.words.len() * 16);
        s.push_str("0x");
        let mut iter = self.words.iter().rev();
        if let Some(top) = iter.next() {
            s.push_str(&format!("{top:x}"));
        }
        for w in iter {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        let digits = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::InvalidParameters(format!(
                "`{text}` is not a hex coefficient mask"
            )));
        }
        let bytes = digits.as_bytes();
        let mut words = Vec::with_capacity(bytes.len() / 16 + 1);
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).expect("ascii");
            words.push(u64::from_str_radix(chunk, 16).expect("validated hex"));
            end = start;
        }
        Ok(Self::from_words(words))
    }
}

impl FromStr for BitPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s.trim())
    }
}

impl fmt::Display for BitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for BitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<usize> = self.support().collect();
        let mut first = true;
        for &e in terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BitPolynomial {
    type Output = BitPolynomial;

    fn add(self, rhs: &BitPolynomial) -> BitPolynomial {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul for &BitPolynomial {
    type Output = BitPolynomial;

    fn mul(self, rhs: &BitPolynomial) -> BitPolynomial {
        let (small, large) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = BitPolynomial::zero();
        for e in small.support() {
            out.xor_shifted(large, e);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(mask: u64) -> BitPolynomial {
        BitPolynomial::from_mask(mask)
    }

    #[test]
    fn divrem_examples() {
        // (x^2 + 1) / (x + 1) = x + 1
        assert_eq!(p(0b101).divrem(&p(0b11)).unwrap(), (p(0b11), p(0)));
        // (x^4 + x + 1) / (x^2 + x + 1) = x^2 + x, remainder 1
        assert_eq!(p(0x13).divrem(&p(0b111)).unwrap(), (p(0b110), p(1)));
        let a = p(0x1234_5678);
        assert_eq!(a.divrem(&a).unwrap(), (p(1), p(0)));
    }

    #[test]
    fn divide_by_zero() {
        assert_eq!(p(5).divrem(&p(0)), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(p(0).degree(), None);
        assert_eq!(p(1).degree(), Some(0));
        assert_eq!(BitPolynomial::monomial(200).degree(), Some(200));
        let mut q = BitPolynomial::monomial(130);
        q.set_coeff(130, false);
        assert!(q.is_zero());
        assert!(q.words().is_empty());
    }

    #[test]
    fn hex_format() {
        assert_eq!(p(0x13).to_hex(), "0x13");
        assert_eq!(p(0).to_hex(), "0x0");
        let big = &BitPolynomial::monomial(64) + &p(1);
        assert_eq!(big.to_hex(), "0x10000000000000001");
        assert_eq!(BitPolynomial::from_hex("0x10000000000000001").unwrap(), big);
        assert!(BitPolynomial::from_hex("0xzz").is_err());
        assert!(BitPolynomial::from_hex("").is_err());
    }

    #[test]
    fn debug_renders_terms() {
        assert_eq!(format!("{:?}", p(0x13)), "x^4 + x + 1");
    }

    fn arb_poly() -> impl Strategy<Value = BitPolynomial> {
        prop::collection::vec(any::<u64>(), 0..4).prop_map(BitPolynomial::from_words)
    }

    proptest! {
        #[test]
        fn divrem_round_trip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }

        #[test]
        fn hex_round_trip(a in arb_poly()) {
            prop_assert_eq!(BitPolynomial::from_hex(&a.to_hex()).unwrap(), a);
        }

        #[test]
        fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
