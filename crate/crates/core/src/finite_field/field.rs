//! GF(2^m) for 2 <= m <= 16 with log/antilog tables.

use std::fmt;

use crate::error::{Error, Result};

use super::poly::BitPolynomial;

/// Default primitive modulus per extension degree, as coefficient masks.
/// Index `m - 2`.
pub const DEFAULT_MODULI: [u32; 15] = [
    0x7,     // x^2 + x + 1
    0xb,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x89,    // x^7 + x^3 + 1
    0x11d,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201b,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100b, // x^16 + x^12 + x^3 + x + 1
];

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 16;

/// An element of GF(2^m) in the polynomial basis; bit 0 is the constant term.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// The field GF(2^m) = GF(2)[x] / (modulus), with `alpha` the class of `x`.
///
/// The modulus is checked to be irreducible and primitive when the context is
/// built, so `alpha` generates the multiplicative group.
#[derive(Clone)]
pub struct FieldContext {
    m: u32,
    modulus: u32,
    // exp[i] = alpha^i for 0 <= i < 2 * order, doubled to skip a reduction.
    exp: Vec<u32>,
    // log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("m", &self.m)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl FieldContext {
    /// Builds GF(2^m) with the default primitive modulus.
    pub fn new(m: u32) -> Result<Self> {
        Self::with_modulus(m, None)
    }

    /// Builds GF(2^m), optionally overriding the modulus.
    pub fn with_modulus(m: u32, modulus: Option<&BitPolynomial>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let mask = match modulus {
            None => DEFAULT_MODULI[(m - MIN_DEGREE) as usize],
            Some(p) => {
                if p.degree() != Some(m as usize) {
                    return Err(Error::InvalidParameters(format!(
                        "modulus {p} does not have degree {m}"
                    )));
                }
                p.to_mask().expect("degree <= 16") as u32
            }
        };
        if !is_irreducible(mask) {
            return Err(Error::NonIrreducibleModulus(format!("{mask:#x}")));
        }

        let order = (1u32 << m) - 1;
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; 1 << m];
        let mut a = 1u32;
        for i in 0..order {
            if a == 1 && i > 0 {
                return Err(Error::NonPrimitiveModulus(format!("{mask:#x}")));
            }
            exp.push(a);
            log[a as usize] = i;
            a <<= 1;
            if a >> m & 1 == 1 {
                a ^= mask;
            }
        }
        debug_assert_eq!(a, 1, "alpha^(2^m - 1) must be 1 for an irreducible modulus");
        exp.extend_from_within(..);

        Ok(Self {
            m,
            modulus: mask,
            exp,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Multiplicative group order, `2^m - 1`.
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    pub fn modulus(&self) -> BitPolynomial {
        BitPolynomial::from_mask(self.modulus as u64)
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    /// `alpha^e` for any `e`, reduced modulo the group order.
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % self.order() as u64) as usize])
    }

    /// The element with the given basis bits.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits >> self.m != 0 {
            return Err(Error::OutOfRange(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.m
            )));
        }
        Ok(FieldElement(bits))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[s as usize])
    }

    /// `a^e`, with `a^0 = 1` (including `0^0`).
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.0 as usize] as u64 * (e % self.order() as u64);
        self.alpha_pow(l)
    }

    /// Discrete logarithm base alpha; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let l = self.log(a)?;
        Some(self.alpha_pow((self.order() - l) as u64))
    }

    /// Evaluates a binary polynomial at a field element (Horner on the support).
    pub fn eval(&self, p: &BitPolynomial, x: FieldElement) -> FieldElement {
        if x.is_zero() {
            return FieldElement(p.coeff(0) as u32);
        }
        let lx = self.log[x.0 as usize] as u64;
        let order = self.order() as u64;
        let mut acc = 0u32;
        for e in p.support() {
            acc ^= self.exp[((e as u64 * lx) % order) as usize];
        }
        FieldElement(acc)
    }
}

/// Irreducibility by trial division with every polynomial of degree
/// `1..=deg/2`.
fn is_irreducible(mask: u32) -> bool {
    let deg = 31 - mask.leading_zeros();
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..(1u32 << d) {
            if mask_mod(mask, (1 << d) | low) == 0 {
                return false;
            }
        }
    }
    true
}

fn mask_mod(mut a: u32, b: u32) -> u32 {
    let db = 31 - b.leading_zeros();
    while a != 0 {
        let da = 31 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: x^e mod modulus by repeated shift-and-reduce.
    fn x_pow_mod(e: u32, modulus: u32, m: u32) -> u32 {
        let mut a = 1u32;
        for _ in 0..e {
            a <<= 1;
            if a >> m & 1 == 1 {
                a ^= modulus;
            }
        }
        a
    }

    #[test]
    fn gf16_alpha_has_order_15() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!(ctx.modulus(), BitPolynomial::from_mask(0x13));
        let a = ctx.alpha();
        let first_one = (1..=15).find(|&e| ctx.pow(a, e) == FieldElement::ONE);
        assert_eq!(first_one, Some(15));
    }

    #[test]
    fn gf4_with_explicit_modulus() {
        let ctx = FieldContext::with_modulus(2, Some(&BitPolynomial::from_mask(0b111))).unwrap();
        assert_eq!(ctx.pow(ctx.alpha(), 3), FieldElement::ONE);
        assert_ne!(ctx.pow(ctx.alpha(), 1), FieldElement::ONE);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        let sq = &BitPolynomial::from_mask(0b111) * &BitPolynomial::from_mask(0b111);
        assert_eq!(sq, BitPolynomial::from_mask(0b10101));
        let err = FieldContext::with_modulus(4, Some(&sq)).unwrap_err();
        assert!(matches!(err, Error::NonIrreducibleModulus(_)));
    }

    #[test]
    fn non_primitive_modulus_rejected() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible; its roots have order 5.
        let p = BitPolynomial::from_mask(0x1f);
        let err = FieldContext::with_modulus(4, Some(&p)).unwrap_err();
        assert!(matches!(err, Error::NonPrimitiveModulus(_)));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(
            FieldContext::new(1).unwrap_err(),
            Error::UnsupportedDegree(1)
        );
        assert_eq!(
            FieldContext::new(17).unwrap_err(),
            Error::UnsupportedDegree(17)
        );
        assert!(matches!(
            FieldContext::with_modulus(4, Some(&BitPolynomial::from_mask(0xb))),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn reduction_examples() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!(ctx.alpha_pow(4).bits(), 0b0011);
        assert_eq!(ctx.alpha_pow(9).bits(), 0b1010);
        assert_eq!(x_pow_mod(9, 0x13, 4), 0b1010);
    }

    #[test]
    fn zeroth_power_is_one() {
        let ctx = FieldContext::new(5).unwrap();
        for bits in 1..32 {
            let a = ctx.element(bits).unwrap();
            assert_eq!(ctx.pow(a, 0), FieldElement::ONE);
        }
        assert!(ctx.element(32).is_err());
    }

    #[test]
    fn default_moduli_primitive_and_tables_agree_with_oracle() {
        for m in MIN_DEGREE..=MAX_DEGREE {
            let ctx = FieldContext::new(m).unwrap();
            let order = ctx.order();
            let mask = DEFAULT_MODULI[(m - 2) as usize];
            // Every nonzero element satisfies a^(2^m - 1) = 1.
            let mut seen = vec![false; 1 << m];
            let mut a = 1u32;
            for e in 0..order {
                assert_eq!(ctx.alpha_pow(e as u64).bits(), a, "m={m} e={e}");
                assert!(!seen[a as usize], "alpha^{e} repeats for m={m}");
                seen[a as usize] = true;
                a <<= 1;
                if a >> m & 1 == 1 {
                    a ^= mask;
                }
            }
            assert_eq!(a, 1);
            if m <= 8 {
                for e in [0u32, 1, 7, order - 1] {
                    assert_eq!(ctx.alpha_pow(e as u64).bits(), x_pow_mod(e, mask, m));
                }
            }
        }
    }

    #[test]
    fn multiplication_matches_shift_and_add() {
        let ctx = FieldContext::new(6).unwrap();
        let slow = |a: u32, b: u32| {
            let mut acc = 0u32;
            let mut a = a;
            for i in 0..6 {
                if b >> i & 1 == 1 {
                    acc ^= a;
                }
                a <<= 1;
                if a >> 6 & 1 == 1 {
                    a ^= 0x43;
                }
            }
            acc
        };
        for a in 0..64 {
            for b in 0..64 {
                let p = ctx.mul(ctx.element(a).unwrap(), ctx.element(b).unwrap());
                assert_eq!(p.bits(), slow(a, b));
            }
        }
    }

    #[test]
    fn inverse_and_eval() {
        let ctx = FieldContext::new(8).unwrap();
        for bits in 1..256 {
            let a = ctx.element(bits).unwrap();
            assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElement::ONE);
        }
        assert_eq!(ctx.inv(FieldElement::ZERO), None);
        // alpha is a root of the modulus
        assert!(ctx.eval(&ctx.modulus(), ctx.alpha()).is_zero());
        assert_eq!(
            ctx.eval(&BitPolynomial::from_mask(0b11), FieldElement::ZERO),
            FieldElement::ONE
        );
    }
}
