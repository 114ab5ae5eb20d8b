//! Exact arithmetic in GF(2^m) and GF(2)[x].

mod field;
mod poly;

pub use field::{FieldContext, FieldElement, DEFAULT_MODULI, MAX_DEGREE, MIN_DEGREE};
pub use poly::BitPolynomial;

use crate::error::{Error, Result};

/// Orbit of `exponent` under doubling modulo `order`, in generation order
/// (`exponent, 2*exponent, 4*exponent, ...`).
pub fn cyclotomic_orbit(exponent: u32, order: u32) -> Vec<u32> {
    let start = exponent % order;
    let mut out = vec![start];
    let mut e = (2 * start as u64 % order as u64) as u32;
    while e != start {
        out.push(e);
        e = (2 * e as u64 % order as u64) as u32;
    }
    out
}

/// Minimal polynomial of `alpha^exponent` over GF(2):
/// the product of `(x - beta^(2^j))` over the distinct conjugates of beta.
pub fn minimal_polynomial(ctx: &FieldContext, exponent: u32) -> Result<BitPolynomial> {
    let order = ctx.order();
    if exponent >= order {
        return Err(Error::OutOfRange(format!(
            "exponent {exponent} not below group order {order}"
        )));
    }
    // coefficients in GF(2^m), lowest degree first
    let mut coeffs = vec![FieldElement::ONE];
    for e in cyclotomic_orbit(exponent, order) {
        let root = ctx.alpha_pow(e as u64);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], c);
            next[i] = ctx.add(next[i], ctx.mul(c, root));
        }
        coeffs = next;
    }
    let mut out = BitPolynomial::zero();
    for (i, c) in coeffs.into_iter().enumerate() {
        match c.bits() {
            0 => {}
            1 => out.set_coeff(i, true),
            _ => return Err(Error::CoefficientNotInBaseField { exponent }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_examples() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!(
            minimal_polynomial(&ctx, 9).unwrap(),
            BitPolynomial::from_mask(0x1f)
        );
        assert_eq!(
            minimal_polynomial(&ctx, 0).unwrap(),
            BitPolynomial::from_mask(0b11)
        );
        assert_eq!(minimal_polynomial(&ctx, 1).unwrap(), ctx.modulus());
        assert!(minimal_polynomial(&ctx, 15).is_err());
    }

    #[test]
    fn orbit_of_nine_mod_fifteen() {
        assert_eq!(cyclotomic_orbit(9, 15), vec![9, 3, 6, 12]);
        assert_eq!(cyclotomic_orbit(5, 15), vec![5, 10]);
        assert_eq!(cyclotomic_orbit(0, 15), vec![0]);
    }

    #[test]
    fn minimal_polynomials_divide_x_n_minus_one() {
        for m in 2..=8 {
            let ctx = FieldContext::new(m).unwrap();
            let n = ctx.order() as usize;
            let xn1 = &BitPolynomial::monomial(n) + &BitPolynomial::one();
            for e in 0..ctx.order() {
                let mp = minimal_polynomial(&ctx, e).unwrap();
                assert_eq!(mp.degree(), Some(cyclotomic_orbit(e, ctx.order()).len()));
                let (_, r) = xn1.divrem(&mp).unwrap();
                assert!(r.is_zero(), "m={m} e={e}");
                assert!(ctx.eval(&mp, ctx.alpha_pow(e as u64)).is_zero());
            }
        }
    }

    #[test]
    fn product_over_coset_leaders_is_x_n_minus_one() {
        let ctx = FieldContext::new(6).unwrap();
        let order = ctx.order();
        let mut seen = vec![false; order as usize];
        let mut prod = BitPolynomial::one();
        for e in 0..order {
            if seen[e as usize] {
                continue;
            }
            for c in cyclotomic_orbit(e, order) {
                seen[c as usize] = true;
            }
            prod = &prod * &minimal_polynomial(&ctx, e).unwrap();
        }
        assert_eq!(prod, &BitPolynomial::monomial(63) + &BitPolynomial::one());
    }
}
