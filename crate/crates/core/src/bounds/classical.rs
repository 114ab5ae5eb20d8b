use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{h2, log2_big, BoundKind, BoundValue, CodeParameters, Rigor, TableRow};
use crate::cyclic::theorem_distance;
use crate::error::{Error, Result};

/// `Vol(r, n) = sum_{i <= r} C(n, i)`.
pub fn vol(r: u64, n: u64) -> Result<BigUint> {
    if r > n {
        return Err(Error::InvalidRadius { r, n });
    }
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    for i in 0..=r {
        total += &binom;
        binom = binom * (n - i) / (i + 1);
    }
    debug_assert!(
        r == 0 || 2 * r > n || log2_big(&total) <= h2(r as f64 / n as f64) * n as f64 + 1e-9
    );
    Ok(total)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Gilbert-Varshamov: `A(n, d) >= ceil(2^n / Vol(d - 1, n))`, for `d <= n/2`.
pub fn gv_lower(n: u64, d: u64) -> Result<BoundValue> {
    CodeParameters::new(n, d)?;
    if 2 * d > n {
        return Err(Error::OutOfRange(format!(
            "GV needs d <= n/2, got n = {n}, d = {d}"
        )));
    }
    let value = Integer::div_ceil(&pow2(n), &vol(d - 1, n)?);
    Ok(BoundValue::exact(BoundKind::Lower, "gv", value))
}

/// Hamming: `A(n, d) <= floor(2^n / Vol(e, n))` with `e = floor((d - 1)/2)`.
pub fn hamming_upper(n: u64, d: u64) -> Result<BoundValue> {
    CodeParameters::new(n, d)?;
    let e = (d - 1) / 2;
    let value = pow2(n) / vol(e, n)?;
    Ok(BoundValue::exact(BoundKind::Upper, "hamming", value).with_condition(format!("e = {e}")))
}

/// Singleton: `A(n, d) <= 2^(n - d + 1)`.
pub fn singleton_upper(n: u64, d: u64) -> Result<BoundValue> {
    CodeParameters::new(n, d)?;
    Ok(BoundValue::exact(
        BoundKind::Upper,
        "singleton",
        pow2(n - d + 1),
    ))
}

/// Plotkin, in the three ranges of `d` relative to `n/2`.
///
/// For `d > n/2` this is `2 floor(d / (2d - n))`. The form
/// `|C| < 2 ceil(d / (2d - n))` is false when `2d - n` divides `d`: the
/// `[7, 3, 4]` simplex code has 8 words and `ceil(4/1) = 4`.
pub fn plotkin_upper(n: u64, d: u64) -> Result<BoundValue> {
    CodeParameters::new(n, d)?;
    let (value, condition) = if 2 * d == n {
        (BigUint::from(2 * n), "d = n/2: 2n".to_string())
    } else if 2 * d > n {
        (
            BigUint::from(2 * (d / (2 * d - n))),
            "d > n/2: 2 floor(d/(2d-n))".to_string(),
        )
    } else {
        (
            BigUint::from(d) * pow2(n - 2 * d + 2),
            "d < n/2: d 2^(n-2d+2)".to_string(),
        )
    };
    Ok(BoundValue::exact(BoundKind::Upper, "plotkin", value).with_condition(condition))
}

/// `n (j + 2)`, only meaningful when `j = o(sqrt n)`.
pub fn mceliece_upper(n: u64, d: u64) -> Result<BoundValue> {
    let p = CodeParameters::new(n, d)?;
    if p.j < 0 {
        return Err(Error::NotApplicable(format!(
            "needs d <= n/2, got n = {n}, d = {d}"
        )));
    }
    let value = BigUint::from(n) * BigUint::from(p.j as u64 + 2);
    let mut b = BoundValue::exact(BoundKind::Upper, "mceliece", value).with_condition(format!(
        "valid for j = o(sqrt n); j/sqrt(n) = {:.6}",
        p.j as f64 / (n as f64).sqrt()
    ));
    b.rigor = Rigor::AsymptoticHeuristic;
    Ok(b)
}

/// The `2^(cm)` codewords of the cyclic construction at
/// `n = 2^m - 1`, `d = 2^(m-1) - 2^(m/2+c-1)`.
pub fn cyclic_lower(m: u32, c: u32) -> Result<TableRow> {
    if !m.is_multiple_of(2) || !(4..=16).contains(&m) || c < 1 || c + 1 > m / 2 {
        return Err(Error::InvalidParameters(format!(
            "need even 4 <= m <= 16 and 1 <= c <= m/2 - 1, got m = {m}, c = {c}"
        )));
    }
    let n = (1u64 << m) - 1;
    let d = theorem_distance(m, c);
    let value = pow2(c as u64 * m as u64);
    assert!(
        value > BigUint::from(n).pow(c),
        "2^(cm) <= n^c at m = {m}, c = {c}"
    );
    let bound = BoundValue::exact(BoundKind::Lower, "cyclic", value)
        .with_condition(format!("m = {m}, c = {c}"));
    Ok(TableRow::new(n, d, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exact(b: &BoundValue) -> u64 {
        b.value_exact.as_ref().unwrap().try_into().unwrap()
    }

    fn binom_oracle(n: u64, k: u64) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }

    #[test]
    fn volumes() {
        assert_eq!(vol(0, 9).unwrap(), BigUint::one());
        assert_eq!(vol(3, 15).unwrap(), BigUint::from(576u32));
        assert_eq!(vol(3, 256).unwrap(), BigUint::from(2_796_417u32));
        assert_eq!(vol(15, 15).unwrap(), BigUint::from(1u32 << 15));
        assert!(matches!(vol(4, 3), Err(Error::InvalidRadius { .. })));
    }

    #[test]
    fn classical_values_at_15_6() {
        assert_eq!(exact(&gv_lower(15, 6).unwrap()), 7);
        assert_eq!(exact(&hamming_upper(15, 6).unwrap()), 270);
        assert_eq!(exact(&singleton_upper(15, 6).unwrap()), 1024);
        assert_eq!(exact(&plotkin_upper(15, 6).unwrap()), 192);
        let m = mceliece_upper(15, 6).unwrap();
        assert_eq!(exact(&m), 75);
        assert_eq!(m.rigor, Rigor::AsymptoticHeuristic);
    }

    #[test]
    fn edge_cases() {
        for n in 1..20 {
            assert_eq!(exact(&gv_lower(n.max(2), 1).unwrap()), 1 << n.max(2));
            assert_eq!(exact(&hamming_upper(n, 1).unwrap()), 1 << n);
            assert_eq!(exact(&singleton_upper(n, n).unwrap()), 2);
            assert_eq!(exact(&singleton_upper(n, 1).unwrap()), 1 << n);
        }
        assert_eq!(exact(&hamming_upper(7, 3).unwrap()), 16);
        assert_eq!(exact(&plotkin_upper(8, 4).unwrap()), 16);
        assert_eq!(exact(&plotkin_upper(10, 6).unwrap()), 6);
        assert_eq!(exact(&plotkin_upper(7, 4).unwrap()), 8);
        assert_eq!(exact(&mceliece_upper(40, 20).unwrap()), 80);
        assert!(matches!(gv_lower(10, 6), Err(Error::OutOfRange(_))));
        assert!(matches!(
            mceliece_upper(10, 6),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn mceliece_records_regime() {
        let b = mceliece_upper(100, 45).unwrap();
        assert_eq!(exact(&b), 1200);
        assert!(b.condition.unwrap().ends_with("j/sqrt(n) = 1.000000"));
    }

    #[test]
    fn gv_at_63_16_matches_division_oracle() {
        let v: u128 = (0..16).map(|i| binom_oracle(63, i)).sum();
        let want = (1u128 << 63).div_ceil(v);
        assert_eq!(exact(&gv_lower(63, 16).unwrap()) as u128, want);
    }

    #[test]
    fn cyclic_rows() {
        let row = cyclic_lower(6, 2).unwrap();
        assert_eq!((row.n, row.d), (63, 16));
        assert_eq!(exact(&row.bound), 4096);
        let row = cyclic_lower(4, 1).unwrap();
        assert_eq!((row.n, row.d), (15, 4));
        assert_eq!(exact(&row.bound), 16);
        assert!(cyclic_lower(5, 1).is_err());
        assert!(cyclic_lower(6, 3).is_err());
    }

    #[test]
    fn cyclic_beats_polynomial_everywhere() {
        for m in (4..=16).step_by(2) {
            for c in 1..m / 2 {
                cyclic_lower(m, c).unwrap();
            }
        }
    }

    proptest! {
        #[test]
        fn vol_matches_binomial_sum(n in 1u64..120, r in 0u64..120) {
            prop_assume!(r <= n);
            let want: u128 = (0..=r.min(40)).map(|i| binom_oracle(n, i)).sum();
            prop_assume!(r <= 40);
            prop_assert_eq!(vol(r, n).unwrap(), BigUint::from(want));
        }

        #[test]
        fn vol_entropy_bound(n in 2u64..400, r in 1u64..200) {
            prop_assume!(2 * r <= n);
            let v = log2_big(&vol(r, n).unwrap());
            prop_assert!(v <= h2(r as f64 / n as f64) * n as f64 + 1e-9);
        }

        #[test]
        fn exact_and_log2_agree(n in 1u64..300, d in 1u64..300) {
            prop_assume!(d <= n);
            for b in [hamming_upper(n, d).unwrap(), singleton_upper(n, d).unwrap(), plotkin_upper(n, d).unwrap()] {
                let e = log2_big(b.value_exact.as_ref().unwrap());
                prop_assert!((e - b.value_log2).abs() <= 1e-9 * b.value_log2.max(1.0));
            }
        }

        #[test]
        fn gv_below_hamming(n in 2u64..200, d in 1u64..100) {
            prop_assume!(2 * d <= n);
            let lo = gv_lower(n, d).unwrap().value_exact.unwrap();
            let hi = hamming_upper(n, d).unwrap().value_exact.unwrap();
            prop_assert!(lo <= hi);
        }
    }
}
