use serde::Serialize;

use super::{g, h2, j2};
use crate::error::{Error, Result};

/// Points in the coarse scan that seeds the second LP bound minimization.
pub const MRRW_GRID_POINTS: usize = 1001;

const GOLDEN_TOLERANCE: f64 = 1e-10;

/// Rate upper bounds at relative distance `delta`, with `o(1)` dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBounds {
    pub delta: f64,
    /// Elias-Bassalygo, `1 - H2(J2(delta))`.
    pub eb: f64,
    /// First LP bound, `H2(1/2 - sqrt(delta (1 - delta)))`.
    pub mrrw1: f64,
    /// Second LP bound, minimized over `0 <= u <= 1 - 2 delta`.
    pub mrrw2: f64,
    /// Minimizing `u` for `mrrw2`.
    pub mrrw2_argmin: f64,
}

fn second_lp_objective(delta: f64, u: f64) -> f64 {
    1.0 + g(u * u) - g(u * u + 2.0 * delta * u + 2.0 * delta)
}

pub fn rate_bounds(delta: f64) -> Result<RateBounds> {
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::OutOfRange(format!(
            "delta must lie in (0, 1/2], got {delta}"
        )));
    }
    let eb = 1.0 - h2(j2(delta));
    let mrrw1 = h2(0.5 - (delta * (1.0 - delta)).sqrt());

    let hi = 1.0 - 2.0 * delta;
    let f = |u: f64| second_lp_objective(delta, u);
    let step = hi / (MRRW_GRID_POINTS - 1) as f64;
    let mut best = 0;
    let mut best_value = f(0.0);
    for i in 1..MRRW_GRID_POINTS {
        let v = f(i as f64 * step);
        if v < best_value {
            best = i;
            best_value = v;
        }
    }
    let (mut a, mut b) = (
        best.saturating_sub(1) as f64 * step,
        ((best + 1) as f64 * step).min(hi),
    );
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOLERANCE {
        // ties move toward smaller u
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let mut argmin = 0.5 * (a + b);
    let mut mrrw2 = f(argmin);
    if best_value < mrrw2 {
        argmin = best as f64 * step;
        mrrw2 = best_value;
    }
    Ok(RateBounds {
        delta,
        eb,
        mrrw1,
        mrrw2,
        mrrw2_argmin: argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn half_distance_is_zero_rate() {
        let b = rate_bounds(0.5).unwrap();
        assert_eq!(b.eb, 0.0);
        assert_eq!(b.mrrw1, 0.0);
        assert!(b.mrrw2.abs() < 1e-12);
    }

    #[test]
    fn second_bound_matches_first_above_0_273() {
        for delta in [0.28, 0.3, 0.35, 0.4, 0.45, 0.5] {
            let b = rate_bounds(delta).unwrap();
            assert!((b.mrrw1 - b.mrrw2).abs() < 1e-6, "{delta}: {b:?}");
        }
    }

    #[test]
    fn second_bound_strictly_tighter_at_0_1() {
        let b = rate_bounds(0.1).unwrap();
        assert!(b.mrrw2 < b.mrrw1 - 1e-3, "{b:?}");
    }

    #[test]
    fn known_values() {
        // H2(0.5 - sqrt(0.09)) = H2(0.2)
        let b = rate_bounds(0.1).unwrap();
        assert!((b.mrrw1 - h2(0.2)).abs() < 1e-15);
        assert!((b.eb - (1.0 - h2(j2(0.1)))).abs() < 1e-15);
        assert!(rate_bounds(0.0).is_err());
        assert!(rate_bounds(0.6).is_err());
    }

    proptest! {
        #[test]
        fn mrrw2_never_above_mrrw1(delta in 1e-4f64..=0.5) {
            let b = rate_bounds(delta).unwrap();
            prop_assert!(b.mrrw2 <= b.mrrw1 + 1e-9);
            prop_assert!(b.eb <= 1.0 - h2(delta / 2.0) + 1e-12);
            prop_assert!((0.0..=1.0 - 2.0 * delta + 1e-12).contains(&b.mrrw2_argmin));
        }
    }
}
