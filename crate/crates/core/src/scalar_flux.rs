//! Scalar flux models.
//!
//! A [`FluxModel`] provides `f`, `f'`, a bound on `|f'|` over an interval and
//! the stationary points of `f(u) - s u`. The last one is what makes the
//! interval extremum used by the Godunov solution exact: the extremum of a
//! smooth function over `[lo, hi]` is attained either at an endpoint or at an
//! interior point where `f'(u) = s`.

use arrayvec::ArrayVec;

use crate::error::{ensure_finite, LtsError, Result};

/// Upper bound on the number of interior stationary points a model may report.
pub const MAX_STATIONARY_POINTS: usize = 4;

pub type StationaryPoints = ArrayVec<f64, MAX_STATIONARY_POINTS>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    /// Selection rule of the Osher solution: min for `u_L < u_R`, max otherwise
    /// (including the tie `u_L = u_R`).
    pub fn for_pair(u_left: f64, u_right: f64) -> Self {
        if u_left < u_right {
            Extremum::Min
        } else {
            Extremum::Max
        }
    }

    fn pick(self, a: f64, b: f64) -> f64 {
        match self {
            Extremum::Min => a.min(b),
            Extremum::Max => a.max(b),
        }
    }
}

pub trait FluxModel: Send + Sync {
    fn eval(&self, u: f64) -> f64;

    fn deriv(&self, u: f64) -> f64;

    /// Points strictly inside `(lo, hi)` where `f'(u) = s`.
    fn stationary_points(&self, s: f64, lo: f64, hi: f64) -> StationaryPoints;

    /// An upper bound of `|f'(u)|` over `[lo, hi]`.
    fn wavespeed_bound(&self, lo: f64, hi: f64) -> f64;

    /// Exact extremum of `f(u) - s u` over `[lo, hi]`.
    fn extremum(&self, s: f64, lo: f64, hi: f64, mode: Extremum) -> f64 {
        let g = |u: f64| self.eval(u) - s * u;
        let mut best = mode.pick(g(lo), g(hi));
        for u in self.stationary_points(s, lo, hi) {
            best = mode.pick(best, g(u));
        }
        best
    }
}

/// Inviscid Burgers flux `f(u) = u²/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Burgers;

impl FluxModel for Burgers {
    fn eval(&self, u: f64) -> f64 {
        0.5 * u * u
    }

    fn deriv(&self, u: f64) -> f64 {
        u
    }

    fn stationary_points(&self, s: f64, lo: f64, hi: f64) -> StationaryPoints {
        let mut points = StationaryPoints::new();
        if lo < s && s < hi {
            points.push(s);
        }
        points
    }

    fn wavespeed_bound(&self, lo: f64, hi: f64) -> f64 {
        lo.abs().max(hi.abs())
    }
}

/// Linear advection `f(u) = a u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Advection {
    pub speed: f64,
}

impl Advection {
    pub fn new(speed: f64) -> Self {
        Self { speed }
    }
}

impl FluxModel for Advection {
    fn eval(&self, u: f64) -> f64 {
        self.speed * u
    }

    fn deriv(&self, _u: f64) -> f64 {
        self.speed
    }

    // f(u) - s u is linear, so the endpoints always suffice.
    fn stationary_points(&self, _s: f64, _lo: f64, _hi: f64) -> StationaryPoints {
        StationaryPoints::new()
    }

    fn wavespeed_bound(&self, _lo: f64, _hi: f64) -> f64 {
        self.speed.abs()
    }
}

/// Signed local interface Courant number. The derivative branch is taken only
/// on exact equality `u_L == u_R`.
pub fn local_courant<M: FluxModel + ?Sized>(
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
) -> Result<f64> {
    ensure_finite(u_left, "u_L")?;
    ensure_finite(u_right, "u_R")?;
    ensure_finite(ratio, "dt/dx")?;
    if ratio <= 0.0 {
        return Err(LtsError::InvalidParameter(format!(
            "dt/dx must be positive, got {ratio}"
        )));
    }
    ensure_finite(courant_unchecked(model, u_left, u_right, ratio), "courant number")
}

pub(crate) fn courant_unchecked<M: FluxModel + ?Sized>(
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
) -> f64 {
    #[allow(clippy::float_cmp)]
    if u_left == u_right {
        ratio * model.deriv(u_left)
    } else {
        ratio * (model.eval(u_right) - model.eval(u_left)) / (u_right - u_left)
    }
}

/// Extremum of `f(u) - s u` over `[lo, hi]`.
pub fn osher_extremum<M: FluxModel + ?Sized>(
    model: &M,
    s: f64,
    lo: f64,
    hi: f64,
    mode: Extremum,
) -> Result<f64> {
    ensure_finite(s, "slope")?;
    ensure_finite(lo, "interval start")?;
    ensure_finite(hi, "interval end")?;
    if lo > hi {
        return Err(LtsError::InvalidParameter(format!(
            "empty interval [{lo}, {hi}]"
        )));
    }
    Ok(model.extremum(s, lo, hi, mode))
}

/// Largest characteristic speed over the hulls of all adjacent pairs.
pub fn max_wavespeed<M: FluxModel + ?Sized>(model: &M, states: &[f64]) -> Result<f64> {
    match states {
        [] => Err(LtsError::EmptyStates),
        [u] => Ok(model.wavespeed_bound(*u, *u)),
        _ => Ok(states
            .windows(2)
            .map(|w| model.wavespeed_bound(w[0].min(w[1]), w[0].max(w[1])))
            .fold(0.0, f64::max)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn courant_examples() {
        assert_eq!(local_courant(&Burgers, 1.0, 2.0, 1.0).unwrap(), 1.5);
        assert_eq!(local_courant(&Advection::new(1.0), -3.0, 4.0, 0.7).unwrap(), 0.7);
        assert_eq!(local_courant(&Burgers, 3.0, 3.0, 1.0).unwrap(), 3.0);
    }

    #[test]
    fn courant_rejects_bad_input() {
        assert!(local_courant(&Burgers, f64::NAN, 1.0, 1.0).is_err());
        assert!(local_courant(&Burgers, 0.0, f64::INFINITY, 1.0).is_err());
        assert!(local_courant(&Burgers, 0.0, 1.0, 0.0).is_err());
        assert!(local_courant(&Burgers, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn extremum_examples() {
        let v = osher_extremum(&Burgers, 0.5, 0.0, 1.0, Extremum::Min).unwrap();
        assert!((v + 0.125).abs() < 1e-15);
        assert_eq!(osher_extremum(&Burgers, 0.0, -1.0, 1.0, Extremum::Min).unwrap(), 0.0);
        assert_eq!(osher_extremum(&Burgers, 0.0, -1.0, 1.0, Extremum::Max).unwrap(), 0.5);
        let a = 0.8;
        for s in [-2.0, 0.3, 5.0] {
            for mode in [Extremum::Min, Extremum::Max] {
                let v = osher_extremum(&Burgers, s, a, a, mode).unwrap();
                assert_eq!(v, 0.5 * a * a - s * a);
            }
        }
        assert!(osher_extremum(&Burgers, 0.0, 1.0, 0.0, Extremum::Min).is_err());
    }

    #[test]
    fn selection_rule_ties_to_max() {
        assert_eq!(Extremum::for_pair(0.0, 1.0), Extremum::Min);
        assert_eq!(Extremum::for_pair(1.0, 0.0), Extremum::Max);
        assert_eq!(Extremum::for_pair(1.0, 1.0), Extremum::Max);
    }

    #[test]
    fn wavespeed_examples() {
        assert_eq!(max_wavespeed(&Burgers, &[-1.0, 0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(max_wavespeed(&Advection::new(-2.0), &[0.0, 5.0, 1.0]).unwrap(), 2.0);
        assert_eq!(max_wavespeed(&Burgers, &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(max_wavespeed(&Burgers, &[-0.25]).unwrap(), 0.25);
        assert!(matches!(max_wavespeed(&Burgers, &[]), Err(LtsError::EmptyStates)));
    }

    #[test]
    fn courant_continuous_at_degenerate_pair() {
        for u in [-2.0, -0.3, 0.0, 0.7, 4.0] {
            let limit = local_courant(&Burgers, u, u, 1.3).unwrap();
            let near = local_courant(&Burgers, u, u + 1e-8, 1.3).unwrap();
            assert!((near - limit).abs() < 1e-6);
        }
    }

    fn brute_force_min(s: f64, lo: f64, hi: f64) -> (f64, f64) {
        let n = 100_000;
        let h = (hi - lo) / n as f64;
        let mut best = f64::INFINITY;
        for j in 0..=n {
            let u = lo + j as f64 * h;
            best = best.min(0.5 * u * u - s * u);
        }
        // |g'| <= max|u - s| on the interval; a half-step covers the scan error.
        let slope = (lo - s).abs().max((hi - s).abs());
        (best, slope * h)
    }

    proptest! {
        #[test]
        fn extremum_matches_scan(s in -3.0..3.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64) {
            let (lo, hi) = (a.min(b), a.max(b));
            let exact = osher_extremum(&Burgers, s, lo, hi, Extremum::Min).unwrap();
            let (scan, err) = brute_force_min(s, lo, hi);
            prop_assert!(exact <= scan + 1e-14);
            prop_assert!(scan - exact <= err + 1e-14);
        }

        #[test]
        fn extremum_brackets_samples(s in -3.0..3.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64, t in 0.0..1.0f64) {
            let (lo, hi) = (a.min(b), a.max(b));
            let u = lo + t * (hi - lo);
            let g = 0.5 * u * u - s * u;
            let min = osher_extremum(&Burgers, s, lo, hi, Extremum::Min).unwrap();
            let max = osher_extremum(&Burgers, s, lo, hi, Extremum::Max).unwrap();
            prop_assert!(min <= g + 1e-14 && g <= max + 1e-14);
            prop_assert!(Burgers.wavespeed_bound(lo, hi) >= u.abs());
        }

        #[test]
        fn burgers_courant_is_odd(a in -5.0..5.0f64, b in -5.0..5.0f64, r in 0.01..4.0f64) {
            let c = local_courant(&Burgers, a, b, r).unwrap();
            let m = local_courant(&Burgers, -a, -b, r).unwrap();
            prop_assert_eq!(c, -m);
        }
    }
}
