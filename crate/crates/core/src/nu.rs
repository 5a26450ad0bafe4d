//! The concentration value ν(k, n) and the intervals it predicts.
//!
//! `ν(k, n)` is the unique positive zero of
//!
//! ```text
//! f(x) = x·ln k + x − (x + 1/2)·ln x − (x − 1)·ln n
//! ```
//!
//! where `n` is the number of bins and `k` the number of balls. `f` is
//! positive on `(0, 1]` and strictly concave on `[1, ∞)`, so the zero is
//! bracketed by `[1, x_hi]` as soon as `f(x_hi) < 0`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};

/// Default bisection width in `x`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A `(bins, balls)` pair for which ν is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationQuery {
    pub n_bins: u64,
    pub n_balls: u64,
}

impl ConcentrationQuery {
    pub fn new(n_bins: u64, n_balls: u64) -> Result<Self> {
        if n_bins == 0 || n_balls == 0 {
            return Err(domain(format!(
                "bins and balls must be positive, got n={n_bins}, k={n_balls}"
            )));
        }
        Ok(Self { n_bins, n_balls })
    }

    fn logs(&self) -> (f64, f64) {
        ((self.n_balls as f64).ln(), (self.n_bins as f64).ln())
    }
}

/// Evaluates `f_{n,k}(x)` in natural logarithms.
pub fn f_eval(x: f64, q: ConcentrationQuery) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(domain(format!("f is defined for x > 0, got {x}")));
    }
    let (ln_k, ln_n) = q.logs();
    Ok(f_unchecked(x, ln_k, ln_n))
}

#[inline]
fn f_unchecked(x: f64, ln_k: f64, ln_n: f64) -> f64 {
    x * ln_k + x - (x + 0.5) * x.ln() - (x - 1.0) * ln_n
}

/// Solves `f_{n,k}(x) = 0` by bracketed bisection.
///
/// The bracket starts at `[1, 2]` and its upper end doubles until `f` turns
/// negative. Bisection stops once the bracket is at most `tol` wide (or
/// cannot shrink further in `f64`); the midpoint is returned.
///
/// # Panics
///
/// Panics if `tol` is not a positive finite number.
pub fn nu(q: ConcentrationQuery, tol: f64) -> f64 {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive, got {tol}");
    let (ln_k, ln_n) = q.logs();
    let f = |x: f64| f_unchecked(x, ln_k, ln_n);

    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    loop {
        let v = f(hi);
        if v < 0.0 {
            break;
        }
        if v == 0.0 {
            return hi;
        }
        lo = hi;
        hi *= 2.0;
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v > 0.0 {
            lo = mid;
        } else if v < 0.0 {
            hi = mid;
        } else {
            return mid;
        }
    }
    0.5 * (lo + hi)
}

/// `ν̂(n) = ν(n, n)`.
pub fn nu_hat(n: u64, tol: f64) -> Result<f64> {
    Ok(nu(ConcentrationQuery::new(n, n)?, tol))
}

/// Density regimes above the critical window, each carrying its own
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    /// `m = n/2 + s` with `s > 0`.
    Supercritical { s: i64 },
    /// `m = d·n/2` with `d ∈ (1, 2)`.
    Intermediate { d: f64 },
    /// `m = n + t` with `t < 0`.
    BelowN { t: i64 },
    /// `m = n + t` with `t⁵/n³` bounded.
    CriticalT { t: i64 },
    /// `m = n + t` with `t > 0`.
    AboveN { t: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub n: u64,
    #[serde(flatten)]
    pub regime: Regime,
}

impl RegimeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("regime requires n ≥ 1"));
        }
        match self.regime {
            Regime::Supercritical { s } if s <= 0 => {
                Err(invalid(format!("supercritical regime requires s > 0, got {s}")))
            }
            Regime::Intermediate { d } if !(d > 1.0 && d < 2.0) => {
                Err(invalid(format!("intermediate regime requires d in (1,2), got {d}")))
            }
            Regime::BelowN { t } if t >= 0 => {
                Err(invalid(format!("below-n regime requires t < 0, got {t}")))
            }
            Regime::AboveN { t } if t <= 0 => {
                Err(invalid(format!("above-n regime requires t > 0, got {t}")))
            }
            _ => Ok(()),
        }
    }
}

/// Returns `(N_L, N_R)`, the orders of the largest component and of the rest.
pub fn regime_parameters(spec: &RegimeSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    let n = spec.n as f64;
    Ok(match spec.regime {
        Regime::Supercritical { s } => (s as f64, n),
        Regime::Intermediate { .. } => (n, n),
        Regime::BelowN { t } => (n, (t as f64).abs()),
        Regime::CriticalT { .. } => (n, n.powf(0.6)),
        Regime::AboveN { t } => (n, n.powf(1.5) * (t as f64).powf(-1.5)),
    })
}

/// Interval `[⌊ν − ε⌋, ⌊ν + ε⌋]` together with the two-point anchor
/// `⌊ν − 1/3⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedInterval {
    pub lo: i64,
    pub hi: i64,
    pub delta_star: i64,
}

/// Predicted maximum degree window for `m` edges on `n` vertices in the
/// sparse regime, using `ν(n, 2m)`.
pub fn predicted_interval_sparse(n: u64, m: u64, eps: f64, tol: f64) -> Result<PredictedInterval> {
    if m == 0 {
        return Err(domain("sparse prediction requires m ≥ 1"));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(domain(format!("eps must be non-negative, got {eps}")));
    }
    let v = nu(ConcentrationQuery::new(n, 2 * m)?, tol);
    Ok(PredictedInterval {
        lo: (v - eps).floor() as i64,
        hi: (v + eps).floor() as i64,
        delta_star: (v - 1.0 / 3.0).floor() as i64,
    })
}

/// `Δ* = max(⌊ν̂(⌈N_L⌉) + 2/3⌋, ⌊ν̂(⌈N_R⌉) − 1/3⌋)`.
pub fn predicted_two_point(spec: &RegimeSpec, tol: f64) -> Result<i64> {
    let (n_l, n_r) = regime_parameters(spec)?;
    let round_up = |x: f64| (x.ceil() as u64).max(1);
    let left = nu_hat(round_up(n_l), tol)?;
    let right = nu_hat(round_up(n_r), tol)?;
    Ok(((left + 2.0 / 3.0).floor() as i64).max((right - 1.0 / 3.0).floor() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, k: u64) -> ConcentrationQuery {
        ConcentrationQuery::new(n, k).unwrap()
    }

    #[test]
    fn f_at_one_is_ln_k_plus_one() {
        let v = f_eval(1.0, q(100, 5)).unwrap();
        assert!((v - (5f64.ln() + 1.0)).abs() < 1e-12);
        assert!((v - 2.6094).abs() < 1e-4);
    }

    #[test]
    fn f_sign_change_between_nine_and_ten() {
        let query = q(1_000_000, 1_000_000);
        let ln = (1e6f64).ln();
        let at9 = f_eval(9.0, query).unwrap();
        let at10 = f_eval(10.0, query).unwrap();
        assert!((at9 - (ln + 9.0 - 9.5 * 9f64.ln())).abs() < 1e-12);
        assert!((at10 - (ln + 10.0 - 10.5 * 10f64.ln())).abs() < 1e-12);
        assert!(at9 > 0.0);
        assert!(at10 < 0.0);
    }

    #[test]
    fn f_rejects_non_positive_x() {
        assert!(f_eval(0.0, q(10, 10)).is_err());
        assert!(f_eval(-1.0, q(10, 10)).is_err());
        assert!(f_eval(f64::NAN, q(10, 10)).is_err());
    }

    #[test]
    fn query_rejects_zero() {
        assert!(ConcentrationQuery::new(0, 1).is_err());
        assert!(ConcentrationQuery::new(1, 0).is_err());
    }

    #[test]
    fn nu_examples() {
        let v = nu(q(1_000_000, 1_000_000), DEFAULT_TOL);
        assert!(v > 9.0 && v < 10.0, "{v}");
        let small = nu(q(1_000_000, 100), DEFAULT_TOL);
        assert!(small > 1.0 && small < 5.0 / 3.0, "{small}");
        assert_eq!(nu_hat(1_000_000, DEFAULT_TOL).unwrap(), v);
    }

    #[test]
    fn nu_of_single_bin_single_ball() {
        // f(x) = x − (x + 1/2) ln x, zero near 2.
        let v = nu(q(1, 1), DEFAULT_TOL);
        assert!(v > 1.0);
        assert!(f_eval(v, q(1, 1)).unwrap().abs() < 1e-8);
    }

    #[test]
    fn regime_table() {
        let b = RegimeSpec { n: 100_000, regime: Regime::Intermediate { d: 1.5 } };
        assert_eq!(regime_parameters(&b).unwrap(), (1e5, 1e5));
        let a = RegimeSpec { n: 1_000_000, regime: Regime::Supercritical { s: 100_000 } };
        assert_eq!(regime_parameters(&a).unwrap(), (1e5, 1e6));
        let e = RegimeSpec { n: 1_000_000, regime: Regime::AboveN { t: 10_000 } };
        let (l, r) = regime_parameters(&e).unwrap();
        assert_eq!(l, 1e6);
        assert!((r - 1e3).abs() < 1e-9, "{r}");
        let c = RegimeSpec { n: 1_000_000, regime: Regime::BelowN { t: -100_000 } };
        assert_eq!(regime_parameters(&c).unwrap(), (1e6, 1e5));
        let d = RegimeSpec { n: 100_000, regime: Regime::CriticalT { t: 3 } };
        let (_, r) = regime_parameters(&d).unwrap();
        assert!((r - 1e3).abs() < 1e-9);
    }

    #[test]
    fn regime_sign_checks() {
        for bad in [
            Regime::Supercritical { s: 0 },
            Regime::Intermediate { d: 2.0 },
            Regime::BelowN { t: 5 },
            Regime::AboveN { t: -5 },
        ] {
            assert!(regime_parameters(&RegimeSpec { n: 1000, regime: bad }).is_err());
        }
    }

    #[test]
    fn sparse_interval_degenerate_eps() {
        let p = predicted_interval_sparse(1_000_000, 500_000, 0.0, DEFAULT_TOL).unwrap();
        let v = nu(q(1_000_000, 1_000_000), DEFAULT_TOL);
        assert_eq!(p.lo, v.floor() as i64);
        assert_eq!(p.lo, p.hi);
        let third = predicted_interval_sparse(1_000_000, 500_000, 1.0 / 3.0, DEFAULT_TOL).unwrap();
        assert_eq!(third.delta_star, (v - 1.0 / 3.0).floor() as i64);
        assert!(third.hi - third.lo <= 1);
    }

    #[test]
    fn two_point_intermediate_ignores_d() {
        let n = 100_000;
        let expect = (nu_hat(n, DEFAULT_TOL).unwrap() + 2.0 / 3.0).floor() as i64;
        for d in [1.1, 1.5, 1.9] {
            let spec = RegimeSpec { n, regime: Regime::Intermediate { d } };
            assert_eq!(predicted_two_point(&spec, DEFAULT_TOL).unwrap(), expect);
        }
        let boundary = RegimeSpec { n, regime: Regime::Supercritical { s: n as i64 } };
        assert_eq!(predicted_two_point(&boundary, DEFAULT_TOL).unwrap(), expect);
    }

    #[test]
    fn two_point_below_n_uses_both_scales() {
        let spec = RegimeSpec { n: 1_000_000, regime: Regime::BelowN { t: -100_000 } };
        let left = nu_hat(1_000_000, DEFAULT_TOL).unwrap();
        let right = nu_hat(100_000, DEFAULT_TOL).unwrap();
        let expect = ((left + 2.0 / 3.0).floor() as i64).max((right - 1.0 / 3.0).floor() as i64);
        assert_eq!(predicted_two_point(&spec, DEFAULT_TOL).unwrap(), expect);
    }
}
