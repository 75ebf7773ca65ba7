//! The maximum modulus of the reduced family
//! `r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}` as a function of `t`.
//!
//! Derivatives are those of the squared modulus `f*(t)²`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxmod::find_max_reduced;
use crate::spectrum::ReducedForm;

pub const DEFAULT_SWEEP_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub tau: f64,
    pub t: f64,
    pub fstar: f64,
    /// `fstar / |r1 + r2 e^{it} + r3|`.
    pub ratio: f64,
    /// `cos(τ/2D)`.
    pub bound: f64,
}

/// One-sided derivatives of `f*(t)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneSidedSlope {
    /// Right derivative: max of `∂f/∂t` over the maximum points.
    pub forward: f64,
    /// Left derivative: min of `∂f/∂t` over the maximum points.
    pub backward: f64,
    /// `t` is `0` or `π/(k+l)`, where `f*` is not differentiable in general.
    pub at_endpoint: bool,
}

impl OneSidedSlope {
    pub fn is_differentiable(&self, tol: f64) -> bool {
        (self.forward - self.backward).abs() <= tol * self.forward.abs().max(self.backward.abs()).max(1.0)
    }
}

/// Folds `t` into `[0, π/(k+l)]` using evenness and `2π/(k+l)`-periodicity.
pub fn fold_t(k: u64, l: u64, t: f64) -> f64 {
    let p = TAU / (k + l) as f64;
    let u = t.rem_euclid(p);
    if u > p / 2.0 {
        p - u
    } else {
        u
    }
}

fn family(k: u64, l: u64, r: [f64; 3], t: f64) -> Result<ReducedForm> {
    if !t.is_finite() {
        return Err(Error::NonFinite { what: "t", value: t });
    }
    Ok(ReducedForm::normalized(k, l, r[0], r[1], r[2], fold_t(k, l, t))?.0)
}

/// Maximum modulus of the reduced family at `t` (any real; folded first).
pub fn fstar(k: u64, l: u64, r: [f64; 3], t: f64) -> Result<f64> {
    Ok(find_max_reduced(&family(k, l, r, t)?)?.value())
}

/// Derivatives of `f*(t)²` at `t ∈ [0, π/(k+l)]` from the expansion over the
/// maximum points: `∂f/∂t = -2 r2 (r1 sin(t + kx) + r3 sin(t - lx))`.
pub fn chebotarev_derivative(k: u64, l: u64, r: [f64; 3], t: f64) -> Result<OneSidedSlope> {
    let top = PI / (k + l) as f64;
    if !(0.0..=top + crate::spectrum::TIE_TOLERANCE).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, {top}]")));
    }
    let form = family(k, l, r, t)?;
    let res = find_max_reduced(&form)?;
    let (kf, lf) = (form.k as f64, form.l as f64);
    let slopes = res.points.iter().map(|p| {
        -2.0 * form.r2 * (form.r1 * (form.t + kf * p.x).sin() + form.r3 * (form.t - lf * p.x).sin())
    });
    let (forward, backward) = slopes.fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), s| {
        (hi.max(s), lo.min(s))
    });
    Ok(OneSidedSlope { forward, backward, at_endpoint: form.t == 0.0 || form.symmetric })
}

/// `|r1 + r2 e^{it} + r3|`, the modulus at `x = 0`.
pub fn value_at_zero(r: [f64; 3], t: f64) -> f64 {
    (Complex64::new(r[0] + r[2], 0.0) + Complex64::from_polar(r[1], t)).norm()
}

/// `f*(t) / |r1 + r2 e^{it} + r3|`.
pub fn ratio_gstar(k: u64, l: u64, r: [f64; 3], t: f64) -> Result<f64> {
    let t = fold_t(k, l, t);
    Ok(fstar(k, l, r, t)? / value_at_zero(r, t))
}

/// `cos(τ/2D) / cos(τ'/2D)`.
pub fn bound_ratio_th4(tau: f64, tau_prime: f64, d: u64) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("D must be at least 2, got {d}")));
    }
    if !(0.0..=PI).contains(&tau) || !(0.0..=PI).contains(&tau_prime) {
        return Err(Error::InvalidArgument("τ and τ' must lie in [0, π]".into()));
    }
    if tau <= tau_prime {
        return Err(Error::InvalidArgument(format!("need τ' < τ, got τ = {tau}, τ' = {tau_prime}")));
    }
    let dd = 2.0 * d as f64;
    Ok((tau / dd).cos() / (tau_prime / dd).cos())
}

/// `(f*(t) / (r1 + r2 + r3), cos(t/2))`.
pub fn lower_bound_th3(k: u64, l: u64, r: [f64; 3], t: f64) -> Result<(f64, f64)> {
    let t = fold_t(k, l, t);
    let lhs = fstar(k, l, r, t)? / (r[0] + r[1] + r[2]);
    Ok((lhs, (t / 2.0).cos()))
}

/// Rows at `n` uniform values of `τ` in `[0, π]`, endpoints included.
pub fn sweep(k: u64, l: u64, r: [f64; 3], n: usize) -> Result<Vec<SweepRow>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sweep needs at least 2 points, got {n}")));
    }
    let dq = (k + l) as f64;
    // validate once up front so rows cannot fail for unrelated reasons
    family(k, l, r, 0.0)?;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let tau = PI * i as f64 / (n - 1) as f64;
            let t = tau / dq;
            let fstar = fstar(k, l, r, t)?;
            Ok(SweepRow {
                tau,
                t,
                fstar,
                ratio: fstar / value_at_zero(r, t),
                bound: (tau / (2.0 * dq)).cos(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn fstar_examples() {
        assert!((fstar(2, 3, [0.3, 1.0, 0.8], 0.0).unwrap() - 2.1).abs() < 1e-14);
        assert!((fstar(1, 1, [1.0, 2.0, 1.0], FRAC_PI_2).unwrap() - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn fstar_even_and_periodic() {
        let r = [0.6, 1.1, 0.9];
        let a = fstar(2, 3, r, 0.3).unwrap();
        assert!((fstar(2, 3, r, -0.3).unwrap() - a).abs() < 1e-12);
        assert!((fstar(2, 3, r, 0.3 + TAU / 5.0).unwrap() - a).abs() < 1e-12);
    }

    #[test]
    fn ratio_constant_when_balanced() {
        for i in 0..=10 {
            let t = FRAC_PI_2 * i as f64 / 10.0;
            assert!((ratio_gstar(1, 1, [1.0, 2.0, 1.0], t).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_increases_when_unbalanced() {
        let mut prev = 0.0;
        for i in 0..=16 {
            let t = PI / 3.0 * i as f64 / 16.0;
            let g = ratio_gstar(1, 2, [1.0, 1.0, 1.0], t).unwrap();
            assert!(g >= 1.0 - 1e-15);
            if i > 0 {
                assert!(g > prev);
            }
            prev = g;
        }
    }

    #[test]
    fn cos_ratio_examples() {
        assert!((bound_ratio_th4(PI, 0.0, 2).unwrap() - FRAC_PI_4.cos()).abs() < 1e-15);
        assert!(bound_ratio_th4(1.0, 1.0, 3).is_err());
        assert!(bound_ratio_th4(1.0, 0.5, 1).is_err());
        assert!((bound_ratio_th4(1.0 + 1e-9, 1.0, 3).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lower_bound_examples() {
        let (lhs, b) = lower_bound_th3(2, 3, [1.0, 1.0, 1.0], 0.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
        for t in [0.1, 0.3, 0.5, PI / 5.0] {
            let (lhs, b) = lower_bound_th3(2, 3, [3.0, 5.0, 2.0], t).unwrap();
            assert!((lhs - b).abs() < 1e-10);
        }
        let (lhs, b) = lower_bound_th3(1, 2, [1.0, 1.0, 1.0], PI / 6.0).unwrap();
        assert!(lhs > b + 1e-6);
    }

    #[test]
    fn derivative_matches_differences() {
        let r = [0.7, 1.2, 1.5];
        let h = 1e-6;
        for t in [0.2, 0.4, 0.6] {
            let s = chebotarev_derivative(2, 3, r, t).unwrap();
            assert!(s.is_differentiable(1e-12));
            assert!(s.forward < 0.0);
            let fd = (fstar(2, 3, r, t + h).unwrap().powi(2) - fstar(2, 3, r, t - h).unwrap().powi(2)) / (2.0 * h);
            assert!((fd - s.forward).abs() <= 1e-5 * s.forward.abs(), "{fd} {:?}", s);
        }
    }

    #[test]
    fn derivative_at_symmetric_endpoint() {
        let r = [0.7, 1.2, 1.5];
        let top = PI / 5.0;
        let s = chebotarev_derivative(2, 3, r, top).unwrap();
        assert!(s.at_endpoint);
        let h = 1e-6;
        let left = (fstar(2, 3, r, top).unwrap().powi(2) - fstar(2, 3, r, top - h).unwrap().powi(2)) / h;
        assert!((left - s.backward).abs() <= 1e-4 * s.backward.abs());
        assert!((s.forward + s.backward).abs() <= 1e-9 * s.forward.abs());
    }

    #[test]
    fn sweep_rows_decrease() {
        let rows = sweep(1, 2, [0.5, 1.0, 2.0], DEFAULT_SWEEP_POINTS).unwrap();
        assert_eq!(rows.len(), 64);
        assert!((rows[63].tau - PI).abs() < 1e-15);
        for w in rows.windows(2) {
            assert!(w[1].fstar < w[0].fstar);
        }
        for row in &rows {
            assert!(row.ratio >= 1.0 - 1e-15);
        }
    }
}
