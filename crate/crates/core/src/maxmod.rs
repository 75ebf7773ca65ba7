//! Location and classification of maximum modulus points.
//!
//! On the reduced form `f(x) = |r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}|²` with
//! `k r1 <= l r3`, the derivative of `f` is positive then negative on
//! `[0, t/l]` and the absolute maximum lies there, so a plain bisection on
//! the sign of `f'` brackets it without any starting guess. The only cases
//! that need separate treatment are `t = 0`, `k r1 = l r3` (maximum at `0`)
//! and, for `l = 1` and `t = π/(k+1)`, the boundary point `t/l`, where the
//! maximum may have multiplicity 4.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{circular_diff, rem_period, wrap_pi};
use crate::error::{Error, Result};
use crate::spectrum::{canonical_reduction, symmetry_axis, ReducedForm, Trinomial};

const BISECTION_STEPS: usize = 60;
/// Relative tolerance of the multiplicity-4 equality `k²r1r2 + (k+1)²r1r3 = r2r3`.
pub const DEGENERATE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxClass {
    /// Unique maximum strictly inside `(0, t/l)` in reduced coordinates.
    InteriorUnique,
    /// Unique maximum at reduced `0`: `k r1 = l r3` or `t = 0`.
    AtZero,
    /// Unique maximum at reduced `t/l` (`l = 1`, `t = π/(k+1)`), multiplicity 2.
    AtBoundary,
    /// Two maximum points `x`, `y` with `x + y = s`.
    SymmetricPair,
    /// Unique maximum at reduced `t/l` with multiplicity 4.
    Degenerate4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxPoint {
    pub x: f64,
    pub value: f64,
}

/// Maximum modulus points over one period, with their structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxResult {
    /// One or two points in `[0, period)`, sorted by `x`.
    pub points: Vec<MaxPoint>,
    /// Order of the zero of `max - |T|²` at each point: 2 or 4.
    pub multiplicity: u8,
    pub classification: MaxClass,
    /// Symmetry parameter `s` (`|T(s - x)| = |T(x)|`), present iff `τ = π`.
    pub s: Option<f64>,
    pub period: f64,
}

impl MaxResult {
    /// The maximum modulus.
    pub fn value(&self) -> f64 {
        self.points.iter().map(|p| p.value).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn argmaxes(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }
}

pub fn evaluate(t: &Trinomial, x: f64) -> Complex64 {
    t.evaluate(x)
}

/// `r1² + r2² + r3² + 2(r1r2 cos(t+kx) + r1r3 cos((k+l)x) + r2r3 cos(t-lx))`.
pub fn modulus_squared_reduced(r: &ReducedForm, x: f64) -> f64 {
    let (k, l) = (r.k as f64, r.l as f64);
    r.r1 * r.r1
        + r.r2 * r.r2
        + r.r3 * r.r3
        + 2.0
            * (r.r1 * r.r2 * (r.t + k * x).cos()
                + r.r1 * r.r3 * ((k + l) * x).cos()
                + r.r2 * r.r3 * (r.t - l * x).cos())
}

/// Half the derivative of [`modulus_squared_reduced`] in `x`.
pub fn derivative_half(r: &ReducedForm, x: f64) -> f64 {
    let (k, l) = (r.k as f64, r.l as f64);
    -k * r.r1 * r.r2 * (r.t + k * x).sin() - (k + l) * r.r1 * r.r3 * ((k + l) * x).sin()
        + l * r.r2 * r.r3 * (r.t - l * x).sin()
}

/// Half the second derivative of [`modulus_squared_reduced`] in `x`.
pub fn second_derivative_half(r: &ReducedForm, x: f64) -> f64 {
    let (k, l) = (r.k as f64, r.l as f64);
    -k * k * r.r1 * r.r2 * (r.t + k * x).cos()
        - (k + l) * (k + l) * r.r1 * r.r3 * ((k + l) * x).cos()
        - l * l * r.r2 * r.r3 * (r.t - l * x).cos()
}

/// Half the `n`-th derivative of [`modulus_squared_reduced`] in `x`.
pub fn nth_derivative_half(r: &ReducedForm, x: f64, n: u32) -> f64 {
    let (k, l) = (r.k as f64, r.l as f64);
    // d^n/dx^n cos(a + bx) = b^n cos(a + bx + nπ/2)
    let term = |c: f64, a: f64, b: f64| c * b.powi(n as i32) * (a + b * x + n as f64 * FRAC_PI_2).cos();
    term(r.r1 * r.r2, r.t, k) + term(r.r1 * r.r3, 0.0, k + l) + term(r.r2 * r.r3, r.t, -l)
}

/// `[-t/k, t/l]`, which contains an absolute maximum point of the reduced form.
pub fn locate_interval(r: &ReducedForm) -> (f64, f64) {
    (-r.t / r.k as f64, r.t / r.l as f64)
}

/// `k² r1 r2 + (k+1)² r1 r3 - r2 r3` and its scale, for `l = 1`.
fn boundary_discriminant(r: &ReducedForm) -> (f64, f64) {
    let k = r.k as f64;
    let a = k * k * r.r1 * r.r2;
    let b = (k + 1.0) * (k + 1.0) * r.r1 * r.r3;
    let c = r.r2 * r.r3;
    (a + b - c, a.max(b).max(c))
}

fn point(r: &ReducedForm, x: f64) -> MaxPoint {
    let x = rem_period(x, TAU);
    MaxPoint { x, value: modulus_squared_reduced(r, x).max(0.0).sqrt() }
}

fn single(r: &ReducedForm, x: f64, multiplicity: u8, classification: MaxClass) -> MaxResult {
    MaxResult {
        points: vec![point(r, x)],
        multiplicity,
        classification,
        s: r.symmetric.then(|| r.symmetry_sum()),
        period: TAU,
    }
}

/// Maximum modulus points of a reduced form, in reduced coordinates `[0, 2π)`.
pub fn find_max_reduced(r: &ReducedForm) -> Result<MaxResult> {
    let (k, l) = (r.k as f64, r.l as f64);
    if r.t == 0.0 {
        return Ok(single(r, 0.0, 2, MaxClass::AtZero));
    }
    let hi = r.t / l;
    if r.symmetric && r.l == 1 {
        let (disc, scale) = boundary_discriminant(r);
        if disc.abs() <= DEGENERATE_TOLERANCE * scale {
            return Ok(single(r, hi, 4, MaxClass::Degenerate4));
        }
        if disc < 0.0 {
            return Ok(single(r, hi, 2, MaxClass::AtBoundary));
        }
    }

    let scale = (k + l) * (r.r1 * r.r2 + r.r1 * r.r3 + r.r2 * r.r3);
    let d_lo = derivative_half(r, 0.0);
    let d_hi = derivative_half(r, hi);
    if d_lo < -1e-12 * scale || d_hi > 1e-12 * scale {
        return Err(Error::BracketFailure { lo: 0.0, hi, dlo: d_lo, dhi: d_hi });
    }

    let x_star = if k * r.r1 >= l * r.r3 || d_lo <= 0.0 {
        0.0
    } else {
        let (mut a, mut b) = (0.0, hi);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (a + b);
            if derivative_half(r, mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut x = 0.5 * (a + b);
        let g2 = second_derivative_half(r, x);
        if g2 < 0.0 {
            let polished = x - derivative_half(r, x) / g2;
            if (a..=b).contains(&polished) {
                x = polished;
            }
        }
        x
    };

    if r.symmetric {
        let p = point(r, x_star);
        let q = point(r, r.symmetry_sum() - x_star);
        let mut points = vec![p, q];
        points.sort_by(|a, b| a.x.total_cmp(&b.x));
        return Ok(MaxResult {
            points,
            multiplicity: 2,
            classification: MaxClass::SymmetricPair,
            s: Some(r.symmetry_sum()),
            period: TAU,
        });
    }
    let class = if x_star == 0.0 { MaxClass::AtZero } else { MaxClass::InteriorUnique };
    Ok(single(r, x_star, 2, class))
}

/// Maximum modulus points of a general trinomial, reported modulo `2π/d`.
pub fn max_points_global(t: &Trinomial) -> Result<MaxResult> {
    let (red, stats, tr) = canonical_reduction(t)?;
    let local = find_max_reduced(&red)?;
    let period = stats.period();
    let mut points: Vec<MaxPoint> = local
        .points
        .iter()
        .map(|p| MaxPoint { x: tr.from_reduced(p.x), value: p.value })
        .collect();
    points.sort_by(|a, b| a.x.total_cmp(&b.x));
    let s = red.symmetric.then(|| symmetry_axis(t));
    Ok(MaxResult { points, s, period, ..local })
}

/// Interval of a general trinomial containing its maximum point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgmaxInterval {
    /// `(t̃1 - t2)/(λ2 - λ1)`.
    pub left: f64,
    /// `(t2 - t̃3)/(λ3 - λ2)`.
    pub right: f64,
    /// `(t̃1 - t̃3)/(λ3 - λ1)`, the maximum point when `τ = 0` or `r1|λ2-λ1| = r3|λ3-λ2|`.
    pub center: f64,
    /// Sub-interval selected by the sign of `r1|λ2-λ1| - r3|λ3-λ2|`.
    pub refined: (f64, f64),
    pub period: f64,
}

impl ArgmaxInterval {
    pub fn bounds(&self) -> (f64, f64) {
        (self.left.min(self.right), self.left.max(self.right))
    }

    fn holds(range: (f64, f64), x: f64, period: f64, tol: f64) -> bool {
        let (lo, hi) = (range.0.min(range.1), range.0.max(range.1));
        let mid = 0.5 * (lo + hi);
        let rep = mid + circular_diff(x, mid, period);
        rep >= lo - tol && rep <= hi + tol
    }

    /// Whether some representative of `x` modulo the period lies in the interval.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        Self::holds(self.bounds(), x, self.period, tol)
    }

    pub fn refined_contains(&self, x: f64, tol: f64) -> bool {
        Self::holds(self.refined, x, self.period, tol)
    }
}

/// The interval, bounded by the binomial maximum points, in which a trinomial
/// attains its maximum modulus, together with its refinement.
pub fn argmax_interval(t: &Trinomial) -> Result<ArgmaxInterval> {
    t.validate()?;
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| t.freqs[i]);
    let lam = order.map(|i| t.freqs[i]);
    let r = order.map(|i| t.moduli[i]);
    let ph = order.map(|i| wrap_pi(t.phases[i]));
    let a = (lam[1] - lam[0]) as f64;
    let b = (lam[2] - lam[1]) as f64;
    let d = crate::spectrum::gcd(a as u64, b as u64) as f64;
    let (k, l) = (a / d, b / d);
    let combo = -l * ph[0] + (k + l) * ph[1] - k * ph[2];
    // shift t1 by 2πa1 and t3 by 2πa3 so that the combination lands in [-π, π]
    let n = -(combo / TAU).round() as i64;
    let (a1, a3) = bezout(l as i64, k as i64, n);
    let t1 = ph[0] - TAU * a1 as f64;
    let t3 = ph[2] - TAU * a3 as f64;
    let left = (t1 - ph[1]) / a;
    let right = (ph[1] - t3) / b;
    let center = (t1 - t3) / (a + b);
    let refined = if r[0] * a <= r[2] * b { (center, right) } else { (center, left) };
    Ok(ArgmaxInterval { left, right, center, refined, period: TAU / d })
}

/// Integers `(x, y)` with `a x + b y = n`, for coprime `a`, `b`.
fn bezout(a: i64, b: i64, n: i64) -> (i64, i64) {
    // extended Euclid on (a, b)
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    debug_assert_eq!(old_r.abs(), 1);
    let sign = old_r.signum();
    (n * old_s * sign, n * old_t * sign)
}

/// Maximum of `|r1 e^{-ix} + i r2 + r3 e^{ix}|` and the points where it is attained.
pub fn closed_form_k1_l1(r1: f64, r2: f64, r3: f64) -> Result<(f64, Vec<f64>)> {
    check_moduli(r1, r2, r3)?;
    if (1.0 / r1 - 1.0 / r3).abs() < 4.0 / r2 {
        let value = (r1 + r3) * (1.0 + r2 * r2 / (4.0 * r1 * r3)).sqrt();
        let x = (r2 * (r3 - r1) / (4.0 * r1 * r3)).asin();
        let mut pts = vec![rem_period(x, TAU), rem_period(PI - x, TAU)];
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok((value, pts))
    } else {
        let x = if r1 < r3 { FRAC_PI_2 } else { 3.0 * FRAC_PI_2 };
        Ok((r2 + (r3 - r1).abs(), vec![x]))
    }
}

/// Maximum of `|r1 e^{-2ix} + r2 e^{iπ/3} + r3 e^{ix}|` and the points where it is attained.
pub fn closed_form_k2_l1(r1: f64, r2: f64, r3: f64) -> Result<(f64, Vec<f64>)> {
    check_moduli(r1, r2, r3)?;
    if 1.0 / r1 - 4.0 / r3 < 9.0 / r2 {
        let a = r2 / (3.0 * r3);
        let b = r2 / (3.0 * r1);
        let root = (a * a + b + 1.0).sqrt();
        // root - a without cancellation when r3 is small
        let diff = (b + 1.0) / (root + a);
        let cube_diff = diff * (root * root + root * a + a * a);
        let sq = r1 * r1 + 2.0 / 3.0 * r2 * r2 + r3 * r3 + r1 * r2 + 2.0 * r1 * r3 * cube_diff;
        // 2 cos(π/3 - x) = root - a
        let c = (diff / 2.0).clamp(-1.0, 1.0).acos();
        let mut pts = vec![rem_period(FRAC_PI_3 - c, TAU), rem_period(FRAC_PI_3 + c, TAU)];
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok((sq.sqrt(), pts))
    } else {
        Ok((-r1 + r2 + r3, vec![FRAC_PI_3]))
    }
}

/// `max_x |r1 e^{i(t1 + λ1 x)} + r2 e^{i(t2 + λ2 x)}| = r1 + r2`.
pub fn binomial_max(r1: f64, r2: f64) -> f64 {
    r1 + r2
}

fn check_moduli(r1: f64, r2: f64, r3: f64) -> Result<()> {
    for (index, value) in [r1, r2, r3].into_iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveModulus { index, value });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn reduced(k: u64, l: u64, r: [f64; 3], t: f64) -> ReducedForm {
        ReducedForm::new(k, l, r[0], r[1], r[2], t).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let t = Trinomial::new([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, FRAC_PI_2, 0.0]).unwrap();
        let v = evaluate(&t, 0.0);
        assert!((v - Complex64::new(2.0, 2.0)).norm() < 1e-15);
        let t = Trinomial::new([-2, 0, 1], [4.0, 1.0, 1.0], [0.0; 3]).unwrap();
        assert!((evaluate(&t, 0.0) - Complex64::new(6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn modulus_squared_examples() {
        let r = reduced(1, 2, [0.7, 1.3, 2.0], 0.0);
        assert!((modulus_squared_reduced(&r, 0.0) - 4.0f64.powi(2)).abs() < 1e-12);
        let r = reduced(1, 1, [1.0, 2.0, 1.0], FRAC_PI_2);
        assert!((modulus_squared_reduced(&r, 0.0) - 8.0).abs() < 1e-12);
        for x in [-2.0, -0.3, 0.1, 1.7, 3.0] {
            let r = reduced(3, 5, [0.4, 2.5, 1.1], 0.2);
            let direct = r.evaluate(x).norm_sqr();
            assert!((modulus_squared_reduced(&r, x) - direct).abs() < 1e-13 * direct.max(1.0));
        }
    }

    #[test]
    fn derivative_closed_values() {
        let r = reduced(2, 3, [0.5, 1.2, 0.9], 0.0);
        assert_eq!(derivative_half(&r, 0.0), 0.0);
        let t = 0.4;
        let r = reduced(2, 3, [0.5, 1.2, 0.9], t);
        let (k, l) = (2.0, 3.0);
        let expect0 = (l * r.r3 - k * r.r1) * r.r2 * t.sin();
        assert!((derivative_half(&r, 0.0) - expect0).abs() < 1e-14);
        let expect_hi = -(k * r.r1 * r.r2 + (k + l) * r.r1 * r.r3) * ((k + l) * t / l).sin();
        assert!((derivative_half(&r, t / l) - expect_hi).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let r = reduced(3, 4, [0.3, 1.7, 2.2], 0.31);
        let h = 1e-5;
        for x in [-1.0, 0.0, 0.05, 0.9, 2.5] {
            let fd = (modulus_squared_reduced(&r, x + h) - modulus_squared_reduced(&r, x - h)) / (2.0 * h);
            assert!((0.5 * fd - derivative_half(&r, x)).abs() < 1e-8);
        }
    }

    #[test]
    fn interval_examples() {
        assert_eq!(locate_interval(&reduced(1, 2, [1.0; 3], 0.0)), (0.0, 0.0));
        let (lo, hi) = locate_interval(&reduced(1, 2, [1.0; 3], PI / 6.0));
        assert!((lo + PI / 6.0).abs() < 1e-15 && (hi - PI / 12.0).abs() < 1e-15);
    }

    #[test]
    fn at_zero_when_weighted_moduli_agree() {
        let r = reduced(1, 2, [2.0, 1.0, 1.0], 0.5);
        let res = find_max_reduced(&r).unwrap();
        assert_eq!(res.classification, MaxClass::AtZero);
        assert_eq!(res.points[0].x, 0.0);
        let expect = (Complex64::new(3.0, 0.0) + Complex64::from_polar(1.0, 0.5)).norm();
        assert!((res.value() - expect).abs() < 1e-14);
    }

    #[test]
    fn extremal_function_pair() {
        let r = reduced(1, 1, [1.0, 2.0, 1.0], FRAC_PI_2);
        let res = find_max_reduced(&r).unwrap();
        assert_eq!(res.classification, MaxClass::SymmetricPair);
        assert_eq!(res.argmaxes(), vec![0.0, PI]);
        assert!((res.value() - 2.0 * SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn boundary_equality_has_multiplicity_four() {
        let r = reduced(1, 1, [1.0, 8.0, 2.0], FRAC_PI_2);
        let res = find_max_reduced(&r).unwrap();
        assert_eq!(res.classification, MaxClass::Degenerate4);
        assert_eq!(res.multiplicity, 4);
        assert!((res.value() - 9.0).abs() < 1e-13);
    }

    #[test]
    fn closed_forms_examples() {
        let (v, pts) = closed_form_k1_l1(1.0, 2.0, 1.0).unwrap();
        assert!((v - 2.0 * SQRT_2).abs() < 1e-15);
        assert_eq!(pts, vec![0.0, PI]);
        let (v, _) = closed_form_k1_l1(1.0, 1.0, 1.0).unwrap();
        assert!((v - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(closed_form_k1_l1(1.0, 8.0, 2.0).unwrap().0, 9.0);
        let (v, _) = closed_form_k2_l1(1.0, 3.0, 1.0).unwrap();
        assert!((v * v - (9.0 + 6.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((closed_form_k2_l1(0.01, 1.0, 1.0).unwrap().0 - 1.99).abs() < 1e-15);
        assert!(closed_form_k2_l1(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn binomial() {
        assert_eq!(binomial_max(1.0, 1.0), 2.0);
        assert_eq!(binomial_max(2.0, 3.0), 5.0);
        assert_eq!(binomial_max(0.5, 0.5), 1.0);
    }
}
