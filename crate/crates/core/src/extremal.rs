//! Exposed and extreme points of the unit ball of trinomials on a fixed
//! spectrum, and the determination of an extremal trinomial from its values
//! at two maximum points.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::circular_diff;
use crate::error::{Error, Result};
use crate::maxmod::max_points_global;
use crate::oracle::golden_section_max;
use crate::spectrum::{check_distinct, gcd, Trinomial};

/// Coefficients below this fraction of the largest modulus count as zero.
const ZERO_COEFFICIENT: f64 = 1e-12;
/// Accepted deviation of the sup norm from 1.
const NORMALIZATION_TOLERANCE: f64 = 1e-6;
const SAMPLES_PER_PERIOD: usize = 4096;
/// Second derivative threshold, relative to `(Σr)² (max Δλ)²`.
const FLATNESS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    Monomial,
    Binomial,
    Trinomial,
}

/// A trigonometric polynomial on a three-element spectrum, possibly with
/// vanishing coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitBallPoint {
    pub kind: PointKind,
    pub freqs: [i64; 3],
    pub moduli: [f64; 3],
    pub phases: [f64; 3],
    pub sup_norm: f64,
}

impl UnitBallPoint {
    pub fn new(freqs: [i64; 3], moduli: [f64; 3], phases: [f64; 3]) -> Result<Self> {
        check_distinct(freqs)?;
        for (index, &value) in moduli.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::NonPositiveModulus { index, value });
            }
        }
        for &value in &phases {
            if !value.is_finite() {
                return Err(Error::NonFinite { what: "phase", value });
            }
        }
        let top = moduli.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            return Err(Error::InvalidArgument("all coefficients vanish".into()));
        }
        let mut moduli = moduli;
        for r in moduli.iter_mut() {
            if *r < ZERO_COEFFICIENT * top {
                *r = 0.0;
            }
        }
        let nonzero = moduli.iter().filter(|&&r| r > 0.0).count();
        let (kind, sup_norm) = match nonzero {
            1 => (PointKind::Monomial, top),
            2 => (PointKind::Binomial, moduli.iter().sum()),
            _ => {
                let t = Trinomial::new(freqs, moduli, phases)?;
                (PointKind::Trinomial, max_points_global(&t)?.value())
            }
        };
        Ok(UnitBallPoint { kind, freqs, moduli, phases, sup_norm })
    }

    /// The point scaled to sup norm 1.
    pub fn normalized(&self) -> Self {
        UnitBallPoint {
            moduli: self.moduli.map(|r| r / self.sup_norm),
            sup_norm: 1.0,
            ..self.clone()
        }
    }

    pub fn as_trinomial(&self) -> Option<Trinomial> {
        (self.kind == PointKind::Trinomial).then_some(Trinomial {
            freqs: self.freqs,
            moduli: self.moduli,
            phases: self.phases,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Maximum points modulo `2π/d`; `None` for monomials, whose modulus is constant.
    pub max_point_count: Option<usize>,
    /// Total multiplicity of the zeros of `1 - |P|²` over one period.
    pub zero_multiplicity_sum: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalClass {
    pub exposed: bool,
    pub extreme: bool,
    pub evidence: Evidence,
}

pub fn classify_unit_ball_point(p: &UnitBallPoint) -> Result<ExtremalClass> {
    if (p.sup_norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(p.sup_norm));
    }
    match p.kind {
        PointKind::Monomial => Ok(ExtremalClass {
            exposed: true,
            extreme: true,
            evidence: Evidence { max_point_count: None, zero_multiplicity_sum: None },
        }),
        PointKind::Binomial => {
            // |P|² = a + b cos(δx + φ): one maximum and one double zero per period
            Ok(ExtremalClass {
                exposed: false,
                extreme: false,
                evidence: Evidence { max_point_count: Some(1), zero_multiplicity_sum: Some(2) },
            })
        }
        PointKind::Trinomial => {
            let t = p.as_trinomial().expect("trinomial kind");
            let count = max_points_global(&t)?.points.len();
            let zeros = zero_multiplicities(&t);
            let sum: u32 = zeros.iter().map(|z| z.1).sum();
            Ok(ExtremalClass {
                exposed: count == 2,
                extreme: sum == 4,
                evidence: Evidence {
                    max_point_count: Some(count),
                    zero_multiplicity_sum: Some(sum),
                },
            })
        }
    }
}

/// `n`-th derivative of `|P|²`.
fn modulus_sq_derivative(p: &Trinomial, x: f64, n: u32) -> f64 {
    let mut acc = if n == 0 { p.moduli.iter().map(|r| r * r).sum() } else { 0.0 };
    for i in 0..3 {
        for j in (i + 1)..3 {
            let delta = (p.freqs[j] - p.freqs[i]) as f64;
            let phi = p.phases[j] - p.phases[i];
            let shift = n as f64 * std::f64::consts::FRAC_PI_2;
            acc += 2.0 * p.moduli[i] * p.moduli[j] * delta.powi(n as i32) * (phi + delta * x + shift).cos();
        }
    }
    acc
}

/// Zeros of `max|P|² - |P|²` over one period with their multiplicities (2 or 4, or 6 if
/// even the fourth derivative is negligible).
pub fn zero_multiplicities(p: &Trinomial) -> Vec<(f64, u32)> {
    let d = gcd(
        (p.freqs[1] - p.freqs[0]).unsigned_abs(),
        (p.freqs[2] - p.freqs[1]).unsigned_abs(),
    );
    let period = TAU / d as f64;
    let n = SAMPLES_PER_PERIOD;
    let h = period / n as f64;
    let g: Vec<f64> = (0..n).map(|i| p.evaluate(i as f64 * h).norm_sqr()).collect();

    let mut maxima: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        let cur = g[i];
        if cur >= g[(i + n - 1) % n] && cur >= g[(i + 1) % n] {
            let x = polish_maximum(p, i as f64 * h, h);
            maxima.push((x, p.evaluate(x).norm_sqr()));
        }
    }
    let top = maxima.iter().map(|m| m.1).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = p.moduli.iter().sum();
    let spread = p.freqs.iter().max().unwrap() - p.freqs.iter().min().unwrap();
    let scale2 = sum * sum * (spread as f64).powi(2);
    let scale4 = scale2 * (spread as f64).powi(2);

    let mut zeros: Vec<(f64, u32)> = Vec::new();
    for (x, v) in maxima {
        if top - v > 1e-9 * top {
            continue;
        }
        if zeros.iter().any(|z| circular_diff(z.0, x, period).abs() < 1e-4 * period) {
            continue;
        }
        let mult = if modulus_sq_derivative(p, x, 2).abs() > FLATNESS * scale2 {
            2
        } else if modulus_sq_derivative(p, x, 4).abs() > FLATNESS * scale4 {
            4
        } else {
            6
        };
        zeros.push((x.rem_euclid(period), mult));
    }
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
    zeros
}

/// Locates a local maximum of `|P|²` near `x0` by bisection on the derivative,
/// falling back to golden section when the derivative does not change sign.
fn polish_maximum(p: &Trinomial, x0: f64, h: f64) -> f64 {
    let (mut lo, mut hi) = (x0 - h, x0 + h);
    let dlo = modulus_sq_derivative(p, lo, 1);
    let dhi = modulus_sq_derivative(p, hi, 1);
    if dlo >= 0.0 && dhi <= 0.0 {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if modulus_sq_derivative(p, mid, 1) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    } else {
        golden_section_max(|x| p.evaluate(x).norm_sqr(), lo, hi, 1e-13).0
    }
}

/// Recovers the trinomial on `freqs` that attains its maximum modulus at `x`
/// and `y` with values `vx` and `vy`.
///
/// After factoring out `e^{iλ2 x}` and scaling by `d`, the two points are
/// moved to `±h` and the values rotated to `ρe^{±iϑ}`. The coefficients are
/// then real: the critical point condition gives `k p1 sin(ϑ+kh) = l p3 sin(ϑ-lh)`,
/// the imaginary part of the value fixes the common scale and the real part
/// gives `p2`.
pub fn reconstruct_from_two_points(
    freqs: [i64; 3],
    x: f64,
    y: f64,
    vx: Complex64,
    vy: Complex64,
) -> Result<Trinomial> {
    check_distinct(freqs)?;
    for (what, value) in [("x", x), ("y", y), ("value", vx.norm()), ("value", vy.norm())] {
        if !value.is_finite() {
            return Err(Error::NonFinite { what, value });
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| freqs[i]);
    let lam = order.map(|i| freqs[i]);
    let d = gcd((lam[1] - lam[0]) as u64, (lam[2] - lam[1]) as u64);
    let k = ((lam[1] - lam[0]) as u64 / d) as f64;
    let l = ((lam[2] - lam[1]) as u64 / d) as f64;
    let period = TAU / d as f64;

    let rho = vx.norm();
    if rho == 0.0 || (vy.norm() - rho).abs() > 1e-9 * rho {
        return Err(Error::NoSolution);
    }
    if circular_diff(x, y, period).abs() < 1e-9 * period {
        return Err(Error::InvalidArgument("the two points coincide modulo the period".into()));
    }

    let wx = vx * Complex64::from_polar(1.0, -(lam[1] as f64) * x);
    let wy = vy * Complex64::from_polar(1.0, -(lam[1] as f64) * y);
    let (xs, ys) = (d as f64 * x, d as f64 * y);
    let c = 0.5 * (xs + ys);
    let h = 0.5 * (xs - ys);
    let (theta, zeta) = (wx.arg(), wy.arg());
    let psi = 0.5 * (theta + zeta);
    let vt = 0.5 * (theta - zeta);

    let a = (vt + k * h).sin();
    let b = (vt - l * h).sin();
    let denom = k * a * (l * h).sin() - l * b * (k * h).sin();
    if a.abs() < 1e-12 || b.abs() < 1e-12 || denom.abs() < 1e-12 {
        return Err(Error::SingularConfiguration);
    }
    let mu = rho * vt.sin() / denom;
    let p1 = mu * l * b;
    let p3 = mu * k * a;
    let p2 = rho * vt.cos() - p1 * (k * h).cos() - p3 * (l * h).cos();

    let rot = Complex64::from_polar(1.0, psi);
    let sorted = [
        rot * p1 * Complex64::from_polar(1.0, k * c),
        rot * p2,
        rot * p3 * Complex64::from_polar(1.0, -l * c),
    ];
    let mut coeffs = [Complex64::new(0.0, 0.0); 3];
    for (pos, &i) in order.iter().enumerate() {
        coeffs[i] = sorted[pos];
    }
    let scale = rho.max(1e-300);
    if coeffs.iter().any(|z| !z.norm().is_finite() || z.norm() < 1e-12 * scale) {
        return Err(Error::NoSolution);
    }
    let t = Trinomial::from_coefficients(freqs, coeffs).map_err(|_| Error::NoSolution)?;

    let res = max_points_global(&t).map_err(|_| Error::NoSolution)?;
    let hits = |z: f64| {
        res.points
            .iter()
            .any(|pt| circular_diff(pt.x, z, period).abs() < 1e-6 * period)
    };
    if res.points.len() != 2 || !hits(x) || !hits(y) || (res.value() - rho).abs() > 1e-9 * rho {
        return Err(Error::NoSolution);
    }
    Ok(t)
}

/// Whether `(p1, p2, p3)` lies on the parabola `(k p1 - p3)² = ρ(k² p1 + p3)` and
/// satisfies `k² p1 p2 + (k+1)² p1 p3 + p2 p3 = 0`, both to `1e-10` relative.
pub fn parabola_invariant(k: u64, p1: f64, p2: f64, p3: f64, rho: f64) -> bool {
    let k = k as f64;
    let lhs = (k * p1 - p3).powi(2);
    let rhs = rho * (k * k * p1 + p3);
    let scale1 = (k * p1.abs() + p3.abs()).powi(2) + rho.abs() * (k * k * p1.abs() + p3.abs());
    let quad = k * k * p1 * p2 + (k + 1.0).powi(2) * p1 * p3 + p2 * p3;
    let scale2 = k * k * (p1 * p2).abs() + (k + 1.0).powi(2) * (p1 * p3).abs() + (p2 * p3).abs();
    (lhs - rhs).abs() <= 1e-10 * scale1 && quad.abs() <= 1e-10 * scale2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxmod::MaxClass;
    use crate::spectrum::ReducedForm;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn unit(freqs: [i64; 3], moduli: [f64; 3], phases: [f64; 3]) -> UnitBallPoint {
        UnitBallPoint::new(freqs, moduli, phases).unwrap().normalized()
    }

    #[test]
    fn monomial_is_exposed() {
        let p = unit([0, 3, 5], [0.0, 2.0, 0.0], [0.0, 1.0, 0.0]);
        assert_eq!(p.kind, PointKind::Monomial);
        let c = classify_unit_ball_point(&p).unwrap();
        assert!(c.exposed && c.extreme);
    }

    #[test]
    fn binomial_is_not_extreme() {
        let p = unit([-1, 0, 1], [0.5, 0.0, 0.5], [0.0; 3]);
        assert_eq!(p.kind, PointKind::Binomial);
        let c = classify_unit_ball_point(&p).unwrap();
        assert!(!c.extreme && !c.exposed);
    }

    #[test]
    fn extremal_function_is_exposed() {
        let p = unit([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, FRAC_PI_2, 0.0]);
        assert!((p.moduli[1] - 1.0 / SQRT_2).abs() < 1e-12);
        let c = classify_unit_ball_point(&p).unwrap();
        assert!(c.exposed && c.extreme);
        assert_eq!(c.evidence.max_point_count, Some(2));
        assert_eq!(c.evidence.zero_multiplicity_sum, Some(4));
    }

    #[test]
    fn generic_point_not_extreme() {
        let p = unit([2, 5, 11], [0.4, 1.0, 0.7], [0.3, -1.0, 2.0]);
        let c = classify_unit_ball_point(&p).unwrap();
        assert!(!c.exposed && !c.extreme);
        assert_eq!(c.evidence.zero_multiplicity_sum, Some(2));
    }

    #[test]
    fn degenerate_point_extreme_not_exposed() {
        // k = 1: r1 r2 + 4 r1 r3 = r2 r3 with r = (1, 8, 2)
        let t = ReducedForm::new(1, 1, 1.0, 8.0, 2.0, FRAC_PI_2).unwrap().to_trinomial();
        let p = unit(t.freqs, t.moduli, t.phases);
        let c = classify_unit_ball_point(&p).unwrap();
        assert!(c.extreme && !c.exposed);
        assert_eq!(c.evidence.max_point_count, Some(1));
    }

    #[test]
    fn unnormalized_rejected() {
        let p = UnitBallPoint::new([-1, 0, 1], [1.0, 2.0, 1.0], [0.0; 3]).unwrap();
        assert!(matches!(classify_unit_ball_point(&p), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn reconstruct_extremal_function() {
        let t = Trinomial::new([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, FRAC_PI_2, 0.0]).unwrap();
        let r = reconstruct_from_two_points(t.freqs, 0.0, PI, t.evaluate(0.0), t.evaluate(PI)).unwrap();
        let (a, b) = (r.coefficients(), t.coefficients());
        for j in 0..3 {
            assert!((a[j] - b[j]).norm() < 1e-9, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn reconstruct_rejects_perturbed_values() {
        let t = Trinomial::new([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, FRAC_PI_2, 0.0]).unwrap();
        // every rotation of the value at π is consistent for k = l = 1: a one-parameter family
        let vy = t.evaluate(PI) * Complex64::from_polar(1.0, 2.0);
        assert!(reconstruct_from_two_points(t.freqs, 0.0, PI, t.evaluate(0.0), vy).is_ok());
        let r = reconstruct_from_two_points([0, 1, 3], 0.0, 0.2, t.evaluate(0.0), t.evaluate(0.0));
        assert!(matches!(r, Err(Error::NoSolution) | Err(Error::SingularConfiguration)));
        let r = reconstruct_from_two_points(t.freqs, 0.0, PI, t.evaluate(0.0), t.evaluate(PI) * 1.1);
        assert_eq!(r, Err(Error::NoSolution));
    }

    #[test]
    fn reconstruct_round_trip_general_spectrum() {
        let t = Trinomial::new([7, -2, 1], [0.9, 0.7, 1.3], [0.4, 1.1, -0.5]).unwrap();
        // make τ = π by solving for the phase of the middle (sorted) term
        let mut t = t;
        let s = crate::spectrum::derive_spectrum_stats(&t).unwrap();
        let dd = s.diameter_quotient as f64;
        t.phases[2] += (PI - s.signed_tau) / dd;
        let res = max_points_global(&t).unwrap();
        assert_eq!(res.classification, MaxClass::SymmetricPair);
        let (x, y) = (res.points[0].x, res.points[1].x);
        let r = reconstruct_from_two_points(t.freqs, x, y, t.evaluate(x), t.evaluate(y)).unwrap();
        for j in 0..3 {
            assert!((r.coefficients()[j] - t.coefficients()[j]).norm() < 1e-9);
        }
    }

    #[test]
    fn parabola_holds_on_degenerate_family() {
        let (r1, r2, r3) = (1.0, 8.0, 2.0);
        assert!(parabola_invariant(1, -r1, r2, r3, -r1 + r2 + r3));
        assert!(!parabola_invariant(1, -r1, r2 * 1.001, r3, -r1 + r2 * 1.001 + r3));
    }
}
