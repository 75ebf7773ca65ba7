//! Norms of unimodular multipliers on a three-element spectrum, the Sidon
//! constant, the unconditional constants of the basis `e_λ1, e_λ2, e_λ3`,
//! and bounds for the Sidon constant of `{1, q, q²}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxmod::max_points_global;
use crate::spectrum::{
    dominant_pair, is_isometry, modular_inverse, multiplier_stats, opposition_signs, Multiplier,
    Trinomial, TIE_TOLERANCE,
};

/// A trinomial at which a multiplier norm (or the Sidon constant) is attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub freqs: [i64; 3],
    /// Proportional to `(λ3-λ2, λ3-λ1, λ2-λ1)` in sorted order.
    pub moduli: [f64; 3],
    /// Phase combination `≡ π (mod 2π)`.
    pub phases: [f64; 3],
    /// Ratio actually attained at the witness, measured by [`max_points_global`].
    pub value: f64,
}

impl Witness {
    pub fn trinomial(&self) -> Trinomial {
        Trinomial { freqs: self.freqs, moduli: self.moduli, phases: self.phases }
    }
}

/// `μ = atom0 δ_0 + atom1 δ_w` with `w = 2mπ/(k+l)`, reproducing the multiplier
/// `(0, t, 0)` on `{-k, 0, l}` by convolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureLift {
    pub k: u64,
    pub l: u64,
    pub t: f64,
    pub atom0: Complex64,
    pub atom1: Complex64,
    pub point1: f64,
}

impl MeasureLift {
    pub fn total_variation(&self) -> f64 {
        self.atom0.norm() + self.atom1.norm()
    }

    /// `(μ * f)(x) = atom0 f(x) + atom1 f(x - w)`.
    pub fn convolve(&self, f: &Trinomial, x: f64) -> Complex64 {
        self.atom0 * f.evaluate(x) + self.atom1 * f.evaluate(x - self.point1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignPattern {
    pub signs: [i8; 3],
    pub norm: f64,
    pub isometric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnconditionalConstants {
    /// Largest norm of a real sign multiplier.
    pub real: f64,
    /// Largest norm of a unimodular multiplier, i.e. the Sidon constant.
    pub complex: f64,
    /// Signs `ε` realizing `real`: opposite on the dominant pair.
    pub witness_signs: [i8; 3],
    /// The pair of indices whose frequency difference has the largest 2-adic valuation.
    pub dominant_pair: (usize, usize),
    pub patterns: Vec<SignPattern>,
}

fn extremal_witness(freqs: [i64; 3]) -> Result<Witness> {
    let stats = multiplier_stats(freqs, &Multiplier::new(0.0, 0.0, 0.0))?;
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| freqs[i]);
    let sorted_moduli = [stats.l, stats.k + stats.l, stats.k].map(|x| x as f64);
    let sorted_phases = [0.0, PI / stats.diameter_quotient as f64, 0.0];
    let mut moduli = [0.0; 3];
    let mut phases = [0.0; 3];
    for (pos, &i) in order.iter().enumerate() {
        moduli[i] = sorted_moduli[pos];
        phases[i] = sorted_phases[pos];
    }
    Ok(Witness { freqs, moduli, phases, value: f64::NAN })
}

/// `cos((π - τ)/2D) / cos(π/2D)` together with a witness.
pub fn multiplier_norm(freqs: [i64; 3], m: &Multiplier) -> Result<(f64, Witness)> {
    let stats = multiplier_stats(freqs, m)?;
    let dd = 2.0 * stats.diameter_quotient as f64;
    let norm = ((PI - stats.tau) / dd).cos() / (PI / dd).cos();
    let mut w = extremal_witness(freqs)?;
    let f = w.trinomial();
    w.value = max_points_global(&f.apply(m))?.value() / max_points_global(&f)?.value();
    Ok((norm, w))
}

/// `sec(π/2D)` together with a witness.
pub fn sidon_constant(freqs: [i64; 3]) -> Result<(f64, Witness)> {
    let stats = multiplier_stats(freqs, &Multiplier::new(0.0, 0.0, 0.0))?;
    let c = 1.0 / (PI / (2.0 * stats.diameter_quotient as f64)).cos();
    let mut w = extremal_witness(freqs)?;
    let f = w.trinomial();
    w.value = f.moduli_sum() / max_points_global(&f)?.value();
    Ok((c, w))
}

/// The two-atom measure for the multiplier `(0, t, 0)` on `{-k, 0, l}`.
pub fn lift_to_measure(k: u64, l: u64, t: f64) -> Result<MeasureLift> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be positive".into()));
    }
    let dq = k + l;
    let m = modular_inverse(l, dq)?;
    let a = PI / dq as f64;
    if !t.is_finite() || t < 0.0 || t > a + TIE_TOLERANCE {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, {a}]")));
    }
    let t = t.min(a);
    let atom0 = Complex64::from_polar((a - t / 2.0).sin() / a.sin(), t / 2.0);
    let atom1 = Complex64::from_polar((t / 2.0).sin() / a.sin(), t / 2.0 + a);
    Ok(MeasureLift { k, l, t, atom0, atom1, point1: 2.0 * m as f64 * a })
}

/// Norms of the eight sign multipliers and the Sidon constant.
pub fn unconditional_constants(freqs: [i64; 3]) -> Result<UnconditionalConstants> {
    let (complex, _) = sidon_constant(freqs)?;
    let mut patterns = Vec::with_capacity(8);
    for bits in 0..8u8 {
        let signs = [0, 1, 2].map(|j| if bits >> j & 1 == 1 { -1i8 } else { 1 });
        let m = Multiplier::from(signs.map(|s| if s < 0 { PI } else { 0.0 }));
        let (norm, _) = multiplier_norm(freqs, &m)?;
        let isometric = is_isometry(freqs, &m, TIE_TOLERANCE)?.is_some();
        patterns.push(SignPattern { signs, norm, isometric });
    }
    let real = patterns.iter().map(|p| p.norm).fold(f64::NEG_INFINITY, f64::max);
    Ok(UnconditionalConstants {
        real,
        complex,
        witness_signs: opposition_signs(freqs)?,
        dominant_pair: dominant_pair(freqs)?,
        patterns,
    })
}

/// `(1 + π²/8(q+1)², sec(π/2(q+1)), 1 + π²/(2q² - 2 - π²))` for `{1, q, q²}`.
pub fn geometric_progression_bounds(q: u64) -> Result<(f64, f64, f64)> {
    if q < 3 {
        return Err(Error::InvalidArgument(format!("q must be at least 3, got {q}")));
    }
    let qf = q as f64;
    let pi2 = PI * PI;
    let lower1 = 1.0 + pi2 / (8.0 * (qf + 1.0).powi(2));
    let lower2 = 1.0 / (PI / (2.0 * (qf + 1.0))).cos();
    let upper = 1.0 + pi2 / (2.0 * qf * qf - 2.0 - pi2);
    Ok((lower1, lower2, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn norm_examples() {
        let (n, w) = multiplier_norm([-1, 0, 1], &Multiplier::new(0.0, FRAC_PI_2, 0.0)).unwrap();
        assert!((n - SQRT_2).abs() < 1e-15);
        assert!((w.value - n).abs() < 1e-9);
        let (n, _) = multiplier_norm([-1, 0, 1], &Multiplier::new(0.3, 0.3, 0.3)).unwrap();
        assert!((n - 1.0).abs() < 1e-15);
        let (n, w) = multiplier_norm([-1, 0, 2], &Multiplier::new(0.0, PI / 3.0, 0.0)).unwrap();
        assert!((n - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w.value - n).abs() < 1e-9);
    }

    #[test]
    fn sidon_examples() {
        let (c, w) = sidon_constant([-1, 0, 1]).unwrap();
        assert!((c - SQRT_2).abs() < 1e-15);
        assert_eq!(w.moduli, [1.0, 2.0, 1.0]);
        assert!((w.value - c).abs() < 1e-9);
        assert!((sidon_constant([-2, 0, 2]).unwrap().0 - SQRT_2).abs() < 1e-15);
        let (c, w) = sidon_constant([9, 1, 3]).unwrap();
        assert!((c - 1.0 / (PI / 8.0).cos()).abs() < 1e-15);
        assert!((w.value - c).abs() < 1e-9);
        // sorted (1, 3, 9) carries (l, k+l, k) = (3, 4, 1)
        assert_eq!(w.moduli, [1.0, 3.0, 4.0]);
    }

    #[test]
    fn lift_examples() {
        let m = lift_to_measure(2, 3, 0.0).unwrap();
        assert!((m.atom0 - Complex64::new(1.0, 0.0)).norm() < 1e-15 && m.atom1.norm() < 1e-15);
        let m = lift_to_measure(1, 1, FRAC_PI_2).unwrap();
        assert!((m.atom0.norm() - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((m.atom1.norm() - 1.0 / SQRT_2).abs() < 1e-15);
        let m = lift_to_measure(2, 1, PI / 3.0).unwrap();
        let (n, _) = multiplier_norm([-2, 0, 1], &Multiplier::new(0.0, PI / 3.0, 0.0)).unwrap();
        assert!((m.total_variation() - n).abs() < 1e-12);
        assert!(lift_to_measure(1, 1, 2.0).is_err());
    }

    #[test]
    fn lift_reproduces_multiplier() {
        for (k, l, t) in [(1u64, 1u64, 0.7), (2, 3, 0.5), (3, 1, 0.2)] {
            let lift = lift_to_measure(k, l, t).unwrap();
            let dq = (k + l) as f64;
            let f = Trinomial::new(
                [-(k as i64), 0, l as i64],
                [l as f64, dq, k as f64],
                [0.0, PI / dq, 0.0],
            )
            .unwrap();
            let mf = f.apply(&Multiplier::new(0.0, t, 0.0));
            for i in 0..16 {
                let x = i as f64 * 0.41 - 3.0;
                assert!((lift.convolve(&f, x) - mf.evaluate(x)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unconditional_examples() {
        for freqs in [[-1, 0, 1], [0, 1, 3], [2, 5, 11], [-7, 4, 6]] {
            let u = unconditional_constants(freqs).unwrap();
            assert!((u.real - u.complex).abs() < 1e-12);
            assert_eq!(u.patterns.iter().filter(|p| p.isometric).count(), 4);
            for p in &u.patterns {
                if p.isometric {
                    assert!((p.norm - 1.0).abs() < 1e-15);
                }
            }
            let m = Multiplier::from(u.witness_signs.map(|s| if s < 0 { PI } else { 0.0 }));
            assert!((multiplier_norm(freqs, &m).unwrap().0 - u.real).abs() < 1e-12);
        }
        let u = unconditional_constants([0, 1, 3]).unwrap();
        assert!((u.complex - 1.0 / (PI / 6.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn geometric_progression() {
        let (a, b, c) = geometric_progression_bounds(3).unwrap();
        assert!((a - (1.0 + PI * PI / 128.0)).abs() < 1e-15);
        assert!((b - 1.0 / (PI / 8.0).cos()).abs() < 1e-15);
        assert!((c - (1.0 + PI * PI / (16.0 - PI * PI))).abs() < 1e-15);
        assert!(a <= b && b <= c);
        assert!((b - sidon_constant([1, 3, 9]).unwrap().0).abs() < 1e-15);
        assert!(geometric_progression_bounds(2).is_err());
    }
}
