//! The curve `z(x) = r1 e^{i(t1 - (λ2-λ1)x)} + r3 e^{i(t3 + (λ3-λ2)x)}` and its
//! farthest points from a centre.
//!
//! `|T(x)| = |z(x) + r2 e^{it2}|`, so the maximum modulus points of `T` are the
//! points of the curve farthest from `-r2 e^{it2}`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxmod::max_points_global;
use crate::spectrum::{gcd, Trinomial};

/// Relative tolerance of the hypocycloid test `r1 (λ2-λ1) = r3 (λ3-λ2)`.
const CUSP_TOLERANCE: f64 = 1e-9;

/// Samples of the curve ordered by parameter over `(-π, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub samples: Vec<(f64, Complex64)>,
    pub closed: bool,
    /// Number of cusps when the curve is a hypocycloid.
    pub cusp_count: Option<u64>,
}

fn sorted(t: &Trinomial) -> ([usize; 3], [i64; 3]) {
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| t.freqs[i]);
    (order, order.map(|i| t.freqs[i]))
}

/// The point `z(x)` of the curve attached to `t`.
pub fn curve_point(t: &Trinomial, x: f64) -> Complex64 {
    let (o, lam) = sorted(t);
    Complex64::from_polar(t.moduli[o[0]], t.phases[o[0]] - (lam[1] - lam[0]) as f64 * x)
        + Complex64::from_polar(t.moduli[o[2]], t.phases[o[2]] + (lam[2] - lam[1]) as f64 * x)
}

/// `n` uniform samples of the curve at `x = -π + 2π(i+1)/n`.
pub fn hypotrochoid_sample(t: &Trinomial, n: usize) -> Result<Curve> {
    t.validate()?;
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 samples, got {n}")));
    }
    let samples = (0..n)
        .map(|i| {
            let x = -PI + TAU * (i + 1) as f64 / n as f64;
            (x, curve_point(t, x))
        })
        .collect();
    let (o, lam) = sorted(t);
    let (a, b) = (lam[1] - lam[0], lam[2] - lam[1]);
    let lhs = t.moduli[o[0]] * a as f64;
    let rhs = t.moduli[o[2]] * b as f64;
    let cusp_count = ((lhs - rhs).abs() <= CUSP_TOLERANCE * lhs.max(rhs))
        .then(|| (lam[2] - lam[0]) as u64 / gcd(a as u64, b as u64));
    Ok(Curve { samples, closed: true, cusp_count })
}

/// Points of the curve of `t` at maximum distance from `center`, as `(x, distance)`
/// with `x` in `[0, 2π/d)`.
///
/// Only the outer moduli and phases of `t` are used; the middle term is replaced by
/// `-center`.
pub fn farthest_points(t: &Trinomial, center: Complex64) -> Result<Vec<(f64, f64)>> {
    if !(center.re.is_finite() && center.im.is_finite()) {
        return Err(Error::NonFinite { what: "center", value: center.norm() });
    }
    if center.norm() == 0.0 {
        return Err(Error::InvalidArgument("center must be nonzero".into()));
    }
    let (o, _) = sorted(t);
    let mut shifted = *t;
    shifted.moduli[o[1]] = center.norm();
    shifted.phases[o[1]] = (-center).arg();
    let res = max_points_global(&shifted)?;
    Ok(res.points.iter().map(|p| (p.x, p.value)).collect())
}
