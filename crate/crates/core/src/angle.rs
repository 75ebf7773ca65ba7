//! Angle helpers shared by every module.

use std::f64::consts::{PI, TAU};

/// Reduce an angle to `(-π, π]`, rounding to the nearest multiple of `2π`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = a - TAU * (a / TAU).round();
    if r <= -PI {
        r + TAU
    } else if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance of `a` to `2πZ`, in `[0, π]`.
pub fn dist_to_2pi_z(a: f64) -> f64 {
    wrap_pi(a).abs()
}

/// Representative of `x` modulo `period` in `[0, period)`.
pub fn rem_period(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to `period` itself for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Signed distance from `a` to `b` modulo `period`, in `[-period/2, period/2]`.
pub fn circular_diff(a: f64, b: f64, period: f64) -> f64 {
    let d = rem_period(a - b, period);
    if d > period / 2.0 {
        d - period
    } else {
        d
    }
}
