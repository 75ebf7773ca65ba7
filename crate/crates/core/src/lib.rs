//! Maximum modulus of trigonometric trinomials
//! `r1 e^{i(t1 + λ1 x)} + r2 e^{i(t2 + λ2 x)} + r3 e^{i(t3 + λ3 x)}`
//! with integer frequencies.
//!
//! The crate reduces a general trinomial to the canonical form
//! `r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}` (`k`, `l` coprime, `0 <= t <= π/(k+l)`),
//! locates its maximum modulus points by bisection on a derivative whose sign
//! pattern is known in advance, and maps them back. On top of that it
//! evaluates the extremal constants that follow from this analysis: the norm
//! of unimodular relative Fourier multipliers, the Sidon constant of a
//! three-element set of integers and the unconditional constants of its
//! canonical basis.
//!
//! Everything is cross-checked by [`oracle`], a brute-force grid search that
//! shares nothing with the analytic path except [`Trinomial::evaluate`].
//!
//! ```
//! use trinomax::{max_points_global, Trinomial};
//! use std::f64::consts::{FRAC_PI_2, SQRT_2};
//!
//! let t = Trinomial::new([-1, 0, 1], [1.0, 2.0, 1.0], [0.0, FRAC_PI_2, 0.0]).unwrap();
//! let res = max_points_global(&t).unwrap();
//! assert_eq!(res.points.len(), 2);
//! assert!((res.value() - 2.0 * SQRT_2).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod angle;
pub mod constants;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod maxmod;
pub mod oracle;
pub mod phasecurves;
pub mod spectrum;

pub use constants::{
    geometric_progression_bounds, lift_to_measure, multiplier_norm, sidon_constant,
    unconditional_constants, MeasureLift, UnconditionalConstants, Witness,
};
pub use error::{Error, Result};
pub use extremal::{
    classify_unit_ball_point, parabola_invariant, reconstruct_from_two_points, ExtremalClass,
    UnitBallPoint,
};
pub use geometry::{farthest_points, hypotrochoid_sample, Curve};
pub use maxmod::{
    argmax_interval, binomial_max, closed_form_k1_l1, closed_form_k2_l1, derivative_half,
    evaluate, find_max_reduced, locate_interval, max_points_global, modulus_squared_reduced,
    ArgmaxInterval, MaxClass, MaxPoint, MaxResult,
};
pub use oracle::{brute_max, brute_multiplier_norm, brute_sidon, OracleReport};
pub use phasecurves::{
    bound_ratio_th4, chebotarev_derivative, fstar, lower_bound_th3, ratio_gstar, sweep,
    OneSidedSlope, SweepRow,
};
pub use spectrum::{
    canonical_reduction, canonical_reduction_with, derive_spectrum_stats, is_isometry,
    modular_inverse, opposition_signs, Isometry, Multiplier, ReducedForm, SpectrumStats,
    Transcript, Trinomial, TIE_TOLERANCE,
};

pub use num_complex::Complex64;
