//! Integer and angle bookkeeping for three-frequency spectra.
//!
//! A trinomial is reduced to `r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}` by
//! sorting its frequencies, applying a rotation and a translation (an
//! isometric relative multiplier), a homothety by `1/d`, possibly a
//! conjugation `x -> -x`, and possibly the swap `(k, r1) <-> (l, r3)`. The
//! [`Transcript`] records each of these so that points can be mapped back.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{rem_period, wrap_pi};
use crate::error::{Error, Result};

/// Absolute tolerance, in radians, under which `τ` is considered equal to `π`.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `r1 e^{i(t1 + λ1 x)} + r2 e^{i(t2 + λ2 x)} + r3 e^{i(t3 + λ3 x)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trinomial {
    pub freqs: [i64; 3],
    pub moduli: [f64; 3],
    pub phases: [f64; 3],
}

impl Trinomial {
    pub fn new(freqs: [i64; 3], moduli: [f64; 3], phases: [f64; 3]) -> Result<Self> {
        let t = Trinomial { freqs, moduli, phases };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        check_distinct(self.freqs)?;
        for (index, &value) in self.moduli.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveModulus { index, value });
            }
        }
        for &value in &self.phases {
            if !value.is_finite() {
                return Err(Error::NonFinite { what: "phase", value });
            }
        }
        Ok(())
    }

    /// Complex value at `x`.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        (0..3)
            .map(|j| Complex64::from_polar(self.moduli[j], self.phases[j] + self.freqs[j] as f64 * x))
            .sum()
    }

    /// Fourier coefficients `r_j e^{i t_j}`.
    pub fn coefficients(&self) -> [Complex64; 3] {
        [0, 1, 2].map(|j| Complex64::from_polar(self.moduli[j], self.phases[j]))
    }

    /// Builds a trinomial from complex coefficients.
    pub fn from_coefficients(freqs: [i64; 3], coeffs: [Complex64; 3]) -> Result<Self> {
        Trinomial::new(freqs, coeffs.map(|c| c.norm()), coeffs.map(|c| c.arg()))
    }

    pub fn moduli_sum(&self) -> f64 {
        self.moduli.iter().sum()
    }

    /// The same function with every coefficient multiplied by `e^{i u_j}`.
    pub fn apply(&self, m: &Multiplier) -> Trinomial {
        let u = m.phases();
        Trinomial {
            freqs: self.freqs,
            moduli: self.moduli,
            phases: [0, 1, 2].map(|j| self.phases[j] + u[j]),
        }
    }

    /// Period of `|T|`, namely `2π/d`.
    pub fn period(&self) -> f64 {
        let (_, a, b) = sorted_gaps(self.freqs);
        TAU / gcd(a, b) as f64
    }
}

/// Unimodular relative Fourier multiplier `e_{λj} -> e^{i u_j} e_{λj}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multiplier {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl Multiplier {
    pub fn new(u1: f64, u2: f64, u3: f64) -> Self {
        Multiplier { u1, u2, u3 }
    }

    pub fn phases(&self) -> [f64; 3] {
        [self.u1, self.u2, self.u3]
    }
}

impl From<[f64; 3]> for Multiplier {
    fn from(u: [f64; 3]) -> Self {
        Multiplier::new(u[0], u[1], u[2])
    }
}

/// Arithmetic invariants of a spectrum together with the phase invariant `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumStats {
    /// `gcd(λ2 - λ1, λ3 - λ2)` with `λ2` the middle frequency.
    pub d: u64,
    pub k: u64,
    pub l: u64,
    /// Inverse of `l` modulo `k + l`, in `[1, k + l - 1]`.
    pub m: u64,
    /// Diameter of the spectrum divided by `d`; equals `k + l`.
    #[serde(rename = "D")]
    pub diameter_quotient: u64,
    /// Distance of `(-l t1 + (k+l) t2 - k t3)` to `2πZ`, in `[0, π]`.
    pub tau: f64,
    /// The same combination reduced to `(-π, π]`, frequencies sorted ascending.
    pub signed_tau: f64,
}

impl SpectrumStats {
    /// Whether `τ` is `π` up to `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        PI - self.tau <= tol
    }

    pub fn period(&self) -> f64 {
        TAU / self.d as f64
    }
}

/// Canonical reduced trinomial `r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}` with
/// `gcd(k, l) = 1`, `0 <= t <= π/(k+l)` and `k r1 <= l r3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedForm {
    pub k: u64,
    pub l: u64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub t: f64,
    /// `t = π/(k+l)`, i.e. `τ = π`; `t` is then stored exactly as `π/(k+l)`.
    pub symmetric: bool,
}

impl ReducedForm {
    /// Validates a form that is already normalized (`k r1 <= l r3`).
    pub fn new(k: u64, l: u64, r1: f64, r2: f64, r3: f64, t: f64) -> Result<Self> {
        let (form, swapped) = Self::normalized(k, l, r1, r2, r3, t)?;
        if swapped {
            return Err(Error::InvalidArgument(format!(
                "reduced form requires k r1 <= l r3, got {} > {}",
                k as f64 * r1,
                l as f64 * r3
            )));
        }
        Ok(form)
    }

    /// Builds a reduced form, applying the swap `(k, r1, x) <-> (l, r3, -x)`
    /// when `k r1 > l r3`. Returns whether the swap was applied.
    pub fn normalized(k: u64, l: u64, r1: f64, r2: f64, r3: f64, t: f64) -> Result<(Self, bool)> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidArgument("k and l must be positive".into()));
        }
        if gcd(k, l) != 1 {
            return Err(Error::NotCoprime { a: k, b: l });
        }
        for (index, &value) in [r1, r2, r3].iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveModulus { index, value });
            }
        }
        let top = PI / (k + l) as f64;
        if !t.is_finite() || t < -TIE_TOLERANCE || t > top + TIE_TOLERANCE {
            return Err(Error::InvalidArgument(format!("t = {t} outside [0, {top}]")));
        }
        let symmetric = (top - t).abs() <= TIE_TOLERANCE / (k + l) as f64;
        let t = if symmetric { top } else { t.max(0.0) };
        let swapped = k as f64 * r1 > l as f64 * r3;
        let form = if swapped {
            ReducedForm { k: l, l: k, r1: r3, r2, r3: r1, t, symmetric }
        } else {
            ReducedForm { k, l, r1, r2, r3, t, symmetric }
        };
        Ok((form, swapped))
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        Complex64::from_polar(self.r1, -(self.k as f64) * x)
            + Complex64::from_polar(self.r2, self.t)
            + Complex64::from_polar(self.r3, self.l as f64 * x)
    }

    /// Inverse of `l` modulo `k + l`.
    pub fn m(&self) -> u64 {
        modular_inverse(self.l, self.k + self.l).expect("k and l are coprime")
    }

    /// The point `2mπ/(k+l)`: for `t = π/(k+l)` the modulus is symmetric about half of it.
    pub fn symmetry_sum(&self) -> f64 {
        2.0 * self.m() as f64 * PI / (self.k + self.l) as f64
    }

    pub fn moduli_sum(&self) -> f64 {
        self.r1 + self.r2 + self.r3
    }

    /// The reduced form as a trinomial on the spectrum `{-k, 0, l}`.
    pub fn to_trinomial(&self) -> Trinomial {
        Trinomial {
            freqs: [-(self.k as i64), 0, self.l as i64],
            moduli: [self.r1, self.r2, self.r3],
            phases: [0.0, self.t, 0.0],
        }
    }
}

/// Record of the normalizations taking a trinomial to its [`ReducedForm`]:
/// `|T(x)| = |R(σ d (x - v))|` with `σ = ±1` given by [`Transcript::direction`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    /// `order[i]` is the input index of the `i`-th smallest frequency.
    pub sort_permutation: [usize; 3],
    /// Global rotation: `T(x) = e^{iα}(r1 e^{iλ1 y} + r2 e^{i(t̃ + λ2 y)} + r3 e^{iλ3 y})`, `y = x - v`.
    pub alpha: f64,
    /// Translation `v`.
    pub v: f64,
    /// `-1` when the conjugation `x -> -x` was applied, `+1` otherwise.
    pub epsilon: i8,
    /// Whether `(k, r1)` and `(l, r3)` were exchanged.
    pub swapped: bool,
    /// The homothety factor `d`.
    pub homothety: u64,
}

impl Transcript {
    pub fn direction(&self) -> f64 {
        let s = self.epsilon as f64;
        if self.swapped {
            -s
        } else {
            s
        }
    }

    pub fn to_reduced(&self, x: f64) -> f64 {
        self.direction() * self.homothety as f64 * (x - self.v)
    }

    /// Inverse of [`Transcript::to_reduced`], as a representative in `[0, 2π/d)`.
    pub fn from_reduced(&self, z: f64) -> f64 {
        let d = self.homothety as f64;
        rem_period(self.v + z / (self.direction() * d), TAU / d)
    }
}

/// Result of [`is_isometry`]: `M f(x) = e^{iα} f(x - v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub alpha: f64,
    pub v: f64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// `m` in `[1, n-1]` with `l m ≡ 1 (mod n)`.
pub fn modular_inverse(l: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {n}")));
    }
    let (g, x, _) = ext_gcd(l as i128, n as i128);
    if g != 1 {
        return Err(Error::NotCoprime { a: l, b: n });
    }
    Ok(x.rem_euclid(n as i128) as u64)
}

pub(crate) fn check_distinct(f: [i64; 3]) -> Result<()> {
    if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
        Err(Error::RepeatedFrequency(f))
    } else {
        Ok(())
    }
}

/// Sorting permutation and the two positive gaps `λ2 - λ1`, `λ3 - λ2`.
fn sorted_gaps(freqs: [i64; 3]) -> ([usize; 3], u64, u64) {
    let mut order = [0, 1, 2];
    order.sort_by_key(|&i| freqs[i]);
    let s = order.map(|i| freqs[i] as i128);
    (order, (s[1] - s[0]) as u64, (s[2] - s[1]) as u64)
}

/// `-l u1 + (k+l) u2 - k u3` for sorted phases, each phase first reduced to `(-π, π]`.
fn phase_combination(k: u64, l: u64, u: [f64; 3]) -> f64 {
    let u = u.map(wrap_pi);
    -(l as f64) * u[0] + (k + l) as f64 * u[1] - k as f64 * u[2]
}

/// Solves `u_j + λ_j v ≡ α (mod 2π)` for sorted frequencies, in the least-squares
/// sense when the system is only consistent up to rounding.
fn solve_translation(sorted: [i64; 3], u: [f64; 3]) -> Isometry {
    let a = (sorted[1] - sorted[0]) as f64;
    let b = (sorted[2] - sorted[1]) as f64;
    let d = gcd(a as u64, b as u64);
    let k = a as u64 / d;
    let l = b as u64 / d;
    let u = u.map(wrap_pi);
    let rhs_a = u[0] - u[1];
    let rhs_b = u[1] - u[2];
    let n = (phase_combination(k, l, u) / TAU).round() as i128;
    // l p - k q = n
    let (_, x0, y0) = ext_gcd(l as i128, k as i128);
    let p = (n * x0) as f64;
    let q = (-n * y0) as f64;
    let ea = rhs_a + TAU * p;
    let eb = rhs_b + TAU * q;
    let v = (a * ea + b * eb) / (a * a + b * b);
    let v = rem_period(v, TAU / d as f64);
    let alpha = wrap_pi(u[1] + sorted[1] as f64 * v);
    Isometry { alpha, v }
}

pub fn derive_spectrum_stats(t: &Trinomial) -> Result<SpectrumStats> {
    t.validate()?;
    Ok(stats_for_phases(t.freqs, t.phases))
}

fn stats_for_phases(freqs: [i64; 3], phases: [f64; 3]) -> SpectrumStats {
    let (order, a, b) = sorted_gaps(freqs);
    let d = gcd(a, b);
    let (k, l) = (a / d, b / d);
    let u = order.map(|i| phases[i]);
    let signed_tau = wrap_pi(phase_combination(k, l, u));
    SpectrumStats {
        d,
        k,
        l,
        m: modular_inverse(l, k + l).expect("coprime"),
        diameter_quotient: k + l,
        tau: signed_tau.abs(),
        signed_tau,
    }
}

/// Spectrum statistics of a bare spectrum together with the `τ` of a multiplier.
pub fn multiplier_stats(freqs: [i64; 3], m: &Multiplier) -> Result<SpectrumStats> {
    check_distinct(freqs)?;
    Ok(stats_for_phases(freqs, m.phases()))
}

/// Whether `m` is an isometry of the space spanned by `e_λ`, `λ ∈ freqs`; if so,
/// the rotation and translation realizing it.
pub fn is_isometry(freqs: [i64; 3], m: &Multiplier, tol: f64) -> Result<Option<Isometry>> {
    let stats = multiplier_stats(freqs, m)?;
    if stats.tau > tol {
        return Ok(None);
    }
    let (order, _, _) = sorted_gaps(freqs);
    let u = m.phases();
    Ok(Some(solve_translation(order.map(|i| freqs[i]), order.map(|i| u[i]))))
}

/// Solutions `s` of `2t1 + λ1 s ≡ 2t2 + λ2 s ≡ 2t3 + λ3 s (mod 2π)`, unique modulo `2π/d`.
pub fn symmetry_axis(t: &Trinomial) -> f64 {
    let (order, _, _) = sorted_gaps(t.freqs);
    solve_translation(order.map(|i| t.freqs[i]), order.map(|i| 2.0 * t.phases[i])).v
}

pub fn canonical_reduction(t: &Trinomial) -> Result<(ReducedForm, SpectrumStats, Transcript)> {
    canonical_reduction_with(t, TIE_TOLERANCE)
}

/// [`canonical_reduction`] with an explicit tolerance for `τ = π`.
pub fn canonical_reduction_with(
    t: &Trinomial,
    tie_tol: f64,
) -> Result<(ReducedForm, SpectrumStats, Transcript)> {
    let stats = derive_spectrum_stats(t)?;
    let (order, _, _) = sorted_gaps(t.freqs);
    let dq = stats.diameter_quotient as f64;
    let symmetric = stats.is_symmetric(tie_tol);
    // signed reduced phase t̃ in [-π/D, π/D]
    let signed = if symmetric {
        stats.signed_tau.signum() * PI
    } else {
        stats.signed_tau
    };
    let t_tilde = signed / dq;
    let sorted_freqs = order.map(|i| t.freqs[i]);
    let mut u = order.map(|i| t.phases[i]);
    u[1] -= t_tilde;
    let iso = solve_translation(sorted_freqs, u);
    let epsilon: i8 = if t_tilde < 0.0 { -1 } else { 1 };
    let r = order.map(|i| t.moduli[i]);
    let reduced_t = if symmetric { PI / dq } else { t_tilde.abs() };
    let (form, swapped) =
        ReducedForm::normalized(stats.k, stats.l, r[0], r[1], r[2], reduced_t)?;
    let form = ReducedForm { symmetric, ..form };
    let transcript = Transcript {
        sort_permutation: order,
        alpha: iso.alpha,
        v: iso.v,
        epsilon,
        swapped,
        homothety: stats.d,
    };
    Ok((form, stats, transcript))
}

/// 2-adic valuation of a nonzero integer.
fn v2(x: i64) -> u32 {
    x.trailing_zeros()
}

/// Index pair `(i, j)`, `i < j`, whose difference has the strictly largest 2-adic valuation.
pub fn dominant_pair(freqs: [i64; 3]) -> Result<(usize, usize)> {
    check_distinct(freqs)?;
    let pairs = [(0, 1), (1, 2), (0, 2)];
    let vals = pairs.map(|(i, j)| v2(freqs[i] - freqs[j]));
    let top = (0..3).max_by_key(|&p| vals[p]).expect("three pairs");
    assert!(
        (0..3).all(|p| p == top || vals[p] < vals[top]),
        "largest 2-adic valuation of the differences is always unique"
    );
    Ok(pairs[top])
}

/// Real signs `ε` such that `ε_i ε_j = -1` for the [`dominant_pair`] `(i, j)`;
/// phases `0`/`π` taken from these signs give `τ = π`.
pub fn opposition_signs(freqs: [i64; 3]) -> Result<[i8; 3]> {
    let (_, j) = dominant_pair(freqs)?;
    let mut signs = [1i8; 3];
    signs[j] = -1;
    Ok(signs)
}
