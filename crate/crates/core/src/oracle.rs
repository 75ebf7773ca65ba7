//! Brute-force verifier.
//!
//! Grid search plus golden-section refinement over one period of `|T|`, and
//! nested searches over moduli and phases for the Sidon constant and
//! multiplier norms. The only thing borrowed from the analytic path is
//! [`Trinomial::evaluate`]; the period `2π/d` and the isometry quotient of
//! the phase space are computed here from scratch.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::{circular_diff, rem_period};
use crate::spectrum::{Multiplier, Trinomial};

/// Grid points within this relative distance of the best refined value are
/// reported as global maxima.
const TIE_RELATIVE: f64 = 1e-11;
/// Distinct argmaxes closer than this fraction of the period are merged.
const CLUSTER_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub value: f64,
    /// Global maximum points in `[0, period)`.
    pub argmaxes: Vec<f64>,
    pub grid_size: usize,
    pub refine_tol: f64,
    pub evaluations: usize,
    pub period: f64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `2π / gcd` of the frequency differences.
pub fn modulus_period(freqs: [i64; 3]) -> f64 {
    TAU / gcd(freqs[1] - freqs[0], freqs[2] - freqs[1]) as f64
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evals = 2;
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evals += 1;
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    (x, fx, evals + 1)
}

/// Samples of `|T|²` on `n` uniform points of `[0, period)`, by complex rotation.
fn grid_modulus_sq(t: &Trinomial, period: f64, n: usize) -> Vec<f64> {
    let h = period / n as f64;
    let coeffs = t.coefficients();
    let steps = t.freqs.map(|f| Complex64::from_polar(1.0, f as f64 * h));
    let mut terms = coeffs;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // re-anchor periodically to keep rotation drift negligible
        if i % 256 == 0 {
            let x = i as f64 * h;
            terms = [0, 1, 2].map(|j| coeffs[j] * Complex64::from_polar(1.0, t.freqs[j] as f64 * x));
        }
        let s = terms[0] + terms[1] + terms[2];
        out.push(s.norm_sqr());
        for j in 0..3 {
            terms[j] *= steps[j];
        }
    }
    out
}

/// Grid maximization of `|T|` over one period followed by golden-section
/// refinement of every discrete local maximum; returns every point whose
/// refined value ties the best one.
pub fn brute_max(t: &Trinomial, grid_n: usize, tol: f64) -> OracleReport {
    let period = modulus_period(t.freqs);
    let n = grid_n.max(16);
    let h = period / n as f64;
    let samples = grid_modulus_sq(t, period, n);
    let mut evaluations = n;
    let f = |x: f64| t.evaluate(x).norm_sqr();

    let mut refined: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        let prev = samples[(i + n - 1) % n];
        let next = samples[(i + 1) % n];
        let cur = samples[i];
        if cur >= prev && cur >= next {
            let x0 = i as f64 * h;
            let (x, fx, e) = golden_section_max(f, x0 - h, x0 + h, tol);
            evaluations += e;
            refined.push((rem_period(x, period), fx));
        }
    }
    let best = refined.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut argmaxes: Vec<f64> = Vec::new();
    let mut tops: Vec<(f64, f64)> =
        refined.into_iter().filter(|p| p.1 >= best * (1.0 - TIE_RELATIVE)).collect();
    tops.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (x, _) in tops {
        if argmaxes
            .iter()
            .all(|&y| circular_diff(x, y, period).abs() > CLUSTER_FRACTION * period)
        {
            argmaxes.push(x);
        }
    }
    argmaxes.sort_by(f64::total_cmp);
    OracleReport {
        value: best.sqrt(),
        argmaxes,
        grid_size: n,
        refine_tol: tol,
        evaluations,
        period,
    }
}

/// Coarse maximum of `|T|` on a grid, without refinement.
fn coarse_max(t: &Trinomial, n: usize) -> f64 {
    let period = modulus_period(t.freqs);
    grid_modulus_sq(t, period, n).into_iter().fold(0.0, f64::max).sqrt()
}

/// Accurate maximum: grid plus refinement of the best few local maxima.
fn fine_max(t: &Trinomial, n: usize) -> f64 {
    let period = modulus_period(t.freqs);
    let h = period / n as f64;
    let samples = grid_modulus_sq(t, period, n);
    let mut peaks: Vec<(usize, f64)> = (0..n)
        .filter(|&i| samples[i] >= samples[(i + n - 1) % n] && samples[i] >= samples[(i + 1) % n])
        .map(|i| (i, samples[i]))
        .collect();
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    peaks
        .iter()
        .take(4)
        .map(|&(i, _)| {
            let x0 = i as f64 * h;
            golden_section_max(|x| t.evaluate(x).norm_sqr(), x0 - h, x0 + h, 1e-12).1
        })
        .fold(0.0, f64::max)
        .sqrt()
}

/// Grid resolution adapted to the bandwidth of the spectrum.
fn grid_for(freqs: [i64; 3], per_unit: usize) -> usize {
    let span = (freqs.iter().max().unwrap() - freqs.iter().min().unwrap()) as f64;
    let g = gcd(freqs[1] - freqs[0], freqs[2] - freqs[1]) as f64;
    ((span / g) as usize * per_unit).max(64)
}

/// Parameters `(w1, w2, φ)`: moduli `(w1, w2, 1 - w1 - w2)` and phases `(0, φ, 0)`.
type Params = [f64; 3];

fn params_trinomial(freqs: [i64; 3], p: &Params) -> Option<Trinomial> {
    let w3 = 1.0 - p[0] - p[1];
    if p[0] <= 0.0 || p[1] <= 0.0 || w3 <= 0.0 {
        return None;
    }
    Some(Trinomial { freqs, moduli: [p[0], p[1], w3], phases: [0.0, p[2], 0.0] })
}

/// Minimizes `objective` over moduli on the simplex and the phase `φ` by a
/// coarse grid followed by shrinking local grids around the best candidates.
fn simplex_phase_search<F>(
    simplex_n: usize,
    phase_n: usize,
    phase_range: f64,
    coarse: F,
    fine: impl Fn(&Params) -> Option<f64> + Sync,
) -> f64
where
    F: Fn(&Params) -> Option<f64> + Sync,
{
    let mut grid: Vec<Params> = Vec::new();
    for i in 1..simplex_n {
        for j in 1..(simplex_n - i) {
            for p in 0..phase_n {
                grid.push([
                    i as f64 / simplex_n as f64,
                    j as f64 / simplex_n as f64,
                    phase_range * p as f64 / phase_n as f64,
                ]);
            }
        }
    }
    let mut scored: Vec<(Params, f64)> = grid
        .par_iter()
        .filter_map(|p| coarse(p).map(|v| (*p, v)))
        .collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut best = f64::INFINITY;
    for &(start, _) in scored.iter().take(6) {
        let mut center = start;
        let mut center_val = fine(&center).unwrap_or(f64::INFINITY);
        let mut step = [1.0 / simplex_n as f64, 1.0 / simplex_n as f64, phase_range / phase_n as f64];
        for _ in 0..30 {
            let mut cands: Vec<Params> = Vec::new();
            for a in -2i32..=2 {
                for b in -2i32..=2 {
                    for c in -2i32..=2 {
                        cands.push([
                            center[0] + a as f64 * step[0] / 2.0,
                            center[1] + b as f64 * step[1] / 2.0,
                            center[2] + c as f64 * step[2] / 2.0,
                        ]);
                    }
                }
            }
            let results: Vec<(Params, f64)> = cands
                .par_iter()
                .filter_map(|p| fine(p).map(|v| (*p, v)))
                .collect();
            if let Some(&(p, v)) = results.iter().min_by(|a, b| a.1.total_cmp(&b.1)) {
                if v < center_val {
                    center = p;
                    center_val = v;
                }
            }
            step = step.map(|s| s * 0.6);
        }
        best = best.min(center_val);
    }
    best
}

/// Empirical Sidon constant: the reciprocal of the minimum of `max|T| / Σ r`
/// over moduli on the simplex and phases on a grid.
///
/// Phases are quotiented by the isometric multipliers: any phase triple is
/// equivalent to `(0, φ, 0)`, and `φ` only matters modulo `2π/D`.
pub fn brute_sidon(freqs: [i64; 3], grid_phases: usize, simplex_n: usize) -> f64 {
    let phase_range = phase_quotient(freqs);
    let coarse_n = grid_for(freqs, 48);
    let fine_n = grid_for(freqs, 64);
    let min_ratio = simplex_phase_search(
        simplex_n,
        grid_phases,
        phase_range,
        |p| params_trinomial(freqs, p).map(|t| coarse_max(&t, coarse_n)),
        |p| params_trinomial(freqs, p).map(|t| fine_max(&t, fine_n)),
    );
    1.0 / min_ratio
}

/// Period in `φ` of `max|r1 e_{λ1} + r2 e^{iφ} e_{λ2} + r3 e_{λ3}|`, i.e. `2π d/diam`.
fn phase_quotient(freqs: [i64; 3]) -> f64 {
    let mut s = freqs;
    s.sort();
    let g = gcd(s[1] - s[0], s[2] - s[1]);
    TAU * g as f64 / (s[2] - s[0]) as f64
}

/// Empirical norm of the multiplier `m`: supremum of `max|MT| / max|T|`.
pub fn brute_multiplier_norm(freqs: [i64; 3], m: &Multiplier) -> f64 {
    let coarse_n = grid_for(freqs, 48);
    let fine_n = grid_for(freqs, 64);
    let ratio = |p: &Params, n: usize, fine: bool| {
        params_trinomial(freqs, p).map(|t| {
            let mt = t.apply(m);
            let (a, b) = if fine {
                (fine_max(&mt, n), fine_max(&t, n))
            } else {
                (coarse_max(&mt, n), coarse_max(&t, n))
            };
            -(a / b)
        })
    };
    -simplex_phase_search(
        24,
        96,
        TAU,
        |p| ratio(p, coarse_n, false),
        |p| ratio(p, fine_n, true),
    )
}

/// Seeded generator of random trinomials: frequencies uniform in
/// `[-12, 12]` and distinct, moduli log-uniform in `[1e-2, 1e2]`, phases
/// uniform in `(-π, π]`.
pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    pub seed: u64,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    pub fn frequencies(&mut self, bound: i64) -> [i64; 3] {
        loop {
            let f = [0; 3].map(|_| self.rng.gen_range(-bound..=bound));
            if f[0] != f[1] && f[1] != f[2] && f[0] != f[2] {
                return f;
            }
        }
    }

    pub fn modulus(&mut self, lo: f64, hi: f64) -> f64 {
        (self.rng.gen_range(lo.ln()..hi.ln())).exp()
    }

    pub fn phase(&mut self) -> f64 {
        self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn trinomial(&mut self) -> Trinomial {
        let freqs = self.frequencies(12);
        let moduli = [0; 3].map(|_| self.modulus(1e-2, 1e2));
        let phases = [0; 3].map(|_| self.phase());
        Trinomial { freqs, moduli, phases }
    }
}
