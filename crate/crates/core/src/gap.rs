//! Gap equations for the effective frequency `w` and their solution.
//!
//! Stationarity of `⟨n|H|n⟩` in `w` at fixed shift gives, per family,
//!
//! | family                  | polynomial in `w`                  |
//! |-------------------------|------------------------------------|
//! | quartic, `s = 0`        | `w³ − g w − 6λ f(x)`               |
//! | quartic well, `s ≠ 0`   | `w³ + 2g w + 6λ p(x)`  (`g < 0`)   |
//! | sextic, `s = 0`         | `w⁴ − g w² − (15λ/4)(5 + 4x²)`     |
//! | octic, `s = 0`          | `w⁵ − g w³ − 35λ h(x)`             |
//!
//! `g` is signed everywhere, so the symmetric-phase rows cover both the
//! anharmonic and the double-well case.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{level_factors, OscillatorSpec, Phase};

/// A gap polynomial, coefficients in ascending powers of `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapProblem {
    pub spec: OscillatorSpec,
    pub x: f64,
    pub phase: Phase,
    pub coefficients: Vec<f64>,
}

impl GapProblem {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, w: f64) -> f64 {
        horner(&self.coefficients, w)
    }
}

fn factors_for_x(x: f64) -> (f64, f64, f64) {
    let f = x + 0.25 / x;
    let p = 5.0 * x - 0.25 / x;
    let h = x * x * x + 3.5 * x + 9.0 / (16.0 * x);
    (f, p, h)
}

pub fn gap_polynomial(spec: &OscillatorSpec, x: f64, phase: Phase) -> Result<GapProblem> {
    let (f, p, h) = factors_for_x(x);
    let (g, lambda) = (spec.g, spec.lambda);
    let coefficients = match (spec.k, phase) {
        (4, Phase::SymmetryRestored) => vec![-6.0 * lambda * f, -g, 0.0, 1.0],
        (4, Phase::SpontaneouslyBroken) if g < 0.0 => vec![6.0 * lambda * p, 2.0 * g, 0.0, 1.0],
        (6, Phase::SymmetryRestored) => {
            vec![-3.75 * lambda * (5.0 + 4.0 * x * x), 0.0, -g, 0.0, 1.0]
        }
        (8, Phase::SymmetryRestored) => vec![-35.0 * lambda * h, 0.0, 0.0, -g, 0.0, 1.0],
        _ => return Err(Error::UnsupportedGap { k: spec.k, g, phase }),
    };
    Ok(GapProblem { spec: *spec, x, phase, coefficients })
}

/// Largest coupling for which the broken-phase quartic cubic keeps a real
/// root with `w ≥ √(2g/3)`: `λ_c = (2g/3)^{3/2} / (3 p(x))`, `g = |g|`.
pub fn critical_coupling(g: f64, x: f64) -> f64 {
    let (_, p, _) = factors_for_x(x);
    (2.0 * g / 3.0).powf(1.5) / (3.0 * p)
}

/// Positive frequency solving the gap equation of `(spec, x, phase)`.
///
/// The broken phase takes the branch continuous with `√(2|g|)` at `λ = 0`,
/// which is the larger of the two positive roots.
pub fn solve_gap(spec: &OscillatorSpec, x: f64, phase: Phase) -> Result<f64> {
    let problem = gap_polynomial(spec, x, phase)?;
    if spec.lambda == 0.0 {
        // w = √g by construction; the polynomial degenerates to powers of w.
        return Ok(spec.g.sqrt());
    }
    match phase {
        Phase::SpontaneouslyBroken => {
            let w0 = quartic_broken_closed_form(spec.g, spec.lambda, x)?;
            Ok(polish(&problem.coefficients, w0, (2.0 * spec.g.abs() / 3.0).sqrt()))
        }
        Phase::SymmetryRestored => {
            let roots = positive_real_roots(&problem.coefficients);
            roots
                .last()
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("gap polynomial has no positive root for {spec:?}")))
        }
    }
}

/// Cardano form of the symmetric-phase quartic root,
/// `w = (3λf)^{1/3} [(1 + √(1 − r))^{1/3} + (1 − √(1 − r))^{1/3}]` with
/// `r = g³ / (243 λ² f²)` for `g > 0`, and
/// `w = (3λf)^{1/3} [(√(1 + r) + 1)^{1/3} − (√(1 + r) − 1)^{1/3}]`,
/// `r = |g|³ / (243 λ² f²)` for `g < 0`.
pub fn quartic_symmetric_closed_form(g: f64, lambda: f64, x: f64) -> f64 {
    let (f, _, _) = factors_for_x(x);
    let scale = (3.0 * lambda * f).cbrt();
    let r = g.abs().powi(3) / (243.0 * lambda * lambda * f * f);
    if g < 0.0 {
        let root = (1.0 + r).sqrt();
        // √(1+r) − 1 without cancellation
        let small = r / (root + 1.0);
        scale * ((root + 1.0).cbrt() - small.cbrt())
    } else if r <= 1.0 {
        let root = (1.0 - r).sqrt();
        let small = r / (1.0 + root);
        scale * ((1.0 + root).cbrt() + small.cbrt())
    } else {
        // complex-conjugate pair of cube roots: 2 Re[(1 + i√(r−1))^{1/3}]
        let theta = (r - 1.0).sqrt().atan();
        scale * 2.0 * r.powf(1.0 / 6.0) * (theta / 3.0).cos()
    }
}

/// Trigonometric root of the broken-phase cubic,
/// `w = 2√(2g/3) cos(π/6 + asin(λ/λ_c)/3)`, `g = |g|`.
pub fn quartic_broken_closed_form(g: f64, lambda: f64, x: f64) -> Result<f64> {
    let gm = g.abs();
    let lambda_c = critical_coupling(gm, x);
    if lambda > lambda_c {
        return Err(Error::NoPhysicalRoot { lambda, lambda_c });
    }
    let ratio = (lambda / lambda_c).min(1.0);
    Ok(2.0 * (2.0 * gm / 3.0).sqrt() * (PI / 6.0 + ratio.asin() / 3.0).cos())
}

/// Positive root of the sextic symmetric-phase equation, quadratic in `w²`.
pub fn sextic_symmetric_closed_form(g: f64, lambda: f64, x: f64) -> f64 {
    let c = 3.75 * lambda * (5.0 + 4.0 * x * x);
    let w2 = if g >= 0.0 {
        0.5 * (g + (g * g + 4.0 * c).sqrt())
    } else {
        // stable form of (g + √(g² + 4c))/2 for g < 0
        2.0 * c / ((g * g + 4.0 * c).sqrt() - g)
    };
    w2.sqrt()
}

fn horner(coefficients: &[f64], w: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * w + c)
}

fn horner_abs(coefficients: &[f64], w: f64) -> f64 {
    let wa = w.abs();
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * wa + c.abs())
}

fn derivative(coefficients: &[f64]) -> Vec<f64> {
    coefficients.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

fn trimmed(coefficients: &[f64]) -> &[f64] {
    let mut end = coefficients.len();
    while end > 0 && coefficients[end - 1] == 0.0 {
        end -= 1;
    }
    &coefficients[..end]
}

/// Newton refinement that never leaves `[floor, ∞)` and never worsens the
/// residual. Used where a closed form already sits on the root.
fn polish(coefficients: &[f64], start: f64, floor: f64) -> f64 {
    let d = derivative(coefficients);
    let mut w = start;
    let mut res = horner(coefficients, w).abs();
    for _ in 0..8 {
        let slope = horner(&d, w);
        if slope == 0.0 {
            break;
        }
        let next = w - horner(coefficients, w) / slope;
        let next_res = horner(coefficients, next).abs();
        if !(next >= floor) || !(next_res < res) {
            break;
        }
        w = next;
        res = next_res;
    }
    w
}

/// All real roots in `(0, ∞)` of a polynomial of degree ≤ 5, ascending.
///
/// Roots are isolated between consecutive critical points (found
/// recursively from the derivative) inside the Cauchy bound, so each
/// monotone piece holds at most one root. Tangent roots are picked up at
/// critical points whose value vanishes to rounding.
pub fn positive_real_roots(coefficients: &[f64]) -> Vec<f64> {
    let mut c = trimmed(coefficients);
    if c.len() < 2 {
        return Vec::new();
    }
    // roots at w = 0 are not positive
    while c.len() > 1 && c[0] == 0.0 {
        c = &c[1..];
    }
    let lead = *c.last().unwrap();
    let bound = 1.0 + c[..c.len() - 1].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    roots_in(c, 0.0, bound)
}

fn roots_in(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c = trimmed(c);
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -c[0] / c[1];
            return if r > lo && r < hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let crit = roots_in(&derivative(c), lo, hi);
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(lo);
    knots.extend(crit.iter().copied());
    knots.push(hi);

    let mut roots = Vec::new();
    for pair in knots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (pa, pb) = (horner(c, a), horner(c, b));
        if pa * pb < 0.0 {
            roots.push(bracketed_newton(c, a, b, pa));
        }
    }
    for &x in &crit {
        let tol = 1e-12 * horner_abs(c, x).max(f64::MIN_POSITIVE);
        if horner(c, x).abs() <= tol {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
    roots
}

/// Newton iteration kept inside a sign-change bracket; falls back to
/// bisection whenever a step leaves the bracket.
fn bracketed_newton(c: &[f64], mut a: f64, mut b: f64, pa: f64) -> f64 {
    let d = derivative(c);
    let sign_a = pa.signum();
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let px = horner(c, x);
        if px == 0.0 {
            return x;
        }
        if px.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let slope = horner(&d, x);
        let newton = if slope != 0.0 { x - px / slope } else { f64::NAN };
        let next = if newton > a && newton < b { newton } else { 0.5 * (a + b) };
        let step = (next - x).abs();
        x = next;
        let residual = horner(c, x).abs();
        if step <= 1e-13 * x.abs() && residual <= 1e-13 * horner_abs(c, x) {
            break;
        }
        if b - a <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    x
}

/// Solve the gap equation for level `n` (convenience wrapper).
pub fn solve_gap_level(spec: &OscillatorSpec, n: u32, phase: Phase) -> Result<f64> {
    solve_gap(spec, level_factors(n).x, phase)
}
