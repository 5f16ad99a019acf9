//! Leading-order solution of a level: phase, shift, frequency, the
//! parameters of the effective potential `V(f) = A f² − B f + C`, and the
//! energy `E⁽⁰⁾ = w x + h₀`.
//!
//! `A` comes from stationarity of `⟨H⟩` in `w`, `B = w² s / λ` keeps the
//! effective oscillator centred on `⟨f⟩ = s`, and `C` is fixed so that the
//! effective and true interactions have the same average in level `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::{critical_coupling, solve_gap};
use crate::model::{hamiltonian_average, level_factors, moment, OscillatorSpec, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveSolution {
    pub spec: OscillatorSpec,
    pub n: u32,
    pub phase: Phase,
    pub w: f64,
    /// `⟨f⟩`, reported non-negative in the broken phase.
    pub s: f64,
    pub s_sq: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub h0: f64,
    pub e0: f64,
}

impl EffectiveSolution {
    pub fn x(&self) -> f64 {
        level_factors(self.n).x
    }
}

/// Squared displacement of the broken phase at frequency `w`.
///
/// Quartic: `4λ s² = |g| − 12λ x / w`. Sextic: the positive root in `s²` of
/// `s⁴ + (10x/w) s² + 15(4x² + 1)/(8w²) + g/(6λ) = 0`.
pub fn ssb_displacement(spec: &OscillatorSpec, x: f64, w: f64) -> Result<f64> {
    if spec.g >= 0.0 {
        return Err(Error::NoSsbSolution(format!("g = {} is not a double well", spec.g)));
    }
    if !(w > 0.0) || !(spec.lambda > 0.0) {
        return Err(Error::InvalidArgument("w and lambda must be positive".into()));
    }
    let (g, lambda) = (spec.g, spec.lambda);
    match spec.k {
        4 => {
            let s_sq = (-g - 12.0 * lambda * x / w) / (4.0 * lambda);
            if s_sq < 0.0 {
                return Err(Error::NoSsbSolution(format!("quartic displacement s² = {s_sq} < 0 at w = {w}")));
            }
            Ok(s_sq)
        }
        6 => {
            let half_b = 5.0 * x / w;
            let c = 15.0 * (4.0 * x * x + 1.0) / (8.0 * w * w) + g / (6.0 * lambda);
            let disc = half_b * half_b - c;
            if disc < 0.0 {
                return Err(Error::NoSsbSolution(format!(
                    "sextic displacement equation has negative discriminant {disc} at w = {w}"
                )));
            }
            let root = disc.sqrt();
            // stable larger root of u² + 2·half_b·u + c = 0
            let u = if c < 0.0 { -c / (half_b + root) } else { root - half_b };
            if !(u > 0.0) {
                return Err(Error::NoSsbSolution(format!(
                    "sextic displacement equation has no positive root at w = {w}"
                )));
            }
            Ok(u)
        }
        k => Err(Error::NoSsbSolution(format!("broken phase not defined for k = {k}"))),
    }
}

/// `(A, B, C)` of the effective potential for shift `s` and frequency `w`.
pub fn potential_params(spec: &OscillatorSpec, s: f64, w: f64, x: f64) -> Result<(f64, f64, f64)> {
    let s2 = s * s;
    let a = match spec.k {
        4 => 6.0 * s2 + 3.0 * (x + 0.25 / x) / w,
        6 => {
            15.0 * s2 * s2
                + 45.0 * s2 * (1.0 + 4.0 * x * x) / (4.0 * w * x)
                + 15.0 / (8.0 * w * w) * (5.0 + 4.0 * x * x)
        }
        8 => {
            if s != 0.0 {
                return Err(Error::UnsupportedMoment { k: 8, s });
            }
            let h = x * x * x + 3.5 * x + 9.0 / (16.0 * x);
            35.0 * h / (2.0 * w * w * w)
        }
        k => return Err(Error::InvalidSpec(format!("k = {k}"))),
    };
    let b = if s == 0.0 { 0.0 } else { w * w * s / spec.lambda };
    let c = moment(spec.k, s, w, x)? - a * moment(2, s, w, x)? + b * moment(1, s, w, x)?;
    Ok((a, b, c))
}

fn assemble(spec: &OscillatorSpec, n: u32, phase: Phase, w: f64, s_sq: f64) -> Result<EffectiveSolution> {
    let x = level_factors(n).x;
    let s = s_sq.sqrt();
    let (a, b, c) = potential_params(spec, s, w, x)?;
    let h0 = spec.lambda * c - 0.5 * w * w * s_sq;
    Ok(EffectiveSolution { spec: *spec, n, phase, w, s, s_sq, a, b, c, h0, e0: w * x + h0 })
}

/// Solution of level `n` restricted to one phase.
pub fn level_solution_in_phase(spec: &OscillatorSpec, n: u32, phase: Phase) -> Result<EffectiveSolution> {
    let x = level_factors(n).x;
    match phase {
        Phase::SymmetryRestored => {
            let w = solve_gap(spec, x, phase)?;
            assemble(spec, n, phase, w, 0.0)
        }
        Phase::SpontaneouslyBroken => {
            if spec.g >= 0.0 {
                return Err(Error::NoSsbSolution(format!("g = {} is not a double well", spec.g)));
            }
            match spec.k {
                4 => {
                    let w = solve_gap(spec, x, phase)?;
                    let s_sq = ssb_displacement(spec, x, w)?;
                    assemble(spec, n, phase, w, s_sq)
                }
                6 => {
                    let (w, s_sq) = sextic_broken_stationary_point(spec, x)?;
                    assemble(spec, n, phase, w, s_sq)
                }
                k => Err(Error::NoSsbSolution(format!("broken phase not defined for k = {k}"))),
            }
        }
    }
}

/// Leading-order solution of level `n`, in the energetically favoured phase.
///
/// For double wells both phases are solved where the broken one exists and
/// the lower `E⁽⁰⁾` is kept.
pub fn level_solution(spec: &OscillatorSpec, n: u32) -> Result<EffectiveSolution> {
    let sr = level_solution_in_phase(spec, n, Phase::SymmetryRestored)?;
    if spec.g >= 0.0 {
        return Ok(sr);
    }
    let x = level_factors(n).x;
    if spec.k == 4 && spec.lambda > critical_coupling(-spec.g, x) {
        return Ok(sr);
    }
    match level_solution_in_phase(spec, n, Phase::SpontaneouslyBroken) {
        Ok(ssb) if ssb.e0 < sr.e0 => Ok(ssb),
        Ok(_) | Err(Error::NoSsbSolution(_)) | Err(Error::NoPhysicalRoot { .. }) => Ok(sr),
        Err(e) => Err(e),
    }
}

/// Sextic double well, broken phase: minimize `⟨H⟩` over `w` along the curve
/// `s²(w)` that already minimizes over the shift.
///
/// Along that curve `d⟨H⟩/dw = ∂⟨H⟩/∂w`, so local minima are located by
/// sign changes (− to +) of the partial derivative on a log grid, refined by
/// bisection. The lowest minimum is returned.
pub fn sextic_broken_stationary_point(spec: &OscillatorSpec, x: f64) -> Result<(f64, f64)> {
    if spec.k != 6 || spec.g >= 0.0 || !(spec.lambda > 0.0) {
        return Err(Error::NoSsbSolution("requires a sextic double well with lambda > 0".into()));
    }
    let (g, lambda) = (spec.g, spec.lambda);
    let gm = -g;
    // below w_min the displacement equation has no positive root
    let w_min = (45.0 * lambda * (4.0 * x * x + 1.0) / (4.0 * gm)).sqrt();
    let w_sr = solve_gap(spec, x, Phase::SymmetryRestored)?;
    let w_hi = 100.0 * w_min.max(gm.sqrt()).max(w_sr);
    let slope = |w: f64| -> Option<f64> {
        let u = ssb_displacement(spec, x, w).ok()?;
        let d6 = -15.0 * u * u * x / (w * w)
            - 90.0 * u * (1.0 + 4.0 * x * x) / (8.0 * w * w * w)
            - 1.875 * x * (5.0 + 4.0 * x * x) / w.powi(4);
        Some(0.5 * x - 0.5 * g * x / (w * w) + lambda * d6)
    };
    let energy = |w: f64, u: f64| hamiltonian_average(spec, u.sqrt(), w, x);

    const STEPS: usize = 2000;
    let lo = w_min * (1.0 + 1e-9);
    let ratio = (w_hi / lo).powf(1.0 / STEPS as f64);
    let mut best: Option<(f64, f64, f64)> = None;
    let mut prev = (lo, slope(lo));
    for i in 1..=STEPS {
        let w = lo * ratio.powi(i as i32);
        let cur = (w, slope(w));
        if let (Some(d0), Some(d1)) = (prev.1, cur.1) {
            if d0 < 0.0 && d1 >= 0.0 {
                let (mut a, mut b) = (prev.0, cur.0);
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    match slope(m) {
                        Some(d) if d < 0.0 => a = m,
                        _ => b = m,
                    }
                }
                let w_star = 0.5 * (a + b);
                let u = ssb_displacement(spec, x, w_star)?;
                let e = energy(w_star, u)?;
                if best.is_none_or(|(_, _, eb)| e < eb) {
                    best = Some((w_star, u, e));
                }
            }
        }
        prev = cur;
    }
    best.map(|(w, u, _)| (w, u)).ok_or_else(|| {
        Error::NoSsbSolution(format!("no broken-phase stationary point for k=6, g={g}, lambda={lambda}, x={x}"))
    })
}

/// Closed-form `E⁽⁰⁾` for the phase and family, from the solved frequency.
pub fn lo_energy_closed_form(spec: &OscillatorSpec, n: u32, phase: Phase) -> Result<f64> {
    let x = level_factors(n).x;
    let g = spec.g;
    let e = match (spec.k, phase) {
        (4, Phase::SymmetryRestored) => {
            let w = solve_gap(spec, x, phase)?;
            0.25 * x * (3.0 * w + g / w)
        }
        (4, Phase::SpontaneouslyBroken) => {
            let w = solve_gap(spec, x, phase)?;
            0.25 * x * (3.0 * w - 2.0 * g / w) - g * g / (16.0 * spec.lambda)
        }
        (6, Phase::SymmetryRestored) => {
            let w = solve_gap(spec, x, phase)?;
            x / 3.0 * (2.0 * w + g / w)
        }
        (8, Phase::SymmetryRestored) => {
            let w = solve_gap(spec, x, phase)?;
            0.125 * x * (5.0 * w + 3.0 * g / w)
        }
        _ => return Err(Error::UnsupportedGap { k: spec.k, g, phase }),
    };
    Ok(e)
}

/// Double-well energy measured from the bottom of either classical well,
/// `E + g²/(16λ)` (quartic only).
pub fn well_referenced_energy(spec: &OscillatorSpec, e0: f64) -> Result<f64> {
    if spec.g >= 0.0 || spec.k != 4 {
        return Err(Error::InvalidArgument(
            "well-referenced energy is defined for the quartic double well only".into(),
        ));
    }
    Ok(e0 + spec.g * spec.g / (16.0 * spec.lambda))
}

/// `λ(⟨f^k⟩ − A⟨f²⟩ + B⟨f⟩ − C)`; vanishes by construction of `C`.
pub fn cea_residual(solution: &EffectiveSolution) -> f64 {
    let spec = &solution.spec;
    let (s, w, x) = (solution.s, solution.w, solution.x());
    let avg = |k| moment(k, s, w, x).unwrap_or(f64::NAN);
    spec.lambda * (avg(spec.k) - solution.a * avg(2) + solution.b * avg(1) - solution.c)
}
