//! Structure of the effective vacuum for the single-well quartic oscillator.
//!
//! The effective vacuum is a squeezed state of the free (`w₀ = √g`) quanta with
//! `α = ½ ln(w₀/w)`; its free-quanta density is `n₀ = sinh²α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::quartic_symmetric_closed_form;
use crate::model::OscillatorSpec;
use crate::spectrum::level_solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotentialKind {
    Ngas,
    Perturbative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumStructure {
    pub g: f64,
    pub lambda: f64,
    pub w: f64,
    pub w0: f64,
    pub alpha: f64,
    pub n0: f64,
    pub e0: f64,
    pub e0_pert: f64,
}

fn free_frequency(g: f64, w: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "free frequency needs g > 0, got {g} (a double well has no free limit)"
        )));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(format!("frequency must be positive, got {w}")));
    }
    Ok(g.sqrt())
}

pub fn bogoliubov_alpha(g: f64, w: f64) -> Result<f64> {
    let w0 = free_frequency(g, w)?;
    Ok(0.5 * (w0 / w).ln())
}

/// `n₀ = sinh²α`.
pub fn condensate_density(g: f64, w: f64) -> Result<f64> {
    Ok(bogoliubov_alpha(g, w)?.sinh().powi(2))
}

/// `n₀ = ¼ (w/w₀ + w₀/w − 2)`, algebraically equal to `sinh²α`.
pub fn condensate_density_rational(g: f64, w: f64) -> Result<f64> {
    let w0 = free_frequency(g, w)?;
    Ok(0.25 * (w / w0 + w0 / w - 2.0))
}

/// `½ s² + λ s⁴`
pub fn classical_potential(lambda: f64, s: f64) -> f64 {
    0.5 * s * s + lambda * s.powi(4)
}

/// Effective potential of the displacement `s` for `g = 1`, `k = 4`.
///
/// The perturbative form fixes `w = 1`; the effective one solves
/// `w³ − (1 + 12λs²) w − 6λ = 0` at each `s`.
pub fn effective_potential(lambda: f64, s: f64, kind: PotentialKind) -> f64 {
    let stiff = 1.0 + 12.0 * lambda * s * s;
    let quantum = match kind {
        PotentialKind::Perturbative => 0.5 + 3.0 * lambda * (s * s + 0.25),
        PotentialKind::Ngas => {
            let w = quartic_symmetric_closed_form(stiff, lambda, 0.5);
            w / 4.0 + stiff / (4.0 * w) + 3.0 * lambda / (4.0 * w * w)
        }
    };
    quantum + classical_potential(lambda, s)
}

/// `E₀ − E₀^pert` for `g = 1`; negative for every `λ > 0`.
pub fn stability_gap(lambda: f64) -> Result<f64> {
    let v = vacuum_structure(1.0, lambda)?;
    Ok(v.e0 - v.e0_pert)
}

pub fn vacuum_structure(g: f64, lambda: f64) -> Result<VacuumStructure> {
    let spec = OscillatorSpec::quartic(g, lambda)?;
    if spec.is_double_well() {
        return Err(Error::InvalidArgument("vacuum structure needs g > 0".into()));
    }
    let sol = level_solution(&spec, 0)?;
    let w0 = g.sqrt();
    Ok(VacuumStructure {
        g,
        lambda,
        w: sol.w,
        w0,
        alpha: bogoliubov_alpha(g, sol.w)?,
        n0: condensate_density(g, sol.w)?,
        e0: sol.e0,
        // ⟨0|H|0⟩ in the free vacuum
        e0_pert: 0.5 * w0 + 3.0 * lambda / (4.0 * g),
    })
}
