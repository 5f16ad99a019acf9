//! Sextic partner pair of the superpotential `W = b f³`.
//!
//! `½(W² ± W′)` gives the anharmonic oscillator `λ = b²/2, g = 3b` and the
//! double well with `g = −3b`. Unbroken supersymmetry makes the pair
//! iso-spectral, `E_{n+1}(dwo) = E_n(aho)`, with `E_0(dwo) = 0` exactly.
//!
//! Published numbers for this pair use `p² + W² ± W′`, twice the Hamiltonian
//! used here; [`Units::Paper`] applies that factor.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::oracle::{exact_levels_with, OracleOptions};
use crate::quadrature::integrate;
use crate::spectrum::level_solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// `H = ½p² + …`
    Half,
    /// `H = p² + …`
    Paper,
}

impl Units {
    pub fn factor(self) -> f64 {
        match self {
            Units::Half => 1.0,
            Units::Paper => 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Units::Half => "half",
            Units::Paper => "paper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartnerPair {
    pub b: f64,
    pub aho: OscillatorSpec,
    pub dwo: OscillatorSpec,
}

pub fn partner_specs(b: f64) -> Result<PartnerPair> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("superpotential coefficient must be positive, got {b}")));
    }
    let lambda = 0.5 * b * b;
    Ok(PartnerPair { b, aho: OscillatorSpec::sextic(3.0 * b, lambda)?, dwo: OscillatorSpec::sextic(-3.0 * b, lambda)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsppResidual {
    pub b: f64,
    pub n: u32,
    pub units: Units,
    pub aho: f64,
    pub dwo_next: f64,
    /// `E_{n+1}(dwo) − E_n(aho)`
    pub residual: f64,
}

pub fn ispp_residual(b: f64, n: u32, units: Units) -> Result<IsppResidual> {
    let pair = partner_specs(b)?;
    let aho = level_solution(&pair.aho, n)?.e0 * units.factor();
    let dwo_next = level_solution(&pair.dwo, n + 1)?.e0 * units.factor();
    Ok(IsppResidual { b, n, units, aho, dwo_next, residual: dwo_next - aho })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingResidual {
    pub b: f64,
    pub n: u32,
    /// `E(b) − √b E(1)` for each partner, in half units.
    pub aho: f64,
    pub dwo: f64,
    pub aho_energy: f64,
    pub dwo_energy: f64,
}

impl ScalingResidual {
    pub fn max_relative(&self) -> f64 {
        (self.aho / self.aho_energy).abs().max((self.dwo / self.dwo_energy).abs())
    }
}

pub fn scaling_residual(b: f64, n: u32) -> Result<ScalingResidual> {
    let pair = partner_specs(b)?;
    let unit = partner_specs(1.0)?;
    let rb = b.sqrt();
    let aho_energy = level_solution(&pair.aho, n)?.e0;
    let dwo_energy = level_solution(&pair.dwo, n)?.e0;
    Ok(ScalingResidual {
        b,
        n,
        aho: aho_energy - rb * level_solution(&unit.aho, n)?.e0,
        dwo: dwo_energy - rb * level_solution(&unit.dwo, n)?.e0,
        aho_energy,
        dwo_energy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WavefunctionKind {
    /// `(8b)^{1/8} e^{−b f⁴/4} / √Γ(¼)`, the zero mode of the double well.
    SusyExact,
    /// Gaussian ground state of the leading-order double-well oscillator.
    NgasLo,
}

/// A ground-state amplitude as a closure-friendly value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState {
    pub kind: WavefunctionKind,
    pub b: f64,
    /// Norm prefactor.
    pub amplitude: f64,
    /// `b/4` for the exact state, `w/2` for the Gaussian.
    pub rate: f64,
    /// Root-mean-square width `√⟨f²⟩`.
    pub sigma: f64,
}

impl GroundState {
    pub fn new(kind: WavefunctionKind, b: f64) -> Result<Self> {
        let pair = partner_specs(b)?;
        Ok(match kind {
            WavefunctionKind::SusyExact => {
                let g14 = gamma(0.25);
                Self {
                    kind,
                    b,
                    amplitude: (8.0 * b).powf(0.125) / g14.sqrt(),
                    rate: 0.25 * b,
                    // ⟨f²⟩ = √(2/b) Γ(¾)/Γ(¼) for the density e^{−b f⁴/2}
                    sigma: ((2.0 / b).sqrt() * gamma(0.75) / g14).sqrt(),
                }
            }
            WavefunctionKind::NgasLo => {
                let w = level_solution(&pair.dwo, 0)?.w;
                Self {
                    kind,
                    b,
                    amplitude: (w / std::f64::consts::PI).powf(0.25),
                    rate: 0.5 * w,
                    sigma: (0.5 / w).sqrt(),
                }
            }
        })
    }

    pub fn eval(&self, f: f64) -> f64 {
        let p = match self.kind {
            WavefunctionKind::SusyExact => f.powi(4),
            WavefunctionKind::NgasLo => f * f,
        };
        self.amplitude * (-self.rate * p).exp()
    }

    /// Effective frequency of the Gaussian, or `None` for the exact state.
    pub fn frequency(&self) -> Option<f64> {
        matches!(self.kind, WavefunctionKind::NgasLo).then_some(2.0 * self.rate)
    }
}

pub fn ground_wavefunction(kind: WavefunctionKind, b: f64, grid: &[f64]) -> Result<Vec<f64>> {
    if grid.iter().any(|f| !f.is_finite()) {
        return Err(Error::InvalidArgument("grid must be finite".into()));
    }
    let psi = GroundState::new(kind, b)?;
    Ok(grid.iter().map(|&f| psi.eval(f)).collect())
}

/// Integration half-width, far enough out that both densities are below
/// double-precision resolution.
fn cutoff(states: &[GroundState]) -> f64 {
    states.iter().map(|s| 40.0 * s.sigma).fold(0.0, f64::max)
}

const QUAD_TOL: f64 = 1e-13;
const PANELS: usize = 64;

/// `∫|ψ|²` over the real line.
pub fn norm_squared(state: &GroundState) -> f64 {
    let l = cutoff(&[*state]);
    // integrand is even
    2.0 * integrate(|f| state.eval(f).powi(2), 0.0, l, PANELS, QUAD_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionDistance {
    pub b: f64,
    pub overlap: f64,
    pub l2_distance: f64,
}

/// Overlap and L2 distance of the exact and leading-order ground states.
///
/// Integrals run over the whole line; `span` is the sampling window the
/// caller intends to plot and must cover ±4σ of the wider density.
pub fn wavefunction_distance(b: f64, span: (f64, f64)) -> Result<WavefunctionDistance> {
    let exact = GroundState::new(WavefunctionKind::SusyExact, b)?;
    let lo = GroundState::new(WavefunctionKind::NgasLo, b)?;
    let need = 4.0 * exact.sigma.max(lo.sigma);
    if span.0 > -need || span.1 < need {
        return Err(Error::InsufficientGrid { lo: span.0, hi: span.1, need });
    }
    let l = cutoff(&[exact, lo]);
    let overlap = 2.0 * integrate(|f| exact.eval(f) * lo.eval(f), 0.0, l, PANELS, QUAD_TOL);
    let l2 = 2.0 * integrate(|f| (exact.eval(f) - lo.eval(f)).powi(2), 0.0, l, PANELS, QUAD_TOL);
    Ok(WavefunctionDistance { b, overlap, l2_distance: l2.max(0.0).sqrt() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleIspp {
    pub b: f64,
    pub units: Units,
    pub basis_w: f64,
    /// `E_n(aho)` for `n = 0..=n_max`
    pub aho: Vec<f64>,
    /// `E_n(dwo)` for `n = 0..=n_max + 1`
    pub dwo: Vec<f64>,
    pub max_residual: f64,
}

/// Exact iso-spectrality from the diagonalization oracle.
pub fn oracle_ispp(b: f64, n_max: u32, rel_tol: f64, units: Units) -> Result<OracleIspp> {
    let pair = partner_specs(b)?;
    // one basis for both partners
    let basis_w = level_solution(&pair.dwo, 0)?.w;
    let opts = OracleOptions { basis_w: Some(basis_w), rel_tol, ..Default::default() };
    let scale = units.factor();
    let aho: Vec<f64> = exact_levels_with(&pair.aho, n_max, opts)?.eigenvalues.iter().map(|e| e * scale).collect();
    let dwo: Vec<f64> = exact_levels_with(&pair.dwo, n_max + 1, opts)?.eigenvalues.iter().map(|e| e * scale).collect();
    let max_residual = aho.iter().zip(&dwo[1..]).map(|(a, d)| (d - a).abs()).fold(0.0, f64::max);
    Ok(OracleIspp { b, units, basis_w, aho, dwo, max_residual })
}
