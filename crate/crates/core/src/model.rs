//! Oscillator definitions, per-level factors and Fock-state moments.
//!
//! Every Hamiltonian handled by the crate has the form
//!
//! ```text
//! H = p²/2 + (g/2) f² + λ f^k,   k ∈ {4, 6, 8}
//! ```
//!
//! with `g` signed: `g > 0` is an anharmonic oscillator, `g < 0` a double well.
//! The effective oscillator replaces `λ f^k` by `λ (A f² − B f + C)` and is
//! diagonalized by `f = s + (b + b†)/√(2w)`. Averages below are taken in the
//! n-th eigenstate of that shifted oscillator, parameterized by `x = n + ½`.
//!
//! The quadratic coefficient in [`hamiltonian_average`] is the signed `g`
//! throughout. The quartic formula is sometimes quoted with the coefficient
//! fixed to one; here it always tracks `g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which Hamiltonian: anharmonic power `k`, signed quadratic coefficient `g`
/// and coupling `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub k: u32,
    pub g: f64,
    pub lambda: f64,
}

impl OscillatorSpec {
    /// Validated constructor.
    ///
    /// `lambda == 0` is accepted only for `g > 0` (the free oscillator); a
    /// double well has no free limit.
    pub fn new(k: u32, g: f64, lambda: f64) -> Result<Self> {
        if !matches!(k, 4 | 6 | 8) {
            return Err(Error::InvalidSpec(format!("k must be 4, 6 or 8, got {k}")));
        }
        if !g.is_finite() || !lambda.is_finite() {
            return Err(Error::InvalidSpec("g and lambda must be finite".into()));
        }
        if lambda < 0.0 {
            return Err(Error::InvalidSpec(format!("lambda must be >= 0, got {lambda}")));
        }
        if g < 0.0 && k == 8 {
            return Err(Error::InvalidSpec("octic double well is not supported".into()));
        }
        if lambda == 0.0 && g <= 0.0 {
            return Err(Error::InvalidSpec("lambda = 0 requires g > 0 (a double well has no free limit)".into()));
        }
        Ok(Self { k, g, lambda })
    }

    pub fn quartic(g: f64, lambda: f64) -> Result<Self> {
        Self::new(4, g, lambda)
    }

    pub fn sextic(g: f64, lambda: f64) -> Result<Self> {
        Self::new(6, g, lambda)
    }

    pub fn octic(g: f64, lambda: f64) -> Result<Self> {
        Self::new(8, g, lambda)
    }

    pub fn is_double_well(&self) -> bool {
        self.g < 0.0
    }
}

/// Realized vacuum of the effective oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    SymmetryRestored,
    SpontaneouslyBroken,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::SymmetryRestored => "SR",
            Phase::SpontaneouslyBroken => "SSB",
        }
    }
}

/// Combinatorial factors of level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelFactors {
    pub n: u32,
    /// `n + ½`
    pub x: f64,
    /// `x + 1/(4x)`, quartic gap equation
    pub f: f64,
    /// `5x − 1/(4x)`, quartic double-well broken phase
    pub p: f64,
    /// `x³ + 7x/2 + 9/(16x)`, octic gap equation
    pub h: f64,
}

pub fn level_factors(n: u32) -> LevelFactors {
    let x = level_x(n);
    LevelFactors { n, x, f: x + 0.25 / x, p: 5.0 * x - 0.25 / x, h: x * x * x + 3.5 * x + 9.0 / (16.0 * x) }
}

/// `x = n + ½`, exact in binary for every representable level.
pub fn level_x(n: u32) -> f64 {
    f64::from(n) + 0.5
}

/// `⟨n|f^k|n⟩` for the shifted oscillator of frequency `w` and shift `s`.
///
/// Supported powers are 1, 2, 3, 4, 6 and 8; the octic moment is only
/// available at `s = 0`.
pub fn moment(k: u32, s: f64, w: f64, x: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(format!("frequency must be positive, got {w}")));
    }
    let s2 = s * s;
    let xw = x / w;
    let m = match k {
        1 => s,
        2 => s2 + xw,
        3 => s * (s2 + 3.0 * xw),
        4 => s2 * s2 + 6.0 * s2 * xw + (3.0 + 12.0 * x * x) / (8.0 * w * w),
        6 => {
            s2 * s2 * s2
                + 15.0 * s2 * s2 * xw
                + 45.0 * s2 * (1.0 + 4.0 * x * x) / (8.0 * w * w)
                + 0.625 * xw / (w * w) * (5.0 + 4.0 * x * x)
        }
        8 => {
            if s != 0.0 {
                return Err(Error::UnsupportedMoment { k, s });
            }
            let h = x * x * x + 3.5 * x + 9.0 / (16.0 * x);
            35.0 * x * h / (8.0 * w.powi(4))
        }
        _ => return Err(Error::UnsupportedMoment { k, s }),
    };
    Ok(m)
}

/// `⟨n|H|n⟩ = wx/2 + (g/2)⟨f²⟩ + λ⟨f^k⟩`.
pub fn hamiltonian_average(spec: &OscillatorSpec, s: f64, w: f64, x: f64) -> Result<f64> {
    let fk = moment(spec.k, s, w, x)?;
    let f2 = moment(2, s, w, x)?;
    Ok(0.5 * w * x + 0.5 * spec.g * f2 + spec.lambda * fk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ground_level_factors() {
        let lf = level_factors(0);
        assert_eq!(lf.x, 0.5);
        assert_eq!(lf.f, 1.0);
        assert_eq!(lf.p, 2.0);
        assert_eq!(lf.h, 3.0);
        // 70·x·h(x) = 7!! = ⟨0|(b+b†)⁸|0⟩
        assert_relative_eq!(70.0 * lf.x * lf.h, 105.0, max_relative = 1e-15);
    }

    #[test]
    fn first_excited_factors() {
        let lf = level_factors(1);
        assert_eq!(lf.x, 1.5);
        assert_relative_eq!(lf.f, 1.5 + 1.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn factors_increase_with_level() {
        for n in 0..200 {
            let a = level_factors(n);
            let b = level_factors(n + 1);
            assert!(b.f > a.f && b.p > a.p && b.h > a.h);
            assert!(a.f >= 1.0 && a.h >= 3.0);
        }
    }

    #[test]
    fn unshifted_moments_at_ground_state() {
        assert_eq!(moment(2, 0.0, 1.0, 0.5).unwrap(), 0.5);
        assert_relative_eq!(moment(4, 0.0, 1.0, 0.5).unwrap(), 0.75, max_relative = 1e-15);
        assert_relative_eq!(moment(6, 0.0, 1.0, 0.5).unwrap(), 1.875, max_relative = 1e-15);
        assert_relative_eq!(moment(8, 0.0, 1.0, 0.5).unwrap(), 105.0 / 16.0, max_relative = 1e-15);
    }

    #[test]
    fn octic_moment_rejects_shift() {
        assert!(matches!(moment(8, 0.3, 1.0, 0.5), Err(Error::UnsupportedMoment { k: 8, .. })));
        assert!(moment(5, 0.0, 1.0, 0.5).is_err());
        assert!(moment(2, 0.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn shift_covariance() {
        for &(s, w, x) in &[(0.3, 1.2, 0.5), (-2.0, 0.7, 3.5), (5.0, 10.0, 40.5)] {
            assert_eq!(moment(1, s, w, x).unwrap(), s);
            let d = moment(2, s, w, x).unwrap() - s * s;
            assert_relative_eq!(d, moment(2, 0.0, w, x).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn free_average_is_harmonic() {
        let spec = OscillatorSpec::quartic(1.0, 0.0).unwrap();
        assert_eq!(hamiltonian_average(&spec, 0.0, 1.0, 0.5).unwrap(), 0.5);
        let spec = OscillatorSpec::sextic(2.5, 0.0).unwrap();
        for &(s, w, x) in &[(0.0, 1.0, 0.5), (0.4, 1.7, 2.5)] {
            let want = w * x / 2.0 + 2.5 * (s * s + x / w) / 2.0;
            assert_relative_eq!(hamiltonian_average(&spec, s, w, x).unwrap(), want, max_relative = 1e-14);
        }
    }

    #[test]
    fn quartic_average_matches_closed_expression() {
        // wx/2 + (g + 12λs²)(x/2w) + (3λ/8w²)(1 + 4x²) + g s²/2 + λ s⁴
        let (g, lambda, s, w, x) = (1.3, 0.7, 0.4, 1.9, 2.5);
        let spec = OscillatorSpec::quartic(g, lambda).unwrap();
        let want = w * x / 2.0
            + (g + 12.0 * lambda * s * s) * x / (2.0 * w)
            + 3.0 * lambda / (8.0 * w * w) * (1.0 + 4.0 * x * x)
            + g * s * s / 2.0
            + lambda * s.powi(4);
        assert_relative_eq!(hamiltonian_average(&spec, s, w, x).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn spec_validation() {
        assert!(OscillatorSpec::new(5, 1.0, 1.0).is_err());
        assert!(OscillatorSpec::new(4, 1.0, -1.0).is_err());
        assert!(OscillatorSpec::new(8, -1.0, 1.0).is_err());
        assert!(OscillatorSpec::new(4, -1.0, 0.0).is_err());
        assert!(OscillatorSpec::new(4, 1.0, 0.0).is_ok());
        assert!(OscillatorSpec::new(6, -3.0, 0.5).unwrap().is_double_well());
    }
}
