//! Rayleigh–Schrödinger corrections about the effective oscillator of one
//! level.
//!
//! For level `n` the unperturbed Hamiltonian is the effective oscillator with
//! that level's `w`, so its spectrum is `w(m + ½) + h₀` and every energy
//! denominator is `w (n − m)`. The perturbation is
//! `λH′ = λ (f^k − A f² + B f − C)`; its `(n, n)` element vanishes by
//! construction of `C`, hence `ΔE⁽¹⁾ = 0`.
//!
//! Only the symmetric vacuum (`s = 0`) is handled.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{OscillatorSpec, Phase};
use crate::spectrum::{level_solution, level_solution_in_phase, EffectiveSolution};

pub const MAX_ORDER: usize = 4;

/// Relative change that flags a basis as too small.
const TRUNCATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IPTSeries {
    pub spec: OscillatorSpec,
    pub n: u32,
    pub w: f64,
    pub basis_dim: usize,
    pub e0: f64,
    /// `ΔE⁽¹⁾ … ΔE⁽ᴷ⁾`
    pub corrections: Vec<f64>,
    /// `E⁽⁰⁾, E⁽⁰⁾ + ΔE⁽¹⁾, …`
    pub partial_sums: Vec<f64>,
    /// Largest relative change of any correction when the basis grows by `k`.
    pub enrichment_change: f64,
    pub truncation_warning: bool,
}

impl IPTSeries {
    pub fn energy(&self, order: usize) -> f64 {
        self.partial_sums[order.min(self.partial_sums.len() - 1)]
    }
}

/// `(b + b†)/√(2w)` on the first `dim` Fock states.
fn position_matrix(w: f64, dim: usize) -> DMatrix<f64> {
    let scale = (2.0 * w).sqrt();
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 || i == j + 1 { (i.max(j) as f64).sqrt() / scale } else { 0.0 })
}

/// `f^k` restricted to `dim` states. Products are taken in `dim + k` so the
/// retained block is exact.
pub fn position_power_matrix(k: u32, w: f64, dim: usize) -> DMatrix<f64> {
    let big = dim + k as usize;
    let f = position_matrix(w, big);
    let mut acc = DMatrix::<f64>::identity(big, big);
    for _ in 0..k {
        acc = &acc * &f;
    }
    let mut out = acc.view((0, 0), (dim, dim)).into_owned();
    // exact symmetry, the product order leaves ulp-level noise
    symmetrize(&mut out);
    out
}

/// `p²` with `p = i√(w/2)(b† − b)`, restricted to `dim` states.
pub fn momentum_squared_matrix(w: f64, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            w * (i as f64 + 0.5)
        } else if j == i + 2 || i == j + 2 {
            let m = i.min(j) as f64;
            -w * ((m + 1.0) * (m + 2.0)).sqrt() / 2.0
        } else {
            0.0
        }
    })
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Solution used as the unperturbed problem: the symmetric phase.
///
/// Double wells are expanded about the SR solution even where SSB has the
/// lower energy; the displaced vacuum is not supported.
pub fn unperturbed_solution(spec: &OscillatorSpec, n: u32) -> Result<EffectiveSolution> {
    let sol = if spec.is_double_well() {
        level_solution_in_phase(spec, n, Phase::SymmetryRestored)?
    } else {
        level_solution(spec, n)?
    };
    if sol.phase != Phase::SymmetryRestored || sol.s != 0.0 {
        return Err(Error::SsbUnsupported);
    }
    Ok(sol)
}

/// `λH′` in the eigenbasis of the effective oscillator of `solution`.
pub fn perturbation_matrix_for(solution: &EffectiveSolution, dim: usize) -> Result<DMatrix<f64>> {
    if solution.s != 0.0 {
        return Err(Error::SsbUnsupported);
    }
    let spec = &solution.spec;
    let fk = position_power_matrix(spec.k, solution.w, dim);
    let f2 = position_power_matrix(2, solution.w, dim);
    let mut v = (fk - f2 * solution.a) * spec.lambda;
    for i in 0..dim {
        v[(i, i)] -= spec.lambda * solution.c;
    }
    Ok(v)
}

pub fn perturbation_matrix(spec: &OscillatorSpec, n: u32, dim: usize) -> Result<DMatrix<f64>> {
    let sol = unperturbed_solution(spec, n)?;
    perturbation_matrix_for(&sol, dim)
}

pub fn default_dim(k: u32, n: u32) -> usize {
    (n + 3 * k + 1) as usize
}

/// Energy corrections through `max_order` by the RS recursion with
/// intermediate normalization.
fn recursion(v: &DMatrix<f64>, n: usize, w: f64, max_order: usize) -> Vec<f64> {
    let dim = v.nrows();
    let resolvent: Vec<f64> = (0..dim).map(|m| if m == n { 0.0 } else { 1.0 / (w * (n as f64 - m as f64)) }).collect();
    let mut psi: Vec<Vec<f64>> = vec![(0..dim).map(|m| if m == n { 1.0 } else { 0.0 }).collect()];
    let mut e = vec![0.0; max_order + 1];
    for j in 1..=max_order {
        let prev = &psi[j - 1];
        e[j] = (0..dim).map(|m| v[(n, m)] * prev[m]).sum();
        let mut next = vec![0.0; dim];
        for (m, slot) in next.iter_mut().enumerate() {
            if m == n {
                continue;
            }
            let mut acc: f64 = (0..dim).map(|l| v[(m, l)] * prev[l]).sum();
            for i in 1..=j {
                acc -= e[i] * psi[j - i][m];
            }
            *slot = resolvent[m] * acc;
        }
        psi.push(next);
    }
    e.remove(0);
    e
}

pub fn rs_corrections(spec: &OscillatorSpec, n: u32, max_order: usize, dim: Option<usize>) -> Result<IPTSeries> {
    if max_order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("order must be <= {MAX_ORDER}, got {max_order}")));
    }
    let sol = unperturbed_solution(spec, n)?;
    let dim = dim.unwrap_or_else(|| default_dim(spec.k, n));
    if dim <= n as usize {
        return Err(Error::InvalidArgument(format!("basis dim {dim} does not contain level {n}")));
    }
    let corrections = recursion(&perturbation_matrix_for(&sol, dim)?, n as usize, sol.w, max_order);

    let wider = dim + spec.k as usize;
    let check = recursion(&perturbation_matrix_for(&sol, wider)?, n as usize, sol.w, max_order);
    let floor = 1e-12 * sol.e0.abs().max(1.0);
    let enrichment_change =
        corrections.iter().zip(&check).map(|(a, b)| (a - b).abs() / a.abs().max(floor)).fold(0.0, f64::max);

    let mut partial_sums = vec![sol.e0];
    for c in &corrections {
        partial_sums.push(partial_sums.last().unwrap() + c);
    }
    Ok(IPTSeries {
        spec: *spec,
        n,
        w: sol.w,
        basis_dim: dim,
        e0: sol.e0,
        corrections,
        partial_sums,
        enrichment_change,
        truncation_warning: enrichment_change > TRUNCATION_TOL,
    })
}

pub fn ipt_energy(spec: &OscillatorSpec, n: u32, order: usize) -> Result<f64> {
    if order == 0 {
        return Ok(unperturbed_solution(spec, n)?.e0);
    }
    Ok(rs_corrections(spec, n, order, None)?.energy(order))
}

/// `Σ_{m≠n} |V_mn|² / (w(n − m))`
pub fn second_order_explicit(v: &DMatrix<f64>, n: usize, w: f64) -> f64 {
    (0..v.nrows()).filter(|&m| m != n).map(|m| v[(n, m)].powi(2) / (w * (n as f64 - m as f64))).sum()
}

/// Textbook third order: `Σ V_nm V_ml V_ln / (D_nm D_nl) − V_nn Σ |V_nm|²/D_nm²`.
pub fn third_order_explicit(v: &DMatrix<f64>, n: usize, w: f64) -> f64 {
    let dim = v.nrows();
    let d = |m: usize| w * (n as f64 - m as f64);
    let mut sum = 0.0;
    for m in (0..dim).filter(|&m| m != n) {
        for l in (0..dim).filter(|&l| l != n) {
            sum += v[(n, m)] * v[(m, l)] * v[(l, n)] / (d(m) * d(l));
        }
    }
    let diag: f64 = (0..dim).filter(|&m| m != n).map(|m| v[(n, m)].powi(2) / d(m).powi(2)).sum();
    sum - v[(n, n)] * diag
}

/// Quartic second order evaluated with the printed `⟨m|f⁴|n⟩` table, whose
/// `n ± 2` entry carries `1/(4w²)` where the ladder algebra gives `1/(2w²)`.
///
/// Kept only to show where the printed second-order numbers come from; at
/// `n = 0` it equals `−15λ²/(16w⁵)`.
pub fn printed_quartic_second_order(spec: &OscillatorSpec, n: u32) -> Result<f64> {
    if spec.k != 4 {
        return Err(Error::InvalidArgument("printed matrix elements exist for k = 4 only".into()));
    }
    let sol = unperturbed_solution(spec, n)?;
    let (w, lambda, nf) = (sol.w, spec.lambda, f64::from(n));
    let a = sol.a;
    let mut total = 0.0;
    let mut add = |m: f64, f4: f64, f2: f64| {
        let v = lambda * (f4 - a * f2);
        total += v * v / (w * (nf - m));
    };
    let up2 = ((nf + 1.0) * (nf + 2.0)).sqrt();
    let up4 = (nf + 1.0) * (nf + 2.0) * (nf + 3.0) * (nf + 4.0);
    add(nf + 2.0, (2.0 * nf + 3.0) * up2 / (4.0 * w * w), up2 / (2.0 * w));
    add(nf + 4.0, up4.sqrt() / (4.0 * w * w), 0.0);
    if n >= 2 {
        let dn2 = (nf * (nf - 1.0)).sqrt();
        add(nf - 2.0, (2.0 * nf - 1.0) * dn2 / (4.0 * w * w), dn2 / (2.0 * w));
    }
    if n >= 4 {
        let dn4 = nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0);
        add(nf - 4.0, dn4.sqrt() / (4.0 * w * w), 0.0);
    }
    Ok(total)
}
