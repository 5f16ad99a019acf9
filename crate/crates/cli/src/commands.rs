use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use anharmonic::ipt::{rs_corrections, unperturbed_solution, IPTSeries};
use anharmonic::oracle::{exact_levels_with, OracleOptions, OracleSpectrum};
use anharmonic::spectrum::level_solution_in_phase;
use anharmonic::susy::{
    ground_wavefunction, ispp_residual, oracle_ispp, scaling_residual, GroundState, Units, WavefunctionKind,
};
use anharmonic::tables::{
    lo_cells, table4_lo, table_spec, Cell, Convention, TABLE1_EXACT, TABLE1_SECOND_ORDER, TABLE2_SECOND_ORDER, TABLE4,
};
use anharmonic::vacuum::{self, classical_potential, stability_gap, vacuum_structure, PotentialKind};
use anharmonic::{level_solution, Error, OscillatorSpec};

use crate::args::{
    parse_levels, parse_reals, ConventionArg, IsppArgs, LevelArgs, PotentialArgs, ScalingArgs, TableArgs, VacuumArgs,
    WavefunctionArgs,
};
use crate::output::{num, nums, Document};
use crate::Usage;

const HAMILTONIAN: &str = "H = p^2/2 + (g/2) f^2 + lambda f^k";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelCommand {
    Spectrum,
    Ipt,
    Oracle,
}

impl LevelCommand {
    fn name(self) -> &'static str {
        match self {
            LevelCommand::Spectrum => "spectrum",
            LevelCommand::Ipt => "ipt",
            LevelCommand::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LevelRecord {
    pub kind: String,
    pub g: f64,
    pub lambda: f64,
    pub n: u32,
    pub phase: String,
    pub convention: String,
    pub w: f64,
    pub s: f64,
    #[serde(rename = "E0")]
    pub e0: f64,
    pub corrections: Vec<f64>,
    /// `E0` plus all corrections.
    pub energy: f64,
    pub oracle: Option<f64>,
    pub oracle_change: Option<f64>,
    pub basis_dim: Option<usize>,
    pub truncation_warning: Option<bool>,
}

/// Maps half-convention energies onto the reported convention.
#[derive(Debug, Clone, Copy)]
struct Reporting(Option<Convention>);

impl Reporting {
    fn label(self) -> String {
        match self.0 {
            None => "half: E".into(),
            Some(c) => format!("paper: {}", c.describe()),
        }
    }

    fn energy(self, spec: &OscillatorSpec, e: f64) -> Result<f64> {
        match self.0 {
            None => num(e),
            Some(c) => num(c.apply(spec, e)?),
        }
    }

    /// Differences only scale; the well-bottom shift cancels.
    fn difference(self, d: f64) -> Result<f64> {
        match self.0 {
            Some(Convention::Doubled | Convention::DoubledHalfCoupling) => num(2.0 * d),
            _ => num(d),
        }
    }
}

fn oracle_for(spec: &OscillatorSpec, n_max: u32, rel_tol: f64, initial_dim: Option<usize>) -> Result<OracleSpectrum> {
    let opts = OracleOptions { rel_tol, initial_dim, ..OracleOptions::default() };
    Ok(exact_levels_with(spec, n_max, opts)?)
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0) || !rel_tol.is_finite() {
        return Err(Usage(format!("--rel-tol must be positive, got {rel_tol}")).into());
    }
    Ok(())
}

pub fn levels(cmd: LevelCommand, a: &LevelArgs) -> Result<Document> {
    let lambdas = parse_reals("lambda", &a.lambda)?;
    let levels = parse_levels(&a.levels)?;
    check_rel_tol(a.rel_tol)?;
    let order = a.order.unwrap_or(if cmd == LevelCommand::Ipt { 2 } else { 0 }) as usize;
    let phase = a.phase.phase();
    if order > 0 && phase == Some(anharmonic::Phase::SpontaneouslyBroken) {
        return Err(Usage(
            "--phase ssb cannot be combined with --order > 0: corrections expand about the SR oscillator".into(),
        )
        .into());
    }
    let with_oracle = cmd == LevelCommand::Oracle || a.with_oracle;
    let reporting = Reporting(match a.convention {
        ConventionArg::Half => None,
        ConventionArg::Paper => Some(a.kind.paper_convention()),
    });
    let specs = lambdas.iter().map(|&l| a.kind.spec(a.g, l)).collect::<Result<Vec<_>>>()?;
    let n_max = *levels.iter().max().expect("levels are non-empty");
    let (ipt_dim, oracle_dim) = match cmd {
        LevelCommand::Oracle => (None, a.dim),
        _ => (a.dim, None),
    };

    let oracles: Vec<Option<OracleSpectrum>> = specs
        .par_iter()
        .map(|spec| with_oracle.then(|| oracle_for(spec, n_max, a.rel_tol, oracle_dim)).transpose())
        .collect::<Result<_>>()?;

    let cells: Vec<(usize, u32)> = (0..specs.len()).flat_map(|i| levels.iter().map(move |&n| (i, n))).collect();
    let records = cells
        .par_iter()
        .map(|&(i, n)| {
            let spec = &specs[i];
            let (sol, series): (_, Option<IPTSeries>) = if order > 0 {
                (unperturbed_solution(spec, n)?, Some(rs_corrections(spec, n, order, ipt_dim)?))
            } else {
                let sol = match phase {
                    None => level_solution(spec, n)?,
                    Some(p) => level_solution_in_phase(spec, n, p)?,
                };
                (sol, None)
            };
            let total = series.as_ref().map_or(sol.e0, |s| s.energy(order));
            let corrections = match &series {
                Some(s) => s.corrections.iter().map(|&c| reporting.difference(c)).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            let (oracle, oracle_change) = match &oracles[i] {
                Some(o) => (
                    Some(reporting.energy(spec, o.eigenvalues[n as usize])?),
                    Some(num(o.convergence_estimate[n as usize])?),
                ),
                None => (None, None),
            };
            Ok(LevelRecord {
                kind: a.kind.label().into(),
                g: num(spec.g)?,
                lambda: num(spec.lambda)?,
                n,
                phase: sol.phase.label().into(),
                convention: reporting.label(),
                w: num(sol.w)?,
                s: num(sol.s)?,
                e0: reporting.energy(spec, sol.e0)?,
                corrections,
                energy: reporting.energy(spec, total)?,
                oracle,
                oracle_change,
                basis_dim: series.as_ref().map(|s| s.basis_dim),
                truncation_warning: series.as_ref().map(|s| s.truncation_warning),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let meta = json!({
        "command": cmd.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "hamiltonian": HAMILTONIAN,
        "kind": a.kind.label(),
        "g": num(a.kind.signed_g(a.g))?,
        "lambda": nums(&lambdas)?,
        "levels": levels,
        "order": order,
        "phase": match phase { None => "auto", Some(p) => p.label() },
        "convention": reporting.label(),
        "oracle_rel_tol": with_oracle.then_some(num(a.rel_tol)?),
    });
    Document::new(meta, &records)
}

#[derive(Debug, Serialize)]
pub struct TableRecord {
    pub table: u32,
    pub lambda: f64,
    pub n: u32,
    pub convention: String,
    pub lo: f64,
    pub printed_lo: String,
    /// `(lo − printed) / last printed digit`
    pub lo_units_off: f64,
    pub ipt: Option<f64>,
    pub printed_second_order: Option<String>,
    pub oracle: Option<f64>,
    pub printed_exact: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Table4Record {
    pub table: u32,
    pub b: f64,
    pub n: u32,
    pub convention: String,
    pub aho: f64,
    pub dwo_next: f64,
    pub printed_aho: String,
    pub printed_dwo_next: String,
    pub printed_reference: String,
    pub oracle_aho: Option<f64>,
    pub oracle_dwo_next: Option<f64>,
}

fn printed(cells: &[Cell], lambda: f64, n: u32) -> Option<String> {
    cells.iter().find(|c| c.lambda == lambda && c.n == n).map(|c| c.printed.to_string())
}

pub fn table(a: &TableArgs) -> Result<Document> {
    check_rel_tol(a.rel_tol)?;
    let conv = Convention::for_table(a.id)?;
    let label = format!("paper: {}", conv.describe());
    if a.id == 4 {
        if a.order > 0 {
            return Err(Usage("--order is not available for table 4".into()).into());
        }
        return table4(a, &label);
    }
    let cells = lo_cells(a.id)?;
    let mut lambdas: Vec<f64> = Vec::new();
    for c in cells {
        if !lambdas.contains(&c.lambda) {
            lambdas.push(c.lambda);
        }
    }
    let oracles: Vec<Option<OracleSpectrum>> = lambdas
        .par_iter()
        .map(|&l| {
            if !a.with_oracle {
                return Ok(None);
            }
            let n_max = cells.iter().filter(|c| c.lambda == l).map(|c| c.n).max().unwrap_or(0);
            oracle_for(&table_spec(a.id, l)?, n_max, a.rel_tol, None).map(Some)
        })
        .collect::<Result<_>>()?;

    let order = a.order as usize;
    let records = cells
        .par_iter()
        .map(|c| {
            let spec = table_spec(a.id, c.lambda)?;
            let lo = num(conv.apply(&spec, level_solution(&spec, c.n)?.e0)?)?;
            let ipt = if order > 0 {
                Some(num(conv.apply(&spec, rs_corrections(&spec, c.n, order, None)?.energy(order))?)?)
            } else {
                None
            };
            let i = lambdas.iter().position(|&l| l == c.lambda).expect("lambda listed");
            let oracle = match &oracles[i] {
                Some(o) => Some(num(conv.apply(&spec, o.eigenvalues[c.n as usize])?)?),
                None => None,
            };
            let p = c.value();
            Ok(TableRecord {
                table: a.id,
                lambda: c.lambda,
                n: c.n,
                convention: label.clone(),
                lo,
                printed_lo: c.printed.into(),
                lo_units_off: num((lo - p.value) / p.unit)?,
                ipt,
                printed_second_order: match a.id {
                    1 => printed(TABLE1_SECOND_ORDER, c.lambda, c.n),
                    2 => printed(TABLE2_SECOND_ORDER, c.lambda, c.n),
                    _ => None,
                },
                oracle,
                printed_exact: (a.id == 1).then(|| printed(TABLE1_EXACT, c.lambda, c.n)).flatten(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let system = match a.id {
        1 => "quartic, g = 1",
        2 => "quartic, g = -1",
        3 => "sextic, g = 1",
        _ => "octic, g = 1",
    };
    let meta = json!({
        "command": "table",
        "version": env!("CARGO_PKG_VERSION"),
        "hamiltonian": HAMILTONIAN,
        "table": a.id,
        "system": system,
        "convention": label,
        "order": order,
        "oracle_rel_tol": a.with_oracle.then_some(num(a.rel_tol)?),
    });
    Document::new(meta, &records)
}

fn table4(a: &TableArgs, label: &str) -> Result<Document> {
    let b = 1.0;
    let oracle =
        if a.with_oracle { Some(oracle_ispp(b, TABLE4.len() as u32 - 1, a.rel_tol, Units::Paper)?) } else { None };
    let records = TABLE4
        .par_iter()
        .map(|row| {
            let (aho, dwo_next) = table4_lo(b, row.n)?;
            Ok(Table4Record {
                table: 4,
                b,
                n: row.n,
                convention: label.into(),
                aho: num(aho)?,
                dwo_next: num(dwo_next)?,
                printed_aho: row.aho.into(),
                printed_dwo_next: row.dwo_next.into(),
                printed_reference: row.reference.into(),
                oracle_aho: oracle.as_ref().map(|o| num(o.aho[row.n as usize])).transpose()?,
                oracle_dwo_next: oracle.as_ref().map(|o| num(o.dwo[row.n as usize + 1])).transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "table",
        "version": env!("CARGO_PKG_VERSION"),
        "hamiltonian": HAMILTONIAN,
        "table": 4,
        "system": "sextic partners, lambda = b^2/2, g = +3b (aho) and -3b (dwo)",
        "convention": label,
        "b": b,
        "oracle_rel_tol": a.with_oracle.then_some(num(a.rel_tol)?),
    });
    Document::new(meta, &records)
}

#[derive(Debug, Serialize)]
pub struct VacuumRecord {
    pub g: f64,
    pub lambda: f64,
    pub w: f64,
    pub w0: f64,
    pub alpha: f64,
    pub n0: f64,
    #[serde(rename = "E0")]
    pub e0: f64,
    pub e0_perturbative: f64,
    /// Only defined for `g = 1`.
    pub stability_gap: Option<f64>,
}

pub fn vacuum(a: &VacuumArgs) -> Result<Document> {
    let lambdas = parse_reals("lambda", &a.lambda)?;
    let records = lambdas
        .par_iter()
        .map(|&l| {
            let v = vacuum_structure(a.g, l)?;
            Ok(VacuumRecord {
                g: num(v.g)?,
                lambda: num(v.lambda)?,
                w: num(v.w)?,
                w0: num(v.w0)?,
                alpha: num(v.alpha)?,
                n0: num(v.n0)?,
                e0: num(v.e0)?,
                e0_perturbative: num(v.e0_pert)?,
                stability_gap: if a.g == 1.0 { Some(num(stability_gap(l)?)?) } else { None },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "vacuum",
        "version": env!("CARGO_PKG_VERSION"),
        "hamiltonian": "H = p^2/2 + (g/2) f^2 + lambda f^4",
        "g": num(a.g)?,
        "lambda": nums(&lambdas)?,
    });
    Document::new(meta, &records)
}

#[derive(Debug, Serialize)]
pub struct PotentialRecord {
    pub lambda: f64,
    pub s: f64,
    pub classical: f64,
    pub ngas: f64,
    pub perturbative: f64,
}

pub fn effective_potential(a: &PotentialArgs) -> Result<Document> {
    let lambdas = parse_reals("lambda", &a.lambda)?;
    let grid = parse_reals("grid", &a.grid)?;
    if let Some(l) = lambdas.iter().find(|&&l| !(l > 0.0)) {
        return Err(Usage(format!("--lambda must be positive, got {l}")).into());
    }
    let cells: Vec<(f64, f64)> = lambdas.iter().flat_map(|&l| grid.iter().map(move |&s| (l, s))).collect();
    let records = cells
        .par_iter()
        .map(|&(l, s)| {
            Ok(PotentialRecord {
                lambda: num(l)?,
                s: num(s)?,
                classical: num(classical_potential(l, s))?,
                ngas: num(vacuum::effective_potential(l, s, PotentialKind::Ngas))?,
                perturbative: num(vacuum::effective_potential(l, s, PotentialKind::Perturbative))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "effective-potential",
        "version": env!("CARGO_PKG_VERSION"),
        "hamiltonian": "H = p^2/2 + f^2/2 + lambda f^4",
        "lambda": nums(&lambdas)?,
        "points": grid.len(),
    });
    Document::new(meta, &records)
}

fn units(c: ConventionArg) -> Units {
    match c {
        ConventionArg::Half => Units::Half,
        ConventionArg::Paper => Units::Paper,
    }
}

#[derive(Debug, Serialize)]
pub struct IsppRecord {
    pub b: f64,
    pub n: u32,
    pub units: String,
    pub aho: f64,
    pub dwo_next: f64,
    pub residual: f64,
    pub oracle_aho: Option<f64>,
    pub oracle_dwo_next: Option<f64>,
    pub oracle_residual: Option<f64>,
}

pub fn ispp(a: &IsppArgs) -> Result<Document> {
    let bs = parse_reals("b", &a.b)?;
    let levels = parse_levels(&a.levels)?;
    check_rel_tol(a.rel_tol)?;
    let u = units(a.convention);
    let n_max = *levels.iter().max().expect("levels are non-empty");
    let oracles = bs
        .par_iter()
        .map(|&b| a.with_oracle.then(|| oracle_ispp(b, n_max, a.rel_tol, u)).transpose().map_err(Error::into))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, u32)> = (0..bs.len()).flat_map(|i| levels.iter().map(move |&n| (i, n))).collect();
    let records = cells
        .par_iter()
        .map(|&(i, n)| {
            let r = ispp_residual(bs[i], n, u)?;
            let (oa, od) = match &oracles[i] {
                Some(o) => (Some(o.aho[n as usize]), Some(o.dwo[n as usize + 1])),
                None => (None, None),
            };
            Ok(IsppRecord {
                b: num(r.b)?,
                n,
                units: u.label().into(),
                aho: num(r.aho)?,
                dwo_next: num(r.dwo_next)?,
                residual: num(r.residual)?,
                oracle_aho: oa.map(num).transpose()?,
                oracle_dwo_next: od.map(num).transpose()?,
                oracle_residual: oa.zip(od).map(|(x, y)| num(y - x)).transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "susy ispp",
        "version": env!("CARGO_PKG_VERSION"),
        "system": "sextic partners, lambda = b^2/2, g = +3b (aho) and -3b (dwo)",
        "units": u.label(),
        "b": nums(&bs)?,
        "levels": levels,
        "oracle_rel_tol": a.with_oracle.then_some(num(a.rel_tol)?),
    });
    Document::new(meta, &records)
}

#[derive(Debug, Serialize)]
pub struct ScalingRecord {
    pub b: f64,
    pub n: u32,
    pub aho_energy: f64,
    pub dwo_energy: f64,
    pub aho_residual: f64,
    pub dwo_residual: f64,
    pub max_relative: f64,
}

pub fn scaling(a: &ScalingArgs) -> Result<Document> {
    let bs = parse_reals("b", &a.b)?;
    let levels = parse_levels(&a.levels)?;
    let cells: Vec<(f64, u32)> = bs.iter().flat_map(|&b| levels.iter().map(move |&n| (b, n))).collect();
    let records = cells
        .par_iter()
        .map(|&(b, n)| {
            let r = scaling_residual(b, n)?;
            Ok(ScalingRecord {
                b: num(b)?,
                n,
                aho_energy: num(r.aho_energy)?,
                dwo_energy: num(r.dwo_energy)?,
                aho_residual: num(r.aho)?,
                dwo_residual: num(r.dwo)?,
                max_relative: num(r.max_relative())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "susy scaling",
        "version": env!("CARGO_PKG_VERSION"),
        "law": "E(b) = sqrt(b) E(1), half units",
        "b": nums(&bs)?,
        "levels": levels,
    });
    Document::new(meta, &records)
}

#[derive(Debug, Serialize)]
pub struct WavefunctionRecord {
    pub f: f64,
    pub susy_exact: f64,
    pub ngas_lo: f64,
}

fn state_meta(s: &GroundState) -> Result<Value> {
    Ok(json!({
        "amplitude": num(s.amplitude)?,
        "rate": num(s.rate)?,
        "sigma": num(s.sigma)?,
    }))
}

pub fn wavefunction(a: &WavefunctionArgs) -> Result<Document> {
    let grid = parse_reals("grid", &a.grid)?;
    let exact = ground_wavefunction(WavefunctionKind::SusyExact, a.b, &grid)?;
    let lo = ground_wavefunction(WavefunctionKind::NgasLo, a.b, &grid)?;
    let records = grid
        .iter()
        .zip(exact.iter().zip(&lo))
        .map(|(&f, (&x, &y))| Ok(WavefunctionRecord { f: num(f)?, susy_exact: num(x)?, ngas_lo: num(y)? }))
        .collect::<Result<Vec<_>>>()?;
    let meta = json!({
        "command": "susy wavefunction",
        "version": env!("CARGO_PKG_VERSION"),
        "b": num(a.b)?,
        "susy_exact": state_meta(&GroundState::new(WavefunctionKind::SusyExact, a.b)?)?,
        "ngas_lo": state_meta(&GroundState::new(WavefunctionKind::NgasLo, a.b)?)?,
        "points": grid.len(),
    });
    Document::new(meta, &records)
}
