//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` fail because of published numbers or claims
//! that the formulas do not reproduce; they are reported, never masked. Any
//! other failure makes the process exit non-zero.

use std::time::Instant;

use anharmonic::gap::{critical_coupling, quartic_broken_closed_form};
use anharmonic::ipt::{
    perturbation_matrix_for, printed_quartic_second_order, rs_corrections, second_order_explicit, unperturbed_solution,
};
use anharmonic::oracle::exact_levels;
use anharmonic::spectrum::{level_solution_in_phase, well_referenced_energy};
use anharmonic::susy::{
    ground_wavefunction, norm_squared, oracle_ispp, partner_specs, scaling_residual, wavefunction_distance,
    GroundState, Units, WavefunctionKind,
};
use anharmonic::tables::{
    printed_units_off, table4_lo, table_lo, Cell, TABLE1_EXACT, TABLE1_LAMBDAS, TABLE1_LO, TABLE1_SECOND_ORDER,
    TABLE2_LEVELS, TABLE2_LO, TABLE3_LO, TABLE3_SPOT, TABLE4, TABLE5_SPOT,
};
use anharmonic::vacuum::{condensate_density, condensate_density_rational, stability_gap, vacuum_structure};
use anharmonic::{level_solution, Error, OscillatorSpec, Phase};

const KNOWN_RED: [u32; 4] = [1, 3, 9, 11];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Cells off by more than one printed unit, as `(lambda, n, computed, printed)`.
fn misses(cells: &[Cell], id: u32) -> Vec<(f64, u32, f64, &'static str)> {
    cells
        .iter()
        .filter_map(|c| {
            let v = table_lo(id, c.lambda, c.n).expect("table cell");
            (printed_units_off(c, v).abs() > 1.0).then_some((c.lambda, c.n, v, c.printed))
        })
        .collect()
}

fn list(m: &[(f64, u32, f64, &str)]) -> String {
    m.iter().map(|(l, n, v, p)| format!("({l},{n}) {v:.6} vs {p}")).collect::<Vec<_>>().join("; ")
}

fn c1() -> Outcome {
    let t = Instant::now();
    let m = misses(TABLE1_LO, 1);
    let secs = t.elapsed().as_secs_f64();
    let pass = m.is_empty() && secs < 1.0;
    outcome(pass, format!("{}/24 cells within 1 unit in {secs:.3}s; off: {}", 24 - m.len(), list(&m)))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut note = String::new();
    for &lambda in &TABLE1_LAMBDAS {
        let spec = OscillatorSpec::quartic(1.0, lambda).unwrap();
        let o = exact_levels(&spec, 40, 1e-12).expect("oracle");
        for c in TABLE1_EXACT.iter().filter(|c| c.lambda == lambda) {
            let e = o.eigenvalues[c.n as usize];
            if lambda == 0.1 && c.n == 40 {
                note = format!("excluded (0.1,40): oracle {e:.4} vs printed {}", c.printed);
                continue;
            }
            let p = c.value();
            if (e - p.value).abs() > 5e-4f64.max(p.unit) {
                bad.push(format!("({lambda},{}) {e:.5} vs {}", c.n, c.printed));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < 30.0;
    outcome(pass, format!("23 cells, tolerance max(5e-4, printed unit), {secs:.2}s; {note}; off: {}", bad.join("; ")))
}

fn c3() -> Outcome {
    let m = misses(TABLE2_LO, 2);
    let spec = OscillatorSpec::quartic(-1.0, 1.0).unwrap();
    let sol = level_solution(&spec, 1).unwrap();
    let rational = sol.w == 2.0 && well_referenced_energy(&spec, sol.e0).unwrap() == 2.125;
    outcome(
        m.is_empty() && rational,
        format!(
            "{}/20 cells within 1 unit; (1,1) w={} E=2.1250 exact: {rational}; off: {}",
            20 - m.len(),
            sol.w,
            list(&m)
        ),
    )
}

fn c4() -> Outcome {
    // the mapping 2 E(λ/2) checked on cells outside the spot set first
    let validation: [(f64, u32); 3] = [(100.0, 2), (400.0, 6), (2000.0, 10)];
    let checks: Vec<Cell> = TABLE3_LO.iter().filter(|c| validation.contains(&(c.lambda, c.n))).copied().collect();
    let mapping = misses(&checks, 3);
    let spot = misses(TABLE3_SPOT, 3);
    let all = misses(TABLE3_LO, 3);
    outcome(
        checks.len() == 3 && mapping.is_empty() && spot.is_empty(),
        format!(
            "mapping on 3 validation cells ok: {}; spot 8/8: {}; whole table {}/48 (report only; off: {})",
            mapping.is_empty(),
            spot.is_empty(),
            48 - all.len(),
            list(&all)
        ),
    )
}

fn c5() -> Outcome {
    let m = misses(TABLE5_SPOT, 5);
    outcome(m.is_empty(), format!("{}/3 spot cells; off: {}", 3 - m.len(), list(&m)))
}

fn c6() -> Outcome {
    let mut worst: f64 = 0.0;
    for row in TABLE4 {
        let (aho, dwo) = table4_lo(1.0, row.n).unwrap();
        let pa: f64 = row.aho.parse().unwrap();
        let pd: f64 = row.dwo_next.parse().unwrap();
        worst = worst.max(((aho - pa) / pa).abs()).max(((dwo - pd) / pd).abs());
    }
    let o = oracle_ispp(1.0, 19, 1e-12, Units::Paper).expect("oracle");
    let e0 = o.dwo[0];
    let pass = worst <= 1e-4 && o.max_residual <= 1e-8 && e0.abs() <= 1e-6;
    outcome(
        pass,
        format!("LO x2 worst rel dev {worst:.2e}; oracle ISPP max {:.2e}; oracle E0(dwo) {e0:.2e}", o.max_residual),
    )
}

fn c7() -> Outcome {
    let lambda: f64 = 1e9;
    let spec = OscillatorSpec::quartic(1.0, lambda).unwrap();
    let lo = level_solution(&spec, 0).unwrap().e0 / lambda.cbrt();
    let ex = exact_levels(&spec, 0, 1e-12).unwrap().eigenvalues[0] / lambda.cbrt();
    outcome((lo - 0.68143).abs() <= 1e-4 && (ex - 0.668).abs() <= 0.002, format!("LO {lo:.6}, oracle {ex:.6}"))
}

fn c8() -> Outcome {
    let lc = critical_coupling(1.0, 0.5);
    let mut ok = (lc - 0.0907218).abs() <= 1e-7;
    for frac in [0.01, 0.5, 0.99] {
        let spec = OscillatorSpec::quartic(-1.0, frac * lc).unwrap();
        ok &= level_solution_in_phase(&spec, 0, Phase::SpontaneouslyBroken).is_ok();
    }
    for frac in [1.01, 2.0, 40.0] {
        let spec = OscillatorSpec::quartic(-1.0, frac * lc).unwrap();
        ok &= level_solution_in_phase(&spec, 0, Phase::SpontaneouslyBroken).is_err();
        ok &= matches!(quartic_broken_closed_form(-1.0, frac * lc, 0.5), Err(Error::NoPhysicalRoot { .. }));
    }
    outcome(ok, format!("lambda_c = {lc:.7} (printed value 0.0362886 flagged); SSB exists below, errors above: {ok}"))
}

fn c9() -> Outcome {
    // first order
    let mut first: f64 = 0.0;
    for k in [4u32, 6, 8] {
        for g in [1.0, -1.0] {
            if k == 8 && g < 0.0 {
                continue;
            }
            for lambda in [0.01, 0.1, 1.0, 10.0, 100.0] {
                let spec = OscillatorSpec::new(k, g, lambda).unwrap();
                for n in [0u32, 1, 2, 5, 10] {
                    let s = rs_corrections(&spec, n, 1, None).unwrap();
                    first = first.max((s.corrections[0] / s.e0.abs().max(1.0)).abs());
                }
            }
        }
    }
    let first_ok = first <= 1e-14;

    // quartic ground second order against the stated closed form
    let mut closed_dev: f64 = 0.0;
    for lambda in [0.1, 1.0, 10.0, 100.0] {
        let spec = OscillatorSpec::quartic(1.0, lambda).unwrap();
        let sol = unperturbed_solution(&spec, 0).unwrap();
        let brute = second_order_explicit(&perturbation_matrix_for(&sol, 40).unwrap(), 0, sol.w);
        let closed = -15.0 * lambda * lambda / (16.0 * sol.w.powi(5));
        closed_dev = closed_dev.max(((brute - closed) / closed).abs());
    }
    let closed_ok = closed_dev <= 1e-12;

    // order 2 against order 0, both against the oracle
    let mut better = 0;
    let mut total = 0;
    for (g, levels) in [(1.0, &[0u32, 1, 2, 4, 10, 40][..]), (-1.0, &TABLE2_LEVELS[..])] {
        for &lambda in &TABLE1_LAMBDAS {
            let spec = OscillatorSpec::quartic(g, lambda).unwrap();
            let n_max = *levels.last().unwrap();
            let exact = exact_levels(&spec, n_max, 1e-12).unwrap();
            for &n in levels {
                let s = rs_corrections(&spec, n, 2, None).unwrap();
                let ex = exact.eigenvalues[n as usize];
                better += usize::from((s.energy(2) - ex).abs() < (s.energy(0) - ex).abs());
                total += 1;
            }
        }
    }
    let share = better as f64 / total as f64;
    let improve_ok = share >= 0.8;

    // decay of the corrections
    let mut decay_fail = Vec::new();
    for lambda in [1e-3, 1e-2, 0.1, 1.0, 10.0] {
        let spec = OscillatorSpec::quartic(1.0, lambda).unwrap();
        for n in 0..=10 {
            let c = rs_corrections(&spec, n, 4, None).unwrap().corrections;
            if !(c[3].abs() < c[2].abs() && c[2].abs() < c[1].abs()) {
                decay_fail.push(format!("({lambda},{n})"));
            }
        }
    }

    let spec = OscillatorSpec::quartic(1.0, 0.1).unwrap();
    let s = rs_corrections(&spec, 0, 2, None).unwrap();
    let printed = s.e0 + printed_quartic_second_order(&spec, 0).unwrap();
    let table = TABLE1_SECOND_ORDER[0].printed;

    let pass = first_ok && closed_ok && improve_ok && decay_fail.is_empty();
    outcome(
        pass,
        format!(
            "dE1/E0 max {first:.1e} ok={first_ok}; -15l^2/16w^5 vs brute-force sum rel dev {closed_dev:.3} ok={closed_ok} \
             (exact sum is -3l^2/8w^5); order 2 beats LO on {better}/{total} ({:.0}%) ok={improve_ok}; \
             decay fails at {} of 55 cells {}; E2(0.1,0): {:.5} computed, {printed:.5} from printed matrix elements, {table} printed",
            100.0 * share,
            decay_fail.len(),
            decay_fail.join(" "),
            s.energy(2),
        ),
    )
}

fn c11() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in [0.25, 1.0, 4.0, 100.0] {
        for n in 0..=20 {
            worst = worst.max(scaling_residual(b, n).unwrap().max_relative());
        }
    }
    let scaling_ok = worst < 1e-10;

    // SR against SSB wherever a broken solution exists
    let mut cases: Vec<(OscillatorSpec, u32, bool)> = Vec::new();
    for b in [0.25, 1.0, 4.0, 100.0] {
        for n in 0..=20 {
            cases.push((partner_specs(b).unwrap().dwo, n, true));
        }
    }
    for lambda in [1e-4, 1e-3, 1e-2, 0.1, 1.0] {
        for n in 0..=10 {
            cases.push((OscillatorSpec::sextic(-1.0, lambda).unwrap(), n, false));
        }
    }
    let (mut found, mut susy_found) = (0, 0);
    let mut violations = Vec::new();
    for (spec, n, susy) in cases {
        if let Ok(ssb) = level_solution_in_phase(&spec, n, Phase::SpontaneouslyBroken) {
            found += 1;
            susy_found += usize::from(susy);
            let sr = level_solution_in_phase(&spec, n, Phase::SymmetryRestored).unwrap();
            if sr.e0 > ssb.e0 {
                violations.push(format!("g={} l={} n={n}: SR {:.4} > SSB {:.4}", spec.g, spec.lambda, sr.e0, ssb.e0));
            }
        }
    }
    let shown: Vec<_> = violations.iter().take(3).cloned().collect();
    outcome(
        scaling_ok && violations.is_empty(),
        format!(
            "scaling worst rel {worst:.1e}; SSB solutions on the partner family: {susy_found}; \
             on g=-1 grid SR>SSB in {} of {} cases, e.g. {}",
            violations.len(),
            found - susy_found,
            shown.join("; ")
        ),
    )
}

fn c10() -> Outcome {
    let mut ok = true;
    for e in -3..=3 {
        ok &= stability_gap(10f64.powi(e)).unwrap() < 0.0;
    }
    let n0 = vacuum_structure(1.0, 0.1).unwrap().n0;
    let n0_ok = (n0 - 0.010016).abs() <= 1e-6;
    let strong = vacuum_structure(1.0, 1e9).unwrap();
    let ratio = strong.n0 / 1e3 / (6f64.cbrt() / 4.0);
    let ratio_ok = (ratio - 1.0).abs() < 0.01;
    let mut agree: f64 = 0.0;
    for e in -3..=9 {
        let w = vacuum_structure(1.0, 10f64.powi(e)).unwrap().w;
        let a = condensate_density(1.0, w).unwrap();
        let b = condensate_density_rational(1.0, w).unwrap();
        agree = agree.max((a - b).abs() / a.max(1.0));
    }
    let agree_ok = agree <= 1e-14;
    outcome(
        ok && n0_ok && ratio_ok && agree_ok,
        format!("gap<0 on 1e-3..1e3: {ok}; n0(0.1)={n0:.7}; n0/l^(1/3) ratio to 6^(1/3)/4 = {ratio:.5}; forms agree {agree:.1e}"),
    )
}

fn c12() -> Outcome {
    let mut norm_dev: f64 = 0.0;
    for b in [0.25, 1.0, 100.0] {
        for kind in [WavefunctionKind::SusyExact, WavefunctionKind::NgasLo] {
            norm_dev = norm_dev.max((norm_squared(&GroundState::new(kind, b).unwrap()) - 1.0).abs());
        }
    }
    let base = wavefunction_distance(1.0, (-10.0, 10.0)).unwrap().overlap;
    let mut spread: f64 = 0.0;
    for b in [0.25, 4.0, 100.0] {
        spread = spread.max((wavefunction_distance(b, (-10.0, 10.0)).unwrap().overlap - base).abs());
    }
    let grid: Vec<f64> = (0..=800).map(|i| -2.0 + 0.005 * i as f64).collect();
    let emit = || {
        let a = ground_wavefunction(WavefunctionKind::SusyExact, 100.0, &grid).unwrap();
        let b = ground_wavefunction(WavefunctionKind::NgasLo, 100.0, &grid).unwrap();
        grid.iter().zip(a.iter().zip(&b)).map(|(f, (x, y))| format!("{f:.3},{x:.9e},{y:.9e}\n")).collect::<String>()
    };
    let deterministic = emit() == emit();
    outcome(
        norm_dev <= 1e-8 && spread <= 1e-8 && deterministic,
        format!("norm dev {norm_dev:.1e}; overlap {base:.8} spread over b {spread:.1e}; samples deterministic: {deterministic}"),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "Table 1 leading order", c1),
        (2, "Table 1 exact column", c2),
        (3, "Table 2 leading order", c3),
        (4, "Table 3 spot cells", c4),
        (5, "Table 5 spot cells", c5),
        (6, "Table 4 and exact partner spectra", c6),
        (7, "strong coupling", c7),
        (8, "critical coupling", c8),
        (9, "perturbative corrections", c9),
        (10, "vacuum structure", c10),
        (11, "scaling law and phase ordering", c11),
        (12, "ground-state wavefunctions", c12),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let tag = match (o.pass, KNOWN_RED.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known discrepancy)",
            (false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("criterion {id:>2} {tag}: {name}: {}", o.detail);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
