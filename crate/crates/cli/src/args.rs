use clap::{Args, Parser, Subcommand, ValueEnum};

use anharmonic::tables::Convention;
use anharmonic::{OscillatorSpec, Phase};

use crate::Usage;

#[derive(Debug, Parser)]
#[command(
    name = "anharmonic",
    version,
    about = "Effective-oscillator spectra of anharmonic and double-well oscillators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leading-order levels, optionally with perturbative corrections.
    Spectrum(LevelArgs),
    /// Perturbative corrections about the effective oscillator.
    Ipt(LevelArgs),
    /// Levels from direct diagonalization, next to leading order.
    Oracle(LevelArgs),
    /// A published table recomputed under its own convention.
    Table(TableArgs),
    /// Vacuum of the quartic oscillator: frequency, Bogoliubov angle, condensate.
    Vacuum(VacuumArgs),
    /// Effective potential of the quartic vacuum as a function of the shift.
    EffectivePotential(PotentialArgs),
    /// Supersymmetric sextic partner pair.
    Susy {
        #[command(subcommand)]
        command: SusyCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum SusyCommand {
    /// Iso-spectrality E_{n+1}(dwo) = E_n(aho), leading order (and oracle).
    Ispp(IsppArgs),
    /// Residuals of E(b) = √b E(1) for both partners.
    Scaling(ScalingArgs),
    /// Ground-state amplitudes sampled on a grid.
    Wavefunction(WavefunctionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    QuarticAho,
    QuarticDwo,
    SexticAho,
    SexticDwo,
    OcticAho,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::QuarticAho => "quartic-aho",
            Kind::QuarticDwo => "quartic-dwo",
            Kind::SexticAho => "sextic-aho",
            Kind::SexticDwo => "sextic-dwo",
            Kind::OcticAho => "octic-aho",
        }
    }

    pub fn power(self) -> u32 {
        match self {
            Kind::QuarticAho | Kind::QuarticDwo => 4,
            Kind::SexticAho | Kind::SexticDwo => 6,
            Kind::OcticAho => 8,
        }
    }

    /// `g` carries the sign of the kind; the flag gives its magnitude.
    pub fn signed_g(self, magnitude: f64) -> f64 {
        match self {
            Kind::QuarticDwo | Kind::SexticDwo => -magnitude,
            _ => magnitude,
        }
    }

    pub fn spec(self, g: f64, lambda: f64) -> anyhow::Result<OscillatorSpec> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Usage(format!("--g is a magnitude and must be positive, got {g}")).into());
        }
        OscillatorSpec::new(self.power(), self.signed_g(g), lambda).map_err(|e| Usage(e.to_string()).into())
    }

    /// Table convention used when `--convention paper` is asked for.
    pub fn paper_convention(self) -> Convention {
        match self {
            Kind::QuarticAho => Convention::Plain,
            Kind::QuarticDwo => Convention::WellBottom,
            _ => Convention::Doubled,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// Energies of ½p² + ½g f² + λ f^k.
    Half,
    /// The convention of the matching published table.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    /// The lower of the available phases.
    Auto,
    Sr,
    Ssb,
}

impl PhaseArg {
    pub fn phase(self) -> Option<Phase> {
        match self {
            PhaseArg::Auto => None,
            PhaseArg::Sr => Some(Phase::SymmetryRestored),
            PhaseArg::Ssb => Some(Phase::SpontaneouslyBroken),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Magnitude of the quadratic coupling.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Comma-separated values or `a:b:step` ranges.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// `n`, `a..b` (inclusive) or `n,m,...`.
    #[arg(long, default_value = "0")]
    pub levels: String,
    /// Perturbative order, 0 to 4. Defaults to 2 for `ipt`, 0 otherwise.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4))]
    pub order: Option<u32>,
    /// Basis size of the perturbative sums, or the starting size for `oracle`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Convergence tolerance of the diagonalization.
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub phase: PhaseArg,
    /// Attach diagonalization results to every record.
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, value_enum, default_value = "half")]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=5))]
    pub id: u32,
    /// Add perturbative energies at this order (tables 1, 2, 3 and 5).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4), default_value_t = 0)]
    pub order: u32,
    /// Add diagonalization results.
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VacuumArgs {
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Shift values, `a:b:step` or a list.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IsppArgs {
    /// Superpotential coefficient(s).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "0..19")]
    pub levels: String,
    #[arg(long, value_enum, default_value = "half")]
    pub convention: ConventionArg,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, default_value = "0.25,1,4,100", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "0..20")]
    pub levels: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Sample points, `a:b:step` or a list.
    #[arg(long, default_value = "-2:2:0.005", allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Comma-separated items, each `x` or `a:b:step` with both ends included.
pub fn parse_reals(flag: &str, text: &str) -> Result<Vec<f64>, Usage> {
    let bad = |why: &str| Usage(format!("--{flag} {text:?}: {why}"));
    let number = |s: &str| -> Result<f64, Usage> {
        let v: f64 = s.trim().parse().map_err(|_| bad(&format!("{s:?} is not a number")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad("values must be finite"))
        }
    };
    let mut values = Vec::new();
    for item in text.split(',') {
        match item.split(':').collect::<Vec<_>>().as_slice() {
            [x] => values.push(number(x)?),
            [a, b, step] => {
                let (a, b, step) = (number(a)?, number(b)?, number(step)?);
                if !(step > 0.0) {
                    return Err(bad("step must be positive"));
                }
                if b < a {
                    return Err(bad("range is empty"));
                }
                // tolerate b landing a hair past the last step
                let count = ((b - a) / step * (1.0 + 1e-12)).floor() as usize + 1;
                if values.len() + count > 10_000_000 {
                    return Err(bad("too many points"));
                }
                values.extend((0..count).map(|i| a + step * i as f64));
            }
            _ => return Err(bad("expected items x or a:b:step")),
        }
    }
    Ok(values)
}

/// `n`, `a..b` (inclusive) or `n,m,...`.
pub fn parse_levels(text: &str) -> Result<Vec<u32>, Usage> {
    let bad = |why: &str| Usage(format!("--levels {text:?}: {why}"));
    let number =
        |s: &str| -> Result<u32, Usage> { s.trim().parse().map_err(|_| bad(&format!("{s:?} is not a level"))) };
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (number(a)?, number(b.trim_start_matches('='))?);
        if b < a {
            return Err(bad("range is empty"));
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(number).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(parse_reals("lambda", "0.1").unwrap(), vec![0.1]);
        assert_eq!(parse_reals("lambda", "0.1, 1,10").unwrap(), vec![0.1, 1.0, 10.0]);
        let g = parse_reals("grid", "-2:2:0.005").unwrap();
        assert_eq!(g.len(), 801);
        assert!((g[800] - 2.0).abs() < 1e-12);
        assert_eq!(parse_reals("grid", "0:1:0.25").unwrap().len(), 5);
        assert!(parse_reals("grid", "1:0:0.1").is_err());
        assert!(parse_reals("grid", "0:1:0").is_err());
        assert!(parse_reals("grid", "0:1").is_err());
        assert!(parse_reals("lambda", "").is_err());
        assert!(parse_reals("lambda", "inf").is_err());
        assert_eq!(parse_reals("lambda", "5,0:1:0.5").unwrap(), vec![5.0, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn levels() {
        assert_eq!(parse_levels("3").unwrap(), vec![3]);
        assert_eq!(parse_levels("0..4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(parse_levels("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_levels("1,10,40").unwrap(), vec![1, 10, 40]);
        assert!(parse_levels("4..1").is_err());
        assert!(parse_levels("-1").is_err());
    }

    #[test]
    fn kinds() {
        assert_eq!(Kind::SexticDwo.signed_g(3.0), -3.0);
        assert!(Kind::QuarticAho.spec(-1.0, 0.1).is_err());
        assert!(Kind::OcticAho.spec(1.0, -0.1).is_err());
        let s = Kind::QuarticDwo.spec(1.0, 0.5).unwrap();
        assert_eq!((s.k, s.g), (4, -1.0));
    }
}
