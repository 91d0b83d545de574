//! Command-line arguments and the run configuration.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qtype_core::rng::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Catlin-type value `D_q` at a point from generic slices.
    Type,
    /// Decomposition `r_k = Re h + ‖f‖² − ‖g‖²` of each generator.
    Decompose,
    /// Multiplicity of a holomorphic ideal (or of `I(I, k, p)` for real models).
    Mult,
    /// Order of contact along a curve.
    Nu,
    /// Infimum-type `Δ_q` over sampled slices.
    Slice,
    /// Checks the local bound between two points.
    VerifyBound,
    /// Type at the origin and at `ε·v` for several `ε`.
    DemoUsc,
    /// Runs every model of a corpus directory against its expected values.
    Corpus,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Type => "type",
            Command::Decompose => "decompose",
            Command::Mult => "mult",
            Command::Nu => "nu",
            Command::Slice => "slice",
            Command::VerifyBound => "verify-bound",
            Command::DemoUsc => "demo-usc",
            Command::Corpus => "corpus",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let r = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => t.replace('_', "").parse::<u64>(),
    };
    r.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Clone, Debug, Parser)]
#[command(name = "qtype", version, about = "Exact finite-type invariants of polynomial real hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Model file (TOML, or JSON by extension).
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Codimension index q (defaults to the model's `default_q`, else 1).
    #[arg(long, global = true)]
    pub q: Option<usize>,
    /// Point as comma-separated coordinates, e.g. `0,0,1,0` or `1/2,i`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Base point for `verify-bound`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p0: Option<String>,
    /// Nearby point for `verify-bound`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Curve for `nu`, e.g. `(t, -t, 0, 0)`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Values of ε for `demo-usc`.
    #[arg(long, global = true, value_delimiter = ';', default_value = "1;1/2;1/10")]
    pub eps: Vec<String>,
    /// Corpus directory.
    #[arg(long, global = true, default_value = "corpus")]
    pub dir: PathBuf,
    /// Master seed (decimal or 0x-hex).
    #[arg(long, global = true, env = "QTYPE_SEED", value_parser = parse_seed)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 7)]
    pub samples: usize,
    #[arg(long = "min-agreement", global = true, default_value_t = 5)]
    pub min_agreement: usize,
    /// Truncation order (default `2·deg + 1`).
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long = "max-curve-degree", global = true, default_value_t = 10)]
    pub max_curve_degree: u32,
    #[arg(long = "max-mult-degree", global = true, default_value_t = 24)]
    pub max_mult_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub k: Option<u32>,
    pub max_curve_degree: u32,
    pub num_samples: usize,
    pub min_agreement: usize,
    pub max_mult_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<PathBuf>,
    pub q: Option<usize>,
    pub point: Option<String>,
    pub p0: Option<String>,
    pub p: Option<String>,
    pub curve: Option<String>,
    pub eps: Vec<String>,
    pub dir: PathBuf,
    pub seed: u64,
    pub budgets: Budgets,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        Self {
            command: c.command,
            model: c.model,
            q: c.q,
            point: c.point,
            p0: c.p0,
            p: c.p,
            curve: c.curve,
            eps: c.eps,
            dir: c.dir,
            seed: c.seed.unwrap_or(DEFAULT_SEED),
            budgets: Budgets {
                k: c.k,
                max_curve_degree: c.max_curve_degree,
                num_samples: c.samples,
                min_agreement: c.min_agreement,
                max_mult_degree: c.max_mult_degree,
            },
            format: c.format,
            out: c.out,
        }
    }
}

impl RunConfig {
    /// Defaults for `command` with no flags other than the model; the
    /// environment is ignored.
    pub fn new(command: Command, model: Option<PathBuf>) -> Self {
        Self {
            command,
            model,
            q: None,
            point: None,
            p0: None,
            p: None,
            curve: None,
            eps: vec!["1".into(), "1/2".into(), "1/10".into()],
            dir: PathBuf::from("corpus"),
            seed: DEFAULT_SEED,
            budgets: Budgets {
                k: None,
                max_curve_degree: 10,
                num_samples: 7,
                min_agreement: 5,
                max_mult_degree: 24,
            },
            format: Format::Json,
            out: None,
        }
    }

    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Into::into)
    }

    pub fn view(&self) -> ConfigView {
        ConfigView {
            command: self.command,
            model: self.model.as_ref().map(|p| p.display().to_string()),
            q: self.q,
            point: self.point.clone(),
            p0: self.p0.clone(),
            p: self.p.clone(),
            curve: self.curve.clone(),
            eps: self.eps.clone(),
            dir: self.dir.display().to_string(),
            seed: self.seed,
            budgets: self.budgets.clone(),
            format: self.format,
        }
    }
}

/// The configuration as embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigView {
    pub command: Command,
    pub model: Option<String>,
    pub q: Option<usize>,
    pub point: Option<String>,
    pub p0: Option<String>,
    pub p: Option<String>,
    pub curve: Option<String>,
    pub eps: Vec<String>,
    pub dir: String,
    pub seed: u64,
    pub budgets: Budgets,
    pub format: Format,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse_after_the_subcommand() {
        let c = RunConfig::parse_from(["qtype", "type", "--model", "m.toml", "--q", "2", "--point", "0,0,1,0", "--seed", "0x10"]).unwrap();
        assert_eq!(c.command, Command::Type);
        assert_eq!(c.q, Some(2));
        assert_eq!(c.seed, 16);
        assert_eq!(c.budgets.num_samples, 7);
        let c = RunConfig::parse_from(["qtype", "demo-usc", "--eps", "1;1/3"]).unwrap();
        assert_eq!(c.eps, vec!["1", "1/3"]);
        assert!(RunConfig::parse_from(["qtype", "bogus"]).is_err());
        assert!(RunConfig::parse_from(["qtype", "type", "--seed", "x"]).is_err());
    }
}
