use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weyl_laplace::BasisKind;

#[derive(Parser, Debug)]
#[command(name = "weyl-laplace", version, about = "Lie-algebra bases, polar decomposition and Laplacian checks on U(N) and SU(N)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the orthonormal generator basis of u(n) or su(n).
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "u", value_parser = parse_kind)]
        kind: BasisKind,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Polar-decompose a unitary matrix read from a JSON file, or a random one.
    Polar {
        /// Matrix JSON file: {"dim": n, "rows": [[[re, im], ...], ...]}.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        random: bool,
        #[arg(long, requires = "random")]
        n: Option<usize>,
        #[arg(long, env = "WEYL_LAPLACE_SEED", default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
        /// Representation whose matrix elements feed the laplacian suite.
        #[arg(long, value_enum, default_value_t = RepChoice::Defining)]
        rep: RepChoice,
        /// Partition for the characters suite, e.g. 1,1,0.
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Measure the radial eigenvalue of a Schur character.
    CharacterEig {
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Commutators,
    Metric,
    Curvature,
    Trig,
    Laplacian,
    Characters,
    Su,
    /// Radial-form and angular-bookkeeping equivalences.
    Forms,
    /// Polar decomposition round trip.
    Roundtrip,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Commutators => "commutators",
            Suite::Metric => "metric",
            Suite::Curvature => "curvature",
            Suite::Trig => "trig",
            Suite::Laplacian => "laplacian",
            Suite::Characters => "characters",
            Suite::Su => "su",
            Suite::Forms => "forms",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepChoice {
    Trivial,
    Defining,
    #[value(alias = "alt")]
    Antisymmetric,
    #[value(alias = "sym")]
    Symmetric,
    Tensor,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, env = "WEYL_LAPLACE_SEED", default_value_t = 7)]
    pub seed: u64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-2)]
    pub h: f64,
    /// Stencil order, 2 or 4.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Tolerance override, NAME=VALUE. Also accepted as --tol.NAME VALUE.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<BasisKind, String> {
    s.parse()
}

/// Rewrites `--tol.NAME=VALUE` and `--tol.NAME VALUE` into `--tol NAME=VALUE`.
pub fn expand_tolerance_flags<I>(args: I) -> Vec<OsString>
where
    I: IntoIterator<Item = OsString>,
{
    let mut out = Vec::new();
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let Some(rest) = arg.to_str().and_then(|s| s.strip_prefix("--tol.")) else {
            out.push(arg);
            continue;
        };
        let pair = match rest.split_once('=') {
            Some((name, value)) => format!("{name}={value}"),
            None => match it.next() {
                Some(value) => format!("{rest}={}", value.to_string_lossy()),
                None => format!("{rest}="),
            },
        };
        out.push("--tol".into());
        out.push(pair.into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(v: &[&str]) -> Vec<String> {
        expand_tolerance_flags(v.iter().map(OsString::from))
            .into_iter()
            .map(|s| s.into_string().unwrap())
            .collect()
    }

    #[test]
    fn tolerance_flags_are_rewritten() {
        assert_eq!(
            expand(&["x", "--tol.laplacian=1e-3", "--tol.spread", "2e-4", "--n", "3"]),
            ["x", "--tol", "laplacian=1e-3", "--tol", "spread=2e-4", "--n", "3"]
        );
        assert_eq!(expand(&["--tol.su"]), ["--tol", "su="]);
    }

    #[test]
    fn parses_verify() {
        let cli = Cli::try_parse_from(["weyl-laplace", "verify", "laplacian", "--n", "2", "--rep", "defining"]).unwrap();
        match cli.command {
            Command::Verify { suite, run, rep, .. } => {
                assert_eq!(suite, Suite::Laplacian);
                assert_eq!(run.n, Some(2));
                assert_eq!(rep, RepChoice::Defining);
            }
            other => panic!("{other:?}"),
        }
    }
}
