use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use weyl_laplace::laplacian::{
    self, verify_character_eigen, verify_form_equivalence, verify_main_theorem, verify_su,
};
use weyl_laplace::lie_basis::{self, verify_structure_constants};
use weyl_laplace::matrix::{max_diff, MatrixJson};
use weyl_laplace::polar::{self, verify_curvature_identity, verify_polar_roundtrip, verify_trig_identity, PolarJson};
use weyl_laplace::su3::{verify_commutator_table, verify_identifications, verify_roots, Su3Operators};
use weyl_laplace::tangent::{self, verify_metric};
use weyl_laplace::{
    polar_decompose, sampling, BasisKind, GeneratorBasis, Partition, Representation, StencilConfig, StencilOrder,
    VerificationReport,
};

use crate::args::{RepChoice, RunArgs, Suite};
use crate::error::CliError;

/// Tolerance names accepted by `--tol` and their defaults.
const TOLERANCES: &[(&str, f64)] = &[
    ("bookkeeping", laplacian::BOOKKEEPING_TOL),
    ("curvature", polar::CURVATURE_TOL),
    ("laplacian", laplacian::MAIN_THEOREM_TOL),
    ("metric", tangent::METRIC_TOL),
    ("oracle", laplacian::ORACLE_TOL),
    ("radial-forms", laplacian::RADIAL_FORMS_TOL),
    ("roundtrip", polar::ROUNDTRIP_TOL),
    ("spread", laplacian::SPREAD_TOL),
    ("structure", lie_basis::STRUCTURE_TOL),
    ("su", laplacian::SU_TOL),
    ("trig", polar::TRIG_TOL),
];

fn suite_tolerances(suite: Suite) -> &'static [&'static str] {
    match suite {
        Suite::Commutators => &["structure"],
        Suite::Metric => &["metric"],
        Suite::Curvature => &["curvature"],
        Suite::Trig => &["trig"],
        Suite::Laplacian => &["laplacian"],
        Suite::Characters => &["spread", "oracle"],
        Suite::Su => &["su"],
        Suite::Forms => &["radial-forms", "bookkeeping"],
        Suite::Roundtrip => &["roundtrip"],
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub stencil: StencilConfig,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteDocument {
    pub suite: String,
    pub config: RunConfig,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterDocument {
    pub command: String,
    pub config: RunConfig,
    pub pass: bool,
    pub partition: String,
    pub mean: f64,
    pub std: f64,
    pub max_imag: f64,
    pub oracle: Option<f64>,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolarDocument {
    pub source: String,
    #[serde(flatten)]
    pub polar: PolarJson,
    pub reconstruction_error: f64,
}

fn tolerances(overrides: &[String], names: &[&str]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut all: BTreeMap<String, f64> = TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("tolerance override '{o}' is not NAME=VALUE")))?;
        let slot = all.get_mut(name).ok_or_else(|| {
            let known: Vec<&str> = TOLERANCES.iter().map(|(k, _)| *k).collect();
            CliError::Usage(format!("unknown tolerance '{name}' (known: {})", known.join(", ")))
        })?;
        let v: f64 = value
            .parse()
            .map_err(|_| CliError::Usage(format!("tolerance '{name}' has non-numeric value '{value}'")))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Usage(format!("tolerance '{name}' must be positive, got {v}")));
        }
        *slot = v;
    }
    Ok(all.into_iter().filter(|(k, _)| names.contains(&k.as_str())).collect())
}

fn stencil(run: &RunArgs) -> Result<StencilConfig, CliError> {
    let order = StencilOrder::from_int(run.order)?;
    Ok(StencilConfig::new(run.h, order)?)
}

fn require_rank(n: usize) -> Result<usize, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(n)
}

fn ranks(run: &RunArgs, defaults: &[usize]) -> Result<Vec<usize>, CliError> {
    match run.n {
        Some(n) => Ok(vec![require_rank(n)?]),
        None => Ok(defaults.to_vec()),
    }
}

fn representation(choice: RepChoice, n: usize) -> Result<Representation, CliError> {
    let d = Representation::defining(n)?;
    Ok(match choice {
        RepChoice::Trivial => Representation::trivial(n),
        RepChoice::Defining => d,
        RepChoice::Antisymmetric => Representation::antisymmetric_square(&d)?,
        RepChoice::Symmetric => Representation::symmetric_square(&d)?,
        RepChoice::Tensor => Representation::tensor(&d, &d)?,
    })
}

fn rep_name(choice: RepChoice) -> &'static str {
    match choice {
        RepChoice::Trivial => "trivial",
        RepChoice::Defining => "defining",
        RepChoice::Antisymmetric => "antisymmetric",
        RepChoice::Symmetric => "symmetric",
        RepChoice::Tensor => "tensor",
    }
}

fn parse_partition(text: &str, n: Option<usize>) -> Result<Partition, CliError> {
    let p: Partition = text.parse()?;
    if let Some(n) = n {
        if p.n() != n {
            return Err(CliError::Usage(format!("partition {p} has {} parts but --n is {n}", p.n())));
        }
    }
    require_rank(p.n())?;
    Ok(p)
}

fn default_partitions(n: usize) -> Vec<Partition> {
    let mut shapes = vec![vec![0; n], vec![0; n], vec![0; n], vec![0; n]];
    shapes[1][0] = 1;
    shapes[2][0] = 1;
    shapes[2][1] = 1;
    shapes[3][0] = 2;
    shapes.into_iter().map(|s| Partition::new(s).expect("weakly decreasing")).collect()
}

pub fn verify(
    suite: Suite,
    run: &RunArgs,
    rep: RepChoice,
    partition: Option<&str>,
) -> Result<SuiteDocument, CliError> {
    let cfg = stencil(run)?;
    let tol = tolerances(&run.tol, suite_tolerances(suite))?;
    let t = |name: &str| tol[name];
    let seed = run.seed;
    let default_samples = match suite {
        Suite::Commutators => 1,
        Suite::Metric => 200,
        Suite::Curvature => 50,
        Suite::Trig => 10_000,
        Suite::Laplacian => 50,
        Suite::Characters => 20,
        Suite::Su | Suite::Forms => 10,
        Suite::Roundtrip => 1000,
    };
    let samples = run.samples.unwrap_or(default_samples);

    let mut reports = Vec::new();
    match suite {
        Suite::Commutators => {
            for n in ranks(run, &[3])? {
                if n == 3 {
                    let ops = Su3Operators::new();
                    reports.push(verify_commutator_table(&ops));
                    reports.push(verify_identifications(&ops));
                    reports.push(verify_roots(&ops, seed)?);
                }
                reports.push(verify_structure_constants(n, t("structure"))?);
            }
        }
        Suite::Metric => {
            for n in ranks(run, &[2, 3, 4])? {
                reports.push(verify_metric(n, samples, seed, t("metric"))?);
            }
        }
        Suite::Curvature => {
            for n in ranks(run, &[2, 3, 4, 5, 6])? {
                reports.push(verify_curvature_identity(n, samples, seed, cfg, t("curvature"))?);
            }
        }
        Suite::Trig => reports.push(verify_trig_identity(samples, seed, t("trig"))),
        Suite::Laplacian => {
            for n in ranks(run, &[2, 3])? {
                reports.push(verify_main_theorem(&representation(rep, n)?, samples, seed, cfg, t("laplacian"))?);
            }
        }
        Suite::Characters => {
            let partitions = match partition {
                Some(text) => vec![parse_partition(text, run.n)?],
                None => ranks(run, &[2, 3])?.into_iter().flat_map(default_partitions).collect(),
            };
            for p in partitions {
                let e = verify_character_eigen(&p, samples, seed, cfg, t("spread"), t("oracle"))?;
                reports.push(e.report);
            }
        }
        Suite::Su => {
            for n in ranks(run, &[2, 3])? {
                reports.push(verify_su(n, samples, seed, cfg, t("su"))?);
            }
        }
        Suite::Forms => {
            for n in ranks(run, &[2, 3])? {
                reports.extend(verify_form_equivalence(n, samples, seed, cfg, t("radial-forms"), t("bookkeeping"))?);
            }
        }
        Suite::Roundtrip => {
            for n in ranks(run, &[2, 3, 4])? {
                reports.push(verify_polar_roundtrip(n, samples, seed, t("roundtrip"))?);
            }
        }
    }

    let config = RunConfig {
        n: run.n,
        rep: (suite == Suite::Laplacian).then(|| rep_name(rep).to_string()),
        partition: partition.map(str::to_string),
        samples,
        seed,
        stencil: cfg,
        tolerances: tol,
    };
    let pass = reports.iter().all(|r| r.pass);
    Ok(SuiteDocument { suite: suite.name().to_string(), config, pass, reports })
}

pub fn character_eig(partition: &str, run: &RunArgs) -> Result<CharacterDocument, CliError> {
    let cfg = stencil(run)?;
    let p = parse_partition(partition, run.n)?;
    let tol = tolerances(&run.tol, &["spread", "oracle"])?;
    let samples = run.samples.unwrap_or(20);
    let e = verify_character_eigen(&p, samples, run.seed, cfg, tol["spread"], tol["oracle"])?;
    let config = RunConfig {
        n: Some(p.n()),
        rep: None,
        partition: Some(p.to_string()),
        samples,
        seed: run.seed,
        stencil: cfg,
        tolerances: tol,
    };
    Ok(CharacterDocument {
        command: "character-eig".into(),
        config,
        pass: e.report.pass,
        partition: p.to_string(),
        mean: e.mean,
        std: e.std,
        max_imag: e.max_imag,
        oracle: e.oracle,
        report: e.report,
    })
}

pub fn basis(n: usize, kind: BasisKind) -> Result<weyl_laplace::lie_basis::BasisJson, CliError> {
    require_rank(n)?;
    Ok(GeneratorBasis::build(n, kind)?.to_json())
}

pub fn polar_from_file(path: &Path) -> Result<PolarDocument, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let parsed: MatrixJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{} is not matrix JSON: {e}", path.display())))?;
    let v = parsed.to_matrix()?;
    decompose(v, path.display().to_string())
}

pub fn polar_random(n: Option<usize>, seed: u64) -> Result<PolarDocument, CliError> {
    let n = n.ok_or_else(|| CliError::Usage("--random needs --n".into()))?;
    require_rank(n)?;
    let mut rng = sampling::rng(seed);
    let v = sampling::random_unitary(n, &mut rng);
    decompose(v, format!("random n={n} seed={seed}"))
}

fn decompose(v: weyl_laplace::CMatrix, source: String) -> Result<PolarDocument, CliError> {
    let p = polar_decompose(&v)?;
    let reconstruction_error = max_diff(&p.reconstruct(), &v);
    Ok(PolarDocument { source, polar: p.to_json(), reconstruction_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_overrides() {
        let t = tolerances(&["laplacian=1e-3".into()], &["laplacian"]).unwrap();
        assert_eq!(t["laplacian"], 1e-3);
        assert_eq!(t.len(), 1);
        assert!(matches!(tolerances(&["bogus=1".into()], &[]), Err(CliError::Usage(_))));
        assert!(matches!(tolerances(&["su=-1".into()], &[]), Err(CliError::Usage(_))));
        assert!(matches!(tolerances(&["su".into()], &[]), Err(CliError::Usage(_))));
    }

    #[test]
    fn default_partitions_cover_built_shapes() {
        let ps: Vec<String> = default_partitions(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["0,0,0", "1,0,0", "1,1,0", "2,0,0"]);
    }
}
