//! The Laplace-Beltrami operator on U(N) and SU(N), evaluated numerically
//! two ways: as the Casimir sum of second left-invariant derivatives over
//! an orthonormal basis, and in polar coordinates `v = u a u^{-1}` as a
//! `J^2`-weighted radial part plus angular terms
//! `(D_k^2 + D_l^2) / (4 sin^2((theta_i - theta_j)/2))`, where `D_X` is the
//! derivative along the conjugation `e^{tX'} v e^{-tX'}`, `X' = u X u^{-1}`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie_basis::{pair_generator, BasisKind, GeneratorBasis, PairPart};
use crate::matrix::{self, elementary, expm, torus_element, CMatrix, I};
use crate::polar::{
    self, curvature_constant, log_vandermonde_squared_gradient, polar_decompose, su_shift, vandermonde,
    PolarForm,
};
use crate::report::{Gate, ReportBuilder, VerificationReport};
use crate::representations::{casimir_matrix, schur_character, Partition, Representation};
use crate::sampling::{self, TrigPolynomial};
use crate::stencil::StencilConfig;

/// Lower bound on the eigenvalue gap required by the polar-form evaluator.
pub const LAPLACIAN_MARGIN: f64 = 0.3;

/// Floor of the magnitude used to turn absolute errors into relative ones.
pub const SCALE_FLOOR: f64 = 0.1;

pub const MAIN_THEOREM_TOL: f64 = 5e-4;
pub const SPREAD_TOL: f64 = 1e-4;
pub const ORACLE_TOL: f64 = 1e-4;
pub const SU_TOL: f64 = 1e-3;
pub const RADIAL_FORMS_TOL: f64 = 1e-5;
pub const BOOKKEEPING_TOL: f64 = 1e-10;

/// Gap required by the polar-form evaluator for a given stencil.
pub fn required_gap(cfg: StencilConfig) -> f64 {
    LAPLACIAN_MARGIN.max(10.0 * cfg.h)
}

fn error_scale(value: Complex64) -> f64 {
    value.norm().max(SCALE_FLOOR)
}

type GroupEval = dyn Fn(&CMatrix) -> Complex64 + Send + Sync;
type RadialEval = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A complex-valued function on the group.
#[derive(Clone)]
pub struct GroupFunction {
    label: String,
    eval: Arc<GroupEval>,
}

impl fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupFunction").field("label", &self.label).finish()
    }
}

impl GroupFunction {
    pub fn new(label: impl Into<String>, f: impl Fn(&CMatrix) -> Complex64 + Send + Sync + 'static) -> Self {
        GroupFunction { label: label.into(), eval: Arc::new(f) }
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(format!("const {value}"), move |_| value)
    }

    /// `v -> rho(v)[row, col]`.
    pub fn matrix_element(rep: &Representation, row: usize, col: usize) -> Result<Self> {
        if row >= rep.dim() || col >= rep.dim() {
            return Err(Error::IndexOutOfRange { dim: rep.dim(), row, col });
        }
        let r = rep.clone();
        Ok(Self::new(format!("{}[{},{}]", rep.label(), row + 1, col + 1), move |v| {
            r.group(v).expect("dimension checked by caller")[(row, col)]
        }))
    }

    /// `v -> tr rho(v)`.
    pub fn character(rep: &Representation) -> Self {
        let r = rep.clone();
        Self::new(format!("chi {}", rep.label()), move |v| r.group(v).expect("dimension checked by caller").trace())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, v: &CMatrix) -> Complex64 {
        (self.eval)(v)
    }
}

/// A complex-valued function of the torus angles.
#[derive(Clone)]
pub struct RadialFunction {
    label: String,
    eval: Arc<RadialEval>,
    /// Claimed invariance under permutations of the angles.
    pub symmetric: bool,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("label", &self.label)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

impl RadialFunction {
    pub fn new(
        label: impl Into<String>,
        symmetric: bool,
        f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        RadialFunction { label: label.into(), eval: Arc::new(f), symmetric }
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(format!("const {value}"), true, move |_| value)
    }

    /// Bialternant character of `p`. Panics inside evaluation if the
    /// angles come within the character gap of each other.
    pub fn schur(p: &Partition) -> Self {
        let q = p.clone();
        Self::new(format!("schur {p}"), true, move |theta| {
            schur_character(&q, theta).expect("regular angles")
        })
    }

    /// `theta -> psi(u diag(e^{i theta}) u^{-1})` with `u` held fixed.
    pub fn frozen(psi: &GroupFunction, u: &CMatrix) -> Self {
        let (psi, u) = (psi.clone(), u.clone());
        let label = format!("{} on frozen frame", psi.label());
        Self::new(label, false, move |theta| psi.evaluate(&conjugate_torus(&u, theta)))
    }

    /// As [`RadialFunction::frozen`] with the angles first shifted onto
    /// `sum theta = 0`, so that the argument stays special unitary.
    pub fn frozen_special(psi: &GroupFunction, u: &CMatrix) -> Self {
        let (psi, u) = (psi.clone(), u.clone());
        let label = format!("{} on frozen frame, det 1", psi.label());
        Self::new(label, false, move |theta| psi.evaluate(&conjugate_torus(&u, &su_shift(theta))))
    }

    /// The Vandermonde factor `J`, which changes sign under odd permutations.
    pub fn vandermonde() -> Self {
        Self::new("J", false, |theta| matrix::real(vandermonde(theta)))
    }

    pub fn trig(p: TrigPolynomial) -> Self {
        Self::new("trig polynomial", false, move |theta| matrix::real(p.eval(theta)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, theta: &[f64]) -> Complex64 {
        (self.eval)(theta)
    }

    /// Largest change of the value under a transposition of two angles.
    pub fn symmetry_defect(&self, theta: &[f64]) -> f64 {
        let base = self.evaluate(theta);
        let mut worst: f64 = 0.0;
        for i in 0..theta.len() {
            for j in (i + 1)..theta.len() {
                let mut t = theta.to_vec();
                t.swap(i, j);
                worst = worst.max((self.evaluate(&t) - base).norm());
            }
        }
        worst
    }
}

fn conjugate_torus(u: &CMatrix, theta: &[f64]) -> CMatrix {
    u * torus_element(theta) * u.adjoint()
}

/// `d^2/dt^2 psi(v exp(t z))` at `t = 0`.
pub fn left_invariant_derivative2(psi: &GroupFunction, v: &CMatrix, z: &CMatrix, cfg: StencilConfig) -> Complex64 {
    cfg.second_derivative(|t| psi.evaluate(&(v * expm(&(z * matrix::real(t))))))
}

/// `sum_k d^2/dt^2 psi(v exp(t B_k))`.
pub fn casimir_laplacian(psi: &GroupFunction, v: &CMatrix, basis: &GeneratorBasis, cfg: StencilConfig) -> Complex64 {
    basis.matrices().map(|b| left_invariant_derivative2(psi, v, b, cfg)).sum()
}

/// `d^2/dt^2 psi(e^{tY} v e^{-tY})` at `t = 0`. The stencil step is
/// `h / |Y|` (Frobenius norm), so every direction is sampled at the same
/// geodesic distances whatever the normalization of `Y`.
pub fn conjugation_derivative2(psi: &GroupFunction, v: &CMatrix, y: &CMatrix, cfg: StencilConfig) -> Complex64 {
    let step = cfg.h / y.norm();
    cfg.second_derivative_with(step, |t| {
        let g = expm(&(y * matrix::real(t)));
        psi.evaluate(&(&g * v * g.adjoint()))
    })
}

fn check_radial_gap(theta: &[f64], cfg: StencilConfig) -> Result<()> {
    let gap = polar::min_gap(theta);
    let required = 10.0 * cfg.h;
    if gap <= required {
        return Err(Error::Degenerate { gap, required });
    }
    Ok(())
}

/// `sum_j [d_j^2 f + (d_j J^2 / J^2) d_j f]`, the logarithmic derivative
/// of `J^2` being analytic.
pub fn radial_laplacian(f: &RadialFunction, theta: &[f64], cfg: StencilConfig) -> Result<Complex64> {
    check_radial_gap(theta, cfg)?;
    let grad = log_vandermonde_squared_gradient(theta);
    Ok((0..theta.len())
        .map(|j| {
            let line = |t: f64| f.evaluate(&polar::shifted(theta, j, t));
            cfg.second_derivative(line) + cfg.first_derivative(line) * grad[j]
        })
        .sum())
}

/// `(1/J) sum_j d_j^2 (J f) + R_N f`.
pub fn radial_laplacian_alt(f: &RadialFunction, theta: &[f64], cfg: StencilConfig) -> Result<Complex64> {
    check_radial_gap(theta, cfg)?;
    let jac = vandermonde(theta);
    let sum: Complex64 = (0..theta.len())
        .map(|j| {
            cfg.second_derivative(|t| {
                let moved = polar::shifted(theta, j, t);
                f.evaluate(&moved) * vandermonde(&moved)
            })
        })
        .sum();
    Ok(sum / jac + f.evaluate(theta) * curvature_constant(theta.len()))
}

/// One angular contribution, computed with the two bookkeepings: along the
/// orthonormal skew-hermitian pair `X_k, X_l` over `4 sin^2`, and along
/// `i L, i M` with `L = -i(E_ij - E_ji)`, `M = E_ij + E_ji` as
/// `-(L^2 + M^2) / (8 sin^2)`, where `L^2 psi = -D_{iL}^2 psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularTerm {
    pub i: usize,
    pub j: usize,
    pub skew: Complex64,
    pub hermitian: Complex64,
}

pub fn angular_term(psi: &GroupFunction, pf: &PolarForm, i: usize, j: usize, cfg: StencilConfig) -> Result<AngularTerm> {
    let n = pf.angles.len();
    if i >= j || j >= n {
        return Err(Error::IndexOutOfRange { dim: n, row: i, col: j });
    }
    let delta = pf.angles[i] - pf.angles[j];
    let gap = polar::circular_distance(pf.angles[i], pf.angles[j]);
    if gap <= polar::DEGENERACY_EPS {
        return Err(Error::Degenerate { gap, required: polar::DEGENERACY_EPS });
    }
    let v = pf.reconstruct();
    let u = &pf.u;
    let frame = |x: CMatrix| u * x * u.adjoint();
    let s2 = (0.5 * delta).sin().powi(2);

    let xk = frame(pair_generator(n, i, j, PairPart::Antisymmetric)?);
    let xl = frame(pair_generator(n, i, j, PairPart::Symmetric)?);
    let skew = (conjugation_derivative2(psi, &v, &xk, cfg) + conjugation_derivative2(psi, &v, &xl, cfg)) / (4.0 * s2);

    let (eij, eji) = (elementary(n, i, j)?, elementary(n, j, i)?);
    let l = (&eij - &eji) * (-I);
    let m = &eij + &eji;
    let l_sq = -conjugation_derivative2(psi, &v, &frame(&l * I), cfg);
    let m_sq = -conjugation_derivative2(psi, &v, &frame(&m * I), cfg);
    let hermitian = -(l_sq + m_sq) / (8.0 * s2);

    Ok(AngularTerm { i, j, skew, hermitian })
}

/// Polar-form Laplacian at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarLaplacian {
    pub radial: Complex64,
    pub angular: Vec<AngularTerm>,
}

impl PolarLaplacian {
    pub fn total(&self) -> Complex64 {
        self.radial + self.angular.iter().map(|a| a.skew).sum::<Complex64>()
    }

    pub fn total_hermitian(&self) -> Complex64 {
        self.radial + self.angular.iter().map(|a| a.hermitian).sum::<Complex64>()
    }
}

fn regular_polar(v: &CMatrix, cfg: StencilConfig) -> Result<PolarForm> {
    let pf = polar_decompose(v)?;
    let required = required_gap(cfg);
    if pf.min_gap <= required {
        return Err(Error::Degenerate { gap: pf.min_gap, required });
    }
    Ok(pf)
}

fn angular_terms(psi: &GroupFunction, pf: &PolarForm, cfg: StencilConfig) -> Result<Vec<AngularTerm>> {
    let n = pf.angles.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(angular_term(psi, pf, i, j, cfg)?);
        }
    }
    Ok(out)
}

/// Radial part on the frozen frame plus the angular terms, on U(N).
pub fn full_laplacian(psi: &GroupFunction, v: &CMatrix, cfg: StencilConfig) -> Result<PolarLaplacian> {
    let pf = regular_polar(v, cfg)?;
    let f = RadialFunction::frozen(psi, &pf.u);
    let radial = radial_laplacian(&f, &pf.angles, cfg)?;
    Ok(PolarLaplacian { radial, angular: angular_terms(psi, &pf, cfg)? })
}

/// The three angular numerators as matrices in the defining
/// representation: `X_k^2 + X_l^2`, `-(E_ij E_ji + E_ji E_ij)` and
/// `-(L^2 + M^2)/2`. All three equal `-(E_ii + E_jj)`.
pub fn angular_numerators(n: usize, i: usize, j: usize) -> Result<[CMatrix; 3]> {
    let xk = pair_generator(n, i, j, PairPart::Antisymmetric)?;
    let xl = pair_generator(n, i, j, PairPart::Symmetric)?;
    let (eij, eji) = (elementary(n, i, j)?, elementary(n, j, i)?);
    let l = (&eij - &eji) * (-I);
    let m = &eij + &eji;
    Ok([
        &xk * &xk + &xl * &xl,
        -(&eij * &eji + &eji * &eij),
        -(&l * &l + &m * &m) * matrix::real(0.5),
    ])
}

/// Both evaluations of the Laplacian on SU(N).
#[derive(Debug, Clone, PartialEq)]
pub struct SuLaplacian {
    /// Casimir sum over the special-unitary basis.
    pub casimir: Complex64,
    /// Polar form, radial part weighted by `J^2`.
    pub polar: Complex64,
    /// Polar form with radial part `(1/J) sum d^2 J + R_N`.
    pub polar_alt: Complex64,
}

/// Evaluates the Laplacian of `psi` at a special unitary `v` by the
/// Casimir form over the su(N) basis and by the polar form restricted to
/// `sum theta = 0 (mod 2 pi)`.
pub fn su_laplacian_check(psi: &GroupFunction, v: &CMatrix, cfg: StencilConfig) -> Result<SuLaplacian> {
    let n = v.nrows();
    let det_err = (v.determinant() - matrix::real(1.0)).norm();
    if det_err > polar::UNITARITY_TOL {
        return Err(Error::NotSpecialUnitary(det_err));
    }
    let basis = GeneratorBasis::build(n, BasisKind::SpecialUnitary)?;
    let casimir = casimir_laplacian(psi, v, &basis, cfg);
    let pf = regular_polar(v, cfg)?;
    let f = RadialFunction::frozen_special(psi, &pf.u);
    let theta = su_shift(&pf.angles);
    let angular: Complex64 = angular_terms(psi, &pf, cfg)?.iter().map(|a| a.skew).sum();
    let polar = radial_laplacian(&f, &theta, cfg)? + angular;
    let polar_alt = radial_laplacian_alt(&f, &theta, cfg)? + angular;
    Ok(SuLaplacian { casimir, polar, polar_alt })
}

/// Polar form against Casimir form for every matrix element of `rep` at
/// `samples` random regular unitaries.
pub fn verify_main_theorem(
    rep: &Representation,
    samples: usize,
    seed: u64,
    cfg: StencilConfig,
    tol: f64,
) -> Result<VerificationReport> {
    let n = rep.n();
    let basis = GeneratorBasis::build(n, BasisKind::FullUnitary)?;
    let mut out = ReportBuilder::new(format!("laplacian n={n} rep={}", rep.label()), tol, Gate::Relative, seed);
    let mut r = sampling::rng(seed);
    let margin = required_gap(cfg);
    for s in 0..samples {
        let v = sampling::random_regular_unitary(n, margin, &mut r);
        for row in 0..rep.dim() {
            for col in 0..rep.dim() {
                let psi = GroupFunction::matrix_element(rep, row, col)?;
                let polar = full_laplacian(&psi, &v, cfg)?.total();
                let casimir = casimir_laplacian(&psi, &v, &basis, cfg);
                out.record(
                    format!("sample {s} element ({},{})", row + 1, col + 1),
                    (polar - casimir).norm(),
                    error_scale(psi.evaluate(&v)),
                );
            }
        }
    }
    Ok(out.finish())
}

/// Measured radial eigenvalue of a character over sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterEigen {
    pub mean: f64,
    pub std: f64,
    pub max_imag: f64,
    /// Casimir scalar of the matching built representation, if any.
    pub oracle: Option<f64>,
    pub report: VerificationReport,
}

/// Samples `radial_laplacian(chi) / chi` at regular points where
/// `|chi| >= 0.1`. Passes when the spread `std/|mean|` is below `spread_tol`
/// (or `|mean|` itself when the oracle is zero) and the mean is within
/// `oracle_tol` of the Casimir oracle.
pub fn verify_character_eigen(
    p: &Partition,
    samples: usize,
    seed: u64,
    cfg: StencilConfig,
    spread_tol: f64,
    oracle_tol: f64,
) -> Result<CharacterEigen> {
    let n = p.n();
    if n < 2 {
        return Err(Error::RankTooSmall { got: n, min: 2 });
    }
    let f = RadialFunction::schur(p);
    let mut r = sampling::rng(seed);
    let mut ratios = Vec::with_capacity(samples);
    while ratios.len() < samples {
        let theta = sampling::random_regular_angles(n, required_gap(cfg), &mut r);
        let chi = f.evaluate(&theta);
        if chi.norm() < SCALE_FLOOR {
            continue;
        }
        ratios.push(radial_laplacian(&f, &theta, cfg)? / chi);
    }
    let count = ratios.len().max(1) as f64;
    let mean_c: Complex64 = ratios.iter().sum::<Complex64>() / count;
    let std = (ratios.iter().map(|x| (x - mean_c).norm_sqr()).sum::<f64>() / count).sqrt();
    let max_imag = ratios.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    let mean = mean_c.re;

    let basis = GeneratorBasis::build(n, BasisKind::FullUnitary)?;
    let oracle = match Representation::for_partition(p) {
        Some(rep) => {
            let c = casimir_matrix(&rep, &basis)?;
            (c.scalar_residual < 1e-10).then_some(c.scalar)
        }
        None => None,
    };

    let mut out = ReportBuilder::new(format!("character-eig n={n} partition={p}"), spread_tol, Gate::Absolute, seed);
    let spread = if oracle == Some(0.0) || mean == 0.0 { mean_c.norm() } else { std / mean.abs() };
    out.record("spread", spread, 1.0);
    out.require("imaginary part", max_imag < 1e-6);
    if let Some(c) = oracle {
        let dev = (mean - c).abs();
        out.require(format!("oracle {c} vs {mean}"), dev < oracle_tol);
        out.value("oracle", c);
        out.value("oracleDeviation", dev);
    }
    out.value("mean", mean);
    out.value("std", std);
    out.value("maxImag", max_imag);
    let mut report = out.finish();
    report.samples = ratios.len();
    Ok(CharacterEigen { mean, std, max_imag, oracle, report })
}

/// Radial form against its `J`-conjugated form on random trigonometric
/// polynomials, and the skew against the hermitian bookkeeping of the
/// angular terms on random matrix elements.
pub fn verify_form_equivalence(
    n: usize,
    samples: usize,
    seed: u64,
    cfg: StencilConfig,
    radial_tol: f64,
    bookkeeping_tol: f64,
) -> Result<Vec<VerificationReport>> {
    let mut r = sampling::rng(seed);
    let margin = required_gap(cfg);
    let mut radial = ReportBuilder::new(format!("radial forms n={n}"), radial_tol, Gate::Relative, seed);
    for s in 0..samples {
        let f = RadialFunction::trig(TrigPolynomial::random(n, 4, &mut r));
        let theta = sampling::random_regular_angles(n, margin, &mut r);
        let a = radial_laplacian(&f, &theta, cfg)?;
        let b = radial_laplacian_alt(&f, &theta, cfg)?;
        radial.record(format!("sample {s}"), (a - b).norm(), error_scale(a));
    }

    let rep = Representation::defining(n)?;
    let mut book = ReportBuilder::new(format!("angular bookkeeping n={n}"), bookkeeping_tol, Gate::Relative, seed);
    for s in 0..samples {
        let v = sampling::random_regular_unitary(n, margin, &mut r);
        let row = rand::Rng::random_range(&mut r, 0..n);
        let col = rand::Rng::random_range(&mut r, 0..n);
        let psi = GroupFunction::matrix_element(&rep, row, col)?;
        let lap = full_laplacian(&psi, &v, cfg)?;
        for a in &lap.angular {
            book.record(
                format!("sample {s} pair ({},{})", a.i + 1, a.j + 1),
                (a.skew - a.hermitian).norm(),
                error_scale(psi.evaluate(&v)),
            );
        }
    }

    let mut algebra = ReportBuilder::new(format!("angular numerators n={n}"), 1e-15, Gate::Absolute, seed);
    for i in 0..n {
        for j in (i + 1)..n {
            let want = -(elementary(n, i, i)? + elementary(n, j, j)?);
            for (k, m) in angular_numerators(n, i, j)?.iter().enumerate() {
                algebra.record(format!("pair ({},{}) form {k}", i + 1, j + 1), matrix::max_diff(m, &want), 1.0);
            }
        }
    }
    Ok(vec![radial.finish(), book.finish(), algebra.finish()])
}

/// SU(N) Laplacian of the defining matrix elements by both routes,
/// checked against the su(N) Casimir scalar.
pub fn verify_su(n: usize, samples: usize, seed: u64, cfg: StencilConfig, tol: f64) -> Result<VerificationReport> {
    let rep = Representation::defining(n)?;
    let basis = GeneratorBasis::build(n, BasisKind::SpecialUnitary)?;
    let oracle = casimir_matrix(&rep, &basis)?.scalar;
    let mut out = ReportBuilder::new(format!("su n={n}"), tol, Gate::Relative, seed);
    out.value("oracle", oracle);
    let mut r = sampling::rng(seed);
    let mut worst_ratio_dev: f64 = 0.0;
    for s in 0..samples {
        let v = sampling::random_regular_special_unitary(n, required_gap(cfg), &mut r);
        for row in 0..n {
            for col in 0..n {
                let psi = GroupFunction::matrix_element(&rep, row, col)?;
                let value = psi.evaluate(&v);
                let want = value * oracle;
                let got = su_laplacian_check(&psi, &v, cfg)?;
                let scale = error_scale(value);
                let label = format!("sample {s} element ({},{})", row + 1, col + 1);
                out.record(format!("{label} casimir"), (got.casimir - want).norm(), scale);
                out.record(format!("{label} polar"), (got.polar - want).norm(), scale);
                out.record(format!("{label} polar alt"), (got.polar_alt - want).norm(), scale);
                out.record(format!("{label} routes"), (got.polar - got.casimir).norm(), scale);
                if value.norm() >= SCALE_FLOOR {
                    worst_ratio_dev = worst_ratio_dev.max((got.polar_alt / value - oracle).norm());
                }
            }
        }
    }
    out.value("maxEigenvalueDeviation", worst_ratio_dev);
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::max_diff;
    use crate::sampling::{random_regular_special_unitary, random_regular_unitary, rng};

    fn cfg() -> StencilConfig {
        StencilConfig::default()
    }

    #[test]
    fn second_derivative_of_trace_at_identity() {
        let psi = GroupFunction::character(&Representation::defining(2).unwrap());
        let it1 = elementary(2, 0, 0).unwrap() * I;
        let d = left_invariant_derivative2(&psi, &matrix::identity(2), &it1, cfg());
        assert!((d + 1.0).norm() < 1e-8, "{d}");
        let one = GroupFunction::constant(matrix::real(1.0));
        assert_eq!(left_invariant_derivative2(&one, &matrix::identity(2), &it1, cfg()), matrix::real(0.0));
    }

    #[test]
    fn second_derivative_matches_matrix_oracle() {
        let mut r = rng(11);
        let d = Representation::defining(3).unwrap();
        let alt = Representation::antisymmetric_square(&d).unwrap();
        let basis = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        let v = random_regular_unitary(3, 0.0, &mut r);
        for rep in [d, alt] {
            for z in basis.matrices() {
                let dz = rep.algebra(z).unwrap();
                let want = rep.group(&v).unwrap() * &dz * &dz;
                for (row, col) in [(0, 0), (0, 2), (2, 1)] {
                    let psi = GroupFunction::matrix_element(&rep, row, col).unwrap();
                    let got = left_invariant_derivative2(&psi, &v, z, cfg());
                    assert!((got - want[(row, col)]).norm() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn casimir_form_eigenvalues() {
        let mut r = rng(12);
        for (n, eig) in [(2, -2.0), (3, -3.0)] {
            let rep = Representation::defining(n).unwrap();
            let basis = GeneratorBasis::build(n, BasisKind::FullUnitary).unwrap();
            let v = random_regular_unitary(n, 0.0, &mut r);
            let chi = GroupFunction::character(&rep);
            assert!((casimir_laplacian(&chi, &v, &basis, cfg()) - chi.evaluate(&v) * eig).norm() < 1e-7);
            let psi = GroupFunction::matrix_element(&rep, 0, n - 1).unwrap();
            assert!((casimir_laplacian(&psi, &v, &basis, cfg()) - psi.evaluate(&v) * eig).norm() < 1e-7);
            let one = GroupFunction::constant(matrix::real(1.0));
            assert!(casimir_laplacian(&one, &v, &basis, cfg()).norm() < 1e-12);
        }
    }

    #[test]
    fn radial_laplacian_of_constant_and_defining_character() {
        let theta = [1.7, -0.9];
        let one = RadialFunction::constant(matrix::real(1.0));
        assert_eq!(radial_laplacian(&one, &theta, cfg()).unwrap(), matrix::real(0.0));
        let chi = RadialFunction::schur(&"1,0".parse().unwrap());
        let got = radial_laplacian(&chi, &theta, cfg()).unwrap();
        assert!((got + chi.evaluate(&theta) * 2.0).norm() < 1e-7, "{got}");
    }

    #[test]
    fn radial_forms_agree_on_vandermonde() {
        let theta = [2.2, 0.4, -1.5];
        let j = RadialFunction::vandermonde();
        let a = radial_laplacian(&j, &theta, cfg()).unwrap();
        let b = radial_laplacian_alt(&j, &theta, cfg()).unwrap();
        assert!((a - b).norm() / a.norm().max(SCALE_FLOOR) < 1e-5, "{a} vs {b}");
        assert!(j.symmetry_defect(&theta) > 1.0);
    }

    #[test]
    fn alt_form_of_constant_vanishes() {
        let one = RadialFunction::constant(matrix::real(1.0));
        let got = radial_laplacian_alt(&one, &[2.0, 0.1, -2.3], cfg()).unwrap();
        assert!(got.norm() < 1e-6, "{got}");
    }

    #[test]
    fn alt_form_on_antisymmetric_character() {
        let chi = RadialFunction::schur(&"1,1,0".parse().unwrap());
        let theta = [2.5, 0.3, -1.1];
        let got = radial_laplacian_alt(&chi, &theta, cfg()).unwrap();
        let f = chi.evaluate(&theta);
        assert!((got + f * 4.0).norm() / f.norm() < 1e-4);
        assert!(chi.symmetry_defect(&theta) < 1e-12);
    }

    #[test]
    fn radial_refuses_close_angles() {
        let one = RadialFunction::constant(matrix::real(1.0));
        assert!(matches!(radial_laplacian(&one, &[0.5, 0.55], cfg()), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn class_function_has_vanishing_angular_terms() {
        let mut r = rng(13);
        let chi = GroupFunction::character(&Representation::defining(3).unwrap());
        let v = random_regular_unitary(3, 0.4, &mut r);
        let lap = full_laplacian(&chi, &v, cfg()).unwrap();
        for a in &lap.angular {
            assert!(a.skew.norm() < 1e-6, "{a:?}");
        }
        let want = chi.evaluate(&v) * -3.0;
        assert!((lap.total() - want).norm() / want.norm().max(SCALE_FLOOR) < 1e-6);
    }

    #[test]
    fn polar_form_matches_casimir_on_u2_element() {
        let mut r = rng(14);
        let rep = Representation::defining(2).unwrap();
        let basis = GeneratorBasis::build(2, BasisKind::FullUnitary).unwrap();
        let psi = GroupFunction::matrix_element(&rep, 0, 1).unwrap();
        for _ in 0..5 {
            let v = random_regular_unitary(2, 0.4, &mut r);
            let lap = full_laplacian(&psi, &v, cfg()).unwrap();
            let cas = casimir_laplacian(&psi, &v, &basis, cfg());
            let scale = error_scale(psi.evaluate(&v));
            assert!((lap.total() - cas).norm() / scale < 1e-4, "{} vs {cas}", lap.total());
            assert!((lap.total() + psi.evaluate(&v) * 2.0).norm() / scale < 1e-4);
            assert!((lap.total() - lap.total_hermitian()).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_has_zero_laplacian_everywhere() {
        let mut r = rng(15);
        let one = GroupFunction::constant(matrix::real(1.0));
        let v = random_regular_unitary(3, 0.4, &mut r);
        assert!(full_laplacian(&one, &v, cfg()).unwrap().total().norm() < 1e-10);
        let w = random_regular_special_unitary(3, 0.4, &mut r);
        let su = su_laplacian_check(&one, &w, cfg()).unwrap();
        assert!(su.casimir.norm() < 1e-10 && su.polar.norm() < 1e-10 && su.polar_alt.norm() < 1e-6);
    }

    #[test]
    fn su_routes() {
        let mut r = rng(16);
        for (n, eig) in [(2, -1.5), (3, -8.0 / 3.0)] {
            let rep = Representation::defining(n).unwrap();
            let v = random_regular_special_unitary(n, 0.4, &mut r);
            let psi = GroupFunction::matrix_element(&rep, 0, 1).unwrap();
            let got = su_laplacian_check(&psi, &v, cfg()).unwrap();
            let want = psi.evaluate(&v) * eig;
            let scale = error_scale(psi.evaluate(&v));
            assert!((got.casimir - want).norm() / scale < 1e-6);
            assert!((got.polar - want).norm() / scale < 1e-4, "{} vs {want}", got.polar);
            assert!((got.polar_alt - want).norm() / scale < 1e-4);
        }
        let v = random_regular_unitary(3, 0.4, &mut r) * Complex64::from_polar(1.0, 0.3);
        let psi = GroupFunction::constant(matrix::real(1.0));
        assert!(matches!(su_laplacian_check(&psi, &v, cfg()), Err(Error::NotSpecialUnitary(_))));
    }

    #[test]
    fn numerators_coincide() {
        for n in 2..=4 {
            for i in 0..n {
                for j in (i + 1)..n {
                    let want = -(elementary(n, i, i).unwrap() + elementary(n, j, j).unwrap());
                    for m in angular_numerators(n, i, j).unwrap() {
                        assert!(max_diff(&m, &want) < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn frozen_radial_function_reproduces_group_value() {
        let mut r = rng(17);
        let v = random_regular_unitary(3, 0.4, &mut r);
        let pf = polar_decompose(&v).unwrap();
        let psi = GroupFunction::matrix_element(&Representation::defining(3).unwrap(), 1, 2).unwrap();
        let f = RadialFunction::frozen(&psi, &pf.u);
        assert!((f.evaluate(&pf.angles) - psi.evaluate(&v)).norm() < 1e-12);
    }
}
