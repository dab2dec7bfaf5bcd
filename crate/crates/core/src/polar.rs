//! Weyl polar decomposition `v = u diag(e^{i theta}) u^{-1}` and the
//! functions of the eigenangles that the Laplacian needs: the Vandermonde
//! factor `J`, its log-gradient, and the curvature constant.
//!
//! Canonical angles live in `(-pi, pi]` and are sorted in descending order.
//! Columns of `u` follow the angle order and are phase-fixed so that each
//! column's largest-modulus entry is real and positive.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, rows_of, torus_element, CMatrix};
use crate::report::{Gate, ReportBuilder, VerificationReport};
use crate::sampling;
use crate::stencil::StencilConfig;

/// Gap (radians) at or below which two eigenangles count as coincident.
pub const DEGENERACY_EPS: f64 = 1e-8;

/// Accepted `max |v^dagger v - I|` for decomposition input.
pub const UNITARITY_TOL: f64 = 1e-10;

pub const CURVATURE_TOL: f64 = 1e-6;
pub const TRIG_TOL: f64 = 1e-13;
pub const ROUNDTRIP_TOL: f64 = 1e-10;

const SCHUR_MAX_ITER: usize = 10_000;

/// Maps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    // rem_euclid can land on -pi after the subtraction through rounding.
    if y <= -PI {
        y += TAU;
    }
    y
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// `min_{i != j}` circular distance; infinite for fewer than two angles.
pub fn min_gap(theta: &[f64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..theta.len() {
        for j in (i + 1)..theta.len() {
            gap = gap.min(circular_distance(theta[i], theta[j]));
        }
    }
    gap
}

/// Eigenangles in canonical branch and descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", from = "Vec<f64>")]
pub struct AngleVector(Vec<f64>);

impl AngleVector {
    /// Wraps each component into `(-pi, pi]` and sorts descending.
    pub fn new(theta: impl Into<Vec<f64>>) -> Self {
        let mut v: Vec<f64> = theta.into().into_iter().map(wrap_angle).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        AngleVector(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_gap(&self) -> f64 {
        min_gap(&self.0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_gap() > DEGENERACY_EPS
    }
}

impl From<Vec<f64>> for AngleVector {
    fn from(v: Vec<f64>) -> Self {
        AngleVector::new(v)
    }
}

impl From<AngleVector> for Vec<f64> {
    fn from(a: AngleVector) -> Self {
        a.0
    }
}

impl std::ops::Deref for AngleVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport {
    /// `(i, j, gap)` with `gap <= eps`, zero-based.
    pub coincident_pairs: Vec<(usize, usize, f64)>,
}

impl DegeneracyReport {
    pub fn of(theta: &[f64], eps: f64) -> Self {
        let mut coincident_pairs = Vec::new();
        for i in 0..theta.len() {
            for j in (i + 1)..theta.len() {
                let gap = circular_distance(theta[i], theta[j]);
                if gap <= eps {
                    coincident_pairs.push((i, j, gap));
                }
            }
        }
        DegeneracyReport { coincident_pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.coincident_pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarForm {
    pub u: CMatrix,
    pub angles: AngleVector,
    pub regular: bool,
    pub min_gap: f64,
}

impl PolarForm {
    /// `u diag(e^{i theta}) u^dagger`.
    pub fn reconstruct(&self) -> CMatrix {
        &self.u * torus_element(&self.angles) * self.u.adjoint()
    }

    pub fn degeneracy(&self) -> DegeneracyReport {
        DegeneracyReport::of(&self.angles, DEGENERACY_EPS)
    }

    pub fn to_json(&self) -> PolarJson {
        PolarJson {
            theta: self.angles.as_slice().to_vec(),
            u: rows_of(&self.u),
            regular: self.regular,
            min_gap: self.min_gap,
        }
    }
}

/// `{ "theta": [..], "u": [[[re, im], ..]], "regular": bool, "minGap": real }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PolarJson {
    pub theta: Vec<f64>,
    pub u: Vec<Vec<[f64; 2]>>,
    pub regular: bool,
    pub min_gap: f64,
}

pub fn polar_decompose(v: &CMatrix) -> Result<PolarForm> {
    if v.nrows() != v.ncols() {
        return Err(Error::DimensionMismatch { left: v.nrows(), right: v.ncols() });
    }
    if !matrix::is_finite(v) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    let defect = matrix::unitarity_defect(v);
    if defect >= UNITARITY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let n = v.nrows();
    // A normal matrix has diagonal Schur form, so the Schur vectors are
    // eigenvectors.
    let schur = v.clone().try_schur(f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::Eigensolver)?;
    let (mut q, t) = schur.unpack();
    if !matrix::is_finite(&q) || !matrix::is_finite(&t) {
        return Err(Error::Eigensolver);
    }
    let raw: Vec<f64> = (0..n).map(|j| wrap_angle(t[(j, j)].arg())).collect();

    let mut lead = vec![0usize; n];
    for (j, lead_j) in lead.iter_mut().enumerate() {
        let (idx, _) = (0..n).fold((0, -1.0), |(bi, bm), i| {
            let m = q[(i, j)].norm();
            if m > bm {
                (i, m)
            } else {
                (bi, bm)
            }
        });
        *lead_j = idx;
        let z = q[(idx, j)];
        let phase = z.conj() / z.norm();
        for i in 0..n {
            q[(i, j)] *= phase;
        }
        q[(idx, j)] = matrix::real(q[(idx, j)].norm());
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]).then(lead[a].cmp(&lead[b])));
    let u = CMatrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    let angles = AngleVector(order.iter().map(|&j| raw[j]).collect());
    let gap = angles.min_gap();
    Ok(PolarForm { u, angles, regular: gap > DEGENERACY_EPS, min_gap: gap })
}

/// Decomposes `samples` Haar unitaries and checks reconstruction, unitarity
/// of the frame, and canonical ordering of the angles.
pub fn verify_polar_roundtrip(n: usize, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new(format!("polar round-trip n={n}"), tol, Gate::Absolute, seed);
    let mut rng = sampling::rng(seed);
    for s in 0..samples {
        let v = sampling::random_unitary(n, &mut rng);
        let p = polar_decompose(&v)?;
        rep.record(format!("sample {s} reconstruction"), matrix::max_diff(&p.reconstruct(), &v), 1.0);
        rep.record(format!("sample {s} frame"), matrix::unitarity_defect(&p.u), 1.0);
        let sorted = p.angles.windows(2).all(|w| w[0] >= w[1]);
        let in_range = p.angles.iter().all(|t| *t > -PI && *t <= PI);
        rep.require(format!("sample {s} canonical angles"), sorted && in_range);
    }
    Ok(rep.finish())
}

/// `J = prod_{i<j} 2 sin((theta_i - theta_j)/2)`. Takes raw angles so that
/// finite-difference stencils can step across the canonical branch.
pub fn vandermonde(theta: &[f64]) -> f64 {
    let mut j = 1.0;
    for a in 0..theta.len() {
        for b in (a + 1)..theta.len() {
            j *= 2.0 * (0.5 * (theta[a] - theta[b])).sin();
        }
    }
    j
}

/// `prod_{i<j} 4 sin^2((theta_i - theta_j)/2)`, the volume density `J^2`.
pub fn vandermonde_squared(theta: &[f64]) -> f64 {
    let mut p = 1.0;
    for a in 0..theta.len() {
        for b in (a + 1)..theta.len() {
            let s = (0.5 * (theta[a] - theta[b])).sin();
            p *= 4.0 * s * s;
        }
    }
    p
}

/// `d_j log J^2 = sum_{k != j} cot((theta_j - theta_k)/2)`.
pub fn log_vandermonde_squared_gradient(theta: &[f64]) -> Vec<f64> {
    (0..theta.len())
        .map(|j| {
            (0..theta.len())
                .filter(|&k| k != j)
                .map(|k| 1.0 / (0.5 * (theta[j] - theta[k])).tan())
                .sum()
        })
        .collect()
}

/// `R_N = N (N^2 - 1) / 12`.
pub fn curvature_constant(n: usize) -> f64 {
    let n = n as f64;
    n * (n * n - 1.0) / 12.0
}

/// Angle shift onto `sum theta = 0 (mod 2 pi)` by a uniform offset,
/// without re-canonicalizing. Components keep their positions.
pub fn su_shift(theta: &[f64]) -> Vec<f64> {
    let n = theta.len() as f64;
    let s: f64 = theta.iter().sum();
    let excess = s - TAU * (s / TAU).round();
    theta.iter().map(|t| t - excess / n).collect()
}

/// Nearest angle vector (uniform shift) on the SU(N) torus.
pub fn project_su(angles: &AngleVector) -> AngleVector {
    AngleVector::new(su_shift(angles))
}

/// Samples regular angle vectors and checks that the finite-difference
/// value of `sum_j (1/J) d_j^2 J` equals `-R_N`.
pub fn verify_curvature_identity(
    n: usize,
    samples: usize,
    seed: u64,
    cfg: StencilConfig,
    tol: f64,
) -> Result<VerificationReport> {
    if !(2..=6).contains(&n) {
        return Err(Error::Unsupported(format!("curvature check needs 2 <= n <= 6, got {n}")));
    }
    let target = -curvature_constant(n);
    let mut rep = ReportBuilder::new(format!("curvature n={n}"), tol, Gate::Absolute, seed);
    let mut rng = sampling::rng(seed);
    let mut sum = 0.0;
    for s in 0..samples {
        let theta = sampling::random_regular_angles(n, 0.3, &mut rng);
        let jac = vandermonde(&theta);
        let value = (0..n)
            .map(|j| cfg.second_derivative(|t| vandermonde(&shifted(&theta, j, t))))
            .sum::<f64>()
            / jac;
        sum += value;
        rep.record(format!("sample {s}"), (value - target).abs(), target.abs().max(1.0));
    }
    if samples > 0 {
        rep.value("mean", sum / samples as f64);
    }
    rep.value("expected", target);
    Ok(rep.finish())
}

pub(crate) fn shifted(theta: &[f64], j: usize, t: f64) -> Vec<f64> {
    let mut p = theta.to_vec();
    p[j] += t;
    p
}

/// `-4 sin((x-y)/2) sin((y-z)/2) sin((z-x)/2)`.
pub fn trig_identity_product(x: f64, y: f64, z: f64) -> f64 {
    -4.0 * (0.5 * (x - y)).sin() * (0.5 * (y - z)).sin() * (0.5 * (z - x)).sin()
}

/// `sin(x-y) + sin(y-z) + sin(z-x)`.
pub fn trig_identity_sum(x: f64, y: f64, z: f64) -> f64 {
    (x - y).sin() + (y - z).sin() + (z - x).sin()
}

pub fn verify_trig_identity(samples: usize, seed: u64, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("trig identity", tol, Gate::Absolute, seed);
    let mut check = |label: String, x: f64, y: f64, z: f64| {
        let lhs = trig_identity_product(x, y, z);
        let rhs = trig_identity_sum(x, y, z);
        rep.record(label, (lhs - rhs).abs(), 1.0);
    };
    check("(0, 0, 0)".into(), 0.0, 0.0, 0.0);
    check("(pi, 0, 0)".into(), PI, 0.0, 0.0);
    check("(1.3, -0.4, 2.2)".into(), 1.3, -0.4, 2.2);
    let mut rng = sampling::rng(seed);
    for s in 0..samples {
        let t = sampling::random_angles(3, &mut rng);
        check(format!("sample {s}"), t[0], t[1], t[2]);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, max_diff, unitarity_defect};
    use crate::sampling::{random_unitary, rng};

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-16);
        assert!((wrap_angle(TAU + 0.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn diagonal_input_is_already_decomposed() {
        let v = torus_element(&[1.0, 0.5]);
        let p = polar_decompose(&v).unwrap();
        assert!((p.angles[0] - 1.0).abs() < 1e-15 && (p.angles[1] - 0.5).abs() < 1e-15);
        assert!(max_diff(&p.u, &matrix::identity(2)) < 1e-15);
        assert!(p.regular);
    }

    #[test]
    fn diagonal_input_is_sorted_with_permutation() {
        let v = torus_element(&[-0.2, 1.1, 0.4]);
        let p = polar_decompose(&v).unwrap();
        assert_eq!(p.angles.len(), 3);
        assert!((p.angles[0] - 1.1).abs() < 1e-15);
        assert!((p.angles[2] + 0.2).abs() < 1e-15);
        assert_eq!(p.u[(1, 0)], c(1.0, 0.0));
        assert!(max_diff(&p.reconstruct(), &v) < 1e-14);
    }

    #[test]
    fn identity_is_degenerate() {
        let p = polar_decompose(&matrix::identity(3)).unwrap();
        assert_eq!(p.angles.as_slice(), &[0.0, 0.0, 0.0]);
        assert!(!p.regular);
        assert_eq!(p.degeneracy().coincident_pairs.len(), 3);
    }

    #[test]
    fn round_trip_recovers_prescribed_angles() {
        let mut r = rng(2024);
        let u0 = random_unitary(3, &mut r);
        let v = &u0 * torus_element(&[0.9, -0.4, 2.1]) * u0.adjoint();
        let p = polar_decompose(&v).unwrap();
        for (got, want) in p.angles.iter().zip([2.1, 0.9, -0.4]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(max_diff(&p.reconstruct(), &v) < 1e-10);
        assert!(unitarity_defect(&p.u) < 1e-12);
        for j in 0..3 {
            let lead = (0..3).map(|i| p.u[(i, j)]).max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let v = matrix::identity(2) * c(1.1, 0.0);
        assert!(matches!(polar_decompose(&v), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn vandermonde_values() {
        assert!((vandermonde(&[PI / 2.0, -PI / 2.0]) - 2.0).abs() < 1e-15);
        assert_eq!(vandermonde(&[0.4, 0.4, -1.0]), 0.0);
        // Direct substitution: every pair contributes 2 sin(pi/3) = sqrt 3.
        let t = [2.0 * PI / 3.0, 0.0, -2.0 * PI / 3.0];
        assert!((vandermonde(&t) - 3.0 * 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn vandermonde_three_factor_form() {
        let mut r = rng(4);
        for _ in 0..100 {
            let t = sampling::random_angles(3, &mut r);
            let s = |a: f64, b: f64| (0.5 * (a - b)).sin();
            let alt = -8.0 * s(t[0], t[1]) * s(t[1], t[2]) * s(t[2], t[0]);
            assert!((vandermonde(&t) - alt).abs() < 1e-14);
            assert!((vandermonde(&t).powi(2) - vandermonde_squared(&t)).abs() < 1e-13);
        }
    }

    #[test]
    fn curvature_constants() {
        assert_eq!(curvature_constant(3), 2.0);
        assert_eq!(curvature_constant(2), 0.5);
        assert_eq!(curvature_constant(1), 0.0);
        assert_eq!(curvature_constant(4), 5.0);
    }

    #[test]
    fn curvature_identity_small_n() {
        for n in 2..=4 {
            let r = verify_curvature_identity(n, 5, 7, StencilConfig::default(), CURVATURE_TOL).unwrap();
            assert!(r.pass, "n={n}: {:?}", r.failures);
            assert!((r.values["mean"] + curvature_constant(n)).abs() < 1e-6);
        }
        assert!(verify_curvature_identity(7, 1, 0, StencilConfig::default(), CURVATURE_TOL).is_err());
    }

    #[test]
    fn log_gradient_matches_finite_differences() {
        let theta = [1.2, 0.1, -1.9];
        let grad = log_vandermonde_squared_gradient(&theta);
        let cfg = StencilConfig::default();
        for (j, g) in grad.iter().enumerate() {
            let fd = cfg.first_derivative(|t| vandermonde_squared(&shifted(&theta, j, t)).ln());
            assert!((fd - g).abs() < 1e-8);
        }
    }

    #[test]
    fn trig_identity_examples() {
        assert_eq!(trig_identity_product(0.0, 0.0, 0.0), 0.0);
        assert!(trig_identity_product(PI, 0.0, 0.0).abs() < 1e-15);
        assert!(trig_identity_sum(PI, 0.0, 0.0).abs() < 1e-15);
        let d = trig_identity_product(1.3, -0.4, 2.2) - trig_identity_sum(1.3, -0.4, 2.2);
        assert!(d.abs() < 1e-13);
        assert!(verify_trig_identity(1000, 1, TRIG_TOL).pass);
    }

    #[test]
    fn su_projection() {
        let close = |a: &AngleVector, b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        let a = AngleVector::new(vec![0.3, -0.3]);
        assert!(close(&project_su(&a), &[0.3, -0.3]));
        let b = project_su(&AngleVector::new(vec![0.3, 0.3, 0.3]));
        assert!(b.iter().all(|x| x.abs() < 1e-16));
        let c = AngleVector::new(vec![PI, PI]);
        assert!(close(&project_su(&c), &[PI, PI]));
        let mut r = rng(9);
        for _ in 0..50 {
            let t = AngleVector::new(sampling::random_angles(4, &mut r));
            let p = project_su(&t);
            let s: f64 = p.iter().sum();
            assert!((s - TAU * (s / TAU).round()).abs() < 1e-12);
        }
    }
}
