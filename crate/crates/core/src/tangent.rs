//! Differential of the conjugation map `(u A, a) -> u a u^{-1}` on vertical
//! and horizontal directions, transport of the resulting fields off the
//! torus, and the induced (diagonal) metric.
//!
//! A tangent vector at the torus point `a = diag(e^{i theta})` is stored as
//! the algebra element `z` with tangent vector `a z`.

use crate::error::{Error, Result};
use crate::lie_basis::{GeneratorBasis, GeneratorRole, PairPart};
use crate::matrix::{self, metric, torus_element, CMatrix};
use crate::polar::{vandermonde_squared, AngleVector, DEGENERACY_EPS};
use crate::report::{Gate, ReportBuilder, VerificationReport};
use crate::sampling;

const ALGEBRA_TOL: f64 = 1e-13;
const TRANSPORT_UNITARITY_TOL: f64 = 1e-10;
pub const METRIC_TOL: f64 = 1e-12;
/// Minimum gap of the sampled angle vectors in [`verify_metric`].
const METRIC_SAMPLE_GAP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct TangentVectorAtTorus {
    pub base: AngleVector,
    pub value: CMatrix,
}

fn check_dim(angles: &AngleVector, m: &CMatrix) -> Result<()> {
    if m.nrows() != angles.len() || m.ncols() != angles.len() {
        return Err(Error::DimensionMismatch { left: angles.len(), right: m.nrows() });
    }
    Ok(())
}

/// Vertical (toroidal) directions pass through unchanged.
pub fn dkappa_vertical(angles: &AngleVector, y: &CMatrix) -> Result<TangentVectorAtTorus> {
    check_dim(angles, y)?;
    let off = matrix::off_diagonal_norm(y);
    if off > ALGEBRA_TOL {
        return Err(Error::NotVertical(format!("off-diagonal entry of size {off:e}")));
    }
    let skew = matrix::skew_hermitian_defect(y);
    if skew > ALGEBRA_TOL {
        return Err(Error::NotVertical(format!("skew-hermitian defect {skew:e}")));
    }
    Ok(TangentVectorAtTorus { base: angles.clone(), value: y.clone() })
}

/// `a^{-1} X a - X` for a horizontal `X`.
pub fn dkappa_horizontal(angles: &AngleVector, x: &CMatrix) -> Result<TangentVectorAtTorus> {
    check_dim(angles, x)?;
    let diag = (0..x.nrows()).map(|i| x[(i, i)].norm()).fold(0.0, f64::max);
    if diag > ALGEBRA_TOL {
        return Err(Error::NotHorizontal(format!("diagonal entry of size {diag:e}")));
    }
    let skew = matrix::skew_hermitian_defect(x);
    if skew > ALGEBRA_TOL {
        return Err(Error::NotHorizontal(format!("skew-hermitian defect {skew:e}")));
    }
    let a = torus_element(angles);
    let value = a.adjoint() * x * &a - x;
    Ok(TangentVectorAtTorus { base: angles.clone(), value })
}

/// Image of the normalized pair generator in closed form:
/// `X_k -> (cos d - 1) X_k - sin d X_l` and `X_l -> (cos d - 1) X_l + sin d X_k`
/// with `d = theta_i - theta_j`.
pub fn horizontal_image_closed_form(angles: &[f64], i: usize, j: usize, part: PairPart) -> Result<CMatrix> {
    let n = angles.len();
    let xk = crate::lie_basis::pair_generator(n, i, j, PairPart::Antisymmetric)?;
    let xl = crate::lie_basis::pair_generator(n, i, j, PairPart::Symmetric)?;
    let d = angles[i] - angles[j];
    let (cm1, s) = (matrix::real(d.cos() - 1.0), matrix::real(d.sin()));
    Ok(match part {
        PairPart::Antisymmetric => xk * cm1 - xl * s,
        PairPart::Symmetric => xl * cm1 + xk * s,
    })
}

/// `u z u^{-1}`.
pub fn transport_field(u: &CMatrix, tangent: &TangentVectorAtTorus) -> Result<CMatrix> {
    matrix::check_same_dim(u, &tangent.value)?;
    let defect = matrix::unitarity_defect(u);
    if defect > TRANSPORT_UNITARITY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(u * &tangent.value * u.adjoint())
}

/// Metric components of the polar coordinates in a given basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricComponents {
    pub labels: Vec<String>,
    /// `g_aa`, basis order.
    pub diagonal: Vec<f64>,
    /// `max_{a != b} |g_ab|`.
    pub max_off_diagonal: f64,
    /// Largest deviation of a diagonal entry from its closed form
    /// (`1` vertical, `4 sin^2((theta_i - theta_j)/2)` horizontal).
    pub closed_form_deviation: f64,
}

impl MetricComponents {
    /// `g^{aa} = 1 / g_aa`.
    pub fn inverse_diagonal(&self) -> Vec<f64> {
        self.diagonal.iter().map(|g| 1.0 / g).collect()
    }

    /// `sqrt |det g|`, which equals `J^2`.
    pub fn sqrt_det(&self) -> f64 {
        self.diagonal.iter().product::<f64>().abs().sqrt()
    }
}

fn tangent_images(angles: &AngleVector, basis: &GeneratorBasis) -> Result<Vec<(CMatrix, f64)>> {
    basis
        .generators()
        .iter()
        .map(|g| match g.role {
            GeneratorRole::Vertical => Ok((dkappa_vertical(angles, &g.matrix)?.value, 1.0)),
            GeneratorRole::Horizontal { i, j, .. } => {
                let s = (0.5 * (angles[i] - angles[j])).sin();
                Ok((dkappa_horizontal(angles, &g.matrix)?.value, 4.0 * s * s))
            }
            GeneratorRole::Other => Err(Error::Unsupported(format!(
                "generator {} has no vertical/horizontal role",
                g.label
            ))),
        })
        .collect()
}

fn components(labels: Vec<String>, images: &[(CMatrix, f64)]) -> MetricComponents {
    let mut diagonal = Vec::with_capacity(images.len());
    let mut max_off: f64 = 0.0;
    let mut dev: f64 = 0.0;
    for (a, (za, closed)) in images.iter().enumerate() {
        for (b, (zb, _)) in images.iter().enumerate() {
            let g = metric(za, zb);
            if a == b {
                diagonal.push(g.re);
                dev = dev.max((g - matrix::real(*closed)).norm());
            } else {
                max_off = max_off.max(g.norm());
            }
        }
    }
    MetricComponents { labels, diagonal, max_off_diagonal: max_off, closed_form_deviation: dev }
}

fn require_regular(angles: &AngleVector) -> Result<()> {
    let gap = angles.min_gap();
    if gap <= DEGENERACY_EPS {
        return Err(Error::Degenerate { gap, required: DEGENERACY_EPS });
    }
    Ok(())
}

/// Metric at the torus point `diag(e^{i theta})`.
pub fn metric_components(angles: &AngleVector, basis: &GeneratorBasis) -> Result<MetricComponents> {
    require_regular(angles)?;
    if basis.n() != angles.len() {
        return Err(Error::DimensionMismatch { left: basis.n(), right: angles.len() });
    }
    let images = tangent_images(angles, basis)?;
    let labels = basis.generators().iter().map(|g| g.label.clone()).collect();
    Ok(components(labels, &images))
}

/// Metric at `v = u a u^{-1}` from the transported fields `u z u^{-1}`.
pub fn metric_components_transported(
    u: &CMatrix,
    angles: &AngleVector,
    basis: &GeneratorBasis,
) -> Result<MetricComponents> {
    require_regular(angles)?;
    if basis.n() != angles.len() {
        return Err(Error::DimensionMismatch { left: basis.n(), right: angles.len() });
    }
    let images = tangent_images(angles, basis)?
        .into_iter()
        .map(|(z, closed)| {
            let t = TangentVectorAtTorus { base: angles.clone(), value: z };
            Ok((transport_field(u, &t)?, closed))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = basis.generators().iter().map(|g| g.label.clone()).collect();
    Ok(components(labels, &images))
}

/// Metric at `samples` random regular torus points: vanishing off-diagonal
/// part, diagonal closed forms, `sqrt det g = J^2` and, at the same points
/// moved off the torus by a random frame, conjugation invariance.
pub fn verify_metric(n: usize, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let basis = GeneratorBasis::build(n, crate::lie_basis::BasisKind::FullUnitary)?;
    let mut rep = ReportBuilder::new(format!("metric n={n}"), tol, Gate::Absolute, seed);
    let mut rng = sampling::rng(seed);
    let mut worst_det: f64 = 0.0;
    let mut worst_inverse: f64 = 0.0;
    let mut worst_transport: f64 = 0.0;
    for s in 0..samples {
        let angles = AngleVector::new(sampling::random_regular_angles(n, METRIC_SAMPLE_GAP, &mut rng));
        let g = metric_components(&angles, &basis)?;
        rep.record(format!("sample {s} off-diagonal"), g.max_off_diagonal, 1.0);
        rep.record(format!("sample {s} closed form"), g.closed_form_deviation, 1.0);
        let det_err = (g.sqrt_det() - vandermonde_squared(&angles)).abs();
        worst_det = worst_det.max(det_err);
        rep.require(format!("sample {s} determinant"), det_err < 1e-10);
        let inv_err = g.inverse_diagonal().iter().zip(&g.diagonal).map(|(a, b)| (a * b - 1.0).abs()).fold(0.0, f64::max);
        worst_inverse = worst_inverse.max(inv_err);
        rep.require(format!("sample {s} inverse"), inv_err < 1e-13);
        let u = sampling::random_unitary(n, &mut rng);
        let moved = metric_components_transported(&u, &angles, &basis)?;
        let dev = moved.diagonal.iter().zip(&g.diagonal).map(|(a, b)| (a - b).abs()).fold(moved.max_off_diagonal, f64::max);
        worst_transport = worst_transport.max(dev);
        rep.require(format!("sample {s} conjugation invariance"), dev < 1e-11);
    }
    rep.value("maxDeterminantErr", worst_det);
    rep.value("maxInverseErr", worst_inverse);
    rep.value("maxTransportErr", worst_transport);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_basis::{pair_generator, BasisKind};
    use crate::matrix::{elementary, max_diff, I};
    use std::f64::consts::PI;

    fn raw(theta: &[f64]) -> AngleVector {
        AngleVector::new(theta.to_vec())
    }

    #[test]
    fn vertical_is_identity() {
        let a = raw(&[0.7, -0.2, 1.9]);
        let it2 = elementary(3, 1, 1).unwrap() * I;
        assert_eq!(dkappa_vertical(&a, &it2).unwrap().value, it2);
        let mixed = (elementary(3, 0, 0).unwrap() - elementary(3, 2, 2).unwrap()) * I;
        assert_eq!(dkappa_vertical(&a, &mixed).unwrap().value, mixed);
        let zero = CMatrix::zeros(3, 3);
        assert_eq!(dkappa_vertical(&a, &zero).unwrap().value, zero);
    }

    #[test]
    fn vertical_rejects_non_diagonal_or_hermitian() {
        let a = raw(&[0.7, -0.2]);
        assert!(matches!(
            dkappa_vertical(&a, &pair_generator(2, 0, 1, PairPart::Antisymmetric).unwrap()),
            Err(Error::NotVertical(_))
        ));
        assert!(matches!(dkappa_vertical(&a, &elementary(2, 0, 0).unwrap()), Err(Error::NotVertical(_))));
    }

    #[test]
    fn horizontal_rejects_diagonal_component() {
        let a = raw(&[0.7, -0.2]);
        let x = pair_generator(2, 0, 1, PairPart::Symmetric).unwrap() + elementary(2, 0, 0).unwrap() * I;
        assert!(matches!(dkappa_horizontal(&a, &x), Err(Error::NotHorizontal(_))));
    }

    #[test]
    fn horizontal_at_half_turn() {
        // d = pi: cos d - 1 = -2, sin d = 0.
        let theta = [PI / 2.0, -PI / 2.0];
        let a = raw(&theta);
        let x = elementary(2, 0, 1).unwrap() - elementary(2, 1, 0).unwrap();
        let img = dkappa_horizontal(&a, &x).unwrap().value;
        assert!(max_diff(&img, &(&x * matrix::real(-2.0))) < 1e-15);
    }

    #[test]
    fn horizontal_at_quarter_turn() {
        // d = pi/2: i(E+E) -> -i(E+E) + (E-E).
        let a = raw(&[PI / 4.0, -PI / 4.0]);
        let e12 = elementary(2, 0, 1).unwrap();
        let e21 = elementary(2, 1, 0).unwrap();
        let x = (&e12 + &e21) * I;
        let img = dkappa_horizontal(&a, &x).unwrap().value;
        let want = -&x + (&e12 - &e21);
        assert!(max_diff(&img, &want) < 1e-15);
    }

    #[test]
    fn horizontal_vanishes_on_coincident_pair() {
        let a = raw(&[0.4, 0.4, -1.0]);
        let x = pair_generator(3, 0, 1, PairPart::Antisymmetric).unwrap();
        assert!(matrix::max_norm(&dkappa_horizontal(&a, &x).unwrap().value) < 1e-16);
    }

    #[test]
    fn closed_forms_match_conjugation() {
        let theta = [2.1, 0.3, -0.8, -2.6];
        let a = raw(&theta);
        for i in 0..4 {
            for j in (i + 1)..4 {
                for part in [PairPart::Antisymmetric, PairPart::Symmetric] {
                    let x = pair_generator(4, i, j, part).unwrap();
                    let direct = dkappa_horizontal(&a, &x).unwrap().value;
                    let closed = horizontal_image_closed_form(&a, i, j, part).unwrap();
                    assert!(max_diff(&direct, &closed) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn metric_closed_form_values() {
        let b = GeneratorBasis::build(2, BasisKind::FullUnitary).unwrap();
        let g = metric_components(&raw(&[PI / 2.0, -PI / 2.0]), &b).unwrap();
        assert!((g.diagonal[2] - 4.0).abs() < 1e-14 && (g.diagonal[3] - 4.0).abs() < 1e-14);
        let g = metric_components(&raw(&[PI / 4.0, -PI / 4.0]), &b).unwrap();
        assert!((g.diagonal[2] - 2.0).abs() < 1e-14);
        assert_eq!(&g.diagonal[..2], &[1.0, 1.0]);
    }

    #[test]
    fn metric_determinant_and_inverse() {
        let theta = [2.0, 0.9, -0.5];
        let a = raw(&theta);
        let b = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        let g = metric_components(&a, &b).unwrap();
        assert!(g.max_off_diagonal < 1e-12);
        assert!(g.closed_form_deviation < 1e-12);
        assert!((g.sqrt_det() - vandermonde_squared(&a)).abs() < 1e-10);
        for (x, y) in g.diagonal.iter().zip(g.inverse_diagonal()) {
            assert!((x * y - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn degenerate_angles_are_refused() {
        let b = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        assert!(matches!(metric_components(&raw(&[0.5, 0.5, -1.0]), &b), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn transport_identity_and_diagonal() {
        let a = raw(&[0.3, -0.6]);
        let it1 = elementary(2, 0, 0).unwrap() * I;
        let t = dkappa_vertical(&a, &it1).unwrap();
        assert_eq!(transport_field(&matrix::identity(2), &t).unwrap(), it1);
        let u = torus_element(&[1.2, -0.4]);
        assert!(max_diff(&transport_field(&u, &t).unwrap(), &it1) < 1e-16);
        assert!(matches!(
            transport_field(&(matrix::identity(2) * matrix::real(2.0)), &t),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn transported_metric_is_conjugation_invariant() {
        let mut r = crate::sampling::rng(31);
        let a = raw(&[2.4, 0.1, -1.3]);
        let b = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        let at_torus = metric_components(&a, &b).unwrap();
        for _ in 0..10 {
            let u = crate::sampling::random_unitary(3, &mut r);
            let moved = metric_components_transported(&u, &a, &b).unwrap();
            for (x, y) in at_torus.diagonal.iter().zip(&moved.diagonal) {
                assert!((x - y).abs() < 1e-11);
            }
            assert!(moved.max_off_diagonal < 1e-11);
        }
    }
}
