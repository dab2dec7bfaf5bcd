//! Small concrete representations of U(N): trivial, defining, tensor
//! products and the (anti)symmetric squares, plus the Casimir matrix and
//! bialternant (Schur) characters.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie_basis::GeneratorBasis;
use crate::matrix::{self, kron, torus_element, CMatrix};
use crate::polar::min_gap;

/// Smallest circular gap at which the bialternant ratio is evaluated.
pub const CHARACTER_GAP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
enum RepKind {
    Trivial,
    Defining,
    Tensor(Box<Representation>, Box<Representation>),
    /// `P^dagger rho(v) P` for an isometry `P` onto an invariant subspace.
    Projected { parent: Box<Representation>, isometry: CMatrix },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    n: usize,
    dim: usize,
    label: String,
    kind: RepKind,
}

impl Representation {
    pub fn trivial(n: usize) -> Self {
        Representation { n, dim: 1, label: "trivial".into(), kind: RepKind::Trivial }
    }

    pub fn defining(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { got: n, min: 2 });
        }
        Ok(Representation { n, dim: n, label: "defining".into(), kind: RepKind::Defining })
    }

    pub fn tensor(a: &Representation, b: &Representation) -> Result<Self> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch { left: a.n, right: b.n });
        }
        Ok(Representation {
            n: a.n,
            dim: a.dim * b.dim,
            label: format!("({})x({})", a.label, b.label),
            kind: RepKind::Tensor(Box::new(a.clone()), Box::new(b.clone())),
        })
    }

    pub fn symmetric_square(a: &Representation) -> Result<Self> {
        Self::square(a, true)
    }

    pub fn antisymmetric_square(a: &Representation) -> Result<Self> {
        Self::square(a, false)
    }

    fn square(a: &Representation, symmetric: bool) -> Result<Self> {
        let d = a.dim;
        let mut columns = Vec::new();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for p in 0..d {
            if symmetric {
                let mut col = vec![0.0; d * d];
                col[p * d + p] = 1.0;
                columns.push(col);
            }
            for q in (p + 1)..d {
                let mut col = vec![0.0; d * d];
                col[p * d + q] = r;
                col[q * d + p] = if symmetric { r } else { -r };
                columns.push(col);
            }
        }
        if columns.is_empty() {
            return Err(Error::Unsupported(format!("antisymmetric square of a {d}-dimensional representation is zero")));
        }
        let isometry = CMatrix::from_fn(d * d, columns.len(), |row, col| matrix::real(columns[col][row]));
        let parent = Representation::tensor(a, a)?;
        Ok(Representation {
            n: a.n,
            dim: columns.len(),
            label: format!("{}^2({})", if symmetric { "Sym" } else { "Alt" }, a.label),
            kind: RepKind::Projected { parent: Box::new(parent), isometry },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn check_input(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: m.nrows() });
        }
        Ok(())
    }

    /// `rho(v)`.
    pub fn group(&self, v: &CMatrix) -> Result<CMatrix> {
        self.check_input(v)?;
        Ok(self.group_unchecked(v))
    }

    fn group_unchecked(&self, v: &CMatrix) -> CMatrix {
        match &self.kind {
            RepKind::Trivial => matrix::identity(1),
            RepKind::Defining => v.clone(),
            RepKind::Tensor(a, b) => kron(&a.group_unchecked(v), &b.group_unchecked(v)),
            RepKind::Projected { parent, isometry } => isometry.adjoint() * parent.group_unchecked(v) * isometry,
        }
    }

    /// `d rho(z)`.
    pub fn algebra(&self, z: &CMatrix) -> Result<CMatrix> {
        self.check_input(z)?;
        Ok(self.algebra_unchecked(z))
    }

    fn algebra_unchecked(&self, z: &CMatrix) -> CMatrix {
        match &self.kind {
            RepKind::Trivial => matrix::zeros(1),
            RepKind::Defining => z.clone(),
            RepKind::Tensor(a, b) => {
                kron(&a.algebra_unchecked(z), &matrix::identity(b.dim))
                    + kron(&matrix::identity(a.dim), &b.algebra_unchecked(z))
            }
            RepKind::Projected { parent, isometry } => {
                isometry.adjoint() * parent.algebra_unchecked(z) * isometry
            }
        }
    }

    /// Trace of `rho(diag(e^{i theta}))`.
    pub fn character(&self, theta: &[f64]) -> Result<Complex64> {
        if theta.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: theta.len() });
        }
        Ok(self.group_unchecked(&torus_element(theta)).trace())
    }

    /// Partition whose irreducible representation this is, for the shapes
    /// that can be built here.
    pub fn for_partition(p: &Partition) -> Option<Self> {
        let n = p.n();
        let boxes: u32 = p.parts().iter().sum();
        let head = p.parts().first().copied().unwrap_or(0);
        let defining = Representation::defining(n).ok()?;
        match (boxes, head) {
            (0, _) => Some(Representation::trivial(n)),
            (1, _) => Some(defining),
            (2, 1) => Representation::antisymmetric_square(&defining).ok(),
            (2, 2) => Representation::symmetric_square(&defining).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of U({}), dim {}", self.label, self.n, self.dim)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirMatrix {
    pub matrix: CMatrix,
    /// `Re tr C / dim`.
    pub scalar: f64,
    /// `max |C - c I| / |c|`, or the absolute deviation when `c = 0`.
    pub scalar_residual: f64,
}

/// `sum_k d rho(B_k)^2` over an orthonormal basis.
pub fn casimir_matrix(rep: &Representation, basis: &GeneratorBasis) -> Result<CasimirMatrix> {
    if basis.n() != rep.n() {
        return Err(Error::DimensionMismatch { left: basis.n(), right: rep.n() });
    }
    let mut c = matrix::zeros(rep.dim());
    for b in basis.matrices() {
        let d = rep.algebra(b)?;
        c += &d * &d;
    }
    let scalar = c.trace().re / rep.dim() as f64;
    let dev = matrix::max_diff(&c, &(matrix::identity(rep.dim()) * matrix::real(scalar)));
    let scalar_residual = if scalar == 0.0 { dev } else { dev / scalar.abs() };
    Ok(CasimirMatrix { matrix: c, scalar, scalar_residual })
}

/// `max_B |[C, d rho(B)]|`.
pub fn casimir_centrality_residual(rep: &Representation, basis: &GeneratorBasis, c: &CMatrix) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in basis.matrices() {
        let d = rep.algebra(b)?;
        worst = worst.max(matrix::max_norm(&(c * &d - &d * c)));
    }
    Ok(worst)
}

/// Weakly decreasing row lengths of a Young diagram with at most `n` rows,
/// padded to length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Weyl dimension formula `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
    pub fn dimension(&self) -> u64 {
        let l = &self.0;
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..l.len() {
            for j in (i + 1)..l.len() {
                num *= (l[i] - l[j]) as u128 + (j - i) as u128;
                den *= (j - i) as u128;
            }
        }
        (num / den) as u64
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("'{}' is not a non-negative integer", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// `det(x_i^{l_j + N - j}) / det(x_i^{N - j})` with `x = e^{i theta}`.
pub fn schur_character(p: &Partition, theta: &[f64]) -> Result<Complex64> {
    let (num, den) = bialternants(p, theta)?;
    Ok(num / den)
}

/// The Vandermonde determinant `det(x_i^{N - j})`.
pub fn weyl_denominator(theta: &[f64]) -> Complex64 {
    let n = theta.len();
    alternant(theta, &vec![0; n])
}

fn alternant(theta: &[f64], parts: &[u32]) -> Complex64 {
    let n = theta.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let power = (parts[j] as usize + n - 1 - j) as f64;
        Complex64::from_polar(1.0, power * theta[i])
    });
    m.determinant()
}

fn bialternants(p: &Partition, theta: &[f64]) -> Result<(Complex64, Complex64)> {
    if theta.len() != p.n() {
        return Err(Error::DimensionMismatch { left: p.n(), right: theta.len() });
    }
    let gap = min_gap(theta);
    if gap < CHARACTER_GAP {
        return Err(Error::Degenerate { gap, required: CHARACTER_GAP });
    }
    Ok((alternant(theta, p.parts()), weyl_denominator(theta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_basis::BasisKind;
    use crate::matrix::{expm, max_diff, I};
    use crate::polar::vandermonde;
    use crate::sampling::{random_angles, random_regular_angles, random_unitary, rng};

    fn reps(n: usize) -> Vec<Representation> {
        let d = Representation::defining(n).unwrap();
        vec![
            Representation::trivial(n),
            d.clone(),
            Representation::tensor(&d, &d).unwrap(),
            Representation::antisymmetric_square(&d).unwrap(),
            Representation::symmetric_square(&d).unwrap(),
        ]
    }

    #[test]
    fn defining_is_identity_map() {
        let d = Representation::defining(3).unwrap();
        let it1 = matrix::elementary(3, 0, 0).unwrap() * I;
        assert_eq!(d.algebra(&it1).unwrap(), it1);
        assert_eq!(d.group(&matrix::identity(3)).unwrap(), matrix::identity(3));
        assert!((d.character(&[0.0; 3]).unwrap() - 3.0).norm() < 1e-15);
        assert!(Representation::defining(1).is_err());
    }

    #[test]
    fn dimensions() {
        let d = Representation::defining(3).unwrap();
        assert_eq!(Representation::tensor(&d, &d).unwrap().dim(), 9);
        assert_eq!(Representation::antisymmetric_square(&d).unwrap().dim(), 3);
        assert_eq!(Representation::symmetric_square(&d).unwrap().dim(), 6);
        let d2 = Representation::defining(2).unwrap();
        assert_eq!(Representation::antisymmetric_square(&d2).unwrap().dim(), 1);
    }

    #[test]
    fn tensor_algebra_is_leibniz() {
        let d = Representation::defining(3).unwrap();
        let t = Representation::tensor(&d, &d).unwrap();
        let it1 = matrix::elementary(3, 0, 0).unwrap() * I;
        let want = kron(&it1, &matrix::identity(3)) + kron(&matrix::identity(3), &it1);
        assert_eq!(t.algebra(&it1).unwrap(), want);
    }

    #[test]
    fn homomorphism_and_exponential_compatibility() {
        let mut r = rng(3);
        let basis = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        for rep in reps(3) {
            for _ in 0..5 {
                let v = random_unitary(3, &mut r);
                let w = random_unitary(3, &mut r);
                let lhs = rep.group(&(&v * &w)).unwrap();
                let rhs = rep.group(&v).unwrap() * rep.group(&w).unwrap();
                assert!(max_diff(&lhs, &rhs) < 1e-10, "{}", rep.label());

                let z = basis
                    .matrices()
                    .fold(matrix::zeros(3), |acc, b| acc + b * matrix::real(rand::Rng::random_range(&mut r, -1.0..1.0)));
                let t = 0.05;
                let lhs = rep.group(&expm(&(&z * matrix::real(t)))).unwrap();
                let rhs = expm(&(rep.algebra(&z).unwrap() * matrix::real(t)));
                assert!(max_diff(&lhs, &rhs) < 1e-8, "{}", rep.label());
                assert!(matrix::skew_hermitian_defect(&rep.algebra(&z).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn character_identities() {
        let mut r = rng(4);
        let d = Representation::defining(3).unwrap();
        let t = Representation::tensor(&d, &d).unwrap();
        let alt = Representation::antisymmetric_square(&d).unwrap();
        let sym = Representation::symmetric_square(&d).unwrap();
        for _ in 0..10 {
            let th = random_angles(3, &mut r);
            let doubled: Vec<f64> = th.iter().map(|x| 2.0 * x).collect();
            let chi = d.character(&th).unwrap();
            let chi2 = d.character(&doubled).unwrap();
            assert!((t.character(&th).unwrap() - chi * chi).norm() < 1e-12);
            assert!((alt.character(&th).unwrap() - 0.5 * (chi * chi - chi2)).norm() < 1e-12);
            assert!((sym.character(&th).unwrap() - 0.5 * (chi * chi + chi2)).norm() < 1e-12);
        }
    }

    #[test]
    fn casimir_values() {
        let u2 = GeneratorBasis::build(2, BasisKind::FullUnitary).unwrap();
        let u3 = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        let su3 = GeneratorBasis::build(3, BasisKind::SpecialUnitary).unwrap();
        let su2 = GeneratorBasis::build(2, BasisKind::SpecialUnitary).unwrap();
        let d2 = Representation::defining(2).unwrap();
        let d3 = Representation::defining(3).unwrap();
        let cases = [(&d2, &u2, -2.0), (&d3, &u3, -3.0), (&d3, &su3, -8.0 / 3.0), (&d2, &su2, -1.5)];
        for (rep, basis, want) in cases {
            let c = casimir_matrix(rep, basis).unwrap();
            assert!((c.scalar - want).abs() < 1e-12, "{} vs {want}", c.scalar);
            assert!(c.scalar_residual < 1e-12);
            assert!(matrix::hermitian_defect(&c.matrix) < 1e-12);
        }
        let triv = casimir_matrix(&Representation::trivial(3), &u3).unwrap();
        assert_eq!(triv.scalar, 0.0);
        assert!(casimir_matrix(&d2, &u3).is_err());
    }

    #[test]
    fn casimir_of_squares_is_central_scalar() {
        for n in 2..=3 {
            let basis = GeneratorBasis::build(n, BasisKind::FullUnitary).unwrap();
            let d = Representation::defining(n).unwrap();
            for rep in [Representation::antisymmetric_square(&d).unwrap(), Representation::symmetric_square(&d).unwrap()] {
                let c = casimir_matrix(&rep, &basis).unwrap();
                assert!(c.scalar < 0.0);
                assert!(c.scalar_residual < 1e-10, "{}", rep.label());
                assert!(casimir_centrality_residual(&rep, &basis, &c.matrix).unwrap() < 1e-10);
            }
        }
        // The full tensor square is reducible: its Casimir is not scalar.
        let basis = GeneratorBasis::build(3, BasisKind::FullUnitary).unwrap();
        let d = Representation::defining(3).unwrap();
        let c = casimir_matrix(&Representation::tensor(&d, &d).unwrap(), &basis).unwrap();
        assert!(c.scalar_residual > 1e-3);
    }

    #[test]
    fn partition_parsing_and_dimension() {
        let p: Partition = "2, 0,0".parse().unwrap();
        assert_eq!(p.parts(), &[2, 0, 0]);
        assert_eq!(p.to_string(), "2,0,0");
        assert!("0,1".parse::<Partition>().is_err());
        assert!("1,-1".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        let dims = [("1,0,0", 3), ("1,1,0", 3), ("2,0,0", 6), ("0,0,0", 1), ("2,1,0", 8), ("1,0", 2)];
        for (s, d) in dims {
            assert_eq!(s.parse::<Partition>().unwrap().dimension(), d, "{s}");
        }
    }

    #[test]
    fn schur_matches_built_representations() {
        let mut r = rng(5);
        for s in ["0,0,0", "1,0,0", "1,1,0", "2,0,0", "0,0", "1,0", "1,1", "2,0"] {
            let p: Partition = s.parse().unwrap();
            let rep = Representation::for_partition(&p).unwrap();
            assert_eq!(rep.dim() as u64, p.dimension());
            for _ in 0..10 {
                let th = random_regular_angles(p.n(), 0.01, &mut r);
                let a = schur_character(&p, &th).unwrap();
                let b = rep.character(&th).unwrap();
                assert!((a - b).norm() < 1e-10, "{s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn schur_near_origin_approaches_dimension() {
        for s in ["1,0,0", "1,1,0", "2,0,0"] {
            let p: Partition = s.parse().unwrap();
            let th = [1e-3, 0.0, -1e-3];
            let chi = schur_character(&p, &th).unwrap();
            assert!((chi - p.dimension() as f64).norm() < 1e-4, "{s}: {chi}");
        }
    }

    #[test]
    fn schur_symmetry_and_periodicity() {
        let mut r = rng(6);
        let p: Partition = "2,1,0".parse().unwrap();
        for _ in 0..10 {
            let th = random_regular_angles(3, 0.01, &mut r);
            let chi = schur_character(&p, &th).unwrap();
            let swapped = [th[1], th[0], th[2]];
            assert!((schur_character(&p, &swapped).unwrap() - chi).norm() < 1e-10);
            let shifted = [th[0], th[1] + std::f64::consts::TAU, th[2]];
            assert!((schur_character(&p, &shifted).unwrap() - chi).norm() < 1e-10);
        }
    }

    #[test]
    fn denominator_is_unimodular_multiple_of_vandermonde() {
        let mut r = rng(7);
        for n in 2..=4 {
            for _ in 0..10 {
                let th = random_regular_angles(n, 0.01, &mut r);
                let den = weyl_denominator(&th);
                assert!((den.norm() - vandermonde(&th).abs()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_character_refused() {
        let p: Partition = "1,0".parse().unwrap();
        assert!(matches!(schur_character(&p, &[0.3, 0.3 + 1e-5]), Err(Error::Degenerate { .. })));
    }
}
