//! Orthonormal generator bases of u(N) and su(N), structure constants, and
//! the JSON dump of a generator set.
//!
//! Ordering is fixed: the vertical (diagonal) generators come first in
//! ascending order, then one pair per `(i, j)` with `i < j` in
//! lexicographic order. Within a pair the antisymmetric real generator
//! `X_k = (E_ij - E_ji)/sqrt 2` precedes the symmetric imaginary one
//! `X_l = i(E_ij + E_ji)/sqrt 2`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, bracket, elementary, metric, rows_of, CMatrix, I};
use crate::report::{Gate, ReportBuilder, VerificationReport};

/// Gram deviation tolerated before a basis is considered non-orthonormal.
pub const ORTHONORMAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    #[serde(rename = "u")]
    FullUnitary,
    #[serde(rename = "su")]
    SpecialUnitary,
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::FullUnitary => "u",
            BasisKind::SpecialUnitary => "su",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "u" | "full" | "full-unitary" => Ok(BasisKind::FullUnitary),
            "su" | "special" | "special-unitary" => Ok(BasisKind::SpecialUnitary),
            other => Err(format!("unknown basis kind '{other}' (expected u or su)")),
        }
    }
}

/// Which half of a horizontal pair a generator is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPart {
    /// `(E_ij - E_ji)/sqrt 2`
    Antisymmetric,
    /// `i(E_ij + E_ji)/sqrt 2`
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorRole {
    Vertical,
    Horizontal { i: usize, j: usize, part: PairPart, partner: usize },
    /// Generators of a hand-assembled basis with no pair structure.
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: String,
    pub matrix: CMatrix,
    pub role: GeneratorRole,
}

/// Indices of the two generators belonging to the pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HorizontalPair {
    pub i: usize,
    pub j: usize,
    pub antisymmetric: usize,
    pub symmetric: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    n: usize,
    kind: BasisKind,
    generators: Vec<Generator>,
}

/// `X_k = (E_ij - E_ji)/sqrt 2` or `X_l = i(E_ij + E_ji)/sqrt 2`.
pub fn pair_generator(n: usize, i: usize, j: usize, part: PairPart) -> Result<CMatrix> {
    let eij = elementary(n, i, j)?;
    let eji = elementary(n, j, i)?;
    Ok(match part {
        PairPart::Antisymmetric => (eij - eji) * matrix::real(FRAC_1_SQRT_2),
        PairPart::Symmetric => (eij + eji) * (I * FRAC_1_SQRT_2),
    })
}

impl GeneratorBasis {
    pub fn build(n: usize, kind: BasisKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { got: n, min: 2 });
        }
        let mut generators = match kind {
            BasisKind::FullUnitary => (0..n)
                .map(|j| Generator {
                    label: format!("iT{}", j + 1),
                    matrix: elementary(n, j, j).expect("in range") * I,
                    role: GeneratorRole::Vertical,
                })
                .collect(),
            BasisKind::SpecialUnitary => traceless_diagonal_basis(n)
                .into_iter()
                .enumerate()
                .map(|(k, m)| Generator {
                    label: format!("iD{}", k + 1),
                    matrix: m,
                    role: GeneratorRole::Vertical,
                })
                .collect::<Vec<_>>(),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let base = generators.len();
                generators.push(Generator {
                    label: format!("Xk({},{})", i + 1, j + 1),
                    matrix: pair_generator(n, i, j, PairPart::Antisymmetric)?,
                    role: GeneratorRole::Horizontal {
                        i,
                        j,
                        part: PairPart::Antisymmetric,
                        partner: base + 1,
                    },
                });
                generators.push(Generator {
                    label: format!("Xl({},{})", i + 1, j + 1),
                    matrix: pair_generator(n, i, j, PairPart::Symmetric)?,
                    role: GeneratorRole::Horizontal { i, j, part: PairPart::Symmetric, partner: base },
                });
            }
        }
        Ok(GeneratorBasis { n, kind, generators })
    }

    /// Wraps an arbitrary labelled generator list. Orthonormality is not
    /// checked here; [`structure_constants`] checks it.
    pub fn custom(n: usize, kind: BasisKind, generators: Vec<(String, CMatrix)>) -> Result<Self> {
        for (_, m) in &generators {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch { left: n, right: m.nrows() });
            }
        }
        let generators = generators
            .into_iter()
            .map(|(label, matrix)| Generator { label, matrix, role: GeneratorRole::Other })
            .collect();
        Ok(GeneratorBasis { n, kind, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrices(&self) -> impl Iterator<Item = &CMatrix> {
        self.generators.iter().map(|g| &g.matrix)
    }

    pub fn vertical(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(|g| g.role == GeneratorRole::Vertical)
    }

    pub fn pairs(&self) -> Vec<HorizontalPair> {
        self.generators
            .iter()
            .enumerate()
            .filter_map(|(idx, g)| match g.role {
                GeneratorRole::Horizontal { i, j, part: PairPart::Antisymmetric, partner } => {
                    Some(HorizontalPair { i, j, antisymmetric: idx, symmetric: partner })
                }
                _ => None,
            })
            .collect()
    }

    /// Trace-metric Gram matrix, real part.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.generators
            .iter()
            .map(|a| self.generators.iter().map(|b| metric(&a.matrix, &b.matrix).re).collect())
            .collect()
    }

    /// `max |g(B_a, B_b) - delta_ab|`, including any imaginary part.
    pub fn orthonormality_defect(&self) -> f64 {
        orthonormality_defect(&self.generators.iter().map(|g| g.matrix.clone()).collect::<Vec<_>>())
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            n: self.n,
            kind: self.kind.as_str().to_string(),
            generators: self
                .generators
                .iter()
                .map(|g| LabelledMatrix { label: g.label.clone(), matrix: rows_of(&g.matrix) })
                .collect(),
        }
    }
}

fn orthonormality_defect(ms: &[CMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, ma) in ms.iter().enumerate() {
        for (b, mb) in ms.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((metric(ma, mb) - matrix::real(want)).norm());
        }
    }
    worst
}

/// Gram-Schmidt of `i(T_j - T_{j+1})` under the trace metric.
fn traceless_diagonal_basis(n: usize) -> Vec<CMatrix> {
    let mut out: Vec<CMatrix> = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let mut v = (elementary(n, j, j).expect("in range") - elementary(n, j + 1, j + 1).expect("in range")) * I;
        for q in &out {
            let proj = metric(&v, q);
            v -= q * proj;
        }
        let norm = metric(&v, &v).re.sqrt();
        out.push(v / matrix::real(norm));
    }
    out
}

/// `{ "n": int, "kind": string, "generators": [ { "label", "matrix" } ] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub kind: String,
    pub generators: Vec<LabelledMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelledMatrix {
    pub label: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// Real structure constants `f_abc = g([B_a, B_b], B_c)` of an orthonormal
/// basis, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    dim: usize,
    f: Vec<f64>,
    expansion_residual: f64,
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[(a * self.dim + b) * self.dim + c]
    }

    /// `max_ab || [B_a, B_b] - sum_c f_abc B_c ||_inf`.
    pub fn expansion_residual(&self) -> f64 {
        self.expansion_residual
    }

    /// `max |f_abc + f_bac|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    worst = worst.max((self.get(a, b, c) + self.get(b, a, c)).abs());
                }
            }
        }
        worst
    }

    /// Largest violation of the Jacobi identity
    /// `sum_m (f_ijm f_mkl + f_jkm f_mil + f_kim f_mjl) = 0`.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let s: f64 = (0..d)
                            .map(|m| {
                                self.get(i, j, m) * self.get(m, k, l)
                                    + self.get(j, k, m) * self.get(m, i, l)
                                    + self.get(k, i, m) * self.get(m, j, l)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

pub const STRUCTURE_TOL: f64 = 1e-12;

/// Orthonormality, closure, antisymmetry and Jacobi residuals of the u(n)
/// and su(n) bases.
pub fn verify_structure_constants(n: usize, tol: f64) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new(format!("structure constants n={n}"), tol, Gate::Absolute, 0);
    for kind in [BasisKind::FullUnitary, BasisKind::SpecialUnitary] {
        let basis = GeneratorBasis::build(n, kind)?;
        rep.record(format!("{kind} orthonormality"), basis.orthonormality_defect(), 1.0);
        let table = structure_constants(&basis)?;
        rep.record(format!("{kind} expansion"), table.expansion_residual(), 1.0);
        rep.record(format!("{kind} antisymmetry"), table.antisymmetry_residual(), 1.0);
        rep.record(format!("{kind} jacobi"), table.jacobi_residual(), 1.0);
    }
    Ok(rep.finish())
}

pub fn structure_constants(basis: &GeneratorBasis) -> Result<StructureTable> {
    let ms: Vec<CMatrix> = basis.matrices().cloned().collect();
    structure_constants_of(&ms)
}

/// Structure constants of any orthonormal family closed under the bracket.
pub fn structure_constants_of(ms: &[CMatrix]) -> Result<StructureTable> {
    let defect = orthonormality_defect(ms);
    if defect > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal(defect));
    }
    let d = ms.len();
    let mut f = vec![0.0; d * d * d];
    let mut residual: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            let br = bracket(&ms[a], &ms[b]);
            let mut expansion = CMatrix::zeros(br.nrows(), br.ncols());
            for (c, mc) in ms.iter().enumerate() {
                let v = metric(&br, mc).re;
                f[(a * d + b) * d + c] = v;
                expansion += mc * matrix::real(v);
            }
            residual = residual.max(matrix::max_diff(&br, &expansion));
        }
    }
    Ok(StructureTable { dim: d, f, expansion_residual: residual })
}
