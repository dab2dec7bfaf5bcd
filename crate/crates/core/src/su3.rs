//! The physical u(3)/su(3) operators: torus projectors `T`, the hermitian
//! off-diagonal `L` and `M`, Gell-Mann `lambda`, `F = lambda/2`, the Cartan
//! pair `H`, the I/U/V ladder operators, and the two simple roots.
//!
//! `iL_3 = E_12 - E_21`, `iL_2 = E_13 - E_31`, `iL_1 = E_23 - E_32`,
//! `M_3 = E_12 + E_21`, `M_2 = E_13 + E_31`, `M_1 = E_23 + E_32`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::Result;
use crate::matrix::{self, bracket, elementary, from_real_diagonal, max_diff, CMatrix, I};
use crate::report::{Gate, ReportBuilder, VerificationReport};
use crate::sampling;

/// Tolerance for identities built from small integers, `sqrt 2` and
/// `sqrt 3`.
pub const EXACT_TOL: f64 = 1e-14;

/// Cartan-Weyl step operators carry `1/sqrt 6` relative to the ladder
/// operators: `E_alpha = I_+/sqrt 6` and so on. Only the ladder form is
/// materialized.
pub const CARTAN_WEYL_SCALE: f64 = 2.449_489_742_783_178;

#[derive(Debug, Clone, PartialEq)]
pub struct Ladders {
    pub i_plus: CMatrix,
    pub i_minus: CMatrix,
    pub u_plus: CMatrix,
    pub u_minus: CMatrix,
    pub v_plus: CMatrix,
    pub v_minus: CMatrix,
}

impl Ladders {
    /// `(name, operator, root)` for each of the six ladders.
    pub fn with_roots(&self, roots: &[[f64; 2]; 2]) -> Vec<(&'static str, &CMatrix, [f64; 2])> {
        let [a1, a2] = *roots;
        let sum = [a1[0] + a2[0], a1[1] + a2[1]];
        let neg = |r: [f64; 2]| [-r[0], -r[1]];
        vec![
            ("I+", &self.i_plus, sum),
            ("I-", &self.i_minus, neg(sum)),
            ("V+", &self.v_plus, a1),
            ("V-", &self.v_minus, neg(a1)),
            // U_- raises.
            ("U-", &self.u_minus, a2),
            ("U+", &self.u_plus, neg(a2)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Su3Operators {
    pub t: [CMatrix; 3],
    pub l: [CMatrix; 3],
    pub m: [CMatrix; 3],
    pub lambda: [CMatrix; 8],
    pub f: [CMatrix; 8],
    pub h: [CMatrix; 2],
    pub ladders: Ladders,
    pub roots: [[f64; 2]; 2],
}

fn e(i: usize, j: usize) -> CMatrix {
    elementary(3, i - 1, j - 1).expect("indices within 1..=3")
}

impl Su3Operators {
    pub fn new() -> Self {
        let t = [e(1, 1), e(2, 2), e(3, 3)];
        // L_k = -i (E_ij - E_ji), M_k = E_ij + E_ji with k the index outside (i, j).
        let l_of = |i, j| (e(i, j) - e(j, i)) * (-I);
        let m_of = |i, j| e(i, j) + e(j, i);
        let l = [l_of(2, 3), l_of(1, 3), l_of(1, 2)];
        let m = [m_of(2, 3), m_of(1, 3), m_of(1, 2)];

        let s3 = 3f64.sqrt();
        let lambda = [
            m_of(1, 2),
            l_of(1, 2),
            from_real_diagonal(&[1.0, -1.0, 0.0]),
            m_of(1, 3),
            l_of(1, 3),
            m_of(2, 3),
            l_of(2, 3),
            from_real_diagonal(&[1.0 / s3, 1.0 / s3, -2.0 / s3]),
        ];
        let f = lambda.clone().map(|x| x * matrix::real(0.5));
        let h = [f[2].clone(), f[7].clone()];

        let half = matrix::real(0.5);
        let ladders = Ladders {
            i_plus: (&m[2] + &l[2] * I) * half,
            i_minus: (&m[2] - &l[2] * I) * half,
            v_plus: (&m[1] + &l[1] * I) * half,
            v_minus: (&m[1] - &l[1] * I) * half,
            u_plus: (&m[0] + &l[0] * I) * half,
            u_minus: (&m[0] - &l[0] * I) * half,
        };
        let roots = [[0.5, s3 / 2.0], [0.5, -s3 / 2.0]];
        Su3Operators { t, l, m, lambda, f, h, ladders, roots }
    }

    /// `L^2 = sum_k L_k^2` in the defining representation.
    pub fn l_squared(&self) -> CMatrix {
        self.l.iter().map(|x| x * x).fold(CMatrix::zeros(3, 3), |a, b| a + b)
    }

    pub fn m_squared(&self) -> CMatrix {
        self.m.iter().map(|x| x * x).fold(CMatrix::zeros(3, 3), |a, b| a + b)
    }
}

impl Default for Su3Operators {
    fn default() -> Self {
        Self::new()
    }
}

/// Returns the ladder operators.
pub fn ladder_operators(ops: &Su3Operators) -> Ladders {
    ops.ladders.clone()
}

#[derive(Clone, Copy)]
enum Name {
    L(usize),
    M(usize),
    T(usize),
}

impl Name {
    fn get(self, ops: &Su3Operators) -> &CMatrix {
        match self {
            Name::L(k) => &ops.l[k - 1],
            Name::M(k) => &ops.m[k - 1],
            Name::T(k) => &ops.t[k - 1],
        }
    }

    fn label(self) -> String {
        match self {
            Name::L(k) => format!("L{k}"),
            Name::M(k) => format!("M{k}"),
            Name::T(k) => format!("T{k}"),
        }
    }
}

/// Right-hand side of a listed commutator: `coeff * (sum of signed terms)`.
struct Listed {
    a: Name,
    b: Name,
    rhs: Vec<(f64, Name)>,
    /// Multiplies the real combination; `i`, `-i` or `2i` in the table.
    coeff: num_complex::Complex64,
}

fn listed_table() -> Vec<Listed> {
    use Name::*;
    let i = I;
    let mi = -I;
    let li = |a, b, rhs: Vec<(f64, Name)>, coeff| Listed { a, b, rhs, coeff };
    let mut v = Vec::new();
    // [L_k, L_l] = -i L_m for (k, l, m) cyclic.
    for (k, l, m) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        v.push(li(L(k), L(l), vec![(1.0, L(m))], mi));
    }
    // [M_k, M_l] = -i L_m for k < l. Not cyclic: [M_3, M_1] = +i L_2.
    for (k, l, m) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        v.push(li(M(k), M(l), vec![(1.0, L(m))], mi));
    }
    // Mixed [L, M].
    v.push(li(L(1), M(2), vec![(1.0, M(3))], mi));
    v.push(li(L(2), M(1), vec![(1.0, M(3))], mi));
    v.push(li(L(1), M(3), vec![(1.0, M(2))], i));
    v.push(li(L(3), M(1), vec![(-1.0, M(2))], i));
    v.push(li(L(2), M(3), vec![(1.0, M(1))], i));
    v.push(li(L(3), M(2), vec![(1.0, M(1))], i));
    // Diagonal [L_k, M_k].
    v.push(li(L(1), M(1), vec![(1.0, T(3)), (-1.0, T(2))], i * 2.0));
    v.push(li(L(2), M(2), vec![(1.0, T(3)), (-1.0, T(1))], i * 2.0));
    v.push(li(L(3), M(3), vec![(1.0, T(2)), (-1.0, T(1))], i * 2.0));
    // With the torus.
    v.push(li(L(1), T(2), vec![(1.0, M(1))], i));
    v.push(li(L(1), T(3), vec![(1.0, M(1))], mi));
    v.push(li(L(2), T(3), vec![(1.0, M(2))], mi));
    v.push(li(L(2), T(1), vec![(1.0, M(2))], i));
    v.push(li(L(3), T(1), vec![(1.0, M(3))], i));
    v.push(li(L(3), T(2), vec![(1.0, M(3))], mi));
    v.push(li(M(1), T(2), vec![(1.0, L(1))], mi));
    v.push(li(M(1), T(3), vec![(1.0, L(1))], i));
    v.push(li(M(2), T(3), vec![(1.0, L(2))], i));
    v.push(li(M(2), T(1), vec![(1.0, L(2))], mi));
    v.push(li(M(3), T(1), vec![(1.0, L(3))], mi));
    v.push(li(M(3), T(2), vec![(1.0, L(3))], i));
    v
}

/// Checks every listed commutator among `{L, M, T}`, that all unlisted ones
/// vanish, the Casimir-type identities `[L_k, L^2] = [L_k, M^2] =
/// [M_k, M^2] = [M_k, L^2] = 0`, and that `L_k`, `M_k` commute with
/// `T_i^2 + T_j^2` for the pair `(i, j)` they act on.
pub fn verify_commutator_table(ops: &Su3Operators) -> VerificationReport {
    let mut rep = ReportBuilder::new("commutators", EXACT_TOL, Gate::Absolute, 0);
    let table = listed_table();

    for entry in &table {
        let lhs = bracket(entry.a.get(ops), entry.b.get(ops));
        let combo = entry
            .rhs
            .iter()
            .fold(CMatrix::zeros(3, 3), |acc, (s, n)| acc + n.get(ops) * matrix::real(*s));
        let rhs = combo * entry.coeff;
        let label = format!("[{}, {}]", entry.a.label(), entry.b.label());
        rep.record(label, max_diff(&lhs, &rhs), 1.0);
    }

    // Every pair absent from the table must commute.
    let names: Vec<Name> = (1..=3)
        .map(Name::L)
        .chain((1..=3).map(Name::M))
        .chain((1..=3).map(Name::T))
        .collect();
    let is_listed = |a: &Name, b: &Name| {
        table.iter().any(|t| {
            (t.a.label() == a.label() && t.b.label() == b.label())
                || (t.a.label() == b.label() && t.b.label() == a.label())
        })
    };
    let mut unlisted = 0;
    for (x, a) in names.iter().enumerate() {
        for b in names.iter().skip(x + 1) {
            if is_listed(a, b) {
                continue;
            }
            unlisted += 1;
            let lhs = bracket(a.get(ops), b.get(ops));
            rep.record(format!("[{}, {}] = 0", a.label(), b.label()), matrix::max_norm(&lhs), 1.0);
        }
    }

    let l2 = ops.l_squared();
    let m2 = ops.m_squared();
    for k in 0..3 {
        for (lab, x) in [("L", &ops.l[k]), ("M", &ops.m[k])] {
            for (sq_lab, sq) in [("L^2", &l2), ("M^2", &m2)] {
                rep.record(
                    format!("[{lab}{}, {sq_lab}] = 0", k + 1),
                    matrix::max_norm(&bracket(x, sq)),
                    1.0,
                );
            }
        }
    }

    // Radial commutation: L_k and M_k act on the pair (i, j) excluding k.
    for k in 0..3 {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let tsq = &ops.t[i] * &ops.t[i] + &ops.t[j] * &ops.t[j];
        let tk = &ops.t[k] * &ops.t[k];
        for (lab, x) in [("L", &ops.l[k]), ("M", &ops.m[k])] {
            rep.record(
                format!("[{lab}{0}, T{1}^2 + T{2}^2] = 0", k + 1, i + 1, j + 1),
                matrix::max_norm(&bracket(x, &tsq)),
                1.0,
            );
            rep.record(
                format!("[{lab}{0}, T{0}^2] = 0", k + 1),
                matrix::max_norm(&bracket(x, &tk)),
                1.0,
            );
        }
    }

    rep.value("listed", table.len() as f64);
    rep.value("unlisted", unlisted as f64);
    rep.finish()
}

/// Static identities relating the named operators: hermiticity, the
/// elementary-matrix identifications of `L`, `M`, the `F`
/// identifications, ladder identities and their inversion, and the I-spin
/// identity.
pub fn verify_identifications(ops: &Su3Operators) -> VerificationReport {
    let mut rep = ReportBuilder::new("identifications", EXACT_TOL, Gate::Absolute, 0);
    let herm = ops
        .t
        .iter()
        .chain(&ops.l)
        .chain(&ops.m)
        .chain(&ops.lambda)
        .chain(&ops.f)
        .map(matrix::hermitian_defect)
        .fold(0.0, f64::max);
    rep.record("hermitian L, M, T, lambda, F", herm, 1.0);

    let pairs = [(3, (1, 2), 2, 1), (2, (1, 3), 5, 4), (1, (2, 3), 7, 6)];
    for (k, (i, j), lam_l, lam_m) in pairs {
        let il = &ops.l[k - 1] * I;
        let im = &ops.m[k - 1] * I;
        rep.record(format!("iL{k} = E{i}{j} - E{j}{i}"), max_diff(&il, &(e(i, j) - e(j, i))), 1.0);
        rep.record(format!("iL{k} = i lambda{lam_l}"), max_diff(&il, &(&ops.lambda[lam_l - 1] * I)), 1.0);
        rep.record(format!("iM{k} = i(E{i}{j} + E{j}{i})"), max_diff(&im, &((e(i, j) + e(j, i)) * I)), 1.0);
        rep.record(format!("iM{k} = i lambda{lam_m}"), max_diff(&im, &(&ops.lambda[lam_m - 1] * I)), 1.0);
        let two = matrix::real(2.0);
        rep.record(format!("L{k} = 2F{lam_l}"), max_diff(&ops.l[k - 1], &(&ops.f[lam_l - 1] * two)), 1.0);
        rep.record(format!("M{k} = 2F{lam_m}"), max_diff(&ops.m[k - 1], &(&ops.f[lam_m - 1] * two)), 1.0);
    }

    let lad = &ops.ladders;
    for (name, op, want) in [
        ("I+ = E12", &lad.i_plus, e(1, 2)),
        ("I- = E21", &lad.i_minus, e(2, 1)),
        ("V+ = E13", &lad.v_plus, e(1, 3)),
        ("V- = E31", &lad.v_minus, e(3, 1)),
        ("U+ = E23", &lad.u_plus, e(2, 3)),
        ("U- = E32", &lad.u_minus, e(3, 2)),
    ] {
        rep.record(name, max_diff(op, &want), 1.0);
    }
    for (name, up, down) in [
        ("I", &lad.i_plus, &lad.i_minus),
        ("U", &lad.u_plus, &lad.u_minus),
        ("V", &lad.v_plus, &lad.v_minus),
    ] {
        rep.record(format!("({name}+)^dagger = {name}-"), max_diff(&up.adjoint(), down), 1.0);
    }
    for (k, up, down) in [(3, &lad.i_plus, &lad.i_minus), (2, &lad.v_plus, &lad.v_minus), (1, &lad.u_plus, &lad.u_minus)] {
        rep.record(format!("iL{k} from ladders"), max_diff(&(&ops.l[k - 1] * I), &(up - down)), 1.0);
        rep.record(format!("iM{k} from ladders"), max_diff(&(&ops.m[k - 1] * I), &((up + down) * I)), 1.0);
    }

    // I_1 = M_3/2, I_2 = L_3/2: I_1^2 + I_2^2 = (L_3^2 + M_3^2)/4.
    let i1 = (&lad.i_plus + &lad.i_minus) * matrix::real(0.5);
    let i2 = (&lad.i_plus - &lad.i_minus) * (-I * 0.5);
    rep.record("I1 = M3/2", max_diff(&i1, &(&ops.m[2] * matrix::real(0.5))), 1.0);
    rep.record("I2 = L3/2", max_diff(&i2, &(&ops.l[2] * matrix::real(0.5))), 1.0);
    let lhs = &i1 * &i1 + &i2 * &i2;
    let rhs = (&ops.l[2] * &ops.l[2] + &ops.m[2] * &ops.m[2]) * matrix::real(0.25);
    rep.record("I1^2 + I2^2 = (L3^2 + M3^2)/4", max_diff(&lhs, &rhs), 1.0);
    rep.record("I3 = F3", max_diff(&ops.h[0], &ops.f[2]), 1.0);

    // Normalized Gell-Mann generators are orthonormal under the trace metric.
    let gm: Vec<CMatrix> = ops.lambda.iter().map(|x| x * (I * FRAC_1_SQRT_2)).collect();
    let mut worst: f64 = 0.0;
    for (a, x) in gm.iter().enumerate() {
        for (b, y) in gm.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((matrix::metric(x, y) - matrix::real(want)).norm());
        }
    }
    rep.record("i lambda/sqrt2 orthonormal", worst, 1.0);
    rep.finish()
}

/// `[H_i, E_alpha] = alpha_i E_alpha` for every ladder, and the torus rule
/// `[H(theta), E_ij] = (theta_i - theta_j) E_ij` at three random `theta`
/// plus the fixed sample `(0.3, -0.1, 0.7)`.
pub fn verify_roots(ops: &Su3Operators, seed: u64) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("roots", EXACT_TOL, Gate::Absolute, seed);
    for (name, op, root) in ops.ladders.with_roots(&ops.roots) {
        for (c, h) in ops.h.iter().enumerate() {
            let lhs = bracket(h, op);
            let rhs = op * matrix::real(root[c]);
            rep.record(format!("[H{}, {name}]", c + 1), max_diff(&lhs, &rhs), 1.0);
        }
    }
    let a1 = ops.roots[0];
    let a2 = ops.roots[1];
    rep.record("alpha1 + alpha2 = (1, 0)", ((a1[0] + a2[0] - 1.0).abs()).max((a1[1] + a2[1]).abs()), 1.0);

    let mut rng = sampling::rng(seed);
    let mut thetas = vec![vec![0.3, -0.1, 0.7]];
    for _ in 0..3 {
        thetas.push(sampling::random_angles(3, &mut rng));
    }
    for theta in &thetas {
        let h = from_real_diagonal(theta);
        for i in 1..=3 {
            for j in 1..=3 {
                if i == j {
                    continue;
                }
                let eij = e(i, j);
                let lhs = bracket(&h, &eij);
                let rhs = &eij * matrix::real(theta[i - 1] - theta[j - 1]);
                rep.record(format!("[H(theta), E{i}{j}]"), max_diff(&lhs, &rhs), 1.0);
            }
        }
    }
    Ok(rep.finish())
}
