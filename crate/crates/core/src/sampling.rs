//! Seeded random samples: Haar-distributed unitaries, regular angle
//! vectors, and smooth trigonometric test functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{c, CMatrix};
use crate::polar::min_gap;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(n: usize, rng: &mut SampleRng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary(n: usize, rng: &mut SampleRng) -> CMatrix {
    let g = gaussian_matrix(n, rng);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar unitary rescaled by `det^{-1/N}` onto SU(N).
pub fn random_special_unitary(n: usize, rng: &mut SampleRng) -> CMatrix {
    let q = random_unitary(n, rng);
    let det = q.determinant();
    let root = Complex64::from_polar(1.0, -det.arg() / n as f64);
    q * root
}

/// Uniform angles in `(-pi, pi]^n`, unsorted.
pub fn random_angles(n: usize, rng: &mut SampleRng) -> Vec<f64> {
    (0..n).map(|_| PI - rng.random::<f64>() * 2.0 * PI).collect()
}

/// Rejection-samples angles whose circular minimum gap exceeds `margin`.
pub fn random_regular_angles(n: usize, margin: f64, rng: &mut SampleRng) -> Vec<f64> {
    loop {
        let theta = random_angles(n, rng);
        if min_gap(&theta) > margin {
            return theta;
        }
    }
}

/// Haar unitary conditioned on `min_gap > margin`.
pub fn random_regular_unitary(n: usize, margin: f64, rng: &mut SampleRng) -> CMatrix {
    loop {
        let v = random_unitary(n, rng);
        if eigen_gap(&v) > margin {
            return v;
        }
    }
}

pub fn random_regular_special_unitary(n: usize, margin: f64, rng: &mut SampleRng) -> CMatrix {
    loop {
        let v = random_special_unitary(n, rng);
        if eigen_gap(&v) > margin {
            return v;
        }
    }
}

fn eigen_gap(v: &CMatrix) -> f64 {
    crate::polar::polar_decompose(v).map(|p| p.min_gap).unwrap_or(0.0)
}

/// A random trigonometric polynomial in `n` angle variables,
/// `sum_k a_k cos(m_k . theta + phi_k)` with small integer frequency
/// vectors. Smooth and cheap, used as a generic radial test function.
#[derive(Debug, Clone)]
pub struct TrigPolynomial {
    terms: Vec<(Vec<f64>, f64, f64)>,
}

impl TrigPolynomial {
    pub fn random(n: usize, terms: usize, rng: &mut SampleRng) -> Self {
        let terms = (0..terms)
            .map(|_| {
                let freq = (0..n).map(|_| rng.random_range(-2i32..=2) as f64).collect();
                let amp = rng.random_range(0.2..1.0);
                let phase = rng.random_range(-PI..PI);
                (freq, amp, phase)
            })
            .collect();
        TrigPolynomial { terms }
    }

    pub fn eval(&self, theta: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(freq, amp, phase)| {
                let arg: f64 = freq.iter().zip(theta).map(|(m, t)| m * t).sum();
                amp * (arg + phase).cos()
            })
            .sum::<f64>()
            + 1.5
    }
}
