//! States shared across the unit-test suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{kron_vec, normalize, ComplexMatrix};
use crate::state::BipartiteDensity;
use crate::TOL;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The benchmark mixture ½|Φ⁺⟩⟨Φ⁺| + ½|01⟩⟨01| on 2⊗2: rank 2, NPT,
/// two-copy distillable with probability 1/8.
pub fn bell_product_mix_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        4,
        &[
            0.25, 0.0, 0.0, 0.25, //
            0.0, 0.5, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            0.25, 0.0, 0.0, 0.25,
        ],
    )
}

pub fn bell_product_mix() -> BipartiteDensity {
    BipartiteDensity::new(bell_product_mix_matrix(), 2, 2, TOL).unwrap()
}

/// Werner-like state p|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4.
pub fn werner(p: f64) -> BipartiteDensity {
    let inv = 0.5;
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = c((1.0 - p) / 4.0, 0.0);
    }
    for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] += c(p * inv, 0.0);
    }
    BipartiteDensity::new(m, 2, 2, TOL).unwrap()
}

/// Maximally mixed state on dim_a ⊗ dim_b.
pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> BipartiteDensity {
    let d = dim_a * dim_b;
    let m = ComplexMatrix::identity(d).scale(c(1.0 / d as f64, 0.0));
    BipartiteDensity::new(m, dim_a, dim_b, TOL).unwrap()
}

/// Pure state density |ψ⟩⟨ψ| from an (unnormalized) vector.
pub fn pure_density(psi: &[Complex64], dim_a: usize, dim_b: usize) -> BipartiteDensity {
    let v = normalize(psi);
    BipartiteDensity::new(ComplexMatrix::outer(&v, &v), dim_a, dim_b, TOL).unwrap()
}

/// Random Haar-ish local unitary via Gram–Schmidt of a Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    loop {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        if gram_schmidt_columns(&mut m) {
            return m;
        }
    }
}

fn gram_schmidt_columns(m: &mut ComplexMatrix) -> bool {
    let n = m.rows();
    for j in 0..n {
        let mut col = m.column(j);
        for prev in 0..j {
            let p = m.column(prev);
            let overlap = crate::linalg::dot(&p, &col);
            for (x, y) in col.iter_mut().zip(&p) {
                *x -= overlap * y;
            }
        }
        let len = crate::linalg::norm(&col);
        if len < 1e-8 {
            return false;
        }
        for x in col.iter_mut() {
            *x /= len;
        }
        m.set_column(j, &col);
    }
    true
}

/// Random mixed state of the given rank: a normalized mixture of
/// Gaussian pure states.
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, rng: &mut ChaCha8Rng) -> BipartiteDensity {
    let d = dim_a * dim_b;
    let mut m = ComplexMatrix::zeros(d, d);
    let mut weights: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    for &w in &weights {
        let v: Vec<Complex64> = (0..d)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = normalize(&v);
        m = m.add(&ComplexMatrix::outer(&v, &v).scale(c(w, 0.0)));
    }
    BipartiteDensity::new(m, dim_a, dim_b, TOL).unwrap()
}

/// Random mixture of product pure states (hence separable).
pub fn random_product_mixture(
    dim_a: usize,
    dim_b: usize,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> BipartiteDensity {
    let d = dim_a * dim_b;
    let mut m = ComplexMatrix::zeros(d, d);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    for &w in &weights {
        let va: Vec<Complex64> = (0..dim_a)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let vb: Vec<Complex64> = (0..dim_b)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = kron_vec(&normalize(&va), &normalize(&vb));
        m = m.add(&ComplexMatrix::outer(&v, &v).scale(c(w, 0.0)));
    }
    BipartiteDensity::new(m, dim_a, dim_b, TOL).unwrap()
}

/// Conjugate a state by a product unitary U_A ⊗ U_B.
pub fn rotate(rho: &BipartiteDensity, ua: &ComplexMatrix, ub: &ComplexMatrix) -> BipartiteDensity {
    let u = crate::linalg::kron(ua, ub);
    let m = u.matmul(rho.matrix()).matmul(&u.adjoint());
    BipartiteDensity::new(m, rho.dim_a(), rho.dim_b(), 1e-8).unwrap()
}
