//! Shared helpers for the integration suites: state builders and the
//! independently coded brute-force subspace scanner.

#![allow(dead_code)]

pub mod oracle;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dss_core::linalg::{kron, kron_vec, normalize, ComplexMatrix};
use dss_core::state::BipartiteDensity;
use dss_core::TOL;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The benchmark mixture ½|Φ⁺⟩⟨Φ⁺| + ½|01⟩⟨01|.
pub fn bell_product_mix() -> BipartiteDensity {
    let m = ComplexMatrix::from_real(
        4,
        4,
        &[
            0.25, 0.0, 0.0, 0.25, //
            0.0, 0.5, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            0.25, 0.0, 0.0, 0.25,
        ],
    );
    BipartiteDensity::new(m, 2, 2, TOL).unwrap()
}

pub fn bell_state() -> BipartiteDensity {
    let inv = 1.0 / 2.0_f64.sqrt();
    pure_density(&[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)], 2, 2)
}

pub fn product_state() -> BipartiteDensity {
    pure_density(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 2, 2)
}

pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> BipartiteDensity {
    let d = dim_a * dim_b;
    BipartiteDensity::new(
        ComplexMatrix::identity(d).scale(c(1.0 / d as f64, 0.0)),
        dim_a,
        dim_b,
        TOL,
    )
    .unwrap()
}

pub fn werner(p: f64) -> BipartiteDensity {
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = c((1.0 - p) / 4.0, 0.0);
    }
    for &(i, j) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] += c(p * 0.5, 0.0);
    }
    BipartiteDensity::new(m, 2, 2, TOL).unwrap()
}

pub fn pure_density(psi: &[Complex64], dim_a: usize, dim_b: usize) -> BipartiteDensity {
    let v = normalize(psi);
    BipartiteDensity::new(ComplexMatrix::outer(&v, &v), dim_a, dim_b, TOL).unwrap()
}

/// ρ = λ₁|sinθ·00 + cosθ·11⟩⟨…| + λ₂|pattern⟩⟨pattern| rotated by U_A⊗U_B.
pub fn two_term_state(
    theta: f64,
    lambda1: f64,
    phi_pattern: usize,
    ua: &ComplexMatrix,
    ub: &ComplexMatrix,
) -> BipartiteDensity {
    let mut psi = vec![c(0.0, 0.0); 4];
    psi[0] = c(theta.sin(), 0.0);
    psi[3] = c(theta.cos(), 0.0);
    let mut phi = vec![c(0.0, 0.0); 4];
    phi[phi_pattern] = c(1.0, 0.0);
    let joint = kron(ua, ub);
    let psi = joint.matvec(&psi);
    let phi = joint.matvec(&phi);
    let m = ComplexMatrix::outer(&psi, &psi)
        .scale(c(lambda1, 0.0))
        .add(&ComplexMatrix::outer(&phi, &phi).scale(c(1.0 - lambda1, 0.0)));
    BipartiteDensity::new(m, 2, 2, 1e-8).unwrap()
}

/// Quasi-separable family: entangled Ψ mixed with a product state whose
/// four amplitudes are all bounded away from zero.
pub fn generic_product_mix(rng: &mut ChaCha8Rng) -> BipartiteDensity {
    let theta = rng.gen_range(0.2..std::f64::consts::FRAC_PI_2 - 0.2);
    let lambda1 = rng.gen_range(0.2..0.8);
    let mut psi = vec![c(0.0, 0.0); 4];
    psi[0] = c(theta.sin(), 0.0);
    psi[3] = c(theta.cos(), 0.0);
    let a = local_generic(rng);
    let b = local_generic(rng);
    let phi = kron_vec(&a, &b);
    let m = ComplexMatrix::outer(&psi, &psi)
        .scale(c(lambda1, 0.0))
        .add(&ComplexMatrix::outer(&phi, &phi).scale(c(1.0 - lambda1, 0.0)));
    BipartiteDensity::new(m, 2, 2, TOL).unwrap()
}

fn local_generic(rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let weight = rng.gen_range(0.35..0.93_f64);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    vec![
        c(weight, 0.0),
        c(
            (1.0 - weight * weight).sqrt() * phase.cos(),
            (1.0 - weight * weight).sqrt() * phase.sin(),
        ),
    ]
}

pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    loop {
        let mut m = ComplexMatrix::zeros(n, n);
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
            let overlap = dss_core::linalg::dot(&p, &col);
            for (x, y) in col.iter_mut().zip(&p) {
                *x -= overlap * y;
            }
        }
        let len = dss_core::linalg::norm(&col);
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

/// Random mixed state of the given rank.
pub fn random_density(
    dim_a: usize,
    dim_b: usize,
    rank: usize,
    rng: &mut ChaCha8Rng,
) -> BipartiteDensity {
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

/// Random mixture of product pure states (separable by construction).
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

/// A state with a planted distillable subspace: a pure entangled vector
/// supported on `subset`×`subset` mixed with product states that avoid
/// the subspace entirely.
pub fn planted_dss_state(
    dim: usize,
    subset: &[usize],
    weight: f64,
    rng: &mut ChaCha8Rng,
) -> BipartiteDensity {
    let d = dim * dim;
    // Diagonal-correlated entangled vector on the block with generic
    // coefficients, full Schmidt rank by construction.
    let mut psi = vec![c(0.0, 0.0); d];
    for &i in subset {
        psi[i * dim + i] = c(rng.gen_range(0.4..1.0), rng.gen_range(-0.3..0.3));
    }
    let psi = normalize(&psi);
    let mut m = ComplexMatrix::outer(&psi, &psi).scale(c(weight, 0.0));

    // Fill the rest with product states |x⟩_A|y⟩_B avoiding the block:
    // the A factor lives outside subset.
    let outside: Vec<usize> = (0..dim).filter(|i| !subset.contains(i)).collect();
    let terms = 1 + outside.len().min(2);
    let rest = (1.0 - weight) / terms as f64;
    for t in 0..terms {
        let a_idx = outside[t % outside.len()];
        let mut va = vec![c(0.0, 0.0); dim];
        va[a_idx] = c(1.0, 0.0);
        let vb: Vec<Complex64> = (0..dim)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = kron_vec(&va, &normalize(&vb));
        m = m.add(&ComplexMatrix::outer(&v, &v).scale(c(rest, 0.0)));
    }
    BipartiteDensity::new(m, dim, dim, 1e-8).unwrap()
}

pub fn rotate(
    rho: &BipartiteDensity,
    ua: &ComplexMatrix,
    ub: &ComplexMatrix,
) -> BipartiteDensity {
    let u = kron(ua, ub);
    let m = u.matmul(rho.matrix()).matmul(&u.adjoint());
    BipartiteDensity::new(m, rho.dim_a(), rho.dim_b(), 1e-8).unwrap()
}
