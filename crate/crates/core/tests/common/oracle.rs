//! Independently coded brute-force scanners used to cross-check the
//! library. Nothing here shares algorithms with the implementation under
//! test: subsets come from bitmask enumeration, purity from an
//! idempotency identity, the block vector from the heaviest column, and
//! Schmidt rank from Gaussian elimination.

use num_complex::Complex64;

use dss_core::state::BipartiteDensity;

/// A hit reported by the brute-force scan.
#[derive(Debug, Clone)]
pub struct OracleHit {
    pub subset_a: Vec<usize>,
    pub subset_b: Vec<usize>,
    pub schmidt_rank: usize,
    pub probability: f64,
}

/// Scan every subset pair with |S_A| = |S_B| = m for m in
/// [2, min(dim_a, dim_b)] and report the distillable blocks.
pub fn brute_force_scan(rho: &BipartiteDensity, tol: f64) -> Vec<OracleHit> {
    let dim_a = rho.dim_a();
    let dim_b = rho.dim_b();
    assert!(dim_a <= 20 && dim_b <= 20, "bitmask scan is for small dims");
    let mut hits = Vec::new();
    for mask_a in 1u32..(1 << dim_a) {
        let size = mask_a.count_ones() as usize;
        if size < 2 {
            continue;
        }
        for mask_b in 1u32..(1 << dim_b) {
            if mask_b.count_ones() as usize != size {
                continue;
            }
            let subset_a = mask_indices(mask_a, dim_a);
            let subset_b = mask_indices(mask_b, dim_b);
            if let Some(hit) = check_block(rho, &subset_a, &subset_b, tol) {
                hits.push(hit);
            }
        }
    }
    hits.sort_by(|x, y| {
        y.probability
            .partial_cmp(&x.probability)
            .unwrap()
            .then_with(|| x.subset_a.cmp(&y.subset_a))
            .then_with(|| x.subset_b.cmp(&y.subset_b))
    });
    hits
}

fn mask_indices(mask: u32, dim: usize) -> Vec<usize> {
    (0..dim).filter(|i| mask >> i & 1 == 1).collect()
}

fn check_block(
    rho: &BipartiteDensity,
    subset_a: &[usize],
    subset_b: &[usize],
    tol: f64,
) -> Option<OracleHit> {
    let m = subset_a.len();
    let dim_b = rho.dim_b();
    let n = m * m;

    // Extract the block by direct entry lookup.
    let joint: Vec<usize> = subset_a
        .iter()
        .flat_map(|&a| subset_b.iter().map(move |&b| a * dim_b + b))
        .collect();
    let mut block = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, &r) in joint.iter().enumerate() {
        for (j, &cidx) in joint.iter().enumerate() {
            block[i * n + j] = rho.matrix()[(r, cidx)];
        }
    }
    let trace: f64 = (0..n).map(|i| block[i * n + i].re).sum();
    if trace <= tol {
        return None;
    }

    // A positive matrix is proportional to a rank-one projector exactly
    // when B·B = Tr(B)·B.
    let mut max_dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut prod = Complex64::new(0.0, 0.0);
            for k in 0..n {
                prod += block[i * n + k] * block[k * n + j];
            }
            let dev = (prod - block[i * n + j] * trace).norm();
            max_dev = max_dev.max(dev);
        }
    }
    if max_dev > tol * trace.max(1e-12) {
        return None;
    }

    // Rank one: every column is proportional to the block vector. Take
    // the heaviest column and confirm the outer-product structure.
    let mut best_col = 0;
    let mut best_norm = 0.0;
    for j in 0..n {
        let col_norm: f64 = (0..n).map(|i| block[i * n + j].norm_sqr()).sum();
        if col_norm > best_norm {
            best_norm = col_norm;
            best_col = j;
        }
    }
    let scale = best_norm.sqrt();
    let psi: Vec<Complex64> = (0..n).map(|i| block[i * n + best_col] / scale).collect();
    for i in 0..n {
        for j in 0..n {
            let model = psi[i] * psi[j].conj() * trace;
            if (model - block[i * n + j]).norm() > 1e-6 * trace {
                return None;
            }
        }
    }

    let rank = gaussian_schmidt_rank(&psi, m);
    if rank != m {
        return None;
    }
    Some(OracleHit {
        subset_a: subset_a.to_vec(),
        subset_b: subset_b.to_vec(),
        schmidt_rank: rank,
        probability: trace,
    })
}

/// Schmidt rank of a block vector via row reduction of its m×m
/// coefficient matrix with partial pivoting.
fn gaussian_schmidt_rank(psi: &[Complex64], m: usize) -> usize {
    let mut mat: Vec<Vec<Complex64>> = (0..m)
        .map(|i| (0..m).map(|j| psi[i * m + j]).collect())
        .collect();
    let scale: f64 = mat
        .iter()
        .flat_map(|row| row.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    for col in 0..m {
        // Partial pivot among the remaining rows.
        let pivot_row = (rank..m).max_by(|&x, &y| {
            mat[x][col]
                .norm()
                .partial_cmp(&mat[y][col].norm())
                .unwrap()
        });
        let Some(pivot_row) = pivot_row else { break };
        if mat[pivot_row][col].norm() <= 1e-7 * scale {
            continue;
        }
        mat.swap(rank, pivot_row);
        for row in (rank + 1)..m {
            let factor = mat[row][col] / mat[rank][col];
            for k in col..m {
                let sub = factor * mat[rank][k];
                mat[row][k] -= sub;
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Dense λ′ oracle for two-qubit states: the characteristic polynomial
/// of ρρ̃ from trace power sums, rooted by Durand–Kerner iteration with
/// structural zeros factored out first.
pub fn lambda_prime_oracle(rho: &BipartiteDensity) -> [f64; 4] {
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let sigma_y = dss_core::linalg::ComplexMatrix::new(2, 2, vec![zero, -i, i, zero]);
    let yy = dss_core::linalg::kron(&sigma_y, &sigma_y);
    let tilde = yy.matmul(&rho.matrix().conjugate()).matmul(&yy);
    let product = rho.matrix().matmul(&tilde);

    let mut powers = Vec::with_capacity(4);
    let mut acc = product.clone();
    for _ in 0..4 {
        powers.push(acc.trace());
        acc = acc.matmul(&product);
    }
    let (s1, s2, s3, s4) = (powers[0], powers[1], powers[2], powers[3]);
    let e1 = s1;
    let e2 = (e1 * s1 - s2) / 2.0;
    let e3 = (e2 * s1 - e1 * s2 + s3) / 3.0;
    let e4 = (e3 * s1 - e2 * s2 + e1 * s3 - s4) / 4.0;

    let mut coeffs = vec![Complex64::new(1.0, 0.0), -e1, e2, -e3, e4];
    for z in coeffs.iter_mut() {
        if z.norm() < 1e-11 {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    let mut zero_roots = 0usize;
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() == 0.0 {
        coeffs.pop();
        zero_roots += 1;
    }
    let degree = coeffs.len() - 1;
    let eval = |x: Complex64| {
        coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    };
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..300 {
        let prev = roots.clone();
        for p in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for q in 0..degree {
                if p != q {
                    denom *= prev[p] - prev[q];
                }
            }
            roots[p] = prev[p] - eval(prev[p]) / denom;
        }
    }
    let mut out: Vec<f64> = roots.iter().map(|r| r.re.max(0.0).sqrt()).collect();
    out.extend(std::iter::repeat(0.0).take(zero_roots));
    out.sort_by(|a, b| b.partial_cmp(a).unwrap());
    [out[0], out[1], out[2], out[3]]
}
