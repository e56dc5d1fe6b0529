//! Dense complex linear algebra used by every other module.
//!
//! Matrices are small (a few hundred rows at most), so everything here is
//! written for clarity over asymptotic cleverness: row-major storage, a
//! cyclic Jacobi eigensolver for Hermitian matrices, and an SVD recovered
//! from the eigendecomposition of `M†M`.

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix, row-major.
///
/// Values are immutable after construction in practice: every operation
/// returns a new matrix, so instances are safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from an explicit entry buffer (row-major).
    ///
    /// Panics if `data.len() != rows * cols`; that is a programming error,
    /// not an input-validation failure.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry buffer length {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from real entries (row-major).
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Outer product |v⟩⟨w| of two column vectors.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, &vi) in v.iter().enumerate() {
            for (j, &wj) in w.iter().enumerate() {
                m[(i, j)] = vi * wj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    /// Verify every entry is finite.
    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Max-norm deviation from Hermitian symmetry (`‖M − M†‖_max`).
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                dev = dev.max(d.norm());
            }
        }
        dev
    }

    pub fn conjugate(&self) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z.conj()).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z * s).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Vector helpers shared across modules.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

/// Rotate a vector's global phase so its largest-modulus entry is real
/// and non-negative. Ties break toward the lowest index, which keeps the
/// choice deterministic for reporting.
pub fn canonical_phase(v: &[Complex64]) -> Vec<Complex64> {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm + 1e-15 {
            best = i;
            best_norm = n;
        }
    }
    if best_norm == 0.0 {
        return v.to_vec();
    }
    let phase = v[best] / best_norm;
    v.iter().map(|z| z * phase.conj()).collect()
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted in
/// descending order, matching unit-norm eigenvector columns.
///
/// Eigenvectors inside a degenerate cluster are an arbitrary orthonormal
/// basis of that cluster; callers must never rely on a canonical choice.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// Reconstruct `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] = v[(i, j)] * self.eigenvalues[j];
            }
        }
        scaled.matmul(&v.adjoint())
    }
}

// Convergence threshold for the Jacobi sweep, relative to the Frobenius
// norm of the input. 50 sweeps is far beyond what n <= 256 ever needs.
const JACOBI_EPS: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 50;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `tol` gates the Hermiticity precondition (`‖M − M†‖_max ≤ tol`); the
/// iteration itself always runs to machine precision.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.check_finite()?;
    let dev = m.hermitian_deviation();
    if dev > tol {
        return Err(Error::NotHermitian {
            deviation: dev,
            tol,
        });
    }

    let n = m.rows();
    // Work on the Hermitian average so the iteration sees an exactly
    // Hermitian matrix even when the input sits at the tolerance edge.
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let frobenius: f64 = a.data().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let stop = JACOBI_EPS * frobenius.max(f64::MIN_POSITIVE);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let beta = apq.norm();
                if beta <= stop {
                    continue;
                }
                let phase = apq / beta;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Rotate rows/columns p and q of A (A ← U†AU with
                // U = [[c, s·phase], [−s·conj(phase), c]] on (p,q)).
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s * phase.conj();
                    a[(k, q)] = akp * s * phase + akq * c;
                    a[(p, k)] = a[(k, p)].conj();
                    a[(q, k)] = a[(k, q)].conj();
                }
                a[(p, p)] = Complex64::new(c * c * alpha + s * s * gamma - 2.0 * c * s * beta, 0.0);
                a[(q, q)] = Complex64::new(s * s * alpha + c * c * gamma + 2.0 * c * s * beta, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s * phase.conj();
                    v[(k, q)] = vkp * s * phase + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &v.column(src));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Singular value decomposition `M = U·diag(S)·V†` with `S` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

// Singular values below this fraction of the largest are treated as zero
// when recovering left singular vectors; the noise floor of the
// M†M route sits well below it at these dimensions.
const SVD_RELATIVE_FLOOR: f64 = 1e-10;

/// Compact SVD via the eigendecomposition of `M†M`, adequate at these
/// dimensions. Each singular value is refined as ‖M·vᵢ‖ on the original
/// matrix — the Gram route alone floors true zeros at √ε, which would
/// leak into Schmidt-number counts. Returns `min(rows, cols)` singular
/// triplets; left vectors for zero singular values are completed by
/// Gram–Schmidt so that `U` always has orthonormal columns.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    m.check_finite()?;
    let k = m.rows().min(m.cols());
    // Work with the thinner Gram matrix side.
    let flipped = m.rows() < m.cols();
    let work = if flipped { m.adjoint() } else { m.clone() };

    let gram = work.adjoint().matmul(&work);
    let eig = hermitian_eig(&gram, 1e-8 * gram.max_abs().max(1.0))?;

    let mut triplets: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> = (0..k)
        .map(|j| {
            let v = eig.eigenvector(j);
            let w = work.matvec(&v);
            (norm(&w), v, w)
        })
        .collect();
    // Refinement can reorder near-degenerate values by a few ε.
    triplets.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite singular values"));

    let floor = SVD_RELATIVE_FLOOR * triplets.first().map_or(0.0, |t| t.0);
    let mut singular_values = Vec::with_capacity(k);
    let mut right = ComplexMatrix::zeros(work.cols(), k);
    let mut left = ComplexMatrix::zeros(work.rows(), k);
    for (j, (sigma, v, w)) in triplets.into_iter().enumerate() {
        right.set_column(j, &v);
        if sigma > floor {
            let scaled: Vec<Complex64> = w.iter().map(|z| z / sigma).collect();
            left.set_column(j, &scaled);
            singular_values.push(sigma);
        } else {
            left.set_column(j, &orthonormal_completion(&left, j));
            singular_values.push(0.0);
        }
    }

    if flipped {
        Ok(Svd {
            u: right,
            singular_values,
            v: left,
        })
    } else {
        Ok(Svd {
            u: left,
            singular_values,
            v: right,
        })
    }
}

/// Find a unit vector orthogonal to the first `used` columns of `m`.
fn orthonormal_completion(m: &ComplexMatrix, used: usize) -> Vec<Complex64> {
    let n = m.rows();
    for seed in 0..n {
        let mut cand = vec![Complex64::new(0.0, 0.0); n];
        cand[seed] = Complex64::new(1.0, 0.0);
        for j in 0..used {
            let col = m.column(j);
            let overlap = dot(&col, &cand);
            for (c, b) in cand.iter_mut().zip(&col) {
                *c -= overlap * b;
            }
        }
        let len = norm(&cand);
        if len > 1e-6 {
            return cand.iter().map(|z| z / len).collect();
        }
    }
    unreachable!("orthonormal completion always exists for used < rows");
}

impl Svd {
    /// Reconstruct `U·diag(S)·V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        let mut scaled = self.u.clone();
        for j in 0..k {
            for i in 0..self.u.rows() {
                scaled[(i, j)] = self.u[(i, j)] * self.singular_values[j];
            }
        }
        scaled.matmul(&self.v.adjoint())
    }
}

/// Kronecker product: entry `((i·rB+k), (j·cB+l)) = A(i,j)·B(k,l)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of two column vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}
