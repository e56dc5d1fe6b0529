//! Bipartite density matrices: validation, pure-state decompositions,
//! tensor powers with A/B regrouping, product-subspace projections and
//! the partial transpose.
//!
//! # Index convention
//!
//! The product basis vector |a⟩_A|b⟩_B maps to row `a·dim_b + b`. For a
//! tensor power the copies are regrouped so every A factor precedes every
//! B factor, with **copy 1 most significant on each side**: the A-side
//! index of copies (a₁, …, aₙ) is Σₖ aₖ·dim_aⁿ⁻¹⁻ᵏ, and likewise for B.
//! Nothing forces this ordering mathematically — it is a convention, and
//! callers comparing against hand-written bases must adopt the same one.

use num_complex::Complex64;

use crate::linalg::{hermitian_eig, ComplexMatrix, EigenSystem};
use crate::{Error, Result, MAX_DIM, TOL};

/// A validated bipartite density matrix: Hermitian, unit trace, positive
/// semidefinite, with local dimensions attached.
#[derive(Debug, Clone)]
pub struct BipartiteDensity {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
    rank: usize,
}

/// One term of a pure-state decomposition: a weight in (0, 1] and a
/// unit-norm vector on the joint space.
#[derive(Debug, Clone)]
pub struct WeightedPureState {
    pub weight: f64,
    pub vector: Vec<Complex64>,
}

/// A product subspace, identified by sorted index subsets into the fixed
/// A and B computational bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSubspace {
    subset_a: Vec<usize>,
    subset_b: Vec<usize>,
}

impl ProductSubspace {
    /// Validate and canonicalize (sort) the index subsets.
    pub fn new(mut subset_a: Vec<usize>, mut subset_b: Vec<usize>, dim_a: usize, dim_b: usize) -> Result<Self> {
        subset_a.sort_unstable();
        subset_b.sort_unstable();
        for (name, subset, dim) in [("A", &subset_a, dim_a), ("B", &subset_b, dim_b)] {
            if subset.is_empty() {
                return Err(Error::InvalidSubspace {
                    reason: format!("side {name} selects no basis vectors"),
                });
            }
            if subset.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSubspace {
                    reason: format!("side {name} has duplicate indices"),
                });
            }
            if *subset.last().unwrap() >= dim {
                return Err(Error::InvalidSubspace {
                    reason: format!(
                        "side {name} index {} out of range (dimension {dim})",
                        subset.last().unwrap()
                    ),
                });
            }
        }
        Ok(Self { subset_a, subset_b })
    }

    pub fn subset_a(&self) -> &[usize] {
        &self.subset_a
    }

    pub fn subset_b(&self) -> &[usize] {
        &self.subset_b
    }
}

impl BipartiteDensity {
    /// Validate a candidate density matrix. Each failure mode is a
    /// distinct error: dimension mismatch, non-Hermitian, trace ≠ 1, or a
    /// negative eigenvalue below −tol. The numerical rank (eigenvalues
    /// above `tol`) is computed here and cached.
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize, tol: f64) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::EmptyLocalDimension { dim_a, dim_b });
        }
        let d = dim_a * dim_b;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: d,
            });
        }
        matrix.check_finite()?;
        let dev = matrix.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev,
                tol,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::TraceNotOne {
                trace: trace.re,
                tol,
            });
        }
        let eig = hermitian_eig(&matrix, tol)?;
        if let Some(&min) = eig.eigenvalues.last() {
            if min < -tol {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }
        let rank = eig.eigenvalues.iter().filter(|&&l| l > tol).count();
        Ok(Self {
            dim_a,
            dim_b,
            matrix,
            rank,
        })
    }

    /// Construct without re-validating; for internal use where the
    /// invariants are preserved by construction (e.g. tensor powers).
    pub(crate) fn from_trusted_parts(
        matrix: ComplexMatrix,
        dim_a: usize,
        dim_b: usize,
        rank: usize,
    ) -> Self {
        Self {
            dim_a,
            dim_b,
            matrix,
            rank,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Numerical rank: eigenvalues above the validation tolerance.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn eigensystem(&self) -> EigenSystem {
        hermitian_eig(&self.matrix, TOL).expect("validated density matrix stays Hermitian")
    }

    /// Eigendecomposition restricted to eigenvalues above `tol`. The
    /// returned weights sum to 1 within validation tolerance and the
    /// weighted outer products reconstruct the state.
    pub fn pure_decomposition(&self, tol: f64) -> Vec<WeightedPureState> {
        let eig = self.eigensystem();
        eig.eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > tol)
            .map(|(k, &l)| WeightedPureState {
                weight: l,
                vector: eig.eigenvector(k),
            })
            .collect()
    }

    /// The n-fold tensor power, regrouped so all A factors precede all B
    /// factors (copy 1 most significant on each side). Output local
    /// dimensions are (dim_aⁿ, dim_bⁿ).
    pub fn tensor_power(&self, n: usize) -> Result<BipartiteDensity> {
        self.tensor_power_capped(n, MAX_DIM)
    }

    /// As [`tensor_power`](Self::tensor_power) with an explicit cap on
    /// the output row count.
    pub fn tensor_power_capped(&self, n: usize, cap: usize) -> Result<BipartiteDensity> {
        assert!(n >= 1, "tensor power requires n >= 1");
        let d = self.dim();
        let required = d.checked_pow(n as u32).ok_or(Error::DimensionCapExceeded {
            required: usize::MAX,
            cap,
        })?;
        if required > cap {
            return Err(Error::DimensionCapExceeded { required, cap });
        }
        if n == 1 {
            return Ok(self.clone());
        }

        let dim_an = self.dim_a.pow(n as u32);
        let dim_bn = self.dim_b.pow(n as u32);
        // Per-copy local row index for every grouped index, so each output
        // entry is a plain product of n input entries.
        let locals = grouped_local_indices(self.dim_a, self.dim_b, n);
        let mut out = ComplexMatrix::zeros(required, required);
        for r in 0..required {
            let lr = &locals[r];
            for cidx in 0..required {
                let lc = &locals[cidx];
                let mut val = Complex64::new(1.0, 0.0);
                for k in 0..n {
                    val *= self.matrix[(lr[k], lc[k])];
                    if val.norm_sqr() == 0.0 {
                        break;
                    }
                }
                out[(r, cidx)] = val;
            }
        }
        let rank = self.rank.saturating_pow(n as u32);
        Ok(BipartiteDensity::from_trusted_parts(
            out, dim_an, dim_bn, rank,
        ))
    }

    /// Project onto a product subspace: the compressed block
    /// `(P_A⊗P_B) ρ (P_A⊗P_B)` restricted to the retained rows/columns in
    /// sorted index order, together with its probability (trace).
    pub fn project_product_subspace(&self, sub: &ProductSubspace) -> (ComplexMatrix, f64) {
        let sa = sub.subset_a();
        let sb = sub.subset_b();
        let m = sa.len() * sb.len();
        let mut block = ComplexMatrix::zeros(m, m);
        let joint: Vec<usize> = sa
            .iter()
            .flat_map(|&a| sb.iter().map(move |&b| a * self.dim_b + b))
            .collect();
        for (i, &r) in joint.iter().enumerate() {
            for (j, &c) in joint.iter().enumerate() {
                block[(i, j)] = self.matrix[(r, c)];
            }
        }
        let probability = block.trace().re;
        (block, probability)
    }

    /// Partial transpose over party A: entry ((a,b),(a′,b′)) moves to
    /// ((a′,b),(a,b′)). The result is Hermitian but not necessarily PSD.
    pub fn partial_transpose(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for a in 0..self.dim_a {
            for b in 0..self.dim_b {
                for ap in 0..self.dim_a {
                    for bp in 0..self.dim_b {
                        out[(a * self.dim_b + b, ap * self.dim_b + bp)] =
                            self.matrix[(ap * self.dim_b + b, a * self.dim_b + bp)];
                    }
                }
            }
        }
        out
    }

    /// Negative-partial-transpose test: true iff the partial transpose
    /// has an eigenvalue below −tol. NPT is necessary for distillability.
    pub fn is_npt(&self, tol: f64) -> Result<bool> {
        let pt = self.partial_transpose();
        let eig = hermitian_eig(&pt, tol.max(1e-12))?;
        Ok(eig.eigenvalues.last().is_some_and(|&min| min < -tol))
    }

    /// Smallest eigenvalue of the partial transpose.
    pub fn min_pt_eigenvalue(&self) -> Result<f64> {
        let pt = self.partial_transpose();
        let eig = hermitian_eig(&pt, 1e-9)?;
        Ok(*eig.eigenvalues.last().expect("non-empty spectrum"))
    }
}

/// Per-copy local indices for each grouped index of a tensor power.
fn grouped_local_indices(dim_a: usize, dim_b: usize, n: usize) -> Vec<Vec<usize>> {
    let dim_an = dim_a.pow(n as u32);
    let dim_bn = dim_b.pow(n as u32);
    let mut locals = Vec::with_capacity(dim_an * dim_bn);
    for ga in 0..dim_an {
        let digits_a = digits(ga, dim_a, n);
        for gb in 0..dim_bn {
            let digits_b = digits(gb, dim_b, n);
            locals.push(
                digits_a
                    .iter()
                    .zip(&digits_b)
                    .map(|(&a, &b)| a * dim_b + b)
                    .collect(),
            );
        }
    }
    locals
}

/// Most-significant-first digits of `x` in the given base.
fn digits(mut x: usize, base: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = x % base;
        x /= base;
    }
    out
}

/// The bijection taking an interleaved tensor-power index
/// (a₁b₁a₂b₂…aₙbₙ) to the grouped index (a₁…aₙ b₁…bₙ).
///
/// `perm[interleaved] = grouped`; applying it as a simultaneous
/// row/column permutation turns `kron(ρ, …, ρ)` into the regrouped form
/// produced by [`BipartiteDensity::tensor_power`].
pub fn regroup_permutation(dim_a: usize, dim_b: usize, n: usize) -> Vec<usize> {
    assert!(n >= 1);
    let d = dim_a * dim_b;
    let total = d.pow(n as u32);
    let dim_bn = dim_b.pow(n as u32);
    let mut perm = vec![0usize; total];
    for (interleaved, slot) in perm.iter_mut().enumerate() {
        let pair_digits = digits(interleaved, d, n);
        let mut ga = 0usize;
        let mut gb = 0usize;
        for &pair in &pair_digits {
            ga = ga * dim_a + pair / dim_b;
            gb = gb * dim_b + pair % dim_b;
        }
        *slot = ga * dim_bn + gb;
    }
    perm
}
