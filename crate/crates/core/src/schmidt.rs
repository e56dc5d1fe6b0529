//! Schmidt decompositions of pure bipartite vectors, local filtering to
//! the maximally entangled state, and pure-state entanglement entropy.

use num_complex::Complex64;

use crate::linalg::{norm, svd, ComplexMatrix};
use crate::{Error, Result, SCHMIDT_CUTOFF, TOL};

/// Canonical form Σᵢ cᵢ |eᵢ⟩_A|fᵢ⟩_B of a pure bipartite vector:
/// descending positive coefficients with matched orthonormal local bases.
///
/// Coefficients inside a degenerate cluster admit any orthonormal basis
/// rotation of the matched local vectors; compare coefficient lists and
/// subspace spans, never individual basis vectors.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending, all above the cutoff used at construction.
    pub coefficients: Vec<f64>,
    /// `basis_a[i]` is |eᵢ⟩_A (length dim_a).
    pub basis_a: Vec<Vec<Complex64>>,
    /// `basis_b[i]` is |fᵢ⟩_B (length dim_b).
    pub basis_b: Vec<Vec<Complex64>>,
}

impl SchmidtDecomposition {
    /// Number of retained coefficients; 1 means a product state.
    pub fn schmidt_number(&self) -> usize {
        self.coefficients.len()
    }

    /// Rebuild Σᵢ cᵢ |eᵢ⟩|fᵢ⟩.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let dim_a = self.basis_a[0].len();
        let dim_b = self.basis_b[0].len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim_a * dim_b];
        for ((c, ea), fb) in self
            .coefficients
            .iter()
            .zip(&self.basis_a)
            .zip(&self.basis_b)
        {
            for (a, &ea_a) in ea.iter().enumerate() {
                for (b, &fb_b) in fb.iter().enumerate() {
                    out[a * dim_b + b] += ea_a * fb_b * c;
                }
            }
        }
        out
    }
}

/// Schmidt decomposition of a unit vector on dim_a ⊗ dim_b via the SVD of
/// its coefficient matrix. Coefficients below `cutoff` times the largest
/// are discarded (the [`SCHMIDT_CUTOFF`] default separates true zeros
/// from roundoff at these dimensions).
pub fn schmidt_decompose(
    psi: &[Complex64],
    dim_a: usize,
    dim_b: usize,
    cutoff: f64,
) -> Result<SchmidtDecomposition> {
    if psi.len() != dim_a * dim_b {
        return Err(Error::VectorLengthMismatch {
            len: psi.len(),
            dim_a,
            dim_b,
        });
    }
    let len = norm(psi);
    if len < TOL {
        return Err(Error::ZeroVector);
    }

    let mut coeff = ComplexMatrix::zeros(dim_a, dim_b);
    for a in 0..dim_a {
        for b in 0..dim_b {
            coeff[(a, b)] = psi[a * dim_b + b] / len;
        }
    }
    let decomposition = svd(&coeff)?;
    let largest = decomposition.singular_values.first().copied().unwrap_or(0.0);
    let keep = decomposition
        .singular_values
        .iter()
        .take_while(|&&s| s > cutoff * largest && s > 0.0)
        .count();

    let mut basis_a = Vec::with_capacity(keep);
    let mut basis_b = Vec::with_capacity(keep);
    for i in 0..keep {
        basis_a.push(decomposition.u.column(i));
        // ψ = Σ σᵢ uᵢ ⊗ conj(vᵢ) when the coefficient matrix is UΣV†.
        basis_b.push(
            decomposition
                .v
                .column(i)
                .iter()
                .map(|z| z.conj())
                .collect(),
        );
    }
    Ok(SchmidtDecomposition {
        coefficients: decomposition.singular_values[..keep].to_vec(),
        basis_a,
        basis_b,
    })
}

/// Convenience: Schmidt number at the default cutoff.
pub fn schmidt_number(psi: &[Complex64], dim_a: usize, dim_b: usize) -> Result<usize> {
    Ok(schmidt_decompose(psi, dim_a, dim_b, SCHMIDT_CUTOFF)?.schmidt_number())
}

/// A local filter on side A turning a pure entangled state into the
/// rank-m maximally entangled state, and its success probability.
#[derive(Debug, Clone)]
pub struct LocalFilter {
    /// Σᵢ (c_min/cᵢ)|eᵢ⟩⟨eᵢ|, acting on A alone.
    pub filter_a: ComplexMatrix,
    /// m·c_min²: the chance the filter clicks.
    pub success_probability: f64,
}

/// Build the filter A ↦ Σᵢ (c_min/cᵢ)|eᵢ⟩⟨eᵢ| that maps the decomposed
/// state onto Σᵢ|eᵢ⟩|fᵢ⟩/√m. Fails with [`Error::NotEntangled`] for
/// product states. The filter sits on side A by convention so emitted
/// protocols are deterministic.
pub fn filter_to_maximally_entangled(sd: &SchmidtDecomposition) -> Result<LocalFilter> {
    let m = sd.schmidt_number();
    if m < 2 {
        return Err(Error::NotEntangled);
    }
    let c_min = *sd.coefficients.last().expect("m >= 2");
    let dim_a = sd.basis_a[0].len();
    let mut filter_a = ComplexMatrix::zeros(dim_a, dim_a);
    for (c, e) in sd.coefficients.iter().zip(&sd.basis_a) {
        let gain = Complex64::new(c_min / c, 0.0);
        filter_a = filter_a.add(&ComplexMatrix::outer(e, e).scale(gain));
    }
    Ok(LocalFilter {
        filter_a,
        success_probability: m as f64 * c_min * c_min,
    })
}

/// Entanglement entropy −Σ cᵢ² log₂ cᵢ², in ebits.
pub fn entanglement_entropy(sd: &SchmidtDecomposition) -> f64 {
    sd.coefficients
        .iter()
        .map(|c| {
            let p = c * c;
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum()
}
