//! Distillable-subspace (DSS) search on a fixed product basis.
//!
//! A product subspace with |S_A| = |S_B| = m ≥ 2 is *distillable* for a
//! state ρ when the projected block (P_A⊗P_B) ρ (P_A⊗P_B) is (up to
//! normalization) a rank-one projector onto a vector of full Schmidt
//! number m. Such a subspace certifies that a pure entangled state can be
//! projected out of ρ with the block's probability — this is what makes a
//! state distillable at unit fidelity from finitely many copies.
//!
//! Subspaces are sought **only in the computational product basis** of
//! the (regrouped) input. Searching over the continuum of local frames is
//! a non-convex problem this crate does not attempt; callers may
//! pre-rotate the state by any product unitary of their choosing and
//! search the rotated copy.

use num_complex::Complex64;

use crate::linalg::{canonical_phase, hermitian_eig, ComplexMatrix};
use crate::schmidt::{entanglement_entropy, schmidt_decompose};
use crate::state::{BipartiteDensity, ProductSubspace};
use crate::{Error, Result, SCHMIDT_CUTOFF, SEARCH_BUDGET, TOL};

/// A verified distillable subspace: the index subsets, the pure state
/// carried by the projected block (in block coordinates, global phase
/// canonicalized), its Schmidt number and its probability.
#[derive(Debug, Clone)]
pub struct DssRecord {
    pub subspace: ProductSubspace,
    /// Unit vector on the m·m block, ordered by (subset_a index, subset_b
    /// index) pairs.
    pub pure_state: Vec<Complex64>,
    pub schmidt_number: usize,
    pub probability: f64,
}

impl DssRecord {
    /// Entanglement entropy of the block's pure state, in ebits.
    pub fn entropy(&self) -> f64 {
        let m = self.schmidt_number;
        let sd = schmidt_decompose(&self.pure_state, m, m, SCHMIDT_CUTOFF)
            .expect("record pure state is unit norm");
        entanglement_entropy(&sd)
    }
}

/// Zero-row/zero-column signature of a state carrying a DSS, in the
/// product basis reordered so the m·m block comes first: row (i,j) with
/// i ≠ j pairs the block's i-th A-vector with its j-th B-vector.
#[derive(Debug, Clone)]
pub struct ZeroPattern {
    /// Row indices (in the reordered basis) whose entries all vanish.
    pub zero_rows: Vec<usize>,
    /// Column indices whose entries all vanish (mirrors `zero_rows` for
    /// Hermitian input, but verified independently).
    pub zero_cols: Vec<usize>,
    /// Numerical rank of the state.
    pub rank: usize,
    /// The cap dim_a·dim_b − m² + 1 the rank must respect.
    pub rank_bound: usize,
}

/// Test a single product subspace. Returns a record iff (a) the block
/// has probability above `tol`, (b) the block is pure — purity
/// Tr(B²)/Tr(B)² within `tol` of one — and (c) the block's pure state
/// has Schmidt number exactly m. Blocks that are pure but of smaller
/// Schmidt number are rejected, not shrunk: the search at smaller m finds
/// the shrunken subspace itself.
pub fn is_dss(
    rho: &BipartiteDensity,
    sub: &ProductSubspace,
    tol: f64,
) -> Result<Option<DssRecord>> {
    let m = sub.subset_a().len();
    if sub.subset_b().len() != m {
        return Err(Error::SubsetSizeMismatch {
            size_a: m,
            size_b: sub.subset_b().len(),
        });
    }
    if m < 2 {
        return Err(Error::InvalidSubspace {
            reason: format!("a distillable subspace needs m >= 2 (got {m})"),
        });
    }

    let (block, probability) = rho.project_product_subspace(sub);
    if probability <= tol {
        return Ok(None);
    }
    // For a Hermitian block Tr(B²) = Σ|B_ij|².
    let trace_sq: f64 = block.data().iter().map(|z| z.norm_sqr()).sum();
    let purity = trace_sq / (probability * probability);
    if purity < 1.0 - tol {
        return Ok(None);
    }

    let eig = hermitian_eig(&block, tol.max(1e-12))?;
    let psi = canonical_phase(&crate::linalg::normalize(&eig.eigenvector(0)));
    let sd = schmidt_decompose(&psi, m, m, SCHMIDT_CUTOFF)?;
    if sd.schmidt_number() != m {
        return Ok(None);
    }
    Ok(Some(DssRecord {
        subspace: sub.clone(),
        pure_state: psi,
        schmidt_number: m,
        probability,
    }))
}

/// Controls for [`find_dss_with`]: subset-size range, tolerance, the
/// enumeration budget and the worker count. The result is identical for
/// every worker count — hits are merged and canonically sorted.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub m_min: usize,
    pub m_max: usize,
    pub tol: f64,
    pub budget: u128,
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(m_min: usize, m_max: usize, tol: f64) -> Self {
        Self {
            m_min,
            m_max,
            tol,
            budget: SEARCH_BUDGET,
            jobs: 1,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Exhaustively enumerate subset pairs (S_A, S_B) with |S_A| = |S_B| = m
/// for m in [m_min, m_max], filter through [`is_dss`], and return every
/// hit sorted by probability descending (ties: lexicographic subsets).
pub fn find_dss(
    rho: &BipartiteDensity,
    m_min: usize,
    m_max: usize,
    tol: f64,
) -> Result<Vec<DssRecord>> {
    find_dss_with(rho, &SearchConfig::new(m_min, m_max, tol))
}

/// As [`find_dss`], with explicit budget and worker count.
pub fn find_dss_with(rho: &BipartiteDensity, config: &SearchConfig) -> Result<Vec<DssRecord>> {
    let (m_min, m_max) = (config.m_min, config.m_max);
    if m_min < 2 || m_min > m_max || m_max > rho.dim_a().min(rho.dim_b()) {
        return Err(Error::InvalidSubspace {
            reason: format!(
                "need 2 <= m_min <= m_max <= min(dim_a, dim_b) = {}, got [{m_min}, {m_max}]",
                rho.dim_a().min(rho.dim_b())
            ),
        });
    }

    let mut required: u128 = 0;
    for m in m_min..=m_max {
        required = required
            .saturating_add(binomial(rho.dim_a(), m).saturating_mul(binomial(rho.dim_b(), m)));
    }
    if required > config.budget {
        return Err(Error::EnumerationBudgetExceeded {
            required,
            budget: config.budget,
        });
    }

    let mut hits = Vec::new();
    for m in m_min..=m_max {
        let subsets_a = combinations(rho.dim_a(), m);
        let subsets_b = combinations(rho.dim_b(), m);
        hits.extend(scan_pairs(rho, &subsets_a, &subsets_b, config)?);
    }
    sort_records(&mut hits);
    Ok(hits)
}

fn scan_pairs(
    rho: &BipartiteDensity,
    subsets_a: &[Vec<usize>],
    subsets_b: &[Vec<usize>],
    config: &SearchConfig,
) -> Result<Vec<DssRecord>> {
    let nb = subsets_b.len();
    let total = subsets_a.len() * nb;
    let check = |flat: usize| -> Result<Option<DssRecord>> {
        let sub = ProductSubspace::new(
            subsets_a[flat / nb].clone(),
            subsets_b[flat % nb].clone(),
            rho.dim_a(),
            rho.dim_b(),
        )?;
        is_dss(rho, &sub, config.tol)
    };

    if config.jobs <= 1 || total < 2 * config.jobs {
        let mut hits = Vec::new();
        for flat in 0..total {
            if let Some(rec) = check(flat)? {
                hits.push(rec);
            }
        }
        return Ok(hits);
    }

    let chunk = total.div_ceil(config.jobs);
    let results: Vec<Result<Vec<DssRecord>>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..config.jobs {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total);
            let check = &check;
            handles.push(scope.spawn(move || {
                let mut hits = Vec::new();
                for flat in lo..hi {
                    if let Some(rec) = check(flat)? {
                        hits.push(rec);
                    }
                }
                Ok(hits)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut hits = Vec::new();
    for r in results {
        hits.extend(r?);
    }
    Ok(hits)
}

fn sort_records(records: &mut [DssRecord]) {
    records.sort_by(|a, b| {
        b.probability
            .partial_cmp(&a.probability)
            .expect("probabilities are finite")
            .then_with(|| a.subspace.cmp(&b.subspace))
    });
}

/// Attempt to merge two records into one subspace: if the unions of the
/// A and B subsets have equal cardinality m″ and the union passes
/// [`is_dss`] with Schmidt number m″, the combined record is returned.
/// Combining a record with itself returns the record.
pub fn combine_dss(
    rho: &BipartiteDensity,
    first: &DssRecord,
    second: &DssRecord,
    tol: f64,
) -> Result<Option<DssRecord>> {
    let union_a = union_sorted(first.subspace.subset_a(), second.subspace.subset_a());
    let union_b = union_sorted(first.subspace.subset_b(), second.subspace.subset_b());
    if union_a.len() != union_b.len() {
        return Ok(None);
    }
    let sub = ProductSubspace::new(union_a, union_b, rho.dim_a(), rho.dim_b())?;
    is_dss(rho, &sub, tol)
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A maximal family of independent distillable subspaces: records with
/// pairwise-disjoint A subsets and pairwise-disjoint B subsets, each
/// grown to maximal Schmidt number by combination.
///
/// Candidates are grown by attempting combinations in
/// probability-descending order until no union succeeds, deduplicated,
/// then selected greedily by probability × entropy (ties broken
/// lexicographically) subject to disjointness. The greedy score favors
/// combined subspaces — a merged block carries more entanglement per
/// event than the pieces it absorbs.
pub fn maximal_dss_partition(rho: &BipartiteDensity, tol: f64) -> Result<Vec<DssRecord>> {
    let m_cap = rho.dim_a().min(rho.dim_b());
    if m_cap < 2 {
        return Ok(Vec::new());
    }
    let all = find_dss(rho, 2, m_cap, tol)?;
    if all.is_empty() {
        return Ok(Vec::new());
    }

    // Grow every candidate to a maximal record.
    let mut maximal: Vec<DssRecord> = Vec::new();
    for seed in &all {
        let mut current = seed.clone();
        loop {
            let mut grew = false;
            for other in &all {
                if other.subspace == current.subspace {
                    continue;
                }
                if let Some(combined) = combine_dss(rho, &current, other, tol)? {
                    if combined.subspace != current.subspace {
                        current = combined;
                        grew = true;
                        break;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if !maximal.iter().any(|r| r.subspace == current.subspace) {
            maximal.push(current);
        }
    }

    // Greedy selection by probability-weighted entropy.
    let mut scored: Vec<(f64, DssRecord)> = maximal
        .into_iter()
        .map(|r| (r.probability * r.entropy(), r))
        .collect();
    scored.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("scores are finite")
            .then_with(|| a.1.subspace.cmp(&b.1.subspace))
    });

    let mut selected: Vec<DssRecord> = Vec::new();
    for (_, rec) in scored {
        let disjoint = selected.iter().all(|s| {
            disjoint_sorted(s.subspace.subset_a(), rec.subspace.subset_a())
                && disjoint_sorted(s.subspace.subset_b(), rec.subspace.subset_b())
        });
        if disjoint {
            selected.push(rec);
        }
    }
    Ok(selected)
}

fn disjoint_sorted(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Verify the structural signature a DSS imposes on the full matrix and
/// return it. In the product basis reordered so the record's Schmidt
/// vectors lead on both sides, the m²−m rows and columns pairing
/// mismatched Schmidt vectors must vanish (the block is diagonal in its
/// Schmidt bases, so those diagonal entries are zero, and positivity then
/// zeroes the whole row), and the rank can be at most
/// dim_a·dim_b − m² + 1.
///
/// A violation means the record does not actually describe a DSS of
/// `rho` — an internal inconsistency, reported as an error.
pub fn zero_pattern(rho: &BipartiteDensity, record: &DssRecord) -> Result<ZeroPattern> {
    zero_pattern_with_tol(rho, record, TOL)
}

/// [`zero_pattern`] with an explicit entry tolerance.
pub fn zero_pattern_with_tol(
    rho: &BipartiteDensity,
    record: &DssRecord,
    tol: f64,
) -> Result<ZeroPattern> {
    let m = record.schmidt_number;
    let (dim_a, dim_b) = (rho.dim_a(), rho.dim_b());
    let sd = schmidt_decompose(&record.pure_state, m, m, SCHMIDT_CUTOFF)?;
    if sd.schmidt_number() != m {
        return Err(Error::InconsistentRecord {
            reason: format!(
                "pure state has Schmidt number {} instead of {m}",
                sd.schmidt_number()
            ),
        });
    }

    let w_a = leading_frame(dim_a, record.subspace.subset_a(), &sd.basis_a);
    let w_b = leading_frame(dim_b, record.subspace.subset_b(), &sd.basis_b);
    let u = crate::linalg::kron(&w_a, &w_b);
    let reordered = u.adjoint().matmul(rho.matrix()).matmul(&u);

    let d = dim_a * dim_b;
    let mut zero_rows = Vec::new();
    let mut zero_cols = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let row = i * dim_b + j;
            let row_max = (0..d).map(|c| reordered[(row, c)].norm()).fold(0.0, f64::max);
            if row_max <= tol {
                zero_rows.push(row);
            }
            let col_max = (0..d).map(|r| reordered[(r, row)].norm()).fold(0.0, f64::max);
            if col_max <= tol {
                zero_cols.push(row);
            }
        }
    }

    let expected = m * m - m;
    if zero_rows.len() < expected || zero_cols.len() < expected {
        return Err(Error::InconsistentRecord {
            reason: format!(
                "found {} zero rows and {} zero columns, expected at least {expected}",
                zero_rows.len(),
                zero_cols.len()
            ),
        });
    }

    let rank_bound = dim_a * dim_b - m * m + 1;
    let rank = rho.rank();
    if rank > rank_bound {
        return Err(Error::InconsistentRecord {
            reason: format!("rank {rank} exceeds the bound {rank_bound}"),
        });
    }

    Ok(ZeroPattern {
        zero_rows,
        zero_cols,
        rank,
        rank_bound,
    })
}

/// Unitary whose first columns are the record's Schmidt vectors embedded
/// in the full local space, followed by the computational vectors outside
/// the subset.
fn leading_frame(dim: usize, subset: &[usize], block_vectors: &[Vec<Complex64>]) -> ComplexMatrix {
    let m = block_vectors.len();
    let mut w = ComplexMatrix::zeros(dim, dim);
    for (col, vec) in block_vectors.iter().enumerate() {
        for (r, &idx) in subset.iter().enumerate() {
            w[(idx, col)] = vec[r];
        }
    }
    let mut col = m;
    for idx in 0..dim {
        if !subset.contains(&idx) {
            w[(idx, col)] = Complex64::new(1.0, 0.0);
            col += 1;
        }
    }
    w
}

/// Lexicographic k-subsets of {0, …, n−1}.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in (i + 1)..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
