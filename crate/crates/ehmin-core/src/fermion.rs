//! Fermionic pure states on the Slater-determinant basis of `Λ^n C^p`.
//!
//! Amplitudes are indexed by strictly increasing mode tuples
//! `i_1 < i_2 < .. < i_n` (0-based) in lexicographic order. A one-particle
//! basis change `U` acts through the matrix of all `n x n` minors of `U`
//! (the n-th exterior power): new amplitudes are `table * old amplitudes`,
//! with table rows indexed by new tuples and columns by old tuples. For
//! two fermions the minimal-entropy basis is reachable in closed form via
//! the Youla canonical form of the antisymmetric amplitude matrix, which
//! serves as the oracle for the GA route.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cmatrix::{hermitian_eigen, CMatrix, EigenError, C64};
use crate::ga::{self, Chromosome, FitnessFn, GaConfig, GaError};
use crate::objective::EhminResult;
use crate::rng;
use crate::state::shannon_entropy;
use crate::unitary::{hermitian_from_params, unitary_exp, UnitaryMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FermionError {
    /// Particle count must satisfy `1 <= n <= p`.
    BadOrder {
        p: usize,
        n: usize,
    },
    /// Amplitude count does not equal `C(p, n)`.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    /// Amplitude vector has norm below 1e-12.
    ZeroVector,
    /// Unitary dimension does not match the one-particle dimension.
    DimMismatch {
        state: usize,
        unitary: usize,
    },
    /// Slater decomposition is defined for two-fermion states only.
    NotTwoFermion,
    /// Pairing of the canonical form did not close.
    ConvergenceFailure,
    Eigen(EigenError),
    Ga(GaError),
}

impl fmt::Display for FermionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FermionError::BadOrder { p, n } => {
                write!(f, "particle count {n} out of range for {p} modes")
            }
            FermionError::LengthMismatch { expected, got } => {
                write!(
                    f,
                    "amplitude length {got} does not match C(p, n) = {expected}"
                )
            }
            FermionError::ZeroVector => write!(f, "amplitude norm is below 1e-12"),
            FermionError::DimMismatch { state, unitary } => {
                write!(f, "unitary of dimension {unitary} applied to {state} modes")
            }
            FermionError::NotTwoFermion => write!(f, "operation requires a two-fermion state"),
            FermionError::ConvergenceFailure => write!(f, "canonical form pairing failed"),
            FermionError::Eigen(e) => write!(f, "eigendecomposition failed: {e}"),
            FermionError::Ga(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FermionError {}

impl From<EigenError> for FermionError {
    fn from(e: EigenError) -> Self {
        FermionError::Eigen(e)
    }
}

impl From<GaError> for FermionError {
    fn from(e: GaError) -> Self {
        FermionError::Ga(e)
    }
}

pub fn binomial(p: usize, n: usize) -> usize {
    if n > p {
        return 0;
    }
    let n = n.min(p - n);
    let mut result = 1usize;
    for i in 0..n {
        result = result * (p - i) / (i + 1);
    }
    result
}

/// All strictly increasing n-tuples over `0..p` in lexicographic order.
pub fn fermion_basis(p: usize, n: usize) -> Result<Vec<Vec<usize>>, FermionError> {
    if n == 0 || n > p {
        return Err(FermionError::BadOrder { p, n });
    }
    let mut tuples = Vec::with_capacity(binomial(p, n));
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        tuples.push(current.clone());
        // Advance to the lexicographic successor.
        let mut i = n;
        while i > 0 {
            i -= 1;
            if current[i] < p - (n - i) {
                current[i] += 1;
                for j in i + 1..n {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return Ok(tuples);
            }
        }
    }
}

/// Rank of a strictly increasing tuple in the lexicographic enumeration.
fn lex_rank(tuple: &[usize], p: usize) -> usize {
    let n = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in tuple.iter().enumerate() {
        for v in prev..c {
            rank += binomial(p - 1 - v, n - 1 - i);
        }
        prev = c + 1;
    }
    rank
}

/// Pure state of `n` fermions over `p` one-particle modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionState {
    p: usize,
    n: usize,
    amps: Vec<C64>,
}

impl FermionState {
    /// Builds a state, renormalizing to exact unit norm.
    pub fn new(p: usize, n: usize, amps: Vec<C64>) -> Result<Self, FermionError> {
        if n == 0 || n > p {
            return Err(FermionError::BadOrder { p, n });
        }
        let expected = binomial(p, n);
        if amps.len() != expected {
            return Err(FermionError::LengthMismatch {
                expected,
                got: amps.len(),
            });
        }
        let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm < 1e-12 {
            return Err(FermionError::ZeroVector);
        }
        let inv = 1.0 / norm;
        let amps = amps.into_iter().map(|a| a * inv).collect();
        Ok(FermionState { p, n, amps })
    }

    fn from_parts_unchecked(p: usize, n: usize, amps: Vec<C64>) -> Self {
        FermionState { p, n, amps }
    }

    /// Single Slater determinant `|i_1 .. i_n>`.
    pub fn single_determinant(p: usize, n: usize, modes: &[usize]) -> Result<Self, FermionError> {
        if n == 0 || n > p || modes.len() != n {
            return Err(FermionError::BadOrder { p, n });
        }
        if modes.windows(2).any(|w| w[0] >= w[1]) || modes.iter().any(|&m| m >= p) {
            return Err(FermionError::BadOrder { p, n });
        }
        let mut amps = vec![C64::new(0.0, 0.0); binomial(p, n)];
        amps[lex_rank(modes, p)] = C64::new(1.0, 0.0);
        Ok(FermionState { p, n, amps })
    }

    pub fn modes(&self) -> usize {
        self.p
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    /// Shannon entropy (nats) of the Slater-basis outcome distribution.
    pub fn meas_entropy(&self) -> f64 {
        shannon_entropy(self.amps.iter().map(|a| a.norm_sqr()))
    }

    pub fn max_abs_diff(&self, other: &FermionState) -> f64 {
        assert_eq!((self.p, self.n), (other.p, other.n));
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Gaussian-random fermionic state, reproducible for a fixed seed.
pub fn random_fermion_state(p: usize, n: usize, seed: u64) -> Result<FermionState, FermionError> {
    if n == 0 || n > p {
        return Err(FermionError::BadOrder { p, n });
    }
    let mut rng = rng::stream_rng(seed, 0);
    let amps: Vec<C64> = (0..binomial(p, n))
        .map(|_| {
            let (re, im) = rng::normal_pair(&mut rng);
            C64::new(re, im)
        })
        .collect();
    FermionState::new(p, n, amps)
}

/// All `n x n` minors of a `p x p` unitary, as a `C(p,n) x C(p,n)` matrix.
/// Rows are indexed by row-subsets and columns by column-subsets of the
/// source, both in lexicographic order. As the n-th exterior power of a
/// unitary, the table is itself unitary.
#[derive(Debug, Clone)]
pub struct MinorTable {
    source_dim: usize,
    order: usize,
    mat: CMatrix,
}

impl MinorTable {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

/// Precomputed Laplace-expansion bookkeeping for `minor_table`, reusable
/// across many unitaries of the same shape (one GA run makes millions).
pub struct MinorPlan {
    source_dim: usize,
    order: usize,
    layers: Vec<LayerPlan>,
}

struct LayerPlan {
    order: usize,
    /// Column index of each tuple element, per tuple rank.
    tuple_cols: Vec<Vec<usize>>,
    /// Rank of I without its first element, in the order-(k-1) basis.
    tail_rank: Vec<usize>,
    /// Rank of J without its t-th element, for every t.
    drop_rank: Vec<Vec<usize>>,
}

impl MinorPlan {
    pub fn new(p: usize, n: usize) -> Result<Self, FermionError> {
        if n == 0 || n > p {
            return Err(FermionError::BadOrder { p, n });
        }
        let mut layers = Vec::with_capacity(n.saturating_sub(1));
        for k in 2..=n {
            let basis_k = fermion_basis(p, k)?;
            let tail_rank = basis_k.iter().map(|t| lex_rank(&t[1..], p)).collect();
            let drop_rank = basis_k
                .iter()
                .map(|t| {
                    (0..k)
                        .map(|drop| {
                            let sub: Vec<usize> = t
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != drop)
                                .map(|(_, &m)| m)
                                .collect();
                            lex_rank(&sub, p)
                        })
                        .collect()
                })
                .collect();
            layers.push(LayerPlan {
                order: k,
                tuple_cols: basis_k,
                tail_rank,
                drop_rank,
            });
        }
        Ok(MinorPlan {
            source_dim: p,
            order: n,
            layers,
        })
    }

    /// All order-`n` minors of `u` as one matrix, expanding layer by layer.
    pub fn table(&self, u: &UnitaryMatrix) -> Result<MinorTable, FermionError> {
        if u.dim() != self.source_dim {
            return Err(FermionError::DimMismatch {
                state: self.source_dim,
                unitary: u.dim(),
            });
        }
        let mut layer = u.matrix().clone();
        for plan in &self.layers {
            let size = plan.tuple_cols.len();
            let k = plan.order;
            let mut next = CMatrix::zeros(size, size);
            for ii in 0..size {
                let first_row = plan.tuple_cols[ii][0];
                for jj in 0..size {
                    let mut acc = C64::new(0.0, 0.0);
                    let mut sign = 1.0;
                    for t in 0..k {
                        let col = plan.tuple_cols[jj][t];
                        let factor = u.matrix()[(first_row, col)];
                        if factor.norm_sqr() != 0.0 {
                            acc +=
                                factor * layer[(plan.tail_rank[ii], plan.drop_rank[jj][t])] * sign;
                        }
                        sign = -sign;
                    }
                    next[(ii, jj)] = acc;
                }
            }
            layer = next;
        }
        Ok(MinorTable {
            source_dim: self.source_dim,
            order: self.order,
            mat: layer,
        })
    }
}

/// Computes all order-`n` minors by Laplace expansion, reusing the full
/// layer of order-(n-1) minors at each step.
pub fn minor_table(u: &UnitaryMatrix, n: usize) -> Result<MinorTable, FermionError> {
    MinorPlan::new(u.dim(), n)?.table(u)
}

/// Transforms amplitudes under a one-particle basis change.
pub fn change_basis(f: &FermionState, u: &UnitaryMatrix) -> Result<FermionState, FermionError> {
    if u.dim() != f.p {
        return Err(FermionError::DimMismatch {
            state: f.p,
            unitary: u.dim(),
        });
    }
    let table = minor_table(u, f.n)?;
    let amps = table.mat.matvec(&f.amps);
    Ok(FermionState::from_parts_unchecked(f.p, f.n, amps))
}

struct FermionObjective {
    state: FermionState,
    plan: MinorPlan,
}

impl FitnessFn for FermionObjective {
    fn eval(&self, x: &[f64]) -> f64 {
        let p = self.state.p;
        let h = hermitian_from_params(p, x).expect("arity is p^2");
        let u = unitary_exp(&h).expect("H is Hermitian by construction");
        let table = self.plan.table(&u).expect("plan built for this state");
        let amps = table.mat.matvec(&self.state.amps);
        shannon_entropy(amps.iter().map(|a| a.norm_sqr()))
    }
}

/// Minimizes the Slater-basis measurement entropy over one-particle basis
/// changes `U = e^{iH}` with the island GA; `p^2` real parameters.
///
/// The all-zero chromosome (identity basis change) is injected, so the
/// result never exceeds the entropy in the original basis.
pub fn ehmin_fermion(f: &FermionState, config: &GaConfig) -> Result<EhminResult, FermionError> {
    let arity = f.p * f.p;
    let objective = FermionObjective {
        state: f.clone(),
        plan: MinorPlan::new(f.p, f.n)?,
    };
    let zero = Chromosome::zeros(config.n_gen * arity);
    let report = ga::run_with_seeds(&objective, arity, config, core::slice::from_ref(&zero))?;
    Ok(EhminResult {
        value: report.best_value,
        params: report.best_params,
        epochs: report.epochs,
        evaluations: report.evaluations,
        trace: report.trace,
    })
}

/// Eigenvalues of `A A†` below this are treated as kernel (z = 0).
const KERNEL_TOL: f64 = 1e-13;

/// Eigenvalues closer than this are grouped as degenerate when pairing.
const DEGENERACY_TOL: f64 = 1e-8;

/// Canonical (Youla) form of a two-fermion state: returns a one-particle
/// unitary `U` and weights `z_i >= 0`, descending, such that
/// `change_basis(f, U)` is supported on the mode pairs `(0,1), (2,3), ..`
/// with amplitudes `z_i` and `sum z_i^2 = 1`.
///
/// Construction: the amplitudes form an antisymmetric matrix `A`; for any
/// unit eigenvector `u` of the Hermitian `A A†` with eigenvalue `z^2 > 0`,
/// the partner `w = -A conj(u) / z` is an orthonormal companion in the
/// same eigenspace, and the rows `u†, w†` of `U` turn the corresponding
/// block of `U A U^T` into `[[0, z], [-z, 0]]`. Degenerate eigenspaces are
/// swept pairwise with the same rule, orthogonalizing against pairs
/// already extracted; kernel eigenvectors fill the remaining rows.
pub fn slater_decompose(f: &FermionState) -> Result<(UnitaryMatrix, Vec<f64>), FermionError> {
    if f.n != 2 {
        return Err(FermionError::NotTwoFermion);
    }
    let p = f.p;
    let basis = fermion_basis(p, 2)?;
    let mut a = CMatrix::zeros(p, p);
    for (rank, tuple) in basis.iter().enumerate() {
        let amp = f.amps[rank];
        a[(tuple[0], tuple[1])] = amp;
        a[(tuple[1], tuple[0])] = -amp;
    }
    let b = a.mul(&a.adjoint());
    let eig = hermitian_eigen(&b)?;

    // Columns sorted by descending eigenvalue.
    let column = |k: usize| -> Vec<C64> {
        let idx = p - 1 - k;
        (0..p).map(|r| eig.vectors[(r, idx)]).collect()
    };
    let value = |k: usize| -> f64 { eig.values[p - 1 - k].max(0.0) };

    let mut pair_rows: Vec<(f64, Vec<C64>, Vec<C64>)> = Vec::new();
    let mut kernel_rows: Vec<Vec<C64>> = Vec::new();
    let mut k = 0;
    while k < p {
        // Degenerate group [k, group_end).
        let mut group_end = k + 1;
        while group_end < p && (value(group_end) - value(k)).abs() < DEGENERACY_TOL {
            group_end += 1;
        }
        if value(k) <= KERNEL_TOL {
            for g in k..group_end {
                kernel_rows.push(column(g));
            }
            k = group_end;
            continue;
        }
        // Extract pairs from this eigenspace.
        let chosen_before = pair_rows.len();
        for g in k..group_end {
            let mut u = column(g);
            // Remove components along pairs already taken from this group.
            for (_, pu, pw) in &pair_rows[chosen_before..] {
                project_out(&mut u, pu);
                project_out(&mut u, pw);
            }
            let norm = vec_norm(&u);
            if norm < 1e-6 {
                continue; // consumed by an earlier partner
            }
            scale(&mut u, 1.0 / norm);
            let mut w = apply_conj(&a, &u);
            let z = vec_norm(&w);
            if z <= libm::sqrt(KERNEL_TOL) {
                return Err(FermionError::ConvergenceFailure);
            }
            scale(&mut w, -1.0 / z);
            for (_, pu, pw) in &pair_rows[chosen_before..] {
                project_out(&mut w, pu);
                project_out(&mut w, pw);
            }
            project_out(&mut w, &u);
            let wn = vec_norm(&w);
            if wn < 1e-6 {
                return Err(FermionError::ConvergenceFailure);
            }
            scale(&mut w, 1.0 / wn);
            pair_rows.push((z, u, w));
        }
        k = group_end;
    }

    if 2 * pair_rows.len() + kernel_rows.len() != p {
        return Err(FermionError::ConvergenceFailure);
    }

    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(p);
    let mut weights = Vec::with_capacity(pair_rows.len());
    for (z, u, w) in &pair_rows {
        weights.push(*z);
        rows.push(u.iter().map(|x| x.conj()).collect());
        rows.push(w.iter().map(|x| x.conj()).collect());
    }
    for kv in &kernel_rows {
        rows.push(kv.iter().map(|x| x.conj()).collect());
    }
    let row_refs: Vec<&[C64]> = rows.iter().map(|r| r.as_slice()).collect();
    let u = UnitaryMatrix::new(CMatrix::from_rows(&row_refs))
        .map_err(|_| FermionError::ConvergenceFailure)?;
    Ok((u, weights))
}

fn vec_norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>())
}

fn scale(v: &mut [C64], s: f64) {
    for x in v {
        *x *= s;
    }
}

/// `v -= <basis, v> basis` for a unit `basis`.
fn project_out(v: &mut [C64], basis: &[C64]) {
    let overlap: C64 = basis.iter().zip(v.iter()).map(|(b, x)| b.conj() * x).sum();
    for (x, b) in v.iter_mut().zip(basis) {
        *x -= overlap * b;
    }
}

/// `A conj(u)`.
fn apply_conj(a: &CMatrix, u: &[C64]) -> Vec<C64> {
    let conj: Vec<C64> = u.iter().map(|x| x.conj()).collect();
    a.matvec(&conj)
}

/// True iff all squared-amplitude mass outside the designated mode pairs
/// `(0,1), (2,3), ..` is below `tol`. Two-fermion states only.
pub fn is_slater_form(f: &FermionState, tol: f64) -> Result<bool, FermionError> {
    if f.n != 2 {
        return Err(FermionError::NotTwoFermion);
    }
    let basis = fermion_basis(f.p, 2)?;
    let mut outside = 0.0;
    for (rank, tuple) in basis.iter().enumerate() {
        let is_slot = tuple[0] % 2 == 0 && tuple[1] == tuple[0] + 1;
        if !is_slot {
            outside += f.amps[rank].norm_sqr();
        }
    }
    Ok(outside < tol)
}

/// Entropy of Slater-decomposition weights: `-sum z_i^2 ln z_i^2`.
pub fn slater_entropy(weights: &[f64]) -> f64 {
    shannon_entropy(weights.iter().map(|z| z * z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_unitary(p: usize, seed: u64) -> UnitaryMatrix {
        let mut rng = rng::stream_rng(seed, 9);
        let params: Vec<f64> = (0..p * p)
            .map(|_| rng::uniform_range(&mut rng, -2.0, 2.0))
            .collect();
        unitary_exp(&hermitian_from_params(p, &params).unwrap()).unwrap()
    }

    #[test]
    fn basis_enumeration_matches_lexicographic_order() {
        let b = fermion_basis(3, 2).unwrap();
        assert_eq!(b, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let b = fermion_basis(4, 1).unwrap();
        assert_eq!(b, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(fermion_basis(6, 3).unwrap().len(), 20);
    }

    #[test]
    fn basis_rejects_bad_order() {
        assert!(matches!(
            fermion_basis(3, 0),
            Err(FermionError::BadOrder { .. })
        ));
        assert!(matches!(
            fermion_basis(3, 4),
            Err(FermionError::BadOrder { .. })
        ));
    }

    #[test]
    fn lex_rank_inverts_enumeration() {
        for (p, n) in [(5, 2), (6, 3), (7, 4)] {
            let basis = fermion_basis(p, n).unwrap();
            for (rank, tuple) in basis.iter().enumerate() {
                assert_eq!(lex_rank(tuple, p), rank, "tuple {tuple:?}");
            }
        }
    }

    #[test]
    fn minor_table_of_identity_is_identity() {
        for (p, n) in [(4, 2), (5, 3)] {
            let table = minor_table(&UnitaryMatrix::identity(p), n).unwrap();
            let size = binomial(p, n);
            assert!(table.matrix().max_abs_diff(&CMatrix::identity(size)) < 1e-14);
        }
    }

    #[test]
    fn minor_table_of_order_one_is_the_matrix() {
        let u = random_unitary(4, 1);
        let table = minor_table(&u, 1).unwrap();
        assert!(table.matrix().max_abs_diff(u.matrix()) == 0.0);
    }

    #[test]
    fn full_order_minor_is_determinant_of_modulus_one() {
        let u = random_unitary(4, 2);
        let table = minor_table(&u, 4).unwrap();
        assert_eq!(table.matrix().rows(), 1);
        let det = table.matrix()[(0, 0)];
        assert!(
            (det.norm() - 1.0).abs() < 1e-10,
            "det modulus {}",
            det.norm()
        );
    }

    #[test]
    fn minor_table_is_unitary_for_small_systems() {
        for (p, n) in [(4, 2), (5, 2), (6, 3), (8, 4)] {
            let u = random_unitary(p, p as u64 + n as u64);
            let table = minor_table(&u, n).unwrap();
            assert!(
                table.matrix().is_unitary(1e-8),
                "exterior power not unitary for p={p}, n={n}"
            );
        }
    }

    #[test]
    fn minor_table_multiplicativity() {
        // Cauchy-Binet: table(UV) = table(U) table(V)
        for (p, n) in [(4, 2), (5, 3)] {
            let u = random_unitary(p, 21);
            let v = random_unitary(p, 22);
            let uv = UnitaryMatrix::new(u.matrix().mul(v.matrix())).unwrap();
            let lhs = minor_table(&uv, n).unwrap();
            let rhs = minor_table(&u, n)
                .unwrap()
                .matrix()
                .mul(minor_table(&v, n).unwrap().matrix());
            assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-7, "p={p}, n={n}");
        }
    }

    #[test]
    fn change_basis_with_identity_is_identity() {
        let f = random_fermion_state(5, 2, 3).unwrap();
        let g = change_basis(&f, &UnitaryMatrix::identity(5)).unwrap();
        assert!(f.max_abs_diff(&g) < 1e-14);
    }

    #[test]
    fn change_basis_preserves_norm() {
        for seed in 0..4 {
            let f = random_fermion_state(6, 3, seed).unwrap();
            let u = random_unitary(6, seed + 70);
            let g = change_basis(&f, &u).unwrap();
            assert!((g.norm() - 1.0).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn change_basis_inverts_under_adjoint() {
        let f = random_fermion_state(5, 2, 8).unwrap();
        let u = random_unitary(5, 80);
        let g = change_basis(&change_basis(&f, &u).unwrap(), &u.adjoint()).unwrap();
        assert!(f.max_abs_diff(&g) < 1e-8);
    }

    #[test]
    fn change_basis_rejects_dim_mismatch() {
        let f = random_fermion_state(5, 2, 8).unwrap();
        assert!(matches!(
            change_basis(&f, &UnitaryMatrix::identity(4)),
            Err(FermionError::DimMismatch { .. })
        ));
    }

    #[test]
    fn entropy_of_single_determinant_is_zero() {
        let f = FermionState::single_determinant(4, 2, &[0, 1]).unwrap();
        assert_eq!(f.meas_entropy(), 0.0);
    }

    #[test]
    fn entropy_of_two_term_state_is_ln2() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 6];
        amps[0] = c(h, 0.0); // (0,1)
        amps[5] = c(h, 0.0); // (2,3)
        let f = FermionState::new(4, 2, amps).unwrap();
        assert!((f.meas_entropy() - core::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_uniform_state_is_ln_count() {
        let amps = vec![c(1.0, 0.0); 6];
        let f = FermionState::new(4, 2, amps).unwrap();
        assert!((f.meas_entropy() - libm::log(6.0)).abs() < 1e-12);
    }

    #[test]
    fn slater_decompose_is_fixed_point_on_slater_states() {
        let a = libm::sqrt(0.5);
        let b = libm::sqrt(0.5);
        let mut amps = vec![c(0.0, 0.0); 6];
        amps[0] = c(a, 0.0);
        amps[5] = c(b, 0.0);
        let f = FermionState::new(4, 2, amps).unwrap();
        let (_, z) = slater_decompose(&f).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0] - a).abs() < 1e-9);
        assert!((z[1] - b).abs() < 1e-9);
    }

    #[test]
    fn slater_decompose_weights_are_normalized() {
        for seed in 0..6 {
            let f = random_fermion_state(4, 2, seed + 10).unwrap();
            let (_, z) = slater_decompose(&f).unwrap();
            let sum: f64 = z.iter().map(|x| x * x).sum();
            assert!((sum - 1.0).abs() < 1e-8, "seed {seed}: sum {sum}");
        }
    }

    #[test]
    fn slater_decompose_output_is_in_slater_form() {
        for (p, seed) in [(4usize, 0u64), (4, 1), (6, 2), (6, 3), (5, 4)] {
            let f = random_fermion_state(p, 2, seed + 30).unwrap();
            let (u, z) = slater_decompose(&f).unwrap();
            let g = change_basis(&f, &u).unwrap();
            assert!(
                is_slater_form(&g, 1e-7).unwrap(),
                "p={p} seed={seed} not in slater form"
            );
            // Pair-slot amplitudes match the weights up to phase.
            for (i, &zi) in z.iter().enumerate() {
                let slot = lex_rank(&[2 * i, 2 * i + 1], p);
                assert!(
                    (g.amplitudes()[slot].norm() - zi).abs() < 1e-7,
                    "p={p} seed={seed} slot {i}: {} vs {zi}",
                    g.amplitudes()[slot].norm()
                );
            }
        }
    }

    #[test]
    fn slater_entropy_never_exceeds_ambient_entropy() {
        for seed in 0..10 {
            let f = random_fermion_state(6, 2, seed + 400).unwrap();
            let (_, z) = slater_decompose(&f).unwrap();
            assert!(slater_entropy(&z) <= f.meas_entropy() + 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn slater_decompose_handles_degenerate_weights() {
        // Equal weights force a 4-fold degenerate eigenvalue of A A†.
        let h = libm::sqrt(0.5);
        let mut amps = vec![c(0.0, 0.0); 15]; // p = 6
        let basis = fermion_basis(6, 2).unwrap();
        let r1 = basis.iter().position(|t| t == &[0, 3]).unwrap();
        let r2 = basis.iter().position(|t| t == &[1, 4]).unwrap();
        amps[r1] = c(h, 0.0);
        amps[r2] = c(0.0, h);
        let f = FermionState::new(6, 2, amps).unwrap();
        let (u, z) = slater_decompose(&f).unwrap();
        assert!((z[0] - h).abs() < 1e-9 && (z[1] - h).abs() < 1e-9);
        let g = change_basis(&f, &u).unwrap();
        assert!(is_slater_form(&g, 1e-8).unwrap());
    }

    #[test]
    fn slater_decompose_extracts_three_pairs_from_one_eigenspace() {
        // Three equal weights make A A† proportional to the identity, so
        // every pair must be carved out of a single 6-dim eigenspace.
        let w = 1.0 / libm::sqrt(3.0);
        let basis = fermion_basis(6, 2).unwrap();
        let mut amps = vec![c(0.0, 0.0); 15];
        for (i, pair) in [[0usize, 5], [1, 3], [2, 4]].iter().enumerate() {
            let rank = basis.iter().position(|t| t == pair).unwrap();
            let phase = 0.7 * i as f64;
            amps[rank] = c(w * libm::cos(phase), w * libm::sin(phase));
        }
        let f = FermionState::new(6, 2, amps).unwrap();
        let (u, z) = slater_decompose(&f).unwrap();
        assert_eq!(z.len(), 3);
        for zi in &z {
            assert!((zi - w).abs() < 1e-9);
        }
        let g = change_basis(&f, &u).unwrap();
        assert!(is_slater_form(&g, 1e-8).unwrap());
    }

    #[test]
    fn slater_decompose_rejects_three_fermions() {
        let f = random_fermion_state(6, 3, 1).unwrap();
        assert!(matches!(
            slater_decompose(&f),
            Err(FermionError::NotTwoFermion)
        ));
    }

    #[test]
    fn is_slater_form_cases() {
        let f = FermionState::single_determinant(4, 2, &[0, 1]).unwrap();
        assert!(is_slater_form(&f, 1e-7).unwrap());
        let g = random_fermion_state(4, 2, 77).unwrap();
        assert!(!is_slater_form(&g, 1e-3).unwrap());
        let h = FermionState::single_determinant(4, 2, &[0, 2]).unwrap();
        assert!(!is_slater_form(&h, 1e-7).unwrap());
    }

    #[test]
    fn ehmin_fermion_of_single_determinant_is_zero() {
        let f = FermionState::single_determinant(4, 2, &[1, 2]).unwrap();
        let config = GaConfig {
            n_population: 20,
            n_bad: 5,
            n_islands: 2,
            n_epochs: 200,
            n_term: 40,
            seed: 5,
            ..GaConfig::default()
        };
        let result = ehmin_fermion(&f, &config).unwrap();
        assert!(result.value < 1e-6, "value {}", result.value);
    }

    #[test]
    fn entropy_is_locally_minimal_at_slater_form() {
        // Small Hermitian perturbations away from the Slater basis cannot
        // lower the entropy beyond second order.
        let f = random_fermion_state(4, 2, 900).unwrap();
        let (u, z) = slater_decompose(&f).unwrap();
        let base = slater_entropy(&z);
        let g = change_basis(&f, &u).unwrap();
        let mut rng = rng::stream_rng(901, 0);
        for _ in 0..100 {
            let mut params: Vec<f64> = (0..16)
                .map(|_| rng::uniform_range(&mut rng, -1.0, 1.0))
                .collect();
            let norm = libm::sqrt(params.iter().map(|x| x * x).sum::<f64>());
            for x in &mut params {
                *x *= 1e-3 / norm;
            }
            let h = hermitian_from_params(4, &params).unwrap();
            let step = unitary_exp(&h).unwrap();
            let perturbed = change_basis(&g, &step).unwrap();
            assert!(perturbed.meas_entropy() >= base - 1e-6);
        }
    }
}
