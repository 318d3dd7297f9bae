//! Multipartite pure states and their elementary operations.
//!
//! Amplitudes are stored densely over the computational basis in row-major
//! order with the *first* subsystem most significant: for dims `[d1, .., dn]`
//! the basis label `(i1, .., in)` sits at `i1*d2*..*dn + i2*d3*..*dn + .. + in`.
//! All subsystem indices in this crate are 0-based.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cmatrix::{hermitian_eigen, CMatrix, EigenError, C64};
use crate::rng;

/// Probabilities below this are treated as exactly zero in entropy sums.
pub(crate) const PROB_FLOOR: f64 = 1e-15;

/// Input vectors with norm below this are rejected as zero.
const ZERO_NORM_TOL: f64 = 1e-12;

/// Eigenvalues of density matrices below this are clamped to zero.
const EIGENVALUE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateError {
    /// Amplitude or coefficient count does not match the declared dimensions.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    /// Vector norm is too small to normalize.
    ZeroVector,
    /// Subsystem dimension list is empty or contains a dimension < 2.
    BadDims,
    /// `keep` set for a partial trace is empty, out of range, or not proper.
    BadSubsystemIndex,
    /// Bipartition for a Schmidt decomposition does not split the system.
    BadCut,
    /// Matrix handed to a density-matrix constructor is not Hermitian.
    NotHermitian,
    /// Density matrix trace differs from one.
    NotUnitTrace,
    /// Density matrix has an eigenvalue below -1e-9.
    NotPositive,
    Eigen(EigenError),
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::LengthMismatch { expected, got } => {
                write!(
                    f,
                    "amplitude length {got} does not match dimension product {expected}"
                )
            }
            StateError::ZeroVector => write!(f, "vector norm is below 1e-12"),
            StateError::BadDims => {
                write!(f, "dimension list must be nonempty with every entry >= 2")
            }
            StateError::BadSubsystemIndex => {
                write!(f, "subsystem set must be a nonempty proper subset")
            }
            StateError::BadCut => {
                write!(f, "cut must split the subsystems into two nonempty parts")
            }
            StateError::NotHermitian => write!(f, "matrix is not Hermitian"),
            StateError::NotUnitTrace => write!(f, "density matrix trace is not 1"),
            StateError::NotPositive => write!(f, "density matrix is not positive semidefinite"),
            StateError::Eigen(e) => write!(f, "eigendecomposition failed: {e}"),
        }
    }
}

impl core::error::Error for StateError {}

impl From<EigenError> for StateError {
    fn from(e: EigenError) -> Self {
        StateError::Eigen(e)
    }
}

/// Shannon entropy in nats of a probability distribution, with `0 ln 0 = 0`.
pub fn shannon_entropy(probs: impl IntoIterator<Item = f64>) -> f64 {
    let mut h = 0.0;
    for p in probs {
        if p > PROB_FLOOR {
            h -= p * libm::log(p);
        }
    }
    h.max(0.0)
}

/// A normalized pure state of an n-qudit system with per-subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl PureState {
    /// Builds a state from amplitudes, renormalizing to exact unit norm.
    ///
    /// Inputs carrying rounded decimals are accepted; only vectors with norm
    /// below 1e-12 are rejected.
    pub fn new(dims: &[usize], amps: Vec<C64>) -> Result<Self, StateError> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(StateError::BadDims);
        }
        let expected: usize = dims.iter().product();
        if amps.len() != expected {
            return Err(StateError::LengthMismatch {
                expected,
                got: amps.len(),
            });
        }
        let mut amps = amps;
        let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm < ZERO_NORM_TOL {
            return Err(StateError::ZeroVector);
        }
        let inv = 1.0 / norm;
        for a in &mut amps {
            *a *= inv;
        }
        Ok(PureState {
            dims: dims.to_vec(),
            amps,
        })
    }

    /// Wraps amplitudes that are already unit-norm by construction.
    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, amps: Vec<C64>) -> Self {
        PureState { dims, amps }
    }

    /// Computational basis state `|i1 i2 .. in>`.
    pub fn basis_state(dims: &[usize], levels: &[usize]) -> Result<Self, StateError> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(StateError::BadDims);
        }
        if levels.len() != dims.len() || levels.iter().zip(dims).any(|(&l, &d)| l >= d) {
            return Err(StateError::BadSubsystemIndex);
        }
        let strides = strides(dims);
        let idx: usize = levels.iter().zip(&strides).map(|(&l, &s)| l * s).sum();
        let mut amps = vec![C64::new(0.0, 0.0); dims.iter().product()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(PureState {
            dims: dims.to_vec(),
            amps,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    /// Measurement outcome probabilities `|a_i|^2` in basis order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Tensor product; dims concatenate and amplitudes form the flattened
    /// outer product, consistent with the row-major index convention.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState { dims, amps }
    }

    /// Shannon entropy (nats) of a computational-basis measurement.
    pub fn meas_entropy(&self) -> f64 {
        shannon_entropy(self.amps.iter().map(|a| a.norm_sqr()))
    }

    /// Partial trace onto the `keep` subsystems (0-based, any order; the
    /// result is ordered by ascending subsystem index).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix, StateError> {
        let n = self.dims.len();
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() || keep.len() == n || keep.iter().any(|&k| k >= n) {
            return Err(StateError::BadSubsystemIndex);
        }
        let rest: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let keep_dims: Vec<usize> = keep.iter().map(|&i| self.dims[i]).collect();
        let keep_offsets = subspace_offsets(&self.dims, &keep);
        let rest_offsets = subspace_offsets(&self.dims, &rest);
        let dk: usize = keep_dims.iter().product();

        let mut rho = CMatrix::zeros(dk, dk);
        for &ro in &rest_offsets {
            for (k1, &o1) in keep_offsets.iter().enumerate() {
                let a1 = self.amps[o1 + ro];
                if a1.norm_sqr() == 0.0 {
                    continue;
                }
                for (k2, &o2) in keep_offsets.iter().enumerate() {
                    rho[(k1, k2)] += a1 * self.amps[o2 + ro].conj();
                }
            }
        }
        // Symmetrize away accumulation roundoff.
        for r in 0..dk {
            rho[(r, r)] = C64::new(rho[(r, r)].re, 0.0);
            for c in r + 1..dk {
                let avg = (rho[(r, c)] + rho[(c, r)].conj()) * 0.5;
                rho[(r, c)] = avg;
                rho[(c, r)] = avg.conj();
            }
        }
        Ok(DensityMatrix {
            dims: keep_dims,
            mat: rho,
        })
    }

    /// Schmidt coefficients across the bipartition `cut | complement`,
    /// returned descending. Their squares sum to one.
    pub fn schmidt_coefficients(&self, cut: &[usize]) -> Result<Vec<f64>, StateError> {
        let n = self.dims.len();
        let mut side_a: Vec<usize> = cut.to_vec();
        side_a.sort_unstable();
        side_a.dedup();
        if side_a.is_empty() || side_a.len() == n || side_a.iter().any(|&i| i >= n) {
            return Err(StateError::BadCut);
        }
        let side_b: Vec<usize> = (0..n).filter(|i| !side_a.contains(i)).collect();
        let a_offsets = subspace_offsets(&self.dims, &side_a);
        let b_offsets = subspace_offsets(&self.dims, &side_b);
        let (da, db) = (a_offsets.len(), b_offsets.len());

        // Gram matrix on the smaller side: its eigenvalues are the squared
        // Schmidt coefficients.
        let k = da.min(db);
        let gram = if da <= db {
            CMatrix::from_fn(da, da, |r, c| {
                let mut acc = C64::new(0.0, 0.0);
                for &bo in &b_offsets {
                    acc += self.amps[a_offsets[r] + bo] * self.amps[a_offsets[c] + bo].conj();
                }
                acc
            })
        } else {
            CMatrix::from_fn(db, db, |r, c| {
                let mut acc = C64::new(0.0, 0.0);
                for &ao in &a_offsets {
                    acc += self.amps[ao + b_offsets[r]] * self.amps[ao + b_offsets[c]].conj();
                }
                acc
            })
        };
        let eig = hermitian_eigen(&gram)?;
        let mut coeffs: Vec<f64> = eig
            .values
            .iter()
            .rev()
            .take(k)
            .map(|&l| libm::sqrt(l.max(0.0)))
            .collect();
        coeffs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(coeffs)
    }

    /// Largest absolute amplitude difference; handy for exact-state checks.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        assert_eq!(self.dims, other.dims);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Row-major strides: `strides[j] = d_{j+1} * .. * d_n`.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        s[j] = s[j + 1] * dims[j + 1];
    }
    s
}

/// Flat-index contributions of every joint level of the `subset` subsystems,
/// enumerated in row-major order over the subset.
fn subspace_offsets(dims: &[usize], subset: &[usize]) -> Vec<usize> {
    let strides = strides(dims);
    let mut offsets = vec![0usize];
    for &j in subset {
        let mut next = Vec::with_capacity(offsets.len() * dims[j]);
        for &o in &offsets {
            for level in 0..dims[j] {
                next.push(o + level * strides[j]);
            }
        }
        offsets = next;
    }
    offsets
}

/// Reduced (or full) density matrix over the retained subsystems.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and positive
    /// semidefiniteness (eigenvalues >= -1e-9).
    pub fn new(dims: &[usize], mat: CMatrix) -> Result<Self, StateError> {
        let expected: usize = dims.iter().product();
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(StateError::BadDims);
        }
        if !mat.is_square() || mat.rows() != expected {
            return Err(StateError::LengthMismatch {
                expected,
                got: mat.rows(),
            });
        }
        if !mat.is_hermitian(1e-10) {
            return Err(StateError::NotHermitian);
        }
        if (mat.trace().re - 1.0).abs() > 1e-10 || mat.trace().im.abs() > 1e-10 {
            return Err(StateError::NotUnitTrace);
        }
        let eig = hermitian_eigen(&mat)?;
        if eig.values.iter().any(|&l| l < -1e-9) {
            return Err(StateError::NotPositive);
        }
        Ok(DensityMatrix {
            dims: dims.to_vec(),
            mat,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Diagonal entries, i.e. the computational-basis outcome distribution.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).collect()
    }

    /// Von Neumann entropy in nats; eigenvalues below 1e-12 are clamped to
    /// zero before the `-sum(l ln l)`.
    pub fn von_neumann_entropy(&self) -> Result<f64, StateError> {
        let eig = hermitian_eigen(&self.mat)?;
        Ok(shannon_entropy(eig.values.iter().map(|&l| {
            if l < EIGENVALUE_FLOOR {
                0.0
            } else {
                l
            }
        })))
    }
}

/// Generalized GHZ state `sum_i c_i |i>^{tensor n}` on n qudits of dimension d.
pub fn ghz_state(d: usize, n: usize, coeffs: &[C64]) -> Result<PureState, StateError> {
    if d < 2 || n == 0 {
        return Err(StateError::BadDims);
    }
    if coeffs.len() != d {
        return Err(StateError::LengthMismatch {
            expected: d,
            got: coeffs.len(),
        });
    }
    let total: usize = d.pow(n as u32);
    // |i..i> sits at i * (d^n - 1)/(d - 1).
    let step = (total - 1) / (d - 1);
    let mut amps = vec![C64::new(0.0, 0.0); total];
    for (i, &c) in coeffs.iter().enumerate() {
        amps[i * step] = c;
    }
    PureState::new(&vec![d; n], amps)
}

/// Generalized W state `a_1|0..01> + a_2|0..10> + .. + a_n|1..00>` on n qubits.
pub fn w_state(coeffs: &[C64]) -> Result<PureState, StateError> {
    let n = coeffs.len();
    if n == 0 {
        return Err(StateError::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (k, &c) in coeffs.iter().enumerate() {
        amps[1 << k] = c;
    }
    PureState::new(&vec![2; n], amps)
}

/// Haar-uniform random state: i.i.d. standard complex Gaussian amplitudes,
/// normalized. Reproducible for a fixed seed.
pub fn random_state(dims: &[usize], seed: u64) -> Result<PureState, StateError> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(StateError::BadDims);
    }
    let total: usize = dims.iter().product();
    let mut rng = rng::stream_rng(seed, 0);
    let mut amps = Vec::with_capacity(total);
    for _ in 0..total {
        let (re, im) = rng::normal_pair(&mut rng);
        amps.push(C64::new(re, im));
    }
    PureState::new(dims, amps)
}
