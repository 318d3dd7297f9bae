//! Local unitary matrices parametrized by real vectors.
//!
//! Qubit subsystems use the closed 3-angle form; larger subsystems are
//! parametrized by `d^2` real numbers filling a Hermitian matrix `H`
//! (diagonal first, then the strict upper triangle as re/im pairs in
//! row-major order) which is exponentiated to `U = e^{iH}` through its
//! spectral decomposition, so unitarity holds to roundoff. Tensor products
//! of local unitaries are applied axis by axis without ever materializing
//! the full product matrix, which keeps 17-qubit states tractable.

use alloc::vec::Vec;
use core::fmt;

use crate::cmatrix::{hermitian_eigen, CMatrix, EigenError, C64};
use crate::state::{strides, PureState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitaryError {
    /// Parameter vector length does not match the required arity.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    /// Matrix is not Hermitian within 1e-9.
    NotHermitian,
    /// Matrix is not unitary within 1e-9.
    NotUnitary,
    /// Unitary list does not match the state's subsystem dimensions.
    DimMismatch,
    Eigen(EigenError),
}

impl fmt::Display for UnitaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitaryError::LengthMismatch { expected, got } => {
                write!(f, "parameter vector has length {got}, expected {expected}")
            }
            UnitaryError::NotHermitian => write!(f, "matrix is not Hermitian within 1e-9"),
            UnitaryError::NotUnitary => write!(f, "matrix is not unitary within 1e-9"),
            UnitaryError::DimMismatch => write!(f, "unitaries do not match subsystem dimensions"),
            UnitaryError::Eigen(e) => write!(f, "eigendecomposition failed: {e}"),
        }
    }
}

impl core::error::Error for UnitaryError {}

impl From<EigenError> for UnitaryError {
    fn from(e: EigenError) -> Self {
        UnitaryError::Eigen(e)
    }
}

/// A square complex matrix with `U†U = I` within 1e-9.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    mat: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(mat: CMatrix) -> Result<Self, UnitaryError> {
        if !mat.is_unitary(1e-9) {
            return Err(UnitaryError::NotUnitary);
        }
        Ok(UnitaryMatrix { mat })
    }

    /// Wraps a matrix that is unitary by construction.
    pub(crate) fn new_unchecked(mat: CMatrix) -> Self {
        debug_assert!(mat.is_unitary(1e-8));
        UnitaryMatrix { mat }
    }

    pub fn identity(d: usize) -> Self {
        UnitaryMatrix {
            mat: CMatrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix {
            mat: self.mat.adjoint(),
        }
    }
}

/// The 3-angle qubit unitary
/// `[[e^{i(-b-d)} cos g, -e^{i(-b+d)} sin g], [e^{i(b-d)} sin g, e^{i(b+d)} cos g]]`.
pub fn qubit_unitary(beta: f64, delta: f64, gamma: f64) -> UnitaryMatrix {
    let (cg, sg) = (libm::cos(gamma), libm::sin(gamma));
    let phase = |t: f64| C64::new(libm::cos(t), libm::sin(t));
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = phase(-beta - delta) * cg;
    m[(0, 1)] = -phase(-beta + delta) * sg;
    m[(1, 0)] = phase(beta - delta) * sg;
    m[(1, 1)] = phase(beta + delta) * cg;
    UnitaryMatrix::new_unchecked(m)
}

/// Fills a `d x d` Hermitian matrix from `d^2` real parameters: the first
/// `d` set the diagonal, the remaining `d(d-1)` fill the strict upper
/// triangle as (re, im) pairs in row-major order.
pub fn hermitian_from_params(d: usize, params: &[f64]) -> Result<CMatrix, UnitaryError> {
    if params.len() != d * d {
        return Err(UnitaryError::LengthMismatch {
            expected: d * d,
            got: params.len(),
        });
    }
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = C64::new(params[i], 0.0);
    }
    let mut k = d;
    for r in 0..d {
        for c in r + 1..d {
            let z = C64::new(params[k], params[k + 1]);
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
            k += 2;
        }
    }
    Ok(m)
}

/// `U = e^{iH}` via the spectral decomposition `H = V diag(l) V†`.
pub fn unitary_exp(h: &CMatrix) -> Result<UnitaryMatrix, UnitaryError> {
    if !h.is_hermitian(1e-9) {
        return Err(UnitaryError::NotHermitian);
    }
    let eig = hermitian_eigen(h)?;
    let d = h.rows();
    let mut u = CMatrix::zeros(d, d);
    // V e^{i diag(l)} V† accumulated column-by-column.
    for r in 0..d {
        for c in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..d {
                let ph = C64::new(libm::cos(eig.values[k]), libm::sin(eig.values[k]));
                acc += eig.vectors[(r, k)] * ph * eig.vectors[(c, k)].conj();
            }
            u[(r, c)] = acc;
        }
    }
    Ok(UnitaryMatrix::new_unchecked(u))
}

/// Number of real parameters for one subsystem: 3 for qubits, `d^2` above.
pub fn subsystem_arity(d: usize) -> usize {
    if d == 2 {
        3
    } else {
        d * d
    }
}

/// Total parameter count for a full set of local unitaries.
pub fn total_arity(dims: &[usize]) -> usize {
    dims.iter().map(|&d| subsystem_arity(d)).sum()
}

/// One unitary per subsystem from the concatenated parameter vector.
pub fn local_unitaries_from_params(
    dims: &[usize],
    x: &[f64],
) -> Result<Vec<UnitaryMatrix>, UnitaryError> {
    let expected = total_arity(dims);
    if x.len() != expected {
        return Err(UnitaryError::LengthMismatch {
            expected,
            got: x.len(),
        });
    }
    let mut out = Vec::with_capacity(dims.len());
    let mut offset = 0;
    for &d in dims {
        let k = subsystem_arity(d);
        let params = &x[offset..offset + k];
        offset += k;
        if d == 2 {
            out.push(qubit_unitary(params[0], params[1], params[2]));
        } else {
            let h = hermitian_from_params(d, params)?;
            out.push(unitary_exp(&h)?);
        }
    }
    Ok(out)
}

/// Applies `U_1 (x) .. (x) U_n` to the state, contracting one axis at a
/// time. Norm is preserved to roundoff.
pub fn apply_local(s: &PureState, us: &[UnitaryMatrix]) -> Result<PureState, UnitaryError> {
    let dims = s.dims();
    if us.len() != dims.len() || us.iter().zip(dims).any(|(u, &d)| u.dim() != d) {
        return Err(UnitaryError::DimMismatch);
    }
    let strides = strides(dims);
    let total = s.total_dim();
    let mut amps: Vec<C64> = s.amplitudes().to_vec();
    let mut scratch: Vec<C64> = Vec::new();
    for (j, u) in us.iter().enumerate() {
        let d = dims[j];
        let stride = strides[j];
        let block = d * stride;
        let m = u.matrix();
        scratch.resize(d, C64::new(0.0, 0.0));
        let mut base = 0;
        while base < total {
            for off in 0..stride {
                let origin = base + off;
                for (r, slot) in scratch.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for c in 0..d {
                        acc += m[(r, c)] * amps[origin + c * stride];
                    }
                    *slot = acc;
                }
                for (r, slot) in scratch.iter().enumerate() {
                    amps[origin + r * stride] = *slot;
                }
            }
            base += block;
        }
    }
    Ok(PureState::from_parts_unchecked(dims.to_vec(), amps))
}
