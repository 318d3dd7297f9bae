//! The minimized scalar: measurement entropy after a parametrized local
//! basis change, and the `ehmin` entry point wrapping the GA.

use alloc::vec::Vec;
use core::fmt;

use crate::ga::{self, Chromosome, EpochStat, FitnessFn, GaConfig, GaError};
use crate::state::PureState;
use crate::unitary::{apply_local, local_unitaries_from_params, total_arity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveError {
    /// Parameter vector length does not match the objective arity.
    ArityMismatch { expected: usize, got: usize },
}

impl fmt::Display for ObjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveError::ArityMismatch { expected, got } => {
                write!(f, "parameter vector has length {got}, expected {expected}")
            }
        }
    }
}

impl core::error::Error for ObjectiveError {}

/// `f(x) = H_meas((U(x_1..x_k) (x) .. (x) U(..x_{nk})) |psi>)`, the
/// function the GA minimizes. Pure and reentrant: one instance may be
/// evaluated from many workers at once.
#[derive(Debug, Clone)]
pub struct Objective {
    state: PureState,
    arity: usize,
}

impl Objective {
    pub fn new(state: PureState) -> Self {
        let arity = total_arity(state.dims());
        Objective { state, arity }
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    /// Total real parameter count: 3 per qubit, `d^2` per larger subsystem.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, ObjectiveError> {
        if x.len() != self.arity {
            return Err(ObjectiveError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.eval_params(x))
    }

    fn eval_params(&self, x: &[f64]) -> f64 {
        let us =
            local_unitaries_from_params(self.state.dims(), x).expect("arity checked against dims");
        apply_local(&self.state, &us)
            .expect("unitaries built for these dims")
            .meas_entropy()
    }
}

impl FitnessFn for Objective {
    fn eval(&self, x: &[f64]) -> f64 {
        self.eval_params(x)
    }
}

/// Result of an E_Hmin minimization.
#[derive(Debug, Clone)]
pub struct EhminResult {
    /// Best (smallest) measurement entropy found, in nats.
    pub value: f64,
    /// Local-unitary parameters attaining it.
    pub params: Vec<f64>,
    /// Epochs run.
    pub epochs: usize,
    /// Total objective evaluations.
    pub evaluations: u64,
    /// Per-island, per-epoch best/mean fitness.
    pub trace: Vec<Vec<EpochStat>>,
}

/// Minimizes the measurement entropy of `state` over local basis changes
/// with the island GA.
///
/// The all-zero chromosome (identity unitaries) is injected into the
/// initial population, so the result never exceeds `state.meas_entropy()`.
pub fn ehmin(state: &PureState, config: &GaConfig) -> Result<EhminResult, GaError> {
    let objective = Objective::new(state.clone());
    let arity = objective.arity();
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
