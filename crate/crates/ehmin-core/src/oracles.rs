//! Independent reference values for cross-checking GA results.
//!
//! Bipartite states have a closed answer (the reduced von Neumann
//! entropy); GHZ and W families have closed forms in their coefficients;
//! for everything else small, `brute_min` runs a multi-start Nelder-Mead
//! search that shares no code with the GA path.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cmatrix::C64;
use crate::objective::Objective;
use crate::rng;
use crate::state::{shannon_entropy, PureState, StateError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The closed-form bipartite answer needs exactly two subsystems.
    NotBipartite,
    State(StateError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotBipartite => write!(f, "state does not have exactly 2 subsystems"),
            OracleError::State(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<StateError> for OracleError {
    fn from(e: StateError) -> Self {
        OracleError::State(e)
    }
}

/// Reduced von Neumann entropy of a bipartite pure state; equals E_Hmin.
pub fn bipartite_oracle(s: &PureState) -> Result<f64, OracleError> {
    if s.num_subsystems() != 2 {
        return Err(OracleError::NotBipartite);
    }
    Ok(s.reduce(&[0])?.von_neumann_entropy()?)
}

/// Closed form for generalized GHZ states: `-sum |a_i|^2 ln |a_i|^2`.
/// Coefficients are normalized before evaluating.
pub fn ghz_oracle(coeffs: &[C64]) -> f64 {
    coefficient_entropy(coeffs)
}

/// Closed form for generalized W states: `-sum |a_i|^2 ln |a_i|^2`.
pub fn w_oracle(coeffs: &[C64]) -> f64 {
    coefficient_entropy(coeffs)
}

fn coefficient_entropy(coeffs: &[C64]) -> f64 {
    let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if total <= 0.0 {
        return 0.0;
    }
    shannon_entropy(coeffs.iter().map(|c| c.norm_sqr() / total))
}

/// Derivative-free reference minimizer: `restarts` Nelder-Mead descents
/// from seeded random points, each budgeted `local_steps` iterations.
/// Intended for small arities as an independent check on GA results.
pub fn brute_min(objective: &Objective, restarts: usize, local_steps: usize, seed: u64) -> f64 {
    let arity = objective.arity();
    let f = |x: &[f64]| objective.evaluate(x).expect("arity fixed");
    let mut best = f64::INFINITY;
    for r in 0..restarts {
        let mut rng = rng::stream_rng(seed, r as u64);
        let x0: Vec<f64> = (0..arity)
            .map(|_| rng::uniform_range(&mut rng, -3.0, 3.0))
            .collect();
        let v = nelder_mead(&f, &x0, local_steps);
        if v < best {
            best = v;
        }
    }
    best
}

/// Standard Nelder-Mead simplex descent (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Returns the best value reached.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], max_iters: usize) -> f64 {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += 0.5;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        if values[worst] - values[best] < 1e-12 {
            break;
        }

        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x / n as f64;
            }
        }

        let point_at = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = point_at(1.0);
        let fr = f(&reflected);
        if fr < values[best] {
            let expanded = point_at(2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted = point_at(-0.5);
            let fc = f(&contracted);
            if fc < values[worst] {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                let anchor = simplex[best].clone();
                for i in 0..=n {
                    if i == best {
                        continue;
                    }
                    for (x, a) in simplex[i].iter_mut().zip(&anchor) {
                        *x = a + 0.5 * (*x - a);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    values.iter().cloned().fold(f64::INFINITY, f64::min)
}
