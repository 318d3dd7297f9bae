//! JSON reports printed to stdout and line-delimited convergence traces.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use ehmin_core::ga::EpochStat;
use ehmin_core::EhminResult;

use crate::CliError;

pub const LN_2: f64 = core::f64::consts::LN_2;

#[derive(Debug, Serialize)]
pub struct EhminReport {
    pub value: f64,
    pub params: Vec<f64>,
    pub epochs: usize,
    pub evaluations: u64,
    pub islands: usize,
    pub seed: u64,
}

impl EhminReport {
    pub fn new(result: &EhminResult, seed: u64, bits: bool) -> Self {
        EhminReport {
            value: scaled(result.value, bits),
            params: result.params.clone(),
            epochs: result.epochs,
            evaluations: result.evaluations,
            islands: result.trace.len(),
            seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub ehmin: f64,
    pub oracle: f64,
    pub gap: f64,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SlaterReport {
    pub weights: Vec<f64>,
    pub entropy: f64,
}

/// Entropy in nats, or bits when `--bits` is set.
pub fn scaled(nats: f64, bits: bool) -> f64 {
    if bits {
        nats / LN_2
    } else {
        nats
    }
}

pub fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string(report).expect("reports serialize")
    );
}

#[derive(Serialize)]
struct TraceLine {
    epoch: usize,
    island: usize,
    best: f64,
    mean: f64,
}

/// One JSON object per line: {"epoch", "island", "best", "mean"}, in
/// chronological order. Entropy values are in nats.
pub fn write_trace(path: &Path, trace: &[Vec<EpochStat>]) -> Result<(), CliError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(|e| {
        CliError::runtime(format!("cannot create trace file {}: {e}", path.display()))
    })?);
    let epochs = trace.iter().map(|t| t.len()).max().unwrap_or(0);
    for epoch in 0..epochs {
        for (island, stats) in trace.iter().enumerate() {
            if let Some(stat) = stats.get(epoch) {
                let line = TraceLine {
                    epoch,
                    island,
                    best: stat.best,
                    mean: stat.mean,
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&line).expect("trace serializes")
                )
                .map_err(|e| CliError::runtime(format!("trace write failed: {e}")))?;
            }
        }
    }
    Ok(())
}
