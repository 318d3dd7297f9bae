//! Command line front end for E_Hmin computations.
//!
//! Subcommands load JSON state files, run the island-GA minimization of
//! measurement entropy (qudit or fermionic), compare against analytic
//! oracles, and generate seeded random states. Reports are single-line
//! JSON on stdout; optional per-epoch traces go to a file as one JSON
//! object per line. All commands are deterministic for a fixed --seed.

mod formats;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ehmin_core::fermion::{ehmin_fermion, slater_decompose, slater_entropy};
use ehmin_core::ga::GaConfig;
use ehmin_core::oracles::{bipartite_oracle, ghz_oracle, w_oracle};
use ehmin_core::state::random_state;
use ehmin_core::{ehmin, PureState, C64};

use report::{print_json, scaled, write_trace, EhminReport, SlaterReport, VerifyReport};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError { code: 2, message }
    }

    pub fn config(message: String) -> Self {
        CliError { code: 3, message }
    }

    pub fn runtime(message: String) -> Self {
        CliError { code: 1, message }
    }
}

#[derive(Parser)]
#[command(
    name = "ehmin",
    about = "Minimal measurement entropy (E_Hmin) for multipartite and fermionic pure states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize measurement entropy of a qudit state over local unitaries.
    Ehmin {
        /// State file: {"dims": [..], "amplitudes": [[re, im], ..]}
        state_file: PathBuf,
        #[command(flatten)]
        ga: GaFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Run ehmin and the matching analytic oracle (bipartite, GHZ or W).
    Verify {
        state_file: PathBuf,
        #[command(flatten)]
        ga: GaFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Write a seeded Haar-random state file.
    Random {
        /// Subsystem dimensions, e.g. --dims 2,2,2
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path for the state file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fermionic states: GA minimization or two-fermion Slater weights.
    Fermion {
        #[command(subcommand)]
        command: FermionCommand,
    },
}

#[derive(Subcommand)]
enum FermionCommand {
    /// Minimize Slater-basis entropy over one-particle basis changes.
    Ehmin {
        /// Fermion file: {"p": p, "n": n, "amplitudes": [[re, im], ..]}
        fermion_file: PathBuf,
        #[command(flatten)]
        ga: GaFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Slater decomposition weights and their entropy (n = 2 only).
    Slater {
        fermion_file: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
    },
}

/// GA hyperparameters; defaults match `GaConfig::default()`.
#[derive(Args)]
struct GaFlags {
    /// Genes per objective parameter.
    #[arg(long, default_value_t = GaConfig::default().n_gen)]
    n_gen: usize,
    /// Chromosomes per island.
    #[arg(long, default_value_t = GaConfig::default().n_population)]
    n_population: usize,
    /// Weakest chromosomes excluded from reproduction.
    #[arg(long, default_value_t = GaConfig::default().n_bad)]
    n_bad: usize,
    /// Per-gene mutation probability.
    #[arg(long, default_value_t = GaConfig::default().p_mut)]
    p_mut: f64,
    /// Mutation offset half-range.
    #[arg(long, default_value_t = GaConfig::default().m_mut)]
    m_mut: f64,
    /// Initialization half-range.
    #[arg(long, default_value_t = GaConfig::default().m_init)]
    m_init: f64,
    /// Maximum epochs.
    #[arg(long, default_value_t = GaConfig::default().n_epochs)]
    n_epochs: usize,
    /// Stagnation tolerance.
    #[arg(long, default_value_t = GaConfig::default().epsilon)]
    epsilon: f64,
    /// Stagnation window in epochs.
    #[arg(long, default_value_t = GaConfig::default().n_term)]
    n_term: usize,
    /// Independent islands.
    #[arg(long, default_value_t = GaConfig::default().n_islands)]
    n_islands: usize,
    /// Per-island, per-epoch migration probability.
    #[arg(long, default_value_t = GaConfig::default().p_mig)]
    p_mig: f64,
    /// RNG seed; fixed seed means bit-identical reports.
    #[arg(long, default_value_t = GaConfig::default().seed)]
    seed: u64,
}

impl GaFlags {
    fn to_config(&self) -> Result<GaConfig, CliError> {
        let config = GaConfig {
            n_gen: self.n_gen,
            n_population: self.n_population,
            n_bad: self.n_bad,
            p_mut: self.p_mut,
            m_mut: self.m_mut,
            m_init: self.m_init,
            n_epochs: self.n_epochs,
            epsilon: self.epsilon,
            n_term: self.n_term,
            n_islands: self.n_islands,
            p_mig: self.p_mig,
            seed: self.seed,
        };
        config
            .validate()
            .map_err(|e| CliError::config(format!("{e}")))?;
        Ok(config)
    }
}

#[derive(Args)]
struct OutputFlags {
    /// Write per-epoch records to this file, one JSON object per line.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Report entropies in bits instead of nats.
    #[arg(long)]
    bits: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ehmin {
            state_file,
            ga,
            output,
        } => cmd_ehmin(&state_file, &ga, &output),
        Command::Verify {
            state_file,
            ga,
            output,
        } => cmd_verify(&state_file, &ga, &output),
        Command::Random { dims, seed, out } => cmd_random(&dims, seed, &out),
        Command::Fermion { command } => match command {
            FermionCommand::Ehmin {
                fermion_file,
                ga,
                output,
            } => cmd_fermion_ehmin(&fermion_file, &ga, &output),
            FermionCommand::Slater {
                fermion_file,
                output,
            } => cmd_fermion_slater(&fermion_file, &output),
        },
    }
}

fn cmd_ehmin(path: &std::path::Path, ga: &GaFlags, output: &OutputFlags) -> Result<(), CliError> {
    let state = formats::read_state(path)?;
    let config = ga.to_config()?;
    let result = ehmin(&state, &config).map_err(|e| CliError::runtime(format!("{e}")))?;
    if let Some(trace_path) = &output.trace {
        write_trace(trace_path, &result.trace)?;
    }
    print_json(&EhminReport::new(&result, config.seed, output.bits));
    Ok(())
}

fn cmd_verify(path: &std::path::Path, ga: &GaFlags, output: &OutputFlags) -> Result<(), CliError> {
    let state = formats::read_state(path)?;
    let config = ga.to_config()?;
    let (kind, oracle) = match detect_oracle(&state) {
        Some(found) => found,
        None => {
            return Err(CliError::runtime(
                "no oracle applicable: state is neither bipartite nor GHZ- nor W-shaped".into(),
            ))
        }
    };
    let result = ehmin(&state, &config).map_err(|e| CliError::runtime(format!("{e}")))?;
    if let Some(trace_path) = &output.trace {
        write_trace(trace_path, &result.trace)?;
    }
    print_json(&VerifyReport {
        kind,
        ehmin: scaled(result.value, output.bits),
        oracle: scaled(oracle, output.bits),
        gap: scaled((result.value - oracle).abs(), output.bits),
        seed: config.seed,
    });
    Ok(())
}

fn cmd_random(dims: &[usize], seed: u64, out: &std::path::Path) -> Result<(), CliError> {
    let state = random_state(dims, seed)
        .map_err(|e| CliError::config(format!("invalid dims {dims:?}: {e}")))?;
    formats::write_state(out, &state)
}

fn cmd_fermion_ehmin(
    path: &std::path::Path,
    ga: &GaFlags,
    output: &OutputFlags,
) -> Result<(), CliError> {
    let state = formats::read_fermion(path)?;
    let config = ga.to_config()?;
    let result = ehmin_fermion(&state, &config).map_err(|e| CliError::runtime(format!("{e}")))?;
    if let Some(trace_path) = &output.trace {
        write_trace(trace_path, &result.trace)?;
    }
    print_json(&EhminReport::new(&result, config.seed, output.bits));
    Ok(())
}

fn cmd_fermion_slater(path: &std::path::Path, output: &OutputFlags) -> Result<(), CliError> {
    let state = formats::read_fermion(path)?;
    let (_, weights) = slater_decompose(&state).map_err(|e| CliError::runtime(format!("{e}")))?;
    print_json(&SlaterReport {
        entropy: scaled(slater_entropy(&weights), output.bits),
        weights,
    });
    Ok(())
}

/// Amplitudes below this count as zero when classifying support patterns.
const SUPPORT_TOL: f64 = 1e-9;

/// Picks the analytic oracle matching the state's support pattern:
/// bipartite states always qualify; otherwise GHZ-shaped (support on
/// |i..i>) and W-shaped (single-excitation qubit support) are recognized.
fn detect_oracle(state: &PureState) -> Option<(&'static str, f64)> {
    if state.num_subsystems() == 2 {
        return Some(("bipartite", bipartite_oracle(state).ok()?));
    }
    let dims = state.dims();
    if dims.len() < 2 {
        return None;
    }
    let d = dims[0];
    if dims.iter().all(|&x| x == d) {
        let step = (state.total_dim() - 1) / (d - 1);
        let diagonal = |idx: usize| idx.is_multiple_of(step) && idx / step < d;
        if support_within(state, diagonal) {
            let coeffs: Vec<C64> = (0..d).map(|i| state.amplitudes()[i * step]).collect();
            return Some(("ghz", ghz_oracle(&coeffs)));
        }
    }
    if dims.iter().all(|&x| x == 2) {
        let single_excitation = |idx: usize| idx != 0 && idx & (idx - 1) == 0;
        if support_within(state, single_excitation) {
            let n = dims.len();
            let coeffs: Vec<C64> = (0..n).map(|k| state.amplitudes()[1 << k]).collect();
            return Some(("w", w_oracle(&coeffs)));
        }
    }
    None
}

fn support_within(state: &PureState, allowed: impl Fn(usize) -> bool) -> bool {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .all(|(idx, amp)| allowed(idx) || amp.norm() <= SUPPORT_TOL)
}
