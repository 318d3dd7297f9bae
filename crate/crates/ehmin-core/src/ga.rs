//! Island-model genetic algorithm over real-valued chromosomes.
//!
//! Each objective parameter is encoded by `n_gen` genes through the
//! decimal-positional rule `x = sum_j 10^{1-j} g_j`, so coarse genes move
//! the search between basins while fine genes refine within one. An epoch
//! draws two random pairs from the best `n_population - n_bad` members,
//! takes each pair's winner, crosses the winners gene-wise and repeats
//! until the next generation is full, then mutates every member. The best
//! chromosome of each island is carried over unmutated so the best-ever
//! fitness never regresses and the stagnation stop stays sound.
//!
//! Islands evolve independently on seed-derived RNG streams; after each
//! epoch an island migrates (probability `p_mig`) a copy of its best
//! chromosome onto the worst slot of another uniformly chosen island.
//! Runs are reproducible bit-for-bit for a fixed seed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha12Rng;
use rand_core::RngCore;

use crate::rng;

/// Maps a real parameter vector of fixed arity to a score to MINIMIZE.
/// Must be deterministic for a fixed input.
pub trait FitnessFn {
    fn eval(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> FitnessFn for F {
    fn eval(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Real-valued gene vector; `n_gen` consecutive genes encode one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub genes: Vec<f64>,
}

impl Chromosome {
    pub fn zeros(len: usize) -> Self {
        Chromosome {
            genes: vec![0.0; len],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    /// Genes per objective parameter.
    pub n_gen: usize,
    /// Chromosomes per island.
    pub n_population: usize,
    /// Weakest chromosomes excluded from reproduction.
    pub n_bad: usize,
    /// Per-gene mutation probability.
    pub p_mut: f64,
    /// Mutation offset is Uniform[-m_mut, m_mut].
    pub m_mut: f64,
    /// Initial genes are Uniform[-m_init, m_init].
    pub m_init: f64,
    /// Epoch cap.
    pub n_epochs: usize,
    /// Stagnation tolerance on the best fitness.
    pub epsilon: f64,
    /// Stagnation window: stop once the best fitnesses of this many recent
    /// epochs differ pairwise by less than `epsilon`.
    pub n_term: usize,
    /// Independent islands.
    pub n_islands: usize,
    /// Per-island, per-epoch migration probability.
    pub p_mig: f64,
    /// Seed for all derived RNG streams.
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            n_gen: 4,
            n_population: 40,
            n_bad: 10,
            p_mut: 0.05,
            m_mut: 1.0,
            m_init: 3.0,
            n_epochs: 2000,
            epsilon: 1e-6,
            n_term: 200,
            n_islands: 8,
            p_mig: 0.02,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        let ok = self.n_gen >= 1
            && self.n_population >= 4
            && self.n_bad < self.n_population
            && (0.0..=1.0).contains(&self.p_mut)
            && (0.0..=1.0).contains(&self.p_mig)
            && self.m_mut > 0.0
            && self.m_init > 0.0
            && self.epsilon >= 0.0
            && self.n_term >= 1
            && self.n_islands >= 1;
        if ok {
            Ok(())
        } else {
            Err(GaError::InvalidConfig)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaError {
    InvalidConfig,
    /// Chromosome length is not a multiple of `n_gen`.
    BadLength {
        len: usize,
        n_gen: usize,
    },
    /// Crossover parents differ in length.
    LengthMismatch {
        left: usize,
        right: usize,
    },
    /// Arity must be at least one.
    ZeroArity,
}

impl fmt::Display for GaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaError::InvalidConfig => write!(f, "invalid GA configuration"),
            GaError::BadLength { len, n_gen } => {
                write!(
                    f,
                    "chromosome length {len} is not a multiple of n_gen {n_gen}"
                )
            }
            GaError::LengthMismatch { left, right } => {
                write!(f, "crossover parents have lengths {left} and {right}")
            }
            GaError::ZeroArity => write!(f, "fitness arity must be at least 1"),
        }
    }
}

impl core::error::Error for GaError {}

/// Decodes each block of `n_gen` genes into one parameter via
/// `x = g_1 + g_2/10 + g_3/100 + ..`.
pub fn decode(c: &Chromosome, n_gen: usize) -> Result<Vec<f64>, GaError> {
    if n_gen == 0 || !c.genes.len().is_multiple_of(n_gen) {
        return Err(GaError::BadLength {
            len: c.genes.len(),
            n_gen,
        });
    }
    let mut out = Vec::with_capacity(c.genes.len() / n_gen);
    for block in c.genes.chunks(n_gen) {
        let mut x = 0.0;
        let mut scale = 1.0;
        for g in block {
            x += scale * g;
            scale *= 0.1;
        }
        out.push(x);
    }
    Ok(out)
}

/// Perturbs each gene independently with probability `p_mut` by an offset
/// drawn uniformly from `[-m_mut, m_mut]`.
pub fn mutate<R: RngCore>(c: &Chromosome, p_mut: f64, m_mut: f64, rng: &mut R) -> Chromosome {
    let genes = c
        .genes
        .iter()
        .map(|&g| {
            if rng::uniform_f64(rng) < p_mut {
                g + rng::uniform_range(rng, -m_mut, m_mut)
            } else {
                g
            }
        })
        .collect();
    Chromosome { genes }
}

/// Uniform crossover: each child gene comes from either parent with
/// probability 1/2.
pub fn crossover<R: RngCore>(
    a: &Chromosome,
    b: &Chromosome,
    rng: &mut R,
) -> Result<Chromosome, GaError> {
    if a.genes.len() != b.genes.len() {
        return Err(GaError::LengthMismatch {
            left: a.genes.len(),
            right: b.genes.len(),
        });
    }
    let genes = a
        .genes
        .iter()
        .zip(&b.genes)
        .map(|(&x, &y)| if rng.next_u64() & 1 == 0 { x } else { y })
        .collect();
    Ok(Chromosome { genes })
}

/// A chromosome together with its cached fitness.
#[derive(Debug, Clone)]
pub struct Evaluated {
    pub chromosome: Chromosome,
    pub fitness: f64,
}

/// Ranking permutation: ascending fitness, ties broken by earlier index.
fn ranking(population: &[Evaluated]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&i, &j| {
        population[i]
            .fitness
            .partial_cmp(&population[j].fitness)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    order
}

/// Tournament of a random pair drawn (with replacement) from the `n_good`
/// best ranks; returns the winner's population index.
fn pair_winner<R: RngCore>(
    order: &[usize],
    n_good: usize,
    population: &[Evaluated],
    rng: &mut R,
) -> usize {
    let r1 = rng::uniform_usize(rng, n_good);
    let r2 = rng::uniform_usize(rng, n_good);
    let (i1, i2) = (order[r1], order[r2]);
    let (f1, f2) = (population[i1].fitness, population[i2].fitness);
    // Lower fitness wins; exact ties go to the earlier rank.
    if f2 < f1 || (f2 == f1 && r2 < r1) {
        i2
    } else {
        i1
    }
}

/// One generation step on a single island.
///
/// The island's best chromosome is carried over unmutated; the remaining
/// slots come from crossing winners of two random pairs drawn from the best
/// `n_population - n_bad` members, then every new member is mutated and
/// evaluated. Returns the next population and the number of fitness
/// evaluations spent.
pub fn epoch<F: FitnessFn, R: RngCore>(
    population: &[Evaluated],
    fitness: &F,
    config: &GaConfig,
    rng: &mut R,
) -> (Vec<Evaluated>, u64) {
    debug_assert_eq!(population.len(), config.n_population);
    let order = ranking(population);
    let n_good = config.n_population - config.n_bad;

    let mut children: Vec<Chromosome> = Vec::with_capacity(config.n_population - 1);
    while children.len() < config.n_population - 1 {
        let w1 = pair_winner(&order, n_good, population, rng);
        let w2 = pair_winner(&order, n_good, population, rng);
        let child = crossover(&population[w1].chromosome, &population[w2].chromosome, rng)
            .expect("island chromosomes share one length");
        children.push(child);
    }

    let mut next = Vec::with_capacity(config.n_population);
    next.push(population[order[0]].clone());
    let mut evals = 0u64;
    for child in children {
        let mutated = mutate(&child, config.p_mut, config.m_mut, rng);
        let decoded = decode(&mutated, config.n_gen).expect("length fixed at init");
        let fit = fitness.eval(&decoded);
        evals += 1;
        next.push(Evaluated {
            chromosome: mutated,
            fitness: fit,
        });
    }
    (next, evals)
}

/// Best and mean fitness of one island after one epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStat {
    pub best: f64,
    pub mean: f64,
}

/// Outcome of a full island-GA run.
#[derive(Debug, Clone)]
pub struct OptimizationReport {
    /// Smallest fitness found anywhere.
    pub best_value: f64,
    /// Decoded parameters of the best chromosome.
    pub best_params: Vec<f64>,
    /// The best chromosome itself.
    pub best_genes: Chromosome,
    /// Epochs actually run (excluding the initial population).
    pub epochs: usize,
    /// Total fitness evaluations.
    pub evaluations: u64,
    /// `trace[island][epoch]`, entry 0 describing the initial population.
    pub trace: Vec<Vec<EpochStat>>,
}

/// Runs the island GA. Genes are initialized uniformly on
/// `[-m_init, m_init]`; the run stops at `n_epochs` or once the global
/// best of the last `n_term` epochs varies by less than `epsilon`.
pub fn run<F: FitnessFn>(
    fitness: &F,
    arity: usize,
    config: &GaConfig,
) -> Result<OptimizationReport, GaError> {
    run_with_seeds(fitness, arity, config, &[])
}

/// Same as [`run`], with extra chromosomes injected into the first island's
/// initial population (replacing random members). Injected chromosomes must
/// have length `n_gen * arity`.
pub fn run_with_seeds<F: FitnessFn>(
    fitness: &F,
    arity: usize,
    config: &GaConfig,
    injected: &[Chromosome],
) -> Result<OptimizationReport, GaError> {
    config.validate()?;
    if arity == 0 {
        return Err(GaError::ZeroArity);
    }
    let len = config.n_gen * arity;
    if injected.len() > config.n_population {
        return Err(GaError::InvalidConfig);
    }
    if let Some(bad) = injected.iter().find(|c| c.genes.len() != len) {
        return Err(GaError::BadLength {
            len: bad.genes.len(),
            n_gen: config.n_gen,
        });
    }

    // Stream 0 drives migration; stream i+1 drives island i.
    let mut migration_rng = rng::stream_rng(config.seed, 0);
    let mut island_rngs: Vec<ChaCha12Rng> = (0..config.n_islands)
        .map(|i| rng::stream_rng(config.seed, i as u64 + 1))
        .collect();

    let mut evaluations = 0u64;
    let mut islands: Vec<Vec<Evaluated>> = Vec::with_capacity(config.n_islands);
    for (i, rng_i) in island_rngs.iter_mut().enumerate() {
        let mut pop = Vec::with_capacity(config.n_population);
        for slot in 0..config.n_population {
            let chromosome = if i == 0 && slot < injected.len() {
                injected[slot].clone()
            } else {
                Chromosome {
                    genes: (0..len)
                        .map(|_| rng::uniform_range(rng_i, -config.m_init, config.m_init))
                        .collect(),
                }
            };
            let decoded = decode(&chromosome, config.n_gen)?;
            let fit = fitness.eval(&decoded);
            evaluations += 1;
            pop.push(Evaluated {
                chromosome,
                fitness: fit,
            });
        }
        islands.push(pop);
    }

    let stat_of = |pop: &[Evaluated]| {
        let best = pop.iter().map(|e| e.fitness).fold(f64::INFINITY, f64::min);
        let mean = pop.iter().map(|e| e.fitness).sum::<f64>() / pop.len() as f64;
        EpochStat { best, mean }
    };
    let mut trace: Vec<Vec<EpochStat>> = islands.iter().map(|p| vec![stat_of(p)]).collect();

    let mut best = best_member(&islands);
    let mut best_history: Vec<f64> = Vec::with_capacity(config.n_epochs);
    let mut epochs_run = 0;

    for _ in 0..config.n_epochs {
        for (i, rng_i) in island_rngs.iter_mut().enumerate() {
            let (next, evals) = epoch(&islands[i], fitness, config, rng_i);
            evaluations += evals;
            trace[i].push(stat_of(&next));
            islands[i] = next;
        }
        epochs_run += 1;

        if config.n_islands > 1 {
            for i in 0..config.n_islands {
                if rng::uniform_f64(&mut migration_rng) < config.p_mig {
                    let mut target = rng::uniform_usize(&mut migration_rng, config.n_islands - 1);
                    if target >= i {
                        target += 1;
                    }
                    let source_best = {
                        let order = ranking(&islands[i]);
                        islands[i][order[0]].clone()
                    };
                    let worst = ranking(&islands[target])[config.n_population - 1];
                    islands[target][worst] = source_best;
                }
            }
        }

        let current = best_member(&islands);
        if current.fitness < best.fitness {
            best = current;
        }
        best_history.push(best.fitness);
        if best_history.len() >= config.n_term {
            let window = &best_history[best_history.len() - config.n_term..];
            let max = window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = window.iter().cloned().fold(f64::INFINITY, f64::min);
            if max - min < config.epsilon {
                break;
            }
        }
    }

    let best_params = decode(&best.chromosome, config.n_gen)?;
    Ok(OptimizationReport {
        best_value: best.fitness,
        best_params,
        best_genes: best.chromosome,
        epochs: epochs_run,
        evaluations,
        trace,
    })
}

fn best_member(islands: &[Vec<Evaluated>]) -> Evaluated {
    let mut best: Option<&Evaluated> = None;
    for pop in islands {
        for e in pop {
            if best.is_none_or(|b| e.fitness < b.fitness) {
                best = Some(e);
            }
        }
    }
    best.expect("populations are nonempty").clone()
}
