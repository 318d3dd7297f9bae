//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers (run with `--nocapture` to see them all).
//!
//! Criteria and tolerances:
//!  1. ehmin matches the reduced-von-Neumann oracle on 20 two-qubit and
//!     10 qutrit-pair states within 1e-3, all inside 2 minutes.
//!  2. Generalized GHZ closed form within 1e-3 (n = 3, 4, 5).
//!  3. Generalized W closed form within 2e-3.
//!  4. Product states go below 1e-6 (n = 2..6 qubits).
//!  5. Additivity over tensor products within 3e-3 (10 pairs).
//!  6. Local-unitary and ancilla invariance within 2e-3 (10 trials each).
//!  7. Measurement monotonicity within 2e-3 (10 trials).
//!  8. Fermionic GA matches Slater-decomposition entropy within 1e-3;
//!     exterior powers of unitaries stay unitary within 1e-8.
//!  9. Islands beat a single island on Rastrigin at equal budget, and an
//!     8-island run resolves a 5-qubit local-minimum split.
//! 10. A 17-qubit evaluation fits in 1 s; a 10-qubit epoch fits in 30 s.
//! 11. CLI reports are byte-identical for a fixed seed.

use std::process::Command;
use std::time::Instant;

use ehmin_core::fermion::{
    ehmin_fermion, minor_table, random_fermion_state, slater_decompose, slater_entropy,
};
use ehmin_core::ga::{self, GaConfig};
use ehmin_core::objective::{ehmin, Objective};
use ehmin_core::oracles::{bipartite_oracle, ghz_oracle, w_oracle};
use ehmin_core::state::{ghz_state, random_state, w_state, PureState};
use ehmin_core::unitary::{
    apply_local, hermitian_from_params, local_unitaries_from_params, total_arity, unitary_exp,
};
use ehmin_core::C64;

const LN_2: f64 = std::f64::consts::LN_2;

/// Tuned for qubit-only systems (3 parameters per subsystem).
fn qubit_config(seed: u64) -> GaConfig {
    GaConfig {
        seed,
        ..GaConfig::default()
    }
}

/// Tuned for qudit subsystems with d^2 Hermitian parameters.
fn qudit_config(seed: u64) -> GaConfig {
    GaConfig {
        n_gen: 5,
        p_mut: 0.04,
        m_mut: 0.5,
        m_init: 1.5,
        n_bad: 22,
        n_epochs: 3000,
        n_term: 300,
        epsilon: 1e-7,
        seed,
        ..GaConfig::default()
    }
}

/// Tuned for four fermionic modes (16 parameters).
fn fermion4_config(seed: u64) -> GaConfig {
    GaConfig {
        n_gen: 5,
        p_mut: 0.01,
        m_mut: 0.3,
        m_init: 1.5,
        n_population: 40,
        n_bad: 20,
        n_islands: 6,
        n_epochs: 2500,
        n_term: 400,
        epsilon: 1e-8,
        seed,
        ..GaConfig::default()
    }
}

/// Tuned for six fermionic modes (36 parameters).
fn fermion6_config(seed: u64) -> GaConfig {
    GaConfig {
        n_gen: 5,
        p_mut: 0.005,
        m_mut: 0.25,
        m_init: 1.5,
        n_population: 48,
        n_bad: 28,
        n_islands: 6,
        n_epochs: 9000,
        n_term: 900,
        epsilon: 1e-8,
        seed,
        ..GaConfig::default()
    }
}

#[test]
fn criterion_01_bipartite_oracle_equivalence() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let s = random_state(&[2, 2], seed).unwrap();
        let oracle = bipartite_oracle(&s).unwrap();
        let value = ehmin(&s, &qubit_config(seed)).unwrap().value;
        let gap = (value - oracle).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "2-qubit seed {seed}: gap {gap:.3e}");
    }
    for seed in 0..10u64 {
        let s = random_state(&[3, 3], 100 + seed).unwrap();
        let oracle = bipartite_oracle(&s).unwrap();
        let value = ehmin(&s, &qudit_config(seed)).unwrap().value;
        let gap = (value - oracle).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "qutrit seed {seed}: gap {gap:.3e}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 120.0,
        "runtime {elapsed:?} exceeds 2 minutes"
    );
    println!(
        "criterion 01 (bipartite oracle equivalence): PASS — 30 states, worst gap {worst:.2e}, {elapsed:.1?}"
    );
}

#[test]
fn criterion_02_ghz_closed_form() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let coeff_sets = [
        [C64::new(h, 0.0), C64::new(h, 0.0)],
        [C64::new(0.3f64.sqrt(), 0.0), C64::new(0.7f64.sqrt(), 0.0)],
    ];
    let mut worst: f64 = 0.0;
    for (ci, coeffs) in coeff_sets.iter().enumerate() {
        let expected = ghz_oracle(coeffs);
        for n in [3usize, 4, 5] {
            let s = ghz_state(2, n, coeffs).unwrap();
            let config = GaConfig {
                n_epochs: 400,
                n_term: 80,
                seed: n as u64,
                ..GaConfig::default()
            };
            let value = ehmin(&s, &config).unwrap().value;
            let gap = (value - expected).abs();
            worst = worst.max(gap);
            assert!(gap <= 1e-3, "GHZ n={n} coeffs#{ci}: {value} vs {expected}");
        }
    }
    assert!((ghz_oracle(&coeff_sets[0]) - LN_2).abs() < 1e-12);
    assert!((ghz_oracle(&coeff_sets[1]) - 0.610864).abs() < 1e-6);
    println!("criterion 02 (GHZ closed form): PASS — 6 instances, worst gap {worst:.2e}");
}

#[test]
fn criterion_03_w_closed_form() {
    let u = (1.0f64 / 3.0).sqrt();
    let uniform = vec![C64::new(u, 0.0); 3];
    let mut cases = vec![uniform];
    // Three deterministic non-uniform coefficient vectors.
    for seed in 0..3 {
        let raw: Vec<f64> = (0..3)
            .map(|k| 1.0 + ((seed * 3 + k) as f64 * 0.911).sin().abs())
            .collect();
        let norm: f64 = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        cases.push(raw.iter().map(|x| C64::new(x / norm, 0.0)).collect());
    }
    let mut worst: f64 = 0.0;
    for (ci, coeffs) in cases.iter().enumerate() {
        let s = w_state(coeffs).unwrap();
        let expected = w_oracle(coeffs);
        let config = GaConfig {
            n_epochs: 400,
            n_term: 80,
            seed: ci as u64,
            ..GaConfig::default()
        };
        let value = ehmin(&s, &config).unwrap().value;
        let gap = (value - expected).abs();
        worst = worst.max(gap);
        assert!(gap <= 2e-3, "W case {ci}: {value} vs {expected}");
        if ci == 0 {
            assert!((expected - 3.0f64.ln()).abs() < 1e-12);
        }
    }
    println!("criterion 03 (W closed form): PASS — 4 instances, worst gap {worst:.2e}");
}

#[test]
fn criterion_04_product_states_reach_zero() {
    let mut worst: f64 = 0.0;
    for n in 2..=6usize {
        let s = PureState::basis_state(&vec![2; n], &vec![0; n]).unwrap();
        let config = GaConfig {
            n_epochs: 300,
            n_term: 60,
            seed: n as u64,
            ..GaConfig::default()
        };
        let value = ehmin(&s, &config).unwrap().value;
        worst = worst.max(value);
        assert!(value < 1e-6, "n={n}: value {value}");
    }
    println!("criterion 04 (product states reach zero): PASS — n = 2..6, worst value {worst:.2e}");
}

#[test]
fn criterion_05_additivity() {
    let mut worst: f64 = 0.0;
    for k in 0..10u64 {
        let s1 = random_state(&[2, 2], 1000 + 2 * k).unwrap();
        let s2 = random_state(&[2, 2], 1001 + 2 * k).unwrap();
        let e1 = ehmin(&s1, &qubit_config(k)).unwrap().value;
        let e2 = ehmin(&s2, &qubit_config(k + 40)).unwrap().value;
        let joint = ehmin(&s1.tensor(&s2), &qubit_config(k + 80)).unwrap().value;
        let gap = (joint - e1 - e2).abs();
        worst = worst.max(gap);
        assert!(gap <= 3e-3, "pair {k}: {joint} vs {e1} + {e2}");
    }
    println!("criterion 05 (additivity): PASS — 10 pairs, worst gap {worst:.2e}");
}

fn deterministic_locals(dims: &[usize], seed: u64) -> Vec<ehmin_core::UnitaryMatrix> {
    let mut params = Vec::new();
    let mut x = seed as f64 * 0.7368 + 0.1;
    for _ in 0..total_arity(dims) {
        x = (x * 1.61803398875 + 0.613).rem_euclid(2.0) - 1.0;
        params.push(2.5 * x);
    }
    local_unitaries_from_params(dims, &params).unwrap()
}

#[test]
fn criterion_06_local_unitary_and_ancilla_invariance() {
    let mut worst_lu: f64 = 0.0;
    let mut worst_anc: f64 = 0.0;
    let zero = PureState::basis_state(&[2], &[0]).unwrap();
    for seed in 0..10u64 {
        let s = random_state(&[2, 2, 2], 300 + seed).unwrap();
        let base = ehmin(&s, &qubit_config(seed)).unwrap().value;

        let rotated = apply_local(&s, &deterministic_locals(s.dims(), seed)).unwrap();
        let moved = ehmin(&rotated, &qubit_config(seed + 11)).unwrap().value;
        let lu_gap = (base - moved).abs();
        worst_lu = worst_lu.max(lu_gap);
        assert!(lu_gap <= 2e-3, "LU seed {seed}: {base} vs {moved}");

        let padded = ehmin(&s.tensor(&zero), &qubit_config(seed + 23))
            .unwrap()
            .value;
        let anc_gap = (base - padded).abs();
        worst_anc = worst_anc.max(anc_gap);
        assert!(anc_gap <= 2e-3, "ancilla seed {seed}: {base} vs {padded}");
    }
    println!(
        "criterion 06 (local-unitary / ancilla invariance): PASS — worst gaps {worst_lu:.2e} / {worst_anc:.2e}"
    );
}

#[test]
fn criterion_07_monotonicity_under_measurement() {
    let mut worst_violation: f64 = f64::NEG_INFINITY;
    for seed in 0..10u64 {
        let s = random_state(&[2, 2, 2], 500 + seed).unwrap();
        let parent = ehmin(&s, &qubit_config(seed)).unwrap().value;
        // Measure qubit 0 in the computational basis.
        let amps = s.amplitudes();
        let mut average = 0.0;
        for j in 0..2usize {
            let block: Vec<C64> = amps[j * 4..(j + 1) * 4].to_vec();
            let p: f64 = block.iter().map(|a| a.norm_sqr()).sum();
            if p > 1e-12 {
                let post = PureState::new(&[2, 2], block).unwrap();
                average += p * ehmin(&post, &qubit_config(seed + 100 + j as u64))
                    .unwrap()
                    .value;
            }
        }
        let violation = average - parent; // positive would violate monotonicity
        worst_violation = worst_violation.max(violation);
        assert!(
            parent + 2e-3 >= average,
            "seed {seed}: parent {parent} < average {average}"
        );
    }
    println!("criterion 07 (measurement monotonicity): PASS — worst margin {worst_violation:.2e}");
}

#[test]
fn criterion_08_fermionic_slater_equivalence() {
    let mut worst: f64 = 0.0;
    for seed in 0..10u64 {
        let f = random_fermion_state(4, 2, 700 + seed).unwrap();
        let (_, z) = slater_decompose(&f).unwrap();
        let oracle = slater_entropy(&z);
        let value = ehmin_fermion(&f, &fermion4_config(seed)).unwrap().value;
        let gap = (value - oracle).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "p=4 seed {seed}: gap {gap:.3e}");
    }
    for seed in 0..5u64 {
        let f = random_fermion_state(6, 2, 800 + seed).unwrap();
        let (_, z) = slater_decompose(&f).unwrap();
        let oracle = slater_entropy(&z);
        let value = ehmin_fermion(&f, &fermion6_config(seed)).unwrap().value;
        let gap = (value - oracle).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-3, "p=6 seed {seed}: gap {gap:.3e}");
    }

    // Exterior powers of unitaries stay unitary.
    let mut worst_unitarity: f64 = 0.0;
    for p in 2..=8usize {
        for n in 1..=4.min(p) {
            let params: Vec<f64> = (0..p * p)
                .map(|k| ((p * 31 + n * 7 + k) as f64 * 0.6180339887).rem_euclid(2.0) - 1.0)
                .collect();
            let u = unitary_exp(&hermitian_from_params(p, &params).unwrap()).unwrap();
            let table = minor_table(&u, n).unwrap();
            let m = table.matrix();
            let gram = m.adjoint().mul(m);
            let size = gram.rows();
            let defect = gram.max_abs_diff(&ehmin_core::CMatrix::identity(size));
            worst_unitarity = worst_unitarity.max(defect);
            assert!(defect <= 1e-8, "p={p} n={n}: defect {defect:.3e}");
        }
    }
    println!(
        "criterion 08 (fermionic Slater equivalence): PASS — worst gap {worst:.2e}, worst minor-table unitarity defect {worst_unitarity:.2e}"
    );
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|&v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
            .sum::<f64>()
}

#[test]
fn criterion_09_multimodality_and_islands() {
    // Rastrigin at a fixed evaluation budget: 8 islands of 16 for 300
    // epochs vs one island of 16 for 2400 epochs.
    let mut failures = [0usize; 2];
    for (idx, islands) in [1usize, 8].iter().enumerate() {
        for seed in 0..40u64 {
            let config = GaConfig {
                n_islands: *islands,
                n_population: 16,
                n_bad: 4,
                m_mut: 0.3,
                n_epochs: 2400 / islands,
                n_term: 2400 / islands,
                seed,
                ..GaConfig::default()
            };
            let r = ga::run(&rastrigin, 6, &config).unwrap();
            if r.best_value > 1.0 {
                failures[idx] += 1;
            }
        }
    }
    assert!(
        failures[1] < failures[0],
        "8-island failures {} not below single-island {}",
        failures[1],
        failures[0]
    );

    // A seeded 5-qubit state where two single-island runs split across
    // local minima and the 8-island run lands on the smaller one.
    let s = random_state(&[2; 5], 5005).unwrap();
    let single = |seed: u64| GaConfig {
        n_islands: 1,
        n_epochs: 400,
        n_term: 60,
        seed,
        ..GaConfig::default()
    };
    let v_a = ehmin(&s, &single(0)).unwrap().value;
    let v_b = ehmin(&s, &single(1)).unwrap().value;
    let spread = (v_a - v_b).abs();
    assert!(spread > 1e-2, "runs agree too well: {v_a} vs {v_b}");
    let v8 = ehmin(
        &s,
        &GaConfig {
            n_islands: 8,
            n_epochs: 400,
            n_term: 60,
            seed: 0,
            ..GaConfig::default()
        },
    )
    .unwrap()
    .value;
    assert!(
        v8 <= v_a.min(v_b) + 1e-3,
        "8-island {v8} misses the smaller single-island value {}",
        v_a.min(v_b)
    );
    println!(
        "criterion 09 (multimodality and islands): PASS — Rastrigin failures {}/40 vs {}/40; 5-qubit split {spread:.3} resolved to {v8:.4}",
        failures[0], failures[1]
    );
}

#[test]
fn criterion_10_scale() {
    let s17 = random_state(&[2; 17], 1).unwrap();
    let objective = Objective::new(s17);
    let x = vec![0.1; objective.arity()];
    let start = Instant::now();
    let value = objective.evaluate(&x).unwrap();
    let eval_time = start.elapsed();
    assert!(value.is_finite());
    assert!(
        eval_time.as_secs_f64() <= 1.0,
        "17-qubit evaluation took {eval_time:?}"
    );

    let s10 = random_state(&[2; 10], 2).unwrap();
    let config = GaConfig {
        n_islands: 1,
        n_population: 40,
        n_epochs: 1,
        n_term: 1,
        seed: 0,
        ..GaConfig::default()
    };
    let start = Instant::now();
    let r = ehmin(&s10, &config).unwrap();
    let epoch_time = start.elapsed();
    assert_eq!(r.epochs, 1);
    assert!(
        epoch_time.as_secs_f64() <= 30.0,
        "10-qubit epoch took {epoch_time:?}"
    );
    println!(
        "criterion 10 (scale): PASS — 17-qubit eval {eval_time:.2?}, 10-qubit epoch {epoch_time:.2?}"
    );
}

#[test]
fn criterion_11_cli_determinism() {
    let dir = std::env::temp_dir().join(format!("ehmin-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let state = dir.join("state.json");
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_ehmin"))
            .args(args)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };

    run(&[
        "random",
        "--dims",
        "2,2",
        "--seed",
        "9",
        "--out",
        state.to_str().unwrap(),
    ]);
    let state_bytes = std::fs::read(&state).unwrap();
    run(&[
        "random",
        "--dims",
        "2,2",
        "--seed",
        "9",
        "--out",
        state.to_str().unwrap(),
    ]);
    assert_eq!(state_bytes, std::fs::read(&state).unwrap());

    let fast: &[&str] = &[
        "--n-islands",
        "4",
        "--n-population",
        "24",
        "--n-bad",
        "6",
        "--n-epochs",
        "400",
        "--n-term",
        "60",
        "--seed",
        "5",
    ];
    for subcommand in ["ehmin", "verify"] {
        let mut args = vec![subcommand, state.to_str().unwrap()];
        args.extend_from_slice(fast);
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "{subcommand} reports differ across runs");
        assert!(!first.is_empty());
    }

    let fermion = dir.join("fermion.json");
    std::fs::write(
        &fermion,
        r#"{"p":4,"n":2,"amplitudes":[[0.6,0],[0,0],[0,0.4],[0,0],[0.5,0],[0,-0.2]]}"#,
    )
    .unwrap();
    let first = run(&["fermion", "slater", fermion.to_str().unwrap()]);
    let second = run(&["fermion", "slater", fermion.to_str().unwrap()]);
    assert_eq!(first, second);
    println!("criterion 11 (CLI determinism): PASS — random/ehmin/verify/slater byte-identical");
}
