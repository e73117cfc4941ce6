//! I.i.d. Pauli noise, Monte Carlo logical-error-rate estimation with a
//! fixed-failure stopping rule, and exact small-code enumeration.
//!
//! Determinism: each worker owns a counter-based RNG stream derived from
//! (seed, worker id) and shots are assigned to workers round-robin by shot
//! index, so the error at shot i is a pure function of (seed, workers, i).
//! Batches are decoded in parallel but scanned for the stopping condition
//! in shot order, making every output field reproducible for a fixed
//! (seed, workers) pair regardless of thread scheduling.

use crate::codes::StabilizerCode;
use crate::decoder::{decode, is_logical_error, DecodeConfig};
use crate::extraction::GraphExtraction;
use crate::gf2::BitVec;
use crate::pauli::{PauliKind, PauliOperator};
use crate::syndrome::measure_beta;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("invalid noise model: {0}")]
    InvalidModel(String),
    #[error("exact enumeration infeasible: {0}")]
    BudgetExceeded(String),
}

/// Per-qubit Pauli channel probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl NoiseModel {
    /// p_x = p_y = p_z = p/3.
    pub fn depolarizing(p: f64) -> Self {
        Self {
            p_x: p / 3.0,
            p_y: p / 3.0,
            p_z: p / 3.0,
        }
    }

    /// p_x = p, p_y = p_z = 0.
    pub fn bitflip(p: f64) -> Self {
        Self {
            p_x: p,
            p_y: 0.0,
            p_z: 0.0,
        }
    }

    pub fn pxyz(p_x: f64, p_y: f64, p_z: f64) -> Self {
        Self { p_x, p_y, p_z }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let total = self.p_x + self.p_y + self.p_z;
        if self.p_x < 0.0 || self.p_y < 0.0 || self.p_z < 0.0 || total > 1.0 {
            return Err(SimError::InvalidModel(format!(
                "px={} py={} pz={}",
                self.p_x, self.p_y, self.p_z
            )));
        }
        Ok(())
    }

    pub fn is_bitflip(&self) -> bool {
        self.p_y == 0.0 && self.p_z == 0.0
    }

    fn identity_probability(&self) -> f64 {
        1.0 - self.p_x - self.p_y - self.p_z
    }
}

/// Monte Carlo run settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    /// Target failure count M_L; the run stops at the shot where the
    /// M_L-th logical error occurs.
    pub target_failures: u64,
    /// Shot cap; exceeding it ends the run with `capped = true`.
    pub max_shots: u64,
    pub workers: usize,
    pub decode: DecodeConfig,
}

impl RunConfig {
    pub fn new(seed: u64, target_failures: u64, decode: DecodeConfig) -> Self {
        Self {
            seed,
            target_failures,
            max_shots: 10_000_000,
            workers: 1,
            decode,
        }
    }
}

/// Outcome of a Monte Carlo run; `p_l * shots == failures` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub shots: u64,
    pub failures: u64,
    pub p_l: f64,
    pub stderr: f64,
    pub wall_seconds: f64,
    /// Set when the shot cap was hit before reaching the failure target;
    /// the estimate is then partial.
    pub capped: bool,
}

/// Draws an i.i.d. Pauli error: per qubit, I/X/Y/Z with probabilities
/// (1 - px - py - pz, px, py, pz).
pub fn sample_error(model: &NoiseModel, n: usize, rng: &mut impl Rng) -> PauliOperator {
    let mut e = PauliOperator::identity(n);
    for q in 0..n {
        let u: f64 = rng.gen();
        let kind = if u < model.p_x {
            PauliKind::X
        } else if u < model.p_x + model.p_y {
            PauliKind::Y
        } else if u < model.p_x + model.p_y + model.p_z {
            PauliKind::Z
        } else {
            PauliKind::I
        };
        if kind != PauliKind::I {
            e.set(q, kind);
        }
    }
    e
}

fn worker_stream(seed: u64, worker: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Samples, decodes and adjudicates shots until `target_failures` logical
/// errors have occurred (or the cap is hit). Returns the exact ratio
/// estimate with its binomial standard error.
pub fn run_until_failures(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    model: &NoiseModel,
    cfg: &RunConfig,
) -> RunResult {
    let start = std::time::Instant::now();
    let n = code.n();
    let workers = cfg.workers.max(1);
    let mut streams: Vec<ChaCha12Rng> = (0..workers)
        .map(|w| worker_stream(cfg.seed, w as u64))
        .collect();

    let batch = (workers * 256).max(1024);
    let mut shots: u64 = 0;
    let mut failures: u64 = 0;
    let mut done = false;

    while !done {
        let remaining = cfg.max_shots.saturating_sub(shots);
        if remaining == 0 {
            break;
        }
        let this_batch = (batch as u64).min(remaining) as usize;
        let errors: Vec<PauliOperator> = (0..this_batch)
            .map(|i| {
                let w = (shots as usize + i) % workers;
                sample_error(model, n, &mut streams[w])
            })
            .collect();
        let flags: Vec<bool> = errors
            .par_iter()
            .map(|e| {
                let beta = measure_beta(code, e);
                let r = decode(code, ext, &beta, &cfg.decode);
                is_logical_error(code, e, &r.correction).expect("syndrome-conforming correction")
            })
            .collect();
        for flag in flags {
            shots += 1;
            if flag {
                failures += 1;
                if failures == cfg.target_failures {
                    done = true;
                    break;
                }
            }
        }
    }

    let p_l = if shots == 0 {
        0.0
    } else {
        failures as f64 / shots as f64
    };
    let stderr = if shots == 0 {
        0.0
    } else {
        (p_l * (1.0 - p_l) / shots as f64).sqrt()
    };
    RunResult {
        shots,
        failures,
        p_l,
        stderr,
        wall_seconds: start.elapsed().as_secs_f64(),
        capped: !done,
    }
}

const EXACT_FULL_MAX_N: usize = 8;
const EXACT_BITFLIP_MAX_N: usize = 13;

/// Exact logical error rate by enumerating every error configuration
/// (all 4^N Paulis, or 2^N X-patterns under bit-flip noise) and summing
/// the probability of those the decoder fails on. Decode results are
/// cached per stabilizer syndrome.
pub fn exact_p_l(
    code: &StabilizerCode,
    ext: &GraphExtraction,
    model: &NoiseModel,
    decode_cfg: &DecodeConfig,
) -> Result<f64, SimError> {
    model.validate()?;
    let n = code.n();
    let bitflip = model.is_bitflip();
    if bitflip && n > EXACT_BITFLIP_MAX_N {
        return Err(SimError::BudgetExceeded(format!(
            "bit-flip enumeration needs 2^{n} patterns (max N = {EXACT_BITFLIP_MAX_N})"
        )));
    }
    if !bitflip && n > EXACT_FULL_MAX_N {
        return Err(SimError::BudgetExceeded(format!(
            "full enumeration needs 4^{n} patterns (max N = {EXACT_FULL_MAX_N})"
        )));
    }

    let mut cache: std::collections::HashMap<BitVec, PauliOperator> =
        std::collections::HashMap::new();
    let mut total = 0.0;
    let p_i = model.identity_probability();

    let mut visit = |error: PauliOperator, probability: f64| {
        if probability == 0.0 {
            return;
        }
        let beta = measure_beta(code, &error);
        let correction = cache
            .entry(beta.clone())
            .or_insert_with(|| decode(code, ext, &beta, decode_cfg).correction)
            .clone();
        if is_logical_error(code, &error, &correction).expect("conforming correction") {
            total += probability;
        }
    };

    if bitflip {
        for bits in 0..(1u64 << n) {
            let mut e = PauliOperator::identity(n);
            let mut prob = 1.0;
            for q in 0..n {
                if (bits >> q) & 1 == 1 {
                    e.set(q, PauliKind::X);
                    prob *= model.p_x;
                } else {
                    prob *= 1.0 - model.p_x;
                }
            }
            visit(e, prob);
        }
    } else {
        let digits = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];
        let probs = [p_i, model.p_x, model.p_y, model.p_z];
        let total_patterns = 4u64.pow(n as u32);
        for pattern in 0..total_patterns {
            let mut e = PauliOperator::identity(n);
            let mut prob = 1.0;
            let mut rest = pattern;
            for q in 0..n {
                let digit = (rest % 4) as usize;
                rest /= 4;
                if digit != 0 {
                    e.set(q, digits[digit]);
                }
                prob *= probs[digit];
            }
            visit(e, prob);
        }
    }
    Ok(total)
}

/// t/N for the report; the boundary between the regimes where correction
/// is more or less probable under rate-p noise.
pub fn t_over_n(code: &StabilizerCode) -> f64 {
    code.t() as f64 / code.n() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::extraction::extract;

    #[test]
    fn zero_noise_always_identity() {
        let model = NoiseModel::depolarizing(0.0);
        let mut rng = worker_stream(1, 0);
        for _ in 0..100 {
            assert!(sample_error(&model, 12, &mut rng).is_identity());
        }
    }

    #[test]
    fn px_one_is_all_x() {
        let model = NoiseModel::pxyz(1.0, 0.0, 0.0);
        let mut rng = worker_stream(1, 0);
        let e = sample_error(&model, 9, &mut rng);
        assert_eq!(e.weight(), 9);
        assert!(e.z_part().is_zero());
    }

    #[test]
    fn sample_mean_weight_matches_binomial() {
        let model = NoiseModel::depolarizing(0.3);
        let mut rng = worker_stream(42, 0);
        let n = 100;
        let draws = 100_000usize;
        let mut total = 0usize;
        for _ in 0..draws {
            total += sample_error(&model, n, &mut rng).weight();
        }
        let mean = total as f64 / draws as f64;
        // binomial mean 30, sample-mean sigma = sqrt(n p (1-p) / draws)
        let sigma = (100.0 * 0.3 * 0.7 / draws as f64).sqrt();
        assert!(
            (mean - 30.0).abs() < 3.0 * sigma,
            "mean {mean}, expected 30 +/- {}",
            3.0 * sigma
        );
    }

    #[test]
    fn zero_noise_run_hits_cap() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let mut cfg = RunConfig::new(3, 5, DecodeConfig::auto_for(&code));
        cfg.max_shots = 2000;
        let r = run_until_failures(&code, &ext, &NoiseModel::depolarizing(0.0), &cfg);
        assert!(r.capped);
        assert_eq!(r.failures, 0);
        assert_eq!(r.shots, 2000);
    }

    #[test]
    fn runs_are_deterministic_for_fixed_seed_and_workers() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let model = NoiseModel::depolarizing(0.15);
        let mut cfg = RunConfig::new(99, 20, DecodeConfig::auto_for(&code));
        cfg.workers = 3;
        let a = run_until_failures(&code, &ext, &model, &cfg);
        let b = run_until_failures(&code, &ext, &model, &cfg);
        assert_eq!(a.shots, b.shots);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.p_l, b.p_l);
        // stopping-rule arithmetic is exact
        assert_eq!(a.p_l * a.shots as f64, a.failures as f64);
        assert_eq!(a.failures, 20);
    }

    #[test]
    fn exact_p_l_trivial_and_leading_order() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::auto_for(&code);
        assert_eq!(
            exact_p_l(&code, &ext, &NoiseModel::depolarizing(0.0), &cfg).unwrap(),
            0.0
        );
        // all weight-1 errors are corrected, so p_L = O(p^2) as p -> 0
        let p = 1e-3;
        let pl = exact_p_l(&code, &ext, &NoiseModel::depolarizing(p), &cfg).unwrap();
        assert!(pl > 0.0);
        assert!(pl < 1e-4, "leading order should be quadratic, got {pl}");
    }

    #[test]
    fn exact_p_l_steane_bitflip() {
        let code = builtin("steane").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::auto_for(&code);
        let pl = exact_p_l(&code, &ext, &NoiseModel::bitflip(0.1), &cfg).unwrap();
        assert!(pl > 0.0 && pl < 1.0);
        // weight-1 X errors are always corrected: subtract their mass
        let pl_small = exact_p_l(&code, &ext, &NoiseModel::bitflip(1e-3), &cfg).unwrap();
        assert!(pl_small < 1e-4);
    }

    #[test]
    fn exact_p_l_budget_guard() {
        let code = builtin("noncss17").unwrap();
        let ext = extract(&code).unwrap();
        let cfg = DecodeConfig::auto_for(&code);
        assert!(matches!(
            exact_p_l(&code, &ext, &NoiseModel::depolarizing(0.1), &cfg),
            Err(SimError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn mc_agrees_with_exact_on_five_qubit() {
        let code = builtin("five_qubit").unwrap();
        let ext = extract(&code).unwrap();
        let model = NoiseModel::depolarizing(0.12);
        let exact = exact_p_l(&code, &ext, &model, &DecodeConfig::auto_for(&code)).unwrap();
        let mut cfg = RunConfig::new(7, 100, DecodeConfig::auto_for(&code));
        cfg.workers = 2;
        let r = run_until_failures(&code, &ext, &model, &cfg);
        assert!(!r.capped);
        assert!(
            (r.p_l - exact).abs() < 3.0 * r.stderr,
            "mc {} vs exact {exact} (stderr {})",
            r.p_l,
            r.stderr
        );
    }

    #[test]
    fn t_over_n_values_match_report() {
        let expected = [
            ("five_qubit", 0.2),
            ("noncss11", 0.181),
            ("noncss17", 0.176),
            ("noncss25", 0.16),
            ("noncss29", 0.172),
        ];
        for (name, value) in expected {
            let code = builtin(name).unwrap();
            assert!(
                (t_over_n(&code) - value).abs() < 1e-3,
                "{name}: {} vs {value}",
                t_over_n(&code)
            );
        }
    }
}
