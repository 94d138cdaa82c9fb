//! Random Reidemeister move sequences checked against the invariants.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cohomology::{Cochain, CoefficientGroup};
use crate::coloring::count_colorings;
use crate::diagram::Diagram;
use crate::invariants::{partition_function, state_sum, InvariantError, StateSum};
use crate::moves::{apply_move, random_move, MoveSpec};
use crate::quandle::FiniteQuandle;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Temperatures at which Z is compared when the cocycle is rational.
pub const FUZZ_TEMPERATURES: [f64; 5] = [0.25, 0.5, 1.0, 3.0, 10.0];

/// Relative tolerance for Z after exponentiation.
pub const Z_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub trials: usize,
    pub depth: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct FuzzFailure {
    pub trial: usize,
    pub sequence: Vec<MoveSpec>,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub trials: usize,
    pub moves: BTreeMap<&'static str, usize>,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "trial": f.trial, "sequence": f.sequence, "reason": f.reason }))
            .collect();
        json!({
            "result": if self.passed() { "PASS" } else { "FAIL" },
            "trials": self.trials,
            "moves": self.moves,
            "failures": failures,
        })
    }
}

struct Baseline {
    count: u64,
    sum: StateSum,
    z: Option<Vec<f64>>,
}

fn measure(d: &Diagram, q: &FiniteQuandle, phi: &Cochain) -> Result<Baseline, InvariantError> {
    let sum = state_sum(d, q, phi)?;
    let z = match phi.coeff() {
        CoefficientGroup::Rational => {
            Some(partition_function(&sum, &FUZZ_TEMPERATURES, 1.0)?.into_iter().map(|(_, z)| z).collect())
        }
        _ => None,
    };
    Ok(Baseline { count: count_colorings(d, q), sum, z })
}

fn compare(base: &Baseline, now: &Baseline) -> Option<String> {
    if now.count != base.count {
        return Some(format!("coloring count {} != {}", now.count, base.count));
    }
    if now.sum != base.sum {
        return Some(format!("state-sum {} != {}", now.sum.display(), base.sum.display()));
    }
    if let (Some(a), Some(b)) = (&base.z, &now.z) {
        for ((za, zb), t) in a.iter().zip(b).zip(FUZZ_TEMPERATURES) {
            if (za - zb).abs() > Z_TOLERANCE * za.abs() {
                return Some(format!("Z({t}) {zb} != {za}"));
            }
        }
    }
    None
}

/// Runs `trials` sequences of 1 to `depth` random moves from `d`, checking
/// the coloring count, the state-sum and Z(T) after every move.
pub fn fuzz_invariance(
    d: &Diagram,
    q: &FiniteQuandle,
    phi: &Cochain,
    cfg: &FuzzConfig,
) -> Result<FuzzReport, InvariantError> {
    let base = measure(d, q, phi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = FuzzReport { trials: cfg.trials, ..Default::default() };
    for trial in 0..cfg.trials {
        let len = if cfg.depth == 0 { 0 } else { rng.gen_range(1..=cfg.depth) };
        let mut cur = d.clone();
        let mut sequence = Vec::new();
        for _ in 0..len {
            let Some(spec) = random_move(&cur, &mut rng) else { break };
            sequence.push(spec);
            *report.moves.entry(spec.kind()).or_default() += 1;
            let failure = match apply_move(&cur, &spec) {
                Ok(out) => {
                    cur = out.diagram;
                    compare(&base, &measure(&cur, q, phi)?)
                }
                Err(e) => Some(e.to_string()),
            };
            if let Some(reason) = failure {
                report.failures.push(FuzzFailure { trial, sequence: sequence.clone(), reason });
                break;
            }
        }
    }
    Ok(report)
}
