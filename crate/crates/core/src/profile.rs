//! Cost measurements comparing multi-trial refinement with a one-shot reduction
//! at the target parameters.

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codec::{inject_errors, CodeSpec, GrsCode};
use crate::decoder::{multi_trial_decode, Schedule, Status, StopPoint};
use crate::error::Result;
use crate::gsmodule::{InterpolationContext, InterpolationState};

/// One reduction or decoding attempt of a profiled run.
#[derive(Clone, Debug, Serialize)]
pub struct StepProfile {
    pub step: String,
    pub s: usize,
    pub ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub od_before: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformations: Option<usize>,
    pub micros: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialProfile {
    pub weight: usize,
    pub seed: u64,
    pub status: Status,
    pub stopped_at: StopPoint,
    pub transmitted_found: bool,
    pub micro_steps: usize,
    pub multi_trial_transformations: usize,
    pub multi_trial_micros: u64,
    pub one_shot_od_before: i64,
    pub one_shot_transformations: usize,
    pub one_shot_micros: u64,
    pub steps: Vec<StepProfile>,
}

/// Seed of trial `index` at error weight `weight`.
pub fn trial_seed(base: u64, weight: usize, index: usize) -> u64 {
    base.wrapping_add((weight as u64).wrapping_mul(1_000_003))
        .wrapping_add(index as u64)
}

/// Encodes a random message, corrupts `weight` positions, then runs the multi-trial
/// decoder and, separately, the one-shot reduction at the schedule's target.
pub fn profile_trial(code: &GrsCode, schedule: &Schedule, weight: usize, seed: u64) -> Result<TrialProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let msg = code.random_message(&mut rng);
    let cw = code.encode(&msg)?;
    let (received, _) = inject_errors(code.field(), &cw, weight, seed ^ 0x9e37_79b9_7f4a_7c15)?;

    let start = Instant::now();
    let res = multi_trial_decode(code, &received, schedule)?;
    let multi_trial_micros = start.elapsed().as_micros() as u64;

    let (s, ell) = schedule.target();
    let start = Instant::now();
    let ctx = Arc::new(InterpolationContext::new(code, &received)?);
    let (_, one_shot) = InterpolationState::direct(ctx, s, ell)?;
    let one_shot_micros = start.elapsed().as_micros() as u64;

    let steps = res
        .trace
        .iter()
        .map(|t| StepProfile {
            step: t.step.clone(),
            s: t.s,
            ell: t.ell,
            od_before: t.od_before,
            transformations: t.transformations,
            micros: t.elapsed.as_micros() as u64,
        })
        .collect();
    Ok(TrialProfile {
        weight,
        seed,
        status: res.status,
        stopped_at: res.stopped_at,
        transmitted_found: res.candidates.iter().any(|c| c.codeword == cw),
        micro_steps: res.micro_steps(),
        multi_trial_transformations: res.transformations(),
        multi_trial_micros,
        one_shot_od_before: one_shot.od_before,
        one_shot_transformations: one_shot.transformations,
        one_shot_micros,
        steps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightSummary {
    pub weight: usize,
    pub trials: usize,
    pub found: usize,
    pub median_multi_trial: f64,
    pub median_one_shot: f64,
    pub max_micro_steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Medians {
    pub multi_trial: f64,
    pub one_shot: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub code: CodeSpec,
    pub target: (usize, usize),
    pub schedule: String,
    pub seed: u64,
    pub per_weight: Vec<WeightSummary>,
    /// Medians of transformation counts pooled over all trials.
    pub overall: Medians,
    pub trials: Vec<TrialProfile>,
}

pub fn median(values: &mut [usize]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable();
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m] as f64
    } else {
        (values[m - 1] + values[m]) as f64 / 2.0
    }
}

fn medians<'a>(trials: impl Iterator<Item = &'a TrialProfile> + Clone) -> (f64, f64) {
    let mut multi: Vec<_> = trials.clone().map(|t| t.multi_trial_transformations).collect();
    let mut one: Vec<_> = trials.map(|t| t.one_shot_transformations).collect();
    (median(&mut multi), median(&mut one))
}

/// Profiles `trials` seeded runs at every weight in `weights`, in seed order.
pub fn run_bench(
    code: &GrsCode,
    schedule: &Schedule,
    weights: &[usize],
    trials: usize,
    seed: u64,
) -> Result<BenchReport> {
    let mut all = Vec::with_capacity(weights.len() * trials);
    for &w in weights {
        for i in 0..trials {
            all.push(profile_trial(code, schedule, w, trial_seed(seed, w, i))?);
        }
    }
    let per_weight = weights
        .iter()
        .map(|&w| {
            let group = all.iter().filter(|t| t.weight == w);
            let (median_multi_trial, median_one_shot) = medians(group.clone());
            WeightSummary {
                weight: w,
                trials: group.clone().count(),
                found: group.clone().filter(|t| t.status == Status::Found).count(),
                median_multi_trial,
                median_one_shot,
                max_micro_steps: group.map(|t| t.micro_steps).max().unwrap_or(0),
            }
        })
        .collect();
    let (multi_trial, one_shot) = medians(all.iter());
    Ok(BenchReport {
        code: code.spec(),
        target: schedule.target(),
        schedule: schedule.to_string(),
        seed,
        per_weight,
        overall: Medians { multi_trial, one_shot },
        trials: all,
    })
}
