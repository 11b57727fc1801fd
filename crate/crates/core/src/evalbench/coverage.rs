use serde::Serialize;

use super::latency::LatencyStats;
use super::synthetic::Burst;
use crate::error::Result;
use crate::motion::{image_diff_salience, normalize_salience, FrameVolume, SalienceVector};
use crate::sampling::{sample, SamplePlan, SamplerConfig, Strategy};

/// Fraction of picks that land inside any burst; 0 when there are no bursts.
pub fn burst_coverage(plan: &SamplePlan, bursts: &[Burst]) -> f64 {
    if plan.indices.is_empty() || bursts.is_empty() {
        return 0.0;
    }
    let inside = plan
        .indices
        .iter()
        .filter(|&&i| bursts.iter().any(|b| b.contains(i)))
        .count();
    inside as f64 / plan.indices.len() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyCoverage {
    pub strategy: Strategy,
    pub indices: Vec<usize>,
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub t_count: usize,
    pub n_frames: usize,
    pub mu: f64,
    pub deterministic: bool,
    pub seed: u64,
    /// Share of normalized salience on frames inside bursts.
    pub salience_mass_in_bursts: f64,
    pub strategies: Vec<StrategyCoverage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency: Option<LatencyStats>,
}

impl CoverageReport {
    pub fn coverage_of(&self, strategy: Strategy) -> Option<f64> {
        self.strategies
            .iter()
            .find(|s| s.strategy == strategy)
            .map(|s| s.coverage)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Fixed-column text table, one row per strategy.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<10} {:>9}  indices\n", "strategy", "coverage");
        for s in &self.strategies {
            out.push_str(&format!(
                "{:<10} {:>9.4}  {:?}\n",
                s.strategy.as_str(),
                s.coverage,
                s.indices
            ));
        }
        out.push_str(&format!(
            "salience mass in bursts: {:.4}\n",
            self.salience_mass_in_bursts
        ));
        out
    }
}

const COMPARED: [Strategy; 4] = [
    Strategy::MotionGuided,
    Strategy::Segment,
    Strategy::Stride,
    Strategy::TopK,
];

/// Runs mg, segment, stride and topk on the same salience with the shared
/// settings of `base` (strategy field ignored) and scores burst coverage.
pub fn compare_on_salience(
    salience: &SalienceVector,
    bursts: &[Burst],
    base: &SamplerConfig,
) -> Result<CoverageReport> {
    let m = normalize_salience(salience);
    let salience_mass_in_bursts = m
        .probs()
        .iter()
        .enumerate()
        .filter(|(t, _)| bursts.iter().any(|b| b.contains(*t)))
        .map(|(_, p)| p)
        .sum();
    let strategies = COMPARED
        .iter()
        .map(|&strategy| {
            let cfg = SamplerConfig {
                strategy,
                ..base.clone()
            };
            let plan = sample(&m, &cfg)?;
            Ok(StrategyCoverage {
                strategy,
                coverage: burst_coverage(&plan, bursts),
                indices: plan.indices,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageReport {
        t_count: m.len(),
        n_frames: base.n_frames,
        mu: base.mu,
        deterministic: base.deterministic,
        seed: base.seed,
        salience_mass_in_bursts,
        strategies,
        latency: None,
    })
}

/// Image-level salience of `video`, then [`compare_on_salience`].
pub fn compare_strategies(
    video: &FrameVolume,
    bursts: &[Burst],
    base: &SamplerConfig,
) -> Result<CoverageReport> {
    compare_on_salience(&image_diff_salience(video), bursts, base)
}
