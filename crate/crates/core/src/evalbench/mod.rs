//! Synthetic videos with planted motion bursts, sampler coverage
//! comparison and the per-video latency harness.

mod coverage;
mod latency;
mod synthetic;

pub use coverage::{
    burst_coverage, compare_on_salience, compare_strategies, CoverageReport, StrategyCoverage,
};
pub use latency::{
    format_latency_table, latency_benchmark, BenchConfig, LatencyReport, LatencyStats, VideoLatency,
};
pub use synthetic::{generate_synthetic_video, Burst, SyntheticSpec};
