use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::motion::FrameVolume;
use crate::pipeline::{run_pipeline, PipelineOptions};
use crate::sampling::stream_rng;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub pipeline: PipelineOptions,
    /// Timed runs per video.
    pub repetitions: usize,
    /// Untimed runs per video before measuring.
    pub warmup: usize,
    /// Time videos concurrently (one video per task).
    pub parallel_batch: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            pipeline: PipelineOptions::default(),
            repetitions: 10,
            warmup: 2,
            parallel_batch: false,
        }
    }
}

/// Wall-clock summary in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatencyStats {
    pub samples: usize,
    pub mean_us: f64,
    pub p95_us: f64,
    pub min_us: f64,
    pub max_us: f64,
}

impl LatencyStats {
    pub fn from_durations(durations: &[Duration]) -> Option<Self> {
        if durations.is_empty() {
            return None;
        }
        let mut us: Vec<f64> = durations.iter().map(|d| d.as_secs_f64() * 1e6).collect();
        us.sort_by(f64::total_cmp);
        let n = us.len();
        // nearest-rank percentile
        let rank = (0.95 * n as f64).ceil() as usize;
        Some(Self {
            samples: n,
            mean_us: us.iter().sum::<f64>() / n as f64,
            p95_us: us[rank.clamp(1, n) - 1],
            min_us: us[0],
            max_us: us[n - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VideoLatency {
    pub ordinal: usize,
    pub t_count: usize,
    pub stats: LatencyStats,
    /// Indices picked by the last timed run.
    pub indices: Vec<usize>,
    /// Time spent loading the video from disk, measured outside the
    /// sampler timings; filled in by callers that do the loading.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub load_us: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatencyReport {
    pub per_video: Vec<VideoLatency>,
    /// Statistics over every timed run of every video.
    pub overall: LatencyStats,
}

fn time_video(
    ordinal: usize,
    video: &FrameVolume,
    cfg: &BenchConfig,
) -> Result<(VideoLatency, Vec<Duration>)> {
    let seed = cfg.pipeline.sampler.seed;
    for _ in 0..cfg.warmup {
        let mut rng = stream_rng(seed, ordinal as u64);
        std::hint::black_box(run_pipeline(video, &cfg.pipeline, &mut rng)?);
    }
    let mut durations = Vec::with_capacity(cfg.repetitions);
    let mut indices = Vec::new();
    for _ in 0..cfg.repetitions {
        let mut rng = stream_rng(seed, ordinal as u64);
        let start = Instant::now();
        let out = std::hint::black_box(run_pipeline(video, &cfg.pipeline, &mut rng)?);
        durations.push(start.elapsed());
        indices = out.plan.indices;
    }
    let stats = LatencyStats::from_durations(&durations).expect("repetitions >= 1");
    Ok((
        VideoLatency {
            ordinal,
            t_count: video.t_count(),
            stats,
            indices,
            load_us: None,
        },
        durations,
    ))
}

/// Times salience, smoothing, curve construction and sampling per video.
/// Frames must already be in memory; loading is not part of the timing.
pub fn latency_benchmark(volumes: &[FrameVolume], cfg: &BenchConfig) -> Result<LatencyReport> {
    if cfg.repetitions == 0 {
        return Err(Error::Config("repetitions must be >= 1".into()));
    }
    if volumes.is_empty() {
        return Err(Error::Config("no videos to benchmark".into()));
    }
    cfg.pipeline.sampler.validate()?;
    let results: Vec<(VideoLatency, Vec<Duration>)> = if cfg.parallel_batch {
        volumes
            .par_iter()
            .enumerate()
            .map(|(i, v)| time_video(i, v, cfg))
            .collect::<Result<_>>()?
    } else {
        volumes
            .iter()
            .enumerate()
            .map(|(i, v)| time_video(i, v, cfg))
            .collect::<Result<_>>()?
    };
    let all: Vec<Duration> = results
        .iter()
        .flat_map(|(_, d)| d.iter().copied())
        .collect();
    let overall = LatencyStats::from_durations(&all).expect("at least one sample");
    Ok(LatencyReport {
        per_video: results.into_iter().map(|(v, _)| v).collect(),
        overall,
    })
}

/// Fixed-column table with one row per video and an `all` summary row.
pub fn format_latency_table(report: &LatencyReport) -> String {
    let mut out = format!(
        "{:>6} {:>7} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
        "video", "frames", "mean_us", "p95_us", "min_us", "max_us", "load_us"
    );
    let row = |label: String, frames: String, s: &LatencyStats, load: Option<f64>| {
        format!(
            "{:>6} {:>7} {:>12.1} {:>12.1} {:>12.1} {:>12.1} {:>12}\n",
            label,
            frames,
            s.mean_us,
            s.p95_us,
            s.min_us,
            s.max_us,
            load.map_or_else(|| "-".to_string(), |l| format!("{l:.1}"))
        )
    };
    for v in &report.per_video {
        out.push_str(&row(
            v.ordinal.to_string(),
            v.t_count.to_string(),
            &v.stats,
            v.load_us,
        ));
    }
    out.push_str(&row("all".into(), "-".into(), &report.overall, None));
    out
}
