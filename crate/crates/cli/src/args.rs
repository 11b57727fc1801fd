use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use mgsampler::evalbench::Burst;
use mgsampler::{Representation, SamplerConfig, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "mgsampler",
    version,
    about = "Motion-guided frame sampling for video clips"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Select frame indices for one video (or a batch of videos).
    Sample(SampleArgs),
    /// Compare sampling strategies on a video with known motion bursts.
    Eval(EvalArgs),
    /// Measure per-video sampler latency.
    Bench(BenchArgs),
    /// Write a synthetic video as a raw tensor file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SamplerArgs {
    /// Number of frames to select.
    #[arg(long = "num-frames", default_value_t = 8)]
    pub num_frames: usize,
    /// Smoothing exponent applied to the motion distribution.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub mu: f64,
    /// Frame spacing for the stride strategy.
    #[arg(long, default_value_t = 4)]
    pub stride: usize,
    /// Window length for the mg-clip strategy.
    #[arg(long, default_value_t = 32)]
    pub window: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use interval midpoints and segment centres instead of random draws.
    #[arg(long)]
    pub deterministic: bool,
}

impl SamplerArgs {
    pub fn config(&self, strategy: Strategy) -> SamplerConfig {
        SamplerConfig {
            n_frames: self.num_frames,
            mu: self.mu,
            strategy,
            stride: self.stride,
            window_len: self.window,
            seed: self.seed,
            deterministic: self.deterministic,
        }
    }
}

#[derive(Debug, Args)]
pub struct MotionArgs {
    /// Temporal difference used for salience: image or feature.
    #[arg(long, default_value = "image", value_parser = parse_representation)]
    pub representation: Representation,
    /// MGKB weight file for the feature representation.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Nearest-neighbour spatial downsampling factor before differencing.
    #[arg(long, default_value_t = 1)]
    pub downsample: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["frames_dir", "raw_tensor", "batch"])))]
pub struct SampleArgs {
    /// Directory of PGM/PPM frames.
    #[arg(long = "frames-dir")]
    pub frames_dir: Option<PathBuf>,
    /// MGVT raw tensor file.
    #[arg(long = "raw-tensor")]
    pub raw_tensor: Option<PathBuf>,
    /// Directory holding one frame directory or .mgvt file per video.
    /// --out and --emit-curve then name output directories.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[arg(long, default_value = "mg", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub motion: MotionArgs,
    /// Where to write the JSON sample plan.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the cumulative motion curve as CSV.
    #[arg(long = "emit-curve")]
    pub emit_curve: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SyntheticArgs {
    #[arg(long, default_value_t = 100)]
    pub frames: usize,
    #[arg(long, default_value_t = 32)]
    pub height: usize,
    #[arg(long, default_value_t = 32)]
    pub width: usize,
    #[arg(long, default_value_t = 1)]
    pub channels: usize,
    /// Motion burst as START:END:AMPLITUDE (zero-based, inclusive); repeatable.
    #[arg(long = "burst", value_parser = parse_burst)]
    pub bursts: Vec<Burst>,
    #[arg(long, default_value_t = 64.0)]
    pub background: f32,
    /// Half-width of uniform per-pixel noise.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f32,
    /// Seed for the noise generator.
    #[arg(long = "gen-seed", default_value_t = 0)]
    pub gen_seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Evaluate this raw tensor instead of a synthetic video; --burst
    /// then marks the ground-truth motion frames.
    #[arg(long = "raw-tensor")]
    pub raw_tensor: Option<PathBuf>,
    #[command(flatten)]
    pub synthetic: SyntheticArgs,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Write the coverage report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Raw tensor files to time; repeatable. Without it, random videos are
    /// generated in memory.
    #[arg(long = "raw-tensor")]
    pub raw_tensors: Vec<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub videos: usize,
    #[arg(long, default_value_t = 160)]
    pub frames: usize,
    #[arg(long, default_value_t = 112)]
    pub height: usize,
    #[arg(long, default_value_t = 112)]
    pub width: usize,
    #[arg(long, default_value_t = 3)]
    pub channels: usize,
    #[arg(long, default_value_t = 10)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 2)]
    pub warmup: usize,
    /// Time videos concurrently.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, default_value = "mg", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub motion: MotionArgs,
    /// Write the latency report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub synthetic: SyntheticArgs,
    /// Output MGVT file.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: mgsampler::Error| e.to_string())
}

fn parse_representation(s: &str) -> Result<Representation, String> {
    s.parse().map_err(|e: mgsampler::Error| e.to_string())
}

fn parse_burst(s: &str) -> Result<Burst, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, end, amp] = parts.as_slice() else {
        return Err(format!("expected START:END:AMPLITUDE, got {s:?}"));
    };
    let start = start
        .parse()
        .map_err(|_| format!("bad burst start {start:?}"))?;
    let end = end.parse().map_err(|_| format!("bad burst end {end:?}"))?;
    let amplitude = amp
        .parse()
        .map_err(|_| format!("bad burst amplitude {amp:?}"))?;
    Ok(Burst::new(start, end, amplitude))
}
