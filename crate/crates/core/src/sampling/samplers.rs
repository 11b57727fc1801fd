use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{SamplePlan, SamplerConfig, Strategy};
use super::curve::{build_curve, invert_curve, CumulativeCurve};
use crate::error::{Error, Result};
use crate::motion::{smooth_distribution, MotionDistribution};

/// Random stream for the `ordinal`-th video of a run: ChaCha8 seeded with
/// `seed ^ ordinal`.
pub fn stream_rng(seed: u64, ordinal: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ordinal)
}

/// Runs the configured strategy on an unsmoothed motion distribution,
/// using the stream for `cfg.seed`. Motion-reading strategies apply
/// `cfg.mu` first.
pub fn sample(m: &MotionDistribution, cfg: &SamplerConfig) -> Result<SamplePlan> {
    sample_with_rng(m, cfg, &mut stream_rng(cfg.seed, 0))
}

pub fn sample_with_rng<R: Rng + ?Sized>(
    m: &MotionDistribution,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SamplePlan> {
    cfg.validate()?;
    match cfg.strategy {
        Strategy::MotionGuided => {
            let smoothed = smooth_distribution(m, cfg.mu)?;
            mg_sample(&build_curve(&smoothed)?, cfg, rng)
        }
        Strategy::Segment => segment_sample(m.len(), cfg, rng),
        Strategy::Stride => stride_sample(m.len(), cfg, rng),
        Strategy::TopK => topk_sample(&smooth_distribution(m, cfg.mu)?, cfg),
        Strategy::MotionGuidedClip => {
            windowed_clip_sample(&smooth_distribution(m, cfg.mu)?, cfg, rng)
        }
    }
}

/// Uniform draw strictly inside `(lo, hi)`.
fn open_interval<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let u: f64 = rng.sample(Open01);
        let y = lo + (hi - lo) * u;
        if y > lo && y < hi {
            return y;
        }
    }
}

/// Splits the curve height into `N` equal intervals, draws one height per
/// interval (the midpoint in deterministic mode) and inverts each.
pub fn mg_sample<R: Rng + ?Sized>(
    curve: &CumulativeCurve,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SamplePlan> {
    cfg.validate()?;
    let n = cfg.n_frames;
    let nf = n as f64;
    let draws: Vec<f64> = (1..=n)
        .map(|i| {
            if cfg.deterministic {
                (2 * i - 1) as f64 / (2.0 * nf)
            } else {
                open_interval(rng, (i - 1) as f64 / nf, i as f64 / nf)
            }
        })
        .collect();
    let indices = draws
        .iter()
        .map(|&y| invert_curve(curve, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(SamplePlan {
        indices,
        draws,
        config: cfg.clone(),
    })
}

/// Segment-based sampling: segment `i` spans `[(i-1)T/N, iT/N)`.
///
/// Random mode floors a uniform real from the segment. Deterministic mode
/// takes the frame owning the segment centre `c`, where frame `j` owns the
/// half-open span `(j, j+1]`, i.e. `ceil(c) - 1`. This is the same
/// ownership rule the motion-guided sampler applies to its midpoints, so
/// both agree exactly on a uniform distribution when `T` is a multiple of
/// `2N`.
pub fn segment_sample<R: Rng + ?Sized>(
    t_count: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SamplePlan> {
    cfg.validate()?;
    if t_count == 0 {
        return Err(Error::Structural("cannot sample from zero frames".into()));
    }
    let n = cfg.n_frames;
    let indices = (1..=n)
        .map(|i| {
            if cfg.deterministic {
                // ceil((2i-1)T / 2N) - 1 in exact integer arithmetic
                ((2 * i - 1) * t_count - 1) / (2 * n)
            } else {
                let width = t_count as f64 / n as f64;
                let lo = ((i - 1) * t_count) as f64 / n as f64;
                let x = lo + rng.random::<f64>() * width;
                (x.floor() as usize).min(t_count - 1)
            }
        })
        .collect();
    Ok(SamplePlan {
        indices,
        draws: Vec::new(),
        config: cfg.clone(),
    })
}

/// `N` frames spaced `stride` apart from a random start; picks past the end
/// are clamped to the last frame.
pub fn stride_sample<R: Rng + ?Sized>(
    t_count: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SamplePlan> {
    cfg.validate()?;
    if t_count == 0 {
        return Err(Error::Structural("cannot sample from zero frames".into()));
    }
    let span = cfg.stride.saturating_mul(cfg.n_frames - 1);
    let max_start = (t_count - 1).saturating_sub(span);
    let start = if cfg.deterministic {
        0
    } else {
        rng.random_range(0..=max_start)
    };
    let indices = (0..cfg.n_frames)
        .map(|i| {
            start
                .saturating_add(cfg.stride.saturating_mul(i))
                .min(t_count - 1)
        })
        .collect();
    Ok(SamplePlan {
        indices,
        draws: Vec::new(),
        config: cfg.clone(),
    })
}

/// The `N` most probable frames, ties to the smaller index, sorted.
pub fn topk_sample(m: &MotionDistribution, cfg: &SamplerConfig) -> Result<SamplePlan> {
    cfg.validate()?;
    let t = m.len();
    if cfg.n_frames > t {
        return Err(Error::Config(format!(
            "top-magnitude sampling needs N <= T, got N={} T={t}",
            cfg.n_frames
        )));
    }
    let probs = m.probs();
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
    order.truncate(cfg.n_frames);
    order.sort_unstable();
    Ok(SamplePlan {
        indices: order,
        draws: Vec::new(),
        config: cfg.clone(),
    })
}

/// Motion-guided sampling restricted to a window of `window_len` frames
/// starting at a random offset (0 in deterministic mode).
pub fn windowed_clip_sample<R: Rng + ?Sized>(
    m: &MotionDistribution,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SamplePlan> {
    cfg.validate()?;
    let t = m.len();
    let max_start = t.saturating_sub(cfg.window_len);
    let start = if cfg.deterministic {
        0
    } else {
        rng.random_range(0..=max_start)
    };
    let end = (start + cfg.window_len).min(t);
    let window = MotionDistribution::from_weights(&m.probs()[start..end])?;
    let mut plan = mg_sample(&build_curve(&window)?, cfg, rng)?;
    for i in plan.indices.iter_mut() {
        *i += start;
    }
    Ok(plan)
}
