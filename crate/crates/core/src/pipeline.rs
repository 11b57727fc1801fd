//! End-to-end glue: frames to salience to distribution to curve to plan.

use rand::Rng;

use crate::error::{Error, Result};
use crate::motion::{
    feature_diff_salience, feature_diff_salience_par, image_diff_salience, image_diff_salience_par,
    normalize_salience, smooth_distribution, ConvKernelBank, FrameVolume, MotionDistribution,
    Representation, SalienceVector,
};
use crate::sampling::{build_curve, sample_with_rng, CumulativeCurve, SamplePlan, SamplerConfig};

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub sampler: SamplerConfig,
    pub representation: Representation,
    /// Filters for feature-level salience. `None` uses the seeded Gaussian
    /// bank (seed 0).
    pub bank: Option<ConvKernelBank>,
    /// Spatial downsampling factor applied before differencing.
    pub downsample: usize,
    /// Compute salience across frames on the rayon pool.
    pub parallel: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            sampler: SamplerConfig::default(),
            representation: Representation::Image,
            bank: None,
            downsample: 1,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub salience: SalienceVector,
    /// Normalized, unsmoothed distribution.
    pub distribution: MotionDistribution,
    /// Curve over the whole video after smoothing with the configured mu.
    pub curve: CumulativeCurve,
    pub plan: SamplePlan,
}

pub fn compute_salience(video: &FrameVolume, opts: &PipelineOptions) -> Result<SalienceVector> {
    let scaled;
    let video = if opts.downsample > 1 {
        scaled = video.downsample(opts.downsample)?;
        &scaled
    } else if opts.downsample == 0 {
        return Err(Error::Config("downsample factor must be >= 1".into()));
    } else {
        video
    };
    match opts.representation {
        Representation::Image if opts.parallel => Ok(image_diff_salience_par(video)),
        Representation::Image => Ok(image_diff_salience(video)),
        Representation::Feature => {
            let default_bank;
            let bank = match &opts.bank {
                Some(b) => b,
                None => {
                    default_bank = ConvKernelBank::gaussian(video.channels(), 0)?;
                    &default_bank
                }
            };
            if opts.parallel {
                feature_diff_salience_par(video, bank)
            } else {
                feature_diff_salience(video, bank)
            }
        }
    }
}

pub fn run_pipeline<R: Rng + ?Sized>(
    video: &FrameVolume,
    opts: &PipelineOptions,
    rng: &mut R,
) -> Result<PipelineOutput> {
    opts.sampler.validate()?;
    let salience = compute_salience(video, opts)?;
    let distribution = normalize_salience(&salience);
    let plan = sample_with_rng(&distribution, &opts.sampler, rng)?;
    let mu = if opts.sampler.mu.is_finite() && opts.sampler.mu >= 0.0 {
        opts.sampler.mu
    } else {
        1.0
    };
    let curve = build_curve(&smooth_distribution(&distribution, mu)?)?;
    Ok(PipelineOutput {
        salience,
        distribution,
        curve,
        plan,
    })
}
