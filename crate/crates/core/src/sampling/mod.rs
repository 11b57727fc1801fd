//! Cumulative motion curve and frame-index samplers.
//!
//! All indices produced here are zero-based. The curve itself is indexed
//! by `x = 0..=T`, where the segment `[k-1, k]` belongs to the `k`-th frame.

mod config;
mod curve;
mod samplers;

pub use config::{SamplePlan, SamplerConfig, Strategy};
pub use curve::{build_curve, invert_curve, CumulativeCurve};
pub use samplers::{
    mg_sample, sample, sample_with_rng, segment_sample, stream_rng, stride_sample, topk_sample,
    windowed_clip_sample,
};
