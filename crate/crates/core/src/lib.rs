//! Motion-guided frame sampling.
//!
//! Frames are scored by how much they change relative to their predecessor,
//! the scores are turned into a probability distribution over frames, and
//! frame indices are picked by inverting the cumulative motion curve at
//! evenly spaced heights. Frames that carry more motion therefore receive
//! proportionally more picks, while the picks still span every motion
//! segment of the video.
//!
//! The crate is organized as:
//!
//! - [`motion`]: frame volumes, temporal-difference salience and the
//!   normalized/smoothed motion distribution.
//! - [`sampling`]: the cumulative curve, its inversion and the samplers
//!   (motion-guided, segment, fixed stride, top magnitude, windowed clip).
//! - [`ingest`]: codec-free loaders (PGM/PPM directories, raw tensors) and
//!   JSON/CSV exporters.
//! - [`pipeline`]: the end-to-end path from frames to a sample plan.
//! - [`evalbench`]: synthetic videos with planted bursts, coverage metrics
//!   and a latency harness.

pub mod error;
pub mod evalbench;
pub mod ingest;
pub mod motion;
pub mod pipeline;
pub mod sampling;

pub use error::{Error, Result};
pub use motion::{
    ConvKernelBank, FrameVolume, MotionDistribution, PixelData, Representation, SalienceVector,
};
pub use sampling::{CumulativeCurve, SamplePlan, SamplerConfig, Strategy};
