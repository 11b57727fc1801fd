//! Per-frame motion salience and the motion distribution over frames.

mod distribution;
mod kernel;
mod salience;
mod volume;

pub use distribution::{normalize_salience, smooth_distribution, MotionDistribution};
pub use kernel::{conv2d_apply, ConvKernelBank, FeatureMaps, KERNEL_COUNT, KERNEL_SIZE};
pub use salience::{
    feature_diff_salience, feature_diff_salience_par, image_diff_salience, image_diff_salience_par,
    Representation, SalienceVector,
};
pub use volume::{Frame, FrameVolume, PixelData};
