use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{conv2d_apply, ConvKernelBank, FeatureMaps, KERNEL_COUNT};
use super::volume::{Frame, FrameVolume};
use crate::error::{Error, Result};

/// Which temporal difference produced a [`SalienceVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Image,
    Feature,
}

impl std::str::FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "image" => Ok(Self::Image),
            "feature" => Ok(Self::Feature),
            other => Err(Error::Config(format!(
                "unknown representation {other:?} (expected image or feature)"
            ))),
        }
    }
}

/// Raw per-frame motion magnitude. The first frame has no predecessor and
/// always scores zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SalienceVector {
    values: Vec<f64>,
    representation: Representation,
}

impl SalienceVector {
    pub fn new(values: Vec<f64>, representation: Representation) -> Result<Self> {
        match values.first() {
            None => return Err(Error::Structural("salience vector is empty".into())),
            Some(&v) if v != 0.0 => {
                return Err(Error::Structural(format!(
                    "first salience value must be 0, got {v}"
                )))
            }
            _ => {}
        }
        if let Some((t, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::Structural(format!(
                "salience at frame {t} must be finite and non-negative, got {v}"
            )));
        }
        Ok(Self {
            values,
            representation,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Sum of absolute differences over every pixel and channel.
fn abs_diff_sum(prev: Frame<'_>, cur: Frame<'_>) -> f64 {
    match (prev, cur) {
        (Frame::U8(a), Frame::U8(b)) => {
            // integer accumulation is exact and cannot overflow for addressable frames
            let s: u64 = a
                .iter()
                .zip(b)
                .map(|(&p, &c)| u64::from((i16::from(c) - i16::from(p)).unsigned_abs()))
                .sum();
            s as f64
        }
        (Frame::F32(a), Frame::F32(b)) => a
            .iter()
            .zip(b)
            .map(|(&p, &c)| (f64::from(c) - f64::from(p)).abs())
            .sum(),
        _ => unreachable!("frames of one volume share a pixel type"),
    }
}

/// Image-level temporal difference: `S[t] = sum |I(t) - I(t-1)|` over all
/// pixels and channels, `S[0] = 0`.
pub fn image_diff_salience(video: &FrameVolume) -> SalienceVector {
    let mut values = Vec::with_capacity(video.t_count());
    values.push(0.0);
    values.extend((1..video.t_count()).map(|t| abs_diff_sum(video.frame(t - 1), video.frame(t))));
    SalienceVector {
        values,
        representation: Representation::Image,
    }
}

/// Parallel-over-frames variant of [`image_diff_salience`]; bitwise equal
/// to the sequential result.
pub fn image_diff_salience_par(video: &FrameVolume) -> SalienceVector {
    let mut values = vec![0.0];
    values.par_extend(
        (1..video.t_count())
            .into_par_iter()
            .map(|t| abs_diff_sum(video.frame(t - 1), video.frame(t))),
    );
    SalienceVector {
        values,
        representation: Representation::Image,
    }
}

fn features(video: &FrameVolume, bank: &ConvKernelBank, t: usize) -> FeatureMaps {
    conv2d_apply(
        video.frame(t),
        video.height(),
        video.width(),
        video.channels(),
        bank,
    )
    .expect("channel count checked by caller")
}

/// Per pixel `sqrt(sum_k (F_k(t) - F_k(t-1))^2)`, summed over pixels.
fn feature_diff_sum(prev: &FeatureMaps, cur: &FeatureMaps) -> f64 {
    let n = cur.height * cur.width;
    let mut total = 0.0;
    for p in 0..n {
        let mut sq = 0.0;
        for k in 0..KERNEL_COUNT {
            let d = cur.data[k * n + p] - prev.data[k * n + p];
            sq += d * d;
        }
        total += sq.sqrt();
    }
    total
}

fn check_bank(video: &FrameVolume, bank: &ConvKernelBank) -> Result<()> {
    if bank.channels() != video.channels() {
        return Err(Error::Config(format!(
            "kernel bank expects {} channel(s), video has {}",
            bank.channels(),
            video.channels()
        )));
    }
    Ok(())
}

/// Feature-level temporal difference through a fixed convolution bank.
pub fn feature_diff_salience(video: &FrameVolume, bank: &ConvKernelBank) -> Result<SalienceVector> {
    check_bank(video, bank)?;
    let mut values = Vec::with_capacity(video.t_count());
    values.push(0.0);
    let mut prev = features(video, bank, 0);
    for t in 1..video.t_count() {
        let cur = features(video, bank, t);
        values.push(feature_diff_sum(&prev, &cur));
        prev = cur;
    }
    Ok(SalienceVector {
        values,
        representation: Representation::Feature,
    })
}

/// Parallel variant of [`feature_diff_salience`]. Frames are split into
/// contiguous chunks; each chunk recomputes the features of the frame just
/// before it, so results are bitwise equal to the sequential path.
pub fn feature_diff_salience_par(
    video: &FrameVolume,
    bank: &ConvKernelBank,
) -> Result<SalienceVector> {
    check_bank(video, bank)?;
    let t_count = video.t_count();
    let transitions: Vec<usize> = (1..t_count).collect();
    let chunk = transitions
        .len()
        .div_ceil(rayon::current_num_threads().max(1))
        .max(1);
    let mut values = vec![0.0];
    let parts: Vec<Vec<f64>> = transitions
        .par_chunks(chunk)
        .map(|ts| {
            let mut prev = features(video, bank, ts[0] - 1);
            ts.iter()
                .map(|&t| {
                    let cur = features(video, bank, t);
                    let s = feature_diff_sum(&prev, &cur);
                    prev = cur;
                    s
                })
                .collect()
        })
        .collect();
    values.extend(parts.into_iter().flatten());
    Ok(SalienceVector {
        values,
        representation: Representation::Feature,
    })
}
