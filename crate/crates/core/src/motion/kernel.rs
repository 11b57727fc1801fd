use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::volume::Frame;
use crate::error::{Error, Result};

/// Number of output filters in the bank.
pub const KERNEL_COUNT: usize = 8;
/// Spatial extent of each filter (square).
pub const KERNEL_SIZE: usize = 7;
const PAD: usize = KERNEL_SIZE / 2;
const TAPS: usize = KERNEL_SIZE * KERNEL_SIZE;

const WEIGHT_MAGIC: &[u8; 4] = b"MGKB";
const WEIGHT_HEADER_LEN: usize = 16;

/// Eight 7x7 filters applied with stride 1 and zero padding 3, no bias.
///
/// Weights are stored `K x C x 7 x 7`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvKernelBank {
    channels: usize,
    weights: Vec<f32>,
}

impl ConvKernelBank {
    pub fn new(channels: usize, weights: Vec<f32>) -> Result<Self> {
        if channels == 0 {
            return Err(Error::Config(
                "kernel bank needs at least one channel".into(),
            ));
        }
        let expected = KERNEL_COUNT * channels * TAPS;
        if weights.len() != expected {
            return Err(Error::Config(format!(
                "kernel bank for {channels} channel(s) needs {expected} weights \
                 ({KERNEL_COUNT}x{channels}x{KERNEL_SIZE}x{KERNEL_SIZE}), got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Config("kernel weights must be finite".into()));
        }
        Ok(Self { channels, weights })
    }

    /// Builds a bank from `f(kernel, channel, row, col)`.
    pub fn from_fn(
        channels: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> f32,
    ) -> Result<Self> {
        let mut weights = Vec::with_capacity(KERNEL_COUNT * channels * TAPS);
        for k in 0..KERNEL_COUNT {
            for c in 0..channels {
                for dy in 0..KERNEL_SIZE {
                    for dx in 0..KERNEL_SIZE {
                        weights.push(f(k, c, dy, dx));
                    }
                }
            }
        }
        Self::new(channels, weights)
    }

    pub fn zeros(channels: usize) -> Result<Self> {
        Self::from_fn(channels, |_, _, _, _| 0.0)
    }

    /// First filter passes every input channel through its centre tap, the
    /// other seven are zero. On grayscale input the feature-level salience
    /// then equals the image-level salience.
    pub fn identity(channels: usize) -> Result<Self> {
        Self::from_fn(channels, |k, _, dy, dx| {
            if k == 0 && dy == PAD && dx == PAD {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Gaussian weights with standard deviation 1/49 drawn from a ChaCha8
    /// stream seeded with `seed`.
    pub fn gaussian(channels: usize, seed: u64) -> Result<Self> {
        let normal = Normal::new(0.0f32, 1.0 / TAPS as f32).expect("valid std");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_fn(channels, |_, _, _, _| normal.sample(&mut rng))
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn weights(&self) -> &[f32] {
        &self.weights
    }

    #[inline]
    fn tap(&self, k: usize, c: usize, dy: usize, dx: usize) -> f32 {
        self.weights[((k * self.channels + c) * KERNEL_SIZE + dy) * KERNEL_SIZE + dx]
    }

    /// Serializes to the `MGKB` weight-file layout: magic, `u32` channel
    /// count, 8 reserved zero bytes, then little-endian `f32` weights.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(WEIGHT_HEADER_LEN + 4 * self.weights.len());
        out.extend_from_slice(WEIGHT_MAGIC);
        out.extend_from_slice(&(self.channels as u32).to_le_bytes());
        out.extend_from_slice(&[0u8; 8]);
        for w in &self.weights {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < WEIGHT_HEADER_LEN {
            return Err(Error::Length {
                expected: WEIGHT_HEADER_LEN as u64,
                actual: bytes.len() as u64,
            });
        }
        if &bytes[..4] != WEIGHT_MAGIC {
            return Err(Error::Format("weight file does not start with MGKB".into()));
        }
        let channels = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        if bytes[8..16].iter().any(|&b| b != 0) {
            return Err(Error::Format(
                "weight file reserved bytes must be zero".into(),
            ));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Format(format!(
                "weight file channel count must be 1 or 3, got {channels}"
            )));
        }
        let expected = WEIGHT_HEADER_LEN + 4 * KERNEL_COUNT * channels * TAPS;
        if bytes.len() != expected {
            return Err(Error::Length {
                expected: expected as u64,
                actual: bytes.len() as u64,
            });
        }
        let weights = bytes[WEIGHT_HEADER_LEN..]
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
            .collect();
        Self::new(channels, weights)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }
}

/// Output of [`conv2d_apply`]: `KERNEL_COUNT` planes of `height x width`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMaps {
    pub height: usize,
    pub width: usize,
    pub data: Vec<f64>,
}

impl FeatureMaps {
    pub fn plane(&self, k: usize) -> &[f64] {
        let n = self.height * self.width;
        &self.data[k * n..(k + 1) * n]
    }
}

/// 2-D cross-correlation of one interleaved `H x W x C` frame with every
/// filter in `bank`, stride 1, zero padding 3. Output keeps the input size.
pub fn conv2d_apply(
    frame: Frame<'_>,
    height: usize,
    width: usize,
    channels: usize,
    bank: &ConvKernelBank,
) -> Result<FeatureMaps> {
    if bank.channels() != channels {
        return Err(Error::Config(format!(
            "kernel bank expects {} channel(s), frame has {channels}",
            bank.channels()
        )));
    }
    if frame.len() != height * width * channels {
        return Err(Error::Structural(format!(
            "frame has {} values, expected {}",
            frame.len(),
            height * width * channels
        )));
    }

    // planar copy: planes[c][y * width + x]
    let plane_len = height * width;
    let mut planes = vec![0.0f64; channels * plane_len];
    for p in 0..plane_len {
        for c in 0..channels {
            planes[c * plane_len + p] = frame.get(p * channels + c);
        }
    }

    let mut data = vec![0.0f64; KERNEL_COUNT * plane_len];
    for (k, out) in data.chunks_exact_mut(plane_len).enumerate() {
        for c in 0..channels {
            let input = &planes[c * plane_len..(c + 1) * plane_len];
            for dy in 0..KERNEL_SIZE {
                // output row y reads input row y + dy - PAD
                let y_lo = PAD.saturating_sub(dy);
                let y_hi = (height + PAD).saturating_sub(dy).min(height);
                for dx in 0..KERNEL_SIZE {
                    let w = f64::from(bank.tap(k, c, dy, dx));
                    if w == 0.0 {
                        continue;
                    }
                    let x_lo = PAD.saturating_sub(dx);
                    let x_hi = (width + PAD).saturating_sub(dx).min(width);
                    if x_lo >= x_hi {
                        continue;
                    }
                    for y in y_lo..y_hi {
                        let iy = y + dy - PAD;
                        let src =
                            &input[iy * width + x_lo + dx - PAD..iy * width + x_hi + dx - PAD];
                        let dst = &mut out[y * width + x_lo..y * width + x_hi];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += w * s;
                        }
                    }
                }
            }
        }
    }
    Ok(FeatureMaps {
        height,
        width,
        data,
    })
}
