use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motion::FrameVolume;
use crate::sampling::stream_rng;

/// Frames `start..=end` (zero-based, inclusive) during which a block moves.
/// The transition into frame `t` carries motion for `start < t <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Burst {
    pub start: usize,
    pub end: usize,
    pub amplitude: f32,
}

impl Burst {
    pub fn new(start: usize, end: usize, amplitude: f32) -> Self {
        Self {
            start,
            end,
            amplitude,
        }
    }

    pub fn contains(&self, t: usize) -> bool {
        (self.start..=self.end).contains(&t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub t_count: usize,
    pub height: usize,
    pub width: usize,
    pub channels: usize,
    pub bursts: Vec<Burst>,
    pub background: f32,
    /// Half-width of uniform per-pixel noise added to every frame.
    pub noise: f32,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(t_count: usize, height: usize, width: usize, channels: usize) -> Self {
        Self {
            t_count,
            height,
            width,
            channels,
            bursts: Vec::new(),
            background: 64.0,
            noise: 0.0,
            seed: 0,
        }
    }

    pub fn with_burst(mut self, burst: Burst) -> Self {
        self.bursts.push(burst);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_count == 0 || self.height == 0 || self.width == 0 {
            return Err(Error::Config(
                "synthetic video dimensions must be positive".into(),
            ));
        }
        if self.channels != 1 && self.channels != 3 {
            return Err(Error::Config(format!(
                "synthetic video channels must be 1 or 3, got {}",
                self.channels
            )));
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) || !self.background.is_finite() {
            return Err(Error::Config(
                "noise must be >= 0 and background finite".into(),
            ));
        }
        for b in &self.bursts {
            if b.start > b.end || b.end >= self.t_count {
                return Err(Error::Config(format!(
                    "burst {}..={} lies outside frames 0..{}",
                    b.start, b.end, self.t_count
                )));
            }
            if !(b.amplitude.is_finite() && b.amplitude > 0.0) {
                return Err(Error::Config(format!(
                    "burst amplitude must be > 0, got {}",
                    b.amplitude
                )));
            }
        }
        if !self.bursts.is_empty() {
            if self.width < 3 {
                return Err(Error::Config(
                    "bursts need a frame width of at least 3".into(),
                ));
            }
            if self.height < self.bursts.len() {
                return Err(Error::Config(format!(
                    "{} bursts need a frame height of at least {}",
                    self.bursts.len(),
                    self.bursts.len()
                )));
            }
        }
        Ok(())
    }

    /// Rows given to each burst's block.
    pub fn block_height(&self) -> usize {
        self.height / self.bursts.len().max(1)
    }

    /// Block width; always even so that a half-width shift exists.
    pub fn block_width(&self) -> usize {
        2 * (self.width / 6).max(1)
    }

    /// Pixel-channel values covered by one block.
    pub fn block_area(&self) -> usize {
        self.block_height() * self.block_width() * self.channels
    }

    /// Salience each burst transition contributes: `amplitude * block_area`.
    pub fn transition_mass(&self, burst: &Burst) -> f64 {
        f64::from(burst.amplitude) * self.block_area() as f64
    }

    pub fn in_burst(&self, t: usize) -> bool {
        self.bursts.iter().any(|b| b.contains(t))
    }
}

/// Renders a `SyntheticSpec` as an `f32` volume.
///
/// Every burst owns a horizontal band of rows holding a block of intensity
/// `background + amplitude`. The block sits still outside its burst and
/// shifts right by half its width (wrapping) on each transition inside it,
/// so each such transition changes exactly `block_area` values by
/// `amplitude`. Without noise, frames outside bursts are identical.
pub fn generate_synthetic_video(spec: &SyntheticSpec) -> Result<FrameVolume> {
    spec.validate()?;
    let (t_count, h, w, c) = (spec.t_count, spec.height, spec.width, spec.channels);
    let bh = spec.block_height();
    let bw = spec.block_width();
    let frame_len = h * w * c;
    let mut data = vec![spec.background; t_count * frame_len];
    let mut rng = stream_rng(spec.seed, 0);

    for (t, frame) in data.chunks_exact_mut(frame_len).enumerate() {
        for (j, b) in spec.bursts.iter().enumerate() {
            let steps = t.clamp(b.start, b.end) - b.start;
            let x0 = (steps * (bw / 2)) % w;
            let value = spec.background + b.amplitude;
            for y in j * bh..(j + 1) * bh {
                for i in 0..bw {
                    let x = (x0 + i) % w;
                    let base = (y * w + x) * c;
                    frame[base..base + c].fill(value);
                }
            }
        }
        if spec.noise > 0.0 {
            for v in frame.iter_mut() {
                *v += rng.random_range(-spec.noise..=spec.noise);
            }
        }
    }
    FrameVolume::from_f32(t_count, h, w, c, data)
}
