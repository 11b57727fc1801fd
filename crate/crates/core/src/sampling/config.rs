use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Motion-guided sampling over the whole video.
    #[serde(rename = "mg")]
    MotionGuided,
    /// One frame per equal-length temporal segment.
    #[serde(rename = "segment")]
    Segment,
    /// A fixed-stride clip from a random start.
    #[serde(rename = "stride")]
    Stride,
    /// The frames with the largest motion probability.
    #[serde(rename = "topk")]
    TopK,
    /// Motion-guided sampling inside a contiguous window.
    #[serde(rename = "mg-clip")]
    MotionGuidedClip,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::MotionGuided,
        Strategy::Segment,
        Strategy::Stride,
        Strategy::TopK,
        Strategy::MotionGuidedClip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::MotionGuided => "mg",
            Strategy::Segment => "segment",
            Strategy::Stride => "stride",
            Strategy::TopK => "topk",
            Strategy::MotionGuidedClip => "mg-clip",
        }
    }

    /// Whether the strategy reads the (smoothed) motion distribution.
    pub fn uses_motion(self) -> bool {
        matches!(
            self,
            Strategy::MotionGuided | Strategy::TopK | Strategy::MotionGuidedClip
        )
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown strategy {s:?} (expected mg, segment, stride, topk or mg-clip)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n_frames: usize,
    pub mu: f64,
    pub strategy: Strategy,
    pub stride: usize,
    pub window_len: usize,
    pub seed: u64,
    /// Use interval midpoints / segment centres / zero offsets instead of
    /// random draws.
    pub deterministic: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            n_frames: 8,
            mu: 0.5,
            strategy: Strategy::MotionGuided,
            stride: 4,
            window_len: 32,
            seed: 0,
            deterministic: false,
        }
    }
}

impl SamplerConfig {
    pub fn new(strategy: Strategy, n_frames: usize) -> Self {
        Self {
            strategy,
            n_frames,
            ..Self::default()
        }
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_window(mut self, window_len: usize) -> Self {
        self.window_len = window_len;
        self
    }

    pub fn deterministic(mut self, deterministic: bool) -> Self {
        self.deterministic = deterministic;
        self
    }

    /// Checks `n_frames` and the parameters the chosen strategy reads.
    pub fn validate(&self) -> Result<()> {
        if self.n_frames == 0 {
            return Err(Error::Config("number of frames must be >= 1".into()));
        }
        if self.strategy.uses_motion() && !(self.mu.is_finite() && self.mu >= 0.0) {
            return Err(Error::Config(format!(
                "mu must be finite and >= 0, got {}",
                self.mu
            )));
        }
        if self.strategy == Strategy::Stride && self.stride == 0 {
            return Err(Error::Config("stride must be >= 1".into()));
        }
        if self.strategy == Strategy::MotionGuidedClip && self.window_len == 0 {
            return Err(Error::Config("window length must be >= 1".into()));
        }
        Ok(())
    }
}

/// Selected frame indices with enough provenance to reproduce them.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    /// Zero-based, non-decreasing, exactly `config.n_frames` long.
    pub indices: Vec<usize>,
    /// Curve heights drawn by the motion-guided strategies; empty otherwise.
    pub draws: Vec<f64>,
    pub config: SamplerConfig,
}

#[derive(Serialize)]
struct PlanRecord<'a> {
    strategy: Strategy,
    seed: u64,
    mu: f64,
    n_frames: usize,
    indices: &'a [usize],
    draws: &'a [f64],
}

impl SamplePlan {
    pub fn strategy(&self) -> Strategy {
        self.config.strategy
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Compact JSON object
    /// `{strategy, seed, mu, n_frames, indices, draws}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PlanRecord {
            strategy: self.config.strategy,
            seed: self.config.seed,
            mu: self.config.mu,
            n_frames: self.config.n_frames,
            indices: &self.indices,
            draws: &self.draws,
        })
        .expect("plan serialization cannot fail")
    }
}
