use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::motion::MotionDistribution;

const END_TOLERANCE: f64 = 1e-9;

/// Piecewise-linear cumulative motion `F` with anchors at `x = 0..=T`,
/// `F(0) = 0`, `F(T) = 1`, non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeCurve {
    values: Vec<f64>,
}

impl CumulativeCurve {
    /// Wraps anchor heights `F_0..=F_T` after checking the curve invariants.
    pub fn from_anchors(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Structural("curve needs at least two anchors".into()));
        }
        if values[0] != 0.0 {
            return Err(Error::Structural(format!(
                "curve must start at 0, got {}",
                values[0]
            )));
        }
        let last = values[values.len() - 1];
        if (last - 1.0).abs() > END_TOLERANCE {
            return Err(Error::Structural(format!(
                "curve must end at 1, got {last}"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Structural(
                "curve must be finite and non-decreasing".into(),
            ));
        }
        Ok(Self { values })
    }

    /// Anchor heights `F_0..=F_T`.
    pub fn anchors(&self) -> &[f64] {
        &self.values
    }

    /// Number of frames `T`.
    pub fn t_count(&self) -> usize {
        self.values.len() - 1
    }

    /// Real-valued preimage of `y`: the leftmost `x` on a rising segment
    /// with `F(x) = y`. Plateaus resolve to their left end; `y = 0` lands on
    /// the start of the first rising segment.
    pub fn preimage(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain(format!(
                "curve height must lie in [0, 1], got {y}"
            )));
        }
        let f = &self.values;
        let tail = &f[1..];
        let k = 1 + if y > 0.0 {
            tail.partition_point(|&v| v < y)
        } else {
            tail.partition_point(|&v| v <= 0.0)
        };
        // F_T = 1 >= y, so k <= T; anything else means a broken curve
        let k = k.min(self.t_count());
        let (lo, hi) = (f[k - 1], f[k]);
        let frac = if hi > lo {
            ((y - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            1.0
        };
        Ok((k - 1) as f64 + frac)
    }

    /// Curve data as CSV: header `frame,cumulative` and one row per anchor.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(16 * self.values.len());
        out.push_str("frame,cumulative\n");
        for (k, v) in self.values.iter().enumerate() {
            writeln!(out, "{k},{v}").expect("writing to a String");
        }
        out
    }
}

/// Prefix sums of the distribution. The last anchor is snapped to exactly 1
/// when it is within 1e-9.
pub fn build_curve(m: &MotionDistribution) -> Result<CumulativeCurve> {
    let probs = m.probs();
    if probs.is_empty() {
        return Err(Error::Structural(
            "cannot build a curve over zero frames".into(),
        ));
    }
    let mut values = Vec::with_capacity(probs.len() + 1);
    let mut acc = 0.0;
    values.push(0.0);
    for &p in probs {
        if !(p.is_finite() && p >= 0.0) {
            return Err(Error::Structural(format!("invalid probability {p}")));
        }
        acc += p;
        values.push(acc);
    }
    if (acc - 1.0).abs() > END_TOLERANCE {
        return Err(Error::Structural(format!(
            "distribution sums to {acc}, expected 1"
        )));
    }
    for v in values.iter_mut() {
        *v = v.min(1.0);
    }
    *values.last_mut().expect("non-empty") = 1.0;
    Ok(CumulativeCurve { values })
}

/// Rounds half up: `k + 0.5` goes to `k + 1`.
fn round_half_up(x: f64) -> f64 {
    let f = x.floor();
    if x - f >= 0.5 {
        f + 1.0
    } else {
        f
    }
}

/// Zero-based frame index whose curve position is nearest to the preimage
/// of `y`. The 1-based position is rounded half up and clamped to `[1, T]`.
pub fn invert_curve(curve: &CumulativeCurve, y: f64) -> Result<usize> {
    let x = curve.preimage(y)?;
    let t = curve.t_count();
    let one_based = (round_half_up(x) as usize).clamp(1, t);
    Ok(one_based - 1)
}
