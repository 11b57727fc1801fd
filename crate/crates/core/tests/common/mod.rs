#![allow(dead_code)]

use mgsampler::motion::{FrameVolume, MotionDistribution};
use rand::Rng;

/// Leftmost-crossing scan of a piecewise-linear curve on a 1e-6 grid in x,
/// rounded to the nearest 1-based frame (half up), clamped, made zero-based.
/// Only defined for 0 < y <= 1.
pub fn brute_force_invert(anchors: &[f64], y: f64) -> usize {
    const STEPS: u32 = 1_000_000;
    let t = anchors.len() - 1;
    for k in 1..=t {
        let (lo, hi) = (anchors[k - 1], anchors[k]);
        if hi <= lo || hi < y {
            continue;
        }
        for j in 0..=STEPS {
            let frac = f64::from(j) / f64::from(STEPS);
            if lo + frac * (hi - lo) >= y {
                let x = (k - 1) as f64 + frac;
                let nearest = (x + 0.5).floor() as usize;
                return nearest.clamp(1, t) - 1;
            }
        }
    }
    unreachable!("curve never reaches {y}");
}

pub fn entropy(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

/// Random non-negative weights with a mix of dense, sparse and spiky shapes.
pub fn random_weights<R: Rng>(rng: &mut R, t: usize) -> Vec<f64> {
    let shape = rng.random_range(0..4);
    (0..t)
        .map(|_| match shape {
            0 => rng.random::<f64>(),
            1 if rng.random_bool(0.7) => 0.0,
            1 => rng.random::<f64>() * 10.0,
            2 => rng.random::<f64>().powi(8) * 1e6,
            _ => (rng.random_range(0..5) as f64) * 3.0,
        })
        .collect()
}

pub fn random_distribution<R: Rng>(rng: &mut R, t: usize) -> MotionDistribution {
    MotionDistribution::from_weights(&random_weights(rng, t)).unwrap()
}

pub fn random_u8_volume<R: Rng>(
    rng: &mut R,
    t: usize,
    h: usize,
    w: usize,
    c: usize,
) -> FrameVolume {
    let data = (0..t * h * w * c).map(|_| rng.random()).collect();
    FrameVolume::from_u8(t, h, w, c, data).unwrap()
}

pub fn random_f32_volume<R: Rng>(
    rng: &mut R,
    t: usize,
    h: usize,
    w: usize,
    c: usize,
) -> FrameVolume {
    let data = (0..t * h * w * c)
        .map(|_| rng.random_range(0.0f32..255.0))
        .collect();
    FrameVolume::from_f32(t, h, w, c, data).unwrap()
}
