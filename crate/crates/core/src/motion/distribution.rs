use super::salience::SalienceVector;
use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// Probability of each frame carrying motion. `mu` is the smoothing
/// exponent that produced it (1.0 when unsmoothed).
#[derive(Debug, Clone, PartialEq)]
pub struct MotionDistribution {
    probs: Vec<f64>,
    mu: f64,
    degenerate_uniform: bool,
}

impl MotionDistribution {
    /// Wraps externally computed probabilities after checking them.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Structural("motion distribution is empty".into()));
        }
        if let Some((t, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::Structural(format!(
                "probability at frame {t} must be finite and non-negative, got {p}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Structural(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            probs,
            mu: 1.0,
            degenerate_uniform: false,
        })
    }

    pub fn uniform(t_count: usize) -> Result<Self> {
        if t_count == 0 {
            return Err(Error::Structural("motion distribution is empty".into()));
        }
        Ok(Self {
            probs: vec![1.0 / t_count as f64; t_count],
            mu: 1.0,
            degenerate_uniform: false,
        })
    }

    /// Normalizes non-negative weights, falling back to uniform when they are
    /// all zero.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Structural("motion distribution is empty".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Structural(
                "weights must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if sum > 0.0 && sum.is_finite() {
            Ok(Self {
                probs: weights.iter().map(|w| w / sum).collect(),
                mu: 1.0,
                degenerate_uniform: false,
            })
        } else {
            let mut m = Self::uniform(weights.len())?;
            m.degenerate_uniform = true;
            Ok(m)
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Set when the source salience was all zero and the uniform fallback
    /// was used.
    pub fn is_degenerate_uniform(&self) -> bool {
        self.degenerate_uniform
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        -self
            .probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.ln())
            .sum::<f64>()
    }
}

/// l1-normalizes salience into a distribution. A video without any motion
/// maps to the uniform distribution with the degenerate flag set.
pub fn normalize_salience(s: &SalienceVector) -> MotionDistribution {
    MotionDistribution::from_weights(s.values()).expect("salience vectors are validated")
}

/// Power smoothing `p^mu / sum(p^mu)`. `mu = 0` gives the exact uniform
/// distribution, `mu < 1` flattens, `mu > 1` sharpens.
pub fn smooth_distribution(m: &MotionDistribution, mu: f64) -> Result<MotionDistribution> {
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::Config(format!(
            "smoothing exponent must be finite and >= 0, got {mu}"
        )));
    }
    let t = m.len();
    if mu == 0.0 {
        return Ok(MotionDistribution {
            probs: vec![1.0 / t as f64; t],
            mu: 0.0,
            degenerate_uniform: m.degenerate_uniform,
        });
    }
    if mu == 1.0 {
        return Ok(m.clone());
    }
    // 0^mu = 0 for mu > 0
    let powered: Vec<f64> = m.probs.iter().map(|&p| p.powf(mu)).collect();
    let sum: f64 = powered.iter().sum();
    let (probs, fallback) = if sum > 0.0 && sum.is_finite() {
        (powered.iter().map(|p| p / sum).collect(), false)
    } else {
        (vec![1.0 / t as f64; t], true)
    };
    Ok(MotionDistribution {
        probs,
        mu: m.mu * mu,
        degenerate_uniform: m.degenerate_uniform || fallback,
    })
}
