use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::submodels::TAIL_SECS;
use crate::wav::BitDepth;
use crate::{EPSILON, SAMPLE_RATE, SPEED_OF_SOUND};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Must equal [`SAMPLE_RATE`].
    pub sample_rate: u32,
    pub seed: u64,
    /// Metres per second; sets the onset delay for a given distance.
    pub speed_of_sound: f64,
    /// Terminal gain of the envelopes that must stay positive.
    pub epsilon: f64,
    pub bit_depth: BitDepth,
    /// Replaces the synthetic beach response when set.
    pub impulse_response: Option<Arc<Signal>>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            sample_rate: SAMPLE_RATE,
            seed: 0,
            speed_of_sound: SPEED_OF_SOUND,
            epsilon: EPSILON,
            bit_depth: BitDepth::Float32,
            impulse_response: None,
        }
    }
}

impl RenderConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate != SAMPLE_RATE {
            return Err(Error::Config(format!(
                "sample rate is fixed at {SAMPLE_RATE} Hz, got {}",
                self.sample_rate
            )));
        }
        if !(self.speed_of_sound.is_finite() && self.speed_of_sound > 0.0) {
            return Err(Error::Config(format!(
                "speed of sound must be positive, got {}",
                self.speed_of_sound
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.01) {
            return Err(Error::Config(format!("epsilon must be in (0, 0.01), got {}", self.epsilon)));
        }
        if let Some(ir) = &self.impulse_response {
            if ir.is_empty() || ir.sample_rate != SAMPLE_RATE {
                return Err(Error::Config("impulse response must be non-empty and at 44100 Hz".into()));
            }
        }
        Ok(())
    }

    /// Total render length in seconds for a given distance delay.
    pub fn duration_secs(&self, delay_secs: f64) -> f64 {
        delay_secs + TAIL_SECS
    }
}

/// A fresh seed for callers that did not supply one. Not reproducible by
/// design; echo it back so the render can be repeated.
pub fn draw_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or_default();
    h.write_u128(now);
    h.finish()
}
