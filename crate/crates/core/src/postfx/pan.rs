//! Equal-power stereo placement plus a small interaural delay.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::dsp::NoiseStream;
use crate::signal::{secs_to_samples, Signal};
use crate::SAMPLE_RATE;

pub const MAX_AZIMUTH_DEG: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PanSpec {
    /// Degrees in `[-60, 60]`; negative is left.
    pub azimuth: f64,
}

impl PanSpec {
    pub fn new(azimuth: f64) -> Self {
        Self {
            azimuth: azimuth.clamp(-MAX_AZIMUTH_DEG, MAX_AZIMUTH_DEG),
        }
    }

    pub fn seeded(seed: u64, stream: &str) -> Self {
        Self::new(NoiseStream::new(seed, stream).uniform(-MAX_AZIMUTH_DEG, MAX_AZIMUTH_DEG))
    }

    /// `(left, right)` with `left² + right² = 1`.
    pub fn gains(&self) -> (f64, f64) {
        let phi = (self.azimuth + MAX_AZIMUTH_DEG) / (2.0 * MAX_AZIMUTH_DEG) * FRAC_PI_2;
        (phi.cos(), phi.sin())
    }
}

/// Places a mono signal in the stereo field.
pub fn pan(input: &[f64], spec: &PanSpec) -> Signal {
    let (gl, gr) = spec.gains();
    Signal::stereo(input.iter().map(|x| x * gl).collect(), input.iter().map(|x| x * gr).collect())
}

/// Applies pan gains channel-wise to a signal that is already stereo
/// (e.g. after a stereo reverb). Mono input is duplicated first.
pub fn pan_channels(input: &Signal, spec: &PanSpec) -> Signal {
    if input.channel_count() == 1 {
        return pan(input.samples(), spec);
    }
    let (gl, gr) = spec.gains();
    Signal::stereo(
        input.channel(0).iter().map(|x| x * gl).collect(),
        input.channel(1).iter().map(|x| x * gr).collect(),
    )
}

/// Delays the quieter channel of a panned source by a few milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpreadDelay {
    pub delay_secs: f64,
}

impl SpreadDelay {
    pub const RANGE_SECS: (f64, f64) = (0.005, 0.030);

    pub fn seeded(seed: u64, stream: &str) -> Self {
        Self {
            delay_secs: NoiseStream::new(seed, stream).uniform(Self::RANGE_SECS.0, Self::RANGE_SECS.1),
        }
    }

    /// 0 for left, 1 for right. Ties delay the right channel.
    pub fn delayed_channel(pan: &PanSpec) -> usize {
        let (gl, gr) = pan.gains();
        if gl < gr {
            0
        } else {
            1
        }
    }

    /// Shifts one channel later in place, keeping the length.
    pub fn apply(&self, signal: &mut Signal, pan: &PanSpec) {
        let shift = secs_to_samples(self.delay_secs, SAMPLE_RATE);
        let ch = signal.channel_mut(Self::delayed_channel(pan));
        if shift == 0 || ch.is_empty() {
            return;
        }
        let shift = shift.min(ch.len());
        ch.copy_within(..ch.len() - shift, shift);
        ch[..shift].fill(0.0);
    }
}
