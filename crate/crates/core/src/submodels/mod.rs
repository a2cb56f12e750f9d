//! The four thunder generators.
//!
//! Each generator works in *local* time, where `t = 0` is the moment the sound
//! reaches the listener. Noise-driven filter chains run over a short pre-roll
//! before `t = 0` so their state is already settled when the envelope opens;
//! the pre-roll is discarded. The engine then places local buffers after the
//! distance delay. The `build_*` functions do that placement themselves and
//! return absolute-time mono signals.

use std::f64::consts::FRAC_1_SQRT_2;

pub mod afterimage;
pub mod deepener;
pub mod params;
pub mod plan;
pub mod rumbler;
pub mod strike;

pub use afterimage::{build_afterimage, AfterimageDesign};
pub use deepener::{build_deepener, DeepenerDesign};
pub use params::{Preset, PresetConstants, ThunderParams};
pub use plan::{plan_strikes, strike_envelope_end, ImpulseTrain, SourceKind, SplitBranch, StrikeEntry, StrikePlan};
pub use rumbler::{build_rumbler, RumblerDesign};
pub use strike::{build_multistrike, strike_filter_bank, strike_source, MultiStrikeDesign};

use crate::dsp::{Envelope, NoiseStream};
use crate::engine::RenderConfig;
use crate::error::Result;
use crate::signal::{secs_to_samples, Signal};
use crate::SAMPLE_RATE;

/// Filter settling time rendered and discarded before `t = 0`.
pub const PREROLL_SECS: f64 = 0.5;

/// Length of every local sub-model buffer: long enough for the 18.5 s deepener
/// envelope plus the reverb tail.
pub const TAIL_SECS: f64 = 22.0;

/// Q for filters whose resonance is left open (the rumbler and afterimage
/// lowpasses): Butterworth.
pub const DEFAULT_Q: f64 = FRAC_1_SQRT_2;

pub fn preroll_frames() -> usize {
    secs_to_samples(PREROLL_SECS, SAMPLE_RATE)
}

pub fn local_frames() -> usize {
    secs_to_samples(TAIL_SECS, SAMPLE_RATE)
}

/// Time of the first pre-roll sample.
pub(crate) fn preroll_start() -> f64 {
    -(preroll_frames() as f64) / SAMPLE_RATE as f64
}

/// `len` samples of noise preceded by the pre-roll.
pub(crate) fn noise_with_preroll(seed: u64, stream: &str, len: usize) -> Vec<f64> {
    NoiseStream::new(seed, stream).fill_bipolar(preroll_frames() + len)
}

/// Gated envelope gain for a pre-rolled buffer of `total` samples.
pub(crate) fn gain_trace(env: &Envelope, total: usize) -> Vec<f64> {
    env.trace(preroll_start(), total, SAMPLE_RATE)
}

/// Shifts a local buffer to absolute time.
pub fn place(local: &[f64], delay_frames: usize) -> Vec<f64> {
    let mut out = vec![0.0; delay_frames + local.len()];
    out[delay_frames..].copy_from_slice(local);
    out
}

pub(crate) fn delay_frames(params: &ThunderParams, config: &RenderConfig) -> usize {
    secs_to_samples(params.distance_delay(config.speed_of_sound), SAMPLE_RATE)
}

pub(crate) fn checked(params: &ThunderParams, config: &RenderConfig) -> Result<()> {
    params.validate()?;
    config.validate()
}

pub(crate) fn absolute(local: Vec<f64>, params: &ThunderParams, config: &RenderConfig) -> Signal {
    Signal::mono(place(&local, delay_frames(params, config)))
}
