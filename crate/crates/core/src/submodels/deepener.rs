//! Deepener: band-limited low-end growl from a lowpass/highpass pair, a drive
//! stage with clipping, and a final lowpass.

use serde::Serialize;

use super::{absolute, checked, gain_trace, local_frames, noise_with_preroll, preroll_frames, ThunderParams};
use crate::dsp::{Biquad, BiquadSpec, Envelope, Period, Undulation};
use crate::engine::RenderConfig;
use crate::error::Result;
use crate::signal::Signal;

pub const GROWL_GAIN_SCALE: f64 = 6.0;
pub const ENVELOPE_SECS: f64 = 18.5;
pub const DRIVE: f64 = 3.5;
pub const FILTER_Q: f64 = 3.0;
pub const LOWPASS_1_HZ: f64 = 60.0;
pub const LOWPASS_2_HZ: f64 = 80.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeepenerDesign {
    pub envelope: Envelope,
    pub lowpass_1: BiquadSpec,
    pub highpass: BiquadSpec,
    pub lowpass_2: BiquadSpec,
    pub drive: f64,
    #[serde(skip)]
    seed: u64,
}

impl DeepenerDesign {
    pub fn new(params: &ThunderParams, config: &RenderConfig) -> Result<Self> {
        Ok(Self {
            envelope: Envelope::undulating(
                params.growl * GROWL_GAIN_SCALE,
                0.0,
                Period::new(0.0, ENVELOPE_SECS),
                Undulation::seeded(config.seed, "deepener/undulation"),
            ),
            lowpass_1: BiquadSpec::lowpass(LOWPASS_1_HZ, FILTER_Q)?,
            highpass: BiquadSpec::highpass(params.preset.constants().deepener_highpass_hz, FILTER_Q)?,
            lowpass_2: BiquadSpec::lowpass(LOWPASS_2_HZ, FILTER_Q)?,
            drive: DRIVE,
            seed: config.seed,
        })
    }

    pub fn render_local(&self, len: usize) -> Vec<f64> {
        if self.envelope.start_gain == 0.0 {
            return vec![0.0; len];
        }
        let wn = noise_with_preroll(self.seed, "deepener/wn", len);
        let gain = gain_trace(&self.envelope, wn.len());
        let mut lp1 = Biquad::new(self.lowpass_1);
        let mut hp = Biquad::new(self.highpass);
        let mut lp2 = Biquad::new(self.lowpass_2);
        wn.iter()
            .zip(&gain)
            .map(|(&x, g)| {
                let driven = (hp.tick(lp1.tick(x)) * self.drive).clamp(-1.0, 1.0);
                lp2.tick(driven) * g
            })
            .skip(preroll_frames())
            .collect()
    }
}

pub fn build_deepener(params: &ThunderParams, config: &RenderConfig) -> Result<Signal> {
    checked(params, config)?;
    let design = DeepenerDesign::new(params, config)?;
    Ok(absolute(design.render_local(local_frames()), params, config))
}
