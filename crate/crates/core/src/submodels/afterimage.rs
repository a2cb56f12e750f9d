//! Afterimage: slow low-passed noise ring-modulated by a second noise source,
//! clipped, then bandpassed around 333 Hz.

use serde::Serialize;

use super::{absolute, checked, gain_trace, local_frames, noise_with_preroll, preroll_frames, preroll_start, ThunderParams, DEFAULT_Q};
use crate::dsp::{Biquad, BiquadSpec, CutoffRamp, Envelope, FilterKind, Period, SweptBiquad, Undulation};
use crate::engine::RenderConfig;
use crate::error::Result;
use crate::signal::Signal;

pub const AFTERIMAGE_GAIN_SCALE: f64 = 2.0;
pub const ENVELOPE_SECS: f64 = 14.0;
pub const CUTOFF_START_HZ: f64 = 33.0;
pub const DRIVE: f64 = 80.0;
pub const BANDPASS_HZ: f64 = 333.0;
pub const BANDPASS_Q: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AfterimageDesign {
    pub envelope: Envelope,
    pub cutoff: CutoffRamp,
    pub lowpass_q: f64,
    pub drive: f64,
    pub bandpass: BiquadSpec,
    /// Overall sub-model gain (preset dependent).
    pub output_gain: f64,
    #[serde(skip)]
    seed: u64,
}

impl AfterimageDesign {
    pub fn new(params: &ThunderParams, config: &RenderConfig) -> Result<Self> {
        let period = Period::new(0.0, ENVELOPE_SECS);
        Ok(Self {
            envelope: Envelope::undulating(
                params.initial_strike * AFTERIMAGE_GAIN_SCALE,
                config.epsilon,
                period,
                Undulation::seeded(config.seed, "afterimage/undulation"),
            ),
            cutoff: CutoffRamp::new(CUTOFF_START_HZ, 0.0, period)?,
            lowpass_q: DEFAULT_Q,
            drive: DRIVE,
            bandpass: BiquadSpec::bandpass(BANDPASS_HZ, BANDPASS_Q)?,
            output_gain: params.preset.constants().afterimage_gain,
            seed: config.seed,
        })
    }

    /// The clipped product before the bandpass, with pre-roll.
    fn intermediate_with_preroll(&self, len: usize) -> Vec<f64> {
        let wn1 = noise_with_preroll(self.seed, "afterimage/wn1", len);
        let wn2 = noise_with_preroll(self.seed, "afterimage/wn2", len);
        let mut lp = SweptBiquad::new(FilterKind::Lowpass, self.lowpass_q, self.cutoff).expect("validated");
        lp.process(&wn1, preroll_start())
            .iter()
            .zip(&wn2)
            .map(|(a, b)| (a * self.drive * b).clamp(-1.0, 1.0))
            .collect()
    }

    /// The clipped product before the bandpass, in local time.
    pub fn intermediate(&self, len: usize) -> Vec<f64> {
        self.intermediate_with_preroll(len)[preroll_frames()..].to_vec()
    }

    pub fn render_local(&self, len: usize) -> Vec<f64> {
        if self.envelope.start_gain == 0.0 || self.output_gain == 0.0 {
            return vec![0.0; len];
        }
        let x = self.intermediate_with_preroll(len);
        let total = x.len();
        let gain = gain_trace(&self.envelope, total);
        let mut bp = Biquad::new(self.bandpass);
        let pre = preroll_frames();
        x.iter()
            .zip(&gain)
            .map(|(&v, g)| bp.tick(v) * g * self.output_gain)
            .skip(pre)
            .collect()
    }
}

pub fn build_afterimage(params: &ThunderParams, config: &RenderConfig) -> Result<Signal> {
    checked(params, config)?;
    let design = AfterimageDesign::new(params, config)?;
    Ok(absolute(design.render_local(local_frames()), params, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodels::Preset;
    use crate::SAMPLE_RATE;

    #[test]
    fn intermediate_is_clipped() {
        let d = AfterimageDesign::new(&ThunderParams::default(), &RenderConfig::with_seed(2)).unwrap();
        let x = d.intermediate(2 * SAMPLE_RATE as usize);
        assert!(x.iter().all(|v| (-1.0..=1.0).contains(v)));
        // drive of 80 saturates a good fraction of samples early on
        assert!(x.iter().any(|&v| v.abs() == 1.0));
    }

    #[test]
    fn v2_scales_output_by_point_four() {
        let cfg = RenderConfig::with_seed(6);
        let v1 = AfterimageDesign::new(&ThunderParams { preset: Preset::V1, ..Default::default() }, &cfg).unwrap();
        let v2 = AfterimageDesign::new(&ThunderParams { preset: Preset::V2, ..Default::default() }, &cfg).unwrap();
        let n = SAMPLE_RATE as usize;
        let (a, b) = (v1.render_local(n), v2.render_local(n));
        let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
        let ratio_db = 20.0 * (rms(&b) / rms(&a)).log10();
        assert!((ratio_db - 20.0 * 0.4f64.log10()).abs() < 0.5, "{ratio_db}");
    }
}
