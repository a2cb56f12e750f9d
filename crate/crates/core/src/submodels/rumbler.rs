//! Rumbler: two low-passed noise branches whose cutoffs close over twelve
//! seconds. One branch is half-wave rectified; the other is sampled and held on
//! the wraps of a phasor whose rate follows the rumble envelope, then scaled
//! by a slow copy of itself.

use serde::Serialize;

use super::{absolute, checked, gain_trace, local_frames, noise_with_preroll, preroll_frames, preroll_start, ThunderParams, DEFAULT_Q};
use crate::dsp::{half_rectify, sample_and_hold, Biquad, BiquadSpec, CutoffRamp, Envelope, FilterKind, Period, Phasor, SweptBiquad, Undulation};
use crate::engine::RenderConfig;
use crate::error::Result;
use crate::signal::Signal;

pub const RUMBLE_GAIN_SCALE: f64 = 2.5;
pub const ENVELOPE_SECS: f64 = 9.0;
pub const CUTOFF_RAMP_SECS: f64 = 12.0;
pub const CUTOFF_START_HZ: f64 = 1000.0;
/// Cutoff of the follower that scales the held branch by its own level.
pub const SELF_SCALE_HZ: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RumblerDesign {
    pub envelope: Envelope,
    pub cutoff: CutoffRamp,
    pub filter_q: f64,
    pub self_scale_hz: f64,
    #[serde(skip)]
    seed: u64,
}

/// Intermediate signals, all in local time without pre-roll.
#[derive(Debug, Clone)]
pub struct RumblerTaps {
    pub gain: Vec<f64>,
    pub trigger: Vec<f64>,
    pub rn1: Vec<f64>,
    pub rn2: Vec<f64>,
    pub rn2_scaled: Vec<f64>,
    pub output: Vec<f64>,
}

impl RumblerDesign {
    pub fn new(params: &ThunderParams, config: &RenderConfig) -> Result<Self> {
        Ok(Self {
            envelope: Envelope::undulating(
                params.rumble * RUMBLE_GAIN_SCALE,
                config.epsilon,
                Period::new(0.0, ENVELOPE_SECS),
                Undulation::seeded(config.seed, "rumbler/undulation"),
            ),
            cutoff: CutoffRamp::new(CUTOFF_START_HZ, 0.0, Period::new(0.0, CUTOFF_RAMP_SECS))?,
            filter_q: DEFAULT_Q,
            self_scale_hz: SELF_SCALE_HZ,
            seed: config.seed,
        })
    }

    pub fn render_taps(&self, len: usize) -> RumblerTaps {
        let pre = preroll_frames();
        let total = pre + len;
        let t0 = preroll_start();
        let wn1 = noise_with_preroll(self.seed, "rumbler/wn1", len);
        let wn2 = noise_with_preroll(self.seed, "rumbler/wn2", len);
        let gain = gain_trace(&self.envelope, total);

        let mut lp1 = SweptBiquad::new(FilterKind::Lowpass, self.filter_q, self.cutoff).expect("validated");
        let mut lp2 = lp1.clone();
        let rn1 = half_rectify(&lp1.process(&wn1, t0));

        let mut phasor = Phasor::new();
        let trigger: Vec<f64> = gain.iter().map(|g| phasor.tick(g + 1.0)).collect();
        let rn2 = sample_and_hold(&lp2.process(&wn2, t0), &trigger);

        let mut follower = Biquad::new(BiquadSpec::lowpass(self.self_scale_hz, DEFAULT_Q).expect("constant"));
        let rn2_scaled: Vec<f64> = rn2.iter().map(|&x| x * (0.5 + 0.5 * follower.tick(x).abs())).collect();

        let output: Vec<f64> = (0..total)
            .map(|i| gain[i] * 0.5 * (rn1[i] + rn2_scaled[i]))
            .collect();

        let trim = |v: Vec<f64>| v[pre..].to_vec();
        RumblerTaps {
            gain: trim(gain),
            trigger: trim(trigger),
            rn1: trim(rn1),
            rn2: trim(rn2),
            rn2_scaled: trim(rn2_scaled),
            output: trim(output),
        }
    }

    pub fn render_local(&self, len: usize) -> Vec<f64> {
        if self.envelope.start_gain == 0.0 {
            return vec![0.0; len];
        }
        self.render_taps(len).output
    }
}

pub fn build_rumbler(params: &ThunderParams, config: &RenderConfig) -> Result<Signal> {
    checked(params, config)?;
    let design = RumblerDesign::new(params, config)?;
    Ok(absolute(design.render_local(local_frames()), params, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SAMPLE_RATE;

    #[test]
    fn full_rumble_starts_at_two_and_a_half() {
        let p = ThunderParams {
            rumble: 1.0,
            ..Default::default()
        };
        let d = RumblerDesign::new(&p, &RenderConfig::default()).unwrap();
        assert_eq!(d.envelope.start_gain, 2.5);
        assert_eq!(d.envelope.end_gain, crate::EPSILON);
    }

    #[test]
    fn held_branch_is_constant_between_wraps() {
        let d = RumblerDesign::new(&ThunderParams::default(), &RenderConfig::with_seed(4)).unwrap();
        let taps = d.render_taps(3 * SAMPLE_RATE as usize);
        let tr = &taps.trigger;
        let mut wraps = 0;
        for n in 1..tr.len() {
            if tr[n] >= tr[n - 1] {
                assert_eq!(taps.rn2[n], taps.rn2[n - 1], "changed without a wrap at {n}");
            } else {
                wraps += 1;
            }
        }
        // the phasor runs between 1 and ~4.25 Hz
        assert!((3..=13).contains(&wraps), "{wraps}");
        assert!(taps.rn1.iter().all(|&x| x >= 0.0));
    }
}
