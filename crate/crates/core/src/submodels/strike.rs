//! Multi-strike lightning: up to five claps, each a noise burst or an impulse
//! train pushed through a swept bandpass pair and a linear decay.

use serde::Serialize;

use super::plan::{strike_envelope_end, ImpulseTrain, SourceKind, StrikeEntry, StrikePlan};
use super::{absolute, checked, local_frames, noise_with_preroll, plan_strikes, preroll_frames, preroll_start, ThunderParams};
use crate::dsp::{CutoffRamp, Envelope, FilterKind, NoiseStream, Period, SweptBiquad};
use crate::engine::RenderConfig;
use crate::error::Result;
use crate::signal::Signal;
use crate::SAMPLE_RATE;

/// Envelope start gain is `initial_strike` times this.
pub const STRIKE_GAIN_SCALE: f64 = 2.0;

/// Initial bandpass centre for a draw `r`, before any preset offset.
pub fn strike_center_hz(r: f64) -> f64 {
    r * 1200.0 + 100.0
}

/// One voice of the sub-model: a strike or its split branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrikeVoice {
    pub ordinal: u32,
    pub is_split: bool,
    /// The uniform draw that sets this voice's centre frequency and length.
    pub r: f64,
    pub source: SourceKind,
    pub filter_pair: (u32, u32),
    pub filter_q: f64,
    pub cutoff: CutoffRamp,
    pub envelope: Envelope,
    #[serde(skip)]
    impulses: Option<ImpulseTrain>,
    #[serde(skip)]
    noise_stream: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiStrikeDesign {
    pub plan: StrikePlan,
    /// Added to every voice's centre frequency.
    pub center_offset_hz: f64,
    pub voices: Vec<StrikeVoice>,
    #[serde(skip)]
    seed: u64,
}

impl MultiStrikeDesign {
    pub fn new(params: &ThunderParams, config: &RenderConfig) -> Result<Self> {
        let plan = plan_strikes(config.seed);
        let constants = params.preset.constants();
        let peak = params.initial_strike * STRIKE_GAIN_SCALE;
        let mut voices = Vec::new();
        for entry in &plan.strikes {
            voices.push(voice(
                entry,
                entry.r,
                0.0,
                peak,
                entry.impulses.clone(),
                false,
                constants.strike_q,
                constants.strike_center_offset_hz,
            )?);
            if let Some(split) = &entry.split {
                voices.push(voice(
                    entry,
                    split.r,
                    split.offset_secs,
                    peak * split.gain,
                    split.impulses.clone(),
                    true,
                    constants.strike_q,
                    constants.strike_center_offset_hz,
                )?);
            }
        }
        Ok(Self {
            plan,
            center_offset_hz: constants.strike_center_offset_hz,
            voices,
            seed: config.seed,
        })
    }

    /// Dry mono strike sum in local time, `len` samples.
    pub fn render_local(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for v in &self.voices {
            self.render_voice(v, &mut out);
        }
        out
    }

    fn render_voice(&self, v: &StrikeVoice, out: &mut [f64]) {
        if v.envelope.start_gain == 0.0 {
            return;
        }
        let sr = SAMPLE_RATE as f64;
        // Nothing survives past the end of the linear envelope.
        let active = ((v.envelope.period.end * sr).ceil() as usize + 1).min(out.len());
        let (source, t0) = match v.source {
            SourceKind::Noise => (
                noise_with_preroll(self.seed, &v.noise_stream, active),
                preroll_start(),
            ),
            SourceKind::Impulses => {
                let mut buf = vec![0.0; active];
                let offset = (v.envelope.period.start * sr).round() as usize;
                if let Some(train) = &v.impulses {
                    for idx in train.sample_indices() {
                        if let Some(s) = buf.get_mut(idx + offset) {
                            *s = 1.0;
                        }
                    }
                }
                (buf, 0.0)
            }
        };
        let filtered = strike_filter_bank(&source, v.filter_q, v.cutoff, t0);
        let skip = if v.source == SourceKind::Noise { preroll_frames() } else { 0 };
        for (i, (o, x)) in out.iter_mut().zip(&filtered[skip..]).enumerate() {
            *o += x * v.envelope.gated_gain_at(i as f64 / sr);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn voice(
    entry: &StrikeEntry,
    r: f64,
    offset: f64,
    peak: f64,
    impulses: Option<ImpulseTrain>,
    is_split: bool,
    q: f64,
    center_offset: f64,
) -> Result<StrikeVoice> {
    let end = strike_envelope_end(offset, r)?;
    let period = Period::new(offset, end);
    let center = strike_center_hz(r) + center_offset;
    let stream = if is_split {
        format!("strike/{}/split/noise", entry.ordinal)
    } else {
        format!("strike/{}/noise", entry.ordinal)
    };
    Ok(StrikeVoice {
        ordinal: entry.ordinal,
        is_split,
        r,
        source: entry.source,
        filter_pair: entry.filter_pair(),
        filter_q: q,
        cutoff: CutoffRamp::new(center, center / 2.0, period)?,
        envelope: Envelope::linear(peak, 0.0, period),
        impulses,
        noise_stream: stream,
    })
}

/// The excitation for a plan entry: noise for even ordinals, otherwise
/// unit spikes at the entry's impulse onsets. `frames` samples from `t = 0`.
pub fn strike_source(entry: &StrikeEntry, seed: u64, frames: usize) -> Vec<f64> {
    match entry.source {
        SourceKind::Noise => NoiseStream::new(seed, &format!("strike/{}/noise", entry.ordinal)).fill_bipolar(frames),
        SourceKind::Impulses => {
            let mut buf = vec![0.0; frames];
            if let Some(train) = &entry.impulses {
                for idx in train.sample_indices() {
                    if let Some(s) = buf.get_mut(idx) {
                        *s = 1.0;
                    }
                }
            }
            buf
        }
    }
}

/// Two identical swept bandpasses in series. `t0` is the time of `x[0]`.
pub fn strike_filter_bank(x: &[f64], q: f64, cutoff: CutoffRamp, t0: f64) -> Vec<f64> {
    let mut first = SweptBiquad::new(FilterKind::Bandpass, q, cutoff).expect("strike cutoff validated at design time");
    let mut second = first.clone();
    let y = first.process(x, t0);
    second.process(&y, t0)
}

/// Dry multi-strike sub-model in absolute time (distance delay applied).
pub fn build_multistrike(params: &ThunderParams, config: &RenderConfig) -> Result<Signal> {
    checked(params, config)?;
    let design = MultiStrikeDesign::new(params, config)?;
    Ok(absolute(design.render_local(local_frames()), params, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodels::plan::SourceKind;
    use crate::submodels::Preset;

    fn params(strike: f64, preset: Preset) -> ThunderParams {
        ThunderParams {
            distance: 0.0,
            initial_strike: strike,
            preset,
            ..Default::default()
        }
    }

    #[test]
    fn centre_frequency_examples() {
        assert_eq!(strike_center_hz(0.5), 700.0);
        assert!((strike_center_hz(1e-12) - 100.0).abs() < 1e-6);
    }

    #[test]
    fn voices_follow_plan_and_preset() {
        let cfg = RenderConfig::with_seed(3);
        for preset in [Preset::V1, Preset::V2] {
            let d = MultiStrikeDesign::new(&params(0.5, preset), &cfg).unwrap();
            let c = preset.constants();
            let main: Vec<_> = d.voices.iter().filter(|v| !v.is_split).collect();
            assert_eq!(main.len(), d.plan.count());
            for (v, e) in main.iter().zip(&d.plan.strikes) {
                let f0 = strike_center_hz(e.r) + c.strike_center_offset_hz;
                assert_eq!(v.cutoff.start_hz, f0);
                assert_eq!(v.cutoff.end_hz, f0 / 2.0);
                assert_eq!(v.filter_q, c.strike_q);
                assert_eq!(v.envelope.start_gain, 1.0);
                assert_eq!(v.envelope.end_gain, 0.0);
                assert_eq!(v.cutoff.period, v.envelope.period);
            }
        }
    }

    #[test]
    fn v2_lowers_centre_by_twenty_hertz() {
        assert_eq!(strike_center_hz(0.5) + Preset::V2.constants().strike_center_offset_hz, 680.0);
    }

    #[test]
    fn source_parity() {
        let plan = (0..)
            .map(plan_strikes)
            .find(|p| p.count() >= 2)
            .unwrap();
        let noise = strike_source(&plan.strikes[1], 1, SAMPLE_RATE as usize);
        assert!(noise.iter().filter(|&&x| x != 0.0).count() > 40_000);
        let spikes = strike_source(&plan.strikes[0], 1, SAMPLE_RATE as usize);
        assert_eq!(plan.strikes[0].source, SourceKind::Impulses);
        assert_eq!(spikes.iter().filter(|&&x| x != 0.0).count(), 20);
        assert!(spikes.iter().filter(|&&x| x != 0.0).all(|&x| x == 1.0));
    }

    #[test]
    fn zero_strike_is_silent() {
        let sig = build_multistrike(&params(0.0, Preset::V1), &RenderConfig::with_seed(8)).unwrap();
        assert!(sig.samples().iter().all(|&x| x == 0.0));
    }
}
