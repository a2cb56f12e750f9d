//! Random draws for the multi-strike sub-model, made up front so a render can
//! be replayed and inspected.

use serde::Serialize;

use crate::dsp::NoiseStream;
use crate::error::{Error, Result};
use crate::{EPSILON, SAMPLE_RATE};

pub const MAX_STRIKES: u32 = 5;
pub const IMPULSES_PER_TRAIN: usize = 20;
pub const ENVELOPE_COUNT: u32 = 4;
pub const SPLIT_PROBABILITY: f64 = 0.25;
pub const SPLIT_GAIN: f64 = 0.7;
pub const SPLIT_OFFSET_RANGE_SECS: (f64, f64) = (0.010, 0.080);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Noise,
    Impulses,
}

/// Onset times in seconds, each in `[EPSILON, 1)` and on distinct samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpulseTrain {
    pub onsets: Vec<f64>,
}

impl ImpulseTrain {
    fn draw(rng: &mut NoiseStream) -> Self {
        let mut onsets: Vec<f64> = Vec::with_capacity(IMPULSES_PER_TRAIN);
        while onsets.len() < IMPULSES_PER_TRAIN {
            let t = EPSILON + rng.next_unit() * (1.0 - EPSILON);
            let idx = onset_index(t);
            if onsets.iter().all(|&o| onset_index(o) != idx) {
                onsets.push(t);
            }
        }
        Self { onsets }
    }

    pub fn sample_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.onsets.iter().map(|&t| onset_index(t))
    }
}

fn onset_index(t: f64) -> usize {
    (t * SAMPLE_RATE as f64).floor() as usize
}

/// A second lightning branch layered onto a strike.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitBranch {
    pub r: f64,
    pub offset_secs: f64,
    pub gain: f64,
    pub impulses: Option<ImpulseTrain>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrikeEntry {
    /// 1-based position within the plan.
    pub ordinal: u32,
    pub source: SourceKind,
    pub r: f64,
    /// Which of the four strike envelopes (1-based) shapes this strike.
    pub envelope_index: u32,
    pub impulses: Option<ImpulseTrain>,
    pub split: Option<SplitBranch>,
}

impl StrikeEntry {
    /// The bandpass pair this strike runs through, as 0-based filter indices.
    pub fn filter_pair(&self) -> (u32, u32) {
        let e = self.envelope_index - 1;
        (2 * e, 2 * e + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrikePlan {
    pub strikes: Vec<StrikeEntry>,
}

impl StrikePlan {
    pub fn count(&self) -> usize {
        self.strikes.len()
    }
}

pub fn source_kind(ordinal: u32) -> SourceKind {
    if ordinal.is_multiple_of(2) {
        SourceKind::Noise
    } else {
        SourceKind::Impulses
    }
}

pub fn envelope_index(ordinal: u32) -> u32 {
    (ordinal - 1) % ENVELOPE_COUNT + 1
}

pub fn plan_strikes(seed: u64) -> StrikePlan {
    let mut rng = NoiseStream::new(seed, "strike/plan");
    let count = rng.below(1, MAX_STRIKES + 1);
    let strikes = (1..=count)
        .map(|ordinal| {
            let source = source_kind(ordinal);
            let r = rng.next_open_unit();
            let impulses = (source == SourceKind::Impulses).then(|| ImpulseTrain::draw(&mut rng));
            let split = (rng.next_unit() < SPLIT_PROBABILITY).then(|| SplitBranch {
                r: rng.next_open_unit(),
                offset_secs: rng.uniform(SPLIT_OFFSET_RANGE_SECS.0, SPLIT_OFFSET_RANGE_SECS.1),
                gain: SPLIT_GAIN,
                impulses: (source == SourceKind::Impulses).then(|| ImpulseTrain::draw(&mut rng)),
            });
            StrikeEntry {
                ordinal,
                source,
                r,
                envelope_index: envelope_index(ordinal),
                impulses,
                split,
            }
        })
        .collect();
    StrikePlan { strikes }
}

/// End of the strike envelope: `d + 240·(1.4 − r)^5` milliseconds, returned in
/// seconds.
pub fn strike_envelope_end(d: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::StrikeDraw(r));
    }
    Ok(d + strike_envelope_length_ms(r) / 1000.0)
}

pub(crate) fn strike_envelope_length_ms(r: f64) -> f64 {
    240.0 * (1.4 - r).powi(5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_length_examples() {
        assert!((strike_envelope_end(0.0, 0.4).unwrap() - 0.240).abs() < 1e-12);
        let near_zero = (strike_envelope_end(2.0, 1e-9).unwrap() - 2.0) * 1000.0;
        assert!((near_zero - 1290.7776).abs() < 1e-3, "{near_zero}");
        let near_one = (strike_envelope_end(0.0, 1.0 - 1e-9).unwrap()) * 1000.0;
        assert!((near_one - 2.4576).abs() < 1e-3, "{near_one}");
    }

    #[test]
    fn rejects_draws_outside_open_unit_interval() {
        for r in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(strike_envelope_end(0.0, r).is_err());
        }
    }

    #[test]
    fn plans_are_well_formed() {
        for seed in 0..500 {
            let plan = plan_strikes(seed);
            assert!((1..=5).contains(&plan.count()));
            for s in &plan.strikes {
                assert!(s.r > 0.0 && s.r < 1.0);
                assert_eq!(s.envelope_index, (s.ordinal - 1) % 4 + 1);
                assert_eq!(s.impulses.is_some(), s.ordinal % 2 == 1);
                if let Some(train) = &s.impulses {
                    assert_eq!(train.onsets.len(), IMPULSES_PER_TRAIN);
                    assert!(train.onsets.iter().all(|&t| (0.0..1.0 + EPSILON).contains(&t)));
                }
                if let Some(split) = &s.split {
                    assert!((0.010..0.080).contains(&split.offset_secs));
                    assert!(split.r > 0.0 && split.r < 1.0);
                }
            }
        }
    }

    #[test]
    fn plan_is_deterministic() {
        assert_eq!(plan_strikes(99), plan_strikes(99));
    }

    #[test]
    fn fifth_strike_reuses_first_envelope() {
        assert_eq!(envelope_index(5), 1);
        assert_eq!(envelope_index(4), 4);
        let e = StrikeEntry {
            ordinal: 3,
            source: SourceKind::Impulses,
            r: 0.5,
            envelope_index: 3,
            impulses: None,
            split: None,
        };
        assert_eq!(e.filter_pair(), (4, 5));
    }

    #[test]
    fn split_rate_is_about_a_quarter() {
        let (mut splits, mut total) = (0usize, 0usize);
        for seed in 0..4000 {
            for s in plan_strikes(seed).strikes {
                total += 1;
                splits += s.split.is_some() as usize;
            }
        }
        let rate = splits as f64 / total as f64;
        assert!((rate - 0.25).abs() < 0.02, "{rate}");
    }
}
