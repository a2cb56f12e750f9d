//! Gain and parameter ramps.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::dsp::noise::NoiseStream;
use crate::EPSILON;

/// Closed time interval `[start, end]` in seconds, `end > start`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Period {
    pub start: f64,
    pub end: f64,
}

impl Period {
    pub fn new(start: f64, end: f64) -> Self {
        assert!(
            start.is_finite() && end.is_finite() && end > start,
            "period end must follow its start: [{start}, {end}]"
        );
        Self { start, end }
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    /// Position of `t` inside the period, clamped to `[0, 1]`.
    pub fn progress(&self, t: f64) -> f64 {
        ((t - self.start) / self.length()).clamp(0.0, 1.0)
    }

    pub fn shifted(&self, by: f64) -> Self {
        Self::new(self.start + by, self.end + by)
    }
}

/// Affine interpolation from `start` at `period.start` to `end` at
/// `period.end`; times outside the period clamp to the nearest endpoint.
pub fn ramp_linear(start: f64, end: f64, period: Period, t: f64) -> f64 {
    if t <= period.start {
        return start;
    }
    if t >= period.end {
        return end;
    }
    start + (end - start) * period.progress(t)
}

/// Slow seeded wobble applied on top of an exponential decay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Undulation {
    pub depth: f64,
    pub rate_hz: f64,
    pub phase: f64,
}

impl Undulation {
    pub const DEPTH: f64 = 0.3;
    pub const MIN_RATE_HZ: f64 = 0.2;
    pub const MAX_RATE_HZ: f64 = 1.5;

    pub fn seeded(seed: u64, stream: &str) -> Self {
        let mut rng = NoiseStream::new(seed, stream);
        Self {
            depth: Self::DEPTH,
            rate_hz: rng.uniform(Self::MIN_RATE_HZ, Self::MAX_RATE_HZ),
            phase: rng.uniform(0.0, TAU),
        }
    }

    /// No wobble: the ramp reduces to its exponential base.
    pub fn flat() -> Self {
        Self {
            depth: 0.0,
            rate_hz: 1.0,
            phase: 0.0,
        }
    }

    /// Oscillation in [-1, 1], tapered to zero at the end of the period so the
    /// ramp lands exactly on its terminal value.
    fn shape(&self, period: Period, t: f64) -> f64 {
        let u = period.progress(t);
        let elapsed = (t - period.start).max(0.0);
        (1.0 - u) * (TAU * self.rate_hz * elapsed + self.phase).sin()
    }
}

/// Exponential decay from `start` to `end` across `period`, scaled by
/// `1 + depth·s(t)`.
///
/// A zero `end` cannot be reached geometrically; in that case the curve decays
/// towards [`EPSILON`] and a linear term of the same size pulls it to zero.
pub fn undulating_value(start: f64, end: f64, period: Period, t: f64, undulation: &Undulation) -> f64 {
    if start <= 0.0 {
        return 0.0;
    }
    let u = period.progress(t);
    let base = if end > 0.0 {
        start * (end / start).powf(u)
    } else {
        let floor = EPSILON.min(start);
        (start * (floor / start).powf(u) - floor * u).max(0.0)
    };
    base * (1.0 + undulation.depth * undulation.shape(period, t))
}

/// [`undulating_value`] with the standard depth and an undulation drawn from
/// `seed`.
pub fn ramp_undulating(start: f64, end: f64, period: Period, t: f64, seed: u64) -> f64 {
    undulating_value(start, end, period, t, &Undulation::seeded(seed, "undulation"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum RampLaw {
    Linear,
    Undulating(Undulation),
}

/// A gain trajectory over a period. Before the period starts the envelope is
/// closed (gain 0); after it ends it holds `end_gain`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub start_gain: f64,
    pub end_gain: f64,
    pub period: Period,
    pub law: RampLaw,
}

impl Envelope {
    pub fn linear(start_gain: f64, end_gain: f64, period: Period) -> Self {
        Self {
            start_gain,
            end_gain,
            period,
            law: RampLaw::Linear,
        }
    }

    pub fn undulating(start_gain: f64, end_gain: f64, period: Period, undulation: Undulation) -> Self {
        Self {
            start_gain,
            end_gain,
            period,
            law: RampLaw::Undulating(undulation),
        }
    }

    /// Ramp value with times clamped into the period.
    pub fn gain_at(&self, t: f64) -> f64 {
        match &self.law {
            RampLaw::Linear => ramp_linear(self.start_gain, self.end_gain, self.period, t),
            RampLaw::Undulating(u) => undulating_value(self.start_gain, self.end_gain, self.period, t, u),
        }
    }

    /// Like [`gain_at`](Self::gain_at) but silent before the period opens.
    pub fn gated_gain_at(&self, t: f64) -> f64 {
        if t < self.period.start {
            0.0
        } else {
            self.gain_at(t)
        }
    }

    /// Gated gain for `n` consecutive samples, the first at time `t0`.
    pub fn trace(&self, t0: f64, n: usize, sample_rate: u32) -> Vec<f64> {
        let sr = sample_rate as f64;
        (0..n).map(|i| self.gated_gain_at(t0 + i as f64 / sr)).collect()
    }

    pub fn terminal(&self) -> f64 {
        self.end_gain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linear_examples() {
        let unit = Period::new(0.0, 1.0);
        assert_eq!(ramp_linear(2.0, 0.0, unit, 0.5), 1.0);
        assert_eq!(ramp_linear(2.0, 0.0, unit, 0.0), 2.0);
        assert_relative_eq!(ramp_linear(1.6, 0.0, Period::new(1.0, 1.24), 1.12), 0.8, epsilon = 1e-12);
    }

    #[test]
    fn linear_clamps_outside_period() {
        let p = Period::new(1.0, 2.0);
        assert_eq!(ramp_linear(3.0, 1.0, p, -4.0), 3.0);
        assert_eq!(ramp_linear(3.0, 1.0, p, 9.0), 1.0);
    }

    #[test]
    fn undulating_onset_within_depth() {
        for seed in 0..200 {
            let v = ramp_undulating(2.5, EPSILON, Period::new(0.0, 9.0), 0.0, seed);
            assert!((1.75..=3.25).contains(&v), "seed {seed}: {v}");
        }
    }

    #[test]
    fn flat_undulation_is_geometric() {
        let p = Period::new(2.0, 11.0);
        let v = undulating_value(2.5, EPSILON, p, 6.5, &Undulation::flat());
        assert_relative_eq!(v, (2.5 * EPSILON).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn undulating_hits_terminal_values() {
        let p = Period::new(0.0, 18.5);
        let u = Undulation::seeded(11, "x");
        assert_eq!(undulating_value(6.0, 0.0, p, 18.5, &u), 0.0);
        assert_relative_eq!(undulating_value(2.5, EPSILON, p, 18.5, &u), EPSILON, max_relative = 1e-12);
        assert!(undulating_value(6.0, 0.0, p, 18.0, &u) > 0.0);
    }

    #[test]
    fn zero_start_is_silent() {
        let p = Period::new(0.0, 9.0);
        for t in [0.0, 1.0, 9.0] {
            assert_eq!(ramp_undulating(0.0, EPSILON, p, t, 5), 0.0);
        }
    }

    #[test]
    fn envelope_is_gated_before_start() {
        let env = Envelope::linear(1.4, 0.0, Period::new(1.0, 1.5));
        assert_eq!(env.gated_gain_at(0.999), 0.0);
        assert_eq!(env.gated_gain_at(1.0), 1.4);
        assert_eq!(env.gated_gain_at(3.0), 0.0);
    }
}
