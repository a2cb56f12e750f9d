//! Second-order recursive filters.
//!
//! Coefficients follow the usual bilinear-transform designs of the analog
//! prototypes `1/(s²+s/Q+1)`, `s²/(s²+s/Q+1)` and `(s/Q)/(s²+s/Q+1)`, with the
//! warp anchored at the centre frequency. The bandpass has unity gain at its
//! centre. Processing is direct form I, which tolerates coefficient changes
//! between control blocks without transients in the state.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dsp::ramp::{ramp_linear, Period};
use crate::error::{Error, Result};
use crate::SAMPLE_RATE;

/// Lowest cutoff any filter is allowed to reach; ramps aimed at 0 Hz stop here.
pub const CUTOFF_FLOOR_HZ: f64 = 5.0;

/// Time-varying coefficients are refreshed once per block of this many samples.
pub const CONTROL_BLOCK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Lowpass,
    Highpass,
    Bandpass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiquadSpec {
    pub kind: FilterKind,
    pub freq: f64,
    pub q: f64,
}

impl BiquadSpec {
    /// Frequencies in `[0, CUTOFF_FLOOR_HZ)` are raised to the floor; anything
    /// negative, non-finite or at/above Nyquist is rejected.
    pub fn new(kind: FilterKind, freq: f64, q: f64) -> Result<Self> {
        let freq = clamp_cutoff(freq)?;
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::Filter(format!("Q must be positive, got {q}")));
        }
        Ok(Self { kind, freq, q })
    }

    pub fn lowpass(freq: f64, q: f64) -> Result<Self> {
        Self::new(FilterKind::Lowpass, freq, q)
    }

    pub fn highpass(freq: f64, q: f64) -> Result<Self> {
        Self::new(FilterKind::Highpass, freq, q)
    }

    pub fn bandpass(freq: f64, q: f64) -> Result<Self> {
        Self::new(FilterKind::Bandpass, freq, q)
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients::design(self.kind, self.freq, self.q, SAMPLE_RATE as f64)
    }
}

pub fn clamp_cutoff(freq: f64) -> Result<f64> {
    let nyquist = SAMPLE_RATE as f64 / 2.0;
    if !freq.is_finite() || freq < 0.0 {
        return Err(Error::Filter(format!("cutoff must be a non-negative frequency, got {freq}")));
    }
    let freq = freq.max(CUTOFF_FLOOR_HZ);
    if freq >= nyquist {
        return Err(Error::Filter(format!(
            "cutoff {freq} Hz is not below Nyquist ({nyquist} Hz)"
        )));
    }
    Ok(freq)
}

/// Normalised so that `a0 == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Coefficients {
    pub fn design(kind: FilterKind, freq: f64, q: f64, sample_rate: f64) -> Self {
        let w0 = 2.0 * PI * freq / sample_rate;
        let (sin, cos) = w0.sin_cos();
        let alpha = sin / (2.0 * q);
        let a0 = 1.0 + alpha;
        let (b0, b1, b2) = match kind {
            FilterKind::Lowpass => ((1.0 - cos) / 2.0, 1.0 - cos, (1.0 - cos) / 2.0),
            FilterKind::Highpass => ((1.0 + cos) / 2.0, -(1.0 + cos), (1.0 + cos) / 2.0),
            FilterKind::Bandpass => (alpha, 0.0, -alpha),
        };
        Self {
            b0: b0 / a0,
            b1: b1 / a0,
            b2: b2 / a0,
            a1: -2.0 * cos / a0,
            a2: (1.0 - alpha) / a0,
        }
    }

    /// True when both poles lie strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }
}

/// Direct form I memory.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BiquadState {
    x1: f64,
    x2: f64,
    y1: f64,
    y2: f64,
}

impl BiquadState {
    #[inline]
    pub fn tick(&mut self, c: &Coefficients, x: f64) -> f64 {
        let y = c.b0 * x + c.b1 * self.x1 + c.b2 * self.x2 - c.a1 * self.y1 - c.a2 * self.y2;
        self.x2 = self.x1;
        self.x1 = x;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// A fixed-coefficient filter with its state.
#[derive(Debug, Clone)]
pub struct Biquad {
    pub spec: BiquadSpec,
    coeffs: Coefficients,
    state: BiquadState,
}

impl Biquad {
    pub fn new(spec: BiquadSpec) -> Self {
        Self {
            spec,
            coeffs: spec.coefficients(),
            state: BiquadState::default(),
        }
    }

    #[inline]
    pub fn tick(&mut self, x: f64) -> f64 {
        self.state.tick(&self.coeffs, x)
    }

    pub fn process(&mut self, input: &[f64]) -> Vec<f64> {
        input.iter().map(|&x| self.tick(x)).collect()
    }
}

/// Filters `input` through `spec`, continuing from (and updating) `state`.
pub fn biquad_process(spec: &BiquadSpec, state: &mut BiquadState, input: &[f64]) -> Vec<f64> {
    let c = spec.coefficients();
    input.iter().map(|&x| state.tick(&c, x)).collect()
}

/// A cutoff that moves linearly from `start_hz` to `end_hz` across `period`
/// and holds the end value afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffRamp {
    pub start_hz: f64,
    pub end_hz: f64,
    pub period: Period,
}

impl CutoffRamp {
    pub fn new(start_hz: f64, end_hz: f64, period: Period) -> Result<Self> {
        clamp_cutoff(start_hz)?;
        clamp_cutoff(end_hz)?;
        Ok(Self {
            start_hz,
            end_hz,
            period,
        })
    }

    pub fn constant(hz: f64) -> Result<Self> {
        Self::new(hz, hz, Period::new(0.0, 1.0))
    }

    /// The clamped cutoff in effect at time `t`.
    pub fn cutoff_at(&self, t: f64) -> f64 {
        ramp_linear(self.start_hz, self.end_hz, self.period, t).max(CUTOFF_FLOOR_HZ)
    }
}

/// A biquad whose cutoff follows a [`CutoffRamp`], re-designed every
/// [`CONTROL_BLOCK`] samples from the ramp value at the block start.
#[derive(Debug, Clone)]
pub struct SweptBiquad {
    pub kind: FilterKind,
    pub q: f64,
    pub ramp: CutoffRamp,
    state: BiquadState,
}

impl SweptBiquad {
    pub fn new(kind: FilterKind, q: f64, ramp: CutoffRamp) -> Result<Self> {
        BiquadSpec::new(kind, ramp.start_hz, q)?;
        Ok(Self {
            kind,
            q,
            ramp,
            state: BiquadState::default(),
        })
    }

    /// Filters `input`, whose first sample sits at time `t0` seconds.
    pub fn process(&mut self, input: &[f64], t0: f64) -> Vec<f64> {
        let sr = SAMPLE_RATE as f64;
        let mut out = Vec::with_capacity(input.len());
        let mut last_freq = f64::NAN;
        let mut coeffs = Coefficients::design(self.kind, self.ramp.cutoff_at(t0), self.q, sr);
        for (block_index, block) in input.chunks(CONTROL_BLOCK).enumerate() {
            let t = t0 + (block_index * CONTROL_BLOCK) as f64 / sr;
            let freq = self.ramp.cutoff_at(t);
            if freq != last_freq {
                coeffs = Coefficients::design(self.kind, freq, self.q, sr);
                last_freq = freq;
            }
            out.extend(block.iter().map(|&x| self.state.tick(&coeffs, x)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steady_sine_gain(spec: BiquadSpec, freq: f64) -> f64 {
        let sr = SAMPLE_RATE as f64;
        let n = 4 * SAMPLE_RATE as usize;
        let input: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * freq * i as f64 / sr).sin())
            .collect();
        let out = Biquad::new(spec).process(&input);
        let tail = &out[n / 2..];
        let rms_in = (0.5_f64).sqrt();
        let rms_out = (tail.iter().map(|v| v * v).sum::<f64>() / tail.len() as f64).sqrt();
        rms_out / rms_in
    }

    #[test]
    fn lowpass_has_unity_dc_gain() {
        let spec = BiquadSpec::lowpass(1000.0, 1.0).unwrap();
        let out = Biquad::new(spec).process(&vec![0.5; 20_000]);
        assert!((out.last().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bandpass_peaks_at_centre() {
        let spec = BiquadSpec::bandpass(333.0, 4.0).unwrap();
        let probes: Vec<f64> = (0..=40).map(|k| 250.0 + 4.0 * k as f64).collect();
        let (best_f, best_g) = probes
            .iter()
            .map(|&f| (f, steady_sine_gain(spec, f)))
            .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        assert!((best_f - 333.0).abs() <= 4.0, "peak at {best_f}");
        let at_centre = 20.0 * steady_sine_gain(spec, 333.0).log10();
        assert!(at_centre.abs() < 0.5, "{at_centre} dB at 333 Hz");
        assert!(20.0 * best_g.log10() < 0.5);
    }

    #[test]
    fn highpass_passes_high_frequencies() {
        let spec = BiquadSpec::highpass(30.0, 3.0).unwrap();
        let g = 20.0 * steady_sine_gain(spec, 5_000.0).log10();
        assert!(g.abs() < 0.1);
    }

    #[test]
    fn cutoff_clamp_and_rejection() {
        assert_eq!(BiquadSpec::lowpass(0.0, 1.0).unwrap().freq, CUTOFF_FLOOR_HZ);
        assert_eq!(BiquadSpec::lowpass(2.0, 1.0).unwrap().freq, CUTOFF_FLOOR_HZ);
        assert!(BiquadSpec::lowpass(-1.0, 1.0).is_err());
        assert!(BiquadSpec::lowpass(22_050.0, 1.0).is_err());
        assert!(BiquadSpec::lowpass(f64::NAN, 1.0).is_err());
        assert!(BiquadSpec::lowpass(100.0, 0.0).is_err());
    }

    #[test]
    fn ramp_reaches_midpoint() {
        let ramp = CutoffRamp::new(1000.0, 0.0, Period::new(0.0, 12.0)).unwrap();
        assert!((ramp.cutoff_at(6.0) - 500.0).abs() < 1e-9);
        let block = CONTROL_BLOCK as f64 / SAMPLE_RATE as f64;
        // one control block of slack
        assert!((ramp.cutoff_at(6.0 - block) - 500.0).abs() <= 1000.0 / 12.0 * block + 1e-9);
    }

    #[test]
    fn degenerate_ramp_is_constant() {
        let ramp = CutoffRamp::new(700.0, 700.0, Period::new(0.0, 1.0)).unwrap();
        for t in [-1.0, 0.0, 0.3, 1.0, 5.0] {
            assert_eq!(ramp.cutoff_at(t), 700.0);
        }
    }

    #[test]
    fn ramp_to_zero_ends_on_floor() {
        let ramp = CutoffRamp::new(33.0, 0.0, Period::new(0.0, 14.0)).unwrap();
        assert_eq!(ramp.cutoff_at(14.0), CUTOFF_FLOOR_HZ);
        assert_eq!(ramp.cutoff_at(20.0), CUTOFF_FLOOR_HZ);
    }

    #[test]
    fn swept_filter_matches_static_when_ramp_is_flat() {
        let noise = crate::dsp::white_noise(3, 5_000);
        let spec = BiquadSpec::bandpass(700.0, 10.0).unwrap();
        let fixed = Biquad::new(spec).process(&noise);
        let mut swept = SweptBiquad::new(FilterKind::Bandpass, 10.0, CutoffRamp::constant(700.0).unwrap()).unwrap();
        assert_eq!(swept.process(&noise, 0.0), fixed);
    }

    #[test]
    fn process_function_carries_state() {
        let spec = BiquadSpec::lowpass(200.0, 0.7).unwrap();
        let x = crate::dsp::white_noise(9, 1000);
        let mut state = BiquadState::default();
        let mut split = biquad_process(&spec, &mut state, &x[..400]);
        split.extend(biquad_process(&spec, &mut state, &x[400..]));
        assert_eq!(split, Biquad::new(spec).process(&x));
    }
}
