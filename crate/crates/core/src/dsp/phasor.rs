use crate::SAMPLE_RATE;

/// Unit ramp oscillator. Phase is accumulated in units of `Hz·samples` so
/// integer frequencies have exact periods.
#[derive(Debug, Clone, Default)]
pub struct Phasor {
    acc: f64,
}

impl Phasor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_phase(phase: f64) -> Self {
        Self {
            acc: phase.rem_euclid(1.0) * SAMPLE_RATE as f64,
        }
    }

    pub fn phase(&self) -> f64 {
        self.acc / SAMPLE_RATE as f64
    }

    /// Returns the current phase, then advances by `freq / SAMPLE_RATE`.
    #[inline]
    pub fn tick(&mut self, freq: f64) -> f64 {
        let sr = SAMPLE_RATE as f64;
        let out = self.acc / sr;
        self.acc += freq.max(0.0);
        if self.acc >= sr {
            self.acc = self.acc.rem_euclid(sr);
        }
        out
    }
}

/// Captures `input[n]` whenever the trigger falls (`trigger[n] < trigger[n-1]`)
/// and holds it otherwise. The first sample is always captured.
pub fn sample_and_hold(input: &[f64], trigger: &[f64]) -> Vec<f64> {
    assert_eq!(input.len(), trigger.len(), "input and trigger must have equal length");
    let mut out = Vec::with_capacity(input.len());
    let mut held = 0.0;
    for n in 0..input.len() {
        if n == 0 || trigger[n] < trigger[n - 1] {
            held = input[n];
        }
        out.push(held);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap_indices(freq: f64, n: usize) -> Vec<usize> {
        let mut ph = Phasor::new();
        let tr: Vec<f64> = (0..n).map(|_| ph.tick(freq)).collect();
        (1..n).filter(|&i| tr[i] < tr[i - 1]).collect()
    }

    #[test]
    fn one_hertz_wraps_every_sample_rate_samples() {
        let sr = SAMPLE_RATE as usize;
        assert_eq!(wrap_indices(1.0, 10 * sr + 1), (1..=10).map(|k| k * sr).collect::<Vec<_>>());
    }

    #[test]
    fn frozen_phasor_never_wraps() {
        let mut ph = Phasor::with_phase(0.25);
        for _ in 0..100_000 {
            assert_eq!(ph.tick(0.0), 0.25);
        }
    }

    #[test]
    fn envelope_plus_one_drives_one_hertz() {
        let gain = 0.0;
        assert_eq!(wrap_indices(gain + 1.0, 2 * SAMPLE_RATE as usize + 1).len(), 2);
    }

    #[test]
    fn phasor_output_stays_in_unit_interval() {
        let mut ph = Phasor::new();
        for i in 0..200_000 {
            let p = ph.tick(3.0 + (i % 7) as f64 * 1000.0);
            assert!((0.0..1.0).contains(&p));
        }
    }

    #[test]
    fn captures_on_wrap() {
        assert_eq!(sample_and_hold(&[0.5, -0.3], &[0.9, 0.1]), vec![0.5, -0.3]);
    }

    #[test]
    fn holds_on_monotone_trigger() {
        assert_eq!(sample_and_hold(&[1.0, 2.0, 3.0], &[0.1, 0.2, 0.3]), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_hertz_for_three_seconds_gives_six_plateaus() {
        let n = 3 * SAMPLE_RATE as usize;
        let input = crate::dsp::white_noise(5, n);
        let mut ph = Phasor::new();
        let tr: Vec<f64> = (0..n).map(|_| ph.tick(2.0)).collect();
        let out = sample_and_hold(&input, &tr);
        let plateaus = 1 + (1..n).filter(|&i| out[i] != out[i - 1]).count();
        assert_eq!(plateaus, 6);
    }
}
