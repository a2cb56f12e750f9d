//! Measurements on rendered audio: onsets, levels, band energy and decay.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::signal::{gain_to_db, secs_to_samples, Signal};

/// Anything quieter than this counts as silence.
pub const SILENCE_DBFS: f64 = -80.0;
pub const HOP_SECS: f64 = 0.1;
pub const LOW_BAND_HZ: f64 = 200.0;
pub const HIGH_BAND_HZ: f64 = 1300.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RmsFrame {
    pub time_secs: f64,
    pub rms: f64,
}

impl RmsFrame {
    pub fn rms_dbfs(&self) -> f64 {
        gain_to_db(self.rms)
    }
}

/// Energy fractions below 200 Hz, 200–1300 Hz and above 1300 Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandFractions {
    pub low: f64,
    pub mid: f64,
    pub high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub duration_secs: f64,
    pub peak_dbfs: f64,
    pub onset_secs: Option<f64>,
    pub bands: BandFractions,
    pub rms_envelope: Vec<RmsFrame>,
}

pub fn analyze(signal: &Signal) -> Metrics {
    let sr = signal.sample_rate as f64;
    Metrics {
        duration_secs: signal.duration_secs(),
        peak_dbfs: gain_to_db(signal.peak()),
        onset_secs: onset_frame(signal).map(|i| i as f64 / sr),
        bands: band_fractions(signal),
        rms_envelope: rms_envelope(signal, HOP_SECS),
    }
}

/// First frame where any channel exceeds -80 dBFS.
pub fn onset_frame(signal: &Signal) -> Option<usize> {
    let threshold = crate::signal::db_to_gain(SILENCE_DBFS);
    (0..signal.len()).find(|&i| signal.channels().iter().any(|c| c[i].abs() > threshold))
}

/// RMS over all channels in consecutive windows of `window_secs`; a trailing
/// partial window is included.
pub fn rms_envelope(signal: &Signal, window_secs: f64) -> Vec<RmsFrame> {
    let w = secs_to_samples(window_secs, signal.sample_rate).max(1);
    let sr = signal.sample_rate as f64;
    (0..signal.len())
        .step_by(w)
        .map(|start| {
            let end = (start + w).min(signal.len());
            RmsFrame {
                time_secs: start as f64 / sr,
                rms: rms(signal, start, end),
            }
        })
        .collect()
}

pub fn rms(signal: &Signal, start: usize, end: usize) -> f64 {
    if end <= start {
        return 0.0;
    }
    let sum: f64 = signal
        .channels()
        .iter()
        .map(|c| c[start..end].iter().map(|x| x * x).sum::<f64>())
        .sum();
    (sum / ((end - start) * signal.channel_count()) as f64).sqrt()
}

/// RMS of the loudest `window_secs` window, using hops of a tenth of the window.
pub fn loudest_window_rms(signal: &Signal, window_secs: f64) -> f64 {
    let w = secs_to_samples(window_secs, signal.sample_rate).max(1);
    if signal.len() <= w {
        return rms(signal, 0, signal.len());
    }
    let hop = (w / 10).max(1);
    (0..=signal.len() - w)
        .step_by(hop)
        .map(|s| rms(signal, s, s + w))
        .fold(0.0, f64::max)
}

pub fn final_window_rms(signal: &Signal, window_secs: f64) -> f64 {
    let w = secs_to_samples(window_secs, signal.sample_rate).min(signal.len());
    rms(signal, signal.len() - w, signal.len())
}

/// One-sided power spectrum summed over channels; returns `(bin_hz, power)`.
pub fn power_spectrum(signal: &Signal) -> (f64, Vec<f64>) {
    let n = signal.len().max(2).next_power_of_two();
    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut power = vec![0.0; n / 2 + 1];
    for c in signal.channels() {
        let mut buf: Vec<Complex<f64>> = c.iter().map(|&x| Complex::new(x, 0.0)).collect();
        buf.resize(n, Complex::new(0.0, 0.0));
        fft.process(&mut buf);
        for (p, v) in power.iter_mut().zip(&buf) {
            *p += v.norm_sqr();
        }
    }
    (signal.sample_rate as f64 / n as f64, power)
}

pub fn band_fractions(signal: &Signal) -> BandFractions {
    let (bin, power) = power_spectrum(signal);
    let mut bands = [0.0; 3];
    for (k, p) in power.iter().enumerate() {
        let f = k as f64 * bin;
        let slot = if f < LOW_BAND_HZ {
            0
        } else if f <= HIGH_BAND_HZ {
            1
        } else {
            2
        };
        bands[slot] += p;
    }
    let total: f64 = bands.iter().sum();
    if total == 0.0 {
        return BandFractions { low: 0.0, mid: 0.0, high: 0.0 };
    }
    BandFractions {
        low: bands[0] / total,
        mid: bands[1] / total,
        high: bands[2] / total,
    }
}

/// Energy-weighted mean frequency.
pub fn spectral_centroid(signal: &Signal) -> f64 {
    let (bin, power) = power_spectrum(signal);
    let total: f64 = power.iter().sum();
    power.iter().enumerate().map(|(k, p)| k as f64 * bin * p).sum::<f64>() / total
}

/// Frequency of the strongest spectral region, after smoothing the power
/// spectrum over `smoothing_hz`.
pub fn dominant_frequency(signal: &Signal, smoothing_hz: f64) -> f64 {
    let (bin, power) = power_spectrum(signal);
    let half = ((smoothing_hz / bin) / 2.0).round().max(0.0) as usize;
    let mut prefix = vec![0.0; power.len() + 1];
    for (i, p) in power.iter().enumerate() {
        prefix[i + 1] = prefix[i] + p;
    }
    let (best, _) = (0..power.len())
        .map(|k| {
            let lo = k.saturating_sub(half);
            let hi = (k + half + 1).min(power.len());
            (k, (prefix[hi] - prefix[lo]) / (hi - lo) as f64)
        })
        .fold((0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    best as f64 * bin
}

/// Schroeder backward-integrated energy decay curve in dB, 0 dB at the start.
pub fn schroeder_decay_db(ir: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut edc: Vec<f64> = ir
        .iter()
        .rev()
        .map(|x| {
            acc += x * x;
            acc
        })
        .collect();
    edc.reverse();
    let total = edc.first().copied().unwrap_or(0.0);
    edc.iter().map(|e| 10.0 * (e / total).log10()).collect()
}

/// Time in seconds at which the decay curve first falls below `level_db`.
pub fn decay_time(ir: &[f64], sample_rate: u32, level_db: f64) -> Option<f64> {
    schroeder_decay_db(ir)
        .iter()
        .position(|&db| db <= level_db)
        .map(|i| i as f64 / sample_rate as f64)
}
