//! Convolution reverb and the synthetic beach impulse response.

use std::path::Path;

use crate::dsp::convolve::Convolver;
use crate::dsp::NoiseStream;
use crate::error::{Error, Result};
use crate::signal::{secs_to_samples, Signal};
use crate::wav::read_wav;
use crate::SAMPLE_RATE;

pub const BEACH_RT60_SECS: f64 = 2.5;
pub const BEACH_LENGTH_SECS: f64 = 3.0;
/// The synthetic space is the same for every render.
pub const BEACH_IR_SEED: u64 = 0x6265_6163_685f_6972;

const TILT_HZ: f64 = 4000.0;
/// Diffuse tail energy relative to the direct sound.
const TAIL_TO_DIRECT_ENERGY: f64 = 4.0;
const PEAK: f64 = 0.5;

/// Stereo impulse response: a unit direct sound followed by exponentially
/// decaying, gently low-passed noise, peak-normalised to 0.5.
pub fn synthesize_beach_ir(seed: u64, rt60_secs: f64, length_secs: f64) -> Signal {
    let n = secs_to_samples(length_secs, SAMPLE_RATE).max(1);
    let sr = SAMPLE_RATE as f64;
    // amplitude falls 60 dB (a factor of 1000) over rt60
    let decay_per_sample = 10f64.powf(-3.0 / (rt60_secs * sr));
    let tilt = 1.0 - (-2.0 * std::f64::consts::PI * TILT_HZ / sr).exp();

    let channels: Vec<Vec<f64>> = ["ir/left", "ir/right"]
        .iter()
        .map(|stream| {
            let mut rng = NoiseStream::new(seed, stream);
            let mut env = 1.0;
            let mut lp = 0.0;
            let mut tail: Vec<f64> = (0..n)
                .map(|_| {
                    lp += tilt * (rng.next_bipolar() * env - lp);
                    env *= decay_per_sample;
                    lp
                })
                .collect();
            let energy: f64 = tail.iter().map(|x| x * x).sum();
            let scale = (TAIL_TO_DIRECT_ENERGY / energy).sqrt();
            tail.iter_mut().for_each(|x| *x *= scale);
            tail[0] += 1.0;
            tail
        })
        .collect();

    let peak = channels
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()));
    let channels = channels
        .into_iter()
        .map(|c| c.into_iter().map(|x| x * PEAK / peak).collect())
        .collect();
    Signal::from_channels(SAMPLE_RATE, channels)
}

/// The default beach response.
pub fn beach_ir() -> Signal {
    synthesize_beach_ir(BEACH_IR_SEED, BEACH_RT60_SECS, BEACH_LENGTH_SECS)
}

/// Reads a mono or stereo WAV impulse response and resamples it to the engine
/// rate.
pub fn load_impulse_response(path: &Path) -> Result<Signal> {
    let sig = read_wav(path)?;
    if sig.is_empty() {
        return Err(Error::WavFormat {
            path: path.to_path_buf(),
            detail: "impulse response has no samples".into(),
        });
    }
    if sig.sample_rate == SAMPLE_RATE {
        return Ok(sig);
    }
    let ratio = sig.sample_rate as f64 / SAMPLE_RATE as f64;
    let channels = sig.channels().iter().map(|c| resample_linear(c, ratio)).collect();
    Ok(Signal::from_channels(SAMPLE_RATE, channels))
}

/// Linear-interpolation resampler; `ratio` is source rate over target rate.
fn resample_linear(input: &[f64], ratio: f64) -> Vec<f64> {
    let out_len = ((input.len() as f64) / ratio).round().max(1.0) as usize;
    (0..out_len)
        .map(|i| {
            let pos = i as f64 * ratio;
            let k = pos.floor() as usize;
            let frac = pos - k as f64;
            let a = input.get(k).copied().unwrap_or(0.0);
            let b = input.get(k + 1).copied().unwrap_or(a);
            a + (b - a) * frac
        })
        .collect()
}

/// Convolves a mono input with each channel of `ir`. The result has as many
/// channels as the IR and `input.len() + ir.len() - 1` frames.
pub fn reverb(input: &[f64], ir: &Signal) -> Signal {
    let channels = ir
        .channels()
        .iter()
        .map(|h| Convolver::new(h, input.len()).process(input))
        .collect();
    Signal::from_channels(SAMPLE_RATE, channels)
}
