//! Linear convolution.
//!
//! Short kernels go through the direct sum; anything larger uses FFT
//! overlap-add with the kernel spectrum computed once.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Below this many multiply-adds the direct sum is cheaper than planning FFTs.
const DIRECT_LIMIT: usize = 1 << 16;

/// Full linear convolution; the result has `input.len() + kernel.len() - 1`
/// samples (empty if either operand is empty).
pub fn convolve(input: &[f64], kernel: &[f64]) -> Vec<f64> {
    if input.len().saturating_mul(kernel.len()) <= DIRECT_LIMIT {
        convolve_direct(input, kernel)
    } else {
        convolve_fft(input, kernel)
    }
}

fn convolve_direct(input: &[f64], kernel: &[f64]) -> Vec<f64> {
    if input.is_empty() || kernel.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; input.len() + kernel.len() - 1];
    for (i, &x) in input.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (k, &h) in kernel.iter().enumerate() {
            out[i + k] += x * h;
        }
    }
    out
}

/// FFT overlap-add, regardless of size.
pub fn convolve_fft(input: &[f64], kernel: &[f64]) -> Vec<f64> {
    if input.is_empty() || kernel.is_empty() {
        return Vec::new();
    }
    Convolver::new(kernel, input.len()).process(input)
}

/// A kernel prepared for repeated overlap-add convolution.
pub struct Convolver {
    kernel_len: usize,
    fft_size: usize,
    hop: usize,
    spectrum: Vec<Complex<f64>>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Convolver {
    /// `typical_input` only sizes the FFT; any input length may be processed.
    pub fn new(kernel: &[f64], typical_input: usize) -> Self {
        assert!(!kernel.is_empty(), "convolution kernel must not be empty");
        let block = typical_input.clamp(1, kernel.len().max(4096));
        let fft_size = (block + kernel.len() - 1).next_power_of_two();
        let hop = fft_size - kernel.len() + 1;

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(fft_size);
        let inverse = planner.plan_fft_inverse(fft_size);

        let mut spectrum: Vec<Complex<f64>> = kernel.iter().map(|&h| Complex::new(h, 0.0)).collect();
        spectrum.resize(fft_size, Complex::new(0.0, 0.0));
        forward.process(&mut spectrum);
        // fold the inverse transform's 1/N into the kernel
        let scale = 1.0 / fft_size as f64;
        spectrum.iter_mut().for_each(|c| *c *= scale);

        Self {
            kernel_len: kernel.len(),
            fft_size,
            hop,
            spectrum,
            forward,
            inverse,
        }
    }

    pub fn process(&self, input: &[f64]) -> Vec<f64> {
        if input.is_empty() {
            return Vec::new();
        }
        let out_len = input.len() + self.kernel_len - 1;
        let mut out = vec![0.0; out_len];
        let mut buf = vec![Complex::new(0.0, 0.0); self.fft_size];
        let mut scratch = vec![Complex::new(0.0, 0.0); self.forward.get_inplace_scratch_len().max(self.inverse.get_inplace_scratch_len())];

        for (block_index, block) in input.chunks(self.hop).enumerate() {
            if block.iter().all(|&x| x == 0.0) {
                continue;
            }
            buf.iter_mut().for_each(|c| *c = Complex::new(0.0, 0.0));
            for (dst, &x) in buf.iter_mut().zip(block) {
                dst.re = x;
            }
            self.forward.process_with_scratch(&mut buf, &mut scratch);
            for (b, h) in buf.iter_mut().zip(&self.spectrum) {
                *b *= h;
            }
            self.inverse.process_with_scratch(&mut buf, &mut scratch);

            let offset = block_index * self.hop;
            let valid = (block.len() + self.kernel_len - 1).min(out_len - offset);
            for (o, c) in out[offset..offset + valid].iter_mut().zip(&buf) {
                *o += c.re;
            }
        }
        out
    }
}
