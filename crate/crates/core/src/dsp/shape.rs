/// Elementwise clamp into `[lo, hi]`.
pub fn clip(input: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    input.iter().map(|x| x.clamp(lo, hi)).collect()
}

/// `max(x, 0)` per sample.
pub fn half_rectify(input: &[f64]) -> Vec<f64> {
    input.iter().map(|x| x.max(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_examples() {
        assert_eq!(clip(&[1.5, -2.0, 0.3], -1.0, 1.0), vec![1.0, -1.0, 0.3]);
    }

    #[test]
    fn rectify_examples() {
        assert_eq!(half_rectify(&[-0.4, 0.7]), vec![0.0, 0.7]);
    }

    #[test]
    fn rectified_uniform_noise_has_mean_one_quarter() {
        let x = half_rectify(&crate::dsp::white_noise(42, 1_000_000));
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        assert!((mean - 0.25).abs() < 0.01, "{mean}");
    }
}
