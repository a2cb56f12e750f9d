use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::secs_to_samples;
use crate::SAMPLE_RATE;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeedbackSpec {
    pub delay_time: f64,
    pub feedback: f64,
}

impl FeedbackSpec {
    /// The echo applied to the multi-strike sub-model.
    pub const STRIKE: FeedbackSpec = FeedbackSpec {
        delay_time: 0.6,
        feedback: 0.15,
    };

    pub fn new(delay_time: f64, feedback: f64) -> Result<Self> {
        if !(delay_time.is_finite() && delay_time >= 0.0) {
            return Err(Error::Config(format!("delay time must be non-negative, got {delay_time}")));
        }
        if !(feedback.is_finite() && (0.0..1.0).contains(&feedback)) {
            return Err(Error::UnstableFeedback(feedback));
        }
        Ok(Self { delay_time, feedback })
    }
}

/// `out[n] = in[n] + feedback · out[n - delay]`, same length as the input.
pub fn feedback_delay(input: &[f64], spec: &FeedbackSpec) -> Vec<f64> {
    let delay = secs_to_samples(spec.delay_time, SAMPLE_RATE);
    if delay == 0 {
        let scale = 1.0 / (1.0 - spec.feedback);
        return input.iter().map(|x| x * scale).collect();
    }
    let mut out = input.to_vec();
    for n in delay..out.len() {
        out[n] += spec.feedback * out[n - delay];
    }
    out
}
