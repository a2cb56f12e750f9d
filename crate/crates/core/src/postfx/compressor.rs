//! Feed-forward peak compressor with a soft knee and unity make-up gain.
//!
//! The static curve is the standard quadratic soft knee centred on the
//! threshold: identity below `T - W/2`, slope `1/ratio` above `T + W/2`, and a
//! quadratic joining the two with matching value and slope at both ends.

use serde::Serialize;

use crate::signal::{db_to_gain, Signal};
use crate::SAMPLE_RATE;

/// Level below which the detector reads as silence.
const FLOOR_DB: f64 = -240.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompressorSpec {
    pub threshold_db: f64,
    pub knee_db: f64,
    pub ratio: f64,
    pub attack_secs: f64,
    pub release_secs: f64,
}

impl CompressorSpec {
    /// Master-bus settings of the revised preset.
    pub const MASTER: CompressorSpec = CompressorSpec {
        threshold_db: -20.0,
        knee_db: 20.0,
        ratio: 12.0,
        attack_secs: 0.0,
        release_secs: 0.5,
    };

    pub fn is_valid(&self) -> bool {
        self.ratio >= 1.0 && self.knee_db >= 0.0 && self.attack_secs >= 0.0 && self.release_secs >= 0.0
    }

    /// Output level for a steady input level, both in dBFS.
    pub fn static_curve(&self, input_db: f64) -> f64 {
        let t = self.threshold_db;
        let w = self.knee_db;
        let slope = 1.0 / self.ratio;
        let over = input_db - t;
        if 2.0 * over < -w {
            input_db
        } else if 2.0 * over.abs() <= w && w > 0.0 {
            input_db + (slope - 1.0) * (over + w / 2.0).powi(2) / (2.0 * w)
        } else {
            t + over * slope
        }
    }

    fn smoothing(time_secs: f64) -> f64 {
        if time_secs <= 0.0 {
            0.0
        } else {
            (-1.0 / (time_secs * SAMPLE_RATE as f64)).exp()
        }
    }
}

/// Stereo-linked compression: the detector sees the louder channel and both
/// channels receive the same gain.
pub fn compress(input: &Signal, spec: &CompressorSpec) -> Signal {
    let attack = CompressorSpec::smoothing(spec.attack_secs);
    let release = CompressorSpec::smoothing(spec.release_secs);
    let mut reduction = 0.0_f64;
    let mut channels: Vec<Vec<f64>> = input.channels().to_vec();
    for i in 0..input.len() {
        let level = channels.iter().map(|c| c[i].abs()).fold(0.0, f64::max);
        let level_db = if level > 0.0 { (20.0 * level.log10()).max(FLOOR_DB) } else { FLOOR_DB };
        let target = level_db - spec.static_curve(level_db);
        let coeff = if target > reduction { attack } else { release };
        reduction = coeff * reduction + (1.0 - coeff) * target;
        let gain = db_to_gain(-reduction);
        for c in channels.iter_mut() {
            c[i] *= gain;
        }
    }
    Signal::from_channels(input.sample_rate, channels)
}
