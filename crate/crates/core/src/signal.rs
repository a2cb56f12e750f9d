use crate::SAMPLE_RATE;

/// A finite block of audio, stored planar (one `Vec` per channel).
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub sample_rate: u32,
    channels: Vec<Vec<f64>>,
}

impl Signal {
    pub fn mono(samples: Vec<f64>) -> Self {
        Self {
            sample_rate: SAMPLE_RATE,
            channels: vec![samples],
        }
    }

    /// Panics if the two channels differ in length.
    pub fn stereo(left: Vec<f64>, right: Vec<f64>) -> Self {
        assert_eq!(left.len(), right.len(), "stereo channels must have equal length");
        Self {
            sample_rate: SAMPLE_RATE,
            channels: vec![left, right],
        }
    }

    pub fn from_channels(sample_rate: u32, channels: Vec<Vec<f64>>) -> Self {
        assert!(
            matches!(channels.len(), 1 | 2),
            "only mono and stereo signals are supported"
        );
        assert!(channels.iter().all(|c| c.len() == channels[0].len()));
        Self {
            sample_rate,
            channels,
        }
    }

    pub fn silence(channels: usize, frames: usize) -> Self {
        Self::from_channels(SAMPLE_RATE, vec![vec![0.0; frames]; channels])
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    /// Number of sample frames.
    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn duration_secs(&self) -> f64 {
        self.len() as f64 / self.sample_rate as f64
    }

    pub fn channel(&self, index: usize) -> &[f64] {
        &self.channels[index]
    }

    pub fn channel_mut(&mut self, index: usize) -> &mut [f64] {
        &mut self.channels[index]
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }

    pub fn into_channels(self) -> Vec<Vec<f64>> {
        self.channels
    }

    /// The first channel, for mono signals.
    pub fn samples(&self) -> &[f64] {
        &self.channels[0]
    }

    /// Largest absolute sample value over all channels.
    pub fn peak(&self) -> f64 {
        self.channels
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Interleaved frames, e.g. for WAV encoding.
    pub fn interleaved(&self) -> Vec<f64> {
        let n = self.len();
        let ch = self.channel_count();
        let mut out = Vec::with_capacity(n * ch);
        for i in 0..n {
            for c in &self.channels {
                out.push(c[i]);
            }
        }
        out
    }

    /// Average of the channels.
    pub fn downmix(&self) -> Vec<f64> {
        let scale = 1.0 / self.channel_count() as f64;
        (0..self.len())
            .map(|i| self.channels.iter().map(|c| c[i]).sum::<f64>() * scale)
            .collect()
    }
}

pub fn db_to_gain(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

pub fn gain_to_db(gain: f64) -> f64 {
    20.0 * gain.abs().log10()
}

pub fn secs_to_samples(secs: f64, sample_rate: u32) -> usize {
    (secs * sample_rate as f64).round().max(0.0) as usize
}
