use std::fmt::Write as _;

use serde::Serialize;

use super::SubmodelId;
use crate::submodels::ThunderParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmodelReport {
    pub id: SubmodelId,
    /// `-inf` when the sub-model is silent.
    pub peak_dbfs: f64,
    /// Absolute onset time, `None` when silent.
    pub onset_secs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderReport {
    pub seed: u64,
    pub params: ThunderParams,
    pub delay_secs: f64,
    pub duration_secs: f64,
    pub frames: usize,
    pub strike_count: usize,
    pub submodels: Vec<SubmodelReport>,
    pub output_peak_dbfs: f64,
    pub output_onset_secs: Option<f64>,
}

fn fmt_db(db: f64) -> String {
    if db.is_finite() {
        format!("{db:.2}")
    } else {
        "-inf".to_string()
    }
}

fn fmt_onset(t: Option<f64>) -> String {
    t.map(|t| format!("{t:.6}")).unwrap_or_else(|| "none".to_string())
}

impl RenderReport {
    pub fn submodel(&self, id: SubmodelId) -> &SubmodelReport {
        self.submodels.iter().find(|s| s.id == id).expect("every sub-model is reported")
    }

    /// `key=value` lines, one per field, in a fixed order.
    pub fn to_key_values(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "preset={}", p.preset);
        let _ = writeln!(s, "distance={}", p.distance);
        let _ = writeln!(s, "initial_strike={}", p.initial_strike);
        let _ = writeln!(s, "rumble={}", p.rumble);
        let _ = writeln!(s, "growl={}", p.growl);
        let _ = writeln!(s, "reverb={}", p.reverb);
        let _ = writeln!(s, "delay_secs={:.6}", self.delay_secs);
        let _ = writeln!(s, "duration_secs={:.6}", self.duration_secs);
        let _ = writeln!(s, "frames={}", self.frames);
        let _ = writeln!(s, "strike_count={}", self.strike_count);
        let _ = writeln!(s, "output_peak_dbfs={}", fmt_db(self.output_peak_dbfs));
        let _ = writeln!(s, "output_onset_secs={}", fmt_onset(self.output_onset_secs));
        for sub in &self.submodels {
            let name = sub.id.name();
            let _ = writeln!(s, "{name}.peak_dbfs={}", fmt_db(sub.peak_dbfs));
            let _ = writeln!(s, "{name}.onset_secs={}", fmt_onset(sub.onset_secs));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(s, "thunder render (seed {}, preset {})", self.seed, p.preset);
        let _ = writeln!(
            s,
            "  distance {} m, initial strike {}, rumble {}, growl {}, reverb {}",
            p.distance,
            p.initial_strike,
            p.rumble,
            p.growl,
            if p.reverb { "on" } else { "off" }
        );
        let _ = writeln!(
            s,
            "  onset delay {:.3} s, duration {:.3} s ({} frames), {} strike(s)",
            self.delay_secs, self.duration_secs, self.frames, self.strike_count
        );
        let _ = writeln!(s, "  output peak {} dBFS", fmt_db(self.output_peak_dbfs));
        for sub in &self.submodels {
            let _ = writeln!(
                s,
                "  {:<12} peak {:>8} dBFS  onset {}",
                sub.id.name(),
                fmt_db(sub.peak_dbfs),
                fmt_onset(sub.onset_secs)
            );
        }
        s
    }
}

/// Parses the output of [`RenderReport::to_key_values`] into pairs.
pub fn parse_key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
