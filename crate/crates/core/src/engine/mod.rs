//! Assembles the sub-models and effects into one stereo render.
//!
//! Signal flow per sub-model: generator → (strike only) feedback → (strike
//! only, optional) reverb → pan + spread delay → distance delay. The four
//! results are summed at unity, compressed on the master bus in the v2 preset,
//! and hard-clipped to [-1, 1].

mod config;
mod report;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use config::{draw_seed, RenderConfig};
pub use report::{parse_key_values, RenderReport, SubmodelReport};

pub use crate::submodels::{Preset, PresetConstants, ThunderParams};
pub use crate::wav::BitDepth;

use crate::analysis::onset_frame;
use crate::error::Result;
use crate::postfx::pan::pan_channels;
use crate::postfx::reverb::beach_ir;
use crate::postfx::{compress, feedback_delay, reverb, CompressorSpec, FeedbackSpec, PanSpec, SpreadDelay};
use crate::signal::{gain_to_db, secs_to_samples, Signal};
use crate::submodels::{local_frames, AfterimageDesign, DeepenerDesign, MultiStrikeDesign, RumblerDesign};
use crate::wav::encode_wav;
use crate::SAMPLE_RATE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubmodelId {
    MultiStrike,
    Rumbler,
    Afterimage,
    Deepener,
}

impl SubmodelId {
    pub const ALL: [SubmodelId; 4] = [
        SubmodelId::MultiStrike,
        SubmodelId::Rumbler,
        SubmodelId::Afterimage,
        SubmodelId::Deepener,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SubmodelId::MultiStrike => "multistrike",
            SubmodelId::Rumbler => "rumbler",
            SubmodelId::Afterimage => "afterimage",
            SubmodelId::Deepener => "deepener",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

/// Stereo placement of one sub-model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Placement {
    pub pan: PanSpec,
    pub spread: SpreadDelay,
}

/// A fully resolved render: every random draw and constant is fixed here, so
/// the graph can be inspected before (or instead of) rendering it.
#[derive(Debug, Clone, Serialize)]
pub struct ThunderGraph {
    pub params: ThunderParams,
    pub seed: u64,
    pub delay_secs: f64,
    pub delay_frames: usize,
    pub local_frames: usize,
    pub constants: PresetConstants,
    pub strike: MultiStrikeDesign,
    pub rumbler: RumblerDesign,
    pub afterimage: AfterimageDesign,
    pub deepener: DeepenerDesign,
    pub feedback: FeedbackSpec,
    pub placements: [Placement; 4],
    pub compressor: Option<CompressorSpec>,
    #[serde(skip)]
    impulse_response: Option<Arc<Signal>>,
}

fn default_ir() -> Arc<Signal> {
    static IR: OnceLock<Arc<Signal>> = OnceLock::new();
    IR.get_or_init(|| Arc::new(beach_ir())).clone()
}

impl ThunderGraph {
    pub fn build(params: &ThunderParams, config: &RenderConfig) -> Result<Self> {
        params.validate()?;
        config.validate()?;
        let delay_secs = params.distance_delay(config.speed_of_sound);
        let constants = params.preset.constants();
        let placements = SubmodelId::ALL.map(|id| Placement {
            pan: PanSpec::seeded(config.seed, &format!("{}/pan", id.name())),
            spread: SpreadDelay::seeded(config.seed, &format!("{}/spread", id.name())),
        });
        let impulse_response = params
            .reverb
            .then(|| config.impulse_response.clone().unwrap_or_else(default_ir));
        Ok(Self {
            params: *params,
            seed: config.seed,
            delay_secs,
            delay_frames: secs_to_samples(delay_secs, SAMPLE_RATE),
            local_frames: local_frames(),
            constants,
            strike: MultiStrikeDesign::new(params, config)?,
            rumbler: RumblerDesign::new(params, config)?,
            afterimage: AfterimageDesign::new(params, config)?,
            deepener: DeepenerDesign::new(params, config)?,
            feedback: FeedbackSpec::STRIKE,
            placements,
            compressor: constants.compressor,
            impulse_response,
        })
    }

    pub fn total_frames(&self) -> usize {
        self.delay_frames + self.local_frames
    }

    pub fn reverb_enabled(&self) -> bool {
        self.impulse_response.is_some()
    }

    pub fn placement(&self, id: SubmodelId) -> &Placement {
        &self.placements[id.index()]
    }

    /// Flat `key=value` listing of every preset-dependent constant, read back
    /// from the built components rather than from the preset table.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("preset".to_string(), self.params.preset.name().to_string()),
            ("reverb".to_string(), self.reverb_enabled().to_string()),
            ("feedback.delay_secs".to_string(), self.feedback.delay_time.to_string()),
            ("feedback.gain".to_string(), self.feedback.feedback.to_string()),
            ("strike.center_offset_hz".to_string(), self.strike.center_offset_hz.to_string()),
        ];
        for (i, v) in self.strike.voices.iter().enumerate() {
            let key = |field: &str| format!("strike.voice{i}.{field}");
            out.push((key("q"), v.filter_q.to_string()));
            out.push((key("center_hz"), v.cutoff.start_hz.to_string()));
        }
        out.push(("deepener.highpass_hz".into(), self.deepener.highpass.freq.to_string()));
        out.push(("afterimage.gain".into(), self.afterimage.output_gain.to_string()));
        match &self.compressor {
            None => out.push(("compressor".into(), "none".into())),
            Some(c) => {
                out.push(("compressor".into(), "present".into()));
                out.push(("compressor.threshold_db".into(), c.threshold_db.to_string()));
                out.push(("compressor.knee_db".into(), c.knee_db.to_string()));
                out.push(("compressor.ratio".into(), c.ratio.to_string()));
                out.push(("compressor.attack_secs".into(), c.attack_secs.to_string()));
                out.push(("compressor.release_secs".into(), c.release_secs.to_string()));
            }
        }
        out
    }

    /// Absolute time at which a sub-model's gain envelope reaches its terminal
    /// value. For the multi-strike sub-model this is the latest strike end.
    pub fn envelope_end_secs(&self, id: SubmodelId) -> f64 {
        let local = match id {
            SubmodelId::MultiStrike => self
                .strike
                .voices
                .iter()
                .map(|v| v.envelope.period.end)
                .fold(0.0, f64::max),
            SubmodelId::Rumbler => self.rumbler.envelope.period.end,
            SubmodelId::Afterimage => self.afterimage.envelope.period.end,
            SubmodelId::Deepener => self.deepener.envelope.period.end,
        };
        self.delay_secs + local
    }

    /// Dry mono generator output in local time.
    pub fn render_dry(&self, id: SubmodelId) -> Vec<f64> {
        let n = self.local_frames;
        match id {
            SubmodelId::MultiStrike => self.strike.render_local(n),
            SubmodelId::Rumbler => self.rumbler.render_local(n),
            SubmodelId::Afterimage => self.afterimage.render_local(n),
            SubmodelId::Deepener => self.deepener.render_local(n),
        }
    }

    /// Post-processed stereo contribution in local time.
    pub fn render_wet(&self, id: SubmodelId) -> Signal {
        let n = self.local_frames;
        let dry = self.render_dry(id);
        let placed = if id == SubmodelId::MultiStrike {
            let echoed = feedback_delay(&dry, &self.feedback);
            match &self.impulse_response {
                Some(ir) => {
                    let wet = reverb(&echoed, ir);
                    let channels = wet.into_channels().into_iter().map(|mut c| {
                        c.truncate(n);
                        c
                    });
                    Signal::from_channels(SAMPLE_RATE, channels.collect())
                }
                None => Signal::mono(echoed),
            }
        } else {
            Signal::mono(dry)
        };
        let placement = self.placement(id);
        let mut stereo = pan_channels(&placed, &placement.pan);
        placement.spread.apply(&mut stereo, &placement.pan);
        stereo
    }

    pub fn render(&self) -> (Signal, RenderReport) {
        let parts: Vec<Signal> = std::thread::scope(|scope| {
            let handles: Vec<_> = SubmodelId::ALL
                .iter()
                .map(|&id| scope.spawn(move || self.render_wet(id)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("sub-model render panicked")).collect()
        });

        let sr = SAMPLE_RATE as f64;
        let total = self.total_frames();
        let mut left = vec![0.0; total];
        let mut right = vec![0.0; total];
        let mut submodels = Vec::with_capacity(4);
        for (id, part) in SubmodelId::ALL.iter().zip(&parts) {
            for (dst, src) in [(&mut left, part.channel(0)), (&mut right, part.channel(1))] {
                for (d, s) in dst[self.delay_frames..].iter_mut().zip(src) {
                    *d += s;
                }
            }
            submodels.push(SubmodelReport {
                id: *id,
                peak_dbfs: gain_to_db(part.peak()),
                onset_secs: onset_frame(part).map(|i| (self.delay_frames + i) as f64 / sr),
            });
        }

        let mut mix = Signal::stereo(left, right);
        if let Some(spec) = &self.compressor {
            mix = compress(&mix, spec);
        }
        let mix = Signal::from_channels(
            SAMPLE_RATE,
            mix.into_channels()
                .into_iter()
                .map(|c| c.into_iter().map(|x| x.clamp(-1.0, 1.0)).collect())
                .collect(),
        );

        let report = RenderReport {
            seed: self.seed,
            params: self.params,
            delay_secs: self.delay_secs,
            duration_secs: mix.duration_secs(),
            frames: mix.len(),
            strike_count: self.strike.plan.count(),
            submodels,
            output_peak_dbfs: gain_to_db(mix.peak()),
            output_onset_secs: onset_frame(&mix).map(|i| i as f64 / sr),
        };
        (mix, report)
    }
}

/// Renders one thunder event to a stereo signal.
pub fn render(params: &ThunderParams, config: &RenderConfig) -> Result<(Signal, RenderReport)> {
    Ok(ThunderGraph::build(params, config)?.render())
}

/// Renders straight to WAV bytes in the configured bit depth.
pub fn render_wav(params: &ThunderParams, config: &RenderConfig) -> Result<(Vec<u8>, RenderReport)> {
    let (signal, report) = render(params, config)?;
    Ok((encode_wav(&signal, config.bit_depth)?, report))
}
