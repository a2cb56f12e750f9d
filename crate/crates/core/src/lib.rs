//! Deterministic procedural thunder synthesis.
//!
//! The crate is organised bottom-up:
//!
//! - [`dsp`]: sample-accurate primitives (seeded noise, biquads with
//!   time-varying cutoff, ramps, phasor, sample-and-hold, shaping, convolution).
//! - [`submodels`]: the four generators (multi-strike lightning, rumbler,
//!   afterimage, deepener).
//! - [`postfx`]: feedback delay, equal-power panning, convolution reverb and the
//!   master-bus compressor.
//! - [`engine`]: graph assembly, stereo mix-down, reports.
//! - [`wav`] and [`analysis`]: file I/O and the measurements used by tests and
//!   the CLI.
//!
//! Every render is a pure function of `(ThunderParams, RenderConfig)`.

pub mod analysis;
pub mod dsp;
pub mod engine;
pub mod error;
pub mod postfx;
pub mod signal;
pub mod submodels;
pub mod wav;

pub use engine::{render, BitDepth, Preset, RenderConfig, RenderReport, ThunderGraph, ThunderParams};
pub use error::{Error, Result};
pub use signal::Signal;

/// Every render runs at this rate.
pub const SAMPLE_RATE: u32 = 44_100;

/// The small positive constant used wherever a ramp must stay above zero.
pub const EPSILON: f64 = 1e-4;

/// Metres per second in 20 °C air.
pub const SPEED_OF_SOUND: f64 = 343.0;
