//! Primitives shared by every sub-model.

pub mod biquad;
pub mod convolve;
pub mod noise;
pub mod phasor;
pub mod ramp;
pub mod shape;

pub use biquad::{Biquad, BiquadSpec, BiquadState, CutoffRamp, FilterKind, SweptBiquad, CONTROL_BLOCK, CUTOFF_FLOOR_HZ};
pub use convolve::{convolve, convolve_fft};
pub use noise::{white_noise, NoiseStream};
pub use phasor::{sample_and_hold, Phasor};
pub use ramp::{ramp_linear, ramp_undulating, undulating_value, Envelope, Period, RampLaw, Undulation};
pub use shape::{clip, half_rectify};
