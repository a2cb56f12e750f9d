//! Effects applied after the generators.

pub mod compressor;
pub mod feedback;
pub mod pan;
pub mod reverb;

pub use compressor::{compress, CompressorSpec};
pub use feedback::{feedback_delay, FeedbackSpec};
pub use pan::{pan, PanSpec, SpreadDelay};
pub use reverb::{load_impulse_response, reverb, synthesize_beach_ir};
