use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::postfx::CompressorSpec;

pub const MAX_DISTANCE_M: f64 = 10_000.0;

/// The user-facing controls of one thunder event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThunderParams {
    /// Metres from the listener to the strike, `[0, 10000]`.
    pub distance: f64,
    /// `[0, 1]`; drives the multi-strike and afterimage envelopes.
    pub initial_strike: f64,
    /// `[0, 1]`; drives the rumbler.
    pub rumble: f64,
    /// `[0, 1]`; drives the deepener.
    pub growl: f64,
    pub reverb: bool,
    pub preset: Preset,
}

impl Default for ThunderParams {
    fn default() -> Self {
        Self {
            distance: 500.0,
            initial_strike: 0.7,
            rumble: 0.5,
            growl: 0.5,
            reverb: true,
            preset: Preset::V2,
        }
    }
}

impl ThunderParams {
    pub fn validate(&self) -> Result<()> {
        check_range("distance", self.distance, 0.0, MAX_DISTANCE_M, " m")?;
        check_range("initial_strike", self.initial_strike, 0.0, 1.0, "")?;
        check_range("rumble", self.rumble, 0.0, 1.0, "")?;
        check_range("growl", self.growl, 0.0, 1.0, "")?;
        Ok(())
    }

    /// Onset delay in seconds for a given speed of sound.
    pub fn distance_delay(&self, speed_of_sound: f64) -> f64 {
        self.distance / speed_of_sound
    }
}

pub(crate) fn check_range(field: &'static str, value: f64, min: f64, max: f64, unit: &'static str) -> Result<()> {
    if value.is_finite() && (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            field,
            value,
            min,
            max,
            unit,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// The model as originally evaluated.
    V1,
    /// The revised model with the listening-test adjustments.
    #[default]
    V2,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::V1 => "v1",
            Preset::V2 => "v2",
        }
    }

    pub fn constants(&self) -> PresetConstants {
        match self {
            Preset::V1 => PresetConstants {
                strike_center_offset_hz: 0.0,
                strike_q: 10.0,
                deepener_highpass_hz: 15.0,
                afterimage_gain: 1.0,
                compressor: None,
            },
            Preset::V2 => PresetConstants {
                strike_center_offset_hz: -20.0,
                strike_q: 7.0,
                deepener_highpass_hz: 30.0,
                afterimage_gain: 0.4,
                compressor: Some(CompressorSpec::MASTER),
            },
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Preset::V1),
            "v2" => Ok(Preset::V2),
            other => Err(format!("unknown preset {other:?}, expected v1 or v2")),
        }
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Every constant that differs between presets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PresetConstants {
    pub strike_center_offset_hz: f64,
    pub strike_q: f64,
    pub deepener_highpass_hz: f64,
    pub afterimage_gain: f64,
    pub compressor: Option<CompressorSpec>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ThunderParams::default().validate().unwrap();
    }

    #[test]
    fn errors_name_the_field_and_range() {
        let p = ThunderParams {
            distance: 20_000.0,
            ..Default::default()
        };
        let err = p.validate().unwrap_err();
        assert_eq!(err.field(), Some("distance"));
        assert!(err.to_string().contains("[0, 10000]"), "{err}");

        let p = ThunderParams {
            growl: f64::NAN,
            ..Default::default()
        };
        assert_eq!(p.validate().unwrap_err().field(), Some("growl"));
    }

    #[test]
    fn preset_round_trips_through_text() {
        for p in [Preset::V1, Preset::V2] {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("v3".parse::<Preset>().is_err());
    }
}
