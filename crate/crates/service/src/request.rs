use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use thunder_core::{BitDepth, Preset, ThunderParams};

/// Body of `POST /api/render`. Every field is optional; missing controls take
/// the schema default and a missing seed is drawn at random.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    pub distance: Option<f64>,
    pub initial_strike: Option<f64>,
    pub rumble: Option<f64>,
    pub growl: Option<f64>,
    pub reverb: Option<bool>,
    pub preset: Option<Preset>,
    pub seed: Option<u64>,
    pub bit_depth: Option<BitDepth>,
}

impl RenderRequest {
    pub fn params(&self) -> ThunderParams {
        let d = ThunderParams::default();
        ThunderParams {
            distance: self.distance.unwrap_or(d.distance),
            initial_strike: self.initial_strike.unwrap_or(d.initial_strike),
            rumble: self.rumble.unwrap_or(d.rumble),
            growl: self.growl.unwrap_or(d.growl),
            reverb: self.reverb.unwrap_or(d.reverb),
            preset: self.preset.unwrap_or(d.preset),
        }
    }
}

/// Error body for 4xx/5xx responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl RenderRequest {
    /// Parses a JSON object field by field so every error can name the key
    /// that caused it. An empty body is an empty object.
    pub fn from_json(body: &[u8]) -> Result<Self, ErrorBody> {
        let fail = |error: String, field: Option<&str>| ErrorBody {
            error,
            field: field.map(str::to_owned),
        };
        if body.iter().all(u8::is_ascii_whitespace) {
            return Ok(Self::default());
        }
        let value: Value =
            serde_json::from_slice(body).map_err(|e| fail(format!("request body is not valid JSON: {e}"), None))?;
        let Value::Object(map) = value else {
            return Err(fail("request body must be a JSON object".into(), None));
        };
        let mut req = Self::default();
        for (key, v) in map {
            fn take<T: DeserializeOwned>(key: &str, v: Value) -> Result<Option<T>, ErrorBody> {
                serde_json::from_value::<Option<T>>(v).map_err(|e| ErrorBody {
                    error: format!("{key}: {e}"),
                    field: Some(key.to_owned()),
                })
            }
            match key.as_str() {
                "distance" => req.distance = take(&key, v)?,
                "initial_strike" => req.initial_strike = take(&key, v)?,
                "rumble" => req.rumble = take(&key, v)?,
                "growl" => req.growl = take(&key, v)?,
                "reverb" => req.reverb = take(&key, v)?,
                "preset" => req.preset = take(&key, v)?,
                "seed" => req.seed = take(&key, v)?,
                "bit_depth" => req.bit_depth = take(&key, v)?,
                _ => return Err(fail(format!("unknown field {key:?}"), Some(&key))),
            }
        }
        Ok(req)
    }
}
