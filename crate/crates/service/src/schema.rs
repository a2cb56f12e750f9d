//! The parameter descriptor document served at `/api/schema`.

use std::sync::OnceLock;

use serde::Serialize;
use serde_json::json;

use thunder_core::submodels::params::MAX_DISTANCE_M;
use thunder_core::ThunderParams;

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Control {
    Number {
        name: &'static str,
        label: &'static str,
        min: f64,
        max: f64,
        step: f64,
        default: f64,
        unit: &'static str,
    },
    Boolean {
        name: &'static str,
        label: &'static str,
        default: bool,
    },
    Enum {
        name: &'static str,
        label: &'static str,
        options: Vec<serde_json::Value>,
        default: &'static str,
    },
}

pub fn controls() -> Vec<Control> {
    let d = ThunderParams::default();
    let unit = |name, label, default| Control::Number {
        name,
        label,
        min: 0.0,
        max: 1.0,
        step: 0.01,
        default,
        unit: "",
    };
    vec![
        Control::Number {
            name: "distance",
            label: "Distance",
            min: 0.0,
            max: MAX_DISTANCE_M,
            step: 1.0,
            default: d.distance,
            unit: "m",
        },
        unit("initial_strike", "Initial strike", d.initial_strike),
        unit("rumble", "Rumble", d.rumble),
        unit("growl", "Growl", d.growl),
        Control::Boolean {
            name: "reverb",
            label: "Beach reverb",
            default: d.reverb,
        },
        Control::Enum {
            name: "preset",
            label: "Preset",
            options: vec![
                json!({ "value": "v1", "label": "v1 (as surveyed)" }),
                json!({ "value": "v2", "label": "v2 (improved)" }),
            ],
            default: d.preset.name(),
        },
    ]
}

/// Serialized once so every response is byte-identical.
pub fn document() -> &'static str {
    static DOC: OnceLock<String> = OnceLock::new();
    DOC.get_or_init(|| {
        let doc = json!({
            "controls": controls(),
            "seed": {
                "type": "integer",
                "min": 0,
                "max": u64::MAX,
                "optional": true,
                "header": crate::SEED_HEADER,
            },
        });
        serde_json::to_string_pretty(&doc).expect("schema serializes")
    })
}
