use std::net::IpAddr;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use thunder_core::submodels::params::MAX_DISTANCE_M;
use thunder_core::{BitDepth, Preset};

#[derive(Debug, Parser)]
#[command(name = "thunder", version, about = "Procedural thunder synthesis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one thunder event to a stereo WAV file.
    Render(RenderArgs),
    /// Print onset, level, band energy and RMS envelope of a WAV file.
    Analyze(AnalyzeArgs),
    /// Run the HTTP service used by the web UI.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Distance to the strike in metres, range [0, 10000]. Sets the onset delay.
    #[arg(long, default_value_t = 500.0, value_name = "METRES", allow_negative_numbers = true,
          value_parser = distance)]
    pub distance: f64,

    /// Multi-strike and afterimage intensity, range [0, 1].
    #[arg(long, default_value_t = 0.7, value_name = "0..1", allow_negative_numbers = true, value_parser = unit)]
    pub initial_strike: f64,

    /// Rumbler intensity, range [0, 1].
    #[arg(long, default_value_t = 0.5, value_name = "0..1", allow_negative_numbers = true, value_parser = unit)]
    pub rumble: f64,

    /// Deepener intensity, range [0, 1].
    #[arg(long, default_value_t = 0.5, value_name = "0..1", allow_negative_numbers = true, value_parser = unit)]
    pub growl: f64,

    /// Beach reverb on the strike path.
    #[arg(long, default_value = "on", value_name = "on|off", value_parser = on_off, action = ArgAction::Set)]
    pub reverb: bool,

    /// Constant set: v1 as originally published, v2 with the later refinements.
    #[arg(long, default_value = "v2", value_parser = ["v1", "v2"])]
    pub preset: String,

    /// Noise seed, range [0, 2^64). Drawn at random and reported when omitted.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output WAV path. Written atomically.
    #[arg(long, default_value = "thunder.wav", value_name = "WAV")]
    pub out: PathBuf,

    /// Sample format of the output file.
    #[arg(long, default_value = "float32", value_parser = ["float32", "pcm16"])]
    pub bit_depth: String,

    /// WAV impulse response replacing the synthetic beach response.
    #[arg(long, value_name = "WAV")]
    pub ir: Option<PathBuf>,

    /// Report layout on standard output.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
}

impl RenderArgs {
    pub fn preset(&self) -> Preset {
        self.preset.parse().expect("restricted by clap")
    }

    pub fn bit_depth(&self) -> BitDepth {
        self.bit_depth.parse().expect("restricted by clap")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// Human-readable summary.
    Text,
    /// One `key=value` per line.
    Kv,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// WAV file to analyze.
    #[arg(long = "in", value_name = "WAV")]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = AnalyzeFormat::Text)]
    pub format: AnalyzeFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeFormat {
    Text,
    /// Header row plus one row per 100 ms hop.
    Csv,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// TCP port, range [0, 65535]; 0 picks a free port.
    #[arg(long, default_value_t = 8080)]
    pub port: u16,

    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,

    /// Maximum simultaneous renders [default: number of CPUs].
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=256))]
    pub workers: Option<u32>,

    /// Directory of built web UI assets to serve at `/`.
    #[arg(long, value_name = "DIR")]
    pub ui_dir: Option<PathBuf>,
}

fn ranged(s: &str, min: f64, max: f64, unit: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("expected a number in [{min}, {max}]{unit}"))?;
    if v.is_finite() && (min..=max).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must be within [{min}, {max}]{unit}"))
    }
}

fn distance(s: &str) -> Result<f64, String> {
    ranged(s, 0.0, MAX_DISTANCE_M, " m")
}

fn unit(s: &str) -> Result<f64, String> {
    ranged(s, 0.0, 1.0, "")
}

fn on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err("expected on or off".into()),
    }
}
