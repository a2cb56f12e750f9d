mod analyze;
mod args;

use std::net::SocketAddr;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;

use thunder_core::analysis;
use thunder_core::engine::draw_seed;
use thunder_core::postfx::load_impulse_response;
use thunder_core::wav::{read_wav, write_wav};
use thunder_core::{render, RenderConfig, ThunderParams};
use thunder_service::ServiceConfig;

use args::{AnalyzeArgs, AnalyzeFormat, Cli, Command, RenderArgs, ReportFormat, ServeArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Render(a) => cmd_render(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Serve(a) => cmd_serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_render(a: RenderArgs) -> Result<(), String> {
    let params = ThunderParams {
        distance: a.distance,
        initial_strike: a.initial_strike,
        rumble: a.rumble,
        growl: a.growl,
        reverb: a.reverb,
        preset: a.preset(),
    };
    let mut config = RenderConfig {
        bit_depth: a.bit_depth(),
        ..RenderConfig::with_seed(a.seed.unwrap_or_else(draw_seed))
    };
    if let Some(path) = &a.ir {
        let ir = load_impulse_response(path).map_err(|e| e.to_string())?;
        config.impulse_response = Some(Arc::new(ir));
    }
    let (signal, report) = render(&params, &config).map_err(|e| e.to_string())?;
    write_wav(&signal, &a.out, config.bit_depth).map_err(|e| format!("cannot write {}: {e}", a.out.display()))?;
    match a.report {
        ReportFormat::Text => {
            print!("{}", report.to_text());
            println!("  wrote {}", a.out.display());
        }
        ReportFormat::Kv => {
            print!("{}", report.to_key_values());
            println!("out={}", a.out.display());
        }
    }
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), String> {
    let signal = read_wav(&a.input).map_err(|e| e.to_string())?;
    if signal.is_empty() {
        return Err(format!("{} contains no samples", a.input.display()));
    }
    let metrics = analysis::analyze(&signal);
    match a.format {
        AnalyzeFormat::Text => print!("{}", analyze::text(&metrics)),
        AnalyzeFormat::Csv => print!("{}", analyze::csv(&metrics)),
    }
    Ok(())
}

fn cmd_serve(a: ServeArgs) -> Result<(), String> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).with_target(false).init();
    let mut config = ServiceConfig {
        ui_dir: a.ui_dir,
        ..ServiceConfig::default()
    };
    if let Some(w) = a.workers {
        config.workers = w as usize;
    }
    let addr = SocketAddr::new(a.bind, a.port);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| format!("cannot start runtime: {e}"))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| format!("cannot listen on {addr}: {e}"))?;
        let local = listener.local_addr().map_err(|e| e.to_string())?;
        eprintln!("listening on http://{local}");
        thunder_service::serve(listener, config, async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| e.to_string())
    })
}
