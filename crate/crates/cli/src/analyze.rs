use std::fmt::Write;

use thunder_core::analysis::Metrics;

fn onset(m: &Metrics) -> String {
    m.onset_secs.map_or("none".into(), |t| format!("{t:.6}"))
}

fn db(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.2}")
    } else {
        "-inf".into()
    }
}

pub fn text(m: &Metrics) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "duration  {:.3} s", m.duration_secs);
    let _ = writeln!(s, "onset     {}", onset(m));
    let _ = writeln!(s, "peak      {} dBFS", db(m.peak_dbfs));
    let _ = writeln!(
        s,
        "bands     <200 Hz {:.1}%  200-1300 Hz {:.1}%  >1300 Hz {:.1}%",
        m.bands.low * 100.0,
        m.bands.mid * 100.0,
        m.bands.high * 100.0
    );
    let _ = writeln!(s, "rms envelope (100 ms hops)");
    for f in &m.rms_envelope {
        let _ = writeln!(s, "  {:>8.1} s  {:>8} dBFS", f.time_secs, db(f.rms_dbfs()));
    }
    s
}

/// One row per hop; the file-level columns repeat on every row so each line
/// stands alone.
pub fn csv(m: &Metrics) -> String {
    let mut s = String::from("time_s,rms_dbfs,onset_s,peak_dbfs,duration_s,band_low,band_mid,band_high\n");
    let tail = format!(
        "{},{},{:.6},{:.6},{:.6},{:.6}",
        onset(m),
        db(m.peak_dbfs),
        m.duration_secs,
        m.bands.low,
        m.bands.mid,
        m.bands.high
    );
    for f in &m.rms_envelope {
        let _ = writeln!(s, "{:.1},{},{tail}", f.time_secs, db(f.rms_dbfs()));
    }
    s
}
