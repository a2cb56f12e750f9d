//! RIFF/WAVE encoding and decoding.

use std::io::{Cursor, Read, Seek, Write};
use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitDepth {
    #[default]
    Float32,
    Pcm16,
}

impl BitDepth {
    pub fn name(&self) -> &'static str {
        match self {
            BitDepth::Float32 => "float32",
            BitDepth::Pcm16 => "pcm16",
        }
    }
}

impl std::str::FromStr for BitDepth {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "float32" | "f32" => Ok(BitDepth::Float32),
            "pcm16" | "i16" => Ok(BitDepth::Pcm16),
            other => Err(format!("unknown bit depth {other:?}, expected float32 or pcm16")),
        }
    }
}

fn to_pcm16(x: f64) -> i16 {
    (x * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

fn write_samples<W: Write + Seek>(writer: W, signal: &Signal, depth: BitDepth) -> Result<()> {
    let spec = WavSpec {
        channels: signal.channel_count() as u16,
        sample_rate: signal.sample_rate,
        bits_per_sample: match depth {
            BitDepth::Float32 => 32,
            BitDepth::Pcm16 => 16,
        },
        sample_format: match depth {
            BitDepth::Float32 => SampleFormat::Float,
            BitDepth::Pcm16 => SampleFormat::Int,
        },
    };
    let mut w = WavWriter::new(writer, spec)?;
    for x in signal.interleaved() {
        match depth {
            BitDepth::Float32 => w.write_sample(x as f32)?,
            BitDepth::Pcm16 => w.write_sample(to_pcm16(x))?,
        }
    }
    w.finalize()?;
    Ok(())
}

/// Complete WAV file bytes.
pub fn encode_wav(signal: &Signal, depth: BitDepth) -> Result<Vec<u8>> {
    let mut cursor = Cursor::new(Vec::new());
    write_samples(&mut cursor, signal, depth)?;
    Ok(cursor.into_inner())
}

/// Writes to a temporary file next to `path` and renames it into place, so a
/// partially written file is never visible under the final name.
pub fn write_wav(signal: &Signal, path: &Path, depth: BitDepth) -> Result<()> {
    let bytes = encode_wav(signal, depth)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn decode<R: Read>(reader: WavReader<R>, origin: &Path) -> Result<Signal> {
    let spec = reader.spec();
    let format_err = |detail: String| Error::WavFormat {
        path: origin.to_path_buf(),
        detail,
    };
    if !(1..=2).contains(&spec.channels) {
        return Err(format_err(format!("{} channels (only mono and stereo are supported)", spec.channels)));
    }
    let wrap = |source: hound::Error| Error::WavRead {
        path: origin.to_path_buf(),
        source,
    };
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()
            .map_err(wrap)?,
        (SampleFormat::Int, bits @ (8 | 16 | 24 | 32)) => {
            let scale = 1.0 / (1u64 << (bits - 1)) as f64;
            reader
                .into_samples::<i32>()
                .map(|s| s.map(|v| v as f64 * scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(wrap)?
        }
        (fmt, bits) => return Err(format_err(format!("unsupported sample format {fmt:?} with {bits} bits"))),
    };
    let ch = spec.channels as usize;
    let channels = (0..ch)
        .map(|c| interleaved.iter().skip(c).step_by(ch).copied().collect())
        .collect();
    Ok(Signal::from_channels(spec.sample_rate, channels))
}

pub fn read_wav(path: &Path) -> Result<Signal> {
    let reader = WavReader::open(path).map_err(|source| Error::WavRead {
        path: path.to_path_buf(),
        source,
    })?;
    decode(reader, path)
}

pub fn decode_wav(bytes: &[u8]) -> Result<Signal> {
    let origin = Path::new("<memory>");
    let reader = WavReader::new(Cursor::new(bytes)).map_err(|source| Error::WavRead {
        path: origin.to_path_buf(),
        source,
    })?;
    decode(reader, origin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SAMPLE_RATE;

    #[test]
    fn float_stereo_data_chunk_size() {
        let sig = Signal::silence(2, SAMPLE_RATE as usize);
        let bytes = encode_wav(&sig, BitDepth::Float32).unwrap();
        // canonical float header is 58 bytes with a fact chunk, 44 without; check the data chunk size instead
        let pos = bytes.windows(4).position(|w| w == b"data").unwrap();
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap());
        assert_eq!(size as usize, 44_100 * 2 * 4);
    }

    #[test]
    fn pcm16_round_trip_within_one_lsb() {
        let x = crate::dsp::white_noise(3, 10_000);
        let sig = Signal::mono(x.clone());
        let back = decode_wav(&encode_wav(&sig, BitDepth::Pcm16).unwrap()).unwrap();
        assert_eq!(back.len(), x.len());
        for (a, b) in x.iter().zip(back.samples()) {
            assert!((a - b).abs() <= 1.0 / 32768.0);
        }
    }

    #[test]
    fn empty_signal_is_a_valid_file() {
        let sig = Signal::silence(2, 0);
        let back = decode_wav(&encode_wav(&sig, BitDepth::Float32).unwrap()).unwrap();
        assert_eq!(back.len(), 0);
        assert_eq!(back.channel_count(), 2);
    }

    #[test]
    fn atomic_write_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.wav");
        let sig = Signal::stereo(vec![0.25, -0.5], vec![0.125, 1.0]);
        write_wav(&sig, &path, BitDepth::Float32).unwrap();
        let back = read_wav(&path).unwrap();
        assert_eq!(back, sig);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn unwritable_path_is_an_io_error() {
        let sig = Signal::mono(vec![0.0]);
        let err = write_wav(&sig, Path::new("/nonexistent-dir/x.wav"), BitDepth::Pcm16).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(decode_wav(b"RIFF1234WAVEjunk").is_err());
    }
}
