use std::path::Path;

use super::{AudioClip, DspError};

/// Encodes a clip as mono 16-bit PCM RIFF/WAVE bytes.
pub fn wav_bytes(clip: &AudioClip) -> Vec<u8> {
    let data_len = clip.samples.len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&clip.sample_rate.to_le_bytes());
    out.extend_from_slice(&(clip.sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in &clip.samples {
        let q = (s.clamp(-1.0, 1.0) * 32767.0).round() as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    out
}

pub fn write_wav(clip: &AudioClip, path: &Path) -> Result<(), DspError> {
    std::fs::write(path, wav_bytes(clip))?;
    Ok(())
}

/// Decodes mono 16-bit PCM RIFF/WAVE bytes. Unknown chunks are skipped;
/// anything other than PCM16 mono is rejected.
pub fn wav_from_bytes(bytes: &[u8]) -> Result<AudioClip, DspError> {
    let bad = |msg: &str| DspError::UnsupportedFormat(msg.to_string());
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(bad("not a RIFF/WAVE file"));
    }
    let mut pos = 12;
    let mut fmt: Option<(u16, u16, u32, u16)> = None;
    let mut data: Option<&[u8]> = None;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_end = pos + 8 + size;
        if body_end > bytes.len() {
            return Err(bad("truncated chunk"));
        }
        let body = &bytes[pos + 8..body_end];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(bad("fmt chunk too small"));
                }
                fmt = Some((
                    u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    u16::from_le_bytes(body[14..16].try_into().unwrap()),
                ));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // chunks are word-aligned
        pos = body_end + (size & 1);
    }
    let (format, channels, sample_rate, bits) = fmt.ok_or_else(|| bad("missing fmt chunk"))?;
    if format != 1 || channels != 1 || bits != 16 {
        return Err(bad("only PCM16 mono is supported"));
    }
    let data = data.ok_or_else(|| bad("missing data chunk"))?;
    let samples = data
        .chunks_exact(2)
        .map(|b| i16::from_le_bytes([b[0], b[1]]) as f32 / 32767.0)
        .collect();
    Ok(AudioClip::new(samples, sample_rate))
}

pub fn read_wav(path: &Path) -> Result<AudioClip, DspError> {
    let bytes = std::fs::read(path)?;
    wav_from_bytes(&bytes)
}
