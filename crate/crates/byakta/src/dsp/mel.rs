use super::stft::{preemphasis, stft};
use super::{AudioClip, DspError, MagnitudeSpectrogram, StftConfig};

/// dB reference level: magnitudes at or above 10^(REF_DB/20) compress to 1.
pub const REF_DB: f64 = 20.0;
/// Dynamic range of the normalized scale in dB.
pub const MAX_DB: f64 = 100.0;
const MAG_FLOOR: f64 = 1e-5;

/// m = 2595 * log10(1 + f/700)
pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Compresses a raw magnitude to [0, 1]: dB scale relative to REF_DB,
/// floored at MAG_FLOOR, spanning MAX_DB of range.
pub fn compress_db(mag: f64) -> f64 {
    ((20.0 * mag.max(MAG_FLOOR).log10() - REF_DB + MAX_DB) / MAX_DB).clamp(0.0, 1.0)
}

/// Inverse of [`compress_db`] on the non-clipped region. Everything at or
/// below the bottom clip maps back to the magnitude floor, so
/// decompress(compress(1e-5)) = 1e-5.
pub fn decompress_db(normalized: f64) -> f64 {
    if normalized <= 0.0 {
        return MAG_FLOOR;
    }
    10f64.powf((normalized.min(1.0) * MAX_DB - MAX_DB + REF_DB) / 20.0)
}

/// Full-resolution normalized magnitude spectrogram in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSpectrogram {
    pub frames: usize,
    pub bins: usize,
    pub data: Vec<f32>,
}

impl LinearSpectrogram {
    pub fn frame(&self, f: usize) -> &[f32] {
        &self.data[f * self.bins..(f + 1) * self.bins]
    }

    pub fn from_magnitudes(mags: &MagnitudeSpectrogram) -> Self {
        LinearSpectrogram {
            frames: mags.frames,
            bins: mags.bins,
            data: mags.data().iter().map(|&m| compress_db(m) as f32).collect(),
        }
    }

    pub fn to_magnitudes(&self) -> MagnitudeSpectrogram {
        MagnitudeSpectrogram::new(
            self.frames,
            self.bins,
            self.data.iter().map(|&v| decompress_db(v as f64)).collect(),
        )
    }

    /// Zero-pads (silence level) or truncates the time axis to `frames`.
    pub fn resize_frames(&self, frames: usize) -> Self {
        let mut data = self.data.clone();
        data.resize(frames * self.bins, 0.0);
        LinearSpectrogram {
            frames,
            bins: self.bins,
            data,
        }
    }
}

/// Coarse normalized mel spectrogram: the time axis holds every
/// `reduction`-th STFT frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MelSpectrogram {
    pub frames: usize,
    pub n_mels: usize,
    pub data: Vec<f32>,
}

impl MelSpectrogram {
    pub fn frame(&self, f: usize) -> &[f32] {
        &self.data[f * self.n_mels..(f + 1) * self.n_mels]
    }
}

/// Triangular mel filterbank, rows by FFT bins.
#[derive(Debug, Clone)]
pub struct MelFilterbank {
    pub n_mels: usize,
    pub bins: usize,
    weights: Vec<f64>,
}

impl MelFilterbank {
    pub fn row(&self, m: usize) -> &[f64] {
        &self.weights[m * self.bins..(m + 1) * self.bins]
    }

    /// Applies the bank: output is frames by n_mels.
    pub fn apply(&self, mags: &MagnitudeSpectrogram) -> MagnitudeSpectrogram {
        assert_eq!(self.bins, mags.bins, "filterbank/spectrogram bin mismatch");
        let mut data = vec![0.0f64; mags.frames * self.n_mels];
        for f in 0..mags.frames {
            let frame = mags.frame(f);
            let out = &mut data[f * self.n_mels..(f + 1) * self.n_mels];
            for (m, slot) in out.iter_mut().enumerate() {
                *slot = self
                    .row(m)
                    .iter()
                    .zip(frame)
                    .map(|(&w, &x)| w * x)
                    .sum::<f64>();
            }
        }
        MagnitudeSpectrogram::new(mags.frames, self.n_mels, data)
    }
}

/// Builds `n_mels` triangular filters with centers equally spaced on the
/// mel scale between 0 and sample_rate/2.
pub fn mel_filterbank(cfg: &StftConfig, n_mels: usize) -> MelFilterbank {
    assert!(n_mels >= 1);
    let bins = cfg.bins();
    let nyquist = cfg.sample_rate as f64 / 2.0;
    let mel_max = hz_to_mel(nyquist);
    let centers: Vec<f64> = (0..n_mels + 2)
        .map(|i| mel_to_hz(mel_max * i as f64 / (n_mels + 1) as f64))
        .collect();

    let mut weights = vec![0.0f64; n_mels * bins];
    for m in 0..n_mels {
        let (lo, mid, hi) = (centers[m], centers[m + 1], centers[m + 2]);
        let row = &mut weights[m * bins..(m + 1) * bins];
        for (k, slot) in row.iter_mut().enumerate() {
            let f = k as f64 * cfg.sample_rate as f64 / cfg.n_fft as f64;
            let rising = (f - lo) / (mid - lo);
            let falling = (hi - f) / (hi - mid);
            *slot = rising.min(falling).max(0.0);
        }
    }
    MelFilterbank {
        n_mels,
        bins,
        weights,
    }
}

/// Extracts the model's training features from audio: the coarse mel
/// spectrogram (every `reduction`-th frame) and the full normalized
/// magnitude spectrogram.
pub fn analyze(
    clip: &AudioClip,
    cfg: &StftConfig,
    bank: &MelFilterbank,
    reduction: usize,
    preemph: f64,
) -> Result<(MelSpectrogram, LinearSpectrogram), DspError> {
    assert!(reduction >= 1);
    let emphasized = preemphasis(clip, preemph);
    let spec = stft(&emphasized, cfg)?;
    let mags = spec.magnitudes();
    let linear = LinearSpectrogram::from_magnitudes(&mags);
    let mel_raw = bank.apply(&mags);

    let coarse_frames = mags.frames.div_ceil(reduction);
    let mut data = Vec::with_capacity(coarse_frames * bank.n_mels);
    for f in (0..mags.frames).step_by(reduction) {
        data.extend(mel_raw.frame(f).iter().map(|&m| compress_db(m) as f32));
    }
    Ok((
        MelSpectrogram {
            frames: coarse_frames,
            n_mels: bank.n_mels,
            data,
        },
        linear,
    ))
}
