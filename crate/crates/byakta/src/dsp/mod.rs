//! Signal-processing substrate: STFT/iSTFT, mel filterbank, spectrogram
//! compression, Griffin-Lim phase reconstruction, and WAV encoding.

mod griffin;
mod mel;
mod stft;
mod wav;

pub use griffin::{griffin_lim, griffin_lim_with_trace};
pub use mel::{
    analyze, compress_db, decompress_db, hz_to_mel, mel_filterbank, mel_to_hz,
    LinearSpectrogram, MelFilterbank, MelSpectrogram, MAX_DB, REF_DB,
};
pub use stft::{
    deemphasis, istft, istft_samples, preemphasis, stft, stft_samples, ComplexSpectrogram,
};
pub use wav::{read_wav, wav_bytes, write_wav};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("audio too short: {len} samples, need at least {min}")]
    AudioTooShort { len: usize, min: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// STFT analysis parameters. The window is always Hann (periodic), which
/// together with `hop | win` keeps overlap-add reconstruction exact.
#[derive(Debug, Clone, PartialEq)]
pub struct StftConfig {
    pub sample_rate: u32,
    pub n_fft: usize,
    pub hop: usize,
    pub win: usize,
}

impl Default for StftConfig {
    fn default() -> Self {
        StftConfig {
            sample_rate: 22050,
            n_fft: 1024,
            hop: 256,
            win: 1024,
        }
    }
}

impl StftConfig {
    /// Frequency bins kept from the real FFT.
    pub fn bins(&self) -> usize {
        self.n_fft / 2 + 1
    }

    pub fn validate(&self) -> Result<(), DspError> {
        if self.sample_rate == 0 {
            return Err(DspError::InvalidConfig("sample_rate must be > 0".into()));
        }
        if !self.n_fft.is_power_of_two() {
            return Err(DspError::InvalidConfig(format!(
                "n_fft {} is not a power of two",
                self.n_fft
            )));
        }
        if !(self.hop <= self.win && self.win <= self.n_fft) {
            return Err(DspError::InvalidConfig(format!(
                "need hop <= win <= n_fft, got {}/{}/{}",
                self.hop, self.win, self.n_fft
            )));
        }
        if self.hop == 0 || self.win % self.hop != 0 {
            return Err(DspError::InvalidConfig(format!(
                "hop {} must divide win {}",
                self.hop, self.win
            )));
        }
        Ok(())
    }
}

/// Mono audio in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    pub samples: Vec<f32>,
    pub sample_rate: u32,
}

impl AudioClip {
    pub fn new(samples: Vec<f32>, sample_rate: u32) -> Self {
        AudioClip {
            samples,
            sample_rate,
        }
    }

    pub fn silence(len: usize, sample_rate: u32) -> Self {
        AudioClip::new(vec![0.0; len], sample_rate)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn peak(&self) -> f32 {
        self.samples.iter().fold(0.0f32, |m, s| m.max(s.abs()))
    }

    /// Scales so the peak equals `target` (no-op on silence).
    pub fn normalize_peak(&mut self, target: f32) {
        let peak = self.peak();
        if peak > 0.0 {
            let k = target / peak;
            for s in &mut self.samples {
                *s *= k;
            }
        }
    }

    /// Scales down only if the peak exceeds `limit`.
    pub fn limit_peak(&mut self, limit: f32) {
        if self.peak() > limit {
            self.normalize_peak(limit);
        }
    }
}

/// Raw nonnegative STFT magnitudes, frames by bins, before any
/// compression. Double precision for the phase-recovery loop.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeSpectrogram {
    pub frames: usize,
    pub bins: usize,
    data: Vec<f64>,
}

impl MagnitudeSpectrogram {
    pub fn new(frames: usize, bins: usize, data: Vec<f64>) -> Self {
        assert_eq!(frames * bins, data.len());
        MagnitudeSpectrogram { frames, bins, data }
    }

    pub fn zeros(frames: usize, bins: usize) -> Self {
        Self::new(frames, bins, vec![0.0; frames * bins])
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn frame(&self, f: usize) -> &[f64] {
        &self.data[f * self.bins..(f + 1) * self.bins]
    }
}
