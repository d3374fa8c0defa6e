use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::{AudioClip, DspError, MagnitudeSpectrogram, StftConfig};

/// Complex STFT frames (frames by bins, bins = n_fft/2 + 1).
#[derive(Debug, Clone)]
pub struct ComplexSpectrogram {
    pub frames: usize,
    pub bins: usize,
    pub data: Vec<Complex64>,
}

impl ComplexSpectrogram {
    pub fn frame(&self, f: usize) -> &[Complex64] {
        &self.data[f * self.bins..(f + 1) * self.bins]
    }

    pub fn magnitudes(&self) -> MagnitudeSpectrogram {
        MagnitudeSpectrogram::new(
            self.frames,
            self.bins,
            self.data.iter().map(|c| c.norm()).collect(),
        )
    }
}

/// Periodic Hann window.
fn hann(win: usize) -> Vec<f64> {
    (0..win)
        .map(|n| 0.5 - 0.5 * (std::f64::consts::TAU * n as f64 / win as f64).cos())
        .collect()
}

/// Centered reflection padding by `pad` samples on both ends.
fn reflect_pad(x: &[f64], pad: usize) -> Vec<f64> {
    debug_assert!(pad < x.len());
    let mut out = Vec::with_capacity(x.len() + 2 * pad);
    out.extend((1..=pad).rev().map(|i| x[i]));
    out.extend_from_slice(x);
    out.extend((x.len() - pad - 1..x.len() - 1).rev().map(|i| x[i]));
    out
}

/// STFT over `samples` with centered reflection padding of win/2, so the
/// frame count is 1 + floor(len/hop).
pub fn stft_samples(samples: &[f64], cfg: &StftConfig) -> Result<ComplexSpectrogram, DspError> {
    cfg.validate()?;
    if samples.len() < cfg.win {
        return Err(DspError::AudioTooShort {
            len: samples.len(),
            min: cfg.win,
        });
    }
    let window = hann(cfg.win);
    let padded = reflect_pad(samples, cfg.win / 2);
    let frames = 1 + (padded.len() - cfg.win) / cfg.hop;
    let bins = cfg.bins();

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(cfg.n_fft);
    let mut buf = vec![Complex64::default(); cfg.n_fft];
    let mut data = Vec::with_capacity(frames * bins);
    for f in 0..frames {
        let start = f * cfg.hop;
        buf.fill(Complex64::default());
        for (i, (&s, &w)) in padded[start..start + cfg.win].iter().zip(&window).enumerate() {
            buf[i] = Complex64::new(s * w, 0.0);
        }
        fft.process(&mut buf);
        data.extend_from_slice(&buf[..bins]);
    }
    Ok(ComplexSpectrogram { frames, bins, data })
}

pub fn stft(clip: &AudioClip, cfg: &StftConfig) -> Result<ComplexSpectrogram, DspError> {
    let samples: Vec<f64> = clip.samples.iter().map(|&s| s as f64).collect();
    stft_samples(&samples, cfg)
}

/// Inverse STFT by windowed overlap-add with window-square normalization.
/// Returns (frames - 1) * hop samples, the centered interior of the
/// padded reconstruction.
pub fn istft_samples(spec: &ComplexSpectrogram, cfg: &StftConfig) -> Result<Vec<f64>, DspError> {
    cfg.validate()?;
    if spec.bins != cfg.bins() {
        return Err(DspError::ShapeMismatch(format!(
            "expected {} bins, got {}",
            cfg.bins(),
            spec.bins
        )));
    }
    let window = hann(cfg.win);
    let padded_len = (spec.frames - 1) * cfg.hop + cfg.win;
    let mut acc = vec![0.0f64; padded_len];
    let mut wsum = vec![0.0f64; padded_len];

    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(cfg.n_fft);
    let mut buf = vec![Complex64::default(); cfg.n_fft];
    let scale = 1.0 / cfg.n_fft as f64;
    for f in 0..spec.frames {
        let frame = spec.frame(f);
        buf[..spec.bins].copy_from_slice(frame);
        for k in 1..cfg.n_fft - spec.bins + 1 {
            buf[cfg.n_fft - k] = frame[k].conj();
        }
        ifft.process(&mut buf);
        let start = f * cfg.hop;
        for (i, &w) in window.iter().enumerate() {
            acc[start + i] += buf[i].re * scale * w;
            wsum[start + i] += w * w;
        }
    }

    let pad = cfg.win / 2;
    let out_len = padded_len - 2 * pad;
    let mut out = Vec::with_capacity(out_len);
    for i in pad..pad + out_len {
        out.push(if wsum[i] > 1e-12 { acc[i] / wsum[i] } else { 0.0 });
    }
    Ok(out)
}

pub fn istft(spec: &ComplexSpectrogram, cfg: &StftConfig) -> Result<AudioClip, DspError> {
    let samples = istft_samples(spec, cfg)?;
    Ok(AudioClip::new(
        samples.into_iter().map(|s| s as f32).collect(),
        cfg.sample_rate,
    ))
}

/// y[n] = x[n] - coef * x[n-1]
pub fn preemphasis(clip: &AudioClip, coef: f64) -> AudioClip {
    let mut prev = 0.0f64;
    let samples = clip
        .samples
        .iter()
        .map(|&s| {
            let x = s as f64;
            let y = x - coef * prev;
            prev = x;
            y as f32
        })
        .collect();
    AudioClip::new(samples, clip.sample_rate)
}

/// y[n] = x[n] + coef * y[n-1], the exact inverse of [`preemphasis`].
pub fn deemphasis(clip: &AudioClip, coef: f64) -> AudioClip {
    let mut prev = 0.0f64;
    let samples = clip
        .samples
        .iter()
        .map(|&s| {
            let y = s as f64 + coef * prev;
            prev = y;
            y as f32
        })
        .collect();
    AudioClip::new(samples, clip.sample_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn cfg() -> StftConfig {
        StftConfig::default()
    }

    /// Brute-force DFT of one windowed frame, used as an independent
    /// reference for the FFT-backed path.
    fn dft_frame(frame: &[f64], n_fft: usize, bins: usize) -> Vec<Complex64> {
        (0..bins)
            .map(|k| {
                let mut acc = Complex64::default();
                for (n, &x) in frame.iter().enumerate() {
                    let phi = -std::f64::consts::TAU * (k * n) as f64 / n_fft as f64;
                    acc += Complex64::new(x * phi.cos(), x * phi.sin());
                }
                acc
            })
            .collect()
    }

    #[test]
    fn zero_signal_gives_zero_magnitudes() {
        let spec = stft_samples(&vec![0.0; 22050], &cfg()).unwrap();
        assert!(spec.data.iter().all(|c| c.norm() == 0.0));
        assert_eq!(spec.frames, 1 + 22050 / 256);
    }

    #[test]
    fn sine_peak_lands_on_expected_bin() {
        let c = cfg();
        let sr = c.sample_rate as f64;
        let samples: Vec<f64> = (0..22050)
            .map(|n| (std::f64::consts::TAU * 440.0 * n as f64 / sr).sin())
            .collect();
        let spec = stft_samples(&samples, &c).unwrap();
        let mags = spec.magnitudes();
        let expected_bin = (440.0 * c.n_fft as f64 / sr).round() as usize;
        // interior frames only; edges see the reflection padding
        for f in 3..spec.frames - 3 {
            let frame = mags.frame(f);
            let peak = frame
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0;
            assert!(
                (peak as i64 - expected_bin as i64).abs() <= 1,
                "frame {f}: peak bin {peak}, expected near {expected_bin}"
            );
        }
    }

    #[test]
    fn fft_matches_brute_force_dft() {
        let c = StftConfig {
            sample_rate: 8000,
            n_fft: 64,
            hop: 16,
            win: 64,
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<f64> = (0..256).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let spec = stft_samples(&samples, &c).unwrap();

        // recompute one frame by definition
        let window: Vec<f64> = hann(c.win);
        let padded = reflect_pad(&samples, c.win / 2);
        let f = 3;
        let frame: Vec<f64> = padded[f * c.hop..f * c.hop + c.win]
            .iter()
            .zip(&window)
            .map(|(&s, &w)| s * w)
            .collect();
        let reference = dft_frame(&frame, c.n_fft, c.bins());
        for (a, b) in spec.frame(f).iter().zip(&reference) {
            assert!((a - b).norm() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn impulse_frame_is_flat() {
        let c = StftConfig {
            sample_rate: 8000,
            n_fft: 64,
            hop: 16,
            win: 64,
        };
        let mut samples = vec![0.0; 256];
        // place the impulse exactly at a frame center: frame f covers
        // padded [f*hop, f*hop+win); with pad = win/2 sample k sits at
        // padded index k + win/2
        let k = 96;
        samples[k] = 1.0;
        let spec = stft_samples(&samples, &c).unwrap();
        let mags = spec.magnitudes();
        // frame whose window start is k + pad - win/2 = k
        let f = k / c.hop;
        assert_eq!(f * c.hop, k, "test setup: impulse on a frame boundary");
        // window value at the center is 1 for periodic hann; the DFT of a
        // shifted delta has |X[k]| = window weight, flat across bins
        let frame = mags.frame(f);
        let w_at_center = hann(c.win)[c.win / 2];
        for &m in frame {
            assert!((m - w_at_center).abs() < 1e-9, "{m} vs {w_at_center}");
        }
    }

    #[test]
    fn istft_round_trip_noise() {
        let c = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples: Vec<f64> = (0..22016).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let spec = stft_samples(&samples, &c).unwrap();
        let back = istft_samples(&spec, &c).unwrap();
        assert_eq!(back.len(), (spec.frames - 1) * c.hop);
        let n = back.len().min(samples.len());
        let num: f64 = (0..n).map(|i| (back[i] - samples[i]).powi(2)).sum();
        let den: f64 = (0..n).map(|i| samples[i].powi(2)).sum();
        let rel = (num / den).sqrt();
        assert!(rel < 1e-6, "relative L2 error {rel}");
    }

    #[test]
    fn istft_of_zero_spectrogram_is_zero() {
        let c = cfg();
        let spec = ComplexSpectrogram {
            frames: 10,
            bins: c.bins(),
            data: vec![Complex64::default(); 10 * c.bins()],
        };
        let out = istft_samples(&spec, &c).unwrap();
        assert!(out.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn single_frame_hann_sine_reconstructs_up_to_cola() {
        // one frame in, windowed content comes back scaled by w^2/wsum = 1
        // wherever only that frame contributes; with a single frame the
        // normalization divides the window out exactly on the interior
        let c = StftConfig {
            sample_rate: 8000,
            n_fft: 64,
            hop: 16,
            win: 64,
        };
        let samples: Vec<f64> = (0..64)
            .map(|n| (std::f64::consts::TAU * 4.0 * n as f64 / 64.0).sin())
            .collect();
        let spec = stft_samples(&samples, &c).unwrap();
        let one = ComplexSpectrogram {
            frames: 1,
            bins: spec.bins,
            data: spec.frame(2).to_vec(),
        };
        // frame 2 covers padded samples [32, 96) = original [0, 64)
        let window = hann(c.win);
        let back = istft_samples(&one, &c).unwrap();
        // istft trims win/2 = 32 from both sides of the 64-sample frame,
        // leaving nothing; instead check the raw overlap-add by hand
        assert!(back.is_empty());
        // manual check: inverse FFT of the frame equals windowed input
        let mut planner = FftPlanner::new();
        let ifft = planner.plan_fft_inverse(c.n_fft);
        let mut buf = vec![Complex64::default(); c.n_fft];
        buf[..one.bins].copy_from_slice(&one.data);
        for k in 1..c.n_fft - one.bins + 1 {
            buf[c.n_fft - k] = one.data[k].conj();
        }
        ifft.process(&mut buf);
        for i in 0..c.win {
            let expect = samples[i] * window[i];
            assert!(
                (buf[i].re / c.n_fft as f64 - expect).abs() < 1e-9,
                "sample {i}"
            );
        }
    }

    #[test]
    fn too_short_input_errors() {
        assert!(matches!(
            stft_samples(&vec![0.0; 100], &cfg()),
            Err(DspError::AudioTooShort { .. })
        ));
    }

    #[test]
    fn wrong_bins_errors() {
        let spec = ComplexSpectrogram {
            frames: 2,
            bins: 100,
            data: vec![Complex64::default(); 200],
        };
        assert!(matches!(
            istft_samples(&spec, &cfg()),
            Err(DspError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn emphasis_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let clip = AudioClip::new(
            (0..22050).map(|_| rng.gen_range(-1.0f32..1.0)).collect(),
            22050,
        );
        let back = deemphasis(&preemphasis(&clip, 0.97), 0.97);
        for (a, b) in clip.samples.iter().zip(&back.samples) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
