use rustfft::num_complex::Complex64;

use super::stft::{istft_samples, stft_samples, ComplexSpectrogram};
use super::{AudioClip, DspError, MagnitudeSpectrogram, StftConfig};

/// Iterative phase reconstruction from a magnitude spectrogram.
///
/// The magnitudes are sharpened elementwise by `sharpen_power`, an initial
/// phase field is built deterministically by single-pass frequency
/// integration (parabolic peak interpolation per frame, phase accumulated
/// across frames), and the classic alternating projection
/// x <- istft(mag * exp(i * angle(stft(x)))) refines it. With zero
/// iterations the result is the zero-phase inverse transform. The output
/// is peak-normalized to 0.95.
///
/// A zero-phase start is useless for stationary content: all frames carry
/// identical phase, the iterate stays hop-periodic, and a tone that is not
/// hop-periodic can never be reached. The frequency-integrated start is
/// still fully deterministic.
pub fn griffin_lim(
    mag: &MagnitudeSpectrogram,
    iterations: usize,
    sharpen_power: f64,
    cfg: &StftConfig,
) -> Result<AudioClip, DspError> {
    let (clip, _) = run(mag, iterations, sharpen_power, cfg, false)?;
    Ok(clip)
}

/// As [`griffin_lim`], also returning the spectral convergence
/// ||stft(x)| - mag||_2 / ||mag||_2 measured before each projection and
/// once after the last (`iterations + 1` values).
pub fn griffin_lim_with_trace(
    mag: &MagnitudeSpectrogram,
    iterations: usize,
    sharpen_power: f64,
    cfg: &StftConfig,
) -> Result<(AudioClip, Vec<f64>), DspError> {
    run(mag, iterations, sharpen_power, cfg, true)
}

fn run(
    mag: &MagnitudeSpectrogram,
    iterations: usize,
    sharpen_power: f64,
    cfg: &StftConfig,
    trace: bool,
) -> Result<(AudioClip, Vec<f64>), DspError> {
    if mag.bins != cfg.bins() {
        return Err(DspError::ShapeMismatch(format!(
            "expected {} bins, got {}",
            cfg.bins(),
            mag.bins
        )));
    }
    let target: Vec<f64> = mag.data().iter().map(|&m| m.powf(sharpen_power)).collect();
    let target_norm = target.iter().map(|m| m * m).sum::<f64>().sqrt();
    let sharpened = MagnitudeSpectrogram::new(mag.frames, mag.bins, target.clone());

    let phases = if iterations == 0 {
        vec![0.0; target.len()]
    } else {
        integrated_phases(&sharpened, cfg)
    };
    let start = ComplexSpectrogram {
        frames: mag.frames,
        bins: mag.bins,
        data: target
            .iter()
            .zip(&phases)
            .map(|(&m, &p)| Complex64::from_polar(m, p))
            .collect(),
    };
    let mut x = istft_samples(&start, cfg)?;
    let mut sc = Vec::new();

    for _ in 0..iterations {
        let spec = stft_samples(&x, cfg)?;
        if trace {
            sc.push(spectral_convergence(&spec, &target, target_norm));
        }
        let projected = ComplexSpectrogram {
            frames: spec.frames,
            bins: spec.bins,
            data: spec
                .data
                .iter()
                .zip(&target)
                .map(|(c, &m)| {
                    let norm = c.norm();
                    if norm > 0.0 {
                        c * (m / norm)
                    } else {
                        Complex64::new(m, 0.0)
                    }
                })
                .collect(),
        };
        x = istft_samples(&projected, cfg)?;
    }
    if trace {
        let spec = stft_samples(&x, cfg)?;
        sc.push(spectral_convergence(&spec, &target, target_norm));
    }

    let mut clip = AudioClip::new(x.into_iter().map(|s| s as f32).collect(), cfg.sample_rate);
    clip.normalize_peak(0.95);
    Ok((clip, sc))
}

/// Deterministic initial phases: per frame, each magnitude peak's true
/// frequency is estimated by parabolic interpolation, its phase advances
/// from the previous frame by hop * frequency, and the bins sloping away
/// from the peak copy that phase with alternating sign (the linear-phase
/// factor of a center-origin window).
fn integrated_phases(mag: &MagnitudeSpectrogram, cfg: &StftConfig) -> Vec<f64> {
    let bins = mag.bins;
    let mut phases = vec![0.0f64; mag.frames * bins];
    let mut prev = vec![0.0f64; bins];
    for f in 0..mag.frames {
        let m = mag.frame(f);
        let cur = &mut phases[f * bins..(f + 1) * bins];
        for k in 1..bins - 1 {
            if m[k] > m[k - 1] && m[k] >= m[k + 1] && m[k] > 0.0 {
                let (a, b, c) = (m[k - 1], m[k], m[k + 1]);
                let denom = a - 2.0 * b + c;
                let offset = if denom.abs() > 1e-12 {
                    (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
                } else {
                    0.0
                };
                let omega = std::f64::consts::TAU * (k as f64 + offset) / cfg.n_fft as f64;
                let phi = prev[k] + cfg.hop as f64 * omega;
                cur[k] = phi;
                let mut j = k;
                while j > 1 && m[j - 1] <= m[j] {
                    j -= 1;
                    cur[j] = phi + std::f64::consts::PI * ((k - j) % 2) as f64;
                }
                let mut j = k + 1;
                while j < bins && m[j] <= m[j - 1] {
                    cur[j] = phi + std::f64::consts::PI * ((j - k) % 2) as f64;
                    j += 1;
                }
            }
        }
        prev.copy_from_slice(cur);
    }
    phases
}

fn spectral_convergence(spec: &ComplexSpectrogram, target: &[f64], target_norm: f64) -> f64 {
    let diff: f64 = spec
        .data
        .iter()
        .zip(target)
        .map(|(c, &m)| {
            let d = c.norm() - m;
            d * d
        })
        .sum();
    if target_norm > 0.0 {
        diff.sqrt() / target_norm
    } else {
        0.0
    }
}
