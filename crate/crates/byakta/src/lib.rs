//! Bilingual (Bangla + English) text-to-speech pipeline.
//!
//! The synthesis path runs text through a numeral-aware normalizer, splits
//! long inputs into segments, generates coarse mel spectrograms with a
//! convolutional attention model, upsamples them to full magnitude
//! spectrograms, and reconstructs audio with Griffin-Lim phase recovery.
//!
//! Modules:
//! - [`text`]: script classification, Bangla numeral verbalization,
//!   normalization, and grapheme tokenization.
//! - [`segment`]: long-utterance splitting, generation batching, and
//!   ordered audio merging.
//! - [`dsp`]: STFT/iSTFT, mel filterbank, spectrogram compression,
//!   Griffin-Lim, and WAV encoding.
//! - [`neural`]: a minimal reverse-mode autodiff tensor kernel with the
//!   convolution ops the networks need, plus Adam.
//! - [`model`]: the two networks (coarse mel generator with guided
//!   attention, and the spectrogram upsampler), training steps,
//!   autoregressive synthesis, and vocabulary-remap weight transfer.
//! - [`pipeline`]: configuration, weights persistence, end-to-end
//!   synthesis, and benchmark running.

pub mod dsp;
pub mod model;
pub mod neural;
pub mod pipeline;
pub mod segment;
pub mod text;
