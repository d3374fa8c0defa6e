//! Long-utterance handling: split normalized text into synthesizable
//! segments, batch them for generation in source order, and merge the
//! per-segment audio with planned gaps and crossfades.

use thiserror::Error;

use crate::dsp::AudioClip;
use crate::text::{tokenize, GraphemeToken, NormalizedText, TextError, Vocabulary, PAD_ID};

#[derive(Debug, Error)]
pub enum SegmentError {
    #[error("sample rate mismatch: {0} vs {1}")]
    SampleRateMismatch(u32, u32),
    #[error("crossfade of {crossfade} samples exceeds a {clip} sample clip")]
    CrossfadeLongerThanClip { crossfade: usize, clip: usize },
    #[error("no clips to merge")]
    NoClips,
    #[error("expected {expected} boundary plans, got {got}")]
    PlanCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Text(#[from] TextError),
}

/// What kind of boundary a segment ends on; drives the silence gap length
/// chosen when merging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakKind {
    Sentence,
    Clause,
    None,
}

/// A synthesizable slice of the source text. Tokens end with the segment's
/// own end marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub index: usize,
    pub tokens: Vec<GraphemeToken>,
    pub trailing_break: BreakKind,
}

impl Segment {
    /// Token count excluding the end marker.
    pub fn body_len(&self) -> usize {
        self.tokens.len().saturating_sub(1)
    }
}

/// Segments padded into an id matrix for one generation pass.
#[derive(Debug, Clone)]
pub struct GenerationBatch {
    pub segments: Vec<Segment>,
    /// One row per segment: token ids ending with END, then PAD up to the
    /// longest row.
    pub padded_ids: Vec<Vec<u32>>,
}

/// Per-boundary merge parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergePlan {
    pub gap_ms: u32,
    pub crossfade_ms: u32,
}

impl MergePlan {
    pub fn new(gap_ms: u32, crossfade_ms: u32) -> Self {
        MergePlan {
            gap_ms,
            crossfade_ms,
        }
    }
}

pub fn ms_to_samples(ms: u32, sample_rate: u32) -> usize {
    ((ms as u64 * sample_rate as u64 + 500) / 1000) as usize
}

fn is_sentence_punct(c: char) -> bool {
    matches!(c, '.' | '?' | '!')
}

/// Splits normalized text into segments of at most `max_segment_tokens`
/// body tokens each, preferring to cut after sentence punctuation, then
/// after a comma, then after whitespace, and hard-cutting as a last
/// resort. Each segment receives its own end marker; concatenating the
/// bodies in order reproduces the source body exactly.
pub fn split_text(nt: &NormalizedText, max_segment_tokens: usize) -> Vec<Segment> {
    assert!(max_segment_tokens >= 8, "max_segment_tokens must be >= 8");
    let body: Vec<char> = nt
        .tokens
        .iter()
        .filter_map(|t| match t {
            GraphemeToken::Symbol(c) => Some(*c),
            GraphemeToken::End => None,
        })
        .collect();

    let mut segments = Vec::new();
    let mut start = 0;
    while start < body.len() {
        let remaining = &body[start..];
        let (cut, brk) = if remaining.len() <= max_segment_tokens {
            let brk = match remaining.last() {
                Some(&c) if is_sentence_punct(c) => BreakKind::Sentence,
                Some(',') => BreakKind::Clause,
                _ => BreakKind::None,
            };
            (remaining.len(), brk)
        } else {
            let window = &remaining[..max_segment_tokens];
            if let Some(p) = window.iter().rposition(|&c| is_sentence_punct(c)) {
                (p + 1, BreakKind::Sentence)
            } else if let Some(p) = window.iter().rposition(|&c| c == ',') {
                (p + 1, BreakKind::Clause)
            } else if let Some(p) = window.iter().rposition(|&c| c == ' ') {
                (p + 1, BreakKind::None)
            } else {
                (max_segment_tokens, BreakKind::None)
            }
        };
        let mut tokens: Vec<GraphemeToken> = remaining[..cut]
            .iter()
            .map(|&c| GraphemeToken::Symbol(c))
            .collect();
        tokens.push(GraphemeToken::End);
        segments.push(Segment {
            index: segments.len(),
            tokens,
            trailing_break: brk,
        });
        start += cut;
    }
    segments
}

/// Groups segments into batches of at most `batch_size` in index order and
/// pads each batch's token ids to its longest row.
pub fn enqueue_batches(
    segments: Vec<Segment>,
    batch_size: usize,
    vocab: &Vocabulary,
) -> Result<Vec<GenerationBatch>, SegmentError> {
    assert!(batch_size >= 1, "batch_size must be >= 1");
    let mut batches = Vec::with_capacity(segments.len().div_ceil(batch_size));
    let mut segments = segments.into_iter().peekable();
    while segments.peek().is_some() {
        let chunk: Vec<Segment> = segments.by_ref().take(batch_size).collect();
        let mut rows = Vec::with_capacity(chunk.len());
        for seg in &chunk {
            let nt = NormalizedText {
                tokens: seg.tokens.clone(),
                dropped_symbols: 0,
            };
            rows.push(tokenize(&nt, vocab)?);
        }
        let longest = rows.iter().map(Vec::len).max().unwrap_or(0);
        for row in &mut rows {
            row.resize(longest, PAD_ID);
        }
        batches.push(GenerationBatch {
            segments: chunk,
            padded_ids: rows,
        });
    }
    Ok(batches)
}

/// Concatenates clips in order, inserting each boundary's silence gap and
/// applying a linear crossfade of the configured length. Needs exactly
/// one plan per boundary (clips.len() - 1).
///
/// Output length = sum(clips) + sum(gaps) - sum(crossfades) in samples.
pub fn merge_audio(clips: &[AudioClip], plans: &[MergePlan]) -> Result<AudioClip, SegmentError> {
    let first = clips.first().ok_or(SegmentError::NoClips)?;
    if plans.len() + 1 != clips.len() {
        return Err(SegmentError::PlanCountMismatch {
            expected: clips.len() - 1,
            got: plans.len(),
        });
    }
    let rate = first.sample_rate;
    for clip in clips {
        if clip.sample_rate != rate {
            return Err(SegmentError::SampleRateMismatch(rate, clip.sample_rate));
        }
    }
    for (i, plan) in plans.iter().enumerate() {
        let crossfade = ms_to_samples(plan.crossfade_ms, rate);
        let shortest = clips[i].len().min(clips[i + 1].len());
        if crossfade > shortest {
            return Err(SegmentError::CrossfadeLongerThanClip {
                crossfade,
                clip: shortest,
            });
        }
    }

    let mut out = clips[0].samples.clone();
    for (plan, clip) in plans.iter().zip(&clips[1..]) {
        let gap = ms_to_samples(plan.gap_ms, rate);
        let crossfade = ms_to_samples(plan.crossfade_ms, rate);
        // the incoming side is the gap silence followed by the clip
        let mut incoming = Vec::with_capacity(gap + clip.len());
        incoming.resize(gap, 0.0f32);
        incoming.extend_from_slice(&clip.samples);

        let overlap_start = out.len() - crossfade;
        for j in 0..crossfade {
            let up = (j + 1) as f32 / (crossfade + 1) as f32;
            out[overlap_start + j] = out[overlap_start + j] * (1.0 - up) + incoming[j] * up;
        }
        out.extend_from_slice(&incoming[crossfade..]);
    }
    Ok(AudioClip::new(out, rate))
}

/// Uniform-plan convenience: the same gap and crossfade at every boundary.
pub fn merge_audio_uniform(
    clips: &[AudioClip],
    plan: MergePlan,
) -> Result<AudioClip, SegmentError> {
    let plans = vec![plan; clips.len().saturating_sub(1)];
    merge_audio(clips, &plans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{normalize_text, NumeralLexicon};

    fn vocab() -> &'static Vocabulary {
        Vocabulary::bundled()
    }

    fn nt(text: &str) -> NormalizedText {
        normalize_text(text, vocab(), NumeralLexicon::bundled()).unwrap()
    }

    fn body_of(segs: &[Segment]) -> String {
        segs.iter()
            .flat_map(|s| s.tokens.iter())
            .filter_map(|t| match t {
                GraphemeToken::Symbol(c) => Some(*c),
                GraphemeToken::End => None,
            })
            .collect()
    }

    #[test]
    fn short_text_is_one_segment() {
        let text = nt("ami bhalo");
        let segs = split_text(&text, 50);
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].tokens, text.tokens);
    }

    #[test]
    fn splits_at_sentence_boundary() {
        // two 30-token sentences, limit 40: split right after the first '.'
        let a = "a".repeat(29);
        let b = "b".repeat(29);
        let text = nt(&format!("{a}.{b}.")); // bodies of 30 each
        let segs = split_text(&text, 40);
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].body_len(), 30);
        assert_eq!(segs[0].trailing_break, BreakKind::Sentence);
        assert_eq!(segs[1].body_len(), 30);
    }

    #[test]
    fn hard_cut_partitions_exactly() {
        let text = nt(&"x".repeat(120));
        let segs = split_text(&text, 50);
        let sizes: Vec<usize> = segs.iter().map(Segment::body_len).collect();
        assert_eq!(sizes, vec![50, 50, 20]);
        assert!(segs.iter().all(|s| s.trailing_break == BreakKind::None));
        assert_eq!(body_of(&segs), text.body_string());
    }

    #[test]
    fn prefers_clause_then_whitespace() {
        let mut s = "y".repeat(20);
        s.push(',');
        s.push_str(&"z".repeat(30));
        let text = nt(&s); // body: 20 y, comma, 30 z = 51 tokens
        let segs = split_text(&text, 40);
        assert_eq!(segs[0].body_len(), 21);
        assert_eq!(segs[0].trailing_break, BreakKind::Clause);

        let text = nt(&format!("{} {}", "w".repeat(25), "v".repeat(25)));
        let segs = split_text(&text, 40);
        assert_eq!(segs[0].body_len(), 26); // up to and including the space
        assert_eq!(segs[0].trailing_break, BreakKind::None);
    }

    #[test]
    fn conservation_on_benchmark_sentences() {
        let list = include_str!("../resources/bench_bn_100.txt");
        for line in list
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        {
            let text = nt(line);
            for limit in [8, 12, 40] {
                let segs = split_text(&text, limit);
                assert_eq!(body_of(&segs), text.body_string(), "limit {limit}: {line}");
                assert!(segs.iter().all(|s| s.body_len() <= limit));
                assert!(segs.iter().enumerate().all(|(i, s)| s.index == i));
            }
        }
    }

    #[test]
    fn batch_sizes_are_ceiling_division() {
        let text = nt(&"k".repeat(100));
        let segs = split_text(&text, 20); // 5 segments
        assert_eq!(segs.len(), 5);
        let batches = enqueue_batches(segs, 2, vocab()).unwrap();
        let sizes: Vec<usize> = batches.iter().map(|b| b.segments.len()).collect();
        assert_eq!(sizes, vec![2, 2, 1]);
    }

    #[test]
    fn single_segment_single_batch() {
        let segs = split_text(&nt("hello"), 50);
        let batches = enqueue_batches(segs, 8, vocab()).unwrap();
        assert_eq!(batches.len(), 1);
        assert_eq!(batches[0].segments.len(), 1);
    }

    #[test]
    fn batches_preserve_order_and_padding() {
        let text = nt("abc def ghi jkl mno pqr stu");
        let segs = split_text(&text, 8);
        let n = segs.len();
        assert!(n >= 3);
        let batches = enqueue_batches(segs, 3, vocab()).unwrap();
        let mut expected = 0usize;
        for batch in &batches {
            let longest = batch.padded_ids.iter().map(Vec::len).max().unwrap();
            for (seg, row) in batch.segments.iter().zip(&batch.padded_ids) {
                assert_eq!(seg.index, expected);
                expected += 1;
                assert_eq!(row.len(), longest);
                // END at body position, then only PAD
                let end_pos = seg.tokens.len() - 1;
                assert_eq!(row[end_pos], crate::text::END_ID);
                assert!(row[end_pos + 1..].iter().all(|&id| id == PAD_ID));
            }
        }
        assert_eq!(expected, n);
    }

    #[test]
    fn merging_one_clip_is_identity() {
        let clip = AudioClip::new(vec![0.1, 0.2, 0.3], 22050);
        let merged = merge_audio(&[clip.clone()], &[]).unwrap();
        assert_eq!(merged, clip);
    }

    #[test]
    fn plain_concatenation() {
        let a = AudioClip::new(vec![0.5; 1000], 22050);
        let b = AudioClip::new(vec![-0.5; 1000], 22050);
        let merged = merge_audio_uniform(&[a, b], MergePlan::new(0, 0)).unwrap();
        assert_eq!(merged.len(), 2000);
        assert_eq!(merged.samples[999], 0.5);
        assert_eq!(merged.samples[1000], -0.5);
    }

    #[test]
    fn gap_insertion_length() {
        let a = AudioClip::new(vec![0.1; 22050], 22050);
        let b = AudioClip::new(vec![0.1; 22050], 22050);
        let merged = merge_audio_uniform(&[a, b], MergePlan::new(100, 0)).unwrap();
        assert_eq!(merged.len(), 22050 + 2205 + 22050);
    }

    #[test]
    fn merge_length_formula() {
        let clips: Vec<AudioClip> = [3000, 5000, 4000]
            .iter()
            .map(|&n| AudioClip::new(vec![0.25; n], 22050))
            .collect();
        let plans = [MergePlan::new(200, 10), MergePlan::new(80, 10)];
        let merged = merge_audio(&clips, &plans).unwrap();
        let expected = 12000 + ms_to_samples(200, 22050) + ms_to_samples(80, 22050)
            - 2 * ms_to_samples(10, 22050);
        assert_eq!(merged.len(), expected);
    }

    #[test]
    fn no_clipping_under_crossfade() {
        let a = AudioClip::new(vec![1.0; 1000], 22050);
        let b = AudioClip::new(vec![-1.0; 1000], 22050);
        let merged = merge_audio_uniform(&[a, b], MergePlan::new(0, 20)).unwrap();
        assert!(merged.samples.iter().all(|s| s.abs() <= 1.0));
    }

    #[test]
    fn merge_errors() {
        let a = AudioClip::new(vec![0.0; 100], 22050);
        let b = AudioClip::new(vec![0.0; 100], 16000);
        assert!(matches!(
            merge_audio_uniform(&[a.clone(), b], MergePlan::new(0, 0)),
            Err(SegmentError::SampleRateMismatch(_, _))
        ));
        let c = AudioClip::new(vec![0.0; 10], 22050);
        assert!(matches!(
            merge_audio_uniform(&[a.clone(), c], MergePlan::new(0, 50)),
            Err(SegmentError::CrossfadeLongerThanClip { .. })
        ));
        assert!(matches!(merge_audio(&[], &[]), Err(SegmentError::NoClips)));
        assert!(matches!(
            merge_audio(&[a], &[MergePlan::new(0, 0)]),
            Err(SegmentError::PlanCountMismatch { .. })
        ));
    }
}
