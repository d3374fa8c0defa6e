use unicode_normalization::UnicodeNormalization;

use super::lexicon::NumeralLexicon;
use super::number::normalize_numerals;
use super::vocab::{Vocabulary, END_ID, PAD_ID};
use super::TextError;

/// One model input symbol: a vocabulary grapheme or the end marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphemeToken {
    Symbol(char),
    End,
}

/// Digit-free, vocabulary-constrained token sequence. The last token is
/// always [`GraphemeToken::End`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    pub tokens: Vec<GraphemeToken>,
    /// Count of input symbols silently dropped for being out of vocabulary.
    pub dropped_symbols: usize,
}

impl NormalizedText {
    /// The token characters without the end marker.
    pub fn body_string(&self) -> String {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                GraphemeToken::Symbol(c) => Some(*c),
                GraphemeToken::End => None,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Sentence punctuation folding applied after numeral normalization.
/// The danda is the Bangla full stop; colon-like pauses fold to comma.
fn fold_punctuation(c: char) -> char {
    match c {
        '।' | '॥' | '…' => '.',
        ';' | ':' => ',',
        _ => c,
    }
}

/// Normalizes raw text to the model alphabet:
/// Unicode NFC, numeral verbalization, Latin lowercasing, punctuation
/// folding, whitespace collapsing, out-of-vocabulary drop (counted), and
/// a single trailing end marker.
pub fn normalize_text(
    text: &str,
    vocab: &Vocabulary,
    lexicon: &NumeralLexicon,
) -> Result<NormalizedText, TextError> {
    let composed: String = text.nfc().collect();
    let verbalized = normalize_numerals(&composed, lexicon);

    let mut tokens: Vec<GraphemeToken> = Vec::with_capacity(verbalized.len());
    let mut dropped = 0usize;
    let mut pending_space = false;
    for raw in verbalized.chars() {
        let c = fold_punctuation(raw.to_ascii_lowercase());
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if !vocab.contains_char(c) {
            dropped += 1;
            continue;
        }
        if pending_space && !tokens.is_empty() {
            tokens.push(GraphemeToken::Symbol(' '));
        }
        pending_space = false;
        tokens.push(GraphemeToken::Symbol(c));
    }
    if tokens.is_empty() {
        return Err(TextError::EmptyAfterNormalization);
    }
    tokens.push(GraphemeToken::End);
    Ok(NormalizedText {
        tokens,
        dropped_symbols: dropped,
    })
}

/// Maps tokens to vocabulary ids.
pub fn tokenize(nt: &NormalizedText, vocab: &Vocabulary) -> Result<Vec<u32>, TextError> {
    nt.tokens
        .iter()
        .map(|t| match t {
            GraphemeToken::End => Ok(END_ID),
            GraphemeToken::Symbol(c) => {
                vocab.id_of_char(*c).ok_or(TextError::UnknownSymbol(*c))
            }
        })
        .collect()
}

/// Maps ids back to the symbol string. PAD and END render as nothing.
pub fn detokenize(ids: &[u32], vocab: &Vocabulary) -> Result<String, TextError> {
    let mut out = String::with_capacity(ids.len());
    for &id in ids {
        let symbol = vocab.symbol(id).ok_or(TextError::IdOutOfRange {
            id,
            size: vocab.len(),
        })?;
        if id != PAD_ID && id != END_ID {
            out.push_str(symbol);
        }
    }
    Ok(out)
}
