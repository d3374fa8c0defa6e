//! Text front-end: converts raw bilingual input into a normalized,
//! digit-free, vocabulary-constrained grapheme token sequence.

mod lexicon;
mod normalize;
mod number;
mod script;
mod vocab;

pub use lexicon::NumeralLexicon;
pub use normalize::{detokenize, normalize_text, tokenize, GraphemeToken, NormalizedText};
pub use number::{detect_numeral_kind, normalize_numerals, number_to_words, NumeralKind};
pub use script::{classify_script, ScriptClass};
pub use vocab::{Vocabulary, END_ID, END_SYMBOL, PAD_ID, PAD_SYMBOL};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("empty numeral input")]
    EmptyInput,
    #[error("non-digit character {0:?} in numeral input")]
    NonDigitCharacter(char),
    #[error("input is empty after normalization")]
    EmptyAfterNormalization,
    #[error("symbol {0:?} is not in the vocabulary")]
    UnknownSymbol(char),
    #[error("token id {id} out of range for vocabulary of size {size}")]
    IdOutOfRange { id: u32, size: usize },
    #[error("lexicon file: {0}")]
    LexiconFormat(String),
    #[error("vocabulary file: {0}")]
    VocabFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
