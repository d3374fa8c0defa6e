use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use super::TextError;

pub const PAD_ID: u32 = 0;
pub const END_ID: u32 = 1;
pub const PAD_SYMBOL: &str = "<PAD>";
pub const END_SYMBOL: &str = "<END>";

const BUNDLED_VOCAB: &str = include_str!("../../resources/vocab.txt");

/// Ordered grapheme symbol table. Line number minus one in the vocabulary
/// file is the symbol id; `<PAD>` is id 0 and `<END>` is id 1.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    symbols: Vec<String>,
    index: HashMap<String, u32>,
    char_index: HashMap<char, u32>,
}

impl Vocabulary {
    pub fn bundled() -> &'static Vocabulary {
        static VOCAB: OnceLock<Vocabulary> = OnceLock::new();
        VOCAB.get_or_init(|| {
            Vocabulary::parse(BUNDLED_VOCAB).expect("bundled vocabulary must be valid")
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, TextError> {
        let src = std::fs::read_to_string(path)?;
        Self::parse(&src)
    }

    /// Parses one symbol per line. Lines are not trimmed (the space symbol
    /// is a line holding a single space); a trailing newline is allowed.
    pub fn parse(src: &str) -> Result<Self, TextError> {
        let mut lines: Vec<&str> = src.split('\n').map(|l| l.trim_end_matches('\r')).collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }
        if lines.len() < 2 || lines[0] != PAD_SYMBOL || lines[1] != END_SYMBOL {
            return Err(TextError::VocabFormat(format!(
                "first two lines must be {PAD_SYMBOL} and {END_SYMBOL}"
            )));
        }
        let mut symbols = Vec::with_capacity(lines.len());
        let mut index = HashMap::new();
        let mut char_index = HashMap::new();
        for (i, line) in lines.iter().enumerate() {
            if line.is_empty() {
                return Err(TextError::VocabFormat(format!("line {}: empty symbol", i + 1)));
            }
            if index.insert(line.to_string(), i as u32).is_some() {
                return Err(TextError::VocabFormat(format!(
                    "line {}: duplicate symbol {:?}",
                    i + 1,
                    line
                )));
            }
            let mut chars = line.chars();
            if let (Some(c), None) = (chars.next(), chars.next()) {
                char_index.insert(c, i as u32);
            }
            symbols.push(line.to_string());
        }
        Ok(Vocabulary {
            symbols,
            index,
            char_index,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, id: u32) -> Option<&str> {
        self.symbols.get(id as usize).map(|s| s.as_str())
    }

    pub fn id_of(&self, symbol: &str) -> Option<u32> {
        self.index.get(symbol).copied()
    }

    pub fn id_of_char(&self, c: char) -> Option<u32> {
        self.char_index.get(&c).copied()
    }

    pub fn contains_char(&self, c: char) -> bool {
        self.char_index.contains_key(&c)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}
