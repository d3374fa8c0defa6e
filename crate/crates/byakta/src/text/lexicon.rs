use std::path::Path;
use std::sync::OnceLock;

use super::script::is_digit_char;
use super::TextError;

/// The default lexicon shipped with the crate.
const BUNDLED_LEXICON: &str = include_str!("../../resources/lexicon_bn.tsv");

/// Bangla numeral word table: cardinal words for 0..=99 plus the scale
/// words used by the Indian grouping system and the decimal separator word.
///
/// Kept as a data file so entries can be corrected without touching code.
#[derive(Debug, Clone)]
pub struct NumeralLexicon {
    units: Vec<String>,
    pub hundred: String,
    pub thousand: String,
    pub lakh: String,
    pub crore: String,
    pub decimal: String,
}

impl NumeralLexicon {
    /// The lexicon embedded in the binary.
    pub fn bundled() -> &'static NumeralLexicon {
        static LEX: OnceLock<NumeralLexicon> = OnceLock::new();
        LEX.get_or_init(|| {
            NumeralLexicon::parse(BUNDLED_LEXICON).expect("bundled lexicon must be valid")
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, TextError> {
        let src = std::fs::read_to_string(path)?;
        Self::parse(&src)
    }

    /// Parses the `<key>\t<word>` format. Keys are the integers 0..=99 and
    /// the names `hundred`, `thousand`, `lakh`, `crore`, `decimal`.
    pub fn parse(src: &str) -> Result<Self, TextError> {
        let mut units: Vec<Option<String>> = vec![None; 100];
        let mut named: [Option<String>; 5] = Default::default();
        const NAMES: [&str; 5] = ["hundred", "thousand", "lakh", "crore", "decimal"];

        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, word) = line.split_once('\t').ok_or_else(|| {
                TextError::LexiconFormat(format!("line {}: missing tab separator", lineno + 1))
            })?;
            let word = word.trim();
            if word.is_empty() {
                return Err(TextError::LexiconFormat(format!(
                    "line {}: empty word",
                    lineno + 1
                )));
            }
            if word.chars().any(is_digit_char) {
                return Err(TextError::LexiconFormat(format!(
                    "line {}: word contains a digit character",
                    lineno + 1
                )));
            }
            if let Ok(n) = key.parse::<usize>() {
                if n > 99 {
                    return Err(TextError::LexiconFormat(format!(
                        "line {}: unit key {} out of range 0..=99",
                        lineno + 1,
                        n
                    )));
                }
                if units[n].replace(word.to_string()).is_some() {
                    return Err(TextError::LexiconFormat(format!(
                        "line {}: duplicate entry for {}",
                        lineno + 1,
                        n
                    )));
                }
            } else if let Some(idx) = NAMES.iter().position(|&n| n == key) {
                if named[idx].replace(word.to_string()).is_some() {
                    return Err(TextError::LexiconFormat(format!(
                        "line {}: duplicate entry for {}",
                        lineno + 1,
                        key
                    )));
                }
            } else {
                return Err(TextError::LexiconFormat(format!(
                    "line {}: unknown key {:?}",
                    lineno + 1,
                    key
                )));
            }
        }

        let units = units
            .into_iter()
            .enumerate()
            .map(|(n, w)| w.ok_or_else(|| TextError::LexiconFormat(format!("missing entry for {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut named_words = named.into_iter();
        let mut take = |name: &str| {
            named_words
                .next()
                .flatten()
                .ok_or_else(|| TextError::LexiconFormat(format!("missing entry for {name}")))
        };
        Ok(NumeralLexicon {
            units,
            hundred: take("hundred")?,
            thousand: take("thousand")?,
            lakh: take("lakh")?,
            crore: take("crore")?,
            decimal: take("decimal")?,
        })
    }

    /// Cardinal word for `n` in 0..=99.
    pub fn unit(&self, n: usize) -> &str {
        &self.units[n]
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lexicon_is_complete() {
        let lex = NumeralLexicon::bundled();
        assert_eq!(lex.units().len(), 100);
        assert!(lex.units().iter().all(|w| !w.is_empty()));
        assert!(lex
            .units()
            .iter()
            .all(|w| !w.chars().any(is_digit_char)));
        assert_eq!(lex.unit(0), "শূন্য");
        assert_eq!(lex.unit(5), "পাঁচ");
        assert_eq!(lex.unit(99), "নিরানব্বই");
    }

    #[test]
    fn rejects_missing_entries() {
        let err = NumeralLexicon::parse("0\tশূন্য\n").unwrap_err();
        assert!(matches!(err, TextError::LexiconFormat(_)));
    }

    #[test]
    fn rejects_digit_in_word() {
        let src = BUNDLED_LEXICON.replace("এক", "এক১");
        assert!(matches!(
            NumeralLexicon::parse(&src),
            Err(TextError::LexiconFormat(_))
        ));
    }

    #[test]
    fn rejects_duplicates() {
        let mut src = String::from(BUNDLED_LEXICON);
        src.push_str("7\tআবার\n");
        assert!(matches!(
            NumeralLexicon::parse(&src),
            Err(TextError::LexiconFormat(_))
        ));
    }
}
