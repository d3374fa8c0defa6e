/// Coarse script class of a single Unicode scalar value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScriptClass {
    BanglaLetter,
    BanglaDigit,
    LatinLetter,
    AsciiDigit,
    Punctuation,
    Whitespace,
    Other,
}

/// Classifies a scalar value. Total: every `char` maps to exactly one class.
///
/// The Bengali block U+0980..=U+09FF is split into digits (U+09E6..=U+09EF)
/// and everything else, which counts as a letter here even for signs and
/// currency marks; the distinction that matters downstream is digit vs not.
pub fn classify_script(c: char) -> ScriptClass {
    match c {
        '\u{09E6}'..='\u{09EF}' => ScriptClass::BanglaDigit,
        '\u{0980}'..='\u{09FF}' => ScriptClass::BanglaLetter,
        '0'..='9' => ScriptClass::AsciiDigit,
        'a'..='z' | 'A'..='Z' => ScriptClass::LatinLetter,
        c if c.is_whitespace() => ScriptClass::Whitespace,
        c if c.is_ascii_punctuation() => ScriptClass::Punctuation,
        '\u{2018}'..='\u{201F}' | '\u{2010}'..='\u{2015}' | '…' | '॥' => ScriptClass::Punctuation,
        _ => ScriptClass::Other,
    }
}

/// True for the characters a numeral run is made of.
pub(crate) fn is_digit_char(c: char) -> bool {
    matches!(
        classify_script(c),
        ScriptClass::AsciiDigit | ScriptClass::BanglaDigit
    )
}

/// Maps a Bangla digit to its ASCII equivalent; ASCII digits pass through.
pub(crate) fn to_ascii_digit(c: char) -> Option<char> {
    match c {
        '0'..='9' => Some(c),
        '\u{09E6}'..='\u{09EF}' => {
            let offset = c as u32 - 0x09E6;
            char::from_u32('0' as u32 + offset)
        }
        _ => None,
    }
}
