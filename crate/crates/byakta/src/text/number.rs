use super::lexicon::NumeralLexicon;
use super::script::{is_digit_char, to_ascii_digit};
use super::TextError;

/// How a numeral run is read aloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumeralKind {
    /// Indian-grouping cardinal: units 0..=99, hundred, thousand (10^3),
    /// lakh (10^5), crore (10^7, applied recursively for larger numbers).
    Cardinal,
    /// One unit word per digit, in order (phone numbers, codes).
    DigitByDigit,
    /// Integer part as cardinal, the decimal word, then the fraction
    /// digits one by one.
    Decimal,
}

/// Picks the reading for a maximal digit run. `prev` is the character
/// immediately preceding the run in the source text, if any.
///
/// A run with exactly one interior '.' reads as a decimal. Otherwise the
/// phone-number heuristic applies: 10+ digits, a leading zero, or a '+'
/// prefix all force digit-by-digit (Bangladeshi phone numbers are 11
/// digits starting with 0).
pub fn detect_numeral_kind(digits: &str, prev: Option<char>) -> NumeralKind {
    let digit_count = digits.chars().filter(|&c| is_digit_char(c)).count();
    let dot_count = digits.chars().filter(|&c| c == '.').count();
    if dot_count == 1 {
        return NumeralKind::Decimal;
    }
    let leading_zero = digits
        .chars()
        .next()
        .and_then(to_ascii_digit)
        .map_or(false, |c| c == '0')
        && digit_count > 1;
    if digit_count >= 10 || leading_zero || prev == Some('+') {
        NumeralKind::DigitByDigit
    } else {
        NumeralKind::Cardinal
    }
}

/// Verbalizes a digit string as space-separated Bangla words.
///
/// Bangla digits are accepted and mapped to their ASCII values first.
/// Cardinals longer than 15 digits fall back to digit-by-digit reading.
pub fn number_to_words(
    digits: &str,
    kind: NumeralKind,
    lexicon: &NumeralLexicon,
) -> Result<String, TextError> {
    if digits.is_empty() {
        return Err(TextError::EmptyInput);
    }
    let mut ascii = String::with_capacity(digits.len());
    let mut dots = 0usize;
    for c in digits.chars() {
        if let Some(d) = to_ascii_digit(c) {
            ascii.push(d);
        } else if c == '.' && kind == NumeralKind::Decimal && dots == 0 {
            dots += 1;
            ascii.push('.');
        } else {
            return Err(TextError::NonDigitCharacter(c));
        }
    }

    let words = match kind {
        NumeralKind::Cardinal => {
            if ascii.len() > 15 {
                digit_by_digit(&ascii, lexicon)
            } else {
                let n: u64 = ascii.parse().expect("validated digit string");
                cardinal_words(n, lexicon)
            }
        }
        NumeralKind::DigitByDigit => digit_by_digit(&ascii, lexicon),
        NumeralKind::Decimal => {
            let (int_part, frac_part) = ascii.split_once('.').unwrap_or((ascii.as_str(), ""));
            let mut words = if int_part.is_empty() {
                vec![lexicon.unit(0).to_string()]
            } else if int_part.len() > 15 {
                digit_by_digit(int_part, lexicon)
            } else {
                cardinal_words(int_part.parse().expect("validated digit string"), lexicon)
            };
            if !frac_part.is_empty() {
                words.push(lexicon.decimal.clone());
                words.extend(digit_by_digit(frac_part, lexicon));
            }
            words
        }
    };
    Ok(words.join(" "))
}

fn digit_by_digit(ascii: &str, lexicon: &NumeralLexicon) -> Vec<String> {
    ascii
        .chars()
        .filter(|c| c.is_ascii_digit())
        .map(|c| lexicon.unit(c as usize - '0' as usize).to_string())
        .collect()
}

/// Indian-grouping cardinal composition. Hundreds fuse unit and scale into
/// one word (এক + শো = একশো); thousand/lakh/crore stay separate words, and
/// crore recurses for numbers at 10^9 and beyond.
fn cardinal_words(n: u64, lexicon: &NumeralLexicon) -> Vec<String> {
    fn push(n: u64, lexicon: &NumeralLexicon, out: &mut Vec<String>) {
        const CRORE: u64 = 10_000_000;
        if n >= CRORE {
            push(n / CRORE, lexicon, out);
            out.push(lexicon.crore.clone());
            if n % CRORE != 0 {
                push(n % CRORE, lexicon, out);
            }
        } else if n >= 100_000 {
            out.push(lexicon.unit((n / 100_000) as usize).to_string());
            out.push(lexicon.lakh.clone());
            if n % 100_000 != 0 {
                push(n % 100_000, lexicon, out);
            }
        } else if n >= 1_000 {
            out.push(lexicon.unit((n / 1_000) as usize).to_string());
            out.push(lexicon.thousand.clone());
            if n % 1_000 != 0 {
                push(n % 1_000, lexicon, out);
            }
        } else if n >= 100 {
            out.push(format!("{}{}", lexicon.unit((n / 100) as usize), lexicon.hundred));
            if n % 100 != 0 {
                out.push(lexicon.unit((n % 100) as usize).to_string());
            }
        } else {
            out.push(lexicon.unit(n as usize).to_string());
        }
    }
    let mut out = Vec::new();
    push(n, lexicon, &mut out);
    out
}

/// Replaces every maximal digit run in `text` with its verbalization,
/// inserting single spaces where the replacement touches non-space text.
/// Characters outside digit runs are preserved byte for byte.
///
/// A '.' joins a run only when flanked by digits on both sides and the run
/// has no dot yet, so "3.14" is one decimal run while "1.2.3" splits.
pub fn normalize_numerals(text: &str, lexicon: &NumeralLexicon) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        if !is_digit_char(chars[i]) {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        let start = i;
        let mut has_dot = false;
        while i < chars.len() {
            if is_digit_char(chars[i]) {
                i += 1;
            } else if chars[i] == '.'
                && !has_dot
                && i + 1 < chars.len()
                && is_digit_char(chars[i + 1])
            {
                has_dot = true;
                i += 1;
            } else {
                break;
            }
        }
        let run: String = chars[start..i].iter().collect();
        let prev = if start > 0 { Some(chars[start - 1]) } else { None };
        let kind = detect_numeral_kind(&run, prev);
        let words =
            number_to_words(&run, kind, lexicon).expect("scanned runs contain only digits");
        if !out.is_empty() && !out.ends_with(char::is_whitespace) {
            out.push(' ');
        }
        out.push_str(&words);
        if i < chars.len() && !chars[i].is_whitespace() {
            out.push(' ');
        }
    }
    out
}
