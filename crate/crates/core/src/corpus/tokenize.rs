//! Tokenization with compressed word categories.
//!
//! Tokens are maximal runs of alphabetic characters plus internal
//! apostrophes, lowercased. Three categories are compressed into single
//! feature ids: digit runs become [`ARABIC_NUMBER`], roman numerals become
//! [`ROMAN_NUMERAL`], and capitalized words found in a personal-name
//! lexicon become [`PERSONAL_NAME`]. Long-s glyphs (`ſ`) are normalized to
//! `s` before any matching; no other OCR repair is attempted.

use std::collections::BTreeSet;

/// Compressed token emitted for a standalone digit run.
pub const ARABIC_NUMBER: &str = "#arabic-number";
/// Compressed token emitted for a roman numeral of length >= 2.
pub const ROMAN_NUMERAL: &str = "#roman-numeral";
/// Compressed token emitted for a capitalized word in the name lexicon.
pub const PERSONAL_NAME: &str = "#personal-name";

const BUNDLED_NAME_LEXICON: &str = include_str!("../../data/name_lexicon.txt");

/// Configurable tokenizer; the only configuration is the personal-name
/// lexicon (lowercase words, matched against capitalized tokens only).
#[derive(Debug, Clone)]
pub struct Tokenizer {
    name_lexicon: BTreeSet<String>,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Tokenizer::new(
            BUNDLED_NAME_LEXICON
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_string),
        )
    }
}

impl Tokenizer {
    pub fn new(names: impl IntoIterator<Item = String>) -> Self {
        let name_lexicon = names
            .into_iter()
            .map(|n| n.to_lowercase())
            .filter(|n| !n.is_empty())
            .collect();
        Tokenizer { name_lexicon }
    }

    /// Tokenizer with an empty name lexicon (no `#personal-name` tokens).
    pub fn without_names() -> Self {
        Tokenizer {
            name_lexicon: BTreeSet::new(),
        }
    }

    pub fn name_lexicon(&self) -> &BTreeSet<String> {
        &self.name_lexicon
    }

    /// Tokenize one string. Empty input yields an empty list.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let n = chars.len();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < n {
            let c = chars[i];
            if c.is_ascii_digit() {
                let mut j = i + 1;
                while j < n && chars[j].is_ascii_digit() {
                    j += 1;
                }
                tokens.push(ARABIC_NUMBER.to_string());
                i = j;
            } else if c.is_alphabetic() {
                let start = i;
                let mut j = i;
                while j < n {
                    let cj = chars[j];
                    if cj.is_alphabetic() {
                        j += 1;
                    } else if is_apostrophe(cj)
                        && j > start
                        && chars[j - 1].is_alphabetic()
                        && j + 1 < n
                        && chars[j + 1].is_alphabetic()
                    {
                        j += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(self.classify_word(&chars[start..j]));
                i = j;
            } else {
                i += 1;
            }
        }
        tokens
    }

    /// Token count over several lines of text.
    pub fn count_tokens(&self, lines: &[String]) -> usize {
        lines.iter().map(|l| self.tokenize(l).len()).sum()
    }

    fn classify_word(&self, raw: &[char]) -> String {
        let mut lowered = String::with_capacity(raw.len());
        for &c in raw {
            if is_apostrophe(c) {
                lowered.push('\'');
            } else if c == '\u{17f}' {
                // long s
                lowered.push('s');
            } else {
                for lc in c.to_lowercase() {
                    lowered.push(if lc == '\u{17f}' { 's' } else { lc });
                }
            }
        }
        if lowered.chars().count() >= 2 && is_roman_numeral(&lowered) {
            return ROMAN_NUMERAL.to_string();
        }
        let capitalized = raw.first().is_some_and(|c| c.is_uppercase());
        if capitalized && self.name_lexicon.contains(&lowered) {
            return PERSONAL_NAME.to_string();
        }
        lowered
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// True when `s` (lowercase ASCII) is a well-formed roman numeral:
/// `m{0,3}(cm|cd|d?c{0,3})(xc|xl|l?x{0,3})(ix|iv|v?i{0,3})`, non-empty.
pub fn is_roman_numeral(s: &str) -> bool {
    let b = s.as_bytes();
    if b.is_empty() || !b.iter().all(|c| b"ivxlcdm".contains(c)) {
        return false;
    }
    let mut i = 0;
    let mut k = 0;
    while i < b.len() && b[i] == b'm' && k < 3 {
        i += 1;
        k += 1;
    }
    roman_group(b, &mut i, b'c', b'd', b'm');
    roman_group(b, &mut i, b'x', b'l', b'c');
    roman_group(b, &mut i, b'i', b'v', b'x');
    i == b.len()
}

/// Consume one decimal digit's worth of numeral: `(10·one | 5·one | 5? one{0,3})`,
/// e.g. for the ones place: `ix | iv | v? i{0,3}`.
fn roman_group(b: &[u8], i: &mut usize, one: u8, five: u8, ten: u8) {
    if *i < b.len() && b[*i] == one && *i + 1 < b.len() && (b[*i + 1] == ten || b[*i + 1] == five) {
        *i += 2;
        return;
    }
    if *i < b.len() && b[*i] == five {
        *i += 1;
    }
    let mut k = 0;
    while *i < b.len() && b[*i] == one && k < 3 {
        *i += 1;
        k += 1;
    }
}
