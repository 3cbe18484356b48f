//! Line-level verse/prose classification and contiguous genre page
//! ranges.
//!
//! In eighteenth- and nineteenth-century styling, verse is short-lined and
//! line-initial capitalized, so a length test plus a capitalization test
//! over a small sliding window separates it from prose. The rule is not
//! reliable for twentieth-century verse, which is not always capitalized;
//! callers should gate it on corpus era.

use serde::{Deserialize, Serialize};

use crate::hmm::DecodedVolume;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineLabel {
    Verse,
    Prose,
}

/// Classification of one line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineClass {
    pub label: LineLabel,
    /// Trimmed length in characters.
    pub length_chars: usize,
    /// Whether the first alphabetic character is uppercase.
    pub starts_capitalized: bool,
}

/// Thresholds for the line rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRuleConfig {
    /// A verse line must be strictly shorter than this many characters.
    pub max_verse_chars: usize,
    /// Sliding window size for the majority test.
    pub window: usize,
}

impl Default for LineRuleConfig {
    fn default() -> Self {
        LineRuleConfig {
            max_verse_chars: 60,
            window: 5,
        }
    }
}

/// Classify every line of a page.
///
/// A line is verse iff it passes both base tests (short and line-initial
/// capitalized) and a strict majority of the non-empty lines in its
/// window passes both too. Empty lines inherit the previous line's class
/// (prose when there is none).
pub fn classify_lines(lines: &[String], config: &LineRuleConfig) -> Vec<LineClass> {
    let n = lines.len();
    let half = config.window / 2;
    let stats: Vec<(bool, usize, bool)> = lines
        .iter()
        .map(|line| {
            let trimmed = line.trim();
            let length = trimmed.chars().count();
            let capitalized = trimmed
                .chars()
                .find(|c| c.is_alphabetic())
                .is_some_and(|c| c.is_uppercase());
            (trimmed.is_empty(), length, capitalized)
        })
        .collect();
    let base = |i: usize| -> bool {
        let (empty, length, capitalized) = stats[i];
        !empty && length < config.max_verse_chars && capitalized
    };

    let mut classes = Vec::with_capacity(n);
    let mut previous = LineLabel::Prose;
    for i in 0..n {
        let (empty, length, capitalized) = stats[i];
        let label = if empty {
            previous
        } else if base(i) {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n.saturating_sub(1));
            let mut window_nonempty = 0usize;
            let mut window_base = 0usize;
            for j in lo..=hi {
                if !stats[j].0 {
                    window_nonempty += 1;
                    if base(j) {
                        window_base += 1;
                    }
                }
            }
            if 2 * window_base > window_nonempty {
                LineLabel::Verse
            } else {
                LineLabel::Prose
            }
        } else {
            LineLabel::Prose
        };
        classes.push(LineClass {
            label,
            length_chars: length,
            starts_capitalized: capitalized,
        });
        previous = label;
    }
    classes
}

/// A maximal run of pages sharing one genre; bounds are inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRange {
    pub genre: String,
    pub start_page: usize,
    pub end_page: usize,
}

/// Collapse a per-page label sequence into maximal constant runs. The
/// ranges partition the pages; consecutive ranges have distinct genres.
pub fn extract_page_ranges(labels: &[String]) -> Vec<PageRange> {
    let mut ranges: Vec<PageRange> = Vec::new();
    for (i, label) in labels.iter().enumerate() {
        match ranges.last_mut() {
            Some(last) if &last.genre == label => last.end_page = i,
            _ => ranges.push(PageRange {
                genre: label.clone(),
                start_page: i,
                end_page: i,
            }),
        }
    }
    ranges
}

impl DecodedVolume {
    pub fn page_ranges(&self) -> Vec<PageRange> {
        extract_page_ranges(&self.labels)
    }
}
