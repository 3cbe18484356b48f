//! Volumes and pages, plus the JSON Lines corpus format.
//!
//! Corpus files hold one volume per line:
//! `{"volume_id": str, "year": int, "pages": [{"lines": [str]}, ...], "labels": [str]?}`.
//! Gold labels, when present, are per page and must be leaves of the active
//! taxonomy.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::tokenize::Tokenizer;
use crate::error::{Error, Result};
use crate::taxonomy::GenreTaxonomy;

pub const MIN_YEAR: i32 = 1600;
pub const MAX_YEAR: i32 = 2100;

/// One page: its raw lines plus the derived token stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub lines: Vec<String>,
    /// Tokens over all lines, in order; derived at construction.
    pub tokens: Vec<String>,
    pub token_count: usize,
}

impl Page {
    pub fn new(lines: Vec<String>, tokenizer: &Tokenizer) -> Self {
        let tokens: Vec<String> = lines.iter().flat_map(|l| tokenizer.tokenize(l)).collect();
        let token_count = tokens.len();
        Page {
            lines,
            tokens,
            token_count,
        }
    }
}

/// An ordered sequence of pages with a publication year and optional
/// per-page gold genre labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub volume_id: String,
    pub year: i32,
    pub pages: Vec<Page>,
    pub gold_labels: Option<Vec<String>>,
}

impl Volume {
    pub fn new(
        volume_id: String,
        year: i32,
        page_lines: Vec<Vec<String>>,
        gold_labels: Option<Vec<String>>,
        tokenizer: &Tokenizer,
        taxonomy: &GenreTaxonomy,
    ) -> Result<Self> {
        if page_lines.is_empty() {
            return Err(Error::invalid(format!(
                "volume {volume_id}: pages must be non-empty"
            )));
        }
        if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
            return Err(Error::invalid(format!(
                "volume {volume_id}: year {year} outside [{MIN_YEAR}, {MAX_YEAR}]"
            )));
        }
        if let Some(labels) = &gold_labels {
            if labels.len() != page_lines.len() {
                return Err(Error::invalid(format!(
                    "volume {volume_id}: {} labels for {} pages",
                    labels.len(),
                    page_lines.len()
                )));
            }
            for label in labels {
                if !taxonomy.contains(label) {
                    return Err(Error::UnknownGenre(label.clone()));
                }
            }
        }
        let pages = page_lines
            .into_iter()
            .map(|lines| Page::new(lines, tokenizer))
            .collect();
        Ok(Volume {
            volume_id,
            year,
            pages,
            gold_labels,
        })
    }

    pub fn n_pages(&self) -> usize {
        self.pages.len()
    }

    pub fn mean_token_count(&self) -> f64 {
        let total: usize = self.pages.iter().map(|p| p.token_count).sum();
        total as f64 / self.pages.len() as f64
    }

    pub fn all_tokens(&self) -> impl Iterator<Item = &str> {
        self.pages
            .iter()
            .flat_map(|p| p.tokens.iter().map(String::as_str))
    }

    pub fn total_tokens(&self) -> usize {
        self.pages.iter().map(|p| p.token_count).sum()
    }

    /// Most frequent gold label, for volume-level classification tasks;
    /// ties break lexicographically. `None` when unlabeled.
    pub fn majority_gold_label(&self) -> Option<&str> {
        let labels = self.gold_labels.as_ref()?;
        let mut counts: std::collections::BTreeMap<&str, usize> = Default::default();
        for l in labels {
            *counts.entry(l.as_str()).or_insert(0) += 1;
        }
        counts
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(a.0)))
            .map(|(l, _)| l)
    }
}

#[derive(Serialize)]
struct PageRecord<'a> {
    lines: &'a [String],
}

#[derive(Serialize)]
struct VolumeRecord<'a> {
    volume_id: &'a str,
    year: i32,
    pages: Vec<PageRecord<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a Vec<String>>,
}

#[derive(Deserialize)]
struct RawPage {
    lines: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawVolume {
    volume_id: Option<String>,
    year: Option<i64>,
    pages: Option<Vec<RawPage>>,
    labels: Option<Vec<String>>,
}

/// Load a JSONL corpus, validating every volume invariant. Errors name the
/// offending 1-based line and field.
pub fn load_volumes(
    path: &Path,
    tokenizer: &Tokenizer,
    taxonomy: &GenreTaxonomy,
) -> Result<Vec<Volume>> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut volumes = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawVolume = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: line_no,
            message: format!("invalid JSON: {e}"),
        })?;
        let volume = raw_to_volume(raw, line_no, tokenizer, taxonomy)?;
        volumes.push(volume);
    }
    Ok(volumes)
}

fn raw_to_volume(
    raw: RawVolume,
    line_no: usize,
    tokenizer: &Tokenizer,
    taxonomy: &GenreTaxonomy,
) -> Result<Volume> {
    let missing = |field: &str| Error::Malformed {
        line: line_no,
        message: format!("missing field: {field}"),
    };
    let volume_id = raw.volume_id.ok_or_else(|| missing("volume_id"))?;
    let year = raw.year.ok_or_else(|| missing("year"))?;
    let year = i32::try_from(year).map_err(|_| Error::Malformed {
        line: line_no,
        message: format!("year {year} out of range"),
    })?;
    let pages = raw.pages.ok_or_else(|| missing("pages"))?;
    let mut page_lines = Vec::with_capacity(pages.len());
    for page in pages {
        page_lines.push(page.lines.ok_or_else(|| missing("lines"))?);
    }
    Volume::new(volume_id, year, page_lines, raw.labels, tokenizer, taxonomy).map_err(|e| {
        match e {
            Error::UnknownGenre(_) => e,
            Error::InvalidInput(msg) => Error::Malformed {
                line: line_no,
                message: msg,
            },
            other => other,
        }
    })
}

/// Write volumes in the JSONL corpus format; output is deterministic.
pub fn save_volumes(path: &Path, volumes: &[Volume]) -> Result<()> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    for volume in volumes {
        let record = VolumeRecord {
            volume_id: &volume.volume_id,
            year: volume.year,
            pages: volume
                .pages
                .iter()
                .map(|p| PageRecord { lines: &p.lines })
                .collect(),
            labels: volume.gold_labels.as_ref(),
        };
        let json = serde_json::to_string(&record)
            .map_err(|e| Error::json(format!("volume {}", volume.volume_id), e))?;
        writer.write_all(json.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}
