//! Synthetic corpus generation with known ground truth.
//!
//! Volumes are sampled from a known initial distribution and transition
//! matrix over genres; each page's lines come from its genre's unigram
//! and line-style generator. The seed fixes the corpus bit-exactly, and
//! per-volume PRNG streams keep generation deterministic under any
//! parallel schedule. Canned specs at the bottom back the desk-scale
//! verification suites.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Tokenizer, Volume};
use crate::error::{Error, Result};
use crate::selection::PronounLexicon;
use crate::taxonomy::GenreTaxonomy;

/// Unigram and line-style generator for one genre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenreGenerator {
    pub genre: String,
    pub superclass: String,
    /// Log-space boosts added to the base Zipf log-weight per word.
    #[serde(default)]
    pub word_boosts: BTreeMap<String, f64>,
    /// Target line length range in characters, inclusive.
    pub line_len_range: (usize, usize),
    /// Lines per page range, inclusive.
    pub lines_per_page: (usize, usize),
    /// Probability that a line's first character is capitalized.
    pub cap_prob: f64,
    /// Tendency to open volumes; feeds the derived initial distribution.
    #[serde(default)]
    pub front_affinity: f64,
    /// Tendency to attract transitions; feeds derived off-diagonal mass.
    #[serde(default)]
    pub back_affinity: f64,
}

/// Per-era multiplicative (log-space) unigram perturbation, modeling
/// historically mutable genres. Zero boosts reproduce the stationary
/// corpus exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EraDrift {
    pub start_year: i32,
    pub end_year: i32,
    /// Restrict the drift to one genre; `None` applies to all.
    #[serde(default)]
    pub genre: Option<String>,
    pub log_boosts: BTreeMap<String, f64>,
}

/// Full description of a synthetic corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub n_volumes: usize,
    /// Pages per volume, inclusive range.
    pub pages_per_volume: (usize, usize),
    /// Publication years, inclusive range.
    pub year_range: (i32, i32),
    /// Size of the base pseudo-word lexicon.
    pub lexicon_size: usize,
    /// Zipf exponent for base word weights.
    pub zipf_exponent: f64,
    pub generators: Vec<GenreGenerator>,
    /// Initial genre distribution, aligned with `generators`.
    pub initial: Vec<f64>,
    /// True transition matrix, aligned with `generators`.
    pub transitions: Vec<Vec<f64>>,
    #[serde(default)]
    pub era_drift: Vec<EraDrift>,
    /// Uniform character-substitution noise rate over alphabetic chars.
    #[serde(default)]
    pub ocr_noise_rate: f64,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: String| Error::invalid(format!("{name}: {msg}"));
        if self.n_volumes == 0 {
            return Err(field("n_volumes", "must be at least 1".into()));
        }
        if self.pages_per_volume.0 == 0 || self.pages_per_volume.0 > self.pages_per_volume.1 {
            return Err(field("pages_per_volume", "range must be ordered and positive".into()));
        }
        if self.year_range.0 > self.year_range.1 {
            return Err(field("year_range", "range must be ordered".into()));
        }
        if self.lexicon_size == 0 {
            return Err(field("lexicon_size", "must be at least 1".into()));
        }
        if self.generators.is_empty() {
            return Err(field("generators", "need at least one genre".into()));
        }
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(&g.genre) {
                return Err(field("generators", format!("duplicate genre {}", g.genre)));
            }
            if g.line_len_range.0 == 0 || g.line_len_range.0 > g.line_len_range.1 {
                return Err(field("line_len_range", format!("bad range for {}", g.genre)));
            }
            if g.lines_per_page.0 == 0 || g.lines_per_page.0 > g.lines_per_page.1 {
                return Err(field("lines_per_page", format!("bad range for {}", g.genre)));
            }
            if !(0.0..=1.0).contains(&g.cap_prob) {
                return Err(field("cap_prob", format!("must be in [0,1] for {}", g.genre)));
            }
        }
        let s = self.generators.len();
        if self.initial.len() != s {
            return Err(field("initial", format!("expected {s} entries")));
        }
        if (self.initial.iter().sum::<f64>() - 1.0).abs() > 1e-9
            || self.initial.iter().any(|p| *p < 0.0)
        {
            return Err(field("initial", "must be non-negative and sum to 1".into()));
        }
        if self.transitions.len() != s {
            return Err(field("transitions", format!("expected {s} rows")));
        }
        for (i, row) in self.transitions.iter().enumerate() {
            if row.len() != s {
                return Err(field("transitions", format!("row {i} must have {s} entries")));
            }
            if (row.iter().sum::<f64>() - 1.0).abs() > 1e-9 || row.iter().any(|p| *p < 0.0) {
                return Err(field(
                    "transitions",
                    format!("row {i} must be non-negative and sum to 1"),
                ));
            }
        }
        if !(0.0..=1.0).contains(&self.ocr_noise_rate) {
            return Err(field("ocr_noise_rate", "must be in [0,1]".into()));
        }
        Ok(())
    }

    /// Taxonomy implied by the generators.
    pub fn taxonomy(&self) -> GenreTaxonomy {
        GenreTaxonomy::from_map(
            self.generators
                .iter()
                .map(|g| (g.genre.clone(), g.superclass.clone()))
                .collect(),
        )
        .expect("validated generators")
    }

    /// Base pseudo-words plus every boosted or drifted word, in a fixed
    /// order: pseudo-words first, then sorted extras.
    pub fn lexicon(&self) -> Vec<String> {
        let mut words = pseudo_word_lexicon(self.lexicon_size);
        let base: BTreeSet<&str> = words.iter().map(String::as_str).collect();
        let mut extras: BTreeSet<String> = BTreeSet::new();
        for g in &self.generators {
            for w in g.word_boosts.keys() {
                if !base.contains(w.as_str()) {
                    extras.insert(w.clone());
                }
            }
        }
        for drift in &self.era_drift {
            for w in drift.log_boosts.keys() {
                if !base.contains(w.as_str()) {
                    extras.insert(w.clone());
                }
            }
        }
        words.extend(extras);
        words
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let spec: CorpusSpec = serde_json::from_str(&text)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("spec serializes");
        fs::write(path, json)?;
        Ok(())
    }
}

/// Deterministic alphabetic pseudo-words. The alphabet omits roman-numeral
/// letters so no pseudo-word can compress to `#roman-numeral`, and words
/// colliding with the pronoun lists or the bundled name lexicon are
/// skipped so planted signals survive tokenization untouched.
pub fn pseudo_word_lexicon(n: usize) -> Vec<String> {
    const ALPHABET: &[u8] = b"abefghjknopqrstuwyz";
    let pronouns = PronounLexicon::default();
    let tokenizer = Tokenizer::default();
    let mut words = Vec::with_capacity(n);
    for len in 2..=5usize {
        if words.len() == n {
            break;
        }
        let mut idx = vec![0usize; len];
        'strings: loop {
            let word: String = idx.iter().map(|&i| ALPHABET[i] as char).collect();
            if !pronouns.first_person.contains(&word)
                && !pronouns.third_person.contains(&word)
                && !tokenizer.name_lexicon().contains(&word)
            {
                words.push(word);
                if words.len() == n {
                    break 'strings;
                }
            }
            // Odometer increment over the alphabet.
            let mut pos = len;
            loop {
                if pos == 0 {
                    break 'strings;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < ALPHABET.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    words
}

/// Derive an initial distribution and transition matrix from generator
/// affinities: starts favor front-affine genres, off-diagonal transition
/// mass favors back-affine genres, and `diagonal[i]` fixes self-stickiness.
pub fn derive_structure(
    generators: &[GenreGenerator],
    diagonal: &[f64],
) -> (Vec<f64>, Vec<Vec<f64>>) {
    let s = generators.len();
    assert_eq!(s, diagonal.len());
    let front: Vec<f64> = generators.iter().map(|g| g.front_affinity.exp()).collect();
    let front_sum: f64 = front.iter().sum();
    let initial: Vec<f64> = front.iter().map(|f| f / front_sum).collect();

    let back: Vec<f64> = generators.iter().map(|g| g.back_affinity.exp()).collect();
    let mut transitions = vec![vec![0.0; s]; s];
    for i in 0..s {
        let off_total: f64 = (0..s).filter(|&j| j != i).map(|j| back[j]).sum();
        for j in 0..s {
            transitions[i][j] = if i == j {
                diagonal[i]
            } else {
                (1.0 - diagonal[i]) * back[j] / off_total
            };
        }
    }
    (initial, transitions)
}

struct GenreSampler {
    words: WeightedIndex<f64>,
}

fn genre_sampler(
    spec: &CorpusSpec,
    lexicon: &[String],
    base_log: &[f64],
    genre_index: usize,
    year: i32,
) -> GenreSampler {
    let generator = &spec.generators[genre_index];
    let mut log_weights: Vec<f64> = base_log.to_vec();
    for (w, boost) in &generator.word_boosts {
        if let Some(i) = lexicon.iter().position(|l| l == w) {
            log_weights[i] += boost;
        }
    }
    for drift in &spec.era_drift {
        let genre_matches = drift
            .genre
            .as_ref()
            .map_or(true, |g| *g == generator.genre);
        if genre_matches && year >= drift.start_year && year <= drift.end_year {
            for (w, boost) in &drift.log_boosts {
                if let Some(i) = lexicon.iter().position(|l| l == w) {
                    log_weights[i] += boost;
                }
            }
        }
    }
    let weights: Vec<f64> = log_weights.iter().map(|l| l.exp()).collect();
    GenreSampler {
        words: WeightedIndex::new(&weights).expect("positive weights"),
    }
}

fn generate_volume(
    spec: &CorpusSpec,
    lexicon: &[String],
    base_log: &[f64],
    taxonomy: &GenreTaxonomy,
    tokenizer: &Tokenizer,
    volume_index: usize,
) -> Result<Volume> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(volume_index as u64 + 1);

    let year = rng.gen_range(spec.year_range.0..=spec.year_range.1);
    let n_pages = rng.gen_range(spec.pages_per_volume.0..=spec.pages_per_volume.1);

    let initial = WeightedIndex::new(&spec.initial)
        .map_err(|_| Error::invalid("initial: all-zero distribution"))?;
    let rows: Vec<Option<WeightedIndex<f64>>> = spec
        .transitions
        .iter()
        .map(|row| WeightedIndex::new(row).ok())
        .collect();
    let mut labels = Vec::with_capacity(n_pages);
    let mut state = initial.sample(&mut rng);
    labels.push(state);
    for _ in 1..n_pages {
        let row = rows[state]
            .as_ref()
            .ok_or_else(|| Error::invalid(format!("transitions: row {state} is all zero")))?;
        state = row.sample(&mut rng);
        labels.push(state);
    }

    // One sampler per genre actually used, adjusted for this volume's era.
    let mut samplers: BTreeMap<usize, GenreSampler> = BTreeMap::new();
    for &g in &labels {
        samplers
            .entry(g)
            .or_insert_with(|| genre_sampler(spec, lexicon, base_log, g, year));
    }

    let mut page_lines = Vec::with_capacity(n_pages);
    for &g in &labels {
        let generator = &spec.generators[g];
        let sampler = &samplers[&g];
        let n_lines = rng.gen_range(generator.lines_per_page.0..=generator.lines_per_page.1);
        let mut lines = Vec::with_capacity(n_lines);
        for _ in 0..n_lines {
            let target = rng.gen_range(generator.line_len_range.0..=generator.line_len_range.1);
            let mut line = String::new();
            while line.chars().count() < target {
                if !line.is_empty() {
                    line.push(' ');
                }
                line.push_str(&lexicon[sampler.words.sample(&mut rng)]);
            }
            if rng.gen_bool(generator.cap_prob) {
                let mut chars: Vec<char> = line.chars().collect();
                chars[0] = chars[0].to_ascii_uppercase();
                line = chars.into_iter().collect();
            }
            if spec.ocr_noise_rate > 0.0 {
                line = line
                    .chars()
                    .map(|c| {
                        if c.is_ascii_alphabetic() && rng.gen_bool(spec.ocr_noise_rate) {
                            char::from(b'a' + rng.gen_range(0..26u8))
                        } else {
                            c
                        }
                    })
                    .collect();
            }
            lines.push(line);
        }
        page_lines.push(lines);
    }

    Volume::new(
        format!("synth-{volume_index:05}"),
        year,
        page_lines,
        Some(labels.iter().map(|&g| spec.generators[g].genre.clone()).collect()),
        tokenizer,
        taxonomy,
    )
}

/// Generate the corpus described by `spec`, with gold labels.
/// Deterministic per seed regardless of parallel schedule.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<Volume>> {
    spec.validate()?;
    let taxonomy = spec.taxonomy();
    let tokenizer = Tokenizer::default();
    let lexicon = spec.lexicon();
    let base_log: Vec<f64> = (0..lexicon.len())
        .map(|i| -spec.zipf_exponent * ((i + 1) as f64).ln())
        .collect();
    (0..spec.n_volumes)
        .into_par_iter()
        .map(|i| generate_volume(spec, &lexicon, &base_log, &taxonomy, &tokenizer, i))
        .collect()
}

fn boosts(words: &[(&str, f64)]) -> BTreeMap<String, f64> {
    words.iter().map(|(w, b)| (w.to_string(), *b)).collect()
}

impl CorpusSpec {
    /// Six-genre volumes with internally heterogeneous page sequences:
    /// diagonal-dominant transitions, overlapping unigram profiles, and
    /// style cues per genre. The substrate for smoothing-gain checks.
    pub fn six_genre_mixture(seed: u64) -> CorpusSpec {
        let base = pseudo_word_lexicon(420);
        let slice = |start: usize, len: usize, boost: f64| -> Vec<(String, f64)> {
            base[start..start + len]
                .iter()
                .map(|w| (w.clone(), boost))
                .collect()
        };
        let with = |own: Vec<(String, f64)>, shared: Vec<(String, f64)>| -> BTreeMap<String, f64> {
            own.into_iter().chain(shared).collect()
        };
        // Genres boost disjoint word blocks plus a block shared with a
        // confusable neighbor, so pages are separable but noisy. Boost
        // sizes are tuned so raw page-level accuracy lands mid-band and
        // sequence smoothing has visible headroom.
        let narrative_shared = slice(300, 24, 1.3);
        let verse_shared = slice(330, 18, 1.2);
        let generators = vec![
            GenreGenerator {
                genre: "fiction".into(),
                superclass: "fiction".into(),
                word_boosts: with(slice(60, 18, 0.95), narrative_shared.clone()),
                line_len_range: (45, 75),
                lines_per_page: (5, 9),
                cap_prob: 0.18,
                front_affinity: 0.0,
                back_affinity: 0.0,
            },
            GenreGenerator {
                genre: "biography".into(),
                superclass: "nonfiction".into(),
                word_boosts: with(slice(90, 18, 0.95), narrative_shared),
                line_len_range: (45, 75),
                lines_per_page: (5, 9),
                cap_prob: 0.15,
                front_affinity: 0.0,
                back_affinity: 0.0,
            },
            GenreGenerator {
                genre: "poetry".into(),
                superclass: "poetry".into(),
                word_boosts: with(slice(120, 18, 0.95), verse_shared.clone()),
                line_len_range: (26, 55),
                lines_per_page: (6, 10),
                cap_prob: 0.7,
                front_affinity: 0.0,
                back_affinity: 0.0,
            },
            GenreGenerator {
                genre: "drama".into(),
                superclass: "drama".into(),
                word_boosts: with(slice(150, 18, 0.95), verse_shared),
                line_len_range: (30, 62),
                lines_per_page: (6, 10),
                cap_prob: 0.55,
                front_affinity: 0.0,
                back_affinity: 0.0,
            },
            GenreGenerator {
                genre: "ads".into(),
                superclass: "back-matter".into(),
                word_boosts: with(
                    slice(180, 14, 1.0),
                    vec![("12".to_string(), 1.5), ("1850".to_string(), 1.0)],
                ),
                line_len_range: (20, 50),
                lines_per_page: (5, 9),
                cap_prob: 0.5,
                front_affinity: 0.0,
                back_affinity: 1.2,
            },
            GenreGenerator {
                genre: "title-page".into(),
                superclass: "front-matter".into(),
                word_boosts: with(slice(210, 12, 1.1), vec![("1850".to_string(), 1.2)]),
                line_len_range: (14, 38),
                lines_per_page: (3, 6),
                cap_prob: 0.75,
                front_affinity: 2.5,
                back_affinity: 0.0,
            },
        ];
        let diagonal = [0.92, 0.92, 0.9, 0.9, 0.88, 0.35];
        let (initial, transitions) = derive_structure(&generators, &diagonal);
        CorpusSpec {
            n_volumes: 60,
            pages_per_volume: (34, 46),
            year_range: (1700, 1899),
            lexicon_size: 2000,
            zipf_exponent: 1.07,
            generators,
            initial,
            transitions,
            era_drift: Vec::new(),
            ocr_noise_rate: 0.0,
            seed,
        }
    }

    /// Homogeneous volumes narrated in the first or third person, with
    /// pronoun-rate separation plus secondary quantity/kinship signals.
    pub fn point_of_view(seed: u64, n_volumes: usize) -> CorpusSpec {
        let first = GenreGenerator {
            genre: "first-person".into(),
            superclass: "fiction".into(),
            word_boosts: boosts(&[
                ("i", 5.6),
                ("me", 4.6),
                ("my", 4.8),
                ("we", 4.4),
                ("us", 4.0),
                ("our", 4.0),
                ("myself", 3.4),
                ("mine", 3.0),
                ("ourselves", 2.6),
                ("got", 3.2),
                ("ship", 3.4),
                ("water", 3.3),
                ("weather", 3.0),
                ("boat", 3.0),
                ("shore", 2.8),
                ("two", 3.2),
                ("three", 3.2),
                ("four", 3.0),
                ("twenty", 2.8),
                ("eight", 2.6),
                // Dialogue still mentions other people.
                ("he", 3.6),
                ("she", 3.2),
                ("his", 3.4),
                ("her", 3.2),
            ]),
            line_len_range: (45, 72),
            lines_per_page: (9, 13),
            cap_prob: 0.15,
            front_affinity: 0.0,
            back_affinity: 0.0,
        };
        let third = GenreGenerator {
            genre: "third-person".into(),
            superclass: "fiction".into(),
            word_boosts: boosts(&[
                ("he", 5.4),
                ("his", 5.2),
                ("she", 5.0),
                ("her", 5.0),
                ("him", 4.6),
                ("himself", 3.6),
                ("herself", 3.4),
                ("they", 4.0),
                ("them", 3.8),
                ("their", 3.8),
                ("whom", 3.0),
                ("daughter", 3.2),
                ("husband", 3.2),
                ("marriage", 3.0),
                ("lover", 2.8),
                ("woman", 3.0),
                ("youth", 2.8),
                ("beauty", 2.8),
                ("silence", 2.8),
                ("speech", 2.6),
                // First-person dialogue inside third-person narration.
                ("i", 3.8),
                ("me", 3.0),
                ("my", 3.0),
                ("we", 2.8),
            ]),
            line_len_range: (45, 72),
            lines_per_page: (9, 13),
            cap_prob: 0.15,
            front_affinity: 0.0,
            back_affinity: 0.0,
        };
        CorpusSpec {
            n_volumes,
            pages_per_volume: (8, 14),
            year_range: (1700, 1899),
            lexicon_size: 2000,
            zipf_exponent: 1.07,
            generators: vec![first, third],
            initial: vec![0.5, 0.5],
            transitions: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            era_drift: Vec::new(),
            ocr_noise_rate: 0.0,
            seed,
        }
    }

    /// Homogeneous single-genre volumes over three body genres; the
    /// substrate for stationary model-agreement checks.
    pub fn stationary_three_genre(seed: u64, n_volumes: usize) -> CorpusSpec {
        let base = pseudo_word_lexicon(200);
        let block = |start: usize, boost: f64| -> BTreeMap<String, f64> {
            base[start..start + 20]
                .iter()
                .map(|w| (w.clone(), boost))
                .collect()
        };
        let style = |genre: &str, superclass: &str, start: usize| GenreGenerator {
            genre: genre.into(),
            superclass: superclass.into(),
            word_boosts: block(start, 1.8),
            line_len_range: (40, 70),
            lines_per_page: (8, 12),
            cap_prob: 0.2,
            front_affinity: 0.0,
            back_affinity: 0.0,
        };
        let generators = vec![
            style("fiction", "fiction", 60),
            style("biography", "nonfiction", 90),
            style("poetry", "poetry", 120),
        ];
        CorpusSpec {
            n_volumes,
            pages_per_volume: (6, 10),
            year_range: (1700, 1899),
            lexicon_size: 1500,
            zipf_exponent: 1.07,
            generators,
            initial: vec![0.4, 0.35, 0.25],
            transitions: vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            era_drift: Vec::new(),
            ocr_noise_rate: 0.0,
            seed,
        }
    }

    /// A four-state chain with known transitions and cheap pages, sized
    /// to supply roughly `total_transitions` labeled transitions.
    pub fn markov_chain_consistency(seed: u64, total_transitions: usize) -> CorpusSpec {
        let generators: Vec<GenreGenerator> = ["g0", "g1", "g2", "g3"]
            .iter()
            .map(|g| GenreGenerator {
                genre: g.to_string(),
                superclass: "fiction".into(),
                word_boosts: BTreeMap::new(),
                line_len_range: (8, 16),
                lines_per_page: (1, 2),
                cap_prob: 0.2,
                front_affinity: 0.0,
                back_affinity: 0.0,
            })
            .collect();
        let pages_per_volume = 101usize;
        let n_volumes = total_transitions.div_ceil(pages_per_volume - 1);
        CorpusSpec {
            n_volumes,
            pages_per_volume: (pages_per_volume, pages_per_volume),
            year_range: (1800, 1899),
            lexicon_size: 50,
            zipf_exponent: 1.07,
            generators,
            initial: vec![0.25, 0.25, 0.25, 0.25],
            transitions: vec![
                vec![0.70, 0.10, 0.10, 0.10],
                vec![0.05, 0.80, 0.10, 0.05],
                vec![0.15, 0.05, 0.65, 0.15],
                vec![0.10, 0.20, 0.10, 0.60],
            ],
            era_drift: Vec::new(),
            ocr_noise_rate: 0.0,
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{load_volumes, save_volumes};
    use crate::stats::pearson_correlation;

    #[test]
    fn same_seed_is_byte_identical() {
        let spec = CorpusSpec::stationary_three_genre(5, 12);
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        let other = generate_corpus(&CorpusSpec::stationary_three_genre(6, 12)).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn diagonal_seeded_chains_stay_in_one_genre() {
        let mut spec = CorpusSpec::stationary_three_genre(3, 200);
        // Nearly-absorbing states: 98% self transitions over short
        // volumes, so almost every volume is a single-genre run.
        spec.pages_per_volume = (3, 5);
        spec.transitions = vec![
            vec![0.98, 0.01, 0.01],
            vec![0.01, 0.98, 0.01],
            vec![0.01, 0.01, 0.98],
        ];
        let volumes = generate_corpus(&spec).unwrap();
        let single = volumes
            .iter()
            .filter(|v| {
                let labels = v.gold_labels.as_ref().unwrap();
                labels.iter().all(|l| l == &labels[0])
            })
            .count();
        assert!(
            single as f64 / volumes.len() as f64 >= 0.9,
            "only {single}/{} single-genre volumes",
            volumes.len()
        );
    }

    #[test]
    fn empirical_transitions_match_the_spec_matrix() {
        let spec = CorpusSpec::markov_chain_consistency(11, 10_000);
        let volumes = generate_corpus(&spec).unwrap();
        let genre_index = |g: &str| spec.generators.iter().position(|x| x.genre == g).unwrap();
        let mut counts = vec![vec![0u64; 4]; 4];
        let mut total = 0u64;
        for v in &volumes {
            let labels = v.gold_labels.as_ref().unwrap();
            for pair in labels.windows(2) {
                counts[genre_index(&pair[0])][genre_index(&pair[1])] += 1;
                total += 1;
            }
        }
        assert!(total >= 10_000);
        for i in 0..4 {
            let row_total: u64 = counts[i].iter().sum();
            for j in 0..4 {
                let estimate = counts[i][j] as f64 / row_total as f64;
                let diff = (estimate - spec.transitions[i][j]).abs();
                assert!(diff < 0.02, "A[{i}][{j}] off by {diff}");
            }
        }
    }

    #[test]
    fn round_trips_through_the_corpus_format() {
        let spec = CorpusSpec::six_genre_mixture(21);
        let mut small = spec.clone();
        small.n_volumes = 6;
        let volumes = generate_corpus(&small).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        save_volumes(file.path(), &volumes).unwrap();
        let back = load_volumes(file.path(), &Tokenizer::default(), &small.taxonomy()).unwrap();
        assert_eq!(volumes, back);
    }

    #[test]
    fn zero_magnitude_era_drift_changes_nothing() {
        let mut spec = CorpusSpec::stationary_three_genre(9, 10);
        let plain = generate_corpus(&spec).unwrap();
        spec.era_drift = vec![EraDrift {
            start_year: 1700,
            end_year: 1899,
            genre: None,
            log_boosts: spec.generators[0]
                .word_boosts
                .keys()
                .map(|w| (w.clone(), 0.0))
                .collect(),
        }];
        let drifted = generate_corpus(&spec).unwrap();
        assert_eq!(plain, drifted);
    }

    #[test]
    fn nonzero_era_drift_shifts_rates_in_era_only() {
        let mut spec = CorpusSpec::stationary_three_genre(13, 200);
        let marker = spec.generators[0].word_boosts.keys().next().unwrap().clone();
        spec.era_drift = vec![EraDrift {
            start_year: 1800,
            end_year: 1899,
            genre: None,
            log_boosts: [(marker.clone(), 2.0)].into_iter().collect(),
        }];
        let volumes = generate_corpus(&spec).unwrap();
        let rate = |v: &Volume| {
            let count = v.all_tokens().filter(|t| *t == marker).count();
            count as f64 / v.total_tokens().max(1) as f64
        };
        let (mut early, mut late) = (Vec::new(), Vec::new());
        for v in &volumes {
            if v.year < 1800 {
                early.push(rate(v));
            } else {
                late.push(rate(v));
            }
        }
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
        assert!(mean(&late) > mean(&early) * 1.5, "drift did not raise the rate");
    }

    #[test]
    fn invalid_specs_name_the_field() {
        let mut spec = CorpusSpec::stationary_three_genre(1, 4);
        spec.initial = vec![0.9, 0.05, 0.01];
        let err = generate_corpus(&spec).unwrap_err();
        assert!(err.to_string().starts_with("initial:"), "{err}");

        let mut spec = CorpusSpec::stationary_three_genre(1, 4);
        spec.transitions[1] = vec![0.5, 0.2, 0.2];
        let err = spec.validate().unwrap_err();
        assert!(err.to_string().starts_with("transitions:"), "{err}");
    }

    #[test]
    fn pseudo_words_avoid_special_tokens() {
        let words = pseudo_word_lexicon(3000);
        assert_eq!(words.len(), 3000);
        let tokenizer = Tokenizer::default();
        let pronouns = PronounLexicon::default();
        for w in &words {
            assert!(!pronouns.first_person.contains(w));
            assert!(!pronouns.third_person.contains(w));
            // Each word survives tokenization as itself, even capitalized.
            let mut caps = w.clone();
            caps.replace_range(0..1, &w[0..1].to_uppercase());
            assert_eq!(tokenizer.tokenize(&caps), [w.clone()], "word {w}");
        }
        let unique: BTreeSet<&String> = words.iter().collect();
        assert_eq!(unique.len(), words.len());
    }

    #[test]
    fn derived_structure_is_stochastic_and_affine_to_affinities() {
        let spec = CorpusSpec::six_genre_mixture(1);
        let title = spec
            .generators
            .iter()
            .position(|g| g.genre == "title-page")
            .unwrap();
        assert!(spec.initial[title] > 0.5, "front-affine genre should open volumes");
        for row in &spec.transitions {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        spec.validate().unwrap();
    }

    #[test]
    fn point_of_view_corpus_separates_by_pronoun_ratio() {
        let spec = CorpusSpec::point_of_view(2, 40);
        let volumes = generate_corpus(&spec).unwrap();
        let lex = PronounLexicon::default();
        let mut ratios = Vec::new();
        let mut labels = Vec::new();
        for v in &volumes {
            ratios.push(crate::selection::pronoun_ratio(v, &lex));
            labels.push(f64::from(v.majority_gold_label() == Some("first-person")));
        }
        let r = pearson_correlation(&ratios, &labels).unwrap();
        assert!(r > 0.5, "pronoun ratio should track narration, r = {r}");
    }
}
