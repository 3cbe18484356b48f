//! Genre taxonomy: leaf genres and the superclass each one belongs to.
//!
//! Page-level classifiers are trained per leaf; a broad class such as
//! nonfiction is recognized whenever any of its leaves wins the one-vs-all
//! decision. The default taxonomy has twenty leaves spanning body genres,
//! front matter, back matter, and library paratext; callers can replace it
//! with their own leaf → superclass map.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Leaf genres mapped to top-level superclasses.
///
/// Serializes as a flat JSON object `{"fiction": "fiction", ...}`. Leaves
/// iterate in lexicographic order, which fixes classifier, state, and
/// tie-break ordering everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GenreTaxonomy {
    superclass_of: BTreeMap<String, String>,
}

impl GenreTaxonomy {
    pub fn from_map(superclass_of: BTreeMap<String, String>) -> Result<Self> {
        if superclass_of.is_empty() {
            return Err(Error::invalid("taxonomy must have at least one leaf"));
        }
        for (leaf, superclass) in &superclass_of {
            if leaf.is_empty() || superclass.is_empty() {
                return Err(Error::invalid("taxonomy entries must be non-empty strings"));
            }
        }
        Ok(GenreTaxonomy { superclass_of })
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let map: BTreeMap<String, String> = serde_json::from_str(&text)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        Self::from_map(map)
    }

    pub fn to_json_string(&self) -> String {
        // BTreeMap keys are ordered, so the output is deterministic.
        serde_json::to_string_pretty(&self.superclass_of).expect("taxonomy serializes")
    }

    /// Leaf genre ids in lexicographic order.
    pub fn leaves(&self) -> impl Iterator<Item = &str> {
        self.superclass_of.keys().map(String::as_str)
    }

    pub fn leaf_vec(&self) -> Vec<String> {
        self.superclass_of.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.superclass_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.superclass_of.is_empty()
    }

    pub fn contains(&self, leaf: &str) -> bool {
        self.superclass_of.contains_key(leaf)
    }

    pub fn superclass(&self, leaf: &str) -> Option<&str> {
        self.superclass_of.get(leaf).map(String::as_str)
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.superclass_of
    }
}

impl Default for GenreTaxonomy {
    /// Twenty leaves over seven superclasses.
    fn default() -> Self {
        let entries = [
            ("fiction", "fiction"),
            ("biography", "nonfiction"),
            ("autobiography", "nonfiction"),
            ("other-nonfiction", "nonfiction"),
            ("letters", "nonfiction"),
            ("travel", "nonfiction"),
            ("sermon", "nonfiction"),
            ("essay", "nonfiction"),
            ("drama", "drama"),
            ("poetry", "poetry"),
            ("title-page", "front-matter"),
            ("table-of-contents", "front-matter"),
            ("preface", "front-matter"),
            ("subscriber-list", "front-matter"),
            ("dedication", "front-matter"),
            ("ads", "back-matter"),
            ("index", "back-matter"),
            ("errata", "back-matter"),
            ("bookplate", "paratext"),
            ("date-due-slip", "paratext"),
        ];
        let map = entries
            .iter()
            .map(|(l, s)| (l.to_string(), s.to_string()))
            .collect();
        GenreTaxonomy { superclass_of: map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_has_twenty_leaves() {
        let tax = GenreTaxonomy::default();
        assert_eq!(tax.len(), 20);
        for leaf in [
            "fiction",
            "biography",
            "autobiography",
            "other-nonfiction",
            "drama",
            "poetry",
            "title-page",
            "bookplate",
            "table-of-contents",
            "subscriber-list",
            "ads",
            "index",
            "date-due-slip",
        ] {
            assert!(tax.contains(leaf), "missing default leaf {leaf}");
        }
        assert_eq!(tax.superclass("biography"), Some("nonfiction"));
        assert_eq!(tax.superclass("ads"), Some("back-matter"));
    }

    #[test]
    fn leaves_are_sorted() {
        let tax = GenreTaxonomy::default();
        let leaves: Vec<_> = tax.leaves().collect();
        let mut sorted = leaves.clone();
        sorted.sort_unstable();
        assert_eq!(leaves, sorted);
    }

    #[test]
    fn empty_map_rejected() {
        assert!(GenreTaxonomy::from_map(BTreeMap::new()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let tax = GenreTaxonomy::default();
        let text = tax.to_json_string();
        let back: GenreTaxonomy = serde_json::from_str(&text).unwrap();
        assert_eq!(tax, back);
    }
}
