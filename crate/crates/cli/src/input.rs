//! Job files and `name=value` point arguments.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sl2char::algebra::{parse_rat, Rat};
use sl2char::words::{BoundaryCurve, Presentation, Word};
use sl2char::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    pub name: String,
    pub word: String,
    pub genus: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default)]
    pub boundary: Vec<BoundaryEntry>,
    #[serde(default)]
    pub phi: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub point: Option<BTreeMap<String, String>>,
}

impl JobFile {
    pub fn load(path: &Path) -> Result<JobFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        JobFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<JobFile> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid job file: {e}")))
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = self.relators.iter().map(String::as_str).collect();
        let bnd: Vec<(&str, &str, u32)> =
            self.boundary.iter().map(|b| (b.name.as_str(), b.word.as_str(), b.genus)).collect();
        Presentation::parse(&gens, &rels, &bnd)
    }

    pub fn point(&self) -> Result<Option<[Rat; 3]>> {
        self.point.as_ref().map(point_from_map).transpose()
    }

    /// `φ(a)`, `φ(b)` as words over `a, b`.
    pub fn phi(&self, p: &Presentation) -> Result<(Word, Word)> {
        let phi = self.phi.as_ref().ok_or_else(|| Error::Input("job file has no 'phi' entry".into()))?;
        for k in phi.keys() {
            if k != "a" && k != "b" {
                return Err(Error::Input(format!("'phi' maps unknown generator '{k}'")));
            }
        }
        let get = |g: &str| -> Result<Word> {
            let w = phi.get(g).ok_or_else(|| Error::Input(format!("'phi' has no image for '{g}'")))?;
            p.parse_word(w)
        };
        Ok((get("a")?, get("b")?))
    }
}

pub fn boundary_words(curves: &[BoundaryCurve]) -> Vec<Word> {
    curves.iter().map(|c| c.word.clone()).collect()
}

fn point_from_map(m: &BTreeMap<String, String>) -> Result<[Rat; 3]> {
    for k in m.keys() {
        if !["x", "y", "z"].contains(&k.as_str()) {
            return Err(Error::UnknownVariable(k.clone()));
        }
    }
    let get = |v: &str| -> Result<Rat> {
        let s = m.get(v).ok_or_else(|| Error::Input(format!("point is missing '{v}'")))?;
        parse_rat(s)
    };
    Ok([get("x")?, get("y")?, get("z")?])
}

/// Parses `x=.. y=.. z=..` (also accepting commas between assignments).
pub fn parse_point(args: &[String]) -> Result<[Rat; 3]> {
    let mut m = BTreeMap::new();
    for part in args.iter().flat_map(|a| a.split(',')).filter(|s| !s.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected name=value, got '{part}'")))?;
        if m.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Input(format!("'{}' assigned twice", k.trim())));
        }
    }
    point_from_map(&m)
}
