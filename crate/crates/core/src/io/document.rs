use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::IoError;
use crate::system::{InformationPattern, StructuralPattern, StructuralSystem};

/// On-disk form of a system and an optional pattern, with 1-based coordinates.
///
/// ```toml
/// n = 3
/// p = 3
/// m = 3
/// a_nonzeros = [[2, 1], [3, 2]]
/// b_nonzeros = [[1, 1], [2, 2], [3, 3]]
/// c_nonzeros = [[1, 1], [2, 2], [3, 3]]
/// k_nonzeros = [[1, 3]]
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemDocument {
    pub n: usize,
    pub p: usize,
    pub m: usize,
    pub a_nonzeros: Vec<[usize; 2]>,
    pub b_nonzeros: Vec<[usize; 2]>,
    pub c_nonzeros: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_nonzeros: Option<Vec<[usize; 2]>>,
}

/// On-disk form of an information pattern alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternDocument {
    pub p: usize,
    pub m: usize,
    pub k_nonzeros: Vec<[usize; 2]>,
}

type Entries = Vec<Spanned<[usize; 2]>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    p: usize,
    m: usize,
    #[serde(default)]
    a_nonzeros: Entries,
    #[serde(default)]
    b_nonzeros: Entries,
    #[serde(default)]
    c_nonzeros: Entries,
    k_nonzeros: Option<Entries>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPattern {
    p: usize,
    m: usize,
    #[serde(default)]
    k_nonzeros: Entries,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())]
        .bytes()
        .filter(|&b| b == b'\n')
        .count()
        + 1
}

fn to_pattern(
    text: &str,
    field: &'static str,
    rows: usize,
    cols: usize,
    entries: &Entries,
) -> Result<StructuralPattern, IoError> {
    let mut seen = BTreeSet::new();
    for e in entries {
        let [r, c] = *e.get_ref();
        let fail = |message: String| IoError::Field {
            field,
            line: line_of(text, e.span().start),
            message,
        };
        if r == 0 || c == 0 {
            return Err(fail(format!("[{r}, {c}]: indices are 1-based")));
        }
        if r > rows || c > cols {
            return Err(fail(format!("[{r}, {c}] outside {rows}x{cols}")));
        }
        if !seen.insert((r, c)) {
            return Err(fail(format!("[{r}, {c}] listed twice")));
        }
    }
    Ok(StructuralPattern::new(
        rows,
        cols,
        seen.into_iter().map(|(r, c)| (r - 1, c - 1)),
    )?)
}

fn entries(p: &StructuralPattern) -> Vec<[usize; 2]> {
    p.one_based()
}

impl SystemDocument {
    pub fn from_system(sys: &StructuralSystem, k: Option<&InformationPattern>) -> Self {
        Self {
            n: sys.n(),
            p: sys.p(),
            m: sys.m(),
            a_nonzeros: entries(sys.a()),
            b_nonzeros: entries(sys.b()),
            c_nonzeros: entries(sys.c()),
            k_nonzeros: k.map(|k| entries(k.pattern())),
        }
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("plain integer arrays serialize")
    }
}

impl PatternDocument {
    pub fn from_pattern(k: &InformationPattern) -> Self {
        Self {
            p: k.rows(),
            m: k.cols(),
            k_nonzeros: entries(k.pattern()),
        }
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("plain integer arrays serialize")
    }
}

/// Parses a system document; the pattern is present iff `k_nonzeros` is.
pub fn parse_system(text: &str) -> Result<(StructuralSystem, Option<InformationPattern>), IoError> {
    let raw: RawSystem = toml::from_str(text).map_err(|e| IoError::Syntax(e.to_string()))?;
    let a = to_pattern(text, "a_nonzeros", raw.n, raw.n, &raw.a_nonzeros)?;
    let b = to_pattern(text, "b_nonzeros", raw.n, raw.p, &raw.b_nonzeros)?;
    let c = to_pattern(text, "c_nonzeros", raw.m, raw.n, &raw.c_nonzeros)?;
    let k = raw
        .k_nonzeros
        .as_ref()
        .map(|e| to_pattern(text, "k_nonzeros", raw.p, raw.m, e).map(InformationPattern::from))
        .transpose()?;
    Ok((StructuralSystem::new(a, b, c)?, k))
}

pub fn parse_pattern(text: &str) -> Result<InformationPattern, IoError> {
    let raw: RawPattern = toml::from_str(text).map_err(|e| IoError::Syntax(e.to_string()))?;
    Ok(to_pattern(text, "k_nonzeros", raw.p, raw.m, &raw.k_nonzeros)?.into())
}

pub fn system_to_string(sys: &StructuralSystem, k: Option<&InformationPattern>) -> String {
    SystemDocument::from_system(sys, k).to_toml_string()
}

pub fn pattern_to_string(k: &InformationPattern) -> String {
    PatternDocument::from_pattern(k).to_toml_string()
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|e| IoError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_system(
    path: impl AsRef<Path>,
) -> Result<(StructuralSystem, Option<InformationPattern>), IoError> {
    parse_system(&read(path.as_ref())?)
}

pub fn save_system(
    path: impl AsRef<Path>,
    sys: &StructuralSystem,
    k: Option<&InformationPattern>,
) -> Result<(), IoError> {
    write(path.as_ref(), &system_to_string(sys, k))
}

pub fn load_pattern(path: impl AsRef<Path>) -> Result<InformationPattern, IoError> {
    parse_pattern(&read(path.as_ref())?)
}

pub fn save_pattern(path: impl AsRef<Path>, k: &InformationPattern) -> Result<(), IoError> {
    write(path.as_ref(), &pattern_to_string(k))
}
