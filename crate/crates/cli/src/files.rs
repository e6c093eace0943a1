//! JSON file formats for algebras, brackets and reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use superdelta::constructions::Bracket;
use superdelta::scalar::parse_scalar;
use superdelta::superalgebra::{Parity, SuperAlgebra};
use superdelta::FieldDesc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<FieldDesc> {
        Ok(match self {
            FieldSpec::Q => FieldDesc::Rationals,
            FieldSpec::Fp { p } => FieldDesc::prime(*p)?,
        })
    }

    pub fn from_field(f: FieldDesc) -> Self {
        match f {
            FieldDesc::Rationals => FieldSpec::Q,
            FieldDesc::Prime(p) => FieldSpec::Fp { p },
        }
    }
}

/// Parses `Q`, `F5` or a bare prime such as `5`.
pub fn parse_field(text: &str) -> Result<FieldDesc> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldDesc::Rationals);
    }
    let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
    let p: u64 = digits.parse().with_context(|| format!("bad field `{text}` (use Q or F<p>)"))?;
    Ok(FieldDesc::prime(p)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub parity: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub table: Vec<Entry>,
}

fn table_of(alg: &SuperAlgebra) -> Vec<Entry> {
    alg.nonzero_products()
        .map(|(i, j, terms)| Entry {
            i,
            j,
            terms: terms
                .iter()
                .map(|(k, c)| Term { k: *k, c: c.to_string() })
                .collect(),
        })
        .collect()
}

fn entries_of(
    table: &[Entry],
    field: FieldDesc,
) -> Result<Vec<(usize, usize, usize, superdelta::Scalar)>> {
    let mut out = Vec::new();
    for e in table {
        for t in &e.terms {
            let c = parse_scalar(&t.c, field)
                .with_context(|| format!("coefficient `{}` of ({}, {})", t.c, e.i, e.j))?;
            out.push((e.i, e.j, t.k, c));
        }
    }
    Ok(out)
}

impl AlgebraFile {
    pub fn from_algebra(alg: &SuperAlgebra) -> Self {
        AlgebraFile {
            field: FieldSpec::from_field(alg.field()),
            dim: alg.dim(),
            parity: alg.parities().iter().map(|p| p.bit()).collect(),
            names: Some(alg.names().to_vec()),
            table: table_of(alg),
        }
    }

    pub fn to_algebra(&self) -> Result<SuperAlgebra> {
        let field = self.field.to_field()?;
        if self.parity.len() != self.dim {
            bail!("parity has {} entries, dim is {}", self.parity.len(), self.dim);
        }
        let parity = self
            .parity
            .iter()
            .map(|b| match b {
                0 | 1 => Ok(Parity::from_bit(*b)),
                _ => bail!("parity bit {b} is not 0 or 1"),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SuperAlgebra::new(
            field,
            parity,
            self.names.clone(),
            entries_of(&self.table, field)?,
        )?)
    }
}

/// Where a bracket file finds its underlying algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Over {
    /// Relative paths are resolved against the bracket file's directory.
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketFile {
    pub bracket: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Over>,
    pub table: Vec<Entry>,
}

impl BracketFile {
    pub fn new(br: &Bracket, over: Over) -> Self {
        BracketFile {
            bracket: true,
            over: Some(over),
            table: table_of(br.table()),
        }
    }

    pub fn to_bracket(&self, gamma: &SuperAlgebra) -> Result<Bracket> {
        if !self.bracket {
            bail!("not a bracket file (\"bracket\" is false)");
        }
        Ok(Bracket::new(gamma, entries_of(&self.table, gamma.field())?)?)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn load_algebra(path: &Path) -> Result<SuperAlgebra> {
    let file: AlgebraFile = read_json(path)?;
    file.to_algebra().with_context(|| format!("loading {}", path.display()))
}

pub fn save_algebra(path: &Path, alg: &SuperAlgebra) -> Result<()> {
    write_json(path, &AlgebraFile::from_algebra(alg))
}

/// Loads a bracket. `gamma` overrides the file's own `over` reference.
pub fn load_bracket(path: &Path, gamma: Option<&Path>) -> Result<(SuperAlgebra, Bracket)> {
    let file: BracketFile = read_json(path)?;
    let g = match (gamma, &file.over) {
        (Some(g), _) => load_algebra(g)?,
        (None, Some(Over::Path(p))) => {
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            load_algebra(&resolve(&base, p))?
        }
        (None, Some(Over::Inline(a))) => a.to_algebra()?,
        (None, None) => bail!("{} has no \"over\" algebra; pass --gamma", path.display()),
    };
    let br = file
        .to_bracket(&g)
        .with_context(|| format!("loading {}", path.display()))?;
    Ok((g, br))
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub delta: String,
    pub parity: String,
    pub space_dim: usize,
    pub trivial_dim: usize,
    pub nontrivial_dim: usize,
    pub flagged: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Results {
    pub dims: BTreeMap<String, usize>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub witnesses: Vec<String>,
    /// Nontrivial coset generators as row-major matrices of scalar strings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Results,
    pub timing_ms: u64,
}

impl ReportFile {
    pub fn all_pass(&self) -> bool {
        self.results.verdicts.values().all(|v| *v == Verdict::Pass)
    }
}
