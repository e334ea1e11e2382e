//! Built-in braces, brace names, and the brace and map file formats.
//!
//! Brace names follow a small grammar: `radical_c4`, `trivial:<group>` or
//! `opposite:<group>`, joined by `*` for direct products. Groups are `Cn`,
//! `Dn` (order `2n`), `Sn`, `An` (`n ≤ 5`) joined by `x`.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{validate_skew_brace, BraceError, BraceMapSet, SkewBrace};
use crate::group::{self, cycle_notation, permutation_elements, FiniteGroup, GroupError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot parse name {name:?}: {reason}")]
    BadName { name: String, reason: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("invalid brace: {0}")]
    Brace(#[from] BraceError),
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

type Result<T, E = CatalogError> = std::result::Result<T, E>;

fn bad_name(name: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::BadName {
        name: name.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Trivial,
    Opposite,
    RadicalC4,
    Product,
    File,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDescriptor {
    pub name: String,
    pub order: usize,
    pub construction: Construction,
    pub notes: String,
}

/// A parsed group name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Product(Vec<GroupSpec>),
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl GroupSpec {
    pub fn parse(name: &str) -> Result<Self> {
        let factors: Vec<&str> = name.split('x').collect();
        if factors.len() > 1 {
            let specs = factors
                .iter()
                .map(|f| Self::parse_factor(name, f))
                .collect::<Result<Vec<_>>>()?;
            let spec = GroupSpec::Product(specs);
            spec.checked_order()
                .ok_or_else(|| bad_name(name, format!("order exceeds {MAX_ORDER}")))?;
            return Ok(spec);
        }
        Self::parse_factor(name, name)
    }

    fn parse_factor(name: &str, factor: &str) -> Result<Self> {
        let mut chars = factor.chars();
        let family = chars.next().ok_or_else(|| bad_name(name, "empty group factor"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad_name(
                name,
                format!("expected a number after `{family}` in {factor:?}"),
            ));
        }
        let n: usize = digits
            .parse()
            .map_err(|_| bad_name(name, format!("number out of range in {factor:?}")))?;
        if n == 0 {
            return Err(bad_name(name, "group parameter must be positive"));
        }
        let spec = match family {
            'C' => GroupSpec::Cyclic(n),
            'D' => GroupSpec::Dihedral(n),
            'S' => GroupSpec::Symmetric(n),
            'A' => GroupSpec::Alternating(n),
            other => return Err(bad_name(name, format!("unknown group family `{other}`"))),
        };
        if matches!(spec, GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) if n > 5) {
            return Err(bad_name(name, "permutation groups are limited to degree 5"));
        }
        spec.checked_order()
            .ok_or_else(|| bad_name(name, format!("order exceeds {MAX_ORDER}")))?;
        Ok(spec)
    }

    /// The group order, or `None` beyond the size limit.
    pub fn checked_order(&self) -> Option<usize> {
        let order = match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => n.checked_mul(2)?,
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Alternating(n) => (factorial(*n) / 2).max(1),
            GroupSpec::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.checked_order()?))?,
        };
        (order <= MAX_ORDER).then_some(order)
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        Ok(match self {
            GroupSpec::Cyclic(n) => group::cyclic_group(*n)?,
            GroupSpec::Dihedral(n) => group::dihedral_group(*n)?,
            GroupSpec::Symmetric(n) => group::symmetric_group(*n)?,
            GroupSpec::Alternating(n) => group::alternating_group(*n)?,
            GroupSpec::Product(fs) => {
                let mut groups = fs.iter().map(GroupSpec::build);
                let first = groups.next().expect("products have factors")?;
                groups.try_fold(first, |acc, g| {
                    group::direct_product(&acc, &g?).map_err(CatalogError::from)
                })?
            }
        })
    }

    /// Printable names of the elements, in index order.
    pub fn element_names(&self) -> Vec<String> {
        match self {
            GroupSpec::Cyclic(n) => (0..*n).map(|k| k.to_string()).collect(),
            GroupSpec::Dihedral(n) => (0..2)
                .flat_map(|f| (0..*n).map(move |k| (k, f)))
                .map(|(k, f)| {
                    let r = match k {
                        0 => String::new(),
                        1 => "r".to_string(),
                        k => format!("r^{k}"),
                    };
                    match (r.is_empty(), f) {
                        (true, 0) => "e".to_string(),
                        (_, 0) => r,
                        (_, _) => format!("{r}s"),
                    }
                })
                .collect(),
            GroupSpec::Symmetric(n) => permutation_elements(*n, false)
                .iter()
                .map(|p| cycle_notation(p))
                .collect(),
            GroupSpec::Alternating(n) => permutation_elements(*n, true)
                .iter()
                .map(|p| cycle_notation(p))
                .collect(),
            GroupSpec::Product(fs) => product_names(fs.iter().map(GroupSpec::element_names).collect()),
        }
    }
}

/// Tuples in mixed-radix order, first factor most significant.
fn product_names(factors: Vec<Vec<String>>) -> Vec<String> {
    let mut tuples: Vec<Vec<&str>> = vec![Vec::new()];
    for names in &factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                names.iter().map(move |n| {
                    let mut t = t.clone();
                    t.push(n.as_str());
                    t
                })
            })
            .collect();
    }
    tuples.into_iter().map(|t| format!("({})", t.join(","))).collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Product(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

/// A parsed brace name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BraceSpec {
    Trivial(GroupSpec),
    Opposite(GroupSpec),
    RadicalC4,
    Product(Vec<BraceSpec>),
}

impl BraceSpec {
    pub fn parse(name: &str) -> Result<Self> {
        let factors: Vec<&str> = name.split('*').collect();
        if factors.len() > 1 {
            let specs = factors
                .iter()
                .map(|f| Self::parse_factor(name, f))
                .collect::<Result<Vec<_>>>()?;
            let spec = BraceSpec::Product(specs);
            spec.checked_order()
                .ok_or_else(|| bad_name(name, format!("order exceeds {MAX_ORDER}")))?;
            return Ok(spec);
        }
        Self::parse_factor(name, name)
    }

    fn parse_factor(name: &str, factor: &str) -> Result<Self> {
        if factor == "radical_c4" {
            return Ok(BraceSpec::RadicalC4);
        }
        let (kind, group) = factor.split_once(':').ok_or_else(|| {
            bad_name(
                name,
                format!("expected radical_c4, trivial:<G> or opposite:<G>, got {factor:?}"),
            )
        })?;
        let group = GroupSpec::parse(group).map_err(|e| match e {
            CatalogError::BadName { reason, .. } => bad_name(name, reason),
            other => other,
        })?;
        match kind {
            "trivial" => Ok(BraceSpec::Trivial(group)),
            "opposite" => Ok(BraceSpec::Opposite(group)),
            other => Err(bad_name(name, format!("unknown construction `{other}`"))),
        }
    }

    pub fn checked_order(&self) -> Option<usize> {
        let order = match self {
            BraceSpec::Trivial(g) | BraceSpec::Opposite(g) => g.checked_order()?,
            BraceSpec::RadicalC4 => 4,
            BraceSpec::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.checked_order()?))?,
        };
        (order <= MAX_ORDER).then_some(order)
    }

    pub fn construction(&self) -> Construction {
        match self {
            BraceSpec::Trivial(_) => Construction::Trivial,
            BraceSpec::Opposite(_) => Construction::Opposite,
            BraceSpec::RadicalC4 => Construction::RadicalC4,
            BraceSpec::Product(_) => Construction::Product,
        }
    }

    pub fn build(&self) -> Result<SkewBrace> {
        Ok(match self {
            BraceSpec::Trivial(g) => SkewBrace::trivial(g.build()?),
            BraceSpec::Opposite(g) => SkewBrace::opposite(g.build()?),
            BraceSpec::RadicalC4 => SkewBrace::radical_c4(),
            BraceSpec::Product(fs) => {
                let mut braces = fs.iter().map(BraceSpec::build);
                let first = braces.next().expect("products have factors")?;
                braces.try_fold(first, |acc, b| {
                    SkewBrace::direct_product(&acc, &b?).map_err(CatalogError::from)
                })?
            }
        })
    }

    pub fn element_names(&self) -> Vec<String> {
        match self {
            BraceSpec::Trivial(g) | BraceSpec::Opposite(g) => g.element_names(),
            BraceSpec::RadicalC4 => (0..4).map(|k| k.to_string()).collect(),
            BraceSpec::Product(fs) => product_names(fs.iter().map(BraceSpec::element_names).collect()),
        }
    }

    pub fn notes(&self) -> String {
        match self {
            BraceSpec::Trivial(g) => format!("trivial brace on {g}: a∘b = a·b"),
            BraceSpec::Opposite(g) => format!("opposite brace on {g}: a∘b = b·a"),
            BraceSpec::RadicalC4 => "Z/4 with a·b = a+b, a∘b = a+b+2ab".to_string(),
            BraceSpec::Product(_) => "componentwise direct product".to_string(),
        }
    }

    pub fn descriptor(&self) -> Option<BraceDescriptor> {
        Some(BraceDescriptor {
            name: self.to_string(),
            order: self.checked_order()?,
            construction: self.construction(),
            notes: self.notes(),
        })
    }
}

impl fmt::Display for BraceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraceSpec::Trivial(g) => write!(f, "trivial:{g}"),
            BraceSpec::Opposite(g) => write!(f, "opposite:{g}"),
            BraceSpec::RadicalC4 => f.write_str("radical_c4"),
            BraceSpec::Product(fs) => {
                for (i, b) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{b}")?;
                }
                Ok(())
            }
        }
    }
}

/// A brace together with its description and element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub descriptor: BraceDescriptor,
    pub brace: SkewBrace,
    pub element_names: Vec<String>,
}

impl CatalogEntry {
    pub fn element_name(&self, g: usize) -> &str {
        &self.element_names[g]
    }
}

/// Builds the brace named by `name`.
pub fn resolve_name(name: &str) -> Result<CatalogEntry> {
    let spec = BraceSpec::parse(name)?;
    let brace = spec.build()?;
    Ok(CatalogEntry {
        descriptor: spec.descriptor().expect("order checked while parsing"),
        element_names: spec.element_names(),
        brace,
    })
}

pub const BUILTIN_NAMES: [&str; 14] = [
    "trivial:C2",
    "trivial:C4",
    "trivial:C2xC2",
    "trivial:S3",
    "trivial:D4",
    "trivial:A4",
    "trivial:S4",
    "opposite:S3",
    "opposite:D4",
    "opposite:A4",
    "opposite:S4",
    "radical_c4",
    "radical_c4*radical_c4",
    "radical_c4*trivial:S3",
];

/// The built-in catalog, in a fixed order.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    BUILTIN_NAMES
        .iter()
        .map(|name| resolve_name(name).expect("built-in names are valid"))
        .collect()
}

/// On-disk brace format; tables are row-major with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceDocument {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    pub dot_table: Vec<Vec<usize>>,
    pub circ_table: Vec<Vec<usize>>,
}

impl BraceDocument {
    pub fn from_brace(name: &str, brace: &SkewBrace) -> Self {
        BraceDocument {
            name: name.to_string(),
            order: brace.order(),
            identity: brace.identity(),
            dot_table: brace.dot().rows(),
            circ_table: brace.circ().rows(),
        }
    }

    fn check_table(field: &'static str, order: usize, table: &[Vec<usize>]) -> Result<()> {
        if table.len() != order {
            return Err(CatalogError::Field {
                field,
                message: format!("has {} rows but order is {order}", table.len()),
            });
        }
        if let Some((row, r)) = table.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(CatalogError::Field {
                field,
                message: format!("row {row} has {} entries but order is {order}", r.len()),
            });
        }
        Ok(())
    }

    /// Checks the declared shape, then validates the tables as a brace.
    pub fn into_brace(self) -> Result<CatalogEntry> {
        if self.order == 0 {
            return Err(CatalogError::Field {
                field: "order",
                message: "must be positive".to_string(),
            });
        }
        if self.order > MAX_ORDER {
            return Err(CatalogError::Field {
                field: "order",
                message: format!("{} exceeds the limit of {MAX_ORDER}", self.order),
            });
        }
        if self.identity >= self.order {
            return Err(CatalogError::Field {
                field: "identity",
                message: format!("{} is not below the order {}", self.identity, self.order),
            });
        }
        Self::check_table("dot_table", self.order, &self.dot_table)?;
        Self::check_table("circ_table", self.order, &self.circ_table)?;
        let brace = validate_skew_brace(self.dot_table, self.circ_table, self.identity)?;
        Ok(CatalogEntry {
            descriptor: BraceDescriptor {
                name: self.name,
                order: self.order,
                construction: Construction::File,
                notes: String::new(),
            },
            element_names: (0..self.order).map(|k| k.to_string()).collect(),
            brace,
        })
    }
}

fn syntax(e: serde_json::Error) -> CatalogError {
    CatalogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_brace_document(text: &str) -> Result<BraceDocument> {
    serde_json::from_str(text).map_err(syntax)
}

/// Parses and validates a brace document.
pub fn parse_brace(text: &str) -> Result<CatalogEntry> {
    parse_brace_document(text)?.into_brace()
}

pub fn render_brace(name: &str, brace: &SkewBrace) -> String {
    let mut text = serde_json::to_string_pretty(&BraceDocument::from_brace(name, brace)).expect("plain data");
    text.push('\n');
    text
}

fn io_error(path: &Path, e: std::io::Error) -> CatalogError {
    CatalogError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

pub fn load_brace(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_brace(&text)
}

pub fn save_brace(name: &str, brace: &SkewBrace, path: &Path) -> Result<()> {
    std::fs::write(path, render_brace(name, brace)).map_err(|e| io_error(path, e))
}

/// On-disk morphism format. `source` and `target` are brace names or brace
/// file paths, resolved relative to the map file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub source: String,
    pub target: String,
    pub images: Vec<usize>,
}

pub fn parse_map_document(text: &str) -> Result<MapDocument> {
    serde_json::from_str(text).map_err(syntax)
}

/// A name if it parses as one, otherwise a brace file path.
pub fn resolve(reference: &str, base: Option<&Path>) -> Result<CatalogEntry> {
    match BraceSpec::parse(reference) {
        Ok(spec) => {
            let brace = spec.build()?;
            Ok(CatalogEntry {
                descriptor: spec.descriptor().expect("order checked while parsing"),
                element_names: spec.element_names(),
                brace,
            })
        }
        Err(name_error) => {
            let path = match base {
                Some(dir) => dir.join(reference),
                None => PathBuf::from(reference),
            };
            if path.is_file() {
                load_brace(&path)
            } else {
                Err(name_error)
            }
        }
    }
}

/// A resolved map file: both braces and the validated set map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedMap {
    pub source: CatalogEntry,
    pub target: CatalogEntry,
    pub map: BraceMapSet,
}

pub fn load_map(path: &Path) -> Result<LoadedMap> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let doc = parse_map_document(&text)?;
    let base = path.parent();
    let source = resolve(&doc.source, base)?;
    let target = resolve(&doc.target, base)?;
    if doc.images.len() != source.brace.order() {
        return Err(CatalogError::Field {
            field: "images",
            message: format!(
                "has {} entries but the source has order {}",
                doc.images.len(),
                source.brace.order()
            ),
        });
    }
    let map = BraceMapSet::new(source.brace.clone(), target.brace.clone(), doc.images)?;
    Ok(LoadedMap { source, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let catalog = builtin_catalog();
        assert!(catalog.len() >= 13);
        let mut names: Vec<&str> = catalog.iter().map(|e| e.descriptor.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), catalog.len());
        for entry in &catalog {
            assert_eq!(entry.descriptor.order, entry.brace.order());
            assert_eq!(entry.element_names.len(), entry.brace.order());
            assert!((2..=48).contains(&entry.brace.order()));
        }
        let a4 = catalog.iter().find(|e| e.descriptor.name == "opposite:A4").unwrap();
        assert_eq!(a4.brace.order(), 12);
    }

    #[test]
    fn names_round_trip() {
        for name in BUILTIN_NAMES {
            assert_eq!(BraceSpec::parse(name).unwrap().to_string(), name);
        }
    }

    #[test]
    fn bad_names_are_rejected() {
        for name in [
            "",
            "trivial:",
            "trivial:X3",
            "trivial:S6",
            "trivial:C0",
            "nope",
            "opposite:C99999999999999999999",
            "trivial:C15xC15",
            "radical_c4*",
            "trivial:C2x",
        ] {
            assert!(
                matches!(BraceSpec::parse(name), Err(CatalogError::BadName { .. })),
                "{name}"
            );
        }
    }

    #[test]
    fn element_names() {
        assert_eq!(
            GroupSpec::parse("D3").unwrap().element_names(),
            ["e", "r", "r^2", "s", "rs", "r^2s"]
        );
        assert_eq!(GroupSpec::parse("S3").unwrap().element_names()[1], "(2 3)");
        assert_eq!(
            GroupSpec::parse("C2xC2").unwrap().element_names(),
            ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
        );
    }

    #[test]
    fn document_round_trip() {
        for entry in builtin_catalog() {
            let text = render_brace(&entry.descriptor.name, &entry.brace);
            let back = parse_brace(&text).unwrap();
            assert_eq!(back.brace, entry.brace);
            assert_eq!(back.descriptor.name, entry.descriptor.name);
        }
    }

    #[test]
    fn save_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c4.json");
        save_brace("radical_c4", &SkewBrace::radical_c4(), &path).unwrap();
        assert_eq!(load_brace(&path).unwrap().brace, SkewBrace::radical_c4());
        assert!(matches!(
            load_brace(&dir.path().join("missing.json")),
            Err(CatalogError::Io { .. })
        ));
    }

    #[test]
    fn non_latin_dot_table_names_the_row() {
        let mut doc = BraceDocument::from_brace("bad", &SkewBrace::radical_c4());
        doc.dot_table[2] = vec![2, 2, 0, 1];
        let err = doc.into_brace().unwrap_err();
        assert!(
            matches!(
                err,
                CatalogError::Brace(BraceError::NotAGroup {
                    source: GroupError::RowNotPermutation { row: 2, .. },
                    ..
                })
            ),
            "{err}"
        );
    }

    #[test]
    fn mutated_circ_entry_reports_compatibility() {
        let mut doc = BraceDocument::from_brace("bad", &SkewBrace::radical_c4());
        doc.circ_table[1][1] = 2;
        let err = doc.into_brace().unwrap_err();
        assert!(
            matches!(err, CatalogError::Brace(BraceError::Compatibility { .. })),
            "{err}"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_brace("{\n  \"name\": \"x\",\n  \"order\": oops\n}").unwrap_err();
        assert!(matches!(err, CatalogError::Syntax { line: 3, .. }), "{err}");
        let err = parse_brace(r#"{"name":"x","order":2,"identity":0,"dot_table":[[0,1]],"circ_table":[[0,1],[1,0]]}"#)
            .unwrap_err();
        assert!(matches!(err, CatalogError::Field { field: "dot_table", .. }), "{err}");
    }

    #[test]
    fn map_documents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mod2.json");
        std::fs::write(
            &path,
            r#"{"source":"radical_c4","target":"trivial:C2","images":[0,1,0,1]}"#,
        )
        .unwrap();
        let loaded = load_map(&path).unwrap();
        assert!(loaded.map.is_morphism());
        std::fs::write(&path, r#"{"source":"radical_c4","target":"trivial:C2","images":[0,1]}"#).unwrap();
        assert!(matches!(
            load_map(&path),
            Err(CatalogError::Field { field: "images", .. })
        ));
    }
}
