//! Text syntax for boxes, partitions and rationals, and the JSON records for
//! classes, oracle tables and expansion reports.
//!
//! Rationals are always written `p/q`, including integers (`1/1`).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{ClassExpansion, Mode};
use crate::partitions::{BoxSize, BoxedPartition};
use crate::ring::HomologyClass;
use crate::symbolic::{Monomial, OracleTable, SymbolicScalar, UnknownSymbol, VarietyKey};
use crate::Q;

fn syntax(input: &str, message: impl Into<String>) -> Error {
    Error::Syntax { input: input.to_string(), message: message.into() }
}

pub fn format_rational(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| syntax(text, "expected an integer or p/q"));
    match t.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (int(p)?, int(q)?);
            if q.is_zero() {
                return Err(syntax(text, "zero denominator"));
            }
            Ok(Q::new(p, q))
        }
        None => Ok(Q::from_integer(int(t)?)),
    }
}

/// `"MxK"`.
pub fn parse_box(text: &str) -> Result<BoxSize> {
    let t = text.trim();
    let (m, k) = t.split_once(['x', 'X']).ok_or_else(|| syntax(text, "expected MxK"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| syntax(text, "box sizes must be nonnegative integers"));
    Ok(BoxSize::new(num(m)?, num(k)?))
}

/// Comma-separated parts; `-` or the empty string is the empty list.
pub fn parse_parts(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    if t.is_empty() || t == "-" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| syntax(text, format!("bad part {:?}", p.trim()))))
        .collect()
}

/// `"3,2,1 @ 3x3"` or `"- @ 2x2"`.
pub fn parse_partition(text: &str) -> Result<BoxedPartition> {
    let (parts, bx) = text.split_once('@').ok_or_else(|| syntax(text, "expected \"parts @ MxK\""))?;
    BoxedPartition::new(&parse_parts(parts)?, parse_box(bx)?)
}

fn parts_text(a: &BoxedPartition) -> String {
    if a.parts().is_empty() {
        return "-".to_string();
    }
    a.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// `"3,2,1@3x3"`, used inside variety keys.
pub fn compact_partition(a: &BoxedPartition) -> String {
    format!("{}@{}", parts_text(a), a.bx())
}

pub fn parse_variety_key(text: &str) -> Result<VarietyKey> {
    if let Some(rest) = text.strip_prefix("schubert:") {
        return Ok(VarietyKey::Schubert(parse_partition(rest)?));
    }
    if let Some(rest) = text.strip_prefix("named:") {
        if rest.is_empty() {
            return Err(syntax(text, "empty variety name"));
        }
        return Ok(VarietyKey::Named(rest.to_string()));
    }
    Err(syntax(text, "expected schubert:<partition> or named:<name>"))
}

/// Attaches a record location to errors raised while decoding a field.
fn at<T>(location: impl Fn() -> String, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse { location: location(), message: e.to_string() })
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { location: format!("line {} column {}", e.line(), e.column()), message: e.to_string() }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntegralRecord {
    box1: String,
    box2: String,
    b1: String,
    b2: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenusRecord {
    variety: String,
    box2: String,
    a2: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RestrictionRecord {
    ambient: String,
    cycle: String,
    degree: usize,
    target: Option<String>,
    value: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OracleFile {
    #[serde(default)]
    integrals: Vec<IntegralRecord>,
    #[serde(default)]
    genera: Vec<GenusRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    restrictions: Vec<RestrictionRecord>,
}

fn boxed(parts: &str, bx: &str) -> Result<BoxedPartition> {
    BoxedPartition::new(&parse_parts(parts)?, parse_box(bx)?)
}

pub fn parse_oracle(text: &str) -> Result<OracleTable> {
    let file: OracleFile = serde_json::from_str(text).map_err(json_error)?;
    let mut table = OracleTable::new();
    let mut put = |location: String, s: UnknownSymbol, v: Q| match table.insert(s.clone(), v.clone()) {
        Some(old) if old != v => Err(Error::Parse { location, message: format!("conflicting values for {s}") }),
        _ => Ok(()),
    };
    for (i, r) in file.integrals.iter().enumerate() {
        let loc = |f: &str| format!("integrals[{i}].{f}");
        let b1 = at(|| loc("b1"), boxed(&r.b1, &r.box1))?;
        let b2 = at(|| loc("b2"), boxed(&r.b2, &r.box2))?;
        let v = at(|| loc("value"), parse_rational(&r.value))?;
        put(format!("integrals[{i}]"), UnknownSymbol::integral(b1, b2), v)?;
    }
    for (i, r) in file.genera.iter().enumerate() {
        let loc = |f: &str| format!("genera[{i}].{f}");
        let variety = at(|| loc("variety"), parse_variety_key(&r.variety))?;
        let a2 = at(|| loc("a2"), boxed(&r.a2, &r.box2))?;
        let v = at(|| loc("value"), parse_rational(&r.value))?;
        put(format!("genera[{i}]"), UnknownSymbol::genus(variety, a2), v)?;
    }
    for (i, r) in file.restrictions.iter().enumerate() {
        let loc = |f: &str| format!("restrictions[{i}].{f}");
        let ambient = at(|| loc("ambient"), parse_partition(&r.ambient))?;
        let cycle = at(|| loc("cycle"), parse_partition(&r.cycle))?;
        let target = match &r.target {
            Some(t) => Some(at(|| loc("target"), parse_partition(t))?),
            None => None,
        };
        let v = at(|| loc("value"), parse_rational(&r.value))?;
        put(format!("restrictions[{i}]"), UnknownSymbol::restriction(ambient, cycle, r.degree, target), v)?;
    }
    Ok(table)
}

pub fn oracle_to_json(table: &OracleTable) -> String {
    let mut file = OracleFile::default();
    for (s, v) in table.iter() {
        let value = format_rational(v);
        match s {
            UnknownSymbol::Integral { b1, b2 } => file.integrals.push(IntegralRecord {
                box1: b1.bx().to_string(),
                box2: b2.bx().to_string(),
                b1: parts_text(b1),
                b2: parts_text(b2),
                value,
            }),
            UnknownSymbol::Genus { variety, a2 } => file.genera.push(GenusRecord {
                variety: variety.to_string(),
                box2: a2.bx().to_string(),
                a2: parts_text(a2),
                value,
            }),
            UnknownSymbol::Restriction { ambient, cycle, degree, target } => file.restrictions.push(RestrictionRecord {
                ambient: ambient.to_string(),
                cycle: cycle.to_string(),
                degree: *degree,
                target: target.as_ref().map(|t| t.to_string()),
                value,
            }),
        }
    }
    serde_json::to_string_pretty(&file).expect("oracle records serialize") + "\n"
}

pub fn load_oracle(path: &Path) -> Result<OracleTable> {
    parse_oracle(&read(path)?)
}

pub fn save_oracle(table: &OracleTable, path: &Path) -> Result<()> {
    write_file(path, &oracle_to_json(table))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SymbolRecord {
    Integral { box1: String, box2: String, b1: String, b2: String },
    Genus { variety: String, box2: String, a2: String },
    Restriction { ambient: String, cycle: String, degree: usize, target: Option<String> },
}

impl SymbolRecord {
    pub fn from_symbol(s: &UnknownSymbol) -> Self {
        match s {
            UnknownSymbol::Integral { b1, b2 } => SymbolRecord::Integral {
                box1: b1.bx().to_string(),
                box2: b2.bx().to_string(),
                b1: parts_text(b1),
                b2: parts_text(b2),
            },
            UnknownSymbol::Genus { variety, a2 } => SymbolRecord::Genus {
                variety: variety.to_string(),
                box2: a2.bx().to_string(),
                a2: parts_text(a2),
            },
            UnknownSymbol::Restriction { ambient, cycle, degree, target } => SymbolRecord::Restriction {
                ambient: ambient.to_string(),
                cycle: cycle.to_string(),
                degree: *degree,
                target: target.as_ref().map(|t| t.to_string()),
            },
        }
    }

    pub fn to_symbol(&self) -> Result<UnknownSymbol> {
        Ok(match self {
            SymbolRecord::Integral { box1, box2, b1, b2 } => UnknownSymbol::integral(boxed(b1, box1)?, boxed(b2, box2)?),
            SymbolRecord::Genus { variety, box2, a2 } => UnknownSymbol::genus(parse_variety_key(variety)?, boxed(a2, box2)?),
            SymbolRecord::Restriction { ambient, cycle, degree, target } => UnknownSymbol::restriction(
                parse_partition(ambient)?,
                parse_partition(cycle)?,
                *degree,
                target.as_deref().map(parse_partition).transpose()?,
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerRecord {
    pub symbol: SymbolRecord,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coefficient: String,
    pub monomial: Vec<PowerRecord>,
}

pub fn scalar_records(s: &SymbolicScalar) -> Vec<TermRecord> {
    s.terms()
        .map(|(m, c)| TermRecord {
            coefficient: format_rational(c),
            monomial: m
                .powers()
                .iter()
                .map(|(s, e)| PowerRecord { symbol: SymbolRecord::from_symbol(s), power: *e })
                .collect(),
        })
        .collect()
}

pub fn scalar_from_records(records: &[TermRecord]) -> Result<SymbolicScalar> {
    let mut out = SymbolicScalar::zero();
    for t in records {
        let powers = t
            .monomial
            .iter()
            .map(|p| p.symbol.to_symbol().map(|s| (s, p.power)))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(Monomial::from_powers(powers), parse_rational(&t.coefficient)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTermRecord {
    pub partition: String,
    pub coefficient: String,
}

/// Terms in descending lexicographic order.
pub fn class_records(c: &HomologyClass) -> Vec<ClassTermRecord> {
    c.terms()
        .map(|(a, v)| ClassTermRecord { partition: a.to_string(), coefficient: format_rational(v) })
        .collect()
}

pub fn class_from_records(space: BoxSize, records: &[ClassTermRecord]) -> Result<HomologyClass> {
    let terms = records
        .iter()
        .map(|r| Ok((parse_partition(&r.partition)?, parse_rational(&r.coefficient)?)))
        .collect::<Result<Vec<_>>>()?;
    HomologyClass::from_terms(space, terms)
}

pub fn class_to_json(c: &HomologyClass) -> String {
    serde_json::to_string_pretty(&class_records(c)).expect("class records serialize")
}

/// The canonical content of an expansion, as written to and read from disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub variety: VarietyKey,
    pub bx: BoxSize,
    pub dim: usize,
    pub mode: Mode,
    pub coefficients: BTreeMap<BoxedPartition, SymbolicScalar>,
    pub genus_expressions: BTreeMap<BoxedPartition, SymbolicScalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientRecord {
    partition: String,
    text: String,
    value: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus_expression: Option<Vec<TermRecord>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename = "expansion", deny_unknown_fields)]
struct ReportFile {
    variety: String,
    #[serde(rename = "box")]
    bx: String,
    dim: usize,
    mode: String,
    coefficients: Vec<CoefficientRecord>,
    unresolved: Vec<SymbolRecord>,
}

impl ExpansionReport {
    pub fn from_expansion(e: &ClassExpansion) -> Self {
        ExpansionReport {
            variety: e.variety.key(),
            bx: e.variety.bx(),
            dim: e.variety.dim(),
            mode: e.mode,
            coefficients: e.coefficients.clone(),
            genus_expressions: e.genus_expressions.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let symbols: std::collections::BTreeSet<UnknownSymbol> = self
            .coefficients
            .values()
            .chain(self.genus_expressions.values())
            .flat_map(SymbolicScalar::symbols)
            .collect();
        let file = ReportFile {
            variety: self.variety.to_string(),
            bx: self.bx.to_string(),
            dim: self.dim,
            mode: mode_name(self.mode).to_string(),
            coefficients: self
                .coefficients
                .iter()
                .rev()
                .map(|(a, c)| CoefficientRecord {
                    partition: a.to_string(),
                    text: c.to_string(),
                    value: scalar_records(c),
                    genus_expression: self.genus_expressions.get(a).map(scalar_records),
                })
                .collect(),
            unresolved: symbols.iter().map(SymbolRecord::from_symbol).collect(),
        };
        serde_json::to_string_pretty(&file).expect("report records serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ReportFile = serde_json::from_str(text).map_err(json_error)?;
        let mut coefficients = BTreeMap::new();
        let mut genus_expressions = BTreeMap::new();
        for (i, r) in file.coefficients.iter().enumerate() {
            let loc = |f: &str| format!("coefficients[{i}].{f}");
            let a = at(|| loc("partition"), parse_partition(&r.partition))?;
            coefficients.insert(a.clone(), at(|| loc("value"), scalar_from_records(&r.value))?);
            if let Some(g) = &r.genus_expression {
                genus_expressions.insert(a, at(|| loc("genus_expression"), scalar_from_records(g))?);
            }
        }
        Ok(ExpansionReport {
            variety: at(|| "variety".into(), parse_variety_key(&file.variety))?,
            bx: at(|| "box".into(), parse_box(&file.bx))?,
            dim: file.dim,
            mode: at(|| "mode".into(), parse_mode(&file.mode))?,
            coefficients,
            genus_expressions,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_json())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Shallow => "shallow",
        Mode::Deep => "deep",
    }
}

pub fn parse_mode(text: &str) -> Result<Mode> {
    match text {
        "shallow" => Ok(Mode::Shallow),
        "deep" => Ok(Mode::Deep),
        _ => Err(syntax(text, "expected shallow or deep")),
    }
}
