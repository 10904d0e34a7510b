//! JSON file formats for algebras, morphisms and reports.
//!
//! Scalars are written as strings (`"a/b"`, or `"a"` when the denominator is
//! one). Output lists are sorted by basis order and maps by key, so emitted
//! files are byte-for-byte reproducible.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ainfty::{check_higher_associativity, AInftyAlgebra, AInftyMorphism, CheckReport};
use crate::error::{Error, Result};
use crate::graded::{BasisElement, GradedMap, GradedSpace, Shape};
use crate::multilinear::MultilinearMap;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub source: String,
    pub target: String,
    pub coeff: String,
}

/// One value of a multilinear operation: `inputs ↦ Σ output[name] · name`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationEntry {
    pub inputs: Vec<String>,
    pub output: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub is_dga: bool,
    #[serde(default)]
    pub is_commutative_expected: bool,
}

/// On-disk description of an A∞-algebra; `m1` is given by `differential`,
/// higher operations by `operations["m2"]`, `operations["m3"]`, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(default)]
    pub name: String,
    pub field: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default)]
    pub operations: BTreeMap<String, Vec<OperationEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default)]
    pub flags: Flags,
}

/// On-disk description of an A∞-morphism with its source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: AlgebraSpecFile,
    pub target: AlgebraSpecFile,
    pub cap: usize,
    pub components: BTreeMap<String, Vec<OperationEntry>>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraSpecFile> {
    from_json(text)
}

pub fn parse_morphism_file(text: &str) -> Result<MorphismFile> {
    from_json(text)
}

fn op_key(prefix: &str, n: usize) -> String {
    format!("{prefix}{n}")
}

fn parse_key(prefix: &str, key: &str) -> Result<usize> {
    key.strip_prefix(prefix)
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::parse(format!("operations.{key}"), format!("expected a key of the form {prefix}<n>")))
}

fn lookup(space: &GradedSpace, name: &str, location: &str) -> Result<u32> {
    space
        .index_of(name)
        .ok_or_else(|| Error::SemanticError(format!("{location}: unknown basis element {name:?}")))
}

fn fill_map(
    map: &mut MultilinearMap,
    entries: &[OperationEntry],
    field: Field,
    location: &str,
) -> Result<()> {
    for (k, e) in entries.iter().enumerate() {
        let loc = format!("{location}[{k}]");
        if e.inputs.len() != map.arity {
            return Err(Error::parse(
                format!("{loc}.inputs"),
                format!("expected {} inputs, found {}", map.arity, e.inputs.len()),
            ));
        }
        let input: Vec<u32> = e
            .inputs
            .iter()
            .map(|n| lookup(&map.source, n, &format!("{loc}.inputs")))
            .collect::<Result<_>>()?;
        for (name, coeff) in &e.output {
            let out = lookup(&map.target, name, &format!("{loc}.output"))?;
            let c = field.parse(coeff).map_err(|err| match err {
                Error::ParseError { message, .. } => Error::parse(format!("{loc}.output.{name}"), message),
                other => other,
            })?;
            map.add_entry(&input, out, c)
                .map_err(|err| Error::SemanticError(format!("{loc}: {err}")))?;
        }
    }
    Ok(())
}

fn entries_of(map: &MultilinearMap) -> Vec<OperationEntry> {
    let shape = map.source_shape();
    map.entries()
        .map(|(idx, v)| OperationEntry {
            inputs: shape.names(idx),
            output: v
                .iter()
                .map(|(o, c)| (map.target.name(o[0]).to_string(), c.to_string()))
                .collect(),
        })
        .collect()
}

impl AlgebraSpecFile {
    pub fn field(&self) -> Result<Field> {
        Field::from_tag(&self.field)
    }

    pub fn space(&self) -> Result<Arc<GradedSpace>> {
        Ok(Arc::new(GradedSpace::new(
            self.basis
                .iter()
                .map(|b| BasisElement {
                    name: b.name.clone(),
                    degree: b.degree,
                })
                .collect(),
        )?))
    }

    /// Highest arity the file determines, when it declares one; otherwise
    /// operations absent from the file are zero at every arity.
    pub fn intrinsic_cap(&self) -> Option<usize> {
        self.cap
    }

    /// Builds the algebra with operations up to `cap`, validating the flags.
    pub fn to_algebra(&self, cap: usize, field_override: Option<Field>) -> Result<AInftyAlgebra> {
        let field = match field_override {
            Some(f) => f,
            None => self.field()?,
        };
        if let Some(c) = self.intrinsic_cap() {
            if cap > c {
                return Err(Error::SemanticError(format!(
                    "requested cap {cap} exceeds the {c} operations defined by the file"
                )));
            }
        }
        let space = self.space()?;
        let mut d = MultilinearMap::zero(&space, &space, 1, -1, field);
        for (k, e) in self.differential.iter().enumerate() {
            let loc = format!("differential[{k}]");
            let s = lookup(&space, &e.source, &format!("{loc}.source"))?;
            let t = lookup(&space, &e.target, &format!("{loc}.target"))?;
            let c = field.parse(&e.coeff).map_err(|err| match err {
                Error::ParseError { message, .. } => Error::parse(format!("{loc}.coeff"), message),
                other => other,
            })?;
            d.add_entry(&[s], t, c)
                .map_err(|err| Error::SemanticError(format!("{loc}: {err}")))?;
        }
        let mut ops = vec![d];
        for n in 2..=cap {
            ops.push(MultilinearMap::zero(&space, &space, n, n as i64 - 2, field));
        }
        for (key, entries) in &self.operations {
            let n = parse_key("m", key)?;
            if n == 1 {
                return Err(Error::parse("operations.m1", "m1 is given by the differential"));
            }
            if self.flags.is_dga && n >= 3 && !entries.is_empty() {
                return Err(Error::NotADgAlgebra(format!("{key} is nonzero")));
            }
            if n > cap {
                continue;
            }
            fill_map(&mut ops[n - 1], entries, field, &format!("operations.{key}"))?;
        }
        let name = if self.name.is_empty() { "algebra".to_string() } else { self.name.clone() };
        let alg = AInftyAlgebra::new(name, space, field, cap.max(1), ops.into_iter().take(cap.max(1)).collect())?;
        if self.flags.is_dga {
            for n in 1..=cap.min(3) {
                let r = check_higher_associativity(&alg, n)?;
                if !r.passed() {
                    let what = ["d∘d = 0", "Leibniz rule", "associativity"][n - 1];
                    return Err(Error::NotADgAlgebra(format!("{what} fails on {:?}", r.violations[0].input)));
                }
            }
        }
        Ok(alg)
    }

    pub fn from_algebra(alg: &AInftyAlgebra, flags: Flags) -> Self {
        let d = alg.m(1);
        let mut differential = Vec::new();
        for (idx, v) in d.entries() {
            for (o, c) in v.iter() {
                differential.push(DifferentialEntry {
                    source: alg.space.name(idx[0]).to_string(),
                    target: alg.space.name(o[0]).to_string(),
                    coeff: c.to_string(),
                });
            }
        }
        let mut operations = BTreeMap::new();
        for n in 2..=alg.cap {
            let m = alg.m(n);
            if !m.is_zero() {
                operations.insert(op_key("m", n), entries_of(&m));
            }
        }
        AlgebraSpecFile {
            name: alg.name.clone(),
            field: alg.field.tag(),
            basis: alg
                .space
                .basis()
                .iter()
                .map(|b| BasisEntry {
                    name: b.name.clone(),
                    degree: b.degree,
                })
                .collect(),
            differential,
            operations,
            cap: if flags.is_dga { None } else { Some(alg.cap) },
            flags,
        }
    }
}

impl MorphismFile {
    pub fn from_morphism(f: &AInftyMorphism) -> Self {
        let flags = |a: &AInftyAlgebra| Flags {
            is_dga: a.is_dga_shaped(),
            is_commutative_expected: false,
        };
        MorphismFile {
            source: AlgebraSpecFile::from_algebra(&f.source, flags(&f.source)),
            target: AlgebraSpecFile::from_algebra(&f.target, flags(&f.target)),
            cap: f.cap,
            components: component_entries(f),
        }
    }

    pub fn to_morphism(&self, field_override: Option<Field>) -> Result<AInftyMorphism> {
        let source = Arc::new(self.source.to_algebra(self.cap, field_override)?);
        let target = Arc::new(self.target.to_algebra(self.cap, field_override)?);
        let field = source.field;
        let mut comps: Vec<MultilinearMap> = (1..=self.cap)
            .map(|n| MultilinearMap::zero(&source.space, &target.space, n, n as i64 - 1, field))
            .collect();
        for (key, entries) in &self.components {
            let n = parse_key("f", key)?;
            if n > self.cap {
                return Err(Error::parse(format!("components.{key}"), "arity exceeds the cap"));
            }
            fill_map(&mut comps[n - 1], entries, field, &format!("components.{key}"))?;
        }
        AInftyMorphism::new(source, target, self.cap, comps)
    }
}

/// Output of `transfer`: the minimal model as a re-ingestible algebra file,
/// the components of `i` and `p`, and what was verified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferReportFile {
    pub source: String,
    pub method: String,
    pub cap: usize,
    pub betti: BTreeMap<String, usize>,
    pub minimal: AlgebraSpecFile,
    pub inclusion: BTreeMap<String, Vec<OperationEntry>>,
    pub projection: BTreeMap<String, Vec<OperationEntry>>,
    pub retract: Value,
    pub verification: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_diff: Option<Value>,
    pub formality: Value,
}

pub fn parse_transfer_report(text: &str) -> Result<TransferReportFile> {
    from_json(text)
}

/// Components `f1`, `f2`, ... of a morphism as file entries, zero ones omitted.
pub fn component_entries(f: &AInftyMorphism) -> BTreeMap<String, Vec<OperationEntry>> {
    (1..=f.cap)
        .filter(|&n| !f.component(n).is_zero())
        .map(|n| (op_key("f", n), entries_of(f.component(n))))
        .collect()
}

pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// JSON form of a check report.
pub fn check_json(r: &CheckReport) -> Value {
    json!({
        "identity": r.identity,
        "arity": r.arity,
        "passed": r.passed(),
        "tuples_checked": r.tuples_checked,
        "violations": r.total_violations,
        "vanishes_for_degree_reasons": r.vanishes_for_degree_reasons,
        "first_violations": r.violations.iter().map(|v| json!({"input": v.input, "residual": v.residual})).collect::<Vec<_>>(),
    })
}

/// JSON listing of the nonzero values of a linear map.
pub fn graded_map_json(m: &GradedMap) -> Value {
    let mut out = serde_json::Map::new();
    for k in 0..m.source.dim() as u32 {
        let col = m.column(k);
        if col.is_zero() {
            continue;
        }
        let v: serde_json::Map<String, Value> = col
            .iter()
            .map(|(o, c)| (m.target.name(o[0]).to_string(), Value::String(c.to_string())))
            .collect();
        out.insert(m.source.name(k).to_string(), Value::Object(v));
    }
    Value::Object(out)
}

/// JSON form of the components of a morphism, keyed `f1`, `f2`, ...
pub fn components_json(f: &AInftyMorphism) -> Value {
    serde_json::to_value(component_entries(f)).expect("serializable")
}

/// Formats a tensor of names for human-readable output.
pub fn format_tuple(shape: &Shape, idx: &[u32]) -> String {
    shape.format_index(idx)
}
