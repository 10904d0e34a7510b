//! Loading algebras and morphisms from files or fixtures.

use std::path::Path;

use ainfty::io::{parse_algebra_file, parse_morphism_file, AlgebraSpecFile, MorphismFile};
use ainfty::{fixtures, AInftyAlgebra, AInftyMorphism, Field};
use serde_json::Value;

use crate::{Common, Failure};

pub const DEFAULT_CAP: usize = 6;

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn field(common: &Common) -> Result<Option<Field>, Failure> {
    common.field.as_deref().map(Field::from_tag).transpose().map_err(Failure::from)
}

/// An explicit cap wins unless the input declares fewer operations, which is an error.
pub fn resolve_cap(requested: Option<usize>, declared: Option<usize>) -> Result<usize, Failure> {
    match (requested, declared) {
        (Some(0), _) => Err(Failure::Input("--cap must be at least 1".into())),
        (Some(n), Some(c)) if n > c => Err(Failure::Input(format!("--cap {n} exceeds the cap {c} declared by the input"))),
        (Some(n), _) => Ok(n),
        (None, Some(c)) => Ok(c.min(DEFAULT_CAP)),
        (None, None) => Ok(DEFAULT_CAP),
    }
}

/// Either a file or `--fixture`, never both.
pub enum Source {
    File(std::path::PathBuf),
    Fixture(String),
}

impl Source {
    pub fn pick(common: &Common, file: Option<std::path::PathBuf>) -> Result<Source, Failure> {
        match (file, &common.fixture) {
            (Some(_), Some(_)) => Err(Failure::Input("give either an input file or --fixture, not both".into())),
            (Some(f), None) => Ok(Source::File(f)),
            (None, Some(name)) => Ok(Source::Fixture(name.clone())),
            (None, None) => Err(Failure::Input("no input: pass a file or --fixture <name>".into())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Fixture(n) => format!("fixture:{n}"),
        }
    }
}

pub fn algebra_spec(source: &Source) -> Result<AlgebraSpecFile, Failure> {
    match source {
        Source::File(p) => Ok(parse_algebra_file(&read(p)?)?),
        Source::Fixture(name) => Ok(fixtures::spec_file(name)?),
    }
}

pub fn algebra(common: &Common, source: &Source) -> Result<(AInftyAlgebra, AlgebraSpecFile), Failure> {
    let spec = algebra_spec(source)?;
    let cap = resolve_cap(common.cap, spec.intrinsic_cap())?;
    let alg = spec.to_algebra(cap, field(common)?)?;
    Ok((alg, spec))
}

pub fn is_morphism_file(text: &str) -> bool {
    serde_json::from_str::<Value>(text).is_ok_and(|v| v.get("components").is_some())
}

pub fn morphism(common: &Common, path: &Path) -> Result<AInftyMorphism, Failure> {
    morphism_from_text(common, &read(path)?)
}

pub fn morphism_from_text(common: &Common, text: &str) -> Result<AInftyMorphism, Failure> {
    let mut file: MorphismFile = parse_morphism_file(text)?;
    let cap = resolve_cap(common.cap, Some(file.cap))?;
    file.cap = cap;
    let too_high: Vec<String> = file
        .components
        .keys()
        .filter(|k| k[1..].parse::<usize>().is_ok_and(|n| n > cap))
        .cloned()
        .collect();
    for k in too_high {
        file.components.remove(&k);
    }
    Ok(file.to_morphism(field(common)?)?)
}
