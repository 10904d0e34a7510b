use std::path::{Path, PathBuf};
use std::sync::Arc;

use ainfty::ainfty::{check_all_higher_associativity, check_all_morphism, check_balanced, compose as compose_morphisms};
use ainfty::coalgebra::{oracle_diff as diff_paths, oracle_transfer, OracleDiff, BRIDGE};
use ainfty::io::{check_json, component_entries, emit_json, graded_map_json, AlgebraSpecFile, Flags, MorphismFile, TransferReportFile};
use ainfty::retract::build_retract;
use ainfty::transfer::{formality as formality_of, transfer as run_transfer, Formality, TransferResult};
use ainfty::{fixtures, lemmas, properties, AInftyAlgebra, CheckReport};
use serde_json::{json, Value};

use crate::input::{self, Source};
use crate::{Common, Failure};

/// A named batch of checks with its JSON form.
struct Group {
    name: String,
    reports: Vec<CheckReport>,
}

impl Group {
    fn new(name: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        Group {
            name: name.into(),
            reports,
        }
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    fn tuples(&self) -> usize {
        self.reports.iter().map(|r| r.tuples_checked).sum()
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "tuples_checked": self.tuples(),
            "checks": self.reports.iter().map(check_json).collect::<Vec<_>>(),
        })
    }

    fn print(&self) {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        eprintln!("{tag}  {}  ({} checks, {} tuples)", self.name, self.reports.len(), self.tuples());
        if let Some(r) = self.reports.iter().find(|r| !r.passed()) {
            eprintln!("      {}", r.summary());
            if let Some(v) = r.violations.first() {
                eprintln!("      first violation on {}: {}", v.input.join(" ⊗ "), v.residual);
            }
        }
    }
}

fn emit(common: &Common, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = emit_json(value);
    match &common.report {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn retract_and_transfer(alg: AInftyAlgebra, cap: usize) -> Result<TransferResult, Failure> {
    let alg = Arc::new(alg);
    let retract = Arc::new(build_retract(&alg.space, &alg.differential())?);
    Ok(run_transfer(&alg, &retract, cap)?)
}

fn formality_json(f: &Formality) -> Value {
    json!({
        "higher_operations_vanish": f.higher_vanish(),
        "nonzero_arities": f.nonzero_arities,
        "balanced": f.is_balanced(),
        "formal": f.is_formal(),
        "witness": f.witness.as_ref().map(|(n, input, value)| json!({"arity": n, "input": input, "value": value})),
    })
}

fn diff_json(d: &OracleDiff) -> Value {
    json!({
        "zero": d.is_zero(),
        "convention": d.convention(),
        "bridge": BRIDGE,
        "arities": d.arities.iter().map(|a| json!({
            "arity": a.arity,
            "m": a.m,
            "i": a.i,
            "p": a.p,
            "m_without_bridge": a.m_without_bridge,
        })).collect::<Vec<_>>(),
    })
}

fn oracle_for(t: &TransferResult) -> Result<OracleDiff, Failure> {
    let source = t.projection.source.clone();
    let o = oracle_transfer(&source, &t.retract, t.minimal.cap)?;
    Ok(diff_paths(t, &o)?)
}

pub fn check(common: &Common, file: Option<PathBuf>) -> Result<(), Failure> {
    let source = Source::pick(common, file)?;
    if let Source::File(path) = &source {
        let text = input::read(path)?;
        if input::is_morphism_file(&text) {
            return check_morphism(common, &source, &text);
        }
    }
    let (alg, spec) = input::algebra(common, &source)?;
    let mut groups = vec![Group::new(format!("structure relations (n ≤ {})", alg.cap), check_all_higher_associativity(&alg)?)];
    if spec.flags.is_commutative_expected {
        groups.push(Group::new("balanced on shuffles", check_balanced(&alg)?));
    }
    finish_checks(common, "check", &source, &alg, groups)
}

fn check_morphism(common: &Common, source: &Source, text: &str) -> Result<(), Failure> {
    let f = input::morphism_from_text(common, text)?;
    let groups = vec![
        Group::new("source structure relations", check_all_higher_associativity(&f.source)?),
        Group::new("target structure relations", check_all_higher_associativity(&f.target)?),
        Group::new(format!("morphism relations (n ≤ {})", f.cap), check_all_morphism(&f)?),
    ];
    finish_checks(common, "check", source, &f.source, groups)
}

fn finish_checks(common: &Common, command: &str, source: &Source, alg: &AInftyAlgebra, groups: Vec<Group>) -> Result<(), Failure> {
    groups.iter().for_each(Group::print);
    let passed = groups.iter().all(Group::passed);
    emit(
        common,
        &json!({
            "command": command,
            "input": source.label(),
            "field": alg.field.tag(),
            "cap": alg.cap,
            "passed": passed,
            "groups": groups.iter().map(Group::json).collect::<Vec<_>>(),
        }),
    )?;
    verdict(passed)
}

pub fn transfer(common: &Common, file: Option<PathBuf>, with_oracle: bool) -> Result<(), Failure> {
    let source = Source::pick(common, file)?;
    let (alg, _) = input::algebra(common, &source)?;
    let cap = alg.cap;
    let t = retract_and_transfer(alg, cap)?;
    let r = &t.retract;
    let retract_report = r.verify()?;
    let groups = [Group::new("minimal model structure relations", check_all_higher_associativity(&t.minimal)?),
        Group::new("i is a morphism", check_all_morphism(&t.inclusion)?),
        Group::new("p is a morphism", check_all_morphism(&t.projection)?)];
    eprintln!("{}  retract identities", if retract_report.all() { "PASS" } else { "FAIL" });
    groups.iter().for_each(Group::print);
    let diff = if with_oracle { Some(oracle_for(&t)?) } else { None };
    if let Some(d) = &diff {
        eprintln!("{}  coalgebra cross-check  (convention: {})", if d.is_zero() { "PASS" } else { "FAIL" }, d.convention());
    }
    let formal = formality_of(&t)?;
    eprintln!("formal: {}", formal.is_formal());
    let passed = retract_report.all() && groups.iter().all(Group::passed) && diff.as_ref().is_none_or(OracleDiff::is_zero);

    let flags = Flags {
        is_dga: false,
        is_commutative_expected: formal.is_balanced(),
    };
    let report = TransferReportFile {
        source: source.label(),
        method: t.method.to_string(),
        cap,
        betti: r.betti().into_iter().map(|(d, b)| (d.to_string(), b)).collect(),
        minimal: AlgebraSpecFile::from_algebra(&t.minimal, flags),
        inclusion: component_entries(&t.inclusion),
        projection: component_entries(&t.projection),
        retract: json!({
            "p": graded_map_json(&r.p),
            "i": graded_map_json(&r.i),
            "h": graded_map_json(&r.h),
            "identities_hold": retract_report.all(),
        }),
        verification: groups.iter().map(Group::json).collect(),
        oracle_diff: diff.as_ref().map(diff_json),
        formality: formality_json(&formal),
    };
    emit(common, &report)?;
    verdict(passed)
}

pub fn oracle_diff(common: &Common, file: Option<PathBuf>) -> Result<(), Failure> {
    let source = Source::pick(common, file)?;
    let (alg, _) = input::algebra(common, &source)?;
    let cap = alg.cap;
    let t = retract_and_transfer(alg, cap)?;
    let d = oracle_for(&t)?;
    for a in &d.arities {
        eprintln!("n = {}: m {}, i {}, p {}", a.arity, a.m, a.i, a.p);
    }
    eprintln!("{}  difference is zero  (convention: {})", if d.is_zero() { "PASS" } else { "FAIL" }, d.convention());
    emit(
        common,
        &json!({
            "command": "oracle-diff",
            "input": source.label(),
            "cap": cap,
            "passed": d.is_zero(),
            "diff": diff_json(&d),
        }),
    )?;
    verdict(d.is_zero())
}

pub fn formality(common: &Common, file: Option<PathBuf>) -> Result<(), Failure> {
    let source = Source::pick(common, file)?;
    let (alg, _) = input::algebra(common, &source)?;
    let cap = alg.cap;
    let t = retract_and_transfer(alg, cap)?;
    let f = formality_of(&t)?;
    let mut out = formality_json(&f);
    if let Some((n, input, value)) = &f.witness {
        eprintln!("m'_{n}({}) = {value}", input.join(", "));
        let o = oracle_transfer(&t.projection.source, &t.retract, cap)?;
        out["witness"]["confirmed_by_oracle"] = json!(o.minimal.m(*n) == t.minimal.m(*n));
    }
    eprintln!(
        "higher operations vanish: {}, balanced: {}, formal: {}",
        f.higher_vanish(),
        f.is_balanced(),
        f.is_formal()
    );
    emit(
        common,
        &json!({
            "command": "formality",
            "input": source.label(),
            "cap": cap,
            "formality": out,
        }),
    )?;
    verdict(f.is_formal())
}

pub fn compose(common: &Common, first: &Path, second: &Path) -> Result<(), Failure> {
    let f = input::morphism(common, first)?;
    let g = input::morphism(common, second)?;
    let gf = compose_morphisms(&f, &g)?;
    let group = Group::new(format!("composite is a morphism (n ≤ {})", gf.cap), check_all_morphism(&gf)?);
    group.print();
    emit(
        common,
        &json!({
            "command": "compose",
            "passed": group.passed(),
            "composite": MorphismFile::from_morphism(&gf),
            "verification": group.json(),
        }),
    )?;
    verdict(group.passed())
}

pub fn props(common: &Common) -> Result<(), Failure> {
    let seed = common.seed.unwrap_or(0);
    let cap = common.cap.unwrap_or(4);
    let groups = [Group::new("composition of 50 random pairs", properties::composition_pairs(seed, 50, cap)?),
        Group::new("associativity on 10 random triples", properties::composition_associativity(seed, 10, cap)?),
        Group::new("inverses of 20 random morphisms", properties::inverses(seed, 20, cap)?),
        Group::new("technical identities", lemmas::run_all(seed, cap)?)];
    groups.iter().for_each(Group::print);
    let passed = groups.iter().all(Group::passed);
    emit(
        common,
        &json!({
            "command": "props",
            "seed": seed,
            "cap": cap,
            "passed": passed,
            "groups": groups.iter().map(Group::json).collect::<Vec<_>>(),
        }),
    )?;
    verdict(passed)
}

pub fn fixtures_list(common: &Common) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for name in fixtures::NAMES {
        let spec = fixtures::spec_file(name)?;
        eprintln!("{name:<20} {:<6} dim {}", spec.field, spec.basis.len());
        rows.push(json!({
            "name": name,
            "field": spec.field,
            "dim": spec.basis.len(),
            "is_dga": spec.flags.is_dga,
            "is_commutative_expected": spec.flags.is_commutative_expected,
        }));
    }
    emit(common, &rows)
}

pub fn fixtures_export(common: &Common, name: Option<String>, out: Option<PathBuf>) -> Result<(), Failure> {
    let names: Vec<String> = match &name {
        Some(n) => vec![n.clone()],
        None => fixtures::NAMES.iter().map(|s| s.to_string()).collect(),
    };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            for n in &names {
                let path = dir.join(format!("{n}.json"));
                std::fs::write(&path, emit_json(&fixtures::spec_file(n)?))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        None => match name {
            Some(n) => emit(common, &fixtures::spec_file(&n)?),
            None => Err(Failure::Input("name a fixture, or pass --out <dir> to export all of them".into())),
        },
    }
}
