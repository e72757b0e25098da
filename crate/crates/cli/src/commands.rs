use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use lfd_core::catalog::{self, CatalogEntry, Payload};
use lfd_core::eulerhom::{
    build_saito_pair, gradient_minor_identity, strong_euler_check_with, symn_basis, symn_catalog_check,
    verify_lqh_witness, LqhWitness, LqhWitnessJson,
};
use lfd_core::liecoh::{compare_betti, is_reductive, lie_betti_with, structure_constants, GroupTypeDecomp};
use lfd_core::logder::{discriminant_with, verify_lfd_with, VectorFieldBasis};
use lfd_core::minorfam::{minor_table, AuxQuiver};
use lfd_core::poly::groebner::Budget;
use lfd_core::quiverrep::{kac_component_check, QuiverJson, QuiverRep};
use lfd_core::{Error, Exec, MPoly};

use crate::output::{Body, Document, Expectation, Run};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotClosed(..) | Error::Structure(_) => 1,
            Error::Budget(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Ctx {
    pub seed: u64,
    pub trials: usize,
    pub budget: Budget,
    pub exec: Exec,
    pub timings: bool,
}

#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot start {n} worker threads: {e}")))
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> Result<()> {
    Ok(())
}

pub enum Source {
    Catalog(Box<CatalogEntry>),
    File(PathBuf, Value),
}

impl Source {
    fn name(&self) -> String {
        match self {
            Source::Catalog(e) => e.id.to_string(),
            Source::File(p, _) => p.display().to_string(),
        }
    }

    fn entry(&self) -> Option<&CatalogEntry> {
        match self {
            Source::Catalog(e) => Some(e),
            Source::File(..) => None,
        }
    }
}

pub fn load(input: Option<PathBuf>, catalog_id: Option<String>) -> Result<Source> {
    match (input, catalog_id) {
        (_, Some(id)) => Ok(Source::Catalog(Box::new(catalog::lookup(&id)?))),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let v = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{} is not valid JSON: {e}", path.display())))?;
            Ok(Source::File(path, v))
        }
        (None, None) => Err(CliError::usage("give an input file or --catalog")),
    }
}

fn kind_name(e: &CatalogEntry) -> String {
    serde_json::to_value(e.kind())
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn basis_of(src: &Source) -> Result<VectorFieldBasis> {
    match src {
        Source::File(_, v) => Ok(VectorFieldBasis::from_json(v)?),
        Source::Catalog(e) => match &e.payload {
            Payload::Basis(b) => Ok(b.clone()),
            Payload::Quiver(q) => Ok(q.basis()?),
            Payload::SymN(n) => Ok(symn_basis(*n)?),
            Payload::MinorFamily(_) => Err(CliError::usage(format!(
                "`{}` is a minor family; use the `minors` command",
                e.id
            ))),
        },
    }
}

fn single(command: &'static str, ctx: &Ctx, src: &Source, start: Instant, mut run: Run) -> Document {
    run.entry = src.name();
    run.kind = src.entry().map(kind_name);
    if ctx.timings {
        run.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Document {
        command,
        seed: ctx.seed,
        trials: ctx.trials,
        body: Body::Single(run),
    }
}

fn empty_run() -> Run {
    Run {
        entry: String::new(),
        kind: None,
        report: Value::Null,
        expectations: Vec::new(),
        budget_exhausted: false,
        elapsed_ms: None,
    }
}

/// Nonzero scalar `c` with `actual = c·expected`, as a string, if any.
fn multiple_of(actual: &MPoly, expected: &MPoly) -> Option<String> {
    actual
        .is_scalar_multiple(expected)
        .filter(|c| !c.is_zero())
        .map(|c| c.to_string())
}

fn discriminant_expectation(e: &CatalogEntry, delta: &MPoly) -> Result<Option<Expectation>> {
    let Some(want) = e.expected_discriminant()? else {
        return Ok(None);
    };
    let label = match e.expected.discriminant.as_deref() {
        Some(t) if t.len() <= 80 => t.to_string(),
        _ => "expected polynomial".to_string(),
    };
    Ok(Some(Expectation::new(
        format!("discriminant is a nonzero multiple of {label}"),
        true,
        multiple_of(delta, &want).is_some(),
    )))
}

fn verify_run(ctx: &Ctx, src: &Source) -> Result<Run> {
    let b = basis_of(src)?;
    let rep = verify_lfd_with(&b, ctx.trials, ctx.seed, ctx.exec)?;
    let mut run = empty_run();
    if let Some(e) = src.entry() {
        if let Some(want) = e.expected.is_lfd {
            run.expectations.push(Expectation::new("is_lfd", want, rep.is_lfd));
        }
        let delta = discriminant_with(&b, ctx.exec);
        run.expectations.extend(discriminant_expectation(e, &delta)?);
    }
    run.report = serde_json::to_value(&rep).expect("serializable");
    Ok(run)
}

pub fn verify(ctx: &Ctx, src: &Source) -> Result<Document> {
    let start = Instant::now();
    let run = verify_run(ctx, src)?;
    Ok(single("verify", ctx, src, start, run))
}

fn cohomology_run(ctx: &Ctx, src: &Source, group: Option<GroupTypeDecomp>) -> Result<Run> {
    let b = basis_of(src)?;
    let p = structure_constants(&b)?;
    let betti = lie_betti_with(&p, ctx.exec)?;
    let reductive = is_reductive(&p);
    let entry = src.entry();
    let group = group.or_else(|| entry.and_then(|e| e.expected.group.clone()));
    let glct = group.as_ref().map(|g| compare_betti(betti.clone(), g));
    let mut run = empty_run();
    if let Some(e) = entry {
        if let Some(want) = e.expected.reductive {
            run.expectations.push(Expectation::new("reductive", want, reductive));
        }
        if let Some(want) = &e.expected.lie_betti {
            run.expectations.push(Expectation::new("lie_betti", want, &betti));
        }
        if let Some(g) = &glct {
            run.expectations.push(Expectation::new(format!("GLCT holds for {}", g.group), true, g.holds));
        }
    }
    run.report = json!({
        "dim": p.dim(),
        "lie_betti": betti,
        "reductive": reductive,
        "glct": glct,
    });
    Ok(run)
}

pub fn cohomology(ctx: &Ctx, src: &Source, group: Option<GroupTypeDecomp>) -> Result<Document> {
    let start = Instant::now();
    let run = cohomology_run(ctx, src, group)?;
    Ok(single("cohomology", ctx, src, start, run))
}

fn quiver_of(src: &Source) -> Result<QuiverRep> {
    match src {
        Source::File(_, v) => {
            let q: QuiverJson = serde_json::from_value(v.clone())
                .map_err(|e| CliError::usage(format!("not a quiver description: {e}")))?;
            Ok(QuiverRep::from_json(&q)?)
        }
        Source::Catalog(e) => match &e.payload {
            Payload::Quiver(q) => Ok(q.clone()),
            _ => Err(CliError::usage(format!("`{}` is not a quiver entry", e.id))),
        },
    }
}

fn quiver_run(ctx: &Ctx, src: &Source) -> Result<Run> {
    let rep = quiver_of(src)?;
    let defect = rep.tits_defect();
    let mut run = empty_run();
    let mut report = json!({
        "nodes": rep.quiver.nodes().len(),
        "rep_dim": rep.rep_dim(),
        "tits_defect": defect,
    });
    if defect != 1 {
        report["note"] = json!("the group does not act with a scalar kernel of dimension one; no discriminant");
        run.report = report;
        return Ok(run);
    }
    let b = rep.basis()?;
    let lfd = verify_lfd_with(&b, ctx.trials, ctx.seed, ctx.exec)?;
    let delta = lfd.discriminant.to_poly()?;
    let kac = if rep.dims.contains(&0) {
        None
    } else {
        Some(kac_component_check(&rep)?)
    };
    if let Some(e) = src.entry() {
        if let Some(want) = e.expected.is_lfd {
            run.expectations.push(Expectation::new("is_lfd", want, lfd.is_lfd));
        }
        run.expectations.extend(discriminant_expectation(e, &delta)?);
        if let Some(f) = e.expected_square_factor()? {
            let divides = !delta.is_zero() && delta.divide_exact(&f.pow(2))?.is_some();
            report["square_factor_divides"] = json!(divides);
            run.expectations
                .push(Expectation::new("square of the expected factor divides the discriminant", true, divides));
        }
        if let Some(want) = e.expected.kac_h1 {
            run.expectations
                .push(Expectation::new("h1", want, kac.as_ref().map(|k| k.h1_rank)));
        }
    }
    report["lfd"] = serde_json::to_value(&lfd).expect("serializable");
    report["kac"] = json!(kac);
    run.report = report;
    Ok(run)
}

pub fn quiver(ctx: &Ctx, src: &Source) -> Result<Document> {
    let start = Instant::now();
    let run = quiver_run(ctx, src)?;
    Ok(single("quiver", ctx, src, start, run))
}

fn minor_rows(src: &Source) -> Result<Vec<AuxQuiver>> {
    match src {
        Source::File(_, v) => {
            let rows = match v.get("rows") {
                Some(r) => serde_json::from_value(r.clone()),
                None => serde_json::from_value(v.clone()).map(|a: AuxQuiver| vec![a]),
            };
            rows.map_err(|e| CliError::usage(format!("not a minor family description: {e}")))
        }
        Source::Catalog(e) => match &e.payload {
            Payload::MinorFamily(rows) => Ok(rows.clone()),
            _ => Err(CliError::usage(format!("`{}` is not a minor family", e.id))),
        },
    }
}

fn minors_run(ctx: &Ctx, src: &Source) -> Result<Run> {
    let rows = minor_rows(src)?;
    let reports = minor_table(&rows, ctx.trials, ctx.seed, ctx.exec)?;
    let mut run = empty_run();
    if let Some(e) = src.entry() {
        for (i, r) in reports.iter().enumerate() {
            if let Some(want) = e.expected.minor_verdicts.get(i) {
                run.expectations
                    .push(Expectation::new(format!("row {} verdict", i + 1), want, r.verdict));
            }
            if let Some(want) = e.expected.admissible.get(i) {
                let mut got = r.admissible.clone();
                got.sort();
                run.expectations
                    .push(Expectation::new(format!("row {} admissible minors", i + 1), want, got));
            }
        }
    }
    run.report = json!({ "rows": reports });
    Ok(run)
}

pub fn minors(ctx: &Ctx, src: &Source) -> Result<Document> {
    let start = Instant::now();
    let run = minors_run(ctx, src)?;
    Ok(single("minors", ctx, src, start, run))
}

fn read_witness(path: &Path, b: &VectorFieldBasis) -> Result<LqhWitness> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let j: LqhWitnessJson = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{} is not a witness description: {e}", path.display())))?;
    let (ring, w) = LqhWitness::from_json(&j)?;
    if ring != *b.ring() {
        return Err(CliError::usage("witness variables differ from the basis variables"));
    }
    Ok(w)
}

fn euler_run(ctx: &Ctx, src: &Source, witness: Option<&Path>) -> Result<Run> {
    let b = basis_of(src)?;
    let pair = build_saito_pair(&b)?;
    let gradient = gradient_minor_identity(&pair)?;
    let strong = strong_euler_check_with(&pair, &ctx.budget, ctx.exec)?;
    let mut run = empty_run();
    run.budget_exhausted = strong.budget_exhausted;
    let mut witnesses = Vec::new();
    if let Some(e) = src.entry() {
        witnesses.extend(e.witnesses()?.into_iter().map(|w| ("built-in".to_string(), w)));
    }
    if let Some(p) = witness {
        witnesses.push((p.display().to_string(), read_witness(p, &b)?));
    }
    let mut witness_reports = Vec::new();
    for (i, (origin, w)) in witnesses.iter().enumerate() {
        let rep = verify_lqh_witness(&b, w)?;
        run.expectations
            .push(Expectation::new(format!("witness {} ({origin}) verifies", i + 1), true, rep.passed));
        witness_reports.push(json!({
            "source": origin,
            "point": w.point,
            "expected_eigenvalues": w.expected_eigenvalues,
            "result": rep,
        }));
    }
    let mut report = json!({
        "delta": pair.delta.to_string(),
        "gradient_identity": gradient,
        "strong_euler": strong,
        "witnesses": witness_reports,
    });
    if let Some(e) = src.entry() {
        run.expectations.push(Expectation::new("gradient identity", true, gradient));
        if let Some(want) = e.expected.strong_euler {
            run.expectations.push(Expectation::new("strong Euler homogeneity", want, strong.verdict));
        }
        if let Payload::SymN(n) = e.payload {
            let sym = symn_catalog_check(n, ctx.trials, ctx.seed)?;
            run.expectations
                .push(Expectation::new("Sym_n fields and eigenvalues", true, sym.holds));
            report["symn"] = serde_json::to_value(&sym).expect("serializable");
        }
    }
    run.report = report;
    Ok(run)
}

pub fn euler(ctx: &Ctx, src: &Source, witness: Option<&Path>) -> Result<Document> {
    let start = Instant::now();
    let run = euler_run(ctx, src, witness)?;
    Ok(single("euler", ctx, src, start, run))
}

/// Every check that applies to an entry, merged into one run.
fn entry_run(ctx: &Ctx, e: &CatalogEntry) -> Result<Run> {
    let start = Instant::now();
    let src = Source::Catalog(Box::new(e.clone()));
    let parts: Vec<(&str, Run)> = match &e.payload {
        Payload::Basis(_) | Payload::SymN(_) => vec![
            ("verify", verify_run(ctx, &src)?),
            ("cohomology", cohomology_run(ctx, &src, None)?),
            ("euler", euler_run(ctx, &src, None)?),
        ],
        Payload::Quiver(_) => vec![("quiver", quiver_run(ctx, &src)?)],
        Payload::MinorFamily(_) => vec![("minors", minors_run(ctx, &src)?)],
    };
    let mut run = empty_run();
    run.entry = e.id.to_string();
    run.kind = Some(kind_name(e));
    let mut report = serde_json::Map::new();
    for (name, part) in parts {
        run.budget_exhausted |= part.budget_exhausted;
        run.expectations.extend(part.expectations.into_iter().map(|mut x| {
            x.check = format!("{name}: {}", x.check);
            x
        }));
        report.insert(name.to_string(), part.report);
    }
    run.report = Value::Object(report);
    if ctx.timings {
        run.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(run)
}

pub fn catalog(ctx: &Ctx, filter: Option<&str>) -> Result<Document> {
    let entries: Vec<CatalogEntry> = catalog::catalog()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.id.contains(f) || e.aliases.iter().any(|a| a.contains(f))))
        .collect();
    if entries.is_empty() {
        return Err(CliError::usage(format!("no catalog entry matches `{}`", filter.unwrap_or(""))));
    }
    let runs = ctx
        .exec
        .map(&entries, |e| entry_run(ctx, e))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Document {
        command: "catalog",
        seed: ctx.seed,
        trials: ctx.trials,
        body: Body::Batch(runs),
    })
}

pub fn dump() -> Document {
    Document {
        command: "catalog-dump",
        seed: 0,
        trials: 0,
        body: Body::Raw(catalog::dump()),
    }
}
