use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use superdelta::analysis::{
    bracket_simple_certificate, classify, is_jordan_bracket, is_poisson_bracket, lemma_suite,
    BracketCheck, MapParity, SimplicityCertificate,
};
use superdelta::constructions::{
    b12, b42, b_mn, cheng_kac, grassmann, h3, kantor_double, poisson_grassmann, truncated_poly,
    vector_bracket, Derivation, TruncatedPoly,
};
use superdelta::linalg::Matrix;
use superdelta::scalar::parse_scalar;
use superdelta::superalgebra::{envelope, plus, verify_superidentity, SuperAlgebra, SuperIdentity};
use superdelta::FieldDesc;

use crate::files::{
    load_algebra, load_bracket, parse_field, save_algebra, write_json, BracketFile, Over,
    ReportFile, Results, ScanRow, Verdict,
};

#[derive(Debug, Parser)]
#[command(name = "superdelta", version, about = "Exact δ-superderivations of Jordan superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named algebra and write it as JSON.
    Build(BuildArgs),
    /// Run a structural check; exit 1 if it fails.
    Check(CheckArgs),
    /// Solve for δ-(super)derivations and split off the trivial part.
    Derive(DeriveArgs),
    /// Tabulate δ-(super)derivation dimensions over several δ.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildName {
    Grassmann,
    Bmn,
    KantorDouble,
    VectorType,
    PoissonDouble,
    ChengKac,
    B12,
    B42,
    #[value(name = "h3-b12")]
    H3B12,
    #[value(name = "h3-b42")]
    H3B42,
    Plus,
    Envelope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivationChoice {
    /// Σ_k (a_1…a_{k-1})^{p-1} ∂_k, with one-dimensional kernel.
    Special,
    /// ∂/∂a_1.
    Partial,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub name: BuildName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    /// `Q` or `F<p>`.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, value_enum, default_value = "special")]
    pub derivation: DerivationChoice,
    /// Input algebra for `plus` and `envelope`.
    #[arg(long)]
    pub from: Option<PathBuf>,
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    #[arg(long)]
    pub bracket: Option<PathBuf>,
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Supercomm,
    Assoc,
    Jordan,
    Alternative,
    BracketJordan,
    Poisson,
    Simple,
    Lemmas,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub kind: CheckKind,
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    #[arg(long)]
    pub bracket: Option<PathBuf>,
    /// Seed for the invariant-subspace search of `simple`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
    Any,
}

impl From<ParityArg> for MapParity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => MapParity::Even,
            ParityArg::Odd => MapParity::Odd,
            ParityArg::Any => MapParity::Any,
        }
    }
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Scalar such as `1/2`, `3` or `-1`, read in the algebra's field.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Comma-separated δ values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub deltas: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["even", "odd", "any"])]
    pub parity: Vec<ParityArg>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

/// A finished command: its report and where (if anywhere) to save it.
pub struct Outcome {
    pub report: ReportFile,
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let start = Instant::now();
    let (mut report, out) = match cli.command {
        Command::Build(a) => (build(&a)?, None),
        Command::Check(a) => {
            let out = a.out.clone();
            (check(&a)?, out)
        }
        Command::Derive(a) => {
            let out = a.out.clone();
            (derive(&a)?, out)
        }
        Command::Scan(a) => {
            let out = a.out.clone();
            (scan(&a)?, out)
        }
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    if let Some(path) = &out {
        write_json(path, &report)?;
    }
    Ok(Outcome { report, out })
}

fn report(command: &str, inputs: BTreeMap<String, String>, results: Results) -> ReportFile {
    ReportFile {
        command: command.to_string(),
        inputs,
        results,
        timing_ms: 0,
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, name: BuildName) -> Result<T> {
    v.ok_or_else(|| anyhow!("build {}: --{flag} is required", name_of(name)))
}

fn name_of(n: BuildName) -> String {
    n.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn truncated(m: usize, p: u64, which: DerivationChoice) -> Result<(TruncatedPoly, Derivation)> {
    let b = truncated_poly(m, p)?;
    let d = match which {
        DerivationChoice::Special => b.special_derivation()?,
        DerivationChoice::Partial => b.partial_derivative(1)?,
    };
    Ok((b, d))
}

/// `dir/stem.json` becomes `dir/stem.<tag>.json`.
fn sibling(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    out.with_file_name(format!("{stem}.{tag}.json"))
}

fn file_name(p: &Path) -> String {
    p.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_string()
}

fn field_or(a: &BuildArgs, default: FieldDesc) -> Result<FieldDesc> {
    a.field.as_deref().map(parse_field).transpose().map(|f| f.unwrap_or(default))
}

fn char3(a: &BuildArgs) -> Result<FieldDesc> {
    match (a.p, &a.field) {
        (Some(p), _) => Ok(FieldDesc::prime(p)?),
        (None, _) => field_or(a, FieldDesc::prime(3)?),
    }
}

fn build(a: &BuildArgs) -> Result<ReportFile> {
    let mut inputs = BTreeMap::new();
    inputs.insert("name".to_string(), name_of(a.name));
    for (k, v) in [("n", a.n), ("m", a.m)] {
        if let Some(v) = v {
            inputs.insert(k.to_string(), v.to_string());
        }
    }
    if let Some(p) = a.p {
        inputs.insert("p".into(), p.to_string());
    }
    if let Some(f) = &a.field {
        inputs.insert("field".into(), f.clone());
    }
    let mut written = vec![a.out.clone()];
    // Writes Γ and its bracket next to the main output.
    let mut write_pair = |g: &SuperAlgebra, br: &superdelta::constructions::Bracket| -> Result<()> {
        let gp = sibling(&a.out, "gamma");
        let bp = sibling(&a.out, "bracket");
        save_algebra(&gp, g)?;
        write_json(&bp, &BracketFile::new(br, Over::Path(file_name(&gp))))?;
        written.push(gp);
        written.push(bp);
        Ok(())
    };
    let alg = match a.name {
        BuildName::Grassmann => {
            let n = need(a.n, "n", a.name)?;
            if n > superdelta::constructions::MAX_GRASSMANN_GENERATORS {
                bail!("G({n}) is too large");
            }
            grassmann(n, field_or(a, FieldDesc::Rationals)?)
        }
        BuildName::Bmn => b_mn(need(a.m, "m", a.name)?, need(a.n, "n", a.name)?, need(a.p, "p", a.name)?)?,
        BuildName::VectorType => {
            let (b, d) = truncated(need(a.m, "m", a.name)?, need(a.p, "p", a.name)?, a.derivation)?;
            let br = vector_bracket(b.algebra(), &d)?;
            write_pair(b.algebra(), &br)?;
            kantor_double(b.algebra(), &br)?
        }
        BuildName::PoissonDouble => {
            let n = need(a.n, "n", a.name)?;
            let br = poisson_grassmann(n, field_or(a, FieldDesc::Rationals)?)?;
            write_pair(br.gamma(), &br)?;
            kantor_double(br.gamma(), &br)?
        }
        BuildName::KantorDouble => {
            let bp = a.bracket.as_deref().ok_or_else(|| anyhow!("build kantor-double: --bracket is required"))?;
            let (g, br) = load_bracket(bp, a.gamma.as_deref())?;
            kantor_double(&g, &br)?
        }
        BuildName::ChengKac => {
            let (b, d) = truncated(need(a.m, "m", a.name)?, need(a.p, "p", a.name)?, a.derivation)?;
            cheng_kac(b.algebra(), &d)?
        }
        BuildName::B12 => b12(char3(a)?)?.0,
        BuildName::B42 => b42(char3(a)?)?.0,
        BuildName::H3B12 => {
            let (b, s) = b12(char3(a)?)?;
            h3(&b, &s)?
        }
        BuildName::H3B42 => {
            let (b, s) = b42(char3(a)?)?;
            h3(&b, &s)?
        }
        BuildName::Plus => {
            let from = a.from.as_deref().ok_or_else(|| anyhow!("build plus: --from is required"))?;
            plus(&load_algebra(from)?)?
        }
        BuildName::Envelope => {
            let from = a.from.as_deref().ok_or_else(|| anyhow!("build envelope: --from is required"))?;
            let n = need(a.n, "n", a.name)?;
            if n > superdelta::constructions::MAX_GRASSMANN_GENERATORS {
                bail!("G({n}) is too large");
            }
            envelope(&load_algebra(from)?, n)?
        }
    };
    save_algebra(&a.out, &alg)?;
    let mut results = Results::default();
    results.dims.insert("dim".into(), alg.dim());
    results.dims.insert("even_dim".into(), alg.even_dim());
    results.dims.insert("odd_dim".into(), alg.odd_dim());
    results.witnesses = written.iter().map(|p| format!("wrote {}", p.display())).collect();
    Ok(report("build", inputs, results))
}

fn bracket_verdict(results: &mut Results, key: &str, c: BracketCheck) {
    results
        .verdicts
        .insert(key.into(), if c.holds { Verdict::Pass } else { Verdict::Fail });
    if let Some(w) = c.witness {
        results.witnesses.push(w.to_string());
    }
}

fn check(a: &CheckArgs) -> Result<ReportFile> {
    let kind = a.kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut inputs = BTreeMap::new();
    for (k, v) in [("algebra", &a.algebra), ("gamma", &a.gamma), ("bracket", &a.bracket)] {
        if let Some(v) = v {
            inputs.insert(k.to_string(), v.display().to_string());
        }
    }
    let mut results = Results::default();
    let identity = match a.kind {
        CheckKind::Supercomm => None,
        CheckKind::Assoc => Some(SuperIdentity::Associative),
        CheckKind::Jordan => Some(SuperIdentity::SupercommutativeJordan),
        CheckKind::Alternative => Some(SuperIdentity::Alternative),
        _ => {
            let bp = a
                .bracket
                .as_deref()
                .ok_or_else(|| anyhow!("check {kind}: --bracket is required"))?;
            let (g, br) = load_bracket(bp, a.gamma.as_deref())?;
            results.dims.insert("dim".into(), g.dim());
            match a.kind {
                CheckKind::BracketJordan => bracket_verdict(&mut results, "jordan bracket", is_jordan_bracket(&g, &br)?),
                CheckKind::Poisson => bracket_verdict(&mut results, "poisson bracket", is_poisson_bracket(&g, &br)?),
                CheckKind::Simple => {
                    inputs.insert("seed".into(), a.seed.to_string());
                    let cert = bracket_simple_certificate(&g, &br, a.seed)?;
                    let v = match &cert {
                        SimplicityCertificate::Simple { closure_dim } => {
                            results.dims.insert("closure_dim".into(), *closure_dim);
                            Verdict::Pass
                        }
                        SimplicityCertificate::NotSimple { witness } => {
                            results.dims.insert("invariant_subspace_dim".into(), witness.dim());
                            for v in witness.vectors() {
                                let e = g.element(v.clone())?;
                                results.witnesses.push(format!("invariant subspace contains {}", g.format(&e)));
                            }
                            Verdict::Fail
                        }
                        SimplicityCertificate::Unknown { closure_dim } => {
                            results.dims.insert("closure_dim".into(), *closure_dim);
                            Verdict::Unknown
                        }
                    };
                    results.verdicts.insert("simple".into(), v);
                }
                CheckKind::Lemmas => {
                    let r = lemma_suite(&g, &br)?;
                    for c in r.checks {
                        results
                            .verdicts
                            .insert(c.name.into(), if c.holds { Verdict::Pass } else { Verdict::Fail });
                        if let Some(w) = c.witness {
                            results.witnesses.push(format!("{}: {w}", c.name));
                        }
                    }
                }
                _ => unreachable!("algebra checks handled above"),
            }
            return Ok(report(&format!("check {kind}"), inputs, results));
        }
    };
    let ap = a
        .algebra
        .as_deref()
        .ok_or_else(|| anyhow!("check {kind}: --algebra is required"))?;
    let alg = load_algebra(ap)?;
    results.dims.insert("dim".into(), alg.dim());
    match identity {
        None => {
            let bad = alg.supercommutativity_violation();
            results.verdicts.insert(
                "supercommutative".into(),
                if bad.is_none() { Verdict::Pass } else { Verdict::Fail },
            );
            if let Some((i, j)) = bad {
                results
                    .witnesses
                    .push(format!("supercommutativity fails at ({}, {})", alg.name(i), alg.name(j)));
            }
        }
        Some(id) => {
            let r = verify_superidentity(&alg, id)?;
            results
                .verdicts
                .insert(id.to_string(), if r.holds { Verdict::Pass } else { Verdict::Fail });
            if let Some(w) = r.witness {
                results.witnesses.push(w.to_string());
            }
        }
    }
    Ok(report(&format!("check {kind}"), inputs, results))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|s| s.to_string()).collect())
        .collect()
}

fn derive(a: &DeriveArgs) -> Result<ReportFile> {
    let alg = load_algebra(&a.algebra)?;
    let delta = parse_scalar(&a.delta, alg.field()).with_context(|| format!("δ = `{}`", a.delta))?;
    let parity: MapParity = a.parity.into();
    let rep = classify(&alg, &delta, parity)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("algebra".into(), a.algebra.display().to_string());
    inputs.insert("delta".into(), delta.to_string());
    inputs.insert("parity".into(), parity.to_string());
    let mut results = Results::default();
    results.dims.insert("space_dim".into(), rep.space_dim);
    results.dims.insert("trivial_dim".into(), rep.trivial_dim);
    results.dims.insert("nontrivial_dim".into(), rep.nontrivial_dim);
    results.generators = rep.nontrivial_generators.iter().map(matrix_strings).collect();
    Ok(report("derive", inputs, results))
}

fn scan(a: &ScanArgs) -> Result<ReportFile> {
    let alg = load_algebra(&a.algebra)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("algebra".into(), a.algebra.display().to_string());
    inputs.insert("deltas".into(), a.deltas.join(","));
    let mut results = Results::default();
    for text in &a.deltas {
        let delta = parse_scalar(text, alg.field()).with_context(|| format!("δ = `{text}`"))?;
        for p in &a.parity {
            let parity: MapParity = (*p).into();
            let rep = classify(&alg, &delta, parity)?;
            results.rows.push(ScanRow {
                delta: delta.to_string(),
                parity: parity.to_string(),
                space_dim: rep.space_dim,
                trivial_dim: rep.trivial_dim,
                nontrivial_dim: rep.nontrivial_dim,
                flagged: rep.nontrivial_dim > 0,
            });
        }
    }
    results.dims.insert("dim".into(), alg.dim());
    results.dims.insert(
        "flagged_rows".into(),
        results.rows.iter().filter(|r| r.flagged).count(),
    );
    Ok(report("scan", inputs, results))
}

/// Human-readable rendering of a report.
pub fn summary(r: &ReportFile) -> String {
    let mut out = format!("{}\n", r.command);
    for (k, v) in &r.inputs {
        out += &format!("  {k}: {v}\n");
    }
    for (k, v) in &r.results.dims {
        out += &format!("  {k} = {v}\n");
    }
    for (k, v) in &r.results.verdicts {
        let v = serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out += &format!("  {k}: {v}\n");
    }
    if !r.results.rows.is_empty() {
        out += "  delta  parity  space  trivial  nontrivial\n";
        for row in &r.results.rows {
            out += &format!(
                "  {:<6} {:<7} {:>5} {:>8} {:>11}{}\n",
                row.delta,
                row.parity,
                row.space_dim,
                row.trivial_dim,
                row.nontrivial_dim,
                if row.flagged { "  *" } else { "" }
            );
        }
    }
    for w in &r.results.witnesses {
        out += &format!("  {w}\n");
    }
    out
}
