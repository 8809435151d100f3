//! `formality` — command-line front end for the exact-arithmetic engine:
//! loads algebra description files, builds Hodge homotopies, transfers to
//! minimal C∞-structures, and verifies theorem certificates.
//!
//! Exit codes: 0 all assertions passed; 1 an assertion failed; 2 input
//! error; 3 a requested theorem was not applicable.

use clap::{Parser, Subcommand, ValueEnum};
use formality_core::certify::{certify, Certificate, TheoremId, Verdict};
use formality_core::cinfty::{check_shuffle_vanishing, check_stasheff, check_unitality, AInftyStructure};
use formality_core::format::{self, AlgebraDescription, LoadedAlgebra};
use formality_core::graded::{Element, GradedVectorSpace};
use formality_core::harrison::{
    harrison_cohomology_dim, solve_formality_obstruction, HochschildCochain,
};
use formality_core::hodge::{construct_hodge_from_metric, validate_hodge, HodgeHomotopy};
use formality_core::multilinear::MultilinearMap;
use num::Zero;
use formality_core::pdgca::{cohomology, validate_pdgca, Pdgca};
use formality_core::transfer::{transfer, transfer_to_cohomology, MinimalCInftyStructure};
use formality_core::{bianchi_massey, verify_harr_to_sym};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_PASS: u8 = 0;
const EXIT_ASSERTION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(
    name = "formality",
    about = "Exact computations on Poincaré DGCAs: Hodge homotopies, C∞ transfer, formality obstructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra axioms (and the homotopy axioms, when present).
    Validate(CommonArgs),
    /// Print Betti numbers and the induced product on cohomology.
    Cohomology(CommonArgs),
    /// Build the degree −1 homotopy and report its harmonic spaces.
    Hodge(CommonArgs),
    /// Transfer to a minimal C∞-structure and print the operation tables.
    Transfer(TransferArgs),
    /// Verify the transferred structure: relations, shuffles, unitality.
    Check(CheckArgs),
    /// Solve dφ₂ = μ₃; print the witness or the infeasibility certificate.
    HarrisonObstruction(CommonArgs),
    /// Compute the Bianchi-Massey tensor and verify the four-term identity.
    BianchiMassey(CommonArgs),
    /// Verify a theorem's hypotheses and conclusions on this algebra.
    Certify(CertifyArgs),
    /// Compare the structures from two metrics; solve the gauge between them.
    CompareHodge(CompareArgs),
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Algebra description file.
    file: PathBuf,
    /// Gram-matrix file for the inner product, or "identity".
    #[arg(long, default_value = "identity")]
    metric: String,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct TransferArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Highest operation arity to compute.
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Highest relation index to verify.
    #[arg(long, default_value_t = 4)]
    max_p: usize,
}

#[derive(clap::Args)]
struct CertifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Theorem id: A2, zhou, miller, cavalcanti, qshape, harr-bm, canonicity.
    #[arg(long)]
    theorem: String,
    /// Vanishing threshold parameter for A2/zhou.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_arity: usize,
    /// Second metric file, required for canonicity.
    #[arg(long)]
    second_metric: Option<String>,
}

#[derive(clap::Args)]
struct CompareArgs {
    /// Algebra description file.
    file: PathBuf,
    /// First metric file, or "identity".
    #[arg(long, default_value = "identity")]
    metric: String,
    /// Second metric file, or "identity".
    #[arg(long)]
    other_metric: String,
    #[arg(long, default_value_t = 6)]
    max_arity: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

struct InputError(String);

fn read_algebra(path: &PathBuf) -> Result<(AlgebraDescription, LoadedAlgebra), InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let desc = format::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let loaded = format::load(&desc).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((desc, loaded))
}

fn metric_from_flag(flag: &str, a: &Pdgca) -> Result<Vec<formality_core::Mat>, InputError> {
    if flag == "identity" {
        return Ok(formality_core::hodge::fixtures::identity_metric(a));
    }
    let text =
        std::fs::read_to_string(flag).map_err(|e| InputError(format!("{flag}: {e}")))?;
    let entries =
        format::parse_metric_file(&text).map_err(|e| InputError(format!("{flag}: {e}")))?;
    format::metric_matrices(&entries, a).map_err(|e| InputError(format!("{flag}: {e}")))
}

/// Builds the homotopy: an explicit `[hodge]` block wins unless a metric
/// file overrides it; otherwise the metric (identity by default).
fn build_hodge(
    loaded: &LoadedAlgebra,
    metric_flag: &str,
) -> Result<HodgeHomotopy, InputError> {
    if metric_flag == "identity" {
        if let Some(dm) = &loaded.dminus {
            return HodgeHomotopy::new(loaded.algebra.clone(), dm.clone())
                .map_err(|e| InputError(format!("explicit homotopy block rejected: {e:?}")));
        }
        if let Some(mats) = &loaded.metric {
            return construct_hodge_from_metric(&loaded.algebra, mats)
                .map_err(|e| InputError(format!("metric block rejected: {e:?}")));
        }
    }
    let mats = metric_from_flag(metric_flag, &loaded.algebra)?;
    construct_hodge_from_metric(&loaded.algebra, &mats)
        .map_err(|e| InputError(format!("metric rejected: {e:?}")))
}

fn fmt_element(space: &GradedVectorSpace, e: &Element) -> String {
    if e.coords.is_empty() {
        return "0".into();
    }
    e.coords
        .iter()
        .map(|(r, c)| format!("{c}*{}", space.name(*r)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn element_json(space: &GradedVectorSpace, e: &Element) -> Value {
    Value::Object(
        e.coords
            .iter()
            .map(|(r, c)| (space.name(*r).to_string(), Value::String(c.to_string())))
            .collect(),
    )
}

fn table_lines(space: &GradedVectorSpace, m: &MultilinearMap) -> Vec<String> {
    m.table
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(key, v)| {
            let args =
                key.iter().map(|&r| space.name(r).to_string()).collect::<Vec<_>>().join(", ");
            format!("m_{}({args}) = {}", m.arity, fmt_element(space, v))
        })
        .collect()
}

fn table_json(space: &GradedVectorSpace, m: &MultilinearMap) -> Value {
    Value::Object(
        m.table
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(key, v)| {
                let args =
                    key.iter().map(|&r| space.name(r).to_string()).collect::<Vec<_>>().join(",");
                (args, element_json(space, v))
            })
            .collect(),
    )
}

fn emit(format: OutputFormat, text: String, machine: Value) {
    match format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Machine => {
            println!("{}", serde_json::to_string_pretty(&machine).expect("serializable"))
        }
    }
}

fn run_validate(args: &CommonArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let report = validate_pdgca(&loaded.algebra);
    let mut lines = vec![format!(
        "algebra {}: {}",
        loaded.algebra.name,
        if report.is_valid() { "valid" } else { "INVALID" }
    )];
    lines.extend(report.violations.iter().map(|v| format!("violation: {v}")));
    let mut hodge_report = None;
    if report.is_valid() {
        if let Some(dm) = &loaded.dminus {
            let hr = validate_hodge(&loaded.algebra, dm);
            lines.push(format!(
                "homotopy block: {}",
                if hr.is_valid() { "valid" } else { "INVALID" }
            ));
            lines.extend(hr.violations.iter().map(|v| format!("violation: {v}")));
            hodge_report = Some(hr);
        }
    }
    let ok = report.is_valid() && hodge_report.as_ref().map_or(true, |r| r.is_valid());
    let machine = json!({
        "command": "validate",
        "algebra": loaded.algebra.name,
        "valid": ok,
        "violations": report.violations,
        "homotopy_violations": hodge_report.map(|r| r.violations).unwrap_or_default(),
    });
    emit(args.format, lines.join("\n") + "\n", machine);
    Ok(if ok { EXIT_PASS } else { EXIT_ASSERTION })
}

fn run_cohomology(args: &CommonArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let ring = match cohomology(&loaded.algebra) {
        Ok(r) => r,
        Err(rep) => {
            return Err(InputError(format!(
                "algebra is not a valid input: {}",
                rep.violations.join("; ")
            )))
        }
    };
    let mut text = format!("algebra {}: betti {:?}\n", loaded.algebra.name, ring.betti);
    for line in table_lines(&ring.space, &ring.product) {
        text.push_str(&line.replacen("m_2", "product", 1));
        text.push('\n');
    }
    let machine = json!({
        "command": "cohomology",
        "algebra": loaded.algebra.name,
        "betti": ring.betti,
        "product": table_json(&ring.space, &ring.product),
    });
    emit(args.format, text, machine);
    Ok(EXIT_PASS)
}

fn run_hodge(args: &CommonArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let h = build_hodge(&loaded, &args.metric)?;
    let space = &h.base.space;
    let n = h.base.top_degree();
    let mut text = format!("algebra {}: homotopy constructed\n", h.base.name);
    let mut entries = Vec::new();
    for r in space.all_refs() {
        let v = h.dminus.apply(&Element::basis(r));
        if !v.is_zero() {
            text.push_str(&format!("dminus({}) = {}\n", space.name(r), fmt_element(space, &v)));
            entries.push((space.name(r).to_string(), element_json(space, &v)));
        }
    }
    let harmonic: Vec<usize> = (0..=n).map(|k| h.harmonic.dim(k as i64)).collect();
    text.push_str(&format!("harmonic dimensions: {harmonic:?}\n"));
    let machine = json!({
        "command": "hodge",
        "algebra": h.base.name,
        "dminus": Value::Object(entries.into_iter().collect()),
        "harmonic_dimensions": harmonic,
    });
    emit(args.format, text, machine);
    Ok(EXIT_PASS)
}

fn transferred(
    loaded: &LoadedAlgebra,
    metric: &str,
    max_arity: usize,
) -> Result<(HodgeHomotopy, formality_core::CohomologyRing, MinimalCInftyStructure), InputError> {
    let h = build_hodge(loaded, metric)?;
    let ring = cohomology(&h.base).map_err(|rep| {
        InputError(format!("algebra is not a valid input: {}", rep.violations.join("; ")))
    })?;
    let s = transfer(&h, max_arity);
    let on_classes = transfer_to_cohomology(&h, &s, &ring);
    Ok((h, ring, on_classes))
}

fn run_transfer(args: &TransferArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.common.file)?;
    let (_, ring, s) = transferred(&loaded, &args.common.metric, args.max_arity)?;
    let mut text = format!("algebra {}: minimal structure up to arity {}\n", loaded.algebra.name, s.max_arity);
    let mut tables = serde_json::Map::new();
    for (k, m) in &s.mults {
        if *k < 2 {
            continue;
        }
        let lines = table_lines(&ring.space, m);
        if lines.is_empty() {
            text.push_str(&format!("m_{k}: 0\n"));
        } else {
            for l in &lines {
                text.push_str(l);
                text.push('\n');
            }
        }
        tables.insert(format!("m_{k}"), table_json(&ring.space, m));
    }
    let machine = json!({
        "command": "transfer",
        "algebra": loaded.algebra.name,
        "max_arity": s.max_arity,
        "operations": Value::Object(tables),
    });
    emit(args.common.format, text, machine);
    Ok(EXIT_PASS)
}

fn run_check(args: &CheckArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.common.file)?;
    let (_, _, s) = transferred(&loaded, &args.common.metric, args.max_arity)?;
    let stasheff = check_stasheff(&AInftyStructure::from_minimal(&s), args.max_p);
    let shuffles = check_shuffle_vanishing(&s, args.max_p);
    let unital = check_unitality(&s);
    let mut text = String::new();
    let mut all = true;
    for (name, rep) in [
        ("relations", &stasheff),
        ("shuffle vanishing", &shuffles),
        ("unitality", &unital),
    ] {
        all &= rep.is_valid();
        text.push_str(&format!("{name}: {}\n", if rep.is_valid() { "pass" } else { "FAIL" }));
        for v in &rep.violations {
            text.push_str(&format!("violation: {v}\n"));
        }
    }
    let machine = json!({
        "command": "check",
        "algebra": loaded.algebra.name,
        "max_arity": args.max_arity,
        "max_p": args.max_p,
        "pass": all,
        "violations": {
            "relations": stasheff.violations,
            "shuffles": shuffles.violations,
            "unitality": unital.violations,
        },
    });
    emit(args.common.format, text, machine);
    Ok(if all { EXIT_PASS } else { EXIT_ASSERTION })
}

fn run_harrison(args: &CommonArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let (_, ring, s) = transferred(&loaded, &args.metric, 3)?;
    let mu3 = HochschildCochain::new(&ring, s.mults[&3].clone());
    let result = solve_formality_obstruction(&ring, &mu3)
        .map_err(|e| InputError(format!("obstruction input rejected: {e}")))?;
    let dims = [(2usize, harrison_cohomology_dim(&ring, 2, -1)), (3, harrison_cohomology_dim(&ring, 3, -1))];
    let mut text = format!(
        "algebra {}: obstruction {}\n",
        loaded.algebra.name,
        if result.solvable { "SOLVABLE" } else { "UNSOLVABLE" }
    );
    for (p, d) in dims {
        text.push_str(&format!("cohomology dimension (p={p}, s=-1): {d}\n"));
    }
    let mut witness_json = Value::Null;
    let mut certificate_json = Value::Null;
    if let Some(w) = &result.witness {
        if w.is_zero() {
            text.push_str("witness: 0\n");
        }
        for (key, v) in &w.map.table {
            let argnames =
                key.iter().map(|&r| ring.space.name(r).to_string()).collect::<Vec<_>>().join(", ");
            text.push_str(&format!("witness: phi2({argnames}) = {}\n", fmt_element(&ring.space, v)));
        }
        witness_json = table_json(&ring.space, &w.map);
    }
    if let Some(c) = &result.certificate {
        let mut entries = Vec::new();
        for (key, coeff) in c.keys.iter().zip(&c.coeffs) {
            if coeff.is_zero() {
                continue;
            }
            let args = key
                .0
                .iter()
                .map(|&r| ring.space.name(r).to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let line = format!("({args}) -> {}: {coeff}", ring.space.name(key.1));
            text.push_str(&format!("certificate: {line}\n"));
            entries.push(Value::String(line));
        }
        certificate_json = Value::Array(entries);
    }
    let machine = json!({
        "command": "harrison-obstruction",
        "algebra": loaded.algebra.name,
        "solvable": result.solvable,
        "cohomology_dimensions": { "2": dims[0].1, "3": dims[1].1 },
        "witness": witness_json,
        "certificate": certificate_json,
    });
    emit(args.format, text, machine);
    Ok(EXIT_PASS)
}

fn run_bianchi_massey(args: &CommonArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let (h, ring, s) = transferred(&loaded, &args.metric, 3)?;
    let tensor = bianchi_massey(&h, &ring);
    let report = verify_harr_to_sym(&tensor, &ring, &s.mults[&3])
        .map_err(|e| InputError(format!("verification rejected: {e}")))?;
    let mut text = format!("algebra {}: tensor entries\n", loaded.algebra.name);
    let mut entries = Vec::new();
    for ((m, m2), v) in &tensor.table {
        let name = |k: &formality_core::bianchi_massey::SymKey| {
            format!("{}⊙{}", ring.space.name(k.0), ring.space.name(k.1))
        };
        let line = format!("Xi({} , {}) = {}", name(m), name(m2), fmt_element(&ring.space, v));
        text.push_str(&line);
        text.push('\n');
        entries.push(Value::String(line));
    }
    if tensor.table.is_empty() {
        text.push_str("Xi = 0\n");
    }
    text.push_str(&format!(
        "restriction to the multiplication kernel: {}\n",
        if tensor.f_is_zero() { "zero" } else { "nonzero" }
    ));
    text.push_str(&format!(
        "four-term identity: {}\n",
        if report.is_valid() { "verified" } else { "FAILED" }
    ));
    for v in &report.violations {
        text.push_str(&format!("violation: {v}\n"));
    }
    let machine = json!({
        "command": "bianchi-massey",
        "algebra": loaded.algebra.name,
        "entries": entries,
        "kernel_restriction_zero": tensor.f_is_zero(),
        "identity_verified": report.is_valid(),
        "violations": report.violations,
    });
    emit(args.format, text, machine);
    Ok(if report.is_valid() { EXIT_PASS } else { EXIT_ASSERTION })
}

fn emit_certificate(cert: &Certificate, format: OutputFormat) -> u8 {
    match format {
        OutputFormat::Text => print!("{}", cert.render_text()),
        OutputFormat::Machine => print!("{}", cert.render_machine()),
    }
    match cert.verdict {
        Verdict::Certified => EXIT_PASS,
        Verdict::Failed => EXIT_ASSERTION,
        Verdict::NotApplicable => EXIT_NOT_APPLICABLE,
    }
}

fn run_certify(args: &CertifyArgs) -> Result<u8, InputError> {
    let theorem: TheoremId = args.theorem.parse().map_err(InputError)?;
    let (_, loaded) = read_algebra(&args.common.file)?;
    let h = build_hodge(&loaded, &args.common.metric)?;
    let second = match (&theorem, &args.second_metric) {
        (TheoremId::Canonicity, Some(flag)) => {
            let mats = metric_from_flag(flag, &loaded.algebra)?;
            Some(
                construct_hodge_from_metric(&loaded.algebra, &mats)
                    .map_err(|e| InputError(format!("second metric rejected: {e:?}")))?,
            )
        }
        (TheoremId::Canonicity, None) => {
            return Err(InputError("theorem canonicity requires --second-metric".into()))
        }
        _ => None,
    };
    let cert = certify(&h, theorem, args.ell, args.max_arity, second.as_ref())
        .map_err(InputError)?;
    Ok(emit_certificate(&cert, args.common.format))
}

fn run_compare(args: &CompareArgs) -> Result<u8, InputError> {
    let (_, loaded) = read_algebra(&args.file)?;
    let mats1 = metric_from_flag(&args.metric, &loaded.algebra)?;
    let h1 = construct_hodge_from_metric(&loaded.algebra, &mats1)
        .map_err(|e| InputError(format!("metric rejected: {e:?}")))?;
    let mats2 = metric_from_flag(&args.other_metric, &loaded.algebra)?;
    let h2 = construct_hodge_from_metric(&loaded.algebra, &mats2)
        .map_err(|e| InputError(format!("other metric rejected: {e:?}")))?;
    let cert = certify(&h1, TheoremId::Canonicity, None, args.max_arity, Some(&h2))
        .map_err(InputError)?;
    Ok(emit_certificate(&cert, args.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => run_validate(a),
        Command::Cohomology(a) => run_cohomology(a),
        Command::Hodge(a) => run_hodge(a),
        Command::Transfer(a) => run_transfer(a),
        Command::Check(a) => run_check(a),
        Command::HarrisonObstruction(a) => run_harrison(a),
        Command::BianchiMassey(a) => run_bianchi_massey(a),
        Command::Certify(a) => run_certify(a),
        Command::CompareHodge(a) => run_compare(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
