//! `operad`: command-line frontend for operad-core.
//!
//! Exit status: 0 success, 1 a checked property is false, 2 usage or
//! parse error, 3 internal error or exhausted budget.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use operad_core::dsl::{self, Format};
use operad_core::exactalg::{parse_rational, Matrix, Rational};
use operad_core::morphisms::{self, TypeMorphism, DEFAULT_MONOMIAL_GUARD};
use operad_core::operatorver::{
    self, Limits, OperatorSpec, VerificationReport, DEFAULT_NESTING_CAP, DEFAULT_STEP_BUDGET,
};
use operad_core::typecore::TypePresentation;
use operad_core::{catalog, duality, products, suite, Error};
use serde_json::{json, Value};

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

/// Write to stdout; a closed pipe (`operad list | head`) ends the process quietly.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(3);
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "operad",
    version,
    about = "Exact computations with binary quadratic operads and their products"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Also print the L and R matrices of every relation.
    #[arg(long, global = true)]
    relation_basis: bool,
    /// Longest operator word allowed while rewriting.
    #[arg(long, global = true, default_value_t = DEFAULT_NESTING_CAP)]
    nesting_cap: usize,
    /// Rewrite steps allowed per relation.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    steps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a presentation.
    Show { r#type: String },
    /// List catalog entries.
    List,
    /// Validate a presentation file or catalog entry.
    Validate { r#type: String },
    /// Square product A □ B.
    Square { a: String, b: String },
    /// Maltese product A ✠ B.
    Maltese { a: String, b: String },
    /// n-th square power of A.
    Power { a: String, n: usize },
    /// Dual operad under the signed pairing.
    Dual { a: String },
    /// Check that the dual of the dual gives back A.
    DoubleDual { a: String },
    /// Dimension 2m² − dim R of the arity-3 component.
    Arity3 { a: String },
    /// Check a generator map from A to B given as JSON.
    CheckMorphism {
        #[arg(long)]
        map: PathBuf,
        a: String,
        b: String,
    },
    /// Signed monomial automorphisms of A.
    AutoGroup {
        a: String,
        /// Permutations only, no sign changes.
        #[arg(long)]
        unsigned: bool,
    },
    /// Check the relations of A □ B on elementary tensors.
    TensorModel { a: String, b: String },
    /// Verify that an operator on an A-algebra induces the predicted product.
    VerifyOperator {
        a: String,
        /// rb, rb0, nijenhuis, leftrb, rightrb or tilderb.
        #[arg(long)]
        law: String,
        /// Weight of rb: `formal` or a rational p/q.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Verify a family of commuting operators.
    VerifyFamily {
        a: String,
        /// Comma-separated laws, e.g. `rb0,rb0`.
        #[arg(long, value_delimiter = ',', required = true)]
        laws: Vec<String>,
        /// Weight of every rb in the family.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Symbolic checks for P̃ = −λ·id − P, Ñ = id − N and the −P̃ construction.
    VerifyLemmas,
    /// The counterexample to duality between the square and maltese products.
    NonDuality,
    /// Run every acceptance check.
    #[command(alias = "suite")]
    PaperSuite {
        /// Run only this check (1 to 9).
        #[arg(long)]
        check: Option<usize>,
    },
    /// Write A in dsl, json or latex format.
    Export {
        a: String,
        #[arg(long, default_value = "dsl")]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    Failed,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Structure(_)
        | Error::Invalid(_)
        | Error::UnknownType { .. }
        | Error::Usage(_)
        | Error::BadExponent
        | Error::Morphism(_)
        | Error::NoSplittingAssociativity => 2,
        Error::Alg(operad_core::exactalg::AlgError::Parse(_)) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Catalog name, or a DSL/JSON file when the argument names one.
fn load(arg: &str) -> Result<TypePresentation, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {arg}: {e}")))?;
        let t = dsl::load_unchecked(&text)?;
        t.ensure_valid()?;
        Ok(t)
    } else {
        catalog::get(arg)
    }
}

fn load_unvalidated(arg: &str) -> Result<TypePresentation, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {arg}: {e}")))?;
        dsl::load_unchecked(&text)
    } else {
        catalog::get(arg)
    }
}

fn print_json(v: &Value) {
    outln!(
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    );
}

fn matrix_text(m: &Matrix<Rational>) -> String {
    m.row_iter()
        .map(|row| {
            format!(
                "      [{}]",
                row.iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn print_presentation(cli: &Cli, t: &TypePresentation) {
    if cli.json {
        print_json(&dsl::to_json_value(t));
        return;
    }
    let report = t.validate();
    outln!(
        "{}: {} generators, {} relations (rank {})",
        t.name(),
        t.dim(),
        t.relations().len(),
        report.rank
    );
    out!("{}", dsl::to_dsl(t));
    if cli.relation_basis {
        outln!("relation basis:");
        for (k, r) in t.relations().iter().enumerate() {
            outln!("  relation {}:", k + 1);
            outln!("    L:\n{}", matrix_text(&r.left));
            outln!("    R:\n{}", matrix_text(&r.right));
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        nesting_cap: cli.nesting_cap,
        step_budget: cli.steps,
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Ok
    } else {
        Verdict::Failed
    }
}

fn print_verification(cli: &Cli, base: &TypePresentation, r: &VerificationReport) -> Verdict {
    if cli.json {
        print_json(&r.to_json(base.generators()));
    } else {
        out!("{}", r.render(base.generators()));
        if cli.relation_basis {
            print_presentation(cli, &r.product);
        }
    }
    verdict(r.all_verified())
}

/// `{"map": {"a": "b", …}}` by label or `{"matrix": [["p/q", …], …]}`
/// with one row per target generator.
fn load_morphism(
    path: &Path,
    a: TypePresentation,
    b: TypePresentation,
) -> Result<TypeMorphism, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let (a, b) = (Arc::new(a), Arc::new(b));
    if let Some(map) = v.get("map").and_then(Value::as_object) {
        let pairs: Vec<(&str, &str)> = map
            .iter()
            .map(|(k, v)| {
                v.as_str()
                    .map(|s| (k.as_str(), s))
                    .ok_or_else(|| Error::Usage(format!("map value for `{k}` must be a label")))
            })
            .collect::<Result<_, _>>()?;
        return TypeMorphism::from_label_map(a, b, &pairs);
    }
    let rows = v.get("matrix").and_then(Value::as_array).ok_or_else(|| {
        Error::Usage("morphism file needs a `map` object or a `matrix` array".into())
    })?;
    let mut data = Vec::new();
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Usage("matrix rows must be arrays".into()))?;
        if row.len() != a.dim() {
            return Err(Error::Usage(format!(
                "matrix rows need {} entries",
                a.dim()
            )));
        }
        for entry in row {
            let s = match entry {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(Error::Usage("matrix entries must be rationals".into())),
            };
            data.push(parse_rational(&s)?);
        }
    }
    let m = Matrix::new(rows.len(), a.dim(), data)?;
    TypeMorphism::new(a, b, m)
}

fn run(cli: &Cli) -> Result<Verdict, Error> {
    match &cli.command {
        Command::Show { r#type } => {
            print_presentation(cli, &load(r#type)?);
            Ok(Verdict::Ok)
        }
        Command::List => {
            let rows: Vec<(String, usize, usize, &str)> = catalog::entries()
                .iter()
                .map(|e| {
                    catalog::get(e.name).map(|t| {
                        (
                            e.name.to_string(),
                            t.dim(),
                            t.relations().len(),
                            e.description,
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            if cli.json {
                print_json(&Value::Array(
                    rows.iter()
                        .map(|(n, m, r, d)| json!({"name": n, "generators": m, "relations": r, "description": d}))
                        .collect(),
                ));
            } else {
                for (n, m, r, d) in rows {
                    outln!("{n:<22} {m:>2} generators {r:>3} relations  {d}");
                }
            }
            Ok(Verdict::Ok)
        }
        Command::Validate { r#type } => {
            let t = load_unvalidated(r#type)?;
            let report = t.validate();
            if cli.json {
                print_json(&json!({
                    "name": report.name,
                    "relations": report.relation_count,
                    "rank": report.rank,
                    "star_nonzero": report.star_nonzero,
                    "star_associative": report.star_associative,
                    "valid": report.valid(),
                }));
            } else {
                out!("{report}");
                if !report.to_string().ends_with('\n') {
                    outln!("");
                }
            }
            Ok(verdict(report.valid()))
        }
        Command::Square { a, b } => {
            print_presentation(cli, &products::square(&load(a)?, &load(b)?)?);
            Ok(Verdict::Ok)
        }
        Command::Maltese { a, b } => {
            print_presentation(cli, &products::maltese(&load(a)?, &load(b)?)?);
            Ok(Verdict::Ok)
        }
        Command::Power { a, n } => {
            print_presentation(cli, &products::power(&load(a)?, *n)?);
            Ok(Verdict::Ok)
        }
        Command::Dual { a } => {
            print_presentation(cli, &duality::dual(&load(a)?)?);
            Ok(Verdict::Ok)
        }
        Command::DoubleDual { a } => {
            let t = load(a)?;
            let ok = duality::double_dual_check(&t)?;
            if cli.json {
                print_json(&json!({"type": t.name(), "double_dual_equal": ok}));
            } else {
                outln!(
                    "{}: dual of the dual {} the relations",
                    t.name(),
                    if ok { "recovers" } else { "does not recover" }
                );
            }
            Ok(verdict(ok))
        }
        Command::Arity3 { a } => {
            let t = load(a)?;
            let d = t.arity3_dimension()?;
            if cli.json {
                print_json(&json!({"type": t.name(), "arity3_dimension": d}));
            } else {
                outln!(
                    "{}: arity-3 dimension {d} = 2·{}² − {}",
                    t.name(),
                    t.dim(),
                    t.space().dim()
                );
            }
            Ok(Verdict::Ok)
        }
        Command::CheckMorphism { map, a, b } => {
            let f = load_morphism(map, load(a)?, load(b)?)?;
            let morphism = f.check_morphism()?;
            let iso = morphism && f.check_isomorphism()?;
            if cli.json {
                let mut v = f.to_json();
                v["morphism"] = json!(morphism);
                v["isomorphism"] = json!(iso);
                print_json(&v);
            } else {
                outln!("{f}");
                outln!("morphism: {morphism}");
                outln!("isomorphism: {iso}");
            }
            Ok(verdict(morphism))
        }
        Command::AutoGroup { a, unsigned } => {
            let t = Arc::new(load(a)?);
            let g = morphisms::monomial_automorphisms(&t, !unsigned, DEFAULT_MONOMIAL_GUARD)?;
            let closed = g.closed_under_composition && g.closed_under_inverse;
            if cli.json {
                print_json(&json!({
                    "type": t.name(),
                    "order": g.order(),
                    "closed": closed,
                    "elements": g.elements.iter().map(TypeMorphism::to_json).collect::<Vec<_>>(),
                }));
            } else {
                outln!(
                    "{}: {} monomial automorphisms, order {}",
                    t.name(),
                    if *unsigned { "unsigned" } else { "signed" },
                    g.order()
                );
                for f in &g.elements {
                    outln!("  {f}");
                }
                outln!("closed under composition and inverse: {closed}");
            }
            Ok(verdict(closed))
        }
        Command::TensorModel { a, b } => {
            let r = products::verify_tensor_model(&load(a)?, &load(b)?)?;
            if cli.json {
                print_json(
                    &json!({"product": r.product, "relations": r.relations, "holds": r.holds()}),
                );
            } else {
                let good = r.relations.iter().filter(|&&b| b).count();
                outln!(
                    "{}: {good}/{} relations factor through the tensor model",
                    r.product,
                    r.relations.len()
                );
            }
            Ok(verdict(r.holds()))
        }
        Command::VerifyOperator { a, law, weight } => {
            let t = load(a)?;
            let spec = OperatorSpec::parse(law, weight.as_deref())?;
            let r = operatorver::verify_operator_theorem(&t, &spec, limits(cli))?;
            Ok(print_verification(cli, &t, &r))
        }
        Command::VerifyFamily { a, laws, weight } => {
            let t = load(a)?;
            let specs = laws
                .iter()
                .map(|l| OperatorSpec::parse(l, weight.as_deref()))
                .collect::<Result<Vec<_>, _>>()?;
            let r = operatorver::verify_commuting_family(&t, &specs, limits(cli))?;
            Ok(print_verification(cli, &t, &r))
        }
        Command::VerifyLemmas => {
            let bases = [catalog::get("associative")?, catalog::get("trialgebra")?];
            let r = operatorver::verify_operator_lemmas(&bases, limits(cli))?;
            if cli.json {
                print_json(&json!({
                    "tilde_rota_baxter_residual_zero": r.tilde_rota_baxter.is_empty(),
                    "tilde_nijenhuis_residual_zero": r.tilde_nijenhuis.is_empty(),
                    "constructions": r.tilde_constructions.iter().zip(&bases).map(|(c, b)| c.to_json(b.generators())).collect::<Vec<_>>(),
                    "holds": r.holds(),
                }));
            } else {
                out!("{r}");
            }
            Ok(verdict(r.holds()))
        }
        Command::NonDuality => {
            let r = duality::non_duality_witness(&catalog::get("dendriform")?)?;
            if cli.json {
                print_json(&json!({
                    "aq_dim": r.aq_dim,
                    "maltese_dim": r.maltese_dim,
                    "inclusion_holds": r.inclusion_holds,
                    "witness": duality::describe_element(&r.witness, &r.labels),
                    "partner": duality::describe_element(&r.partner, &r.labels),
                    "pairing": r.pairing.to_string(),
                    "confirmed": r.confirmed(),
                }));
            } else {
                outln!("{r}");
            }
            Ok(verdict(r.confirmed()))
        }
        Command::PaperSuite { check } => {
            let results = match check {
                Some(i) => vec![suite::run_check(*i)],
                None => suite::run_all(),
            };
            let mut failed = Vec::new();
            let mut first_error = None;
            let mut out = Vec::new();
            for (k, r) in results.into_iter().enumerate() {
                let index = check.unwrap_or(k + 1);
                match r {
                    Ok(res) => {
                        if !res.passed {
                            failed.push(format!("[{}] {}", res.index, res.title));
                        }
                        if cli.json {
                            out.push(json!({"index": res.index, "title": res.title, "passed": res.passed, "lines": res.lines}));
                        } else {
                            out!("{res}");
                        }
                    }
                    Err(e) => {
                        if let Error::Usage(_) = e {
                            return Err(e);
                        }
                        let title = suite::CHECK_TITLES.get(index - 1).copied().unwrap_or("?");
                        if cli.json {
                            out.push(json!({"index": index, "title": title, "passed": false, "error": e.to_string()}));
                        } else {
                            outln!("[{index}] ERROR {title}: {e}");
                        }
                        first_error.get_or_insert(e);
                    }
                }
            }
            if cli.json {
                print_json(&Value::Array(out));
            } else if failed.is_empty() && first_error.is_none() {
                outln!("all checks passed");
            } else if !failed.is_empty() {
                outln!("failed: {}", failed.join(", "));
            }
            match first_error {
                Some(e) => Err(e),
                None => Ok(verdict(failed.is_empty())),
            }
        }
        Command::Export { a, format, output } => {
            let t = load(a)?;
            let text = dsl::serialize(&t, *format);
            match output {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => out!("{text}"),
            }
            Ok(Verdict::Ok)
        }
    }
}
