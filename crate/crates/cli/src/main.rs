use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hhzero::builders::{BuilderError, BuilderSpec, GroupSpec};
use hhzero::characters::{two_character, verify_modular, verify_two_class, DEFAULT_MODULAR_SEED};
use hhzero::crossed::CrossedAlgebra;
use hhzero::hochschild::HochschildBundle;
use hhzero::instance::{parse_instance, serialize_instance, write_compact_pretty, InstanceError, ParseOptions};
use hhzero::{Field, Matrix, Report, Scalar, TwistedBundle};

const EXIT_USAGE: u8 = 1;
const EXIT_AXIOM: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Weak crossed G-algebras on the zeroth Hochschild homology of twisted Frobenius algebras.
#[derive(Parser)]
#[command(name = "hhzero", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Field of scalars, `q` or `gf:<p>`; overrides the field declared in the file.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the sampled SL(2,Z) words.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULAR_SEED)]
    seed: u64,
    /// Load the instance without validating it (for negative testing).
    #[arg(long, global = true)]
    skip_validate: bool,
    /// Include per-check wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every twisted-bundle check.
    Validate { file: PathBuf },
    /// Print the graded dimensions of HH0.
    Hh0 {
        file: PathBuf,
        /// Also print the quotient basis representatives.
        #[arg(long)]
        bases: bool,
    },
    /// Build the crossed algebra and verify every axiom.
    Verify { file: PathBuf },
    /// Print the 2-character table.
    Characters {
        file: PathBuf,
        /// Also verify the class-function and modular identities.
        #[arg(long)]
        check: bool,
    },
    /// Dump the graded product, coproduct and counit.
    Structure { file: PathBuf },
    /// Write a builder instance in the instance format.
    Build {
        family: Family,
        /// Group for `group-algebra`: trivial, klein, cyclic:<n>, symmetric:<n>.
        #[arg(long, default_value = "cyclic:2")]
        group: String,
        /// Variant for `function-algebra` (swap, klein, klein-torsion).
        #[arg(long)]
        preset: Option<String>,
        /// Use the trivial action for `truncated-polynomial`.
        #[arg(long)]
        trivial_action: bool,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    GroupAlgebra,
    FunctionAlgebra,
    MatrixProjective,
    TruncatedPolynomial,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { file } => {
            let bundle = load(file, g, true)?;
            let report = bundle.validate();
            emit_report(g, &report);
            Ok(if report.passed() { 0 } else { EXIT_INVALID })
        }
        Command::Hh0 { file, bases } => hh0(g, &load(file, g, false)?, *bases),
        Command::Verify { file } => verify(g, load(file, g, false)?),
        Command::Characters { file, check } => characters(g, load(file, g, false)?, *check),
        Command::Structure { file } => structure(g, load(file, g, false)?),
        Command::Build { family, group, preset, trivial_action, out } => {
            build(g, *family, group, preset.as_deref(), *trivial_action, out.as_ref())
        }
    }
}

/// Reads and parses an instance; `raw` skips validation so that `validate` can report it.
fn load(path: &PathBuf, g: &Global, raw: bool) -> Result<TwistedBundle, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let opts = ParseOptions { field: g.field, skip_validate: raw || g.skip_validate };
    match parse_instance(&text, &opts) {
        Ok(inst) => Ok(inst.bundle),
        Err(InstanceError::Parse(e)) => Err(Failure::new(EXIT_USAGE, format!("{}: {e}", path.display()))),
        Err(InstanceError::Validation(report)) => {
            let report = finalize(g, *report);
            if g.json {
                print_json(&json!({ "error": "validation", "report": report }));
            } else {
                eprint!("{report}");
            }
            Err(Failure::new(EXIT_INVALID, "instance is not a valid twisted bundle"))
        }
    }
}

fn finalize(g: &Global, report: Report) -> Report {
    if g.timings { report } else { report.without_timings() }
}

fn print_json(v: &Value) {
    let mut out = String::new();
    write_compact_pretty(v, 0, &mut out);
    println!("{out}");
}

fn emit_report(g: &Global, report: &Report) {
    let report = finalize(g, report.clone());
    if g.json {
        print_json(&serde_json::to_value(&report).expect("reports serialize"));
    } else {
        print!("{report}");
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.row_vectors().iter().map(|r| strings(r)).collect::<Vec<_>>())
}

fn build_hh0(bundle: TwistedBundle) -> Result<HochschildBundle, Failure> {
    HochschildBundle::build(bundle).map_err(|e| Failure::new(EXIT_INVALID, format!("cannot construct HH0: {e}")))
}

fn hh0(g: &Global, bundle: &TwistedBundle, bases: bool) -> Outcome {
    let hb = build_hh0(bundle.clone())?;
    let grp = bundle.group();
    if g.json {
        let mut v = json!({ "field": bundle.field().to_string(), "dims": hb.dims(), "total": hb.total_dim() });
        if bases {
            v["bases"] = json!(grp.elements().map(|h| hb.quotient(h).representatives.clone()).collect::<Vec<_>>());
        }
        print_json(&v);
    } else {
        println!("field {}", bundle.field());
        for h in grp.elements() {
            print!("HH0_{h}: dim {}", hb.dim(h));
            if bases {
                let reps: Vec<String> = hb.quotient(h).representatives.iter().map(|i| format!("e{i}")).collect();
                print!("  basis [{}]", reps.join(", "));
            }
            println!();
        }
        println!("total {}", hb.total_dim());
    }
    Ok(0)
}

fn verify(g: &Global, bundle: TwistedBundle) -> Outcome {
    let hb = build_hh0(bundle)?;
    let ca = CrossedAlgebra::from_hh0(hb);
    let report = finalize(g, ca.verify_weak_crossed());
    let sep = ca.separability_unit();
    let sep_report = finalize(g, sep.report.clone());
    if g.json {
        print_json(&json!({
            "report": report,
            "separability": {
                "z": strings(&sep.z),
                "unit": sep.unit.as_deref().map(strings),
                "searched_unit": sep.searched_unit.as_deref().map(strings),
                "diagnostic": sep.diagnostic,
                "report": sep_report,
            }
        }));
    } else {
        print!("{report}");
        print!("{sep_report}");
        println!("  z = [{}]", strings(&sep.z).join(", "));
        match &sep.unit {
            Some(u) => println!("  unit = [{}] (crossed G-algebra)", strings(u).join(", ")),
            None => println!("  no unit: {}", sep.diagnostic.as_deref().unwrap_or("weak crossed G-algebra only")),
        }
    }
    Ok(if report.passed() && sep_report.passed() { 0 } else { EXIT_AXIOM })
}

fn characters(g: &Global, bundle: TwistedBundle, check: bool) -> Outcome {
    let hb = build_hh0(bundle)?;
    let grp = hb.bundle().group().clone();
    let table = two_character(&hb);
    let report = check.then(|| {
        let mut r = verify_two_class(&table, &grp);
        r.subject = "characters".into();
        r.extend(verify_modular(&table, &grp, g.seed));
        finalize(g, r)
    });
    if g.json {
        let entries: Vec<Value> =
            table.entries().map(|(&(a, b), v)| json!({ "g": a, "h": b, "value": v.to_string() })).collect();
        let mut v = json!({ "seed": g.seed, "entries": entries });
        if let Some(r) = &report {
            v["report"] = serde_json::to_value(r).expect("reports serialize");
        }
        print_json(&v);
    } else {
        let cells: Vec<(String, String)> =
            table.entries().map(|(&(a, b), v)| (format!("chi({a},{b})"), v.to_string())).collect();
        let w = cells.iter().map(|c| c.0.len()).max().unwrap_or(0);
        for (k, v) in &cells {
            println!("{k:<w$} = {v}");
        }
        if let Some(r) = &report {
            print!("{r}");
        }
    }
    Ok(match report {
        Some(r) if !r.passed() => EXIT_AXIOM,
        _ => 0,
    })
}

fn structure(g: &Global, bundle: TwistedBundle) -> Outcome {
    let hb = build_hh0(bundle)?;
    let ca = CrossedAlgebra::from_hh0(hb);
    let grp = ca.bundle().group().clone();
    let pairs: Vec<(usize, usize)> =
        grp.elements().flat_map(|a| grp.elements().map(move |b| (a, b))).collect();
    if g.json {
        let maps = |f: &dyn Fn(usize, usize) -> Value| -> Vec<Value> { pairs.iter().map(|&(a, b)| f(a, b)).collect() };
        print_json(&json!({
            "dims": ca.hh0().dims(),
            "counit": strings(ca.counit_vector()),
            "products": maps(&|a, b| json!({ "g": a, "h": b, "matrix": matrix_json(ca.product_matrix(a, b)) })),
            "coproducts": maps(&|a, b| json!({ "g": a, "h": b, "matrix": matrix_json(ca.coproduct_matrix(a, b)) })),
        }));
    } else {
        println!("dims {:?}", ca.hh0().dims());
        println!("counit [{}]", strings(ca.counit_vector()).join(", "));
        for &(a, b) in &pairs {
            println!("m_({a},{b}):");
            print!("{}", ca.product_matrix(a, b));
        }
        for &(a, b) in &pairs {
            println!("delta_({a},{b}):");
            print!("{}", ca.coproduct_matrix(a, b));
        }
    }
    Ok(0)
}

fn build(
    g: &Global,
    family: Family,
    group: &str,
    preset: Option<&str>,
    trivial_action: bool,
    out: Option<&PathBuf>,
) -> Outcome {
    let usage = |m: String| Failure::new(EXIT_USAGE, m);
    let spec = match family {
        Family::GroupAlgebra => {
            BuilderSpec::GroupAlgebra(group.parse::<GroupSpec>().map_err(|e| usage(e.to_string()))?)
        }
        Family::FunctionAlgebra => match preset.unwrap_or("swap") {
            "swap" => BuilderSpec::FunctionSwap,
            "klein" => BuilderSpec::FunctionKlein { twisted: false },
            "klein-torsion" => BuilderSpec::FunctionKlein { twisted: true },
            other => return Err(usage(format!("unknown function-algebra preset {other:?}"))),
        },
        Family::MatrixProjective => match preset.unwrap_or("pauli") {
            "pauli" => BuilderSpec::MatrixPauli,
            other => return Err(usage(format!("unknown matrix-projective preset {other:?}"))),
        },
        Family::TruncatedPolynomial => BuilderSpec::TruncatedPolynomial { sign_action: !trivial_action },
    };
    let field = g.field.unwrap_or(Field::Rationals);
    let bundle = spec.build(field).map_err(|e| match e {
        BuilderError::BadParameter(m) => usage(m),
        other => Failure::new(EXIT_INVALID, other.to_string()),
    })?;
    let text = serialize_instance(&bundle, Some(&spec.name()));
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
