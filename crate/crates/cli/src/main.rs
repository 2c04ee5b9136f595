use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use critset::arrangement::{Arrangement, WeightVector};
use critset::critical::{self, CriticalOneForm};
use critset::error::{CriticalError, GroebnerError};
use critset::groebner::{Budget, Codimension};
use critset::logmod::{self, Freeness};
use critset::os;
use critset::poly::{parse_polynomial, Ring};
use critset::workbench::{self, FamilySpec, Verdict, VerificationReport, VerifyOptions};
use critset::Ideal;

mod render;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Resonance and critical sets of hyperplane arrangements")]
struct Cli {
    /// Gröbner budget: maximum number of S-pair reductions per computation.
    #[arg(long, global = true, env = "WORKBENCH_BUDGET")]
    budget: Option<u64>,
    /// Seed for generic weights and points.
    #[arg(long, global = true, env = "WORKBENCH_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct Source {
    /// Arrangement JSON document.
    #[arg(short, long, conflicts_with = "catalog")]
    arrangement: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(short, long)]
    catalog: Option<String>,
}

#[derive(Args, Clone)]
struct Weighted {
    #[command(flatten)]
    source: Source,
    /// Comma-separated rationals, e.g. "1,1/2,-3/2".
    #[arg(short, long, allow_hyphen_values = true)]
    weights: String,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in arrangements.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Combinatorial summary: rank, flats, Poincaré polynomial.
    Info(Source),
    /// Betti numbers of the Aomoto complex.
    OsBetti(Weighted),
    /// Minimal generators of the module of logarithmic derivations.
    Derivations {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Saito freeness test.
    FreeCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Degreewise cohomology of the logarithmic forms under the weights.
    LogBetti {
        #[command(flatten)]
        weighted: Weighted,
        /// Total degrees, "lo..hi" (inclusive).
        #[arg(long, default_value = "0..2", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Generators of the logarithmic ideal.
    CriticalIdeal {
        #[command(flatten)]
        source: Source,
        #[arg(short, long, allow_hyphen_values = true, required_unless_present = "universal")]
        weights: Option<String>,
        /// Use indeterminate weights a1..an.
        #[arg(long, conflicts_with = "weights")]
        universal: bool,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Codimension of the critical variety and of its part off the hyperplanes.
    Codim(Weighted),
    /// Check the resonance bound on the codimension for one weight vector.
    Verify {
        #[command(flatten)]
        weighted: Weighted,
        #[arg(long)]
        bound: Option<u32>,
        /// Skip the saturation by the defining polynomial.
        #[arg(long)]
        no_saturate: bool,
    },
    /// Verify over a family of weights.
    Sweep {
        #[command(flatten)]
        source: Source,
        /// Family JSON file.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Re-derive catalog facts and run the catalog suite.
    SelfTest {
        /// Generic weights per catalog entry.
        #[arg(long, default_value_t = 2)]
        generic: usize,
        /// Only re-derive the catalog facts.
        #[arg(long)]
        facts_only: bool,
    },
    /// Operations on ideals read from a file.
    #[command(subcommand)]
    Ideal(IdealCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Codimension and Krull dimension.
    Dim { file: PathBuf },
    /// `(I : f)`.
    Quotient {
        file: PathBuf,
        /// Polynomial in the ring of the file, e.g. "x*y - z".
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// `(I : f^inf)`.
    Saturate {
        file: PathBuf,
        /// Polynomial in the ring of the file, e.g. "x*y - z".
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Number of points with multiplicity of a zero-dimensional ideal.
    Count { file: PathBuf },
    /// Membership of `f` in `I` and in its radical.
    Contains {
        file: PathBuf,
        /// Polynomial in the ring of the file.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

struct Settings {
    budget: Budget,
    seed: u64,
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let ctx = Settings {
        budget: cli.budget.map(Budget::new).unwrap_or_default(),
        seed: cli.seed.unwrap_or(workbench::DEFAULT_SEED),
        format: cli.format,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_budget(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<GroebnerError>(), Some(GroebnerError::BudgetExceeded(_)))
            || matches!(
                c.downcast_ref::<CriticalError>(),
                Some(CriticalError::Groebner(GroebnerError::BudgetExceeded(_)))
            )
    })
}

fn emit(v: &Value) {
    print_text(&serde_json::to_string_pretty(v).expect("json"));
}

/// Writes a line to stdout, exiting quietly when the reader has gone away.
pub(crate) fn print_text(text: &str) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn load(src: &Source) -> Result<(String, Arrangement)> {
    match (&src.arrangement, &src.catalog) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let a = Arrangement::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, a))
        }
        (None, Some(name)) => {
            let e = workbench::lookup(name).ok_or_else(|| anyhow!("no catalog entry `{name}`"))?;
            Ok((e.name, e.arrangement))
        }
        (None, None) => bail!("pass --arrangement FILE or --catalog NAME"),
    }
}

fn derivation_bound(src: &Source, explicit: Option<u32>) -> Option<u32> {
    explicit.or_else(|| src.catalog.as_deref().and_then(workbench::lookup).and_then(|e| e.derivation_bound))
}

fn weights(a: &Arrangement, text: &str) -> Result<WeightVector> {
    let w = WeightVector::parse(text)?;
    a.check_weights(&w)?;
    Ok(w)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|p| p.to_string()).collect()
}

fn run(ctx: &Settings, command: Command) -> Result<u8> {
    match command {
        Command::Catalog(CatalogCommand::List) => {
            let entries = workbench::catalog();
            if ctx.format == Format::Table {
                render::catalog(&entries);
            } else {
                emit(&json!(entries
                    .iter()
                    .map(|e| json!({"name": e.name, "description": e.description}))
                    .collect::<Vec<_>>()));
            }
        }
        Command::Catalog(CatalogCommand::Show { name }) => {
            let e = workbench::lookup(&name).ok_or_else(|| anyhow!("no catalog entry `{name}`"))?;
            let mut v = serde_json::to_value(&e)?;
            v["arrangement"] = serde_json::to_value(e.arrangement.to_document())?;
            v["forms"] = json!(strings(e.arrangement.forms()));
            emit(&v);
        }
        Command::Info(src) => {
            let (name, a) = load(&src)?;
            let p = os::poincare_and_euler(&a)?;
            let mut flats = vec![0usize; a.rank() + 1];
            for f in a.flats(a.rank()) {
                flats[f.rank] += 1;
            }
            emit(&json!({
                "name": name,
                "variables": a.dim(),
                "hyperplanes": a.len(),
                "forms": strings(a.forms()),
                "central": a.is_central(),
                "rank": a.rank(),
                "essential": a.is_essential(),
                "irreducible": a.is_irreducible().ok(),
                "flats_by_rank": flats,
                "poincare": p.coefficients,
                "euler_abs": p.euler_abs,
            }));
        }
        Command::OsBetti(wa) => {
            let (_, a) = load(&wa.source)?;
            let w = weights(&a, &wa.weights)?;
            let r = os::resonance_least_p(&a, &w)?;
            emit(&json!({"betti": r.betti, "least_p": r.least_p, "top_dim": r.top_dim}));
        }
        Command::Derivations { source, bound } => {
            let (_, a) = load(&source)?;
            let m = logmod::minimal_derivation_generators(&a, derivation_bound(&source, bound))?;
            if !m.stabilized {
                log::warn!("new generators appeared at the degree bound {}", m.bound);
            }
            let pieces: Vec<Value> = m
                .pieces
                .iter()
                .map(|p| json!({"degree": p.degree, "dimension": p.basis.len(), "generators": strings(&p.generators)}))
                .collect();
            emit(&json!({
                "bound": m.bound,
                "stabilized": m.stabilized,
                "generator_count": m.generator_count(),
                "generator_degrees": m.generator_degrees(),
                "pieces": pieces,
            }));
        }
        Command::FreeCheck { source, bound } => {
            let (_, a) = load(&source)?;
            let m = logmod::free_check(&a, derivation_bound(&source, bound))?;
            let v = match &m.freeness {
                Freeness::Free(e) => json!({
                    "free": true,
                    "exponents": e.exponents,
                    "determinant_scalar": e.scalar.to_string(),
                    "basis": strings(&e.basis),
                }),
                Freeness::NotFree { reason } => json!({"free": false, "reason": reason}),
                Freeness::Undetermined { bound } => json!({"free": null, "bound": bound}),
            };
            emit(&v);
        }
        Command::LogBetti { weighted, degrees } => {
            let (_, a) = load(&weighted.source)?;
            let w = weights(&a, &weighted.weights)?;
            let range = parse_range(&degrees)?;
            let c = logmod::log_complex_cohomology(&a, &w, range)?;
            emit(&json!({"least_p": c.least_nonzero(), "consistent": c.consistent, "rows": c.rows}));
        }
        Command::CriticalIdeal { source, weights: text, universal, bound } => {
            let (_, a) = load(&source)?;
            let module = logmod::minimal_derivation_generators(&a, derivation_bound(&source, bound))?;
            if universal {
                let omega = CriticalOneForm::universal(&a);
                let ideal = critical::logarithmic_ideal(&omega, &module.generating_set())?;
                let u = critical::universal_minimal_generators(&a, &module)?;
                emit(&json!({
                    "ring": omega.ring().names(),
                    "generators": strings(ideal.generators()),
                    "minimal_generator_degrees": u.degrees,
                    "minimal_generator_count": u.count(),
                    "pairing_injective": u.injective,
                }));
            } else {
                let w = weights(&a, text.as_deref().unwrap_or_default())?;
                let omega = CriticalOneForm::specialized(&a, &w)?;
                let ideal = critical::logarithmic_ideal(&omega, &module.generating_set())?;
                let naive = critical::naive_ideal(&omega);
                emit(&json!({
                    "weights": w.to_strings(),
                    "generators": strings(ideal.generators()),
                    "naive": strings(naive.generators()),
                }));
            }
        }
        Command::Codim(wa) => {
            let (_, a) = load(&wa.source)?;
            let w = weights(&a, &wa.weights)?;
            emit(&serde_json::to_value(critical::critical_set_report(&a, &w, ctx.budget)?)?);
        }
        Command::Verify { weighted, bound, no_saturate } => {
            let (name, a) = load(&weighted.source)?;
            let w = weights(&a, &weighted.weights)?;
            let opts = VerifyOptions {
                budget: ctx.budget,
                derivation_bound: derivation_bound(&weighted.source, bound),
                seed: Some(ctx.seed),
                saturate: !no_saturate,
            };
            let r = workbench::verify_theorem(&name, &a, &w, &opts)?;
            report(ctx, std::slice::from_ref(&r));
            return Ok(workbench::exit_code([&r]) as u8);
        }
        Command::Sweep { source, family, bound } => {
            let spec = read_family(&family)?;
            let source = match (&source.arrangement, &source.catalog, &spec.arrangement) {
                (None, None, Some(name)) => Source { arrangement: None, catalog: Some(name.clone()) },
                _ => source,
            };
            let (name, a) = load(&source)?;
            let parametrization = source.catalog.as_deref().and_then(workbench::lookup).and_then(|e| e.parametrization);
            let samples = workbench::expand_family(&a, parametrization, &spec, ctx.seed)?;
            let opts = VerifyOptions {
                budget: ctx.budget,
                derivation_bound: derivation_bound(&source, bound),
                seed: Some(ctx.seed),
                saturate: true,
            };
            let result = workbench::sweep(&name, &a, &samples, &opts)?;
            if ctx.format == Format::Table {
                render::reports(&result.reports);
            } else {
                emit(&json!({"summary": result.summary, "reports": result.reports}));
            }
            return Ok(workbench::exit_code(&result.reports) as u8);
        }
        Command::SelfTest { generic, facts_only } => return self_test(ctx, generic, facts_only),
        Command::Ideal(cmd) => ideal_command(ctx, cmd)?,
    }
    Ok(0)
}

fn report(ctx: &Settings, reports: &[VerificationReport]) {
    if ctx.format == Format::Table {
        render::reports(reports);
    } else if let [one] = reports {
        print_text(&one.to_json());
    } else {
        emit(&serde_json::to_value(reports).expect("json"));
    }
}

fn read_family(path: &Path) -> Result<FamilySpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>> {
    let (lo, hi) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| anyhow!("expected a range lo..hi, got `{text}`"))?;
    Ok(lo.trim().parse()?..=hi.trim().parse()?)
}

fn self_test(ctx: &Settings, generic: usize, facts_only: bool) -> Result<u8> {
    let facts = workbench::self_test(ctx.seed)?;
    let facts_ok = facts.iter().all(|f| f.ok);
    let mut reports = Vec::new();
    if !facts_only {
        for e in workbench::catalog() {
            reports.extend(workbench::entry_suite(&e, generic, ctx.seed, ctx.budget)?);
        }
    }
    if ctx.format == Format::Table {
        render::facts(&facts);
        if !reports.is_empty() {
            println!();
            render::reports(&reports);
        }
    } else {
        emit(&json!({"facts": facts, "reports": reports}));
    }
    let code = workbench::exit_code(&reports);
    if !facts_ok || reports.iter().any(|r| r.verdict == Verdict::Violated) {
        return Ok(1);
    }
    Ok(code as u8)
}

/// Reads `ring x y z` followed by one generator per line; `#` starts a comment.
fn read_ideal(path: &Path) -> Result<Ideal> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| anyhow!("empty ideal file"))?;
    let names: Vec<&str> = header
        .strip_prefix("ring")
        .ok_or_else(|| anyhow!("first line must be `ring <variables>`"))?
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        bail!("ring has no variables");
    }
    let ring = Ring::grevlex(&names);
    let gens = lines
        .map(|l| parse_polynomial(&ring, l).with_context(|| format!("parsing `{l}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&ring, gens))
}

fn ideal_command(ctx: &Settings, cmd: IdealCommand) -> Result<()> {
    let b = ctx.budget;
    match cmd {
        IdealCommand::Dim { file } => {
            let i = read_ideal(&file)?;
            let c = i.codimension(b)?;
            let n = i.ring().nvars();
            emit(&json!({"codimension": c, "dimension": c.value().map(|c| n - c), "variables": n}));
        }
        IdealCommand::Quotient { file, by } => {
            let i = read_ideal(&file)?;
            let f = parse_polynomial(i.ring(), &by)?;
            let q = i.quotient(&f, b)?;
            emit(&json!({"generators": strings(q.groebner(b)?.elements())}));
        }
        IdealCommand::Saturate { file, by } => {
            let i = read_ideal(&file)?;
            let f = parse_polynomial(i.ring(), &by)?;
            let s = i.saturate(&f, b)?;
            let c = s.codimension(b)?;
            emit(&json!({"generators": strings(s.groebner(b)?.elements()), "codimension": c}));
        }
        IdealCommand::Count { file } => {
            let i = read_ideal(&file)?;
            match i.zero_dim_count(b) {
                Ok(n) => emit(&json!({"points": n})),
                Err(GroebnerError::NotZeroDimensional) => {
                    let c = i.codimension(b)?;
                    if c == Codimension::Empty {
                        emit(&json!({"points": 0}));
                    } else {
                        bail!("ideal is not zero-dimensional (codimension {c})");
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        IdealCommand::Contains { file, poly } => {
            let i = read_ideal(&file)?;
            let f = parse_polynomial(i.ring(), &poly)?;
            emit(&json!({"member": i.contains(&f, b)?, "radical_member": i.radical_contains(&f, b)?}));
        }
    }
    Ok(())
}
