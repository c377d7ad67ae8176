use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use specbasis::bases::{
    analyze, canonical_basis, fourier_basis, hadamard_basis, synthesize, unitary_basis, verify_full_rank,
    verify_orthogonal_complete, BasisKind, BasisSet,
};
use specbasis::grouprep::{
    check_homomorphism, fourier_group, fourier_group_bound, hadamard_group, hadamard_group_bound,
    multiply_complex_free, rep_r, rep_t, to_triplets, GroupTable, MapKind,
};
use specbasis::hadamard::{extract_hadamard, sylvester, verify_hadamard, HMatrix};
use specbasis::io::{
    read_coeffs, read_json, read_matrix, write_coeffs, write_coeffs_csv, write_json, write_matrix, write_matrix_csv,
};
use specbasis::matcore::CMatrix;
use specbasis::pseudoclosure::{check_pseudo_closure, closure_profile, pseudo_closure_order};
use specbasis::sampling::{random_cyclo_matrix, rng, DEFAULT_SEED};
use specbasis::transform::{bench_multiply, multiply_via_transform, write_bench_csv};
use specbasis::{Monomial, VerificationReport, DEFAULT_TOL};

const TOL_ENV: &str = "SPECBASIS_TOL";

#[derive(Parser)]
#[command(
    name = "specbasis",
    version,
    about = "Complete orthogonal matrix bases: construction, verification, transforms"
)]
struct Cli {
    /// comparison tolerance (overrides SPECBASIS_TOL)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// seed for sampled checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// output format for reports and tables printed to stdout
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// build or verify a basis
    #[command(subcommand)]
    Basis(BasisCmd),
    /// expansion coefficients and multiplication through them
    #[command(subcommand)]
    Transform(TransformCmd),
    /// pseudo-closure checks
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// Hadamard matrices
    #[command(subcommand)]
    Hadamard(HadamardCmd),
    /// finite groups generated by a basis
    #[command(subcommand)]
    Group(GroupCmd),
    /// the T and R representations
    #[command(subcommand)]
    Rep(RepCmd),
    /// complex-free multiplication over Q[ω_m]
    #[command(subcommand)]
    Cyclo(CycloCmd),
    /// time direct multiplication against the transform path
    Bench(BenchArgs),
}

#[derive(Args)]
struct HadamardSource {
    /// Hadamard matrix file (JSON, or +/- text grid with .txt)
    #[arg(long, conflicts_with = "order_log2")]
    hadamard: Option<PathBuf>,
    /// use the Sylvester matrix of order 2^m
    #[arg(long = "m", value_parser = clap::value_parser!(u32).range(0..=10))]
    order_log2: Option<u32>,
}

#[derive(Subcommand)]
enum BasisCmd {
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=256))]
        n: Option<u64>,
        /// unitary matrix inducing the basis (kind = unitary)
        #[arg(long)]
        unitary: Option<PathBuf>,
        #[command(flatten)]
        source: HadamardSource,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TransformCmd {
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
        /// defaults to the clock-and-shift basis of matching size
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Synthesize {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Multiply {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = MultiplyMethod::Transform)]
        method: MultiplyMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MultiplyMethod {
    Direct,
    Transform,
}

#[derive(Subcommand)]
enum ClosureCmd {
    Check {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// smallest k ≤ k-max with a non-vacuous closure verdict
    Order {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64), default_value_t = 8)]
        k_max: u32,
    },
    /// verdicts for every k in 1..=k-max
    Profile {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64), default_value_t = 8)]
        k_max: u32,
    },
}

#[derive(Subcommand)]
enum HadamardCmd {
    /// Sylvester matrix of order 2^m
    Gen {
        #[arg(long = "m", value_parser = clap::value_parser!(u32).range(0..=10))]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    Extract {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Enumerate {
        #[arg(long, value_enum)]
        kind: GroupKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: Option<u64>,
        #[command(flatten)]
        source: HadamardSource,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000_000), default_value_t = 1 << 16)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Fourier,
    Hadamard,
}

#[derive(Subcommand)]
enum RepCmd {
    /// T of a phased shift, given as a monomial JSON file or as --n/--k/--l
    T {
        #[arg(long, conflicts_with_all = ["n", "k", "l"])]
        element: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// R_H of a matrix
    R {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        source: HadamardSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    CheckHom {
        #[arg(long)]
        map: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        n: u64,
        #[command(flatten)]
        source: HadamardSource,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000), default_value_t = 50)]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CycloCmd {
    /// multiply random matrices over Q[ω_m] through rational circulants and compare exactly
    Demo {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4), default_value_t = 2)]
        n: u64,
        #[arg(long = "m", value_parser = clap::value_parser!(u64).range(1..=12), default_value_t = 3)]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1000), default_value_t = 10)]
        pairs: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// comma-separated sizes
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16], value_parser = clap::value_parser!(u64).range(1..=64).map(|v| v as usize))]
    n: Vec<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=1000).map(|v| v as usize), default_value_t = 5)]
    reps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<specbasis::Error> for Failure {
    fn from(e: specbasis::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    tol: f64,
    seed: u64,
    format: OutFormat,
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let (tol, origin) = match flag {
        Some(t) => (t, "--tol".to_string()),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => (
                s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("{TOL_ENV}={s:?} is not a number")))?,
                TOL_ENV.to_string(),
            ),
            Err(_) => (DEFAULT_TOL, String::new()),
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::Usage(format!("{origin} must be a positive finite number, got {tol}")));
    }
    Ok(tol)
}

fn load_basis(path: &Path) -> Result<BasisSet, Failure> {
    Ok(read_json(path)?)
}

fn load_hadamard_file(path: &Path) -> Result<HMatrix, Failure> {
    if path.extension().is_some_and(|e| e == "txt") {
        Ok(HMatrix::from_text(&fs::read_to_string(path)?)?)
    } else {
        Ok(read_json(path)?)
    }
}

fn hadamard_from(source: &HadamardSource) -> Result<HMatrix, Failure> {
    match (&source.hadamard, source.order_log2) {
        (Some(p), _) => load_hadamard_file(p),
        (None, Some(m)) => Ok(sylvester(m)),
        (None, None) => Err(Failure::Usage("one of --hadamard or --m is required".into())),
    }
}

fn usize_flag(v: Option<u64>, name: &str) -> Result<usize, Failure> {
    v.map(|v| v as usize).ok_or_else(|| Failure::Usage(format!("--{name} is required")))
}

/// JSON or text to `out` (or stdout).
fn emit<T: serde::Serialize + Display>(ctx: &Ctx, value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let text = match ctx.format {
        OutFormat::Json => serde_json::to_string_pretty(value).map_err(|e| Failure::Data(e.to_string()))? + "\n",
        OutFormat::Text => format!("{value}\n"),
        OutFormat::Csv => {
            return Err(Failure::Usage("csv output is only available for matrices, coefficients and bench".into()))
        }
    };
    write_text(&text, out)
}

fn emit_value(ctx: &Ctx, value: &Value, text: impl Display, out: Option<&Path>) -> Result<(), Failure> {
    let s = match ctx.format {
        OutFormat::Json => serde_json::to_string_pretty(value).map_err(|e| Failure::Data(e.to_string()))? + "\n",
        OutFormat::Text => format!("{text}\n"),
        OutFormat::Csv => return Err(Failure::Usage("csv output is not available for this subcommand".into())),
    };
    write_text(&s, out)
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_matrix(ctx: &Ctx, m: &CMatrix, out: Option<&Path>) -> Result<(), Failure> {
    match (out, ctx.format) {
        (Some(p), _) => write_matrix(m, p)?,
        (None, OutFormat::Csv) => write_matrix_csv(m, std::io::stdout().lock())?,
        (None, OutFormat::Text) => println!("{m:?}"),
        (None, OutFormat::Json) => {
            println!("{}", serde_json::to_string_pretty(m).map_err(|e| Failure::Data(e.to_string()))?)
        }
    }
    Ok(())
}

fn triplets_json(m: &CMatrix) -> Value {
    let entries: Vec<Value> = to_triplets(m).into_iter().map(|(i, j, v)| json!([i, j, [v.re, v.im]])).collect();
    json!({ "size": m.n(), "triplets": entries })
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { tol: tolerance(cli.tol)?, seed: cli.seed, format: cli.format };
    match cli.cmd {
        Cmd::Basis(cmd) => basis(&ctx, cmd),
        Cmd::Transform(cmd) => transform(&ctx, cmd),
        Cmd::Closure(cmd) => closure(&ctx, cmd),
        Cmd::Hadamard(cmd) => hadamard(&ctx, cmd),
        Cmd::Group(cmd) => group(&ctx, cmd),
        Cmd::Rep(cmd) => rep(&ctx, cmd),
        Cmd::Cyclo(cmd) => cyclo(&ctx, cmd),
        Cmd::Bench(args) => bench(&ctx, args),
    }
}

fn basis(ctx: &Ctx, cmd: BasisCmd) -> Outcome {
    match cmd {
        BasisCmd::Gen { kind, n, unitary, source, out } => {
            let kind: BasisKind = kind.parse().map_err(|e: specbasis::Error| Failure::Usage(e.to_string()))?;
            let basis = match kind {
                BasisKind::Canonical => canonical_basis(usize_flag(n, "n")?),
                BasisKind::Fourier => fourier_basis(usize_flag(n, "n")?),
                BasisKind::Unitary => {
                    let path =
                        unitary.ok_or_else(|| Failure::Usage("--unitary is required for kind unitary".into()))?;
                    unitary_basis(&read_matrix(&path)?, ctx.tol)?
                }
                BasisKind::Hadamard => hadamard_basis(&hadamard_from(&source)?)?,
                BasisKind::Custom => {
                    return Err(Failure::Usage("custom bases are read from files, not generated".into()))
                }
            };
            write_json(&basis, &out)?;
            Ok(true)
        }
        BasisCmd::Verify { basis, out } => {
            let basis = load_basis(&basis)?;
            let mut report = verify_orthogonal_complete(&basis, ctx.tol);
            report.extend(verify_full_rank(&basis));
            emit(ctx, &report, out.as_deref())?;
            Ok(report.summary)
        }
    }
}

fn basis_or_fourier(path: Option<&Path>, n: usize) -> Result<BasisSet, Failure> {
    match path {
        Some(p) => load_basis(p),
        None => Ok(fourier_basis(n)),
    }
}

fn transform(ctx: &Ctx, cmd: TransformCmd) -> Outcome {
    match cmd {
        TransformCmd::Analyze { matrix, basis, out } => {
            let a = read_matrix(&matrix)?;
            let c = analyze(&a, &basis_or_fourier(basis.as_deref(), a.n())?)?;
            match (out, ctx.format) {
                (Some(p), _) => write_coeffs(&c, &p)?,
                (None, OutFormat::Csv) => write_coeffs_csv(&c, std::io::stdout().lock())?,
                (None, _) => {
                    println!("{}", serde_json::to_string_pretty(&c).map_err(|e| Failure::Data(e.to_string()))?)
                }
            }
            Ok(true)
        }
        TransformCmd::Synthesize { coeffs, basis, out } => {
            let c = read_coeffs(&coeffs)?;
            let a = synthesize(&c, &basis_or_fourier(basis.as_deref(), c.n())?)?;
            emit_matrix(ctx, &a, out.as_deref())?;
            Ok(true)
        }
        TransformCmd::Multiply { a, b, method, out } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let p = match method {
                MultiplyMethod::Direct => a.try_mul(&b)?,
                MultiplyMethod::Transform => multiply_via_transform(&a, &b)?,
            };
            emit_matrix(ctx, &p, out.as_deref())?;
            Ok(true)
        }
    }
}

fn closure(ctx: &Ctx, cmd: ClosureCmd) -> Outcome {
    match cmd {
        ClosureCmd::Check { basis, k, out } => {
            let basis = load_basis(&basis)?;
            let report = check_pseudo_closure(&basis, k, ctx.tol);
            let summary = format!(
                "k = {k}: verdict {}, {} of {} pairs eligible, {} witnesses, {} failures, worst residual {:.3e}",
                report.verdict,
                report.eligible_pairs,
                report.total_pairs,
                report.witnesses.len(),
                report.failures.len(),
                report.worst_residual()
            );
            let value = serde_json::to_value(&report).map_err(|e| Failure::Data(e.to_string()))?;
            emit_value(ctx, &value, &summary, out.as_deref())?;
            if out.is_some() {
                eprintln!("{summary}");
            }
            Ok(report.verdict)
        }
        ClosureCmd::Order { basis, k_max } => {
            let basis = load_basis(&basis)?;
            let order = pseudo_closure_order(&basis, k_max, ctx.tol);
            let text = match order {
                Some(k) => format!("pseudo-closure order {k}"),
                None => format!("no pseudo-closure order up to {k_max}"),
            };
            emit_value(ctx, &json!({ "k_max": k_max, "order": order }), text, None)?;
            Ok(order.is_some())
        }
        ClosureCmd::Profile { basis, k_max } => {
            let basis = load_basis(&basis)?;
            let profile = closure_profile(&basis, k_max, ctx.tol);
            let text = profile
                .iter()
                .map(|e| {
                    format!(
                        "k={:>2} verdict={} eligible={}/{} failures={}",
                        e.k, e.verdict, e.eligible_pairs, e.total_pairs, e.failures
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let value = serde_json::to_value(&profile).map_err(|e| Failure::Data(e.to_string()))?;
            emit_value(ctx, &value, text, None)?;
            Ok(true)
        }
    }
}

fn hadamard(ctx: &Ctx, cmd: HadamardCmd) -> Outcome {
    match cmd {
        HadamardCmd::Gen { m, out } => {
            let h = sylvester(m);
            match out {
                Some(p) if p.extension().is_some_and(|e| e == "txt") => fs::write(&p, h.to_text())?,
                Some(p) => write_json(&h, &p)?,
                None if ctx.format == OutFormat::Text => print!("{}", h.to_text()),
                None => println!("{}", serde_json::to_string(&h).map_err(|e| Failure::Data(e.to_string()))?),
            }
            Ok(true)
        }
        HadamardCmd::Verify { input } => {
            let report = verify_hadamard(&load_hadamard_file(&input)?);
            emit(ctx, &report, None)?;
            Ok(report.summary)
        }
        HadamardCmd::Extract { basis, out } => {
            let basis = load_basis(&basis)?;
            let extraction = match extract_hadamard(&basis, ctx.tol) {
                Ok(x) => x,
                Err(specbasis::Error::Precondition(msg)) => {
                    eprintln!("specbasis: precondition failed: {msg}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            let value = json!({
                "hadamard": extraction.hadamard,
                "diagonal_count": extraction.diagonal_count,
                "report": extraction.report,
            });
            let text = match &extraction.hadamard {
                Some(h) => format!("{}{}", h.to_text(), extraction.report),
                None => format!("no Hadamard matrix recovered\n{}", extraction.report),
            };
            emit_value(ctx, &value, text, out.as_deref())?;
            Ok(extraction.hadamard.is_some() && extraction.report.summary)
        }
    }
}

fn group(ctx: &Ctx, cmd: GroupCmd) -> Outcome {
    let GroupCmd::Enumerate { kind, n, source, cap, out } = cmd;
    let (table, bound): (GroupTable, u128) = match kind {
        GroupKind::Fourier => {
            let n = usize_flag(n, "n")?;
            (fourier_group(n, cap as usize)?, fourier_group_bound(n))
        }
        GroupKind::Hadamard => {
            let h = hadamard_from(&source)?;
            (hadamard_group(&h, cap as usize)?, hadamard_group_bound(h.n()))
        }
    };
    let within = table.order as u128 <= bound;
    let summary = json!({
        "n": table.n,
        "order": table.order,
        "bound": bound.to_string(),
        "within_bound": within,
        "closed": table.closed,
    });
    if let Some(p) = out {
        write_json(&table, &p)?;
    }
    let text = format!(
        "order {}{}, bound {bound}, {}",
        table.order,
        if table.closed { "" } else { " (cap reached)" },
        if within { "within bound" } else { "EXCEEDS bound" }
    );
    emit_value(ctx, &summary, text, None)?;
    Ok(table.closed && within)
}

fn rep(ctx: &Ctx, cmd: RepCmd) -> Outcome {
    match cmd {
        RepCmd::T { element, n, k, l, out } => {
            let g: Monomial = match element {
                Some(p) => read_json(&p)?,
                None => {
                    let n = usize_flag(n, "n")?;
                    if k >= n || l >= n {
                        return Err(Failure::Usage(format!("--k and --l must be below n = {n}")));
                    }
                    Monomial::fourier(n, k, l)
                }
            };
            let t = rep_t(&g)?;
            emit_value(ctx, &triplets_json(&t), format!("{t:?}"), out.as_deref())?;
            Ok(true)
        }
        RepCmd::R { matrix, source, out } => {
            let h = hadamard_from(&source)?;
            let r = rep_r(&read_matrix(&matrix)?, &h)?;
            emit_value(ctx, &triplets_json(&r), format!("{r:?}"), out.as_deref())?;
            Ok(true)
        }
        RepCmd::CheckHom { map, n, source, samples, out } => {
            let kind: MapKind = map.parse().map_err(|e: specbasis::Error| Failure::Usage(e.to_string()))?;
            let h = match kind {
                MapKind::R if source.hadamard.is_some() || source.order_log2.is_some() => Some(hadamard_from(&source)?),
                _ => None,
            };
            let report = check_homomorphism(kind, n as usize, h.as_ref(), samples as usize, ctx.seed, ctx.tol)?;
            emit(ctx, &report, out.as_deref())?;
            Ok(report.summary)
        }
    }
}

fn cyclo(ctx: &Ctx, cmd: CycloCmd) -> Outcome {
    let CycloCmd::Demo { n, m, pairs } = cmd;
    let (n, m) = (n as usize, m as usize);
    let mut r = rng(ctx.seed);
    let mut report = VerificationReport::new();
    let mut mismatches = 0usize;
    let mut float_worst = 0.0f64;
    for _ in 0..pairs {
        let a = random_cyclo_matrix(n, m, &mut r);
        let b = random_cyclo_matrix(n, m, &mut r);
        let via = multiply_complex_free(&a, &b)?;
        if via != a.mul(&b)? {
            mismatches += 1;
        }
        float_worst = float_worst.max(specbasis::matcore::relative_residual(&a.eval().matmul(&b.eval()), &via.eval()));
    }
    report
        .push("exact product through rational circulants", mismatches == 0, mismatches as f64)
        .with_detail(format!("{pairs} pairs, n = {n}, m = {m}"));
    report.push("agrees with complex product", float_worst <= ctx.tol, float_worst);
    emit(ctx, &report, None)?;
    Ok(report.summary)
}

fn bench(ctx: &Ctx, args: BenchArgs) -> Outcome {
    let run = bench_multiply(&args.n, args.reps, ctx.seed)?;
    match &args.out {
        Some(p) => write_bench_csv(&run.rows, fs::File::create(p)?)?,
        None => write_bench_csv(&run.rows, std::io::stdout().lock())?,
    }
    for rec in &run.records {
        eprintln!(
            "n={:>3} {:<13} median {:.3e}s (kernel {:.3e}s) max residual {:.2e}",
            rec.n,
            rec.method.as_str(),
            rec.wall_time,
            rec.kernel_time,
            rec.max_residual
        );
    }
    Ok(run.records.iter().all(|r| r.max_residual <= ctx.tol.max(1e-9)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("specbasis: usage: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("specbasis: error: {msg}");
            ExitCode::from(3)
        }
    }
}
