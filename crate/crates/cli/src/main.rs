//! `qrook`: q-rook polynomials, rank distributions and identity checks from the command line.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qrook_core::diagrams::{enumerate_diagrams, equivalence_classes};
use qrook_core::gf_oracle::{brute_force_distribution, make_field, DEFAULT_BUDGET};
use qrook_core::qrook::{self, QRookContext, SymbolicRankDistribution};
use qrook_core::verify::{run_check, VerificationReport, VerifyOptions};
use qrook_core::{Error, FerrersDiagram, FerrersSequence, LaurentPolynomial, MatrixKind};
use serde::Serialize;
use serde_json::{json, Value};

const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "qrook",
    version,
    about = "q-rook polynomials of Ferrers diagrams and matrix rank counts over finite fields"
)]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, diagonal sequence, degree, symmetry and canonical form of a diagram.
    Info(Input),
    /// One q-rook polynomial.
    Qrook(QrookArgs),
    /// W_r for every rank r, symbolically and optionally at a field order.
    Rankdist(RankdistArgs),
    /// Diagonal-equivalence classes of the diagrams in a board.
    Classes(ClassesArgs),
    /// Run identity checks over a board.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Column lengths, e.g. 4,3,3,2,1.
    #[arg(long)]
    diagram: Option<String>,
    /// Diagonal sequence, e.g. 1,2,3,4,3.
    #[arg(long)]
    sequence: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    General,
    Alt,
    Sym,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::General => MatrixKind::General,
            KindArg::Alt => MatrixKind::Alternating,
            KindArg::Sym => MatrixKind::Symmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Enum,
    Rec,
    Both,
}

#[derive(Args, Debug)]
struct QrookArgs {
    #[command(flatten)]
    input: Input,
    /// Number of rooks (general and alternating).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "general")]
    kind: KindArg,
    /// Off-diagonal rook pairs (symmetric).
    #[arg(long)]
    t: Option<usize>,
    /// Rooks on the principal diagonal (symmetric).
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "rec")]
    method: Method,
}

#[derive(Args, Debug)]
struct RankdistArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "general")]
    kind: KindArg,
    /// Field order at which to evaluate.
    #[arg(long)]
    q: Option<u32>,
    /// Cross-check against exhaustive enumeration over GF(q).
    #[arg(long, requires = "q")]
    oracle: bool,
}

#[derive(Args, Debug)]
struct ClassesArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check name, or all.
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    cols: usize,
    /// Field orders, e.g. 2,3.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    fields: Vec<u32>,
}

/// Failure modes mapped to process exit codes.
enum Failure {
    Verify,
    Input(String),
    Mismatch(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Budget(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Internal(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    version: u32,
    command: &'a str,
    input: Value,
    result: Value,
}

/// What a command produced: the JSON payload and its text rendering.
struct Output {
    input: Value,
    result: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let name = match &cli.command {
        Command::Info(_) => "info",
        Command::Qrook(_) => "qrook",
        Command::Rankdist(_) => "rankdist",
        Command::Classes(_) => "classes",
        Command::Verify(_) => "verify",
    };
    let (out, failure) = match run(&cli.command) {
        Ok(out) => (Some(out), None),
        Err((out, f)) => (out, Some(f)),
    };
    if let Some(out) = out {
        if cli.json {
            let env = Envelope {
                version: FORMAT_VERSION,
                command: name,
                input: out.input,
                result: out.result,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&env).expect("serializable")
            );
        } else {
            print!("{}", out.text);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            match &f {
                Failure::Verify => eprintln!("error: verification failed"),
                Failure::Input(m) | Failure::Mismatch(m) | Failure::Budget(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}

type Run = std::result::Result<Output, (Option<Output>, Failure)>;

fn run(cmd: &Command) -> Run {
    let plain = |f: Failure| (None, f);
    match cmd {
        Command::Info(input) => info(input).map_err(plain),
        Command::Qrook(args) => qrook_cmd(args).map_err(plain),
        Command::Rankdist(args) => rankdist(args).map_err(plain),
        Command::Classes(args) => Ok(classes(args)),
        Command::Verify(args) => verify(args),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_sequence(s: &str) -> Result<FerrersSequence, Failure> {
    let seq: FerrersSequence = s.parse().map_err(Failure::from)?;
    seq.validate()?;
    Ok(seq)
}

/// The diagram an input names, realizing a sequence by its canonical
/// diagram, or by a symmetric one when `symmetric` is set.
fn resolve(input: &Input, symmetric: bool) -> Result<(FerrersDiagram, Value), Failure> {
    if let Some(d) = &input.diagram {
        let f: FerrersDiagram = d.parse()?;
        return Ok((f, json!({ "diagram": d })));
    }
    let s = input.sequence.as_deref().unwrap_or_default();
    let seq = parse_sequence(s)?;
    let f = if symmetric {
        FerrersDiagram::symmetric_from_sequence(&seq)?
    } else {
        FerrersDiagram::from_sequence(&seq)?
    };
    Ok((f, json!({ "sequence": s })))
}

fn info(input: &Input) -> Result<Output, Failure> {
    let (f, input) = resolve(input, false)?;
    let seq = f.diagonal_sequence();
    let canonical = f.canonical_form();
    let rendering = f.render();
    let result = json!({
        "diagram": f.columns(),
        "size": f.size(),
        "sequence": seq.entries(),
        "degree": f.degree(),
        "symmetric": f.is_symmetric(),
        "principal_diagonal_cells": f.xi_cells().len(),
        "canonical": canonical.columns(),
        "rendering": rendering,
    });
    let mut text = String::new();
    let _ = writeln!(text, "diagram    {f}");
    let _ = writeln!(text, "size       {}", f.size());
    let _ = writeln!(text, "sequence   {seq}");
    let _ = writeln!(text, "degree     {}", f.degree());
    let _ = writeln!(text, "symmetric  {}", f.is_symmetric());
    let _ = writeln!(text, "|Xi & F|   {}", f.xi_cells().len());
    let _ = writeln!(text, "canonical  {canonical}");
    text.push_str(&rendering);
    Ok(Output {
        input,
        result,
        text,
    })
}

fn qrook_cmd(args: &QrookArgs) -> Result<Output, Failure> {
    let kind = MatrixKind::from(args.kind);
    let (ranks, label) = match kind {
        MatrixKind::Symmetric => {
            let (t, s) = match (args.t, args.s) {
                (Some(t), Some(s)) => (t, s),
                _ => return Err(Failure::Input("--kind sym needs --t and --s".into())),
            };
            ((t, s), format!("R^sym_{{{t},{s}}}"))
        }
        _ => {
            let r = args
                .r
                .ok_or_else(|| Failure::Input("--r is required".into()))?;
            let name = if kind == MatrixKind::General {
                "R"
            } else {
                "R^alt"
            };
            ((r, 0), format!("{name}_{r}"))
        }
    };
    let (r, s) = ranks;

    let recursive = || -> Result<LaurentPolynomial, Failure> {
        let seq = match (&args.input.diagram, &args.input.sequence) {
            (Some(d), _) => d.parse::<FerrersDiagram>()?.diagonal_sequence(),
            (_, Some(s)) => parse_sequence(s)?,
            _ => unreachable!("clap requires one input"),
        };
        let mut ctx = QRookContext::new();
        Ok(match kind {
            MatrixKind::General => ctx.general(&seq, r)?,
            MatrixKind::Alternating => ctx.alternating(&seq, r)?,
            MatrixKind::Symmetric => ctx.symmetric(&seq, r, s)?,
        })
    };
    let enumerative = || -> Result<LaurentPolynomial, Failure> {
        let (f, _) = resolve(&args.input, kind != MatrixKind::General)?;
        Ok(match kind {
            MatrixKind::General => qrook::qrook_enumerative(&f, r),
            MatrixKind::Alternating => qrook::qrook_alt_enumerative(&f, r)?,
            MatrixKind::Symmetric => qrook::qrook_sym_enumerative(&f, r, s)?,
        })
    };
    let poly = match args.method {
        Method::Rec => recursive()?,
        Method::Enum => enumerative()?,
        Method::Both => {
            let a = recursive()?;
            let b = enumerative()?;
            if a != b {
                return Err(Failure::Mismatch(format!(
                    "recursive {a} differs from enumerative {b}"
                )));
            }
            a
        }
    };

    let mut input = input_echo(&args.input);
    let obj = input.as_object_mut().expect("object");
    obj.insert("kind".into(), json!(kind));
    obj.insert(
        "method".into(),
        json!(format!("{:?}", args.method).to_lowercase()),
    );
    if kind == MatrixKind::Symmetric {
        obj.insert("t".into(), json!(r));
        obj.insert("s".into(), json!(s));
    } else {
        obj.insert("r".into(), json!(r));
    }
    let text = format!("{label} = {poly}\n");
    Ok(Output {
        input,
        result: to_json(&poly),
        text,
    })
}

fn input_echo(input: &Input) -> Value {
    match (&input.diagram, &input.sequence) {
        (Some(d), _) => json!({ "diagram": d }),
        (_, Some(s)) => json!({ "sequence": s }),
        _ => json!({}),
    }
}

fn rankdist(args: &RankdistArgs) -> Result<Output, Failure> {
    let kind = MatrixKind::from(args.kind);
    let (f, mut input) = resolve(&args.input, kind != MatrixKind::General)?;
    let dist: SymbolicRankDistribution = match kind {
        MatrixKind::General => qrook::rank_distribution_general(&f)?,
        MatrixKind::Alternating => qrook::rank_distribution_alternating(&f)?,
        MatrixKind::Symmetric => qrook::rank_distribution_symmetric(&f)?,
    };
    let obj = input.as_object_mut().expect("object");
    obj.insert("kind".into(), json!(kind));
    obj.insert("q".into(), json!(args.q));
    obj.insert("oracle".into(), json!(args.oracle));

    let mut result = json!({ "kind": kind, "ranks": dist.ranks });
    let counts = match args.q {
        Some(q) => Some(dist.evaluate(q)?),
        None => None,
    };
    let mut oracle_counts = None;
    if let (Some(q), Some(counts)) = (args.q, &counts) {
        result["q"] = json!(q);
        result["counts"] = json!(counts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        if args.oracle {
            let field = make_field(q)?;
            let oracle = brute_force_distribution(&field, &f, kind, budget()?)?;
            let agrees = oracle.matches(counts);
            result["oracle_counts"] = json!(oracle
                .counts
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>());
            result["oracle_agrees"] = json!(agrees);
            if !agrees {
                return Err(Failure::Mismatch(format!(
                    "closed form {:?} differs from oracle {:?} at q = {q}",
                    counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    oracle
                        .counts
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                )));
            }
            oracle_counts = Some(oracle.counts);
        }
    }

    let mut text = format!("{kind} matrices supported on {f}\n");
    for (r, w) in dist.ranks.iter().enumerate() {
        let _ = write!(text, "W_{r} = {w}");
        if let Some(c) = &counts {
            let _ = write!(text, "  [{}]", c[r]);
        }
        if let Some(o) = &oracle_counts {
            let _ = write!(
                text,
                "  oracle {}",
                o.get(r).map_or("0".into(), |x| x.to_string())
            );
        }
        text.push('\n');
    }
    if oracle_counts.is_some() {
        text.push_str("oracle agrees\n");
    }
    Ok(Output {
        input,
        result,
        text,
    })
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("QROOK_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "QROOK_BUDGET must be a non-negative integer, got '{v}'"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn classes(args: &ClassesArgs) -> Output {
    let all = enumerate_diagrams(args.rows, args.cols);
    let classes = equivalence_classes(&all);
    let mut ctx = QRookContext::new();
    let mut list = Vec::new();
    let mut text = format!("{} diagrams in {} classes\n", all.len(), classes.len());
    for (seq, members) in &classes {
        let polys: Vec<LaurentPolynomial> = (0..=seq.max_entry())
            .map(|r| ctx.general(seq, r).expect("diagonal sequences are valid"))
            .collect();
        let names: Vec<String> = members.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(text, "({seq})  {}", names.join(" "));
        for (r, p) in polys.iter().enumerate() {
            let _ = writeln!(text, "    R_{r} = {p}");
        }
        list.push(json!({
            "sequence": seq.entries(),
            "members": members.iter().map(|f| f.columns()).collect::<Vec<_>>(),
            "qrook": polys,
        }));
    }
    Output {
        input: json!({ "rows": args.rows, "cols": args.cols }),
        result: json!({ "diagrams": all.len(), "classes": list }),
        text,
    }
}

fn verify(args: &VerifyArgs) -> Run {
    let opts = VerifyOptions {
        rows: args.rows,
        cols: args.cols,
        fields: args.fields.clone(),
        budget: budget().map_err(|f| (None, f))?,
    };
    let reports = run_check(&args.check, &opts).map_err(|e| (None, Failure::from(e)))?;
    let passed = reports.iter().all(|r| r.passed);
    let out = Output {
        input: json!({ "check": args.check, "rows": args.rows, "cols": args.cols, "fields": args.fields }),
        result: json!({ "passed": passed, "reports": reports }),
        text: reports.iter().map(report_text).collect(),
    };
    if passed {
        Ok(out)
    } else {
        Err((Some(out), Failure::Verify))
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} {:<18} {}  {} instances, {} skipped\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.check,
        r.domain,
        r.instances,
        r.skipped
    );
    for f in r.failures.iter().take(10) {
        let _ = writeln!(
            s,
            "    {}: expected {}, got {}",
            f.input, f.expected, f.actual
        );
    }
    if r.failures.len() > 10 {
        let _ = writeln!(s, "    ... {} more", r.failures.len() - 10);
    }
    s
}
