//! Command-line front end. Every verb parses its literals, calls one library
//! operation and prints a line-oriented answer, or a JSON document with
//! `--json`.
//!
//! Exit codes: 0 on success, 1 when the operation rejects its input, 2 when
//! an argument does not parse.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::{Read, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::oracle::{self, BoundedUniverse, PredicateSet};
use crate::poset::{embed_poset, verify_embedding, FinitePoset};
use crate::site::{
    finite_subcover, is_trivializing_zariski, point_certificate, tower_supernatural,
    uncovered_witness, PointCertificate, Sieve,
};
use crate::spectral::{cofinal_chain, trace_nonempty_witness, GeometricTail, PatchExpr};
use crate::supernat::{Natural, Supernatural};
use crate::tower::{
    check_representation, normalized_trace, pgl_equiv_n, skolem_noether_conjugator,
    standard_embedding, AlgebraPresentation, EmbeddingData, PglElement, TowerMatrix,
};

#[derive(Debug, Parser)]
#[command(name = "bigcell", version, about = "Supernatural numbers, patches and covering sieves")]
struct Cli {
    /// Print a JSON document instead of plain lines.
    #[arg(long, global = true)]
    json: bool,
    /// Primes of the oracle universe (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    universe_primes: Option<Vec<u64>>,
    /// Largest finite exponent of the oracle universe.
    #[arg(long, global = true)]
    universe_exp: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Supernatural arithmetic.
    #[command(subcommand)]
    Snat(SnatCmd),
    /// Patch expressions.
    #[command(subcommand)]
    Patch(PatchCmd),
    /// Covering sieves.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Point certificates.
    #[command(subcommand)]
    Point(PointCmd),
    /// Trivializing criteria.
    #[command(subcommand)]
    Triv(TrivCmd),
    /// Finite posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Towers of naturals and their supernatural limits.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Stage matrices.
    #[command(subcommand)]
    Mat(MatCmd),
}

#[derive(Debug, Subcommand)]
enum SnatCmd {
    Gcd { a: String, b: String },
    Lcm { a: String, b: String },
    /// Whether `a` divides `b`.
    Divides { a: String, b: String },
    /// Whether every exponent is 0 or inf.
    Cinf { a: String },
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long)]
    patch: String,
    #[arg(long, default_value = "1")]
    base: String,
    /// Naturals that must not divide the witness.
    #[arg(long, value_delimiter = ',')]
    exclude: Vec<String>,
    /// Also answer by enumerating the oracle universe.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Subcommand)]
enum PatchCmd {
    Member {
        s: String,
        #[arg(long)]
        patch: String,
    },
    /// Whether no multiple of the base lies in the patch (outside the excluded ideal).
    Empty(TraceArgs),
    /// A multiple of the base in the patch, avoiding the excluded ideal.
    Witness(TraceArgs),
}

#[derive(Debug, Args)]
struct SieveArgs {
    #[arg(long)]
    patch: String,
    #[arg(long, conflicts_with = "sieve")]
    base: Option<String>,
    #[arg(long, value_delimiter = ',', conflicts_with = "sieve")]
    gens: Vec<String>,
    /// A whole sieve, as `base:n gens:a,b`.
    #[arg(long)]
    sieve: Option<String>,
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Subcommand)]
enum CoverCmd {
    Check(SieveArgs),
    Subcover(SieveArgs),
}

#[derive(Debug, Subcommand)]
enum PointCmd {
    Check {
        s: String,
        #[arg(long)]
        patch: String,
    },
}

#[derive(Debug, Subcommand)]
enum TrivCmd {
    Zariski {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Subcommand)]
enum PosetCmd {
    /// Embed the poset in FILE (`-` for stdin) into divisibility.
    Embed { file: String },
}

#[derive(Debug, Subcommand)]
enum TowerCmd {
    /// Limit of a divisibility chain, e.g. `2,12,24`.
    Snat {
        chain: String,
        #[arg(long, requires = "tail_ratio")]
        tail_base: Option<String>,
        #[arg(long, requires = "tail_base")]
        tail_ratio: Option<String>,
    },
    /// A cofinal chain of naturals below a supernatural.
    Chain {
        s: String,
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
}

#[derive(Debug, Subcommand)]
enum MatCmd {
    /// Standard embedding of a stage matrix into stage `--to`.
    Embed {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        to: u64,
    },
    /// Normalized trace.
    Trace {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// A conjugator between two embeddings, each `standard:n:m` or unit
    /// images separated by `|` in row-major unit order.
    Conj {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Whether two stage elements agree on the embedded stage `--n`.
    Equivn {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        n: u64,
    },
    /// Whether an assignment satisfies a presentation.
    Rep {
        presentation: String,
        /// `name=matrix`, repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse<T>(what: &str, text: &str) -> Result<T, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    text.parse()
        .map_err(|e| CliError::Parse(format!("{what} {text:?}: {e}")))
}

/// `@path` reads the expression from a file.
fn parse_patch(text: &str) -> Result<PatchExpr, CliError> {
    match text.strip_prefix('@') {
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?;
            parse("patch", &body)
        }
        None => parse("patch", text),
    }
}

fn parse_list<T>(what: &str, items: &[String]) -> Result<Vec<T>, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(what, s.trim()))
        .collect()
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// One answer: the text lines and the JSON document.
struct Answer {
    text: Vec<String>,
    json: Value,
}

impl Answer {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Answer {
            text: vec![text.into()],
            json,
        }
    }

    fn line(mut self, text: impl Into<String>) -> Self {
        self.text.push(text.into());
        self
    }
}

struct Context {
    universe: BoundedUniverse,
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if shown {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return if shown { 0 } else { 2 };
        }
    };
    let result = universe(&cli).and_then(|universe| {
        let ctx = Context { universe };
        dispatch(&cli.command, &ctx)
    });
    match result {
        Ok(answer) => {
            let written = if cli.json {
                writeln!(out, "{}", answer.json)
            } else {
                answer.text.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            if written.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn universe(cli: &Cli) -> Result<BoundedUniverse, CliError> {
    let base = BoundedUniverse::from_env().map_err(|e| CliError::Parse(e.to_string()))?;
    let primes = cli
        .universe_primes
        .clone()
        .unwrap_or_else(|| base.primes().to_vec());
    let exp = cli.universe_exp.unwrap_or(base.max_exp());
    BoundedUniverse::new(primes, exp).map_err(|e| CliError::Parse(e.to_string()))
}

fn dispatch(command: &Command, ctx: &Context) -> Result<Answer, CliError> {
    match command {
        Command::Snat(c) => snat(c),
        Command::Patch(c) => patch(c, ctx),
        Command::Cover(c) => cover(c, ctx),
        Command::Point(PointCmd::Check { s, patch }) => {
            let s: Supernatural = parse("supernatural", s)?;
            let patch = parse_patch(patch)?;
            let cert = point_certificate(&s, &patch).map_err(domain)?;
            let text = match &cert {
                PointCertificate::Member => "member".to_string(),
                PointCertificate::NonPoint { n, family } => {
                    format!("nonpoint n={n} family={}", join(family))
                }
            };
            let doc = serde_json::to_value(&cert).expect("certificates serialize");
            Ok(Answer::new(text, doc))
        }
        Command::Triv(TrivCmd::Zariski { patch, oracle }) => {
            let patch = parse_patch(patch)?;
            let t = is_trivializing_zariski(&patch).map_err(domain)?;
            let mut answer = Answer::new(t.to_string(), json!({ "trivializing": t }));
            if *oracle {
                let set = PredicateSet::from_patch(patch);
                let naive = oracle::naive_trivializing(&set, &ctx.universe).map_err(domain)?;
                answer = answer.line(format!("oracle {naive}"));
                answer.json["oracle"] = json!(naive);
            }
            Ok(answer)
        }
        Command::Poset(PosetCmd::Embed { file }) => {
            let text = if file == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(file)
                    .map_err(|e| CliError::Parse(format!("cannot read {file}: {e}")))?
            };
            let poset = FinitePoset::parse(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let e = embed_poset(&poset);
            if !verify_embedding(&poset, &e) {
                return Err(CliError::Domain("embedding failed verification".into()));
            }
            let text = poset
                .labels()
                .iter()
                .map(|l| format!("{l} {}", e.map[l]))
                .collect::<Vec<_>>();
            let doc = serde_json::to_value(&e.map).expect("naturals serialize");
            Ok(Answer { text, json: doc })
        }
        Command::Tower(c) => tower(c),
        Command::Mat(c) => mat(c),
    }
}

fn snat(c: &SnatCmd) -> Result<Answer, CliError> {
    let sn = |s: &str| parse::<Supernatural>("supernatural", s);
    let value = |v: Supernatural| Answer::new(v.to_string(), json!({ "result": v.to_string() }));
    let truth = |b: bool| Answer::new(b.to_string(), json!({ "result": b }));
    Ok(match c {
        SnatCmd::Gcd { a, b } => value(sn(a)?.gcd(&sn(b)?)),
        SnatCmd::Lcm { a, b } => value(sn(a)?.lcm(&sn(b)?)),
        SnatCmd::Divides { a, b } => truth(sn(a)?.divides(&sn(b)?)),
        SnatCmd::Cinf { a } => truth(sn(a)?.is_completely_infinite()),
    })
}

fn patch(c: &PatchCmd, ctx: &Context) -> Result<Answer, CliError> {
    match c {
        PatchCmd::Member { s, patch } => {
            let s: Supernatural = parse("supernatural", s)?;
            let m = parse_patch(patch)?.contains(&s);
            Ok(Answer::new(m.to_string(), json!({ "member": m })))
        }
        PatchCmd::Empty(args) | PatchCmd::Witness(args) => {
            let p = parse_patch(&args.patch)?;
            let base: Natural = parse("natural", &args.base)?;
            let excluded: Vec<Natural> = parse_list("natural", &args.exclude)?;
            let w = trace_nonempty_witness(&base, &p, &excluded).map_err(domain)?;
            let mut answer = if matches!(c, PatchCmd::Empty(_)) {
                let e = w.is_none();
                Answer::new(e.to_string(), json!({ "empty": e }))
            } else {
                let text = w.as_ref().map_or("none".to_string(), Supernatural::to_string);
                Answer::new(text, json!({ "witness": w.map(|w| w.to_string()) }))
            };
            if args.oracle {
                let restricted = PredicateSet::from_patch(oracle::restrict(&p, &ctx.universe));
                let naive = oracle::naive_uncovered(&base, &excluded, &restricted, &ctx.universe)
                    .map_err(domain)?;
                let e = naive.is_none();
                answer = answer.line(format!("oracle {e}"));
                answer.json["oracle_empty"] = json!(e);
            }
            Ok(answer)
        }
    }
}

fn sieve_of(args: &SieveArgs) -> Result<Sieve, CliError> {
    if let Some(s) = &args.sieve {
        return parse("sieve", s);
    }
    let base = args.base.as_deref().unwrap_or("1");
    let base: Natural = parse("natural", base)?;
    let gens = parse_list("natural", &args.gens)?;
    Sieve::new(base, gens).map_err(domain)
}

fn cover(c: &CoverCmd, ctx: &Context) -> Result<Answer, CliError> {
    let args = match c {
        CoverCmd::Check(a) | CoverCmd::Subcover(a) => a,
    };
    let sieve = sieve_of(args)?;
    let p = parse_patch(&args.patch)?;
    let mut answer = match c {
        CoverCmd::Check(_) => {
            let w = uncovered_witness(&sieve, &p).map_err(domain)?;
            let covers = w.is_none();
            let mut a = Answer::new(
                covers.to_string(),
                json!({ "cover": covers, "witness": w.as_ref().map(|w| w.to_string()) }),
            );
            if let Some(w) = w {
                a = a.line(format!("witness {w}"));
            }
            a
        }
        CoverCmd::Subcover(_) => {
            let sub = finite_subcover(&sieve, &p).map_err(domain)?;
            let doc = json!({ "subcover": sub.iter().map(|n| n.to_string()).collect::<Vec<_>>() });
            Answer::new(join(&sub), doc)
        }
    };
    if args.oracle {
        let restricted = PredicateSet::from_patch(oracle::restrict(&p, &ctx.universe));
        let naive = oracle::naive_cover(sieve.base(), sieve.generators(), &restricted, &ctx.universe)
            .map_err(domain)?;
        answer = answer.line(format!("oracle {naive}"));
        answer.json["oracle"] = json!(naive);
    }
    Ok(answer)
}

fn tower(c: &TowerCmd) -> Result<Answer, CliError> {
    match c {
        TowerCmd::Snat {
            chain,
            tail_base,
            tail_ratio,
        } => {
            let items: Vec<String> = chain.split(',').map(str::to_string).collect();
            let chain: Vec<Natural> = parse_list("natural", &items)?;
            let tail = match (tail_base, tail_ratio) {
                (Some(b), Some(r)) => Some(GeometricTail {
                    base: parse("natural", b)?,
                    ratio: parse("natural", r)?,
                }),
                _ => None,
            };
            let s = tower_supernatural(&chain, tail).map_err(domain)?;
            Ok(Answer::new(s.to_string(), json!({ "supernatural": s.to_string() })))
        }
        TowerCmd::Chain { s, length } => {
            let s: Supernatural = parse("supernatural", s)?;
            let chain = cofinal_chain(&s, *length).map_err(domain)?;
            let doc = json!({ "chain": chain.iter().map(|n| n.to_string()).collect::<Vec<_>>() });
            Ok(Answer::new(join(&chain), doc))
        }
    }
}

fn matrix_answer(m: &TowerMatrix) -> Answer {
    Answer::new(m.to_string(), json!({ "matrix": m.to_rows() }))
}

fn embedding_of(text: &str) -> Result<EmbeddingData, CliError> {
    if let Some(rest) = text.strip_prefix("standard:") {
        let (n, m) = rest
            .split_once(':')
            .ok_or_else(|| CliError::Parse(format!("expected standard:n:m, got {text:?}")))?;
        let n: u64 = parse("stage", n)?;
        let m: u64 = parse("stage", m)?;
        return EmbeddingData::standard(n, m).map_err(domain);
    }
    let images: Vec<TowerMatrix> = text
        .split('|')
        .map(|m| parse("matrix", m.trim()))
        .collect::<Result<_, _>>()?;
    let n = (images.len() as f64).sqrt().round() as u64;
    if n * n != images.len() as u64 {
        return Err(CliError::Parse(format!(
            "expected a square number of unit images, got {}",
            images.len()
        )));
    }
    EmbeddingData::new(n, images).map_err(domain)
}

fn pgl_of(text: &str) -> Result<PglElement, CliError> {
    PglElement::new(parse("matrix", text)?).map_err(domain)
}

fn mat(c: &MatCmd) -> Result<Answer, CliError> {
    match c {
        MatCmd::Embed { matrix, to } => {
            let x: TowerMatrix = parse("matrix", matrix)?;
            Ok(matrix_answer(&standard_embedding(&x, *to).map_err(domain)?))
        }
        MatCmd::Trace { matrix } => {
            let x: TowerMatrix = parse("matrix", matrix)?;
            let t = normalized_trace(&x);
            Ok(Answer::new(t.to_string(), json!({ "trace": t.to_string() })))
        }
        MatCmd::Conj { phi, psi } => {
            let g = skolem_noether_conjugator(&embedding_of(phi)?, &embedding_of(psi)?)
                .map_err(domain)?;
            Ok(matrix_answer(&g.normalized()))
        }
        MatCmd::Equivn { g, h, n } => {
            let e = pgl_equiv_n(&pgl_of(g)?, &pgl_of(h)?, *n).map_err(domain)?;
            Ok(Answer::new(e.to_string(), json!({ "equivalent": e })))
        }
        MatCmd::Rep {
            presentation,
            assign,
        } => {
            let r: AlgebraPresentation = parse("presentation", presentation)?;
            let mut values = BTreeMap::new();
            for a in assign {
                let (name, m) = a
                    .split_once('=')
                    .ok_or_else(|| CliError::Parse(format!("expected name=matrix, got {a:?}")))?;
                values.insert(name.trim().to_string(), parse::<TowerMatrix>("matrix", m)?);
            }
            let ok = check_representation(&r, &values).map_err(domain)?;
            Ok(Answer::new(ok.to_string(), json!({ "representation": ok })))
        }
    }
}
