use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graded_lie::algebra::{GradedAlgebra, DEFAULT_WORD_CAP};
use graded_lie::duality::{lie_to_comm, QuadraticData};
use graded_lie::enveloping::{build_enveloping, lie_components};
use graded_lie::homology::{is_bloch_kato, is_koszul, is_universally_koszul, koszul_series_check, UniversalReport};
use graded_lie::kurosh::{freeness_check, kurosh_decompose, KuroshDecomposition};
use graded_lie::linalg::{SVec, Subspace};
use graded_lie::presentation::{parse_file, LiePresentation};
use graded_lie::products::{
    cohomology_sum_check, free_product_lie, hilbert_identity_failure, mayer_vietoris_check, MvReport,
};
use graded_lie::strategy::Strategy;
use graded_lie::{with_field, Field, FieldSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "graded-lie", version, about = "Truncated homology of positively graded Lie algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Ground field override: Q or F<p>.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Truncation bound override.
    #[arg(long, short = 'N', global = true)]
    truncation: Option<usize>,
    /// exhaustive | coordinate | coordinate+random(k[, seed]).
    #[arg(long, global = true)]
    strategy: Option<Strategy>,
    /// Seed for sampled strategies.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the subspace deciders (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest number of tensor words or subspaces a computation may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_CAP, value_parser = parse_cap)]
    cap: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti table of the trivial module over U(L).
    Betti(Inputs),
    /// Decide a property up to the truncation bound.
    Check {
        #[arg(value_enum)]
        which: Property,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Quadratic dual of U(L) and the associated graded-commutative algebra.
    Dual(Inputs),
    /// Free product of two algebras with its exactness and cohomology checks.
    Product(Inputs),
    /// Decomposition of the subalgebra of A * B generated by H_1.
    Kurosh {
        #[command(flatten)]
        inputs: Inputs,
        /// Vectors of H_1 in the basis A_1 (+) B_1, e.g. "1,0,0; 0,1,1".
        #[arg(long, conflicts_with = "h1_file")]
        h1: Option<String>,
        /// File holding the H_1 vectors, one per line.
        #[arg(long)]
        h1_file: Option<PathBuf>,
    },
    /// Mayer-Vietoris sequence for a free product, or for one algebra split
    /// into its first `--split` generators and the rest.
    MvCheck {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        split: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    /// Presentation files; their algebra stanzas are used in order.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Use only the stanzas with these names, in this order.
    #[arg(long = "algebra", short = 'a')]
    names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Koszul,
    UniversallyKoszul,
    BlochKato,
    Free,
}

fn parse_cap(s: &str) -> Result<u128, String> {
    let cap: u128 = s.parse().map_err(|_| format!("bad cap `{s}`"))?;
    if cap == 0 {
        return Err("cap must be positive".into());
    }
    Ok(cap)
}

/// Envelope shared by every command's JSON output.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct Report {
    schema: u32,
    version: String,
    command: String,
    field: String,
    #[serde(rename = "N")]
    n: usize,
    strategy: String,
    seed: Option<u64>,
    wall_time: f64,
    passed: bool,
    result: Value,
}

struct Outcome {
    passed: bool,
    result: Value,
    text: String,
}

#[derive(Debug)]
enum Failure {
    Io(anyhow::Error),
    Input(anyhow::Error),
}

impl From<graded_lie::Error> for Failure {
    fn from(e: graded_lie::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

/// Effective settings after overrides.
struct RunConfig {
    opts: Opts,
    n: usize,
    strategy: Strategy,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { EXIT_FAILED }),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(inputs: &Inputs, opts: &Opts) -> Result<Vec<LiePresentation>, Failure> {
    let mut all = Vec::new();
    for path in &inputs.files {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))
            .map_err(Failure::Io)?;
        let parsed = parse_file(&text).with_context(|| format!("in {}", path.display()))?;
        all.extend(parsed);
    }
    let mut chosen = if inputs.names.is_empty() {
        all
    } else {
        inputs
            .names
            .iter()
            .map(|n| all.iter().find(|p| &p.name == n).cloned().ok_or(graded_lie::Error::NoSuchAlgebra(n.clone())))
            .collect::<Result<Vec<_>, _>>()?
    };
    for p in chosen.iter_mut() {
        if let Some(f) = opts.field {
            *p = p.with_field(f)?;
        }
        if let Some(n) = opts.truncation {
            *p = p.with_truncation(n)?;
        }
    }
    Ok(chosen)
}

fn take<const M: usize>(algebras: Vec<LiePresentation>) -> Result<[LiePresentation; M], Failure> {
    let got = algebras.len();
    if got < M {
        return Err(anyhow!("expected {M} algebra stanza(s), found {got}").into());
    }
    Ok(algebras.into_iter().take(M).collect::<Vec<_>>().try_into().expect("length checked"))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    let (inputs, name) = match &cli.command {
        Command::Betti(i) => (i, "betti".to_string()),
        Command::Check { which, inputs } => {
            (inputs, format!("check {}", which.to_possible_value().unwrap().get_name()))
        }
        Command::Dual(i) => (i, "dual".into()),
        Command::Product(i) => (i, "product".into()),
        Command::Kurosh { inputs, .. } => (inputs, "kurosh".into()),
        Command::MvCheck { inputs, .. } => (inputs, "mv-check".into()),
    };
    let algebras = load(inputs, &cli.opts)?;
    let first = algebras.first().ok_or_else(|| anyhow!("no algebra stanza in the input"))?;
    let field = first.field;
    let n = first.truncation;
    if let Some(p) = algebras.iter().find(|p| p.field != field || p.truncation != n) {
        return Err(anyhow!("algebra `{}` differs in field or truncation; use --field/--truncation", p.name).into());
    }
    let mut strategy = cli.opts.strategy.unwrap_or(if field.is_finite() {
        Strategy::Exhaustive
    } else {
        Strategy::CoordinateRandom { count: 20, seed: 0 }
    });
    if let Some(seed) = cli.opts.seed {
        strategy = strategy.with_seed(seed);
    }
    let ctx = RunConfig { opts: cli.opts.clone(), n, strategy };
    let outcome = with_field!(field, |k| dispatch(&k, &ctx, &cli.command, algebras))?;
    let report = Report {
        schema: 1,
        version: env!("CARGO_PKG_VERSION").into(),
        command: name,
        field: field.to_string(),
        n,
        strategy: strategy.to_string(),
        seed: strategy.seed().or(cli.opts.seed),
        wall_time: start.elapsed().as_secs_f64(),
        passed: outcome.passed,
        result: outcome.result,
    };
    let out = match cli.opts.format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n",
        Format::Table => format!(
            "{}-- {} over {}, N = {}, strategy {}, {:.2} s, {}\n",
            outcome.text,
            report.command,
            report.field,
            report.n,
            report.strategy,
            report.wall_time,
            if report.passed { "passed" } else { "FAILED" }
        ),
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(Failure::Io(e.into())),
        _ => {}
    }
    Ok(report.passed)
}

fn dispatch<K: Field>(
    k: &K,
    ctx: &RunConfig,
    command: &Command,
    algebras: Vec<LiePresentation>,
) -> Result<Outcome, Failure> {
    match command {
        Command::Betti(_) => cmd_betti(k, ctx, take::<1>(algebras)?[0].clone()),
        Command::Check { which, .. } => cmd_check(k, ctx, *which, take::<1>(algebras)?[0].clone()),
        Command::Dual(_) => cmd_dual(k, ctx, take::<1>(algebras)?[0].clone()),
        Command::Product(_) => {
            let [a, b] = take::<2>(algebras)?;
            cmd_product(k, ctx, &a, &b)
        }
        Command::Kurosh { h1, h1_file, .. } => {
            let [a, b] = take::<2>(algebras)?;
            let text = match (h1, h1_file) {
                (Some(s), _) => s.clone(),
                (None, Some(path)) => read(path)?,
                (None, None) => return Err(anyhow!("kurosh needs --h1 or --h1-file").into()),
            };
            let h = parse_vectors(k, &text, a.gens() + b.gens())?;
            cmd_kurosh(k, ctx, &a, &b, &h)
        }
        Command::MvCheck { split, .. } => {
            if algebras.len() >= 2 {
                let [a, b] = take::<2>(algebras)?;
                let fp = free_product_lie(&a, &b)?;
                mv_outcome(k, ctx, &fp, a.gens())
            } else {
                let [p] = take::<1>(algebras)?;
                let s = split.unwrap_or(p.gens() / 2);
                if s > p.gens() {
                    return Err(anyhow!("--split {s} exceeds the {} generators", p.gens()).into());
                }
                mv_outcome(k, ctx, &p, s)
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(Failure::Io)
}

fn parse_scalar<K: Field>(k: &K, s: &str) -> anyhow::Result<K::Elem> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().with_context(|| format!("bad coefficient `{s}`"))?;
    let den: i64 = den.parse().with_context(|| format!("bad coefficient `{s}`"))?;
    let den = k.from_i64(den);
    if k.is_zero(&den) {
        bail!("coefficient `{s}` has a vanishing denominator");
    }
    Ok(k.mul(&k.from_i64(num), &k.inv(&den)))
}

/// Vectors separated by `;` or newlines, entries by `,` or whitespace.
fn parse_vectors<K: Field>(k: &K, text: &str, dim: usize) -> Result<Subspace<K>, Failure> {
    let mut vecs = Vec::new();
    for row in text.split([';', '\n']) {
        let row = row.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        let entries: Vec<K::Elem> = row
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_scalar(k, t))
            .collect::<anyhow::Result<_>>()?;
        if entries.len() != dim {
            return Err(graded_lie::Error::WrongLength { got: entries.len(), expected: dim }.into());
        }
        vecs.push(SVec::from_dense(k, &entries));
    }
    Ok(Subspace::from_vectors(k, dim, vecs.iter()))
}

fn envelope<K: Field>(k: &K, ctx: &RunConfig, p: &LiePresentation) -> Result<GradedAlgebra<K>, Failure> {
    Ok(build_enveloping(k, p, ctx.opts.cap)?)
}

fn header(p: &LiePresentation) -> String {
    format!("{}: {}\n", p.name, p)
}

fn cmd_betti<K: Field>(k: &K, ctx: &RunConfig, p: LiePresentation) -> Result<Outcome, Failure> {
    let u = envelope(k, ctx, &p)?;
    let cert = is_koszul(&u)?;
    let mut text = header(&p);
    let _ = writeln!(text, "dim U_n: {:?}", u.dims());
    text.push_str(&cert.betti.render());
    let _ = writeln!(text, "verdict: {}", cert.verdict());
    let result = json!({
        "algebra": p.name,
        "dims": u.dims(),
        "betti": cert.betti,
        "verdict": cert.verdict(),
        "witness": cert.witness,
    });
    Ok(Outcome { passed: true, result, text })
}

fn universal_text(r: &UniversalReport) -> String {
    let mut text = format!("verdict: {} ({} subspaces, {})\n", r.verdict(), r.tested, r.strategy);
    if let Some(w) = &r.witness {
        let rows: Vec<String> = w.basis.iter().map(|v| format!("({})", v.join(", "))).collect();
        let _ = writeln!(text, "witness: span{{{}}}: {}", rows.join(", "), w.reason);
    }
    text
}

fn cmd_check<K: Field>(k: &K, ctx: &RunConfig, which: Property, p: LiePresentation) -> Result<Outcome, Failure> {
    let mut text = header(&p);
    let cap = ctx.opts.cap;
    let (passed, result) = match which {
        Property::Koszul => {
            let cert = is_koszul(&envelope(k, ctx, &p)?)?;
            text.push_str(&cert.betti.render());
            let _ = writeln!(text, "verdict: {}", cert.verdict());
            (cert.koszul, json!({ "verdict": cert.verdict(), "witness": cert.witness, "betti": cert.betti }))
        }
        Property::UniversallyKoszul => {
            let comm = lie_to_comm(k, &p)?;
            let a = comm.algebra(ctx.n, cap)?;
            let r = is_universally_koszul(&a, ctx.strategy, cap)?;
            let _ = writeln!(text, "graded-commutative algebra: dims {:?}", a.dims());
            text.push_str(&universal_text(&r));
            (r.passed, json!({ "verdict": r.verdict(), "report": r, "dims": a.dims() }))
        }
        Property::BlochKato => {
            let r = is_bloch_kato(k, &p, ctx.strategy, cap)?;
            text.push_str(&universal_text(&r));
            (r.passed, json!({ "verdict": r.verdict(), "report": r }))
        }
        Property::Free => {
            let u = envelope(k, ctx, &p)?;
            let r = freeness_check(&u)?;
            let verdict = if r.free { format!("free-up-to-{}", r.bound) } else { "fails".to_string() };
            let _ = writeln!(text, "verdict: {verdict}");
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness: b[{}][{}] = {}", w.i, w.j, w.b);
            }
            if !r.consistent() {
                return Err(anyhow!("H^2 and the necklace counts disagree: {r:?}").into());
            }
            (r.free, json!({ "verdict": verdict, "report": r }))
        }
    };
    Ok(Outcome { passed, result, text })
}

/// A tensor vector on `names` as a sum of degree-2 words.
fn render_tensor<K: Field>(k: &K, names: &[String], v: &SVec<K::Elem>) -> String {
    let d = names.len();
    render_sum(k, v, |idx| format!("{}*{}", names[idx / d], names[idx % d]))
}

/// `sum c_i label(i)` with unit coefficients and signs folded in.
fn render_sum<K: Field>(k: &K, v: &SVec<K::Elem>, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (idx, c) in v.iter() {
        let word = label(*idx);
        let neg = k.is_zero(&k.add(c, &k.one())) && k.characteristic() != 2;
        let coeff = if k.is_one(c) {
            String::new()
        } else if neg {
            "-".into()
        } else {
            format!("{}*", k.display(c))
        };
        if out.is_empty() {
            out = format!("{coeff}{word}");
        } else if let Some(rest) = coeff.strip_prefix('-') {
            let _ = write!(out, " - {rest}{word}");
        } else {
            let _ = write!(out, " + {coeff}{word}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn cmd_dual<K: Field>(k: &K, ctx: &RunConfig, p: LiePresentation) -> Result<Outcome, Failure> {
    let u = envelope(k, ctx, &p)?;
    let q = QuadraticData::from_algebra(&u)?;
    let dual = q.dual();
    let a_dual = dual.algebra(ctx.n, ctx.opts.cap)?;
    let rels: Vec<String> = dual.relations.basis().iter().map(|v| render_tensor(k, &dual.names, v)).collect();
    let series = koszul_series_check(u.dims(), a_dual.dims());
    let comm = if p.is_quadratic() {
        let c = lie_to_comm(k, &p)?;
        let pairs = graded_lie::duality::exterior_pairs(c.names.len());
        let omega: Vec<String> = c
            .omega
            .basis()
            .iter()
            .map(|v| {
                render_sum(k, v, |i| {
                    let (a, b) = pairs[i];
                    format!("{}^{}", c.names[a], c.names[b])
                })
            })
            .collect();
        Some(json!({ "generators": c.names, "omega": omega, "dims": c.algebra(ctx.n, ctx.opts.cap)?.dims() }))
    } else {
        None
    };
    let mut text = header(&p);
    let _ = writeln!(text, "dim U_n:   {:?}", u.dims());
    let _ = writeln!(text, "dim U^!_n: {:?}", a_dual.dims());
    let _ = writeln!(text, "relations of U^! ({}):", rels.len());
    for r in &rels {
        let _ = writeln!(text, "  {r}");
    }
    match series {
        None => text.push_str("h_U(t) h_U!(-t) = 1 through N\n"),
        Some(n) => {
            let _ = writeln!(text, "h_U(t) h_U!(-t) differs from 1 in degree {n}");
        }
    }
    if let Some(c) = &comm {
        let omega = c["omega"].as_array().map(|o| o.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", "));
        let omega = omega.filter(|o| !o.is_empty()).unwrap_or_else(|| "none".into());
        let _ = writeln!(text, "graded-commutative model: dims {}, relations {omega}", c["dims"]);
    }
    let result = json!({
        "dims": u.dims(),
        "dual_generators": dual.names,
        "dual_relations": rels,
        "dual_dims": a_dual.dims(),
        "series_failure": series,
        "commutative": comm,
    });
    Ok(Outcome { passed: true, result, text })
}

fn mv_text(r: &MvReport) -> String {
    let mut text = String::from("   n  dim U  ind_A  ind_B  rank  exact\n");
    for d in &r.per_degree {
        let _ = writeln!(
            text,
            "{:>4} {:>6} {:>6} {:>6} {:>5}  {}",
            d.n,
            d.dim_u,
            d.dim_ind_a,
            d.dim_ind_b,
            d.rank,
            if d.passed { "yes" } else { "no" }
        );
    }
    text
}

fn mv_outcome<K: Field>(k: &K, ctx: &RunConfig, p: &LiePresentation, split: usize) -> Result<Outcome, Failure> {
    let u = envelope(k, ctx, p)?;
    let a1 = Subspace::coordinate(k, u.gens(), &(0..split).collect::<Vec<_>>());
    let b1 = Subspace::coordinate(k, u.gens(), &(split..u.gens()).collect::<Vec<_>>());
    let r = mayer_vietoris_check(&u, &a1, &b1)?;
    let mut text = header(p);
    let _ = writeln!(text, "split: {:?} | {:?}", &p.generators[..split], &p.generators[split..]);
    text.push_str(&mv_text(&r));
    Ok(Outcome { passed: r.passed(), result: json!({ "algebra": p.name, "split": split, "report": r }), text })
}

fn cmd_product<K: Field>(k: &K, ctx: &RunConfig, a: &LiePresentation, b: &LiePresentation) -> Result<Outcome, Failure> {
    let fp = free_product_lie(a, b)?;
    let u = envelope(k, ctx, &fp)?;
    let (ua, ub) = (envelope(k, ctx, a)?, envelope(k, ctx, b)?);
    let a1 = Subspace::coordinate(k, u.gens(), &(0..a.gens()).collect::<Vec<_>>());
    let b1 = Subspace::coordinate(k, u.gens(), &(a.gens()..u.gens()).collect::<Vec<_>>());
    let mv = mayer_vietoris_check(&u, &a1, &b1)?;
    let sum = cohomology_sum_check(k, a, b, ctx.opts.cap)?;
    let hilbert = hilbert_identity_failure(u.dims(), ua.dims(), ub.dims());
    let lie = lie_components(&u).dims();
    let passed = mv.passed() && sum.passed && hilbert.is_none();
    let mut text = header(&fp);
    text.push_str(&fp.to_stanza());
    let _ = writeln!(text, "dim U_n: {:?}", u.dims());
    let _ = writeln!(text, "dim L_n: {:?}", &lie[1..]);
    text.push_str("Mayer-Vietoris:\n");
    text.push_str(&mv_text(&mv));
    text.push_str("Betti table of the product:\n");
    text.push_str(&sum.product.render());
    let _ = writeln!(text, "equals the sum of the factor tables: {}", if sum.passed { "yes" } else { "no" });
    let _ = writeln!(
        text,
        "1/h_F = 1/h_A + 1/h_B - 1: {}",
        hilbert.map_or("holds through N".to_string(), |n| format!("fails in degree {n}"))
    );
    let result = json!({
        "product": fp.to_stanza(),
        "dims": u.dims(),
        "lie_dims": &lie[1..],
        "mayer_vietoris": mv,
        "cohomology_sum": sum,
        "hilbert_identity_failure": hilbert,
    });
    Ok(Outcome { passed, result, text })
}

fn cmd_kurosh<K: Field>(
    k: &K,
    ctx: &RunConfig,
    a: &LiePresentation,
    b: &LiePresentation,
    h1: &Subspace<K>,
) -> Result<Outcome, Failure> {
    let d: KuroshDecomposition = kurosh_decompose(k, a, b, h1, ctx.strategy, ctx.opts.cap)?;
    let rows = |vs: &[Vec<String>]| -> String {
        let r: Vec<String> = vs.iter().map(|v| format!("({})", v.join(", "))).collect();
        format!("{{{}}}", r.join(", "))
    };
    let mut text = format!("{} * {}, H_1 of dimension {}\n", a.name, b.name, h1.dim());
    let _ = writeln!(text, "B_A = {}\nB_B = {}\nW   = {}", rows(&d.b_a), rows(&d.b_b), rows(&d.w));
    text.push_str("model:\n");
    text.push_str(&d.model_presentation);
    text.push_str("   n  subalgebra  model\n");
    for c in &d.per_degree {
        let _ = writeln!(text, "{:>4} {:>11} {:>6}", c.n, c.dim_subalgebra, c.dim_model);
    }
    let _ = writeln!(text, "verdict: {:?}", d.verdict);
    for f in &d.conditional_flags {
        let _ = writeln!(text, "flag: {f}");
    }
    let passed = d.verified();
    let result = serde_json::to_value(&d).map_err(anyhow::Error::from)?;
    Ok(Outcome { passed, result, text })
}
