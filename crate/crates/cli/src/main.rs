//! `ddseries`: batch front end to the `ddseries` library.
//!
//! Exit status is 0 on success, 2 on usage or validation errors and 3 when a
//! computation is inconclusive or misses its accuracy target.

mod config;
mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddseries::lfunc::{l_central_afe, l_value_hurwitz, LCache};
use ddseries::moment::{fit_moment, nonvanish_sweep, write_nonvanish_csv};
use ddseries::sieve::{fourth_moment_ratio, growth_table, large_sieve_trials, write_growth_csv};
use ddseries::special::SmoothWeight;
use ddseries::verify::{run_suite, Suite};
use ddseries::zseries::{funceq1_rhs, z_direct, z_swapped, BracketForm, ZPoint};
use ddseries::{EightChar, QuadChar, Value64, C64};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use config::{Common, Resolved};
use manifest::{manifest_path, RunManifest, CODE_VERSION};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(ddseries::Error),
}

impl From<ddseries::Error> for Failure {
    fn from(e: ddseries::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(
                ddseries::Error::Inconclusive { .. } | ddseries::Error::Accuracy { .. },
            ) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ddseries",
    version,
    about = "Twisted L-values, the series Z(s,w) and their checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// L(s, χ_{d0}χψ); the approximate functional equation at s = 1/2.
    Lvalue(LvalueArgs),
    /// Z(s, w; χψ, χ′ψ′) at level (M, N).
    Zvalue(ZvalueArgs),
    /// Seeded identity suites.
    Verify(VerifyArgs),
    /// First certified non-vanishing twist D(N) for odd primes N ≤ nmax.
    Nonvanish(NonvanishArgs),
    /// First moment S(X; χ̃_N) on a grid, fitted and residue main terms.
    Moment(MomentArgs),
    /// Large-sieve ratios, the fourth moment ratio or a growth table.
    Sieve(SieveArgs),
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("bad real part {re:?}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| format!("bad imaginary part {im:?}"))?;
    Ok(C64::new(re, im))
}

fn parse_char(s: &str) -> Result<QuadChar, String> {
    s.parse().map_err(|e: ddseries::Error| e.to_string())
}

fn parse_eight(s: &str) -> Result<EightChar, String> {
    s.parse().map_err(|e: ddseries::Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<(u64, u64), String> {
    let (p, q) = s
        .split_once('x')
        .ok_or_else(|| format!("shape {s:?} is not PxQ"))?;
    Ok((
        p.parse().map_err(|_| format!("bad P in {s:?}"))?,
        q.parse().map_err(|_| format!("bad Q in {s:?}"))?,
    ))
}

#[derive(Args, Debug, Serialize)]
struct LvalueArgs {
    /// Odd squarefree d0.
    #[arg(long)]
    d0: u64,
    /// Twist χ as `k` or `k:psi` (odd conductor k).
    #[arg(long, default_value = "1", value_parser = parse_char)]
    #[serde(serialize_with = "as_str")]
    chi: QuadChar,
    /// Extra mod-8 character ψ.
    #[arg(long, default_value = "1", value_parser = parse_eight)]
    #[serde(serialize_with = "as_str")]
    psi: EightChar,
    /// Point s as `re` or `re,im`.
    #[arg(long, default_value = "0.5", value_parser = parse_complex)]
    #[serde(serialize_with = "as_pair")]
    s: C64,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ZMethod {
    Direct,
    Swapped,
    Funceq,
}

#[derive(Args, Debug, Serialize)]
struct ZvalueArgs {
    #[arg(long, value_parser = parse_complex)]
    #[serde(serialize_with = "as_pair")]
    s: C64,
    #[arg(long, value_parser = parse_complex)]
    #[serde(serialize_with = "as_pair")]
    w: C64,
    #[arg(long, default_value_t = 1)]
    m: u64,
    #[arg(long, default_value_t = 1)]
    n: u64,
    /// χψ as `k` or `k:psi`.
    #[arg(long, default_value = "1", value_parser = parse_char)]
    #[serde(serialize_with = "as_str")]
    chi: QuadChar,
    /// χ′ψ′ as `k` or `k:psi`.
    #[arg(long, default_value = "1", value_parser = parse_char)]
    #[serde(serialize_with = "as_str")]
    chi_prime: QuadChar,
    #[arg(long, value_enum, default_value = "direct")]
    method: ZMethod,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Args, Debug, Serialize)]
struct NonvanishArgs {
    #[arg(long)]
    nmax: u64,
    /// Largest d tried before giving up on N.
    #[arg(long, default_value_t = 1000)]
    dmax: u64,
    /// Persistent L-value cache (CSV).
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Args, Debug, Serialize)]
struct MomentArgs {
    /// Odd prime N, or 1.
    #[arg(long)]
    n: u64,
    /// Comma-separated X values.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024")]
    grid: Vec<f64>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SieveKind {
    Large,
    Fourth,
    Growth,
}

#[derive(Args, Debug, Serialize)]
struct SieveArgs {
    #[arg(long, value_enum, default_value = "large")]
    kind: SieveKind,
    /// Large sieve shapes `PxQ`, repeatable.
    #[arg(long = "shape", value_parser = parse_shape, default_values = ["500x500", "2000x200", "200x2000", "2000x2000"])]
    shapes: Vec<(u64, u64)>,
    /// Coefficient draws per shape.
    #[arg(long, default_value_t = 100)]
    draws: usize,
    /// Fourth moment length X.
    #[arg(long, default_value_t = 200.0)]
    x: f64,
    /// Fourth moment point.
    #[arg(long, default_value = "0.5", value_parser = parse_complex)]
    #[serde(serialize_with = "as_pair")]
    s: C64,
    /// Growth table runs over P = 2^k for k ≤ kmax.
    #[arg(long, default_value_t = 10)]
    kmax: u32,
    #[arg(long, default_value = "1", value_parser = parse_char)]
    #[serde(serialize_with = "as_str")]
    chi: QuadChar,
    #[arg(long, default_value = "1", value_parser = parse_char)]
    #[serde(serialize_with = "as_str")]
    chi_prime: QuadChar,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

fn as_str<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn as_pair<S: serde::Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// What a subcommand produced: `data` goes to `--out` or stdout; `report`
/// always goes to stdout and replaces `data` there.
struct Output {
    data: Vec<u8>,
    report: Option<String>,
}

#[derive(Serialize)]
struct Scalar {
    re: f64,
    im: f64,
    abs_error: f64,
}

impl From<Value64> for Scalar {
    fn from(v: Value64) -> Self {
        Scalar {
            re: v.value.re,
            im: v.value.im,
            abs_error: v.abs_error,
        }
    }
}

fn json<T: Serialize>(x: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(x).expect("plain data serializes");
    v.push(b'\n');
    v
}

fn check_accuracy(v: Value64, target: f64) -> Result<Value64, Failure> {
    if !(v.abs_error <= target) {
        return Err(ddseries::Error::Accuracy {
            achieved: v.abs_error,
            target,
        }
        .into());
    }
    Ok(v)
}

fn open_cache(path: &Option<PathBuf>) -> Result<LCache, Failure> {
    Ok(match path {
        Some(p) => LCache::open(p)?,
        None => LCache::in_memory(),
    })
}

fn lvalue(a: &LvalueArgs, r: &Resolved) -> Result<Output, Failure> {
    let v = if a.s == C64::new(0.5, 0.0) {
        l_central_afe::<f64>(a.d0, &a.chi, a.psi, &r.policy)?
    } else {
        let xi = QuadChar::chi_d(a.d0)?.mul(&a.chi).with_eight(a.psi);
        l_value_hurwitz::<f64>(a.s, &xi)?
    };
    let v = check_accuracy(v, r.policy.tolerance)?;
    Ok(Output {
        data: json(&Scalar::from(v)),
        report: None,
    })
}

fn zvalue(a: &ZvalueArgs, r: &Resolved) -> Result<Output, Failure> {
    let p = ZPoint::new(a.s, a.w, a.chi, a.chi_prime, a.m, a.n)?;
    let v = match a.method {
        ZMethod::Direct => z_direct(&p, &r.policy)?,
        ZMethod::Swapped => z_swapped(&p, &r.policy)?,
        ZMethod::Funceq => funceq1_rhs(&p, BracketForm::Literal, &r.policy)?,
    };
    Ok(Output {
        data: json(&Scalar::from(v)),
        report: None,
    })
}

fn verify(a: &VerifyArgs, r: &Resolved) -> Result<Output, Failure> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse()?]
    };
    let mut out = Vec::new();
    for s in suites {
        out.push(run_suite(s, a.trials, r.seed, &r.policy)?);
    }
    let report = out
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        data: json(&out),
        report: Some(report),
    })
}

fn nonvanish(a: &NonvanishArgs, r: &Resolved) -> Result<Output, Failure> {
    let cache = open_cache(&a.cache)?;
    let recs = nonvanish_sweep(a.nmax, a.dmax, &r.policy, &cache)?;
    let mut data = Vec::new();
    write_nonvanish_csv(&mut data, &recs)?;
    Ok(Output { data, report: None })
}

fn moment(a: &MomentArgs, r: &Resolved) -> Result<Output, Failure> {
    let cache = open_cache(&a.cache)?;
    let rep = fit_moment(a.n, &a.grid, &SmoothWeight::bump_h(), &r.policy, &cache)?;
    Ok(Output {
        data: json(&rep),
        report: None,
    })
}

#[derive(Serialize)]
struct TrialRow {
    #[serde(rename = "P")]
    p: u64,
    #[serde(rename = "Q")]
    q: u64,
    draw: usize,
    ratio: f64,
}

#[derive(Serialize)]
struct FourthRow {
    #[serde(rename = "X")]
    x: f64,
    s: [f64; 2],
    ratio: f64,
}

fn sieve(a: &SieveArgs, r: &Resolved) -> Result<Output, Failure> {
    let mut data = Vec::new();
    match a.kind {
        SieveKind::Large => {
            let mut w = csv::Writer::from_writer(&mut data);
            for (i, &(p, q)) in a.shapes.iter().enumerate() {
                let ratios = large_sieve_trials(p, q, a.draws, r.seed.wrapping_add(i as u64))?;
                for (draw, ratio) in ratios.into_iter().enumerate() {
                    w.serialize(TrialRow { p, q, draw, ratio })
                        .map_err(ddseries::Error::from)?;
                }
            }
            w.flush().map_err(ddseries::Error::from)?;
        }
        SieveKind::Fourth => {
            let ratio = fourth_moment_ratio(a.x, &a.chi, a.s, &r.policy)?;
            data = json(&FourthRow {
                x: a.x,
                s: [a.s.re, a.s.im],
                ratio,
            });
        }
        SieveKind::Growth => {
            if a.kmax > 16 {
                return Err(Failure::Usage(format!("--kmax {} is above 16", a.kmax)));
            }
            write_growth_csv(&mut data, &growth_table(1..=a.kmax, &a.chi, &a.chi_prime))?;
        }
    }
    Ok(Output { data, report: None })
}

fn parameters<T: Serialize>(args: &T, r: &Resolved) -> serde_json::Map<String, serde_json::Value> {
    let mut map = match serde_json::to_value(args) {
        Ok(serde_json::Value::Object(m)) => m,
        _ => serde_json::Map::new(),
    };
    map.insert("seed".into(), r.seed.into());
    map
}

fn execute(cmd: &Cmd) -> Result<(), Failure> {
    let (name, common) = match cmd {
        Cmd::Lvalue(a) => ("lvalue", &a.common),
        Cmd::Zvalue(a) => ("zvalue", &a.common),
        Cmd::Verify(a) => ("verify", &a.common),
        Cmd::Nonvanish(a) => ("nonvanish", &a.common),
        Cmd::Moment(a) => ("moment", &a.common),
        Cmd::Sieve(a) => ("sieve", &a.common),
    };
    let r = common.resolve()?;
    let start = Instant::now();
    let run = || match cmd {
        Cmd::Lvalue(a) => lvalue(a, &r).map(|o| (o, parameters(a, &r))),
        Cmd::Zvalue(a) => zvalue(a, &r).map(|o| (o, parameters(a, &r))),
        Cmd::Verify(a) => verify(a, &r).map(|o| (o, parameters(a, &r))),
        Cmd::Nonvanish(a) => nonvanish(a, &r).map(|o| (o, parameters(a, &r))),
        Cmd::Moment(a) => moment(a, &r).map(|o| (o, parameters(a, &r))),
        Cmd::Sieve(a) => sieve(a, &r).map(|o| (o, parameters(a, &r))),
    };
    let (out, params) = match r.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let wall_time = start.elapsed().as_secs_f64();

    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    let io = |e: std::io::Error| Failure::Lib(e.into());
    if let Some(rep) = &out.report {
        writeln!(stdout, "{rep}").map_err(io)?;
    }
    match &common.out {
        Some(path) => {
            std::fs::write(path, &out.data).map_err(io)?;
            let m = RunManifest {
                subcommand: name.into(),
                parameters: params,
                policy: r.policy.clone(),
                code_version: CODE_VERSION.into(),
                outputs: vec![path.display().to_string()],
                wall_time,
            };
            std::fs::write(manifest_path(path), json(&m)).map_err(io)?;
        }
        None if out.report.is_none() => stdout.write_all(&out.data).map_err(io)?,
        None => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
