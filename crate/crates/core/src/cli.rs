//! Command-line surface for the `eigenwalk` binary.
//!
//! Every command prints one JSON document (or CSV with `--csv`) on stdout.
//! Diagnostics, cache hits and timings go to stderr so that stdout is
//! byte-identical across runs.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheKey};
use crate::eigencurve::{self, EigencurvePoint};
use crate::error::{Error, ExitClass, Result};
use crate::fixtures;
use crate::linalg;
use crate::overconvergent::{self, TruncatedCompactOperator};
use crate::padic::{self, newton_slopes, Valuation};
use crate::pingpong::{self, PingPongCertificate};
use crate::rational::{self, Q};
use crate::spaces::{self, HeckeOp, Level, OperatorMatrix, Subspace};
use crate::weightspace::{self, WeightCharacter};

/// Version of the stdout JSON layout.
pub const OUTPUT_SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "eigenwalk", version, about = "Exact 2-adic slopes, weight-space valuations and annulus-walk certificates")]
pub struct Cli {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output where the command has a tabular form.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Cache directory; overrides EIGENWALK_CACHE_DIR.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Recompute cached results and fail if they differ from the stored bytes.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubspaceArg {
    Full,
    ConstantFree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial and slopes of a Hecke operator.
    Slopes {
        #[arg(long)]
        level: Level,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "u2")]
        op: HeckeOp,
        /// Prime for valuations.
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// q-precision hint for the basis.
        #[arg(long)]
        prec: Option<usize>,
        /// Defaults to constant-free (cusp forms) at level one, full otherwise.
        #[arg(long, value_enum)]
        subspace: Option<SubspaceArg>,
    },
    /// A point, its twin and their annulus indices.
    Twin {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Build, verify or check an annulus-walk certificate.
    Pingpong {
        i_start: Option<u64>,
        i_end: Option<u64>,
        /// Run the checker on the built certificate.
        #[arg(long)]
        verify: bool,
        /// Write the certificate to a file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
        /// Verify a certificate read from a file instead of building one.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["i_start", "i_end", "emit"])]
        check: Option<PathBuf>,
        /// Seed eigenvalue for the regularity assumption.
        #[arg(long, allow_hyphen_values = true, requires_all = ["k", "n"])]
        ap: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Write the annulus ladder (step, index, slope) as plot data.
        #[arg(long, value_name = "FILE")]
        plot: Option<PathBuf>,
    },
    /// Slopes of truncated U2 on overconvergent weight-0 forms.
    Oc {
        #[arg(long, visible_alias = "n", default_value_t = 20)]
        trunc: usize,
        /// q-precision; defaults to 4N + 8.
        #[arg(long)]
        prec: Option<usize>,
        /// Larger truncation to compare slope prefixes with.
        #[arg(long, value_name = "N")]
        compare: Option<usize>,
        /// Write index/slope plot data.
        #[arg(long, value_name = "FILE")]
        plot: Option<PathBuf>,
    },
    /// Whether `X^2 - a X + p^(k-1)` has root ratio of order > n - 1.
    #[command(allow_negative_numbers = true)]
    Nregular { a: String, k: u32, p: u64, n: u32 },
    /// T2 congruences and slopes on level-one cusp forms.
    Hatada {
        #[arg(long, default_value_t = 12)]
        kmin: u32,
        #[arg(long, default_value_t = 60)]
        kmax: u32,
        /// Write weight/slope plot data.
        #[arg(long, value_name = "FILE")]
        plot: Option<PathBuf>,
    },
    /// Valuation of the weight coordinate of `z -> z^k chi^m`.
    Wval { k: u32, m: u32 },
    /// Recompute every fixture with its independent oracle.
    Oracles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(class: ExitClass) -> i32 {
    match class {
        ExitClass::Precondition => 2,
        ExitClass::Verification => 3,
        ExitClass::Internal => 4,
    }
}

enum Failure {
    Error(Error),
    /// Output is still printed, but the command reports a failed check.
    Verification(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Error(e.into())
    }
}

struct Ctx {
    csv: bool,
    cache: Option<Cache>,
    verify_cache: bool,
    log: Vec<String>,
}

impl Ctx {
    fn cached(&mut self, key: &CacheKey, compute: impl Fn() -> Result<String>) -> std::result::Result<String, Failure> {
        let Some(cache) = &self.cache else {
            return Ok(compute()?);
        };
        match cache.get(key) {
            Some(hit) if self.verify_cache => {
                let fresh = compute()?;
                if fresh != hit {
                    return Err(Failure::Verification(
                        String::new(),
                        format!("cache entry {} differs from recomputation", key.digest()),
                    ));
                }
                self.log.push(format!("cache: verified {}", key.digest()));
                Ok(fresh)
            }
            Some(hit) => {
                self.log.push(format!("cache: hit {}", key.digest()));
                Ok(hit)
            }
            None => {
                let fresh = compute()?;
                cache.put(key, &fresh)?;
                self.log.push(format!("cache: stored {}", key.digest()));
                Ok(fresh)
            }
        }
    }
}

pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: Cli) -> Output {
    let cache = match Cache::from_env(cli.cache_dir.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            return Output {
                code: exit_code(e.exit_class()),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let mut ctx = Ctx {
        csv: cli.csv,
        cache,
        verify_cache: cli.verify_cache,
        log: Vec::new(),
    };
    let result = dispatch(&mut ctx, cli.command);
    let mut stderr: String = ctx.log.iter().map(|l| format!("{l}\n")).collect();
    match result {
        Ok(stdout) => Output { code: 0, stdout, stderr },
        Err(Failure::Error(e)) => {
            stderr.push_str(&format!("error: {e}\n"));
            Output {
                code: exit_code(e.exit_class()),
                stdout: String::new(),
                stderr,
            }
        }
        Err(Failure::Verification(stdout, msg)) => {
            stderr.push_str(&format!("verification failed: {msg}\n"));
            Output { code: 3, stdout, stderr }
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> std::result::Result<String, Failure> {
    match cmd {
        Command::Slopes {
            level,
            k,
            op,
            p,
            prec,
            subspace,
        } => cmd_slopes(ctx, level, k, op, p, prec, subspace),
        Command::Twin { k, m, slope } => cmd_twin(k, m, &slope),
        Command::Pingpong {
            i_start,
            i_end,
            verify,
            emit,
            check,
            ap,
            k,
            n,
            p,
            plot,
        } => match check {
            Some(path) => cmd_pingpong_check(&path),
            None => {
                let (i, j) = match (i_start, i_end) {
                    (Some(i), Some(j)) => (i, j),
                    _ => return Err(Error::Precondition("pingpong needs I_START I_END or --check FILE".into()).into()),
                };
                let seed = match ap {
                    Some(a) => Some((rational::parse(&a)?, k.unwrap_or_default(), n.unwrap_or_default())),
                    None => None,
                };
                cmd_pingpong(i, j, verify, emit, seed, p, plot)
            }
        },
        Command::Oc {
            trunc,
            prec,
            compare,
            plot,
        } => cmd_oc(ctx, trunc, prec, compare, plot),
        Command::Nregular { a, k, p, n } => cmd_nregular(&a, k, p, n),
        Command::Hatada { kmin, kmax, plot } => cmd_hatada(ctx, kmin, kmax, plot),
        Command::Wval { k, m } => cmd_wval(k, m),
        Command::Oracles => cmd_oracles(),
    }
}

fn doc(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values always serialize");
    s.push('\n');
    s
}

fn qs(x: &Q) -> Value {
    Value::String(rational::pretty(x))
}

fn classify(slope: &Q, k: u32) -> &'static str {
    let bound = rational::q(k as i64 - 1);
    if slope.is_zero() {
        "ordinary"
    } else if !slope.is_negative() && *slope < bound {
        "numerically_non_critical"
    } else {
        "neither"
    }
}

fn operator(level: Level, k: u32, op: HeckeOp, subspace: Subspace, prec_hint: usize) -> Result<OperatorMatrix> {
    let full = spaces::build_basis(level, k, prec_hint)?;
    let basis = match subspace {
        Subspace::Full => full,
        Subspace::ConstantFree => spaces::constant_free_subspace(&full),
    };
    spaces::operator_matrix(op, &basis)
}

fn cmd_slopes(
    ctx: &mut Ctx,
    level: Level,
    k: u32,
    op: HeckeOp,
    p: u64,
    prec: Option<usize>,
    subspace: Option<SubspaceArg>,
) -> std::result::Result<String, Failure> {
    if !padic::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} is not prime")).into());
    }
    let subspace = match subspace {
        Some(SubspaceArg::Full) => Subspace::Full,
        Some(SubspaceArg::ConstantFree) => Subspace::ConstantFree,
        None if level == Level::Sl2z => Subspace::ConstantFree,
        None => Subspace::Full,
    };
    let base = spaces::working_prec(level, k);
    let hint = prec.unwrap_or(op.prime().max(2) as usize * base).max(base);
    let sub_tag = match subspace {
        Subspace::Full => "full",
        Subspace::ConstantFree => "constant_free",
    };
    let key = CacheKey::new(level.name(), k, format!("{op}/{sub_tag}"), hint);
    let payload = ctx.cached(&key, || {
        Ok(serde_json::to_string(&operator(level, k, op, subspace, hint)?)?)
    })?;
    let m: OperatorMatrix = serde_json::from_str(&payload)?;

    let cp = spaces::charpoly(&m);
    let slopes = if m.dim() == 0 {
        padic::RootValuations {
            slopes: vec![],
            zero_roots: 0,
        }
    } else {
        newton_slopes(&cp, p)?
    };
    let eigenvalues: Vec<(Q, usize)> = linalg::rational_roots(&cp);
    let mut refinements = Vec::new();
    if matches!(op, HeckeOp::T(q) if q == p) {
        for (a, mult) in &eigenvalues {
            let r = spaces::refinement(a, k, p);
            refinements.push(json!({
                "a_p": qs(a),
                "multiplicity": mult,
                "slopes": [qs(&r.alpha_val), qs(&r.beta_val)],
                "classification": [classify(&r.alpha_val, k), classify(&r.beta_val, k)],
            }));
        }
    }

    if ctx.csv {
        let mut s = String::from("index,slope,classification\n");
        for (i, v) in slopes.slopes.iter().enumerate() {
            s.push_str(&format!("{i},{},{}\n", rational::pretty(v), classify(v, k)));
        }
        for i in 0..slopes.zero_roots {
            s.push_str(&format!("{},inf,neither\n", slopes.slopes.len() + i));
        }
        return Ok(s);
    }
    Ok(doc(json!({
        "schema": OUTPUT_SCHEMA,
        "level": level.name(),
        "k": k,
        "op": op.to_string(),
        "p": p,
        "subspace": sub_tag,
        "dim": m.dim(),
        "prec": m.prec_used,
        "charpoly": rational::poly_to_string(&cp),
        "charpoly_coefficients": cp.iter().map(qs).collect::<Vec<_>>(),
        "slopes": slopes.slopes.iter().map(qs).collect::<Vec<_>>(),
        "zero_roots": slopes.zero_roots,
        "classification": slopes.slopes.iter().map(|v| json!({"slope": qs(v), "class": classify(v, k)})).collect::<Vec<_>>(),
        "rational_eigenvalues": eigenvalues.iter().map(|(a, mult)| json!({
            "value": qs(a),
            "multiplicity": mult,
            "valuation": match padic::val(a, p) { Valuation::Finite(v) => qs(&v), Valuation::Infinite => json!("inf") },
        })).collect::<Vec<_>>(),
        "refinements": refinements,
    })))
}

fn point_json(pt: &EigencurvePoint) -> Value {
    serde_json::to_value(pt).expect("points always serialize")
}

fn cmd_twin(k: u32, m: u32, slope: &str) -> std::result::Result<String, Failure> {
    let slope = rational::parse(slope)?;
    let pt = EigencurvePoint::new(k, m, slope);
    pt.validate()?;
    let tw = eigencurve::twin(&pt)?;
    let boundary = pt.in_boundary()?;
    let (index, twin_index, sum_ok) = if boundary {
        let i = eigencurve::annulus_index(&pt).ok();
        let j = eigencurve::annulus_index(&tw).ok();
        let ok = match (i, j) {
            (Some(_), Some(_)) => Some(eigencurve::twin_index_sum_check(&pt)?),
            _ => None,
        };
        (i, j, ok)
    } else {
        (None, None, None)
    };
    Ok(doc(json!({
        "schema": OUTPUT_SCHEMA,
        "point": point_json(&pt),
        "twin": point_json(&tw),
        "w_valuation": qs(&pt.w_valuation()?),
        "in_boundary": boundary,
        "index": index,
        "twin_index": twin_index,
        "index_sum_ok": sum_ok,
        "classification": pt.classify(),
        "twin_classification": tw.classify(),
    })))
}

fn ladder(cert: &PingPongCertificate) -> String {
    let mut s = String::from("# step index slope k m\n");
    let mut pts = vec![&cert.moves[0].from];
    pts.extend(cert.moves.iter().map(|mv| &mv.to));
    for (step, pt) in pts.iter().enumerate() {
        let idx = eigencurve::annulus_index(pt).map(|i| i.to_string()).unwrap_or_else(|_| "nan".into());
        s.push_str(&format!("{step} {idx} {} {} {}\n", rational::pretty(&pt.slope), pt.k, pt.m));
    }
    s
}

fn violations_json(v: &[pingpong::Violation]) -> Value {
    serde_json::to_value(v).expect("violations always serialize")
}

fn cmd_pingpong(
    i: u64,
    j: u64,
    verify: bool,
    emit: Option<PathBuf>,
    seed: Option<(Q, u32, u32)>,
    p: u64,
    plot: Option<PathBuf>,
) -> std::result::Result<String, Failure> {
    let mut cert = pingpong::connect(i, j)?;
    if let Some((a, k, n)) = &seed {
        pingpong::discharge_regularity(&mut cert, a, *k, p, *n)?;
    }
    if let Some(path) = &emit {
        let mut s = cert.to_json();
        s.push('\n');
        fs::write(path, s)?;
    }
    if let Some(path) = &plot {
        fs::write(path, ladder(&cert))?;
    }
    let cert_json = serde_json::to_value(&cert).expect("certificates always serialize");
    if !verify {
        return Ok(doc(json!({ "schema": OUTPUT_SCHEMA, "certificate": cert_json })));
    }
    match pingpong::verify_certificate(&cert) {
        Ok(()) => Ok(doc(json!({ "schema": OUTPUT_SCHEMA, "status": "ok", "certificate": cert_json }))),
        Err(v) => {
            let out = doc(json!({
                "schema": OUTPUT_SCHEMA,
                "status": "failed",
                "violations": violations_json(&v),
                "certificate": cert_json,
            }));
            Err(Failure::Verification(out, format!("{} violation(s)", v.len())))
        }
    }
}

fn cmd_pingpong_check(path: &PathBuf) -> std::result::Result<String, Failure> {
    let text = fs::read_to_string(path)?;
    let cert = PingPongCertificate::from_json(&text)?;
    match pingpong::verify_certificate(&cert) {
        Ok(()) => Ok(doc(json!({
            "schema": OUTPUT_SCHEMA,
            "status": "ok",
            "endpoints": [cert.endpoints.0, cert.endpoints.1],
            "moves": cert.moves.len(),
        }))),
        Err(v) => {
            let out = doc(json!({
                "schema": OUTPUT_SCHEMA,
                "status": "failed",
                "violations": violations_json(&v),
            }));
            Err(Failure::Verification(out, format!("{} violation(s)", v.len())))
        }
    }
}

fn oc_operator(ctx: &mut Ctx, n: usize, prec: usize) -> std::result::Result<TruncatedCompactOperator, Failure> {
    let key = CacheKey::new("weight0_overconvergent", 0, format!("u2/N={n}"), prec);
    let payload = ctx.cached(&key, || {
        Ok(serde_json::to_string(&overconvergent::u2_matrix_weight0(n, prec)?)?)
    })?;
    Ok(serde_json::from_str(&payload).map_err(Error::from)?)
}

fn valuation_json(v: &Valuation) -> Value {
    match v {
        Valuation::Finite(q) => qs(q),
        Valuation::Infinite => json!("inf"),
    }
}

fn cmd_oc(
    ctx: &mut Ctx,
    n: usize,
    prec: Option<usize>,
    compare: Option<usize>,
    plot: Option<PathBuf>,
) -> std::result::Result<String, Failure> {
    let prec = prec.unwrap_or_else(|| overconvergent::full_check_prec(n));
    let op = oc_operator(ctx, n, prec)?;
    let larger = match compare {
        Some(big) => Some(oc_operator(ctx, big, overconvergent::full_check_prec(big).max(prec))?),
        None => None,
    };
    let report = overconvergent::oc_slopes(&op, larger.as_ref())?;
    if let Some(path) = &plot {
        fs::write(path, overconvergent::slopes_plot_data(&report))?;
    }
    if ctx.csv {
        return Ok(overconvergent::slopes_csv(&report));
    }
    Ok(doc(json!({
        "schema": OUTPUT_SCHEMA,
        "size": op.size,
        "prec": op.prec,
        "basis": op.basis,
        "status": op.status,
        "residual": op.residual,
        "integral": op.entries.iter().flatten().all(|e| e.is_integer()),
        "witness": op.witness.iter().map(valuation_json).collect::<Vec<_>>(),
        "slopes": report.slopes.iter().map(valuation_json).collect::<Vec<_>>(),
        "compared_with": report.compared_with,
        "stable_prefix": report.stable_prefix,
    })))
}

fn cmd_nregular(a: &str, k: u32, p: u64, n: u32) -> std::result::Result<String, Failure> {
    if !padic::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} is not prime")).into());
    }
    let a = rational::parse(a)?;
    let order = spaces::ratio_order(&a, k, p)?;
    let regular = spaces::is_n_regular(&a, k, p, n)?;
    Ok(doc(json!({
        "schema": OUTPUT_SCHEMA,
        "a": qs(&a),
        "k": k,
        "p": p,
        "n": n,
        "ratio_order": order.to_string(),
        "n_regular": regular,
    })))
}

fn cmd_hatada(ctx: &mut Ctx, kmin: u32, kmax: u32, plot: Option<PathBuf>) -> std::result::Result<String, Failure> {
    if kmin > kmax {
        return Err(Error::Precondition(format!("empty weight range {kmin}..={kmax}")).into());
    }
    let rows = spaces::hatada_check(kmin..=kmax)?;
    let all_pass = rows.iter().all(|r| r.pass());
    if let Some(path) = &plot {
        let mut s = String::from("# k slope\n");
        for r in &rows {
            for v in &r.slopes.slopes {
                s.push_str(&format!("{} {}\n", r.k, rational::pretty(v)));
            }
        }
        fs::write(path, s)?;
    }
    let out = if ctx.csv {
        let mut s = String::from("k,dim,divisible_by_3,divisible_by_8,nonzero_constant,non_ordinary,pass\n");
        for r in &rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.k,
                r.dim,
                r.divisible_by_3,
                r.divisible_by_8,
                r.nonzero_constant,
                r.non_ordinary,
                r.pass()
            ));
        }
        s
    } else {
        doc(json!({
            "schema": OUTPUT_SCHEMA,
            "kmin": kmin,
            "kmax": kmax,
            "rows": rows.iter().map(|r| json!({
                "k": r.k,
                "dim": r.dim,
                "charpoly": rational::poly_to_string(&r.charpoly),
                "slopes": r.slopes.slopes.iter().map(qs).collect::<Vec<_>>(),
                "divisible_by_3": r.divisible_by_3,
                "divisible_by_8": r.divisible_by_8,
                "nonzero_constant": r.nonzero_constant,
                "non_ordinary": r.non_ordinary,
                "pass": r.pass(),
            })).collect::<Vec<_>>(),
            "all_pass": all_pass,
        }))
    };
    if all_pass {
        Ok(out)
    } else {
        let failed: Vec<String> = rows.iter().filter(|r| !r.pass()).map(|r| r.k.to_string()).collect();
        Err(Failure::Verification(out, format!("weights {}", failed.join(", "))))
    }
}

fn cmd_wval(k: u32, m: u32) -> std::result::Result<String, Failure> {
    let wc = WeightCharacter::new(k, m)?;
    let c = weightspace::w_coordinate(wc)?;
    Ok(doc(json!({
        "schema": OUTPUT_SCHEMA,
        "k": k,
        "m": m,
        "w_valuation": qs(&c.valuation),
        "in_boundary": c.in_boundary,
    })))
}

fn cmd_oracles() -> std::result::Result<String, Failure> {
    let report = fixtures::run_oracles()?;
    let out = doc(json!({
        "schema": OUTPUT_SCHEMA,
        "report": serde_json::to_value(&report).expect("reports always serialize"),
        "all_ok": report.all_ok(),
    }));
    if report.all_ok() {
        Ok(out)
    } else {
        Err(Failure::Verification(out, "fixture mismatch".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run_from(std::iter::once("eigenwalk").chain(args.iter().copied()))
    }

    fn parsed(out: &Output) -> Value {
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn slopes_level_one() {
        let v = parsed(&run_args(&["slopes", "--level", "sl2z", "--k", "12", "--op", "t2"]));
        assert_eq!(v["charpoly"], "X + 24");
        assert_eq!(v["slopes"], json!(["3"]));
        assert_eq!(v["refinements"][0]["slopes"], json!(["3", "8"]));
    }

    #[test]
    fn nregular_negative() {
        let v = parsed(&run_args(&["nregular", "-24", "12", "2", "9"]));
        assert_eq!(v["n_regular"], true);
    }

    #[test]
    fn wval() {
        let v = parsed(&run_args(&["wval", "5", "0"]));
        assert_eq!(v["w_valuation"], "2");
        assert_eq!(v["in_boundary"], true);
        assert_eq!(run_args(&["wval", "2", "0"]).code, 2);
    }

    #[test]
    fn usage_errors_are_preconditions() {
        assert_eq!(run_args(&["slopes", "--level", "nope", "--k", "12"]).code, 2);
        assert_eq!(run_args(&["slopes", "--level", "sl2z", "--k", "12", "--op", "u2"]).code, 2);
        assert_eq!(run_args(&["pingpong"]).code, 2);
    }
}
