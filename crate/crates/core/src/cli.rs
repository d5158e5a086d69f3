//! The `pseudou` command line.
//!
//! Scalar subcommands take flags; anything not given on the command line is read
//! from a JSON object on stdin (or `--input`). Matrix subcommands are JSON only.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::burau_squier::{
    count_noncompact_roots, principal_sqrt, reduced_burau, squier_definite, squier_form, threshold_check,
    unitarizable, BraidWord, BurauError,
};
use crate::conformal_blocks::{dim_blocks, signature, BlocksError};
use crate::cyclo_exact::{theta, RootOfUnity};
use crate::linalg::{inf_norm, CMat, MatrixJson};
use crate::pseudo_unitary::{canonical_form, cocycle_auto, dgw_phase, elliptic_positive_det, v0, PuError, SignatureForm};
use crate::recurrences::{builtin_spec, extend, mod_orbit, zero_locus_of, RecurrenceError, RecurrenceSpec};
use crate::reproduce::{run_all, DEFAULT_SEED};
use crate::su_commutators::{commutator_decomposition, CommutatorError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tolerance: f64,
    pub precision_bits: u32,
    pub output: OutputFormat,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(name = "pseudou", version, about = "Pseudo-unitary phases, commutators, conformal blocks and Burau forms")]
pub struct Cli {
    /// Read the JSON request from this file instead of stdin
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the result to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = crate::pseudo_unitary::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Bits for exact-sign escalation
    #[arg(long, global = true, env = "PSEUDOU_PRECISION", default_value_t = 128)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase of a matrix: {"matrix": M, "form": {"m": .., "n": ..} | M}
    DgwPhase,
    /// Real cocycle: {"g1": M, "g2": M, "form": ..}
    Cocycle,
    /// Spectral blocks and sign characteristic: {"matrix": M, "form": ..}
    CanonicalForm,
    /// Commutator decomposition in SU(m,n): {"matrix": M, "form": ..}
    Commutators,
    /// Dimension N(g, p) of the space of conformal blocks
    Verlinde {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Order of the twist root of unity at level p
    Theta {
        #[arg(long)]
        p: Option<u64>,
    },
    /// Signature of the Hermitian form at (g, p, zeta_{2p}^e)
    Signature {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        /// exponent e of zeta_{2p}
        #[arg(long)]
        zeta: Option<u64>,
    },
    /// Extend a signature recurrence, or analyse it modulo an integer
    Recurrence {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        zeta: Option<u64>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Reduced Burau matrix of a braid word and Squier-form checks
    Burau {
        #[arg(long)]
        strands: Option<usize>,
        /// comma separated letters, negative for inverses
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        /// q = exp(2 pi i t)
        #[arg(long, allow_hyphen_values = true)]
        turns: Option<f64>,
    },
    /// Non-compact factor count for genus g and level p
    CountRoots {
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run all acceptance checks
    ReproducePaper,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Consistency(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Consistency(_) => EXIT_CONSISTENCY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Consistency(m) => write!(f, "consistency failure: {m}"),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

impl From<PuError> for CliError {
    fn from(e: PuError) -> Self {
        match e {
            PuError::Decomposition(_) | PuError::SamplingTooCoarse { .. } | PuError::Path(_) => {
                CliError::Consistency(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CommutatorError> for CliError {
    fn from(e: CommutatorError) -> Self {
        match e {
            CommutatorError::Group(g) => g.into(),
            CommutatorError::Stage { .. } => CliError::Consistency(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BlocksError> for CliError {
    fn from(e: BlocksError) -> Self {
        match e {
            BlocksError::CrossCheck { .. } | BlocksError::Degenerate(..) => CliError::Consistency(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::Inconsistent(_) => CliError::Consistency(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BurauError> for CliError {
    fn from(e: BurauError) -> Self {
        match e {
            BurauError::Disagreement { .. } => CliError::Consistency(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Lazily read request object; flags take precedence over its fields.
struct Request<'a> {
    source: Option<PathBuf>,
    stdin: &'a mut dyn Read,
    cached: Option<Map<String, Value>>,
}

impl Request<'_> {
    fn object(&mut self) -> Result<&Map<String, Value>> {
        if self.cached.is_none() {
            let mut text = String::new();
            match &self.source {
                Some(p) => {
                    text = std::fs::read_to_string(p)
                        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?
                }
                None => {
                    self.stdin
                        .read_to_string(&mut text)
                        .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
                }
            }
            let v: Value = if text.trim().is_empty() {
                Value::Object(Map::new())
            } else {
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Input(format!("malformed JSON at line {} column {}: {e}", e.line(), e.column()))
                })?
            };
            match v {
                Value::Object(m) => self.cached = Some(m),
                _ => return Err(CliError::Input("request must be a JSON object".into())),
            }
        }
        Ok(self.cached.as_ref().unwrap())
    }

    fn field<T: for<'de> Deserialize<'de>>(&mut self, flag: Option<T>, name: &str) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        self.optional(name)?.ok_or_else(|| CliError::Input(format!("missing `{name}` (flag or JSON field)")))
    }

    fn optional<T: for<'de> Deserialize<'de>>(&mut self, name: &str) -> Result<Option<T>> {
        match self.object()?.get(name) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| CliError::Input(format!("field `{name}`: {e}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormJson {
    Signature { m: usize, n: usize },
    Matrix(MatrixJson),
}

fn matrix(req: &mut Request, name: &str) -> Result<CMat> {
    let m: MatrixJson = req.field(None, name)?;
    m.to_matrix().map_err(|e| CliError::Input(format!("field `{name}`: {e}")))
}

fn form(req: &mut Request, dim: usize, tol: f64) -> Result<SignatureForm> {
    let f: FormJson = req.field(None, "form")?;
    let h = match f {
        FormJson::Signature { m, n } => SignatureForm::standard(m, n),
        FormJson::Matrix(mj) => {
            let h = mj.to_matrix().map_err(|e| CliError::Input(format!("field `form`: {e}")))?;
            SignatureForm::from_matrix(h, tol)?
        }
    };
    if h.dim() != dim {
        return Err(PuError::Dimension(h.dim(), dim).into());
    }
    Ok(h)
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn big(x: &num_bigint::BigInt) -> Value {
    crate::json::to_value(x)
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_word(s: &str) -> Result<Vec<i32>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Input(format!("bad braid letter {t:?}"))))
        .collect()
}

fn check_p(p: u64) -> Result<u64> {
    if p < 3 {
        return Err(CliError::Input(format!("p must be at least 3, got {p}")));
    }
    Ok(p)
}

fn zeta_of(p: u64, e: u64) -> Result<RootOfUnity> {
    RootOfUnity::new(2 * p, e as i64).map_err(|e| CliError::Input(e.to_string()))
}

/// Runs one command; returns the JSON result and the exit code to use with it.
pub fn execute(cli: &Cli, config: &RunConfig, stdin: &mut dyn Read) -> Result<(Value, i32)> {
    let tol = config.tolerance;
    let mut req = Request { source: cli.input.clone(), stdin, cached: None };
    let ok = |v: Value| Ok((v, EXIT_OK));
    match &cli.command {
        Command::DgwPhase => {
            let g = matrix(&mut req, "matrix")?;
            let h = form(&mut req, g.nrows(), tol)?;
            let phase = dgw_phase(&g, &h, tol)?;
            let det = elliptic_positive_det(&g, &h, tol)?;
            ok(json!({ "phase": phase, "elliptic_det": complex(det) }))
        }
        Command::Cocycle => {
            let g1 = matrix(&mut req, "g1")?;
            let g2 = matrix(&mut req, "g2")?;
            let h = form(&mut req, g1.nrows(), tol)?;
            if g2.nrows() != g1.nrows() {
                return Err(PuError::Dimension(g1.nrows(), g2.nrows()).into());
            }
            let c = cocycle_auto(&g1, &g2, &h, tol)?;
            let ratio = v0(&g1, &h, tol)? * v0(&g2, &h, tol)? / v0(&(&g1 * &g2), &h, tol)?;
            let e = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * c);
            let dev = (e - ratio).norm();
            if dev > 1e3 * tol {
                return Err(CliError::Consistency(format!("cocycle does not match v0 ratio ({dev:.3e})")));
            }
            ok(json!({ "cocycle": c, "v0_ratio": complex(ratio) }))
        }
        Command::CanonicalForm => {
            let g = matrix(&mut req, "matrix")?;
            let h = form(&mut req, g.nrows(), tol)?;
            ok(to_json(&canonical_form(&g, &h, tol)?))
        }
        Command::Commutators => {
            let g = matrix(&mut req, "matrix")?;
            let h = form(&mut req, g.nrows(), tol)?;
            let list = commutator_decomposition(&g, &h, tol)?;
            if list.pairs.len() > list.bound {
                return Err(CliError::Consistency(format!(
                    "{} commutators exceed the bound {}",
                    list.pairs.len(),
                    list.bound
                )));
            }
            ok(to_json(&list))
        }
        Command::Verlinde { g, p } => {
            let g = req.field(*g, "g")?;
            let p = check_p(req.field(*p, "p")?)?;
            ok(json!({ "N": big(&dim_blocks(g, p)?) }))
        }
        Command::Theta { p } => {
            let p = check_p(req.field(*p, "p")?)?;
            ok(json!({ "theta": theta(p) }))
        }
        Command::Signature { g, p, zeta } => {
            let g = req.field(*g, "g")?;
            let p = check_p(req.field(*p, "p")?)?;
            let e = req.field(*zeta, "zeta_exponent")?;
            ok(to_json(&signature(g, p, zeta_of(p, e)?)?))
        }
        Command::Recurrence { p, zeta, modulus, terms } => {
            let spec: RecurrenceSpec = match req.optional::<RecurrenceSpec>("spec")? {
                Some(s) if p.is_none() => s,
                _ => {
                    let p = req.field(*p, "p")?;
                    let e = req.field(*zeta, "zeta_exponent")?;
                    builtin_spec(p, e)?
                }
            };
            let modulus = match modulus {
                Some(m) => Some(*m),
                None => req.optional("mod")?,
            };
            match modulus {
                Some(m) => {
                    let orbit = mod_orbit(&spec, m)?;
                    let zl = zero_locus_of(&orbit);
                    let mut out = Map::new();
                    out.insert("period".into(), json!(zl.period));
                    out.insert(format!("zeros_mod_{}", zl.period), json!(zl.classes));
                    if zl.preperiod > 0 {
                        out.insert("preperiod".into(), json!(zl.preperiod));
                        out.insert("transient_zeros".into(), json!(zl.transient));
                    }
                    ok(Value::Object(out))
                }
                None => {
                    let n = match terms {
                        Some(t) => *t,
                        None => req.optional("terms")?.unwrap_or(11),
                    };
                    let seq = extend(&spec, n);
                    ok(json!({ "terms": seq.iter().map(big).collect::<Vec<_>>() }))
                }
            }
        }
        Command::Burau { strands, word, turns } => {
            let k = req.field(*strands, "strands")?;
            let letters = match word {
                Some(w) => parse_word(w)?,
                None => req.field(None, "word")?,
            };
            let q = match turns {
                Some(t) => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t),
                None => match req.optional::<[f64; 2]>("q")? {
                    Some([re, im]) => Complex64::new(re, im),
                    None => {
                        let t: f64 = req.field(None, "turns")?;
                        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
                    }
                },
            };
            let w = BraidWord::new(k, letters)?;
            let b = reduced_burau(&w, q)?;
            let mut out = Map::new();
            out.insert("strands".into(), json!(k));
            out.insert("pure".into(), json!(w.is_pure()));
            out.insert("matrix".into(), to_json(&MatrixJson::from_matrix(&b)));
            if (q.norm() - 1.0).abs() <= tol {
                let j = squier_form(k, principal_sqrt(q))?;
                let res = (b.adjoint() * &j * &b - &j).norm();
                let scale = inf_norm(&b).max(1.0);
                if res > 1e3 * tol * scale * scale {
                    return Err(CliError::Consistency(format!("Squier form not preserved ({res:.3e})")));
                }
                out.insert("squier_residual".into(), json!(res));
                match squier_definite(k, q, tol) {
                    Ok(d) => {
                        out.insert("singular".into(), json!(false));
                        out.insert("definiteness".into(), to_json(&d));
                    }
                    Err(BurauError::Singular) => {
                        out.insert("singular".into(), json!(true));
                    }
                    Err(e) => return Err(e.into()),
                }
                out.insert("unitarizable".into(), to_json(&unitarizable(k, q)?));
            }
            ok(Value::Object(out))
        }
        Command::CountRoots { g, p } => {
            let g = req.field(*g, "g")?;
            let p = req.field(*p, "p")?;
            let rc = count_noncompact_roots(g, p)?;
            let th = threshold_check(g, p)?;
            let code = if rc.bound_holds && (!th.applies || th.count_exceeds) { EXIT_OK } else { EXIT_CONSISTENCY };
            Ok((json!({ "count": to_json(&rc), "threshold": to_json(&th) }), code))
        }
        Command::ReproducePaper => {
            let results = run_all(config.seed);
            let passed = results.iter().filter(|r| r.pass).count();
            let code = if passed == results.len() { EXIT_OK } else { EXIT_CONSISTENCY };
            let mut criteria = to_json(&results);
            if config.output == OutputFormat::Json {
                // wall-clock times would break byte-identical output
                for c in criteria.as_array_mut().into_iter().flatten() {
                    c.as_object_mut().map(|o| o.shift_remove("seconds"));
                }
            }
            Ok((json!({ "passed": passed, "total": results.len(), "criteria": criteria }), code))
        }
    }
}

/// `{"a": 1, "b": [1, 2]}` on one line.
struct Spaced;

impl serde_json::ser::Formatter for Spaced {
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn render_json(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Spaced);
    serde::Serialize::serialize(v, &mut ser).expect("in-memory write");
    String::from_utf8(buf).expect("utf-8")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => render_json(other),
    }
}

pub fn render_table(cmd: &Command, v: &Value) -> String {
    let mut out = String::new();
    if let (Command::ReproducePaper, Some(list)) = (cmd, v.get("criteria").and_then(Value::as_array)) {
        for c in list {
            out.push_str(&format!(
                "{:<4}  {:>2}  {:<36}  {:>8.3}s  {}\n",
                if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                c["id"].as_u64().unwrap_or(0),
                c["name"].as_str().unwrap_or(""),
                c["seconds"].as_f64().unwrap_or(0.0),
                c["detail"].as_str().unwrap_or("")
            ));
        }
        out.push_str(&format!("{}/{} passed\n", v["passed"], v["total"]));
        return out;
    }
    if let (Command::Recurrence { .. }, Some(terms)) = (cmd, v.get("terms").and_then(Value::as_array)) {
        let width = terms.iter().map(|t| cell(t).len()).max().unwrap_or(1);
        for (i, t) in terms.iter().enumerate() {
            out.push_str(&format!("{:>3}  {:>width$}\n", i + 1, cell(t)));
        }
        return out;
    }
    match v {
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in m {
                out.push_str(&format!("{k:<width$}  {}\n", cell(x)));
            }
        }
        other => {
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
    out
}

fn config_of(cli: &Cli) -> Result<RunConfig> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", cli.tol)));
    }
    if cli.precision < 64 {
        return Err(CliError::Input(format!("precision must be at least 64 bits, got {}", cli.precision)));
    }
    Ok(RunConfig { tolerance: cli.tol, precision_bits: cli.precision, output: cli.format, seed: cli.seed })
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let result = config_of(&cli).and_then(|cfg| execute(&cli, &cfg, stdin).map(|r| (cfg, r)));
    let (cfg, (value, code)) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "pseudou: {e}");
            return e.code();
        }
    };
    let text = match cfg.output {
        OutputFormat::Json => render_json(&value) + "\n",
        OutputFormat::Table => render_table(&cli.command, &value),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "pseudou: {e}");
        return EXIT_INPUT;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pseudou").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(call(&["verlinde", "--g", "3", "--p", "7"], "").1, "{\"N\": 98}\n");
        assert_eq!(call(&["theta", "--p", "9"], "").1, "{\"theta\": 3}\n");
        assert_eq!(
            call(&["recurrence", "--p", "5", "--zeta", "1", "--mod", "5"], "").1,
            "{\"period\": 24, \"zeros_mod_24\": [4, 10, 16, 22]}\n"
        );
    }

    #[test]
    fn flags_or_json() {
        assert_eq!(call(&["verlinde"], r#"{"g": 2, "p": 7}"#).1, "{\"N\": 14}\n");
        assert_eq!(call(&["verlinde", "--g", "2"], r#"{"g": 9, "p": 7}"#).1, "{\"N\": 14}\n");
    }

    #[test]
    fn input_errors() {
        let (code, _, err) = call(&["theta"], "{\"p\": 9,,}");
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("line 1 column"), "{err}");
        assert_eq!(call(&["theta"], "").0, EXIT_INPUT);
        assert_eq!(call(&["theta", "--p", "2"], "").0, EXIT_INPUT);
        assert_eq!(call(&["theta", "--p", "9", "--tol", "0"], "").0, EXIT_INPUT);
        assert_eq!(call(&["theta", "--p", "9", "--precision", "32"], "").0, EXIT_INPUT);
    }

    #[test]
    fn large_terms_are_strings() {
        let (_, out, _) = call(&["recurrence", "--p", "9", "--zeta", "5", "--terms", "11"], "");
        assert!(out.contains("6930952607259"));
        let (_, out, _) = call(&["recurrence", "--p", "9", "--zeta", "5", "--terms", "14"], "");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["terms"].as_array().unwrap().last().unwrap().is_string());
    }
}
