//! The `freerad` command line.
//!
//! Exit codes: 0 success / feasible / bound holds, 1 certified violation,
//! 2 usage or input error, 3 numeric failure. Machine output goes to stdout
//! (or `--out`), diagnostics to stderr.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{self, VerdictStatus};
use crate::error::{Error, ErrorClass, Result};
use crate::io::{self, JsonScalar};
use crate::moments::{
    atoms_from_moments, phi_to_moments, psi_to_moments, synthesize_phi, synthesize_psi, AtomicMeasure,
    MomentSequence, RadialFunction, Role, DEFAULT_TOL,
};
use crate::oracle::{self, GramReport, GramVerdict};
use crate::scalar::{parse_rational, ParseScalar, Rational, Scalar};
use crate::spherical;
use crate::words::Rank;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "freerad",
    version,
    about = "Radial positive definite and CND functions on free groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Group rank: a positive integer or `inf`.
    #[arg(long, global = true)]
    pub rank: Option<String>,
    /// Largest word length to evaluate or use.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Eigenvalue parameter s.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Relative tolerance for eigenvalue tests.
    #[arg(long, global = true, env = "FREERAD_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Cayley ball radius for the oracles.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Use exact rational arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Input JSON file (`-` for stdin).
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Write machine output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Inline value table, comma separated (needs --rank).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<String>>,
    /// Inline atom `s:w`; repeatable.
    #[arg(long = "atom", global = true, allow_hyphen_values = true)]
    pub atom: Vec<String>,
    /// Schoenberg parameter t > 0.
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// Schoenberg base b = exp(-t) in (0, 1); exact with --exact.
    #[arg(long, global = true, conflicts_with = "t")]
    pub base: Option<String>,
    /// Spectral parameter z.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Number of atoms to extract (default: as many as the data allows).
    #[arg(long, global = true)]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Spherical function values φ̇_s(0..=depth).
    EvalSpherical,
    /// ψ̇_s(0..=depth).
    EvalPsi,
    /// ψ̇_1(0..=depth).
    PsiOne,
    /// Radial φ from an atomic measure.
    SynthesizePhi,
    /// Radial ψ from an atomic measure.
    SynthesizePsi,
    /// Positive definiteness test of a φ table.
    DecidePd,
    /// Conditional negative definiteness test of a ψ table.
    DecideCnd,
    /// Representing atoms from a value table or {"moments": [...]}.
    Atoms,
    /// Gram-matrix positive definiteness on a Cayley ball.
    OracleGram,
    /// Schoenberg-kernel conditional negativity on a Cayley ball.
    OracleCnd,
    /// Check the sphere-average recurrence and eigenfunction identity by convolution.
    ConvolveCheck,
    /// Linear growth bound report for a ψ table.
    Bound,
    /// exp(-t ψ) from a ψ table.
    Schoenberg,
    /// s from the z parametrization.
    SFromZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a command produces; the chosen format is written out.
struct Outcome {
    json: Value,
    text: String,
    csv: String,
    violated: bool,
    /// Set when the payload is printed but the run still counts as a numeric failure.
    failure: Option<Error>,
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome, out) {
            Ok(()) => {
                if let Some(e) = &outcome.failure {
                    let _ = writeln!(err, "freerad: {e}");
                    EXIT_NUMERIC
                } else if outcome.violated {
                    EXIT_VIOLATION
                } else {
                    EXIT_OK
                }
            }
            Err(e) => {
                let _ = writeln!(err, "freerad: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "freerad: {e}");
            match e.class() {
                ErrorClass::Input => EXIT_USAGE,
                ErrorClass::Numeric => EXIT_NUMERIC,
            }
        }
    }
}

fn format_of(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

fn emit(cli: &Cli, outcome: &Outcome, out: &mut dyn Write) -> Result<()> {
    let mut body = match format_of(cli) {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable"),
        Format::Text => outcome.text.clone(),
        Format::Csv => outcome.csv.clone(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    let io_err = |e: std::io::Error| Error::bad_input(format!("cannot write output: {e}"));
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(io_err),
        None => out.write_all(body.as_bytes()).map_err(io_err),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(Error::bad_input("--tol must be a finite non-negative number"));
    }
    match cli.command {
        Command::SFromZ => s_from_z(cli),
        Command::Schoenberg if cli.exact && cli.base.is_none() => {
            Err(Error::IrrationalRequired("exp(-t psi)"))
        }
        _ if cli.exact => dispatch::<Rational>(cli),
        _ => dispatch::<f64>(cli),
    }
}

fn dispatch<S: JsonScalar>(cli: &Cli) -> Result<Outcome> {
    match cli.command {
        Command::EvalSpherical => {
            let (rank, s, depth) = (rank_arg(cli)?, s_arg::<S>(cli)?, depth_arg(cli)?);
            table(RadialFunction::new(
                rank,
                Role::Phi,
                spherical::spherical_values(rank, &s, depth),
            )?)
        }
        Command::EvalPsi => {
            let (rank, s, depth) = (rank_arg(cli)?, s_arg::<S>(cli)?, depth_arg(cli)?);
            table(RadialFunction::new(
                rank,
                Role::Psi,
                spherical::psi_values(rank, &s, depth),
            )?)
        }
        Command::PsiOne => {
            let (rank, depth) = (rank_arg(cli)?, depth_arg(cli)?);
            let values = (0..=depth).map(|n| spherical::psi_one::<S>(rank, n)).collect();
            table(RadialFunction::new(rank, Role::Psi, values)?)
        }
        Command::SynthesizePhi => {
            let (rank, depth, mu) = (rank_arg(cli)?, depth_arg(cli)?, measure_arg::<S>(cli)?);
            table(synthesize_phi(rank, &mu, depth)?)
        }
        Command::SynthesizePsi => {
            let (rank, depth, mu) = (rank_arg(cli)?, depth_arg(cli)?, measure_arg::<S>(cli)?);
            table(synthesize_psi(rank, &mu, depth)?)
        }
        Command::DecidePd => decide(classify::decide_pd(&function_arg::<S>(cli, Role::Phi)?, cli.tol)?),
        Command::DecideCnd => decide(classify::decide_cnd(
            &function_arg::<S>(cli, Role::Psi)?,
            cli.tol,
        )?),
        Command::Atoms => atoms::<S>(cli),
        Command::OracleGram => {
            let f = function_arg::<S>(cli, Role::Phi)?;
            gram(oracle::gram_pd(&f, radius_arg(cli)?, cli.tol)?)
        }
        Command::OracleCnd => {
            let f = function_arg::<S>(cli, Role::Psi)?;
            gram(oracle::gram_cnd(&f, radius_arg(cli)?, cli.tol)?)
        }
        Command::ConvolveCheck => convolve_check::<S>(cli),
        Command::Bound => bound(classify::linear_bound_report(&function_arg::<S>(
            cli,
            Role::Psi,
        )?)?),
        Command::Schoenberg => {
            let f = function_arg::<S>(cli, Role::Psi)?;
            if let Some(b) = cli.base.as_deref() {
                let b = S::parse_scalar(b).ok_or_else(|| Error::bad_input(format!("bad --base {b:?}")))?;
                return table(classify::schoenberg_base(&f, &b)?);
            }
            let t = cli
                .t
                .as_deref()
                .ok_or_else(|| Error::bad_input("schoenberg needs --t or --base"))?;
            let t = f64::parse_scalar(t).ok_or_else(|| Error::bad_input(format!("bad --t {t:?}")))?;
            table(classify::schoenberg(&f, t)?)
        }
        Command::SFromZ => unreachable!("handled before dispatch"),
    }
}

fn rank_arg(cli: &Cli) -> Result<Rank> {
    cli.rank
        .as_deref()
        .ok_or_else(|| Error::bad_input("--rank is required"))?
        .parse()
}

fn depth_arg(cli: &Cli) -> Result<usize> {
    cli.depth.ok_or_else(|| Error::bad_input("--depth is required"))
}

fn radius_arg(cli: &Cli) -> Result<usize> {
    cli.radius.ok_or_else(|| Error::bad_input("--radius is required"))
}

fn s_arg<S: ParseScalar>(cli: &Cli) -> Result<S> {
    let text = cli
        .s
        .as_deref()
        .ok_or_else(|| Error::bad_input("--s is required"))?;
    S::parse_scalar(text).ok_or_else(|| Error::bad_input(format!("bad --s {text:?}")))
}

fn read_input(cli: &Cli) -> Result<Option<Value>> {
    let Some(path) = &cli.input else { return Ok(None) };
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::bad_input(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::bad_input(format!("cannot read {}: {e}", path.display())))?
    };
    io::parse_str(&text).map(Some)
}

/// The value table from `--in` or `--values`, cut to `--depth` if given.
fn function_arg<S: JsonScalar>(cli: &Cli, role: Role) -> Result<RadialFunction<S>> {
    let f = match (read_input(cli)?, &cli.values) {
        (Some(v), None) => {
            let f: RadialFunction<S> = io::radial_from_json(&v)?;
            if let Some(r) = &cli.rank {
                if r.parse::<Rank>()? != f.rank() {
                    return Err(Error::bad_input("--rank disagrees with the input file"));
                }
            }
            if f.role() != role {
                return Err(Error::bad_input(format!(
                    "this command expects a {}-role function, input is {}",
                    role.as_str(),
                    f.role().as_str()
                )));
            }
            f
        }
        (None, Some(values)) => {
            let parsed = values
                .iter()
                .map(|t| S::parse_scalar(t).ok_or_else(|| Error::bad_input(format!("bad value {t:?}"))))
                .collect::<Result<Vec<S>>>()?;
            RadialFunction::new(rank_arg(cli)?, role, parsed)?
        }
        (Some(_), Some(_)) => return Err(Error::bad_input("give either --in or --values, not both")),
        (None, None) => return Err(Error::bad_input("a value table is required (--in or --values)")),
    };
    match cli.depth {
        None => Ok(f),
        Some(d) if d <= f.depth() => RadialFunction::new(f.rank(), f.role(), f.values()[..=d].to_vec()),
        Some(d) => Err(Error::InsufficientDepth {
            needed: d + 1,
            got: f.values().len(),
        }),
    }
}

fn measure_arg<S: JsonScalar>(cli: &Cli) -> Result<AtomicMeasure<S>> {
    match (read_input(cli)?, cli.atom.is_empty()) {
        (Some(v), true) => io::measure_from_json(&v),
        (None, false) => {
            let pairs = cli
                .atom
                .iter()
                .map(|a| {
                    let bad = || Error::bad_input(format!("bad --atom {a:?}; expected s:w"));
                    let (s, w) = a.split_once(':').ok_or_else(bad)?;
                    Ok((
                        S::parse_scalar(s).ok_or_else(bad)?,
                        S::parse_scalar(w).ok_or_else(bad)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            AtomicMeasure::from_pairs(pairs)
        }
        (Some(_), false) => Err(Error::bad_input("give either --in or --atom, not both")),
        (None, true) => Err(Error::bad_input("a measure is required (--in or --atom)")),
    }
}

fn table<S: JsonScalar>(f: RadialFunction<S>) -> Result<Outcome> {
    let mut text = String::new();
    let mut csv = String::from("n,value\n");
    for (n, v) in f.values().iter().enumerate() {
        // no "-0" in human or plotting output
        let v = if v.is_zero() { S::zero() } else { v.clone() };
        let _ = writeln!(text, "{n} {v}");
        let _ = writeln!(csv, "{n},{v}");
    }
    Ok(Outcome {
        json: io::radial_to_json(&f),
        text,
        csv,
        violated: false,
        failure: None,
    })
}

fn decide(v: classify::Verdict) -> Result<Outcome> {
    let mut text = format!("status: {}\ndepth: {}\n", v.status.as_str(), v.depth);
    for f in &v.moments.floors {
        let _ = writeln!(
            text,
            "{} (dim {}): min eigenvalue {:e}",
            f.matrix, f.dim, f.min_eig
        );
    }
    let (wm, we) = match &v.moments.witness {
        Some(w) => {
            let _ = writeln!(text, "witness: {} with min eigenvalue {:e}", w.matrix, w.min_eig);
            (w.matrix.name().to_string(), format!("{:e}", w.min_eig))
        }
        None => (String::new(), String::new()),
    };
    let csv = format!(
        "status,depth,witness,min_eig\n{},{},{wm},{we}\n",
        v.status.as_str(),
        v.depth
    );
    Ok(Outcome {
        json: io::verdict_to_json(&v),
        text,
        csv,
        violated: v.is_certified_not(),
        failure: (v.status == VerdictStatus::Indeterminate).then_some(Error::NoConvergence),
    })
}

fn gram(r: GramReport) -> Result<Outcome> {
    let text = format!(
        "radius: {}\ndim: {}\nmin eigenvalue: {:e}\nverdict: {}\n",
        r.radius,
        r.dim,
        r.min_eig,
        r.verdict.as_str()
    );
    let csv = format!(
        "radius,dim,min_eig,verdict\n{},{},{:e},{}\n",
        r.radius,
        r.dim,
        r.min_eig,
        r.verdict.as_str()
    );
    Ok(Outcome {
        json: io::gram_report_to_json(&r),
        text,
        csv,
        violated: r.verdict == GramVerdict::Violated,
        failure: None,
    })
}

fn bound<S: JsonScalar>(r: classify::LinearBoundReport<S>) -> Result<Outcome> {
    let mut text = format!("a: {}\nc: {}\nholds: {}\n", r.a, r.c, r.holds);
    if let Some(n) = r.first_violation {
        let _ = writeln!(text, "first violation at n = {n}");
    }
    let mut csv = String::from("n,margin\n");
    for (n, m) in r.margins.iter().enumerate() {
        let _ = writeln!(csv, "{n},{m}");
    }
    Ok(Outcome {
        json: io::bound_report_to_json(&r),
        text,
        csv,
        violated: !r.holds,
        failure: None,
    })
}

fn atoms<S: JsonScalar>(cli: &Cli) -> Result<Outcome> {
    let input = read_input(cli)?;
    let moments: MomentSequence<S> = match &input {
        Some(v) if v.get("moments").is_some() => io::moments_from_json(v)?,
        _ => {
            let value_role = match &input {
                Some(v) => match v.get("role").and_then(Value::as_str) {
                    Some("psi") => Role::Psi,
                    _ => Role::Phi,
                },
                None => Role::Phi,
            };
            let f = function_arg::<S>(cli, value_role)?;
            match f.role() {
                Role::Phi => phi_to_moments(&f)?,
                Role::Psi => psi_to_moments(&f)?,
            }
        }
    };
    let mu = match cli.count {
        Some(k) => atoms_from_moments(&moments, k)?,
        None => {
            // largest k the data supports
            let mut k = moments.len() / 2;
            loop {
                if k == 0 {
                    return Err(Error::SingularMoments { order: 0 });
                }
                match atoms_from_moments(&moments, k) {
                    Ok(mu) => break mu,
                    Err(Error::SingularMoments { .. }) => k -= 1,
                    Err(e) => return Err(e),
                }
            }
        }
    };
    let mut text = String::new();
    let mut csv = String::from("s,w\n");
    for a in mu.atoms() {
        let _ = writeln!(text, "{} {}", a.node, a.weight);
        let _ = writeln!(csv, "{},{}", a.node, a.weight);
    }
    Ok(Outcome {
        json: io::measure_to_json(&mu),
        text,
        csv,
        violated: false,
        failure: None,
    })
}

fn convolve_check<S: JsonScalar>(cli: &Cli) -> Result<Outcome> {
    let rank = rank_arg(cli)?;
    let q = rank
        .q()
        .ok_or_else(|| Error::bad_input("convolve-check needs a finite rank"))? as i64;
    let depth = cli.depth.unwrap_or(3);
    let mu1 = oracle::sphere_average::<S>(rank, 1)?;
    let mut rows = Vec::new();
    for n in 1..=depth {
        let got = oracle::radial_convolve(rank, n + 1, &mu1, &oracle::sphere_average::<S>(rank, n)?)?;
        let mut want = vec![S::zero(); n + 2];
        want[n - 1] = S::ratio(1, q + 1) * oracle::sphere_average::<S>(rank, n - 1)?[n - 1].clone();
        want[n + 1] = S::ratio(q, q + 1) * oracle::sphere_average::<S>(rank, n + 1)?[n + 1].clone();
        rows.push(check_row(format!("mu1*mu{n}"), &got, &want, 1e-12));
    }
    if cli.s.is_some() {
        let s = s_arg::<S>(cli)?;
        let phi = spherical::spherical_values(rank, &s, depth + 1);
        let got = oracle::radial_convolve(rank, depth + 2, &mu1, &phi)?;
        let want: Vec<S> = phi.iter().map(|v| s.clone() * v.clone()).collect();
        rows.push(check_row(
            format!("mu1*phi_{s}"),
            &got[..=depth],
            &want[..=depth],
            1e-12,
        ));
    }
    let all = rows.iter().all(|r| r.2);
    let mut text = String::new();
    let mut csv = String::from("identity,max_error,holds\n");
    for (name, err, ok) in &rows {
        let _ = writeln!(
            text,
            "{name}: max error {err:e} {}",
            if *ok { "ok" } else { "FAILED" }
        );
        let _ = writeln!(csv, "{name},{err:e},{ok}");
    }
    let json = json!({
        "rank": io::rank_to_json(rank),
        "checks": rows.iter().map(|(n, e, ok)| json!({"identity": n, "max_error": e, "holds": ok})).collect::<Vec<_>>(),
        "holds": all,
    });
    Ok(Outcome {
        json,
        text,
        csv,
        violated: !all,
        failure: None,
    })
}

fn check_row<S: Scalar>(name: String, got: &[S], want: &[S], tol: f64) -> (String, f64, bool) {
    let err = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g.clone() - w.clone()).to_f64().abs())
        .fold(0.0, f64::max);
    let ok = got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g.close_to(w, tol));
    (name, err, ok)
}

fn s_from_z(cli: &Cli) -> Result<Outcome> {
    let rank = rank_arg(cli)?;
    let text = cli
        .z
        .as_deref()
        .ok_or_else(|| Error::bad_input("s-from-z needs --z"))?;
    let bad = || Error::bad_input(format!("bad --z {text:?}"));
    let (s_json, s_text) = if cli.exact {
        let z = parse_rational(text).ok_or_else(bad)?;
        if !z.is_integer() {
            return Err(Error::IrrationalRequired("q^{-z} for non-integer z"));
        }
        let z: i64 = z.to_integer().try_into().map_err(|_| bad())?;
        let s: Rational = spherical::s_from_z_int(rank, z)?;
        (s.to_json(), s.to_string())
    } else {
        let z = f64::parse_scalar(text).ok_or_else(bad)?;
        let s = spherical::s_from_z(rank, z)?;
        (s.to_json(), s.to_string())
    };
    Ok(Outcome {
        json: json!({"rank": io::rank_to_json(rank), "z": text, "s": s_json}),
        text: format!("{s_text}\n"),
        csv: format!("z,s\n{text},{s_text}\n"),
        violated: false,
        failure: None,
    })
}
