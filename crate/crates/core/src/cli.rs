//! Command-line front end. Every subcommand builds a JSON report; the
//! renderers turn it into JSON, CSV or an aligned text table.
//!
//! Exit codes: 0 success, 1 failed verification or internal failure,
//! 2 usage error (bad flags or parameters outside the supported range).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::ball::{
    build_coexact_pair, build_exact_pair, build_function_pair, enumerate_spectrum, first_eigenvalue, verify_ball, verify_level,
    Family, VerifiedEigenpair,
};
use crate::error::{Error, Result};
use crate::exterior::PForm;
use crate::galerkin::iso::{iso_bound_check, Verdict, ISO_TOLERANCE};
use crate::galerkin::vector_fields::{vector_field_rayleigh_3d, BoundaryType};
use crate::galerkin::{minimizer_degree, smallest_rayleigh, Constraint, Domain, GalerkinProblem};
use crate::harmonic::{build_h_double_prime, build_hkp, dimension_table};
use crate::moments::{parallel_moment_identities, parallel_pairing};
use crate::poly::{rat, rational_sphere_point, Poly, Rational};
use crate::radial::{sweep, volume_ratio, RadialProblem, WarpProfile};

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "STEKLOV_THREADS";

/// Tolerance attached to radial ODE eigenvalues in reports.
pub const RADIAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "steklov", version, about = "Dirichlet-to-Neumann spectra of differential forms")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "pretty")]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Shorthand for --format csv.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized test points (recorded in the report).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact ball spectrum on p-forms, merged by eigenvalue.
    Spectrum(SpectrumArgs),
    /// Certify every ball eigenpair up to homogeneity max-k.
    VerifyBall(VerifyBallArgs),
    /// Build and verify one eigenform with its harmonic extension.
    Eigenform(EigenformArgs),
    /// Radial ODE eigenvalues on a rotationally symmetric ball.
    Radial(RadialArgs),
    /// Galerkin upper bound for the first eigenvalue.
    Galerkin(GalerkinArgs),
    /// Compare the first eigenvalue with the isoperimetric bound.
    IsoCheck(IsoArgs),
    /// Exact Rayleigh quotient of a polynomial vector field on the unit ball of R^3.
    Vf3(Vf3Args),
    /// Parallel-form moment identities at a random unit normal.
    Moments(MomentsArgs),
    /// Dimensions of the polynomial and harmonic form spaces.
    Spaces(SpacesArgs),
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 3)]
    max_k: u32,
    /// Skip the exact eigenpair verification.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args, Debug)]
struct VerifyBallArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    max_k: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Function,
    Coexact,
    Volume,
    Exact,
}

#[derive(Args, Debug)]
struct EigenformArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    p: usize,
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Index into the computed basis of the seed space.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Explicit seed form instead of a basis element, e.g. "(x1) * dx2 + (-x2) * dx1".
    /// For the exact family this is the (p-1)-form phi.
    #[arg(long)]
    form: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RadialFamily {
    Coexact,
    Volume,
}

#[derive(Args, Debug)]
struct RadialArgs {
    /// euclidean, spherical, hyperbolic or custom:1,0,c2,...[@max_radius].
    #[arg(long, default_value = "euclidean")]
    profile: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, value_enum, default_value = "coexact")]
    family: RadialFamily,
    /// Radii to solve at (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "1")]
    radius: Vec<f64>,
}

#[derive(Args, Debug)]
struct GalerkinArgs {
    /// ball or ellipsoid:a1,...,a_{n+1}.
    #[arg(long, default_value = "ball")]
    domain: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    /// Coefficient degree of the trial space (defaults to the ball minimizer degree).
    #[arg(long = "degree", short = 'D')]
    degree: Option<u32>,
    #[arg(long, default_value = "tangential")]
    constraint: String,
}

#[derive(Args, Debug)]
struct IsoArgs {
    #[arg(long, default_value = "ball")]
    domain: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long = "degree", short = 'D')]
    degree: Option<u32>,
}

#[derive(Args, Debug)]
struct Vf3Args {
    /// Components separated by ';', e.g. "x2; -x1; 0".
    #[arg(long)]
    field: String,
    #[arg(long, default_value = "tangent")]
    boundary: String,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    /// Number of random normals and vector pairs to test.
    #[arg(long, default_value_t = 10)]
    samples: usize,
}

#[derive(Args, Debug)]
struct SpacesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    max_k: u32,
}

/// A rendered report: the full JSON value, flat rows for tables, and whether
/// every check it contains passed.
struct Report {
    value: Value,
    rows: Vec<Map<String, Value>>,
    ok: bool,
}

impl Report {
    fn single(value: Value, ok: bool) -> Self {
        let rows = match &value {
            Value::Object(m) => vec![m.clone()],
            _ => Vec::new(),
        };
        Report { value, rows, ok }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn object<T: Serialize>(v: &T) -> Result<Map<String, Value>> {
    match to_value(v)? {
        Value::Object(m) => Ok(m),
        other => Err(Error::InvalidInput(format!("expected an object, got {other}"))),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OutOfRange(_)
        | Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::DimensionMismatch(..)
        | Error::DegreeMismatch(..)
        | Error::DegreeOverflow(..)
        | Error::ZeroFormInput
        | Error::NotMonicQuadric(_)
        | Error::WrongLabel { .. } => 2,
        _ => 1,
    }
}

/// Parse arguments, run the command and write the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        cli.format
    };
    match dispatch(&cli).and_then(|r| render(&r, format).map(|s| (s, r.ok))) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        // Fails harmlessly if the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::VerifyBall(a) => cmd_verify_ball(a),
        Command::Eigenform(a) => cmd_eigenform(a),
        Command::Radial(a) => cmd_radial(a),
        Command::Galerkin(a) => cmd_galerkin(a),
        Command::IsoCheck(a) => cmd_iso(a),
        Command::Vf3(a) => cmd_vf3(a),
        Command::Moments(a) => cmd_moments(a, cli.seed),
        Command::Spaces(a) => cmd_spaces(a),
    }
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Report> {
    let levels = enumerate_spectrum(a.n, a.p, a.max_k)?;
    let verified: Vec<_> = if a.no_verify {
        Vec::new()
    } else {
        let k_min = u32::from(a.p > 0);
        (k_min..=a.max_k).map(|k| verify_level(a.n, k, a.p)).collect::<Result<Vec<_>>>()?.concat()
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut out_levels = Vec::new();
    for level in &levels {
        let mut entries = Vec::new();
        for e in &level.entries {
            let status = verified.iter().find(|r| r.family == e.family && r.k == e.k).map(|r| r.verified);
            if !a.no_verify && status != Some(true) {
                ok = false;
            }
            let mut row = object(e)?;
            row.insert("verified".into(), status.map_or(Value::Null, Value::Bool));
            rows.push(row.clone());
            entries.push(Value::Object(row));
        }
        out_levels.push(json!({
            "eigenvalue": level.eigenvalue.to_string(),
            "multiplicity": level.multiplicity,
            "entries": entries,
        }));
    }
    let value = json!({ "n": a.n, "p": a.p, "max_k": a.max_k, "levels": out_levels });
    Ok(Report { value, rows, ok })
}

fn cmd_verify_ball(a: &VerifyBallArgs) -> Result<Report> {
    let rows = verify_ball(a.n, a.max_k)?;
    let ok = rows.iter().all(|r| r.verified);
    let flat = rows.iter().map(object).collect::<Result<Vec<_>>>()?;
    let value = json!({ "n": a.n, "max_k": a.max_k, "all_verified": ok, "rows": to_value(&rows)? });
    Ok(Report { value, rows: flat, ok })
}

fn pair_report(pair: &VerifiedEigenpair) -> Value {
    json!({
        "family": pair.family,
        "n": pair.n,
        "k": pair.k,
        "p": pair.p,
        "eigenvalue": pair.eigenvalue.to_string(),
        "boundary_eigenform": pair.boundary_eigenform.to_string(),
        "extension": pair.extension.to_string(),
        "proportionality": pair.proportionality.to_string(),
        "verified": true,
    })
}

fn cmd_eigenform(a: &EigenformArgs) -> Result<Report> {
    let (family, seed_p) = match a.family {
        FamilyArg::Function => (Family::Function, 0),
        FamilyArg::Coexact => (Family::Coexact, a.p),
        FamilyArg::Volume => (Family::Volume, a.p),
        FamilyArg::Exact => (Family::Exact, a.p.checked_sub(1).ok_or_else(|| Error::OutOfRange("exact family needs p >= 1".into()))?),
    };
    if family == Family::Function && a.p != 0 {
        return Err(Error::OutOfRange("function family needs p = 0".into()));
    }
    let seed = match &a.form {
        Some(text) => PForm::parse(text, a.n + 1, seed_p)?,
        None => {
            let space = if family == Family::Function { build_hkp(a.n, a.k, 0)? } else { build_h_double_prime(a.n, a.k, seed_p)? };
            space
                .basis()
                .get(a.index)
                .cloned()
                .ok_or_else(|| Error::OutOfRange(format!("basis index {} but the seed space has dimension {}", a.index, space.dim())))?
        }
    };
    let pair = match family {
        Family::Function => build_function_pair(a.n, a.k, &seed),
        Family::Coexact | Family::Volume => build_coexact_pair(a.n, a.k, a.p, &seed),
        Family::Exact => build_exact_pair(a.n, a.k, a.p, &seed),
    };
    match pair {
        Ok(pair) => Ok(Report::single(pair_report(&pair), true)),
        Err(e @ (Error::Membership(_) | Error::IdentityFailure(_))) => Ok(Report::single(
            json!({ "family": family, "n": a.n, "k": a.k, "p": a.p, "verified": false, "diagnostic": e.to_string() }),
            false,
        )),
        Err(e) => Err(e),
    }
}

fn cmd_radial(a: &RadialArgs) -> Result<Report> {
    let profile: WarpProfile = a.profile.parse()?;
    let problems = a
        .radius
        .iter()
        .map(|&r| match a.family {
            RadialFamily::Coexact => RadialProblem::coexact(profile.clone(), a.n, a.k, a.p, r),
            RadialFamily::Volume => RadialProblem::volume(profile.clone(), a.n, r),
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = sweep(&problems)?;
    let mut flat = Vec::new();
    for (row, prob) in rows.iter().zip(&problems) {
        let mut m = object(row)?;
        if matches!(a.family, RadialFamily::Volume) {
            m.insert("volume_ratio".into(), json!(volume_ratio(&prob.profile, prob.n, prob.radius)?));
        } else if profile == WarpProfile::Euclidean {
            m.insert("closed_form".into(), json!(((a.k as usize + a.p) as f64) / prob.radius));
        }
        m.insert("tolerance".into(), json!(RADIAL_TOLERANCE));
        flat.push(m);
    }
    let ok = flat.iter().all(|m| {
        let nu = m["nu"].as_f64().unwrap_or(f64::NAN);
        let reference = m.get("volume_ratio").or_else(|| m.get("closed_form")).and_then(Value::as_f64);
        reference.is_none_or(|r| (nu - r).abs() <= RADIAL_TOLERANCE * r.abs().max(1.0))
    });
    let value = json!({
        "profile": profile.name(),
        "family": format!("{:?}", a.family).to_lowercase(),
        "rows": Value::Array(flat.iter().cloned().map(Value::Object).collect()),
    });
    Ok(Report { value, rows: flat, ok })
}

fn cmd_galerkin(a: &GalerkinArgs) -> Result<Report> {
    let domain: Domain = a.domain.parse()?;
    let constraint: Constraint = a.constraint.parse()?;
    let degree = a.degree.unwrap_or_else(|| minimizer_degree(a.n, a.p));
    let problem = GalerkinProblem::new(domain.clone(), a.n, a.p, degree, constraint)?;
    let res = smallest_rayleigh(&problem)?;
    let mut m = Map::new();
    m.insert("domain".into(), json!(domain.to_string()));
    m.insert("n".into(), json!(a.n));
    m.insert("p".into(), json!(a.p));
    m.insert("D".into(), json!(degree));
    m.insert("constraint".into(), json!(constraint.to_string()));
    m.insert("galerkin_value".into(), json!(res.value));
    m.insert("residual".into(), json!(res.residual));
    m.insert("exact_value".into(), res.exact_value().map_or(Value::Null, |v| json!(v.to_string())));
    let closed = if domain.is_ball() && constraint == Constraint::Tangential && (1..=a.n).contains(&a.p) {
        Some(first_eigenvalue(a.n, a.p)?)
    } else {
        None
    };
    m.insert("closed_form".into(), closed.as_ref().map_or(Value::Null, |v| json!(v.to_string())));
    m.insert("trial_dimension".into(), json!(res.trial_dimension));
    m.insert("reduced_dimension".into(), json!(res.reduced_dimension));
    m.insert("certificate".into(), to_value(&res.certificate)?);
    // On the ball the Galerkin value can never drop below the true eigenvalue.
    let ok = closed.as_ref().is_none_or(|c| res.value >= crate::poly::to_f64(c) - 1e-9);
    Ok(Report::single(Value::Object(m), ok))
}

fn cmd_iso(a: &IsoArgs) -> Result<Report> {
    let domain: Domain = a.domain.parse()?;
    let r = iso_bound_check(&domain, a.n, a.p, a.degree)?;
    let mut m = object(&r)?;
    m.insert("tolerance".into(), json!(ISO_TOLERANCE));
    // The bound holds on the ball by the closed forms; an inconclusive ball run is a failure.
    let ok = !(domain.is_ball() && r.verdict == Verdict::Inconclusive);
    Ok(Report::single(Value::Object(m), ok))
}

fn cmd_vf3(a: &Vf3Args) -> Result<Report> {
    let boundary: BoundaryType = a.boundary.parse()?;
    let parts: Vec<&str> = a.field.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three ';'-separated components, got {}", parts.len())));
    }
    let field = parts.iter().map(|s| Poly::parse(s.trim(), 3)).collect::<Result<Vec<_>>>()?;
    match vector_field_rayleigh_3d(&field, boundary) {
        Ok(q) => {
            let mut m = object(&q)?;
            m.insert("boundary".into(), to_value(&boundary)?);
            Ok(Report::single(Value::Object(m), true))
        }
        Err(e @ Error::Membership(_)) => Ok(Report::single(json!({ "boundary": boundary, "diagnostic": e.to_string() }), false)),
        Err(e) => Err(e),
    }
}

fn random_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

fn cmd_moments(a: &MomentsArgs, seed: u64) -> Result<Report> {
    let mut rng = StdRng::seed_from_u64(seed);
    let dim = a.n + 1;
    let mut rows = Vec::new();
    let mut ok = true;
    for sample in 0..a.samples.max(1) {
        let t: Vec<Rational> = (0..dim - 1).map(|_| random_rational(&mut rng)).collect();
        let normal = rational_sphere_point(&t);
        let ident = parallel_moment_identities(a.n, a.p, &normal)?;
        let x: Vec<Rational> = (0..dim).map(|_| random_rational(&mut rng)).collect();
        let y: Vec<Rational> = (0..dim).map(|_| random_rational(&mut rng)).collect();
        let pairing = parallel_pairing(&x, &y)?;
        let dot = x.iter().zip(&y).fold(Rational::zero(), |acc, (u, v)| acc + u * v);
        let holds = ident.holds() && pairing == dot;
        ok &= holds;
        let mut m = object(&ident)?;
        m.insert("sample".into(), json!(sample));
        m.insert("normal".into(), json!(normal.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        m.insert("pairing".into(), json!(pairing.to_string()));
        m.insert("pairing_expected".into(), json!(dot.to_string()));
        m.insert("holds".into(), json!(holds));
        rows.push(m);
    }
    let value = json!({
        "n": a.n,
        "p": a.p,
        "seed": seed,
        "all_hold": ok,
        "rows": Value::Array(rows.iter().cloned().map(Value::Object).collect()),
    });
    Ok(Report { value, rows, ok })
}

fn cmd_spaces(a: &SpacesArgs) -> Result<Report> {
    let rows = dimension_table(a.n, a.max_k)?;
    let flat = rows.iter().map(object).collect::<Result<Vec<_>>>()?;
    Ok(Report { value: to_value(&rows)?, rows: flat, ok: true })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Map<String, Value>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.value).map_err(|e| Error::InvalidInput(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let cols = columns(&report.rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidInput(e.to_string());
            w.write_record(&cols).map_err(io)?;
            for r in &report.rows {
                w.write_record(cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default())).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
        }
        Format::Pretty => Ok(pretty(&report.rows)),
    }
}

fn pretty(rows: &[Map<String, Value>]) -> String {
    if rows.len() == 1 {
        let width = rows[0].keys().map(String::len).max().unwrap_or(0);
        return rows[0].iter().map(|(k, v)| format!("{k:<width$}  {}\n", cell(v))).collect();
    }
    let cols = columns(rows);
    let table: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| table.iter().map(|row| row[i].len()).max().unwrap_or(0).max(c.len()))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut s = line(&cols);
    for row in &table {
        s.push_str(&line(row));
    }
    s
}
