//! The `wdeg` command line, as a library function so it can be tested
//! without spawning processes.
//!
//! Exit codes: 0 success, 1 a verification reported a failure, 2 parse,
//! validation or I/O error, 3 the endomorphism violates a hypothesis of the
//! degree (not origin preserving, not of finite length, zero locus larger
//! than the origin).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::degree::{self, DegreeReport};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::groebner::MonomialOrder;
use crate::job::JobFile;
use crate::koszul;
use crate::umrow;
use crate::witt::{self, DiagForm};

#[derive(Parser, Debug)]
#[command(name = "wdeg", version, about = "Witt-valued degrees of polynomial endomorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Global {
    /// Emit JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Monomial order for the local algebra.
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,
    /// Print intermediate data.
    #[arg(long, global = true)]
    verbose: bool,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree of the endomorphism in each job file.
    Degree {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Degree plus factorial divisibility of the length and, for odd n, the
    /// verdict on the row g(x1..xn) over S_n.
    NoriCheck { file: PathBuf },
    /// Diagonal forms given as comma-separated entries.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Koszul duality signs.
    #[command(subcommand)]
    Koszul(KoszulCommand),
    /// Unimodular rows.
    #[command(subcommand)]
    Row(RowCommand),
}

#[derive(Subcommand, Debug)]
enum WittCommand {
    /// Rank, signature, signed discriminant and Hasse symbols.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        entries: String,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldSpec,
    },
    /// Whether the form is zero in the Witt group.
    IsZero {
        #[arg(allow_hyphen_values = true)]
        entries: String,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldSpec,
    },
}

#[derive(Subcommand, Debug)]
enum KoszulCommand {
    /// Check the signed duality on the generic sequence of length n.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
    },
}

#[derive(Subcommand, Debug)]
enum RowCommand {
    /// Look for a unimodularity certificate.
    Check { file: PathBuf },
    /// Apply the endomorphism of a job file to a row.
    Compose { row_file: PathBuf, endo_file: PathBuf },
}

/// Exit code with captured output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: if e.is_hypothesis_failure() { 3 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let g = cli.global;
    let result = match cli.command {
        Command::Degree { files } => run_degree(&files, g),
        Command::NoriCheck { file } => run_nori(&file, g),
        Command::Witt(WittCommand::Invariants { entries, field }) => run_invariants(&entries, field, g),
        Command::Witt(WittCommand::IsZero { entries, field }) => run_is_zero(&entries, field, g),
        Command::Koszul(KoszulCommand::Verify { n }) => return run_koszul(n as usize, g),
        Command::Row(RowCommand::Check { file }) => run_row_check(&file, g),
        Command::Row(RowCommand::Compose { row_file, endo_file }) => run_row_compose(&row_file, &endo_file, g),
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::error(&e),
    }
}

fn load(path: &Path) -> Result<JobFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Job {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    JobFile::parse(&text).map_err(|e| match e {
        Error::Job { line, msg } => Error::Job {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        e => e,
    })
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn verbose_degree(out: &mut String, rep: &DegreeReport) {
    let _ = writeln!(out, "basis: {}", rep.gram.labels().join(", "));
    let _ = writeln!(out, "gram:");
    for row in rep.gram.matrix() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    let _ = writeln!(out, "diagonal: {}", rep.diag);
    invariant_lines(out, &rep.invariants);
    let _ = writeln!(out, "note: {}", rep.generator_note);
}

fn invariant_lines(out: &mut String, inv: &witt::WittInvariants) {
    let _ = writeln!(out, "rank: {}", inv.rank);
    match inv.signature {
        Some(s) => {
            let _ = writeln!(out, "signature: {s}");
        }
        None => {
            let _ = writeln!(out, "signature: n/a");
        }
    }
    let _ = writeln!(out, "signed discriminant: {}", inv.signed_discriminant);
    if !inv.hasse.is_empty() {
        let parts: Vec<String> = inv.hasse.iter().map(|(v, h)| format!("{v}:{h:+}")).collect();
        let _ = writeln!(out, "hasse: {}", parts.join(" "));
    }
}

fn run_degree(files: &[PathBuf], g: Global) -> Result<String, Error> {
    let mut out = String::new();
    let mut reports = Vec::new();
    for path in files {
        let endo = load(path)?.endo()?;
        let rep = degree::degree_of_with(&endo, g.order)?;
        if g.json {
            reports.push(rep.to_json());
            continue;
        }
        if files.len() > 1 {
            let _ = writeln!(out, "{}: {}", path.display(), rep.summary());
        } else {
            let _ = writeln!(out, "{}", rep.summary());
        }
        if g.verbose {
            verbose_degree(&mut out, &rep);
        }
    }
    if g.json {
        let v = if reports.len() == 1 {
            reports.pop().unwrap()
        } else {
            serde_json::Value::Array(reports)
        };
        out = json_line(&v);
    }
    Ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_nori(file: &Path, g: Global) -> Result<String, Error> {
    let endo = load(file)?.endo()?;
    let n = endo.n();
    let (rep, verdict) = if n % 2 == 1 {
        let o = umrow::obstruction_report(&endo, n)?;
        (o.degree, Some(o.message))
    } else {
        (degree::degree_of_with(&endo, g.order)?, None)
    };
    if g.json {
        let mut v = rep.to_json();
        v["verdict"] = verdict.map_or(serde_json::Value::Null, serde_json::Value::String);
        return Ok(json_line(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{}", rep.summary());
    let _ = writeln!(
        out,
        "{n}! divides length: {}; {}! divides length: {}",
        yes_no(rep.divisible_by_n_factorial),
        n.saturating_sub(1),
        yes_no(rep.divisible_by_nminus1_factorial)
    );
    match verdict {
        Some(msg) => {
            let _ = writeln!(out, "{msg}");
        }
        None => {
            let _ = writeln!(out, "n = {n} is even: no row verdict");
        }
    }
    if g.verbose {
        verbose_degree(&mut out, &rep);
    }
    Ok(out)
}

fn run_invariants(entries: &str, field: FieldSpec, g: Global) -> Result<String, Error> {
    let d = DiagForm::parse(field, entries)?;
    let inv = witt::invariants(&d);
    if g.json {
        return Ok(json_line(&inv.to_json()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "form: {d} over {field}");
    invariant_lines(&mut out, &inv);
    Ok(out)
}

fn run_is_zero(entries: &str, field: FieldSpec, g: Global) -> Result<String, Error> {
    let d = DiagForm::parse(field, entries)?;
    let zero = witt::is_witt_zero(&d);
    let reduced = witt::witt_reduce(&d);
    if g.json {
        let v = serde_json::json!({
            "schema": 1,
            "field": field.to_string(),
            "form": d.entries().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "is_zero": zero,
            "reduced": reduced.entries().iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        return Ok(json_line(&v));
    }
    let mut out = if zero {
        "zero (hyperbolic)\n".to_string()
    } else {
        format!("nonzero; class of {reduced}\n")
    };
    if g.verbose {
        invariant_lines(&mut out, &witt::invariants(&d));
    }
    Ok(out)
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_koszul(n: usize, g: Global) -> Outcome {
    let kc = koszul::build_koszul(&koszul::generic_sequence(n, FieldSpec::Rationals)).unwrap();
    let dd = koszul::build_duality(&kc);
    let chain = koszul::chain_map_report(&dd);
    let symmetry = koszul::symmetry_report(&dd);
    let resolved = koszul::resolve_dual_convention(n);
    let frozen: Vec<usize> = (1..=n).map(|i| koszul::dual_sign_exponent(i, n)).collect();
    let unsigned = koszul::build_duality_with_signs(&kc, &vec![1; n + 1]).unwrap();
    let unsigned_ok = koszul::verify_chain_map(&unsigned);
    let all_ok = chain.iter().chain(&symmetry).all(|&ok| ok)
        && resolved.as_ref() == Some(&frozen)
        && !unsigned_ok;

    let out = if g.json {
        json_line(&serde_json::json!({
            "schema": 1,
            "n": n,
            "rho_exponents": (0..=n).map(|i| koszul::rho_exponent(i, n)).collect::<Vec<_>>(),
            "rho_signs": dd.rho_signs,
            "dual_exponents": frozen,
            "resolved_dual_exponents": resolved,
            "symmetry_sign": koszul::symmetry_sign(n),
            "chain_map": chain,
            "symmetry": symmetry,
            "unsigned_family_is_chain_map": unsigned_ok,
            "pass": all_ok,
        }))
    } else {
        let mut out = String::new();
        let signs: String = dd.rho_signs.iter().map(|&s| sign_char(s)).collect();
        let _ = writeln!(out, "n = {n}; rho_i = (-1)^(i*n + i(i-1)/2 + n(n-1)/2) phi_i; signs {signs}");
        let _ = writeln!(
            out,
            "dual differential D_i = (-1)^s d_(n-i+1)^t with s = n mod 2 = {} (resolved: {})",
            n % 2,
            pass_fail(resolved.as_ref() == Some(&frozen))
        );
        for (i, ok) in chain.iter().enumerate() {
            let _ = writeln!(out, "chain map, degree {}: {}", i + 1, pass_fail(*ok));
        }
        let _ = writeln!(
            out,
            "symmetry rho_(n-i)^t = {}rho_i",
            sign_char(koszul::symmetry_sign(n))
        );
        for (i, ok) in symmetry.iter().enumerate() {
            let _ = writeln!(out, "symmetry, degree {i}: {}", pass_fail(*ok));
        }
        let _ = writeln!(
            out,
            "unsigned family: {}",
            if unsigned_ok { "chain map (unexpected)" } else { "not a chain map" }
        );
        out
    };
    Outcome {
        code: if all_ok { 0 } else { 1 },
        stdout: out,
        stderr: String::new(),
    }
}

fn certificate_text(row: &umrow::UnimodularRow) -> String {
    match row.certificate() {
        Some(b) => {
            let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
            format!("unimodular; certificate ({})", parts.join(", "))
        }
        None => "not unimodular".to_string(),
    }
}

fn row_json(row: &umrow::UnimodularRow) -> serde_json::Value {
    serde_json::json!({
        "schema": 1,
        "row": row.entries().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "unimodular": row.certificate().is_some(),
        "certificate": row.certificate().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>()),
    })
}

fn run_row_check(file: &Path, g: Global) -> Result<String, Error> {
    let row = load(file)?.row()?;
    if g.json {
        return Ok(json_line(&row_json(&row)));
    }
    Ok(format!("{}\n", certificate_text(&row)))
}

fn run_row_compose(row_file: &Path, endo_file: &Path, g: Global) -> Result<String, Error> {
    let row = load(row_file)?.row()?;
    let endo = load(endo_file)?.endo()?;
    let composed = umrow::compose_with_endo(&row, &endo)?;
    if g.json {
        return Ok(json_line(&row_json(&composed)));
    }
    Ok(format!("row {composed}\n{}\n", certificate_text(&composed)))
}
