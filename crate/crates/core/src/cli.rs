//! The `amlat` command line. [`run`] takes the arguments and returns the exit
//! code with the captured output, so the binary is a thin wrapper and tests
//! can drive every subcommand in-process.
//!
//! Exit codes: 0 success, 1 input error, 2 no construction found, 3 a
//! certificate check failed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{plan, ConstructionPlan};
use crate::enumerate::minimum_and_kissing;
use crate::error::{Error, Result};
use crate::exact::{parse_rat, Rat};
use crate::ideal::TwoSidedIdeal;
use crate::ideal_lattice::{verify_arakelov_modular, IdealLattice};
use crate::lattice::ZLat4;
use crate::order::{CatalogOrder, Order};
use crate::quaternion::{QElem, QuaternionAlgebra};
use crate::record::{parse_matrix4, sorted_json, LatticeRecord};
use crate::symbols::{hilbert_symbol, hilbert_table, Place};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_PLAN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "amlat",
    version,
    about = "Arakelov-modular lattices from quaternion algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the algebra, order and β chosen for a level.
    Classify {
        #[arg(long)]
        ell: u64,
    },
    /// Build the lattice for a level and print its record.
    Construct {
        #[arg(long)]
        ell: u64,
        /// Also write the record to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check a lattice (I, q_α) for Arakelov-modularity of level ℓ.
    Verify {
        /// `a,b`
        #[arg(long, allow_hyphen_values = true)]
        algebra: String,
        /// Preset name (hurwitz, case2, case3, ell17) or a basis file.
        #[arg(long)]
        order: String,
        /// Basis file for J; defaults to the order itself.
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// `x0,x1,x2,x3`
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// `x0,x1,x2,x3`; the ideal is `J t`.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0")]
        t: String,
        #[arg(long)]
        ell: u64,
    },
    /// Hilbert symbols (a,b)_v at ∞ and every prime dividing 2ab.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Only this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Minimum and kissing number of a Gram matrix file.
    Min { gram: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr,
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::NoPlanFound(_) => EXIT_NO_PLAN,
        _ => EXIT_INPUT,
    };
    Outcome::fail(code, String::new(), format!("error: {e}\n"))
}

/// Tags an error with the flag it came from.
fn field<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("--{name}: {m}")),
        other => Error::Parse(format!("--{name}: {other}")),
    })
}

fn read_file(name: &str, path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("--{name}: cannot read {}: {e}", path.display())))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_INPUT, String::new(), text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Classify { ell } => classify(ell),
        Command::Construct { ell, json } => construct(ell, json),
        Command::Verify {
            algebra,
            order,
            ideal,
            alpha,
            beta,
            t,
            ell,
        } => verify(&algebra, &order, ideal.as_ref(), &alpha, &beta, &t, ell),
        Command::Hilbert { a, b, p } => hilbert(a, b, p),
        Command::Min { gram } => min(&gram),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn plan_json(p: &ConstructionPlan) -> Value {
    let f = &p.factorization;
    let exps: BTreeMap<String, String> = p
        .ideal_exponents
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut v = json!({
        "ell": f.ell.to_string(),
        "ell1": f.ell1.to_string(),
        "ell2": f.ell2.to_string(),
        "case": p.case.to_string(),
        "a": p.algebra.a().to_string(),
        "b": p.algebra.b().to_string(),
        "ramified": p.algebra.ramified_primes().iter().map(u64::to_string).collect::<Vec<_>>(),
        "order": p.order_name,
        "beta": p.beta,
        "alpha": p.alpha.to_string(),
        "ideal_exponents": exps,
    });
    if let Some(q) = p.q {
        v["q"] = Value::String(q.to_string());
    }
    v
}

fn classify(ell: u64) -> Result<Outcome> {
    match plan(ell) {
        Ok(p) => Ok(Outcome::ok(sorted_json(&plan_json(&p)) + "\n")),
        Err(Error::NoPlanFound(reason)) => {
            let body = json!({ "ell": ell.to_string(), "exists": false, "reason": reason });
            Ok(Outcome::fail(
                EXIT_NO_PLAN,
                sorted_json(&body) + "\n",
                format!("no construction for level {ell}: {reason}\n"),
            ))
        }
        Err(e) => Err(e),
    }
}

fn construct(ell: u64, out: Option<PathBuf>) -> Result<Outcome> {
    let (lattice, cert) = plan(ell)?.realize()?;
    let text = LatticeRecord::new(&lattice, cert)?.to_json() + "\n";
    if let Some(path) = out {
        fs::write(&path, &text)
            .map_err(|e| Error::Parse(format!("--json: cannot write {}: {e}", path.display())))?;
    }
    Ok(Outcome::ok(text))
}

fn parse_algebra(s: &str) -> Result<QuaternionAlgebra> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Error::Parse(format!("expected a,b, got {s:?}")));
    };
    let num = |x: &str| {
        x.parse::<i64>()
            .map_err(|_| Error::Parse(format!("{x:?} is not an integer")))
    };
    QuaternionAlgebra::new(num(a)?, num(b)?)
}

fn load_lattice(name: &str, algebra: &QuaternionAlgebra, path: &PathBuf) -> Result<ZLat4> {
    let m = field(name, parse_matrix4(&read_file(name, path)?))?;
    field(name, ZLat4::from_matrix(algebra, &m))
}

fn parse_order(algebra: &QuaternionAlgebra, s: &str) -> Result<Order> {
    if let Ok(preset) = s.parse::<CatalogOrder>() {
        return field("order", preset.order(algebra));
    }
    let lattice = load_lattice("order", algebra, &PathBuf::from(s))?;
    field("order", Order::from_lattice(lattice))
}

fn verify(
    algebra: &str,
    order: &str,
    ideal: Option<&PathBuf>,
    alpha: &str,
    beta: &str,
    t: &str,
    ell: u64,
) -> Result<Outcome> {
    let algebra = field("algebra", parse_algebra(algebra))?;
    if !algebra.is_totally_definite() {
        return Err(Error::Parse(
            "--algebra: a and b must both be negative".into(),
        ));
    }
    let order = parse_order(&algebra, order)?;
    let j = match ideal {
        Some(path) => load_lattice("ideal", &algebra, path)?,
        None => order.lattice().clone(),
    };
    let t = field("t", QElem::parse(t))?;
    let ideal = field("ideal", TwoSidedIdeal::new(&order, j, t))?;
    let alpha: Rat = field("alpha", parse_rat(alpha))?;
    let beta = field("beta", QElem::parse(beta))?;
    let lattice = field("alpha", IdealLattice::new(ideal, alpha))?;
    let cert = verify_arakelov_modular(&lattice, &beta, ell)?;
    let text = sorted_json(&cert) + "\n";
    if cert.is_valid() {
        Ok(Outcome::ok(text))
    } else {
        let failed = cert.checks.failures().join(", ");
        Ok(Outcome::fail(
            EXIT_VERIFY_FAILED,
            text,
            format!("certificate checks failed: {failed}\n"),
        ))
    }
}

fn hilbert(a: i64, b: i64, p: Option<u64>) -> Result<Outcome> {
    if let Some(p) = p {
        let s = field("p", hilbert_symbol(a, b, Place::Prime(p)))?;
        return Ok(Outcome::ok(format!("{p} {s}\n")));
    }
    let table = field("a", hilbert_table(a, b))?;
    let mut out = String::new();
    for (place, s) in &table {
        out.push_str(&format!("{place} {s}\n"));
    }
    let product: i8 = table.iter().map(|(_, s)| s).product();
    out.push_str(&format!("product {product}\n"));
    Ok(Outcome::ok(out))
}

fn min(path: &PathBuf) -> Result<Outcome> {
    let gram = field("gram", parse_matrix4(&read_file("gram", path)?))?;
    let (m, k) = field("gram", minimum_and_kissing(&gram))?;
    let body = json!({ "min": m.to_string(), "kissing": k.to_string() });
    Ok(Outcome::ok(sorted_json(&body) + "\n"))
}
