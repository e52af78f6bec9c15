//! Command-line front end. `run` is pure apart from file IO so tests can
//! drive it in-process.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nsatz_core::lowerbounds::{demo_degree, demo_field_size, demo_interp, lucas_nonzero, LowerBoundReport};
use nsatz_core::{
    certify_t1, certify_t2, min_degree, verify, CheckOptions, Error, EvalSet, FieldDesc, MultiPoly, PolySystem,
    DEFAULT_ENUM_CAP,
};

use crate::sysio::{self, ParseError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "nsatz", version, about = "Exact Nullstellensatz certificates: construct, verify, audit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    T1,
    T2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a certificate for a system document.
    Certify {
        /// System document; stdin when omitted.
        file: Option<PathBuf>,
        /// Emit the normal-form cofactors (finite fields only).
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        /// Skip the containment precondition check.
        #[arg(long)]
        no_check: bool,
        /// Override the automatic choice of construction.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit a key = value summary instead of the certificate document.
        #[arg(long)]
        kv: bool,
    },
    /// Check a certificate against a system document.
    Verify {
        system: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[arg(long)]
        kv: bool,
    },
    /// Find the least degree bound admitting a certificate.
    Mindeg {
        file: Option<PathBuf>,
        #[arg(long)]
        dmax: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        kv: bool,
    },
    /// Print the system with every polynomial in normal form.
    Reduce {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether binom(n, m) is nonzero mod p.
    Lucas { n: u64, m: u64, p: u64 },
    /// Lower-bound demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
        /// Run the minimal-degree oracle as a cross-check.
        #[arg(long, global = true)]
        oracle: bool,
        #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[arg(long, global = true)]
        kv: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Demo {
    /// x^2+1 over GF(q), q = p^k with p = 3 mod 4 and k odd.
    FieldSize { q: u64 },
    /// H^2+1 with H the k-th elementary symmetric polynomial in n variables over GF(q).
    Degree { n: usize, k: usize, q: u64 },
    /// P = x^2, Q = x on {-F..-1, 1..F} over QQ.
    Interp {
        #[arg(value_name = "F")]
        big_f: u64,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: u8, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_failure(what: &str, e: ParseError) -> Failure {
    Failure::Usage(format!("{what}: {e}"))
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Inconsistency(_) => EXIT_INTERNAL,
        Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::InvalidDegree(_)
        | Error::InvalidModulus(_)
        | Error::FieldTooLarge
        | Error::BinomialRange { .. } => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<(String, Vec<u8>), Failure> {
    let mut bytes = Vec::new();
    match path {
        Some(p) => {
            bytes = std::fs::read(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), bytes))
        }
        None => {
            stdin.read_to_end(&mut bytes).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(("<stdin>".to_string(), bytes))
        }
    }
}

fn read_system(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<sysio::SystemDoc, Failure> {
    let (name, bytes) = read_input(path, stdin)?;
    sysio::parse_system_bytes(&bytes).map_err(|e| parse_failure(&name, e))
}

fn emit(text: String, output: Option<&PathBuf>) -> Result<String, Failure> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_USAGE, text) } else { Outcome::ok(text) };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Core(e)) => {
            let mut msg = format!("error: {e}\n");
            if let Error::ContainmentFails { display, .. } = &e {
                msg.push_str(&format!("witness: {display}\n"));
            }
            Outcome::fail(exit_for(&e), msg)
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match command {
        Command::Certify { file, reduced, cap, no_check, mode, output, kv } => {
            let doc = read_system(file.as_ref(), stdin)?;
            let s = &doc.system;
            let finite = s.field().is_finite();
            if reduced && !finite {
                return Err(Failure::Usage("--reduced needs a finite field".into()));
            }
            if mode == Some(ModeArg::T1) && !finite {
                return Err(Failure::Usage("--mode t1 needs a finite field".into()));
            }
            let use_t1 = mode.map_or(finite && s.domain().is_all() && s.images().is_none(), |m| m == ModeArg::T1);
            let opts = CheckOptions { cap, check_containment: !no_check };
            let mut cert = if use_t1 { certify_t1(s, &opts)? } else { certify_t2(s, &opts)? };
            if reduced {
                cert = cert.reduced_view().ok_or_else(|| Error::Inconsistency("missing normal forms".into()))?;
            }
            let text = if kv {
                sysio::certificate_kv(&cert)
            } else {
                sysio::write_certificate(s.field(), &doc.vars, &cert)
            };
            Ok(Outcome::ok(emit(text, output.as_ref())?))
        }
        Command::Verify { system, certificate, cap, kv } => {
            let doc = read_system(Some(&system), stdin)?;
            let (name, bytes) = read_input(Some(&certificate), stdin)?;
            let cert = sysio::parse_certificate_bytes(&bytes).map_err(|e| parse_failure(&name, e))?;
            if cert.field != *doc.system.field() {
                return Err(Failure::Usage(format!("{name}: field {} differs from the system's", cert.field)));
            }
            if cert.vars != doc.vars {
                return Err(Failure::Usage(format!("{name}: variables differ from the system's")));
            }
            if cert.certificate.cofactors.len() != doc.system.m() {
                return Err(Failure::Usage(format!(
                    "{name}: {} cofactors for {} generators",
                    cert.certificate.cofactors.len(),
                    doc.system.m()
                )));
            }
            let report = verify(&doc.system, &cert.certificate, cap)?;
            let field = doc.system.field();
            let text = if kv { sysio::verify_kv(field, &report) } else { sysio::verify_text(field, &report) };
            let code = if report.ok { EXIT_OK } else { EXIT_FALSE };
            Ok(Outcome { code, stdout: text, stderr: String::new() })
        }
        Command::Mindeg { file, dmax, cap, output, kv } => {
            let doc = read_system(file.as_ref(), stdin)?;
            let report = min_degree(&doc.system, dmax, cap)?;
            let text = if kv {
                sysio::min_degree_kv(&report)
            } else {
                sysio::min_degree_text(doc.system.field(), &doc.vars, &report)
            };
            let code = if report.min_degree.is_some() { EXIT_OK } else { EXIT_FALSE };
            Ok(Outcome { code, stdout: emit(text, output.as_ref())?, stderr: String::new() })
        }
        Command::Reduce { file, output } => {
            let doc = read_system(file.as_ref(), stdin)?;
            let text = sysio::reduced_system_text(&doc)?;
            Ok(Outcome::ok(emit(text, output.as_ref())?))
        }
        Command::Lucas { n, m, p } => {
            let nonzero = lucas_nonzero(n, m, p)?;
            let (code, word) = if nonzero { (EXIT_OK, "nonzero") } else { (EXIT_FALSE, "zero") };
            Ok(Outcome { code, stdout: format!("{word}\n"), stderr: String::new() })
        }
        Command::Demo { which, oracle, cap, kv } => {
            let report = match which {
                Demo::FieldSize { q } => demo_field_size(q, oracle, cap)?,
                Demo::Degree { n, k, q } => demo_degree(n, k, q, oracle, cap)?,
                Demo::Interp { big_f } => interp_with_oracle(big_f, oracle, cap)?,
            };
            let text = if kv { sysio::lower_bound_kv(&report) } else { sysio::lower_bound_text(&report) };
            Ok(Outcome::ok(text))
        }
    }
}

/// The interpolation system `P = x^2`, `Q = x` on `{-F..-1, 1..F}` over QQ.
pub fn interp_system(big_f: u64) -> Result<PolySystem, Error> {
    let f = FieldDesc::rationals();
    let x = MultiPoly::var(&f, 1, 0);
    let big = i64::try_from(big_f).map_err(|_| Error::Precondition("F too large".into()))?;
    let pts = (1..=big).flat_map(|v| [vec![f.from_i64(-v)], vec![f.from_i64(v)]]).collect();
    PolySystem::new(&f, 1, vec![x.pow(2)], x, EvalSet::explicit(&f, 1, pts)?)
}

fn interp_with_oracle(big_f: u64, oracle: bool, cap: u64) -> Result<LowerBoundReport, Error> {
    let mut report = demo_interp(big_f)?;
    if oracle {
        let s = interp_system(big_f)?;
        let r = min_degree(&s, 2 * big_f, cap)?;
        report.oracle_min_degree = r.min_degree;
        report.construction_degree = r.construction_degree;
    }
    Ok(report)
}
