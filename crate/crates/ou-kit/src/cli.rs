//! Command-line front end. All logic lives in the library; the `ou-kit`
//! binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 on success, 1 when a verification check fails (or a replayed
//! counterexample reproduces), 2 on usage, parse, or file errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::campaign::{
    replay_counterexample, run_campaign, CampaignConfig, CheckKind, Fault,
};
use crate::io;
use crate::matrix::{Mat, RowVec};
use crate::ring::Ring;
use crate::vaserstein::{is_symplectic, symplectic_pair, HyperbolicFormData};
use crate::words::{
    decompose_elementary, factorize_eta, factorize_theta, generator_preimage, Side,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ou-kit",
    about = "Exact-arithmetic toolkit for odd unitary Vaserstein-type matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble form data (c, mu, d, rho, Psi) for a ring and (m, n)
    BuildForm(BuildFormArgs),
    /// Compute theta(v) for a form file and vector
    Theta(ThetaEtaArgs),
    /// Compute eta(v) for a form file and vector
    Eta(ThetaEtaArgs),
    /// Factor theta(v) or eta(v) into elementary letters
    Factorize(FactorizeArgs),
    /// Find v with theta(v) = E_{1,i}(a) or eta(v) = E_{i,1}(a)
    Preimage(PreimageArgs),
    /// Express E_{i,j}(a) as a word in theta/eta generators
    Decompose(DecomposeArgs),
    /// Run seeded verification campaigns
    Verify(VerifyArgs),
    /// Build Vaserstein's symplectic alpha/beta pair for an alternating form
    Symplectic(SymplecticArgs),
    /// Re-run a recorded counterexample
    Replay(ReplayArgs),
}

#[derive(Args)]
struct BuildFormArgs {
    /// Ring descriptor: int | mod:<n> | quad:<D> | twisted
    #[arg(long)]
    ring: String,
    /// Hyperbolic rank (>= 1)
    #[arg(long)]
    m: usize,
    /// Dimension of V0 (>= 0)
    #[arg(long)]
    n: usize,
    /// Matrix file with phi; defaults to the identity of size n
    #[arg(long)]
    phi: Option<PathBuf>,
    /// Matrix file with phi^-1; computed division-free when omitted
    #[arg(long)]
    phi_inv: Option<PathBuf>,
    /// Output form file
    #[arg(long)]
    out: PathBuf,
    /// Also export the assembled Psi as a matrix file
    #[arg(long)]
    psi_out: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaEtaArgs {
    /// Form file produced by build-form
    #[arg(long)]
    form: PathBuf,
    /// Comma-separated element literals, length N = n+2m-1
    #[arg(long)]
    vector: String,
    /// Output matrix file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorKind {
    Theta,
    Eta,
}

#[derive(Args)]
struct FactorizeArgs {
    #[arg(long, value_enum)]
    kind: FactorKind,
    #[arg(long)]
    form: PathBuf,
    #[arg(long)]
    vector: String,
    /// Output word file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Row,
    Column,
}

#[derive(Args)]
struct PreimageArgs {
    /// row: theta(v) = E_{1,i}(a); column: eta(v) = E_{i,1}(a)
    #[arg(long, value_enum)]
    side: SideArg,
    /// Target index, 2 <= i <= N
    #[arg(long)]
    i: usize,
    /// Element literal
    #[arg(long)]
    a: String,
    #[arg(long)]
    form: PathBuf,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
    /// Element literal
    #[arg(long)]
    a: String,
    #[arg(long)]
    form: PathBuf,
    /// Output word file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated checks: axioms,forms,theta-eta,theorem32,decompose,symplectic,diagnostics
    #[arg(long, default_value = "axioms,forms,theta-eta,theorem32,decompose,symplectic,diagnostics")]
    checks: String,
    /// Trials per check unit
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Parallelism degree; defaults to OU_KIT_JOBS or the available cores
    #[arg(long, env = "OU_KIT_JOBS")]
    jobs: Option<usize>,
    /// Comma-separated ring descriptors (defaults to all shipped instances)
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Write the machine-readable report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the first counterexample here, for replay
    #[arg(long)]
    counterexample_out: Option<PathBuf>,
    /// Inject a known defect (negative control): psi-sign
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Args)]
struct SymplecticArgs {
    /// Matrix file with the invertible alternating form
    #[arg(long)]
    phi: PathBuf,
    /// Matrix file with its inverse; computed division-free when omitted
    #[arg(long)]
    phi_inv: Option<PathBuf>,
    /// Comma-separated element literals, length 2n-1
    #[arg(long)]
    vector: String,
    /// Check symplectic membership of both bordered matrices
    #[arg(long)]
    verify: bool,
    /// Write the lower bordered matrix here
    #[arg(long)]
    out_lower: Option<PathBuf>,
    /// Write the upper bordered matrix here
    #[arg(long)]
    out_upper: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    counterexample: PathBuf,
}

fn parse_vector(ring: &Ring, text: &str, expected_len: usize) -> Result<RowVec> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != expected_len {
        return Err(Error::DimensionMismatch(format!(
            "vector has {} components, expected {expected_len}",
            parts.len()
        )));
    }
    let mut entries = Vec::with_capacity(parts.len());
    for p in parts {
        entries.push(ring.parse(p)?);
    }
    Ok(RowVec::new(ring.clone(), entries))
}

fn emit_matrix(m: &Mat, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            io::write_matrix_file(path, m)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", io::matrix_to_json(m)),
    }
    Ok(())
}

fn emit_word(word: &io::WordFile, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            io::write_word_file(path, word)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", io::word_to_json(word)),
    }
    Ok(())
}

fn load_form(path: &Path) -> Result<HyperbolicFormData> {
    io::parse_form_file(path)
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::BuildForm(args) => {
            let ring = Ring::from_descriptor(&args.ring)?;
            let phi = match &args.phi {
                Some(path) => {
                    let m = io::parse_matrix_file(path)?;
                    io::expect_ring(&ring, m.ring())?;
                    m
                }
                None => Mat::identity(ring.clone(), args.n),
            };
            let phi_inv = match &args.phi_inv {
                Some(path) => {
                    let m = io::parse_matrix_file(path)?;
                    io::expect_ring(&ring, m.ring())?;
                    Some(m)
                }
                None => None,
            };
            let data = HyperbolicFormData::assemble(&ring, args.m, args.n, phi, phi_inv)?;
            io::write_form_file(&args.out, &data)?;
            println!(
                "wrote {} (ring {}, m {}, n {}, N {})",
                args.out.display(),
                ring,
                data.rank(),
                data.v0_dim(),
                data.n_dim()
            );
            if let Some(psi_out) = &args.psi_out {
                io::write_matrix_file(psi_out, data.psi())?;
                println!("wrote {}", psi_out.display());
            }
            Ok(0)
        }
        Command::Theta(args) => {
            let data = load_form(&args.form)?;
            let v = parse_vector(data.ring(), &args.vector, data.n_dim())?;
            emit_matrix(&data.theta(&v)?, &args.out)?;
            Ok(0)
        }
        Command::Eta(args) => {
            let data = load_form(&args.form)?;
            let v = parse_vector(data.ring(), &args.vector, data.n_dim())?;
            emit_matrix(&data.eta(&v)?, &args.out)?;
            Ok(0)
        }
        Command::Factorize(args) => {
            let data = load_form(&args.form)?;
            let v = parse_vector(data.ring(), &args.vector, data.n_dim())?;
            let word = match args.kind {
                FactorKind::Theta => factorize_theta(&data, &v)?,
                FactorKind::Eta => factorize_eta(&data, &v)?,
            };
            emit_word(&io::WordFile::Elementary(word), &args.out)?;
            Ok(0)
        }
        Command::Preimage(args) => {
            let data = load_form(&args.form)?;
            let a = data.ring().parse(&args.a)?;
            let side = match args.side {
                SideArg::Row => Side::Row,
                SideArg::Column => Side::Column,
            };
            let v = generator_preimage(&data, side, args.i, &a)?;
            let parts: Vec<String> = v.entries().iter().map(|e| e.to_string()).collect();
            println!("{}", parts.join(","));
            Ok(0)
        }
        Command::Decompose(args) => {
            let data = load_form(&args.form)?;
            let a = data.ring().parse(&args.a)?;
            let word = decompose_elementary(&data, args.i, args.j, &a)?;
            emit_word(&io::WordFile::Generator(word), &args.out)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let rings = match &args.ring {
                Some(list) => list
                    .split(',')
                    .map(Ring::from_descriptor)
                    .collect::<Result<Vec<_>>>()?,
                None => Ring::shipped(),
            };
            let checks = args
                .checks
                .split(',')
                .map(CheckKind::from_str)
                .collect::<Result<Vec<_>>>()?;
            let jobs = args
                .jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
            let fault = args.inject_fault.as_deref().map(Fault::from_str).transpose()?;
            let config = CampaignConfig {
                rings,
                m_values: (1..=args.m_max).collect(),
                n_values: (0..=args.n_max).collect(),
                trials: args.trials,
                seed: args.seed,
                jobs,
                checks,
                fault,
            };
            let report = run_campaign(&config)?;
            print!("{}", report.summary());
            if let Some(path) = &args.report {
                io::write_report_file(path, &report)?;
                println!("report: {}", path.display());
            }
            if let Some(path) = &args.counterexample_out {
                if let Some(ce) = report.body.results.iter().flat_map(|r| &r.failures).next() {
                    io::write_counterexample_file(path, ce)?;
                    println!("counterexample: {}", path.display());
                }
            }
            if report.passed() {
                println!("PASS ({} units)", report.body.results.len());
                Ok(0)
            } else {
                println!("FAIL ({} failures)", report.total_failures());
                Ok(1)
            }
        }
        Command::Symplectic(args) => {
            let phi = io::parse_matrix_file(&args.phi)?;
            let ring = phi.ring().clone();
            let phi_inv = match &args.phi_inv {
                Some(path) => {
                    let m = io::parse_matrix_file(path)?;
                    io::expect_ring(&ring, m.ring())?;
                    m
                }
                None => phi.inverse()?,
            };
            let v = parse_vector(&ring, &args.vector, phi.rows() - 1)?;
            let pair = symplectic_pair(&phi, &phi_inv, &v)?;
            println!("alpha =\n{}", pair.alpha);
            println!("beta =\n{}", pair.beta);
            if let Some(path) = &args.out_lower {
                io::write_matrix_file(path, &pair.m_lower)?;
                println!("wrote {}", path.display());
            }
            if let Some(path) = &args.out_upper {
                io::write_matrix_file(path, &pair.m_upper)?;
                println!("wrote {}", path.display());
            }
            if args.verify {
                let lower = is_symplectic(&phi, &pair.m_lower)?;
                let upper = is_symplectic(&phi, &pair.m_upper)?;
                println!("lower symplectic: {lower}");
                println!("upper symplectic: {upper}");
                if !(lower && upper) {
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Replay(args) => {
            let ce = io::parse_counterexample_file(&args.counterexample)?;
            let reproduced = replay_counterexample(&ce)?;
            if reproduced {
                println!(
                    "reproduced: {} [{} ring={} m={} n={} trial={}]",
                    ce.message, ce.check, ce.ring, ce.m, ce.n, ce.trial
                );
                Ok(1)
            } else {
                println!("did not reproduce");
                Ok(0)
            }
        }
    }
}

/// Parses arguments and runs a subcommand, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
