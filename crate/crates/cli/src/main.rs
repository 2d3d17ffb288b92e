use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use uebforge::catalog::{fixture, fixtures, FIXTURE_NAMES};
use uebforge::codec;
use uebforge::group::clock_shift_representation;
use uebforge::hadamard::{fourier, h_alpha, HadamardMatrix};
use uebforge::obstruction::{
    adjoint_closure_obstruction, mu_power_commutator_obstruction, NonzeroThreshold,
    ObstructionReport, Verdict, Witness,
};
use uebforge::qls::{from_classical, qls_from_hadamard};
use uebforge::repro::{self, ReproConfig, ReproInputs};
use uebforge::ueb::{hadamard_basis, nice_error_basis, qsm, sm, UnitaryErrorBasis};
use uebforge::{Error, Tolerance};

/// Build, validate and compare unitary error bases.
#[derive(Parser)]
#[command(name = "uebforge", version)]
struct Cli {
    /// Absolute entrywise tolerance for every numerical comparison.
    #[arg(
        long,
        global = true,
        env = "UEBFORGE_TOL",
        value_name = "EPS",
        allow_negative_numbers = true
    )]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Hadamard matrix, quantum Latin square or unitary error basis.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a JSON file against the axioms of its kind.
    Verify {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        /// Print only the JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Run an inequivalence test on a unitary error basis.
    Obstruct {
        #[arg(value_enum)]
        test: TestKind,
        file: PathBuf,
        /// Frobenius-norm floor for a nonzero commutator.
        #[arg(long, default_value_t = NonzeroThreshold::DEFAULT_THETA)]
        theta: f64,
        #[arg(long)]
        json: bool,
    },
    /// List or print the built-in reference objects.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// Recompute every reference result and report pass/fail per check.
    Reproduce {
        /// Run a single check by name.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = NonzeroThreshold::DEFAULT_THETA)]
        theta: f64,
        #[arg(long, default_value_t = ReproConfig::default().seed)]
        seed: u64,
        /// Trials per randomized property.
        #[arg(long, default_value_t = ReproConfig::default().trials)]
        trials: usize,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    Hadamard,
    Qls,
    Ueb,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TestKind {
    MuCommutator,
    AdjointClosure,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    Hadamard {
        #[arg(
            long,
            value_name = "N",
            conflicts_with = "h_alpha",
            required_unless_present = "h_alpha"
        )]
        fourier: Option<usize>,
        #[arg(long, value_name = "ALPHA", allow_negative_numbers = true)]
        h_alpha: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    Qls {
        #[arg(
            long,
            value_name = "FILE",
            conflicts_with = "from_classical",
            required_unless_present = "from_classical"
        )]
        from_hadamard: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        from_classical: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    Ueb(UebArgs),
}

#[derive(Args)]
#[group(id = "method", required = true, multiple = false, args = ["qsm", "sm", "hadamard", "nice"])]
struct UebArgs {
    /// Quantum shift-and-multiply: needs --qls and --hadamards.
    #[arg(long, requires_all = ["qls", "hadamards"])]
    qsm: bool,
    /// Shift-and-multiply: needs --latin and --hadamards.
    #[arg(long, requires_all = ["latin", "hadamards"])]
    sm: bool,
    /// Hadamard method: needs --hadamard-matrix.
    #[arg(long, requires = "hadamard_matrix")]
    hadamard: bool,
    /// Nice error basis: needs --clock-shift or --rep.
    #[arg(long)]
    nice: bool,
    #[arg(long, value_name = "FILE")]
    qls: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    latin: Option<PathBuf>,
    /// One file per row of the square, or a single file used for every row.
    #[arg(long, value_name = "FILE", num_args = 1..)]
    hadamards: Vec<PathBuf>,
    #[arg(long, value_name = "FILE")]
    hadamard_matrix: Option<PathBuf>,
    /// Clock-and-shift representation of Z_n × Z_n.
    #[arg(long, value_name = "N", conflicts_with = "rep")]
    clock_shift: Option<usize>,
    /// Projective representation JSON file.
    #[arg(long, value_name = "FILE")]
    rep: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum FixturesCmd {
    List,
    Dump {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
        name: String,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

/// Writes to standard output, ignoring a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> Outcome {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn hadamard_family(
    files: &[PathBuf],
    n: usize,
    tol: Tolerance,
) -> Result<Vec<HadamardMatrix>, Failure> {
    let hs = files
        .iter()
        .map(|f| Ok(codec::parse_hadamard(&read(f)?, tol)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    match hs.len() {
        1 => Ok(vec![hs[0].clone(); n]),
        k if k == n => Ok(hs),
        k => Err(Failure::Usage(format!(
            "--hadamards takes 1 or {n} files, got {k}"
        ))),
    }
}

fn construct(cmd: Construct, tol: Tolerance) -> Outcome {
    match cmd {
        Construct::Hadamard {
            fourier: n,
            h_alpha: alpha,
            out,
        } => {
            let h = match (n, alpha) {
                (Some(0), _) => return Err(Failure::Usage("--fourier needs n ≥ 1".into())),
                (Some(n), _) => fourier(n),
                (None, Some(a)) if a.is_finite() => h_alpha(a),
                _ => return Err(Failure::Usage("--h-alpha needs a finite angle".into())),
            };
            emit(&out, &codec::write_matrix(h.matrix(), None))
        }
        Construct::Qls {
            from_hadamard,
            from_classical: classical,
            out,
        } => {
            let q = match (from_hadamard, classical) {
                (Some(f), _) => qls_from_hadamard(&codec::parse_hadamard(&read(&f)?, tol)?, tol)?,
                (None, Some(f)) => from_classical(&codec::parse_latin(&read(&f)?)?),
                (None, None) => unreachable!("clap requires one source"),
            };
            emit(&out, &codec::write_qls(&q, None))
        }
        Construct::Ueb(args) => {
            let basis = build_ueb(&args, tol)?;
            emit(&args.out, &codec::write_ueb(&basis, None))
        }
    }
}

fn build_ueb(args: &UebArgs, tol: Tolerance) -> Result<UnitaryErrorBasis, Failure> {
    let required = |p: &Option<PathBuf>, flag: &str| {
        p.clone()
            .ok_or_else(|| Failure::Usage(format!("missing {flag}")))
    };
    if args.qsm {
        let q = codec::parse_qls(&read(&required(&args.qls, "--qls")?)?, tol)?;
        let hs = hadamard_family(&args.hadamards, q.n(), tol)?;
        Ok(qsm(&q, &hs, tol)?)
    } else if args.sm {
        let l = codec::parse_latin(&read(&required(&args.latin, "--latin")?)?)?;
        let hs = hadamard_family(&args.hadamards, l.n(), tol)?;
        Ok(sm(&l, &hs, tol)?)
    } else if args.hadamard {
        let path = required(&args.hadamard_matrix, "--hadamard-matrix")?;
        Ok(hadamard_basis(
            &codec::parse_hadamard(&read(&path)?, tol)?,
            tol,
        )?)
    } else {
        let rep = match (args.clock_shift, &args.rep) {
            (Some(n), _) => clock_shift_representation(n, tol)?,
            (None, Some(f)) => codec::parse_representation(&read(f)?, tol)?,
            (None, None) => {
                return Err(Failure::Usage("--nice needs --clock-shift or --rep".into()))
            }
        };
        Ok(nice_error_basis(&rep, tol)?)
    }
}

fn verify(kind: Kind, file: &Path, json: bool, tol: Tolerance) -> Outcome {
    let text = read(file)?;
    let (label, result) = match kind {
        Kind::Hadamard => ("hadamard", codec::parse_hadamard(&text, tol).map(|_| ())),
        Kind::Qls => ("qls", codec::parse_qls(&text, tol).map(|_| ())),
        Kind::Ueb => ("ueb", codec::parse_ueb(&text, tol).map(|_| ())),
    };
    let report = serde_json::json!({
        "kind": label,
        "file": file.display().to_string(),
        "valid": result.is_ok(),
        "error": result.as_ref().err().map(ToString::to_string),
        "eps": tol.eps(),
    });
    if !json {
        match &result {
            Ok(()) => say!("valid {label}: {}", file.display()),
            Err(e) => say!("invalid {label}: {}: {e}", file.display()),
        }
    }
    say!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(if result.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn describe(report: &ObstructionReport, n: usize) -> String {
    let at = |k: usize| format!("({}, {})", k / n, k % n);
    match &report.witness {
        Some(Witness::NonCommutingPair {
            first,
            second,
            commutator_norm,
        }) => format!(
            "obstructed: elements {first} {} and {second} {} have non-commuting μ-th powers \
             (commutator norm {commutator_norm:.6}); not equivalent to any monomial basis",
            at(*first),
            at(*second)
        ),
        Some(Witness::UnmatchedAdjoint { index }) => format!(
            "obstructed: the adjoint of element {index} {} is proportional to no element; \
             not equivalent to any nice error basis",
            at(*index)
        ),
        None => "not_obstructed: inconclusive, no equivalence is implied".to_string(),
    }
}

fn obstruct(test: TestKind, file: &Path, theta: f64, json: bool, tol: Tolerance) -> Outcome {
    let theta = NonzeroThreshold::new(theta, tol).map_err(|e| Failure::Usage(e.to_string()))?;
    let basis = codec::parse_ueb(&read(file)?, tol)?;
    let report = match test {
        TestKind::MuCommutator => mu_power_commutator_obstruction(basis.elements(), theta, tol),
        TestKind::AdjointClosure => adjoint_closure_obstruction(basis.elements(), tol),
    }
    // without the identity the test cannot run; exit 1 would read as a certificate
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if !json {
        say!("{}", describe(&report, basis.n()));
    }
    say!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(match report.verdict {
        Verdict::Obstructed => ExitCode::from(1),
        Verdict::NotObstructed => ExitCode::SUCCESS,
    })
}

fn fixtures_cmd(cmd: FixturesCmd) -> Outcome {
    match cmd {
        FixturesCmd::List => {
            for f in fixtures() {
                say!("{}\t{}\t{}", f.name, f.object.kind(), f.source);
            }
            Ok(ExitCode::SUCCESS)
        }
        FixturesCmd::Dump { name, out } => {
            let f = fixture(&name).ok_or_else(|| Failure::Usage(format!("no fixture '{name}'")))?;
            emit(&out, &codec::write_fixture(&f))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let tol = match cli.tol {
        Some(eps) => Tolerance::new(eps).map_err(|e| Failure::Usage(e.to_string()))?,
        None => Tolerance::default(),
    };
    match cli.command {
        Command::Construct(c) => construct(c, tol),
        Command::Verify { kind, file, json } => verify(kind, &file, json, tol),
        Command::Obstruct {
            test,
            file,
            theta,
            json,
        } => obstruct(test, &file, theta, json, tol),
        Command::Fixtures(f) => fixtures_cmd(f),
        Command::Reproduce {
            only,
            json,
            theta,
            seed,
            trials,
        } => {
            let cfg = ReproConfig {
                tol,
                theta: NonzeroThreshold::new(theta, tol)
                    .map_err(|e| Failure::Usage(e.to_string()))?,
                seed,
                trials,
                only,
            };
            let report = repro::run(&ReproInputs::default(), &cfg)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                say!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                say!("{report}");
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
