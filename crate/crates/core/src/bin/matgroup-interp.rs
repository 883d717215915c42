use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matgroup_interp::deform::{tn_report, GlDeformation, TnDeformation};
use matgroup_interp::interp::{Host, InterpretedRing};
use matgroup_interp::matgroup::DEFAULT_CAP;
use matgroup_interp::report::{Format, Report};
use matgroup_interp::suites::{self, Suite, SuiteOptions, DEFAULT_SEED};
use matgroup_interp::word::{decompose_gl, decompose_sl, SigmaSchedule};
use matgroup_interp::{Error, Matrix, RingSpec};

#[derive(Parser)]
#[command(name = "matgroup-interp", version, about = "Verify matrix-group identities by exact computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// gf:p, zmod:m or q
    #[arg(long, default_value = "gf:3")]
    ring: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Enumeration cap on group orders.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// json, csv or md on stdout, or a file path (format from its extension).
    #[arg(long, default_value = "json")]
    out: String,
    /// Include wall time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        /// steinberg, decompose, interp, definable, a4, cohom, deform or all
        #[arg(required_unless_present = "suite_flag", conflicts_with = "suite_flag")]
        suite: Option<String>,
        /// Same as the positional SUITE.
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flag: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose the matrix in FILE into transvections.
    Decompose {
        file: PathBuf,
        /// Allow det != 1 and append d_n(det).
        #[arg(long)]
        gl: bool,
        #[arg(long, default_value = "json")]
        out: String,
    },
    /// Evaluate a ring operation inside a carrier subgroup.
    Interpret {
        #[arg(long, default_value = "gf:3")]
        ring: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Carrier indices i,k.
        #[arg(long)]
        carrier: Option<String>,
        #[arg(long, default_value = "gl")]
        host: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Matrix file for --op lambda.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Build and check an abelian deformation.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Add,
    Mul,
    Mu,
    Lambda,
}

#[derive(Subcommand)]
enum DeformAction {
    Build {
        file: PathBuf,
        /// Only `all` is supported; every check runs.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Sampled triples for GL deformations.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value = "json")]
        out: String,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(String),
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Op(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Op(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

fn parse_ring(s: &str) -> Result<RingSpec, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// `--out` is either a format for stdout or a file whose extension picks
/// the format.
fn emit_text(text_for: impl Fn(Format) -> String, out: &str) -> Result<(), Failure> {
    if let Ok(format) = out.parse::<Format>() {
        print!("{}", text_for(format));
        return Ok(());
    }
    let path = Path::new(out);
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("md") => Format::Markdown,
        _ => Format::Json,
    };
    std::fs::write(path, text_for(format))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit_report(report: &Report, out: &str) -> Result<bool, Failure> {
    emit_text(|f| report.render(f), out)?;
    Ok(report.pass)
}

fn emit_value(v: &Value, out: &str) -> Result<(), Failure> {
    emit_text(
        |_| {
            let mut s = serde_json::to_string_pretty(v).expect("serialises");
            s.push('\n');
            s
        },
        out,
    )
}

fn dispatch(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Verify {
            suite,
            suite_flag,
            common,
        } => {
            let suite: Suite = suite.or(suite_flag).expect("clap requires one").parse()?;
            let ring = parse_ring(&common.ring)?;
            let opts = SuiteOptions {
                seed: common.seed,
                cap: common.cap,
            };
            let start = Instant::now();
            let mut report = suites::run(suite, ring, common.n, opts)?;
            if common.timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            emit_report(&report, &common.out)
        }
        Command::Decompose { file, gl, out } => {
            let m = Matrix::from_json(&read_json(&file)?)?;
            let word = if gl { decompose_gl(&m)? } else { decompose_sl(&m)? };
            emit_value(&word.to_json(), &out)?;
            Ok(true)
        }
        Command::Interpret {
            ring,
            n,
            carrier,
            host,
            op,
            x,
            y,
            matrix,
        } => {
            let ring = parse_ring(&ring)?;
            let host: Host = host.parse()?;
            let (i, k) = match carrier {
                None => (1, n),
                Some(c) => {
                    let parts: Vec<usize> = c
                        .split(',')
                        .map(|p| p.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| Failure::Usage(format!("bad carrier {c:?}, expected i,k")))?;
                    match parts[..] {
                        [i, k] => (i, k),
                        _ => return Err(Failure::Usage(format!("bad carrier {c:?}, expected i,k"))),
                    }
                }
            };
            let ir = InterpretedRing::new(ring, n, host, i, k)?;
            let elem = |v: &Option<String>, name: &str| -> Result<_, Failure> {
                let s = v.as_ref().ok_or_else(|| Failure::Usage(format!("--op needs --{name}")))?;
                Ok(ring.parse_elem(s)?)
            };
            let value = match op {
                Op::Add | Op::Mul => {
                    let (a, b) = (elem(&x, "x")?, elem(&y, "y")?);
                    let (ea, eb) = (ir.encode(&a), ir.encode(&b));
                    let m = if matches!(op, Op::Add) { ir.add(&ea, &eb)? } else { ir.mul(&ea, &eb)? };
                    json!({
                        "carrier": [ir.i, ir.k],
                        "aux": ir.j,
                        "matrix": m.to_json(),
                        "value": ring.format_elem(&ir.decode(&m)?),
                    })
                }
                Op::Mu => {
                    let a = elem(&x, "x")?;
                    let m = ir.mu(&a);
                    json!({"matrix": m.to_json(), "value": ring.format_elem(&a)})
                }
                Op::Lambda => {
                    let path = matrix.ok_or_else(|| Failure::Usage("--op lambda needs --matrix FILE".into()))?;
                    let g = Matrix::from_json(&read_json(&path)?)?;
                    let l = ir.lambda(&g, &SigmaSchedule::default_for(n))?;
                    let decoded = ir.decode_matrix(&l)?;
                    json!({
                        "carrier": [ir.i, ir.k],
                        "entries": l.entries.iter().map(Matrix::to_json).collect::<Vec<_>>(),
                        "decoded": decoded.to_json(),
                    })
                }
            };
            emit_value(&value, "json")?;
            Ok(true)
        }
        Command::Deform {
            action:
                DeformAction::Build {
                    file,
                    check,
                    cap,
                    seed,
                    samples,
                    out,
                },
        } => {
            if check != "all" {
                return Err(Failure::Usage(format!("unknown check set {check:?}; use all")));
            }
            let v = read_json(&file)?;
            let report = match v.get("kind").and_then(Value::as_str).unwrap_or("tn") {
                "tn" => tn_report(&TnDeformation::from_json(&v)?, cap)?,
                "gl" => GlDeformation::from_json(&v)?.validate(samples, seed)?,
                other => return Err(Failure::Usage(format!("unknown deformation kind {other:?}"))),
            };
            emit_report(&report, &out)
        }
    }
}
