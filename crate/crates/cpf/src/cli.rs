//! Command-line interface.
//!
//! Two subcommands:
//!
//! * `compute` — evaluate the Conway potential function of one closed
//!   colored braid given on the command line, or of a JSON batch read from
//!   stdin (`--batch -`).
//! * `verify` — run one of the seeded verification suites and print a
//!   per-check report.
//!
//! Exit codes: `0` success, `1` a verification check failed, `2` the braid
//! is not closable with the given colors, `3` malformed input (including
//! unknown flags or suite names), `4` an internal assertion failed, `5` a
//! batch item exceeded its time limit.

use std::collections::HashMap;
use std::io::Read as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::jsonio::{self, BatchItem, BatchLimits};
use crate::suites::{run_suite, SuiteConfig};
use crate::{conway_potential, to_alexander, ColoredBraid, CpfValue, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_NOT_CLOSABLE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_TIMEOUT: i32 = 5;

#[derive(Parser)]
#[command(
    name = "cpf",
    about = "Exact Conway potential function of colored links presented as closed braids",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate ∇ of a closed colored braid (or of a JSON batch from stdin).
    Compute(ComputeArgs),
    /// Run a seeded verification suite and report every check.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// Number of braid strands.
    #[arg(long)]
    strands: Option<usize>,
    /// Braid word: whitespace-separated nonzero integers, sign = crossing sign.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// One color name per strand (top of the braid), whitespace-separated.
    #[arg(long)]
    colors: Option<String>,
    /// Output format for a single computation.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print the Alexander polynomial determined by ∇.
    #[arg(long)]
    alexander: bool,
    /// Also print the one-variable value with all colors identified.
    #[arg(long)]
    uncolored: bool,
    /// Read a JSON job from stdin and write JSON results to stdout
    /// (the only accepted source is "-"). Items run in parallel, capped by
    /// the CPF_THREADS environment variable; output keeps input order.
    #[arg(long)]
    batch: Option<String>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// One of: axioms, invariance, identities, table1, oracle, knots.
    #[arg(long)]
    suite: String,
    /// Number of seeded trials (ignored by the fixed suites).
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// RNG seed; the same seed reproduces the same corpus.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest strand count generated.
    #[arg(long, default_value_t = 4)]
    max_strands: usize,
    /// Largest braid word length generated.
    #[arg(long, default_value_t = 10)]
    max_length: usize,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Entry point for the binary: parses `std::env::args`, runs, and returns
/// the process exit code. Panics anywhere below are reported as internal
/// assertion failures (exit 4) rather than aborting with a signal.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            return code;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(&cli))) {
        Ok(code) => code,
        Err(payload) => {
            eprintln!("internal assertion failed: {}", panic_text(payload.as_ref()));
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cli: &Cli) -> i32 {
    let outcome = match &cli.cmd {
        Cmd::Compute(args) if args.batch.is_some() => compute_batch(args),
        Cmd::Compute(args) => compute_single(args),
        Cmd::Verify(args) => verify(args),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("{e}");
        match e {
            Error::NotClosable(_) => EXIT_NOT_CLOSABLE,
            Error::Parse(_) | Error::Usage(_) => EXIT_PARSE,
        }
    })
}

fn compute_single(args: &ComputeArgs) -> Result<i32, Error> {
    let (Some(n), Some(word), Some(colors)) =
        (args.strands, args.word.as_deref(), args.colors.as_deref())
    else {
        return Err(Error::Usage(
            "compute needs --strands, --word and --colors (or --batch -)".into(),
        ));
    };
    let names: Vec<&str> = colors.split_whitespace().collect();
    let cb = ColoredBraid::parse(n, word, &names)?;
    cb.ensure_closable()?;
    let v = conway_potential(&cb)?;
    match args.format {
        Format::Text => {
            println!("{}", v.render());
            if args.alexander {
                println!("alexander: {}", to_alexander(&v).render());
            }
            if args.uncolored {
                println!("uncolored: {}", v.rho().render());
            }
        }
        Format::Json => {
            let mut obj = value_json(&v, args.alexander, args.uncolored);
            obj.insert("strands".into(), json!(n));
            obj.insert("word".into(), json!(cb.word.to_text()));
            obj.insert("colors".into(), json!(v.names));
            println!("{}", Value::Object(obj));
        }
    }
    Ok(EXIT_OK)
}

/// The JSON views of one computed value: canonical text, the fraction, and
/// the optional Alexander / uncolored projections.
fn value_json(v: &CpfValue, alexander: bool, uncolored: bool) -> serde_json::Map<String, Value> {
    let mut obj = serde_json::Map::new();
    obj.insert("components".into(), json!(v.components));
    obj.insert("text".into(), json!(v.render()));
    obj.insert("nabla".into(), jsonio::fraction_to_json(&v.value, &v.names));
    if alexander {
        let av = to_alexander(v);
        obj.insert(
            "alexander".into(),
            json!({
                "num": jsonio::poly_to_json(&av.poly, &av.names),
                "exp_den": av.exp_den,
                "text": av.render(),
            }),
        );
    }
    if uncolored {
        let r = v.rho();
        let mut sub = serde_json::Map::new();
        sub.insert("text".into(), json!(r.render()));
        sub.insert("value".into(), jsonio::fraction_to_json(&r.value, &r.names));
        obj.insert("uncolored".into(), Value::Object(sub));
    }
    obj
}

/// Checks one batch item against the job limits and parses it. Every item
/// must pass before any is executed.
fn validate_item(item: &BatchItem, limits: &BatchLimits) -> Result<ColoredBraid, Error> {
    if let Some(ms) = limits.max_strands {
        if item.strands > ms {
            return Err(Error::Parse(format!(
                "item has {} strands, above the job limit {ms}",
                item.strands
            )));
        }
    }
    if let Some(ml) = limits.max_length {
        let len = item.word.split_whitespace().count();
        if len > ml {
            return Err(Error::Parse(format!(
                "item word has {len} letters, above the job limit {ml}"
            )));
        }
    }
    let names: Vec<&str> = item.colors.iter().map(String::as_str).collect();
    let cb = ColoredBraid::parse(item.strands, &item.word, &names)?;
    cb.ensure_closable()?;
    Ok(cb)
}

fn compute_batch(args: &ComputeArgs) -> Result<i32, Error> {
    if args.batch.as_deref() != Some("-") {
        return Err(Error::Usage("--batch only reads from stdin; pass --batch -".into()));
    }
    if args.strands.is_some() || args.word.is_some() || args.colors.is_some() {
        return Err(Error::Usage("--batch takes its items from the JSON job on stdin".into()));
    }
    if args.alexander || args.uncolored {
        return Err(Error::Usage(
            "in batch mode, request views per item (\"alexander\": true, \"uncolored\": true)"
                .into(),
        ));
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
    let job = jsonio::batch_from_json(&text)?;

    // Validate everything up front: a malformed job never partially runs.
    let mut braids = Vec::with_capacity(job.items.len());
    let mut bad_parse = false;
    let mut bad_closure = false;
    for (i, item) in job.items.iter().enumerate() {
        match validate_item(item, &job.limits) {
            Ok(cb) => braids.push(cb),
            Err(e) => {
                eprintln!("item {i}: {e}");
                match e {
                    Error::NotClosable(_) => bad_closure = true,
                    _ => bad_parse = true,
                }
            }
        }
    }
    if bad_parse {
        return Ok(EXIT_PARSE);
    }
    if bad_closure {
        return Ok(EXIT_NOT_CLOSABLE);
    }

    let results = run_batch(&job.items, &braids, job.limits.timeout_ms.map(Duration::from_millis));

    let mut any_timeout = false;
    let mut any_internal = false;
    for r in &results {
        match r["status"].as_str() {
            Some("timeout") => any_timeout = true,
            Some("internal") => any_internal = true,
            _ => {}
        }
    }
    println!("{}", json!({ "results": results }));
    Ok(if any_internal {
        EXIT_INTERNAL
    } else if any_timeout {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    })
}

/// Runs the validated items on up to `CPF_THREADS` worker threads (default:
/// the machine's available parallelism) and returns one JSON result per item
/// in input order. A timed-out item frees its slot immediately — the stale
/// worker thread is left to finish in the background and its late result is
/// discarded, so a pathological job can briefly oversubscribe the cap.
fn run_batch(items: &[BatchItem], braids: &[ColoredBraid], timeout: Option<Duration>) -> Vec<Value> {
    let workers = std::env::var("CPF_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .unwrap_or_else(|| thread::available_parallelism().map(|n| n.get()).unwrap_or(1));

    let n = items.len();
    let mut results: Vec<Option<Value>> = vec![None; n];
    let (tx, rx) = mpsc::channel::<(usize, Result<Value, String>)>();
    let mut deadlines: HashMap<usize, Instant> = HashMap::new();
    let mut next = 0;

    while next < n || !deadlines.is_empty() {
        while next < n && deadlines.len() < workers {
            let cb = braids[next].clone();
            let (alexander, uncolored) = (items[next].alexander, items[next].uncolored);
            let tx = tx.clone();
            let idx = next;
            thread::spawn(move || {
                let out = catch_unwind(AssertUnwindSafe(|| {
                    let v = conway_potential(&cb).expect("batch items are validated up front");
                    Value::Object(value_json(&v, alexander, uncolored))
                }))
                .map_err(|p| panic_text(p.as_ref()));
                let _ = tx.send((idx, out));
            });
            deadlines.insert(idx, Instant::now() + timeout.unwrap_or(Duration::from_secs(0)));
            next += 1;
        }

        let received = match timeout {
            None => Some(rx.recv().expect("a worker always reports")),
            Some(_) => {
                let nearest = *deadlines.values().min().expect("slots are occupied here");
                match nearest.checked_duration_since(Instant::now()) {
                    Some(wait) => rx.recv_timeout(wait).ok(),
                    None => rx.try_recv().ok(),
                }
            }
        };

        match received {
            Some((idx, out)) => {
                // A result for an already-expired item arrives after its
                // timeout was recorded; drop it.
                if deadlines.remove(&idx).is_some() {
                    results[idx] = Some(match out {
                        Ok(mut obj) => {
                            obj["status"] = json!("ok");
                            obj
                        }
                        Err(msg) => json!({ "status": "internal", "error": msg }),
                    });
                }
            }
            None => {
                let now = Instant::now();
                let expired: Vec<usize> = deadlines
                    .iter()
                    .filter(|&(_, &d)| d <= now)
                    .map(|(&i, _)| i)
                    .collect();
                for i in expired {
                    deadlines.remove(&i);
                    results[i] = Some(json!({ "status": "timeout" }));
                }
            }
        }
    }
    results.into_iter().map(|r| r.expect("every item is resolved")).collect()
}

fn verify(args: &VerifyArgs) -> Result<i32, Error> {
    let cfg = SuiteConfig {
        trials: args.trials,
        seed: args.seed,
        max_strands: args.max_strands,
        max_length: args.max_length,
    };
    let report = run_suite(&args.suite, &cfg)?;
    print!("{}", report.render());
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic payload".to_string()
    }
}
