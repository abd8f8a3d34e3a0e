//! Command-line driver.
//!
//! Five subcommands: `run` (single or repeated runs), `enumerate` (all 32
//! measurement branches), `verify-tables` (channel and collapse oracles),
//! `ghz` (entangled-state exchange), and `metrics` (the comparison table).
//! Output goes to stdout, diagnostics to stderr, and the exit status is 0
//! exactly when every check in the invocation passed. A fixed `--seed` makes
//! the output byte-identical across runs.
//!
//! Explicit amplitudes are written `re,im;re,im` (two complex pairs separated
//! by a semicolon); the presets `random`, `zero` and `plus` cover the common
//! cases. Hand-typed amplitudes are accepted when normalized within 1e-6 and
//! are renormalized on ingest with a warning.

use crate::channel::{prepare_channel, reference_amplitudes, ChannelCode};
use crate::ghz::{run_bqct_ghz, GhzState};
use crate::metrics::{comparison_row, literature_rows, render_table};
use crate::protocol::{
    enumerate_branches, run_bqct, verify_collapse_tables_seeded, BranchSelector, RunMode,
};
use crate::qsim::{QubitState, FIDELITY_TOLERANCE, NORM_TOLERANCE};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bqct",
    about = "Simulate and verify bidirectional controlled teleportation over a five-qubit channel",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute protocol runs and report both recovered fidelities
    Run(RunArgs),
    /// Execute every measurement branch and check all fidelities
    Enumerate(EnumerateArgs),
    /// Check the channel amplitudes and both collapse tables against simulation
    VerifyTables(VerifyArgs),
    /// Exchange n- and m-qubit GHZ-class states through the protocol
    Ghz(GhzArgs),
    /// Print the resource-comparison table (derived row plus literature rows)
    Metrics(MetricsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// One JSON record per line
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sample,
    Enumerate,
}

#[derive(Args)]
struct RunArgs {
    /// Channel code, two bits in the order a0,b1
    #[arg(long, default_value = "01")]
    code: String,
    /// Alice's input: random|zero|plus or "re,im;re,im"
    #[arg(long, default_value = "random")]
    alice: String,
    /// Bob's input: random|zero|plus or "re,im;re,im"
    #[arg(long, default_value = "random")]
    bob: String,
    #[arg(long, value_enum, default_value_t = Mode::Sample)]
    mode: Mode,
    /// Branch index (0..32) taken in enumerate mode
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..32))]
    branch: u8,
    #[arg(long, default_value_t = 1)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value = "01")]
    code: String,
    #[arg(long, default_value = "random")]
    alice: String,
    #[arg(long, default_value = "random")]
    bob: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GhzArgs {
    #[arg(long, default_value = "01")]
    code: String,
    /// Qubit count of Alice's entangled state
    #[arg(long = "ghz-n", default_value_t = 3)]
    ghz_n: usize,
    /// Qubit count of Bob's entangled state
    #[arg(long = "ghz-m", default_value_t = 2)]
    ghz_m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Parses argv, dispatches, and maps the outcome to an exit status.
pub fn execute<I>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders usage errors to stderr and --help to stdout
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::VerifyTables(args) => cmd_verify(args),
        Command::Ghz(args) => cmd_ghz(args),
        Command::Metrics(args) => cmd_metrics(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn parse_code(raw: &str) -> Result<ChannelCode, String> {
    raw.parse::<ChannelCode>()
        .map_err(|e| format!("--code: {e}"))
}

fn parse_state(raw: &str, flag: &str, rng: &mut ChaCha8Rng) -> Result<QubitState, String> {
    match raw {
        "random" => return Ok(QubitState::random(rng)),
        "zero" => return Ok(QubitState::zero()),
        "plus" => return Ok(QubitState::plus()),
        _ => {}
    }
    let pairs: Vec<&str> = raw.split(';').collect();
    if pairs.len() != 2 {
        return Err(format!(
            "{flag}: expected a preset (random|zero|plus) or two 're,im' pairs separated by ';', got {raw:?}"
        ));
    }
    let mut coeffs = [Complex64::new(0.0, 0.0); 2];
    for (k, pair) in pairs.iter().enumerate() {
        let parts: Vec<&str> = pair.split(',').collect();
        if parts.len() != 2 {
            return Err(format!(
                "{flag}: component {k} must be 're,im', got {pair:?}"
            ));
        }
        let re: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|e| format!("{flag}: {e}"))?;
        let im: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|e| format!("{flag}: {e}"))?;
        coeffs[k] = Complex64::new(re, im);
    }
    let norm2 = coeffs[0].norm_sqr() + coeffs[1].norm_sqr();
    if !norm2.is_finite() || (norm2 - 1.0).abs() > 1e-6 {
        return Err(format!(
            "{flag}: state is not normalized (norm² = {norm2}); amplitudes must be normalized within 1e-6"
        ));
    }
    if (norm2 - 1.0).abs() > FIDELITY_TOLERANCE {
        eprintln!("warning: {flag} renormalized (norm² was {norm2})");
    }
    let norm = norm2.sqrt();
    QubitState::new(coeffs[0] / norm, coeffs[1] / norm).map_err(|e| format!("{flag}: {e}"))
}

fn emit<T: Serialize>(record: &T) {
    println!(
        "{}",
        serde_json::to_string(record).expect("record serializes")
    );
}

#[derive(Serialize)]
struct RunRecord {
    kind: &'static str,
    trial: u32,
    code: ChannelCode,
    branch: String,
    probability: f64,
    fidelity_alice: f64,
    fidelity_bob: f64,
    pass: bool,
}

fn cmd_run(args: RunArgs) -> Result<bool, String> {
    let code = parse_code(&args.code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let alice = parse_state(&args.alice, "--alice", &mut rng)?;
    let bob = parse_state(&args.bob, "--bob", &mut rng)?;

    let mut all_pass = true;
    for trial in 0..args.trials {
        let mode = match args.mode {
            Mode::Sample => RunMode::Sample { seed: rng.gen() },
            Mode::Enumerate => RunMode::Enumerate(BranchSelector::from_index(args.branch)),
        };
        let r = run_bqct(code, &alice, &bob, mode).map_err(|e| e.to_string())?;
        let pass = r.fidelity_alice >= 1.0 - FIDELITY_TOLERANCE
            && r.fidelity_bob >= 1.0 - FIDELITY_TOLERANCE;
        all_pass &= pass;
        let branch = BranchSelector {
            alice_z: measured_value(&r.transcript, 0),
            bob_z: measured_value(&r.transcript, 1),
            alice_x: measured_value(&r.transcript, 2),
            bob_x: measured_value(&r.transcript, 3),
            charlie_x: measured_value(&r.transcript, 4),
        };
        match args.format {
            Format::Text => {
                println!("trial {trial}: code {code}, branch [{branch}]");
                print!("{}", r.transcript);
                println!(
                    "fidelity (alice<-bob) {:.10}   fidelity (bob<-alice) {:.10}   {}",
                    r.fidelity_alice,
                    r.fidelity_bob,
                    verdict(pass)
                );
            }
            Format::Records => {
                print!("{}", r.transcript.to_jsonl());
                emit(&RunRecord {
                    kind: "run_summary",
                    trial,
                    code,
                    branch: branch.to_string(),
                    probability: r.transcript.branch_probability(),
                    fidelity_alice: r.fidelity_alice,
                    fidelity_bob: r.fidelity_bob,
                    pass,
                });
            }
        }
    }
    if args.format == Format::Text {
        println!("{}", verdict(all_pass));
    }
    Ok(all_pass)
}

/// Value of the k-th measurement in the log.
fn measured_value(t: &crate::transcript::Transcript, k: usize) -> u8 {
    t.measurements()
        .nth(k)
        .map(|e| match e {
            crate::transcript::Event::Measurement { value, .. } => *value,
            _ => unreachable!(),
        })
        .unwrap_or(0)
}

#[derive(Serialize)]
struct BranchRecord {
    kind: &'static str,
    index: u8,
    selector: String,
    probability: f64,
    fidelity_alice: f64,
    fidelity_bob: f64,
}

#[derive(Serialize)]
struct EnumerateSummary {
    kind: &'static str,
    code: ChannelCode,
    branches: usize,
    total_probability: f64,
    min_fidelity: f64,
    pass: bool,
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<bool, String> {
    let code = parse_code(&args.code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let alice = parse_state(&args.alice, "--alice", &mut rng)?;
    let bob = parse_state(&args.bob, "--bob", &mut rng)?;

    let branches = enumerate_branches(code, &alice, &bob).map_err(|e| e.to_string())?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    let min_fidelity = branches
        .iter()
        .map(|b| b.result.fidelity_alice.min(b.result.fidelity_bob))
        .fold(1.0, f64::min);
    let pass =
        (total - 1.0).abs() <= FIDELITY_TOLERANCE && min_fidelity >= 1.0 - FIDELITY_TOLERANCE;

    for b in &branches {
        match args.format {
            Format::Text => println!(
                "branch {:2}  [{}]  p={:.10}  F_alice={:.10}  F_bob={:.10}",
                b.selector.index(),
                b.selector,
                b.probability,
                b.result.fidelity_alice,
                b.result.fidelity_bob
            ),
            Format::Records => emit(&BranchRecord {
                kind: "branch",
                index: b.selector.index(),
                selector: b.selector.to_string(),
                probability: b.probability,
                fidelity_alice: b.result.fidelity_alice,
                fidelity_bob: b.result.fidelity_bob,
            }),
        }
    }
    match args.format {
        Format::Text => println!(
            "{} ({} branches, total probability {:.10}, min fidelity {:.10})",
            verdict(pass),
            branches.len(),
            total,
            min_fidelity
        ),
        Format::Records => emit(&EnumerateSummary {
            kind: "enumerate_summary",
            code,
            branches: branches.len(),
            total_probability: total,
            min_fidelity,
            pass,
        }),
    }
    Ok(pass)
}

#[derive(Serialize)]
struct ChannelRecord {
    kind: &'static str,
    code: ChannelCode,
    max_deviation: f64,
    pass: bool,
}

#[derive(Serialize)]
struct CollapseRecord {
    kind: &'static str,
    table: crate::protocol::CollapseTable,
    row: String,
    max_deviation: f64,
    pass: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, String> {
    let mut all_pass = true;

    for code in ChannelCode::all() {
        let sv = prepare_channel(code);
        let mut max_dev = 0.0f64;
        let mut expected = vec![Complex64::new(0.0, 0.0); 32];
        for (bits, amp) in reference_amplitudes(code) {
            let idx = usize::from_str_radix(bits, 2).expect("reference bits");
            expected[idx] = Complex64::new(amp, 0.0);
        }
        for (got, want) in sv.amplitudes().iter().zip(&expected) {
            max_dev = max_dev.max((got - want).norm());
        }
        let pass = max_dev <= NORM_TOLERANCE;
        all_pass &= pass;
        match args.format {
            Format::Text => println!(
                "channel {code}            deviation {max_dev:.3e}  {}",
                verdict(pass)
            ),
            Format::Records => emit(&ChannelRecord {
                kind: "channel_row",
                code,
                max_deviation: max_dev,
                pass,
            }),
        }
    }

    let report = verify_collapse_tables_seeded(args.seed);
    for row in &report.rows {
        all_pass &= row.pass;
        match args.format {
            Format::Text => println!(
                "collapse {:7} {:9}  deviation {:.3e}  {}",
                match row.table {
                    crate::protocol::CollapseTable::ZBasis => "z-basis",
                    crate::protocol::CollapseTable::XBasis => "x-basis",
                },
                row.row,
                row.max_deviation,
                verdict(row.pass)
            ),
            Format::Records => emit(&CollapseRecord {
                kind: "collapse_row",
                table: row.table,
                row: row.row.clone(),
                max_deviation: row.max_deviation,
                pass: row.pass,
            }),
        }
    }
    if args.format == Format::Text {
        println!("{}", verdict(all_pass));
    }
    Ok(all_pass)
}

#[derive(Serialize)]
struct GhzRecord {
    kind: &'static str,
    code: ChannelCode,
    alice_qubits: usize,
    bob_qubits: usize,
    fidelity_alice: f64,
    fidelity_bob: f64,
    measurements: usize,
    pass: bool,
}

fn cmd_ghz(args: GhzArgs) -> Result<bool, String> {
    let code = parse_code(&args.code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let alice = GhzState::random(args.ghz_n, &mut rng).map_err(|e| format!("--ghz-n: {e}"))?;
    let bob = GhzState::random(args.ghz_m, &mut rng).map_err(|e| format!("--ghz-m: {e}"))?;
    let r = run_bqct_ghz(code, &alice, &bob, RunMode::Sample { seed: rng.gen() })
        .map_err(|e| e.to_string())?;
    let pass =
        r.fidelity_alice >= 1.0 - FIDELITY_TOLERANCE && r.fidelity_bob >= 1.0 - FIDELITY_TOLERANCE;
    match args.format {
        Format::Text => {
            println!(
                "alice sent {} qubits, bob sent {} qubits over channel {code}",
                args.ghz_n, args.ghz_m
            );
            println!(
                "fidelity (alice<-bob, {} qubits) {:.10}",
                args.ghz_m, r.fidelity_alice
            );
            println!(
                "fidelity (bob<-alice, {} qubits) {:.10}",
                args.ghz_n, r.fidelity_bob
            );
            println!(
                "measurements {}  messages {}  {}",
                r.transcript.single_qubit_measurements(),
                r.transcript.messages().count(),
                verdict(pass)
            );
        }
        Format::Records => emit(&GhzRecord {
            kind: "ghz_summary",
            code,
            alice_qubits: args.ghz_n,
            bob_qubits: args.ghz_m,
            fidelity_alice: r.fidelity_alice,
            fidelity_bob: r.fidelity_bob,
            measurements: r.transcript.single_qubit_measurements(),
            pass,
        }),
    }
    Ok(pass)
}

#[derive(Serialize)]
struct MetricsRecord<'a> {
    kind: &'static str,
    derived: bool,
    #[serde(flatten)]
    row: &'a crate::metrics::ComparisonRow,
}

fn cmd_metrics(args: MetricsArgs) -> Result<bool, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let alice = QubitState::random(&mut rng);
    let bob = QubitState::random(&mut rng);
    let live = run_bqct(
        ChannelCode::new(false, true),
        &alice,
        &bob,
        RunMode::Sample { seed: rng.gen() },
    )
    .map_err(|e| e.to_string())?;
    let derived = comparison_row(&live.transcript).map_err(|e| e.to_string())?;

    let mut rows = literature_rows();
    rows.push(derived.clone());
    match args.format {
        Format::Text => print!("{}", render_table(&rows)),
        Format::Records => {
            for row in &rows {
                emit(&MetricsRecord {
                    kind: "comparison_row",
                    derived: row.protocol_name == "Our method",
                    row,
                });
            }
        }
    }
    Ok(true)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
