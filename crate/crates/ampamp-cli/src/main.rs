//! Command-line front end: solve the phase-matching condition, plan
//! rotations, schedule certain search, step the simulator, sweep bounds.
//!
//! Output contract: single results are one-line JSON records on stdout
//! (keys sorted, so reruns are byte-identical); `simulate` emits one JSON
//! record per step; `bounds` emits CSV rows on stdout with a JSON summary
//! on stderr, or a single JSON document under `--format json`. Exit code 0
//! on success, 2 for invalid parameters, 1 when a numerical contract the
//! tool promises (certainty, rotation accuracy) fails to hold.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ampamp::{
    apply_q, build_q_matrix, decompose_equal_diagonal, diagonal_gap, effective_operator,
    plan_rotation, run_exact_registers, run_exact_subspace, run_exact_subspace_uncorrected,
    schedule_exact, solve_phi_good, summarize, sweep, AlgorithmModel, BoundCheck, PhasePair,
    SimConfig, SweepGrid, Unitary2,
};

#[derive(Parser)]
#[command(
    name = "ampamp",
    version,
    about = "Amplitude amplification with arbitrary phases: matching, rotation synthesis, certain search, robustness bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridChoice {
    /// a = 2^-1 .. 2^-10 (phase-tolerance: 2^-8 .. 2^-24) against five phases.
    Default,
    /// a = 2^-8 .. 2^-24 in factor-4 steps against the same phases.
    Deep,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the phase-matching condition at one point and decompose the
    /// matched iterate into rotation and phases.
    Solve {
        /// Zero-state phase in radians; accepts pi expressions like pi/2.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        /// One-shot success probability, in (0, 1).
        #[arg(long)]
        a: f64,
        /// Write the record to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan a target rotation as m equal matched steps and verify the
    /// effective operator against the plain rotation.
    Rotate {
        /// Target rotation angle in [0, 2 pi); accepts pi expressions.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        x: f64,
        /// One-shot success probability, in (0, 1).
        #[arg(long)]
        a: f64,
        /// Write the record to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schedule search that succeeds with certainty and run it, both in the
    /// 2x2 model and on the full three-register simulator.
    Exact {
        /// Register width in qubits.
        #[arg(long)]
        n: u32,
        /// Comma-separated marked basis states, e.g. 3 or 1,6.
        #[arg(long)]
        marked: String,
        /// Zero-state phase in radians; accepts pi expressions.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        /// Write the record to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step the full statevector with explicit phases and report the good
    /// probability after every iterate.
    Simulate {
        /// Register width in qubits.
        #[arg(long)]
        n: u32,
        /// Comma-separated marked basis states.
        #[arg(long)]
        marked: String,
        /// Zero-state phase in radians; accepts pi expressions.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        /// Oracle phase in radians; accepts pi expressions.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        varphi: f64,
        /// Number of iterate applications.
        #[arg(long)]
        steps: u32,
        /// Write the records to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one robustness check over a parameter grid.
    Bounds {
        /// Which check to run: overlap, norm-chain, failure, phase-tolerance.
        #[arg(long)]
        check: String,
        /// Which grid to sweep.
        #[arg(long, value_enum, default_value_t = GridChoice::Default)]
        grid: GridChoice,
        /// Epsilon for the phase-tolerance check.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// csv (rows on stdout, JSON summary on stderr) or json (one document).
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Write the rows to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad parameters; exit code 2 like clap's own usage errors.
    Validation(String),
    /// A numerical promise of the tool failed; exit code 1.
    Internal(String),
}

impl From<ampamp::Error> for CliError {
    fn from(e: ampamp::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Parses an angle: plain radians, or a pi expression with an optional
/// coefficient and divisor ("pi", "-pi/4", "2pi/3", "0.5pi").
fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(idx) = t.find("pi") {
        let coef = match t[..idx].trim().trim_end_matches('*').trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient in angle '{s}'"))?,
        };
        let rest = t[idx + 2..].trim();
        let div = if rest.is_empty() {
            1.0
        } else {
            let d = rest
                .strip_prefix('/')
                .ok_or_else(|| format!("bad angle '{s}': expected '/denominator' after pi"))?
                .trim();
            let d: f64 = d
                .parse()
                .map_err(|_| format!("bad denominator in angle '{s}'"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in angle '{s}'"));
            }
            d
        };
        Ok(coef * std::f64::consts::PI / div)
    } else {
        t.parse::<f64>().map_err(|_| format!("bad angle '{s}'"))
    }
}

fn parse_marked(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Validation(format!("bad marked index '{p}'")))
        })
        .collect()
}

/// Prints to stdout or writes to the file, exactly one of the two.
fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => fs::write(path, payload)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
    }
}

fn cmd_solve(phi: f64, a: f64, out: &Option<PathBuf>) -> Result<(), CliError> {
    let model = AlgorithmModel::from_success_probability(a)?;
    let phi_good = solve_phi_good(phi, &model)?;
    let pair = PhasePair::new(phi, phi_good);
    let q = build_q_matrix(&model, &pair);
    let gap = diagonal_gap(&q);
    let pr = decompose_equal_diagonal(&q)?;
    let record = json!({
        "phi_zero": pair.phi_zero(),
        "a": a,
        "phi_good": phi_good,
        "vartheta": pr.vartheta,
        "u": pr.u,
        "v": pr.v,
        "diagonal_gap": gap,
    });
    emit(out, &format!("{record}\n"))
}

fn cmd_rotate(x: f64, a: f64, out: &Option<PathBuf>) -> Result<(), CliError> {
    let model = AlgorithmModel::from_success_probability(a)?;
    let plan = plan_rotation(x, &model)?;
    let eff = effective_operator(&plan, &model);
    let max_deviation = eff.max_diff(&Unitary2::rotation(x));
    if max_deviation > 1e-9 {
        return Err(CliError::Internal(format!(
            "effective operator misses the target rotation by {max_deviation:e}"
        )));
    }
    let record = json!({
        "target_x": plan.target_x(),
        "a": a,
        "m": plan.m(),
        "vartheta": plan.vartheta(),
        "phi_zero": plan.phases().phi_zero(),
        "phi_good": plan.phases().phi_good(),
        "u": plan.u(),
        "v": plan.v(),
        "grover_shortcut": plan.grover_shortcut(),
        "max_deviation": max_deviation,
    });
    emit(out, &format!("{record}\n"))
}

fn cmd_exact(n: u32, marked: &str, phi: f64, out: &Option<PathBuf>) -> Result<(), CliError> {
    let marked = parse_marked(marked)?;
    let config = SimConfig::walsh_hadamard(n, &marked)?;
    let model = config.model()?;
    let schedule = schedule_exact(phi, &model)?;
    let p_sub = run_exact_subspace(&schedule, &model);
    let p_plain = run_exact_subspace_uncorrected(&schedule, &model);
    let regs = run_exact_registers(&config, &schedule)?;
    if (p_sub - 1.0).abs() > 1e-9 {
        return Err(CliError::Internal(format!(
            "subspace run reached {p_sub}, not 1"
        )));
    }
    if (regs.p_good - 1.0).abs() > 1e-9 {
        return Err(CliError::Internal(format!(
            "register run reached {}, not 1",
            regs.p_good
        )));
    }
    let record = json!({
        "phi_zero": schedule.phases().phi_zero(),
        "phi_good": schedule.phases().phi_good(),
        "m": schedule.m(),
        "theta_init": schedule.theta_init(),
        "u": schedule.u(),
        "v": schedule.v(),
        "p_success_subspace": p_sub,
        "p_success_subspace_uncorrected": p_plain,
        "p_success_registers": regs.p_good,
        "purity": regs.purity,
        "norm_drift": regs.norm_drift,
    });
    emit(out, &format!("{record}\n"))
}

fn cmd_simulate(
    n: u32,
    marked: &str,
    phi: f64,
    varphi: f64,
    steps: u32,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let marked = parse_marked(marked)?;
    let config = SimConfig::walsh_hadamard(n, &marked)?;
    let phases = PhasePair::new(phi, varphi);
    let mut state = config.prepare_initial();
    let mut lines = String::new();
    for step in 0..=steps {
        if step > 0 {
            apply_q(&mut state, &config, &phases);
        }
        let p_good = state.p_good(&config);
        let angle_estimate = p_good.clamp(0.0, 1.0).sqrt().asin();
        let record = json!({
            "step": step,
            "p_good": p_good,
            "angle_estimate": angle_estimate,
        });
        lines.push_str(&format!("{record}\n"));
    }
    emit(out, &lines)
}

fn cmd_bounds(
    check: &str,
    grid_choice: GridChoice,
    epsilon: f64,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let check: BoundCheck = check.parse()?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(CliError::Validation(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let mut grid = match grid_choice {
        GridChoice::Default => SweepGrid::default_for(check),
        GridChoice::Deep => SweepGrid::deep(check),
    };
    grid.epsilon = epsilon;
    let rows = sweep(&grid)?;
    let summary = summarize(&rows);
    let summary_json = json!({
        "check": check.token(),
        "rows": summary.rows,
        "satisfied": summary.satisfied,
        "violated": summary.violated,
        "vacuous": summary.vacuous,
        "not_applicable": summary.not_applicable,
    });

    match format {
        OutputFormat::Csv => {
            let mut csv = String::from("check,a,phi_zero,phi_good_used,m,measured,bound,status\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.check.token(),
                    r.a,
                    r.phi_zero,
                    r.phi_good_used,
                    r.m,
                    r.measured,
                    r.bound,
                    r.status()
                ));
            }
            emit(out, &csv)?;
            eprintln!("{summary_json}");
        }
        OutputFormat::Json => {
            let rows_json: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "check": r.check.token(),
                        "a": r.a,
                        "phi_zero": r.phi_zero,
                        "phi_good_used": r.phi_good_used,
                        "phi_good_matched": r.phi_good_matched,
                        "m": r.m,
                        "measured": r.measured,
                        "bound": r.bound,
                        "satisfied": r.satisfied,
                        "vacuous": r.vacuous,
                        "applicable": r.applicable,
                        "status": r.status(),
                    })
                })
                .collect();
            let doc = json!({ "summary": summary_json, "rows": rows_json });
            emit(out, &format!("{doc}\n"))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { phi, a, out } => cmd_solve(phi, a, &out),
        Command::Rotate { x, a, out } => cmd_rotate(x, a, &out),
        Command::Exact {
            n,
            marked,
            phi,
            out,
        } => cmd_exact(n, &marked, phi, &out),
        Command::Simulate {
            n,
            marked,
            phi,
            varphi,
            steps,
            out,
        } => cmd_simulate(n, &marked, phi, varphi, steps, &out),
        Command::Bounds {
            check,
            grid,
            epsilon,
            format,
            out,
        } => cmd_bounds(&check, grid, epsilon, format, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_angle;
    use std::f64::consts::PI;

    #[test]
    fn angles_parse_to_full_precision() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert_eq!(parse_angle("-0.5").unwrap(), -0.5);
    }

    #[test]
    fn malformed_angles_are_rejected() {
        for bad in ["pie", "pi//2", "pi/0", "two pi", "", "pi/x", "1.2.3"] {
            assert!(parse_angle(bad).is_err(), "accepted '{bad}'");
        }
    }
}
