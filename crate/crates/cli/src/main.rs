//! `qce` — command-line front end for the counter-erasure library.
//!
//! Every subcommand is a pure function of its flags. Results are emitted as
//! JSON (patterns optionally as CSV) on stdout or to `--out`; all inputs
//! are echoed back for provenance and every float carries 17 significant
//! digits. Exit codes: 0 success, 1 domain error (or failed verification),
//! 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use qce_core::decomposition::{MinimalMixture, RangeState};
use qce_core::distant::{
    decomposition_for_measurement, is_distant_measurement, luders_select,
    measurement_for_decomposition, nonselective_measure, purify, Branch, YesNoMeasurement,
    COMMUTATOR_TOL,
};
use qce_core::ensemble::{run as run_simulation, SimConfig, DEFAULT_BINS, GENERATOR};
use qce_core::interference::{gaussian_two_slit, patterns, preset, ScreenGrid, SlitWavePair};
use qce_core::json::{fmt_f64, number};
use qce_core::states::{partial_trace_subsystem, Operator, StateVector, IDENTITY_TOL, NORM_TOL};
use qce_core::verify::{run_all, GridSpec};

#[derive(Parser)]
#[command(
    name = "qce",
    version,
    about = "Two-term decompositions of rank-2 mixtures, distant yes-no measurements, \
             erasure patterns, and a deterministic ensemble simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The unique two-term decomposition through a range state: weight,
    /// state, and counter state. Supply --p directly or --w to solve for p
    /// first; --split-fraction additionally splits off that fraction of
    /// the weight (s ≤ 1 emits the residual state, s > 1 the
    /// impossibility verdict).
    Decompose(DecomposeArgs),
    /// The counter state of a range state, in the same (p, θ)
    /// parametrization.
    Counter(RangeArgs),
    /// The yes-no measurement that induces a given decomposition.
    MeasurementFor(RangeArgs),
    /// The decomposition induced by a given yes-no measurement.
    DecompositionFor(MeasurementArgs),
    /// The canonical purification of the mixture.
    Purify(PurifyArgs),
    /// Selective and nonselective ideal measurement on the purified state.
    Measure(MeasurementArgs),
    /// Whether the measurement qualifies as distant (observable commutes
    /// with the opposite-subsystem state).
    DistantCheck(MeasurementArgs),
    /// Interference, counter-interference, and mixture densities of a
    /// Gaussian two-slit pair.
    Pattern(PatternArgs),
    /// Monte Carlo ensemble run: per-photon branch outcomes and optional
    /// screen positions, deterministic for a given seed.
    Simulate(SimulateArgs),
    /// Run every invariant suite and report max residuals; exits 0 only if
    /// all pass.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the artifact here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("angle").args(["theta", "theta_deg"])))]
struct RangeArgs {
    /// Smaller eigenvalue of the mixture, in (0, 1/2].
    #[arg(long)]
    r: f64,
    /// Range-state parameter p for φ = p·e₁ + √(1−p²)·e^{iθ}·e₂.
    #[arg(long)]
    p: f64,
    /// Phase θ in radians.
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Phase θ in degrees (alternative to --theta).
    #[arg(long)]
    theta_deg: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("range").required(true).args(["p", "w"])))]
#[command(group(ArgGroup::new("angle").args(["theta", "theta_deg"])))]
struct DecomposeArgs {
    /// Smaller eigenvalue of the mixture, in (0, 1/2].
    #[arg(long)]
    r: f64,
    /// Range-state parameter p.
    #[arg(long)]
    p: Option<f64>,
    /// Target weight in [r, 1−r]; p is solved from it (r < 1/2 only).
    #[arg(long)]
    w: Option<f64>,
    /// Phase θ in radians.
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Phase θ in degrees (alternative to --theta).
    #[arg(long)]
    theta_deg: Option<f64>,
    /// Fraction s of the weight to split off: s in (0, 1] emits the
    /// residual state, s > 1 the overweight verdict.
    #[arg(long, value_name = "S")]
    split_fraction: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("angle").args(["lambda", "lambda_deg"])))]
struct MeasurementArgs {
    /// Smaller eigenvalue of the mixture, in (0, 1/2].
    #[arg(long)]
    r: f64,
    /// Eigenbasis parameter q for μ₁ = q·e₁ + √(1−q²)·e^{iλ}·e₂.
    #[arg(long)]
    q: f64,
    /// Phase λ in radians.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Phase λ in degrees (alternative to --lambda).
    #[arg(long)]
    lambda_deg: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PurifyArgs {
    /// Smaller eigenvalue of the mixture, in (0, 1/2].
    #[arg(long)]
    r: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SlitArgs {
    /// Left edge of the screen interval.
    #[arg(long, default_value_t = preset::X_MIN)]
    x_min: f64,
    /// Right edge of the screen interval.
    #[arg(long, default_value_t = preset::X_MAX)]
    x_max: f64,
    /// Number of grid samples.
    #[arg(long, default_value_t = preset::SAMPLES)]
    samples: usize,
    /// Distance between the slit centers.
    #[arg(long, default_value_t = preset::SEPARATION)]
    separation: f64,
    /// 1/e half-width of each Gaussian amplitude envelope.
    #[arg(long, default_value_t = preset::WIDTH)]
    width: f64,
    /// Relative phase gradient between the two waves.
    #[arg(long, default_value_t = preset::TILT)]
    tilt: f64,
}

#[derive(Args)]
struct PatternArgs {
    #[command(flatten)]
    slits: SlitArgs,
    /// Output format for the densities.
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("angle").args(["lambda", "lambda_deg"])))]
struct SimulateArgs {
    /// Smaller eigenvalue of the mixture, in (0, 1/2].
    #[arg(long)]
    r: f64,
    /// Eigenbasis parameter q of the measurement.
    #[arg(long)]
    q: f64,
    /// Phase λ in radians.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Phase λ in degrees (alternative to --lambda).
    #[arg(long)]
    lambda_deg: Option<f64>,
    /// Ensemble size.
    #[arg(long, default_value_t = 100_000)]
    photons: u64,
    /// Seed of the per-photon random sub-streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample screen positions from the branch densities.
    #[arg(long)]
    screen: bool,
    /// Histogram bin count (with --screen).
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[command(flatten)]
    slits: SlitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Lattice refinement: r and p/q take this many steps (8 phases).
    #[arg(long, default_value_t = 10)]
    grid_steps: usize,
    /// Number of randomized cases per randomized suite.
    #[arg(long, default_value_t = 1000)]
    random_cases: u64,
    /// Seed of the randomized suites.
    #[arg(long, default_value_t = 20260809)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Decompose(args) => decompose(args),
        Command::Counter(args) => counter(args),
        Command::MeasurementFor(args) => measurement_for(args),
        Command::DecompositionFor(args) => decomposition_for(args),
        Command::Purify(args) => purify_cmd(args),
        Command::Measure(args) => measure(args),
        Command::DistantCheck(args) => distant_check(args),
        Command::Pattern(args) => pattern(args),
        Command::Simulate(args) => simulate(args),
        Command::Verify(args) => verify(args),
    }
}

fn angle(radians: f64, degrees: Option<f64>) -> f64 {
    degrees.map(f64::to_radians).unwrap_or(radians)
}

fn state_json(v: &StateVector) -> Value {
    Value::Array(v.amps().iter().map(|&a| complex_json(a)).collect())
}

fn complex_json(z: C64) -> Value {
    json!([number(z.re), number(z.im)])
}

fn operator_json(m: &Operator) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| Value::Array((0..m.dim()).map(|j| complex_json(m.entry(i, j))).collect()))
            .collect(),
    )
}

fn emit(text: String, out: &OutputArgs) -> std::io::Result<ExitCode> {
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_json(value: Value, out: &OutputArgs) -> std::io::Result<ExitCode> {
    let mut text = serde_json::to_string_pretty(&value).expect("report values are serializable");
    text.push('\n');
    emit(text, out)
}

fn tolerances() -> Value {
    json!({
        "norm_tol": number(NORM_TOL),
        "identity_tol": number(IDENTITY_TOL),
    })
}

fn decompose(args: DecomposeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let theta = angle(args.theta, args.theta_deg);
    let p = match (args.p, args.w) {
        (Some(p), None) => p,
        (None, Some(w)) => rho.p_for_weight(w)?,
        _ => unreachable!("clap enforces exactly one of --p/--w"),
    };
    let range = RangeState::new(p, theta)?;
    let d = rho.decompose(&range)?;
    let counter_range = RangeState::from_vector(&d.counter)?;
    let residual = d.reconstruct().sub(&rho.operator())?.max_abs();

    let mut result = json!({
        "w": number(d.weight),
        "counter_weight": number(d.counter_weight()),
        "phi": state_json(&d.state),
        "phi_counter": state_json(&d.counter),
        "counter_p": number(counter_range.p()),
        "counter_theta": number(counter_range.theta()),
        "reconstruction_residual": number(residual),
    });
    if let Some(s) = args.split_fraction {
        result["split"] = if s > 1.0 {
            let confirmed = rho.verify_no_overweight(&range, s)?;
            json!({
                "s": number(s),
                "ws": number(d.weight * s),
                "overweight_impossible": confirmed,
            })
        } else {
            let residual_state = rho.split_residual(&range, s)?;
            json!({
                "s": number(s),
                "ws": number(d.weight * s),
                "residual_state": operator_json(&residual_state),
            })
        };
    }

    let mut inputs = json!({
        "r": number(args.r),
        "p": number(p),
        "theta": number(range.theta()),
    });
    if let Some(w) = args.w {
        inputs["w"] = number(w);
    }
    if let Some(s) = args.split_fraction {
        inputs["split_fraction"] = number(s);
    }
    emit_json(
        json!({
            "schema": "qce/decompose/v1",
            "inputs": inputs,
            "tolerances": tolerances(),
            "result": result,
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn counter(args: RangeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let range = RangeState::new(args.p, angle(args.theta, args.theta_deg))?;
    let d = rho.decompose(&range)?;
    let counter_range = RangeState::from_vector(&d.counter)?;
    emit_json(
        json!({
            "schema": "qce/counter/v1",
            "inputs": {
                "r": number(args.r),
                "p": number(range.p()),
                "theta": number(range.theta()),
            },
            "tolerances": tolerances(),
            "result": {
                "p": number(counter_range.p()),
                "theta": number(counter_range.theta()),
                "weight": number(d.counter_weight()),
                "amps": state_json(&d.counter),
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn measurement_for(args: RangeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let range = RangeState::new(args.p, angle(args.theta, args.theta_deg))?;
    let m = measurement_for_decomposition(&rho, &range);
    emit_json(
        json!({
            "schema": "qce/measurement-for/v1",
            "inputs": {
                "r": number(args.r),
                "p": number(range.p()),
                "theta": number(range.theta()),
            },
            "tolerances": tolerances(),
            "result": {
                "q": number(m.q()),
                "lambda": number(m.lambda()),
                "w": number(rho.weight_for(&range)),
                "mu1": state_json(&m.mu1()),
                "mu2": state_json(&m.mu2()),
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn decomposition_for(args: MeasurementArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let m = YesNoMeasurement::new(args.q, angle(args.lambda, args.lambda_deg))?;
    let (range, w) = decomposition_for_measurement(&rho, &m);
    let d = rho.decompose(&range)?;
    emit_json(
        json!({
            "schema": "qce/decomposition-for/v1",
            "inputs": {
                "r": number(args.r),
                "q": number(m.q()),
                "lambda": number(m.lambda()),
            },
            "tolerances": tolerances(),
            "result": {
                "p": number(range.p()),
                "theta": number(range.theta()),
                "w": number(w),
                "phi": state_json(&d.state),
                "phi_counter": state_json(&d.counter),
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn purify_cmd(args: PurifyArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let omega = purify(&rho);
    let amps: Vec<Value> = omega
        .composite()
        .amps()
        .iter()
        .map(|&a| complex_json(a))
        .collect();
    emit_json(
        json!({
            "schema": "qce/purify/v1",
            "inputs": { "r": number(args.r) },
            "tolerances": tolerances(),
            "result": {
                "amps": amps,
                "index_convention": "amplitude k corresponds to (opposite, subsystem) = (k / 2, k % 2)",
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn measure(args: MeasurementArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let m = YesNoMeasurement::new(args.q, angle(args.lambda, args.lambda_deg))?;
    let omega = purify(&rho);
    let branches: Vec<Value> = [Branch::Mu1, Branch::Mu2]
        .iter()
        .map(|&branch| {
            let out = luders_select(&omega, &m, branch)?;
            Ok(json!({
                "label": branch.label(),
                "probability": number(out.probability),
                "state": state_json(&out.conditional_state),
            }))
        })
        .collect::<Result<_, qce_core::Error>>()?;
    let mixed = nonselective_measure(&omega, &m);
    emit_json(
        json!({
            "schema": "qce/measure/v1",
            "inputs": {
                "r": number(args.r),
                "q": number(m.q()),
                "lambda": number(m.lambda()),
            },
            "tolerances": tolerances(),
            "result": {
                "branches": branches,
                "nonselective_state": operator_json(&mixed),
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn distant_check(args: MeasurementArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let m = YesNoMeasurement::new(args.q, angle(args.lambda, args.lambda_deg))?;
    let omega = purify(&rho);
    let distant = is_distant_measurement(&omega, &m);
    let commutator = m
        .observable()
        .commutator(&partial_trace_subsystem(omega.composite()))?
        .max_abs();
    let (range, _) = decomposition_for_measurement(&rho, &m);
    let d = rho.decompose(&range)?;
    let overlap = d.state.inner(&d.counter)?.norm();
    emit_json(
        json!({
            "schema": "qce/distant-check/v1",
            "inputs": {
                "r": number(args.r),
                "q": number(m.q()),
                "lambda": number(m.lambda()),
            },
            "tolerances": {
                "commutator_tol": number(COMMUTATOR_TOL),
            },
            "result": {
                "distant": distant,
                "commutator_max": number(commutator),
                "induced_overlap": number(overlap),
            },
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn build_pair(slits: &SlitArgs) -> qce_core::Result<SlitWavePair> {
    let grid = ScreenGrid::new(slits.x_min, slits.x_max, slits.samples)?;
    gaussian_two_slit(grid, slits.separation, slits.width, slits.tilt)
}

fn pattern(args: PatternArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let pair = build_pair(&args.slits)?;
    let set = patterns(&pair);
    let overlap = pair.overlap();
    let grid = set.grid();
    let slits = &args.slits;
    if args.format == "json" {
        let integrals = set.integrals();
        return emit_json(
            json!({
                "schema": "qce/pattern/v1",
                "inputs": {
                    "x_min": number(slits.x_min),
                    "x_max": number(slits.x_max),
                    "samples": slits.samples,
                    "separation": number(slits.separation),
                    "width": number(slits.width),
                    "tilt": number(slits.tilt),
                },
                "overlap": {
                    "re": number(overlap.re),
                    "im": number(overlap.im),
                    "abs": number(overlap.norm()),
                },
                "result": {
                    "x": grid.points().iter().map(|&x| number(x)).collect::<Vec<_>>(),
                    "p_i": set.interference().iter().map(|&y| number(y)).collect::<Vec<_>>(),
                    "p_i_c": set.counter().iter().map(|&y| number(y)).collect::<Vec<_>>(),
                    "p_mix": set.incoherent().iter().map(|&y| number(y)).collect::<Vec<_>>(),
                    "integrals": integrals.iter().map(|&y| number(y)).collect::<Vec<_>>(),
                },
            }),
            &args.output,
        )
        .map_err(Into::into);
    }

    let mut text = String::new();
    text.push_str("# qce-pattern-csv v1\n");
    text.push_str(&format!(
        "# inputs: x_min={} x_max={} samples={} separation={} width={} tilt={}\n",
        fmt_f64(slits.x_min),
        fmt_f64(slits.x_max),
        slits.samples,
        fmt_f64(slits.separation),
        fmt_f64(slits.width),
        fmt_f64(slits.tilt),
    ));
    text.push_str(&format!(
        "# overlap: re={} im={} abs={}\n",
        fmt_f64(overlap.re),
        fmt_f64(overlap.im),
        fmt_f64(overlap.norm()),
    ));
    text.push_str("x,p_i,p_i_c,p_mix\n");
    for (k, x) in grid.points().iter().enumerate() {
        text.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(*x),
            fmt_f64(set.interference()[k]),
            fmt_f64(set.counter()[k]),
            fmt_f64(set.incoherent()[k]),
        ));
    }
    emit(text, &args.output).map_err(Into::into)
}

fn simulate(args: SimulateArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let rho = MinimalMixture::new(args.r)?;
    let m = YesNoMeasurement::new(args.q, angle(args.lambda, args.lambda_deg))?;
    let pair = if args.screen {
        Some(build_pair(&args.slits)?)
    } else {
        None
    };
    let config = SimConfig::new(args.seed, args.photons, rho, m, pair)?.with_bins(args.bins)?;
    let omega = purify(&rho);
    let analytic_w = luders_select(&omega, &m, Branch::Mu1)?.probability;
    let report = run_simulation(&config)?;

    let mut inputs = json!({
        "r": number(args.r),
        "q": number(m.q()),
        "lambda": number(m.lambda()),
        "photons": args.photons,
        "seed": args.seed,
        "screen": args.screen,
        "bins": args.bins,
    });
    if args.screen {
        inputs["x_min"] = number(args.slits.x_min);
        inputs["x_max"] = number(args.slits.x_max);
        inputs["samples"] = json!(args.slits.samples);
        inputs["separation"] = number(args.slits.separation);
        inputs["width"] = number(args.slits.width);
        inputs["tilt"] = number(args.slits.tilt);
    }
    emit_json(
        json!({
            "schema": "qce/simulate/v1",
            "inputs": inputs,
            "generator": GENERATOR,
            "analytic": { "w": number(analytic_w) },
            "result": report.to_json(),
        }),
        &args.output,
    )
    .map_err(Into::into)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let grid = if args.grid_steps == 10 {
        GridSpec::default()
    } else {
        GridSpec::with_steps(args.grid_steps)
    };
    let report = run_all(&grid, args.random_cases, args.seed);
    let passed = report.passed();
    emit_json(
        json!({
            "schema": "qce/verify/v1",
            "inputs": {
                "grid_steps": args.grid_steps,
                "random_cases": args.random_cases,
                "seed": args.seed,
            },
            "result": report.to_json(),
        }),
        &args.output,
    )?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
