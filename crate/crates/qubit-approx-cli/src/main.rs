//! Machine-first command line for the solvers: one JSON record per target,
//! CSV/JSON grid sweeps for plotting, volume estimates, the three-state
//! decomposition, and the internal diagnostic suites.
//!
//! Exit codes: 0 success, 1 failed selftest, 2 invalid input, 3 request the
//! closed forms cannot serve.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qubit_approx::compare::compare;
use qubit_approx::diagnostics::{run_selftest, SelftestConfig};
use qubit_approx::fidelity;
use qubit_approx::geometry::{cr_member, decompose_b_alpha, relative_volume, VolumeMethod};
use qubit_approx::oracle::{oracle_solve, OracleConfig};
use qubit_approx::trace::solve_trace;
use qubit_approx::{AvailableSet, BlochVector, Metric, SetId};

use output::{float, Obj};

#[derive(Parser)]
#[command(name = "qubit-approx", version, about = "Optimal convex approximation of single-qubit states by finite pure-state sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one target and print the result record as JSON.
    Approximate(ApproximateArgs),
    /// Run both solvers and classify the eigenvalue-gap ordering.
    Compare(TargetArgs),
    /// Evaluate a quantity over a coordinate grid as CSV or JSON rows.
    Sweep(SweepArgs),
    /// Relative volume of a set's exactly-representable region.
    Volume(VolumeArgs),
    /// Closed-form three-state decomposition of an in-cone target.
    Decompose(TargetArgs),
    /// Run the internal diagnostic suites; nonzero exit on any failure.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// Bloch x component.
    #[arg(allow_negative_numbers = true)]
    rx: f64,
    /// Bloch y component.
    #[arg(allow_negative_numbers = true)]
    ry: f64,
    /// Bloch z component.
    #[arg(allow_negative_numbers = true)]
    rz: f64,
}

impl TargetArgs {
    fn bloch(&self) -> Result<BlochVector, String> {
        BlochVector::new(self.rx, self.ry, self.rz).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Fidelity,
    Trace,
}

impl From<MetricArg> for Metric {
    fn from(arg: MetricArg) -> Self {
        match arg {
            MetricArg::Fidelity => Metric::Fidelity,
            MetricArg::Trace => Metric::TraceNorm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    /// Closed-form region label of the chosen metric's solver.
    Region,
    /// Optimal distance under the chosen metric.
    Distance,
    /// Whether the point is exactly representable over the chosen set.
    CrMembership,
}

impl EmitArg {
    fn column(self) -> &'static str {
        match self {
            EmitArg::Region => "region",
            EmitArg::Distance => "distance",
            EmitArg::CrMembership => "cr-membership",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Montecarlo,
}

#[derive(Args)]
struct ApproximateArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Available set: b3, b3-alpha0, or b-alpha:<radians>.
    #[arg(long, default_value = "b3", value_parser = parse_set)]
    set: SetId,
    #[arg(long, value_enum, default_value = "fidelity")]
    metric: MetricArg,
    /// Also solve with the search oracle and report its distance.
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid resolution: one integer for all axes, or nx,ny,nz.
    #[arg(long, value_parser = parse_resolution)]
    res: [usize; 3],
    /// Lower grid corner as x,y,z (inside [-1,1]).
    #[arg(long, default_value = "-1,-1,-1", value_parser = parse_triple, allow_hyphen_values = true)]
    min: [f64; 3],
    /// Upper grid corner as x,y,z (inside [-1,1]).
    #[arg(long, default_value = "1,1,1", value_parser = parse_triple, allow_hyphen_values = true)]
    max: [f64; 3],
    #[arg(long, value_enum)]
    emit: EmitArg,
    /// Available set; region and distance sweeps support b3 only.
    #[arg(long, default_value = "b3", value_parser = parse_set)]
    set: SetId,
    #[arg(long, value_enum, default_value = "fidelity")]
    metric: MetricArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct VolumeArgs {
    #[arg(long, value_parser = parse_set)]
    set: SetId,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Monte Carlo sample count (at least 1000).
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Points per suite (at least 10).
    #[arg(long, default_value_t = 150)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Oracle grid spacing for the agreement suites, in (0, 0.1].
    #[arg(long, default_value_t = 0.02)]
    grid_step: f64,
}

fn parse_set(s: &str) -> Result<SetId, String> {
    match s {
        "b3" => Ok(SetId::B3),
        "b3-alpha0" => Ok(SetId::B3Alpha0),
        _ => {
            let rest = s.strip_prefix("b-alpha:").ok_or_else(|| {
                format!("unknown set '{s}' (expected b3, b3-alpha0, or b-alpha:<radians>)")
            })?;
            let alpha: f64 = rest
                .parse()
                .map_err(|_| format!("bad angle '{rest}' (radians expected)"))?;
            if !alpha.is_finite() {
                return Err("angle must be finite".into());
            }
            Ok(SetId::BAlpha(alpha))
        }
    }
}

fn set_str(id: SetId) -> String {
    match id {
        SetId::B3 => "b3".into(),
        SetId::B3Alpha0 => "b3-alpha0".into(),
        SetId::BAlpha(alpha) => format!("b-alpha:{alpha}"),
    }
}

fn parse_resolution(s: &str) -> Result<[usize; 3], String> {
    let parse = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad resolution '{p}'"))
    };
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [one] => {
            let n = parse(one)?;
            Ok([n, n, n])
        }
        [a, b, c] => Ok([parse(a)?, parse(b)?, parse(c)?]),
        _ => Err("resolution must be N or Nx,Ny,Nz".into()),
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated coordinates".into());
    }
    let mut out = [0.0f64; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("bad coordinate '{part}'"))?;
        if !slot.is_finite() {
            return Err(format!("coordinate '{part}' must be finite"));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Approximate(args) => cmd_approximate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Volume(args) => cmd_volume(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn kkt_object(report: &qubit_approx::fidelity::KktReport) -> String {
    let multipliers: Vec<String> = report.lambda_i.iter().copied().map(float).collect();
    Obj::new()
        .num("lambda", report.lambda)
        .raw("lambda_i", &format!("[{}]", multipliers.join(",")))
        .num("stationarity", report.stationarity)
        .num("complementarity", report.complementarity)
        .num("feasibility", report.feasibility)
        .close()
}

fn cmd_approximate(args: ApproximateArgs) -> Result<ExitCode, String> {
    let r = args.target.bloch()?;
    let metric = Metric::from(args.metric);
    let closed_form = matches!(args.set, SetId::B3);
    let result = if closed_form {
        match metric {
            Metric::Fidelity => fidelity::solve(&r),
            Metric::TraceNorm => solve_trace(&r),
        }
    } else {
        eprintln!(
            "note: closed forms cover set b3 only; answering from the search oracle for {}",
            set_str(args.set)
        );
        oracle_solve(
            &r,
            &AvailableSet::from_id(args.set),
            metric,
            &OracleConfig::default(),
        )
    };

    let mut obj = Obj::new()
        .raw("target", &output::bloch(&r))
        .str("set", &set_str(args.set))
        .str("metric", metric.as_str());
    obj = output::result_fields(obj, &result);
    if closed_form && matches!(metric, Metric::Fidelity) {
        // Near-pure targets are refused by the certificate; omit the field.
        if let Ok(report) = fidelity::kkt_residual(&r, &result) {
            obj = obj.raw("kkt_residuals", &kkt_object(&report));
        }
    }
    if args.oracle_check {
        let oracle = oracle_solve(
            &r,
            &AvailableSet::from_id(args.set),
            metric,
            &OracleConfig::default(),
        );
        obj = obj.num("oracle_distance", oracle.distance);
    }
    println!("{}", obj.close());
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: TargetArgs) -> Result<ExitCode, String> {
    let r = args.bloch()?;
    let report = compare(&r);
    let favored = match report.regime.favored() {
        Some(metric) => output::quoted(metric.as_str()),
        None => "null".into(),
    };
    let witness = Obj::new()
        .raw(
            "target_eigenvalues",
            &output::eigen(&report.witness.target_eigenvalues),
        )
        .raw(
            "fidelity_eigenvalues",
            &output::eigen(&report.witness.fidelity_eigenvalues),
        )
        .raw(
            "trace_eigenvalues",
            &output::eigen(&report.witness.trace_eigenvalues),
        )
        .num("component_sum", report.witness.component_sum)
        .num("norm_sq", report.witness.norm_sq)
        .opt_num("pair_term", report.witness.pair_term)
        .opt_num("curvature", report.witness.curvature)
        .close();
    let obj = Obj::new()
        .raw("target", &output::bloch(&r))
        .num("g_fidelity", report.g_fidelity)
        .num("g_trace", report.g_trace)
        .str("regime", report.regime.as_str())
        .raw("favored", &favored)
        .raw("witness", &witness)
        .raw(
            "fidelity_result",
            &output::result_object(&report.fidelity_result),
        )
        .raw("trace_result", &output::result_object(&report.trace_result))
        .raw("checks", &output::checks(&report.checks));
    println!("{}", obj.close());
    Ok(ExitCode::SUCCESS)
}

enum RowValue {
    Label(&'static str),
    Number(f64),
    Flag(bool),
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let [nx, ny, nz] = args.res;
    if nx == 0 || ny == 0 || nz == 0 {
        return Err("resolution must be at least 1 per axis".into());
    }
    let total = nx
        .checked_mul(ny)
        .and_then(|v| v.checked_mul(nz))
        .filter(|&v| v <= 10_000_000)
        .ok_or("sweep grid exceeds the 10000000-point cap")?;
    for axis in 0..3 {
        let (lo, hi) = (args.min[axis], args.max[axis]);
        if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || lo > hi {
            return Err(format!(
                "axis {} range [{lo}, {hi}] must sit inside [-1, 1] with min <= max",
                ["x", "y", "z"][axis]
            ));
        }
    }
    let metric = Metric::from(args.metric);
    if matches!(args.emit, EmitArg::Region | EmitArg::Distance) && !matches!(args.set, SetId::B3) {
        eprintln!(
            "region and distance sweeps use the b3 closed forms; set '{}' is not supported here",
            set_str(args.set)
        );
        return Ok(ExitCode::from(3));
    }

    let coord = |axis: usize, i: usize| -> f64 {
        let n = args.res[axis];
        if n == 1 {
            args.min[axis]
        } else {
            args.min[axis] + (args.max[axis] - args.min[axis]) * i as f64 / (n - 1) as f64
        }
    };
    let evaluate = |x: f64, y: f64, z: f64| -> Option<RowValue> {
        let r = BlochVector::new(x, y, z).ok()?;
        Some(match args.emit {
            EmitArg::Region => {
                let res = match metric {
                    Metric::Fidelity => fidelity::solve(&r),
                    Metric::TraceNorm => solve_trace(&r),
                };
                match res.region {
                    Some(tag) => RowValue::Label(tag.label_str()),
                    None => return None,
                }
            }
            EmitArg::Distance => {
                let res = match metric {
                    Metric::Fidelity => fidelity::solve(&r),
                    Metric::TraceNorm => solve_trace(&r),
                };
                RowValue::Number(res.distance)
            }
            EmitArg::CrMembership => RowValue::Flag(cr_member(args.set, &r)),
        })
    };

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let io_err = |e: io::Error| e.to_string();
    match args.format {
        FormatArg::Csv => {
            writeln!(out, "x,y,z,valid,{}", args.emit.column()).map_err(io_err)?;
            for ix in 0..nx {
                for iy in 0..ny {
                    for iz in 0..nz {
                        let (x, y, z) = (coord(0, ix), coord(1, iy), coord(2, iz));
                        match evaluate(x, y, z) {
                            Some(RowValue::Label(label)) => {
                                writeln!(out, "{x},{y},{z},1,{label}")
                            }
                            Some(RowValue::Number(v)) => writeln!(out, "{x},{y},{z},1,{v}"),
                            Some(RowValue::Flag(m)) => {
                                writeln!(out, "{x},{y},{z},1,{}", u8::from(m))
                            }
                            None => writeln!(out, "{x},{y},{z},0,"),
                        }
                        .map_err(io_err)?;
                    }
                }
            }
        }
        FormatArg::Json => {
            let res_list = format!("[{nx},{ny},{nz}]");
            let triple = |t: [f64; 3]| {
                format!("[{},{},{}]", float(t[0]), float(t[1]), float(t[2]))
            };
            let spec = Obj::new()
                .raw("res", &res_list)
                .raw("min", &triple(args.min))
                .raw("max", &triple(args.max))
                .str("emit", args.emit.column())
                .str("set", &set_str(args.set))
                .str("metric", metric.as_str())
                .int("points", total as u64)
                .close();
            writeln!(out, "{{\"spec\":{spec},\"rows\":[").map_err(io_err)?;
            let mut first = true;
            for ix in 0..nx {
                for iy in 0..ny {
                    for iz in 0..nz {
                        let (x, y, z) = (coord(0, ix), coord(1, iy), coord(2, iz));
                        let (valid, value) = match evaluate(x, y, z) {
                            Some(RowValue::Label(label)) => (true, output::quoted(label)),
                            Some(RowValue::Number(v)) => (true, float(v)),
                            Some(RowValue::Flag(m)) => (true, m.to_string()),
                            None => (false, "null".into()),
                        };
                        let row = Obj::new()
                            .num("x", x)
                            .num("y", y)
                            .num("z", z)
                            .raw("valid", if valid { "true" } else { "false" })
                            .raw("value", &value)
                            .close();
                        let sep = if first { "" } else { ",\n" };
                        first = false;
                        write!(out, "{sep}{row}").map_err(io_err)?;
                    }
                }
            }
            writeln!(out, "\n]}}").map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_volume(args: VolumeArgs) -> Result<ExitCode, String> {
    let exact = relative_volume(args.set, VolumeMethod::Exact);
    let (method_name, estimate) = match args.method {
        MethodArg::Exact => ("exact", exact),
        MethodArg::Montecarlo => {
            if args.samples < 1000 {
                return Err("montecarlo needs at least 1000 samples".into());
            }
            let method = VolumeMethod::MonteCarlo {
                samples: args.samples,
                seed: args.seed,
            };
            ("montecarlo", relative_volume(args.set, method))
        }
    };
    let mut obj = Obj::new()
        .str("set", &set_str(args.set))
        .str("method", method_name);
    if matches!(args.method, MethodArg::Montecarlo) {
        obj = obj.int("samples", args.samples).int("seed", args.seed);
    }
    let obj = obj
        .num("value", estimate.value)
        .num("stderr", estimate.stderr)
        .num("exact", exact.value);
    println!("{}", obj.close());
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(args: TargetArgs) -> Result<ExitCode, String> {
    let r = args.bloch()?;
    let d = decompose_b_alpha(&r).map_err(|e| e.to_string())?;
    let obj = Obj::new()
        .raw("target", &output::bloch(&r))
        .num("alpha", d.alpha)
        .num("p4", d.weights.get(0))
        .num("p5", d.weights.get(1))
        .num("p6", d.weights.get(2));
    println!("{}", obj.close());
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode, String> {
    if args.samples < 10 {
        return Err("selftest needs at least 10 samples per suite".into());
    }
    if !(args.grid_step > 0.0 && args.grid_step <= 0.1) {
        return Err("grid step must be in (0, 0.1]".into());
    }
    let config = SelftestConfig {
        samples: args.samples,
        seed: args.seed,
        oracle_grid_step: args.grid_step,
    };
    let report = run_selftest(&config);
    println!(
        "selftest samples={} seed={} grid-step={}",
        config.samples,
        config.seed,
        float(config.oracle_grid_step)
    );
    for suite in &report.suites {
        let status = if suite.passed { "pass" } else { "FAIL" };
        let detail = if suite.detail.is_empty() {
            String::new()
        } else {
            format!(" {}", suite.detail)
        };
        println!(
            "{}: {status} checked={} worst={} bound={}{detail}",
            suite.name,
            suite.checked,
            float(suite.worst),
            float(suite.bound)
        );
    }
    let passed = report.suites.iter().filter(|s| s.passed).count();
    println!(
        "result: {} ({passed}/{} suites passed)",
        if report.all_passed { "pass" } else { "FAIL" },
        report.suites.len()
    );
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
