//! Subcommand implementations.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::anyhow;

use pogs::io::{read_signal, write_signal, LabelsFile, SignalFile, SCHEMA_VERSION};
use pogs::metrics::{rmse, roc};
use pogs::noise::{estimate_sigma, lambda_from_table};
use pogs::pattern::GroupPattern;
use pogs::penalty::{max_nonconvexity, Penalty, PenaltyFamily, DEFAULT_SAFETY};
use pogs::signalgen::{simulate as run_simulation, SimConfig, GENERATOR_ID};
use pogs::solver::{denoise as run_denoise, DenoiseResult, SolverConfig};
use pogs::spectral::{envelope_spectrum, fault_frequencies, magnitude_spectrum, moving_average,
    BearingSpec, Spectrum};

use crate::args::{
    CompoundArgs, DenoiseArgs, EstimateNoiseArgs, EvaluateArgs, FaultFreqsArgs, SimulateArgs,
    SolverArgs, SpectrumArgs, SpectrumMode,
};
use crate::report::{
    emit, CompoundReport, CompoundRunReport, DenoiseReport, EstimateNoiseReport, EvaluateReport,
    FaultFreqsReport, OrdersReport, PatternReport, SimulateReport, SolveReport, SpectrumReport,
    REPORT_SCHEMA_VERSION,
};

/// A command failure paired with the process exit code it maps to:
/// 2 usage, 3 data/parse, 4 numerical.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub type CmdResult<T = ()> = Result<T, Failure>;

fn exit_code(err: &pogs::Error) -> u8 {
    use pogs::Error::*;
    match err {
        Parse { .. } | Io(_) | Json(_) | SchemaVersion { .. } | MissingSampleRate
        | InvalidLabels(_) | EmptyInput | LengthMismatch { .. } | SignalTooShort { .. } => 3,
        NonFinite { .. } => 4,
        InvalidParameter(_) | InvalidPattern(_) | OutOfTable { .. } => 2,
    }
}

impl From<pogs::Error> for Failure {
    fn from(err: pogs::Error) -> Self {
        Failure {
            code: exit_code(&err),
            error: err.into(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        error: anyhow!(msg.into()),
    }
}

fn data_err(err: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 3,
        error: err.into(),
    }
}

pub struct Global<'a> {
    pub quiet: bool,
    pub report: Option<&'a Path>,
    pub command_echo: Vec<String>,
}

impl Global<'_> {
    fn info(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    /// Emits the run report to --report, or to stdout for subcommands
    /// whose primary output is a file.
    fn emit_report<T: serde::Serialize>(&self, report: &T, stdout_default: bool) -> CmdResult {
        match (self.report, stdout_default) {
            (Some(path), _) => emit(report, Some(path)).map_err(data_err),
            (None, true) => emit(report, None).map_err(data_err),
            (None, false) => Ok(()),
        }
    }
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

pub fn simulate(args: SimulateArgs, global: &Global) -> CmdResult {
    let config = SimConfig {
        fs: args.fs,
        duration: args.duration,
        fault_freq: args.fault_freq,
        first_fault_time: args.first_fault_time,
        n_faults: args.n_faults,
        transient_len: args.transient_len,
        max_components: args.max_components,
        noise_sigma: args.noise_sigma,
        seed: args.seed,
    };
    let signal = run_simulation(&config)?;

    write_signal(
        &SignalFile {
            samples: signal.clean.clone(),
            fs: config.fs,
            channel_name: None,
        },
        &args.out_clean,
    )?;
    write_signal(
        &SignalFile {
            samples: signal.noisy.clone(),
            fs: config.fs,
            channel_name: None,
        },
        &args.out_noisy,
    )?;
    let labels = LabelsFile {
        schema_version: SCHEMA_VERSION,
        fs: config.fs,
        n_samples: signal.noisy.len(),
        transient_intervals: signal.transient_intervals.clone(),
        sim_config: Some(config.clone()),
        generator: Some(GENERATOR_ID.to_string()),
    };
    labels.write(&args.out_labels)?;

    global.info(format!(
        "wrote {} samples with {} transients to {}, {}, {}",
        signal.noisy.len(),
        signal.transient_intervals.len(),
        args.out_clean.display(),
        args.out_noisy.display(),
        args.out_labels.display()
    ));
    global.emit_report(
        &SimulateReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            config,
            generator: GENERATOR_ID,
            n_samples: signal.noisy.len(),
            n_transients: signal.transient_intervals.len(),
            out_clean: path_str(&args.out_clean),
            out_noisy: path_str(&args.out_noisy),
            out_labels: path_str(&args.out_labels),
        },
        true,
    )
}

fn parse_bits(s: &str) -> Result<Vec<bool>, pogs::Error> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(pogs::Error::InvalidPattern(format!(
                "unexpected character `{other}` in bit layout (expected 0s and 1s)"
            ))),
        })
        .collect()
}

fn check_lambda(lambda: f64) -> CmdResult<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(usage(format!(
            "lambda must be finite and positive, got {lambda}"
        )));
    }
    Ok(lambda)
}

/// Resolves the regularization weight; returns it and the noise estimate
/// when it was derived from one.
fn resolve_lambda(
    explicit: Option<f64>,
    samples: &[f64],
    table_keys: Option<(usize, usize)>,
) -> CmdResult<(f64, Option<f64>)> {
    match explicit {
        Some(lambda) => Ok((check_lambda(lambda)?, None)),
        None => {
            let (m, n1) = table_keys.ok_or_else(|| {
                usage("--auto-lambda needs a periodic layout (--fault-freq with --m and --n1)")
            })?;
            let sigma = estimate_sigma(samples)?;
            let lambda = lambda_from_table(sigma, m, n1)?;
            Ok((lambda, Some(sigma)))
        }
    }
}

struct Solve {
    result: DenoiseResult,
    report: SolveReport,
}

fn solve(
    samples: &[f64],
    fs: f64,
    pattern: GroupPattern,
    lambda: f64,
    sigma_estimate: Option<f64>,
    args: &SolverArgs,
    global: &Global,
) -> CmdResult<Solve> {
    let family = PenaltyFamily::from_str(&args.penalty)?;
    let nonconvexity = match args.a {
        Some(a) => a,
        None if family == PenaltyFamily::Abs => 0.0,
        None => max_nonconvexity(pattern.active_count(), lambda, DEFAULT_SAFETY)?,
    };
    let penalty = Penalty::new(family, nonconvexity)?;
    let config = SolverConfig::new(lambda, penalty, pattern)?
        .with_max_iters(args.max_iters)?
        .with_tol(args.tol)?
        .with_support_eps(args.support_eps)?;
    if config.exceeds_convexity_bound() {
        global.info(format!(
            "warning: a = {nonconvexity} exceeds the convexity bound \
             1/(active_count * lambda); the objective may have multiple minimizers"
        ));
    }
    let result = run_denoise(samples, &config)?;
    let report = SolveReport {
        fs,
        penalty: family.to_string(),
        lambda,
        auto_lambda: sigma_estimate.is_some(),
        sigma_estimate,
        nonconvexity,
        convexity_bound_ok: !config.exceeds_convexity_bound(),
        pattern: PatternReport::new(&config.pattern),
        tol: config.tol,
        max_iters: config.max_iters,
        support_eps: config.support_eps,
        iterations: result.iters,
        converged: result.converged,
        final_objective: result.objective_history.last().copied().unwrap_or(0.0),
    };
    Ok(Solve { result, report })
}

fn strict_convergence_check(strict: bool, solves: &[(&str, bool)]) -> CmdResult {
    if !strict {
        return Ok(());
    }
    for (name, converged) in solves {
        if !converged {
            return Err(Failure {
                code: 4,
                error: anyhow!("{name} did not converge within the iteration budget"),
            });
        }
    }
    Ok(())
}

pub fn denoise(args: DenoiseArgs, global: &Global) -> CmdResult {
    let signal = read_signal(&args.input, args.fs)?;
    let pattern = if let Some(freq) = args.fault_freq {
        GroupPattern::periodic(signal.fs, freq, args.n1, args.m)?
    } else if let Some(k) = args.group_size {
        GroupPattern::contiguous(k)?
    } else if let Some(bits) = &args.pattern {
        GroupPattern::explicit(&parse_bits(bits)?)?
    } else {
        unreachable!("clap enforces one layout flag");
    };

    let table_keys = args.fault_freq.map(|_| (args.m, args.n1));
    let (lambda, sigma) = resolve_lambda(args.lambda, &signal.samples, table_keys)?;
    if let Some(sigma) = sigma {
        global.info(format!("estimated sigma = {sigma}, lambda = {lambda}"));
    }

    let solve = solve(
        &signal.samples,
        signal.fs,
        pattern,
        lambda,
        sigma,
        &args.solver,
        global,
    )?;
    write_signal(
        &SignalFile {
            samples: solve.result.x.clone(),
            fs: signal.fs,
            channel_name: signal.channel_name.clone(),
        },
        &args.output,
    )?;
    global.info(format!(
        "denoised {} -> {} in {} passes (converged: {})",
        args.input.display(),
        args.output.display(),
        solve.result.iters,
        solve.result.converged
    ));
    global.emit_report(
        &DenoiseReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            input: path_str(&args.input),
            output: path_str(&args.output),
            solve: solve.report,
        },
        true,
    )?;
    strict_convergence_check(
        args.solver.strict,
        &[("denoise", solve.result.converged)],
    )
}

fn spectrum_csv(spec: &Spectrum, smooth_width: usize) -> String {
    let smoothed = moving_average(&spec.mags, smooth_width);
    let mut out = String::from("freq_hz,magnitude,smoothed\n");
    for ((freq, mag), smooth) in spec.freqs.iter().zip(&spec.mags).zip(&smoothed) {
        out.push_str(&format!("{freq},{mag},{smooth}\n"));
    }
    out
}

pub fn compound(args: CompoundArgs, global: &Global) -> CmdResult {
    let signal = read_signal(&args.input, args.fs)?;
    let table_keys = Some((args.m, args.n1));
    let (lambda, sigma) = resolve_lambda(args.lambda, &signal.samples, table_keys)?;
    if let Some(sigma) = sigma {
        global.info(format!("estimated sigma = {sigma}, lambda = {lambda}"));
    }

    // per-frequency solves are independent; run them concurrently and
    // collect in flag order
    let solves: Vec<CmdResult<Solve>> = std::thread::scope(|scope| {
        let handles: Vec<_> = args
            .fault_freqs
            .iter()
            .map(|&freq| {
                let samples = &signal.samples;
                let solver_args = &args.solver;
                scope.spawn(move || {
                    let pattern = GroupPattern::periodic(signal.fs, freq, args.n1, args.m)?;
                    solve(samples, signal.fs, pattern, lambda, sigma, solver_args, global)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });

    let stem = path_str(&args.output_prefix);
    let mut runs = Vec::new();
    let mut convergence = Vec::new();
    for (freq, solved) in args.fault_freqs.iter().zip(solves) {
        let solved = solved?;
        let out_path = PathBuf::from(format!("{stem}_{freq}hz.csv"));
        let spectrum_path = PathBuf::from(format!("{stem}_{freq}hz_envelope.csv"));
        write_signal(
            &SignalFile {
                samples: solved.result.x.clone(),
                fs: signal.fs,
                channel_name: None,
            },
            &out_path,
        )?;
        let envelope = envelope_spectrum(&solved.result.x, signal.fs)?;
        fs::write(&spectrum_path, spectrum_csv(&envelope, args.smooth_width))
            .map_err(|e| data_err(anyhow::Error::from(e)))?;
        global.info(format!(
            "fault train at {freq} Hz -> {} (envelope spectrum: {})",
            out_path.display(),
            spectrum_path.display()
        ));
        convergence.push(solved.result.converged);
        runs.push(CompoundRunReport {
            fault_freq: *freq,
            output: path_str(&out_path),
            envelope_spectrum: path_str(&spectrum_path),
            solve: solved.report,
        });
    }

    global.emit_report(
        &CompoundReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            input: path_str(&args.input),
            runs,
        },
        true,
    )?;
    let named: Vec<(&str, bool)> = convergence.iter().map(|&c| ("compound run", c)).collect();
    strict_convergence_check(args.solver.strict, &named)
}

/// Reads a signal for commands that do not depend on the sampling rate,
/// tolerating files without an fs header.
fn read_signal_any_rate(path: &Path, fs: Option<f64>) -> Result<SignalFile, pogs::Error> {
    match read_signal(path, fs) {
        Err(pogs::Error::MissingSampleRate) => read_signal(path, Some(1.0)),
        other => other,
    }
}

pub fn estimate_noise(args: EstimateNoiseArgs, global: &Global) -> CmdResult {
    let signal = read_signal_any_rate(&args.input, args.fs)?;
    let sigma = estimate_sigma(&signal.samples)?;
    println!("sigma = {sigma}");
    let lambda = match (args.m, args.n1) {
        (Some(m), Some(n1)) => {
            let lambda = lambda_from_table(sigma, m, n1)?;
            println!("lambda = {lambda}");
            Some(lambda)
        }
        _ => None,
    };
    global.emit_report(
        &EstimateNoiseReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            input: path_str(&args.input),
            sigma_estimate: sigma,
            periods: args.m,
            ones_per_period: args.n1,
            lambda,
        },
        false,
    )
}

pub fn evaluate(args: EvaluateArgs, global: &Global) -> CmdResult {
    let estimate = read_signal_any_rate(&args.estimate, args.fs)?;
    let clean = read_signal_any_rate(&args.clean, args.fs)?;
    let labels = LabelsFile::read(&args.labels)?;
    let truth = labels.to_transient_labels()?;

    let rmse_value = rmse(&estimate.samples, &clean.samples)?;
    let curve = roc(&estimate.samples, &truth, args.n_thresholds)?;
    println!("rmse = {rmse_value}");
    println!("auc = {}", curve.auc);

    let report = EvaluateReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: global.command_echo.clone(),
        estimate: path_str(&args.estimate),
        clean: path_str(&args.clean),
        labels: path_str(&args.labels),
        rmse: rmse_value,
        auc: curve.auc,
        n_thresholds: args.n_thresholds,
        thresholds: curve.thresholds,
        false_alarm: curve.points.iter().map(|p| p.0).collect(),
        detection: curve.points.iter().map(|p| p.1).collect(),
    };
    emit(&report, Some(&args.out)).map_err(data_err)?;
    global.info(format!("wrote metrics report to {}", args.out.display()));
    if global.report.is_some() {
        global.emit_report(&report, false)?;
    }
    Ok(())
}

pub fn spectrum(args: SpectrumArgs, global: &Global) -> CmdResult {
    let signal = read_signal(&args.input, args.fs)?;
    let (mode, spec) = match args.mode {
        SpectrumMode::Fourier => ("fourier", magnitude_spectrum(&signal.samples, signal.fs)?),
        SpectrumMode::Envelope => ("envelope", envelope_spectrum(&signal.samples, signal.fs)?),
    };
    fs::write(&args.out, spectrum_csv(&spec, args.smooth_width))
        .map_err(|e| data_err(anyhow::Error::from(e)))?;
    let (peak_bin, peak_magnitude) = spec
        .mags
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0, 0.0));
    global.info(format!(
        "wrote {} bins to {} (peak {} at {} Hz)",
        spec.freqs.len(),
        args.out.display(),
        peak_magnitude,
        spec.freqs[peak_bin]
    ));
    global.emit_report(
        &SpectrumReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            input: path_str(&args.input),
            out: path_str(&args.out),
            mode,
            fs: signal.fs,
            n_samples: signal.samples.len(),
            n_bins: spec.freqs.len(),
            smooth_width: args.smooth_width,
            peak_freq_hz: spec.freqs[peak_bin],
            peak_magnitude,
        },
        true,
    )
}

fn parse_orders(list: &str) -> CmdResult<(f64, f64, f64, f64)> {
    let mut ftf = None;
    let mut bpfo = None;
    let mut bpfi = None;
    let mut bsf = None;
    for item in list.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value in --orders, got `{item}`")))?;
        let value: f64 = value
            .parse()
            .map_err(|e| usage(format!("bad value for `{key}` in --orders: {e}")))?;
        let slot = match key.trim() {
            "ftf" => &mut ftf,
            "bpfo" => &mut bpfo,
            "bpfi" => &mut bpfi,
            "bsf" => &mut bsf,
            other => return Err(usage(format!("unknown order `{other}` in --orders"))),
        };
        if slot.replace(value).is_some() {
            return Err(usage(format!("duplicate order `{key}` in --orders")));
        }
    }
    match (ftf, bpfo, bpfi, bsf) {
        (Some(ftf), Some(bpfo), Some(bpfi), Some(bsf)) => Ok((ftf, bpfo, bpfi, bsf)),
        _ => Err(usage("--orders must list all of ftf, bpfo, bpfi, bsf")),
    }
}

pub fn fault_freqs(args: FaultFreqsArgs, global: &Global) -> CmdResult {
    let shaft = match (args.rpm, args.shaft_freq) {
        (Some(rpm), None) => rpm / 60.0,
        (None, Some(freq)) => freq,
        _ => unreachable!("clap enforces one speed flag"),
    };
    let (ftf, bpfo, bpfi, bsf) = parse_orders(&args.orders)?;
    let spec = BearingSpec::new(shaft, ftf, bpfo, bpfi, bsf)?;
    let freqs = fault_frequencies(&spec);
    println!("shaft = {shaft} Hz");
    for (name, value) in freqs.as_pairs() {
        println!("{name} = {value} Hz");
    }
    global.emit_report(
        &FaultFreqsReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: global.command_echo.clone(),
            shaft_freq_hz: shaft,
            orders: OrdersReport {
                ftf,
                bpfo,
                bpfi,
                bsf,
            },
            frequencies_hz: OrdersReport {
                ftf: freqs.ftf,
                bpfo: freqs.bpfo,
                bpfi: freqs.bpfi,
                bsf: freqs.bsf,
            },
        },
        false,
    )
}
