use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use spin1_core::experiment::output::sweep_entry_dir;
use spin1_core::experiment::{
    config_from_csv_echo, emit_plot_script, run_spectrum, run_sweep, run_tunneling, write_spectrum,
    write_sweep, write_tunneling, ExperimentConfig, ExperimentKind, PlotKind, PlotStyle,
    SpectrumRun, SweepOutcome,
};
use spin1_core::identities::{diagnose, run_identity_suite, IDENTITY_TOL};
use spin1_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "spin1sim",
    version,
    about = "Spin-1 tunneling and spectroscopy on a statevector simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Magnetization dynamics of the two-qubit spin-1 encoding.
    Tunneling(RunArgs),
    /// Probe-qubit spectroscopy of the three spin-1 levels.
    Spectrum(RunArgs),
    /// Spectroscopy repeated over a list of tunneling strengths.
    Sweep(SweepArgs),
    /// Checks the gate decompositions against exact Pauli exponentials.
    Identities(IdentityArgs),
}

/// Reals accept plain numbers or multiples of pi such as `-8pi` or `pi/24`.
#[derive(Args)]
struct RunArgs {
    /// Key/value configuration file, or a CSV artifact from an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    d_const: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c_shift: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_step: Option<String>,
    /// exact or shots
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Pick the energy shift so every level has the same sign.
    #[arg(long)]
    auto_shift: bool,
    #[arg(long, allow_hyphen_values = true)]
    shift_margin: Option<String>,
    /// Minimum peak height relative to the strongest non-DC peak.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    min_separation: Option<String>,
    /// Cancel adjacent CNOT pairs before simulating.
    #[arg(long)]
    peephole: bool,
    /// matplotlib, gnuplot or none
    #[arg(long, default_value = "matplotlib")]
    plot: String,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated tunneling strengths.
    #[arg(long, allow_hyphen_values = true)]
    gammas: Option<String>,
}

#[derive(Args)]
struct IdentityArgs {
    /// Random angles per identity.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 2022)]
    seed: u64,
    #[arg(long, default_value_t = IDENTITY_TOL)]
    tol: f64,
}

impl RunArgs {
    fn config(&self, kind: ExperimentKind) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            None => ExperimentConfig::for_kind(kind),
            Some(path) => {
                let text = fs::read_to_string(path)?;
                if path.extension().is_some_and(|e| e == "csv") {
                    config_from_csv_echo(&text, kind)?
                } else {
                    ExperimentConfig::from_text(&text, kind)?
                }
            }
        };
        let overrides = [
            ("d-const", &self.d_const),
            ("gamma", &self.gamma),
            ("c-shift", &self.c_shift),
            ("phi", &self.phi),
            ("alpha-min", &self.alpha_min),
            ("alpha-max", &self.alpha_max),
            ("alpha-step", &self.alpha_step),
            ("mode", &self.mode),
            ("shift-margin", &self.shift_margin),
            ("threshold", &self.threshold),
            ("min-separation", &self.min_separation),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if let Some(n) = self.shots {
            cfg.shots = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(d) = &self.out_dir {
            cfg.out_dir = d.clone();
        }
        cfg.auto_shift |= self.auto_shift;
        cfg.peephole |= self.peephole;
        cfg.validate()?;
        Ok(cfg)
    }

    fn plot_style(&self) -> Result<Option<PlotStyle>> {
        match self.plot.as_str() {
            "none" => Ok(None),
            s => s.parse().map(Some),
        }
    }
}

fn plot(kind: PlotKind, dir: &Path, style: Option<PlotStyle>) -> Result<()> {
    if let Some(style) = style {
        let path = emit_plot_script(kind, dir, style)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn list_written(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn tunneling(args: &RunArgs) -> Result<()> {
    let cfg = args.config(ExperimentKind::Tunneling)?;
    let style = args.plot_style()?;
    let run = run_tunneling(&cfg)?;
    println!(
        "tunneling: D={} gamma={} mode={} points={}",
        cfg.params.d,
        cfg.params.gamma,
        cfg.mode,
        run.series.len()
    );
    println!(
        "max |<Sz> - cos(2 gamma alpha)| = {:.3e}",
        run.max_deviation()
    );
    list_written(&write_tunneling(&run, &cfg.out_dir)?);
    plot(PlotKind::Tunneling, &cfg.out_dir, style)
}

fn print_spectrum(run: &SpectrumRun) {
    println!(
        "spectrum: D={} gamma={} C={} phi={:.6} mode={}",
        run.config.params.d,
        run.config.params.gamma,
        run.shift.c,
        run.config.params.phi,
        run.config.mode
    );
    println!("{:>10} {:>12} {:>10}", "omega", "height", "energy");
    for p in &run.extraction.peaks {
        println!(
            "{:>10.4} {:>12.6} {:>10.4}",
            p.omega,
            p.height,
            p.energy.unwrap_or(f64::NAN)
        );
    }
    if let Some(dc) = &run.peak_set.dc {
        println!("dc peak height {:.6}", dc.height);
    }
    println!(
        "doublet {:?}  splitting {:.4}  gamma estimate {:.4}",
        run.doublet,
        run.splitting,
        run.gamma_estimate()
    );
    println!("max |Im sigma(omega)| = {:.3e}", run.imag_noise);
    for w in &run.extraction.warnings {
        println!("warning: {w}");
    }
}

fn spectrum(args: &RunArgs) -> Result<()> {
    let cfg = args.config(ExperimentKind::Spectrum)?;
    let style = args.plot_style()?;
    let run = run_spectrum(&cfg)?;
    print_spectrum(&run);
    list_written(&write_spectrum(&run, &cfg.out_dir)?);
    plot(PlotKind::Spectrum, &cfg.out_dir, style)
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let mut cfg = args.run.config(ExperimentKind::Spectrum)?;
    if let Some(g) = &args.gammas {
        cfg.set("gammas", g)?;
    }
    let style = args.run.plot_style()?;
    let run = run_sweep(&cfg, &cfg.gammas)?;
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}  status",
        "gamma", "e_minus", "e_plus", "splitting", "2|gamma|"
    );
    for row in &run.rows {
        match &row.outcome {
            SweepOutcome::Ok {
                e_minus,
                e_plus,
                splitting,
                expected_splitting,
                within_resolution,
            } => println!(
                "{:>8.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4}  {}",
                row.gamma,
                e_minus,
                e_plus,
                splitting,
                expected_splitting,
                if *within_resolution { "ok" } else { "off" }
            ),
            SweepOutcome::Error { kind, message } => {
                println!(
                    "{:>8.4} {:>10} {:>10} {:>10} {:>10.4}  error {kind}: {message}",
                    row.gamma,
                    "-",
                    "-",
                    "-",
                    2.0 * row.gamma.abs()
                )
            }
        }
    }
    list_written(&write_sweep(&run, &cfg.out_dir)?);
    plot(PlotKind::Sweep, &cfg.out_dir, style)?;
    for (i, (row, entry)) in run.rows.iter().zip(&run.runs).enumerate() {
        if entry.is_some() {
            plot(
                PlotKind::Spectrum,
                &sweep_entry_dir(&cfg.out_dir, i, row.gamma),
                style,
            )?;
        }
    }
    Ok(())
}

fn identities(args: &IdentityArgs) -> Result<bool> {
    if args.samples == 0 {
        return Err(Error::InvalidInput("samples must be at least 1".into()));
    }
    let reports = run_identity_suite(args.samples, args.seed, args.tol)?;
    for r in &reports {
        println!(
            "{} {:<4} max deviation {:.3e} over {} angles",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_deviation,
            r.samples
        );
    }
    let suspects = diagnose(&reports);
    for s in &suspects {
        println!("check convention: {s}");
    }
    Ok(suspects.is_empty())
}

fn report(kind: &str, message: String) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report("usage", e.render().to_string().trim().to_string()),
    };
    let outcome = match &cli.command {
        Command::Tunneling(a) => tunneling(a).map(|_| true),
        Command::Spectrum(a) => spectrum(a).map(|_| true),
        Command::Sweep(a) => sweep(a).map(|_| true),
        Command::Identities(a) => identities(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => report(e.kind(), e.to_string()),
    }
}
