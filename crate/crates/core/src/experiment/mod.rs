//! Experiment orchestration: parameter grids, exact or shot-based
//! evaluation, and the artifacts written for each run.

pub mod config;
pub mod output;
pub mod plot;
pub mod runner;

pub use config::{config_from_csv_echo, ExperimentConfig, ExperimentKind, Mode, DEFAULT_GAMMAS};
pub use output::{write_spectrum, write_sweep, write_tunneling};
pub use plot::{emit_plot_script, PlotKind, PlotStyle};
pub use runner::{
    run_spectrum, run_sweep, run_tunneling, SpectrumRun, SweepOutcome, SweepRow, SweepRun,
    TunnelingRun,
};
