//! Plot scripts that redraw a run from its CSV artifacts: simulated points
//! as crosses, closed-form curves as lines.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::output::{PEAKS_JSON, SPECTRUM_CSV, SWEEP_CSV, TUNNELING_CSV};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlotKind {
    Tunneling,
    Spectrum,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlotStyle {
    Matplotlib,
    Gnuplot,
}

impl std::str::FromStr for PlotStyle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matplotlib" => Ok(Self::Matplotlib),
            "gnuplot" => Ok(Self::Gnuplot),
            other => Err(Error::Config(format!("unknown plot style {other:?}"))),
        }
    }
}

impl PlotKind {
    fn stem(&self) -> &'static str {
        match self {
            PlotKind::Tunneling => "tunneling",
            PlotKind::Spectrum => "spectrum",
            PlotKind::Sweep => "sweep",
        }
    }

    fn required(&self) -> &'static [&'static str] {
        match self {
            PlotKind::Tunneling => &[TUNNELING_CSV],
            PlotKind::Spectrum => &[SPECTRUM_CSV, PEAKS_JSON],
            PlotKind::Sweep => &[SWEEP_CSV],
        }
    }
}

const PY_PRELUDE: &str = r##"#!/usr/bin/env python3
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def load(name):
    with open(os.path.join(HERE, name)) as f:
        lines = [l.strip() for l in f if l.strip() and not l.startswith("#")]
    header = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    return {h: [r[i] for r in rows] for i, h in enumerate(header)}


def reals(column):
    return [float(x) for x in column]

"##;

fn matplotlib_body(kind: PlotKind) -> &'static str {
    match kind {
        PlotKind::Tunneling => {
            r##"d = load("tunneling.csv")
alpha = reals(d["alpha"])
plt.figure(figsize=(7, 4))
plt.plot(alpha, reals(d["sz_analytic"]), "-", color="tab:blue", label="analytic")
plt.plot(alpha, reals(d["sz_mean"]), "x", color="tab:red", label="simulation")
plt.xlabel("alpha")
plt.ylabel("<S_z>")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(HERE, "tunneling.png"), dpi=150)
"##
        }
        PlotKind::Spectrum => {
            r##"d = load("spectrum.csv")
with open(os.path.join(HERE, "peaks.json")) as f:
    peaks = json.load(f)
plt.figure(figsize=(7, 4))
plt.plot(reals(d["omega"]), reals(d["re"]), "-", color="tab:blue", label="Re sigma_x(omega)")
for p in peaks["peaks"]:
    plt.plot([p["omega"]], [p["height"]], "x", color="tab:red")
    plt.annotate("E=%.3f" % p["energy"], (p["omega"], p["height"]),
                 textcoords="offset points", xytext=(0, 6), ha="center", fontsize=8)
plt.xlim(-8, 8)
plt.xlabel("omega")
plt.ylabel("Re sigma_x(omega)")
plt.title("splitting %.4f" % peaks["splitting"])
plt.tight_layout()
plt.savefig(os.path.join(HERE, "spectrum.png"), dpi=150)
"##
        }
        PlotKind::Sweep => {
            r##"d = load("sweep.csv")
ok = [i for i, s in enumerate(d["status"]) if not s.startswith("error")]
gamma = [float(d["gamma"][i]) for i in ok]
split = [float(d["splitting"][i]) for i in ok]
line = [float(g) for g in d["gamma"]]
plt.figure(figsize=(5, 4))
plt.plot(line, [2 * abs(g) for g in line], "-", color="tab:blue", label="2|gamma|")
plt.plot(gamma, split, "x", color="tab:red", label="extracted")
plt.xlabel("gamma")
plt.ylabel("splitting")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(HERE, "sweep.png"), dpi=150)
"##
        }
    }
}

fn gnuplot_script(kind: PlotKind, dir: &Path) -> Result<String> {
    let mut s = String::from(
        "set datafile separator \",\"\nset key autotitle columnhead\nset terminal pngcairo size 900,500\n",
    );
    match kind {
        PlotKind::Tunneling => s.push_str(
            "set output \"tunneling.png\"\nset xlabel \"alpha\"\nset ylabel \"<S_z>\"\n\
             plot \"tunneling.csv\" using 1:3 with lines title \"analytic\", \\\n     \
             \"tunneling.csv\" using 1:2 with points pt 2 title \"simulation\"\n",
        ),
        PlotKind::Spectrum => {
            let text = fs::read_to_string(dir.join(PEAKS_JSON))?;
            let peaks: serde_json::Value = serde_json::from_str(&text)?;
            s.push_str("set output \"spectrum.png\"\nset xrange [-8:8]\nset xlabel \"omega\"\n");
            if let Some(list) = peaks["peaks"].as_array() {
                for p in list {
                    let (w, h, e) = (
                        p["omega"].as_f64().unwrap_or(0.0),
                        p["height"].as_f64().unwrap_or(0.0),
                        p["energy"].as_f64().unwrap_or(f64::NAN),
                    );
                    s.push_str(&format!(
                        "set label \"E={e:.3}\" at {w},{h} center offset 0,1\n"
                    ));
                }
            }
            s.push_str("plot \"spectrum.csv\" using 1:2 with lines title \"Re sigma_x(omega)\"\n");
        }
        PlotKind::Sweep => s.push_str(
            "set output \"sweep.png\"\nset xlabel \"gamma\"\nset ylabel \"splitting\"\n\
             plot \"sweep.csv\" using 1:(2*abs($1)) with lines title \"2|gamma|\", \\\n     \
             \"sweep.csv\" using 1:4 with points pt 2 title \"extracted\"\n",
        ),
    }
    Ok(s)
}

/// Writes `plot_<kind>.py` or `plot_<kind>.gp` next to the run's artifacts.
pub fn emit_plot_script(kind: PlotKind, dir: &Path, style: PlotStyle) -> Result<PathBuf> {
    for name in kind.required() {
        let path = dir.join(name);
        if !path.is_file() {
            return Err(Error::MissingArtifact(path.display().to_string()));
        }
    }
    let (name, text) = match style {
        PlotStyle::Matplotlib => (
            format!("plot_{}.py", kind.stem()),
            format!("{PY_PRELUDE}{}", matplotlib_body(kind)),
        ),
        PlotStyle::Gnuplot => (
            format!("plot_{}.gp", kind.stem()),
            gnuplot_script(kind, dir)?,
        ),
    };
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}
