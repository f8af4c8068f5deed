use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;
use serde_json::json;

use super::{reference_initial, reference_matrix, ExperimentConfig, ProfileRow, TransitionStats};
use crate::error::Result;
use crate::geodesic::AlgState;

/// `transitions.csv`. The four rows with `from_state = init` hold the law of
/// the first state.
pub fn transitions_csv(stats: &TransitionStats) -> String {
    let m = reference_matrix();
    let init = reference_initial();
    let mut out = String::from("from_state,to_state,count,freq,ref_prob\n");
    for a in AlgState::ALL {
        for b in AlgState::ALL {
            let _ = writeln!(
                out,
                "{a},{b},{},{},{}",
                stats.counts[a.index()][b.index()],
                stats.frequency(a, b),
                m[a.index()][b.index()].to_f64().unwrap()
            );
        }
    }
    for b in AlgState::ALL {
        let _ = writeln!(
            out,
            "init,{b},{},{},{}",
            stats.initial_counts[b.index()],
            stats.initial_frequency(b),
            init[b.index()].to_f64().unwrap()
        );
    }
    out
}

/// `ratios.csv`.
pub fn ratios_csv(n: usize, ratios: &[f64]) -> String {
    let mut out = String::from("replicate,n,ratio\n");
    for (r, x) in ratios.iter().enumerate() {
        let _ = writeln!(out, "{r},{n},{x}");
    }
    out
}

/// `profile.csv`.
pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("n,replicate,stat,value\n");
    for row in rows {
        let _ = writeln!(out, "{},{},{},{}", row.n, row.replicate, row.stat, row.value);
    }
    out
}

/// Run manifest: the full effective configuration, the files written and a
/// summary. Contains nothing that varies between identical runs.
pub fn manifest_json(cfg: &ExperimentConfig, outputs: &[&str], summary: serde_json::Value) -> String {
    let doc = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "experiment": cfg.experiment.name(),
        "seed": cfg.seed,
        "config": cfg,
        "outputs": outputs,
        "summary": summary,
    });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}

/// Writes `(file name, contents)` pairs into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, files: &[(&str, String)]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}
