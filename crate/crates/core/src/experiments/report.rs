use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::svg;
use super::{MetricSeries, MetricTarget};
use crate::error::ExperimentError;

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), ExperimentError> {
    fs::write(&path, contents).map_err(io(&path))?;
    written.push(path);
    Ok(())
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_owned(), |v| format!("{v}"))
}

/// Long-format CSV: `algo,type,checkpoint,metric,value`.
pub fn to_csv(series: &MetricSeries) -> String {
    let mut out = String::from("algo,type,checkpoint,metric,value\n");
    for a in &series.algos {
        for (c, &steps) in series.checkpoints.iter().enumerate() {
            for t in 0..series.truth.len() {
                writeln!(out, "{},{},{steps},mre,{}", a.algo, t + 1, cell(a.mre[c][t])).unwrap();
                writeln!(out, "{},{},{steps},nrmse,{}", a.algo, t + 1, cell(a.nrmse[c][t])).unwrap();
            }
        }
    }
    out
}

/// Writes `results.csv`, `results.json` and three SVG charts per algorithm
/// into `dir`, returning the paths written.
pub fn emit_report(series: &MetricSeries, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>, ExperimentError> {
    if series.algos.is_empty() || series.checkpoints.is_empty() {
        return Err(ExperimentError::EmptySeries);
    }
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    write(dir.join("results.csv"), &to_csv(series), &mut written)?;
    write(dir.join("results.json"), &serde_json::to_string_pretty(series)?, &mut written)?;

    let labels: Vec<String> = (1..=series.truth.len()).map(|t| t.to_string()).collect();
    let xs: Vec<f64> = series.checkpoints.iter().map(|&c| c as f64).collect();
    let what = match series.plan.target {
        MetricTarget::Concentrations => "concentration",
        MetricTarget::Counts => "count",
    };
    for a in &series.algos {
        let name = a.algo.name();
        let bars = svg::bar_chart(
            &format!("{name}: MRE per type at n = {}", series.checkpoints.last().unwrap()),
            &labels,
            a.final_mre(),
            "MRE",
        );
        write(dir.join(format!("{name}_mre.svg")), &bars, &mut written)?;

        let lines: Vec<(String, Vec<Option<f64>>)> = (0..series.truth.len())
            .filter(|&t| series.truth[t] > 0.0)
            .map(|t| (format!("type {}", t + 1), a.nrmse.iter().map(|row| row[t]).collect()))
            .collect();
        let chart = svg::line_chart(&format!("{name}: NRMSE vs steps"), &xs, &lines, "steps", "NRMSE");
        write(dir.join(format!("{name}_nrmse.svg")), &chart, &mut written)?;

        let points: Vec<(f64, f64, String)> = a
            .final_mre()
            .iter()
            .enumerate()
            .filter_map(|(t, m)| {
                let d = series.truth[t];
                m.filter(|&m| m > 0.0 && d > 0.0)
                    .map(|m| (d.log10(), m.log10(), (t + 1).to_string()))
            })
            .collect();
        let chart = svg::scatter(
            &format!("{name}: {what} vs MRE"),
            &points,
            &format!("log10 {what}"),
            "log10 MRE",
        );
        write(dir.join(format!("{name}_scatter.svg")), &chart, &mut written)?;
    }
    Ok(written)
}

/// Reads a `results.json` written by [`emit_report`]. Per-trial estimates
/// are not stored and come back empty.
pub fn load_series(path: impl AsRef<Path>) -> Result<MetricSeries, ExperimentError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io(path))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{aggregate, ExperimentPlan};
    use crate::samplers::Algorithm;

    fn series() -> MetricSeries {
        let truth = vec![0.5, 0.0, 0.5];
        let estimates = vec![vec![vec![0.4, 0.0, 0.6], vec![0.5, 0.0, 0.5]]; 3];
        MetricSeries {
            plan: ExperimentPlan::default(),
            checkpoints: vec![10, 20],
            truth: truth.clone(),
            algos: vec![
                aggregate(Algorithm::RwNbN, estimates.clone(), &truth),
                aggregate(Algorithm::RwMix, estimates, &truth),
            ],
        }
    }

    #[test]
    fn csv_cardinality() {
        let s = series();
        let csv = to_csv(&s);
        assert_eq!(csv.lines().count() - 1, 2 * 3 * 2 * 2);
        assert!(csv.contains("rwnbn,2,10,mre,nan"));
    }

    #[test]
    fn writes_all_files_and_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let files = emit_report(&series(), dir.path()).unwrap();
        assert_eq!(files.len(), 2 + 2 * 3);
        assert!(dir.path().join("rwmix_scatter.svg").exists());
        let back = load_series(dir.path().join("results.json")).unwrap();
        assert_eq!(back.algos[0].mre, series().algos[0].mre);
    }

    #[test]
    fn empty_series_is_an_error() {
        let mut s = series();
        s.algos.clear();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(emit_report(&s, dir.path()), Err(ExperimentError::EmptySeries)));
    }
}
