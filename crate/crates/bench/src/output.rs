use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{BenchError, Result};
use crate::runner::{Axis, BenchReport, Summary};

pub const CSV_HEADER: &str = "sampler,trial,iteration,elapsed_ms,best_cost,vertices";

/// One line of the records CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub sampler: String,
    pub trial: usize,
    pub iteration: u64,
    pub elapsed_ms: Option<f64>,
    pub best_cost: Option<f64>,
    pub vertices: usize,
}

impl BenchReport {
    /// Flattened records ordered by sampler label, trial and iteration.
    pub fn rows(&self) -> Vec<CsvRow> {
        let mut rows: Vec<CsvRow> = self
            .trials
            .iter()
            .flat_map(|t| {
                t.records.iter().map(|r| CsvRow {
                    sampler: t.label.clone(),
                    trial: t.trial,
                    iteration: r.iteration,
                    elapsed_ms: r.elapsed_ms,
                    best_cost: r.best_cost,
                    vertices: r.vertices,
                })
            })
            .collect();
        rows.sort_by(|a, b| {
            (a.sampler.as_str(), a.trial, a.iteration).cmp(&(
                b.sampler.as_str(),
                b.trial,
                b.iteration,
            ))
        });
        rows
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| BenchError::io(path, e))
}

/// Writes `rows` in the given order. Absent values are empty fields.
pub fn emit_csv(rows: &[CsvRow], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(create(path)?);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::Config(format!(
            "{}: unexpected header",
            path.display()
        )));
    }
    r.deserialize().map(|row| Ok(row?)).collect()
}

pub fn emit_summary(summary: &Summary, path: &Path) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, summary)?;
    writeln!(f).map_err(|e| BenchError::io(path, e))?;
    Ok(())
}

/// Vega-Lite description of the study: incumbent quartiles against the
/// budget axis per sampler, individual traces from `csv_name`, and the
/// success rates.
pub fn plot_spec(summary: &Summary, csv_name: &str) -> Value {
    let (field, title) = match summary.axis {
        Axis::TimeMs => ("elapsed_ms", "time [ms]"),
        Axis::Iterations => ("iteration", "iterations"),
    };
    let bands: Vec<Value> = summary
        .samplers
        .iter()
        .flat_map(|s| {
            s.checkpoints
                .iter()
                .filter(|c| c.median.is_some())
                .map(move |c| {
                    json!({
                        "sampler": s.label,
                        "at": c.at,
                        "q1": c.q1,
                        "median": c.median,
                        "q3": c.q3,
                        "solved": c.solved,
                    })
                })
        })
        .collect();
    let success: Vec<Value> = summary
        .samplers
        .iter()
        .map(|s| json!({"sampler": s.label, "success_rate": s.success_rate, "trials": s.trials}))
        .collect();
    let x =
        json!({"field": "at", "type": "quantitative", "scale": {"type": "log"}, "title": title});
    let color = json!({"field": "sampler", "type": "nominal"});
    json!({
        "$schema": "https://vega.github.io/schema/vega-lite/v5.json",
        "title": format!("{} convergence", summary.world),
        "vconcat": [
            {
                "width": 480,
                "height": 300,
                "layer": [
                    {
                        "data": {"url": csv_name},
                        "transform": [{"filter": format!("isValid(datum.best_cost) && datum.{field} > 0")}],
                        "mark": {"type": "line", "opacity": 0.15, "interpolate": "step-after"},
                        "encoding": {
                            "x": {"field": field, "type": "quantitative", "scale": {"type": "log"}, "title": title},
                            "y": {"field": "best_cost", "type": "quantitative", "scale": {"zero": false}},
                            "color": color,
                            "detail": {"field": "trial", "type": "nominal"}
                        }
                    },
                    {
                        "data": {"values": bands},
                        "mark": {"type": "area", "opacity": 0.25},
                        "encoding": {
                            "x": x,
                            "y": {"field": "q1", "type": "quantitative", "title": "best cost"},
                            "y2": {"field": "q3"},
                            "color": color
                        }
                    },
                    {
                        "data": {"values": bands},
                        "mark": {"type": "line", "point": true},
                        "encoding": {
                            "x": x,
                            "y": {"field": "median", "type": "quantitative"},
                            "color": color
                        }
                    }
                ]
            },
            {
                "width": 480,
                "height": 160,
                "title": "success rate",
                "data": {"values": success},
                "mark": "bar",
                "encoding": {
                    "x": {"field": "sampler", "type": "nominal", "sort": null},
                    "y": {"field": "success_rate", "type": "quantitative", "scale": {"domain": [0, 1]}},
                    "color": color
                }
            }
        ]
    })
}

/// Writes [`plot_spec`] as pretty JSON. Render with any Vega-Lite viewer
/// from the directory that holds the CSV.
pub fn emit_plot_script(summary: &Summary, csv_name: &str, path: &Path) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, &plot_spec(summary, csv_name))?;
    writeln!(f).map_err(|e| BenchError::io(path, e))?;
    Ok(())
}

/// Writes `records.csv`, `summary.json` and `plot.vl.json` into `dir`.
pub fn write_report(report: &BenchReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    emit_csv(&report.rows(), &dir.join("records.csv"))?;
    emit_summary(&report.summary, &dir.join("summary.json"))?;
    emit_plot_script(&report.summary, "records.csv", &dir.join("plot.vl.json"))
}
