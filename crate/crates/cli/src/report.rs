//! Report rows and the three output renderers.
//!
//! Every subcommand produces a flat list of rows; the renderer is chosen by
//! `--format`. CSV and JSON serialize the same structs, so the two formats
//! always carry identical values. Human tables round to two decimals,
//! switching to scientific notation below 0.01 so sub-millijoule cells stay
//! legible.

use serde::Serialize;
use wban_model::schemes::{CompressionPoint, SchemeResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// One sensor/scheme evaluation, flattened for serialization. The three
/// trailing booleans surface the model's caveat flags; they never suppress
/// the numbers.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub sensor: String,
    pub scheme: String,
    pub f_s_hz: f64,
    pub e_s_j_per_day: f64,
    pub e_t_j_per_day: f64,
    pub e_c_j_per_day: f64,
    pub e_buf_j_per_day: f64,
    pub e_total_j_per_day: f64,
    pub lifetime_days: f64,
    pub storage_bytes_per_year: f64,
    pub storage_mib_per_year: f64,
    pub storage_gib_per_year: f64,
    pub saturated: bool,
    pub uncalibrated_compute: bool,
    pub extrapolated_adc: bool,
}

impl EvalRow {
    pub fn from_result(r: &SchemeResult) -> Self {
        EvalRow {
            sensor: r.sensor.clone(),
            scheme: r.kind.label().to_string(),
            f_s_hz: r.f_s_hz,
            e_s_j_per_day: r.energy.sampling(),
            e_t_j_per_day: r.energy.transmission(),
            e_c_j_per_day: r.energy.computation(),
            e_buf_j_per_day: r.energy.buffering(),
            e_total_j_per_day: r.energy.total(),
            lifetime_days: r.lifetime_days,
            storage_bytes_per_year: r.storage.bytes_per_year(),
            storage_mib_per_year: r.storage.mib_per_year(),
            storage_gib_per_year: r.storage.gib_per_year(),
            saturated: r.flags.saturated,
            uncalibrated_compute: r.flags.uncalibrated_compute,
            extrapolated_adc: r.flags.extrapolated_adc,
        }
    }

    fn flags_summary(&self) -> String {
        flags_summary(self.saturated, self.uncalibrated_compute, self.extrapolated_adc)
    }
}

fn flags_summary(saturated: bool, uncalibrated: bool, extrapolated: bool) -> String {
    let mut parts = Vec::new();
    if saturated {
        parts.push("saturated");
    }
    if uncalibrated {
        parts.push("uncalibrated-compute");
    }
    if extrapolated {
        parts.push("extrapolated-adc");
    }
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

/// One event-rate sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct ArrhythmiaRow {
    pub events_per_day: u32,
    pub sensor: String,
    pub scheme: String,
    pub f_s_hz: f64,
    pub e_total_j_per_day: f64,
    pub lifetime_days: f64,
    pub storage_mib_per_year: f64,
    pub saturated: bool,
    pub uncalibrated_compute: bool,
    pub extrapolated_adc: bool,
}

impl ArrhythmiaRow {
    pub fn new(events_per_day: u32, r: &SchemeResult) -> Self {
        ArrhythmiaRow {
            events_per_day,
            sensor: r.sensor.clone(),
            scheme: r.kind.label().to_string(),
            f_s_hz: r.f_s_hz,
            e_total_j_per_day: r.energy.total(),
            lifetime_days: r.lifetime_days,
            storage_mib_per_year: r.storage.mib_per_year(),
            saturated: r.flags.saturated,
            uncalibrated_compute: r.flags.uncalibrated_compute,
            extrapolated_adc: r.flags.extrapolated_adc,
        }
    }
}

/// One compression-ratio sweep point: scheme metrics plus the measured
/// inner-product distortion of the projection at that ratio.
#[derive(Debug, Clone, Serialize)]
pub struct CompressionRow {
    pub alpha: f64,
    pub window_samples: usize,
    pub kept_measurements: usize,
    pub sensor: String,
    pub f_s_hz: f64,
    pub e_total_j_per_day: f64,
    pub lifetime_days: f64,
    pub storage_mib_per_year: f64,
    pub distortion_mean: f64,
    pub distortion_p95: f64,
    pub saturated: bool,
    pub uncalibrated_compute: bool,
}

impl CompressionRow {
    pub fn new(point: &CompressionPoint, window: usize) -> Self {
        let r = &point.result;
        CompressionRow {
            alpha: point.alpha,
            window_samples: window,
            kept_measurements: ((window as f64 / point.alpha).round() as usize).clamp(1, window),
            sensor: r.sensor.clone(),
            f_s_hz: r.f_s_hz,
            e_total_j_per_day: r.energy.total(),
            lifetime_days: r.lifetime_days,
            storage_mib_per_year: r.storage.mib_per_year(),
            distortion_mean: point.distortion.mean,
            distortion_p95: point.distortion.p95,
            saturated: r.flags.saturated,
            uncalibrated_compute: r.flags.uncalibrated_compute,
        }
    }
}

/// One row of the qualitative scheme comparison.
#[derive(Debug, Clone, Serialize)]
pub struct QualitativeRow {
    pub scheme: String,
    pub latency: String,
    pub transmitted_data: String,
    pub extensibility: String,
}

/// Two decimals for the human tables, scientific below 0.01 so small cells
/// keep their leading digits.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0.00".to_string()
    } else if v.abs() < 0.01 {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

/// Render rows as an aligned text table. `header` and each row must have the
/// same arity.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let render_line = |cells: Vec<&str>, widths: &[usize]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}", w = w))
            .collect::<Vec<_>>()
            .join("  ")
    };
    out.push_str(&render_line(header.to_vec(), &widths));
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    out.push('\n');
    for row in rows {
        out.push_str(&render_line(row.iter().map(String::as_str).collect(), &widths));
        out.push('\n');
    }
    out
}

/// Which columns the human table leads with. CSV and JSON always carry the
/// full row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalView {
    Energy,
    Storage,
    Lifetime,
}

type RowCells = fn(&EvalRow) -> Vec<String>;

pub fn eval_table(rows: &[EvalRow], view: EvalView) -> String {
    let (header, cells): (&[&str], RowCells) = match view {
        EvalView::Energy => (
            &[
                "sensor", "scheme", "f_s_hz", "e_s", "e_t", "e_c", "e_buf",
                "e_total_j_day", "flags",
            ],
            |r| {
                vec![
                    r.sensor.clone(),
                    r.scheme.clone(),
                    fmt_num(r.f_s_hz),
                    fmt_num(r.e_s_j_per_day),
                    fmt_num(r.e_t_j_per_day),
                    fmt_num(r.e_c_j_per_day),
                    fmt_num(r.e_buf_j_per_day),
                    fmt_num(r.e_total_j_per_day),
                    r.flags_summary(),
                ]
            },
        ),
        EvalView::Storage => (
            &[
                "sensor", "scheme", "f_s_hz", "bytes_yr", "mib_yr", "gib_yr", "flags",
            ],
            |r| {
                vec![
                    r.sensor.clone(),
                    r.scheme.clone(),
                    fmt_num(r.f_s_hz),
                    format!("{:.0}", r.storage_bytes_per_year),
                    fmt_num(r.storage_mib_per_year),
                    fmt_num(r.storage_gib_per_year),
                    r.flags_summary(),
                ]
            },
        ),
        EvalView::Lifetime => (
            &[
                "sensor", "scheme", "f_s_hz", "e_total_j_day", "lifetime_days", "flags",
            ],
            |r| {
                vec![
                    r.sensor.clone(),
                    r.scheme.clone(),
                    fmt_num(r.f_s_hz),
                    fmt_num(r.e_total_j_per_day),
                    fmt_num(r.lifetime_days),
                    r.flags_summary(),
                ]
            },
        ),
    };
    let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
    render_table(header, &body)
}

pub fn arrhythmia_table(rows: &[ArrhythmiaRow]) -> String {
    let header = [
        "events_per_day", "sensor", "scheme", "f_s_hz", "e_total_j_day", "lifetime_days",
        "storage_mib_yr", "flags",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.events_per_day.to_string(),
                r.sensor.clone(),
                r.scheme.clone(),
                fmt_num(r.f_s_hz),
                fmt_num(r.e_total_j_per_day),
                fmt_num(r.lifetime_days),
                fmt_num(r.storage_mib_per_year),
                flags_summary(r.saturated, r.uncalibrated_compute, r.extrapolated_adc),
            ]
        })
        .collect();
    render_table(&header, &body)
}

pub fn compression_table(rows: &[CompressionRow]) -> String {
    let header = [
        "alpha", "kept_m", "window_n", "e_total_j_day", "lifetime_days", "storage_mib_yr",
        "distortion_mean", "distortion_p95", "flags",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                fmt_num(r.alpha),
                r.kept_measurements.to_string(),
                r.window_samples.to_string(),
                fmt_num(r.e_total_j_per_day),
                fmt_num(r.lifetime_days),
                fmt_num(r.storage_mib_per_year),
                fmt_num(r.distortion_mean),
                fmt_num(r.distortion_p95),
                flags_summary(r.saturated, r.uncalibrated_compute, false),
            ]
        })
        .collect();
    render_table(&header, &body)
}

pub fn qualitative_table(rows: &[QualitativeRow]) -> String {
    let header = ["scheme", "latency", "transmitted_data", "extensibility"];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.scheme.clone(),
                r.latency.clone(),
                r.transmitted_data.clone(),
                r.extensibility.clone(),
            ]
        })
        .collect();
    render_table(&header, &body)
}

/// Serialize rows as CSV (headers from the struct fields).
pub fn to_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Serialize rows as pretty JSON.
pub fn to_json<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(rows)?))
}
