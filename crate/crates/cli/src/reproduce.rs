//! Recompute the shipped reference figures and diff them cell by cell.
//!
//! Every cell routes through the same public model entry points the report
//! commands use, against whatever catalog is in effect — so running
//! `reproduce` under a config overlay shows exactly which figures that
//! overlay breaks.

use anyhow::{bail, Context, Result};
use serde::Serialize;

use wban_model::catalog::{Catalog, ComputeLabel, ComputeProfile, SensorSpec};
use wban_model::cs::CsConfig;
use wban_model::energy::sampling_energy_per_day;
use wban_model::schemes::{
    evaluate, max_samples_per_packet, savings_ratio, EventProfile, Metric, RateCheck,
    SchemeConfig, SchemeResult,
};

use crate::expected::{self, Tolerance};
use crate::report::{fmt_num, render_table};

/// Compression ratio and projection shape behind the compressive reference
/// figures.
const REFERENCE_ALPHA: f64 = 8.0;
const REFERENCE_WINDOW: usize = 256;
const REFERENCE_SEED: u64 = 7;

/// One recomputed cell, ready for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct CellOutcome {
    pub table: &'static str,
    pub cell: &'static str,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: String,
    pub pass: bool,
}

/// A figure the tool refuses to diff, with the reason printed verbatim.
#[derive(Debug, Clone, Serialize)]
pub struct NotReproducible {
    pub id: &'static str,
    pub reason: &'static str,
}

/// Absolute figures that cannot be recomputed from the shipped catalog.
/// Kept out of the cell corpus on purpose; hiding them entirely would make
/// a clean `reproduce` run overstate its coverage.
pub const DECLARED_NOT_REPRODUCIBLE: &[NotReproducible] = &[NotReproducible {
    id: "ecg_event_scheme_absolute_figures",
    reason: "the catalog carries no calibrated detector energy for the Ecg \
             event pipelines, so their absolute daily-energy and lifetime \
             figures cannot be recomputed; what is checked instead (in the \
             test suite) is their structure: energy affine in the daily \
             event count, with slope equal to the radio cost of one 60 s \
             recording strip, about 4.76 J per event-day at 1 kHz",
}];

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceReport {
    pub cells: Vec<CellOutcome>,
    pub cells_failed: usize,
    pub not_reproducible: &'static [NotReproducible],
}

impl ReproduceReport {
    pub fn all_passed(&self) -> bool {
        self.cells_failed == 0
    }

    /// Human rendering: the per-cell diff table, a summary line, and the
    /// declared gaps.
    pub fn to_table(&self) -> String {
        let header = [
            "table", "cell", "expected", "computed", "diff_pct", "tolerance", "status",
        ];
        let body: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|c| {
                let diff_pct = (c.computed - c.expected) / c.expected * 100.0;
                vec![
                    c.table.to_string(),
                    c.cell.to_string(),
                    fmt_num(c.expected),
                    fmt_num(c.computed),
                    format!("{diff_pct:+.3}"),
                    c.tolerance.clone(),
                    if c.pass { "ok" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let mut out = render_table(&header, &body);
        out.push('\n');
        out.push_str(&format!(
            "{} cells checked: {} within tolerance, {} outside.\n",
            self.cells.len(),
            self.cells.len() - self.cells_failed,
            self.cells_failed
        ));
        out.push_str("not reproducible from the shipped catalog:\n");
        for skip in self.not_reproducible {
            out.push_str(&format!("  - {}: {}\n", skip.id, skip.reason));
        }
        out
    }
}

/// Recompute the whole corpus. `tolerance_override` replaces every cell's
/// tolerance with a uniform relative percentage.
pub fn run(catalog: &Catalog, tolerance_override: Option<f64>) -> Result<ReproduceReport> {
    let mut cells = Vec::new();
    for table in expected::CORPUS {
        for cell in table.cells {
            let computed = compute_cell(catalog, table.id, cell.key)
                .with_context(|| format!("recomputing {}/{}", table.id, cell.key))?;
            let tolerance = tolerance_override
                .map(Tolerance::RelativePercent)
                .unwrap_or(cell.tolerance);
            cells.push(CellOutcome {
                table: table.id,
                cell: cell.key,
                expected: cell.expected,
                computed,
                tolerance: tolerance.describe(),
                pass: tolerance.check(cell.expected, computed),
            });
        }
    }
    let cells_failed = cells.iter().filter(|c| !c.pass).count();
    Ok(ReproduceReport {
        cells,
        cells_failed,
        not_reproducible: DECLARED_NOT_REPRODUCIBLE,
    })
}

// ---- cell dispatch ---------------------------------------------------------

fn sensor<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a SensorSpec> {
    catalog
        .sensor(name)
        .with_context(|| format!("sensor {name} is not in the catalog"))
}

/// Resolve "min_rate" / "max_rate" against a sensor's range.
fn rate_of(sensor: &SensorSpec, point: &str) -> Result<f64> {
    match point {
        "min_rate" => Ok(sensor.f_min_hz),
        "max_rate" => Ok(sensor.f_max_hz),
        other => bail!("unknown rate point {other}"),
    }
}

fn split_key(key: &'static str) -> (&'static str, &'static str) {
    match key.split_once('/') {
        Some((head, tail)) => (head, tail),
        None => (key, ""),
    }
}

fn eval_at(
    catalog: &Catalog,
    name: &str,
    scheme: &SchemeConfig,
    point: &str,
) -> Result<SchemeResult> {
    let s = sensor(catalog, name)?;
    let f_s = rate_of(s, point)?;
    Ok(evaluate(catalog, s, scheme, f_s, RateCheck::Enforce)?)
}

fn aggregation_config(catalog: &Catalog, name: &str) -> Result<SchemeConfig> {
    let s = sensor(catalog, name)?;
    Ok(SchemeConfig::Aggregation {
        samples_per_packet: max_samples_per_packet(s, &catalog.radio)?,
    })
}

fn calibrated_compute(catalog: &Catalog, name: &str, label: ComputeLabel) -> Result<ComputeProfile> {
    catalog
        .compute_profile(name, label)
        .with_context(|| format!("no {label:?} computation profile for {name}"))
}

fn anomaly_config(catalog: &Catalog, name: &str) -> Result<SchemeConfig> {
    Ok(SchemeConfig::AnomalyDriven {
        events: EventProfile::seizure(),
        compute: calibrated_compute(catalog, name, ComputeLabel::TraditionalAnomaly)?,
    })
}

fn cs_config(catalog: &Catalog, name: &str) -> Result<SchemeConfig> {
    Ok(SchemeConfig::CsBased {
        events: EventProfile::seizure(),
        compute: calibrated_compute(catalog, name, ComputeLabel::CsBased)?,
        cs: CsConfig::from_alpha(REFERENCE_WINDOW, REFERENCE_ALPHA, REFERENCE_SEED)?,
        transmit_compressed: false,
    })
}

fn energy_savings_at_max(
    catalog: &Catalog,
    name: &str,
    alternative: &SchemeConfig,
) -> Result<f64> {
    let baseline = eval_at(catalog, name, &SchemeConfig::Baseline, "max_rate")?;
    let alt = eval_at(catalog, name, alternative, "max_rate")?;
    Ok(savings_ratio(&baseline, &alt, Metric::Energy)?)
}

fn compute_cell(catalog: &Catalog, table_id: &'static str, key: &'static str) -> Result<f64> {
    let (head, tail) = split_key(key);
    match table_id {
        "stream_rate_bits_per_s" => Ok(sensor(catalog, head)?.max_transmission_rate_bits_per_s()),
        "samples_per_packet" => {
            Ok(max_samples_per_packet(sensor(catalog, head)?, &catalog.radio)? as f64)
        }
        "sampling_energy_j_per_day_at_max_rate" => {
            let s = sensor(catalog, head)?;
            Ok(sampling_energy_per_day(s.f_max_hz, s.resolution_bits).joules_per_day)
        }
        "baseline_energy_j_per_day" => {
            Ok(eval_at(catalog, head, &SchemeConfig::Baseline, tail)?.energy.total())
        }
        "baseline_lifetime_days" => {
            Ok(eval_at(catalog, head, &SchemeConfig::Baseline, tail)?.lifetime_days)
        }
        "aggregation_energy_j_per_day" => {
            let scheme = aggregation_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.energy.total())
        }
        "aggregation_lifetime_days" => {
            let scheme = aggregation_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.lifetime_days)
        }
        "aggregation_energy_savings" => match key {
            "low_rate_best" => {
                let mut best = f64::NEG_INFINITY;
                for s in &catalog.sensors {
                    if s.rate_class != wban_model::catalog::RateClass::LowSampleRate {
                        continue;
                    }
                    let scheme = aggregation_config(catalog, &s.name)?;
                    let baseline =
                        eval_at(catalog, &s.name, &SchemeConfig::Baseline, "max_rate")?;
                    let agg = eval_at(catalog, &s.name, &scheme, "max_rate")?;
                    best = best.max(savings_ratio(&baseline, &agg, Metric::Energy)?);
                }
                Ok(best)
            }
            "high_rate_at_min_rate" | "high_rate_at_max_rate" => {
                let point = key.trim_start_matches("high_rate_at_");
                let scheme = aggregation_config(catalog, "Eeg")?;
                let baseline = eval_at(catalog, "Eeg", &SchemeConfig::Baseline, point)?;
                let agg = eval_at(catalog, "Eeg", &scheme, point)?;
                Ok(savings_ratio(&baseline, &agg, Metric::Energy)?)
            }
            other => bail!("unknown savings cell {other}"),
        },
        "eeg_anomaly_energy_j_per_day" => {
            let scheme = anomaly_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.energy.total())
        }
        "eeg_anomaly_lifetime_days" => {
            let scheme = anomaly_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.lifetime_days)
        }
        "eeg_cs_energy_j_per_day" => {
            let scheme = cs_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.energy.total())
        }
        "eeg_cs_lifetime_days" => {
            let scheme = cs_config(catalog, head)?;
            Ok(eval_at(catalog, head, &scheme, tail)?.lifetime_days)
        }
        "event_scheme_energy_savings" => match key {
            "anomaly_vs_baseline_at_max_rate" => {
                let scheme = anomaly_config(catalog, "Eeg")?;
                energy_savings_at_max(catalog, "Eeg", &scheme)
            }
            "cs_vs_baseline_at_max_rate" => {
                let scheme = cs_config(catalog, "Eeg")?;
                energy_savings_at_max(catalog, "Eeg", &scheme)
            }
            other => bail!("unknown savings cell {other}"),
        },
        "baseline_storage_per_year" => {
            let result = match tail {
                "min_rate_mib" => {
                    eval_at(catalog, head, &SchemeConfig::Baseline, "min_rate")?
                        .storage
                        .mib_per_year()
                }
                "max_rate_gib" => {
                    eval_at(catalog, head, &SchemeConfig::Baseline, "max_rate")?
                        .storage
                        .gib_per_year()
                }
                other => bail!("unknown storage cell {other}"),
            };
            Ok(result)
        }
        "eeg_event_storage_mib_per_year" => {
            let scheme = match head {
                "anomaly" => anomaly_config(catalog, "Eeg")?,
                "cs" => cs_config(catalog, "Eeg")?,
                other => bail!("unknown event-storage scheme {other}"),
            };
            Ok(eval_at(catalog, "Eeg", &scheme, tail)?.storage.mib_per_year())
        }
        "storage_savings" => {
            let baseline = eval_at(catalog, "Eeg", &SchemeConfig::Baseline, "max_rate")?;
            let anomaly =
                eval_at(catalog, "Eeg", &anomaly_config(catalog, "Eeg")?, "max_rate")?;
            let cs = eval_at(catalog, "Eeg", &cs_config(catalog, "Eeg")?, "max_rate")?;
            match key {
                "anomaly_vs_baseline_at_max_rate" => {
                    Ok(savings_ratio(&baseline, &anomaly, Metric::Storage)?)
                }
                "cs_vs_anomaly" => Ok(savings_ratio(&anomaly, &cs, Metric::Storage)?),
                "cs_vs_baseline_at_max_rate" => {
                    Ok(savings_ratio(&baseline, &cs, Metric::Storage)?)
                }
                other => bail!("unknown savings cell {other}"),
            }
        }
        other => bail!("unknown reference table {other}"),
    }
}
