//! From parsed arguments to report rows.

use anyhow::{anyhow, bail, Context, Result};

use wban_model::catalog::{Catalog, ComputeLabel, ComputeProfile, SensorSpec};
use wban_model::cs::CsConfig;
use wban_model::schemes::{
    evaluate, max_samples_per_packet, qualitative_comparison, sweep_arrhythmia,
    sweep_compression, CompressionSweepParams, EventProfile, EventScheme, Extensibility,
    LatencyClass, RateCheck, SchemeConfig, SchemeError, SchemeResult, TransmittedData,
};

use crate::args::{ArrhythmiaArgs, CompressionArgs, EvalArgs, EventSchemeArg, SchemeArg};
use crate::report::{ArrhythmiaRow, CompressionRow, EvalRow, QualitativeRow};

/// Parsed `--rate` value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateSelector {
    Min,
    Max,
    Both,
    Hz(f64),
}

impl RateSelector {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(RateSelector::Min),
            "max" => Ok(RateSelector::Max),
            "both" => Ok(RateSelector::Both),
            other => other
                .parse::<f64>()
                .map(RateSelector::Hz)
                .map_err(|_| anyhow!("--rate takes \"min\", \"max\", \"both\", or a value in Hz, not {other:?}")),
        }
    }

    /// The sampling rates this selector means for one sensor.
    fn points(&self, sensor: &SensorSpec) -> Vec<f64> {
        match self {
            RateSelector::Min => vec![sensor.f_min_hz],
            RateSelector::Max => vec![sensor.f_max_hz],
            RateSelector::Both => vec![sensor.f_min_hz, sensor.f_max_hz],
            RateSelector::Hz(v) => vec![*v],
        }
    }

    /// Sweeps plot against their own grid, so they take exactly one rate.
    fn single(&self, sensor: &SensorSpec) -> Result<f64> {
        match self {
            RateSelector::Both => bail!("a sweep needs one rate; pass --rate min, max, or a value in Hz"),
            other => Ok(other.points(sensor)[0]),
        }
    }
}

fn unknown_sensor(catalog: &Catalog, name: &str) -> anyhow::Error {
    anyhow!(
        "unknown sensor {name:?}; the catalog has: {}",
        catalog.sensor_names().join(", ")
    )
}

fn one_sensor<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a SensorSpec> {
    catalog.sensor(name).ok_or_else(|| unknown_sensor(catalog, name))
}

/// Empty selection means the whole catalog, in catalog order.
fn select_sensors<'a>(catalog: &'a Catalog, names: &[String]) -> Result<Vec<&'a SensorSpec>> {
    if names.is_empty() {
        return Ok(catalog.sensors.iter().collect());
    }
    names.iter().map(|n| one_sensor(catalog, n)).collect()
}

/// Event statistics from the flags: the per-day shorthand wins outright
/// (clap rejects mixing them); otherwise explicit values overlay the seizure
/// defaults.
fn event_profile(args: &EvalArgs) -> EventProfile {
    if let Some(n) = args.events_per_day {
        return EventProfile::arrhythmia(n);
    }
    let mut p = EventProfile::seizure();
    if let Some(v) = args.events_per_month {
        p.events_per_month = v;
    }
    if let Some(v) = args.event_duration_s {
        p.event_duration_s = v;
    }
    if let Some(v) = args.transmit_extra_s {
        p.transmit_extra_s = v;
    }
    p
}

/// Computation profile for a report command: an explicit `--compute-e-c`
/// beats the catalog, and a sensor without either is an error (the energy
/// total would silently drop its biggest unknown).
fn required_compute(
    catalog: &Catalog,
    sensor: &SensorSpec,
    label: ComputeLabel,
    explicit: Option<f64>,
) -> Result<ComputeProfile> {
    if let Some(v) = explicit {
        return Ok(ComputeProfile::estimate(label, v));
    }
    catalog.compute_profile(&sensor.name, label).ok_or_else(|| {
        anyhow!(
            "no {label:?} computation profile for {}; supply an explicit value with --compute-e-c <J/day>",
            sensor.name
        )
    })
}

/// Computation profile for a sweep: fall back to 0 J/day (flagged
/// uncalibrated) instead of erroring, so the grid still shows the radio's
/// share for detectors nobody has measured yet.
fn sweep_compute(
    catalog: &Catalog,
    sensor: &SensorSpec,
    label: ComputeLabel,
    explicit: Option<f64>,
) -> ComputeProfile {
    if let Some(v) = explicit {
        return ComputeProfile::estimate(label, v);
    }
    match catalog.compute_profile(&sensor.name, label) {
        Some(p) if p.e_c_per_day_j.is_some() => p,
        _ => ComputeProfile::estimate(label, 0.0),
    }
}

fn scheme_config(catalog: &Catalog, sensor: &SensorSpec, args: &EvalArgs) -> Result<SchemeConfig> {
    Ok(match args.scheme {
        SchemeArg::Baseline => SchemeConfig::Baseline,
        SchemeArg::Aggregate => SchemeConfig::Aggregation {
            samples_per_packet: match args.samples_per_packet {
                Some(k) => k,
                None => max_samples_per_packet(sensor, &catalog.radio)?,
            },
        },
        SchemeArg::Anomaly => SchemeConfig::AnomalyDriven {
            events: event_profile(args),
            compute: required_compute(
                catalog,
                sensor,
                ComputeLabel::TraditionalAnomaly,
                args.compute_e_c,
            )?,
        },
        SchemeArg::Cs => SchemeConfig::CsBased {
            events: event_profile(args),
            compute: required_compute(catalog, sensor, ComputeLabel::CsBased, args.compute_e_c)?,
            cs: CsConfig::from_alpha(args.window, args.alpha, args.seed)?,
            transmit_compressed: args.transmit_compressed,
        },
    })
}

/// `evaluate`, with the missing-computation error pointed at the flag that
/// fixes it.
fn eval_with_hint(
    catalog: &Catalog,
    sensor: &SensorSpec,
    scheme: &SchemeConfig,
    f_s_hz: f64,
    rate_check: RateCheck,
) -> Result<SchemeResult> {
    evaluate(catalog, sensor, scheme, f_s_hz, rate_check).map_err(|e| match e {
        SchemeError::MissingComputeEnergy { .. } => {
            anyhow!("{e}; --compute-e-c <J/day> supplies one")
        }
        other => other.into(),
    })
}

/// Rows for `energy`, `storage`, and `lifetime` (they share the evaluation;
/// only the table view differs).
pub fn eval_rows(catalog: &Catalog, args: &EvalArgs) -> Result<Vec<EvalRow>> {
    let sensors = select_sensors(catalog, &args.sensors)?;
    let selector = RateSelector::parse(&args.rate)?;
    let rate_check = if args.allow_any_rate {
        RateCheck::Override
    } else {
        RateCheck::Enforce
    };
    let mut rows = Vec::new();
    for sensor in sensors {
        let scheme = scheme_config(catalog, sensor, args)
            .with_context(|| format!("configuring {}", sensor.name))?;
        for f_s in selector.points(sensor) {
            let result = eval_with_hint(catalog, sensor, &scheme, f_s, rate_check)?;
            rows.push(EvalRow::from_result(&result));
        }
    }
    Ok(rows)
}

pub fn arrhythmia_rows(catalog: &Catalog, args: &ArrhythmiaArgs) -> Result<Vec<ArrhythmiaRow>> {
    let sensor = one_sensor(catalog, &args.sensor)?;
    let f_s = RateSelector::parse(&args.rate)?.single(sensor)?;
    let (scheme, label) = match args.scheme {
        EventSchemeArg::Anomaly => (EventScheme::AnomalyDriven, ComputeLabel::TraditionalAnomaly),
        EventSchemeArg::Cs => (
            EventScheme::CsBased {
                cs: CsConfig::from_alpha(args.window, args.alpha, args.seed)?,
                transmit_compressed: args.transmit_compressed,
            },
            ComputeLabel::CsBased,
        ),
    };
    let compute = sweep_compute(catalog, sensor, label, args.compute_e_c);
    let points = sweep_arrhythmia(
        catalog, sensor, &scheme, &compute, f_s, args.from, args.to, args.step,
    )?;
    Ok(points
        .iter()
        .map(|p| ArrhythmiaRow::new(p.events_per_day, &p.result))
        .collect())
}

pub fn compression_rows(catalog: &Catalog, args: &CompressionArgs) -> Result<Vec<CompressionRow>> {
    let sensor = one_sensor(catalog, &args.sensor)?;
    let f_s = RateSelector::parse(&args.rate)?.single(sensor)?;
    let compute = sweep_compute(catalog, sensor, ComputeLabel::CsBased, args.compute_e_c);
    let params = CompressionSweepParams {
        n: args.window,
        sparsity: args.sparsity,
        trials: args.trials,
        seed: args.seed,
        orthonormalize_square: true,
    };
    let points = sweep_compression(
        catalog,
        sensor,
        &EventProfile::seizure(),
        &compute,
        f_s,
        &args.alphas,
        &params,
        args.transmit_compressed,
    )?;
    Ok(points
        .iter()
        .map(|p| CompressionRow::new(p, args.window))
        .collect())
}

pub fn qualitative_rows() -> Vec<QualitativeRow> {
    qualitative_comparison()
        .iter()
        .map(|(kind, q)| QualitativeRow {
            scheme: kind.label().to_string(),
            latency: match q.latency {
                LatencyClass::Low => "low",
                LatencyClass::Varies => "grows with the aggregation window",
            }
            .to_string(),
            transmitted_data: match q.transmitted {
                TransmittedData::AllRaw => "all samples, raw",
                TransmittedData::PortionCollected => "event windows, raw",
                TransmittedData::PortionCompressed => "event windows, compressed",
            }
            .to_string(),
            extensibility: match q.extensibility {
                Extensibility::High => "high: receiver sees the full stream",
                Extensibility::Low => "low: only event excerpts leave the node",
            }
            .to_string(),
        })
        .collect()
}
