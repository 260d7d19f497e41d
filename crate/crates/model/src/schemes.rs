//! The four transmission schemes and their end-to-end evaluation.
//!
//! Every scheme answers the same question — what does one sensor cost per
//! day in energy, how long does its battery last, and how much storage does
//! its data demand per year — but they differ in *when* the radio runs and
//! *what* is kept:
//!
//! * **Baseline**: every sample is transmitted as collected.
//! * **Aggregation**: samples are buffered and sent in full packets, cutting
//!   the cycle rate by the number of samples per packet.
//! * **Anomaly-driven**: the node transmits only around detected events,
//!   paying a computation budget for the on-node detector.
//! * **CS-based**: anomaly-driven on compressively sampled data, with a much
//!   cheaper detector and compressed storage.
//!
//! [`evaluate`] produces a [`SchemeResult`] for one sensor/scheme/rate
//! combination; the sweep helpers iterate it over event-rate and
//! compression-ratio grids.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{Catalog, ComputeProfile, RadioProfile, SensorSpec};
use crate::cs::{self, CsConfig, CsError, DistortionStats};
use crate::energy::{
    battery_lifetime_days, sampling_energy_per_day, transmission_energy_per_day, EnergyBreakdown,
    EnergyError, SECONDS_PER_DAY,
};
use crate::storage::{event_storage, yearly_storage, StorageEstimate};

/// Calendar conventions shared by the event-driven models: a 30-day month
/// and a 365-day year (so a year holds 365/30 ≈ 12.17 months).
pub const DAYS_PER_MONTH: f64 = 30.0;
pub const MONTHS_PER_YEAR: f64 = 365.0 / 30.0;

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error(
        "sampling rate {f_s_hz} Hz is outside {sensor}'s range \
         [{f_min_hz}, {f_max_hz}] Hz (pass an explicit override to evaluate anyway)"
    )]
    RateOutOfRange {
        sensor: String,
        f_s_hz: f64,
        f_min_hz: f64,
        f_max_hz: f64,
    },
    #[error(
        "one {resolution_bits}-bit sample does not fit the {max_payload_bytes}-byte radio payload"
    )]
    SampleExceedsPayload {
        resolution_bits: u8,
        max_payload_bytes: u32,
    },
    #[error(
        "aggregation of {samples_per_packet} samples per packet is outside \
         1..={max_samples_per_packet} for this sensor"
    )]
    InvalidAggregation {
        samples_per_packet: u32,
        max_samples_per_packet: u32,
    },
    #[error(
        "no computation energy is calibrated for {sensor}'s detector; \
         supply an explicit e_c value (J/day) to evaluate this scheme"
    )]
    MissingComputeEnergy { sensor: String },
    #[error("invalid event profile: {reason}")]
    InvalidEventProfile { reason: String },
    #[error("invalid sweep grid: {reason}")]
    InvalidSweep { reason: String },
    #[error("savings ratio is undefined against a zero denominator")]
    DivisionByZero,
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error(transparent)]
    Cs(#[from] CsError),
}

/// How often events occur and how long the radio stays busy per event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventProfile {
    pub events_per_month: f64,
    /// Signal captured per event, seconds.
    pub event_duration_s: f64,
    /// Extra transmission time per event beyond the captured window (e.g. a
    /// fixed recording strip shipped after each detection), seconds.
    pub transmit_extra_s: f64,
}

impl EventProfile {
    /// Epileptic-seizure statistics for a monitored patient: 4.7 events per
    /// month of 3.8 minutes each, transmitted as captured.
    pub fn seizure() -> Self {
        EventProfile {
            events_per_month: 4.7,
            event_duration_s: 228.0,
            transmit_extra_s: 0.0,
        }
    }

    /// Cardiac-arrhythmia monitoring at `events_per_day` detections a day,
    /// each shipping a one-minute recording strip.
    pub fn arrhythmia(events_per_day: f64) -> Self {
        EventProfile {
            events_per_month: events_per_day * DAYS_PER_MONTH,
            event_duration_s: 0.0,
            transmit_extra_s: 60.0,
        }
    }

    /// Fraction of time the radio is busy with event traffic.
    pub fn duty_fraction(&self) -> f64 {
        self.events_per_month * (self.event_duration_s + self.transmit_extra_s)
            / (DAYS_PER_MONTH * SECONDS_PER_DAY)
    }

    /// Seconds of signal captured (and stored) per year.
    pub fn active_seconds_per_year(&self) -> f64 {
        self.events_per_month
            * MONTHS_PER_YEAR
            * (self.event_duration_s + self.transmit_extra_s)
    }

    fn validate(&self) -> Result<(), SchemeError> {
        let bad = |reason: &str| {
            Err(SchemeError::InvalidEventProfile {
                reason: reason.to_string(),
            })
        };
        if !(self.events_per_month >= 0.0) {
            return bad("events_per_month must be >= 0");
        }
        if !(self.event_duration_s >= 0.0) {
            return bad("event_duration_s must be >= 0");
        }
        if !(self.transmit_extra_s >= 0.0) {
            return bad("transmit_extra_s must be >= 0");
        }
        Ok(())
    }
}

/// Which scheme a result belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchemeKind {
    Baseline,
    Aggregation,
    AnomalyDriven,
    CsBased,
}

impl SchemeKind {
    pub fn label(&self) -> &'static str {
        match self {
            SchemeKind::Baseline => "baseline",
            SchemeKind::Aggregation => "aggregation",
            SchemeKind::AnomalyDriven => "anomaly-driven",
            SchemeKind::CsBased => "cs-based",
        }
    }
}

/// Full configuration of a scheme evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum SchemeConfig {
    Baseline,
    Aggregation {
        samples_per_packet: u32,
    },
    AnomalyDriven {
        events: EventProfile,
        compute: ComputeProfile,
    },
    CsBased {
        events: EventProfile,
        compute: ComputeProfile,
        cs: CsConfig,
        /// When set, event traffic ships the compressed measurements instead
        /// of the raw window, scaling transmission energy down by the
        /// compression ratio. Off by default: the reference figures charge
        /// the radio for the raw event window.
        transmit_compressed: bool,
    },
}

impl SchemeConfig {
    pub fn kind(&self) -> SchemeKind {
        match self {
            SchemeConfig::Baseline => SchemeKind::Baseline,
            SchemeConfig::Aggregation { .. } => SchemeKind::Aggregation,
            SchemeConfig::AnomalyDriven { .. } => SchemeKind::AnomalyDriven,
            SchemeConfig::CsBased { .. } => SchemeKind::CsBased,
        }
    }
}

/// Whether [`evaluate`] enforces the sensor's sampling-rate range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateCheck {
    Enforce,
    /// Evaluate outside the catalog range (the rate must still be positive).
    Override,
}

/// Qualitative traits of a scheme, for the side-by-side comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QualitativeProfile {
    pub latency: LatencyClass,
    pub transmitted: TransmittedData,
    pub extensibility: Extensibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LatencyClass {
    Low,
    /// Grows with the aggregation window: a full packet must fill up before
    /// anything is sent.
    Varies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransmittedData {
    AllRaw,
    PortionCollected,
    PortionCompressed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extensibility {
    /// Receiver-side processing sees everything, so analyses can change
    /// after deployment.
    High,
    /// Only event excerpts leave the node; anything else is gone.
    Low,
}

pub fn qualitative_profile(kind: SchemeKind) -> QualitativeProfile {
    use Extensibility::{High, Low as LowExt};
    use LatencyClass::{Low, Varies};
    use TransmittedData::{AllRaw, PortionCollected, PortionCompressed};
    match kind {
        SchemeKind::Baseline => QualitativeProfile {
            latency: Low,
            transmitted: AllRaw,
            extensibility: High,
        },
        SchemeKind::Aggregation => QualitativeProfile {
            latency: Varies,
            transmitted: AllRaw,
            extensibility: High,
        },
        SchemeKind::AnomalyDriven => QualitativeProfile {
            latency: Low,
            transmitted: PortionCollected,
            extensibility: LowExt,
        },
        SchemeKind::CsBased => QualitativeProfile {
            latency: Low,
            transmitted: PortionCompressed,
            extensibility: LowExt,
        },
    }
}

/// The four schemes side by side.
pub fn qualitative_comparison() -> [(SchemeKind, QualitativeProfile); 4] {
    [
        SchemeKind::Baseline,
        SchemeKind::Aggregation,
        SchemeKind::AnomalyDriven,
        SchemeKind::CsBased,
    ]
    .map(|k| (k, qualitative_profile(k)))
}

/// Conditions worth surfacing next to a result. None of them invalidate the
/// numbers; they mark where a modelling assumption is being stretched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EvalFlags {
    /// The radio had no standby time left between cycles.
    pub saturated: bool,
    /// The computation energy is a caller estimate, not a calibrated figure.
    pub uncalibrated_compute: bool,
    /// The ADC bound was extrapolated outside its surveyed resolution range.
    pub extrapolated_adc: bool,
}

/// Everything [`evaluate`] knows about one sensor under one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeResult {
    pub kind: SchemeKind,
    pub sensor: String,
    pub f_s_hz: f64,
    pub energy: EnergyBreakdown,
    pub lifetime_days: f64,
    pub storage: StorageEstimate,
    pub qualitative: QualitativeProfile,
    pub flags: EvalFlags,
}

/// Samples that fit one radio payload: `floor(8 * payload / resolution)`.
pub fn max_samples_per_packet(
    sensor: &SensorSpec,
    radio: &RadioProfile,
) -> Result<u32, SchemeError> {
    let k = 8 * radio.max_payload_bytes / sensor.resolution_bits as u32;
    if k == 0 {
        return Err(SchemeError::SampleExceedsPayload {
            resolution_bits: sensor.resolution_bits,
            max_payload_bytes: radio.max_payload_bytes,
        });
    }
    Ok(k)
}

fn require_compute_energy(
    sensor: &SensorSpec,
    compute: &ComputeProfile,
) -> Result<f64, SchemeError> {
    compute
        .e_c_per_day_j
        .ok_or_else(|| SchemeError::MissingComputeEnergy {
            sensor: sensor.name.clone(),
        })
}

/// Evaluate one scheme for one sensor at sampling rate `f_s_hz`.
pub fn evaluate(
    catalog: &Catalog,
    sensor: &SensorSpec,
    scheme: &SchemeConfig,
    f_s_hz: f64,
    rate_check: RateCheck,
) -> Result<SchemeResult, SchemeError> {
    let out_of_range = !(f_s_hz >= sensor.f_min_hz && f_s_hz <= sensor.f_max_hz);
    if !(f_s_hz > 0.0) || (out_of_range && rate_check == RateCheck::Enforce) {
        return Err(SchemeError::RateOutOfRange {
            sensor: sensor.name.clone(),
            f_s_hz,
            f_min_hz: sensor.f_min_hz,
            f_max_hz: sensor.f_max_hz,
        });
    }

    // Sampling runs at f_s in every scheme: the event-driven detectors still
    // digitise continuously, they just keep the radio quiet.
    let sampling = sampling_energy_per_day(f_s_hz, sensor.resolution_bits);
    let radio = &catalog.radio;
    let mut flags = EvalFlags {
        extrapolated_adc: sampling.extrapolated,
        ..EvalFlags::default()
    };

    let (energy, storage) = match scheme {
        SchemeConfig::Baseline => {
            let tx = transmission_energy_per_day(f_s_hz, radio);
            flags.saturated = tx.saturated;
            (
                EnergyBreakdown::new(sampling.joules_per_day, tx.joules_per_day, 0.0, 0.0),
                yearly_storage(f_s_hz, sensor.resolution_bits),
            )
        }
        SchemeConfig::Aggregation { samples_per_packet } => {
            let k_max = max_samples_per_packet(sensor, radio)?;
            if *samples_per_packet == 0 || *samples_per_packet > k_max {
                return Err(SchemeError::InvalidAggregation {
                    samples_per_packet: *samples_per_packet,
                    max_samples_per_packet: k_max,
                });
            }
            let f_t = f_s_hz / *samples_per_packet as f64;
            let tx = transmission_energy_per_day(f_t, radio);
            flags.saturated = tx.saturated;
            (
                EnergyBreakdown::new(
                    sampling.joules_per_day,
                    tx.joules_per_day,
                    0.0,
                    catalog.buffer.energy_per_day_j,
                ),
                // Aggregation repackages the stream; every sample still
                // reaches the receiver, so storage matches the baseline.
                yearly_storage(f_s_hz, sensor.resolution_bits),
            )
        }
        SchemeConfig::AnomalyDriven { events, compute } => {
            events.validate()?;
            let e_c = require_compute_energy(sensor, compute)?;
            flags.uncalibrated_compute = !compute.calibrated;
            let tx = transmission_energy_per_day(f_s_hz, radio);
            flags.saturated = tx.saturated;
            (
                EnergyBreakdown::new(
                    sampling.joules_per_day,
                    events.duty_fraction() * tx.joules_per_day,
                    e_c,
                    0.0,
                ),
                event_storage(
                    events.active_seconds_per_year(),
                    f_s_hz,
                    sensor.resolution_bits,
                    1.0,
                ),
            )
        }
        SchemeConfig::CsBased {
            events,
            compute,
            cs,
            transmit_compressed,
        } => {
            events.validate()?;
            let e_c = require_compute_energy(sensor, compute)?;
            flags.uncalibrated_compute = !compute.calibrated;
            let tx = transmission_energy_per_day(f_s_hz, radio);
            flags.saturated = tx.saturated;
            // The radio charges for the raw event window by default: the
            // node samples at the Nyquist rate and the reference scheme
            // ships the window as captured, compressing only what it keeps.
            let mut e_t = events.duty_fraction() * tx.joules_per_day;
            if *transmit_compressed {
                e_t /= cs.alpha;
            }
            (
                EnergyBreakdown::new(sampling.joules_per_day, e_t, e_c, 0.0),
                event_storage(
                    events.active_seconds_per_year(),
                    f_s_hz,
                    sensor.resolution_bits,
                    cs.alpha,
                ),
            )
        }
    };

    let lifetime_days = battery_lifetime_days(energy.total(), &catalog.battery)?;
    Ok(SchemeResult {
        kind: scheme.kind(),
        sensor: sensor.name.clone(),
        f_s_hz,
        energy,
        lifetime_days,
        storage,
        qualitative: qualitative_profile(scheme.kind()),
        flags,
    })
}

/// What a savings ratio compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Energy,
    Storage,
}

/// How many times cheaper `alternative` is than `reference` on a metric.
pub fn savings_ratio(
    reference: &SchemeResult,
    alternative: &SchemeResult,
    metric: Metric,
) -> Result<f64, SchemeError> {
    let (num, den) = match metric {
        Metric::Energy => (reference.energy.total(), alternative.energy.total()),
        Metric::Storage => (
            reference.storage.bytes_per_year(),
            alternative.storage.bytes_per_year(),
        ),
    };
    if den == 0.0 {
        return Err(SchemeError::DivisionByZero);
    }
    Ok(num / den)
}

/// Event-driven scheme shape for the sweeps: plain anomaly detection or its
/// compressive variant.
#[derive(Debug, Clone, PartialEq)]
pub enum EventScheme {
    AnomalyDriven,
    CsBased {
        cs: CsConfig,
        transmit_compressed: bool,
    },
}

impl EventScheme {
    fn config(&self, events: EventProfile, compute: &ComputeProfile) -> SchemeConfig {
        match self {
            EventScheme::AnomalyDriven => SchemeConfig::AnomalyDriven {
                events,
                compute: compute.clone(),
            },
            EventScheme::CsBased {
                cs,
                transmit_compressed,
            } => SchemeConfig::CsBased {
                events,
                compute: compute.clone(),
                cs: *cs,
                transmit_compressed: *transmit_compressed,
            },
        }
    }
}

/// One row of an event-rate sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrhythmiaPoint {
    pub events_per_day: u32,
    pub result: SchemeResult,
}

/// Evaluate an event-driven scheme across a grid of daily event counts
/// (`from..=to` in steps of `step`, inclusive). Each event ships a
/// one-minute recording strip, so the energy column is affine in the event
/// count.
#[allow(clippy::too_many_arguments)] // a sweep is a grid of scalars
pub fn sweep_arrhythmia(
    catalog: &Catalog,
    sensor: &SensorSpec,
    scheme: &EventScheme,
    compute: &ComputeProfile,
    f_s_hz: f64,
    from: u32,
    to: u32,
    step: u32,
) -> Result<Vec<ArrhythmiaPoint>, SchemeError> {
    if step == 0 {
        return Err(SchemeError::InvalidSweep {
            reason: "step must be >= 1".to_string(),
        });
    }
    if from > to {
        return Err(SchemeError::InvalidSweep {
            reason: format!("empty grid: from {from} > to {to}"),
        });
    }
    let mut points = Vec::new();
    let mut n = from;
    loop {
        let config = scheme.config(EventProfile::arrhythmia(n as f64), compute);
        let result = evaluate(catalog, sensor, &config, f_s_hz, RateCheck::Enforce)?;
        points.push(ArrhythmiaPoint {
            events_per_day: n,
            result,
        });
        match n.checked_add(step) {
            Some(next) if next <= to => n = next,
            _ => break,
        }
    }
    Ok(points)
}

/// One row of a compression-ratio sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionPoint {
    pub alpha: f64,
    pub result: SchemeResult,
    pub distortion: DistortionStats,
}

/// Signal model for the distortion side of a compression sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionSweepParams {
    /// Window length in samples.
    pub n: usize,
    /// Sparsity of the trial vectors.
    pub sparsity: usize,
    /// Distortion trials per ratio.
    pub trials: usize,
    pub seed: u64,
    /// Orthonormalise a square (alpha = 1) projection so the no-compression
    /// point reports zero distortion rather than Gaussian noise.
    pub orthonormalize_square: bool,
}

impl Default for CompressionSweepParams {
    fn default() -> Self {
        CompressionSweepParams {
            n: 256,
            sparsity: 8,
            trials: 200,
            seed: 7,
            orthonormalize_square: true,
        }
    }
}

/// Evaluate the CS-based scheme across compression ratios, pairing each
/// ratio's energy/storage result with its inner-product distortion.
#[allow(clippy::too_many_arguments)]
pub fn sweep_compression(
    catalog: &Catalog,
    sensor: &SensorSpec,
    events: &EventProfile,
    compute: &ComputeProfile,
    f_s_hz: f64,
    alphas: &[f64],
    params: &CompressionSweepParams,
    transmit_compressed: bool,
) -> Result<Vec<CompressionPoint>, SchemeError> {
    if alphas.is_empty() {
        return Err(SchemeError::InvalidSweep {
            reason: "no compression ratios given".to_string(),
        });
    }
    alphas
        .iter()
        .map(|&alpha| {
            let cs = CsConfig::from_alpha(params.n, alpha, params.seed)?;
            let config = SchemeConfig::CsBased {
                events: *events,
                compute: compute.clone(),
                cs,
                transmit_compressed,
            };
            let result = evaluate(catalog, sensor, &config, f_s_hz, RateCheck::Enforce)?;
            let distortion = if cs.m == cs.n && params.orthonormalize_square {
                let phi = cs::make_projection(&cs).orthonormalized()?;
                cs::inner_product_distortion_for(&phi, cs.seed, params.trials, params.sparsity)
            } else {
                cs::inner_product_distortion(&cs, params.trials, params.sparsity)
            };
            Ok(CompressionPoint {
                alpha,
                result,
                distortion,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{default_catalog, ComputeLabel};

    fn close(actual: f64, expected: f64, rel: f64) {
        let diff = (actual - expected).abs();
        assert!(
            diff <= rel * expected.abs(),
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn baseline_heart_rate_at_both_ends() {
        let cat = default_catalog();
        let hr = cat.sensor("HeartRate").unwrap();
        let lo = evaluate(&cat, hr, &SchemeConfig::Baseline, 2.0, RateCheck::Enforce).unwrap();
        close(lo.energy.total(), 13.917918, 1e-6);
        close(lo.lifetime_days, 194.0, 1e-3);
        let hi = evaluate(&cat, hr, &SchemeConfig::Baseline, 8.0, RateCheck::Enforce).unwrap();
        close(hi.energy.total(), 55.023670, 1e-6);
        assert!(!hi.flags.saturated);
        assert_eq!(hi.energy.computation(), 0.0);
        assert_eq!(hi.energy.buffering(), 0.0);
    }

    #[test]
    fn baseline_high_rate_saturates_the_radio() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let r = evaluate(&cat, eeg, &SchemeConfig::Baseline, 1000.0, RateCheck::Enforce).unwrap();
        assert!(r.flags.saturated);
        close(r.energy.total(), 6851.5255296, 1e-9);
        close(r.lifetime_days, 0.394, 1e-3);
    }

    #[test]
    fn rate_range_is_enforced_unless_overridden() {
        let cat = default_catalog();
        let hr = cat.sensor("HeartRate").unwrap();
        assert!(matches!(
            evaluate(&cat, hr, &SchemeConfig::Baseline, 20.0, RateCheck::Enforce),
            Err(SchemeError::RateOutOfRange { .. })
        ));
        let r = evaluate(&cat, hr, &SchemeConfig::Baseline, 20.0, RateCheck::Override).unwrap();
        assert!(r.energy.total() > 0.0);
        // A non-positive rate is invalid even with the override.
        assert!(evaluate(&cat, hr, &SchemeConfig::Baseline, 0.0, RateCheck::Override).is_err());
    }

    #[test]
    fn packet_capacity_per_sensor() {
        let cat = default_catalog();
        let got: Vec<u32> = cat
            .sensors
            .iter()
            .map(|s| max_samples_per_packet(s, &cat.radio).unwrap())
            .collect();
        assert_eq!(got, vec![16, 10, 20, 20, 10, 13, 13, 13]);
    }

    #[test]
    fn aggregation_heart_rate_matches_hand_computation() {
        let cat = default_catalog();
        let hr = cat.sensor("HeartRate").unwrap();
        let scheme = SchemeConfig::Aggregation {
            samples_per_packet: 16,
        };
        let lo = evaluate(&cat, hr, &scheme, 2.0, RateCheck::Enforce).unwrap();
        // 0.125 Hz cycles plus the 0.43 J/day buffer.
        close(lo.energy.total(), 1.5023705, 1e-6);
        assert_eq!(lo.energy.buffering(), 0.43);
        let hi = evaluate(&cat, hr, &scheme, 8.0, RateCheck::Enforce).unwrap();
        close(hi.energy.total(), 4.0714820, 1e-6);
        close(hi.lifetime_days, 663.149, 1e-5);
    }

    #[test]
    fn aggregation_does_not_change_storage() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let base =
            evaluate(&cat, eeg, &SchemeConfig::Baseline, 250.0, RateCheck::Enforce).unwrap();
        let agg = evaluate(
            &cat,
            eeg,
            &SchemeConfig::Aggregation {
                samples_per_packet: 13,
            },
            250.0,
            RateCheck::Enforce,
        )
        .unwrap();
        assert_eq!(
            base.storage.bytes_per_year(),
            agg.storage.bytes_per_year()
        );
    }

    #[test]
    fn aggregation_rejects_out_of_range_packing() {
        let cat = default_catalog();
        let hr = cat.sensor("HeartRate").unwrap();
        for k in [0u32, 17] {
            assert!(matches!(
                evaluate(
                    &cat,
                    hr,
                    &SchemeConfig::Aggregation {
                        samples_per_packet: k
                    },
                    4.0,
                    RateCheck::Enforce,
                ),
                Err(SchemeError::InvalidAggregation { .. })
            ));
        }
    }

    #[test]
    fn seizure_duty_fraction() {
        let duty = EventProfile::seizure().duty_fraction();
        assert!((duty - 4.134e-4).abs() < 1e-7, "duty {duty}");
    }

    #[test]
    fn anomaly_eeg_reproduces_the_detector_budget_split() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let scheme = SchemeConfig::AnomalyDriven {
            events: EventProfile::seizure(),
            compute: cat
                .compute_profile("Eeg", ComputeLabel::TraditionalAnomaly)
                .unwrap(),
        };
        let lo = evaluate(&cat, eeg, &scheme, 100.0, RateCheck::Enforce).unwrap();
        close(lo.energy.total(), 36.273879, 1e-6);
        close(lo.energy.transmission(), 0.2833257, 1e-6);
        assert_eq!(lo.energy.computation(), 35.99);
        assert!(!lo.flags.uncalibrated_compute);
        let hi = evaluate(&cat, eeg, &scheme, 1000.0, RateCheck::Enforce).unwrap();
        close(hi.energy.total(), 38.828126, 1e-6);
        close(hi.lifetime_days, 69.537, 1e-4);
    }

    #[test]
    fn cs_eeg_cuts_the_detector_cost() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let scheme = SchemeConfig::CsBased {
            events: EventProfile::seizure(),
            compute: cat.compute_profile("Eeg", ComputeLabel::CsBased).unwrap(),
            cs: CsConfig::from_alpha(256, 8.0, 7).unwrap(),
            transmit_compressed: false,
        };
        let lo = evaluate(&cat, eeg, &scheme, 100.0, RateCheck::Enforce).unwrap();
        close(lo.energy.total(), 6.933879, 1e-6);
        close(lo.lifetime_days, 389.392, 1e-5);
        let hi = evaluate(&cat, eeg, &scheme, 1000.0, RateCheck::Enforce).unwrap();
        close(hi.energy.total(), 9.488126, 1e-6);
        // Storage is the anomaly excerpt divided by the ratio.
        close(hi.storage.mib_per_year(), 2.3313403, 1e-6);
    }

    #[test]
    fn transmit_compressed_scales_only_the_radio_term() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let compute = cat.compute_profile("Eeg", ComputeLabel::CsBased).unwrap();
        let cs = CsConfig::from_alpha(256, 8.0, 7).unwrap();
        let raw = SchemeConfig::CsBased {
            events: EventProfile::seizure(),
            compute: compute.clone(),
            cs,
            transmit_compressed: false,
        };
        let packed = SchemeConfig::CsBased {
            events: EventProfile::seizure(),
            compute,
            cs,
            transmit_compressed: true,
        };
        let a = evaluate(&cat, eeg, &raw, 1000.0, RateCheck::Enforce).unwrap();
        let b = evaluate(&cat, eeg, &packed, 1000.0, RateCheck::Enforce).unwrap();
        close(b.energy.transmission() * 8.0, a.energy.transmission(), 1e-12);
        assert_eq!(a.energy.computation(), b.energy.computation());
        assert_eq!(a.storage, b.storage);
    }

    #[test]
    fn missing_compute_energy_is_an_error_and_estimates_are_flagged() {
        let cat = default_catalog();
        let ecg = cat.sensor("Ecg").unwrap();
        let shipped = cat
            .compute_profile("Ecg", ComputeLabel::TraditionalAnomaly)
            .unwrap();
        let scheme = SchemeConfig::AnomalyDriven {
            events: EventProfile::arrhythmia(8.0),
            compute: shipped,
        };
        assert!(matches!(
            evaluate(&cat, ecg, &scheme, 250.0, RateCheck::Enforce),
            Err(SchemeError::MissingComputeEnergy { .. })
        ));

        let estimated = SchemeConfig::AnomalyDriven {
            events: EventProfile::arrhythmia(8.0),
            compute: ComputeProfile::estimate(ComputeLabel::TraditionalAnomaly, 20.0),
        };
        let r = evaluate(&cat, ecg, &estimated, 250.0, RateCheck::Enforce).unwrap();
        assert!(r.flags.uncalibrated_compute);
        assert_eq!(r.energy.computation(), 20.0);
    }

    #[test]
    fn savings_ratios_match_the_headline_numbers() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let base =
            evaluate(&cat, eeg, &SchemeConfig::Baseline, 1000.0, RateCheck::Enforce).unwrap();
        let cs = evaluate(
            &cat,
            eeg,
            &SchemeConfig::CsBased {
                events: EventProfile::seizure(),
                compute: cat.compute_profile("Eeg", ComputeLabel::CsBased).unwrap(),
                cs: CsConfig::from_alpha(256, 8.0, 7).unwrap(),
                transmit_compressed: false,
            },
            1000.0,
            RateCheck::Enforce,
        )
        .unwrap();
        let energy = savings_ratio(&base, &cs, Metric::Energy).unwrap();
        close(energy, 722.116, 1e-5);
        let storage = savings_ratio(&base, &cs, Metric::Storage).unwrap();
        close(storage, 19350.5, 1e-5);
        // A scheme compared against itself saves nothing.
        assert_eq!(savings_ratio(&base, &base, Metric::Energy).unwrap(), 1.0);
    }

    #[test]
    fn arrhythmia_sweep_energy_is_affine_in_the_event_count() {
        let cat = default_catalog();
        let ecg = cat.sensor("Ecg").unwrap();
        let compute = ComputeProfile::estimate(ComputeLabel::TraditionalAnomaly, 0.0);
        let points = sweep_arrhythmia(
            &cat,
            ecg,
            &EventScheme::AnomalyDriven,
            &compute,
            1000.0,
            0,
            64,
            8,
        )
        .unwrap();
        assert_eq!(points.len(), 9);
        assert_eq!(points[0].events_per_day, 0);
        assert_eq!(points.last().unwrap().events_per_day, 64);
        // Zero events: only sampling (e_c is zero here).
        close(points[0].result.energy.total(), 5.5296e-3, 1e-9);
        // One strip is one minute of saturated cycles at 1000 Hz.
        let e_strip = 60.0 * 1000.0 * (2.6e-3 * 30.5e-3);
        for pair in points.windows(2) {
            let de = pair[1].result.energy.total() - pair[0].result.energy.total();
            close(de, 8.0 * e_strip, 1e-9);
        }
    }

    #[test]
    fn arrhythmia_sweep_validates_the_grid() {
        let cat = default_catalog();
        let ecg = cat.sensor("Ecg").unwrap();
        let compute = ComputeProfile::estimate(ComputeLabel::TraditionalAnomaly, 0.0);
        assert!(matches!(
            sweep_arrhythmia(
                &cat,
                ecg,
                &EventScheme::AnomalyDriven,
                &compute,
                1000.0,
                10,
                5,
                1
            ),
            Err(SchemeError::InvalidSweep { .. })
        ));
        assert!(matches!(
            sweep_arrhythmia(
                &cat,
                ecg,
                &EventScheme::AnomalyDriven,
                &compute,
                1000.0,
                0,
                5,
                0
            ),
            Err(SchemeError::InvalidSweep { .. })
        ));
    }

    #[test]
    fn compression_sweep_scales_storage_and_reports_distortion() {
        let cat = default_catalog();
        let eeg = cat.sensor("Eeg").unwrap();
        let compute = cat.compute_profile("Eeg", ComputeLabel::CsBased).unwrap();
        let params = CompressionSweepParams {
            trials: 60,
            ..CompressionSweepParams::default()
        };
        let points = sweep_compression(
            &cat,
            eeg,
            &EventProfile::seizure(),
            &compute,
            100.0,
            &[1.0, 2.0, 4.0, 8.0],
            &params,
            false,
        )
        .unwrap();
        assert_eq!(points.len(), 4);
        let raw_bytes = points[0].result.storage.bytes_per_year();
        for p in &points {
            close(p.result.storage.bytes_per_year() * p.alpha, raw_bytes, 1e-12);
        }
        // The alpha = 1 point uses an orthonormal square projection: the
        // change of basis is exact, so its distortion is numerical noise.
        assert!(points[0].distortion.p95 < 1e-10);
        assert!(points[3].distortion.mean > points[0].distortion.mean);
    }

    #[test]
    fn qualitative_table_matches_the_scheme_story() {
        let rows = qualitative_comparison();
        assert_eq!(rows[0].1.latency, LatencyClass::Low);
        assert_eq!(rows[1].1.latency, LatencyClass::Varies);
        assert_eq!(rows[1].1.transmitted, TransmittedData::AllRaw);
        assert_eq!(rows[2].1.transmitted, TransmittedData::PortionCollected);
        assert_eq!(rows[3].1.transmitted, TransmittedData::PortionCompressed);
        assert_eq!(rows[0].1.extensibility, Extensibility::High);
        assert_eq!(rows[3].1.extensibility, Extensibility::Low);
    }
}
