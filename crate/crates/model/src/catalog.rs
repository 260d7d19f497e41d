//! Device catalog: the sensor, radio, battery, and buffer parameters that
//! every model in this crate consumes.
//!
//! [`Catalog::default`] returns the built-in parameter set for a body-worn
//! monitoring network of eight biomedical sensors. [`load_catalog`] merges a
//! TOML file over those defaults so a config only has to name the fields it
//! changes. All field names carry their unit as a suffix (`_s`, `_w`, `_hz`,
//! `_j`) so a config file is unambiguous without consulting docs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version tag expected at the top of a config file. Bumped on any breaking
/// change to the schema; files without it are rejected rather than guessed at.
pub const SCHEMA_VERSION: u32 = 1;

/// Application-level throughput ceiling of the low-energy radio link in
/// bits per second. Every catalog sensor must fit under it at its maximum
/// sampling rate, otherwise a single link cannot carry the stream at all.
pub const RADIO_APP_THROUGHPUT_BITS_PER_S: f64 = 270_000.0;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("could not read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("could not parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid catalog field `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Broad sampling-rate class of a sensor, used when summarising results
/// across the catalog ("low-rate sensors save up to …").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateClass {
    LowSampleRate,
    HighSampleRate,
}

/// One biomedical sensor: its ADC resolution and the sampling-rate range it
/// is operated over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorSpec {
    pub name: String,
    pub resolution_bits: u8,
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub rate_class: RateClass,
}

impl SensorSpec {
    /// Raw bit rate produced at the maximum sampling rate. This is the load
    /// the radio link sees when every sample is shipped as collected.
    pub fn max_transmission_rate_bits_per_s(&self) -> f64 {
        self.resolution_bits as f64 * self.f_max_hz
    }
}

/// Shared radio characteristics of the body-worn nodes.
///
/// `v_supply_v` is carried as metadata for datasheet traceability; the energy
/// formulas work directly in watts and never multiply by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadioProfile {
    pub t_send_s: f64,
    pub p_send_w: f64,
    pub p_standby_w: f64,
    pub v_supply_v: f64,
    pub max_payload_bytes: u32,
}

/// Energy reservoir of a node, in joules. Lifetime estimates divide this by
/// the modeled daily consumption.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryModel {
    pub capacity_j: f64,
}

/// Sample buffer used by the aggregation scheme: a small memory that holds
/// `cells` samples between transmissions, with a fixed daily energy cost for
/// keeping it powered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BufferModel {
    pub cells: u32,
    pub energy_per_day_j: f64,
}

/// Which on-node processing pipeline a computation figure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComputeLabel {
    /// Event detection on the raw sample stream.
    TraditionalAnomaly,
    /// Event detection on compressively sampled data.
    CsBased,
    /// No on-node computation.
    None,
}

/// Daily computation energy of an on-node processing pipeline.
///
/// `e_c_per_day_j` is `None` when no figure is known for the pipeline; the
/// schemes refuse to evaluate such a profile until the caller supplies an
/// explicit value. `calibrated` records whether the figure is a measured
/// reference number (as shipped for the EEG pipelines) or a caller-provided
/// estimate — estimates are evaluated but flagged in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeProfile {
    pub label: ComputeLabel,
    pub e_c_per_day_j: Option<f64>,
    pub calibrated: bool,
}

impl ComputeProfile {
    /// Profile for a scheme that does no on-node processing.
    pub fn none() -> Self {
        ComputeProfile {
            label: ComputeLabel::None,
            e_c_per_day_j: Some(0.0),
            calibrated: true,
        }
    }

    /// Caller-supplied computation figure. Marked uncalibrated so reports
    /// flag that the number did not come from a measured reference.
    pub fn estimate(label: ComputeLabel, e_c_per_day_j: f64) -> Self {
        ComputeProfile {
            label,
            e_c_per_day_j: Some(e_c_per_day_j),
            calibrated: false,
        }
    }
}

/// Computation calibration for one sensor, as stored in the catalog and in
/// config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeEntry {
    pub sensor: String,
    pub label: ComputeLabel,
    pub e_c_per_day_j: Option<f64>,
    pub calibrated: bool,
}

impl ComputeEntry {
    pub fn profile(&self) -> ComputeProfile {
        ComputeProfile {
            label: self.label,
            e_c_per_day_j: self.e_c_per_day_j,
            calibrated: self.calibrated,
        }
    }
}

/// The full parameter set the models run against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub radio: RadioProfile,
    pub battery: BatteryModel,
    pub buffer: BufferModel,
    pub sensors: Vec<SensorSpec>,
    pub compute: Vec<ComputeEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        default_catalog()
    }
}

/// Sensor names are matched ignoring case and `-`/`_`/space separators, so
/// `--sensor heart-rate` and `--sensor HeartRate` hit the same entry.
fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

impl Catalog {
    /// Look up a sensor by name (case- and separator-insensitive).
    pub fn sensor(&self, name: &str) -> Option<&SensorSpec> {
        let want = normalize_name(name);
        self.sensors.iter().find(|s| normalize_name(&s.name) == want)
    }

    pub fn sensor_names(&self) -> Vec<&str> {
        self.sensors.iter().map(|s| s.name.as_str()).collect()
    }

    /// Calibrated (or shipped-uncalibrated) computation profile for a sensor
    /// and pipeline, if the catalog has one.
    pub fn compute_profile(&self, sensor: &str, label: ComputeLabel) -> Option<ComputeProfile> {
        let want = normalize_name(sensor);
        self.compute
            .iter()
            .find(|e| e.label == label && normalize_name(&e.sensor) == want)
            .map(ComputeEntry::profile)
    }

    /// Serialize the catalog in the same TOML schema that [`load_catalog`]
    /// reads, with every field spelled out.
    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("catalog serializes to TOML")
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version",
                format!(
                    "expected {SCHEMA_VERSION}, got {} (this build only reads schema {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        let r = &self.radio;
        if !(r.t_send_s > 0.0) {
            return Err(invalid("radio.t_send_s", "must be > 0"));
        }
        if !(r.p_send_w > 0.0) {
            return Err(invalid("radio.p_send_w", "must be > 0"));
        }
        if !(r.p_standby_w >= 0.0) {
            return Err(invalid("radio.p_standby_w", "must be >= 0"));
        }
        if !(r.v_supply_v > 0.0) {
            return Err(invalid("radio.v_supply_v", "must be > 0"));
        }
        if r.max_payload_bytes == 0 {
            return Err(invalid("radio.max_payload_bytes", "must be >= 1"));
        }
        if !(self.battery.capacity_j > 0.0) {
            return Err(invalid("battery.capacity_j", "must be > 0"));
        }
        if self.buffer.cells == 0 {
            return Err(invalid("buffer.cells", "must be >= 1"));
        }
        if !(self.buffer.energy_per_day_j >= 0.0) {
            return Err(invalid("buffer.energy_per_day_j", "must be >= 0"));
        }
        if self.sensors.is_empty() {
            return Err(invalid("sensors", "catalog must list at least one sensor"));
        }
        let mut seen = Vec::new();
        for s in &self.sensors {
            let field = format!("sensors.{}", s.name);
            let norm = normalize_name(&s.name);
            if norm.is_empty() {
                return Err(invalid("sensors", "sensor name must not be empty"));
            }
            if seen.contains(&norm) {
                return Err(invalid(&field, "duplicate sensor name"));
            }
            seen.push(norm);
            if !(1..=32).contains(&s.resolution_bits) {
                return Err(invalid(&field, "resolution_bits must be in 1..=32"));
            }
            if !(s.f_min_hz > 0.0 && s.f_min_hz <= s.f_max_hz) {
                return Err(invalid(&field, "need 0 < f_min_hz <= f_max_hz"));
            }
        }
        for e in &self.compute {
            let field = format!("compute.{}", e.sensor);
            if self.sensor(&e.sensor).is_none() {
                return Err(invalid(&field, "compute entry names an unknown sensor"));
            }
            if let Some(v) = e.e_c_per_day_j {
                if !(v >= 0.0) {
                    return Err(invalid(&field, "e_c_per_day_j must be >= 0"));
                }
            } else if e.calibrated {
                return Err(invalid(
                    &field,
                    "a calibrated entry must carry e_c_per_day_j",
                ));
            }
        }
        Ok(())
    }
}

/// The built-in catalog: eight sensors sharing one radio, battery, and
/// aggregation buffer, plus measured computation figures for the EEG
/// detection pipelines. The ECG pipelines are listed uncalibrated — any
/// evaluation of them must be given an explicit computation energy.
pub fn default_catalog() -> Catalog {
    let sensor = |name: &str, bits: u8, f_min: f64, f_max: f64, class: RateClass| SensorSpec {
        name: name.to_string(),
        resolution_bits: bits,
        f_min_hz: f_min,
        f_max_hz: f_max,
        rate_class: class,
    };
    use RateClass::{HighSampleRate, LowSampleRate};
    let compute = |sensor: &str, label: ComputeLabel, e_c: Option<f64>| ComputeEntry {
        sensor: sensor.to_string(),
        label,
        e_c_per_day_j: e_c,
        calibrated: e_c.is_some(),
    };
    Catalog {
        schema_version: SCHEMA_VERSION,
        radio: RadioProfile {
            t_send_s: 2.6e-3,
            p_send_w: 30.5e-3,
            p_standby_w: 2.5e-6,
            v_supply_v: 2.5,
            max_payload_bytes: 20,
        },
        battery: BatteryModel { capacity_j: 2700.0 },
        buffer: BufferModel {
            cells: 160,
            energy_per_day_j: 0.43,
        },
        sensors: vec![
            sensor("HeartRate", 10, 2.0, 8.0, LowSampleRate),
            sensor("BloodPressure", 16, 0.001, 100.0, LowSampleRate),
            sensor("OxygenSaturation", 8, 0.001, 2.0, LowSampleRate),
            sensor("Temperature", 8, 0.001, 1.0, LowSampleRate),
            sensor("BloodSugar", 16, 0.001, 100.0, LowSampleRate),
            sensor("Accelerometer", 12, 2.0, 400.0, LowSampleRate),
            sensor("Ecg", 12, 100.0, 1000.0, HighSampleRate),
            sensor("Eeg", 12, 100.0, 1000.0, HighSampleRate),
        ],
        compute: vec![
            compute("Eeg", ComputeLabel::TraditionalAnomaly, Some(35.99)),
            compute("Eeg", ComputeLabel::CsBased, Some(6.65)),
            compute("Ecg", ComputeLabel::TraditionalAnomaly, None),
            compute("Ecg", ComputeLabel::CsBased, None),
        ],
    }
}

// ---- config file loading -------------------------------------------------
//
// A config file is a sparse overlay: only the fields it names change, the
// rest come from the defaults. Sensors and compute entries merge by name, so
// a file can retune one sensor or add a new one without restating the other
// seven.

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    radio: Option<RawRadio>,
    battery: Option<RawBattery>,
    buffer: Option<RawBuffer>,
    #[serde(default)]
    sensors: Vec<RawSensor>,
    #[serde(default)]
    compute: Vec<RawCompute>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRadio {
    t_send_s: Option<f64>,
    p_send_w: Option<f64>,
    p_standby_w: Option<f64>,
    v_supply_v: Option<f64>,
    max_payload_bytes: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBattery {
    capacity_j: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBuffer {
    cells: Option<u32>,
    energy_per_day_j: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSensor {
    name: String,
    resolution_bits: Option<u8>,
    f_min_hz: Option<f64>,
    f_max_hz: Option<f64>,
    rate_class: Option<RateClass>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompute {
    sensor: String,
    label: ComputeLabel,
    e_c_per_day_j: Option<f64>,
    calibrated: Option<bool>,
}

/// Read a TOML config file and merge it over [`default_catalog`].
pub fn load_catalog(path: &Path) -> Result<Catalog, CatalogError> {
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

/// Same as [`load_catalog`] but from an in-memory string.
pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let raw: RawConfig = toml::from_str(text)?;
    let mut cat = default_catalog();
    cat.schema_version = raw.schema_version;

    if let Some(r) = raw.radio {
        apply(&mut cat.radio.t_send_s, r.t_send_s);
        apply(&mut cat.radio.p_send_w, r.p_send_w);
        apply(&mut cat.radio.p_standby_w, r.p_standby_w);
        apply(&mut cat.radio.v_supply_v, r.v_supply_v);
        apply(&mut cat.radio.max_payload_bytes, r.max_payload_bytes);
    }
    if let Some(b) = raw.battery {
        apply(&mut cat.battery.capacity_j, b.capacity_j);
    }
    if let Some(b) = raw.buffer {
        apply(&mut cat.buffer.cells, b.cells);
        apply(&mut cat.buffer.energy_per_day_j, b.energy_per_day_j);
    }

    for rs in raw.sensors {
        let norm = normalize_name(&rs.name);
        if let Some(existing) = cat
            .sensors
            .iter_mut()
            .find(|s| normalize_name(&s.name) == norm)
        {
            apply(&mut existing.resolution_bits, rs.resolution_bits);
            apply(&mut existing.f_min_hz, rs.f_min_hz);
            apply(&mut existing.f_max_hz, rs.f_max_hz);
            apply(&mut existing.rate_class, rs.rate_class);
        } else {
            // A brand-new sensor has no defaults to inherit: the numeric
            // fields must all be present.
            let field = format!("sensors.{}", rs.name);
            let spec = SensorSpec {
                name: rs.name.clone(),
                resolution_bits: rs.resolution_bits.ok_or_else(|| {
                    invalid(&field, "new sensor needs resolution_bits")
                })?,
                f_min_hz: rs
                    .f_min_hz
                    .ok_or_else(|| invalid(&field, "new sensor needs f_min_hz"))?,
                f_max_hz: rs
                    .f_max_hz
                    .ok_or_else(|| invalid(&field, "new sensor needs f_max_hz"))?,
                rate_class: rs.rate_class.unwrap_or(RateClass::LowSampleRate),
            };
            cat.sensors.push(spec);
        }
    }

    for rc in raw.compute {
        let norm = normalize_name(&rc.sensor);
        if let Some(existing) = cat
            .compute
            .iter_mut()
            .find(|e| e.label == rc.label && normalize_name(&e.sensor) == norm)
        {
            if rc.e_c_per_day_j.is_some() {
                existing.e_c_per_day_j = rc.e_c_per_day_j;
            }
            apply(&mut existing.calibrated, rc.calibrated);
        } else {
            cat.compute.push(ComputeEntry {
                sensor: rc.sensor,
                label: rc.label,
                e_c_per_day_j: rc.e_c_per_day_j,
                calibrated: rc.calibrated.unwrap_or(false),
            });
        }
    }

    cat.validate()?;
    Ok(cat)
}

fn apply<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
