//! Daily energy models for a body-worn sensor node.
//!
//! A node spends energy on three things: digitising the signal (sampling),
//! shipping packets over the low-energy radio (transmission), and any
//! on-node processing (computation). This module models the first two from
//! first principles and provides the bookkeeping ([`EnergyBreakdown`],
//! [`battery_lifetime_days`]) that turns daily totals into lifetimes.
//!
//! All functions are pure and all quantities are in SI units: joules, watts,
//! seconds, hertz.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{BatteryModel, RadioProfile};

pub const SECONDS_PER_DAY: f64 = 86_400.0;

/// Quantization noise floor of an ideal converter, in dB.
const ENOB_OFFSET_DB: f64 = 1.76;
/// dB of SNR gained per effective bit.
const ENOB_SLOPE_DB_PER_BIT: f64 = 6.02;

/// Resolution range over which the per-conversion energy bound tracks
/// published converter surveys. Outside it the same formula is returned but
/// callers are told they are extrapolating.
const ADC_CALIBRATED_BITS: std::ops::RangeInclusive<u8> = 8..=16;

#[derive(Debug, Error)]
pub enum EnergyError {
    #[error(
        "SNR of {snr_db} dB is at or below the {ENOB_OFFSET_DB} dB quantization floor, \
         so no effective resolution can be attributed to the converter"
    )]
    SnrBelowQuantizationFloor { snr_db: f64 },
    #[error("battery lifetime is undefined for a non-positive daily energy ({e_total_j_per_day} J/day)")]
    NonPositiveDailyEnergy { e_total_j_per_day: f64 },
}

/// Effective number of bits achieved by a converter with the given
/// signal-to-noise ratio: `(SNR_dB - 1.76) / 6.02`.
pub fn enob_from_snr_db(snr_db: f64) -> Result<f64, EnergyError> {
    if snr_db <= ENOB_OFFSET_DB {
        return Err(EnergyError::SnrBelowQuantizationFloor { snr_db });
    }
    Ok((snr_db - ENOB_OFFSET_DB) / ENOB_SLOPE_DB_PER_BIT)
}

/// Per-conversion energy bound for an ADC, with a note when the resolution
/// lies outside the surveyed range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdcEnergy {
    pub joules_per_sample: f64,
    pub extrapolated: bool,
}

/// Upper bound on the energy of one conversion at `resolution_bits` of
/// nominal resolution: `4^(N-9)` picojoules.
///
/// The bound comes from an empirical survey of medium-resolution converters,
/// combined with the fact that a converter's effective resolution is at
/// least one bit below its nominal one. For resolutions outside 8..=16 bits
/// the same curve is extrapolated and flagged.
pub fn adc_energy_bound(resolution_bits: u8) -> AdcEnergy {
    let exponent = resolution_bits as i32 - 9;
    AdcEnergy {
        joules_per_sample: 4f64.powi(exponent) * 1e-12,
        extrapolated: !ADC_CALIBRATED_BITS.contains(&resolution_bits),
    }
}

/// Daily sampling energy, with the extrapolation note carried through from
/// the converter bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingEnergy {
    pub joules_per_day: f64,
    pub extrapolated: bool,
}

/// Energy spent digitising one day of signal at `f_s_hz`:
/// samples per day times the per-conversion bound.
pub fn sampling_energy_per_day(f_s_hz: f64, resolution_bits: u8) -> SamplingEnergy {
    assert!(f_s_hz > 0.0, "sampling rate must be positive, got {f_s_hz}");
    let adc = adc_energy_bound(resolution_bits);
    SamplingEnergy {
        joules_per_day: f_s_hz * SECONDS_PER_DAY * adc.joules_per_sample,
        extrapolated: adc.extrapolated,
    }
}

/// Energy of one transmission cycle, with a note when the cycle is saturated
/// (no standby time remains between sends).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketEnergy {
    pub joules: f64,
    pub saturated: bool,
}

/// Energy of one send/standby cycle of the radio at transmission rate
/// `f_t_hz`.
///
/// A cycle lasts `1/f_t`: the radio transmits for `t_send` and idles in
/// standby for the remainder. Once `1/f_t <= t_send` there is no remainder —
/// the radio is transmitting back-to-back — so the standby term clamps to
/// zero, the cycle energy bottoms out at exactly `t_send * p_send`, and the
/// result is flagged saturated.
pub fn per_packet_energy(f_t_hz: f64, radio: &RadioProfile) -> PacketEnergy {
    assert!(f_t_hz > 0.0, "transmission rate must be positive, got {f_t_hz}");
    let period_s = 1.0 / f_t_hz;
    let standby_s = (period_s - radio.t_send_s).max(0.0);
    PacketEnergy {
        joules: radio.t_send_s * radio.p_send_w + standby_s * radio.p_standby_w,
        saturated: period_s <= radio.t_send_s,
    }
}

/// Daily transmission energy at a fixed cycle rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransmissionEnergy {
    pub joules_per_day: f64,
    pub saturated: bool,
}

/// Energy spent on transmission over one day at `f_t_hz` cycles per second:
/// cycles per day times the per-cycle energy.
pub fn transmission_energy_per_day(f_t_hz: f64, radio: &RadioProfile) -> TransmissionEnergy {
    let packet = per_packet_energy(f_t_hz, radio);
    TransmissionEnergy {
        joules_per_day: packet.joules * f_t_hz * SECONDS_PER_DAY,
        saturated: packet.saturated,
    }
}

/// Days a battery lasts while draining `e_total_j_per_day` every day.
pub fn battery_lifetime_days(
    e_total_j_per_day: f64,
    battery: &BatteryModel,
) -> Result<f64, EnergyError> {
    if !(e_total_j_per_day > 0.0) {
        return Err(EnergyError::NonPositiveDailyEnergy { e_total_j_per_day });
    }
    Ok(battery.capacity_j / e_total_j_per_day)
}

/// Daily energy of a node split into its sources. The total is fixed at
/// construction as the exact floating-point sum of the four components, so
/// the decomposition always adds up bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    e_s_j_per_day: f64,
    e_t_j_per_day: f64,
    e_c_j_per_day: f64,
    e_buf_j_per_day: f64,
    e_total_j_per_day: f64,
}

impl EnergyBreakdown {
    pub fn new(e_s: f64, e_t: f64, e_c: f64, e_buf: f64) -> Self {
        for (name, v) in [("e_s", e_s), ("e_t", e_t), ("e_c", e_c), ("e_buf", e_buf)] {
            assert!(v >= 0.0, "{name} must be non-negative, got {v}");
        }
        EnergyBreakdown {
            e_s_j_per_day: e_s,
            e_t_j_per_day: e_t,
            e_c_j_per_day: e_c,
            e_buf_j_per_day: e_buf,
            e_total_j_per_day: e_s + e_t + e_c + e_buf,
        }
    }

    pub fn sampling(&self) -> f64 {
        self.e_s_j_per_day
    }

    pub fn transmission(&self) -> f64 {
        self.e_t_j_per_day
    }

    pub fn computation(&self) -> f64 {
        self.e_c_j_per_day
    }

    pub fn buffering(&self) -> f64 {
        self.e_buf_j_per_day
    }

    pub fn total(&self) -> f64 {
        self.e_total_j_per_day
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;

    fn radio() -> RadioProfile {
        default_catalog().radio
    }

    fn assert_rel(actual: f64, expected: f64, rel: f64) {
        let diff = (actual - expected).abs();
        assert!(
            diff <= rel * expected.abs().max(f64::MIN_POSITIVE),
            "expected {expected}, got {actual} (rel diff {})",
            diff / expected.abs()
        );
    }

    #[test]
    fn enob_examples() {
        // A 74 dB converter delivers 12 effective bits; 7.78 dB delivers one.
        assert_rel(enob_from_snr_db(74.0).unwrap(), 12.0, 1e-12);
        assert_rel(enob_from_snr_db(7.78).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn enob_rejects_snr_at_or_below_floor() {
        assert!(enob_from_snr_db(1.76).is_err());
        assert!(enob_from_snr_db(-3.0).is_err());
    }

    #[test]
    fn adc_bound_at_survey_anchor_points() {
        // 4^(N-9) pJ: one picojoule at 9 bits, 16 pJ at 11 bits.
        let b9 = adc_energy_bound(9);
        assert_rel(b9.joules_per_sample, 1e-12, 1e-12);
        assert!(!b9.extrapolated);
        assert_rel(adc_energy_bound(11).joules_per_sample, 16e-12, 1e-12);
        assert_rel(adc_energy_bound(16).joules_per_sample, 16_384e-12, 1e-12);
    }

    #[test]
    fn adc_bound_flags_extrapolation_outside_surveyed_range() {
        assert!(adc_energy_bound(7).extrapolated);
        assert!(adc_energy_bound(17).extrapolated);
        assert!(!adc_energy_bound(8).extrapolated);
        assert!(!adc_energy_bound(16).extrapolated);
    }

    #[test]
    fn sampling_energy_frozen_values() {
        // Oracle: f_s * 86400 * 4^(N-9) pJ, evaluated independently.
        assert_rel(sampling_energy_per_day(8.0, 10).joules_per_day, 2.7648e-6, 1e-12);
        assert_rel(sampling_energy_per_day(2.0, 10).joules_per_day, 6.912e-7, 1e-12);
        assert_rel(sampling_energy_per_day(100.0, 16).joules_per_day, 0.14155776, 1e-12);
        assert_rel(sampling_energy_per_day(1000.0, 12).joules_per_day, 5.5296e-3, 1e-12);
        assert_rel(sampling_energy_per_day(1.0, 8).joules_per_day, 2.16e-8, 1e-12);
    }

    #[test]
    fn per_packet_energy_frozen_values() {
        // At 8 Hz the cycle still has 122.4 ms of standby.
        let p = per_packet_energy(8.0, &radio());
        assert_rel(p.joules, 7.9606e-5, 1e-12);
        assert!(!p.saturated);
        // At 0.001 Hz the standby term dominates: ~2.579 mJ per cycle.
        let slow = per_packet_energy(0.001, &radio());
        assert_rel(slow.joules, 2.5792935e-3, 1e-12);
        assert!(!slow.saturated);
    }

    #[test]
    fn per_packet_energy_saturates_at_the_send_time_floor() {
        let r = radio();
        let floor = r.t_send_s * r.p_send_w;
        // 1000 Hz leaves no standby at all: exactly the floor, flagged.
        let sat = per_packet_energy(1000.0, &r);
        assert_eq!(sat.joules, floor);
        assert!(sat.saturated);
        // The floor is reached exactly at f_t = 1/t_send.
        let edge = per_packet_energy(1.0 / r.t_send_s, &r);
        assert!((edge.joules - floor).abs() <= 1e-18);
        assert!(edge.saturated);
        // Just below the edge rate there is standby again.
        let below = per_packet_energy(0.99 / r.t_send_s, &r);
        assert!(below.joules > floor);
        assert!(!below.saturated);
    }

    #[test]
    fn transmission_energy_frozen_values() {
        let r = radio();
        assert_rel(transmission_energy_per_day(2.0, &r).joules_per_day, 13.917917, 1e-6);
        assert_rel(transmission_energy_per_day(100.0, &r).joules_per_day, 685.31184, 1e-9);
        let sat = transmission_energy_per_day(1000.0, &r);
        assert_rel(sat.joules_per_day, 6851.52, 1e-9);
        assert!(sat.saturated);
    }

    #[test]
    fn battery_lifetime_spot_values() {
        let b = default_catalog().battery;
        assert_rel(battery_lifetime_days(2700.0, &b).unwrap(), 1.0, 1e-12);
        assert_eq!(battery_lifetime_days(0.64, &b).unwrap(), 4218.75);
        assert_rel(battery_lifetime_days(6868.8, &b).unwrap(), 0.39308176, 1e-7);
    }

    #[test]
    fn battery_lifetime_rejects_non_positive_drain() {
        let b = default_catalog().battery;
        assert!(battery_lifetime_days(0.0, &b).is_err());
        assert!(battery_lifetime_days(-1.0, &b).is_err());
    }

    #[test]
    fn breakdown_total_is_the_exact_component_sum() {
        let e = EnergyBreakdown::new(0.1, 0.2, 0.3, 0.4);
        assert_eq!(e.total(), 0.1 + 0.2 + 0.3 + 0.4);
        let parts = EnergyBreakdown::new(5.5296e-3, 2.832726, 6.65, 0.0);
        assert_eq!(
            parts.total(),
            parts.sampling() + parts.transmission() + parts.computation() + parts.buffering()
        );
    }

    #[test]
    #[should_panic(expected = "non-negative")]
    fn breakdown_rejects_negative_components() {
        EnergyBreakdown::new(0.0, -1.0, 0.0, 0.0);
    }
}
