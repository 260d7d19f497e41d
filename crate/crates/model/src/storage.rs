//! Year-scale storage demand of a sensor stream.
//!
//! Storage is what the receiving side must retain, so unlike energy it
//! depends only on what is kept: every sample for the always-on schemes, or
//! just the samples captured around events for the event-driven ones, scaled
//! down further when the data is stored in compressed form.

/// A 365-day archival year, in seconds.
pub const SECONDS_PER_YEAR: f64 = 31_536_000.0;

const BYTES_PER_MIB: f64 = (1u64 << 20) as f64;
const BYTES_PER_GIB: f64 = (1u64 << 30) as f64;

/// Bytes accumulated over one year, with binary-unit display helpers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageEstimate {
    bytes_per_year: f64,
}

impl StorageEstimate {
    pub fn from_bytes(bytes_per_year: f64) -> Self {
        assert!(
            bytes_per_year >= 0.0,
            "storage cannot be negative, got {bytes_per_year}"
        );
        StorageEstimate { bytes_per_year }
    }

    pub fn bytes_per_year(&self) -> f64 {
        self.bytes_per_year
    }

    /// Display value in binary megabytes (2^20 bytes).
    pub fn mib_per_year(&self) -> f64 {
        self.bytes_per_year / BYTES_PER_MIB
    }

    /// Display value in binary gigabytes (2^30 bytes).
    pub fn gib_per_year(&self) -> f64 {
        self.bytes_per_year / BYTES_PER_GIB
    }
}

/// Bytes per year for a stream sampled continuously at `f_s_hz` with
/// `resolution_bits` per sample: `f_s * N/8 * 31,536,000`.
pub fn yearly_storage(f_s_hz: f64, resolution_bits: u8) -> StorageEstimate {
    assert!(f_s_hz >= 0.0, "sampling rate cannot be negative, got {f_s_hz}");
    StorageEstimate::from_bytes(f_s_hz * resolution_bits as f64 * SECONDS_PER_YEAR / 8.0)
}

/// Bytes per year when only `active_seconds_per_year` of signal is kept,
/// stored at `1/compression_ratio` of its raw size.
///
/// `compression_ratio` is 1 for raw event recordings; a compressive scheme
/// that keeps `M` of every `N` samples passes `N/M`.
pub fn event_storage(
    active_seconds_per_year: f64,
    f_s_hz: f64,
    resolution_bits: u8,
    compression_ratio: f64,
) -> StorageEstimate {
    assert!(
        active_seconds_per_year >= 0.0,
        "active time cannot be negative, got {active_seconds_per_year}"
    );
    assert!(f_s_hz >= 0.0, "sampling rate cannot be negative, got {f_s_hz}");
    assert!(
        compression_ratio >= 1.0,
        "compression ratio must be >= 1, got {compression_ratio}"
    );
    let raw = active_seconds_per_year * f_s_hz * resolution_bits as f64 / 8.0;
    StorageEstimate::from_bytes(raw / compression_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yearly_storage_is_exact_for_the_high_rate_stream() {
        // 12-bit stream at 100 Hz: exactly 4,730,400,000 bytes in a year.
        let s = yearly_storage(100.0, 12);
        assert_eq!(s.bytes_per_year(), 4_730_400_000.0);
        // One decade up: exactly ten times the bytes.
        assert_eq!(yearly_storage(1000.0, 12).bytes_per_year(), 47_304_000_000.0);
    }

    #[test]
    fn display_units_are_binary() {
        let s = yearly_storage(100.0, 12);
        assert_eq!(s.mib_per_year(), 4_730_400_000.0 / 1_048_576.0);
        assert!((s.mib_per_year() - 4511.260986).abs() < 1e-6);
        let big = yearly_storage(1000.0, 12);
        assert!((big.gib_per_year() - 44.055283).abs() < 1e-6);
    }

    #[test]
    fn yearly_storage_scales_linearly_in_rate_and_resolution() {
        let base = yearly_storage(25.0, 8).bytes_per_year();
        assert_eq!(yearly_storage(50.0, 8).bytes_per_year(), 2.0 * base);
        assert_eq!(yearly_storage(25.0, 16).bytes_per_year(), 2.0 * base);
    }

    #[test]
    fn event_storage_frozen_values() {
        // ~13,037.8 active seconds a year of 12-bit signal at 100 Hz.
        let active = 4.7 * (365.0 / 30.0) * 228.0;
        let raw = event_storage(active, 100.0, 12, 1.0);
        assert!((raw.bytes_per_year() - 1_955_670.0).abs() < 1e-6);
        assert!((raw.mib_per_year() - 1.865072).abs() < 1e-6);
        // Stored compressed at 8:1 it is exactly an eighth of that.
        let cs = event_storage(active, 100.0, 12, 8.0);
        assert_eq!(cs.bytes_per_year() * 8.0, raw.bytes_per_year());
    }

    #[test]
    fn unit_compression_ratio_is_identity() {
        let a = event_storage(1234.5, 250.0, 12, 1.0);
        assert_eq!(
            a.bytes_per_year(),
            1234.5 * 250.0 * 12.0 / 8.0
        );
    }

    #[test]
    fn zero_active_time_stores_nothing() {
        assert_eq!(event_storage(0.0, 1000.0, 12, 8.0).bytes_per_year(), 0.0);
    }

    #[test]
    #[should_panic(expected = "compression ratio")]
    fn sub_unit_compression_ratio_is_rejected() {
        event_storage(1.0, 1.0, 8, 0.5);
    }
}
