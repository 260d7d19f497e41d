//! Deterministic energy, lifetime, and storage models for body-area networks
//! of biomedical sensors.
//!
//! The crate answers a planning question: given a sensor (its resolution and
//! sampling-rate range), a low-energy radio, and a battery, what does each
//! transmission scheme cost per day — and therefore how long does the node
//! live and how much data must be archived per year?
//!
//! * [`catalog`] — the device parameter set (sensors, radio, battery,
//!   buffer, computation calibrations) and its TOML config overlay.
//! * [`energy`] — sampling and transmission energy from first principles,
//!   plus battery lifetime.
//! * [`storage`] — year-scale storage demand, continuous or event-driven.
//! * [`cs`] — seeded random projections for compressive sampling, operator
//!   derivation for computing on compressed data, and distortion statistics.
//! * [`schemes`] — the four transmission schemes evaluated end to end, with
//!   event-rate and compression-ratio sweeps.
//!
//! Everything is pure and deterministic: the same catalog, scheme, and seed
//! always produce the same numbers, which is what makes the reference-figure
//! reproduction in the companion CLI meaningful.

// Validation guards are written `!(x >= 0.0)` on purpose: the negated form
// also rejects NaN, which `x < 0.0` would wave through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cs;
pub mod energy;
pub mod schemes;
pub mod storage;

pub use catalog::{default_catalog, load_catalog, parse_catalog, Catalog};
pub use schemes::{evaluate, RateCheck, SchemeConfig, SchemeResult};
