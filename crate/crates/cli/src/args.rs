//! Command-line surface of the `wban` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "wban",
    version,
    about = "Energy, lifetime, and storage reports for body-area sensor networks",
    after_help = "Exit codes: 0 success, 1 invalid input, 2 reproduction diff failure."
)]
pub struct Cli {
    /// Parameter overlay (TOML); falls back to the WBAN_CONFIG variable
    #[arg(long, global = true, env = "WBAN_CONFIG", value_name = "TOML")]
    pub config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Daily energy breakdown per sensor
    Energy(EvalArgs),
    /// Yearly storage demand per sensor
    Storage(EvalArgs),
    /// Battery lifetime per sensor
    Lifetime(EvalArgs),
    /// Evaluate a scheme across a parameter grid
    Sweep(SweepArgs),
    /// Qualitative comparison of the four transmission schemes
    Schemes,
    /// Recompute the shipped reference figures and diff them cell by cell
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// Transmit every sample as collected
    Baseline,
    /// Buffer samples and send full packets
    #[value(alias = "aggregation")]
    Aggregate,
    /// Transmit only around detected events
    Anomaly,
    /// Event-driven on compressively sampled data
    Cs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EventSchemeArg {
    Anomaly,
    Cs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Sensor to evaluate (repeatable; default: the whole catalog)
    #[arg(long = "sensor", value_name = "NAME")]
    pub sensors: Vec<String>,
    #[arg(long, value_enum, default_value_t = SchemeArg::Baseline)]
    pub scheme: SchemeArg,
    /// Sampling rate: "min", "max", "both", or a value in Hz
    #[arg(long, default_value = "both")]
    pub rate: String,
    /// Evaluate rates outside the sensor's range instead of rejecting them
    #[arg(long)]
    pub allow_any_rate: bool,
    /// Samples per aggregated packet (default: as many as fit the payload)
    #[arg(long, value_name = "K")]
    pub samples_per_packet: Option<u32>,
    /// Events per month for the event-driven schemes (default: seizure
    /// statistics, 4.7 per month)
    #[arg(long, value_name = "N")]
    pub events_per_month: Option<f64>,
    /// Captured seconds per event (default: 228)
    #[arg(long, value_name = "S")]
    pub event_duration_s: Option<f64>,
    /// Extra transmitted seconds per event (default: 0)
    #[arg(long, value_name = "S")]
    pub transmit_extra_s: Option<f64>,
    /// Shorthand event profile: N detections per day, each shipping a
    /// one-minute recording strip
    #[arg(
        long,
        value_name = "N",
        conflicts_with_all = ["events_per_month", "event_duration_s", "transmit_extra_s"]
    )]
    pub events_per_day: Option<f64>,
    /// Computation energy in J/day (required where the catalog carries no
    /// calibrated figure; the result is flagged as uncalibrated)
    #[arg(long, value_name = "J")]
    pub compute_e_c: Option<f64>,
    /// Compression ratio for the cs scheme
    #[arg(long, default_value_t = 8.0)]
    pub alpha: f64,
    /// Compression window length in samples
    #[arg(long, default_value_t = 256, value_name = "N")]
    pub window: usize,
    /// Projection seed for the cs scheme
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Transmit the compressed measurements instead of the raw event window
    #[arg(long)]
    pub transmit_compressed: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(subcommand)]
    pub grid: SweepCommand,
}

#[derive(Debug, Subcommand)]
pub enum SweepCommand {
    /// Daily energy vs detections per day for an event-driven scheme
    Arrhythmia(ArrhythmiaArgs),
    /// Energy, storage, and measured distortion vs compression ratio
    Compression(CompressionArgs),
}

#[derive(Debug, Args)]
pub struct ArrhythmiaArgs {
    #[arg(long, default_value = "Ecg")]
    pub sensor: String,
    #[arg(long, value_enum, default_value_t = EventSchemeArg::Anomaly)]
    pub scheme: EventSchemeArg,
    /// First event count of the grid (events per day)
    #[arg(long, default_value_t = 0)]
    pub from: u32,
    /// Last event count of the grid, inclusive
    #[arg(long, default_value_t = 64)]
    pub to: u32,
    #[arg(long, default_value_t = 8)]
    pub step: u32,
    /// "min", "max", or a value in Hz (one point; sweeps don't take "both")
    #[arg(long, default_value = "max")]
    pub rate: String,
    /// Detector energy in J/day. Without a calibrated catalog figure the
    /// sweep assumes 0 J/day and flags every row, so the energy column shows
    /// the radio's contribution alone.
    #[arg(long, value_name = "J")]
    pub compute_e_c: Option<f64>,
    #[arg(long, default_value_t = 8.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 256, value_name = "N")]
    pub window: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub transmit_compressed: bool,
}

#[derive(Debug, Args)]
pub struct CompressionArgs {
    #[arg(long, default_value = "Eeg")]
    pub sensor: String,
    /// Comma-separated compression ratios
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
    pub alphas: Vec<f64>,
    /// "min", "max", or a value in Hz (one point; sweeps don't take "both")
    #[arg(long, default_value = "max")]
    pub rate: String,
    #[arg(long, default_value_t = 256, value_name = "N")]
    pub window: usize,
    /// Sparsity of the distortion trial vectors
    #[arg(long, default_value_t = 8)]
    pub sparsity: usize,
    /// Distortion trials per ratio
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Detector energy in J/day (same fallback rules as the arrhythmia sweep)
    #[arg(long, value_name = "J")]
    pub compute_e_c: Option<f64>,
    #[arg(long)]
    pub transmit_compressed: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Replace every cell's tolerance with one relative percentage,
    /// e.g. "1" or "0.5%"
    #[arg(long, value_name = "PCT")]
    pub tolerance: Option<String>,
}
