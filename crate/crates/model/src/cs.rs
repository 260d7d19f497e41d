//! Compressive-sampling core: seeded random projections, the compression
//! operator itself, and the machinery for working *on* compressed data.
//!
//! A window of `n` samples is compressed to `m` measurements by a random
//! Gaussian projection `y = Phi x`. Because the projection approximately
//! preserves inner products, a linear feature extractor `H` designed for the
//! raw window can be converted once into an operator that consumes the
//! compressed window directly ([`derive_compressed_operator`]), and
//! [`inner_product_distortion`] measures how much accuracy that costs for a
//! given compression ratio.
//!
//! Everything here is deterministic in the configured seed: the projection
//! entries are drawn from a counter-based stream, and each distortion trial
//! derives its own substream from `(seed, trial index)`, so results do not
//! depend on evaluation order.

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

/// Pivot threshold below which the Gram matrix of the projection rows is
/// treated as rank-deficient.
pub const SINGULARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CsError {
    #[error("invalid compression shape: need 1 <= m <= n, got m = {m}, n = {n}")]
    InvalidShape { m: usize, n: usize },
    #[error("compression ratio must be >= 1, got {alpha}")]
    InvalidRatio { alpha: f64 },
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(
        "projection rows are rank-deficient (pivot below {SINGULARITY_TOLERANCE:e}), \
         cannot invert their Gram matrix"
    )]
    SingularProjection,
}

/// Shape and seed of a compression stage: windows of `n` samples become `m`
/// measurements, a ratio of `alpha = n/m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CsConfig {
    pub n: usize,
    pub m: usize,
    /// Requested compression ratio. Kept verbatim so storage scaling uses
    /// what the caller asked for; `n/m` may differ by rounding.
    pub alpha: f64,
    pub seed: u64,
}

impl CsConfig {
    pub fn new(n: usize, m: usize, seed: u64) -> Result<Self, CsError> {
        if m == 0 || m > n {
            return Err(CsError::InvalidShape { m, n });
        }
        Ok(CsConfig {
            n,
            m,
            alpha: n as f64 / m as f64,
            seed,
        })
    }

    /// Build a config from a requested ratio: `m = round(n / alpha)`,
    /// clamped into `1..=n`.
    pub fn from_alpha(n: usize, alpha: f64, seed: u64) -> Result<Self, CsError> {
        if !(alpha >= 1.0) {
            return Err(CsError::InvalidRatio { alpha });
        }
        if n == 0 {
            return Err(CsError::InvalidShape { m: 0, n });
        }
        let m = ((n as f64 / alpha).round() as usize).clamp(1, n);
        Ok(CsConfig { n, m, alpha, seed })
    }

    /// The ratio actually realised by the integer shape.
    pub fn effective_alpha(&self) -> f64 {
        self.n as f64 / self.m as f64
    }
}

/// An `m x n` projection matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    data: Array2<f64>,
}

impl ProjectionMatrix {
    /// Wrap an existing matrix. The shape must be wide-or-square with at
    /// least one row, and every entry finite.
    pub fn from_array(data: Array2<f64>) -> Result<Self, CsError> {
        let (m, n) = data.dim();
        if m == 0 || m > n {
            return Err(CsError::InvalidShape { m, n });
        }
        assert!(
            data.iter().all(|v| v.is_finite()),
            "projection entries must be finite"
        );
        Ok(ProjectionMatrix { data })
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.data
    }

    /// Replace the rows by an orthonormal basis of their span (modified
    /// Gram–Schmidt). For a square projection this yields an orthogonal
    /// matrix, the regime where compression is a pure change of basis and
    /// both inner products and derived operators are exact.
    pub fn orthonormalized(&self) -> Result<ProjectionMatrix, CsError> {
        let m = self.data.nrows();
        let mut q = self.data.clone();
        for i in 0..m {
            for j in 0..i {
                let prev = q.row(j).to_owned();
                let proj = q.row(i).dot(&prev);
                q.row_mut(i).zip_mut_with(&prev, |a, b| *a -= proj * b);
            }
            let norm = q.row(i).dot(&q.row(i)).sqrt();
            if norm <= SINGULARITY_TOLERANCE {
                return Err(CsError::SingularProjection);
            }
            q.row_mut(i).mapv_inplace(|v| v / norm);
        }
        Ok(ProjectionMatrix { data: q })
    }
}

/// Counter-mixing step used to derive independent per-trial seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn substream_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

/// Draw the Gaussian projection for a config: i.i.d. entries with variance
/// `1/m`, in row-major order from a stream seeded by `cfg.seed`. The same
/// config always yields the same matrix.
pub fn make_projection(cfg: &CsConfig) -> ProjectionMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let scale = 1.0 / (cfg.m as f64).sqrt();
    let mut entries = Vec::with_capacity(cfg.m * cfg.n);
    for _ in 0..cfg.m * cfg.n {
        let g: f64 = StandardNormal.sample(&mut rng);
        entries.push(g * scale);
    }
    let data = Array2::from_shape_vec((cfg.m, cfg.n), entries)
        .expect("shape matches the entry count");
    ProjectionMatrix { data }
}

/// Apply the projection: `x_hat = Phi x`.
pub fn compress(phi: &ProjectionMatrix, x: &[f64]) -> Result<Vec<f64>, CsError> {
    if x.len() != phi.cols() {
        return Err(CsError::DimensionMismatch {
            context: "compress input",
            expected: phi.cols(),
            got: x.len(),
        });
    }
    let x = Array1::from_iter(x.iter().copied());
    Ok(phi.data.dot(&x).to_vec())
}

/// Convert a feature operator `H` (rows are linear functionals on the raw
/// window) into one that acts on compressed windows:
/// `H_hat = H Phi^T (Phi Phi^T)^-1`.
///
/// `H_hat x_hat` equals `H` applied to the minimum-norm window consistent
/// with the measurements, so features are extracted without ever
/// reconstructing the signal. The Gram matrix `Phi Phi^T` is inverted via a
/// Cholesky solve; rank-deficient projections are reported rather than
/// silently regularised.
pub fn derive_compressed_operator(
    h: &Array2<f64>,
    phi: &ProjectionMatrix,
) -> Result<Array2<f64>, CsError> {
    if h.ncols() != phi.cols() {
        return Err(CsError::DimensionMismatch {
            context: "feature operator columns",
            expected: phi.cols(),
            got: h.ncols(),
        });
    }
    let gram = phi.data.dot(&phi.data.t());
    let chol = cholesky(&gram)?;
    // Solve G W = (H Phi^T)^T column-by-column, then H_hat = W^T.
    let rhs = phi.data.dot(&h.t()); // m x p
    let mut w = Array2::zeros(rhs.dim());
    for (j, col) in rhs.columns().into_iter().enumerate() {
        let solved = cholesky_solve(&chol, &col.to_owned());
        w.column_mut(j).assign(&solved);
    }
    Ok(w.t().to_owned())
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
fn cholesky(g: &Array2<f64>) -> Result<Array2<f64>, CsError> {
    let n = g.nrows();
    debug_assert_eq!(n, g.ncols());
    let mut l: Array2<f64> = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let mut sum = g[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= SINGULARITY_TOLERANCE {
                    return Err(CsError::SingularProjection);
                }
                l[(i, j)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(l)
}

/// Solve `L L^T x = b` by forward then backward substitution.
fn cholesky_solve(l: &Array2<f64>, b: &Array1<f64>) -> Array1<f64> {
    let n = l.nrows();
    let mut y = Array1::zeros(n);
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[(i, k)] * y[k];
        }
        y[i] = sum / l[(i, i)];
    }
    let mut x = Array1::zeros(n);
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= l[(k, i)] * x[k];
        }
        x[i] = sum / l[(i, i)];
    }
    x
}

/// Inner-product distortion statistics over a batch of sparse-vector trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortionStats {
    /// Mean of the normalised inner-product error.
    pub mean: f64,
    /// 95th percentile of the same (nearest-rank definition).
    pub p95: f64,
    pub trials: usize,
}

/// Measure how well the projection of a config preserves inner products.
///
/// Each trial draws two `sparsity`-sparse vectors (random support, unit
/// Gaussian values) from a substream of `(cfg.seed, trial index)` and
/// records `|<Phi x, Phi y> - <x, y>| / (|x| |y|)` — the error normalised by
/// the norm product, which bounds the true inner product. Trials are
/// independent of evaluation order, so the statistics are reproducible.
pub fn inner_product_distortion(cfg: &CsConfig, trials: usize, sparsity: usize) -> DistortionStats {
    let phi = make_projection(cfg);
    inner_product_distortion_for(&phi, cfg.seed, trials, sparsity)
}

/// Same measurement against an explicit projection (e.g. an orthonormalised
/// one). The trial vectors still come from `seed`.
pub fn inner_product_distortion_for(
    phi: &ProjectionMatrix,
    seed: u64,
    trials: usize,
    sparsity: usize,
) -> DistortionStats {
    let n = phi.cols();
    assert!(trials >= 1, "need at least one trial");
    assert!(
        (1..=n).contains(&sparsity),
        "sparsity must be in 1..={n}, got {sparsity}"
    );
    let mut errors: Vec<f64> = (0..trials)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(seed, t as u64));
            let x = sparse_vector(n, sparsity, &mut rng);
            let y = sparse_vector(n, sparsity, &mut rng);
            let exact = x.dot(&y);
            let compressed = phi.data.dot(&x).dot(&phi.data.dot(&y));
            (compressed - exact).abs() / (x.dot(&x).sqrt() * y.dot(&y).sqrt())
        })
        .collect();
    errors.sort_by(|a, b| a.total_cmp(b));
    let mean = errors.iter().sum::<f64>() / trials as f64;
    // Nearest-rank percentile: the smallest value with at least 95% of the
    // sample at or below it.
    let rank = ((0.95 * trials as f64).ceil() as usize).max(1);
    let p95 = errors[rank - 1];
    DistortionStats { mean, p95, trials }
}

fn sparse_vector(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Array1<f64> {
    let mut v = Array1::zeros(n);
    for idx in rand::seq::index::sample(rng, n, k) {
        v[idx] = StandardNormal.sample(rng);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_from_alpha_rounds_the_row_count() {
        let c = CsConfig::from_alpha(256, 8.0, 1).unwrap();
        assert_eq!((c.n, c.m), (256, 32));
        assert_eq!(c.alpha, 8.0);
        assert_eq!(c.effective_alpha(), 8.0);
        // A ratio that does not divide n: m rounds, alpha keeps the request.
        let c = CsConfig::from_alpha(256, 3.0, 1).unwrap();
        assert_eq!(c.m, 85);
        assert_eq!(c.alpha, 3.0);
        assert!((c.effective_alpha() - 256.0 / 85.0).abs() < 1e-12);
        // Extreme ratios clamp to a single row.
        assert_eq!(CsConfig::from_alpha(16, 100.0, 1).unwrap().m, 1);
    }

    #[test]
    fn config_rejects_bad_shapes() {
        assert!(CsConfig::new(8, 0, 1).is_err());
        assert!(CsConfig::new(8, 9, 1).is_err());
        assert!(CsConfig::from_alpha(8, 0.5, 1).is_err());
        assert!(CsConfig::from_alpha(0, 2.0, 1).is_err());
    }

    #[test]
    fn projection_is_deterministic_in_the_seed() {
        let cfg = CsConfig::from_alpha(64, 4.0, 99).unwrap();
        assert_eq!(make_projection(&cfg), make_projection(&cfg));
        let other = CsConfig::from_alpha(64, 4.0, 100).unwrap();
        assert_ne!(make_projection(&cfg), make_projection(&other));
    }

    #[test]
    fn projection_entries_have_variance_one_over_m() {
        let cfg = CsConfig::new(512, 128, 7).unwrap();
        let phi = make_projection(&cfg);
        let entries: Vec<f64> = phi.as_array().iter().copied().collect();
        let mean = entries.iter().sum::<f64>() / entries.len() as f64;
        let var = entries.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / entries.len() as f64;
        assert!(mean.abs() < 5e-4, "mean {mean}");
        let expected = 1.0 / 128.0;
        assert!(
            (var - expected).abs() < 0.05 * expected,
            "variance {var} vs {expected}"
        );
    }

    #[test]
    fn compress_checks_dimensions() {
        let cfg = CsConfig::new(16, 4, 3).unwrap();
        let phi = make_projection(&cfg);
        assert!(compress(&phi, &[0.0; 16]).is_ok());
        assert!(matches!(
            compress(&phi, &[0.0; 15]),
            Err(CsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn square_orthonormal_projection_preserves_inner_products() {
        let cfg = CsConfig::new(4, 4, 21).unwrap();
        let phi = make_projection(&cfg).orthonormalized().unwrap();
        let q = phi.as_array();
        // Q Q^T = I for an orthonormal row set.
        let gram = q.dot(&q.t());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - want).abs() < 1e-12);
            }
        }
        let stats = inner_product_distortion_for(&phi, cfg.seed, 50, 2);
        assert!(stats.p95 < 1e-10, "p95 {}", stats.p95);
    }

    #[test]
    fn derived_operator_is_exact_in_the_square_orthonormal_regime() {
        let cfg = CsConfig::new(12, 12, 5).unwrap();
        let phi = make_projection(&cfg).orthonormalized().unwrap();
        let h = Array2::from_shape_fn((3, 12), |(i, j)| ((i * 12 + j) as f64).sin());
        let h_hat = derive_compressed_operator(&h, &phi).unwrap();
        let x = Array1::from_shape_fn(12, |i| (i as f64 * 0.7).cos());
        let direct = h.dot(&x);
        let via_compressed = h_hat.dot(&phi.as_array().dot(&x));
        for (a, b) in direct.iter().zip(via_compressed.iter()) {
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn deriving_from_the_projection_itself_gives_the_identity() {
        // H = Phi: then H Phi^T (Phi Phi^T)^-1 = I exactly.
        let cfg = CsConfig::new(40, 10, 17).unwrap();
        let phi = make_projection(&cfg);
        let h_hat = derive_compressed_operator(phi.as_array(), &phi).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((h_hat[(i, j)] - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn rank_deficient_projection_is_reported() {
        let mut data = Array2::zeros((3, 8));
        data.row_mut(0).fill(1.0);
        data.row_mut(1).fill(1.0); // duplicate row: Gram matrix is singular
        data.row_mut(2).assign(&Array1::linspace(0.0, 1.0, 8));
        let phi = ProjectionMatrix::from_array(data).unwrap();
        let h = Array2::eye(8);
        assert!(matches!(
            derive_compressed_operator(&h, &phi),
            Err(CsError::SingularProjection)
        ));
        assert!(matches!(
            phi.orthonormalized(),
            Err(CsError::SingularProjection)
        ));
    }

    #[test]
    fn distortion_stats_are_deterministic_and_order_independent() {
        let cfg = CsConfig::new(128, 32, 23).unwrap();
        let a = inner_product_distortion(&cfg, 64, 8);
        let b = inner_product_distortion(&cfg, 64, 8);
        assert_eq!(a, b);
        // The first trials of a longer run match a shorter run: each trial
        // only depends on its own substream.
        let phi = make_projection(&cfg);
        let short = inner_product_distortion_for(&phi, cfg.seed, 1, 8);
        let _long = inner_product_distortion_for(&phi, cfg.seed, 64, 8);
        let again = inner_product_distortion_for(&phi, cfg.seed, 1, 8);
        assert_eq!(short, again);
    }

    #[test]
    fn distortion_shrinks_as_more_measurements_are_kept() {
        // Same signal family, m = 16 vs m = 64: keeping four times the
        // measurements must cut the mean distortion.
        let coarse = CsConfig::new(256, 16, 40).unwrap();
        let fine = CsConfig::new(256, 64, 40).unwrap();
        let d_coarse = inner_product_distortion(&coarse, 200, 8);
        let d_fine = inner_product_distortion(&fine, 200, 8);
        assert!(
            d_fine.mean < d_coarse.mean,
            "mean at m=64 ({}) should be below m=16 ({})",
            d_fine.mean,
            d_coarse.mean
        );
    }

    #[test]
    fn single_trial_p95_is_that_trial() {
        let cfg = CsConfig::new(64, 16, 3).unwrap();
        let s = inner_product_distortion(&cfg, 1, 4);
        assert_eq!(s.mean, s.p95);
        assert_eq!(s.trials, 1);
    }
}
