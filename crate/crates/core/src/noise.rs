//! Fractional Gaussian noise: accumulated phase variance, sampling of the
//! random phase, and fractional Brownian motion paths.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Smallest grid accepted by [`beta_quadrature`].
pub const MIN_QUADRATURE_GRID: usize = 64;
/// Largest path length accepted by [`FbmSampler`].
pub const MAX_FBM_STEPS: usize = 2048;

fn check_hurst(hurst: f64) -> Result<()> {
    if hurst > 0.0 && hurst < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain("Hurst exponent must lie in (0, 1)"))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau >= 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("time must be finite and non-negative"))
    }
}

/// Noise-model constants. The coupling `omega` and the level splitting
/// `energy_split` are fixed at 1 and 0: the splitting only adds a global
/// phase and the coupling is absorbed into the dimensionless time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    hurst: f64,
    omega: f64,
    energy_split: f64,
}

impl NoiseParams {
    pub fn new(hurst: f64) -> Result<Self> {
        check_hurst(hurst)?;
        Ok(Self {
            hurst,
            omega: 1.0,
            energy_split: 0.0,
        })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn energy_split(&self) -> f64 {
        self.energy_split
    }

    pub fn beta(&self, tau: f64) -> Result<BetaValue> {
        beta_fgn(tau, self.hurst)
    }
}

/// Accumulated phase variance `beta(tau) = tau^(2H+2) / (2H+2)` at a time point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaValue {
    value: f64,
    tau: f64,
    hurst: f64,
}

impl BetaValue {
    /// The β reached at the time `tau` that produces variance `value` for
    /// the given Hurst exponent.
    pub fn from_variance(value: f64, hurst: f64) -> Result<Self> {
        check_hurst(hurst)?;
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::Domain(
                "phase variance must be finite and non-negative",
            ));
        }
        let e = 2.0 * hurst + 2.0;
        let tau = libm::pow(value * e, 1.0 / e);
        Ok(Self { value, tau, hurst })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn tau(&self) -> f64 {
        self.tau
    }

    #[inline]
    pub fn hurst(&self) -> f64 {
        self.hurst
    }
}

/// Closed-form phase variance for fractional Gaussian noise.
pub fn beta_fgn(tau: f64, hurst: f64) -> Result<BetaValue> {
    check_hurst(hurst)?;
    check_tau(tau)?;
    let e = 2.0 * hurst + 2.0;
    Ok(BetaValue {
        value: libm::pow(tau, e) / e,
        tau,
        hurst,
    })
}

/// fBm covariance `1/2 (|t|^2H + |s|^2H - |t-s|^2H)`.
pub fn fbm_covariance(t: f64, s: f64, hurst: f64) -> f64 {
    let h2 = 2.0 * hurst;
    0.5 * (libm::pow(t.abs(), h2) + libm::pow(s.abs(), h2) - libm::pow((t - s).abs(), h2))
}

/// Double integral of the fBm covariance over `[0, tau]^2` by the 2-D
/// trapezoid rule on an `(n+1) x (n+1)` uniform grid.
pub fn beta_quadrature(tau: f64, hurst: f64, n: usize) -> Result<f64> {
    check_hurst(hurst)?;
    check_tau(tau)?;
    if n < MIN_QUADRATURE_GRID {
        return Err(Error::Domain(
            "quadrature grid must have at least 64 intervals",
        ));
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let h = tau / n as f64;
    let h2 = 2.0 * hurst;
    let weight = |i: usize| if i == 0 || i == n { 0.5 * h } else { h };
    // |x_i|^2H and |x_i - x_j|^2H both depend on a single grid offset.
    let pow_at: Vec<f64> = (0..=n).map(|k| libm::pow(k as f64 * h, h2)).collect();

    let mut total = 0.0;
    for i in 0..=n {
        let wi = weight(i);
        let mut row = 0.0;
        for j in 0..=n {
            let d = i.abs_diff(j);
            row += weight(j) * (pow_at[i] + pow_at[j] - pow_at[d]);
        }
        total += wi * row;
    }
    Ok(0.5 * total)
}

/// One draw of the Gaussian phase with variance `beta`.
pub fn sample_phase<R: Rng + ?Sized>(beta: &BetaValue, rng: &mut R) -> f64 {
    if beta.value == 0.0 {
        return 0.0;
    }
    let z: f64 = StandardNormal.sample(rng);
    libm::sqrt(beta.value) * z
}

/// Cholesky factor of the fBm covariance on the grid `t_i = i tau / n`,
/// `i = 1..=n`. The value `B(0) = 0` is not part of the sampled path.
#[derive(Clone, Debug)]
pub struct FbmSampler {
    n: usize,
    tau: f64,
    hurst: f64,
    // Lower triangle, row-major, `n * n`.
    factor: Vec<f64>,
}

impl FbmSampler {
    pub fn new(tau: f64, hurst: f64, n: usize) -> Result<Self> {
        check_hurst(hurst)?;
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Domain("path horizon must be positive"));
        }
        if !(2..=MAX_FBM_STEPS).contains(&n) {
            return Err(Error::Domain("path length must lie in [2, 2048]"));
        }
        let dt = tau / n as f64;
        let mut cov = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let c = fbm_covariance((i + 1) as f64 * dt, (j + 1) as f64 * dt, hurst);
                cov[i * n + j] = c;
                cov[j * n + i] = c;
            }
        }
        let factor = cholesky_lower(&cov, n)?;
        Ok(Self {
            n,
            tau,
            hurst,
            factor,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    /// `(B(t_1), .., B(t_n))`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.n;
        let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        (0..n)
            .map(|i| {
                let row = &self.factor[i * n..i * n + i + 1];
                row.iter().zip(&z).map(|(l, zj)| l * zj).sum()
            })
            .collect()
    }
}

fn cholesky_lower(a: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > 0.0) {
                    return Err(Error::CholeskyFailure(i));
                }
                l[i * n + i] = libm::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// Convenience wrapper: factor the covariance and draw one path.
pub fn sample_fbm_path<R: Rng + ?Sized>(
    tau: f64,
    hurst: f64,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    Ok(FbmSampler::new(tau, hurst, n)?.sample(rng))
}

/// Trapezoid integral of samples spaced uniformly over `[0, tau]`, endpoints
/// included.
pub fn integrated_phase(path: &[f64], tau: f64) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::Domain("path needs at least two samples"));
    }
    let h = tau / (path.len() - 1) as f64;
    let inner: f64 = path[1..path.len() - 1].iter().sum();
    Ok(h * (inner + 0.5 * (path[0] + path[path.len() - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn beta_examples() {
        assert_relative_eq!(
            beta_fgn(1.0, 0.5).unwrap().value(),
            1.0 / 3.0,
            max_relative = 1e-15
        );
        assert_eq!(beta_fgn(0.0, 0.3).unwrap().value(), 0.0);
        assert_relative_eq!(
            beta_fgn(2.0, 0.5).unwrap().value(),
            8.0 / 3.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn beta_domain_errors() {
        for h in [0.0, 1.0, -0.2, f64::NAN] {
            assert!(matches!(beta_fgn(1.0, h), Err(Error::Domain(_))));
        }
        assert!(matches!(beta_fgn(-1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(
            beta_quadrature(1.0, 0.5, 63),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn quadrature_examples() {
        assert_abs_diff_eq!(
            beta_quadrature(1.0, 0.5, 1024).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-4
        );
        assert_abs_diff_eq!(
            beta_quadrature(1.0, 0.9, 1024).unwrap(),
            1.0 / 3.8,
            epsilon = 1e-4
        );
        assert_eq!(beta_quadrature(0.0, 0.2, 64).unwrap(), 0.0);
    }

    #[test]
    fn from_variance_round_trips_tau() {
        let b = beta_fgn(1.7, 0.3).unwrap();
        let back = BetaValue::from_variance(b.value(), 0.3).unwrap();
        assert_relative_eq!(back.tau(), 1.7, max_relative = 1e-14);
    }

    #[test]
    fn zero_variance_phase_is_exactly_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = beta_fgn(0.0, 0.5).unwrap();
        assert_eq!(sample_phase(&b, &mut rng), 0.0);
    }

    #[test]
    fn short_path_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(sample_fbm_path(1.0, 0.4, 2, &mut rng).unwrap().len(), 2);
        assert!(sample_fbm_path(1.0, 0.4, 1, &mut rng).is_err());
        assert!(sample_fbm_path(1.0, 0.4, 2049, &mut rng).is_err());
    }

    #[test]
    fn integrated_phase_trivial_paths() {
        assert_relative_eq!(
            integrated_phase(&[2.5; 17], 3.0).unwrap(),
            7.5,
            max_relative = 1e-15
        );
        assert_eq!(integrated_phase(&[0.0; 5], 1.0).unwrap(), 0.0);
        assert!(integrated_phase(&[1.0], 1.0).is_err());
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = [1.0, 2.0, 2.0, 1.0];
        assert_eq!(cholesky_lower(&a, 2), Err(Error::CholeskyFailure(1)));
    }
}
