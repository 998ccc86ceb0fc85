use fgnsim_core::noise::{
    beta_fgn, beta_quadrature, integrated_phase, sample_phase, BetaValue, FbmSampler,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TAUS: [f64; 3] = [0.5, 1.0, 2.0];
const HURSTS: [f64; 5] = [0.01, 0.3, 0.5, 0.7, 0.9];

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn quadrature_converges_to_closed_form() {
    for tau in TAUS {
        for h in HURSTS {
            let exact = beta_fgn(tau, h).unwrap().value();
            for (n, tol) in [(1024, 1e-3), (4096, 1e-4)] {
                let q = beta_quadrature(tau, h, n).unwrap();
                let rel = (q - exact).abs() / exact.max(1e-12);
                assert!(rel <= tol, "tau={tau} H={h} n={n}: rel {rel:e}");
            }
        }
    }
}

#[test]
fn beta_decreases_with_hurst_before_unit_time() {
    for i in 1..100 {
        let tau = i as f64 / 100.0;
        for w in HURSTS.windows(2) {
            let lo = beta_fgn(tau, w[0]).unwrap().value();
            let hi = beta_fgn(tau, w[1]).unwrap().value();
            assert!(lo > hi, "tau={tau}");
        }
    }
}

#[test]
fn beta_increases_in_time() {
    let mut prev = 0.0;
    for i in 1..300 {
        let b = beta_fgn(i as f64 * 0.01, 0.37).unwrap().value();
        assert!(b > prev);
        prev = b;
    }
}

#[test]
fn phase_draws_are_reproducible() {
    let b = beta_fgn(1.3, 0.2).unwrap();
    let draw = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..64)
            .map(|_| sample_phase(&b, &mut rng).to_bits())
            .collect::<Vec<_>>()
    };
    assert_eq!(draw(17), draw(17));
    assert_ne!(draw(17), draw(18));
}

#[test]
fn phase_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let unit = BetaValue::from_variance(1.0, 0.5).unwrap();
    let xs: Vec<f64> = (0..100_000)
        .map(|_| sample_phase(&unit, &mut rng))
        .collect();
    assert!(mean_var(&xs).0.abs() <= 0.02);

    let third = beta_fgn(1.0, 0.5).unwrap();
    let xs: Vec<f64> = (0..100_000)
        .map(|_| sample_phase(&third, &mut rng))
        .collect();
    assert!((mean_var(&xs).1 - 1.0 / 3.0).abs() <= 0.01);
}

#[test]
fn brownian_increments_are_uncorrelated() {
    let n = 64;
    let sampler = FbmSampler::new(1.0, 0.5, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut cov, mut var) = (0.0, 0.0);
    let paths = 10_000;
    for _ in 0..paths {
        let p = sampler.sample(&mut rng);
        let d1 = p[20] - p[19];
        let d2 = p[21] - p[20];
        cov += d1 * d2;
        var += d1 * d1;
    }
    let ratio = cov / var;
    assert!(ratio.abs() <= 3e-2, "correlation {ratio}");
}

#[test]
fn endpoint_variance_matches_covariance() {
    let sampler = FbmSampler::new(1.0, 0.7, 128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ends: Vec<f64> = (0..20_000)
        .map(|_| *sampler.sample(&mut rng).last().unwrap())
        .collect();
    let v = mean_var(&ends).1;
    assert!((v - 1.0).abs() <= 0.05, "Var B(1) = {v}");
}

#[test]
fn integrated_phase_variance_matches_beta() {
    let (tau, h) = (1.0, 0.5);
    let sampler = FbmSampler::new(tau, h, 512).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let phases: Vec<f64> = (0..20_000)
        .map(|_| {
            let mut path = vec![0.0];
            path.extend(sampler.sample(&mut rng));
            integrated_phase(&path, tau).unwrap()
        })
        .collect();
    let v = mean_var(&phases).1;
    let want = beta_fgn(tau, h).unwrap().value();
    assert!((v - want).abs() / want <= 0.05, "{v} vs {want}");
}

#[test]
fn sampler_is_deterministic() {
    let s = FbmSampler::new(2.0, 0.3, 32).unwrap();
    let a = s.sample(&mut ChaCha8Rng::seed_from_u64(4));
    let b = s.sample(&mut ChaCha8Rng::seed_from_u64(4));
    assert_eq!(a, b);
}
