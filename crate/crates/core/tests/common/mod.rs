#![allow(dead_code)]

use fgnsim_core::channels::{initial_state, InitialStateSpec};
use fgnsim_core::densemat::{ComplexMatrix, DensityMatrix, C64};
use rand::Rng;

pub fn werner(p: f64) -> DensityMatrix {
    initial_state(InitialStateSpec::new(p).unwrap())
}

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in (i + 1)..n {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// A random mixed state `A A^dagger / Tr`.
pub fn random_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    let mut a = ComplexMatrix::zeros(16, 16);
    for i in 0..16 {
        for j in 0..16 {
            a[(i, j)] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    let m = a.matmul(&a.adjoint()).unwrap();
    let tr = m.trace().re;
    let m = m.scale(C64::new(1.0 / tr, 0.0));
    // Clean the rounding asymmetry of the product.
    let m = m.add(&m.adjoint()).unwrap().scale(C64::new(0.5, 0.0));
    DensityMatrix::new(m).unwrap()
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
