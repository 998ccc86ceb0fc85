mod common;

use fgnsim_core::channels::{apply_fgn_map, ChannelPartition, ConfigKind};
use fgnsim_core::densemat::{kron, ComplexMatrix, DensityMatrix, C64};
use fgnsim_core::measures::{
    negativity_bipartition, npartite_negativity, purity, vn_entropy, witness, Bipartition,
};
use fgnsim_core::noise::beta_fgn;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn qubit_state(theta: f64, phi: f64, mix: f64) -> ComplexMatrix {
    // mix * |psi><psi| + (1 - mix) I/2 with a Bloch-sphere pure state.
    let a = C64::new((theta / 2.0).cos(), 0.0);
    let b = C64::from_polar((theta / 2.0).sin(), phi);
    let pure = ComplexMatrix::projector(&[a, b]);
    pure.scale(C64::new(mix, 0.0))
        .add(&ComplexMatrix::identity(2).scale(C64::new((1.0 - mix) / 2.0, 0.0)))
        .unwrap()
}

proptest! {
    #[test]
    fn product_states_have_no_negativity(
        params in proptest::collection::vec((0.0f64..PI, 0.0f64..TAU, 0.0f64..1.0), 4)
    ) {
        let mut m = qubit_state(params[0].0, params[0].1, params[0].2);
        for &(t, p, w) in &params[1..] {
            m = kron(&m, &qubit_state(t, p, w));
        }
        let m = m.add(&m.adjoint()).unwrap().scale(C64::new(0.5, 0.0));
        let rho = DensityMatrix::new(m).unwrap();
        prop_assert!(npartite_negativity(&rho).unwrap() <= 1e-10);
    }

    #[test]
    fn negativity_ignores_cut_orientation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = common::random_state(&mut rng);
        for cut in Bipartition::all() {
            let a = negativity_bipartition(&rho, &cut).unwrap();
            // Transposing the other side yields the full transpose of the first
            // partial transpose, which has the same spectrum.
            let pt_b = fgnsim_core::densemat::partial_transpose(&rho, cut.side_b()).unwrap();
            let eig = fgnsim_core::densemat::hermitian_eigvals(&pt_b).unwrap();
            let b = (eig.iter().map(|l| l.abs()).sum::<f64>() - 1.0).max(0.0);
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }
}

#[test]
fn dynamics_are_monotone_in_time() {
    let rho0 = common::werner(1.0);
    for kind in ConfigKind::PRESETS {
        let part = ChannelPartition::preset(kind);
        for h in [0.01, 0.9] {
            let mut prev: Option<[f64; 4]> = None;
            for i in 0..100 {
                let tau = 3.0 * i as f64 / 99.0;
                let out = apply_fgn_map(&rho0, &part, &beta_fgn(tau, h).unwrap()).unwrap();
                let cur = [
                    witness(&out, &rho0).unwrap(),
                    npartite_negativity(&out).unwrap(),
                    purity(&out),
                    vn_entropy(&out).unwrap(),
                ];
                if let Some(p) = prev {
                    assert!(cur[0] <= p[0] + 1e-9, "{kind} H={h} ER at {tau}");
                    assert!(cur[1] <= p[1] + 1e-9, "{kind} H={h} NY at {tau}");
                    assert!(cur[2] <= p[2] + 1e-9, "{kind} H={h} PY at {tau}");
                    assert!(cur[3] >= p[3] - 1e-9, "{kind} H={h} VE at {tau}");
                }
                prev = Some(cur);
            }
        }
    }
}

#[test]
fn negativity_bounds_for_werner_family() {
    // GHZ-diagonal Werner states: every one-vs-three cut is NPT iff p > 1/9.
    for (p, npt) in [(0.05, false), (0.5, true), (1.0, true)] {
        let rho = common::werner(p);
        let cut = Bipartition::new(&[0]).unwrap();
        let n = negativity_bipartition(&rho, &cut).unwrap();
        assert_eq!(n > 1e-12, npt, "p={p}: {n}");
    }
}
