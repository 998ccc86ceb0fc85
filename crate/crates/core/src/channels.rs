//! Channel-qubit configurations and the noise-averaged dephasing map.
//!
//! Each qubit couples to its channel through `exp(-i phi sigma_x)`. Since
//! `sigma_x = H Z H`, every local unitary is diagonal in the Hadamard frame,
//! where a basis index `u` carries the signs `s_n(u) = +1` (bit clear) or
//! `-1` (bit set). Averaging over independent Gaussian phases, one per
//! channel with variance `beta`, multiplies the Hadamard-frame entry
//! `(u, v)` by `exp(-beta D(u, v) / 2)` with
//! `D(u, v) = sum over channels c of (sum_{n in c} s_n(u) - s_n(v))^2`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};

use crate::densemat::{ComplexMatrix, DensityMatrix, C64};
use crate::noise::{sample_phase, BetaValue};
use crate::{Error, Result, DIM, QUBITS};

/// Coupling topology preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConfigKind {
    /// One channel shared by all four qubits.
    Clcq,
    /// Two channels, two qubits each.
    Blcq,
    /// Three channels: `{a}`, `{b}`, `{c, d}`.
    Tlcq,
    /// One independent channel per qubit.
    Ilcq,
    Custom,
}

impl ConfigKind {
    pub const PRESETS: [ConfigKind; 4] = [Self::Clcq, Self::Blcq, Self::Tlcq, Self::Ilcq];

    pub fn name(self) -> &'static str {
        match self {
            Self::Clcq => "CLCQ",
            Self::Blcq => "BLCQ",
            Self::Tlcq => "TLCQ",
            Self::Ilcq => "ILCQ",
            Self::Custom => "Custom",
        }
    }

    /// Case-insensitive preset lookup; `Custom` is not nameable.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::PRESETS
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(name.trim()))
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A partition of the qubits `{0, 1, 2, 3}` into noise channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelPartition {
    blocks: Vec<Vec<usize>>,
    // Basis-index bit mask per block.
    masks: Vec<usize>,
    kind: ConfigKind,
}

impl ChannelPartition {
    /// Validates that `blocks` are nonempty, disjoint and cover all qubits.
    pub fn custom(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(blocks, ConfigKind::Custom)
    }

    pub fn preset(kind: ConfigKind) -> Self {
        let blocks = match kind {
            ConfigKind::Clcq => vec![vec![0, 1, 2, 3]],
            ConfigKind::Blcq => vec![vec![0, 1], vec![2, 3]],
            ConfigKind::Tlcq => vec![vec![0], vec![1], vec![2, 3]],
            ConfigKind::Ilcq | ConfigKind::Custom => vec![vec![0], vec![1], vec![2], vec![3]],
        };
        let kind = if kind == ConfigKind::Custom {
            ConfigKind::Ilcq
        } else {
            kind
        };
        Self::build(blocks, kind).expect("presets are valid partitions")
    }

    fn build(blocks: Vec<Vec<usize>>, kind: ConfigKind) -> Result<Self> {
        let mut seen = 0usize;
        let mut masks = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty channel"));
            }
            let mut mask = 0usize;
            for &q in block {
                if q >= QUBITS {
                    return Err(Error::IndexOutOfRange(q));
                }
                let bit = qubit_bit(q);
                if (seen | mask) & bit != 0 {
                    return Err(Error::InvalidPartition("qubit assigned to two channels"));
                }
                mask |= bit;
            }
            seen |= mask;
            masks.push(mask);
        }
        if seen != DIM - 1 {
            return Err(Error::InvalidPartition("channels do not cover every qubit"));
        }
        Ok(Self {
            blocks,
            masks,
            kind,
        })
    }

    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn channel_count(&self) -> usize {
        self.blocks.len()
    }

    /// Channel index of every qubit.
    fn channel_of(&self) -> [usize; QUBITS] {
        let mut out = [0; QUBITS];
        for (c, block) in self.blocks.iter().enumerate() {
            for &q in block {
                out[q] = c;
            }
        }
        out
    }
}

#[inline]
fn qubit_bit(q: usize) -> usize {
    1 << (QUBITS - 1 - q)
}

/// Sum of `s_n(u)` over the qubits in `mask`.
#[inline]
fn spin_sum(u: usize, mask: usize) -> i32 {
    let ones = (u & mask).count_ones() as i32;
    let total = mask.count_ones() as i32;
    total - 2 * ones
}

/// Werner-GHZ mixing weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialStateSpec {
    p: f64,
}

impl InitialStateSpec {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Self { p })
        } else {
            Err(Error::Domain("mixing weight p must lie in [0, 1]"))
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `(1 - p)/16 I + p |GHZ><GHZ|` with `|GHZ> = (|0000> + |1111>)/sqrt 2`.
pub fn initial_state(spec: InitialStateSpec) -> DensityMatrix {
    let p = spec.p;
    let mut m = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        m[(i, i)] = C64::new((1.0 - p) / DIM as f64, 0.0);
    }
    for (i, j) in [(0, 0), (0, DIM - 1), (DIM - 1, 0), (DIM - 1, DIM - 1)] {
        m[(i, j)] += C64::new(0.5 * p, 0.0);
    }
    DensityMatrix::new(m)
        .expect("Werner-GHZ state is valid")
        .with_label("werner-ghz")
}

/// `D(u, v) = sum_c (Delta S_c)^2`; the Hadamard-frame entry `(u, v)` is
/// damped by `exp(-beta D / 2)`.
pub fn dephasing_exponent(u: usize, v: usize, part: &ChannelPartition) -> u32 {
    part.masks
        .iter()
        .map(|&m| {
            let d = spin_sum(u, m) - spin_sum(v, m);
            (d * d) as u32
        })
        .sum()
}

/// `W M W` with `W` the four-fold Hadamard product (`W = W^-1`).
pub fn to_hadamard_frame(m: &ComplexMatrix) -> ComplexMatrix {
    let w = hadamard4();
    w.matmul(m)
        .and_then(|x| x.matmul(&w))
        .expect("16 x 16 operands")
}

fn hadamard4() -> ComplexMatrix {
    let mut w = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            let sign = if (i & j).count_ones() % 2 == 0 {
                0.25
            } else {
                -0.25
            };
            w[(i, j)] = C64::new(sign, 0.0);
        }
    }
    w
}

fn finish_state(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(m).map_err(|e| match e {
        Error::NotHermitian(_) => Error::MapNumerics("output not Hermitian"),
        Error::TraceNotOne(_) => Error::MapNumerics("output trace differs from one"),
        Error::NegativeEigenvalue(_) => Error::MapNumerics("output not positive semidefinite"),
        other => other,
    })
}

fn damp_in_hadamard_frame(
    rho: &DensityMatrix,
    beta: f64,
    exponent: impl Fn(usize, usize) -> u32,
) -> Result<DensityMatrix> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Domain("beta must be finite and non-negative"));
    }
    let mut frame = to_hadamard_frame(rho.matrix());
    for u in 0..DIM {
        for v in 0..DIM {
            let d = exponent(u, v);
            if d != 0 {
                frame[(u, v)] *= libm::exp(-0.5 * beta * f64::from(d));
            }
        }
    }
    finish_state(to_hadamard_frame(&frame))
}

/// Exact noise-averaged state `< U(phi) rho0 U(phi)^dagger >` for the
/// partition.
pub fn apply_fgn_map(
    rho0: &DensityMatrix,
    part: &ChannelPartition,
    beta: &BetaValue,
) -> Result<DensityMatrix> {
    damp_in_hadamard_frame(rho0, beta.value(), |u, v| dephasing_exponent(u, v, part))
}

/// Dephasing from a single channel acting on `qubits` only; the remaining
/// qubits are left untouched.
pub fn dephase_channel(rho: &DensityMatrix, qubits: &[usize], beta: f64) -> Result<DensityMatrix> {
    let mask = crate::densemat::qubit_mask(QUBITS, qubits)?;
    damp_in_hadamard_frame(rho, beta, |u, v| {
        let d = spin_sum(u, mask) - spin_sum(v, mask);
        (d * d) as u32
    })
}

/// SplitMix64-style mixer deriving the substream seed for `index` from a
/// master `seed`.
pub fn mix64(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Apply `exp(-i phi sigma_x)` on qubit `q` from the left and its adjoint
/// from the right.
fn conjugate_local(m: &mut ComplexMatrix, q: usize, phi: f64) {
    let bit = qubit_bit(q);
    let c = libm::cos(phi);
    let s = libm::sin(phi);
    let mis = C64::new(0.0, -s); // -i sin(phi)
    let pis = C64::new(0.0, s);
    for i in (0..DIM).filter(|i| i & bit == 0) {
        let k = i | bit;
        for col in 0..DIM {
            let a = m[(i, col)];
            let b = m[(k, col)];
            m[(i, col)] = a * c + b * mis;
            m[(k, col)] = a * mis + b * c;
        }
    }
    for j in (0..DIM).filter(|j| j & bit == 0) {
        let k = j | bit;
        for row in 0..DIM {
            let a = m[(row, j)];
            let b = m[(row, k)];
            m[(row, j)] = a * c + b * pis;
            m[(row, k)] = a * pis + b * c;
        }
    }
}

/// One trajectory `U(phi) rho0 U(phi)^dagger`, one phase per channel.
fn trajectory<R: Rng + ?Sized>(
    rho0: &ComplexMatrix,
    channel_of: &[usize; QUBITS],
    n_channels: usize,
    beta: &BetaValue,
    rng: &mut R,
) -> ComplexMatrix {
    let mut phases = [0.0f64; QUBITS];
    for phase in phases.iter_mut().take(n_channels) {
        *phase = sample_phase(beta, rng);
    }
    let mut m = rho0.clone();
    for (q, &c) in channel_of.iter().enumerate() {
        if phases[c] != 0.0 {
            conjugate_local(&mut m, q, phases[c]);
        }
    }
    m
}

/// Pairwise (cascade) summation of `count` matrices produced on demand.
fn pairwise_sum(count: usize, mut next: impl FnMut() -> ComplexMatrix) -> ComplexMatrix {
    // `stack[k]` holds a partial sum over 2^levels[k] terms.
    let mut stack: Vec<(u32, ComplexMatrix)> = Vec::new();
    for _ in 0..count {
        let mut item = (0u32, next());
        while let Some((lvl, _)) = stack.last() {
            if *lvl != item.0 {
                break;
            }
            let (lvl, top) = stack.pop().expect("non-empty");
            item = (lvl + 1, top.add(&item.1).expect("same shape"));
        }
        stack.push(item);
    }
    let mut acc: Option<ComplexMatrix> = None;
    while let Some((_, m)) = stack.pop() {
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m).expect("same shape"),
        });
    }
    acc.unwrap_or_else(|| ComplexMatrix::zeros(DIM, DIM))
}

fn normalise_average(sum: ComplexMatrix, samples: usize) -> Result<DensityMatrix> {
    let avg = sum.scale(C64::new(1.0 / samples as f64, 0.0));
    // Symmetrise and fix the trace; both only remove rounding noise.
    let herm = avg
        .add(&avg.adjoint())
        .expect("square")
        .scale(C64::new(0.5, 0.0));
    let tr = herm.trace().re;
    finish_state(herm.scale(C64::new(1.0 / tr, 0.0)))
}

/// Monte Carlo trajectory average over `samples` draws from `rng`.
pub fn mc_map<R: Rng + ?Sized>(
    rho0: &DensityMatrix,
    part: &ChannelPartition,
    beta: &BetaValue,
    samples: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if samples == 0 {
        return Err(Error::Domain("Monte Carlo needs at least one sample"));
    }
    let channel_of = part.channel_of();
    let n = part.channel_count();
    let sum = pairwise_sum(samples, || {
        trajectory(rho0.matrix(), &channel_of, n, beta, rng)
    });
    normalise_average(sum, samples)
}

/// Deterministic batching of a Monte Carlo run. Batch `k` draws its
/// trajectories from a generator seeded with `mix64(seed, k)`, so batches
/// can be evaluated in any order or in parallel and combined with
/// [`McPlan::combine`] to the same bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McPlan {
    pub samples: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl McPlan {
    pub const DEFAULT_BATCH: usize = 1000;

    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            batch_size: Self::DEFAULT_BATCH,
            seed,
        }
    }

    pub fn batch_count(&self) -> usize {
        self.samples.div_ceil(self.batch_size)
    }

    fn batch_len(&self, index: usize) -> usize {
        let start = index * self.batch_size;
        self.batch_size.min(self.samples - start)
    }

    /// Unnormalised sum of the trajectories in batch `index`.
    pub fn run_batch<R: Rng + SeedableRng>(
        &self,
        rho0: &DensityMatrix,
        part: &ChannelPartition,
        beta: &BetaValue,
        index: usize,
    ) -> ComplexMatrix {
        let mut rng = R::seed_from_u64(mix64(self.seed, index as u64));
        let channel_of = part.channel_of();
        let n = part.channel_count();
        pairwise_sum(self.batch_len(index), || {
            trajectory(rho0.matrix(), &channel_of, n, beta, &mut rng)
        })
    }

    /// Combine batch sums given in batch order.
    pub fn combine(&self, batch_sums: Vec<ComplexMatrix>) -> Result<DensityMatrix> {
        if self.samples == 0 {
            return Err(Error::Domain("Monte Carlo needs at least one sample"));
        }
        if batch_sums.len() != self.batch_count() {
            return Err(Error::DimensionMismatch("batch count differs from plan"));
        }
        let mut it = batch_sums.into_iter();
        let sum = pairwise_sum(self.batch_count(), || it.next().expect("counted"));
        normalise_average(sum, self.samples)
    }

    /// Serial evaluation of the whole plan.
    pub fn run<R: Rng + SeedableRng>(
        &self,
        rho0: &DensityMatrix,
        part: &ChannelPartition,
        beta: &BetaValue,
    ) -> Result<DensityMatrix> {
        let sums = (0..self.batch_count())
            .map(|k| self.run_batch::<R>(rho0, part, beta, k))
            .collect();
        self.combine(sums)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::beta_fgn;
    use approx::assert_abs_diff_eq;
    use rand_chacha::ChaCha8Rng;

    fn ghz() -> DensityMatrix {
        initial_state(InitialStateSpec::new(1.0).unwrap())
    }

    fn beta(v: f64) -> BetaValue {
        BetaValue::from_variance(v, 0.5).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            ChannelPartition::custom(vec![vec![0, 1], vec![]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            ChannelPartition::custom(vec![vec![0, 1], vec![1, 2, 3]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            ChannelPartition::custom(vec![vec![0, 1], vec![2]]),
            Err(Error::InvalidPartition(_))
        ));
        assert_eq!(
            ChannelPartition::custom(vec![vec![0, 4]]),
            Err(Error::IndexOutOfRange(4))
        );
        let alt = ChannelPartition::custom(vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(alt.kind(), ConfigKind::Custom);
    }

    #[test]
    fn preset_names_round_trip() {
        for k in ConfigKind::PRESETS {
            assert_eq!(ConfigKind::from_name(&k.name().to_lowercase()), Some(k));
            assert_eq!(ChannelPartition::preset(k).kind(), k);
        }
        assert_eq!(ConfigKind::from_name("custom"), None);
    }

    #[test]
    fn initial_state_examples() {
        let mixed = initial_state(InitialStateSpec::new(0.0).unwrap());
        assert_abs_diff_eq!(mixed.get(3, 3).re, 1.0 / 16.0, epsilon = 1e-16);
        let g = ghz();
        assert_eq!(g.get(0, 15).re, 0.5);
        assert_eq!(g.get(15, 15).re, 0.5);
        let half = initial_state(InitialStateSpec::new(0.5).unwrap());
        assert_abs_diff_eq!(half.matrix().trace().re, 1.0, epsilon = 1e-15);
        assert!(InitialStateSpec::new(1.01).is_err());
        assert!(InitialStateSpec::new(-0.1).is_err());
    }

    #[test]
    fn extreme_coherence_exponents() {
        let (u, v) = (0b0000, 0b1111);
        let want = [
            (ConfigKind::Clcq, 64),
            (ConfigKind::Blcq, 32),
            (ConfigKind::Tlcq, 24),
            (ConfigKind::Ilcq, 16),
        ];
        for (k, d) in want {
            let part = ChannelPartition::preset(k);
            assert_eq!(dephasing_exponent(u, v, &part), d, "{k}");
            assert_eq!(dephasing_exponent(v, u, &part), d);
            for w in 0..16 {
                assert_eq!(dephasing_exponent(w, w, &part), 0);
            }
        }
    }

    #[test]
    fn zero_beta_is_identity() {
        for k in ConfigKind::PRESETS {
            for p in [0.0, 0.4, 1.0] {
                let rho0 = initial_state(InitialStateSpec::new(p).unwrap());
                let out = apply_fgn_map(&rho0, &ChannelPartition::preset(k), &beta(0.0)).unwrap();
                assert!(out.matrix().max_abs_diff(rho0.matrix()).unwrap() <= 1e-14);
            }
        }
    }

    #[test]
    fn clcq_fidelity_matches_reference_curve() {
        let part = ChannelPartition::preset(ConfigKind::Clcq);
        for b in [0.0, 0.03, 0.25, 1.0, 4.0] {
            let out = apply_fgn_map(&ghz(), &part, &beta(b)).unwrap();
            let f = crate::densemat::trace_product(ghz().matrix(), out.matrix())
                .unwrap()
                .re;
            let e = libm::exp;
            let want = (e(-32.0 * b) + 12.0 * e(-8.0 * b) + 3.0) / 32.0;
            assert_abs_diff_eq!(f - 0.5, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn ilcq_large_beta_keeps_x_shape() {
        let out = apply_fgn_map(
            &ghz(),
            &ChannelPartition::preset(ConfigKind::Ilcq),
            &beta(20.0),
        )
        .unwrap();
        for i in 0..16 {
            for j in 0..16 {
                if i != j && i + j != 15 {
                    assert!(out.get(i, j).norm() < 1e-12, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn single_channel_is_partial() {
        // Dephasing only qubit 0 must leave a coherence that is invariant
        // under qubit-0 phases untouched in the Hadamard frame.
        let rho = ghz();
        let out = dephase_channel(&rho, &[0], 0.7).unwrap();
        let a = to_hadamard_frame(rho.matrix());
        let b = to_hadamard_frame(out.matrix());
        assert_abs_diff_eq!(
            b[(0b0000, 0b0011)].re,
            a[(0b0000, 0b0011)].re,
            epsilon = 1e-15
        );
        assert!(b[(0b0000, 0b1001)].re < a[(0b0000, 0b1001)].re);
    }

    #[test]
    fn mc_zero_beta_returns_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho0 = initial_state(InitialStateSpec::new(0.7).unwrap());
        let part = ChannelPartition::preset(ConfigKind::Tlcq);
        let out = mc_map(&rho0, &part, &beta_fgn(0.0, 0.5).unwrap(), 1, &mut rng).unwrap();
        assert!(out.matrix().max_abs_diff(rho0.matrix()).unwrap() <= 1e-15);
    }

    #[test]
    fn mc_rejects_zero_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let part = ChannelPartition::preset(ConfigKind::Clcq);
        assert!(mc_map(&ghz(), &part, &beta(0.1), 0, &mut rng).is_err());
    }

    #[test]
    fn mc_plan_is_deterministic_and_order_free() {
        let part = ChannelPartition::preset(ConfigKind::Blcq);
        let plan = McPlan {
            samples: 250,
            batch_size: 64,
            seed: 99,
        };
        let b = beta(0.3);
        let serial = plan.run::<ChaCha8Rng>(&ghz(), &part, &b).unwrap();
        let mut sums: Vec<_> = (0..plan.batch_count())
            .rev()
            .map(|k| (k, plan.run_batch::<ChaCha8Rng>(&ghz(), &part, &b, k)))
            .collect();
        sums.sort_by_key(|(k, _)| *k);
        let again = plan
            .combine(sums.into_iter().map(|(_, m)| m).collect())
            .unwrap();
        assert_eq!(serial, again);
    }

    #[test]
    fn mix64_spreads_indices() {
        assert_ne!(mix64(0, 0), mix64(0, 1));
        assert_ne!(mix64(1, 0), mix64(0, 0));
        assert_eq!(mix64(42, 7), mix64(42, 7));
    }

    #[test]
    fn pairwise_sum_counts() {
        for n in [1usize, 2, 3, 7, 8, 33] {
            let s = pairwise_sum(n, || ComplexMatrix::identity(2));
            assert_eq!(s[(0, 0)].re, n as f64);
        }
    }
}
