//! Entanglement witness, negativities, purity and von Neumann entropy of a
//! four-qubit state.

use alloc::vec::Vec;

use crate::channels::ConfigKind;
use crate::densemat::{
    clamp_spectrum, hermitian_eigvals, partial_transpose, trace_product, ComplexMatrix,
    DensityMatrix, C64, PSD_TOL,
};
use crate::{Error, Result, DIM, QUBITS};

/// A cut of the register into two nonempty sides. The stored side is the
/// lexicographically smaller of the two sorted index lists, so a cut and its
/// mirror compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(side: &[usize]) -> Result<Self> {
        let mut a: Vec<usize> = Vec::with_capacity(side.len());
        for &q in side {
            if q >= QUBITS {
                return Err(Error::IndexOutOfRange(q));
            }
            if !a.contains(&q) {
                a.push(q);
            }
        }
        a.sort_unstable();
        if a.is_empty() || a.len() == QUBITS {
            return Err(Error::Domain("bipartition sides must both be nonempty"));
        }
        let b: Vec<usize> = (0..QUBITS).filter(|q| !a.contains(q)).collect();
        let (side_a, side_b) = if a <= b { (a, b) } else { (b, a) };
        Ok(Self { side_a, side_b })
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    /// Size of the smaller side.
    pub fn order(&self) -> usize {
        self.side_a.len().min(self.side_b.len())
    }

    /// Every distinct cut of the four-qubit register (4 + 3).
    pub fn all() -> Vec<Self> {
        let mut cuts: Vec<Self> = Vec::new();
        for mask in 1..(1usize << QUBITS) - 1 {
            let side: Vec<usize> = (0..QUBITS).filter(|q| mask & (1 << q) != 0).collect();
            let cut = Self::new(&side).expect("proper subset");
            if !cuts.contains(&cut) {
                cuts.push(cut);
            }
        }
        cuts
    }
}

/// `-Tr[(I/2 - rho_0) rho_t]`, evaluated as `Tr(rho_0 rho_t) - 1/2`.
/// Positive values certify entanglement relative to `rho_0`; the raw value
/// is reported without classifying negative outcomes.
pub fn witness(rho_t: &DensityMatrix, rho_0: &DensityMatrix) -> Result<f64> {
    Ok(trace_product(rho_0.matrix(), rho_t.matrix())?.re - 0.5)
}

/// The witness built from the operator `I/2 - rho_0` explicitly.
pub fn witness_operator_form(rho_t: &DensityMatrix, rho_0: &DensityMatrix) -> Result<f64> {
    let half_id = ComplexMatrix::identity(DIM).scale(C64::new(0.5, 0.0));
    let op = half_id.sub(rho_0.matrix())?;
    Ok(-trace_product(&op, rho_t.matrix())?.re)
}

/// Trace norm of the partial transpose over `cut.side_a()` minus one,
/// clamped at zero for roundoff.
pub fn negativity_bipartition(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    let pt = partial_transpose(rho, cut.side_a())?;
    let eig = hermitian_eigvals(&pt)?;
    let trace_norm: f64 = eig.iter().map(|l| l.abs()).sum();
    let neg = trace_norm - 1.0;
    if (-PSD_TOL..0.0).contains(&neg) {
        Ok(0.0)
    } else {
        Ok(neg)
    }
}

/// Average of the bipartition negativities:
/// `(2/N) sum_{k=1}^{N/2} (1/n_k) sum_{cuts of order k} NY(cut)`.
pub fn npartite_negativity(rho: &DensityMatrix) -> Result<f64> {
    let cuts = Bipartition::all();
    let mut total = 0.0;
    for k in 1..=QUBITS / 2 {
        let group: Vec<&Bipartition> = cuts.iter().filter(|c| c.order() == k).collect();
        let mut sum = 0.0;
        for cut in &group {
            sum += negativity_bipartition(rho, cut)?;
        }
        total += sum / group.len() as f64;
    }
    Ok(2.0 / QUBITS as f64 * total)
}

/// `Tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    trace_product(rho.matrix(), rho.matrix())
        .expect("square state")
        .re
}

/// `-Tr(rho ln rho)` in nats.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = clamp_spectrum(hermitian_eigvals(rho.matrix())?)?;
    Ok(eig
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * libm::log(l))
        .sum())
}

/// Parameter point attached to a [`MeasureRecord`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecordMeta {
    pub config: ConfigKind,
    pub hurst: f64,
    pub p: f64,
    pub tau: f64,
    pub beta: f64,
}

/// The four quantifiers at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureRecord {
    pub config: ConfigKind,
    pub hurst: f64,
    pub p: f64,
    pub tau: f64,
    pub beta: f64,
    pub er: f64,
    pub ny: f64,
    pub py: f64,
    pub ve: f64,
}

impl MeasureRecord {
    /// Checks the physical ranges of purity, entropy and negativity.
    pub fn check_bounds(&self) -> Result<()> {
        let eps = 1e-10;
        let max_entropy = libm::log(DIM as f64);
        if !(self.py >= 1.0 / DIM as f64 - eps && self.py <= 1.0 + eps) {
            return Err(Error::Domain("purity outside [1/16, 1]"));
        }
        if !(self.ve >= -eps && self.ve <= max_entropy + eps) {
            return Err(Error::Domain("entropy outside [0, ln 16]"));
        }
        if !(self.ny >= -eps) {
            return Err(Error::Domain("negativity below zero"));
        }
        Ok(())
    }
}

pub fn evaluate_all(
    rho_t: &DensityMatrix,
    rho_0: &DensityMatrix,
    meta: RecordMeta,
) -> Result<MeasureRecord> {
    Ok(MeasureRecord {
        config: meta.config,
        hurst: meta.hurst,
        p: meta.p,
        tau: meta.tau,
        beta: meta.beta,
        er: witness(rho_t, rho_0)?,
        ny: npartite_negativity(rho_t)?,
        py: purity(rho_t),
        ve: vn_entropy(rho_t)?,
    })
}
