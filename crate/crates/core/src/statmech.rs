//! Exact evolution of second-moment data under the Haar-averaged two-copy
//! channel.
//!
//! State is carried as the `2^n` permutation-basis coefficients `m_x`. A
//! Haar-random two-qudit gate acts on the two bits of its pair only: the
//! aligned configurations 00 and 11 are fixed points, while each anti-aligned
//! configuration redistributes its weight equally onto 00 and 11 with weight
//! `γ = q/(q²+1)` and is then cleared. Everything else in this module is
//! bookkeeping around that rule.

use ndarray::Array2;
use rayon::prelude::*;

use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::model::{hamming_weight, pairwise_sum, ModelParams, MomentVector, TransferMatrix};

/// Largest `n` for which a dense `2^n × 2^n` transfer matrix is built by
/// default (about 0.5 GB of `f64` at the cap).
pub const DEFAULT_TRANSFER_CAP: usize = 13;

/// Transfer weights of one Haar-random two-qudit gate on its pair of
/// configuration bits: 00 → (1, 0), 11 → (0, 1), and 01, 10 → (γ, γ).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PairTransfer {
    q: usize,
    gamma: f64,
}

impl PairTransfer {
    pub fn q(&self) -> usize {
        self.q
    }

    /// Weight routed from an anti-aligned input onto each of 00 and 11.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// A deliberately perturbed set of weights; test/verification hook for
    /// sensitivity checks. Not a physical channel.
    pub fn corrupted(q: usize, delta: f64) -> Result<Self> {
        let mut w = pair_weights(q)?;
        w.gamma += delta;
        Ok(w)
    }
}

/// Transfer weights for local dimension `q`: `γ = q(q²−1)/(q⁴−1) = q/(q²+1)`.
pub fn pair_weights(q: usize) -> Result<PairTransfer> {
    if q < 2 {
        return Err(Error::InvalidLocalDimension { q });
    }
    let qf = q as f64;
    Ok(PairTransfer { q, gamma: qf / (qf * qf + 1.0) })
}

/// Permutation-basis coefficients of the two-copy moment of `|0…0⟩` after
/// the implicit layer of single-qudit Haar gates: the uniform vector
/// `m_x = (q(q+1))^{−n}`.
///
/// Baking the single-qudit layer in here makes every architecture (including
/// depth 0) invariant under local unitaries.
pub fn initial_moment(params: ModelParams) -> MomentVector {
    let per_site = 1.0 / (params.qf() * (params.qf() + 1.0));
    let value = per_site.powi(params.n() as i32);
    MomentVector::from_coeffs(params, vec![value; params.num_configs()])
        .expect("length is 2^n by construction")
}

/// The Haar fixed point: `m_0 = m_1 = 1/(q^n(q^n+1))` on the all-zero and
/// all-one configurations, zero elsewhere.
pub fn haar_moment_vector(params: ModelParams) -> MomentVector {
    let dim = params.dim();
    let value = 1.0 / (dim * (dim + 1.0));
    let mut coeffs = vec![0.0; params.num_configs()];
    coeffs[0] = value;
    coeffs[params.num_configs() - 1] = value;
    MomentVector::from_coeffs(params, coeffs).expect("length is 2^n by construction")
}

/// Applies one gate on `pair`, updating the coefficients in place.
///
/// Iterates the `2^{n−2}` settings of the spectator bits with bit-masked
/// indexing, so one gate costs `O(2^n)` with unit-stride access on the low
/// block.
pub fn apply_gate(m: &mut MomentVector, pair: (usize, usize), weights: &PairTransfer) -> Result<()> {
    let params = m.params();
    let n = params.n();
    let (i, j) = pair;
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidPair { i, j, n });
    }
    if weights.q != params.q() {
        return Err(Error::ParamsMismatch(format!(
            "transfer weights are for q = {}, moment vector has q = {}",
            weights.q,
            params.q()
        )));
    }
    let gamma = weights.gamma;
    let bit_i = 1usize << i;
    let bit_j = 1usize << j;
    let lo = i.min(j);
    let hi = i.max(j);
    let lo_mask = (1usize << lo) - 1;
    let mid_mask = (1usize << (hi - 1)) - 1 - lo_mask;
    let coeffs = m.coeffs_mut();
    for k in 0..(1usize << (n - 2)) {
        let base = (k & lo_mask) | ((k & mid_mask) << 1) | ((k & !(lo_mask | mid_mask)) << 2);
        let anti = gamma * (coeffs[base | bit_i] + coeffs[base | bit_j]);
        coeffs[base] += anti;
        coeffs[base | bit_i | bit_j] += anti;
        coeffs[base | bit_i] = 0.0;
        coeffs[base | bit_j] = 0.0;
    }
    Ok(())
}

/// Applies every gate of one layer in order.
pub fn apply_layer(
    m: &mut MomentVector,
    layer: &[(usize, usize)],
    weights: &PairTransfer,
) -> Result<()> {
    for &pair in layer {
        apply_gate(m, pair, weights)?;
    }
    Ok(())
}

/// Evolves a moment vector through every layer of `arch`.
pub fn evolve(m0: &MomentVector, arch: &Architecture) -> Result<MomentVector> {
    evolve_with_weights(m0, arch, &pair_weights(m0.params().q())?)
}

/// Like [`evolve`] but with caller-supplied transfer weights (used by the
/// verification sensitivity hook).
pub fn evolve_with_weights(
    m0: &MomentVector,
    arch: &Architecture,
    weights: &PairTransfer,
) -> Result<MomentVector> {
    if m0.params() != arch.params() {
        return Err(Error::ParamsMismatch(format!(
            "moment vector has (n, q) = ({}, {}), architecture has ({}, {})",
            m0.params().n(),
            m0.params().q(),
            arch.params().n(),
            arch.params().q()
        )));
    }
    let mut m = m0.clone();
    for layer in arch.layers() {
        apply_layer(&mut m, layer, weights)?;
    }
    Ok(m)
}

/// Collision probability `Z_ν = Σ_x m_x`.
pub fn collision_probability(m: &MomentVector) -> f64 {
    pairwise_sum(m.coeffs())
}

/// Operator trace `Σ_x m_x q^{2n−|x|}`; equals 1 for anything evolved from
/// [`initial_moment`] since the averaged channel is trace preserving.
pub fn trace_check(m: &MomentVector) -> f64 {
    let params = m.params();
    let two_n = 2 * params.n() as i32;
    let weighted: Vec<f64> = m
        .coeffs()
        .iter()
        .enumerate()
        .map(|(x, &mx)| mx * params.qf().powi(two_n - hamming_weight(x) as i32))
        .collect();
    pairwise_sum(&weighted)
}

/// Dense transfer matrix of the whole circuit on the permutation basis,
/// refusing `n` above [`DEFAULT_TRANSFER_CAP`].
pub fn transfer_matrix(arch: &Architecture) -> Result<TransferMatrix> {
    transfer_matrix_with_cap(arch, DEFAULT_TRANSFER_CAP)
}

/// Dense transfer matrix with an explicit cap on `n`. Columns are evolved
/// indicator vectors, computed in parallel.
pub fn transfer_matrix_with_cap(arch: &Architecture, cap: usize) -> Result<TransferMatrix> {
    let params = arch.params();
    let n = params.n();
    if n > cap {
        return Err(Error::ResourceCap { what: "dense transfer matrix", cap, n });
    }
    let size = params.num_configs();
    let weights = pair_weights(params.q())?;
    let columns: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|x| {
            let mut coeffs = vec![0.0; size];
            coeffs[x] = 1.0;
            let mut m = MomentVector::from_coeffs(params, coeffs)
                .expect("length is 2^n by construction");
            for layer in arch.layers() {
                for &pair in layer {
                    apply_gate(&mut m, pair, &weights).expect("validated architecture");
                }
            }
            m.into_coeffs()
        })
        .collect();
    let mut entries = Array2::zeros((size, size));
    for (x, col) in columns.iter().enumerate() {
        for (y, &w) in col.iter().enumerate() {
            entries[(y, x)] = w;
        }
    }
    Ok(TransferMatrix::new(params, entries))
}
