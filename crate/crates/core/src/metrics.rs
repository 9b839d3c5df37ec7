//! Scalar references and error functionals built on top of the exact engine.
//!
//! The Fourier (Walsh) transform of a moment vector gives its eigenvalues
//! `λ_a` on the ranges of the local projectors `P_a`; all of the relative
//! error functionals below are expressed through those eigenvalues or through
//! the projector-basis matrix of the full transfer channel.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::model::{
    hamming_weight, ConfigIndex, ModelParams, MomentVector, TransferMatrix, DEFAULT_TOLERANCE,
};
use crate::statmech::{self, evolve, initial_moment};
use crate::wht::walsh_hadamard_in_place;

/// Collision probability of a Haar-random unitary, `Z_H = 2/(q^n (q^n + 1))`.
pub fn haar_collision(params: ModelParams) -> f64 {
    let dim = params.dim();
    2.0 / (dim * (dim + 1.0))
}

/// Collision probability of the uniform outcome distribution, `q^{−2n}`.
pub fn uniform_collision(params: ModelParams) -> f64 {
    params.qf().powi(-2 * params.n() as i32)
}

/// Weight retained by a permutation operator of Hamming weight `w` under the
/// global Haar twirl: `α_w = (q^w + q^{n−w})/(q^n + 1)`; `α_0 = α_n = 1`.
pub fn haar_alpha(weight: usize, params: ModelParams) -> Result<f64> {
    let n = params.n();
    if weight > n {
        return Err(Error::WeightOutOfRange { weight, n });
    }
    let q = params.qf();
    Ok((q.powi(weight as i32) + q.powi((n - weight) as i32)) / (params.dim() + 1.0))
}

/// Relative anti-concentration error `ε_AC = Z/Z_H − 1`.
pub fn anticoncentration_error(z: f64, params: ModelParams) -> f64 {
    z / haar_collision(params) - 1.0
}

/// Relative state 2-design error implied by an anti-concentration error
/// `eps`: `ε' = 2 (q^n + 1)/(q^n − q) · eps/(1 − 1/q)`, about `4·eps` for
/// large systems at q = 2. Meaningful in the regime `0 ≤ eps < 1`.
pub fn state_design_bound(eps: f64, params: ModelParams) -> Result<f64> {
    if params.n() < 2 {
        return Err(Error::InvalidParams {
            n: params.n(),
            q: params.q(),
            reason: "the design bound needs n >= 2",
        });
    }
    let dim = params.dim();
    let q = params.qf();
    Ok(2.0 * (dim + 1.0) / (dim - q) * eps / (1.0 - 1.0 / q))
}

/// Walsh spectrum `λ_a = Σ_x (−1)^{a·x} m_x` of a moment vector: the
/// eigenvalue of the moment operator on the range of `P_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCoeffs {
    params: ModelParams,
    lambda: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `λ_0`, which equals the collision probability.
    pub fn z_nu(&self) -> f64 {
        self.lambda[0]
    }
}

pub fn spectral_coeffs(m: &MomentVector) -> SpectralCoeffs {
    let mut lambda = m.coeffs().to_vec();
    walsh_hadamard_in_place(&mut lambda).expect("moment vectors have power-of-two length");
    SpectralCoeffs { params: m.params(), lambda }
}

/// Dimension of the globally symmetric subspace, `D_∨ = q^n (q^n + 1)/2`.
pub fn symmetric_dim(params: ModelParams) -> f64 {
    let dim = params.dim();
    dim * (dim + 1.0) / 2.0
}

/// Dimension of the globally antisymmetric subspace, `D_∧ = q^n (q^n − 1)/2`.
pub fn antisymmetric_dim(params: ModelParams) -> f64 {
    let dim = params.dim();
    dim * (dim - 1.0) / 2.0
}

/// Rank of the local projector `P_a`:
/// `D_a = 2^{−n} q^n (q−1)^{|a|} (q+1)^{n−|a|}`.
pub fn projector_rank(a: ConfigIndex, params: ModelParams) -> f64 {
    let q = params.qf();
    let w = hamming_weight(a) as i32;
    (q * (q + 1.0) / 2.0).powi(params.n() as i32 - w) * (q * (q - 1.0) / 2.0).powi(w)
}

/// Exact relative state 2-design error of the ensemble with spectrum `lam`:
/// the maximum of `|D_∨ λ_a − 1|` over even-parity `a`.
///
/// The moment operator of any circuit ensemble lives in the symmetric
/// subspace, so odd-parity eigenvalues must vanish; a violation above
/// `DEFAULT_TOLERANCE` signals a broken engine invariant and is reported as
/// an error rather than folded into the result.
pub fn state_design_error(lam: &SpectralCoeffs) -> Result<f64> {
    state_design_error_with_tolerance(lam, DEFAULT_TOLERANCE)
}

pub fn state_design_error_with_tolerance(lam: &SpectralCoeffs, tol: f64) -> Result<f64> {
    let d_sym = symmetric_dim(lam.params());
    let mut err: f64 = 0.0;
    for (a, &value) in lam.lambda().iter().enumerate() {
        if hamming_weight(a) % 2 == 0 {
            err = err.max((d_sym * value - 1.0).abs());
        } else if value.abs() > tol {
            return Err(Error::Inconsistency(format!(
                "odd-parity spectral coefficient λ[{a}] = {value:e} exceeds tolerance {tol:e}"
            )));
        }
    }
    Ok(err)
}

/// Projector-basis matrix of the averaged channel:
/// `m̃_{a,b} = tr(P_a M_ν(P_b))/D_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorMoments {
    params: ModelParams,
    mtilde: Array2<f64>,
}

impl ProjectorMoments {
    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn mtilde(&self) -> &Array2<f64> {
        &self.mtilde
    }
}

/// Converts a permutation-basis transfer matrix to the projector basis via a
/// two-sided Walsh transform, `m̃_{a,b} = 2^{−n} Σ_{x,y} (−1)^{a·y + b·x}
/// W_{y,x}`, in `O(4^n · n)`.
pub fn projector_moments(w: &TransferMatrix) -> ProjectorMoments {
    let params = w.params();
    let size = params.num_configs();
    let mut mtilde = w.entries().clone();
    // Rows are contiguous; transform x -> b first, then columns y -> a
    // through a scratch buffer.
    for mut row in mtilde.rows_mut() {
        let slice = row.as_slice_mut().expect("row-major layout");
        walsh_hadamard_in_place(slice).expect("power-of-two size");
    }
    let mut scratch = vec![0.0; size];
    for x in 0..size {
        for (y, s) in scratch.iter_mut().enumerate() {
            *s = mtilde[(y, x)];
        }
        walsh_hadamard_in_place(&mut scratch).expect("power-of-two size");
        for (y, s) in scratch.iter().enumerate() {
            mtilde[(y, x)] = *s;
        }
    }
    let scale = 1.0 / size as f64;
    mtilde.mapv_inplace(|v| v * scale);
    ProjectorMoments { params, mtilde }
}

/// Haar reference for the projector-basis matrix, `tr(P_a M_H(P_b))/D_a`:
/// `D_b/D_∨` when `|a|, |b|` are both even, `D_b/D_∧` both odd, else 0.
pub fn haar_projector_moment(a: ConfigIndex, b: ConfigIndex, params: ModelParams) -> f64 {
    let pa = hamming_weight(a) % 2;
    let pb = hamming_weight(b) % 2;
    if pa != pb {
        return 0.0;
    }
    let global = if pa == 0 { symmetric_dim(params) } else { antisymmetric_dim(params) };
    projector_rank(b, params) / global
}

/// Relative unitary 2-design error read off the projector basis: the maximum
/// of `|m̃_{a,b} − m̃_H(a,b)| / m̃_H(a,b)` over parity-matching `(a, b)`.
///
/// Parity-mismatched pairs are 0/0 by the selection rule and contribute
/// nothing, provided the numerator is below tolerance; otherwise the input
/// is inconsistent and an error is returned.
pub fn unitary_design_error(mt: &ProjectorMoments) -> Result<f64> {
    unitary_design_error_with_tolerance(mt, DEFAULT_TOLERANCE)
}

pub fn unitary_design_error_with_tolerance(mt: &ProjectorMoments, tol: f64) -> Result<f64> {
    let params = mt.params();
    let size = params.num_configs();
    let mut err: f64 = 0.0;
    for a in 0..size {
        for b in 0..size {
            let value = mt.mtilde()[(a, b)];
            let haar = haar_projector_moment(a, b, params);
            if haar == 0.0 {
                if value.abs() > tol {
                    return Err(Error::Inconsistency(format!(
                        "parity-mismatched projector moment m̃[{a},{b}] = {value:e} \
                         exceeds tolerance {tol:e}"
                    )));
                }
                continue;
            }
            err = err.max((value - haar).abs() / haar);
        }
    }
    Ok(err)
}

/// Diagnostics around the positive-semidefinite structure of the projector
/// matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PsdDiagnostics {
    /// Whether `m̃_{0,0} ≥ m̃_{a,b}` holds for every entry (within tolerance).
    pub dominance_holds: bool,
    /// `max_{a,b} m̃_{a,b} − m̃_{0,0}` (non-positive when dominance holds).
    pub dominance_excess: f64,
    /// Diagonal relative error `max_a m̃_{a,a}/m̃_H(a,a) − 1`, the exact
    /// design error for circuits whose averaged channel is psd.
    pub diagonal_error: f64,
    /// Full maximization over parity-matching pairs (mismatched pairs are
    /// taken as zero).
    pub full_error: f64,
    /// Whether the full maximum is attained on the diagonal.
    pub max_on_diagonal: bool,
    /// Largest parity-mismatched entry magnitude (should be numerical noise).
    pub parity_violation: f64,
}

pub fn psd_diagnostics(mt: &ProjectorMoments) -> PsdDiagnostics {
    let params = mt.params();
    let size = params.num_configs();
    let m00 = mt.mtilde()[(0, 0)];
    let mut max_entry = f64::NEG_INFINITY;
    let mut full_error: f64 = 0.0;
    let mut diag_abs: f64 = 0.0;
    let mut diagonal_error = f64::NEG_INFINITY;
    let mut parity_violation: f64 = 0.0;
    for a in 0..size {
        for b in 0..size {
            let value = mt.mtilde()[(a, b)];
            max_entry = max_entry.max(value);
            let haar = haar_projector_moment(a, b, params);
            if haar == 0.0 {
                parity_violation = parity_violation.max(value.abs());
                continue;
            }
            let rel = (value - haar).abs() / haar;
            full_error = full_error.max(rel);
            if a == b {
                diag_abs = diag_abs.max(rel);
                diagonal_error = diagonal_error.max(value / haar - 1.0);
            }
        }
    }
    let tol = DEFAULT_TOLERANCE;
    PsdDiagnostics {
        dominance_holds: max_entry <= m00 + tol,
        dominance_excess: max_entry - m00,
        diagonal_error,
        full_error,
        max_on_diagonal: full_error - diag_abs <= tol * full_error.max(1.0),
        parity_violation,
    }
}

/// Unitary-design numbers included in a [`MetricsReport`] when requested.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitaryDiagnostics {
    pub design_error: f64,
    #[serde(flatten)]
    pub psd: PsdDiagnostics,
}

/// Collected scalars for one evolved circuit, plus provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricsReport {
    pub architecture: String,
    pub n: usize,
    pub q: usize,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub z_nu: f64,
    pub z_haar: f64,
    pub z_uniform: f64,
    pub eps_ac: f64,
    pub eps_state: f64,
    /// Design-error bound implied by `eps_ac`; absent outside the bound's
    /// regime (`eps_ac ≥ 1` or `n < 2`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_state_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitary: Option<UnitaryDiagnostics>,
}

/// Evolves `arch` from the initial moment and assembles every scalar metric.
/// Unitary diagnostics require the dense transfer matrix and are gated on
/// `transfer_cap`.
pub fn compute_report(
    arch: &Architecture,
    descriptor: String,
    seed: Option<u64>,
    with_unitary: bool,
    transfer_cap: usize,
) -> Result<MetricsReport> {
    let params = arch.params();
    let m = evolve(&initial_moment(params), arch)?;
    let lam = spectral_coeffs(&m);
    let z_nu = lam.z_nu();
    let eps_ac = anticoncentration_error(z_nu, params);
    let eps_state = state_design_error(&lam)?;
    let eps_state_bound = if eps_ac < 1.0 && params.n() >= 2 {
        Some(state_design_bound(eps_ac, params)?)
    } else {
        None
    };
    let unitary = if with_unitary {
        let w = statmech::transfer_matrix_with_cap(arch, transfer_cap)?;
        let mt = projector_moments(&w);
        Some(UnitaryDiagnostics {
            design_error: unitary_design_error(&mt)?,
            psd: psd_diagnostics(&mt),
        })
    } else {
        None
    };
    Ok(MetricsReport {
        architecture: descriptor,
        n: params.n(),
        q: params.q(),
        depth: arch.depth(),
        seed,
        z_nu,
        z_haar: haar_collision(params),
        z_uniform: uniform_collision(params),
        eps_ac,
        eps_state,
        eps_state_bound,
        unitary,
    })
}
