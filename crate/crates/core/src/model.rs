//! Shared domain types and small numeric utilities.
//!
//! Bitstring convention used everywhere in this crate: qudit `i` maps to bit
//! `i` of a configuration index, with the least-significant bit belonging to
//! qudit 0.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for numerical zero tests.
///
/// Chosen with headroom above the pairwise-summation error accumulated over
/// `2^n` terms at the largest supported system sizes.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Hard ceiling on the qudit count so that `2^n` indexing and dense
/// coefficient storage stay within sane memory budgets (128 MB of `f64` at
/// n = 24; n = 26 is allowed for statevector work at q = 2).
pub const MAX_QUDITS: usize = 26;

/// A bitstring in `F_2^n` encoded as an unsigned integer (qudit `i` ↔ bit `i`).
pub type ConfigIndex = usize;

/// Global model context: `n` qudits of local dimension `q`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    q: usize,
}

impl ModelParams {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams { n, q, reason: "need n >= 1" });
        }
        if n > MAX_QUDITS {
            return Err(Error::InvalidParams { n, q, reason: "n exceeds the supported maximum" });
        }
        if q < 2 {
            return Err(Error::InvalidParams { n, q, reason: "need q >= 2" });
        }
        Ok(Self { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of permutation-basis configurations, `2^n`.
    pub fn num_configs(&self) -> usize {
        1usize << self.n
    }

    /// Local dimension as a float.
    pub fn qf(&self) -> f64 {
        self.q as f64
    }

    /// Total Hilbert-space dimension `q^n` as a float.
    pub fn dim(&self) -> f64 {
        (self.q as f64).powi(self.n as i32)
    }

    /// `q^n` as an exact integer, if it fits the platform index type.
    pub fn dim_checked(&self) -> Option<usize> {
        self.q.checked_pow(self.n as u32)
    }
}

/// Population count of a configuration index.
pub fn hamming_weight(x: ConfigIndex) -> usize {
    x.count_ones() as usize
}

/// Sum of a slice by pairwise (tree) reduction.
///
/// Coefficients handled here can be as small as `(q(q+1))^{-n}`, so naive
/// left-to-right accumulation over `2^n` terms loses digits once n grows past
/// ~20; the tree keeps the error at `O(log len)` ulps.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const NAIVE_CUTOFF: usize = 32;
    if xs.len() <= NAIVE_CUTOFF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Permutation-basis coefficients `m_x` of an evolved two-copy moment
/// operator, one entry per configuration `x ∈ F_2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    params: ModelParams,
    coeffs: Vec<f64>,
}

impl MomentVector {
    /// Wraps raw coefficients. The length must be `2^n`.
    pub fn from_coeffs(params: ModelParams, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != params.num_configs() {
            return Err(Error::ParamsMismatch(format!(
                "coefficient vector has length {}, expected 2^{} = {}",
                coeffs.len(),
                params.n(),
                params.num_configs()
            )));
        }
        Ok(Self { params, coeffs })
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }
}

/// Dense matrix `W` of the averaged two-copy channel on the permutation
/// basis: entry `(y, x)` is the coefficient of `F_y` in the image of `F_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix {
    params: ModelParams,
    entries: Array2<f64>,
}

impl TransferMatrix {
    pub(crate) fn new(params: ModelParams, entries: Array2<f64>) -> Self {
        debug_assert_eq!(entries.nrows(), params.num_configs());
        debug_assert_eq!(entries.ncols(), params.num_configs());
        Self { params, entries }
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    /// Applies `W` to a coefficient vector (`out_y = Σ_x W_{y,x} v_x`).
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let size = self.params.num_configs();
        if v.len() != size {
            return Err(Error::ParamsMismatch(format!(
                "vector length {} does not match matrix size {}",
                v.len(),
                size
            )));
        }
        let mut out = vec![0.0; size];
        for (x, &vx) in v.iter().enumerate() {
            if vx == 0.0 {
                continue;
            }
            let col = self.entries.column(x);
            for (y, w) in col.iter().enumerate() {
                out[y] += w * vx;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1, 2).is_ok());
        assert!(ModelParams::new(0, 2).is_err());
        assert!(ModelParams::new(4, 1).is_err());
        assert!(ModelParams::new(MAX_QUDITS + 1, 2).is_err());
    }

    #[test]
    fn hamming_weight_examples() {
        assert_eq!(hamming_weight(0), 0);
        assert_eq!(hamming_weight((1usize << 4) - 1), 4);
        assert_eq!(hamming_weight(0b0110), 2);
    }

    #[test]
    fn moment_vector_length_checked() {
        let params = ModelParams::new(2, 2).unwrap();
        assert!(MomentVector::from_coeffs(params, vec![0.0; 4]).is_ok());
        assert!(MomentVector::from_coeffs(params, vec![0.0; 3]).is_err());
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_input() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert_relative_eq!(pairwise_sum(&xs), naive, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn hamming_weight_complement(n in 1usize..=20, bits in any::<usize>()) {
            let mask = (1usize << n) - 1;
            let x = bits & mask;
            prop_assert_eq!(hamming_weight(x) + hamming_weight(x ^ mask), n);
        }

        #[test]
        fn pairwise_sum_close_to_exact(xs in prop::collection::vec(-1e3f64..1e3, 1..500)) {
            // Kahan-compensated reference.
            let (mut s, mut c) = (0.0f64, 0.0f64);
            for &x in &xs {
                let y = x - c;
                let t = s + y;
                c = (t - s) - y;
                s = t;
            }
            prop_assert!((pairwise_sum(&xs) - s).abs() <= 1e-9 * (1.0 + s.abs()));
        }
    }
}
