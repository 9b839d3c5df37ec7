//! Circuit layouts: ordered layers of disjoint two-qudit gates.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Boundary condition for one-dimensional brickwork layouts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Open => write!(f, "open"),
            Boundary::Periodic => write!(f, "periodic"),
        }
    }
}

/// A circuit layout: ordered layers, each a list of disjoint qudit pairs.
///
/// Immutable after construction; every constructor validates the disjointness
/// and index-range invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Architecture {
    params: ModelParams,
    layers: Vec<Vec<(usize, usize)>>,
}

/// On-disk JSON form of an [`Architecture`].
#[derive(Serialize, Deserialize)]
struct ArchitectureFile {
    n: usize,
    q: usize,
    layers: Vec<Vec<[usize; 2]>>,
}

impl Architecture {
    pub fn new(params: ModelParams, layers: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let arch = Self { params, layers };
        arch.validate()?;
        Ok(arch)
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn layers(&self) -> &[Vec<(usize, usize)>] {
        &self.layers
    }

    /// Number of layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Checks index ranges and within-layer disjointness.
    pub fn validate(&self) -> Result<()> {
        let n = self.params.n();
        for (t, layer) in self.layers.iter().enumerate() {
            let mut used = vec![false; n];
            for &(i, j) in layer {
                for site in [i, j] {
                    if site >= n {
                        return Err(Error::QuditOutOfRange { layer: t, qudit: site, n });
                    }
                }
                if i == j {
                    return Err(Error::InvalidPair { i, j, n });
                }
                for site in [i, j] {
                    if used[site] {
                        return Err(Error::OverlappingPair { layer: t, qudit: site });
                    }
                    used[site] = true;
                }
            }
        }
        Ok(())
    }

    /// Serializes to the JSON architecture-file schema.
    pub fn to_json(&self) -> String {
        let file = ArchitectureFile {
            n: self.params.n(),
            q: self.params.q(),
            layers: self
                .layers
                .iter()
                .map(|layer| layer.iter().map(|&(i, j)| [i, j]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("architecture serialization cannot fail")
    }
}

/// One-dimensional brickwork: even layers pair `(i, i+1)` for even `i`, odd
/// layers for odd `i`; the periodic boundary adds the wrap pair `(n−1, 0)` on
/// odd layers when `n` is even. For `n = 2` every layer is the single pair
/// `(0, 1)` (the wrap pair would duplicate it).
pub fn brickwork_1d(params: ModelParams, depth: usize, boundary: Boundary) -> Result<Architecture> {
    let n = params.n();
    if n < 2 {
        return Err(Error::InvalidParams {
            n,
            q: params.q(),
            reason: "brickwork needs n >= 2",
        });
    }
    let mut layers = Vec::with_capacity(depth);
    for t in 0..depth {
        let mut layer = Vec::new();
        if n == 2 {
            layer.push((0, 1));
        } else {
            let start = t % 2;
            let mut i = start;
            while i + 1 < n {
                layer.push((i, i + 1));
                i += 2;
            }
            if boundary == Boundary::Periodic && t % 2 == 1 && n % 2 == 0 {
                layer.push((n - 1, 0));
            }
        }
        layers.push(layer);
    }
    Architecture::new(params, layers)
}

/// All-to-all layout: each layer is an independent uniformly random maximal
/// pairing of the qudits, `⌊n/2⌋` pairs per layer.
///
/// The pairing is produced by a Fisher–Yates shuffle driven by
/// `ChaCha8Rng::seed_from_u64(seed)` with the swap index taken as
/// `next_u64() % (i + 1)`, followed by pairing consecutive entries. The
/// modulo step is spelled out so the layout is reproducible bit-for-bit from
/// the seed alone (its bias is below 2^-58 for any supported `n`).
pub fn all_to_all(params: ModelParams, depth: usize, seed: u64) -> Architecture {
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            order.swap(i, j);
        }
        let layer: Vec<(usize, usize)> =
            order.chunks_exact(2).map(|pair| (pair[0], pair[1])).collect();
        layers.push(layer);
    }
    Architecture { params, layers }
}

/// Parses and validates the JSON architecture-file schema:
/// `{"n": 4, "q": 2, "layers": [[[0,1],[2,3]], [[1,2]]]}`.
pub fn parse_architecture(document: &str) -> Result<Architecture> {
    let file: ArchitectureFile = serde_json::from_str(document)?;
    let params = ModelParams::new(file.n, file.q)?;
    let layers = file
        .layers
        .into_iter()
        .map(|layer| layer.into_iter().map(|[i, j]| (i, j)).collect())
        .collect();
    Architecture::new(params, layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, q: usize) -> ModelParams {
        ModelParams::new(n, q).unwrap()
    }

    #[test]
    fn brickwork_open_n4() {
        let arch = brickwork_1d(params(4, 2), 2, Boundary::Open).unwrap();
        assert_eq!(arch.layers(), &[vec![(0, 1), (2, 3)], vec![(1, 2)]]);
    }

    #[test]
    fn brickwork_periodic_n4() {
        let arch = brickwork_1d(params(4, 2), 2, Boundary::Periodic).unwrap();
        assert_eq!(arch.layers(), &[vec![(0, 1), (2, 3)], vec![(1, 2), (3, 0)]]);
    }

    #[test]
    fn brickwork_n2_every_layer_has_the_single_pair() {
        let arch = brickwork_1d(params(2, 2), 3, Boundary::Open).unwrap();
        assert_eq!(arch.layers(), &[vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]]);
    }

    #[test]
    fn brickwork_rejects_single_qudit() {
        assert!(brickwork_1d(params(1, 2), 1, Boundary::Open).is_err());
    }

    #[test]
    fn brickwork_depth_two_touches_all_adjacent_pairs() {
        for n in 2..=9 {
            let arch = brickwork_1d(params(n, 2), 2, Boundary::Open).unwrap();
            for i in 0..n - 1 {
                assert!(
                    arch.layers().iter().flatten().any(|&p| p == (i, i + 1)),
                    "pair ({}, {}) missing at n = {}",
                    i,
                    i + 1,
                    n
                );
            }
        }
    }

    #[test]
    fn all_to_all_single_possible_pairing() {
        let arch = all_to_all(params(2, 2), 1, 7);
        let pair = arch.layers()[0][0];
        assert!(pair == (0, 1) || pair == (1, 0));
    }

    #[test]
    fn all_to_all_deterministic_and_valid() {
        let a = all_to_all(params(6, 2), 4, 42);
        let b = all_to_all(params(6, 2), 4, 42);
        assert_eq!(a, b);
        a.validate().unwrap();
        assert!(a.layers().iter().all(|layer| layer.len() == 3));
    }

    #[test]
    fn all_to_all_odd_n_leaves_one_idle() {
        let arch = all_to_all(params(5, 2), 1, 0);
        assert_eq!(arch.layers()[0].len(), 2);
        arch.validate().unwrap();
    }

    #[test]
    fn parse_valid_document() {
        let arch = parse_architecture(r#"{"n":4,"q":2,"layers":[[[0,1],[2,3]]]}"#).unwrap();
        assert_eq!(arch.depth(), 1);
        assert_eq!(arch.layers()[0], vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn parse_rejects_reused_qudit() {
        let err = parse_architecture(r#"{"n":4,"q":2,"layers":[[[0,1],[1,2]]]}"#).unwrap_err();
        assert!(matches!(err, Error::OverlappingPair { layer: 0, qudit: 1 }));
    }

    #[test]
    fn parse_rejects_out_of_range_index() {
        let err = parse_architecture(r#"{"n":4,"q":2,"layers":[[[0,7]]]}"#).unwrap_err();
        assert!(matches!(err, Error::QuditOutOfRange { qudit: 7, .. }));
    }

    #[test]
    fn parse_reports_position_for_malformed_document() {
        let err = parse_architecture(r#"{"n":4,"q":2,"layers":[[[0,1]"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") || msg.contains("column"), "got: {msg}");
    }

    #[test]
    fn json_round_trip() {
        let arch = brickwork_1d(params(5, 3), 3, Boundary::Open).unwrap();
        let parsed = parse_architecture(&arch.to_json()).unwrap();
        assert_eq!(arch, parsed);
    }
}
