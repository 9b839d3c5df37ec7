//! Fast Walsh–Hadamard transform.
//!
//! The unnormalized transform `u_a = Σ_x (−1)^{a·x} v_x` moves permutation-
//! basis coefficients to local-projector-basis eigenvalues and back; applying
//! it twice returns `2^n` times the input.

use crate::error::{Error, Result};

/// In-place unnormalized Walsh–Hadamard transform, `O(len · log len)`
/// butterflies. The input is overwritten with the transform.
pub fn walsh_hadamard_in_place(v: &mut [f64]) -> Result<()> {
    if !v.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: v.len() });
    }
    let mut stride = 1;
    while stride < v.len() {
        for block in (0..v.len()).step_by(stride * 2) {
            for j in block..block + stride {
                let a = v[j];
                let b = v[j + stride];
                v[j] = a + b;
                v[j + stride] = a - b;
            }
        }
        stride *= 2;
    }
    Ok(())
}

/// Out-of-place convenience wrapper around [`walsh_hadamard_in_place`].
pub fn walsh_hadamard(v: &[f64]) -> Result<Vec<f64>> {
    let mut out = v.to_vec();
    walsh_hadamard_in_place(&mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn delta_transforms_to_constant() {
        assert_eq!(walsh_hadamard(&[1.0, 0.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn constant_transforms_to_delta() {
        let v = vec![1.0 / 36.0; 4];
        let u = walsh_hadamard(&v).unwrap();
        assert_relative_eq!(u[0], 1.0 / 9.0, max_relative = 1e-15);
        assert_eq!(&u[1..], &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(matches!(
            walsh_hadamard(&[1.0, 2.0, 3.0]),
            Err(Error::NotPowerOfTwo { len: 3 })
        ));
        assert!(walsh_hadamard(&[]).is_err());
    }

    #[test]
    fn matches_direct_summation() {
        let v: Vec<f64> = (0..16).map(|i| ((i * i + 3) % 7) as f64 - 2.0).collect();
        let u = walsh_hadamard(&v).unwrap();
        for a in 0..16usize {
            let direct: f64 = v
                .iter()
                .enumerate()
                .map(|(x, &vx)| if (a & x).count_ones() % 2 == 0 { vx } else { -vx })
                .sum();
            assert_relative_eq!(u[a], direct, max_relative = 1e-13);
        }
    }

    proptest! {
        #[test]
        fn involution_up_to_scale(
            log_len in 1u32..10,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let len = 1usize << log_len;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut u = v.clone();
            walsh_hadamard_in_place(&mut u).unwrap();
            walsh_hadamard_in_place(&mut u).unwrap();
            let scale = len as f64;
            for (orig, twice) in v.iter().zip(&u) {
                prop_assert!((twice - scale * orig).abs() <= 1e-12 * scale.max(orig.abs() * scale));
            }
        }

        #[test]
        fn parseval(
            log_len in 1u32..10,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let len = 1usize << log_len;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let u = walsh_hadamard(&v).unwrap();
            let vv: f64 = v.iter().map(|x| x * x).sum();
            let uu: f64 = u.iter().map(|x| x * x).sum();
            prop_assert!((uu - len as f64 * vv).abs() <= 1e-12 * (len as f64 * vv).max(1.0));
        }
    }
}
