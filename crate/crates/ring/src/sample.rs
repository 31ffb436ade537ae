//! RLWE noise and key distributions.
//!
//! All sampling flows through a caller-supplied RNG so fixtures are
//! reproducible under a fixed seed.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::poly::{Form, RingContext, RnsPoly};

/// Uniform over [0, q_i) independently per prime, in the requested domain
/// (the map between domains is a bijection, so uniform is uniform either way).
pub fn sample_uniform<R: Rng + ?Sized>(
    ctx: &Arc<RingContext>,
    level: usize,
    form: Form,
    rng: &mut R,
) -> RnsPoly {
    let n = ctx.degree();
    let residues = (0..=level)
        .map(|i| {
            let q = ctx.prime(i).value;
            (0..n).map(|_| rng.gen_range(0..q)).collect()
        })
        .collect();
    RnsPoly::from_residues(ctx, form, residues).expect("uniform residues are in range")
}

/// Dense ternary: each coefficient uniform over {-1, 0, 1}.
pub fn sample_ternary<R: Rng + ?Sized>(
    ctx: &Arc<RingContext>,
    level: usize,
    rng: &mut R,
) -> RnsPoly {
    let n = ctx.degree();
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
    RnsPoly::from_signed_coeffs(ctx, level, &coeffs)
}

/// Ternary with exactly `weight` nonzero (±1) coefficients.
pub fn sample_sparse_ternary<R: Rng + ?Sized>(
    ctx: &Arc<RingContext>,
    level: usize,
    weight: usize,
    rng: &mut R,
) -> RnsPoly {
    let n = ctx.degree();
    assert!(weight <= n);
    let mut coeffs = vec![0i64; n];
    let mut placed = 0;
    while placed < weight {
        let idx = rng.gen_range(0..n);
        if coeffs[idx] == 0 {
            coeffs[idx] = if rng.gen::<bool>() { 1 } else { -1 };
            placed += 1;
        }
    }
    RnsPoly::from_signed_coeffs(ctx, level, &coeffs)
}

/// Rounded Gaussian with a 6σ tail cut (resampled on the rare excursion).
pub fn sample_gaussian<R: Rng + ?Sized>(
    ctx: &Arc<RingContext>,
    level: usize,
    sigma: f64,
    rng: &mut R,
) -> RnsPoly {
    let n = ctx.degree();
    if sigma <= 0.0 {
        return RnsPoly::zero(ctx, level, Form::Coefficient);
    }
    let normal = Normal::new(0.0, sigma).expect("sigma > 0");
    let bound = 6.0 * sigma;
    let coeffs: Vec<i64> = (0..n)
        .map(|_| {
            loop {
                let x = normal.sample(rng);
                if x.abs() <= bound {
                    return x.round() as i64;
                }
            }
        })
        .collect();
    RnsPoly::from_signed_coeffs(ctx, level, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingContext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ctx4096() -> Arc<RingContext> {
        RingContext::new(4096, &[40]).unwrap()
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let ctx = ctx4096();
        for sampler in [0, 1, 2, 3] {
            let mut r1 = ChaCha20Rng::seed_from_u64(42);
            let mut r2 = ChaCha20Rng::seed_from_u64(42);
            let (a, b) = match sampler {
                0 => (
                    sample_uniform(&ctx, 0, Form::Coefficient, &mut r1),
                    sample_uniform(&ctx, 0, Form::Coefficient, &mut r2),
                ),
                1 => (
                    sample_ternary(&ctx, 0, &mut r1),
                    sample_ternary(&ctx, 0, &mut r2),
                ),
                2 => (
                    sample_sparse_ternary(&ctx, 0, 64, &mut r1),
                    sample_sparse_ternary(&ctx, 0, 64, &mut r2),
                ),
                _ => (
                    sample_gaussian(&ctx, 0, 3.2, &mut r1),
                    sample_gaussian(&ctx, 0, 3.2, &mut r2),
                ),
            };
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ternary_support() {
        let ctx = ctx4096();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let p = sample_ternary(&ctx, 0, &mut rng);
        let q = ctx.prime(0).value;
        for &c in p.residue(0) {
            assert!(c == 0 || c == 1 || c == q - 1, "coefficient {c} not ternary");
        }
    }

    #[test]
    fn sparse_ternary_weight() {
        let ctx = ctx4096();
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let p = sample_sparse_ternary(&ctx, 0, 64, &mut rng);
        let nonzero = p.residue(0).iter().filter(|&&c| c != 0).count();
        assert_eq!(nonzero, 64);
    }

    #[test]
    fn gaussian_empirical_std() {
        // 10^5 samples: empirical std within 5% of sigma = 3.2
        let ctx = ctx4096();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let q = ctx.prime(0).value;
        let mut samples: Vec<f64> = Vec::with_capacity(100_000);
        while samples.len() < 100_000 {
            let p = sample_gaussian(&ctx, 0, 3.2, &mut rng);
            for &c in p.residue(0) {
                let v = if c > q / 2 { c as f64 - q as f64 } else { c as f64 };
                samples.push(v);
                assert!(v.abs() <= 6.0 * 3.2 + 0.5);
            }
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        assert!(
            (std - 3.2).abs() / 3.2 < 0.05,
            "empirical std {std} not within 5% of 3.2"
        );
    }
}
