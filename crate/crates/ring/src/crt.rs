//! Chinese-remainder reconstruction of RNS values.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Reconstruct the value in [0, Q) from its residues.
pub fn reconstruct(residues: &[u64], primes: &[u64]) -> BigInt {
    assert_eq!(residues.len(), primes.len());
    let q_total: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let mut acc = BigInt::zero();
    for (&r, &p) in residues.iter().zip(primes) {
        let p_big = BigInt::from(p);
        let q_hat = &q_total / &p_big;
        let q_hat_mod = (&q_hat % &p_big).to_u64().expect("fits");
        let inv = crate::modulus::Modulus::new(p).inv(q_hat_mod % p);
        acc += BigInt::from(r) * q_hat * BigInt::from(inv);
    }
    ((acc % &q_total) + &q_total) % q_total
}

/// Reconstruct the centered representative in (-Q/2, Q/2].
pub fn reconstruct_centered(residues: &[u64], primes: &[u64]) -> BigInt {
    let q_total: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let v = reconstruct(residues, primes);
    if &v * 2 > q_total {
        v - q_total
    } else {
        v
    }
}

/// Centered reconstruction as f64 (exact while |value| < 2^53, which holds
/// for every decodable plaintext coefficient in this system).
pub fn reconstruct_centered_f64(residues: &[u64], primes: &[u64]) -> f64 {
    if primes.len() == 1 {
        let q = primes[0];
        let r = residues[0];
        return if r > q / 2 {
            r as f64 - q as f64
        } else {
            r as f64
        };
    }
    let v = reconstruct_centered(residues, primes);
    bigint_to_f64(&v)
}

pub fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_small() {
        // x = 40 mod 17*97: residues (40 mod 17, 40 mod 97)
        let v = reconstruct(&[40 % 17, 40], &[17, 97]);
        assert_eq!(v, BigInt::from(40));
    }

    #[test]
    fn centered_negative() {
        // x = -3 -> Q - 3
        let q = 17u64 * 97;
        let x = q - 3;
        let v = reconstruct_centered(&[(x % 17), (x % 97)], &[17, 97]);
        assert_eq!(v, BigInt::from(-3));
    }

    #[test]
    fn single_prime_fast_path() {
        assert_eq!(reconstruct_centered_f64(&[16], &[17]), -1.0);
        assert_eq!(reconstruct_centered_f64(&[5], &[17]), 5.0);
    }
}
