//! Scalar arithmetic modulo NTT-friendly 64-bit primes.

use crate::error::{Result, RingError};

/// An odd prime modulus below 2^62.
///
/// Plain products go through u128; table-driven products (twiddle factors,
/// fixed constants) use Shoup precomputation, see [`Modulus::mul_shoup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    value: u64,
}

impl Modulus {
    pub fn new(value: u64) -> Self {
        assert!(value > 2 && value % 2 == 1 && value < (1 << 62));
        Self { value }
    }

    #[inline(always)]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline(always)]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.value
    }

    #[inline(always)]
    pub fn add(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.value && b < self.value);
        let s = a + b;
        if s >= self.value {
            s - self.value
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.value && b < self.value);
        if a >= b {
            a - b
        } else {
            self.value - b + a
        }
    }

    #[inline(always)]
    pub fn neg(self, a: u64) -> u64 {
        debug_assert!(a < self.value);
        if a == 0 {
            0
        } else {
            self.value - a
        }
    }

    #[inline(always)]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.value as u128) as u64
    }

    /// Shoup precomputation for a fixed multiplicand w < q: floor(w·2^64 / q).
    #[inline]
    pub fn shoup(self, w: u64) -> u64 {
        debug_assert!(w < self.value);
        ((u128::from(w) << 64) / u128::from(self.value)) as u64
    }

    /// a·w mod q with `w_shoup = shoup(w)`. Two multiplies, no division.
    #[inline(always)]
    pub fn mul_shoup(self, a: u64, w: u64, w_shoup: u64) -> u64 {
        let hi = ((a as u128 * w_shoup as u128) >> 64) as u64;
        let r = a
            .wrapping_mul(w)
            .wrapping_sub(hi.wrapping_mul(self.value));
        if r >= self.value {
            r - self.value
        } else {
            r
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.value;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; q is prime.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.value != 0);
        self.pow(a, self.value - 2)
    }

    /// Map a signed integer to its least residue.
    #[inline]
    pub fn from_i64(self, v: i64) -> u64 {
        if v >= 0 {
            (v as u64) % self.value
        } else {
            let r = (v.unsigned_abs()) % self.value;
            self.neg(r)
        }
    }

    /// Centered representative in (-q/2, q/2].
    #[inline]
    pub fn to_centered_i64(self, r: u64) -> i64 {
        debug_assert!(r < self.value);
        if r > self.value / 2 {
            -((self.value - r) as i64)
        } else {
            r as i64
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let m = Modulus::new(n | 1); // n is odd here
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = m.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = m.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest `count` primes of the requested bit size congruent to 1 mod 2N,
/// skipping any in `exclude`. Searched downward from 2^bits.
pub fn find_ntt_primes(
    bits: u32,
    degree: usize,
    count: usize,
    exclude: &[u64],
) -> Result<Vec<u64>> {
    assert!(bits >= 2 && bits <= 61);
    let two_n = 2 * degree as u64;
    let top = 1u64 << bits;
    let floor = 1u64 << (bits - 1);
    let mut candidate = (top - 1) / two_n * two_n + 1;
    let mut found = Vec::with_capacity(count);
    while candidate > floor && found.len() < count {
        if !exclude.contains(&candidate) && is_prime_u64(candidate) {
            found.push(candidate);
        }
        candidate -= two_n;
    }
    if found.len() < count {
        return Err(RingError::NoNttPrime { bits, two_n });
    }
    Ok(found)
}

/// A primitive 2N-th root of unity mod q (requires q ≡ 1 mod 2N).
pub fn primitive_root(q: u64, degree: usize) -> Result<u64> {
    let two_n = 2 * degree as u64;
    if (q - 1) % two_n != 0 {
        return Err(RingError::BadModulus(q, degree));
    }
    let m = Modulus::new(q);
    for g in 2..q {
        let candidate = m.pow(g, (q - 1) / two_n);
        // order is a power of two dividing 2N; candidate^N = -1 pins it to exactly 2N
        if m.pow(candidate, degree as u64) == q - 1 {
            return Ok(candidate);
        }
    }
    Err(RingError::BadModulus(q, degree))
}
