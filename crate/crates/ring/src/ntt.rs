//! Negacyclic number-theoretic transform.
//!
//! The transform evaluates a polynomial of Z_q[X]/(X^N+1) at the odd powers
//! of a primitive 2N-th root of unity ψ: coefficients are twisted by ψ^i,
//! followed by a standard size-N NTT over ω = ψ². Pointwise products in the
//! transformed domain therefore realize negacyclic convolution exactly.

use crate::error::Result;
use crate::modulus::{primitive_root, Modulus};

#[derive(Debug)]
pub struct NttTable {
    degree: usize,
    modulus: Modulus,
    root: u64,
    psi: Vec<u64>,
    psi_shoup: Vec<u64>,
    // ψ^{-i}·N^{-1} merged so the inverse pays one pass
    psi_inv_ninv: Vec<u64>,
    psi_inv_ninv_shoup: Vec<u64>,
    omega: Vec<u64>,
    omega_shoup: Vec<u64>,
    omega_inv: Vec<u64>,
    omega_inv_shoup: Vec<u64>,
}

impl NttTable {
    pub fn new(degree: usize, q: u64) -> Result<Self> {
        let root = primitive_root(q, degree)?;
        Ok(Self::with_root(degree, q, root))
    }

    pub fn with_root(degree: usize, q: u64, root: u64) -> Self {
        assert!(degree.is_power_of_two() && degree >= 2);
        let m = Modulus::new(q);
        debug_assert_eq!(m.pow(root, degree as u64), q - 1);

        let psi = powers(m, root, degree);
        let psi_inv = powers(m, m.inv(root), degree);
        let omega = powers(m, m.mul(root, root), degree);
        let omega_inv = powers(m, m.inv(m.mul(root, root)), degree);
        let n_inv = m.inv(degree as u64);
        let psi_inv_ninv: Vec<u64> = psi_inv.iter().map(|&v| m.mul(v, n_inv)).collect();

        let shoup = |v: &[u64]| v.iter().map(|&w| m.shoup(w)).collect::<Vec<_>>();
        Self {
            degree,
            modulus: m,
            root,
            psi_shoup: shoup(&psi),
            psi_inv_ninv_shoup: shoup(&psi_inv_ninv),
            omega_shoup: shoup(&omega),
            omega_inv_shoup: shoup(&omega_inv),
            psi,
            psi_inv_ninv,
            omega,
            omega_inv,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    /// Coefficient domain -> NTT domain, in place.
    pub fn forward(&self, a: &mut [u64]) {
        let n = self.degree;
        debug_assert_eq!(a.len(), n);
        let m = self.modulus;
        for i in 0..n {
            a[i] = m.mul_shoup(a[i], self.psi[i], self.psi_shoup[i]);
        }
        bit_reverse_permute(a);
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            let mut start = 0;
            while start < n {
                for j in 0..half {
                    let idx = j * step;
                    let u = a[start + j];
                    let v = m.mul_shoup(a[start + j + half], self.omega[idx], self.omega_shoup[idx]);
                    a[start + j] = m.add(u, v);
                    a[start + j + half] = m.sub(u, v);
                }
                start += len;
            }
            len <<= 1;
        }
    }

    /// NTT domain -> coefficient domain, in place.
    pub fn inverse(&self, a: &mut [u64]) {
        let n = self.degree;
        debug_assert_eq!(a.len(), n);
        let m = self.modulus;
        let mut len = n;
        while len >= 2 {
            let half = len / 2;
            let step = n / len;
            let mut start = 0;
            while start < n {
                for j in 0..half {
                    let idx = j * step;
                    let u = a[start + j];
                    let v = a[start + j + half];
                    a[start + j] = m.add(u, v);
                    a[start + j + half] =
                        m.mul_shoup(m.sub(u, v), self.omega_inv[idx], self.omega_inv_shoup[idx]);
                }
                start += len;
            }
            len >>= 1;
        }
        bit_reverse_permute(a);
        for i in 0..n {
            a[i] = m.mul_shoup(a[i], self.psi_inv_ninv[i], self.psi_inv_ninv_shoup[i]);
        }
    }
}

fn powers(m: Modulus, base: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut cur = 1u64;
    for _ in 0..n {
        out.push(cur);
        cur = m.mul(cur, base);
    }
    out
}

fn bit_reverse_permute(a: &mut [u64]) {
    let n = a.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            a.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn schoolbook_negacyclic(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let n = a.len();
        let m = Modulus::new(q);
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let prod = m.mul(a[i], b[j]);
                let k = i + j;
                if k < n {
                    out[k] = m.add(out[k], prod);
                } else {
                    out[k - n] = m.sub(out[k - n], prod);
                }
            }
        }
        out
    }

    #[test]
    fn round_trip_n16_q97() {
        let table = NttTable::new(16, 97).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..50 {
            let original: Vec<u64> = (0..16).map(|_| rng.gen_range(0..97)).collect();
            let mut a = original.clone();
            table.forward(&mut a);
            table.inverse(&mut a);
            assert_eq!(a, original);
        }
    }

    #[test]
    fn pointwise_is_negacyclic_convolution() {
        let q = 97;
        let n = 16;
        let table = NttTable::new(n, q).unwrap();
        let m = Modulus::new(q);
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let b: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let expected = schoolbook_negacyclic(&a, &b, q);
            let mut fa = a.clone();
            let mut fb = b.clone();
            table.forward(&mut fa);
            table.forward(&mut fb);
            let mut prod: Vec<u64> = fa.iter().zip(&fb).map(|(&x, &y)| m.mul(x, y)).collect();
            table.inverse(&mut prod);
            assert_eq!(prod, expected);
        }
    }

    #[test]
    fn large_prime_round_trip() {
        // 40-bit Table-1 sized prime at a reduced degree keeps the test quick
        let q = crate::modulus::find_ntt_primes(40, 1024, 1, &[]).unwrap()[0];
        let table = NttTable::new(1024, q).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let original: Vec<u64> = (0..1024).map(|_| rng.gen_range(0..q)).collect();
        let mut a = original.clone();
        table.forward(&mut a);
        table.inverse(&mut a);
        assert_eq!(a, original);
    }
}
