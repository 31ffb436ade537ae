//! Canonical-embedding encoder.
//!
//! A real vector of up to N/2 slots is placed on the evaluation points
//! ζ^{5^j mod 2N} (ζ the primitive 2N-th complex root of unity); the other
//! N/2 conjugate points are implied by the real-coefficient constraint. The
//! inverse embedding of the conjugate-extended vector is computed by a
//! special-ordered FFT over N/2 points whose output supplies the real and
//! imaginary parts as the low and high coefficient halves.

use std::sync::Arc;

use num_complex::Complex64;

use credence_ring::{crt, Form, RingContext, RnsPoly};

use crate::error::{CkksError, Result};

#[derive(Debug)]
pub struct Encoder {
    degree: usize,
    half: usize,
    /// 5^j mod 2N for j < N/2
    rot_group: Vec<usize>,
    /// e^{2πik/2N} for k <= 2N
    ksi: Vec<Complex64>,
}

impl Encoder {
    pub fn new(degree: usize) -> Self {
        let m = 2 * degree;
        let half = degree / 2;
        let mut rot_group = Vec::with_capacity(half);
        let mut acc = 1usize;
        for _ in 0..half {
            rot_group.push(acc);
            acc = acc * 5 % m;
        }
        let ksi = (0..=m)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        Self {
            degree,
            half,
            rot_group,
            ksi,
        }
    }

    pub fn slot_count(&self) -> usize {
        self.half
    }

    /// Slot vector -> scaled integer coefficients (the inverse embedding).
    pub fn encode(
        &self,
        values: &[f64],
        scale: f64,
        level: usize,
        ring: &Arc<RingContext>,
    ) -> Result<RnsPoly> {
        if values.len() > self.half {
            return Err(CkksError::SlotOverflow {
                len: values.len(),
                slots: self.half,
            });
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(CkksError::NonFiniteInput(idx));
        }
        let coeffs = self.embed_real(values, scale);
        // overflow guard: coefficients must stay well inside the level modulus
        let max_mag = coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
        let log_q: f64 = (0..=level)
            .map(|i| (ring.prime(i).value as f64).log2())
            .sum();
        if max_mag.log2() >= log_q - 1.0 {
            return Err(CkksError::EncodingOverflow(max_mag.log2(), level));
        }
        let ints: Vec<i64> = coeffs.iter().map(|&c| c.round() as i64).collect();
        Ok(RnsPoly::from_signed_coeffs(ring, level, &ints))
    }

    /// Unrounded inverse embedding (scaled); exposed so tests can compare
    /// against the direct O(N^2) formula.
    pub fn embed_real(&self, values: &[f64], scale: f64) -> Vec<f64> {
        let mut slots = vec![Complex64::new(0.0, 0.0); self.half];
        for (i, &v) in values.iter().enumerate() {
            slots[i] = Complex64::new(v, 0.0);
        }
        self.fft_special_inv(&mut slots);
        let mut coeffs = vec![0.0f64; self.degree];
        for i in 0..self.half {
            coeffs[i] = slots[i].re * scale;
            coeffs[i + self.half] = slots[i].im * scale;
        }
        coeffs
    }

    /// Coefficients -> slot values (the forward embedding), real parts.
    pub fn decode(&self, poly: &RnsPoly, scale: f64) -> Result<Vec<f64>> {
        let coeff_poly;
        let p = match poly.form() {
            Form::Coefficient => poly,
            Form::Ntt => {
                coeff_poly = poly.ntt_inverse()?;
                &coeff_poly
            }
        };
        let level = p.level();
        let primes: Vec<u64> = (0..=level)
            .map(|i| p.context().prime(i).value)
            .collect();
        let mut column = vec![0u64; level + 1];
        let mut centered = |idx: usize, p: &RnsPoly| -> f64 {
            for (row, c) in column.iter_mut().enumerate() {
                *c = p.residue(row)[idx];
            }
            crt::reconstruct_centered_f64(&column, &primes)
        };
        let mut slots = Vec::with_capacity(self.half);
        for i in 0..self.half {
            let re = centered(i, p) / scale;
            let im = centered(i + self.half, p) / scale;
            slots.push(Complex64::new(re, im));
        }
        self.fft_special(&mut slots);
        Ok(slots.into_iter().map(|z| z.re).collect())
    }

    /// Direct evaluation of the poly at slot j's root; the O(N) oracle used
    /// by tests (and by nothing on the production path).
    pub fn eval_at_slot(&self, coeffs: &[f64], j: usize) -> Complex64 {
        let m = 2 * self.degree;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in coeffs.iter().enumerate() {
            acc += self.ksi[(self.rot_group[j] * i) % m] * c;
        }
        acc
    }

    fn fft_special(&self, vals: &mut [Complex64]) {
        let size = vals.len();
        let m = 2 * self.degree;
        bit_reverse(vals);
        let mut len = 2;
        while len <= size {
            let lenh = len >> 1;
            let lenq = len << 2;
            let mut i = 0;
            while i < size {
                for j in 0..lenh {
                    let idx = (self.rot_group[j] % lenq) * (m / lenq);
                    let u = vals[i + j];
                    let v = vals[i + j + lenh] * self.ksi[idx];
                    vals[i + j] = u + v;
                    vals[i + j + lenh] = u - v;
                }
                i += len;
            }
            len <<= 1;
        }
    }

    fn fft_special_inv(&self, vals: &mut [Complex64]) {
        let size = vals.len();
        let m = 2 * self.degree;
        let mut len = size;
        while len >= 2 {
            let lenh = len >> 1;
            let lenq = len << 2;
            let mut i = 0;
            while i < size {
                for j in 0..lenh {
                    let idx = (lenq - (self.rot_group[j] % lenq)) * (m / lenq);
                    let u = vals[i + j] + vals[i + j + lenh];
                    let v = (vals[i + j] - vals[i + j + lenh]) * self.ksi[idx];
                    vals[i + j] = u;
                    vals[i + j + lenh] = v;
                }
                i += len;
            }
            len >>= 1;
        }
        bit_reverse(vals);
        let inv = 1.0 / size as f64;
        for v in vals.iter_mut() {
            *v *= inv;
        }
    }
}

fn bit_reverse(vals: &mut [Complex64]) {
    let n = vals.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            vals.swap(i, j);
        }
    }
}
