//! RNS polynomials over the negacyclic ring Z_q[X]/(X^N+1).

use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::modulus::{find_ntt_primes, primitive_root, Modulus};
use crate::ntt::NttTable;

/// One prime of the modulus chain together with its 2N-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NttPrime {
    pub value: u64,
    pub bit_size: u32,
    pub root: u64,
}

/// Shared, immutable per-ring state: the modulus chain and its NTT tables.
#[derive(Debug)]
pub struct RingContext {
    degree: usize,
    primes: Vec<NttPrime>,
    tables: Vec<Arc<NttTable>>,
}

impl RingContext {
    /// Build a chain with one fresh prime per requested bit size (all ≡ 1 mod 2N,
    /// pairwise distinct, largest-first within a bit size).
    pub fn new(degree: usize, bit_sizes: &[u32]) -> Result<Arc<Self>> {
        if !degree.is_power_of_two() || degree < 2 {
            return Err(RingError::BadDegree(degree));
        }
        let mut chosen: Vec<u64> = Vec::with_capacity(bit_sizes.len());
        for &bits in bit_sizes {
            let p = find_ntt_primes(bits, degree, 1, &chosen)?[0];
            chosen.push(p);
        }
        Self::with_primes(degree, &chosen)
    }

    /// Build from explicit primes (each must be ≡ 1 mod 2N and prime).
    pub fn with_primes(degree: usize, primes: &[u64]) -> Result<Arc<Self>> {
        if !degree.is_power_of_two() || degree < 2 {
            return Err(RingError::BadDegree(degree));
        }
        let mut infos = Vec::with_capacity(primes.len());
        let mut tables = Vec::with_capacity(primes.len());
        for &q in primes {
            if !crate::modulus::is_prime_u64(q) || (q - 1) % (2 * degree as u64) != 0 {
                return Err(RingError::BadModulus(q, degree));
            }
            let root = primitive_root(q, degree)?;
            infos.push(NttPrime {
                value: q,
                bit_size: 64 - q.leading_zeros(),
                root,
            });
            tables.push(Arc::new(NttTable::with_root(degree, q, root)));
        }
        Ok(Arc::new(Self {
            degree,
            primes: infos,
            tables,
        }))
    }

    /// Build a ring that reuses already-computed tables (sub-basis construction).
    pub fn from_tables(degree: usize, tables: Vec<Arc<NttTable>>) -> Arc<Self> {
        let primes = tables
            .iter()
            .map(|t| NttPrime {
                value: t.modulus().value(),
                bit_size: 64 - t.modulus().value().leading_zeros(),
                root: t.root(),
            })
            .collect();
        Arc::new(Self {
            degree,
            primes,
            tables,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn max_level(&self) -> usize {
        self.primes.len() - 1
    }

    pub fn prime(&self, i: usize) -> &NttPrime {
        &self.primes[i]
    }

    pub fn primes(&self) -> &[NttPrime] {
        &self.primes
    }

    pub fn modulus(&self, i: usize) -> Modulus {
        Modulus::new(self.primes[i].value)
    }

    pub fn table(&self, i: usize) -> &Arc<NttTable> {
        &self.tables[i]
    }

    fn same_chain(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.primes.len() == other.primes.len()
            && self
                .primes
                .iter()
                .zip(&other.primes)
                .all(|(a, b)| a.value == b.value)
    }
}

/// Which domain the residues currently live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Coefficient,
    Ntt,
}

/// How [`RnsPoly::drop_last_prime`] treats the division remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Floor,
}

/// An element of the ring at some level of the modulus chain. Residue row i
/// holds the coefficients mod the i-th prime; rows exist for primes 0..=level.
#[derive(Debug, Clone)]
pub struct RnsPoly {
    ctx: Arc<RingContext>,
    form: Form,
    residues: Vec<Vec<u64>>,
}

impl PartialEq for RnsPoly {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
            && self.ctx.same_chain(&other.ctx)
            && self.residues == other.residues
    }
}

impl RnsPoly {
    pub fn zero(ctx: &Arc<RingContext>, level: usize, form: Form) -> Self {
        assert!(level <= ctx.max_level());
        let n = ctx.degree();
        Self {
            ctx: ctx.clone(),
            form,
            residues: vec![vec![0u64; n]; level + 1],
        }
    }

    /// Broadcast small unsigned coefficients (each below every prime) to all rows.
    pub fn from_small_coeffs(ctx: &Arc<RingContext>, level: usize, coeffs: &[u64]) -> Self {
        assert_eq!(coeffs.len(), ctx.degree());
        let mut residues = Vec::with_capacity(level + 1);
        for i in 0..=level {
            let m = ctx.modulus(i);
            residues.push(coeffs.iter().map(|&c| m.reduce(c)).collect());
        }
        Self {
            ctx: ctx.clone(),
            form: Form::Coefficient,
            residues,
        }
    }

    /// Broadcast signed coefficients, mapping negatives to least residues.
    pub fn from_signed_coeffs(ctx: &Arc<RingContext>, level: usize, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), ctx.degree());
        let mut residues = Vec::with_capacity(level + 1);
        for i in 0..=level {
            let m = ctx.modulus(i);
            residues.push(coeffs.iter().map(|&c| m.from_i64(c)).collect());
        }
        Self {
            ctx: ctx.clone(),
            form: Form::Coefficient,
            residues,
        }
    }

    pub fn from_residues(
        ctx: &Arc<RingContext>,
        form: Form,
        residues: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if residues.is_empty() || residues.len() > ctx.prime_count() {
            return Err(RingError::BadLevel(
                residues.len().saturating_sub(1),
                ctx.max_level(),
            ));
        }
        for (i, row) in residues.iter().enumerate() {
            if row.len() != ctx.degree() {
                return Err(RingError::DegreeMismatch(row.len(), ctx.degree()));
            }
            let q = ctx.prime(i).value;
            if row.iter().any(|&c| c >= q) {
                return Err(RingError::BadModulus(q, ctx.degree()));
            }
        }
        Ok(Self {
            ctx: ctx.clone(),
            form,
            residues,
        })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.ctx.degree()
    }

    pub fn level(&self) -> usize {
        self.residues.len() - 1
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn residue(&self, i: usize) -> &[u64] {
        &self.residues[i]
    }

    pub fn residue_rows(&self) -> &[Vec<u64>] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues
            .iter()
            .all(|row| row.iter().all(|&c| c == 0))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(RingError::DegreeMismatch(self.degree(), other.degree()));
        }
        if !self.ctx.same_chain(&other.ctx) {
            return Err(RingError::ContextMismatch);
        }
        if self.level() != other.level() {
            return Err(RingError::LevelMismatch(self.level(), other.level()));
        }
        if self.form != other.form {
            return Err(RingError::FormMismatch {
                expected: self.form,
                actual: other.form,
            });
        }
        Ok(())
    }

    /// Coefficient domain -> NTT domain.
    pub fn ntt_forward(&self) -> Result<Self> {
        if self.form != Form::Coefficient {
            return Err(RingError::FormMismatch {
                expected: Form::Coefficient,
                actual: self.form,
            });
        }
        let mut out = self.clone();
        for (i, row) in out.residues.iter_mut().enumerate() {
            self.ctx.table(i).forward(row);
        }
        out.form = Form::Ntt;
        Ok(out)
    }

    /// NTT domain -> coefficient domain.
    pub fn ntt_inverse(&self) -> Result<Self> {
        if self.form != Form::Ntt {
            return Err(RingError::FormMismatch {
                expected: Form::Ntt,
                actual: self.form,
            });
        }
        let mut out = self.clone();
        for (i, row) in out.residues.iter_mut().enumerate() {
            self.ctx.table(i).inverse(row);
        }
        out.form = Form::Coefficient;
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, (row, rhs)) in out.residues.iter_mut().zip(&other.residues).enumerate() {
            let m = self.ctx.modulus(i);
            for (a, &b) in row.iter_mut().zip(rhs) {
                *a = m.add(*a, b);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, (row, rhs)) in out.residues.iter_mut().zip(&other.residues).enumerate() {
            let m = self.ctx.modulus(i);
            for (a, &b) in row.iter_mut().zip(rhs) {
                *a = m.sub(*a, b);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (i, row) in out.residues.iter_mut().enumerate() {
            let m = self.ctx.modulus(i);
            for a in row.iter_mut() {
                *a = m.neg(*a);
            }
        }
        out
    }

    /// Negacyclic product. Both operands must share the domain; coefficient
    /// inputs are transformed, multiplied pointwise, and transformed back.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        match self.form {
            Form::Ntt => Ok(self.pointwise(other)),
            Form::Coefficient => {
                let product = self.ntt_forward()?.pointwise(&other.ntt_forward()?);
                product.ntt_inverse()
            }
        }
    }

    /// Pointwise product of NTT-domain operands (the hot path; no checks
    /// beyond debug assertions).
    pub fn pointwise(&self, other: &Self) -> Self {
        debug_assert_eq!(self.form, Form::Ntt);
        debug_assert_eq!(other.form, Form::Ntt);
        debug_assert_eq!(self.level(), other.level());
        let mut out = self.clone();
        for (i, (row, rhs)) in out.residues.iter_mut().zip(&other.residues).enumerate() {
            let m = self.ctx.modulus(i);
            for (a, &b) in row.iter_mut().zip(rhs) {
                *a = m.mul(*a, b);
            }
        }
        out
    }

    /// Accumulate `self += a ⊙ b` in the NTT domain.
    pub fn pointwise_acc(&mut self, a: &Self, b: &Self) {
        debug_assert_eq!(self.form, Form::Ntt);
        for i in 0..self.residues.len() {
            let m = self.ctx.modulus(i);
            let dst = &mut self.residues[i];
            let ra = &a.residues[i];
            let rb = &b.residues[i];
            for j in 0..dst.len() {
                dst[j] = m.add(dst[j], m.mul(ra[j], rb[j]));
            }
        }
    }

    /// Divide by the last prime of the active chain and drop it: the RNS
    /// rescaling step. With `Rounding::Nearest` the result is the nearest
    /// integer to c/q_last (per centered representative), with `Floor` the
    /// floor of the unsigned representative.
    pub fn drop_last_prime(&self, rounding: Rounding) -> Result<Self> {
        if self.form != Form::Coefficient {
            return Err(RingError::FormMismatch {
                expected: Form::Coefficient,
                actual: self.form,
            });
        }
        if self.level() == 0 {
            return Err(RingError::LevelExhausted);
        }
        let last_idx = self.level();
        let q_last = self.ctx.prime(last_idx).value;
        let half = q_last / 2;
        let last_row = &self.residues[last_idx];
        let n = self.degree();

        let mut residues = Vec::with_capacity(last_idx);
        for i in 0..last_idx {
            let m = self.ctx.modulus(i);
            let q_last_mod = m.reduce(q_last);
            let q_last_inv = m.inv(q_last_mod);
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let r = last_row[j];
                // centered remainder: values above q/2 stand for r - q_last
                let r_mod = match rounding {
                    Rounding::Nearest if r > half => m.sub(m.reduce(r), q_last_mod),
                    _ => m.reduce(r),
                };
                let diff = m.sub(self.residues[i][j], r_mod);
                row.push(m.mul(diff, q_last_inv));
            }
            residues.push(row);
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            form: Form::Coefficient,
            residues,
        })
    }

    /// Restrict to a lower level by discarding residue rows.
    pub fn mod_switch_to(&self, level: usize) -> Result<Self> {
        if level > self.level() {
            return Err(RingError::BadLevel(level, self.level()));
        }
        let mut out = self.clone();
        out.residues.truncate(level + 1);
        Ok(out)
    }

    /// The Galois automorphism X -> X^g on coefficients (g odd, 1 <= g < 2N).
    pub fn automorphism(&self, g: usize) -> Result<Self> {
        if self.form != Form::Coefficient {
            return Err(RingError::FormMismatch {
                expected: Form::Coefficient,
                actual: self.form,
            });
        }
        let n = self.degree();
        if g % 2 == 0 || g == 0 || g >= 2 * n {
            return Err(RingError::BadAutomorphism(g));
        }
        let mut out = Self::zero(&self.ctx, self.level(), Form::Coefficient);
        for (i, row) in self.residues.iter().enumerate() {
            let m = self.ctx.modulus(i);
            let dst = &mut out.residues[i];
            for (idx, &c) in row.iter().enumerate() {
                let t = (idx * g) % (2 * n);
                if t < n {
                    dst[t] = c;
                } else {
                    dst[t - n] = m.neg(c);
                }
            }
        }
        Ok(out)
    }

    /// Base-2^w digits of one residue row (coefficient domain), little-endian.
    pub fn residue_digits(&self, prime_idx: usize, base_bits: u32) -> Vec<Vec<u64>> {
        debug_assert_eq!(self.form, Form::Coefficient);
        let row = &self.residues[prime_idx];
        let bits = self.ctx.prime(prime_idx).bit_size;
        let count = bits.div_ceil(base_bits) as usize;
        let mask = (1u64 << base_bits) - 1;
        (0..count)
            .map(|k| {
                row.iter()
                    .map(|&c| (c >> (k as u32 * base_bits)) & mask)
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_ctx() -> Arc<RingContext> {
        RingContext::with_primes(8, &[17]).unwrap()
    }

    #[test]
    fn ntt_zero_fixed_point() {
        let ctx = small_ctx();
        let z = RnsPoly::zero(&ctx, 0, Form::Coefficient);
        let f = z.ntt_forward().unwrap();
        assert!(f.is_zero());
        assert!(f.ntt_inverse().unwrap().is_zero());
    }

    #[test]
    fn ntt_constant_round_trip() {
        let ctx = small_ctx();
        let mut coeffs = vec![0i64; 8];
        coeffs[0] = 5;
        let c = RnsPoly::from_signed_coeffs(&ctx, 0, &coeffs);
        let back = c.ntt_forward().unwrap().ntt_inverse().unwrap();
        assert_eq!(back, c);
        assert_eq!(back.residue(0)[0], 5);
        assert!(back.residue(0)[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn ntt_wrong_form_rejected() {
        let ctx = small_ctx();
        let z = RnsPoly::zero(&ctx, 0, Form::Ntt);
        assert!(matches!(
            z.ntt_forward(),
            Err(RingError::FormMismatch { .. })
        ));
        let c = RnsPoly::zero(&ctx, 0, Form::Coefficient);
        assert!(matches!(
            c.ntt_inverse(),
            Err(RingError::FormMismatch { .. })
        ));
    }

    #[test]
    fn mul_identity() {
        let ctx = small_ctx();
        let mut one = vec![0i64; 8];
        one[0] = 1;
        let one = RnsPoly::from_signed_coeffs(&ctx, 0, &one);
        let b = RnsPoly::from_signed_coeffs(&ctx, 0, &[3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(one.mul(&b).unwrap(), b);
    }

    #[test]
    fn mul_negacyclic_wrap() {
        // X * X^(N-1) = X^N = -1 in Z_q[X]/(X^N+1)
        let ctx = small_ctx();
        let mut x = vec![0i64; 8];
        x[1] = 1;
        let mut xn1 = vec![0i64; 8];
        xn1[7] = 1;
        let a = RnsPoly::from_signed_coeffs(&ctx, 0, &x);
        let b = RnsPoly::from_signed_coeffs(&ctx, 0, &xn1);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.residue(0)[0], 16); // -1 mod 17
        assert!(prod.residue(0)[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn add_zero_and_inverse() {
        let ctx = small_ctx();
        let a = RnsPoly::from_signed_coeffs(&ctx, 0, &[1, -2, 3, -4, 5, -6, 7, -8]);
        let z = RnsPoly::zero(&ctx, 0, Form::Coefficient);
        assert_eq!(a.add(&z).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.sub(&a).unwrap(), z);
    }

    #[test]
    fn shape_mismatch_errors() {
        let ctx = small_ctx();
        let ctx2 = RingContext::with_primes(8, &[17, 97]).unwrap();
        let a = RnsPoly::zero(&ctx, 0, Form::Coefficient);
        let b = RnsPoly::zero(&ctx2, 1, Form::Coefficient);
        assert!(matches!(a.add(&b), Err(RingError::ContextMismatch)));
        let c = RnsPoly::zero(&ctx2, 0, Form::Coefficient);
        let d = RnsPoly::zero(&ctx2, 1, Form::Coefficient);
        assert!(matches!(c.add(&d), Err(RingError::LevelMismatch(0, 1))));
    }

    #[test]
    fn drop_last_prime_exact_division() {
        let ctx = RingContext::with_primes(8, &[17, 97]).unwrap();
        // all coefficients equal to q_last = 97 -> all ones at level 0
        let p = RnsPoly::from_small_coeffs(&ctx, 1, &[97; 8]);
        let dropped = p.drop_last_prime(Rounding::Nearest).unwrap();
        assert_eq!(dropped.level(), 0);
        assert!(dropped.residue(0).iter().all(|&v| v == 1));

        let z = RnsPoly::zero(&ctx, 1, Form::Coefficient);
        let dz = z.drop_last_prime(Rounding::Nearest).unwrap();
        assert!(dz.is_zero());
    }

    #[test]
    fn drop_last_prime_bottom_error() {
        let ctx = small_ctx();
        let p = RnsPoly::zero(&ctx, 0, Form::Coefficient);
        assert!(matches!(
            p.drop_last_prime(Rounding::Nearest),
            Err(RingError::LevelExhausted)
        ));
    }

    #[test]
    fn automorphism_permutes_with_sign() {
        let ctx = small_ctx();
        // a = X: a(X^3) = X^3
        let mut x = vec![0i64; 8];
        x[1] = 1;
        let a = RnsPoly::from_signed_coeffs(&ctx, 0, &x);
        let t = a.automorphism(3).unwrap();
        assert_eq!(t.residue(0)[3], 1);
        // a = X^3: (X^3)^3 = X^9 = -X
        let mut x3 = vec![0i64; 8];
        x3[3] = 1;
        let b = RnsPoly::from_signed_coeffs(&ctx, 0, &x3);
        let t = b.automorphism(3).unwrap();
        assert_eq!(t.residue(0)[1], 16);
        // even exponents rejected
        assert!(matches!(
            a.automorphism(4),
            Err(RingError::BadAutomorphism(4))
        ));
    }

    #[test]
    fn residue_digits_recompose() {
        let ctx = RingContext::with_primes(8, &[97]).unwrap();
        let p = RnsPoly::from_small_coeffs(&ctx, 0, &[96, 1, 33, 64, 5, 0, 17, 80]);
        let digits = p.residue_digits(0, 3);
        assert_eq!(digits.len(), 3); // 7-bit prime, 3-bit digits
        for j in 0..8 {
            let mut v = 0u64;
            for (k, d) in digits.iter().enumerate() {
                v += d[j] << (3 * k);
            }
            assert_eq!(v, p.residue(0)[j]);
        }
    }
}
