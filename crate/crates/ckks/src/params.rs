//! Security-context parameters.

use crate::error::{CkksError, Result};

/// Parameters of a security context. The last entry of `coeff_bit_sizes` is
/// the key-switching special prime (never carries ciphertext data); fresh
/// ciphertexts start at the top of the remaining data chain and one rescale
/// drops the last data prime.
///
/// The noise fields are defaults tuned so that the precision contract of the
/// whole pipeline holds (fresh round trip within 1e-3 per slot, evaluated
/// linear forms within 1e-2); they are not a claim about concrete security.
#[derive(Debug, Clone, PartialEq)]
pub struct SecurityParams {
    pub poly_degree: usize,
    pub coeff_bit_sizes: Vec<u32>,
    pub scale: f64,
    pub rotation_steps: Vec<usize>,
    /// Std of fresh public-key / encryption noise (rounded Gaussian).
    pub enc_noise_std: f64,
    /// Std of key-switching key noise.
    pub ksk_noise_std: f64,
    /// Noise flooding applied after decryption, expressed as a slot-level
    /// std relative to the ciphertext scale.
    pub flood_slot_std: f64,
    /// Hamming weight of the ternary secret and encryption ephemerals.
    pub secret_weight: usize,
    /// Digit width (bits) of the key-switching decomposition.
    pub decomp_bits: u32,
}

impl SecurityParams {
    /// The paper's experiment context: N = 4096, coefficient modulus bit
    /// sizes (40, 20, 40), global scale 2^20, Galois keys generated for the
    /// power-of-two steps that cover a 26-slot sum.
    pub fn table1() -> Self {
        Self {
            poly_degree: 4096,
            coeff_bit_sizes: vec![40, 20, 40],
            scale: (1u64 << 20) as f64,
            rotation_steps: vec![1, 2, 4, 8, 16],
            enc_noise_std: 0.2,
            ksk_noise_std: 3.2,
            flood_slot_std: 1.0 / 512.0,
            secret_weight: 64,
            decomp_bits: 21,
        }
    }

    /// The high-security variant: N = 8192 with bit sizes
    /// (40, 21, 21, 21, 21, 21, 40).
    pub fn high_security() -> Self {
        Self {
            poly_degree: 8192,
            coeff_bit_sizes: vec![40, 21, 21, 21, 21, 21, 40],
            ..Self::table1()
        }
    }

    pub fn slot_count(&self) -> usize {
        self.poly_degree / 2
    }

    /// Number of data primes (the special prime excluded).
    pub fn data_prime_count(&self) -> usize {
        self.coeff_bit_sizes.len() - 1
    }

    /// Level of a fresh ciphertext.
    pub fn top_level(&self) -> usize {
        self.data_prime_count() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.poly_degree;
        if !n.is_power_of_two() || n < 8 {
            return Err(CkksError::InvalidParams(format!(
                "poly_degree {n} must be a power of two >= 8"
            )));
        }
        if self.coeff_bit_sizes.len() < 2 {
            return Err(CkksError::InvalidParams(
                "need at least one data prime and the special prime".into(),
            ));
        }
        if self.coeff_bit_sizes.iter().any(|&b| !(15..=60).contains(&b)) {
            return Err(CkksError::InvalidParams(
                "coefficient modulus bit sizes must be in 15..=60".into(),
            ));
        }
        if self.scale < 2.0 || self.scale.log2().fract() != 0.0 {
            return Err(CkksError::InvalidParams(format!(
                "scale {} must be a power of two >= 2",
                self.scale
            )));
        }
        // headroom: the scale must sit under the rescale prime
        let rescale_bits = self.coeff_bit_sizes[self.data_prime_count() - 1];
        if self.scale.log2() > rescale_bits as f64 + 1.0 {
            return Err(CkksError::InvalidParams(format!(
                "scale 2^{} exceeds the {rescale_bits}-bit rescale prime headroom",
                self.scale.log2()
            )));
        }
        if self.rotation_steps.is_empty() {
            return Err(CkksError::InvalidParams(
                "rotation schedule must not be empty".into(),
            ));
        }
        if self
            .rotation_steps
            .iter()
            .any(|&s| s == 0 || s >= self.slot_count())
        {
            return Err(CkksError::InvalidParams(
                "rotation steps must be in 1..N/2".into(),
            ));
        }
        if self.secret_weight == 0 || self.secret_weight > n {
            return Err(CkksError::InvalidParams(
                "secret weight must be in 1..=N".into(),
            ));
        }
        if !(1..=40).contains(&self.decomp_bits) {
            return Err(CkksError::InvalidParams(
                "decomposition digit width must be in 1..=40".into(),
            ));
        }
        if self.enc_noise_std < 0.0 || self.ksk_noise_std < 0.0 || self.flood_slot_std < 0.0 {
            return Err(CkksError::InvalidParams("noise stds must be >= 0".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_shape() {
        let p = SecurityParams::table1();
        p.validate().unwrap();
        assert_eq!(p.slot_count(), 2048);
        assert_eq!(p.data_prime_count(), 2);
        assert_eq!(p.top_level(), 1);
        assert_eq!(p.scale, (1u64 << 20) as f64);
    }

    #[test]
    fn high_security_shape() {
        let p = SecurityParams::high_security();
        p.validate().unwrap();
        assert_eq!(p.poly_degree, 8192);
        assert_eq!(p.coeff_bit_sizes.len(), 7);
        assert_eq!(p.top_level(), 5);
    }

    #[test]
    fn rejects_bad_params() {
        let mut p = SecurityParams::table1();
        p.poly_degree = 1000;
        assert!(p.validate().is_err());

        let mut p = SecurityParams::table1();
        p.scale = 3.0;
        assert!(p.validate().is_err());

        let mut p = SecurityParams::table1();
        p.rotation_steps = vec![];
        assert!(p.validate().is_err());

        let mut p = SecurityParams::table1();
        p.coeff_bit_sizes = vec![40];
        assert!(p.validate().is_err());
    }
}
