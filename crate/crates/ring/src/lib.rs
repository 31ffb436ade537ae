//! Exact modular polynomial arithmetic in the negacyclic ring Z_q[X]/(X^N+1)
//! with a residue-number-system modulus chain: the computational substrate
//! for the homomorphic encryption layer.
//!
//! Everything here is immutable after construction and free of interior
//! mutability; values may be shared across threads without coordination.

pub mod crt;
pub mod error;
pub mod modulus;
pub mod ntt;
pub mod poly;
pub mod sample;

pub use error::{Result, RingError};
pub use modulus::{find_ntt_primes, is_prime_u64, primitive_root, Modulus};
pub use ntt::NttTable;
pub use poly::{Form, NttPrime, RingContext, RnsPoly, Rounding};
pub use sample::{sample_gaussian, sample_sparse_ternary, sample_ternary, sample_uniform};
