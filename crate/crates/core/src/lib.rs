//! Eigenvalue-functional values `Λᵢ = λᵢ · area` of the known extremal
//! metrics on the torus and the Klein bottle, and a numerical harness that
//! checks each of them against the lower bounds for `sup Λᵢ`.
//!
//! Families covered:
//!
//! - Otsuki tori `O_{p/q}` ([`otsuki`]), with an independent geodesic
//!   oracle ([`geodesic`])
//! - Lawson tau-surfaces `τ_{m,k}` ([`lawson`])
//! - bipolar Lawson surfaces `τ̃_{m,k}` and bipolar Otsuki tori `Õ_{p/q}`
//!   ([`bipolar`])
//! - the Clifford torus ([`clifford`])
//!
//! The shared numeric kernel is [`elliptic`]; elliptic integrals take the
//! modulus `k`, never the parameter `k²`.

pub mod bipolar;
pub mod bounds;
pub mod cli;
pub mod clifford;
pub mod elliptic;
mod error;
pub mod geodesic;
pub mod lawson;
pub mod otsuki;
pub mod quad;
pub mod record;
pub mod verify;

pub use error::{Error, Result};
pub use record::{ExtremalRecord, Family, Params, Topology, ValueKind};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
