//! The central explicit constructions: the shift module B over ℤ/mℤ, the
//! semidirect products G_n = V_n⋊A_p and P_n = M_n⋊G_n, the function module
//! M_n = B^{V_n−{0}}, and the certificates that make their perfectness and
//! width bounds machine-checkable.

pub mod bmodule;
pub mod gn;
pub mod mn;

pub use bmodule::{certify_b_shift, BElement, BModule};
pub use gn::{
    certify_gn_perfect_width2, gn_group, mg_diameter_check, width_lower_bound, GnElem, GnGroup,
    VnSpace,
};
pub use mn::{avm_identities_check, certify_mn_perfect, MnContext, MnElement};

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};

/// Shared parameter bundle: two distinct primes p ≥ 5 and q, a modulus m
/// coprime to both, and the block count n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub p: u64,
    pub q: u64,
    pub m: u64,
    pub n: u32,
}

impl Params {
    pub fn new(p: u64, q: u64, m: u64, n: u32) -> Result<Self> {
        if !is_prime(p) || p < 5 {
            return Err(Error::InvalidParameter(format!("p must be a prime ≥ 5, got {p}")));
        }
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("q must be prime, got {q}")));
        }
        if p == q {
            return Err(Error::InvalidParameter(format!("p and q must be distinct, got {p}")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        if m > 1 << 31 {
            return Err(Error::InvalidParameter(format!(
                "m = {m} exceeds the supported range (≤ 2³¹)"
            )));
        }
        if gcd(m, p) != 1 {
            return Err(Error::InvalidParameter(format!(
                "m must be coprime to p: gcd({m},{p}) = {}",
                gcd(m, p)
            )));
        }
        if gcd(m, q) != 1 {
            return Err(Error::InvalidParameter(format!(
                "m must be coprime to q: gcd({m},{q}) = {}",
                gcd(m, q)
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        Ok(Params { p, q, m, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_reference_parameter_sets() {
        assert!(Params::new(5, 2, 3, 1).is_ok());
        assert!(Params::new(5, 3, 2, 1).is_ok());
        assert!(Params::new(5, 2, 3, 2).is_ok());
        assert!(Params::new(7, 2, 3, 1).is_ok());
        assert!(Params::new(5, 2, 1, 1).is_ok(), "m = 1 is coprime to everything");
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(Params::new(4, 2, 3, 1).is_err(), "p composite");
        assert!(Params::new(3, 2, 5, 1).is_err(), "p too small");
        assert!(Params::new(5, 4, 3, 1).is_err(), "q composite");
        assert!(Params::new(5, 5, 3, 1).is_err(), "p = q");
        assert!(Params::new(5, 2, 4, 1).is_err(), "gcd(m, q) = 2");
        assert!(Params::new(5, 2, 10, 1).is_err(), "gcd(m, q) = 2");
        assert!(Params::new(5, 3, 10, 1).is_err(), "gcd(m, p) = 5");
        assert!(Params::new(5, 2, 0, 1).is_err(), "m = 0");
        assert!(Params::new(5, 2, 3, 0).is_err(), "n = 0");
    }
}
