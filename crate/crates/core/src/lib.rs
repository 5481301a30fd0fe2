//! Exact computations with the Cartan-type Lie superalgebras W(n) and S(n).
//!
//! The crate builds W(n) (all derivations of the Grassmann algebra on n odd
//! generators) and its traceless subalgebra S(n) in exact rational arithmetic,
//! together with the machinery needed to study them through generators and
//! relations: Chevalley-type generator sets, the defining relation families,
//! minimal graded prolongation of a local superalgebra, root-space
//! decompositions with multiplicities, Weyl-group automorphisms of the
//! presentation, and an operator realization of the E-series generators on
//! the Grassmann algebra.
//!
//! Everything is deterministic and exact; there is no floating point anywhere.

pub mod cartan;
pub mod enreal;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod presentation;
pub mod prolong;
pub mod report;
pub mod roots;
pub mod sl1n;
pub mod theorems;
pub mod walg;

pub use error::{Error, Result};
pub use linalg::Rat;

/// Binomial coefficient as usize; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }
}
