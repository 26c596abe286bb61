//! Frobenius closures, special parts, F-spreads, minimal reductions and
//! adjacent families of closed ideals in graded quotients of polynomial
//! rings over `F_p`.

pub mod error;
pub mod fp_linear;
pub mod fp_poly;
pub mod groebner;
pub mod frobenius;
pub mod reduction;
pub mod family;

pub use error::{Error, Result};
pub use fp_linear::{FpMatrix, PrimeField, SubspaceBasis};
pub use fp_poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use groebner::{Colength, Ideal, QuotientRing};
pub use frobenius::{ClosureCertificate, ClosureConfig, SpecialPart, Witness};
pub use reduction::{ReductionCandidate, ReductionScene};
pub use family::{AdjacentFamily, ClosedChain};
