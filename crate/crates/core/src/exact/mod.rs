//! Exact arithmetic layer: totients, cyclotomic polynomials, cyclotomic
//! field elements, rational matrix rank, and the planar-lattice membership
//! decision built on top of them. Nothing in this module rounds.

pub mod cyclo;
pub mod lattice;
pub mod rank;
pub mod totient;

pub use cyclo::{cyclotomic_polynomial, CycloElement};
pub use lattice::{
    exactly_real_independent, lattice_membership_decision, roots_in_lattice, LatticeBasis,
    LatticeWitness, MembershipResult,
};
pub use rank::{rational_rank, rational_rank_with_pivots};
pub use totient::{euler_phi, phi_equals_two_solutions, totient_sieve};
