//! Nilpotent quotients `G / gamma_{c+1}(G)` of finitely presented groups.
//!
//! The free nilpotent group `F / gamma_{c+1}(F)` is embedded in the truncated
//! Magnus ring, the image of the relator normal closure is computed as an
//! induced polycyclic sequence, and the quotient is read off as a weighted pc
//! presentation together with the graded quotients `gr_i(G)`.

mod collector;
mod free_nilpotent;
mod pcgs;
mod quotient;

pub use crate::linalg::{smith_normal_form, AbelianInvariants, IntMatrix, SmithForm};
pub use collector::{Collector, PcRelations};
pub use quotient::{
    collect, commutator_lattice, graded_quotients, image, in_gamma, nilpotent_quotient,
    nilpotent_quotient_with_budget, normal_closure_lattice, ExponentLattice, PcPresentation,
};

/// Resource limits for a quotient computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap on the number of generators of the free nilpotent cover.
    pub max_generators: usize,
    /// Cap on the size of the truncated Magnus ring.
    pub max_monomials: usize,
    /// Cap on the bit length of any coefficient.
    pub max_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_generators: 400, max_monomials: 1 << 14, max_bits: 1 << 14 }
    }
}
