//! Exact genus-0 Gromov-Witten invariants of root gerbes and banded abelian
//! gerbes, computed from the Gromov-Witten theory of the base.

pub mod abelian;
pub mod base;
pub mod combinat;
pub mod cyclonum;
pub mod error;
pub mod frobenius;
pub mod gerbe;
pub mod invariants;
pub mod limits;
pub mod potentials;

pub use abelian::{AbelianGroup, Character, GroupElement};
pub use base::{base_invariant, builtin_theory, BaseInsertion, BaseTheory, CurveClass};
pub use cyclonum::{CycNumber, Rational};
pub use error::{Error, Result};
pub use frobenius::{
    base_quantum_product, check_block_diagonal, check_wdvv, gerbe_quantum_product,
    semisimplicity_probe, QuantumProduct,
};
pub use gerbe::{enumerate_boundary_indices, BoundaryIndex, DCertificate, DRule, GerbeSpec};
pub use invariants::{
    genus_g_scale, rho_invariant, twisted_from_rho, twisted_invariant, RhoInsertion,
    TwistedInsertion,
};
pub use limits::Limits;
pub use num_complex::Complex64;
pub use potentials::{
    build_base_potential, build_gerbe_potential, novikov_twist, verify_decomposition,
    DecompositionReport, TruncatedPotential, Truncation,
};
