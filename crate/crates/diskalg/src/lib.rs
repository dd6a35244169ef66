//! Conformal automorphisms of the closed unit disk and the operator algebras
//! they generate.
//!
//! The library has three layers:
//!
//! * holomorphic dynamics — parameterized disk automorphisms, their
//!   hyperbolic/parabolic/elliptic classification, fixed points, normal forms,
//!   conjugacies, orbits and fundamental domains (`moebius`, `normal_form`,
//!   `dynamics`);
//! * a symbolic crossed product — finitely supported twisted Fourier
//!   polynomials `Σ fₙUⁿ` over an expression-tree coefficient algebra, with
//!   the gauge action, conditional expectations and Fejér sums (`crossed`);
//! * finite operator models — matrix truncations of the irreducible
//!   representations, Toeplitz-block symbol decompositions, rotation-algebra
//!   models, and symbolic closure operators for the four spectrum topologies
//!   (`operator`, `laurent`, `spectra`).
//!
//! Everything is pure and deterministic; random inputs for the test suites
//! come from the seeded generators in `sampling`.

pub mod cx;
pub mod crossed;
pub mod dynamics;
pub mod error;
pub mod laurent;
pub mod moebius;
pub mod normal_form;
pub mod operator;
pub mod sampleset;
pub mod sampling;
pub mod spectra;

pub use error::Error;
pub use moebius::{AutomorphismClass, ClassTag, DiskAutomorphism, FixedPointData, MoebiusWord};
