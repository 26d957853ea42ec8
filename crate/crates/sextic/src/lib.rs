//! Rigid isotopy classification of complex plane sextic curves with simple
//! (ADE) singularities, by lattice arithmetic.
//!
//! A sextic with simple singularities determines a homological type inside
//! the K3 lattice 2E₈ ⊕ 3𝐔, and rigid isotopy classes correspond one-to-one
//! to oriented abstract homological types. This crate implements the whole
//! arithmetic side of that correspondence, exactly (no floating point
//! anywhere):
//!
//! * [`fqf`] — finite quadratic forms (discriminant forms): blocks ⟨m/n⟩,
//!   U(2^k), V(2^k), Brown invariants by Gauss sum and by block formulas,
//!   canonical normal forms, automorphism groups, isotropic kernels and
//!   quotients, p-adic determinant classes;
//! * [`lattice`] — even integral lattices as exact Gram matrices: signatures,
//!   discriminant forms via Smith normal form, short vectors and roots,
//!   reflections, finite-index extensions, definite isometry groups;
//! * [`rootdata`] — ADE root lattices, singularity sets Σ, S = Σ ⊕ ⟨h⟩, and
//!   the admissible automorphisms induced by Dynkin-graph symmetries;
//! * [`rank2`] — reduced forms M(a,b,c) of positive definite even rank-2
//!   lattices, their six-case orthogonal groups, genus enumeration;
//! * [`nikulin`] — genus existence, uniqueness, and surjectivity predicates;
//! * [`classify`] — the four-step pipeline (configurations, complements,
//!   gluing double cosets, symmetry) and rigid isotopy class counts;
//! * [`selftest`] — the acceptance corpus binding everything to published
//!   classification results.
//!
//! The `sextic` binary exposes the same operations as subcommands
//! (`classify`, `discr`, `genus2`, `brown`, `selftest`), and the `examples/`
//! directory demonstrates each capability in runnable form.

pub mod arith;
pub mod classify;
pub mod config;
pub mod cyclo;
pub mod error;
pub mod fqf;
pub mod lattice;
pub mod mat;
pub mod nikulin;
pub mod rank2;
pub mod rootdata;
pub mod selftest;

pub use config::Limits;
pub use error::{Error, Result};
