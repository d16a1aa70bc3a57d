//! Exact symbolic calculus on polynomial rings over the rationals.
//!
//! The crate is organised in four layers:
//!
//! * foundation: arbitrary-precision rationals, sparse multivariate
//!   polynomials, monomial orders, Groebner bases, localization at a fixed
//!   denominator, and dense exact linear algebra;
//! * exterior calculus: polyvector fields and differential forms over a
//!   coordinate context or a free Lie algebroid, the Schouten bracket,
//!   de Rham and Lie operations, transfer along a volume form, and
//!   Batalin-Vilkovisky operators built from connections;
//! * complexes: Koszul complexes with truncated cohomology bookkeeping and
//!   Milnor rings of hypersurface singularities;
//! * deformation theory: graded Lie algebra presentations, Maurer-Cartan
//!   equations and their solution schemes, truncated cocommutative coalgebra
//!   complexes, coderivations on tensor coalgebras with the Gerstenhaber
//!   bracket, and deformations of finite-dimensional associative algebras
//!   over Artinian scalars.
//!
//! Every computation is exact; there is no floating point anywhere.
//! Randomised checks draw from a seeded deterministic generator so that
//! every run of a given seed replays the same samples.

pub mod artinian;
pub mod bv;
pub mod calculus;
pub mod cocom;
pub mod context;
pub mod deform;
pub mod dgla;
mod error;
pub mod groebner;
pub mod hochschild;
pub mod identity;
pub mod koszul;
pub mod matrix;
pub mod mc;
pub mod milnor;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polyvector;
pub mod rat;
pub mod sample;
pub mod schouten;

pub use error::{Error, Result};
pub use rat::Rat;

pub use artinian::ArtinianScalar;
pub use cocom::{CocomComplex, DegreeWindow, H0Comparison, InvariantsComparison};
pub use context::{Context, LieAlgebroidPresentation};
pub use deform::{FiniteAlgebra, Perturbation};
pub use dgla::GradedLieAlgebra;
pub use groebner::{GroebnerBasis, QuotientBasis};
pub use hochschild::{GradedMap, TensorMap};
pub use matrix::QMatrix;
pub use mc::{McScheme, McSolutionFamily};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{LocalizedElement, Polynomial};
pub use polyvector::{Blade, DifferentialForm, Polyvector};
