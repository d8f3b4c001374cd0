//! Eigenfamilies, harmonic morphisms and their non-compact duals on the
//! classical matrix Lie groups, checked numerically with second-order jets.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod config;
pub mod duality;
pub mod error;
pub mod expr;
pub mod families;
pub mod gram_schmidt;
pub mod group;
pub mod harness;
pub mod identities;
pub mod jets;
pub mod matrix;
pub mod morphisms;
pub mod report;
pub mod sampling;
pub mod suite;

pub use basis::{compact_basis, Metric, Sign, SignedBasis, SignedBasisVector};
pub use config::{FamilySpec, RunConfig};
pub use duality::{dual_pair, DualPair, Involution};
pub use error::{Error, Result};
pub use expr::{FunctionExpr, HomPoly, Polynomial};
pub use families::{Eigenfamily, Provenance};
pub use group::GroupId;
pub use jets::{Jet2, LocalFrame};
pub use matrix::{ComplexMatrix, C64};
pub use morphisms::{PowerFamily, RationalMorphism};
pub use report::{Residual, VerificationReport};
pub use sampling::SampleRng;
pub use suite::{SuiteConfig, SuiteReport};
