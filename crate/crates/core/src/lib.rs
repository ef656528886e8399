//! Exact-arithmetic workbench for bounded cochain complexes of finitely
//! generated free modules over Z, Q, and F_p.
//!
//! The library computes the cone/cylinder/shift calculus, cohomology with
//! invariant-factor torsion, homotopy-category constructions (null-homotopy
//! solving, hom groups, homotopy inverses, exact-triangle certificates),
//! derived functors (Tor, Ext, derived tensor), truncations and t-structure
//! verdicts including the torsion-theory tilt, and machine checks of the
//! four triangulation axioms.
//!
//! Coefficients are restricted to principal rings on purpose: over Z, Q and
//! F_p every submodule of a free module is free, so kernels, images and
//! truncations of free complexes stay free and all normal forms are exact.
//! Cohomology and other non-free objects are reported as [`FgModule`]
//! values (free rank plus invariant factors), never as complexes.

pub mod axioms;
pub mod complex;
pub mod cone;
pub mod derived;
pub mod error;
pub mod homotopy;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod snf;
pub mod tstruct;

pub use complex::{ChainComplex, ChainMap, Homotopy};
pub use cone::{LongExactSequence, Triangle};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use module::{FgModule, ModuleMap};
pub use ring::{CoefficientRing, Scalar};
