//! Exact linear algebra over cyclotomic fields for Levelt tuples,
//! pseudo-reflection groups and rigid local systems.
//!
//! Every algorithm is generic over [`Field`]; the crate provides two
//! scalar types, [`Rational`] and the cyclotomic [`Scalar`], and the
//! aliases below fix them for the common cases.

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod frame;
pub mod krylov;
pub mod levelt;
pub mod matrix;
pub mod poly;
pub mod reflection;
pub mod report;
pub mod rigidity;
pub mod roots;
pub mod stabilize;
pub mod subspace;
pub mod tuple;
pub mod wire;

pub use crate::algebra::{algebra_dimension, centralizer_dimension, sylvester_kernel};
pub use crate::cyclotomic::{cyclotomic_polynomial, root_of_unity, Cyclotomic};
pub use crate::error::{Error, Result};
pub use crate::field::Field;
pub use crate::frame::{shared_frame, FrameBranch, FrameMode, SharedFrame};
pub use crate::krylov::krylov_cyclic_vector;
pub use crate::levelt::{
    hypergeometric_tuple, levelt_construct, levelt_normalize, poly_from_roots,
    HypergeometricParams, SpectrumSpec,
};
pub use crate::matrix::Matrix;
pub use crate::poly::Poly;
pub use crate::reflection::{classify_pseudo_reflection, is_pseudo_reflection, PseudoReflectionKind};
pub use crate::report::{analyze, AnalysisReport, PairEntry, SpectrumReport};
pub use crate::rigidity::{rigidity_index, simultaneous_conjugator};
pub use crate::roots::{FindRoots, Roots};
pub use crate::stabilize::{
    beukers_irreducible, common_eigenvalue_from_invariant_subspace, common_line_or_hyperplane,
    StableSubspace,
};
pub use crate::subspace::Subspace;
pub use crate::tuple::MonodromyTuple;
pub use crate::wire::{TupleFile, WireScalar};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Elements of cyclotomic fields, the default scalar.
pub type Scalar = Cyclotomic;

pub type ScalarMatrix = Matrix<Scalar>;
pub type ScalarPoly = Poly<Scalar>;
pub type ScalarSubspace = Subspace<Scalar>;
pub type ScalarTuple = MonodromyTuple<Scalar>;
pub type ScalarSpectrum = SpectrumSpec<Scalar>;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalTuple = MonodromyTuple<Rational>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
