//! Exact classification of affine operators f(x) = Ax + b up to biregular
//! conjugacy, over the rationals.
//!
//! The linear algebra and polynomial layers are generic over [`scalar::Field`];
//! the aliases below pin them to arbitrary-precision rationals, which is the
//! only instantiation the classification is actually sound for (every
//! decision is an exact equality, no tolerances anywhere).
//!
//! All values are immutable after construction and all operations are pure
//! functions; everything here is safe to call concurrently.

pub mod affine;
pub mod classify;
pub mod decompose;
pub mod frobenius;
pub mod harness;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod vector;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type MatrixQ = matrix::Matrix<Rational>;
pub type VectorQ = vector::Vector<Rational>;
pub type PolyQ = poly::Poly<Rational>;
pub type OperatorQ = affine::AffineOperator<Rational>;
pub type WitnessQ = affine::AffineWitness<Rational>;
pub type InvariantQ = classify::BiregularClassInvariant<Rational>;
pub type CanonicalFormQ = classify::CanonicalForm<Rational>;

pub use affine::{AffineError, AffineOperator, AffineWitness};
pub use classify::{
    biregularly_conjugate, canonical_form, canonical_semisimple_block, classify,
    image_dimension_sequence, reduce_no_fixed_point, BiregularClassInvariant, CanonicalForm,
    ClassifyError, ReductionTrace,
};
pub use decompose::{
    fitting_index, fitting_split, nilpotent_jordan_basis, nilpotent_partition,
    partition_from_rank_sequence, DecomposeError, FittingSplit, Partition,
};
pub use frobenius::{
    minors_gcd_invariant_factors, similar, smith_invariant_factors, FrobeniusError,
    InvariantFactors,
};
pub use harness::{
    random_affine_operator, random_affine_witness, run_invariance_suite, GenConfig, SplitMix64,
    SuiteReport,
};
pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{parse_rational, rational_string, Field};
pub use vector::Vector;
