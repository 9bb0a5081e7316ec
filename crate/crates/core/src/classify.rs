//! The classification itself: complete biregular-conjugacy invariant,
//! conjugacy decision, exact canonical representatives, and the constructive
//! no-fixed-point reduction with an affine witness.
//!
//! Inputs are rational but the conjugacy classes live over the algebraic
//! closure. All three invariant ingredients (invariant factors, the
//! characteristic polynomial of the nonsingular Fitting block, the nilpotent
//! partition) are rational data that determine the closure-level invariants
//! completely, so no algebraic-number arithmetic is needed anywhere.

use std::fmt;

use crate::affine::{AffineOperator, AffineWitness};
use crate::decompose::{fitting_split, nilpotent_jordan_basis, nilpotent_partition, Partition};
use crate::frobenius::{smith_invariant_factors, InvariantFactors};
use crate::matrix::Matrix;
use crate::poly::{factored_string, Poly};
use crate::scalar::Field;
use crate::vector::Vector;

/// Complete invariant of an affine operator up to biregular conjugacy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BiregularClassInvariant<T> {
    /// Operator has a fixed point: the class is determined by the similarity
    /// class of its matrix.
    FixedPointCase { factors: InvariantFactors<T> },
    /// No fixed point: determined by the eigenvalue multiset of the
    /// nonsingular Fitting block (as its characteristic polynomial) together
    /// with the Jordan partition of the nilpotent block.
    NoFixedPointCase {
        q_star: Poly<T>,
        nil_partition: Partition,
    },
}

/// Exact rational canonical representative of a conjugacy class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm<T> {
    pub representative: AffineOperator<T>,
    pub invariant: BiregularClassInvariant<T>,
    pub descriptor: String,
}

/// Constructive reduction of a fixed-point-free operator to the shape
/// (A*, c) ⊕ (J∘, 0), with the affine witness realizing it.
#[derive(Clone, Debug)]
pub struct ReductionTrace<T> {
    pub witness: AffineWitness<T>,
    pub reduced: AffineOperator<T>,
    pub star_dim: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("operator has a fixed point; it is conjugate to its linear part, nothing to reduce")]
    HasFixedPoint,
    #[error("canonical semisimple block needs a monic polynomial with nonzero constant term")]
    ZeroRoot,
}

impl<T: Field> BiregularClassInvariant<T> {
    pub fn dimension(&self) -> usize {
        match self {
            BiregularClassInvariant::FixedPointCase { factors } => factors.total_degree(),
            BiregularClassInvariant::NoFixedPointCase {
                q_star,
                nil_partition,
            } => q_star.degree() + nil_partition.sum(),
        }
    }
}

impl<T: Field> fmt::Display for BiregularClassInvariant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiregularClassInvariant::FixedPointCase { factors } => {
                write!(f, "fixed-point; invariant factors: {factors}")
            }
            BiregularClassInvariant::NoFixedPointCase {
                q_star,
                nil_partition,
            } => write!(
                f,
                "no-fixed-point; q*={}; nilpotent partition {nil_partition}",
                factored_string(q_star)
            ),
        }
    }
}

/// The complete invariant: invariant factors when a fixed point exists,
/// otherwise the pair (char poly of the nonsingular Fitting block, partition
/// of the nilpotent block).
pub fn classify<T: Field>(f: &AffineOperator<T>) -> BiregularClassInvariant<T> {
    if f.fixed_point().is_some() {
        return BiregularClassInvariant::FixedPointCase {
            factors: smith_invariant_factors(f.matrix()),
        };
    }
    let split = fitting_split(f.matrix());
    let q_star = split.star.char_poly();
    // absence of a fixed point forces 1 to be an eigenvalue of the
    // nonsingular block
    assert!(
        q_star.eval(&T::one()).is_zero(),
        "internal: no fixed point but q*(1) != 0"
    );
    let nil_partition =
        nilpotent_partition(&split.nil).expect("internal: Fitting nil block not nilpotent");
    BiregularClassInvariant::NoFixedPointCase {
        q_star,
        nil_partition,
    }
}

/// Conjugacy decision: equal invariants, including the case tag.
pub fn biregularly_conjugate<T: Field>(f: &AffineOperator<T>, g: &AffineOperator<T>) -> bool {
    if f.dim() != g.dim() {
        return false;
    }
    classify(f) == classify(g)
}

/// Rational semisimple matrix with prescribed characteristic polynomial r
/// (monic, r(0) ≠ 0): companion blocks of the squarefree parts, each repeated
/// by its multiplicity, sorted degree-descending then lexicographically.
pub fn canonical_semisimple_block<T: Field>(r: &Poly<T>) -> Result<Matrix<T>, ClassifyError> {
    if !r.is_monic() || r.eval(&T::zero()).is_zero() {
        return Err(ClassifyError::ZeroRoot);
    }
    let mut blocks: Vec<Poly<T>> = Vec::new();
    for (s, mult) in r.squarefree_decomposition() {
        for _ in 0..mult {
            blocks.push(s.clone());
        }
    }
    blocks.sort_by(|a, b| a.canonical_block_cmp(b));
    let mut m = Matrix::zero(0, 0);
    for b in &blocks {
        m = m.block_diag(&b.companion());
    }
    Ok(m)
}

fn descriptor<T: Field>(invariant: &BiregularClassInvariant<T>) -> String {
    match invariant {
        BiregularClassInvariant::FixedPointCase { factors } => {
            format!("fixed-point; invariant factors: {factors}")
        }
        BiregularClassInvariant::NoFixedPointCase {
            q_star,
            nil_partition,
        } => {
            format!(
                "no-fixed-point; translation coordinate x1+1; semisimple part {}; nilpotent partition {nil_partition}",
                factored_string(q_star)
            )
        }
    }
}

/// The exact canonical representative: Frobenius companion form of the
/// invariant factors (fixed-point case) or
/// ([1],(1)) ⊕ (R,0) ⊕ (J∘,0) with R the canonical semisimple block of
/// q*/(x−1) (no-fixed-point case).
pub fn canonical_form<T: Field>(f: &AffineOperator<T>) -> CanonicalForm<T> {
    let invariant = classify(f);
    let representative = representative_of(&invariant);
    let descriptor = descriptor(&invariant);
    CanonicalForm {
        representative,
        invariant,
        descriptor,
    }
}

fn representative_of<T: Field>(invariant: &BiregularClassInvariant<T>) -> AffineOperator<T> {
    match invariant {
        BiregularClassInvariant::FixedPointCase { factors } => {
            let mut m = Matrix::zero(0, 0);
            for p in factors.chain() {
                m = m.block_diag(&p.companion());
            }
            let n = m.rows();
            AffineOperator::new(m, Vector::zero(n)).expect("square by construction")
        }
        BiregularClassInvariant::NoFixedPointCase {
            q_star,
            nil_partition,
        } => {
            let translation_block = AffineOperator::new(
                Matrix::identity(1),
                Vector::new(vec![T::one()]),
            )
            .expect("1x1");
            let r = q_star.divexact(&Poly::x_minus(T::one()));
            let semisimple = if r.is_constant() {
                Matrix::zero(0, 0)
            } else {
                canonical_semisimple_block(&r).expect("q* has nonzero constant term")
            };
            let k = semisimple.rows();
            let semisimple_block =
                AffineOperator::new(semisimple, Vector::zero(k)).expect("square");
            let j: Matrix<T> = nil_partition.jordan_matrix();
            let jn = j.rows();
            let nil_block = AffineOperator::new(j, Vector::zero(jn)).expect("square");
            translation_block
                .direct_sum(&semisimple_block)
                .direct_sum(&nil_block)
        }
    }
}

/// §-style two-step reduction of a fixed-point-free operator: a linear
/// conjugation bringing the matrix to diag(A*, J∘), then a translation
/// conjugation killing the nilpotent summand's translation.
pub fn reduce_no_fixed_point<T: Field>(
    f: &AffineOperator<T>,
) -> Result<ReductionTrace<T>, ClassifyError> {
    if f.fixed_point().is_some() {
        return Err(ClassifyError::HasFixedPoint);
    }
    let n = f.dim();
    let split = fitting_split(f.matrix());
    let k = split.star_dim;
    let (t, _j) = nilpotent_jordan_basis(&split.nil);
    let s = split.basis_change.mul(&Matrix::identity(k).block_diag(&t));
    let step1 = f
        .linear_conjugate(&s)
        .expect("internal: basis change invertible");
    // translation of the nilpotent summand
    let (_, tail) = step1.translation().split_at(k);
    let nil_op = AffineOperator::new(
        step1.matrix().submatrix(k, k, n - k, n - k),
        tail,
    )
    .expect("square block");
    let p = nil_op
        .fixed_point()
        .expect("internal: J∘ − I is invertible, a fixed point always exists");
    let shift_tail = Vector::zero(k).concat(&p);
    let reduced = step1.translation_conjugate(&shift_tail);
    // full witness: x ↦ S(x + shift_tail) = Sx + S·shift_tail
    let witness = AffineWitness::new(s.clone(), s.mul_vec(&shift_tail))
        .expect("internal: witness linear part invertible");
    debug_assert_eq!(f.conjugate_by(&witness), reduced);
    // shape check: (A*, c) ⊕ (J∘, 0), with (A*, c) fixed-point-free
    let (head, tail) = reduced.translation().split_at(k);
    assert!(tail.is_zero(), "internal: nilpotent summand translation not killed");
    let star_op = AffineOperator::new(reduced.matrix().submatrix(0, 0, k, k), head)
        .expect("square block");
    assert!(
        star_op.fixed_point().is_none(),
        "internal: nonsingular summand acquired a fixed point"
    );
    Ok(ReductionTrace {
        witness,
        reduced,
        star_dim: k,
    })
}

/// Dimensions of the images of f, f², …, fⁿ, computed directly by iterating
/// the affine image subspace as a (point, basis) pair. This is the measured
/// side of the dual route; the Fitting-data prediction star_dim + rank(nilⁱ)
/// is the oracle it is tested against.
pub fn image_dimension_sequence<T: Field>(f: &AffineOperator<T>) -> Vec<usize> {
    let n = f.dim();
    let mut point = Vector::zero(n);
    let mut basis = Matrix::identity(n);
    let mut dims = Vec::with_capacity(n);
    for _ in 0..n {
        point = f.apply(&point);
        let mapped = f.matrix().mul(&basis);
        basis = Matrix::from_columns(n, &mapped.image_basis());
        dims.push(basis.cols());
    }
    dims
}
