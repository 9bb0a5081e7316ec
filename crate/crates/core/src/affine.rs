use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::vector::Vector;

/// f(x) = Ax + b, identified with the pair (A, b).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineOperator<T> {
    matrix: Matrix<T>,
    translation: Vector<T>,
}

/// An invertible affine map h(x) = Sx + t, used as a conjugation witness.
/// Only the affine subgroup of the biregular maps is ever materialized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineWitness<T> {
    linear: Matrix<T>,
    shift: Vector<T>,
}

#[derive(Debug, thiserror::Error)]
pub enum AffineError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular matrix where an invertible one is required")]
    Singular,
}

impl<T: Field> AffineOperator<T> {
    pub fn new(matrix: Matrix<T>, translation: Vector<T>) -> Result<Self, AffineError> {
        if !matrix.is_square() {
            return Err(AffineError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() != translation.dim() {
            return Err(AffineError::DimensionMismatch {
                expected: matrix.rows(),
                got: translation.dim(),
            });
        }
        Ok(AffineOperator {
            matrix,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        AffineOperator {
            matrix: Matrix::identity(n),
            translation: Vector::zero(n),
        }
    }

    /// The 0-dimensional operator, the neutral element of direct sums.
    pub fn empty() -> Self {
        AffineOperator::identity(0)
    }

    pub fn from_i64(matrix: &[&[i64]], translation: &[i64]) -> Self {
        AffineOperator::new(
            Matrix::from_i64_rows(matrix),
            Vector::from_i64(translation),
        )
        .expect("malformed literal operator")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn translation(&self) -> &Vector<T> {
        &self.translation
    }

    pub fn apply(&self, x: &Vector<T>) -> Vector<T> {
        assert_eq!(x.dim(), self.dim(), "apply: dimension mismatch");
        self.matrix.mul_vec(x).add(&self.translation)
    }

    /// x ↦ self(other(x)), i.e. (A_f·A_g, A_f·b_g + b_f).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "compose: dimension mismatch");
        AffineOperator {
            matrix: self.matrix.mul(&other.matrix),
            translation: self.matrix.mul_vec(&other.translation).add(&self.translation),
        }
    }

    /// Block-diagonal direct sum; summing with a 0-dimensional operator is
    /// the identity operation.
    pub fn direct_sum(&self, other: &Self) -> Self {
        AffineOperator {
            matrix: self.matrix.block_diag(&other.matrix),
            translation: self.translation.concat(&other.translation),
        }
    }

    /// One solution of (A − I)x = −b, or `None` when f moves every point.
    pub fn fixed_point(&self) -> Option<Vector<T>> {
        let n = self.dim();
        let a_minus_i = self.matrix.sub(&Matrix::identity(n));
        a_minus_i.solve_linear(&self.translation.neg())
    }

    /// (A, b) ↦ (S⁻¹AS, S⁻¹b) for invertible S.
    pub fn linear_conjugate(&self, s: &Matrix<T>) -> Result<Self, AffineError> {
        if !s.is_square() || s.rows() != self.dim() {
            return Err(AffineError::DimensionMismatch {
                expected: self.dim(),
                got: s.rows(),
            });
        }
        let s_inv = s.inverse().ok_or(AffineError::Singular)?;
        Ok(AffineOperator {
            matrix: s_inv.mul(&self.matrix).mul(s),
            translation: s_inv.mul_vec(&self.translation),
        })
    }

    /// Conjugation by the translation h(x) = x + p: (A, b) ↦ (A, Ap + b − p).
    /// When p is a fixed point the resulting translation is zero.
    pub fn translation_conjugate(&self, p: &Vector<T>) -> Self {
        assert_eq!(p.dim(), self.dim(), "translation_conjugate: dimension mismatch");
        AffineOperator {
            matrix: self.matrix.clone(),
            translation: self.matrix.mul_vec(p).add(&self.translation).sub(p),
        }
    }

    /// h⁻¹ ∘ f ∘ h for an affine witness h.
    pub fn conjugate_by(&self, h: &AffineWitness<T>) -> Self {
        assert_eq!(h.dim(), self.dim(), "conjugate_by: dimension mismatch");
        h.inverse()
            .as_operator()
            .compose(&self.compose(&h.as_operator()))
    }
}

impl<T: Field> AffineWitness<T> {
    /// Invertibility of the linear part is checked here and is an invariant
    /// from then on.
    pub fn new(linear: Matrix<T>, shift: Vector<T>) -> Result<Self, AffineError> {
        if !linear.is_square() {
            return Err(AffineError::NotSquare {
                rows: linear.rows(),
                cols: linear.cols(),
            });
        }
        if linear.rows() != shift.dim() {
            return Err(AffineError::DimensionMismatch {
                expected: linear.rows(),
                got: shift.dim(),
            });
        }
        if !linear.is_invertible() {
            return Err(AffineError::Singular);
        }
        Ok(AffineWitness { linear, shift })
    }

    pub fn identity(n: usize) -> Self {
        AffineWitness {
            linear: Matrix::identity(n),
            shift: Vector::zero(n),
        }
    }

    pub fn translation(p: Vector<T>) -> Self {
        AffineWitness {
            linear: Matrix::identity(p.dim()),
            shift: p,
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn linear(&self) -> &Matrix<T> {
        &self.linear
    }

    pub fn shift(&self) -> &Vector<T> {
        &self.shift
    }

    pub fn as_operator(&self) -> AffineOperator<T> {
        AffineOperator {
            matrix: self.linear.clone(),
            translation: self.shift.clone(),
        }
    }

    /// (S, t) ↦ (S⁻¹, −S⁻¹t).
    pub fn inverse(&self) -> Self {
        let s_inv = self
            .linear
            .inverse()
            .expect("witness invariant: linear part invertible");
        let shift = s_inv.mul_vec(&self.shift).neg();
        AffineWitness {
            linear: s_inv,
            shift,
        }
    }

    /// x ↦ self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "compose: dimension mismatch");
        AffineWitness {
            linear: self.linear.mul(&other.linear),
            shift: self.linear.mul_vec(&other.shift).add(&self.shift),
        }
    }
}

impl<T: Field> fmt::Display for AffineOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> Ax + b with A =\n{}b = {}", self.matrix, self.translation)
    }
}
