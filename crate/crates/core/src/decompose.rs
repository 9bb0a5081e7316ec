use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::vector::Vector;

/// Jordan block sizes of a nilpotent matrix, sorted descending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum DecomposeError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("rank sequence is not weakly decreasing down to zero")]
    InvalidRankSequence,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The nilpotent Jordan matrix with these block sizes, superdiagonal 1s,
    /// blocks in descending order.
    pub fn jordan_matrix<T: Field>(&self) -> Matrix<T> {
        let n = self.sum();
        let mut m = Matrix::zero(n, n);
        let mut offset = 0;
        for &size in &self.parts {
            for i in 0..size.saturating_sub(1) {
                m[(offset + i, offset + i + 1)] = T::one();
            }
            offset += size;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Similarity data splitting A into a nonsingular block and a nilpotent
/// block: S⁻¹AS = diag(star, nil) exactly. Either block may be 0×0.
#[derive(Clone, Debug)]
pub struct FittingSplit<T> {
    pub basis_change: Matrix<T>,
    pub star: Matrix<T>,
    pub nil: Matrix<T>,
    pub star_dim: usize,
}

/// Minimal m ≥ 0 with rank(A^m) = rank(A^(m+1)); always ≤ n.
pub fn fitting_index<T: Field>(a: &Matrix<T>) -> usize {
    assert!(a.is_square());
    let n = a.rows();
    let mut prev = n;
    let mut power = Matrix::identity(n);
    for m in 0..n {
        power = power.mul(a);
        let r = power.rank();
        if r == prev {
            return m;
        }
        prev = r;
    }
    n
}

/// Splits A into its nonsingular and nilpotent parts along im(Aⁿ) ⊕ ker(Aⁿ).
pub fn fitting_split<T: Field>(a: &Matrix<T>) -> FittingSplit<T> {
    assert!(a.is_square());
    let n = a.rows();
    let an = a.pow(n);
    let mut cols = an.image_basis();
    let k = cols.len();
    cols.extend(an.kernel_basis());
    let s = Matrix::from_columns(n, &cols);
    let s_inv = s
        .inverse()
        .expect("internal: im(A^n) + ker(A^n) must span the whole space");
    let b = s_inv.mul(a).mul(&s);
    let star = b.submatrix(0, 0, k, k);
    let nil = b.submatrix(k, k, n - k, n - k);
    // construction-time verification of the split invariants
    assert!(
        b == star.block_diag(&nil),
        "internal: S^-1 A S is not block diagonal"
    );
    assert!(star.is_invertible(), "internal: star block is singular");
    assert!(
        nil.pow(n - k).rank() == 0,
        "internal: nil block is not nilpotent"
    );
    FittingSplit {
        basis_change: s,
        star,
        nil,
        star_dim: k,
    }
}

fn check_nilpotent<T: Field>(n: &Matrix<T>) -> Result<(), DecomposeError> {
    assert!(n.is_square());
    if n.pow(n.rows()).rank() != 0 {
        return Err(DecomposeError::NotNilpotent);
    }
    Ok(())
}

/// Jordan block sizes of a nilpotent matrix, from the rank drops of its
/// powers: the number of parts ≥ k is rank(N^(k−1)) − rank(N^k).
pub fn nilpotent_partition<T: Field>(n: &Matrix<T>) -> Result<Partition, DecomposeError> {
    check_nilpotent(n)?;
    let dim = n.rows();
    let mut ranks = Vec::new();
    let mut power = Matrix::identity(dim);
    loop {
        power = power.mul(n);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if dim == 0 {
        return Ok(Partition::empty());
    }
    partition_from_rank_sequence(&ranks, dim)
}

/// Rebuilds the block-size partition from the sequence rank(N¹), rank(N²), …
/// ending at 0.
pub fn partition_from_rank_sequence(ranks: &[usize], n: usize) -> Result<Partition, DecomposeError> {
    if ranks.is_empty() || *ranks.last().unwrap() != 0 || ranks[0] > n {
        return Err(DecomposeError::InvalidRankSequence);
    }
    if ranks.windows(2).any(|w| w[1] > w[0]) {
        return Err(DecomposeError::InvalidRankSequence);
    }
    // counts[k] = number of blocks of size ≥ k+1
    let mut counts = Vec::with_capacity(ranks.len());
    let mut prev = n;
    for &r in ranks {
        counts.push(prev - r);
        prev = r;
    }
    let mut parts = Vec::new();
    for k in (0..counts.len()).rev() {
        let above = if k + 1 < counts.len() { counts[k + 1] } else { 0 };
        for _ in 0..counts[k].saturating_sub(above) {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition { parts })
}

/// Jordan chain construction for a nilpotent N: returns (T, J) with T
/// invertible and T⁻¹NT = J, J with superdiagonal 1s and blocks descending.
pub fn nilpotent_jordan_basis<T: Field>(n: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    check_nilpotent(n).expect("nilpotent_jordan_basis needs a nilpotent matrix");
    let dim = n.rows();
    if dim == 0 {
        return (Matrix::identity(0), Matrix::zero(0, 0));
    }
    // kernels[i] = basis of ker(N^(i+1)); m = nilpotency index
    let mut kernels: Vec<Vec<Vector<T>>> = Vec::new();
    let mut power = Matrix::identity(dim);
    loop {
        power = power.mul(n);
        let ker = power.kernel_basis();
        let full = ker.len() == dim;
        kernels.push(ker);
        if full {
            break;
        }
    }
    let m = kernels.len();

    // chains of (height, top vector), discovered tallest first
    let mut chains: Vec<(usize, Vector<T>)> = Vec::new();
    for k in (1..=m).rev() {
        let mut claimed: Vec<Vector<T>> = if k >= 2 {
            kernels[k - 2].clone()
        } else {
            Vec::new()
        };
        for (h, top) in &chains {
            claimed.push(n.pow(h - k).mul_vec(top));
        }
        let mut claimed_rank = Matrix::from_columns(dim, &claimed).rank();
        for candidate in &kernels[k - 1] {
            let mut trial = claimed.clone();
            trial.push(candidate.clone());
            let r = Matrix::from_columns(dim, &trial).rank();
            if r > claimed_rank {
                chains.push((k, candidate.clone()));
                claimed = trial;
                claimed_rank = r;
            }
        }
    }

    let mut cols = Vec::with_capacity(dim);
    let mut parts = Vec::with_capacity(chains.len());
    for (h, top) in &chains {
        parts.push(*h);
        // order within a block so that N maps each column to its predecessor
        for i in (0..*h).rev() {
            cols.push(n.pow(i).mul_vec(top));
        }
    }
    let t = Matrix::from_columns(dim, &cols);
    let j = Partition::new(parts).jordan_matrix();
    let t_inv = t
        .inverse()
        .expect("internal: Jordan chain vectors must form a basis");
    assert!(
        t_inv.mul(n).mul(&t) == j,
        "internal: Jordan basis verification failed"
    );
    (t, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MatrixQ;

    fn jordan_block(size: usize) -> MatrixQ {
        Partition::new(vec![size]).jordan_matrix()
    }

    #[test]
    fn fitting_index_examples() {
        assert_eq!(fitting_index(&MatrixQ::identity(3)), 0);
        assert_eq!(fitting_index(&jordan_block(3)), 3);
        assert_eq!(fitting_index(&MatrixQ::from_i64_rows(&[&[1, 0], &[0, 0]])), 1);
    }

    #[test]
    fn fitting_split_examples() {
        let a = MatrixQ::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let split = fitting_split(&a);
        assert_eq!(split.star, MatrixQ::from_i64_rows(&[&[2]]));
        assert_eq!(split.nil, MatrixQ::zero(1, 1));
        let s_inv = split.basis_change.inverse().unwrap();
        assert_eq!(
            s_inv.mul(&a).mul(&split.basis_change),
            split.star.block_diag(&split.nil)
        );

        let nil = jordan_block(2);
        let split = fitting_split(&nil);
        assert_eq!(split.star_dim, 0);
        assert_eq!(split.nil, nil);

        let inv = MatrixQ::from_i64_rows(&[&[0, 1], &[2, 3]]);
        let split = fitting_split(&inv);
        assert_eq!(split.star_dim, 2);
        assert_eq!(split.nil, MatrixQ::zero(0, 0));
    }

    #[test]
    fn nilpotent_partition_examples() {
        let n = jordan_block(3).block_diag(&jordan_block(1));
        assert_eq!(nilpotent_partition(&n).unwrap(), Partition::new(vec![3, 1]));
        assert_eq!(
            nilpotent_partition(&MatrixQ::zero(3, 3)).unwrap(),
            Partition::new(vec![1, 1, 1])
        );
        assert_eq!(
            nilpotent_partition(&MatrixQ::zero(0, 0)).unwrap(),
            Partition::empty()
        );
        assert!(nilpotent_partition(&MatrixQ::identity(2)).is_err());
    }

    #[test]
    fn partition_from_rank_sequence_examples() {
        assert_eq!(
            partition_from_rank_sequence(&[2, 1, 0], 4).unwrap(),
            Partition::new(vec![3, 1])
        );
        assert_eq!(
            partition_from_rank_sequence(&[0], 2).unwrap(),
            Partition::new(vec![1, 1])
        );
        assert_eq!(
            partition_from_rank_sequence(&[1, 0], 2).unwrap(),
            Partition::new(vec![2])
        );
        assert!(partition_from_rank_sequence(&[1, 2, 0], 3).is_err());
    }

    #[test]
    fn jordan_basis_examples() {
        let n = jordan_block(2);
        let (t, j) = nilpotent_jordan_basis(&n);
        assert_eq!(t, MatrixQ::identity(2));
        assert_eq!(j, n);

        let lower = MatrixQ::from_i64_rows(&[&[0, 0], &[1, 0]]);
        let (t, j) = nilpotent_jordan_basis(&lower);
        assert_eq!(j, jordan_block(2));
        assert_eq!(t.inverse().unwrap().mul(&lower).mul(&t), j);

        let (t, j) = nilpotent_jordan_basis(&MatrixQ::zero(2, 2));
        assert_eq!(t, MatrixQ::identity(2));
        assert_eq!(j, MatrixQ::zero(2, 2));
    }

    #[test]
    fn jordan_basis_preserves_partition() {
        let n = jordan_block(3)
            .block_diag(&jordan_block(2))
            .block_diag(&jordan_block(2));
        let s = MatrixQ::from_i64_rows(&[
            &[1, 0, 0, 0, 1, 0, 0],
            &[2, 1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 3, 0],
            &[0, 1, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1, 0, 2],
            &[0, 0, 0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0, 0, 1],
        ]);
        let conj = s.inverse().unwrap().mul(&n).mul(&s);
        let (t, j) = nilpotent_jordan_basis(&conj);
        assert_eq!(nilpotent_partition(&j).unwrap(), Partition::new(vec![3, 2, 2]));
        assert_eq!(t.inverse().unwrap().mul(&conj).mul(&t), j);
    }
}
