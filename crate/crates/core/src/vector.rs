use std::fmt;

use crate::scalar::Field;

/// Dense column vector. Length 0 is legal (empty summand).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Field> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            entries: vec![T::zero(); dim],
        }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Vector {
            entries: entries.iter().map(|&n| T::from_i64(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Stacks `self` on top of `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Vector { entries }
    }

    pub fn split_at(&self, mid: usize) -> (Self, Self) {
        let (a, b) = self.entries.split_at(mid);
        (Vector::new(a.to_vec()), Vector::new(b.to_vec()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Vector {
            entries: self.entries.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
