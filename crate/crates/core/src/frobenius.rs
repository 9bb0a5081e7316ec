use std::fmt;

use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;

/// The nontrivial invariant factors f₁ | f₂ | … | f_r of xI − A, monic,
/// constants omitted. A complete similarity invariant over a field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantFactors<T> {
    chain: Vec<Poly<T>>,
}

#[derive(Debug, thiserror::Error)]
pub enum FrobeniusError {
    #[error("minors-gcd route is capped at dimension 6, got {0}")]
    DimensionCap(usize),
}

impl<T: Field> InvariantFactors<T> {
    fn from_diagonal(diag: Vec<Poly<T>>) -> Self {
        let chain: Vec<Poly<T>> = diag
            .into_iter()
            .filter(|p| !p.is_constant())
            .map(|p| p.make_monic())
            .collect();
        for w in chain.windows(2) {
            debug_assert!(w[0].divides(&w[1]), "invariant factor chain broken");
        }
        InvariantFactors { chain }
    }

    pub fn chain(&self) -> &[Poly<T>] {
        &self.chain
    }

    /// Product of the chain; equals char_poly(A) for factors of xI − A.
    pub fn product(&self) -> Poly<T> {
        let mut acc = Poly::one();
        for f in &self.chain {
            acc = acc.mul(f);
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.chain.iter().map(|f| f.degree()).sum()
    }
}

impl<T: Field> fmt::Display for InvariantFactors<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.chain.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{}", crate::poly::factored_string(p))?;
        }
        Ok(())
    }
}

fn char_matrix<T: Field>(a: &Matrix<T>) -> Vec<Vec<Poly<T>>> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = if i == j { Poly::x() } else { Poly::zero() };
                    diag.sub(&Poly::constant(a[(i, j)].clone()))
                })
                .collect()
        })
        .collect()
}

/// Divides every coefficient appearing in the row by the row's content unit.
fn normalize_row_content<T: Field>(row: &mut [Poly<T>]) {
    let mut all = Vec::new();
    for p in row.iter() {
        all.extend(p.coeffs().iter().cloned());
    }
    let u = T::content_unit(&all);
    if u.is_one() || u.is_zero() {
        return;
    }
    let inv = u.inv();
    for p in row.iter_mut() {
        *p = p.scale(&inv);
    }
}

/// Invariant factors of xI − A via Smith elimination over Q[x]: pivot on a
/// minimal-degree nonzero entry, reduce its row and column by division with
/// remainder, and fix up divisibility of the remaining block before moving on.
pub fn smith_invariant_factors<T: Field>(a: &Matrix<T>) -> InvariantFactors<T> {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = char_matrix(a);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        'pivot: loop {
            // smallest-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !m[i][j].is_zero() {
                        let d = m[i][j].degree();
                        if best.map_or(true, |(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'pivot;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            // clear the pivot column
            let mut dirty = false;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].divmod(&m[t][t]);
                for j in t..n {
                    let sub = q.mul(&m[t][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // clear the pivot row
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].divmod(&m[t][t]);
                for i in t..n {
                    let sub = q.mul(&m[i][t]);
                    m[i][j] = m[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // the pivot must divide every remaining entry for the chain
            // ordering; if not, pull the offending row up and retry
            for i in t + 1..n {
                for j in t + 1..n {
                    if !m[t][t].divides(&m[i][j]) {
                        for col in t..n {
                            let add = m[i][col].clone();
                            m[t][col] = m[t][col].add(&add);
                        }
                        continue 'pivot;
                    }
                }
            }
            for row in m.iter_mut().skip(t) {
                normalize_row_content(&mut row[t..]);
            }
            break 'pivot;
        }
        diag.push(m[t][t].clone());
    }
    InvariantFactors::from_diagonal(diag)
}

fn poly_det<T: Field>(m: &[Vec<Poly<T>>], rows: &[usize], cols: &[usize]) -> Poly<T> {
    if rows.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    let rest_rows = &rows[1..];
    for (idx, &c) in cols.iter().enumerate() {
        let e = &m[rows[0]][c];
        if e.is_zero() {
            continue;
        }
        let mut rest_cols = cols.to_vec();
        rest_cols.remove(idx);
        let minor = poly_det(m, rest_rows, &rest_cols);
        let term = e.mul(&minor);
        acc = if idx % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Independent oracle for the invariant factors: the determinantal divisor
/// route dₖ = gcd of all k×k minors of xI − A, fₖ = dₖ/dₖ₋₁. Combinatorial,
/// hence capped at n ≤ 6.
pub fn minors_gcd_invariant_factors<T: Field>(
    a: &Matrix<T>,
) -> Result<InvariantFactors<T>, FrobeniusError> {
    assert!(a.is_square());
    let n = a.rows();
    if n > 6 {
        return Err(FrobeniusError::DimensionCap(n));
    }
    let m = char_matrix(a);
    let mut diag = Vec::with_capacity(n);
    let mut prev = Poly::one();
    for k in 1..=n {
        let mut dk = Poly::zero();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor = poly_det(&m, &rows, &cols);
                if !minor.is_zero() {
                    dk = dk.gcd(&minor);
                    if !dk.is_zero() && dk.is_constant() {
                        break;
                    }
                }
            }
            if dk.is_constant() && !dk.is_zero() {
                break;
            }
        }
        let dk = dk.make_monic();
        diag.push(dk.divexact(&prev));
        prev = dk;
    }
    Ok(InvariantFactors::from_diagonal(diag))
}

/// Similarity over Q (hence over any extension field): equal sizes and equal
/// invariant-factor chains of xI − A.
pub fn similar<T: Field>(a: &Matrix<T>, c: &Matrix<T>) -> bool {
    assert!(a.is_square() && c.is_square());
    if a.rows() != c.rows() {
        return false;
    }
    smith_invariant_factors(a) == smith_invariant_factors(c)
}
