use std::cmp::Ordering;
use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::Field;

/// Univariate polynomial, coefficients from the constant term upward.
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| T::from_i64(n)).collect())
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    /// x − a
    pub fn x_minus(a: T) -> Self {
        Poly::new(vec![-a, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> T {
        self.coeffs
            .last()
            .cloned()
            .expect("leading coefficient of the zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().inv();
        Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(acc)
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg divisor.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1];
        let dlead_inv = divisor.leading().inv();
        let ddeg = divisor.degree();
        while !rem.is_zero() && rem.degree() >= ddeg {
            let shift = rem.degree() - ddeg;
            let factor = rem.leading() * dlead_inv.clone();
            quot[shift] = factor.clone();
            let mut new = rem.coeffs.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                new[shift + j] = new[shift + j].clone() - factor.clone() * d.clone();
            }
            // the leading term cancels exactly
            new.truncate(rem.degree());
            rem = Poly::new(new);
        }
        (Poly::new(quot), rem)
    }

    /// Exact division; a nonzero remainder signals an internal logic bug.
    pub fn divexact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "divexact: {self} is not divisible by {divisor}");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).1.is_zero()
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b).1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        if self.is_constant() {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * T::from_i64(k as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, a: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a.clone() + c.clone();
        }
        acc
    }

    /// Yun's squarefree decomposition, valid in characteristic zero: returns
    /// pairwise-coprime monic squarefree sⱼ with self = ∏ sⱼ^j, constant
    /// factors omitted, multiplicities ascending.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(self.is_monic(), "squarefree decomposition needs monic input");
        let mut out = Vec::new();
        let df = self.derivative();
        let a0 = self.gcd(&df);
        let mut b = self.divexact(&a0);
        let mut c = df.divexact(&a0);
        let mut j = 1;
        while !b.is_constant() {
            let d = c.sub(&b.derivative());
            let s = b.gcd(&d);
            if !s.is_constant() {
                out.push((s.clone(), j));
            }
            b = b.divexact(&s);
            c = d.divexact(&s);
            j += 1;
        }
        out
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1: characteristic
    /// and minimal polynomial both equal the input.
    pub fn companion(&self) -> Matrix<T> {
        assert!(self.is_monic() && self.degree() >= 1, "companion needs a monic nonconstant polynomial");
        let n = self.degree();
        Matrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -self.coeff(i)
            } else if i == j + 1 {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Fixed total order used only to make canonical block orderings
    /// deterministic: degree descending, then coefficients from the top down.
    pub fn canonical_block_cmp(&self, other: &Self) -> Ordering {
        let da = self.coeffs.len();
        let db = other.coeffs.len();
        match db.cmp(&da) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for k in (0..da).rev() {
            match self.coeffs[k].canonical_cmp(&other.coeffs[k]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Substitutes a square matrix for x (Horner form).
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].clone() + c.clone();
            }
        }
        acc
    }
}

impl<T: Field> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.canonical_cmp(&T::zero()) == Ordering::Less;
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_mag = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit_mag {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Renders a monic polynomial in factored human form via its squarefree
/// decomposition, e.g. "(x-1)^2*(x^2-2)".
pub fn factored_string<T: Field>(p: &Poly<T>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    if p.is_constant() {
        return format!("{}", p.coeff(0));
    }
    let monic = p.make_monic();
    let mut parts: Vec<(Poly<T>, usize)> = monic.squarefree_decomposition();
    parts.sort_by(|a, b| a.0.canonical_block_cmp(&b.0));
    let rendered: Vec<String> = parts
        .iter()
        .map(|(s, j)| {
            if *j == 1 {
                format!("({s})")
            } else {
                format!("({s})^{j}")
            }
        })
        .collect();
    rendered.join("*")
}
