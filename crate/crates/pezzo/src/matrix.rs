//! Exact symmetric integer matrices: fraction-free determinants, leading
//! principal minors, negative definiteness, and rational linear solving.

use num::rational::Ratio;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Scalar;

/// Square symmetric matrix over an exact integer scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix<T: Scalar> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> SymMatrix<T> {
    /// Builds from rows, rejecting non-square or non-symmetric input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Exact determinant by Bareiss fraction-free elimination with row
    /// pivoting. Every intermediate value is an integer minor of the input.
    pub fn determinant(&self) -> T {
        determinant_of(&self.rows, self.n)
    }

    /// Determinants of the top-left k-by-k submatrices, k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<T> {
        (1..=self.n).map(|k| determinant_of(&self.rows, k)).collect()
    }

    /// Negative definiteness via the alternating-sign test on leading
    /// principal minors: sign(d_k) = (-1)^k for every k.
    pub fn is_negative_definite(&self) -> bool {
        self.offending_minor().is_none()
    }

    /// First leading principal minor violating the alternating-sign rule,
    /// as (1-based index, value). `None` means negative definite.
    pub fn offending_minor(&self) -> Option<(usize, T)> {
        for (idx, minor) in self.leading_principal_minors().into_iter().enumerate() {
            let k = idx + 1;
            let ok = if k % 2 == 1 {
                minor.is_negative()
            } else {
                minor.is_positive()
            };
            if !ok {
                return Some((k, minor));
            }
        }
        None
    }

    /// Pivots of plain Gaussian elimination without row exchanges, or `None`
    /// if a zero pivot stops the elimination. All pivots negative is the
    /// second characterization of negative definiteness; tests assert it
    /// agrees with the minor test.
    pub fn elimination_pivots(&self) -> Option<Vec<Ratio<T>>> {
        let mut a: Vec<Vec<Ratio<T>>> = self
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(Ratio::from_integer).collect())
            .collect();
        let mut pivots = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let pivot = a[k][k].clone();
            if pivot.is_zero() {
                return None;
            }
            for i in k + 1..self.n {
                let factor = a[i][k].clone() / pivot.clone();
                for j in k..self.n {
                    let sub = factor.clone() * a[k][j].clone();
                    a[i][j] = a[i][j].clone() - sub;
                }
            }
            pivots.push(pivot);
        }
        Some(pivots)
    }

    /// Solves `self * x = rhs` exactly over the rationals.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<Ratio<T>>> {
        assert_eq!(rhs.len(), self.n, "rhs length must match matrix size");
        let n = self.n;
        let mut a: Vec<Vec<Ratio<T>>> = self
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(Ratio::from_integer).collect())
            .collect();
        let mut b: Vec<Ratio<T>> = rhs.iter().cloned().map(Ratio::from_integer).collect();

        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&r| !a[r][k].is_zero())
                .ok_or(Error::SingularSystem)?;
            a.swap(k, pivot_row);
            b.swap(k, pivot_row);
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].clone() / a[k][k].clone();
                for j in k..n {
                    let sub = factor.clone() * a[k][j].clone();
                    a[i][j] = a[i][j].clone() - sub;
                }
                let sub = factor * b[k].clone();
                b[i] = b[i].clone() - sub;
            }
        }

        let mut x = vec![Ratio::zero(); n];
        for k in (0..n).rev() {
            let mut acc = b[k].clone();
            for j in k + 1..n {
                acc = acc - a[k][j].clone() * x[j].clone();
            }
            x[k] = acc / a[k][k].clone();
        }
        Ok(x)
    }

    /// Evaluates the quadratic form x^T M x.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.n, "vector length must match matrix size");
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc + x[i].clone() * self.rows[i][j].clone() * x[j].clone();
            }
        }
        acc
    }
}

/// Bareiss determinant of the leading k-by-k block of `rows`.
fn determinant_of<T: Scalar>(rows: &[Vec<T>], k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut sign_flip = false;
    let mut prev = T::one();
    for p in 0..k - 1 {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = a[i][j].clone() * a[p][p].clone() - a[i][p].clone() * a[p][j].clone();
                // Exact by Sylvester's identity: prev divides num.
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[p][p].clone();
    }
    let det = a[k - 1][k - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
