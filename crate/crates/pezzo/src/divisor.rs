//! Formal Q-divisors over a finite set of named curves, and the integral
//! round-up / round-down operators on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::rational::Ratio;
use num::Zero;

use crate::num::{ceil_int, floor_int, format_ratio, Scalar};

/// Name of a curve on a fixed resolution.
///
/// Identifiers are opaque; every ordering in the crate (report rows, solver
/// output, tie-breaking) is their lexicographic order, so output is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(String);

impl CurveId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for CurveId {
    fn from(s: &str) -> Self {
        CurveId(s.to_owned())
    }
}

impl From<String> for CurveId {
    fn from(s: String) -> Self {
        CurveId(s)
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Finitely supported map from curves to exact rationals.
///
/// Zero coefficients are never stored, so two divisors are equal exactly when
/// their maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor<T: Scalar> {
    coeffs: BTreeMap<CurveId, Ratio<T>>,
}

impl<T: Scalar> QDivisor<T> {
    pub fn new() -> Self {
        QDivisor {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (C, Ratio<T>)>,
        C: Into<CurveId>,
    {
        let mut d = QDivisor::new();
        for (id, q) in pairs {
            d.set(id.into(), q);
        }
        d
    }

    /// Sets the coefficient of `id`, dropping the entry when it is zero.
    pub fn set(&mut self, id: CurveId, value: Ratio<T>) {
        if value.is_zero() {
            self.coeffs.remove(&id);
        } else {
            self.coeffs.insert(id, value);
        }
    }

    /// Coefficient of `id`; zero when absent.
    pub fn coeff(&self, id: &CurveId) -> Ratio<T> {
        self.coeffs.get(id).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurveId, &Ratio<T>)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &CurveId> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies `f` to every coefficient, re-normalizing zeros away.
    pub fn map_coeffs<F>(&self, mut f: F) -> QDivisor<T>
    where
        F: FnMut(&Ratio<T>) -> Ratio<T>,
    {
        let mut out = QDivisor::new();
        for (id, q) in &self.coeffs {
            out.set(id.clone(), f(q));
        }
        out
    }

    /// Coefficient-wise ceiling: every `a_i` becomes the smallest integer
    /// not less than `a_i`.
    pub fn round_up(&self) -> QDivisor<T> {
        self.map_coeffs(|q| Ratio::from_integer(ceil_int(q)))
    }

    /// Coefficient-wise floor.
    pub fn round_down(&self) -> QDivisor<T> {
        self.map_coeffs(|q| Ratio::from_integer(floor_int(q)))
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: &Ratio<T>) -> QDivisor<T> {
        self.map_coeffs(|q| q.clone() * factor.clone())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|q| q.is_integer())
    }
}

impl<T: Scalar> Add for &QDivisor<T> {
    type Output = QDivisor<T>;

    fn add(self, rhs: &QDivisor<T>) -> QDivisor<T> {
        let mut out = self.clone();
        for (id, q) in &rhs.coeffs {
            let sum = out.coeff(id) + q.clone();
            out.set(id.clone(), sum);
        }
        out
    }
}

impl<T: Scalar> Sub for &QDivisor<T> {
    type Output = QDivisor<T>;

    fn sub(self, rhs: &QDivisor<T>) -> QDivisor<T> {
        let mut out = self.clone();
        for (id, q) in &rhs.coeffs {
            let diff = out.coeff(id) - q.clone();
            out.set(id.clone(), diff);
        }
        out
    }
}

impl<T: Scalar> Neg for &QDivisor<T> {
    type Output = QDivisor<T>;

    fn neg(self) -> QDivisor<T> {
        self.map_coeffs(|q| -q.clone())
    }
}

impl<T: Scalar> fmt::Display for QDivisor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(id, q)| format!("{} {}", format_ratio(q), id))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
