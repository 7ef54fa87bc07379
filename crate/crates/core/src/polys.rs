//! The three polynomial families, in coefficient and factored form.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{NumericError, PrecisionConfig, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Algebraic,
    Trigonometric,
    Exponential,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Algebraic => "algebraic",
            Family::Trigonometric => "trigonometric",
            Family::Exponential => "exponential",
        }
    }

    /// Degree implied by a total multiplicity: trigonometric and exponential
    /// polynomials of degree n carry 2n roots.
    pub fn degree_for_total(&self, total: u32) -> Option<usize> {
        match self {
            Family::Algebraic => Some(total as usize),
            _ if total.is_multiple_of(2) => Some(total as usize / 2),
            _ => None,
        }
    }

    /// Total multiplicity a polynomial of degree `n` must carry.
    pub fn total_for_degree(&self, n: usize) -> usize {
        match self {
            Family::Algebraic => n,
            _ => 2 * n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        match s {
            "algebraic" => Ok(Family::Algebraic),
            "trigonometric" => Ok(Family::Trigonometric),
            "exponential" => Ok(Family::Exponential),
            other => Err(PolyError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("coefficient arrays a and b have lengths {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("leading coefficients a_n and b_n are both zero")]
    DegenerateLeading,
    #[error("factored form needs at least one root")]
    NoRoots,
    #[error("{roots} roots but {mults} multiplicities")]
    RootCountMismatch { roots: usize, mults: usize },
    #[error("multiplicity of root {index} must be positive")]
    ZeroMultiplicity { index: usize },
    #[error("roots {first} and {second} coincide")]
    DuplicateRoot { first: usize, second: usize },
    #[error("total multiplicity {total} is odd; a {family} polynomial of degree n has 2n roots")]
    OddTotal { family: Family, total: u32 },
    #[error("operation needs an algebraic polynomial, got {0}")]
    UnsupportedFamily(Family),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("derivative vanishes at x = {x} while the value does not")]
    DerivativeZero { x: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Monic `x^n + a_1 x^(n-1) + … + a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicCoeffPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> AlgebraicCoeffPoly<T> {
    /// `coeffs` are a_1 … a_n; the leading 1 is implicit.
    pub fn new(coeffs: Vec<T>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::ZeroDegree);
        }
        Ok(AlgebraicCoeffPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    fn eval(&self, x: &T) -> (T, T) {
        // Horner on value and derivative together, carried wide enough that
        // every partial result is exact for exactly representable inputs;
        // only the final value is rounded. Near a multiple root the rounded
        // recurrence would otherwise stall far above working precision.
        let target = self
            .coeffs
            .iter()
            .fold(x.precision(), |acc, c| acc.max(c.precision()));
        let per_step = target.digits + target.guard_digits;
        let wide = PrecisionConfig {
            digits: target.digits,
            guard_digits: target.guard_digits + per_step * (self.coeffs.len() as u32 + 1) + 8,
        };
        let xw = x.rounded_to(&wide);
        let mut value = T::one().rounded_to(&wide);
        let mut deriv = T::zero().rounded_to(&wide);
        for a in &self.coeffs {
            deriv = deriv * xw.clone() + value.clone();
            value = value * xw.clone() + a.clone();
        }
        (value.rounded_to(&target), deriv.rounded_to(&target))
    }
}

/// Shared shape of `a0/2 + Σ (a_k φ(kx) + b_k ψ(kx))`.
#[derive(Debug, Clone, PartialEq)]
struct HarmonicCoeffs<T> {
    a0: T,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Scalar> HarmonicCoeffs<T> {
    fn new(a0: T, a: Vec<T>, b: Vec<T>) -> Result<Self, PolyError> {
        if a.len() != b.len() {
            return Err(PolyError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.is_empty() {
            return Err(PolyError::ZeroDegree);
        }
        if a[a.len() - 1].is_zero() && b[b.len() - 1].is_zero() {
            return Err(PolyError::DegenerateLeading);
        }
        Ok(HarmonicCoeffs { a0, a, b })
    }
}

/// `a0/2 + Σ_{k=1}^{n} (a_k cos kx + b_k sin kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoeffPoly<T> {
    c: HarmonicCoeffs<T>,
}

impl<T: Scalar> TrigCoeffPoly<T> {
    pub fn new(a0: T, a: Vec<T>, b: Vec<T>) -> Result<Self, PolyError> {
        Ok(TrigCoeffPoly {
            c: HarmonicCoeffs::new(a0, a, b)?,
        })
    }

    pub fn a0(&self) -> &T {
        &self.c.a0
    }
    pub fn a(&self) -> &[T] {
        &self.c.a
    }
    pub fn b(&self) -> &[T] {
        &self.c.b
    }
    pub fn degree(&self) -> usize {
        self.c.a.len()
    }

    fn eval(&self, x: &T) -> (T, T) {
        let mut value = self.c.a0.clone() / T::from_i64(2);
        let mut deriv = T::zero();
        for (idx, (ak, bk)) in self.c.a.iter().zip(&self.c.b).enumerate() {
            let k = T::from_i64(idx as i64 + 1);
            let kx = k.clone() * x.clone();
            let (s, c) = (kx.sin(), kx.cos());
            value = value + ak.clone() * c.clone() + bk.clone() * s.clone();
            deriv = deriv + k * (bk.clone() * c - ak.clone() * s);
        }
        (value, deriv)
    }
}

/// `a0/2 + Σ_{k=1}^{n} (a_k cosh kx + b_k sinh kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpCoeffPoly<T> {
    c: HarmonicCoeffs<T>,
}

impl<T: Scalar> ExpCoeffPoly<T> {
    pub fn new(a0: T, a: Vec<T>, b: Vec<T>) -> Result<Self, PolyError> {
        Ok(ExpCoeffPoly {
            c: HarmonicCoeffs::new(a0, a, b)?,
        })
    }

    pub fn a0(&self) -> &T {
        &self.c.a0
    }
    pub fn a(&self) -> &[T] {
        &self.c.a
    }
    pub fn b(&self) -> &[T] {
        &self.c.b
    }
    pub fn degree(&self) -> usize {
        self.c.a.len()
    }

    fn eval(&self, x: &T) -> (T, T) {
        let mut value = self.c.a0.clone() / T::from_i64(2);
        let mut deriv = T::zero();
        for (idx, (ak, bk)) in self.c.a.iter().zip(&self.c.b).enumerate() {
            let k = T::from_i64(idx as i64 + 1);
            let kx = k.clone() * x.clone();
            let (s, c) = (kx.sinh(), kx.cosh());
            value = value + ak.clone() * c.clone() + bk.clone() * s.clone();
            deriv = deriv + k * (ak.clone() * s + bk.clone() * c);
        }
        (value, deriv)
    }
}

/// Product of `g(x - r_j)^α_j` where `g` is the identity, `sin(t/2)` or
/// `sinh(t/2)` depending on the family.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly<T> {
    family: Family,
    roots: Vec<T>,
    mults: Vec<u32>,
}

impl<T: Scalar> FactoredPoly<T> {
    pub fn new(family: Family, roots: Vec<T>, mults: Vec<u32>) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::NoRoots);
        }
        if roots.len() != mults.len() {
            return Err(PolyError::RootCountMismatch {
                roots: roots.len(),
                mults: mults.len(),
            });
        }
        if let Some(index) = mults.iter().position(|&m| m == 0) {
            return Err(PolyError::ZeroMultiplicity { index });
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i] == roots[j] {
                    return Err(PolyError::DuplicateRoot {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let total: u32 = mults.iter().sum();
        if family.degree_for_total(total).is_none() {
            return Err(PolyError::OddTotal { family, total });
        }
        Ok(FactoredPoly {
            family,
            roots,
            mults,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn roots(&self) -> &[T] {
        &self.roots
    }
    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.mults.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.family
            .degree_for_total(self.total_multiplicity())
            .expect("validated at construction")
    }

    /// One factor and its derivative: `(g(t), g'(t))` with `t = x - r`.
    fn factor(&self, t: T) -> (T, T) {
        match self.family {
            Family::Algebraic => (t, T::one()),
            Family::Trigonometric => {
                let half = t / T::from_i64(2);
                let c = half.cos();
                (half.sin(), c / T::from_i64(2))
            }
            Family::Exponential => {
                let half = t / T::from_i64(2);
                let c = half.cosh();
                (half.sinh(), c / T::from_i64(2))
            }
        }
    }

    fn eval(&self, x: &T) -> (T, T) {
        // F_j = g_j^α_j and F_j' = α_j g_j^(α_j - 1) g_j'; f' = Σ F_j' Π_{l≠j} F_l.
        let parts: Vec<(T, T)> = self
            .roots
            .iter()
            .zip(&self.mults)
            .map(|(r, &m)| {
                let (g, dg) = self.factor(x.clone() - r.clone());
                let g_pow = g.powi(m - 1);
                let d = T::from_i64(m as i64) * g_pow.clone() * dg;
                (g_pow * g, d)
            })
            .collect();
        let value = parts
            .iter()
            .fold(T::one(), |acc, (f, _)| acc * f.clone());
        let mut deriv = T::zero();
        for (j, (_, dj)) in parts.iter().enumerate() {
            let mut term = dj.clone();
            for (l, (fl, _)) in parts.iter().enumerate() {
                if l != j {
                    term = term * fl.clone();
                }
            }
            deriv = deriv + term;
        }
        (value, deriv)
    }
}

/// Any of the supported polynomial representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial<T> {
    Algebraic(AlgebraicCoeffPoly<T>),
    Trigonometric(TrigCoeffPoly<T>),
    Exponential(ExpCoeffPoly<T>),
    Factored(FactoredPoly<T>),
}

impl<T: Scalar> Polynomial<T> {
    pub fn family(&self) -> Family {
        match self {
            Polynomial::Algebraic(_) => Family::Algebraic,
            Polynomial::Trigonometric(_) => Family::Trigonometric,
            Polynomial::Exponential(_) => Family::Exponential,
            Polynomial::Factored(f) => f.family(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Polynomial::Algebraic(p) => p.degree(),
            Polynomial::Trigonometric(p) => p.degree(),
            Polynomial::Exponential(p) => p.degree(),
            Polynomial::Factored(f) => f.degree(),
        }
    }

    /// `(p(x), p'(x))`.
    pub fn eval_with_derivative(&self, x: &T) -> (T, T) {
        match self {
            Polynomial::Algebraic(p) => p.eval(x),
            Polynomial::Trigonometric(p) => p.eval(x),
            Polynomial::Exponential(p) => p.eval(x),
            Polynomial::Factored(f) => f.eval(x),
        }
    }

    /// `p(x) / p'(x)`.
    ///
    /// An exact zero of `p` yields 0 even when `p'` also vanishes there: the
    /// ratio tends to `(x - r)/α` at a root of multiplicity α.
    pub fn newton_ratio(&self, x: &T) -> Result<T, PolyError> {
        let (value, deriv) = self.eval_with_derivative(x);
        if value.is_zero() {
            return Ok(value);
        }
        if deriv.is_zero() {
            return Err(PolyError::DerivativeZero { x: x.to_string() });
        }
        Ok(value / deriv)
    }
}

impl<T> From<FactoredPoly<T>> for Polynomial<T> {
    fn from(f: FactoredPoly<T>) -> Self {
        Polynomial::Factored(f)
    }
}

impl<T> From<AlgebraicCoeffPoly<T>> for Polynomial<T> {
    fn from(p: AlgebraicCoeffPoly<T>) -> Self {
        Polynomial::Algebraic(p)
    }
}

/// Multiplies out `Π (x - r_j)^α_j` into monic coefficient form.
pub fn expand_algebraic<T: Scalar>(f: &FactoredPoly<T>) -> Result<AlgebraicCoeffPoly<T>, PolyError> {
    if f.family() != Family::Algebraic {
        return Err(PolyError::UnsupportedFamily(f.family()));
    }
    // Full coefficient vector, highest power first, starting from 1.
    let mut full = vec![T::one()];
    for (r, &m) in f.roots().iter().zip(f.mults()) {
        for _ in 0..m {
            let mut next = full.clone();
            next.push(T::zero());
            for (k, c) in full.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() - c.clone() * r.clone();
            }
            full = next;
        }
    }
    full.remove(0);
    AlgebraicCoeffPoly::new(full)
}
