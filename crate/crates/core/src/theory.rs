//! Hypothesis checks for the three convergence theorems and the bound
//! `c·q^(3^k)` they promise.

use thiserror::Error;

use crate::numeric::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("separation needs at least 2 roots, got {0}")]
    UndefinedSeparation(usize),
}

/// Constants a check was run with, plus the derived A (trigonometric) or
/// S (exponential).
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationParams<T> {
    pub d: T,
    pub max_sep: Option<T>,
    pub c: T,
    pub q: T,
    pub xi: Option<T>,
    pub a: Option<T>,
    pub s: Option<T>,
}

/// One evaluated condition. `index` is the 1-based root index for
/// per-root inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremRow<T> {
    pub name: String,
    pub index: Option<usize>,
    pub lhs: Option<T>,
    pub rhs: Option<T>,
    pub holds: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport<T> {
    pub theorem: u8,
    pub n: usize,
    pub mults: Vec<u32>,
    pub params: SeparationParams<T>,
    pub rows: Vec<TheoremRow<T>>,
    pub notes: Vec<String>,
    pub overall_pass: bool,
}

impl<T: Scalar> TheoremReport<T> {
    fn finish(theorem: u8, n: usize, mults: &[u32], params: SeparationParams<T>, rows: Vec<TheoremRow<T>>, notes: Vec<String>) -> Self {
        let overall_pass = rows.iter().all(|r| r.holds);
        TheoremReport {
            theorem,
            n,
            mults: mults.to_vec(),
            params,
            rows,
            notes,
            overall_pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremRow<T>> {
        self.rows.iter().filter(|r| !r.holds)
    }
}

fn less<T: Scalar>(name: &str, index: Option<usize>, lhs: T, rhs: T) -> TheoremRow<T> {
    TheoremRow {
        name: name.to_string(),
        index,
        holds: lhs < rhs,
        lhs: Some(lhs),
        rhs: Some(rhs),
        note: None,
    }
}

fn undefined<T>(name: &str, index: Option<usize>, note: &str) -> TheoremRow<T> {
    TheoremRow {
        name: name.to_string(),
        index,
        lhs: None,
        rhs: None,
        holds: false,
        note: Some(note.to_string()),
    }
}

fn int<T: Scalar>(v: impl Into<i64>) -> T {
    T::from_i64(v.into())
}

pub fn min_separation<T: Scalar>(roots: &[T]) -> Result<T, TheoryError> {
    pairwise(roots, |best, d| d < best)
}

pub fn max_separation<T: Scalar>(roots: &[T]) -> Result<T, TheoryError> {
    pairwise(roots, |best, d| d > best)
}

fn pairwise<T: Scalar>(roots: &[T], better: impl Fn(&T, &T) -> bool) -> Result<T, TheoryError> {
    if roots.len() < 2 {
        return Err(TheoryError::UndefinedSeparation(roots.len()));
    }
    let mut best: Option<T> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i].clone() - roots[j].clone()).abs();
            if best.as_ref().is_none_or(|b| better(b, &d)) {
                best = Some(d);
            }
        }
    }
    Ok(best.expect("at least one pair"))
}

fn common_rows<T: Scalar>(d: &T, c: &T, q: &T) -> Vec<TheoremRow<T>> {
    vec![
        less("0 < q", None, T::zero(), q.clone()),
        less("q < 1", None, q.clone(), T::one()),
        less("c > 0", None, T::zero(), c.clone()),
        less("d - 2c > 0", None, T::zero(), d.clone() - int::<T>(2) * c.clone()),
    ]
}

/// Algebraic case: `c²(n - α_i) < (α_i d - 2nc)(d - 2c)` for every i.
pub fn check_theorem1<T: Scalar>(n: usize, mults: &[u32], d: &T, c: &T, q: &T) -> TheoremReport<T> {
    let mut rows = common_rows(d, c, q);
    let nt: T = int(n as i64);
    let two: T = int(2);
    for (i, &a) in mults.iter().enumerate() {
        let at: T = int(a);
        let lhs = c.clone() * c.clone() * (nt.clone() - at.clone());
        let rhs = (at * d.clone() - two.clone() * nt.clone() * c.clone()) * (d.clone() - two.clone() * c.clone());
        rows.push(less("c^2 (n - a_i) < (a_i d - 2nc)(d - 2c)", Some(i + 1), lhs, rhs));
    }
    let params = SeparationParams {
        d: d.clone(),
        max_sep: None,
        c: c.clone(),
        q: q.clone(),
        xi: None,
        a: None,
        s: None,
    };
    TheoremReport::finish(1, n, mults, params, rows, Vec::new())
}

pub const THEOREM2_NOTE: &str = "the stated main inequality has a term (c/4)(a_i/4)(2n - a_i) and a '+' inside the \
right-hand square; the bound's derivation needs (c/4)(a_i/A)(2n - a_i) and a '-' with a positive base. \
Both forms are evaluated and both must hold. The stated form alone admits constants for which the bound fails.";

/// Trigonometric case. The main inequality is evaluated twice per root:
/// as stated, and in the form its derivation supports.
#[allow(clippy::too_many_arguments)]
pub fn check_theorem2<T: Scalar>(
    n: usize,
    mults: &[u32],
    d: &T,
    max_sep: &T,
    c: &T,
    q: &T,
    xi: &T,
) -> TheoremReport<T> {
    let two: T = int(2);
    let mut rows = vec![
        less("0 < q", None, T::zero(), q.clone()),
        less("q < 1", None, q.clone(), T::one()),
        less("c > 0", None, T::zero(), c.clone()),
        less("2c < xi", None, two.clone() * c.clone(), xi.clone()),
        less("d - 2c > 0", None, T::zero(), d.clone() - two.clone() * c.clone()),
    ];
    let pi = c.pi_like();
    rows.push(less(
        "max |x_i - x_j| < 2pi - 2xi",
        None,
        max_sep.clone(),
        two.clone() * pi - two.clone() * xi.clone(),
    ));
    let a_const = {
        let s1 = (xi.clone() / two.clone()).sin().abs();
        let s2 = (d.clone() / two.clone() - c.clone()).sin().abs();
        if s1 < s2 { s1 } else { s2 }
    };
    let nt: T = int(n as i64);
    let c2 = c.clone() * c.clone();
    for (i, &a) in mults.iter().enumerate() {
        let idx = Some(i + 1);
        if a_const.is_zero() {
            rows.push(undefined("main inequality (stated)", idx, "A = 0"));
            rows.push(undefined("main inequality (derivation form)", idx, "A = 0"));
            continue;
        }
        let at: T = int(a);
        let b = two.clone() * nt.clone() - at.clone();
        let aa = a_const.clone();
        let a2 = aa.clone() * aa.clone();
        let four: T = int(4);
        let six: T = int(6);
        let eight: T = int(8);
        let shared = at.clone() * at.clone()
            + b.clone() * b.clone() / (four.clone() * a2.clone())
            + at.clone()
                * (b.clone() / (two.clone() * a2.clone()) + c.clone() / (six * aa.clone()) * b.clone());
        let stated_mid = c.clone() / four.clone() * (at.clone() / four.clone()) * b.clone();
        let derived_mid = c.clone() / four * (at.clone() / aa.clone()) * b.clone();
        let lead = at.clone() * (T::one() - c2.clone() / eight);
        let tail = c.clone() / (two.clone() * aa) * b;

        let lhs = c2.clone() * (shared.clone() + stated_mid);
        let base = lead.clone() + tail.clone();
        rows.push(less("main inequality (stated)", idx, lhs, base.clone() * base));

        let lhs = c2.clone() * (shared + derived_mid);
        let base = lead - tail;
        if base <= T::zero() {
            let mut row = less("main inequality (derivation form)", idx, lhs, base.clone() * base);
            row.holds = false;
            row.note = Some("base a_i(1 - c^2/8) - (c/2A)(2n - a_i) is not positive".to_string());
            rows.push(row);
        } else {
            rows.push(less("main inequality (derivation form)", idx, lhs, base.clone() * base));
        }
    }
    let params = SeparationParams {
        d: d.clone(),
        max_sep: Some(max_sep.clone()),
        c: c.clone(),
        q: q.clone(),
        xi: Some(xi.clone()),
        a: Some(a_const),
        s: None,
    };
    TheoremReport::finish(2, n, mults, params, rows, vec![THEOREM2_NOTE.to_string()])
}

pub const THEOREM3_NOTE: &str = "S cosh^-1 c is read as S / cosh(c); the inverse function arccosh(c) is undefined for c < 1.";

/// Exponential case with `S = sinh((d - 2c)/2)`.
pub fn check_theorem3<T: Scalar>(n: usize, mults: &[u32], d: &T, c: &T, q: &T) -> TheoremReport<T> {
    let mut rows = common_rows(d, c, q);
    let two: T = int(2);
    let sh = c.sinh().abs();
    let ch = c.cosh();
    rows.push(less(
        "c|sinh c| + cosh c < 12",
        None,
        c.clone() * sh.clone() + ch.clone(),
        int(12),
    ));
    let s = ((d.clone() - two.clone() * c.clone()) / two.clone()).sinh();
    let nt: T = int(n as i64);
    let name = "a_i^2 + nS^-1(a_i c + S^-3|sinh c|)|sinh c| + 2nS^-2 cosh c < a_i + S/cosh c";
    for (i, &a) in mults.iter().enumerate() {
        let idx = Some(i + 1);
        if s <= T::zero() {
            rows.push(undefined(name, idx, "S = sinh((d - 2c)/2) is not positive, so S^-1 is undefined"));
            continue;
        }
        let at: T = int(a);
        let s3 = s.clone() * s.clone() * s.clone();
        let lhs = at.clone() * at.clone()
            + nt.clone() / s.clone() * (at.clone() * c.clone() + sh.clone() / s3) * sh.clone()
            + two.clone() * nt.clone() / (s.clone() * s.clone()) * ch.clone();
        let rhs = at + s.clone() / ch.clone();
        rows.push(less(name, idx, lhs, rhs));
    }
    let params = SeparationParams {
        d: d.clone(),
        max_sep: None,
        c: c.clone(),
        q: q.clone(),
        xi: None,
        a: None,
        s: Some(s),
    };
    TheoremReport::finish(3, n, mults, params, rows, vec![THEOREM3_NOTE.to_string()])
}

/// `c·q^(3^k)`, by repeated cubing. Once the power drops below
/// `10^(-4·digits)` the bound is returned as exactly zero: it is then far
/// below anything the working precision can resolve.
pub fn error_bound<T: Scalar>(c: &T, q: &T, k: u32) -> T {
    let tiny = q.pow10_like(-4 * q.decimal_digits() as i64);
    let mut p = q.clone();
    for _ in 0..k {
        p = p.clone() * p.clone() * p;
        if p.abs() < tiny {
            return T::zero();
        }
    }
    c.clone() * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{PrecisionConfig, Real};

    fn r(s: &str) -> Real {
        Real::parse(s, PrecisionConfig::default()).unwrap()
    }

    fn rs(v: &[&str]) -> Vec<Real> {
        v.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn separations() {
        assert_eq!(min_separation(&rs(&["-2", "1", "3"])).unwrap(), r("2"));
        assert_eq!(min_separation(&rs(&["0", "1"])).unwrap(), r("1"));
        assert_eq!(min_separation(&rs(&["1", "2", "2.5"])).unwrap(), r("0.5"));
        assert_eq!(max_separation(&rs(&["1", "2", "2.5"])).unwrap(), r("1.5"));
        assert_eq!(min_separation(&rs(&["1"])), Err(TheoryError::UndefinedSeparation(1)));
    }

    #[test]
    fn theorem1_examples() {
        let rep = check_theorem1(6, &[2, 1, 3], &r("2"), &r("0.05"), &r("0.5"));
        assert!(rep.overall_pass);
        let row = rep.rows.iter().find(|row| row.index == Some(2)).unwrap();
        assert_eq!(row.lhs.as_ref().unwrap(), &r("0.0125"));
        assert_eq!(row.rhs.as_ref().unwrap(), &(r("1.4") * r("1.9")));
        let rep = check_theorem1(6, &[2, 1, 3], &r("2"), &r("1"), &r("0.5"));
        assert!(!rep.overall_pass);
        assert!(rep.failures().any(|row| row.name == "d - 2c > 0"));
        let rep = check_theorem1(6, &[2, 1, 3], &r("2"), &r("0.05"), &r("1"));
        assert!(rep.failures().any(|row| row.name == "q < 1"));
    }

    #[test]
    fn theorem2_examples() {
        let rep = check_theorem2(3, &[3, 2, 1], &r("0.5"), &r("1.5"), &r("0.05"), &r("0.5"), &r("1"));
        for name in ["0 < q", "q < 1", "c > 0", "2c < xi", "d - 2c > 0", "max |x_i - x_j| < 2pi - 2xi"] {
            assert!(rep.rows.iter().any(|row| row.name == name && row.holds), "{name}");
        }
        assert_eq!(rep.params.a.as_ref().unwrap(), &r("0.2").sin());
        assert_eq!(rep.rows.iter().filter(|row| row.index.is_some()).count(), 6);
        assert!(!rep.notes.is_empty());

        // Span condition violated: max_sep ≥ 2π - 2ξ.
        let rep = check_theorem2(1, &[1, 1], &r("1"), &r("5"), &r("0.1"), &r("0.5"), &r("1"));
        assert!(rep.failures().any(|row| row.name.starts_with("max")));
    }

    #[test]
    fn theorem2_small_c_limit() {
        let rep = check_theorem2(2, &[2, 2], &r("1"), &r("1"), &r("1e-12"), &r("0.5"), &r("1"));
        assert!(rep.overall_pass);
        let row = rep.rows.iter().find(|row| row.index == Some(1)).unwrap();
        let rhs = row.rhs.as_ref().unwrap();
        assert!((rhs.clone() - r("4")).abs() < r("1e-10"));
    }

    #[test]
    fn theorem3_examples() {
        let rep = check_theorem3(2, &[2, 2], &r("5"), &r("0.05"), &r("0.5"));
        assert_eq!(rep.params.s.as_ref().unwrap(), &r("2.45").sinh());
        let clause = rep.rows.iter().find(|row| row.name.contains("< 12")).unwrap();
        assert!(clause.holds);
        let rep = check_theorem3(2, &[2, 2], &r("5"), &r("0.1"), &r("0.5"));
        let clause = rep.rows.iter().find(|row| row.name.contains("< 12")).unwrap();
        assert_eq!(clause.lhs.as_ref().unwrap().to_string_digits(4), "1.015");

        let rep = check_theorem3(2, &[2, 2], &r("1"), &r("0.5"), &r("0.5"));
        assert!(!rep.overall_pass);
        assert!(rep.failures().filter(|row| row.index.is_some()).all(|row| row.note.is_some()));
    }

    #[test]
    fn error_bound_examples() {
        assert_eq!(error_bound(&r("0.3"), &r("0.5"), 0), r("0.15"));
        assert_eq!(error_bound(&r("1"), &r("0.5"), 2), r("0.001953125"));
        let near_one = error_bound(&r("0.7"), &r("0.999999999999"), 3);
        assert!((near_one - r("0.7")).abs() < r("1e-9"));
        assert!(error_bound(&r("1"), &r("0.5"), 40).is_zero());
    }
}
