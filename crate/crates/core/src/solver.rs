//! Simultaneous Chebyshev-type iterations, a multiplicity-Newton baseline,
//! the solve loop and empirical order estimation.
//!
//! Root indices in errors and reports are 1-based, matching `x1 … xm`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{NumericError, PrecisionConfig, Scalar};
use crate::polys::{Family, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("estimates x{i} and x{j} coincide")]
    Collision { i: usize, j: usize },
    #[error("derivative vanishes at x{index} = {x}")]
    DerivativeZero { index: usize, x: String },
    #[error("expected {expected} estimates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("multiplicities sum to {total}, but a {family} polynomial of degree {degree} needs {needed}")]
    MultiplicitySum {
        family: Family,
        total: u32,
        degree: usize,
        needed: usize,
    },
    #[error("multiplicity of x{index} must be positive")]
    ZeroMultiplicity { index: usize },
    #[error("no estimates given")]
    Empty,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("max_iters must be at least 1")]
    ZeroIterations,
    #[error("step tolerance must be positive")]
    NonPositiveTolerance,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Known multiplicities α_1 … α_m and the degree they imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    family: Family,
    mults: Vec<u32>,
    degree: usize,
}

impl MultiplicityProfile {
    pub fn new(family: Family, mults: Vec<u32>) -> Result<Self, SolverError> {
        if mults.is_empty() {
            return Err(SolverError::Empty);
        }
        if let Some(i) = mults.iter().position(|&a| a == 0) {
            return Err(SolverError::ZeroMultiplicity { index: i + 1 });
        }
        let total: u32 = mults.iter().sum();
        let degree = family
            .degree_for_total(total)
            .ok_or(SolverError::MultiplicitySum {
                family,
                total,
                degree: total as usize / 2,
                needed: total as usize + 1,
            })?;
        Ok(MultiplicityProfile {
            family,
            mults,
            degree,
        })
    }

    /// Profile checked against a declared degree.
    pub fn for_degree(family: Family, mults: Vec<u32>, degree: usize) -> Result<Self, SolverError> {
        let total: u32 = mults.iter().sum();
        let needed = family.total_for_degree(degree);
        if total as usize != needed {
            return Err(SolverError::MultiplicitySum {
                family,
                total,
                degree,
                needed,
            });
        }
        MultiplicityProfile::new(family, mults)
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn mults(&self) -> &[u32] {
        &self.mults
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.mults.len()
    }
    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }
}

/// The k-th simultaneous approximations.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateVector<T> {
    pub x: Vec<T>,
    pub k: usize,
}

impl<T: Scalar> EstimateVector<T> {
    pub fn initial(x: Vec<T>) -> Self {
        EstimateVector { x, k: 0 }
    }

    /// First coinciding pair, 1-based.
    pub fn collision(&self) -> Option<(usize, usize)> {
        for i in 0..self.x.len() {
            for j in i + 1..self.x.len() {
                if self.x[i] == self.x[j] {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Chebyshev,
    NewtonBaseline,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Chebyshev => "chebyshev",
            Method::NewtonBaseline => "newton_baseline",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "chebyshev" => Ok(Method::Chebyshev),
            "newton_baseline" => Ok(Method::NewtonBaseline),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig<T> {
    pub max_iters: usize,
    pub step_tolerance: T,
    pub precision: PrecisionConfig,
    pub method: Method,
}

impl<T: Scalar> SolveConfig<T> {
    /// Defaults for estimates like `sample`: 50 iterations and a step
    /// tolerance of `10^(-digits+6)`.
    pub fn default_for(sample: &T) -> Self {
        let digits = sample.decimal_digits() as i64;
        SolveConfig {
            max_iters: 50,
            step_tolerance: sample.pow10_like(6 - digits),
            precision: sample.precision(),
            method: Method::Chebyshev,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if self.max_iters == 0 {
            return Err(SolverError::ZeroIterations);
        }
        if self.step_tolerance <= T::zero() {
            return Err(SolverError::NonPositiveTolerance);
        }
        Ok(())
    }
}

/// Everything a run produced, one snapshot per iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    pub snapshots: Vec<EstimateVector<T>>,
    /// `steps[k][i] = |x_i^[k+1] - x_i^[k]|`.
    pub steps: Vec<Vec<T>>,
    /// `errors[k][i] = |x_i^[k] - x_i|`, filled by [`IterationTrace::attach_true_roots`].
    pub errors: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn last(&self) -> &EstimateVector<T> {
        self.snapshots.last().expect("a trace always holds the initial vector")
    }

    pub fn attach_true_roots(&mut self, roots: &[T]) -> Result<(), SolverError> {
        let m = self.snapshots[0].x.len();
        if roots.len() != m {
            return Err(SolverError::LengthMismatch {
                expected: m,
                got: roots.len(),
            });
        }
        self.errors = Some(
            self.snapshots
                .iter()
                .map(|s| s.x.iter().zip(roots).map(|(x, r)| (x.clone() - r.clone()).abs()).collect())
                .collect(),
        );
        Ok(())
    }

    /// `max_i |x_i^[k] - x_i|` per snapshot, when true roots are attached.
    pub fn max_errors(&self) -> Option<Vec<T>> {
        self.errors.as_ref().map(|rows| rows.iter().map(|row| max_of(row)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Tolerance,
    MaxIters,
    StepFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    pub family: Family,
    pub mults: Vec<u32>,
    pub method: Method,
    pub precision: PrecisionConfig,
    pub trace: IterationTrace<T>,
    pub converged: bool,
    pub stop_reason: StopReason,
    pub failure: Option<SolverError>,
    /// `|p(x_i)|` at the last snapshot. Not used for stopping: at a multiple
    /// root value and derivative vanish together.
    pub residuals: Vec<T>,
}

fn max_of<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, x| if *x > acc { x.clone() } else { acc })
}

fn half<T: Scalar>(t: T) -> T {
    t / T::from_i64(2)
}

/// `Q_i'(x_i) / Q_i(x_i)` where `Q_i` is the product of the other roots'
/// factors at their current estimates.
pub fn correction_sum<T: Scalar>(
    family: Family,
    estimates: &[T],
    mults: &[u32],
    i: usize,
) -> Result<T, SolverError> {
    let xi = &estimates[i];
    let mut sum = T::zero();
    for (j, (xj, &aj)) in estimates.iter().zip(mults).enumerate() {
        if j == i {
            continue;
        }
        let diff = xi.clone() - xj.clone();
        if diff.is_zero() {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            return Err(SolverError::Collision { i: a + 1, j: b + 1 });
        }
        let alpha = T::from_i64(aj as i64);
        let term = match family {
            Family::Algebraic => alpha / diff,
            Family::Trigonometric => alpha * half(diff).cot().map_err(|_| collision(i, j))?,
            Family::Exponential => alpha * half(diff).coth().map_err(|_| collision(i, j))?,
        };
        sum = sum + term;
    }
    Ok(match family {
        Family::Algebraic => sum,
        _ => half(sum),
    })
}

fn collision(i: usize, j: usize) -> SolverError {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    SolverError::Collision { i: a + 1, j: b + 1 }
}

fn check_shape<T: Scalar>(
    p: &Polynomial<T>,
    estimates: &EstimateVector<T>,
    profile: &MultiplicityProfile,
) -> Result<(), SolverError> {
    if estimates.x.len() != profile.len() {
        return Err(SolverError::LengthMismatch {
            expected: profile.len(),
            got: estimates.x.len(),
        });
    }
    let needed = p.family().total_for_degree(p.degree());
    let total: u32 = profile.mults().iter().sum();
    if p.family() != profile.family() || total as usize != needed {
        return Err(SolverError::MultiplicitySum {
            family: p.family(),
            total,
            degree: p.degree(),
            needed,
        });
    }
    Ok(())
}

fn ratio_at<T: Scalar>(p: &Polynomial<T>, x: &T, index: usize) -> Result<T, SolverError> {
    p.newton_ratio(x).map_err(|e| match e {
        PolyError::DerivativeZero { x } => SolverError::DerivativeZero { index: index + 1, x },
        other => SolverError::Poly(other),
    })
}

fn advance<T: Scalar>(
    p: &Polynomial<T>,
    estimates: &EstimateVector<T>,
    profile: &MultiplicityProfile,
    with_correction: bool,
) -> Result<EstimateVector<T>, SolverError> {
    check_shape(p, estimates, profile)?;
    if let Some((i, j)) = estimates.collision() {
        return Err(SolverError::Collision { i, j });
    }
    let family = p.family();
    let mut next = Vec::with_capacity(estimates.x.len());
    for (i, (xi, &ai)) in estimates.x.iter().zip(profile.mults()).enumerate() {
        let ratio = ratio_at(p, xi, i)?;
        let bracket = if with_correction {
            let q = correction_sum(family, &estimates.x, profile.mults(), i)?;
            T::one() + ratio.clone() * q
        } else {
            T::one()
        };
        next.push(xi.clone() - T::from_i64(ai as i64) * ratio * bracket);
    }
    Ok(EstimateVector {
        x: next,
        k: estimates.k + 1,
    })
}

/// One total-step update `x_i - α_i (f/f')[1 + (f/f')(Q_i'/Q_i)]`; every
/// component is computed from the previous vector only.
pub fn step<T: Scalar>(
    p: &Polynomial<T>,
    estimates: &EstimateVector<T>,
    profile: &MultiplicityProfile,
) -> Result<EstimateVector<T>, SolverError> {
    advance(p, estimates, profile, true)
}

/// `x_i - α_i f/f'`: second order, used as a contrast for order estimates.
pub fn newton_baseline_step<T: Scalar>(
    p: &Polynomial<T>,
    estimates: &EstimateVector<T>,
    profile: &MultiplicityProfile,
) -> Result<EstimateVector<T>, SolverError> {
    advance(p, estimates, profile, false)
}

/// Iterates until the largest step is within tolerance or `max_iters` runs
/// out. Step failures end the run and are reported, not raised; only
/// malformed inputs return `Err`.
pub fn solve<T: Scalar>(
    p: &Polynomial<T>,
    profile: &MultiplicityProfile,
    init: EstimateVector<T>,
    cfg: &SolveConfig<T>,
) -> Result<SolveReport<T>, SolverError> {
    cfg.validate()?;
    check_shape(p, &init, profile)?;
    let mut trace = IterationTrace {
        snapshots: vec![init],
        steps: Vec::new(),
        errors: None,
    };
    let mut stop_reason = StopReason::MaxIters;
    let mut failure = None;
    for _ in 0..cfg.max_iters {
        let prev = trace.last();
        let next = match cfg.method {
            Method::Chebyshev => step(p, prev, profile),
            Method::NewtonBaseline => newton_baseline_step(p, prev, profile),
        };
        let next = match next {
            Ok(v) => v,
            Err(e) => {
                stop_reason = StopReason::StepFailure;
                failure = Some(e);
                break;
            }
        };
        let steps: Vec<T> = next
            .x
            .iter()
            .zip(&prev.x)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .collect();
        let done = max_of(&steps) <= cfg.step_tolerance;
        trace.steps.push(steps);
        trace.snapshots.push(next);
        if done {
            stop_reason = StopReason::Tolerance;
            break;
        }
    }
    let residuals = trace
        .last()
        .x
        .iter()
        .map(|x| p.eval_with_derivative(x).0.abs())
        .collect();
    Ok(SolveReport {
        family: p.family(),
        mults: profile.mults().to_vec(),
        method: cfg.method,
        precision: cfg.precision,
        trace,
        converged: stop_reason == StopReason::Tolerance,
        stop_reason,
        failure,
        residuals,
    })
}

/// An order estimate and the (0-based) indices of the triple behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate<T> {
    pub order: T,
    pub triple: [usize; 3],
}

/// `ln(e_{k+1}/e_k) / ln(e_k/e_{k-1})` on the last admissible triple.
pub fn empirical_order<T: Scalar>(errors: &[T]) -> Result<T, SolverError> {
    empirical_order_above(errors, &T::zero()).map(|o| o.order)
}

/// Like [`empirical_order`], ignoring everything from the first entry at
/// or below `floor` onward. The last three remaining entries must be
/// strictly decreasing.
pub fn empirical_order_above<T: Scalar>(errors: &[T], floor: &T) -> Result<OrderEstimate<T>, SolverError> {
    let usable = errors.iter().position(|e| e <= floor).unwrap_or(errors.len());
    if usable < 3 {
        return Err(SolverError::InsufficientData(format!(
            "{usable} error value(s) above the floor, need 3"
        )));
    }
    let k = usable - 2;
    let (a, b, c) = (&errors[k - 1], &errors[k], &errors[k + 1]);
    if !(a > b && b > c) {
        return Err(SolverError::InsufficientData(format!(
            "errors at k = {}, {}, {} are not strictly decreasing",
            k - 1,
            k,
            k + 1
        )));
    }
    let num = (c.clone() / b.clone()).ln()?;
    let den = (b.clone() / a.clone()).ln()?;
    Ok(OrderEstimate {
        order: num / den,
        triple: [k - 1, k, k + 1],
    })
}

/// Error level below which iterates are dominated by rounding:
/// `10^(-digits+10)`.
pub fn precision_floor<T: Scalar>(sample: &T) -> T {
    sample.pow10_like(10 - sample.decimal_digits() as i64)
}

/// Maps angles into `[-π, π)`.
pub fn canonical_angles<T: Scalar>(xs: &[T]) -> Vec<T> {
    xs.iter()
        .map(|x| {
            let pi = x.pi_like();
            let two_pi = pi.clone() * T::from_i64(2);
            let turns = (x.to_f64() / std::f64::consts::TAU).round();
            let mut y = x.clone();
            if turns.is_finite() && turns != 0.0 {
                y = y - two_pi.clone() * T::from_i64(turns as i64);
            }
            while y < -pi.clone() {
                y = y + two_pi.clone();
            }
            while y >= pi {
                y = y - two_pi.clone();
            }
            y
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Real;
    use crate::polys::FactoredPoly;

    fn r(s: &str) -> Real {
        Real::parse(s, PrecisionConfig::default()).unwrap()
    }

    fn rs(v: &[&str]) -> Vec<Real> {
        v.iter().map(|s| r(s)).collect()
    }

    fn close(a: &Real, b: &Real, tol: &str) -> bool {
        (a.clone() - b.clone()).abs() <= r(tol)
    }

    fn fixture(family: Family, roots: &[&str], mults: &[u32]) -> (Polynomial<Real>, MultiplicityProfile) {
        let p = FactoredPoly::new(family, rs(roots), mults.to_vec()).unwrap();
        (p.into(), MultiplicityProfile::new(family, mults.to_vec()).unwrap())
    }

    #[test]
    fn correction_sum_examples() {
        let one = correction_sum(Family::Algebraic, &rs(&["5"]), &[2], 0).unwrap();
        assert!(one.is_zero());
        let s = correction_sum(Family::Algebraic, &rs(&["-3", "0.1", "4"]), &[2, 1, 3], 0).unwrap();
        let want = r("1") / r("-3.1") + r("3") / r("-7");
        assert!(close(&s, &want, "1e-62"));
        assert_eq!(s.to_string_digits(8), "-0.75115207");
        let t = correction_sum(Family::Trigonometric, &rs(&["0.2", "1.7", "3"]), &[3, 2, 1], 0).unwrap();
        // Oracle: ½[2 cot(-0.75) + cot(-1.4)] from mpmath.
        assert!(close(&t, &r("-1.159664511465277335129221465313097937564"), "1e-38"));
    }

    #[test]
    fn correction_sum_reports_collisions() {
        let err = correction_sum(Family::Algebraic, &rs(&["1", "2", "1"]), &[1, 1, 1], 2).unwrap_err();
        assert_eq!(err, SolverError::Collision { i: 1, j: 3 });
        let err = correction_sum(Family::Exponential, &rs(&["0.5", "0.5"]), &[1, 1], 1).unwrap_err();
        assert_eq!(err, SolverError::Collision { i: 1, j: 2 });
    }

    #[test]
    fn first_steps_match_tables() {
        let (p, prof) = fixture(Family::Algebraic, &["-2", "1", "3"], &[2, 1, 3]);
        let x1 = step(&p, &EstimateVector::initial(rs(&["-3", "0.1", "4"])), &prof).unwrap();
        for (x, want) in x1.x.iter().zip(["-2.074075484632669380", "1.025215703994304140", "3.060848242666424480"]) {
            assert!(close(x, &r(want), "1e-17"), "{x}");
        }
        assert_eq!(x1.k, 1);
        let (p, prof) = fixture(Family::Trigonometric, &["1", "2", "2.5"], &[3, 2, 1]);
        let x1 = step(&p, &EstimateVector::initial(rs(&["0.2", "1.7", "3"])), &prof).unwrap();
        for (x, want) in x1.x.iter().zip(["1.024086327992702930", "2.102113721613658320", "2.719836743505084910"]) {
            assert!(close(x, &r(want), "1e-17"), "{x}");
        }
        let (p, prof) = fixture(Family::Exponential, &["-2", "3"], &[2, 2]);
        let x1 = step(&p, &EstimateVector::initial(rs(&["-1.5", "3.4"])), &prof).unwrap();
        for (x, want) in x1.x.iter().zip(["-1.936759338912996590", "3.015817214722672100"]) {
            assert!(close(x, &r(want), "1e-17"), "{x}");
        }
    }

    #[test]
    fn single_algebraic_root_in_one_step() {
        let (p, prof) = fixture(Family::Algebraic, &["1.25"], &[5]);
        let x1 = step(&p, &EstimateVector::initial(rs(&["-7.5"])), &prof).unwrap();
        assert!(close(&x1.x[0], &r("1.25"), "1e-58"));
        let x1 = newton_baseline_step(&p, &EstimateVector::initial(rs(&["3"])), &prof).unwrap();
        assert!(close(&x1.x[0], &r("1.25"), "1e-58"));
    }

    #[test]
    fn newton_baseline_matches_formula() {
        let (p, prof) = fixture(Family::Algebraic, &["-2", "1", "3"], &[2, 1, 3]);
        let init = rs(&["-3", "0.1", "4"]);
        let x1 = newton_baseline_step(&p, &EstimateVector::initial(init.clone()), &prof).unwrap();
        // Oracle: x - α / Σ_j α_j/(x - r_j), by direct arithmetic.
        let roots = rs(&["-2", "1", "3"]);
        for (i, (x, &a)) in init.iter().zip(&[2i64, 1, 3]).enumerate() {
            let s = roots.iter().zip(&[2i64, 1, 3]).fold(Real::zero_with(PrecisionConfig::default()), |acc, (rj, &aj)| {
                acc + Real::from_i64(aj) / (x.clone() - rj.clone())
            });
            let want = x.clone() - Real::from_i64(a) / s;
            assert!(close(&x1.x[i], &want, "1e-60"));
        }
    }

    #[test]
    fn exact_roots_are_fixed_points() {
        for (fam, roots, mults) in [
            (Family::Algebraic, vec!["-2", "1", "3"], vec![2, 1, 3]),
            (Family::Trigonometric, vec!["1", "2", "2.5"], vec![3, 2, 1]),
            (Family::Exponential, vec!["-2", "3"], vec![2, 2]),
        ] {
            let (p, prof) = fixture(fam, &roots, &mults);
            let v = EstimateVector::initial(rs(&roots));
            assert_eq!(step(&p, &v, &prof).unwrap().x, v.x);
            assert_eq!(newton_baseline_step(&p, &v, &prof).unwrap().x, v.x);
        }
    }

    #[test]
    fn solve_reproduces_final_rows() {
        let (p, prof) = fixture(Family::Algebraic, &["-2", "1", "3"], &[2, 1, 3]);
        let mut cfg = SolveConfig::default_for(&r("1"));
        cfg.max_iters = 4;
        let rep = solve(&p, &prof, EstimateVector::initial(rs(&["-3", "0.1", "4"])), &cfg).unwrap();
        assert_eq!(rep.trace.snapshots.len(), 5);
        assert_eq!(rep.stop_reason, StopReason::MaxIters);
        for (x, want) in rep.trace.last().x.iter().zip(["-2", "1", "3"]) {
            assert!(close(x, &r(want), "1e-18"));
        }
        // Run on to the tolerance.
        cfg.max_iters = 50;
        let rep = solve(&p, &prof, EstimateVector::initial(rs(&["-3", "0.1", "4"])), &cfg).unwrap();
        assert!(rep.converged);
        assert_eq!(rep.stop_reason, StopReason::Tolerance);
        assert!(rep.trace.snapshots.len() <= 8);
    }

    #[test]
    fn step_failures_are_reported() {
        // (x-1)(x+1): the estimate 0 is a stationary point.
        let (p, prof) = fixture(Family::Algebraic, &["1", "-1"], &[1, 1]);
        let cfg = SolveConfig::default_for(&r("1"));
        let rep = solve(&p, &prof, EstimateVector::initial(rs(&["0", "3"])), &cfg).unwrap();
        assert_eq!(rep.stop_reason, StopReason::StepFailure);
        assert!(!rep.converged);
        assert!(matches!(rep.failure, Some(SolverError::DerivativeZero { index: 1, .. })));
        let rep = solve(&p, &prof, EstimateVector::initial(rs(&["2", "2"])), &cfg).unwrap();
        assert_eq!(rep.failure, Some(SolverError::Collision { i: 1, j: 2 }));
    }

    #[test]
    fn shape_errors() {
        let (p, _) = fixture(Family::Algebraic, &["-2", "1", "3"], &[2, 1, 3]);
        let bad = MultiplicityProfile::new(Family::Algebraic, vec![2, 1, 2]).unwrap();
        let cfg = SolveConfig::default_for(&r("1"));
        assert!(matches!(
            solve(&p, &bad, EstimateVector::initial(rs(&["-3", "0.1", "4"])), &cfg),
            Err(SolverError::MultiplicitySum { total: 5, needed: 6, .. })
        ));
        assert!(MultiplicityProfile::new(Family::Exponential, vec![1, 2]).is_err());
        assert!(MultiplicityProfile::for_degree(Family::Trigonometric, vec![3, 2, 1], 3).is_ok());
    }

    #[test]
    fn order_examples() {
        let p = PrecisionConfig::default();
        let c = Real::parse("0.5", p).unwrap();
        let cubic: Vec<Real> = (0..4).map(|k| c.clone() * c.powi(3u32.pow(k))).collect();
        let o = empirical_order(&cubic).unwrap();
        assert!(close(&o, &r("3"), "1e-50"));
        let geometric: Vec<Real> = (0..6).map(|k| Real::from_i64(1) / Real::from_i64(1 << k).with_precision(p)).collect();
        assert!(close(&empirical_order(&geometric).unwrap(), &r("1"), "1e-50"));
        // Table 1 digits for x1 as printed.
        let printed = rs(&["1", "0.074075484632669380", "0.000104622198420050", "0.0000000000000256950"]);
        let o = empirical_order(&printed).unwrap();
        assert_eq!(o.to_string_digits(3), "3.37");
        assert!(matches!(empirical_order(&rs(&["1", "0.1"])), Err(SolverError::InsufficientData(_))));
        assert!(matches!(empirical_order(&rs(&["1", "0.1", "0.2"])), Err(SolverError::InsufficientData(_))));
    }

    #[test]
    fn order_respects_floor() {
        let errs = rs(&["0.1", "1e-3", "1e-9", "1e-27", "1e-70"]);
        let est = empirical_order_above(&errs, &r("1e-54")).unwrap();
        assert_eq!(est.triple, [1, 2, 3]);
        assert!(close(&est.order, &r("3"), "1e-50"));
    }

    #[test]
    fn angles_canonicalize() {
        let out = canonical_angles(&rs(&["7", "-4", "0.5", "3.2"]));
        let tau = Real::pi(PrecisionConfig::default()) * r("2");
        assert!(close(&out[0], &(r("7") - tau.clone()), "1e-60"));
        assert!(close(&out[1], &(r("-4") + tau.clone()), "1e-60"));
        assert_eq!(out[2], r("0.5"));
        assert!(close(&out[3], &(r("3.2") - tau), "1e-60"));
    }
}
