//! JSON problem files.
//!
//! ```json
//! { "family": "algebraic", "expr": "(x+2)^2*(x-1)*(x-3)^3",
//!   "mults": [2, 1, 3], "init": ["-3", "0.1", "4"],
//!   "digits": 64, "max_iters": 4, "tolerance": "1e-58", "method": "chebyshev" }
//! ```
//!
//! Exactly one of `expr` and `coefficients` (`{"a0": str, "a": [str], "b": [str]}`;
//! only `a` for algebraic) must be present. `mults` may be omitted when
//! `expr` is given. Every number except the integer fields is a decimal
//! string, so values are rounded once, at the problem's precision.

use serde_json::{Map, Value};
use thiserror::Error;

use super::expr::{parse_ast, ExprError};
use crate::numeric::{NumericError, PrecisionConfig, Scalar};
use crate::polys::{
    AlgebraicCoeffPoly, ExpCoeffPoly, FactoredPoly, Family, PolyError, Polynomial, TrigCoeffPoly,
};
use crate::solver::{EstimateVector, Method, MultiplicityProfile, SolveConfig, SolverError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {source}")]
    Expression {
        path: String,
        #[source]
        source: ExprError,
    },
    #[error("{path}: {source}")]
    Polynomial {
        path: String,
        #[source]
        source: PolyError,
    },
    #[error("$.mults: {0}")]
    Multiplicity(SolverError),
    #[error("$.init: estimates x{i} and x{j} coincide")]
    Collision { i: usize, j: usize },
    #[error("$.digits: {0}")]
    Precision(NumericError),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// How the polynomial was given.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemForm<T> {
    Factored { expr: String, poly: FactoredPoly<T> },
    Coefficients(Polynomial<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec<T> {
    pub family: Family,
    pub form: ProblemForm<T>,
    pub profile: MultiplicityProfile,
    pub init: EstimateVector<T>,
    pub precision: PrecisionConfig,
    /// Solver settings with file values applied over the defaults.
    pub config: SolveConfig<T>,
    /// Which optional settings the file itself set.
    pub digits_set: bool,
    pub max_iters_set: bool,
}

impl<T: Scalar> ProblemSpec<T> {
    pub fn polynomial(&self) -> Polynomial<T> {
        match &self.form {
            ProblemForm::Factored { poly, .. } => Polynomial::Factored(poly.clone()),
            ProblemForm::Coefficients(p) => p.clone(),
        }
    }

    /// Roots of a factored problem, in factor order.
    pub fn known_roots(&self) -> Option<&[T]> {
        match &self.form {
            ProblemForm::Factored { poly, .. } => Some(poly.roots()),
            ProblemForm::Coefficients(_) => None,
        }
    }
}

const KEYS: &[&str] = &[
    "family",
    "expr",
    "coefficients",
    "mults",
    "init",
    "digits",
    "max_iters",
    "tolerance",
    "method",
];

fn string_at<'a>(v: &'a Value, path: &str) -> Result<&'a str, ProblemError> {
    match v {
        Value::String(s) => Ok(s),
        Value::Number(_) => Err(schema(path, "expected a decimal string (write numbers in quotes to avoid binary rounding)")),
        _ => Err(schema(path, "expected a string")),
    }
}

fn decimal_at<T: Scalar>(v: &Value, path: &str, cfg: &PrecisionConfig) -> Result<T, ProblemError> {
    let s = string_at(v, path)?;
    T::parse_decimal(s, cfg).map_err(|e| schema(path, e.to_string()))
}

fn decimals_at<T: Scalar>(v: &Value, path: &str, cfg: &PrecisionConfig) -> Result<Vec<T>, ProblemError> {
    let items = v.as_array().ok_or_else(|| schema(path, "expected an array of decimal strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| decimal_at(item, &format!("{path}[{i}]"), cfg))
        .collect()
}

fn uint_at(v: &Value, path: &str) -> Result<u64, ProblemError> {
    v.as_u64().ok_or_else(|| schema(path, "expected a non-negative integer"))
}

/// Reads a problem file. Precision comes from `digits_flag` if given, else
/// the file's `digits`, else `fallback_digits`.
pub fn parse_problem<T: Scalar>(
    bytes: &[u8],
    digits_flag: Option<u32>,
    fallback_digits: u32,
) -> Result<ProblemSpec<T>, ProblemError> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| ProblemError::Json(e.to_string()))?;
    let obj: &Map<String, Value> = root.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(schema(format!("$.{k}"), "unknown field"));
    }

    let family: Family = string_at(obj.get("family").ok_or_else(|| schema("$.family", "missing"))?, "$.family")?
        .parse()
        .map_err(|e: PolyError| schema("$.family", e.to_string()))?;

    let file_digits = match obj.get("digits") {
        Some(v) => Some(u32::try_from(uint_at(v, "$.digits")?).map_err(|_| schema("$.digits", "too large"))?),
        None => None,
    };
    let digits = digits_flag.or(file_digits).unwrap_or(fallback_digits);
    let cfg = PrecisionConfig::with_digits(digits).map_err(ProblemError::Precision)?;

    let form = match (obj.get("expr"), obj.get("coefficients")) {
        (Some(_), Some(_)) => return Err(schema("$", "give either expr or coefficients, not both")),
        (None, None) => return Err(schema("$", "missing expr or coefficients")),
        (Some(e), None) => {
            let text = string_at(e, "$.expr")?;
            let expression = |source| ProblemError::Expression {
                path: "$.expr".to_string(),
                source,
            };
            let ast = parse_ast(text).map_err(expression)?;
            if ast.family() != family {
                return Err(schema(
                    "$.expr",
                    format!("expression is {} but family is {}", ast.family(), family),
                ));
            }
            let poly = ast.to_factored(&cfg).map_err(expression)?;
            ProblemForm::Factored {
                expr: text.to_string(),
                poly,
            }
        }
        (None, Some(c)) => ProblemForm::Coefficients(coefficients(family, c, &cfg)?),
    };

    let degree = match &form {
        ProblemForm::Factored { poly, .. } => poly.degree(),
        ProblemForm::Coefficients(p) => p.degree(),
    };
    let mults: Vec<u32> = match (obj.get("mults"), &form) {
        (Some(v), _) => {
            let items = v.as_array().ok_or_else(|| schema("$.mults", "expected an array of integers"))?;
            items
                .iter()
                .enumerate()
                .map(|(i, item)| {
                    let path = format!("$.mults[{i}]");
                    let m = uint_at(item, &path)?;
                    u32::try_from(m).ok().filter(|&m| m >= 1).ok_or_else(|| schema(path, "expected a positive integer"))
                })
                .collect::<Result<_, _>>()?
        }
        (None, ProblemForm::Factored { poly, .. }) => poly.mults().to_vec(),
        (None, ProblemForm::Coefficients(_)) => return Err(schema("$.mults", "missing (required with coefficients)")),
    };
    let profile = MultiplicityProfile::for_degree(family, mults, degree).map_err(ProblemError::Multiplicity)?;

    let init: Vec<T> = decimals_at(obj.get("init").ok_or_else(|| schema("$.init", "missing"))?, "$.init", &cfg)?;
    if init.len() != profile.len() {
        return Err(schema(
            "$.init",
            format!("{} estimates for {} multiplicities", init.len(), profile.len()),
        ));
    }
    let init = EstimateVector::initial(init);
    if let Some((i, j)) = init.collision() {
        return Err(ProblemError::Collision { i, j });
    }

    let sample = T::parse_decimal("1", &cfg).map_err(ProblemError::Precision)?;
    let mut config = SolveConfig::default_for(&sample);
    let max_iters_set = obj.contains_key("max_iters");
    if let Some(v) = obj.get("max_iters") {
        let n = uint_at(v, "$.max_iters")?;
        if n == 0 {
            return Err(schema("$.max_iters", "must be at least 1"));
        }
        config.max_iters = n as usize;
    }
    if let Some(v) = obj.get("tolerance") {
        let t: T = decimal_at(v, "$.tolerance", &cfg)?;
        if t <= T::zero() {
            return Err(schema("$.tolerance", "must be positive"));
        }
        config.step_tolerance = t;
    }
    if let Some(v) = obj.get("method") {
        config.method = string_at(v, "$.method")?
            .parse::<Method>()
            .map_err(|e| schema("$.method", e))?;
    }

    Ok(ProblemSpec {
        family,
        form,
        profile,
        init,
        precision: cfg,
        config,
        digits_set: file_digits.is_some(),
        max_iters_set,
    })
}

fn coefficients<T: Scalar>(family: Family, v: &Value, cfg: &PrecisionConfig) -> Result<Polynomial<T>, ProblemError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$.coefficients", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !["a0", "a", "b"].contains(&k.as_str())) {
        return Err(schema(format!("$.coefficients.{k}"), "unknown field"));
    }
    let poly_err = |source| ProblemError::Polynomial {
        path: "$.coefficients".to_string(),
        source,
    };
    let a: Vec<T> = decimals_at(
        obj.get("a").ok_or_else(|| schema("$.coefficients.a", "missing"))?,
        "$.coefficients.a",
        cfg,
    )?;
    if family == Family::Algebraic {
        for k in ["a0", "b"] {
            if obj.contains_key(k) {
                return Err(schema(
                    format!("$.coefficients.{k}"),
                    "algebraic polynomials are monic; give only a = [a1, ..., an]",
                ));
            }
        }
        return Ok(Polynomial::Algebraic(AlgebraicCoeffPoly::new(a).map_err(poly_err)?));
    }
    let a0: T = decimal_at(
        obj.get("a0").ok_or_else(|| schema("$.coefficients.a0", "missing"))?,
        "$.coefficients.a0",
        cfg,
    )?;
    let b: Vec<T> = decimals_at(
        obj.get("b").ok_or_else(|| schema("$.coefficients.b", "missing"))?,
        "$.coefficients.b",
        cfg,
    )?;
    Ok(match family {
        Family::Trigonometric => Polynomial::Trigonometric(TrigCoeffPoly::new(a0, a, b).map_err(poly_err)?),
        _ => Polynomial::Exponential(ExpCoeffPoly::new(a0, a, b).map_err(poly_err)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_expression;
    use crate::numeric::Real;

    const EXAMPLE1: &str = r#"{"family": "algebraic", "expr": "(x+2)^2*(x-1)*(x-3)^3",
        "mults": [2, 1, 3], "init": ["-3", "0.1", "4"]}"#;

    fn parse(text: &str) -> Result<ProblemSpec<Real>, ProblemError> {
        parse_problem(text.as_bytes(), None, 64)
    }

    #[test]
    fn example1_file() {
        let spec = parse(EXAMPLE1).unwrap();
        let cfg = PrecisionConfig::default();
        let direct: FactoredPoly<Real> = parse_expression("(x+2)^2*(x-1)*(x-3)^3", &cfg).unwrap();
        assert_eq!(spec.polynomial(), Polynomial::Factored(direct));
        assert_eq!(spec.init.x, vec![Real::from_i64(-3), Real::parse("0.1", cfg).unwrap(), Real::from_i64(4)]);
        assert_eq!(spec.precision, cfg);
        assert_eq!(spec.config.max_iters, 50);
        assert!(!spec.digits_set);
    }

    #[test]
    fn digits_precedence() {
        let with_digits = EXAMPLE1.replace("\"init\"", "\"digits\": 40, \"init\"");
        assert_eq!(parse(&with_digits).unwrap().precision.digits, 40);
        let spec: ProblemSpec<Real> = parse_problem(with_digits.as_bytes(), Some(80), 64).unwrap();
        assert_eq!(spec.precision.digits, 80);
        let spec: ProblemSpec<Real> = parse_problem(EXAMPLE1.as_bytes(), None, 50).unwrap();
        assert_eq!(spec.precision.digits, 50);
        assert!(matches!(
            parse_problem::<Real>(EXAMPLE1.as_bytes(), Some(10), 64),
            Err(ProblemError::Precision(_))
        ));
    }

    #[test]
    fn multiplicity_sum_is_checked() {
        let bad = EXAMPLE1.replace("[2, 1, 3]", "[2, 1, 2]");
        let err = parse(&bad).unwrap_err();
        assert!(matches!(err, ProblemError::Multiplicity(SolverError::MultiplicitySum { total: 5, needed: 6, .. })));
        assert!(err.to_string().starts_with("$.mults"));
    }

    #[test]
    fn duplicate_estimates_collide() {
        let bad = EXAMPLE1.replace(r#"["-3", "0.1", "4"]"#, r#"["-3", "4.0", "4"]"#);
        assert_eq!(parse(&bad).unwrap_err(), ProblemError::Collision { i: 2, j: 3 });
    }

    #[test]
    fn json_paths_in_diagnostics() {
        let bad = EXAMPLE1.replace(r#""0.1""#, "0.1");
        assert!(parse(&bad).unwrap_err().to_string().starts_with("$.init[1]:"));
        let bad = EXAMPLE1.replace(r#""0.1""#, r#""0.1x""#);
        assert!(parse(&bad).unwrap_err().to_string().starts_with("$.init[1]:"));
        let bad = EXAMPLE1.replace("\"mults\"", "\"multz\"");
        assert!(parse(&bad).unwrap_err().to_string().starts_with("$.multz:"));
        let bad = EXAMPLE1.replace("algebraic", "trigonometric");
        assert!(parse(&bad).unwrap_err().to_string().starts_with("$.expr:"));
        let bad = EXAMPLE1.replace("(x-1)", "(x-1");
        assert!(parse(&bad).unwrap_err().to_string().starts_with("$.expr: syntax error at position 12"));
        assert!(matches!(parse("[1]"), Err(ProblemError::Schema { .. })));
        assert!(matches!(parse("{"), Err(ProblemError::Json(_))));
    }

    #[test]
    fn coefficient_form() {
        let text = r#"{"family": "algebraic", "coefficients": {"a": ["-3", "2"]},
            "mults": [1, 1], "init": ["0.5", "3"], "max_iters": 7, "method": "newton_baseline", "tolerance": "1e-30"}"#;
        let spec = parse(text).unwrap();
        assert!(matches!(spec.polynomial(), Polynomial::Algebraic(_)));
        assert_eq!(spec.config.max_iters, 7);
        assert_eq!(spec.config.method, Method::NewtonBaseline);
        assert!(spec.known_roots().is_none());

        let text = r#"{"family": "trigonometric", "coefficients": {"a0": "1", "a": ["0.5"], "b": ["0"]},
            "mults": [1, 1], "init": ["1", "3"]}"#;
        assert!(matches!(parse(text).unwrap().polynomial(), Polynomial::Trigonometric(_)));
        let no_mults = r#"{"family": "algebraic", "coefficients": {"a": ["1"]}, "init": ["1"]}"#;
        assert!(parse(no_mults).unwrap_err().to_string().starts_with("$.mults"));
    }
}
