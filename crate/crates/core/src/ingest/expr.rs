//! Factored-form expressions such as `(x+2)^2*(x-1)*(x-3)^3`,
//! `sin((x-1)/2)^3*sin((x-2)/2)` or `sinh((x+2)/2)^2*sinh((x-3)/2)^2`.
//!
//! ```text
//! PRODUCT := FACTOR ('*' FACTOR)*
//! FACTOR  := BASE ('^' INT)?
//! BASE    := '(' 'x' SIGN NUM ')'
//!          | 'sin' '(' '(' 'x' SIGN NUM ')' '/' '2' ')'
//!          | 'sinh' '(' '(' 'x' SIGN NUM ')' '/' '2' ')'
//! ```
//!
//! Whitespace between tokens is ignored. Positions are 0-based character
//! offsets into the input.

use thiserror::Error;

use crate::numeric::{PrecisionConfig, Scalar};
use crate::polys::{FactoredPoly, Family, PolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: expected {expected}, found {}", found.map(|c| format!("{c:?}")).unwrap_or_else(|| "end of input".to_string()))]
    Syntax {
        position: usize,
        expected: &'static str,
        found: Option<char>,
    },
    #[error("bad number {text:?} at position {position}")]
    Number { position: usize, text: String },
    #[error("power at position {position} must be a positive integer")]
    Power { position: usize },
    #[error("factor at position {position} is {found}, but the expression started as {first}")]
    MixedFamily {
        position: usize,
        first: Family,
        found: Family,
    },
    #[error("root {root} at position {position} already appears in an earlier factor")]
    DuplicateRoot { position: usize, root: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One parsed factor `g(x - root)^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub kind: Family,
    /// The root as a decimal numeral (the negated shift of `x + shift`).
    pub root: String,
    pub power: u32,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpressionAst {
    pub factors: Vec<Factor>,
}

impl ExpressionAst {
    pub fn family(&self) -> Family {
        self.factors[0].kind
    }

    /// Builds the factored polynomial, parsing roots at `cfg`.
    pub fn to_factored<T: Scalar>(&self, cfg: &PrecisionConfig) -> Result<FactoredPoly<T>, ExprError> {
        let mut roots: Vec<T> = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let root = T::parse_decimal(&f.root, cfg).map_err(|_| ExprError::Number {
                position: f.position,
                text: f.root.clone(),
            })?;
            if roots.contains(&root) {
                return Err(ExprError::DuplicateRoot {
                    position: f.position,
                    root: f.root.clone(),
                });
            }
            roots.push(root);
        }
        let mults = self.factors.iter().map(|f| f.power).collect();
        Ok(FactoredPoly::new(self.family(), roots, mults)?)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&mut self, expected: &'static str) -> ExprError {
        let found = self.peek();
        ExprError::Syntax {
            position: self.pos,
            expected,
            found,
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    /// A contiguous unsigned numeral; validated later by the scalar parser.
    fn numeral(&mut self) -> Result<(usize, String), ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            let sign_after_e = (c == '+' || c == '-') && matches!(s.chars().last(), Some('e' | 'E'));
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || sign_after_e {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() || !s.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
            self.pos = start;
            return Err(self.error("a number"));
        }
        Ok((start, s))
    }

    /// `x SIGN NUM`, returning the root numeral.
    fn shifted_x(&mut self) -> Result<String, ExprError> {
        self.expect('x', "'x'")?;
        let negate = match self.peek() {
            Some('+') => true,
            Some('-') => false,
            _ => return Err(self.error("'+' or '-'")),
        };
        self.pos += 1;
        let (position, num) = self.numeral()?;
        crate::numeric::make_real(&num, &PrecisionConfig::default()).map_err(|_| ExprError::Number {
            position,
            text: num.clone(),
        })?;
        Ok(if negate { format!("-{num}") } else { num })
    }

    fn factor(&mut self) -> Result<Factor, ExprError> {
        self.skip_ws();
        let position = self.pos;
        let (kind, root) = if self.peek() == Some('(') {
            self.pos += 1;
            let root = self.shifted_x()?;
            self.expect(')', "')'")?;
            (Family::Algebraic, root)
        } else {
            let kind = if self.keyword("sinh") {
                Family::Exponential
            } else if self.keyword("sin") {
                Family::Trigonometric
            } else {
                return Err(self.error("'(', 'sin' or 'sinh'"));
            };
            self.expect('(', "'('")?;
            self.expect('(', "'('")?;
            let root = self.shifted_x()?;
            self.expect(')', "')'")?;
            self.expect('/', "'/'")?;
            self.expect('2', "'2'")?;
            self.expect(')', "')'")?;
            (kind, root)
        };
        let mut power = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let mut digits = String::new();
            while let Some(c) = self.chars.get(self.pos).filter(|c| c.is_ascii_digit()) {
                digits.push(*c);
                self.pos += 1;
            }
            if digits.is_empty() {
                return Err(self.error("an integer power"));
            }
            power = digits
                .parse::<u32>()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or(ExprError::Power { position: start })?;
        }
        Ok(Factor {
            kind,
            root: normalize_root(&root),
            power,
            position,
        })
    }
}

/// `-0` and `+0` style roots print as `0`.
fn normalize_root(root: &str) -> String {
    let body = root.trim_start_matches('-');
    if body.chars().all(|c| !c.is_ascii_digit() || c == '0') {
        body.to_string()
    } else {
        root.to_string()
    }
}

pub fn parse_ast(text: &str) -> Result<ExpressionAst, ExprError> {
    let mut cur = Cursor::new(text);
    let mut factors = vec![cur.factor()?];
    loop {
        match cur.peek() {
            None => break,
            Some('*') => {
                cur.pos += 1;
                let f = cur.factor()?;
                if f.kind != factors[0].kind {
                    return Err(ExprError::MixedFamily {
                        position: f.position,
                        first: factors[0].kind,
                        found: f.kind,
                    });
                }
                factors.push(f);
            }
            Some(_) => return Err(cur.error("'*', '^' or end of input")),
        }
    }
    Ok(ExpressionAst { factors })
}

/// Parses a factored expression and builds the polynomial at `cfg`.
pub fn parse_expression<T: Scalar>(text: &str, cfg: &PrecisionConfig) -> Result<FactoredPoly<T>, ExprError> {
    parse_ast(text)?.to_factored(cfg)
}

/// Canonical text for a factored polynomial; parses back to the same
/// family, roots and multiplicities.
pub fn format_expression<T: Scalar>(f: &FactoredPoly<T>) -> String {
    f.roots()
        .iter()
        .zip(f.mults())
        .map(|(r, &m)| {
            let shift = if r.is_negative() {
                format!("x+{}", shortest(&-r.clone()))
            } else {
                format!("x-{}", shortest(r))
            };
            let base = match f.family() {
                Family::Algebraic => format!("({shift})"),
                Family::Trigonometric => format!("sin(({shift})/2)"),
                Family::Exponential => format!("sinh(({shift})/2)"),
            };
            if m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// The display form when it reads back to the same value, else the
/// lossless form.
fn shortest<T: Scalar>(v: &T) -> String {
    let s = v.to_string();
    match T::parse_decimal(&s, &v.precision()) {
        Ok(back) if back == *v => s,
        _ => v.to_lossless_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Real;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn roots(f: &FactoredPoly<Real>) -> Vec<String> {
        f.roots().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn fixture_expressions() {
        let f: FactoredPoly<Real> = parse_expression("(x+2)^2*(x-1)*(x-3)^3", &cfg()).unwrap();
        assert_eq!(f.family(), Family::Algebraic);
        assert_eq!(roots(&f), ["-2", "1", "3"]);
        assert_eq!(f.mults(), [2, 1, 3]);

        let f: FactoredPoly<Real> = parse_expression("sin((x-1)/2)^3*sin((x-2)/2)^2*sin((x-2.5)/2)", &cfg()).unwrap();
        assert_eq!(f.family(), Family::Trigonometric);
        assert_eq!(roots(&f), ["1", "2", "2.5"]);
        assert_eq!(f.mults(), [3, 2, 1]);

        let f: FactoredPoly<Real> = parse_expression("sinh((x+2)/2)^2*sinh((x-3)/2)^2", &cfg()).unwrap();
        assert_eq!(f.family(), Family::Exponential);
        assert_eq!(roots(&f), ["-2", "3"]);
        assert_eq!(f.mults(), [2, 2]);

        let f: FactoredPoly<Real> = parse_expression("(x-1)", &cfg()).unwrap();
        assert_eq!((roots(&f), f.mults().to_vec()), (vec!["1".to_string()], vec![1]));
    }

    #[test]
    fn whitespace_is_ignored() {
        let f: FactoredPoly<Real> = parse_expression(" sin ( ( x - 1 ) / 2 ) ^ 2 * sin((x+0.5)/2)^2 ", &cfg()).unwrap();
        assert_eq!(roots(&f), ["1", "-0.5"]);
    }

    #[test]
    fn canonical_print_round_trips() {
        for text in [
            "(x+2)^2*(x-1)*(x-3)^3",
            "sin((x-1)/2)^3*sin((x-2)/2)^2*sin((x-2.5)/2)",
            "sinh((x+2)/2)^2*sinh((x-3)/2)^2",
        ] {
            let f: FactoredPoly<Real> = parse_expression(text, &cfg()).unwrap();
            assert_eq!(format_expression(&f), text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_ast("(x-1)*(y-2)"),
            Err(ExprError::Syntax {
                position: 7,
                expected: "'x'",
                found: Some('y')
            })
        );
        assert!(matches!(parse_ast("(x-1"), Err(ExprError::Syntax { position: 4, found: None, .. })));
        assert!(matches!(parse_ast("(x-1)^0"), Err(ExprError::Power { position: 6 })));
        assert!(matches!(parse_ast("(x-1.2.3)"), Err(ExprError::Number { position: 3, .. })));
        assert!(matches!(parse_ast("(x-1)(x-2)"), Err(ExprError::Syntax { position: 5, .. })));
        assert!(matches!(
            parse_ast("(x-1)*sin((x-2)/2)"),
            Err(ExprError::MixedFamily { position: 6, .. })
        ));
        assert!(matches!(
            parse_expression::<Real>("(x-1)*(x-1)", &cfg()),
            Err(ExprError::DuplicateRoot { position: 6, .. })
        ));
        assert!(matches!(
            parse_expression::<Real>("(x-1)*(x-1.0)", &cfg()),
            Err(ExprError::DuplicateRoot { .. })
        ));
        assert!(matches!(
            parse_expression::<Real>("sin((x-1)/2)", &cfg()),
            Err(ExprError::Poly(PolyError::OddTotal { .. }))
        ));
    }
}
