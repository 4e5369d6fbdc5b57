//! The algebra-expression language.
//!
//! ```text
//! expr     := tensor ('*' tensor)*
//! tensor   := term ('(x)' term)*
//! term     := 'GF(' int ')' '[' ident ']' '/' '(' poly ')' | 'Fn(' int ',' int ')' | '(' expr ')'
//! poly     := monomial ('+' monomial)*
//! monomial := coeff? ident ('^' int)? | coeff
//! ```
//!
//! Both operators are left-associative; `(x)` binds tighter than `*`.
//! Whitespace may separate tokens but not split them.

use std::collections::HashMap;
use std::fmt;

use stone_core::fpalgebra::{
    function_algebra_n, product, tensor, univariate_quotient, FiniteAlgebra, Poly, PrimeField,
    Scalar,
};
use stone_core::Limits;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraExpr {
    /// `F_p[var]/(f)`, coefficients ascending and reduced mod `p`.
    UnivariateQuotient {
        p: u32,
        var: String,
        coeffs: Vec<u32>,
    },
    FunctionAlg {
        p: u32,
        size: usize,
    },
    Product(Box<AlgebraExpr>, Box<AlgebraExpr>),
    Tensor(Box<AlgebraExpr>, Box<AlgebraExpr>),
}

impl AlgebraExpr {
    pub fn prime(&self) -> u32 {
        match self {
            AlgebraExpr::UnivariateQuotient { p, .. } | AlgebraExpr::FunctionAlg { p, .. } => *p,
            AlgebraExpr::Product(l, _) | AlgebraExpr::Tensor(l, _) => l.prime(),
        }
    }
}

/// Ascending coefficients printed as `c x^k` terms from the top degree down.
pub fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && k > 0 {
            String::new()
        } else {
            c.to_string()
        };
        parts.push(match k {
            0 => coeff,
            1 => format!("{coeff}{var}"),
            _ => format!("{coeff}{var}^{k}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(e: &AlgebraExpr, paren: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            AlgebraExpr::UnivariateQuotient { p, var, coeffs } => {
                write!(f, "GF({p})[{var}]/({})", format_poly(coeffs, var))
            }
            AlgebraExpr::FunctionAlg { p, size } => write!(f, "Fn({p},{size})"),
            AlgebraExpr::Product(l, r) => {
                wrap(l, false, f)?;
                f.write_str(" * ")?;
                wrap(r, matches!(**r, AlgebraExpr::Product(..)), f)
            }
            AlgebraExpr::Tensor(l, r) => {
                wrap(l, matches!(**l, AlgebraExpr::Product(..)), f)?;
                f.write_str(" (x) ")?;
                wrap(
                    r,
                    !matches!(
                        **r,
                        AlgebraExpr::UnivariateQuotient { .. } | AlgebraExpr::FunctionAlg { .. }
                    ),
                    f,
                )
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_token(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(tok.as_bytes())
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek_token(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> CliError {
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("{:?}", rest.chars().next().unwrap_or(' '))
            }
        };
        CliError::Syntax {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), CliError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[tok]))
        }
    }

    fn int(&mut self) -> Result<u64, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| CliError::Syntax {
                offset: start,
                expected: vec!["integer below 2^64".into()],
                found: "overflow".into(),
            })
    }

    fn ident(&mut self) -> Result<String, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphabetic()
                || (self.pos > start && self.src[self.pos].is_ascii_digit()))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["identifier"]));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn prime(&mut self) -> Result<u32, CliError> {
        let start = self.pos;
        let p = self.int()?;
        let p = u32::try_from(p).map_err(|_| CliError::Syntax {
            offset: start,
            expected: vec!["prime".into()],
            found: p.to_string(),
        })?;
        PrimeField::new(p)?;
        Ok(p)
    }

    fn expr(&mut self) -> Result<AlgebraExpr, CliError> {
        let mut lhs = self.tensor()?;
        loop {
            let at = self.pos;
            if !self.eat("*") {
                return Ok(lhs);
            }
            let rhs = self.tensor()?;
            check_same_prime(&lhs, &rhs, at)?;
            lhs = AlgebraExpr::Product(Box::new(lhs), Box::new(rhs));
        }
    }

    fn tensor(&mut self) -> Result<AlgebraExpr, CliError> {
        let mut lhs = self.term()?;
        loop {
            let at = self.pos;
            if !self.eat("(x)") {
                return Ok(lhs);
            }
            let rhs = self.term()?;
            check_same_prime(&lhs, &rhs, at)?;
            lhs = AlgebraExpr::Tensor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<AlgebraExpr, CliError> {
        if self.eat("GF(") {
            let p = self.prime()?;
            self.expect(")")?;
            self.expect("[")?;
            let var = self.ident()?;
            self.expect("]")?;
            self.expect("/")?;
            self.expect("(")?;
            let coeffs = self.poly(p, &var)?;
            self.expect(")")?;
            Ok(AlgebraExpr::UnivariateQuotient { p, var, coeffs })
        } else if self.eat("Fn(") {
            let p = self.prime()?;
            self.expect(",")?;
            let start = self.pos;
            let size = self.int()?;
            let size = usize::try_from(size).map_err(|_| CliError::Syntax {
                offset: start,
                expected: vec!["set size".into()],
                found: size.to_string(),
            })?;
            self.expect(")")?;
            Ok(AlgebraExpr::FunctionAlg { p, size })
        } else if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            Ok(e)
        } else {
            Err(self.error(&["GF(", "Fn(", "("]))
        }
    }

    fn poly(&mut self, p: u32, var: &str) -> Result<Vec<u32>, CliError> {
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (c, k) = self.monomial(var)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = (coeffs[k] + c % p as u64) % p as u64;
            if !self.eat("+") {
                break;
            }
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(coeffs.into_iter().map(|c| c as u32).collect())
    }

    fn monomial(&mut self, var: &str) -> Result<(u64, usize), CliError> {
        self.skip_ws();
        let has_coeff = self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit());
        let c = if has_coeff { self.int()? } else { 1 };
        self.skip_ws();
        if !self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphabetic())
        {
            return if has_coeff {
                Ok((c, 0))
            } else {
                Err(self.error(&["coefficient", var]))
            };
        }
        let start = self.pos;
        let name = self.ident()?;
        if name != var {
            return Err(CliError::Syntax {
                offset: start,
                expected: vec![var.to_string()],
                found: format!("{name:?}"),
            });
        }
        let k = if self.eat("^") {
            let at = self.pos;
            let k = self.int()?;
            usize::try_from(k)
                .ok()
                .filter(|&k| k <= 4096)
                .ok_or(CliError::Syntax {
                    offset: at,
                    expected: vec!["exponent at most 4096".into()],
                    found: k.to_string(),
                })?
        } else {
            1
        };
        Ok((c, k))
    }
}

fn check_same_prime(lhs: &AlgebraExpr, rhs: &AlgebraExpr, offset: usize) -> Result<(), CliError> {
    let (l, r) = (lhs.prime(), rhs.prime());
    if l != r {
        return Err(CliError::MixedCharacteristic {
            left: l,
            right: r,
            offset,
        });
    }
    Ok(())
}

pub fn parse_algebra_expr(text: &str) -> Result<AlgebraExpr, CliError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error(&["*", "(x)", "end of input"]));
    }
    Ok(e)
}

/// A polynomial in any single variable, as accepted inside `GF(p)[x]/(...)`.
pub fn parse_poly(p: u32, text: &str) -> Result<Poly, CliError> {
    let field = PrimeField::new(p)?;
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let start = parser.pos;
    while parser.pos < parser.src.len() && !parser.src[parser.pos].is_ascii_alphabetic() {
        parser.pos += 1;
    }
    let var = if parser.pos < parser.src.len() {
        parser.ident()?
    } else {
        "x".to_string()
    };
    parser.pos = start;
    let coeffs = parser.poly(p, &var)?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error(&["+", "end of input"]));
    }
    Ok(Poly::new(
        field,
        coeffs.into_iter().map(|c| c as Scalar).collect(),
    ))
}

/// Structural evaluation with results cached by operand content hashes.
pub struct Evaluator {
    limits: Limits,
    cache: HashMap<String, FiniteAlgebra>,
}

impl Evaluator {
    pub fn new(limits: Limits) -> Self {
        Evaluator {
            limits,
            cache: HashMap::new(),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    pub fn eval(&mut self, e: &AlgebraExpr) -> Result<FiniteAlgebra, CliError> {
        let key = match e {
            AlgebraExpr::UnivariateQuotient { .. } | AlgebraExpr::FunctionAlg { .. } => {
                format!("leaf:{e}")
            }
            AlgebraExpr::Product(l, r) | AlgebraExpr::Tensor(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                let op = if matches!(e, AlgebraExpr::Product(..)) {
                    "product"
                } else {
                    "tensor"
                };
                format!("{op}:{}:{}", a.content_hash(), b.content_hash())
            }
        };
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let value = match e {
            AlgebraExpr::UnivariateQuotient { p, var, coeffs } => {
                let field = PrimeField::new(*p)?;
                let f = Poly::new(field, coeffs.iter().map(|&c| c as Scalar).collect());
                univariate_quotient(&f, var)?
            }
            AlgebraExpr::FunctionAlg { p, size } => {
                if *size > self.limits.max_dim {
                    return Err(stone_core::Error::DimCapExceeded {
                        dim: *size,
                        cap: self.limits.max_dim,
                    }
                    .into());
                }
                function_algebra_n(PrimeField::new(*p)?, *size)
            }
            AlgebraExpr::Product(l, r) => {
                product(&self.eval(l)?, &self.eval(r)?, &self.limits)?.algebra
            }
            AlgebraExpr::Tensor(l, r) => {
                tensor(&self.eval(l)?, &self.eval(r)?, &self.limits)?.algebra
            }
        };
        self.cache.insert(key, value.clone());
        Ok(value)
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, limits: &Limits) -> Result<FiniteAlgebra, CliError> {
    Evaluator::new(*limits).eval(&parse_algebra_expr(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stone_core::pearl::pearl;

    fn leaf(p: u32, coeffs: &[u32]) -> AlgebraExpr {
        AlgebraExpr::UnivariateQuotient {
            p,
            var: "x".into(),
            coeffs: coeffs.to_vec(),
        }
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_algebra_expr("GF(2)[x]/(x^2+x+1)").unwrap(),
            leaf(2, &[1, 1, 1])
        );
        let t = parse_algebra_expr("GF(2)[x]/(x^2+x+1) (x) GF(2)[x]/(x^2+x+1)").unwrap();
        assert_eq!(
            t,
            AlgebraExpr::Tensor(Box::new(leaf(2, &[1, 1, 1])), Box::new(leaf(2, &[1, 1, 1])))
        );
        assert_eq!(
            parse_algebra_expr("Fn(3,2) * GF(2)[x]/(x)").unwrap_err(),
            CliError::MixedCharacteristic {
                left: 3,
                right: 2,
                offset: 8
            }
        );
    }

    #[test]
    fn tensor_binds_tighter_and_both_associate_left() {
        let e = parse_algebra_expr("Fn(2,1) * Fn(2,2) (x) Fn(2,3) * Fn(2,4)").unwrap();
        let f = |n| Box::new(AlgebraExpr::FunctionAlg { p: 2, size: n });
        let expected = AlgebraExpr::Product(
            Box::new(AlgebraExpr::Product(
                f(1),
                Box::new(AlgebraExpr::Tensor(f(2), f(3))),
            )),
            f(4),
        );
        assert_eq!(e, expected);
        let right = parse_algebra_expr("Fn(2,1) (x) (Fn(2,2) (x) Fn(2,3))").unwrap();
        assert_eq!(
            right,
            AlgebraExpr::Tensor(f(1), Box::new(AlgebraExpr::Tensor(f(2), f(3))))
        );
    }

    #[test]
    fn monomials_and_coefficients() {
        assert_eq!(
            parse_algebra_expr("GF(3)[y]/(y^3 + 2y + 4)").unwrap(),
            AlgebraExpr::UnivariateQuotient {
                p: 3,
                var: "y".into(),
                coeffs: vec![1, 2, 0, 1],
            }
        );
        assert_eq!(
            parse_algebra_expr("GF(2)[x]/(x+x+1)").unwrap(),
            leaf(2, &[1])
        );
    }

    #[test]
    fn syntax_errors_carry_offset_and_expectations() {
        match parse_algebra_expr("GF(2)[x]/(x^2+)").unwrap_err() {
            CliError::Syntax {
                offset, expected, ..
            } => {
                assert_eq!(offset, 14);
                assert!(expected.contains(&"coefficient".to_string()));
            }
            e => panic!("unexpected {e:?}"),
        }
        match parse_algebra_expr("Fn(2,2) + Fn(2,1)").unwrap_err() {
            CliError::Syntax {
                offset, expected, ..
            } => {
                assert_eq!(offset, 8);
                assert_eq!(expected, vec!["*", "(x)", "end of input"]);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_algebra_expr("GF(2)[x]/(y+1)"),
            Err(CliError::Syntax { offset: 10, .. })
        ));
        assert!(matches!(
            parse_algebra_expr("GF(4)[x]/(x)"),
            Err(CliError::Core(stone_core::Error::NotPrime(4)))
        ));
        assert!(matches!(
            parse_algebra_expr(""),
            Err(CliError::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "GF(2)[x]/(x^2+x+1)",
            "Fn(3,2) * GF(3)[t]/(t^2) (x) Fn(3,1)",
            "(Fn(2,1) * Fn(2,2)) (x) Fn(2,3)",
            "Fn(2,1) * (Fn(2,2) * Fn(2,3))",
            "Fn(2,1) (x) (Fn(2,2) (x) Fn(2,3))",
            "GF(5)[x]/(3x^4+x+2)",
        ] {
            let e = parse_algebra_expr(text).unwrap();
            assert_eq!(
                parse_algebra_expr(&e.to_string()).unwrap(),
                e,
                "{text} printed as {e}"
            );
        }
    }

    #[test]
    fn evaluates_examples() {
        let l = Limits::default();
        let f4 = "GF(2)[x]/(x^2+x+1)";
        assert_eq!(eval_str(&format!("{f4} (x) {f4}"), &l).unwrap().dim(), 4);
        assert_eq!(
            eval_str("Fn(2,3)", &l).unwrap(),
            function_algebra_n(PrimeField::new(2).unwrap(), 3)
        );
        let a = eval_str("GF(2)[x]/(x^2) * GF(2)[y]/(y^2)", &l).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(pearl(&a).unwrap().dim(), 2);
        assert!(matches!(
            eval_str("GF(2)[x]/(0)", &l),
            Err(CliError::Core(stone_core::Error::ZeroDegree))
        ));
        assert!(matches!(
            eval_str("GF(3)[x]/(2x^2)", &l),
            Err(CliError::Core(stone_core::Error::NotMonic))
        ));
    }

    #[test]
    fn evaluator_reuses_equal_subresults() {
        let mut ev = Evaluator::new(Limits::default());
        ev.eval(&parse_algebra_expr("Fn(2,2) (x) Fn(2,2)").unwrap())
            .unwrap();
        let before = ev.cached();
        ev.eval(&parse_algebra_expr("(Fn(2,2) (x) Fn(2,2)) * Fn(2,1)").unwrap())
            .unwrap();
        assert_eq!(ev.cached(), before + 2);
    }

    #[test]
    fn parses_bare_polynomials() {
        let f = parse_poly(2, "x^4+x+1").unwrap();
        assert_eq!(f.coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(parse_poly(3, "t^2+2").unwrap().coeffs(), &[2, 0, 1]);
        assert!(parse_poly(3, "x^2+y").is_err());
    }
}
