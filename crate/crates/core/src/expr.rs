//! Arithmetic expressions for fixture files, evaluated in either scalar
//! field.
//!
//! Grammar: `+ - * /`, unary minus, `^` with a nonnegative integer exponent,
//! parentheses, decimal literals (exact in the rational field), variables,
//! and in the float field the functions `sqrt`, `sin`, `cos` and the
//! constant `pi`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Malformed(format!("unexpected character {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

/// `"1.0358"` → 10358/10000, exactly.
fn parse_decimal(s: &str) -> Result<ExactScalar> {
    let bad = || Error::Malformed(format!("bad number {s:?}"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = Pow::pow(BigInt::from(10), frac.len());
    Ok(ExactScalar::new(num, den))
}

struct Parser<'a, S> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a HashMap<String, S>,
    text: &'a str,
}

impl<S: Scalar> Parser<'_, S> {
    fn err(&self, msg: &str) -> Error {
        Error::Malformed(format!("{msg} in expression {:?}", self.text))
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{op}'")))
        }
    }

    fn expr(&mut self) -> Result<S> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<S> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc * rhs;
            } else {
                if rhs.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc / rhs;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<S> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<S> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.tokens.get(self.pos) {
            Some(Token::Num(n)) => {
                let e: u32 = n.parse().map_err(|_| self.err("exponent must be a nonnegative integer"))?;
                self.pos += 1;
                Ok(base.powu(e))
            }
            _ => Err(self.err("exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<S> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(S::from_exact(&parse_decimal(&n)?)),
            Token::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Token::Ident(name) if self.peek_op() == Some('(') => {
                self.pos += 1;
                let arg = self.expr()?;
                self.expect(')')?;
                self.call(&name, arg)
            }
            Token::Ident(name) => match self.vars.get(&name) {
                Some(v) => Ok(v.clone()),
                None if name == "pi" && S::FIELD == Field::Float => Ok(S::from_f64(std::f64::consts::PI)),
                None => Err(self.err(&format!("unknown variable {name:?}"))),
            },
            Token::Op(c) => Err(self.err(&format!("unexpected '{c}'"))),
        }
    }

    fn call(&self, name: &str, arg: S) -> Result<S> {
        if S::FIELD != Field::Float {
            return Err(self.err(&format!("function {name} needs the float field")));
        }
        let x = arg.to_f64();
        let y = match name {
            "sqrt" if x >= 0.0 => x.sqrt(),
            "sqrt" => return Err(self.err("square root of a negative number")),
            "sin" => x.sin(),
            "cos" => x.cos(),
            _ => return Err(self.err(&format!("unknown function {name:?}"))),
        };
        Ok(S::from_f64(y))
    }
}

/// Evaluates `text` with the given variable bindings.
pub fn eval<S: Scalar>(text: &str, vars: &HashMap<String, S>) -> Result<S> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0, vars, text };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    if S::FIELD == Field::Float && !v.to_f64().is_finite() {
        return Err(p.err("value is not finite"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none<S>() -> HashMap<String, S> {
        HashMap::new()
    }

    #[test]
    fn exact_arithmetic() {
        let v: ExactScalar = eval("3/5 - (1 + 2)^2 / 4 * -2", &none()).unwrap();
        assert_eq!(v, ExactScalar::from_ratio(3, 5) + ExactScalar::from_ratio(9, 2));
        let d: ExactScalar = eval("-1.0358", &none()).unwrap();
        assert_eq!(d, ExactScalar::from_ratio(-10358, 10000));
        assert!(eval::<ExactScalar>("sqrt(2)", &none()).is_err());
        assert!(eval::<ExactScalar>("1/(2-2)", &none()).is_err());
    }

    #[test]
    fn float_functions_and_variables() {
        let mut vars = HashMap::new();
        vars.insert("theta".to_string(), std::f64::consts::FRAC_PI_4);
        let v: f64 = eval("2 + 4*cos(theta)*sin(theta) + 2*sin(theta)^2", &vars).unwrap();
        assert!((v - 5.0).abs() < 1e-14);
        let r: f64 = eval("sqrt(313)", &none()).unwrap();
        assert!((r * r - 313.0).abs() < 1e-12);
        let p: f64 = eval("3*pi/4", &none()).unwrap();
        assert!((p - 2.356194490192345).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        for text in ["", "1 +", "(1", "1 2", "x", "2^-1", "2^0.5", "1.2.3", "sqrt(-1)", "foo(1)", "1 $ 2"] {
            assert!(eval::<f64>(text, &none()).is_err(), "{text}");
        }
    }
}
