//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INTEGER)?
//! primary := NUMBER | IDENT | '(' expr ')'
//! NUMBER  := INTEGER ('/' INTEGER)?
//! IDENT   := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Juxtaposition is not multiplication: `2x` is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::frame::VariableFrame;
use super::polynomial::{Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at position {pos} is not a nonnegative integer literal")]
    BadExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Integer(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        j
    };
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let end = digits(i);
                let num: BigInt = text[i..end].parse().expect("ascii digits");
                let j = skip_ws(end);
                if j < bytes.len() && bytes[j] == b'/' {
                    let k = skip_ws(j + 1);
                    let dend = digits(k);
                    if dend == k {
                        return Err(syntax(k, "expected an integer denominator after '/'"));
                    }
                    let den: BigInt = text[k..dend].parse().expect("ascii digits");
                    if den.is_zero() {
                        return Err(syntax(k, "zero denominator"));
                    }
                    out.push((Token::Number(Rational::new(num, den)), start));
                    i = dend;
                } else {
                    out.push((Token::Integer(num), start));
                    i = end;
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((Token::Ident(text[i..j].to_string()), start));
                i = j;
                continue;
            }
            b'/' => return Err(syntax(i, "'/' is only allowed inside a rational literal")),
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    frame: &'a Arc<VariableFrame>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let e = match self.tokens.get(self.pos) {
                Some((Token::Integer(n), _)) => {
                    n.to_u32().ok_or(ParseError::BadExponent { pos: at })?
                }
                _ => return Err(ParseError::BadExponent { pos: at }),
            };
            self.pos += 1;
            if let Some(Token::Caret) = self.peek() {
                return Err(syntax(self.offset(), "chained '^' needs parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        let tok = match self.tokens.get(self.pos) {
            Some((t, _)) => t.clone(),
            None => return Err(syntax(at, "unexpected end of input")),
        };
        self.pos += 1;
        match tok {
            Token::Integer(n) => Ok(Polynomial::constant(self.frame, Rational::from_integer(n))),
            Token::Number(q) => Ok(Polynomial::constant(self.frame, q)),
            Token::Ident(name) => match self.frame.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.frame, i)),
                None => Err(ParseError::UnknownVariable { name, pos: at }),
            },
            Token::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.offset(), "expected ')'")),
                }
            }
            other => Err(syntax(at, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` into a polynomial over `frame`.
pub fn parse_polynomial(text: &str, frame: &Arc<VariableFrame>) -> Result<Polynomial, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        frame,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(syntax(parser.offset(), "unexpected trailing input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::polynomial::rational;
    use crate::polyparse::Monomial;

    fn xy() -> Arc<VariableFrame> {
        VariableFrame::new(["x", "y"]).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn transcribes_terms() {
        let p = parse_polynomial("x^2 + y^2", &xy()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&mono(&[2, 0])), rational(1));
        assert_eq!(p.coefficient(&mono(&[0, 2])), rational(1));

        assert!(parse_polynomial("0", &xy()).unwrap().is_zero());

        let q = parse_polynomial("3/2*x*y - y^3", &xy()).unwrap();
        assert_eq!(
            q.coefficient(&mono(&[1, 1])),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(q.coefficient(&mono(&[0, 3])), rational(-1));
    }

    #[test]
    fn precedence() {
        let f = xy();
        let a = parse_polynomial("-x^2", &f).unwrap();
        assert_eq!(a.coefficient(&mono(&[2, 0])), rational(-1));
        let b = parse_polynomial("2*x^2*3 - (x+y)^2", &f).unwrap();
        let c = parse_polynomial("5*x^2 - 2*x*y - y^2", &f).unwrap();
        assert_eq!(b, c);
        assert_eq!(
            parse_polynomial("x - y - x", &f).unwrap(),
            parse_polynomial("-y", &f).unwrap()
        );
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(matches!(
            parse_polynomial("2x", &xy()),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("x y", &xy()),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn reports_unknown_variables_and_exponents() {
        assert_eq!(
            parse_polynomial("x + z", &xy()),
            Err(ParseError::UnknownVariable {
                name: "z".into(),
                pos: 4
            })
        );
        assert_eq!(
            parse_polynomial("x^-1", &xy()),
            Err(ParseError::BadExponent { pos: 2 })
        );
        assert_eq!(
            parse_polynomial("x^y", &xy()),
            Err(ParseError::BadExponent { pos: 2 })
        );
        assert_eq!(
            parse_polynomial("x^1/2", &xy()),
            Err(ParseError::BadExponent { pos: 2 })
        );
        assert!(parse_polynomial("(x", &xy()).is_err());
        assert!(parse_polynomial("1/0", &xy()).is_err());
        assert!(parse_polynomial("", &xy()).is_err());
    }
}
