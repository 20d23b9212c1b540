//! Recursive descent parser for polynomial expressions.
//!
//! ```text
//! expr     := '-'? term (('+' | '-') '-'? term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' NAT)?
//! base     := RATIONAL | VAR | '(' expr ')'
//! RATIONAL := INT ('/' POSINT)?
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Chart, Expr, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        tokens.push((start, tok));
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.signed_term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc += self.signed_term()?;
            } else if self.eat(&Token::Minus) {
                acc -= self.signed_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_term(&mut self) -> Result<Expr> {
        if self.eat(&Token::Minus) {
            Ok(-self.term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            let rhs = self.factor()?;
            acc = acc.try_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat(&Token::Caret) {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e = n
                        .to_u32()
                        .ok_or_else(|| syntax(at, "exponent does not fit a machine word"))?;
                    base.try_pow(e)
                }
                _ => Err(syntax(at, "expected a natural exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat(&Token::Slash) {
                    let at = self.offset();
                    match self.peek().cloned() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Expr::constant(Rational::new(n, d)))
                        }
                        _ => Err(syntax(at, "expected a positive denominator")),
                    }
                } else {
                    Ok(Expr::constant(Rational::from_integer(n)))
                }
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.chart.var(&name)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(tok) => Err(syntax(at, format!("unexpected token {tok:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

pub(super) fn parse(text: &str, chart: &Chart) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        chart,
    };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(syntax(parser.offset(), "trailing input"));
    }
    Ok(expr)
}
