//! A small expression grammar for polynomials with rational coefficients.
//!
//! Supported: `+ - * ^`, parentheses, integer and `p/q` rational literals,
//! one variable (any single alphabetic identifier, so `x` and `z` both
//! work), and implicit multiplication by juxtaposition: `3x`, `x(x+1)`,
//! `1 - (x^3 - 1)^2`. Exponents are nonnegative integers.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::RatPoly;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigRational),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let err = |msg: String| Error::ExprParse(msg);
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let mut var_name: Option<char> = None;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let numer: BigInt = bytes[i..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| err(format!("{}", e)))?;
                i = j;
                // a '/' directly after an integer forms a rational literal
                if i < bytes.len() && bytes[i] == '/' {
                    let mut k = i + 1;
                    while k < bytes.len() && bytes[k].is_ascii_whitespace() {
                        k += 1;
                    }
                    let start = k;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    if start == k {
                        return Err(err("expected denominator after '/'".into()));
                    }
                    let denom: BigInt = bytes[start..k]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|e| err(format!("{}", e)))?;
                    if denom == BigInt::from(0) {
                        return Err(err("zero denominator".into()));
                    }
                    out.push(Token::Number(BigRational::new(numer, denom)));
                    i = k;
                } else {
                    out.push(Token::Number(BigRational::from_integer(numer)));
                }
            }
            c if c.is_alphabetic() => {
                match var_name {
                    None => var_name = Some(c),
                    Some(v) if v == c => {}
                    Some(v) => {
                        return Err(err(format!(
                            "two different variables '{}' and '{}'",
                            v, c
                        )))
                    }
                }
                out.push(Token::Var);
                i += 1;
            }
            other => return Err(err(format!("unexpected character '{}'", other))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<RatPoly> {
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

    // term := ('-')* factor (factor | '*' factor)*
    fn term(&mut self) -> Result<RatPoly> {
        let mut negate = false;
        while matches!(self.peek(), Some(Token::Minus)) {
            negate = !negate;
            self.pos += 1;
        }
        while matches!(self.peek(), Some(Token::Plus)) {
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Token::Number(_)) | Some(Token::Var) | Some(Token::Open) => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(if negate { -&acc } else { acc })
    }

    // factor := atom ('^' integer)*
    fn factor(&mut self) -> Result<RatPoly> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Token::Number(n)) if n.is_integer() => {
                    let e = u32::try_from(n.to_integer()).map_err(|_| {
                        Error::ExprParse("exponent must fit a nonnegative machine integer".into())
                    })?;
                    base = base.pow(e);
                }
                _ => {
                    return Err(Error::ExprParse(
                        "expected nonnegative integer exponent".into(),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.next() {
            Some(Token::Number(n)) => Ok(RatPoly::constant(n)),
            Some(Token::Var) => Ok(RatPoly::x()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::ExprParse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::ExprParse(format!("unexpected token {:?}", t))),
            None => Err(Error::ExprParse("unexpected end of input".into())),
        }
    }
}

/// Parses an expression into a polynomial.
pub fn parse_poly(input: &str) -> Result<RatPoly> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(Error::ExprParse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::ExprParse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_the_corpus_expressions() {
        let f = parse_poly("1 - (x^3 - 1)^2").unwrap();
        let inner = RatPoly::from_ints(&[-1, 0, 0, 1]);
        assert_eq!(f, &RatPoly::one() - &inner.pow(2));
        let g = parse_poly("x^3 - 3x").unwrap();
        assert_eq!(g, RatPoly::from_ints(&[0, -3, 0, 1]));
        let h = parse_poly("1 - z^3(z+1)^2 z").unwrap();
        assert_eq!(h.degree(), Some(6));
        let p = parse_poly("25x^3-12x^2-24x-16").unwrap();
        assert_eq!(p, RatPoly::from_ints(&[-16, -24, -12, 25]));
    }

    #[test]
    fn rational_literals_and_signs() {
        let f = parse_poly("27/4 x (1 - x)^2").unwrap();
        assert_eq!(f, crate::belyi::pmn_step(1, 2));
        let g = parse_poly("-x^2 + -3").unwrap();
        assert_eq!(g, RatPoly::from_ints(&[-3, 0, -1]));
    }

    #[test]
    fn display_round_trips() {
        for coeffs in [
            vec![0i64, -3, 0, 1],
            vec![5],
            vec![0, 0, 0, 7],
            vec![-1, 2, -3, 4],
        ] {
            let f = RatPoly::from_ints(&coeffs);
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
        assert_eq!(parse_poly("0").unwrap(), RatPoly::zero());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("x ^ -2").is_err());
        assert!(parse_poly("x + y").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
