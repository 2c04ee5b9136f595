//! Text syntax for polynomials.
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('^' digits)?
//! atom    := digits ('/' digits)? | name | '(' poly ')'
//! name    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored. Names must belong to the target ring.

use crate::error::ParseError;
use num_traits::One;

use crate::scalar::Rational;

use super::{Polynomial, RingRef};

pub fn parse_polynomial(ring: &RingRef, text: &str) -> Result<Polynomial<Rational>, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Polynomial {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = <Rational as One>::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(&t, &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = <Rational as One>::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -<Rational as One>::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut text = num;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits()?;
                    text = format!("{text}/{den}");
                }
                let q = crate::scalar::parse_rational(&text)?;
                Ok(Polynomial::constant(self.ring, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(ParseError::UnknownVariable(name)),
                }
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn parses_and_prints_canonically() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let p = parse_polynomial(&r, "-(x + y)*(x - y) + 3/2*z^2 - 0*x").unwrap();
        assert_eq!(p.to_string(), "-x^2 + y^2 + 3/2*z^2");
        let back = parse_polynomial(&r, &p.to_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_unknown_names_and_garbage() {
        let r = Ring::grevlex(&["x"]);
        assert!(matches!(
            parse_polynomial(&r, "x + w"),
            Err(ParseError::UnknownVariable(_))
        ));
        assert!(parse_polynomial(&r, "x +").is_err());
        assert!(parse_polynomial(&r, "x)").is_err());
    }
}
