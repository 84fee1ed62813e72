//! Recursive-descent reader for the canonical polynomial syntax.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary ('*' unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' digits)?`,
//! `atom := digits ('/' digits)? | name | '(' expr ')'`.
//! Implicit multiplication is not accepted.

use alloc::format;
use alloc::string::ToString;

use super::{MultiPoly, PolyError, Var};
use crate::arith::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(src: &str) -> Result<MultiPoly, PolyError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, what: &str) -> PolyError {
        PolyError::Parse(format!("{} at byte {}", what, self.pos))
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e: u32 = self.digits()?.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let mut text = self.digits()?.to_string();
                // a '/' directly followed by digits belongs to the literal
                if self.src.get(self.pos) == Some(&b'/')
                    && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
                {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(self.digits()?);
                }
                let c: Rational = text.parse().map_err(|_| self.error("bad number"))?;
                Ok(MultiPoly::constant(c))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v = Var::from_name(name).ok_or_else(|| PolyError::Parse(format!("unknown variable {:?}", name)))?;
                Ok(MultiPoly::var(v))
            }
            _ => Err(self.error("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let f = parse("-x^2 + 2*(x - 1)^2").unwrap();
        assert_eq!(f, parse("x^2 - 4*x + 2").unwrap());
        assert_eq!(parse("3/4*tau").unwrap(), MultiPoly::var(Var::Tau).scale(&Rational::frac(3, 4)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("x +").is_err());
        assert!(parse("z").is_err());
        assert!(parse("2x").is_err());
        assert!(parse("(x").is_err());
    }
}
