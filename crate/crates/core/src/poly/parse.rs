//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, declared variable names, `+ - * ^`, parentheses.
//! Division is accepted only by an integer literal that is invertible in the
//! ring, so that printed rational coefficients such as `1/2*x` read back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Poly;
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &[String], ring: &CoeffRing) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars, ring, nvars: vars.len() };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    ring: &'a CoeffRing,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    let inv = if d.is_zero() {
                        None
                    } else {
                        self.ring.from_rational(&BigRational::new(1.into(), d)).ok()
                    };
                    match inv {
                        Some(inv) => acc = acc.scale(&inv),
                        None => {
                            return Err(Error::Parse {
                                pos: at,
                                msg: format!("divisor is not invertible in {}", self.ring),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(self.ring, self.nvars, self.ring.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.ring, self.nvars, i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn example_over_z30() {
        let r = CoeffRing::IntegersModN(30);
        let f = parse_poly("15*x^3 + 10*x + 6", &names(&["x"]), &r).unwrap();
        assert_eq!(f.display_with(&names(&["x"])), "15*x^3 + 10*x + 6");
        let g = parse_poly("-1", &names(&["x"]), &r).unwrap();
        assert_eq!(g.display_with(&names(&["x"])), "29");
    }

    #[test]
    fn zero_and_precedence() {
        let z = CoeffRing::Integers;
        let v = names(&["x", "y"]);
        assert!(parse_poly("0", &v, &z).unwrap().is_zero());
        let f = parse_poly("-x^2 + (x - y)*(x + y)", &v, &z).unwrap();
        assert_eq!(f.display_with(&v), "-y^2");
        let g = parse_poly("2*(x+1)^2", &v, &z).unwrap();
        assert_eq!(g.display_with(&v), "2*x^2 + 4*x + 2");
    }

    #[test]
    fn errors_carry_positions() {
        let z = CoeffRing::Integers;
        let v = names(&["x"]);
        assert_eq!(parse_poly("x +", &v, &z).unwrap_err().kind(), "ParseError");
        assert!(matches!(parse_poly("2x", &v, &z), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly("x*(1", &v, &z), Err(Error::Parse { pos: 4, .. })));
        assert_eq!(parse_poly("x*y", &v, &z), Err(Error::UnknownVariable("y".into())));
        assert!(parse_poly("", &v, &z).is_err());
        assert!(parse_poly("x/2", &v, &z).is_err());
        assert!(parse_poly("x/2", &v, &CoeffRing::Rationals).is_ok());
    }

    #[test]
    fn primes_in_names() {
        let v = names(&["x'", "x''"]);
        let f = parse_poly("x'' - x'", &v, &CoeffRing::Rationals).unwrap();
        assert_eq!(f.display_with(&v), "-x' + x''");
    }
}
