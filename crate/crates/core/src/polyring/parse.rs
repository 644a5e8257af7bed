//! Text form of polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := item ('*' item)*
//! item   := rat | var ['^' int]
//! rat    := int ['/' posint]
//! ```
//!
//! Coordinates are exactly `x0..x{n-1}`; every other identifier must be a
//! declared parameter. Only parameters accept negative exponents. A bare
//! rational is a constant term, and the leading sign of the first term is
//! optional, so everything the printer emits parses back.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::varspace::{coordinate_index, VarSpace};
use crate::error::{Error, Result};

impl Poly {
    pub fn parse(text: &str, vs: &Arc<VarSpace>) -> Result<Poly> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vs,
        }
        .poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vs: &'a Arc<VarSpace>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.vs);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.syntax("empty polynomial"),
            _ => 1,
        };
        loop {
            let (m, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            out.add_term(m, c);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return self.syntax(format!("unexpected `{}`", ch as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let n = self.vs.n();
        let mut coords = vec![0u32; n];
        let mut params: Vec<i64> = vec![0; self.vs.num_params()];
        let mut coeff = BigRational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.rational()?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    let name = self.ident();
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.int()?
                    } else {
                        1
                    };
                    if let Some(i) = coordinate_index(&name).filter(|&i| i < n) {
                        if exp < 0 {
                            return Err(Error::NegativeCoordinateExponent { name, pos: start });
                        }
                        let e = u32::try_from(exp)
                            .ok()
                            .and_then(|e| coords[i].checked_add(e));
                        match e {
                            Some(e) => coords[i] = e,
                            None => return self.syntax("exponent too large"),
                        }
                    } else if let Some(p) = self.vs.param_index(&name) {
                        params[p] += exp;
                    } else {
                        return Err(Error::UnknownVariable { name, pos: start });
                    }
                }
                Some(c) => return self.syntax(format!("expected a factor, found `{}`", c as char)),
                None => return self.syntax("expected a factor, found end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut sparse = Vec::new();
        for (p, e) in params.into_iter().enumerate() {
            if e != 0 {
                match i32::try_from(e) {
                    Ok(e) => sparse.push((p as u32, e)),
                    Err(_) => return self.syntax("exponent too large"),
                }
            }
        }
        Ok((Monomial::from_parts(coords, sparse), coeff))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let v = self.digits()?;
        let v: i64 = match i64::try_from(&v) {
            Ok(v) => v,
            Err(_) => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "exponent too large".into(),
                })
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return self.syntax("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }
}
