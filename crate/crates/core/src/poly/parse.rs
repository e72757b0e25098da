//! Text and JSON forms of polynomials.
//!
//! Text: terms `c*x1^e1*...*xn^en` joined by `+`/`-`, over variables
//! declared separately. Coefficients are integers or `num/den`.
//!
//! JSON: `{"ring": [names], "terms": [{"coeff": "num/den", "exps": [..]}]}`.

use serde::{Deserialize, Serialize};

use super::{ExpVec, MPoly, Ring};
use crate::error::{Error, Result};
use crate::rat::Rat;

pub fn parse_poly(src: &str, ring: &Ring) -> Result<MPoly> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        ring,
        src,
    };
    p.poly()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<MPoly> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (e, c) = self.term()?;
            terms.push((e, &c * &sign));
            match self.peek() {
                None => break,
                Some('+') => sign = Rat::one(),
                Some('-') => sign = -Rat::one(),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
        Ok(MPoly::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(ExpVec, Rat)> {
        let mut e = ExpVec::zero(self.ring.nvars());
        let mut c = Rat::one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => c = &c * &self.number()?,
                Some(ch) if ch.is_alphabetic() || ch == '_' => {
                    let (v, k) = self.power()?;
                    e.as_mut_slice()[v] += k;
                }
                _ => return Err(self.err("expected a number or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((e, c));
            }
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<Rat> {
        let num = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return Err(self.err("missing denominator"));
            }
            format!("{num}/{den}").parse()
        } else {
            num.parse()
        }
    }

    fn power(&mut self) -> Result<(usize, u16)> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let v = self
            .ring
            .index_of(&name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in `{}`", self.src)))?;
        let k = if self.peek() == Some('^') {
            self.pos += 1;
            let d = self.digits();
            d.parse::<u16>().map_err(|_| self.err("bad exponent"))?
        } else {
            1
        };
        Ok((v, k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Rat,
    pub exps: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&MPoly> for PolyJson {
    fn from(p: &MPoly) -> Self {
        PolyJson {
            ring: p.ring().names().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermJson {
                    coeff: c.clone(),
                    exps: e.as_slice().to_vec(),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self) -> Result<MPoly> {
        let ring = Ring::new(self.ring.iter().cloned());
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exps.len() != n {
                    return Err(Error::Parse(format!(
                        "term has {} exponents, ring has {n} variables",
                        t.exps.len()
                    )));
                }
                Ok((ExpVec::from_slice(&t.exps), t.coeff.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MPoly::from_terms(&ring, terms))
    }
}
