//! Text syntax for polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! poly   := [sign] term { sign term }
//! sign   := '+' | '-'
//! term   := number [ '*' factors ] | factors
//! factors:= factor { '*' factor }
//! factor := ident [ '^' nat ]
//! number := nat [ '/' nat ]
//! ```
//!
//! Examples: `u1*u2 - u3`, `a2*a4 - a1*a5`, `-1/2*x^3 + y`, `0`.
//! Printing emits the canonical form (terms in decreasing term order), and
//! `parse(print(f)) == f` exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyRing, Polynomial, Rational};
use crate::error::{Error, Result};

/// Parse a rational written as `num` or `num/den` (optional leading `-`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer `{num_s}`")))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| Error::Parse(format!("invalid integer `{d}`")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Nat(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_nat(&mut self, what: &str) -> Result<BigInt> {
        match self.next() {
            Some(Tok::Nat(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    /// factor := ident [ '^' nat ]
    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let name = match self.next() {
            Some(Tok::Ident(name)) => name,
            other => return Err(Error::Parse(format!("expected variable, found {other:?}"))),
        };
        let var = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        let exp: u32 = if let Some(Tok::Caret) = self.peek() {
            self.next();
            let n = self.expect_nat("exponent")?;
            u32::try_from(n).map_err(|_| Error::Parse("exponent out of range".into()))?
        } else {
            1
        };
        exps[var] = exps[var]
            .checked_add(exp)
            .ok_or_else(|| Error::Parse("exponent out of range".into()))?;
        Ok(())
    }

    /// term := number [ '*' factors ] | factors
    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut saw_factor = false;
        if let Some(Tok::Nat(_)) = self.peek() {
            let num = self.expect_nat("number")?;
            let den = if let Some(Tok::Slash) = self.peek() {
                self.next();
                let d = self.expect_nat("denominator")?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            if let Some(Tok::Star) = self.peek() {
                self.next();
                self.factor(&mut exps)?;
                saw_factor = true;
            }
        } else {
            self.factor(&mut exps)?;
            saw_factor = true;
        }
        while saw_factor {
            if let Some(Tok::Star) = self.peek() {
                self.next();
                self.factor(&mut exps)?;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}

/// Parse the text syntax into a polynomial of `ring`.
pub fn parse_polynomial(ring: &PolyRing, input: &str) -> Result<Polynomial> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { ring, toks, pos: 0 };
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    let mut sign = match p.peek() {
        Some(Tok::Minus) => {
            p.next();
            -1
        }
        Some(Tok::Plus) => {
            p.next();
            1
        }
        _ => 1,
    };
    loop {
        let (m, c) = p.term()?;
        let c = if sign < 0 { -c } else { c };
        terms.push((m, c));
        match p.next() {
            None => break,
            Some(Tok::Plus) => sign = 1,
            Some(Tok::Minus) => sign = -1,
            Some(other) => {
                return Err(Error::Parse(format!("expected + or -, found {other:?}")))
            }
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Render a monomial as `x*y^2`-style factors; `1` for the empty monomial.
pub fn format_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let factors: Vec<String> = ring
        .vars()
        .iter()
        .zip(m.exponents())
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub(super) fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_str = super::format_rational(&abs);
        if m.is_one() {
            out.push_str(&coeff_str);
        } else if abs.is_one() {
            out.push_str(&format_monomial(ring, m));
        } else {
            out.push_str(&coeff_str);
            out.push('*');
            out.push_str(&format_monomial(ring, m));
        }
    }
    out
}
