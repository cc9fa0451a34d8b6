//! Sparse multivariate polynomials over the rationals.
//!
//! Design notes:
//! - Coefficients are `num_rational::BigRational`, always reduced with a
//!   positive denominator, so equality of coefficients is structural.
//! - A [`Monomial`] is a fixed-length exponent vector; its length must match
//!   the number of ring variables.  Exponent arithmetic is checked.
//! - A [`Polynomial`] stores its terms sorted in strictly decreasing term
//!   order with no zero coefficients.  That canonical form makes `==`
//!   mathematically correct and printing deterministic.
//! - Rings are cheap handles (`Arc` inside); two rings are equal when they
//!   have the same variable names and the same term order.

mod json;
mod text;

pub use json::{ideal_from_json, ideal_to_json};
pub(crate) use json::RawPoly;
pub use text::{format_monomial, parse_polynomial, parse_rational};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Render a rational in the canonical `num` / `num/den` form.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Monomial (term) orders supported by the crate.
///
/// Both are multiplicative total orders with 1 as the minimal element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum TermOrder {
    /// Degree first, ties broken reverse-lexicographically.
    DegRevLex,
    /// Pure lexicographic order on the exponent vectors.
    Lex,
}

/// Exponent vector of a monomial; the length is the ring's variable count.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Product of two monomials; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Compare two monomials under the given term order.
pub fn cmp_monomials(order: TermOrder, a: &Monomial, b: &Monomial) -> Ordering {
    debug_assert_eq!(a.0.len(), b.0.len());
    match order {
        TermOrder::Lex => {
            for (x, y) in a.0.iter().zip(&b.0) {
                if x != y {
                    return x.cmp(y);
                }
            }
            Ordering::Equal
        }
        TermOrder::DegRevLex => {
            let (da, db) = (a.degree(), b.degree());
            if da != db {
                return da.cmp(&db);
            }
            // Ties: the monomial whose last differing exponent is smaller
            // is the larger one.
            for (x, y) in a.0.iter().zip(&b.0).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
    }
}

#[derive(Debug)]
struct RingInner {
    vars: Vec<String>,
    order: TermOrder,
}

/// A polynomial ring Q[vars] with a fixed term order.
#[derive(Clone, Debug)]
pub struct PolyRing {
    inner: Arc<RingInner>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.vars == other.inner.vars)
    }
}

impl Eq for PolyRing {}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Build a ring; variable names must be distinct valid identifiers.
    pub fn new<S: AsRef<str>>(vars: &[S], order: TermOrder) -> Result<PolyRing> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for v in &vars {
            if !valid_ident(v) {
                return Err(Error::InvalidParameter(format!("invalid variable name `{v}`")));
            }
        }
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                if vars[i] == vars[j] {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate variable name `{}`",
                        vars[i]
                    )));
                }
            }
        }
        Ok(PolyRing { inner: Arc::new(RingInner { vars, order }) })
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn order(&self) -> TermOrder {
        self.inner.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_monomials(self.inner.order, a, b)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        if c.is_zero() {
            self.zero()
        } else {
            Polynomial { ring: self.clone(), terms: vec![(Monomial::one(self.nvars()), c)] }
        }
    }

    /// The polynomial consisting of the single variable `var`.
    pub fn var(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars(), "variable index out of range");
        let mut e = vec![0; self.nvars()];
        e[var] = 1;
        Polynomial { ring: self.clone(), terms: vec![(Monomial(e), Rational::one())] }
    }

    /// A single term `c * m`.
    pub fn term(&self, m: Monomial, c: Rational) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars(), "monomial length mismatch");
        if c.is_zero() {
            self.zero()
        } else {
            Polynomial { ring: self.clone(), terms: vec![(m, c)] }
        }
    }
}

/// A sparse polynomial in canonical form: terms strictly decreasing in the
/// ring's term order, all coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    /// Canonicalize an arbitrary term list: sort, merge, drop zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Monomial, Rational)>) -> Polynomial {
        for (m, _) in &terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
        }
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Sum; errors when the operands live in different rings.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Product; errors when the operands live in different rings.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc.into_iter().collect()))
    }

    /// Multiply by the scalar `c`.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c * m` (order-preserving, no re-sort).
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    /// Primitive-integer normal form: the unique positive rational multiple
    /// with coprime integer coefficients and a positive leading coefficient.
    /// Errors on the zero polynomial.
    pub fn normalize_primitive(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroNormalize);
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        // den_lcm and num_gcd are both positive here, so the factor is
        // positive; flip it when the leading coefficient is negative.
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        Ok(self.scale(&factor))
    }

    /// Evaluate at a rational point (one coordinate per ring variable).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::PointLength { want: self.ring.nvars(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= x.pow(i32::try_from(e).expect("exponent too large to evaluate"));
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the divisor
    /// divides exactly, `None` otherwise.  Panics on a zero divisor or a
    /// ring mismatch (internal use on matrices over one ring).
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "exact_div by zero");
        assert!(self.ring == divisor.ring, "exact_div across rings");
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        let (dm, dc) = (&divisor.terms[0].0, &divisor.terms[0].1);
        while !rem.is_zero() {
            let (rm, rc) = (&rem.terms[0].0, &rem.terms[0].1);
            let qm = dm.div(rm)?;
            let qc = rc / dc;
            rem = rem
                .checked_sub(&divisor.mul_term(&qm, &qc))
                .expect("same ring");
            q.push((qm, qc));
        }
        // Quotient terms were produced in strictly decreasing order.
        Some(Polynomial { ring: self.ring.clone(), terms: q })
    }

    /// Total deterministic order on polynomials of one ring: compare the
    /// term sequences lexicographically by (monomial, coefficient).
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        debug_assert!(self.ring == other.ring);
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            match self.ring.cmp(ma, mb) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match ca.cmp(cb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    /// Rebuild the polynomial in `new_ring`, mapping every monomial through
    /// `f`.  Used for embedding into extension rings and permuting
    /// variables; the result is re-canonicalized.
    pub fn map_monomials(
        &self,
        new_ring: &PolyRing,
        mut f: impl FnMut(&Monomial) -> Monomial,
    ) -> Polynomial {
        Polynomial::from_terms(
            new_ring,
            self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect(),
        )
    }

    /// Smallest exponent of `var` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).min().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_polynomial(self))
    }
}

// Operator sugar for code paths where both operands are known to share a
// ring (matrix kernels, Groebner internals).  Panics on a mismatch.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
