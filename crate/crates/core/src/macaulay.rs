//! Macaulay binomial representations and monomial bases.
//!
//! Every integer `n >= 0` has a unique degree-`d` Macaulay representation
//! `n = C(m_d, d) + C(m_{d-1}, d-1) + ... + C(m_j, j)` with strictly
//! decreasing parts `m_d > m_{d-1} > ... > m_j >= j >= 1`, found greedily.
//! The growth function `n -> n^<d>` replaces each `C(m_i, i)` by
//! `C(m_i + 1, i + 1)`; by Macaulay's bound it dominates the Hilbert
//! function of any standard graded algebra one degree up.  For `n <= d`
//! the representation telescopes and `n^<d> = n` ("constant expansion"),
//! which is what makes constant Hilbert polynomials detectable in a single
//! degree step.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{cmp_monomials, Monomial, TermOrder};

/// Binomial coefficient `C(m, k)` by the multiplicative formula; `0` when
/// `m < k`.
pub fn binomial(m: u64, k: u64) -> BigUint {
    if m < k {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(m - i) / BigUint::from(i + 1);
    }
    acc
}

/// The degree-`d` Macaulay representation of an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    /// Representation degree `d >= 1`.
    pub degree: u32,
    /// Strictly decreasing parts `m_d > m_{d-1} > ...`; `parts[j]` is the
    /// upper index of the binomial at lower index `degree - j`.  Only the
    /// prefix actually used is stored (the greedy loop stops at value 0).
    pub parts: Vec<u64>,
    /// The represented integer.
    pub value: u64,
}

impl MacaulayRep {
    /// Lower binomial index paired with `parts[j]`.
    pub fn index(&self, j: usize) -> u64 {
        self.degree as u64 - j as u64
    }

    /// Re-evaluate the sum of binomials; equals `value` by construction.
    pub fn reconstruct(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for (j, &m) in self.parts.iter().enumerate() {
            acc += binomial(m, self.index(j));
        }
        acc
    }

    /// The Macaulay growth `n^<d>` of the represented integer.
    pub fn growth(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for (j, &m) in self.parts.iter().enumerate() {
            acc += binomial(m + 1, self.index(j) + 1);
        }
        acc
    }
}

/// Largest `m` with `C(m, i) <= rem`, for `i >= 1` and `rem >= 1`.
fn greedy_part(i: u64, rem: &BigUint) -> u64 {
    debug_assert!(i >= 1 && !rem.is_zero());
    let mut lo = i; // C(i, i) = 1 <= rem
    let mut hi = i + 1;
    while binomial(hi, i) <= *rem {
        lo = hi;
        hi = hi.checked_mul(2).expect("part search overflow");
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if binomial(mid, i) <= *rem {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy Macaulay representation of `n` in degree `d >= 1`.
pub fn macaulay_rep(n: u64, d: u32) -> Result<MacaulayRep> {
    if d < 1 {
        return Err(Error::InvalidParameter("macaulay degree must be >= 1".into()));
    }
    let mut parts = Vec::new();
    let mut rem = BigUint::from(n);
    let mut i = d as u64;
    while !rem.is_zero() && i >= 1 {
        let m = greedy_part(i, &rem);
        rem -= binomial(m, i);
        parts.push(m);
        i -= 1;
    }
    // The greedy choice always exhausts the remainder by i = 1 and yields
    // strictly decreasing parts; both are theorems about the representation.
    debug_assert!(rem.is_zero());
    debug_assert!(parts.windows(2).all(|w| w[0] > w[1]));
    Ok(MacaulayRep { degree: d, parts, value: n })
}

/// Macaulay growth `n^<d>`.
pub fn macaulay_growth(n: u64, d: u32) -> Result<BigUint> {
    Ok(macaulay_rep(n, d)?.growth())
}

/// All monomials of total degree `m` in `var_count` variables, sorted in
/// decreasing term order.  The list has `C(m + v - 1, v - 1)` entries.
pub fn monomial_basis(var_count: usize, m: u32, order: TermOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    if var_count == 0 {
        if m == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut current = vec![0u32; var_count];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == current.len() - 1 {
            current[pos] = remaining;
            out.push(Monomial::new(current.clone()));
            current[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    rec(0, m, &mut current, &mut out);
    out.sort_by(|a, b| cmp_monomials(order, b, a));
    out
}
