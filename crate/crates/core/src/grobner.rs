//! Buchberger's algorithm, reduced Groebner bases, and the membership
//! queries built on them.
//!
//! Conventions:
//! - Basis elements are kept in primitive-integer form (coprime integer
//!   coefficients, positive leading coefficient), not monic.
//! - S-pairs are selected by the normal strategy (lowest total degree of
//!   the lcm first, ties by generator index) and pruned at insertion
//!   time with the Gebauer-Moeller criteria.
//! - Internal reductions are fraction-free: the working polynomial keeps
//!   integer coefficients throughout (pseudo-division cross-multiplies by
//!   the positive leading coefficient of the divisor), so no rational
//!   gcd normalization happens in the hot loop.  Only `normal_form`
//!   divides exactly, because its remainder is part of the public
//!   contract.
//! - A Buchberger run performs at most `Limits::gb_budget` S-pair
//!   reductions; on exhaustion it reports `Error::Resource` instead of a
//!   wrong answer.
//! - Radical membership uses the Rabinowitsch trick: `f` lies in the
//!   radical of `I` iff `1` lies in `I + (1 - t f)` in one extra variable.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{cmp_monomials, Monomial, PolyRing, Polynomial, Rational, TermOrder};
use crate::Limits;

/// A finitely generated ideal with a lazily computed reduced Groebner
/// basis.  The cache is write-once: concurrent readers after population
/// are safe, and cloning preserves an already computed basis.
#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), gb }
    }
}

impl Ideal {
    /// Build an ideal from generators (zero generators are dropped).
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        let generators = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, gb: OnceLock::new() })
    }

    pub fn zero(ring: &PolyRing) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// No generators at all (the zero ideal, syntactically).
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The reduced Groebner basis under the ring's term order.
    pub fn groebner_basis(&self, limits: &Limits) -> Result<&[Polynomial]> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = buchberger(&self.ring, &self.generators, limits)?;
        Ok(self.gb.get_or_init(|| b))
    }

    /// The unique remainder of `f` under division by the reduced basis.
    pub fn normal_form(&self, f: &Polynomial, limits: &Limits) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner_basis(limits)?;
        Ok(reduce_full(f, gb))
    }

    /// Ideal membership: `f` is in the ideal iff its normal form is zero
    /// (tested fraction-free; the remainder itself is not materialized).
    pub fn contains(&self, f: &Polynomial, limits: &Limits) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner_basis(limits)?;
        Ok(reduces_to_zero(f, gb))
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self, limits: &Limits) -> Result<bool> {
        let gb = self.groebner_basis(limits)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }
}

/// Mutual-membership test for ideal equality (same ring required).
pub fn ideal_equal(a: &Ideal, b: &Ideal, limits: &Limits) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    // Identical generator lists generate the same ideal; skipping the
    // Groebner machinery here keeps certified-stable cumulative chains
    // (whose lists are shared verbatim) cheap to compare.
    if a.generators() == b.generators() {
        return Ok(true);
    }
    for g in b.generators() {
        if !a.contains(g, limits)? {
            return Ok(false);
        }
    }
    for g in a.generators() {
        if !b.contains(g, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radical membership via Rabinowitsch: `f` in `sqrt(I)` iff
/// `1 in I + (1 - t f)` in an extension ring with a fresh variable `t`.
pub fn radical_member(f: &Polynomial, ideal: &Ideal, limits: &Limits) -> Result<bool> {
    if f.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    // Fast path: plain membership already implies radical membership.
    if ideal.contains(f, limits)? {
        return Ok(true);
    }
    let base = ideal.ring();
    let mut tname = "t".to_string();
    let mut k = 0;
    while base.var_index(&tname).is_some() {
        tname = format!("t{k}");
        k += 1;
    }
    let mut vars: Vec<String> = base.vars().to_vec();
    vars.push(tname);
    let ext = PolyRing::new(&vars, crate::polyring::TermOrder::DegRevLex)?;
    let embed = |p: &Polynomial| {
        p.map_monomials(&ext, |m| {
            let mut e = m.exponents().to_vec();
            e.push(0);
            Monomial::new(e)
        })
    };
    let t = ext.var(ext.nvars() - 1);
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(embed).collect();
    gens.push(ext.one().checked_sub(&t.checked_mul(&embed(f))?)?);
    let mut engine = GbEngine::new(&ext);
    for g in &gens {
        engine.add(g, limits)?;
        if engine.is_unit() {
            return Ok(true);
        }
    }
    Ok(engine.is_unit())
}

/// Full exact reduction of `f` by an ordered list of nonzero divisors:
/// every term of the remainder is divisible by no leading monomial of
/// `basis`.  Divisors are tried in list order.
pub fn reduce_full(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let order = ring.order();
    let mut work: Vec<(Monomial, Rational)> = f.terms().to_vec();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut at = 0usize;
    'outer: while at < work.len() {
        let (lm, lc) = work[at].clone();
        for g in basis {
            let gm = g.leading_monomial().expect("nonzero divisor");
            if gm.divides(&lm) {
                let q = gm.div(&lm).unwrap();
                let c = &lc / g.leading_coefficient().unwrap();
                // work <- work - c * (q * g); the leading terms cancel
                let mut next = Vec::with_capacity(work.len() - at + g.terms().len());
                let (mut i, mut j) = (at, 0);
                let gt = g.terms();
                while i < work.len() && j < gt.len() {
                    let mg = q.mul(&gt[j].0);
                    match cmp_monomials(order, &work[i].0, &mg) {
                        Ordering::Greater => {
                            next.push(work[i].clone());
                            i += 1;
                        }
                        Ordering::Less => {
                            next.push((mg, -(&c * &gt[j].1)));
                            j += 1;
                        }
                        Ordering::Equal => {
                            let cc = &work[i].1 - &(&c * &gt[j].1);
                            if !cc.is_zero() {
                                next.push((mg, cc));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                next.extend(work[i..].iter().cloned());
                next.extend(gt[j..].iter().map(|(m, cg)| (q.mul(m), -(&c * cg))));
                work = next;
                at = 0;
                continue 'outer;
            }
        }
        // No divisor applies: the leading term is part of the remainder.
        rem.push((lm, lc));
        at += 1;
    }
    Polynomial::from_terms(&ring, rem)
}

// ---------------------------------------------------------------------
// Fraction-free internals: polynomials as descending integer term lists.
// Every stored basis element is primitive (coprime integer coefficients,
// positive leading coefficient); working polynomials stay integral
// because division steps cross-multiply instead of dividing.
// ---------------------------------------------------------------------

type ITerm = (Monomial, BigInt);

/// Bit per variable with nonzero exponent (folded mod 64): a divisor's
/// mask must be a subset of the dividend's, giving a one-AND prefilter
/// before the exponent-wise divisibility test.
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (v, e) in m.exponents().iter().enumerate() {
        if *e > 0 {
            mask |= 1 << (v % 64);
        }
    }
    mask
}

/// A basis element prepared for fraction-free division.
struct Reducer {
    lm: Monomial,
    lc: BigInt,
    mask: u64,
    terms: Vec<ITerm>,
}

impl Reducer {
    fn of(p: &Polynomial) -> Reducer {
        let terms = int_terms(p);
        let (lm, lc) = terms.first().cloned().expect("nonzero reducer");
        let mask = divmask(&lm);
        Reducer { lm, lc, mask, terms }
    }
}

/// Integer view of a primitive polynomial.
fn int_terms(p: &Polynomial) -> Vec<ITerm> {
    p.terms()
        .iter()
        .map(|(m, c)| {
            debug_assert!(c.denom().is_one(), "reducer coefficients must be integers");
            (m.clone(), c.numer().clone())
        })
        .collect()
}

/// Integer view of an arbitrary polynomial: scaled by the lcm of the
/// coefficient denominators (harmless anywhere only the zero-or-not or
/// the primitive part of the result matters).
fn int_terms_any(p: &Polynomial) -> Vec<ITerm> {
    let mut scale = BigInt::one();
    for (_, c) in p.terms() {
        scale = scale.lcm(c.denom());
    }
    p.terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.numer() * (&scale / c.denom())))
        .collect()
}

fn terms_to_poly(ring: &PolyRing, terms: Vec<ITerm>) -> Polynomial {
    Polynomial::from_terms(ring, terms.into_iter().map(|(m, c)| (m, Rational::from(c))).collect())
}

/// `ca * a - cb * (mb * b)`, all term lists descending.
fn merge_scaled(
    order: TermOrder,
    a: &[ITerm],
    ca: &BigInt,
    b: &[ITerm],
    cb: &BigInt,
    mb: &Monomial,
) -> Vec<ITerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let mbj = mb.mul(&b[j].0);
        match cmp_monomials(order, &a[i].0, &mbj) {
            Ordering::Greater => {
                out.push((a[i].0.clone(), ca * &a[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((mbj, -(cb * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = ca * &a[i].1 - cb * &b[j].1;
                if !c.is_zero() {
                    out.push((mbj, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().map(|(m, c)| (m.clone(), ca * c)));
    out.extend(b[j..].iter().map(|(m, c)| (mb.mul(m), -(cb * c))));
    out
}

/// Integer S-polynomial: leading terms cancel exactly, no fractions.
fn spoly_int(order: TermOrder, f: &Reducer, g: &Reducer) -> Vec<ITerm> {
    let lcm = f.lm.lcm(&g.lm);
    let mf = f.lm.div(&lcm).unwrap();
    let mg = g.lm.div(&lcm).unwrap();
    let gamma = f.lc.gcd(&g.lc);
    let scaled_f = f.terms.iter().map(|(m, c)| (mf.mul(m), c.clone())).collect::<Vec<_>>();
    merge_scaled(order, &scaled_f, &(&g.lc / &gamma), &g.terms, &(&f.lc / &gamma), &mg)
}

/// Geobucket accumulator for long alternating sums of term lists: bucket
/// `k` holds at most `4^(k+1)` descending terms with a lazy scalar
/// multiplier, so adding an `L`-term polynomial costs amortized
/// `O(L log)` instead of one full merge of the accumulated sum.
struct Geobucket {
    buckets: Vec<Option<(BigInt, Vec<ITerm>)>>,
    order: TermOrder,
}

impl Geobucket {
    fn cap(k: usize) -> usize {
        4usize.pow(k as u32 + 1)
    }

    fn new(order: TermOrder, terms: Vec<ITerm>) -> Geobucket {
        let mut geo = Geobucket { buckets: Vec::new(), order };
        geo.push(BigInt::one(), terms);
        geo
    }

    /// Add `mult * terms` into the accumulator.
    fn push(&mut self, mut mult: BigInt, mut terms: Vec<ITerm>) {
        if terms.is_empty() || mult.is_zero() {
            return;
        }
        let mut k = 0;
        while Self::cap(k) < terms.len() {
            k += 1;
        }
        loop {
            while self.buckets.len() <= k {
                self.buckets.push(None);
            }
            match self.buckets[k].take() {
                None => {
                    self.buckets[k] = Some((mult, terms));
                    return;
                }
                Some((bm, bt)) => {
                    terms = merge_scaled_add(self.order, &bt, &bm, &terms, &mult);
                    mult = BigInt::one();
                    if terms.is_empty() {
                        return;
                    }
                    if terms.len() <= Self::cap(k) {
                        self.buckets[k] = Some((mult, terms));
                        return;
                    }
                    k += 1;
                }
            }
        }
    }

    /// Multiply the accumulated value by a scalar (lazy, per bucket).
    fn scale(&mut self, a: &BigInt) {
        for b in self.buckets.iter_mut().flatten() {
            b.0 *= a;
        }
    }

    /// Remove and return the leading term of the accumulated value,
    /// aggregating equal head monomials across buckets and skipping
    /// exact cancellations.
    fn extract_lead(&mut self) -> Option<ITerm> {
        loop {
            let mut best: Option<Monomial> = None;
            for b in self.buckets.iter().flatten() {
                let head = &b.1[0].0;
                if best.as_ref().is_none_or(|m| {
                    cmp_monomials(self.order, head, m) == Ordering::Greater
                }) {
                    best = Some(head.clone());
                }
            }
            let m = best?;
            let mut c = BigInt::zero();
            for slot in &mut self.buckets {
                if let Some((bm, bt)) = slot {
                    if bt[0].0 == m {
                        c += &*bm * &bt[0].1;
                        bt.remove(0);
                        if bt.is_empty() {
                            *slot = None;
                        }
                    }
                }
            }
            if !c.is_zero() {
                return Some((m, c));
            }
        }
    }
}

/// `ma * a + mb * b`, both term lists descending.
fn merge_scaled_add(
    order: TermOrder,
    a: &[ITerm],
    ma: &BigInt,
    b: &[ITerm],
    mb: &BigInt,
) -> Vec<ITerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp_monomials(order, &a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push((a[i].0.clone(), ma * &a[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), mb * &b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let c = ma * &a[i].1 + mb * &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().map(|(m, c)| (m.clone(), ma * c)));
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), mb * c)));
    out
}

/// Fraction-free full reduction against `basis`, optionally skipping one
/// index (for tail-reducing a basis against itself).  The result is a
/// positive integer multiple of the exact remainder, so it is zero, or
/// primitive-equal, exactly when the remainder is.  Among applicable
/// divisors the one with the fewest terms is preferred (least fill-in);
/// the working sum lives in a geobucket to keep step cost logarithmic.
///
/// When `sugars` is given (parallel to `basis`), the returned degree is
/// the sugar of the result: the phantom-homogenization degree that the
/// selection strategy orders pairs by.
fn pseudo_reduce(
    order: TermOrder,
    work: Vec<ITerm>,
    basis: &[Reducer],
    skip: Option<usize>,
    sugars: Option<&[u32]>,
    mut sugar: u32,
) -> (Vec<ITerm>, u32) {
    let mut geo = Geobucket::new(order, work);
    let mut rem: Vec<ITerm> = Vec::new();
    while let Some((lm, lc)) = geo.extract_lead() {
        let lead_mask = divmask(&lm);
        let mut best: Option<(usize, &Reducer)> = None;
        for (idx, g) in basis.iter().enumerate() {
            if Some(idx) == skip || g.mask & !lead_mask != 0 || !g.lm.divides(&lm) {
                continue;
            }
            if best.is_none_or(|(_, b)| g.terms.len() < b.terms.len()) {
                best = Some((idx, g));
            }
        }
        let Some((gi, g)) = best else {
            // No divisor applies: the leading term joins the remainder.
            rem.push((lm, lc));
            continue;
        };
        if let Some(sg) = sugars {
            sugar = sugar.max(sg[gi] + (lm.degree() - g.lm.degree()));
        }
        let gamma = lc.gcd(&g.lc);
        let alpha = &g.lc / &gamma; // positive: reducers are primitive
        // value <- alpha * value - (lc/gamma) * (q * g); the extracted
        // lead accounts for alpha * lc - (lc/gamma) * g.lc = 0.
        if !alpha.is_one() {
            geo.scale(&alpha);
            for (_, c) in &mut rem {
                *c *= &alpha;
            }
        }
        if g.terms.len() > 1 {
            let q = g.lm.div(&lm).unwrap();
            let tail: Vec<ITerm> =
                g.terms[1..].iter().map(|(m, c)| (q.mul(m), c.clone())).collect();
            geo.push(-(&lc / &gamma), tail);
        }
    }
    (rem, sugar)
}

/// Whether `f` reduces to zero under division by `divisors` (any
/// nonzero polynomials, not necessarily a Groebner basis).  A zero
/// remainder always certifies membership in the generated ideal; a
/// nonzero remainder is conclusive only when `divisors` is a Groebner
/// basis.
pub fn reduces_to_zero(f: &Polynomial, divisors: &[Polynomial]) -> bool {
    if f.is_zero() {
        return true;
    }
    let order = f.ring().order();
    let reducers: Vec<Reducer> = divisors.iter().map(Reducer::of).collect();
    pseudo_reduce(order, int_terms_any(f), &reducers, None, None, 0).0.is_empty()
}

/// A pending S-pair, ordered by the sugar selection strategy: sugar
/// degree first, then the lcm under the term order, then indices.
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
    order: TermOrder,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sugar
            .cmp(&other.sugar)
            .then_with(|| cmp_monomials(self.order, &self.lcm, &other.lcm))
            .then_with(|| self.i.cmp(&other.i))
            .then_with(|| self.j.cmp(&other.j))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pair {}

/// Sugar of the S-pair of basis elements `i` and `j`.
fn pair_sugar(sugars: &[u32], reducers: &[Reducer], lcm: &Monomial, i: usize, j: usize) -> u32 {
    let si = sugars[i] + (lcm.degree() - reducers[i].lm.degree());
    let sj = sugars[j] + (lcm.degree() - reducers[j].lm.degree());
    si.max(sj)
}

/// Incremental Groebner-basis engine: generators are added one at a
/// time, S-pairs are pruned at insertion with the Gebauer-Moeller
/// criteria and selected by the sugar strategy, and the basis is
/// completed on demand, after which `contains` is a valid membership
/// test.  The S-pair reduction budget accumulates over the lifetime of
/// the engine.
pub(crate) struct GbEngine {
    ring: PolyRing,
    order: TermOrder,
    basis: Vec<Polynomial>,
    reducers: Vec<Reducer>,
    sugars: Vec<u32>,
    /// Pending S-pairs with lazy deletion via `alive`.
    heap: BinaryHeap<Reverse<Pair>>,
    alive: HashSet<(usize, usize)>,
    reductions: usize,
    unit: bool,
}

impl GbEngine {
    pub(crate) fn new(ring: &PolyRing) -> GbEngine {
        GbEngine {
            ring: ring.clone(),
            order: ring.order(),
            basis: Vec::new(),
            reducers: Vec::new(),
            sugars: Vec::new(),
            heap: BinaryHeap::new(),
            alive: HashSet::new(),
            reductions: 0,
            unit: false,
        }
    }

    /// Seed the engine with a known Groebner basis (no pairs created).
    pub(crate) fn with_basis(ring: &PolyRing, known_gb: &[Polynomial]) -> GbEngine {
        let mut engine = GbEngine::new(ring);
        engine.unit = known_gb.len() == 1 && known_gb[0].is_constant();
        engine.basis = known_gb.to_vec();
        engine.reducers = known_gb.iter().map(Reducer::of).collect();
        engine.sugars = known_gb.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
        engine
    }

    pub(crate) fn is_unit(&self) -> bool {
        self.unit
    }

    /// Membership test against the current completed basis.
    pub(crate) fn contains(&self, f: &Polynomial) -> bool {
        if self.unit || f.is_zero() {
            return true;
        }
        pseudo_reduce(self.order, int_terms_any(f), &self.reducers, None, None, 0)
            .0
            .is_empty()
    }

    /// Add a generator and re-complete the basis.
    pub(crate) fn add(&mut self, f: &Polynomial, limits: &Limits) -> Result<()> {
        self.add_lazy(f)?;
        self.complete(limits)
    }

    /// Add a generator without processing S-pairs.  Until `complete`
    /// runs, `contains` may give false negatives (never false
    /// positives), and the basis still generates the right ideal.
    pub(crate) fn add_lazy(&mut self, f: &Polynomial) -> Result<()> {
        if self.unit || f.is_zero() {
            return Ok(());
        }
        let sugar = f.total_degree().unwrap_or(0);
        let (rem, sugar) =
            pseudo_reduce(self.order, int_terms_any(f), &self.reducers, None, Some(&self.sugars), sugar);
        if rem.is_empty() {
            return Ok(());
        }
        self.append(rem, sugar)
    }

    /// Process pending S-pairs until the basis is complete.
    pub(crate) fn complete(&mut self, limits: &Limits) -> Result<()> {
        self.drain(limits)
    }

    /// Append a nonzero reduced remainder as a new basis element and
    /// enqueue its Gebauer-Moeller-surviving S-pairs.
    fn append(&mut self, rem: Vec<ITerm>, sugar: u32) -> Result<()> {
        let p = terms_to_poly(&self.ring, rem).normalize_primitive()?;
        if p.is_constant() {
            self.unit = true;
            self.basis = vec![self.ring.one()];
            self.reducers = vec![Reducer::of(&self.basis[0])];
            self.sugars = vec![0];
            self.heap.clear();
            self.alive.clear();
            return Ok(());
        }
        let t = self.basis.len();
        self.reducers.push(Reducer::of(&p));
        self.basis.push(p);
        self.sugars.push(sugar);
        let lmt = self.reducers[t].lm.clone();

        // New pairs (i, t), pruned by the Gebauer-Moeller rules: a pair
        // dies when another new pair's lcm divides its lcm (ties keep
        // the smaller index), and coprime pairs die after being allowed
        // to kill others.
        let lcms: Vec<Monomial> =
            (0..t).map(|i| self.reducers[i].lm.lcm(&lmt)).collect();
        let coprime: Vec<bool> =
            (0..t).map(|i| self.reducers[i].lm.coprime(&lmt)).collect();
        let mut keep = vec![true; t];
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    continue;
                }
                if lcms[j].divides(&lcms[i]) && (lcms[j] != lcms[i] || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        // Old pairs (i, j) die when lm_t divides their lcm and both
        // daughter pairs have strictly smaller lcms.
        let dead: Vec<(usize, usize)> = self
            .alive
            .iter()
            .filter(|&&(i, j)| {
                let lcm_ij = self.reducers[i].lm.lcm(&self.reducers[j].lm);
                lmt.divides(&lcm_ij) && lcms[i] != lcm_ij && lcms[j] != lcm_ij
            })
            .cloned()
            .collect();
        for key in dead {
            self.alive.remove(&key);
        }
        for i in 0..t {
            if keep[i] && !coprime[i] {
                let sugar = pair_sugar(&self.sugars, &self.reducers, &lcms[i], i, t);
                self.heap.push(Reverse(Pair {
                    sugar,
                    lcm: lcms[i].clone(),
                    i,
                    j: t,
                    order: self.order,
                }));
                self.alive.insert((i, t));
            }
        }
        Ok(())
    }

    /// Process pending S-pairs until none remain.
    fn drain(&mut self, limits: &Limits) -> Result<()> {
        while let Some(Reverse(pair)) = self.heap.pop() {
            if self.unit {
                return Ok(());
            }
            let (i, j) = (pair.i, pair.j);
            if !self.alive.remove(&(i, j)) {
                continue; // pruned after being enqueued
            }
            self.reductions += 1;
            if self.reductions > limits.gb_budget {
                return Err(Error::Resource(format!(
                    "S-pair reduction budget of {} exhausted",
                    limits.gb_budget
                )));
            }
            let s = spoly_int(self.order, &self.reducers[i], &self.reducers[j]);
            let (rem, sugar) = pseudo_reduce(
                self.order,
                s,
                &self.reducers,
                None,
                Some(&self.sugars),
                pair.sugar,
            );
            if !rem.is_empty() {
                self.append(rem, sugar)?;
            }
        }
        Ok(())
    }

    /// The reduced Groebner basis of the current ideal (a snapshot; the
    /// engine itself keeps its working basis).
    pub(crate) fn reduced(&self) -> Result<Vec<Polynomial>> {
        interreduce(self.basis.clone())
    }
}

/// Minimal subset of a Groebner basis: leading monomials pairwise
/// non-divisible (for equal leading monomials the first is kept).
fn minimize(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut keep: Vec<Polynomial> = Vec::new();
    'outer: for (idx, g) in basis.iter().enumerate() {
        let lmg = g.leading_monomial().unwrap();
        for (jdx, h) in basis.iter().enumerate() {
            if jdx == idx {
                continue;
            }
            let lmh = h.leading_monomial().unwrap();
            if lmh.divides(lmg) && (lmh != lmg || jdx < idx) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    keep
}

/// Minimize and tail-reduce a Groebner basis into the reduced Groebner
/// basis, sorted canonically.
pub(crate) fn interreduce(basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let keep = minimize(basis);
    if keep.is_empty() {
        return Ok(keep);
    }
    let ring = keep[0].ring().clone();
    let order = ring.order();
    let reducers: Vec<Reducer> = keep.iter().map(Reducer::of).collect();
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let (r, _) = pseudo_reduce(order, reducers[i].terms.clone(), &reducers, Some(i), None, 0);
        debug_assert!(!r.is_empty(), "minimal basis element reduced to zero");
        out.push(terms_to_poly(&ring, r).normalize_primitive()?);
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}

/// Reduced Groebner basis of the ideal generated by `gens` under the
/// ring's term order.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial], limits: &Limits) -> Result<Vec<Polynomial>> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| a.cmp_canonical(b));
    let mut engine = GbEngine::new(ring);
    for g in sorted {
        engine.add(g, limits)?;
    }
    engine.reduced()
}

/// Parse the fixture text format for ideals:
/// `#` comment lines, one `vars: x y z` header, then one generator per
/// line in the polynomial text syntax.  The ring uses degrevlex.
pub fn parse_ideal_text(text: &str) -> Result<Ideal> {
    let mut ring: Option<PolyRing> = None;
    let mut gens: Vec<Polynomial> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if ring.is_some() {
                return Err(Error::Parse("duplicate vars: line".into()));
            }
            let vars: Vec<&str> = rest.split_whitespace().collect();
            ring = Some(PolyRing::new(&vars, crate::polyring::TermOrder::DegRevLex)?);
            continue;
        }
        let ring = ring
            .as_ref()
            .ok_or_else(|| Error::Parse("generator before vars: line".into()))?;
        gens.push(crate::polyring::parse_polynomial(ring, line)?);
    }
    let ring = ring.ok_or_else(|| Error::Parse("missing vars: line".into()))?;
    Ideal::new(&ring, gens)
}
