//! Exact linear algebra over polynomial rings and over Q.
//!
//! Determinants are computed by two independent routes: fraction-free
//! Bareiss elimination (used for constant matrices and anything larger
//! than 4x4) and cofactor expansion (small symbolic matrices).  The two
//! must agree; the test suite asserts it on random matrices.
//!
//! `reduce_constant_pivots` performs the classical presentation reduction:
//! a unit entry (nonzero rational) can be cleared by elementary row and
//! column operations and its row and column deleted.  Elementary
//! operations preserve every minor ideal `I_t`, and deleting the pivot
//! shifts `t` by one: `I_t(M) = I_{t-1}(M')`.  The Fitting-stratum
//! computation relies on this to keep minor enumeration desk-scale.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{PolyRing, Polynomial, Rational, TermOrder};

/// Dense row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &PolyRing, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zero(ring: &PolyRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn from_fn(
        ring: &PolyRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        assert!(v.ring() == &self.ring, "ring mismatch");
        self.entries[i * self.cols + j] = v;
    }

    /// The submatrix picked out by row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.at(i, j).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    /// Append a column (used by the presentation-independence tests).
    pub fn with_extra_column(&self, col: &[Polynomial]) -> Result<PolyMatrix> {
        if col.len() != self.rows {
            return Err(Error::InvalidParameter(format!(
                "extra column has {} entries, matrix has {} rows",
                col.len(),
                self.rows
            )));
        }
        for e in col {
            if e.ring() != &self.ring {
                return Err(Error::RingMismatch);
            }
        }
        let mut m = PolyMatrix::zero(&self.ring, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
            m.set(i, self.cols, col[i].clone());
        }
        Ok(m)
    }

    fn is_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    /// Determinant, dispatching between the two exact routes: Bareiss for
    /// constant matrices and for sizes above 4, cofactor expansion for
    /// small symbolic matrices.  The empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<Polynomial> {
        let n = self.is_square()?;
        let all_constant = self.entries.iter().all(|e| e.is_constant());
        if all_constant || n > 4 {
            self.determinant_bareiss()
        } else {
            self.determinant_laplace()
        }
    }

    /// Fraction-free Bareiss elimination with row pivoting.
    pub fn determinant_bareiss(&self) -> Result<Polynomial> {
        let n = self.is_square()?;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            // first nonzero pivot in column k at or below row k
            let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => p,
                None => return Ok(self.ring.zero()),
            };
            if pivot != k {
                m.swap(pivot, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                m[i][k] = self.ring.zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { det.neg() } else { det })
    }

    /// Cofactor (Laplace) expansion along the column with the most zeros.
    pub fn determinant_laplace(&self) -> Result<Polynomial> {
        let n = self.is_square()?;
        fn go(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
            let n = rows.len();
            if n == 0 {
                return m.ring.one();
            }
            if n == 1 {
                return m.at(rows[0], cols[0]).clone();
            }
            // expansion column: most zero entries, ties to the left
            let (ci, _) = cols
                .iter()
                .enumerate()
                .map(|(ci, &c)| (ci, rows.iter().filter(|&&r| m.at(r, c).is_zero()).count()))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap();
            let c = cols[ci];
            let sub_cols: Vec<usize> =
                cols.iter().enumerate().filter(|(i, _)| *i != ci).map(|(_, &x)| x).collect();
            let mut acc = m.ring.zero();
            for (ri, &r) in rows.iter().enumerate() {
                let e = m.at(r, c);
                if e.is_zero() {
                    continue;
                }
                let sub_rows: Vec<usize> =
                    rows.iter().enumerate().filter(|(i, _)| *i != ri).map(|(_, &x)| x).collect();
                let minor = go(m, &sub_rows, &sub_cols);
                let signed = if (ri + ci) % 2 == 0 { &minor * e } else { (&minor * e).neg() };
                acc = &acc + &signed;
            }
            acc
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        Ok(go(self, &rows, &cols))
    }

    /// All `size`-minors: normalized to primitive-integer form, zero minors
    /// dropped, deduplicated up to sign, deterministically sorted.  The
    /// empty list when `size` exceeds a dimension; `[1]` when `size == 0`.
    /// Errors when the number of minors would exceed `cap`.
    pub fn minors(&self, size: usize, cap: usize) -> Result<Vec<Polynomial>> {
        if size == 0 {
            return Ok(vec![self.ring.one()]);
        }
        if size > self.rows || size > self.cols {
            return Ok(Vec::new());
        }
        let count = crate::macaulay::binomial(self.rows as u64, size as u64)
            * crate::macaulay::binomial(self.cols as u64, size as u64);
        if count > BigUint::from(cap) {
            return Err(Error::Resource(format!(
                "{count} minors of size {size} exceed the cap of {cap}"
            )));
        }
        let selections: Vec<(Vec<usize>, Vec<usize>)> = (0..self.rows)
            .combinations(size)
            .cartesian_product((0..self.cols).combinations(size).collect::<Vec<_>>())
            .map(|(r, c)| (r, c))
            .collect();
        let dets: Vec<Polynomial> = if selections.len() > 64 {
            selections
                .par_iter()
                .map(|(r, c)| self.submatrix(r, c).determinant())
                .collect::<Result<Vec<_>>>()?
        } else {
            selections
                .iter()
                .map(|(r, c)| self.submatrix(r, c).determinant())
                .collect::<Result<Vec<_>>>()?
        };
        let mut out = Vec::new();
        for d in dets {
            if !d.is_zero() {
                out.push(d.normalize_primitive()?);
            }
        }
        out.sort_by(|a, b| a.cmp_canonical(b));
        out.dedup();
        Ok(out)
    }

    /// Evaluate all entries at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<RationalMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Rank of the matrix of values at a rational point.
    pub fn rank_at_point(&self, point: &[Rational]) -> Result<usize> {
        Ok(self.evaluate(point)?.rank())
    }

    /// Clear unit pivots: whenever some entry is a nonzero constant, use
    /// elementary operations to zero out its row and column, then delete
    /// both.  Returns the reduced matrix and the number of deletions `t`;
    /// every minor ideal satisfies `I_s(self) = I_{s-t}(reduced)`.
    pub fn reduce_constant_pivots(&self) -> (PolyMatrix, usize) {
        let mut m: Vec<Vec<Polynomial>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut cols = self.cols;
        let mut reductions = 0;
        loop {
            let mut found = None;
            'scan: for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if !e.is_zero() && e.is_constant() {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            let pivot = m[pi][pj].constant_value().expect("constant pivot");
            let inv = pivot.recip();
            // Row operations clear column pj outside the pivot row; after
            // that the pivot column is a multiple of e_pi, so deleting the
            // pivot row and column implements the column operations too.
            let pivot_row = m[pi].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == pi || row[pj].is_zero() {
                    continue;
                }
                let coeff = row[pj].scale(&inv);
                for (j, entry) in row.iter_mut().enumerate() {
                    if j == pj {
                        continue;
                    }
                    let delta = &coeff * &pivot_row[j];
                    *entry = &*entry - &delta;
                }
                row[pj] = self.ring.zero();
            }
            m.remove(pi);
            for row in &mut m {
                row.remove(pj);
            }
            cols -= 1;
            reductions += 1;
        }
        let rows = m.len();
        let entries = m.into_iter().flatten().collect();
        (PolyMatrix { ring: self.ring.clone(), rows, cols, entries }, reductions)
    }
}

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot = match (row..self.rows).find(|&i| !m[i][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            m.swap(pivot, row);
            let pv = m[row][col].clone();
            for i in row + 1..self.rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = &m[i][col] / &pv;
                for j in col..self.cols {
                    let delta = &f * &m[row][j];
                    let v = &m[i][j] - &delta;
                    m[i][j] = v;
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { rows: self.rows, cols: self.cols, entries: self.entries.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let mj: MatrixJson<crate::polyring::RawPoly> = MatrixJson::deserialize(deserializer)?;
        if mj.entries.is_empty() {
            let ring = PolyRing::new::<&str>(&[], TermOrder::DegRevLex).map_err(D::Error::custom)?;
            return PolyMatrix::new(&ring, mj.rows, mj.cols, vec![]).map_err(D::Error::custom);
        }
        let ring = PolyRing::new(&mj.entries[0].vars, TermOrder::DegRevLex)
            .map_err(D::Error::custom)?;
        let entries = mj
            .entries
            .into_iter()
            .map(|rp| rp.into_polynomial(&ring).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PolyMatrix::new(&ring, mj.rows, mj.cols, entries).map_err(D::Error::custom)
    }
}
