//! The Quot-scheme pipeline on standard Grassmannian charts.
//!
//! For a problem (p, r, n, d) — length-n quotients of the free rank-p
//! sheaf on P^r, starting degree d >= n — a chart fixes an n-subset of
//! the monomial basis of F_d = (degree-d part of S^p) whose image spans
//! the universal quotient.  The kernel of the chart's quotient map is
//! spanned by one generator per non-pivot basis element; these generate
//! a graded submodule (the cone), and the cokernel presentations of its
//! graded pieces E_{d+s} yield Fitting ideals Fitt_{n-1}(E_{d+s}) whose
//! union over s cuts out the Quot scheme on the chart.
//!
//! Everything is exact: chart rings over Q, canonical generator
//! normalization, and Groebner certificates for ideal comparisons.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::exactla::PolyMatrix;
use crate::grobner::{ideal_equal, radical_member, GbEngine, Ideal};
use crate::macaulay::{binomial, macaulay_growth, monomial_basis};
use crate::polyring::{Monomial, PolyRing, Polynomial, Rational, TermOrder};
use crate::Limits;

pub mod report;

/// Problem data: length-n quotients of O^p on P^r, chart degree d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotProblem {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub d: u32,
}

impl QuotProblem {
    /// Validates p >= 1, r >= 1, n >= 1 and the regularity hypothesis
    /// d >= n.
    pub fn new(p: u32, r: u32, n: u32, d: u32) -> Result<QuotProblem> {
        if p < 1 {
            return Err(Error::InvalidParameter("sheaf rank p must be at least 1".into()));
        }
        if r < 1 {
            return Err(Error::InvalidParameter(
                "projective-space dimension r must be at least 1".into(),
            ));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("quotient length n must be at least 1".into()));
        }
        if d < n {
            return Err(Error::InvalidParameter(format!(
                "starting degree d = {d} must satisfy d >= n = {n}"
            )));
        }
        Ok(QuotProblem { p, r, n, d })
    }

    /// Names of the coordinate variables of P^r: X, Y, Z, W when they
    /// suffice, X0..Xr otherwise.
    pub fn x_var_names(&self) -> Vec<String> {
        if self.r + 1 <= 4 {
            ["X", "Y", "Z", "W"][..(self.r + 1) as usize]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (0..=self.r).map(|i| format!("X{i}")).collect()
        }
    }

    /// Monomial basis of F_m: component-major, monomials in descending
    /// term order within each component.  Monomials live over the r+1
    /// X-variables.
    pub fn basis(&self, m: u32) -> Vec<(u32, Monomial)> {
        let monos = monomial_basis((self.r + 1) as usize, m, TermOrder::DegRevLex);
        let mut out = Vec::with_capacity(self.p as usize * monos.len());
        for comp in 0..self.p {
            for mono in &monos {
                out.push((comp, mono.clone()));
            }
        }
        out
    }

    /// dim F_m = p * C(m + r, r).
    pub fn basis_dim(&self, m: u32) -> usize {
        let c = binomial((m + self.r) as u64, self.r as u64);
        (BigUint::from(self.p) * c)
            .try_into()
            .expect("basis dimension fits in usize at desk scale")
    }

    /// Human-readable label for a basis element: the monomial alone when
    /// p = 1, otherwise prefixed by the component.
    pub fn basis_label(&self, comp: u32, mono: &Monomial) -> String {
        let xring = PolyRing::new(&self.x_var_names(), TermOrder::DegRevLex)
            .expect("X-variable names are valid");
        let m = crate::polyring::format_monomial(&xring, mono);
        if self.p == 1 {
            m
        } else {
            format!("e{comp}*{m}")
        }
    }
}

/// A standard affine chart of the Grassmannian of rank-n quotients of
/// F_d, given by the n-subset of basis elements mapping to a basis of
/// the quotient.  Chart coordinates are `u1..u_{N-1}` when n = 1 and
/// `phi_<i>_<j>` (pivot i, non-pivot j, global basis indices) otherwise.
#[derive(Clone, Debug)]
pub struct GrassmannChart {
    problem: QuotProblem,
    pivots: Vec<usize>,
    non_pivots: Vec<usize>,
    basis_d: Vec<(u32, Monomial)>,
    chart_ring: PolyRing,
    combined_ring: PolyRing,
}

impl GrassmannChart {
    pub fn new(problem: &QuotProblem, pivots: &[usize]) -> Result<GrassmannChart> {
        let basis_d = problem.basis(problem.d);
        let nn = basis_d.len();
        let n = problem.n as usize;
        if pivots.len() != n {
            return Err(Error::InvalidParameter(format!(
                "chart needs exactly n = {n} pivots, got {}",
                pivots.len()
            )));
        }
        let mut sorted: Vec<usize> = pivots.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n || sorted.last().is_some_and(|&last| last >= nn) {
            return Err(Error::InvalidParameter(format!(
                "pivots must be distinct indices below the basis dimension {nn}"
            )));
        }
        let non_pivots: Vec<usize> = (0..nn).filter(|i| !sorted.contains(i)).collect();
        let mut chart_vars = Vec::with_capacity(n * non_pivots.len());
        if n == 1 {
            for k in 1..=non_pivots.len() {
                chart_vars.push(format!("u{k}"));
            }
        } else {
            for &j in &non_pivots {
                for &i in &sorted {
                    chart_vars.push(format!("phi_{i}_{j}"));
                }
            }
        }
        let chart_ring = PolyRing::new(&chart_vars, TermOrder::DegRevLex)?;
        let mut combined_vars = chart_vars;
        combined_vars.extend(problem.x_var_names());
        let combined_ring = PolyRing::new(&combined_vars, TermOrder::DegRevLex)?;
        Ok(GrassmannChart {
            problem: *problem,
            pivots: sorted,
            non_pivots,
            basis_d,
            chart_ring,
            combined_ring,
        })
    }

    /// The chart with the first n basis elements as pivots.
    pub fn default_chart(problem: &QuotProblem) -> Result<GrassmannChart> {
        let pivots: Vec<usize> = (0..problem.n as usize).collect();
        GrassmannChart::new(problem, &pivots)
    }

    /// Every n-subset of the F_d basis, in lexicographic order.
    pub fn all_pivot_sets(problem: &QuotProblem) -> Vec<Vec<usize>> {
        let nn = problem.basis_dim(problem.d);
        (0..nn).combinations(problem.n as usize).collect()
    }

    /// A deterministic sample of pivot sets: all of them when there are
    /// at most `count`, otherwise the default chart plus seeded random
    /// draws (distinct) up to `count`.
    pub fn sample_pivot_sets(problem: &QuotProblem, count: usize, seed: u64) -> Vec<Vec<usize>> {
        let nn = problem.basis_dim(problem.d);
        let n = problem.n as usize;
        let total = binomial(nn as u64, n as u64);
        if total <= BigUint::from(count) {
            return Self::all_pivot_sets(problem);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut picked: BTreeSet<Vec<usize>> = BTreeSet::new();
        picked.insert((0..n).collect());
        let mut attempts = 0usize;
        while picked.len() < count && attempts < count * 64 {
            let mut set: Vec<usize> = rand::seq::index::sample(&mut rng, nn, n).into_vec();
            set.sort_unstable();
            picked.insert(set);
            attempts += 1;
        }
        picked.into_iter().collect()
    }

    pub fn problem(&self) -> &QuotProblem {
        &self.problem
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> &[usize] {
        &self.non_pivots
    }

    /// Basis of F_d (component, monomial), shared by all degree-d data.
    pub fn basis_d(&self) -> &[(u32, Monomial)] {
        &self.basis_d
    }

    /// Ring of chart coordinates only.
    pub fn chart_ring(&self) -> &PolyRing {
        &self.chart_ring
    }

    /// Chart coordinates followed by the X-variables; module elements
    /// live here.
    pub fn combined_ring(&self) -> &PolyRing {
        &self.combined_ring
    }

    /// Index of the chart variable phi_{pivot_pos, nonpivot_pos}.
    fn phi_index(&self, pivot_pos: usize, nonpivot_pos: usize) -> usize {
        nonpivot_pos * self.pivots.len() + pivot_pos
    }

    /// The chart variable phi_{i,j} as a chart-ring polynomial, indexed
    /// by position within the pivot and non-pivot lists.
    pub fn phi(&self, pivot_pos: usize, nonpivot_pos: usize) -> Polynomial {
        self.chart_ring.var(self.phi_index(pivot_pos, nonpivot_pos))
    }

    /// Image of the j-th basis element of F_d under the universal
    /// quotient map, as a vector over the n pivot images (chart-ring
    /// entries).  Pivot columns form the identity.
    pub fn quotient_image(&self, j: usize) -> Vec<Polynomial> {
        let n = self.pivots.len();
        if let Some(t) = self.pivots.iter().position(|&i| i == j) {
            (0..n)
                .map(|s| if s == t { self.chart_ring.one() } else { self.chart_ring.zero() })
                .collect()
        } else {
            let k = self
                .non_pivots
                .iter()
                .position(|&i| i == j)
                .expect("index is either pivot or non-pivot");
            (0..n).map(|t| self.phi(t, k)).collect()
        }
    }

    /// Embed an X-monomial into the combined ring (chart exponents 0).
    fn lift_x_monomial(&self, x: &Monomial) -> Monomial {
        let nc = self.chart_ring.nvars();
        let mut e = vec![0u32; self.combined_ring.nvars()];
        e[nc..].copy_from_slice(x.exponents());
        Monomial::new(e)
    }

    /// Split a combined-ring monomial into (chart part, X part).
    fn split_monomial(&self, m: &Monomial) -> (Monomial, Monomial) {
        let nc = self.chart_ring.nvars();
        let e = m.exponents();
        (Monomial::new(e[..nc].to_vec()), Monomial::new(e[nc..].to_vec()))
    }
}

/// An element of the graded module F = S^p over the chart: p components
/// in the combined ring, each homogeneous of fixed degree in the
/// X-variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement {
    degree: u32,
    components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Check the grading invariant: every term of every component has
    /// X-degree equal to the element's degree.
    pub fn is_homogeneous(&self, chart: &GrassmannChart) -> bool {
        self.components.iter().all(|c| {
            c.terms().iter().all(|(m, _)| {
                let (_, x) = chart.split_monomial(m);
                x.degree() == self.degree
            })
        })
    }

    /// Multiply by an X-monomial, raising the degree by its total degree.
    pub fn mul_x_monomial(&self, chart: &GrassmannChart, x: &Monomial) -> ModuleElement {
        let lifted = chart.lift_x_monomial(x);
        let one = Rational::from(num_bigint::BigInt::from(1));
        ModuleElement {
            degree: self.degree + x.degree(),
            components: self.components.iter().map(|c| c.mul_term(&lifted, &one)).collect(),
        }
    }

    /// Coefficient vector over the monomial basis of F_m, entries in the
    /// chart ring.  Errors if the element is not homogeneous of degree m.
    pub fn coefficients(&self, chart: &GrassmannChart, m: u32) -> Result<Vec<Polynomial>> {
        if self.degree != m || !self.is_homogeneous(chart) {
            return Err(Error::InvalidParameter(format!(
                "module element of degree {} expanded at degree {m}",
                self.degree
            )));
        }
        let basis = chart.problem.basis(m);
        let index: HashMap<(u32, &[u32]), usize> = basis
            .iter()
            .enumerate()
            .map(|(row, (comp, mono))| ((*comp, mono.exponents()), row))
            .collect();
        let mut cells: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); basis.len()];
        for (comp, poly) in self.components.iter().enumerate() {
            for (mono, coeff) in poly.terms() {
                let (chart_part, x_part) = chart.split_monomial(mono);
                let row = index[&(comp as u32, x_part.exponents())];
                cells[row].push((chart_part, coeff.clone()));
            }
        }
        Ok(cells
            .into_iter()
            .map(|terms| Polynomial::from_terms(&chart.chart_ring, terms))
            .collect())
    }
}

/// The cone submodule R ⊆ F generated in degree d by the chart's
/// universal kernel, with its kernel generators precomputed.
#[derive(Clone, Debug)]
pub struct ConeModule {
    chart: GrassmannChart,
    kernel_gens: Vec<ModuleElement>,
}

/// One kernel generator per non-pivot basis element:
/// g_j = e_j - sum_{i in J} phi_{i,j} e_i.
pub fn chart_kernel(chart: &GrassmannChart) -> ConeModule {
    let ring = chart.combined_ring().clone();
    let p = chart.problem.p as usize;
    let d = chart.problem.d;
    let minus_one = Rational::from(num_bigint::BigInt::from(-1));
    let one = Rational::from(num_bigint::BigInt::from(1));
    let mut kernel_gens = Vec::with_capacity(chart.non_pivots.len());
    for (k, &j) in chart.non_pivots.iter().enumerate() {
        let mut components = vec![ring.zero(); p];
        let (cj, mj) = &chart.basis_d[j];
        let ej = chart.lift_x_monomial(mj);
        components[*cj as usize] = &components[*cj as usize] + &ring.term(ej, one.clone());
        for (t, &i) in chart.pivots.iter().enumerate() {
            let (ci, mi) = &chart.basis_d[i];
            let mut e = chart.lift_x_monomial(mi).exponents().to_vec();
            e[chart.phi_index(t, k)] += 1;
            let term = ring.term(Monomial::new(e), minus_one.clone());
            components[*ci as usize] = &components[*ci as usize] + &term;
        }
        kernel_gens.push(ModuleElement { degree: d, components });
    }
    ConeModule { chart: chart.clone(), kernel_gens }
}

/// Evidence that, on a P^1 chart (r = 1), every Fitting stratum s >= 2
/// is contained in the s = 1 stratum ideal J, so the cumulative chain
/// is constant from the first stratum on.
///
/// Write the kernel generators g_1..g_t and the two coordinates X, Y.
/// The degree-(d+1) presentation psi has column pairs X g_j, Y g_j; for
/// a p-subset P let T_P be all X-columns plus the Y-columns with j in
/// P, so |T_P| = t + p = rank bound t'.  The certificate checks
///
///     1 in J + sum_P I_{t'}(psi[., T_P])
///
/// which suffices exactly, not just up to radical:
///
/// * Cramer: for f = det psi[R, T_P], expanding the (t'+1)-minors on
///   rows R + {rho} and columns T_P + {c} (all of which lie in J by the
///   definition of the stratum) gives f * c in span(T_P columns) + J*F
///   for every column c of psi.
/// * Induction on s: with cert_s = {X^s g_j : all j} + {X^(s-i) Y^i g_j
///   : 1 <= i <= s, j in P} (cardinality t + sp, one less than the
///   stratum-s minor size), multiplying the level-s relation by X or Y
///   and re-expanding the escapes X^s Y g_j (j not in P) through the
///   level-1 relation yields f^s * (any column of psi_{d+s}) in
///   span(cert_s) + J*F.
/// * A stratum-s minor whose columns are so rewritten is a determinant
///   of t+sp+1 vectors from a span of t+sp columns plus J-corrections,
///   hence f^(s * size) * minor lies in J.
/// * Writing 1 = j + sum a_k f_k from the unit check and raising to a
///   high enough power places every minor in J itself.
///
/// The unit check is genuine: it verifies that at every point of V(J)
/// some special column set T_P stays full-rank, which is exactly the
/// local-freeness claim and fails when the chain actually grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationCertificate {
    /// Special column sets examined (one per p-subset of the kernel
    /// generators).
    pub column_sets: usize,
    /// Column sets whose localizing minor ideal collapsed to the unit
    /// ideal outright during constant-pivot reduction.
    pub unit_column_sets: usize,
    /// Generators fed to the unit-ideal check (stratum-1 generators
    /// plus the collected localizing minors, deduplicated).
    pub witness_generators: usize,
}

/// Fitting stratum data: the ideal of (N_m - k)-minors of the degree-m
/// presentation, m = d + s, together with the matrix bookkeeping.
#[derive(Clone, Debug)]
pub struct FittingStratum {
    pub s: u32,
    pub degree: u32,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub pivots_removed: usize,
    /// N_m - k before pivot reduction; can drop to zero or below for
    /// large k (unit ideal by convention).
    pub minor_size: i64,
    pub ideal: Ideal,
}

impl ConeModule {
    pub fn chart(&self) -> &GrassmannChart {
        &self.chart
    }

    pub fn kernel_generators(&self) -> &[ModuleElement] {
        &self.kernel_gens
    }

    /// Degree-m component generators of the cone, direct route: every
    /// kernel generator multiplied by every X-monomial of degree m - d.
    /// Columns are generator-major, multipliers in descending term order.
    pub fn component_generators(&self, m: u32) -> Result<Vec<ModuleElement>> {
        let d = self.chart.problem.d;
        if m < d {
            return Err(Error::InvalidParameter(format!(
                "component degree {m} below generation degree {d}"
            )));
        }
        let multipliers =
            monomial_basis((self.chart.problem.r + 1) as usize, m - d, TermOrder::DegRevLex);
        let mut out = Vec::with_capacity(self.kernel_gens.len() * multipliers.len());
        for g in &self.kernel_gens {
            for mu in &multipliers {
                out.push(g.mul_x_monomial(&self.chart, mu));
            }
        }
        Ok(out)
    }

    /// Same module component, generated stepwise: multiply the degree
    /// m-1 generators by each single variable.  Redundant generating set
    /// used by the well-definedness tests.
    pub fn component_generators_stepwise(&self, m: u32) -> Result<Vec<ModuleElement>> {
        let d = self.chart.problem.d;
        if m < d {
            return Err(Error::InvalidParameter(format!(
                "component degree {m} below generation degree {d}"
            )));
        }
        let nx = (self.chart.problem.r + 1) as usize;
        let mut gens = self.kernel_gens.clone();
        for _ in d..m {
            let mut next = Vec::with_capacity(gens.len() * nx);
            for g in &gens {
                for v in 0..nx {
                    let mut e = vec![0u32; nx];
                    e[v] = 1;
                    next.push(g.mul_x_monomial(&self.chart, &Monomial::new(e)));
                }
            }
            gens = next;
        }
        Ok(gens)
    }

    /// Presentation matrix of E_m over the chart ring: one row per basis
    /// element of F_m, one column per element of `gens`.
    pub fn presentation_matrix_of(
        &self,
        gens: &[ModuleElement],
        m: u32,
    ) -> Result<PolyMatrix> {
        let rows = self.chart.problem.basis_dim(m);
        let ring = self.chart.chart_ring();
        let mut entries = vec![ring.zero(); rows * gens.len()];
        for (col, g) in gens.iter().enumerate() {
            for (row, coeff) in g.coefficients(&self.chart, m)?.into_iter().enumerate() {
                entries[row * gens.len() + col] = coeff;
            }
        }
        PolyMatrix::new(ring, rows, gens.len(), entries)
    }

    /// Presentation matrix of E_m from the direct component generators.
    pub fn presentation_matrix(&self, m: u32) -> Result<PolyMatrix> {
        let gens = self.component_generators(m)?;
        self.presentation_matrix_of(&gens, m)
    }

    /// Fitt_k(E_{d+s}) as an ideal in the chart ring.  Conventions:
    /// k < 0 gives the zero ideal, minor size <= 0 the unit ideal, minor
    /// size beyond the matrix dimensions the zero ideal.  Constant pivots
    /// are eliminated first (I_t(psi) = I_{t-red}(psi')), which keeps the
    /// minor count under the cap.
    pub fn fitting_stratum(&self, s: u32, k: i64, limits: &Limits) -> Result<FittingStratum> {
        if s < 1 {
            return Err(Error::InvalidParameter("stratum offset s must be at least 1".into()));
        }
        let m = self.chart.problem.d + s;
        let psi = self.presentation_matrix(m)?;
        let ring = self.chart.chart_ring();
        let size = psi.rows() as i64 - k;
        let mut stratum = FittingStratum {
            s,
            degree: m,
            matrix_rows: psi.rows(),
            matrix_cols: psi.cols(),
            pivots_removed: 0,
            minor_size: size,
            ideal: Ideal::zero(ring),
        };
        if k < 0 {
            return Ok(stratum);
        }
        if size <= 0 {
            stratum.ideal = Ideal::new(ring, vec![ring.one()])?;
            return Ok(stratum);
        }
        if size as usize > psi.rows().min(psi.cols()) {
            return Ok(stratum);
        }
        let (reduced, removed) = psi.reduce_constant_pivots();
        stratum.pivots_removed = removed;
        let size = size - removed as i64;
        if size <= 0 {
            stratum.ideal = Ideal::new(ring, vec![ring.one()])?;
            return Ok(stratum);
        }
        if size as usize > reduced.rows().min(reduced.cols()) {
            return Ok(stratum);
        }
        let minors = reduced.minors(size as usize, limits.minor_cap)?;
        stratum.ideal = Ideal::new(ring, minors)?;
        Ok(stratum)
    }

    /// Attempt the r = 1 stabilization certificate against the given
    /// s = 1 stratum ideal (see [`StabilizationCertificate`]).  Returns
    /// `Ok(None)` when the chart is not over P^1, when the unit-ideal
    /// check does not go through, or when it runs out of budget; the
    /// caller is then expected to fall back to stratum enumeration.
    pub fn stabilization_certificate(
        &self,
        stratum1: &Ideal,
        limits: &Limits,
    ) -> Result<Option<StabilizationCertificate>> {
        let problem = &self.chart.problem;
        if problem.r != 1 {
            return Ok(None);
        }
        let p = problem.p as usize;
        let t = self.kernel_gens.len();
        if p > t {
            return Ok(None);
        }
        let ring = self.chart.chart_ring();
        let psi = self.presentation_matrix(problem.d + 1)?;
        // Columns are generator-major with multipliers in descending
        // term order, so column 2j is X g_j and column 2j + 1 is Y g_j.
        debug_assert_eq!(psi.cols(), 2 * t);
        let all_rows: Vec<usize> = (0..psi.rows()).collect();
        let mut witnesses: Vec<Polynomial> = stratum1.generators().to_vec();
        let mut column_sets = 0usize;
        let mut unit_column_sets = 0usize;
        let mut saturated = false;
        for pset in (0..t).combinations(p) {
            column_sets += 1;
            let mut cols: Vec<usize> = (0..t).map(|j| 2 * j).collect();
            cols.extend(pset.iter().map(|&j| 2 * j + 1));
            cols.sort_unstable();
            let sub = psi.submatrix(&all_rows, &cols);
            let (red, removed) = sub.reduce_constant_pivots();
            let size = (t + p) as i64 - removed as i64;
            if size <= 0 {
                // The localizing ideal is already the unit ideal: this
                // column set is a basis everywhere on the chart.
                unit_column_sets += 1;
                witnesses.push(ring.one());
                saturated = true;
                break;
            }
            if size as usize > red.rows().min(red.cols()) {
                continue; // zero contribution
            }
            match red.minors(size as usize, limits.minor_cap) {
                Ok(ms) => witnesses.extend(ms),
                // Skipping a column set only weakens the witness set,
                // never its soundness.
                Err(Error::Resource(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        witnesses.sort_by(|a, b| a.cmp_canonical(b));
        witnesses.dedup();
        let witness_generators = witnesses.len();
        let certificate = StabilizationCertificate {
            column_sets,
            unit_column_sets,
            witness_generators,
        };
        if saturated {
            return Ok(Some(certificate));
        }
        let mut engine = GbEngine::new(ring);
        for g in &witnesses {
            engine.add_lazy(g)?;
            if engine.is_unit() {
                return Ok(Some(certificate));
            }
        }
        match engine.complete(limits) {
            Ok(()) => {}
            Err(Error::Resource(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
        Ok(if engine.is_unit() { Some(certificate) } else { None })
    }

    /// Gasharov-style fiber check: at `trials` seeded random rational
    /// points of the chart, dim E_d must equal n and each step
    /// dim E_{t+1} <= (dim E_t)^<t> must hold up to degree m.  Vacuously
    /// true on a chart without coordinates.
    pub fn fiber_dimension_check(&self, m: u32, trials: u32, seed: u64) -> Result<bool> {
        let problem = &self.chart.problem;
        let d = problem.d;
        if m < d {
            return Err(Error::InvalidParameter(format!(
                "fiber check degree {m} below starting degree {d}"
            )));
        }
        let nc = self.chart.chart_ring().nvars();
        if nc == 0 {
            return Ok(true);
        }
        let matrices = (d..=m)
            .map(|t| self.presentation_matrix(t))
            .collect::<Result<Vec<_>>>()?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let point: Vec<Rational> = (0..nc)
                .map(|_| {
                    Rational::new(
                        num_bigint::BigInt::from(rng.random_range(-10i64..=10)),
                        num_bigint::BigInt::from(rng.random_range(1i64..=5)),
                    )
                })
                .collect();
            let mut prev: u64 = 0;
            for (idx, psi) in matrices.iter().enumerate() {
                let t = d + idx as u32;
                let dim = problem.basis_dim(t) - psi.rank_at_point(&point)?;
                if idx == 0 {
                    if dim != problem.n as usize {
                        return Ok(false);
                    }
                } else if BigUint::from(dim) > macaulay_growth(prev, t - 1)? {
                    return Ok(false);
                }
                prev = dim as u64;
            }
        }
        Ok(true)
    }
}

/// Whether the cumulative chain was observed to stabilize within s_max.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// Cumulative ideal at `offset` already equals the one at s_max.
    Certified { offset: u32 },
    /// The chain was still growing at s_max; nothing is certified.
    NotCertified { checked: u32 },
}

/// Full per-chart analysis: strata, pruned cumulative generators, and
/// stabilization bookkeeping.
#[derive(Clone, Debug)]
pub struct ChartAnalysis {
    /// The strata whose minors were enumerated (always s = 1; later
    /// strata too when no certificate applies).
    pub strata: Vec<FittingStratum>,
    /// Per enumerated stratum, the generators that survived pruning
    /// against the cumulative ideal of the earlier strata.
    pub new_generators: Vec<Vec<Polynomial>>,
    /// Cumulative ideal after each stratum s = 1..=s_max.
    pub cumulative: Vec<Ideal>,
    /// The chart equations: cumulative ideal at s_max with the pruned
    /// generator list.
    pub equations: Ideal,
    pub stabilization: Stabilization,
    /// When present, strata 2..=s_max were not enumerated: the
    /// certificate places them inside the s = 1 stratum ideal.
    pub certificate: Option<StabilizationCertificate>,
}

/// Run the pipeline on one chart: strata s = 1..=s_max of Fitt_{n-1},
/// incremental pruning of redundant minors, and stabilization detection.
/// Over P^1 the strata past s = 1 are handled by the localization
/// certificate when it applies; enumeration is the fallback.
pub fn analyze_chart(chart: &GrassmannChart, s_max: u32, limits: &Limits) -> Result<ChartAnalysis> {
    if s_max < 1 {
        return Err(Error::InvalidParameter("s_max must be at least 1".into()));
    }
    let cone = chart_kernel(chart);
    let ring = chart.chart_ring();
    let k = chart.problem().n as i64 - 1;
    let mut accepted: Vec<Polynomial> = Vec::new();
    let mut strata = Vec::new();
    let mut new_generators = Vec::new();
    let mut cumulative: Vec<Ideal> = Vec::new();
    let mut certificate = None;
    for s in 1..=s_max {
        if s == 2 {
            certificate = cone.stabilization_certificate(&cumulative[0], limits)?;
        }
        if s >= 2 && certificate.is_some() {
            // Certified: the stratum adds nothing to the chain.
            let last = cumulative.last().expect("s = 1 ran").clone();
            cumulative.push(last);
            continue;
        }
        let stratum = cone.fitting_stratum(s, k, limits)?;
        // A stratum generator is new when it is not in the cumulative
        // ideal of the earlier strata.  At s = 1 everything is new; for
        // deeper strata the previous cumulative ideal supplies a cached
        // Groebner basis, so a Buchberger run happens only when a
        // stratum really gets enumerated past the first.
        let new_here = if s == 1 {
            stratum.ideal.generators().to_vec()
        } else {
            let prev = cumulative.last().expect("s = 1 ran");
            let gb = prev.groebner_basis(limits)?;
            let engine = GbEngine::with_basis(ring, gb);
            let mut fresh = Vec::new();
            for g in stratum.ideal.generators() {
                if !engine.contains(g) {
                    fresh.push(g.clone());
                }
            }
            fresh
        };
        accepted.extend(new_here.iter().cloned());
        cumulative.push(Ideal::new(ring, accepted.clone())?);
        new_generators.push(new_here);
        strata.push(stratum);
    }
    let equations = cumulative.last().expect("s_max >= 1").clone();
    let mut stabilization = Stabilization::NotCertified { checked: s_max };
    for (idx, v) in cumulative.iter().enumerate() {
        let s = idx as u32 + 1;
        if s == s_max {
            break;
        }
        if ideal_equal(v, &equations, limits)? {
            stabilization = Stabilization::Certified { offset: s };
            break;
        }
    }
    Ok(ChartAnalysis { strata, new_generators, cumulative, equations, stabilization, certificate })
}

/// The chart's Quot-scheme equations: cumulative Fitting ideal at s_max.
pub fn quot_equations(chart: &GrassmannChart, s_max: u32, limits: &Limits) -> Result<Ideal> {
    Ok(analyze_chart(chart, s_max, limits)?.equations)
}

/// Smallest offset whose cumulative ideal equals the one at s_max, when
/// certifiable within the budget of strata.
pub fn stabilization_offset(
    chart: &GrassmannChart,
    s_max: u32,
    limits: &Limits,
) -> Result<Stabilization> {
    if s_max < 2 {
        return Err(Error::InvalidParameter(
            "stabilization needs s_max >= 2 to compare strata".into(),
        ));
    }
    Ok(analyze_chart(chart, s_max, limits)?.stabilization)
}

/// Set-theoretic sufficiency of the first stratum: every generator of
/// the strata s = 2..=s_max lies in the radical of the s = 1 stratum.
pub fn radical_stability_check(
    chart: &GrassmannChart,
    s_max: u32,
    limits: &Limits,
) -> Result<bool> {
    if s_max < 2 {
        return Err(Error::InvalidParameter(
            "radical check needs s_max >= 2 to compare strata".into(),
        ));
    }
    let cone = chart_kernel(chart);
    let k = chart.problem().n as i64 - 1;
    let base = cone.fitting_stratum(1, k, limits)?.ideal;
    for s in 2..=s_max {
        let stratum = cone.fitting_stratum(s, k, limits)?;
        for g in stratum.ideal.generators() {
            if !radical_member(g, &base, limits)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of homogenizing a chart ideal (n = 1 only): the ideal in the
/// projective coordinate ring of P^{N-1} with one variable per basis
/// element of F_d, plus the variable alias table.
#[derive(Clone, Debug)]
pub struct HomogenizedIdeal {
    pub ring: PolyRing,
    /// Pairs (variable name, basis-element label), in variable order.
    pub aliases: Vec<(String, String)>,
    pub ideal: Ideal,
}

/// Names of the homogeneous variables: single letters when the basis is
/// small enough, otherwise one identifier per (component, exponents).
fn homogeneous_var_names(basis: &[(u32, Monomial)]) -> Vec<String> {
    if basis.len() <= 26 {
        (0..basis.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        basis
            .iter()
            .map(|(comp, mono)| {
                let exps =
                    mono.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_");
                format!("x{comp}_{exps}")
            })
            .collect()
    }
}

/// Homogenize a chart ideal on a rank-one chart: substitute the chart
/// coordinates by ratios x_j / x_pivot, clear denominators, and saturate
/// by the pivot variable (Groebner basis in an order with the pivot
/// variable cheapest, then strip pivot powers).  The result is expressed
/// in the canonical homogeneous ring with variables in basis order.
pub fn homogenize_chart_ideal(
    chart: &GrassmannChart,
    ideal: &Ideal,
    limits: &Limits,
) -> Result<HomogenizedIdeal> {
    let problem = chart.problem();
    if problem.n != 1 {
        return Err(Error::HomogenizeRank(problem.n));
    }
    if ideal.ring() != chart.chart_ring() {
        return Err(Error::RingMismatch);
    }
    let basis = chart.basis_d();
    let names = homogeneous_var_names(basis);
    let canonical = PolyRing::new(&names, TermOrder::DegRevLex)?;
    let aliases: Vec<(String, String)> = basis
        .iter()
        .zip(&names)
        .map(|((comp, mono), name)| (name.clone(), problem.basis_label(*comp, mono)))
        .collect();

    // Working ring: non-pivot variables first, the pivot last, so that
    // degrevlex makes the pivot the cheapest variable and a Groebner
    // basis can be stripped of pivot powers to saturate.
    let pivot = chart.pivots()[0];
    let mut work_names: Vec<String> =
        chart.non_pivots().iter().map(|&j| names[j].clone()).collect();
    work_names.push(names[pivot].clone());
    let work_ring = PolyRing::new(&work_names, TermOrder::DegRevLex)?;
    let nu = chart.non_pivots().len();

    let mut homogenized = Vec::new();
    for f in ideal.generators() {
        let deg = f.total_degree().expect("nonzero generator");
        let lifted = f.map_monomials(&work_ring, |mono| {
            let mut e = vec![0u32; nu + 1];
            e[..nu].copy_from_slice(mono.exponents());
            e[nu] = deg - mono.degree();
            Monomial::new(e)
        });
        homogenized.push(lifted);
    }
    let gb = crate::grobner::buchberger(&work_ring, &homogenized, limits)?;
    let saturated: Vec<Polynomial> = gb
        .iter()
        .map(|g| {
            let drop = g.min_exponent(nu);
            g.map_monomials(&work_ring, |mono| {
                let mut e = mono.exponents().to_vec();
                e[nu] -= drop;
                Monomial::new(e)
            })
        })
        .collect();
    // Canonical reduced basis of the saturation, then map variables back
    // to basis order.
    let reduced = crate::grobner::buchberger(&work_ring, &saturated, limits)?;
    let mut var_map = vec![0usize; nu + 1];
    for (k, &j) in chart.non_pivots().iter().enumerate() {
        var_map[k] = j;
    }
    var_map[nu] = pivot;
    let mut gens = Vec::with_capacity(reduced.len());
    for g in &reduced {
        let mapped = g.map_monomials(&canonical, |mono| {
            let mut e = vec![0u32; names.len()];
            for (k, &exp) in mono.exponents().iter().enumerate() {
                e[var_map[k]] = exp;
            }
            Monomial::new(e)
        });
        if !mapped.is_zero() {
            gens.push(mapped.normalize_primitive()?);
        }
    }
    gens.sort_by(|a, b| a.cmp_canonical(b));
    gens.dedup();
    Ok(HomogenizedIdeal { ring: canonical.clone(), aliases, ideal: Ideal::new(&canonical, gens)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn limits() -> Limits {
        Limits::default()
    }

    fn p1xp1() -> QuotProblem {
        QuotProblem::new(2, 1, 1, 1).unwrap()
    }

    fn p2_plane() -> QuotProblem {
        QuotProblem::new(2, 2, 1, 1).unwrap()
    }

    #[test]
    fn problem_validation() {
        assert!(QuotProblem::new(1, 1, 2, 2).is_ok());
        assert!(matches!(QuotProblem::new(1, 1, 3, 2), Err(Error::InvalidParameter(_))));
        assert!(matches!(QuotProblem::new(0, 1, 1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(QuotProblem::new(1, 0, 1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(QuotProblem::new(1, 1, 0, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn basis_shapes() {
        let pr = p1xp1();
        assert_eq!(pr.x_var_names(), vec!["X", "Y"]);
        assert_eq!(pr.basis_dim(1), 4);
        let basis = pr.basis(1);
        let labels: Vec<String> =
            basis.iter().map(|(c, m)| pr.basis_label(*c, m)).collect();
        assert_eq!(labels, vec!["e0*X", "e0*Y", "e1*X", "e1*Y"]);
        // p = 1 drops the component prefix; degree-2 monomials descend
        let hilb = QuotProblem::new(1, 1, 2, 2).unwrap();
        let labels: Vec<String> =
            hilb.basis(2).iter().map(|(c, m)| hilb.basis_label(*c, m)).collect();
        assert_eq!(labels, vec!["X^2", "X*Y", "Y^2"]);
        // many variables fall back to indexed names
        let big = QuotProblem::new(1, 5, 1, 1).unwrap();
        assert_eq!(big.x_var_names(), vec!["X0", "X1", "X2", "X3", "X4", "X5"]);
    }

    #[test]
    fn chart_variables_and_validation() {
        let pr = p1xp1();
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        assert_eq!(chart.pivots(), &[0]);
        assert_eq!(chart.non_pivots(), &[1, 2, 3]);
        assert_eq!(chart.chart_ring().vars(), &["u1", "u2", "u3"]);
        assert_eq!(chart.combined_ring().vars(), &["u1", "u2", "u3", "X", "Y"]);
        let hilb = QuotProblem::new(1, 1, 2, 2).unwrap();
        let chart = GrassmannChart::new(&hilb, &[0, 2]).unwrap();
        assert_eq!(chart.chart_ring().vars(), &["phi_0_1", "phi_2_1"]);
        assert!(GrassmannChart::new(&pr, &[0, 1]).is_err());
        assert!(GrassmannChart::new(&pr, &[4]).is_err());
        assert!(GrassmannChart::new(&hilb, &[1, 1]).is_err());
    }

    #[test]
    fn pivot_set_enumeration() {
        let pr = p1xp1();
        assert_eq!(GrassmannChart::all_pivot_sets(&pr).len(), 4);
        let hilb = QuotProblem::new(1, 1, 2, 2).unwrap();
        assert_eq!(GrassmannChart::all_pivot_sets(&hilb), vec![
            vec![0, 1],
            vec![0, 2],
            vec![1, 2]
        ]);
        // sampling: all sets when few, deterministic subset when many
        assert_eq!(GrassmannChart::sample_pivot_sets(&pr, 10, 7).len(), 4);
        let big = QuotProblem::new(3, 1, 3, 3).unwrap();
        let sample = GrassmannChart::sample_pivot_sets(&big, 6, 7);
        assert_eq!(sample.len(), 6);
        assert!(sample.contains(&vec![0, 1, 2]));
        assert_eq!(sample, GrassmannChart::sample_pivot_sets(&big, 6, 7));
        for set in &sample {
            assert_eq!(set.len(), 3);
            assert!(set.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn kernel_generators_match_worked_example() {
        // pivot a = (e0, X); generators g1 = (-u1 X + Y, 0),
        // g2 = (-u2 X, X), g3 = (-u3 X, Y)
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let cone = chart_kernel(&chart);
        let ring = chart.combined_ring();
        let gens = cone.kernel_generators();
        assert_eq!(gens.len(), 3);
        let expect = |s: &str| parse_polynomial(ring, s).unwrap();
        assert_eq!(gens[0].components(), &[expect("-u1*X + Y"), ring.zero()]);
        assert_eq!(gens[1].components(), &[expect("-u2*X"), expect("X")]);
        assert_eq!(gens[2].components(), &[expect("-u3*X"), expect("Y")]);
        for g in gens {
            assert!(g.is_homogeneous(&chart));
            assert_eq!(g.degree(), 1);
        }
    }

    #[test]
    fn quotient_map_annihilates_kernel() {
        // q(g_j) = 0 as an exact identity, on every chart of several
        // desk-scale problems
        for pr in [p1xp1(), p2_plane(), QuotProblem::new(1, 1, 2, 2).unwrap()] {
            for pivots in GrassmannChart::all_pivot_sets(&pr) {
                let chart = GrassmannChart::new(&pr, &pivots).unwrap();
                let cone = chart_kernel(&chart);
                for g in cone.kernel_generators() {
                    let coeffs = g.coefficients(&chart, pr.d).unwrap();
                    let n = pr.n as usize;
                    let mut image = vec![chart.chart_ring().zero(); n];
                    for (j, c) in coeffs.iter().enumerate() {
                        for (t, q) in chart.quotient_image(j).iter().enumerate() {
                            image[t] = &image[t] + &(c * q);
                        }
                    }
                    assert!(image.iter().all(|p| p.is_zero()));
                }
            }
        }
    }

    #[test]
    fn smallest_chart_presentation() {
        // p=1, r=1, n=1, d=1, pivot X: one generator g = -u1 X + Y;
        // degree-2 presentation over basis {X^2, XY, Y^2} is
        // [[-u1, 0], [1, -u1], [0, 1]]
        let pr = QuotProblem::new(1, 1, 1, 1).unwrap();
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        let cone = chart_kernel(&chart);
        let psi = cone.presentation_matrix(2).unwrap();
        assert_eq!((psi.rows(), psi.cols()), (3, 2));
        let r = chart.chart_ring();
        let u = r.var(0);
        assert_eq!(psi.at(0, 0), &u.neg());
        assert_eq!(psi.at(0, 1), &r.zero());
        assert_eq!(psi.at(1, 0), &r.one());
        assert_eq!(psi.at(1, 1), &u.neg());
        assert_eq!(psi.at(2, 0), &r.zero());
        assert_eq!(psi.at(2, 1), &r.one());
    }

    #[test]
    fn worked_example_psi2_matrix() {
        // The 6x6 degree-2 presentation on the pivot-a chart equals the
        // displayed matrix with a = 1, b = u1, c = u2, d = u3: rows
        // (X^2, XY, Y^2) per component, columns (X g1, Y g1, .., Y g3).
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let cone = chart_kernel(&chart);
        let psi = cone.presentation_matrix(2).unwrap();
        assert_eq!((psi.rows(), psi.cols()), (6, 6));
        let r = chart.chart_ring();
        let expected = [
            ["-u1", "0", "-u2", "0", "-u3", "0"],
            ["1", "-u1", "0", "-u2", "0", "-u3"],
            ["0", "1", "0", "0", "0", "0"],
            ["0", "0", "1", "0", "0", "0"],
            ["0", "0", "0", "1", "1", "0"],
            ["0", "0", "0", "0", "0", "1"],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(
                    psi.at(i, j),
                    &parse_polynomial(r, cell).unwrap(),
                    "entry ({i},{j})"
                );
            }
        }
        let det = psi.determinant().unwrap().normalize_primitive().unwrap();
        assert_eq!(det, parse_polynomial(r, "u1*u2 - u3").unwrap());
    }

    #[test]
    fn fitting_stratum_worked_examples() {
        let lim = limits();
        // rank-one chart on the product example: Fitt_0(E_2) = (u1 u2 - u3)
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let cone = chart_kernel(&chart);
        let st = cone.fitting_stratum(1, 0, &lim).unwrap();
        let r = chart.chart_ring();
        assert_eq!(st.ideal.generators(), &[parse_polynomial(r, "u1*u2 - u3").unwrap()]);
        assert_eq!((st.matrix_rows, st.matrix_cols), (6, 6));
        assert_eq!(st.minor_size, 6);
        // conventions
        let zero = cone.fitting_stratum(1, -1, &lim).unwrap();
        assert!(zero.ideal.is_zero_ideal());
        let unit = cone.fitting_stratum(1, 6, &lim).unwrap();
        assert!(unit.ideal.is_unit_ideal(&lim).unwrap());
        // wide matrix: minor size above the column count gives zero
        let hilb = QuotProblem::new(1, 1, 2, 2).unwrap();
        let tall = chart_kernel(&GrassmannChart::default_chart(&hilb).unwrap());
        let st = tall.fitting_stratum(1, 1, &lim).unwrap();
        assert!(st.minor_size as usize > st.matrix_cols);
        assert!(st.ideal.is_zero_ideal());
    }

    #[test]
    fn projective_plane_stratum_matches_worked_ideal() {
        // p=2, r=2, n=1, d=1, first coordinate inverted: Fitt_0(E_2)
        // equals (u2 u4 - u1 u5, u2 u3 - u5, u1 u3 - u4)
        let lim = limits();
        let chart = GrassmannChart::default_chart(&p2_plane()).unwrap();
        let cone = chart_kernel(&chart);
        let st = cone.fitting_stratum(1, 0, &lim).unwrap();
        let r = chart.chart_ring();
        let expected = Ideal::new(
            r,
            vec![
                parse_polynomial(r, "u2*u4 - u1*u5").unwrap(),
                parse_polynomial(r, "u2*u3 - u5").unwrap(),
                parse_polynomial(r, "u1*u3 - u4").unwrap(),
            ],
        )
        .unwrap();
        assert!(ideal_equal(&st.ideal, &expected, &lim).unwrap());
    }

    #[test]
    fn hilbert_strata_vanish() {
        // p=1: the Grassmannian itself is the Hilbert scheme, so every
        // stratum is the zero ideal
        let lim = limits();
        for n in 1..=3u32 {
            let pr = QuotProblem::new(1, 1, n, n).unwrap();
            for pivots in GrassmannChart::all_pivot_sets(&pr) {
                let chart = GrassmannChart::new(&pr, &pivots).unwrap();
                let cone = chart_kernel(&chart);
                for s in 1..=2 {
                    let st = cone.fitting_stratum(s, n as i64 - 1, &lim).unwrap();
                    assert!(st.ideal.is_zero_ideal(), "n={n} pivots={pivots:?} s={s}");
                }
            }
        }
    }

    #[test]
    fn analysis_prunes_and_stabilizes() {
        let lim = limits();
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let analysis = analyze_chart(&chart, 3, &lim).unwrap();
        let r = chart.chart_ring();
        let expected = parse_polynomial(r, "u1*u2 - u3").unwrap();
        assert_eq!(analysis.equations.generators(), &[expected.clone()]);
        assert_eq!(analysis.new_generators, vec![vec![expected]]);
        // The certificate covers s >= 2: only the first stratum was
        // enumerated, and the cumulative chain is constant.
        assert!(analysis.certificate.is_some());
        assert_eq!(analysis.strata.len(), 1);
        assert_eq!(analysis.cumulative.len(), 3);
        for v in &analysis.cumulative[1..] {
            assert_eq!(v.generators(), analysis.cumulative[0].generators());
        }
        assert_eq!(analysis.stabilization, Stabilization::Certified { offset: 1 });
        let stab = stabilization_offset(&chart, 3, &lim).unwrap();
        assert_eq!(stab, Stabilization::Certified { offset: 1 });
        assert!(matches!(stabilization_offset(&chart, 1, &lim), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn certificate_matches_enumeration() {
        // The certificate asserts that every stratum past s = 1 lies in
        // the s = 1 stratum ideal; cross-check it against the honestly
        // enumerated minors on every chart of three small problems.
        let lim = limits();
        for pr in [p1xp1(), QuotProblem::new(2, 1, 2, 2).unwrap(), QuotProblem::new(3, 1, 1, 2).unwrap()] {
            for pivots in GrassmannChart::all_pivot_sets(&pr) {
                let chart = GrassmannChart::new(&pr, &pivots).unwrap();
                let analysis = analyze_chart(&chart, 3, &lim).unwrap();
                assert!(
                    analysis.certificate.is_some(),
                    "expected a certificate for pr={pr:?} pivots={pivots:?}"
                );
                let cone = chart_kernel(&chart);
                let base = analysis.cumulative[0].clone();
                let gb = base.groebner_basis(&lim).unwrap().to_vec();
                let mut engine = GbEngine::with_basis(chart.chart_ring(), &gb);
                for s in 2..=3 {
                    let stratum = cone.fitting_stratum(s, pr.n as i64 - 1, &lim).unwrap();
                    for g in stratum.ideal.generators() {
                        assert!(
                            engine.contains(g),
                            "stratum s={s} generator escapes the certified ideal \
                             (pr={pr:?} pivots={pivots:?})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn certificate_is_p1_only() {
        // The column-exchange mechanism behind the certificate needs a
        // single curve direction; over P^2 it must decline.
        let lim = limits();
        let chart = GrassmannChart::default_chart(&p2_plane()).unwrap();
        let cone = chart_kernel(&chart);
        let stratum1 = cone.fitting_stratum(1, 0, &lim).unwrap().ideal;
        assert_eq!(cone.stabilization_certificate(&stratum1, &lim).unwrap(), None);
        let analysis = analyze_chart(&chart, 3, &lim).unwrap();
        assert!(analysis.certificate.is_none());
        assert_eq!(analysis.strata.len(), 3);
    }

    #[test]
    fn radical_check_on_worked_examples() {
        let lim = limits();
        for pr in [p1xp1(), p2_plane()] {
            let chart = GrassmannChart::default_chart(&pr).unwrap();
            assert!(radical_stability_check(&chart, 3, &lim).unwrap());
        }
    }

    #[test]
    fn column_space_is_route_independent() {
        // maximal-minor ideals agree whether generators are produced
        // directly from degree d or stepwise via single variables
        let lim = limits();
        for pr in [p1xp1(), QuotProblem::new(1, 1, 2, 2).unwrap()] {
            let chart = GrassmannChart::default_chart(&pr).unwrap();
            let cone = chart_kernel(&chart);
            for m in pr.d + 1..=pr.d + 2 {
                let direct = cone.component_generators(m).unwrap();
                let stepwise = cone.component_generators_stepwise(m).unwrap();
                let a = cone.presentation_matrix_of(&direct, m).unwrap();
                let b = cone.presentation_matrix_of(&stepwise, m).unwrap();
                let k = pr.n as i64 - 1;
                let size = (a.rows() as i64 - k) as usize;
                let ia = Ideal::new(chart.chart_ring(), a.minors(size, 1 << 20).unwrap()).unwrap();
                let ib = Ideal::new(chart.chart_ring(), b.minors(size, 1 << 20).unwrap()).unwrap();
                assert!(ideal_equal(&ia, &ib, &lim).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn fitting_ideals_are_presentation_independent() {
        // appending a chart-ring combination of existing columns leaves
        // the stratum ideal unchanged
        use rand::Rng;
        let lim = limits();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(167);
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let cone = chart_kernel(&chart);
        let psi = cone.presentation_matrix(2).unwrap();
        let ring = chart.chart_ring();
        let base = Ideal::new(ring, psi.minors(6, 1 << 20).unwrap()).unwrap();
        for _ in 0..5 {
            let coeffs: Vec<Polynomial> = (0..psi.cols())
                .map(|_| match rng.random_range(0..3) {
                    0 => ring.zero(),
                    1 => ring.constant(Rational::from(num_bigint::BigInt::from(
                        rng.random_range(-3i64..=3),
                    ))),
                    _ => ring.var(rng.random_range(0..ring.nvars())),
                })
                .collect();
            let extra: Vec<Polynomial> = (0..psi.rows())
                .map(|i| {
                    let mut acc = ring.zero();
                    for (j, c) in coeffs.iter().enumerate() {
                        acc = &acc + &(c * psi.at(i, j));
                    }
                    acc
                })
                .collect();
            let bigger = psi.with_extra_column(&extra).unwrap();
            // row count unchanged, so the same minor size computes the
            // same Fitting ideal
            let ideal =
                Ideal::new(ring, bigger.minors(6, 1 << 20).unwrap()).unwrap();
            assert!(ideal_equal(&base, &ideal, &lim).unwrap());
        }
    }

    #[test]
    fn fitting_chain_in_k() {
        // Fitt_k(E_m) ⊆ Fitt_{k+1}(E_m)
        let lim = limits();
        let chart = GrassmannChart::default_chart(&p2_plane()).unwrap();
        let cone = chart_kernel(&chart);
        for k in 0..3i64 {
            let small = cone.fitting_stratum(1, k, &lim).unwrap().ideal;
            let big = cone.fitting_stratum(1, k + 1, &lim).unwrap().ideal;
            for g in small.generators() {
                assert!(big.contains(g, &lim).unwrap(), "k={k}");
            }
        }
    }

    #[test]
    fn homogenization_of_worked_example() {
        let lim = limits();
        let pr = p1xp1();
        // every chart homogenizes to exactly (b*c - a*d)
        for pivots in GrassmannChart::all_pivot_sets(&pr) {
            let chart = GrassmannChart::new(&pr, &pivots).unwrap();
            let eqs = quot_equations(&chart, 2, &lim).unwrap();
            let hom = homogenize_chart_ideal(&chart, &eqs, &lim).unwrap();
            assert_eq!(hom.ring.vars(), &["a", "b", "c", "d"]);
            let expected = parse_polynomial(&hom.ring, "b*c - a*d").unwrap();
            assert_eq!(hom.ideal.generators(), &[expected], "pivots {pivots:?}");
        }
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        let aliases = homogenize_chart_ideal(
            &chart,
            &quot_equations(&chart, 1, &lim).unwrap(),
            &lim,
        )
        .unwrap()
        .aliases;
        assert_eq!(
            aliases,
            vec![
                ("a".to_string(), "e0*X".to_string()),
                ("b".to_string(), "e0*Y".to_string()),
                ("c".to_string(), "e1*X".to_string()),
                ("d".to_string(), "e1*Y".to_string()),
            ]
        );
    }

    #[test]
    fn homogenization_requires_saturation() {
        // On the 3-fold product chart, plain denominator clearing misses
        // generators; the saturation recovers the full minor ideal.
        let lim = limits();
        let pr = QuotProblem::new(3, 1, 1, 1).unwrap();
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        let eqs = quot_equations(&chart, 2, &lim).unwrap();
        let hom = homogenize_chart_ideal(&chart, &eqs, &lim).unwrap();
        let r = &hom.ring;
        // 2x2 minors of [[a, c, e], [b, d, f]]
        let minors = Ideal::new(
            r,
            vec![
                parse_polynomial(r, "b*c - a*d").unwrap(),
                parse_polynomial(r, "b*e - a*f").unwrap(),
                parse_polynomial(r, "d*e - c*f").unwrap(),
            ],
        )
        .unwrap();
        assert!(ideal_equal(&hom.ideal, &minors, &lim).unwrap());
        // the saturation added cf - de, which no cleared generator equals
        let extra = parse_polynomial(r, "d*e - c*f").unwrap();
        assert!(hom.ideal.contains(&extra, &lim).unwrap());
    }

    #[test]
    fn homogenization_edge_cases() {
        let lim = limits();
        // zero ideal stays zero
        let pr = QuotProblem::new(1, 1, 1, 1).unwrap();
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        let zero = Ideal::zero(chart.chart_ring());
        let hom = homogenize_chart_ideal(&chart, &zero, &lim).unwrap();
        assert!(hom.ideal.is_zero_ideal());
        assert_eq!(hom.ring.vars(), &["a", "b"]);
        // rank >= 2 is rejected
        let hilb = QuotProblem::new(1, 1, 2, 2).unwrap();
        let chart2 = GrassmannChart::default_chart(&hilb).unwrap();
        let zero2 = Ideal::zero(chart2.chart_ring());
        assert!(matches!(
            homogenize_chart_ideal(&chart2, &zero2, &lim),
            Err(Error::HomogenizeRank(2))
        ));
    }

    #[test]
    fn fiber_dimensions_bounded() {
        let chart = GrassmannChart::default_chart(&p1xp1()).unwrap();
        let cone = chart_kernel(&chart);
        assert!(cone.fiber_dimension_check(3, 20, 11).unwrap());
        let pr = QuotProblem::new(1, 1, 1, 1).unwrap();
        let chart = GrassmannChart::default_chart(&pr).unwrap();
        let cone = chart_kernel(&chart);
        assert!(cone.fiber_dimension_check(5, 20, 13).unwrap());
        assert!(matches!(
            cone.fiber_dimension_check(0, 1, 1),
            Err(Error::InvalidParameter(_))
        ));
    }
}
