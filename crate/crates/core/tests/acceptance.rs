//! Acceptance suite: one test per shipped criterion, each asserting both
//! the mathematical contract and a pinned wall-clock budget, and printing
//! a single `ACCEPTANCE <k> <name>: PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quotfit::exactla::PolyMatrix;
use quotfit::grobner::{ideal_equal, Ideal};
use quotfit::macaulay::{macaulay_growth, macaulay_rep};
use quotfit::polyring::{parse_polynomial, Monomial, PolyRing, Polynomial, Rational, TermOrder};
use quotfit::quotcore::{
    analyze_chart, chart_kernel, homogenize_chart_ideal, radical_stability_check, GrassmannChart,
    QuotProblem, Stabilization,
};
use quotfit::Limits;

fn finish(k: u32, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {k} ({name}) took {elapsed:?}, budget {budget:?}"
    );
    println!("ACCEPTANCE {k} {name}: PASS ({elapsed:?} < {budget:?})");
}

/// 1. Every chart of the p=2, r=1, n=1, d=1 problem has a rank-one
/// cumulative ideal whose homogenization is exactly the quadric bc - ad.
#[test]
fn criterion_1_quadric_surface_charts() {
    let start = Instant::now();
    let lim = Limits::default();
    let problem = QuotProblem::new(2, 1, 1, 1).unwrap();
    let pivot_sets = GrassmannChart::all_pivot_sets(&problem);
    assert_eq!(pivot_sets.len(), 4);
    for pivots in pivot_sets {
        let chart = GrassmannChart::new(&problem, &pivots).unwrap();
        let analysis = analyze_chart(&chart, 3, &lim).unwrap();
        assert_eq!(
            analysis.equations.generators().len(),
            1,
            "chart {pivots:?}: cumulative ideal should have exactly one generator"
        );
        let hom = homogenize_chart_ideal(&chart, &analysis.equations, &lim).unwrap();
        let expected = Ideal::new(
            &hom.ring,
            vec![parse_polynomial(&hom.ring, "b*c - a*d").unwrap()],
        )
        .unwrap();
        assert!(
            ideal_equal(&hom.ideal, &expected, &lim).unwrap(),
            "chart {pivots:?}: homogenized ideal differs from (b*c - a*d)"
        );
    }
    finish(1, "quadric surface charts", start, Duration::from_secs(1));
}

/// 2. The pivot-first chart of p=2, r=2, n=1, d=1 yields Fitt_0(E_2)
/// equal to the three worked-example quadrics.
#[test]
fn criterion_2_projective_plane_first_stratum() {
    let start = Instant::now();
    let lim = Limits::default();
    let problem = QuotProblem::new(2, 2, 1, 1).unwrap();
    let chart = GrassmannChart::default_chart(&problem).unwrap();
    let cone = chart_kernel(&chart);
    let stratum = cone.fitting_stratum(1, 0, &lim).unwrap();
    let ring = chart.chart_ring();
    let expected = Ideal::new(
        ring,
        ["u2*u4 - u1*u5", "u2*u3 - u5", "u1*u3 - u4"]
            .iter()
            .map(|s| parse_polynomial(ring, s).unwrap())
            .collect(),
    )
    .unwrap();
    assert!(ideal_equal(&stratum.ideal, &expected, &lim).unwrap());
    finish(2, "projective plane first stratum", start, Duration::from_secs(5));
}

/// 3. Hilbert scheme of points on the line: for 1 <= n = d <= 5 every
/// chart is cut out by the zero ideal at every stratum s <= 3.  The
/// strata are enumerated outright here (no certificate shortcut) since
/// the claim is about each stratum individually.
#[test]
fn criterion_3_hilbert_points_on_line() {
    let start = Instant::now();
    let lim = Limits::default();
    for n in 1..=5u32 {
        let problem = QuotProblem::new(1, 1, n, n).unwrap();
        for pivots in GrassmannChart::all_pivot_sets(&problem) {
            let chart = GrassmannChart::new(&problem, &pivots).unwrap();
            let cone = chart_kernel(&chart);
            for s in 1..=3u32 {
                let stratum = cone.fitting_stratum(s, n as i64 - 1, &lim).unwrap();
                assert!(
                    stratum.ideal.is_zero_ideal(),
                    "n = d = {n}, chart {pivots:?}, s = {s}: nonzero stratum"
                );
            }
            let analysis = analyze_chart(&chart, 3, &lim).unwrap();
            assert!(analysis.equations.is_zero_ideal());
        }
    }
    finish(3, "hilbert points on line", start, Duration::from_secs(10));
}

/// 4. Segre case p=3, r=1, n=1, d=1: homogenized chart ideals equal the
/// 2x2-minors ideal (X_i Y_j - X_j Y_i), and stabilization offset is 1.
#[test]
fn criterion_4_segre_threefold() {
    let start = Instant::now();
    let lim = Limits::default();
    let problem = QuotProblem::new(3, 1, 1, 1).unwrap();
    for pivots in GrassmannChart::all_pivot_sets(&problem) {
        let chart = GrassmannChart::new(&problem, &pivots).unwrap();
        let analysis = analyze_chart(&chart, 3, &lim).unwrap();
        assert_eq!(
            analysis.stabilization,
            Stabilization::Certified { offset: 1 },
            "chart {pivots:?}"
        );
        let hom = homogenize_chart_ideal(&chart, &analysis.equations, &lim).unwrap();
        // homogeneous variables follow the F_1 basis (e0*X, e0*Y, e1*X,
        // ...), so component i contributes the column (X_i, Y_i)
        let x = |i: usize| hom.ring.var(2 * i);
        let y = |i: usize| hom.ring.var(2 * i + 1);
        let mut gens = Vec::new();
        for i in 0..3 {
            for j in (i + 1)..3 {
                gens.push(&(&x(i) * &y(j)) - &(&x(j) * &y(i)));
            }
        }
        let expected = Ideal::new(&hom.ring, gens).unwrap();
        assert!(
            ideal_equal(&hom.ideal, &expected, &lim).unwrap(),
            "chart {pivots:?}: homogenized ideal differs from the 2x2 minors"
        );
    }
    finish(4, "segre threefold", start, Duration::from_secs(10));
}

/// 5. r=1 stabilization: for p <= 3, n <= d <= 3, at least 5 sampled
/// charts per problem, the cumulative ideal at s=1 already equals the
/// cumulative ideal at s=3.
#[test]
fn criterion_5_line_stabilizes_at_first_stratum() {
    let start = Instant::now();
    let lim = Limits::default();
    for p in 1..=3u32 {
        for n in 1..=3u32 {
            for d in n..=3u32 {
                let problem = QuotProblem::new(p, 1, n, d).unwrap();
                let sets = GrassmannChart::sample_pivot_sets(&problem, 5, 0xACCE5);
                let total = GrassmannChart::all_pivot_sets(&problem).len();
                assert!(sets.len() >= total.min(5), "p={p} n={n} d={d}: sampled too few");
                for pivots in sets {
                    let chart = GrassmannChart::new(&problem, &pivots).unwrap();
                    let analysis = analyze_chart(&chart, 3, &lim).unwrap();
                    assert!(
                        ideal_equal(&analysis.cumulative[0], &analysis.equations, &lim).unwrap(),
                        "p={p} n={n} d={d} chart {pivots:?}: V_1 != V_3"
                    );
                }
            }
        }
    }
    finish(5, "line stabilizes at first stratum", start, Duration::from_secs(120));
}

/// 6. Radical sufficiency on the plane: for p <= 2, n <= 2, d = n,
/// every generator of strata 2 and 3 on sampled charts lies in the
/// radical of the first stratum.
#[test]
fn criterion_6_plane_radical_sufficiency() {
    let start = Instant::now();
    let lim = Limits::default();
    for p in 1..=2u32 {
        for n in 1..=2u32 {
            let problem = QuotProblem::new(p, 2, n, n).unwrap();
            for pivots in GrassmannChart::sample_pivot_sets(&problem, 5, 0x57AB1E) {
                let chart = GrassmannChart::new(&problem, &pivots).unwrap();
                assert!(
                    radical_stability_check(&chart, 3, &lim).unwrap(),
                    "p={p} n={n} chart {pivots:?}: a later-stratum generator escapes the radical"
                );
            }
        }
    }
    finish(6, "plane radical sufficiency", start, Duration::from_secs(300));
}

/// 7. Macaulay suite: reconstruction on n <= 200, d <= 8 and the
/// constant-expansion identity n^<d+s> = n for n <= d <= 12, s <= 3.
#[test]
fn criterion_7_macaulay_identities() {
    let start = Instant::now();
    for n in 0..=200u64 {
        for d in 1..=8u32 {
            let rep = macaulay_rep(n, d).unwrap();
            assert!(rep.parts.windows(2).all(|w| w[0] > w[1]), "n={n} d={d}");
            assert_eq!(rep.reconstruct(), n.into(), "n={n} d={d}");
        }
    }
    for d in 1..=12u32 {
        for n in 0..=d as u64 {
            for s in 0..=3u32 {
                assert_eq!(
                    macaulay_growth(n, d + s).unwrap(),
                    n.into(),
                    "constant expansion failed at n={n} d={d} s={s}"
                );
            }
        }
    }
    finish(7, "macaulay identities", start, Duration::from_secs(1));
}

fn random_poly(ring: &PolyRing, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut acc = ring.zero();
    for _ in 0..rng.random_range(0..=3) {
        let c = rng.random_range(-3i64..=3);
        if c == 0 {
            continue;
        }
        let exps: Vec<u32> = (0..ring.nvars()).map(|_| rng.random_range(0..=2)).collect();
        acc = &acc + &ring.term(Monomial::new(exps), Rational::from(BigInt::from(c)));
    }
    acc
}

/// Append a random chart-ring combination of existing columns; Fitting
/// ideals of the cokernel are unchanged.
fn augment(psi: &PolyMatrix, ring: &PolyRing, rng: &mut ChaCha8Rng) -> PolyMatrix {
    let coeffs: Vec<Polynomial> = (0..psi.cols())
        .map(|_| match rng.random_range(0..3) {
            0 => ring.zero(),
            1 => ring.constant(Rational::from(BigInt::from(rng.random_range(-3i64..=3)))),
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
    psi.with_extra_column(&extra).unwrap()
}

/// 8. Engine cross-checks: Bareiss vs Laplace on 500 random matrices,
/// presentation independence on 50 augmentations, and the fiber
/// dimension bound at 20 random rational points per instance.
#[test]
fn criterion_8_engine_cross_checks() {
    let start = Instant::now();
    let lim = Limits::default();

    // (a) two determinant algorithms agree on 500 random matrices <= 5x5
    let ring = PolyRing::new(&["x", "y", "z"], TermOrder::DegRevLex).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE7);
    for round in 0..500 {
        let n = rng.random_range(1..=5);
        let entries: Vec<Polynomial> =
            (0..n * n).map(|_| random_poly(&ring, &mut rng)).collect();
        let m = PolyMatrix::new(&ring, n, n, entries).unwrap();
        assert_eq!(
            m.determinant_bareiss().unwrap(),
            m.determinant_laplace().unwrap(),
            "round {round}: determinant algorithms disagree"
        );
    }

    // (b) Fitting ideals are presentation independent: 50 random
    // augmented presentations across two worked instances
    let mut rng = ChaCha8Rng::seed_from_u64(0xF177);
    let instances = [
        (QuotProblem::new(2, 1, 1, 1).unwrap(), 2u32),
        (QuotProblem::new(2, 2, 1, 1).unwrap(), 2u32),
    ];
    for (problem, m) in &instances {
        let chart = GrassmannChart::default_chart(problem).unwrap();
        let cone = chart_kernel(&chart);
        let psi = cone.presentation_matrix(*m).unwrap();
        let ring = chart.chart_ring();
        let size = psi.rows() - (problem.n as usize - 1);
        let base = Ideal::new(ring, psi.minors(size, lim.minor_cap).unwrap()).unwrap();
        for round in 0..25 {
            let bigger = augment(&psi, ring, &mut rng);
            let ideal = Ideal::new(ring, bigger.minors(size, lim.minor_cap).unwrap()).unwrap();
            assert!(
                ideal_equal(&base, &ideal, &lim).unwrap(),
                "p={} r={} round {round}: augmented Fitting ideal changed",
                problem.p, problem.r
            );
        }
    }

    // (c) fiber dimension bound at 20 random rational points each
    let fiber_instances = [
        QuotProblem::new(2, 1, 1, 1).unwrap(),
        QuotProblem::new(2, 2, 1, 1).unwrap(),
        QuotProblem::new(1, 1, 2, 2).unwrap(),
        QuotProblem::new(3, 1, 1, 1).unwrap(),
        QuotProblem::new(1, 2, 2, 2).unwrap(),
    ];
    for (i, problem) in fiber_instances.iter().enumerate() {
        let chart = GrassmannChart::default_chart(problem).unwrap();
        let cone = chart_kernel(&chart);
        assert!(
            cone.fiber_dimension_check(problem.d + 2, 20, 0xF1B + i as u64).unwrap(),
            "instance {i}: fiber dimension bound violated"
        );
    }

    finish(8, "engine cross checks", start, Duration::from_secs(120));
}
