//! Chart reports: a serde-stable JSON form of one chart's analysis
//! (generators rendered in the text polynomial syntax) plus a
//! human-readable rendering.  Field order is fixed by the struct
//! definitions, so serialize-parse-serialize is byte-identical.

use serde::{Deserialize, Serialize};

use crate::quotcore::{ChartAnalysis, GrassmannChart, HomogenizedIdeal, Stabilization};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemReport {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub d: u32,
    pub s_max: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartInfo {
    pub pivots: Vec<usize>,
    pub variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumReport {
    pub s: u32,
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub pivots_removed: usize,
    pub minor_size: i64,
    pub generators: Vec<String>,
    /// Generators not already implied by the earlier strata.
    pub new_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub certified: bool,
    pub offset: Option<u32>,
    pub s_max: u32,
}

/// Witness data for the localization certificate: strata past s = 1
/// were proven to lie in the s = 1 stratum ideal, so their minors were
/// never enumerated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub column_sets: usize,
    pub unit_column_sets: usize,
    pub witness_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AliasEntry {
    pub var: String,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogenizedReport {
    pub variables: Vec<String>,
    pub aliases: Vec<AliasEntry>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartReport {
    pub problem: ProblemReport,
    pub chart: ChartInfo,
    pub strata: Vec<StratumReport>,
    /// Cumulative (pruned) generators of the chart equations.
    pub equations: Vec<String>,
    pub stabilization: StabilizationReport,
    pub certificate: Option<CertificateReport>,
    pub radical_check: Option<bool>,
    pub homogenized: Option<HomogenizedReport>,
}

/// Assemble the report for one chart run.
pub fn build_report(
    chart: &GrassmannChart,
    analysis: &ChartAnalysis,
    s_max: u32,
    radical_check: Option<bool>,
    homogenized: Option<&HomogenizedIdeal>,
) -> ChartReport {
    let problem = chart.problem();
    let strata = analysis
        .strata
        .iter()
        .zip(&analysis.new_generators)
        .map(|(st, new)| StratumReport {
            s: st.s,
            degree: st.degree,
            rows: st.matrix_rows,
            cols: st.matrix_cols,
            pivots_removed: st.pivots_removed,
            minor_size: st.minor_size,
            generators: st.ideal.generators().iter().map(|g| g.to_string()).collect(),
            new_generators: new.iter().map(|g| g.to_string()).collect(),
        })
        .collect();
    let stabilization = match analysis.stabilization {
        Stabilization::Certified { offset } => {
            StabilizationReport { certified: true, offset: Some(offset), s_max }
        }
        Stabilization::NotCertified { checked } => {
            StabilizationReport { certified: false, offset: None, s_max: checked }
        }
    };
    ChartReport {
        problem: ProblemReport {
            p: problem.p,
            r: problem.r,
            n: problem.n,
            d: problem.d,
            s_max,
        },
        chart: ChartInfo {
            pivots: chart.pivots().to_vec(),
            variables: chart.chart_ring().vars().to_vec(),
        },
        strata,
        equations: analysis.equations.generators().iter().map(|g| g.to_string()).collect(),
        stabilization,
        certificate: analysis.certificate.as_ref().map(|c| CertificateReport {
            column_sets: c.column_sets,
            unit_column_sets: c.unit_column_sets,
            witness_generators: c.witness_generators,
        }),
        radical_check,
        homogenized: homogenized.map(|h| HomogenizedReport {
            variables: h.ring.vars().to_vec(),
            aliases: h
                .aliases
                .iter()
                .map(|(var, basis)| AliasEntry { var: var.clone(), basis: basis.clone() })
                .collect(),
            generators: h.ideal.generators().iter().map(|g| g.to_string()).collect(),
        }),
    }
}

fn push_generators(out: &mut String, label: &str, gens: &[String]) {
    out.push_str(&format!("  {label} ({}):\n", gens.len()));
    if gens.is_empty() {
        out.push_str("    (none)\n");
    }
    for g in gens {
        out.push_str(&format!("    {g}\n"));
    }
}

/// Plain-text rendering of a chart report.
pub fn render_text(report: &ChartReport) -> String {
    let mut out = String::new();
    let pr = &report.problem;
    out.push_str(&format!(
        "problem: p={} r={} n={} d={} s_max={}\n",
        pr.p, pr.r, pr.n, pr.d, pr.s_max
    ));
    out.push_str(&format!(
        "chart: pivots={:?} variables=[{}]\n",
        report.chart.pivots,
        report.chart.variables.join(", ")
    ));
    for st in &report.strata {
        out.push_str(&format!(
            "stratum s={} (degree {}): {}x{} presentation, {} constant pivots removed, minor size {}\n",
            st.s, st.degree, st.rows, st.cols, st.pivots_removed, st.minor_size
        ));
        push_generators(&mut out, "generators", &st.generators);
        push_generators(&mut out, "new", &st.new_generators);
    }
    out.push_str("equations");
    out.push_str(&format!(" ({}):\n", report.equations.len()));
    if report.equations.is_empty() {
        out.push_str("  (none: the whole chart lies in the Quot scheme)\n");
    }
    for g in &report.equations {
        out.push_str(&format!("  {g}\n"));
    }
    match (report.stabilization.certified, report.stabilization.offset) {
        (true, Some(offset)) => out.push_str(&format!(
            "stabilization: certified at offset {offset} (checked up to s_max={})\n",
            report.stabilization.s_max
        )),
        _ => out.push_str(&format!(
            "stabilization: not certified within s_max={}\n",
            report.stabilization.s_max
        )),
    }
    if let Some(cert) = &report.certificate {
        out.push_str(&format!(
            "certificate: strata s >= 2 lie in the s = 1 ideal ({} column sets, {} unit, {} witnesses)\n",
            cert.column_sets, cert.unit_column_sets, cert.witness_generators
        ));
    }
    if let Some(verdict) = report.radical_check {
        out.push_str(&format!("radical check (strata 2..=s_max vs s=1): {verdict}\n"));
    }
    if let Some(hom) = &report.homogenized {
        out.push_str(&format!("homogenized (variables [{}]):\n", hom.variables.join(", ")));
        for a in &hom.aliases {
            out.push_str(&format!("  {} = {}\n", a.var, a.basis));
        }
        push_generators(&mut out, "generators", &hom.generators);
    }
    out
}
