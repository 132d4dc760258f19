use std::collections::BTreeSet;
use std::fmt::Write as _;

use effmat::equality::{EqualStatus, EqualityVerdict, MatrixSide, SearchReport};
use effmat::matrix::{PositiveVector, ReciprocalMatrix, SquareMatrix};
use effmat::orders::{
    cone_unique_order, global_pairwise_above_over, global_unique_order_over,
    partial_order_partition, pairwise_above,
};
use effmat::cycles::{enumerate_hcycles_capped, gamma_set_capped};
use effmat::paths::global_bounds_over;
use effmat::{
    cone_interval, extreme_vectors, format_rational, path_matrix, EfficiencyReport, Error,
};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle: String,
    pub product: String,
    pub lower: Vec<Vec<String>>,
    pub upper: Vec<Vec<String>>,
    pub extremes: Vec<Vec<String>>,
    pub unique_order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub lower: Vec<Vec<String>>,
    pub upper: Vec<Vec<String>>,
    pub unique_order: Option<Vec<usize>>,
    pub pairwise_above: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PathMatrixDoc {
    pub cycle: String,
    pub product: String,
    pub values: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_ray: Option<Vec<String>>,
    pub cycles: Vec<CycleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_path_matrices: Option<Vec<PathMatrixDoc>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_ray: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TestReport {
    pub n: usize,
    pub efficient: bool,
    pub member_cycles: Vec<String>,
    pub tight_positions: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CycleOrderReport {
    pub cycle: String,
    pub product: String,
    pub unique_order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    pub pairwise_above: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OrdersReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub consistent: bool,
    pub cycles: Vec<CycleOrderReport>,
    pub global_unique_order: Option<Vec<usize>>,
    pub global_pairwise_above: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ConeExtremesReport {
    pub cycle: String,
    pub product: String,
    pub extremes: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ExtremesReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_ray: Option<Vec<String>>,
    pub cycles: Vec<ConeExtremesReport>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EvidenceDoc {
    pub check: String,
    pub outcome: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_side: Option<String>,
    pub evidence: Vec<EvidenceDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SurvivorDoc {
    pub iteration: usize,
    pub first: Vec<Vec<String>>,
    pub second: Vec<Vec<String>>,
    pub evidence: Vec<EvidenceDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SearchReportDoc {
    pub n: usize,
    pub iterations: usize,
    pub seed: u64,
    pub strategy: String,
    pub examined: usize,
    pub not_equal: usize,
    pub unknown: usize,
    pub lower_bound_matches: usize,
    pub reference_pair_not_equal: Option<bool>,
    pub survivors: Vec<SurvivorDoc>,
}

pub fn grid_strings(m: &SquareMatrix) -> Vec<Vec<String>> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| format_rational(m.get(i, j))).collect())
        .collect()
}

pub fn matrix_strings(m: &ReciprocalMatrix) -> Vec<Vec<String>> {
    grid_strings(m.matrix())
}

pub fn vector_strings(w: &PositiveVector) -> Vec<String> {
    w.entries().iter().map(format_rational).collect()
}

fn one_based(order: &[usize]) -> Vec<usize> {
    order.iter().map(|&i| i + 1).collect()
}

fn one_based_pairs(pairs: &BTreeSet<(usize, usize)>) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
}

fn one_based_blocks(blocks: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|block| block.iter().map(|&i| i + 1).collect())
        .collect()
}

pub fn analysis_report(
    a: &ReciprocalMatrix,
    labels: Option<Vec<String>>,
    cap: usize,
    full: bool,
) -> Result<AnalysisReport, Error> {
    let n = a.n();
    let consistent = a.is_consistent();
    let mut report = AnalysisReport {
        n,
        labels,
        consistent,
        column_ray: consistent.then(|| vector_strings(&a.column(0).normalized())),
        cycles: Vec::new(),
        global: None,
        all_path_matrices: None,
    };
    if !consistent {
        let gamma = gamma_set_capped(a, cap)?;
        for (cycle, product) in gamma.iter() {
            let interval = cone_interval(a, cycle)?;
            let extremes = extreme_vectors(a, cycle)?;
            let unique = cone_unique_order(a, cycle)?;
            let partition = if unique.is_none() {
                Some(one_based_blocks(&partial_order_partition(a, cycle)?.blocks))
            } else {
                None
            };
            report.cycles.push(CycleReport {
                cycle: cycle.to_string(),
                product: format_rational(product),
                lower: grid_strings(interval.lower.values()),
                upper: grid_strings(&interval.upper),
                extremes: extremes.iter().map(vector_strings).collect(),
                unique_order: unique.as_deref().map(one_based),
                partition,
            });
        }
        let bounds = global_bounds_over(a, &gamma)?;
        report.global = Some(GlobalReport {
            lower: grid_strings(&bounds.lower),
            upper: grid_strings(&bounds.upper),
            unique_order: global_unique_order_over(a, &gamma)?.as_deref().map(one_based),
            pairwise_above: one_based_pairs(&global_pairwise_above_over(a, &gamma)?),
        });
    }
    if full {
        let mut docs = Vec::new();
        for cycle in enumerate_hcycles_capped(n, cap)? {
            let pm = path_matrix(a, &cycle)?;
            docs.push(PathMatrixDoc {
                cycle: cycle.to_string(),
                product: format_rational(pm.cycle_product()),
                values: grid_strings(pm.values()),
            });
        }
        report.all_path_matrices = Some(docs);
    }
    Ok(report)
}

pub fn bounds_report(
    a: &ReciprocalMatrix,
    labels: Option<Vec<String>>,
    cap: usize,
) -> Result<BoundsReport, Error> {
    let consistent = a.is_consistent();
    let mut report = BoundsReport {
        n: a.n(),
        labels,
        consistent,
        column_ray: consistent.then(|| vector_strings(&a.column(0).normalized())),
        lower: None,
        upper: None,
    };
    if !consistent {
        let bounds = global_bounds_over(a, &gamma_set_capped(a, cap)?)?;
        report.lower = Some(grid_strings(&bounds.lower));
        report.upper = Some(grid_strings(&bounds.upper));
    }
    Ok(report)
}

pub fn test_report(n: usize, efficiency: &EfficiencyReport) -> TestReport {
    TestReport {
        n,
        efficient: efficiency.efficient,
        member_cycles: efficiency.member_cones.iter().map(|c| c.to_string()).collect(),
        tight_positions: efficiency
            .tight_positions
            .iter()
            .map(|set| set.iter().map(|&(i, j)| (i + 1, j + 1)).collect())
            .collect(),
    }
}

pub fn orders_report(
    a: &ReciprocalMatrix,
    labels: Option<Vec<String>>,
    cap: usize,
) -> Result<OrdersReport, Error> {
    let consistent = a.is_consistent();
    let mut report = OrdersReport {
        n: a.n(),
        labels,
        consistent,
        cycles: Vec::new(),
        global_unique_order: None,
        global_pairwise_above: Vec::new(),
    };
    if !consistent {
        let gamma = gamma_set_capped(a, cap)?;
        for (cycle, product) in gamma.iter() {
            let unique = cone_unique_order(a, cycle)?;
            let partition = if unique.is_none() {
                Some(one_based_blocks(&partial_order_partition(a, cycle)?.blocks))
            } else {
                None
            };
            report.cycles.push(CycleOrderReport {
                cycle: cycle.to_string(),
                product: format_rational(product),
                unique_order: unique.as_deref().map(one_based),
                partition,
                pairwise_above: one_based_pairs(&pairwise_above(a, cycle)?),
            });
        }
        report.global_unique_order = global_unique_order_over(a, &gamma)?
            .as_deref()
            .map(one_based);
        report.global_pairwise_above =
            one_based_pairs(&global_pairwise_above_over(a, &gamma)?);
    }
    Ok(report)
}

pub fn extremes_report(
    a: &ReciprocalMatrix,
    labels: Option<Vec<String>>,
    cap: usize,
) -> Result<ExtremesReport, Error> {
    let consistent = a.is_consistent();
    let mut report = ExtremesReport {
        n: a.n(),
        labels,
        consistent,
        column_ray: consistent.then(|| vector_strings(&a.column(0).normalized())),
        cycles: Vec::new(),
    };
    if !consistent {
        for (cycle, product) in gamma_set_capped(a, cap)?.iter() {
            let extremes = extreme_vectors(a, cycle)?;
            report.cycles.push(ConeExtremesReport {
                cycle: cycle.to_string(),
                product: format_rational(product),
                extremes: extremes.iter().map(vector_strings).collect(),
            });
        }
    }
    Ok(report)
}

pub fn compare_report(verdict: &EqualityVerdict) -> CompareReport {
    CompareReport {
        status: match verdict.status {
            EqualStatus::Equal => "equal",
            EqualStatus::NotEqual => "not-equal",
            EqualStatus::Unknown => "unknown",
        }
        .to_owned(),
        witness: verdict.witness.as_ref().map(vector_strings),
        witness_side: verdict.witness_side.map(|side| {
            match side {
                MatrixSide::First => "first",
                MatrixSide::Second => "second",
            }
            .to_owned()
        }),
        evidence: verdict
            .evidence
            .iter()
            .map(|e| EvidenceDoc {
                check: e.check.clone(),
                outcome: e.outcome.clone(),
            })
            .collect(),
    }
}

pub fn search_report_doc(report: &SearchReport) -> SearchReportDoc {
    SearchReportDoc {
        n: report.n,
        iterations: report.iterations,
        seed: report.seed,
        strategy: report.strategy.name().to_owned(),
        examined: report.examined,
        not_equal: report.not_equal,
        unknown: report.unknown,
        lower_bound_matches: report.lower_bound_matches,
        reference_pair_not_equal: report.reference_pair_not_equal,
        survivors: report
            .survivors
            .iter()
            .map(|record| SurvivorDoc {
                iteration: record.iteration,
                first: matrix_strings(&record.first),
                second: matrix_strings(&record.second),
                evidence: compare_report(&record.verdict).evidence,
            })
            .collect(),
    }
}

fn push_grid(out: &mut String, rows: &[Vec<String>], indent: &str) {
    let columns = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..columns)
        .map(|j| rows.iter().map(|row| row[j].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let mut line = String::from(indent);
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:>width$}", width = widths[j]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn order_text(order: &[usize]) -> String {
    order
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" > ")
}

fn partition_text(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|block| {
            format!(
                "{{{}}}",
                block.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" > ")
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "none".to_owned();
    }
    pairs
        .iter()
        .map(|(i, j)| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn vector_text(entries: &[String]) -> String {
    format!("({})", entries.join(", "))
}

fn push_header(out: &mut String, n: usize, labels: &Option<Vec<String>>, consistent: bool) {
    let _ = writeln!(out, "n = {n}");
    if let Some(labels) = labels {
        let _ = writeln!(out, "labels: {}", labels.join(", "));
    }
    let _ = writeln!(out, "consistent: {}", if consistent { "yes" } else { "no" });
}

fn push_column_ray(out: &mut String, ray: &Option<Vec<String>>) {
    if let Some(ray) = ray {
        let _ = writeln!(
            out,
            "efficient vectors: exactly the positive multiples of the columns"
        );
        let _ = writeln!(out, "column ray: {}", vector_text(ray));
    }
}

pub fn analysis_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    push_header(&mut out, report.n, &report.labels, report.consistent);
    push_column_ray(&mut out, &report.column_ray);
    if !report.consistent {
        let _ = writeln!(out, "cycles below one: {}", report.cycles.len());
        for cycle in &report.cycles {
            let _ = writeln!(out, "\ncycle {}  product {}", cycle.cycle, cycle.product);
            let _ = writeln!(out, "  interval lower bound:");
            push_grid(&mut out, &cycle.lower, "    ");
            let _ = writeln!(out, "  interval upper bound:");
            push_grid(&mut out, &cycle.upper, "    ");
            let _ = writeln!(out, "  extremes:");
            for extreme in &cycle.extremes {
                let _ = writeln!(out, "    {}", vector_text(extreme));
            }
            match (&cycle.unique_order, &cycle.partition) {
                (Some(order), _) => {
                    let _ = writeln!(out, "  unique order: {}", order_text(order));
                }
                (None, Some(blocks)) => {
                    let _ = writeln!(out, "  no unique order; partition: {}", partition_text(blocks));
                }
                (None, None) => {}
            }
        }
    }
    if let Some(global) = &report.global {
        let _ = writeln!(out, "\nglobal lower bound:");
        push_grid(&mut out, &global.lower, "  ");
        let _ = writeln!(out, "global upper bound:");
        push_grid(&mut out, &global.upper, "  ");
        match &global.unique_order {
            Some(order) => {
                let _ = writeln!(out, "global unique order: {}", order_text(order));
            }
            None => {
                let _ = writeln!(out, "global unique order: none");
            }
        }
        let _ = writeln!(out, "pairwise above: {}", pairs_text(&global.pairwise_above));
    }
    if let Some(path_matrices) = &report.all_path_matrices {
        let _ = writeln!(out, "\npath matrices for all cycles:");
        for doc in path_matrices {
            let _ = writeln!(out, "cycle {}  product {}", doc.cycle, doc.product);
            push_grid(&mut out, &doc.values, "  ");
        }
    }
    out
}

pub fn bounds_text(report: &BoundsReport) -> String {
    let mut out = String::new();
    push_header(&mut out, report.n, &report.labels, report.consistent);
    push_column_ray(&mut out, &report.column_ray);
    if let (Some(lower), Some(upper)) = (&report.lower, &report.upper) {
        let _ = writeln!(out, "global lower bound:");
        push_grid(&mut out, lower, "  ");
        let _ = writeln!(out, "global upper bound:");
        push_grid(&mut out, upper, "  ");
    }
    out
}

pub fn test_text(report: &TestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "efficient: {}",
        if report.efficient { "yes" } else { "no" }
    );
    if !report.member_cycles.is_empty() {
        let _ = writeln!(out, "member cycles: {}", report.member_cycles.join(", "));
        for (cycle, tight) in report.member_cycles.iter().zip(&report.tight_positions) {
            let _ = writeln!(out, "tight positions in {}: {}", cycle, pairs_text(tight));
        }
    }
    out
}

pub fn orders_text(report: &OrdersReport) -> String {
    let mut out = String::new();
    push_header(&mut out, report.n, &report.labels, report.consistent);
    for cycle in &report.cycles {
        let _ = writeln!(out, "\ncycle {}  product {}", cycle.cycle, cycle.product);
        match (&cycle.unique_order, &cycle.partition) {
            (Some(order), _) => {
                let _ = writeln!(out, "  unique order: {}", order_text(order));
            }
            (None, Some(blocks)) => {
                let _ = writeln!(out, "  no unique order; partition: {}", partition_text(blocks));
            }
            (None, None) => {}
        }
        let _ = writeln!(out, "  pairwise above: {}", pairs_text(&cycle.pairwise_above));
    }
    if !report.consistent {
        match &report.global_unique_order {
            Some(order) => {
                let _ = writeln!(out, "\nglobal unique order: {}", order_text(order));
            }
            None => {
                let _ = writeln!(out, "\nglobal unique order: none");
            }
        }
        let _ = writeln!(
            out,
            "global pairwise above: {}",
            pairs_text(&report.global_pairwise_above)
        );
    }
    out
}

pub fn extremes_text(report: &ExtremesReport) -> String {
    let mut out = String::new();
    push_header(&mut out, report.n, &report.labels, report.consistent);
    push_column_ray(&mut out, &report.column_ray);
    for cycle in &report.cycles {
        let _ = writeln!(out, "\ncycle {}  product {}", cycle.cycle, cycle.product);
        for extreme in &cycle.extremes {
            let _ = writeln!(out, "  {}", vector_text(extreme));
        }
    }
    out
}

pub fn compare_text(report: &CompareReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", report.status);
    let _ = writeln!(out, "evidence:");
    for entry in &report.evidence {
        let _ = writeln!(out, "  {}: {}", entry.check, entry.outcome);
    }
    if let Some(witness) = &report.witness {
        let _ = writeln!(out, "witness: {}", vector_text(witness));
    }
    if let Some(side) = &report.witness_side {
        let _ = writeln!(out, "witness efficient for: {side} matrix");
    }
    out
}

pub fn search_text(report: &SearchReportDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "search: n = {}, iterations = {}, seed = {}, strategy = {}",
        report.n, report.iterations, report.seed, report.strategy
    );
    let _ = writeln!(
        out,
        "examined {}: {} not-equal, {} unknown; {} pairs with matching lower bounds",
        report.examined, report.not_equal, report.unknown, report.lower_bound_matches
    );
    if let Some(reference) = report.reference_pair_not_equal {
        let _ = writeln!(
            out,
            "reference pair separated: {}",
            if reference { "yes" } else { "no" }
        );
    }
    for survivor in &report.survivors {
        let _ = writeln!(out, "\nsurvivor at iteration {}:", survivor.iteration);
        let _ = writeln!(out, "  first:");
        push_grid(&mut out, &survivor.first, "    ");
        let _ = writeln!(out, "  second:");
        push_grid(&mut out, &survivor.second, "    ");
        for entry in &survivor.evidence {
            let _ = writeln!(out, "  {}: {}", entry.check, entry.outcome);
        }
    }
    out
}
