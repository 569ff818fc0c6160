//! Verification suites behind `qdgg verify`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use qdgg_core::fibonacci::{check_lemma_fib, fib_graphs, word_from_reflected};
use qdgg_core::permutations::check_perm_identities;
use qdgg_core::tableaux::check_lemma_tab;
use qdgg_core::trees::check_lemma_tree;
use qdgg_core::{pairing, q_falling, LinearCombination, QDGGPair, QPoly, QWeylReport, VertexRef};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::family::Built;
use crate::format::compact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Qweyl,
    Theorem1,
    Mixed,
    FamilyLemma,
    Q1,
    QMinus1,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Qweyl,
        Check::Theorem1,
        Check::Mixed,
        Check::FamilyLemma,
        Check::Q1,
        Check::QMinus1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Qweyl => "qweyl",
            Check::Theorem1 => "theorem1",
            Check::Mixed => "mixed",
            Check::FamilyLemma => "family-lemma",
            Check::Q1 => "q1",
            Check::QMinus1 => "qminus1",
        }
    }

    /// Parses a comma-separated list, keeping first occurrences in order.
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let check = part.parse()?;
            if !out.contains(&check) {
                out.push(check);
            }
        }
        if out.is_empty() {
            return Err(CliError::Usage("no checks given".into()));
        }
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check {s:?}")))
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub check: String,
    /// Height, vertex, or range the row covers.
    pub at: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Row {
    fn new(
        check: Check,
        at: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) -> Self {
        Row {
            check: check.name().into(),
            at: at.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub family: String,
    pub r: u32,
    pub height: usize,
    pub passed: bool,
    pub rows: Vec<Row>,
}

pub fn run(built: &Built, checks: &[Check]) -> Result<Report> {
    run_checks(&built.keyed(), Some(built), built.family().name(), checks)
}

/// Runs checks on a pair loaded from a file. The family lemmas need typed
/// payloads and are rejected.
pub fn run_loaded(pair: &QDGGPair<String>, checks: &[Check]) -> Result<Report> {
    if checks.contains(&Check::FamilyLemma) {
        return Err(CliError::Usage(
            "family-lemma needs --family, not --input".into(),
        ));
    }
    run_checks(pair, None, "input", checks)
}

fn run_checks(
    pair: &QDGGPair<String>,
    built: Option<&Built>,
    name: &str,
    checks: &[Check],
) -> Result<Report> {
    let mut rows = Vec::new();
    for &check in checks {
        match check {
            Check::Qweyl => {
                let report = pair.verify_qweyl(pair.height().checked_sub(1))?;
                rows.extend(relation_rows(check, pair, &report, "q"));
            }
            Check::Q1 | Check::QMinus1 => {
                let c = if check == Check::Q1 { 1 } else { -1 };
                let report = pair
                    .specialize(c)?
                    .verify_relation(pair.height().checked_sub(1))?;
                rows.extend(relation_rows(check, pair, &report, &c.to_string()));
            }
            Check::Theorem1 => {
                for t in pair.check_theorem_all(pair.height())? {
                    rows.push(Row::new(
                        check,
                        format!("n={}", t.n),
                        compact(&t.rhs),
                        compact(&t.lhs),
                        t.passed(),
                    ));
                }
            }
            Check::Mixed => rows.extend(mixed_rows(pair)?),
            Check::FamilyLemma => rows.extend(lemma_rows(built.expect("checked by run_loaded"))?),
        }
    }
    Ok(Report {
        family: name.into(),
        r: pair.r(),
        height: pair.height(),
        passed: rows.iter().all(|row| row.pass),
        rows,
    })
}

fn relation_rows<S>(
    check: Check,
    pair: &QDGGPair<String>,
    report: &QWeylReport<S>,
    q: &str,
) -> Vec<Row> {
    let expected = format!("DU - ({q})UD = {}I", pair.r());
    if pair.height() == 0 {
        return vec![Row::new(
            check,
            "none",
            expected,
            "nothing to check below the top level",
            true,
        )];
    }
    let mut failing = BTreeMap::<usize, usize>::new();
    for f in &report.failures {
        *failing.entry(f.vertex.level).or_default() += 1;
    }
    (0..pair.height())
        .map(|h| {
            let n = pair.levels().size(h);
            let bad = failing.get(&h).copied().unwrap_or(0);
            Row::new(
                check,
                format!("height {h}"),
                expected.clone(),
                format!("holds on {} of {n}", n - bad),
                bad == 0,
            )
        })
        .collect()
}

/// `(D^{n-m} U^n ∅, w) = r^{n-m} [n]_q ... [m+1]_q f^w` for every `w` with
/// `h(w) = m <= n`, one sweep per `n`.
fn mixed_rows(pair: &QDGGPair<String>) -> Result<Vec<Row>> {
    let up = pair.gamma();
    let down = pair.gamma_prime();
    let f = up.path_gfs(pair.height())?;
    let r = QPoly::constant(i64::from(pair.r()));
    let mut rows = Vec::new();
    let mut top = LinearCombination::vertex(VertexRef::new(0, 0));
    for n in 0..=pair.height() {
        if n > 0 {
            top = up.apply_up(&top)?;
        }
        let mut x = top.clone();
        let (mut total, mut good) = (0, 0);
        for m in (0..=n).rev() {
            if m < n {
                x = down.apply_down(&x)?;
            }
            let factor = r
                .checked_pow((n - m) as u32)?
                .checked_mul(&q_falling(n, m)?)?;
            for v in pair.levels().vertices(m) {
                total += 1;
                if pairing(&x, v)? == factor.checked_mul(&f[m][v.index])? {
                    good += 1;
                }
            }
        }
        rows.push(Row::new(
            Check::Mixed,
            format!("n={n}"),
            format!("{total} vertices"),
            format!("{good} match"),
            good == total,
        ));
    }
    Ok(rows)
}

fn lemma_rows(built: &Built) -> Result<Vec<Row>> {
    let check = Check::FamilyLemma;
    let mut rows = Vec::new();
    match built {
        Built::Fib(pair) => {
            if pair.r() != 1 {
                return Err(CliError::Usage("family-lemma for fib needs --r 1".into()));
            }
            for h in 0..=pair.height() {
                let mut bad = Vec::new();
                for v in pair.levels().vertices(h) {
                    let report = check_lemma_fib(pair, pair.levels().payload(v))?;
                    if !report.passed() {
                        bad.push(pair.levels().key(v).to_string());
                    }
                }
                let n = pair.levels().size(h);
                rows.push(Row::new(
                    check,
                    format!("height {h}"),
                    format!("{n} words"),
                    failures(n, &bad),
                    bad.is_empty(),
                ));
            }
        }
        Built::Perm(pair) => {
            for n in 0..=pair.height() {
                let report = check_perm_identities(pair, n)?;
                let bad = report.gamma_mismatches.len() + report.gamma_prime_mismatches.len();
                rows.push(identity_row(
                    n,
                    &report.q_factorial,
                    &report.inversion_sum,
                    bad,
                    report.passed(),
                ));
            }
        }
        Built::Tab(pair) => {
            for n in 0..=pair.height() {
                let report = check_lemma_tab(pair, n)?;
                let bad = report.mismatches.len()
                    + report.partial_sum_mismatches.len()
                    + usize::from(!report.prime_all_one);
                rows.push(identity_row(
                    n,
                    &report.q_factorial,
                    &report.grouped_sum,
                    bad,
                    report.passed(),
                ));
            }
        }
        Built::Tree(pair) => {
            for n in 0..=pair.height() {
                let report = check_lemma_tree(pair, n)?;
                let bad = report.mismatches.len()
                    + usize::from(!report.prime_all_one)
                    + usize::from(!report.covers_each_once);
                rows.push(identity_row(
                    n,
                    &report.q_factorial,
                    &report.grouped_sum,
                    bad,
                    report.passed(),
                ));
            }
        }
        Built::Reflect(pair) => {
            let r = pair.r();
            let as_words = pair.map_payloads(|v| word_from_reflected(v, r))?;
            let diffs = as_words.diff_by_key(&fib_graphs(r, pair.height())?);
            rows.push(Row::new(
                check,
                format!("heights 0..={}", pair.height()),
                format!("isomorphic to Fib_({r})"),
                format!("{} differences", diffs.len()),
                diffs.is_empty(),
            ));
        }
    }
    Ok(rows)
}

fn identity_row(n: usize, expected: &QPoly, actual: &QPoly, bad: usize, pass: bool) -> Row {
    let mut actual = compact(actual);
    if bad > 0 {
        let _ = write!(actual, " ({bad} mismatches)");
    }
    Row::new(
        Check::FamilyLemma,
        format!("n={n}"),
        compact(expected),
        actual,
        pass,
    )
}

fn failures(n: usize, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{n} pass"),
        Some(first) => format!("{} fail, first {first}", bad.len()),
    }
}

/// Aligned plain-text table, one row per line, with a summary line.
pub fn render_table(report: &Report) -> String {
    let header = ["check", "at", "expected", "actual", "pass"];
    let cells: Vec<[String; 5]> = report
        .rows
        .iter()
        .map(|r| {
            let pass = if r.pass { "PASS" } else { "FAIL" };
            [
                r.check.clone(),
                r.at.clone(),
                r.expected.clone(),
                r.actual.clone(),
                pass.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut String, row: &[&str]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    let mut out = String::new();
    line(&mut out, &header);
    for row in &cells {
        line(
            &mut out,
            &row.iter().map(String::as_str).collect::<Vec<_>>(),
        );
    }
    let failed = report.rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(
        out,
        "{} r={} height={}: {} rows, {failed} failed",
        report.family,
        report.r,
        report.height,
        report.rows.len()
    );
    out
}

pub fn render_json(report: &Report) -> Result<String> {
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;

    fn report(family: Family, r: u32, height: usize, checks: &str) -> Report {
        run(
            &family.build(r, height).unwrap(),
            &Check::parse_list(checks).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn every_family_passes_every_check() {
        for family in Family::ALL {
            let all = "qweyl,theorem1,mixed,family-lemma,q1,qminus1";
            let rep = report(family, 1, 4, all);
            assert!(rep.passed, "{}", render_table(&rep));
        }
        assert!(report(Family::Reflect, 2, 4, "family-lemma,qweyl").passed);
    }

    #[test]
    fn row_layout() {
        let rep = report(Family::Perm, 1, 3, "theorem1");
        assert_eq!(rep.rows.len(), 4);
        assert_eq!(rep.rows[3].expected, "1+2q+2q^2+q^3");
        let table = render_table(&rep);
        assert!(table.starts_with("check"));
        assert!(table.ends_with("perm r=1 height=3: 4 rows, 0 failed\n"));
        let json: serde_json::Value = serde_json::from_str(&render_json(&rep).unwrap()).unwrap();
        assert_eq!(json["rows"][3]["pass"], true);
    }

    #[test]
    fn height_zero_is_vacuous() {
        let rep = report(Family::Tree, 1, 0, "qweyl,q1");
        assert!(rep.passed);
        assert_eq!(rep.rows.len(), 2);
    }

    #[test]
    fn check_lists() {
        assert_eq!(
            Check::parse_list("qweyl, q1,qweyl").unwrap(),
            vec![Check::Qweyl, Check::Q1]
        );
        assert!(Check::parse_list("qweyl,nope").is_err());
        assert!(Check::parse_list("").is_err());
    }

    #[test]
    fn loaded_pairs() {
        let pair = Family::Tab.build(1, 3).unwrap().keyed();
        assert!(
            run_loaded(&pair, &[Check::Qweyl, Check::Mixed])
                .unwrap()
                .passed
        );
        assert!(matches!(
            run_loaded(&pair, &[Check::FamilyLemma]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn fib_lemma_needs_r_one() {
        let built = Family::Fib.build(2, 3).unwrap();
        assert!(matches!(
            run(&built, &[Check::FamilyLemma]),
            Err(CliError::Usage(_))
        ));
    }
}
