//! Human-readable rendering: numbers rounded to at most five decimals with
//! trailing zeros dropped, and plain-text tables.

use crate::mcgdm::{CollectiveMatrix, RankReport, SensitivityReport};
use crate::ndim::NDimInterval;
use crate::report::CompatibilityReport;

/// `0.457880000001` → `"0.45788"`, `0.5` → `"0.5"`, `1.0` → `"1"`.
pub fn number(x: f64) -> String {
    let s = format!("{x:.5}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

pub fn interval(x: &NDimInterval) -> String {
    let parts: Vec<String> = x.components().iter().map(|&v| number(v)).collect();
    format!("({})", parts.join(", "))
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (c, cell) in row.iter().enumerate().take(cols) {
            width[c] = width[c].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header)];
    out.push(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n") + "\n"
}

pub fn collective_table(collective: &CollectiveMatrix, alternatives: &[String], criteria: &[String]) -> String {
    let mut header = vec![String::new()];
    header.extend(criteria.iter().cloned());
    let rows: Vec<Vec<String>> = collective
        .entries
        .iter()
        .zip(alternatives)
        .map(|(row, a)| std::iter::once(a.clone()).chain(row.iter().map(interval)).collect())
        .collect();
    table(&header, &rows)
}

pub fn rank_report(report: &RankReport) -> String {
    let rows: Vec<Vec<String>> = report
        .scores
        .iter()
        .map(|s| vec![s.alternative.clone(), interval(&s.score)])
        .collect();
    let mut out = table(&["alternative".into(), "score".into()], &rows);
    out.push_str(&format!("\nranking (worst to best): {}\n", report.ranking.notation));
    for note in &report.annotations {
        out.push_str(&format!("\nnote [{}]: {}\n", note.code, note.message));
    }
    out
}

const WITNESS_WIDTH: usize = 160;

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        s.chars().take(width - 1).chain(std::iter::once('…')).collect()
    }
}

/// One row per report; long witnesses are clipped, the JSON output has them in full.
pub fn reports(reports: &[CompatibilityReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.axiom.to_string(),
                if r.holds { "holds".into() } else { "fails".into() },
                r.samples.to_string(),
                r.witness.as_ref().map(|w| clip(&w.to_string(), WITNESS_WIDTH)).unwrap_or_default(),
            ]
        })
        .collect();
    table(&["axiom".into(), "result".into(), "samples".into(), "witness".into()], &rows)
}

pub fn sensitivity(report: &SensitivityReport) -> String {
    let mut out = format!(
        "baseline: {}\nedited:   {}\n",
        report.baseline.ranking.notation, report.edited.ranking.notation
    );
    if !report.score_deltas.is_empty() {
        let rows: Vec<Vec<String>> = report
            .score_deltas
            .iter()
            .map(|d| vec![d.alternative.clone(), interval(&d.before), interval(&d.after)])
            .collect();
        out.push('\n');
        out.push_str(&table(&["alternative".into(), "before".into(), "after".into()], &rows));
    }
    if report.flipped.is_empty() {
        out.push_str("\nno pairwise relation changed\n");
    } else {
        out.push_str("\nflipped pairs:\n");
        for f in &report.flipped {
            out.push_str(&format!("  {} {} {}  ->  {} {} {}\n", f.first, f.before, f.second, f.first, f.after, f.second));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_trim() {
        assert_eq!(number(0.457880000001), "0.45788");
        assert_eq!(number(0.5), "0.5");
        assert_eq!(number(1.0), "1");
        assert_eq!(number(0.0), "0");
        assert_eq!(number(-0.000001), "0");
        assert_eq!(number(0.123456), "0.12346");
    }

    #[test]
    fn table_aligns() {
        let t = table(&["a".into(), "bb".into()], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
