//! Tabular renderings of robustness reports.

use std::path::PathBuf;
use std::str::FromStr;

use super::CliError;
use crate::scoring::{fscore, round2, RobustnessReport};

pub const CSV_HEADER: [&str; 9] = [
    "parser",
    "unlabeled_overall",
    "unlabeled_1",
    "unlabeled_2",
    "unlabeled_3",
    "labeled_overall",
    "labeled_1",
    "labeled_2",
    "labeled_3",
];

fn cell(x: Option<f64>) -> String {
    x.map(|x| format!("{:.2}", round2(x))).unwrap_or_default()
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv is UTF-8")
}

/// One row per parser, inclusive scores, shaped like the published table.
pub fn report_csv(reports: &[RobustnessReport]) -> String {
    let mut rows = vec![CSV_HEADER.iter().map(|s| s.to_string()).collect()];
    for r in reports {
        let mut row = vec![r.parser.clone(), cell(Some(r.overall.unlabeled))];
        row.extend((1..=3).map(|k| cell(r.level(k).map(|l| l.unlabeled_incl))));
        row.push(cell(Some(r.overall.labeled)));
        row.extend((1..=3).map(|k| cell(r.level(k).map(|l| l.labeled_incl))));
        rows.push(row);
    }
    csv_string(rows)
}

/// Score per error level, one series per parser.
pub fn plot_csv(reports: &[RobustnessReport], labeled: bool) -> String {
    let mut rows = vec![vec!["parser".into(), "level".into(), "score".into()]];
    for r in reports {
        for l in &r.levels {
            let score = if labeled {
                l.labeled_incl
            } else {
                l.unlabeled_incl
            };
            rows.push(vec![
                r.parser.clone(),
                l.level.to_string(),
                cell(Some(score)),
            ]);
        }
    }
    csv_string(rows)
}

/// Reads report files holding either one report or an array of them.
pub fn read_reports(paths: &[PathBuf]) -> Result<Vec<RobustnessReport>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::io(p, e))?;
        let parsed = if value.is_array() {
            serde_json::from_value::<Vec<RobustnessReport>>(value)
        } else {
            serde_json::from_value::<RobustnessReport>(value).map(|r| vec![r])
        };
        out.extend(parsed.map_err(|e| CliError::io(p, e))?);
    }
    Ok(out)
}

/// `NAME:PRECISION,RECALL`, both in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionRecall {
    pub name: String,
    pub precision: f64,
    pub recall: f64,
}

impl FromStr for PrecisionRecall {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected NAME:PRECISION,RECALL, got {s:?}");
        let (name, nums) = s.rsplit_once(':').ok_or_else(bad)?;
        let (p, r) = nums.split_once(',').ok_or_else(bad)?;
        let p: f64 = p.trim().parse().map_err(|_| bad())?;
        let r: f64 = r.trim().parse().map_err(|_| bad())?;
        if name.is_empty() || !(0.0..=100.0).contains(&p) || !(0.0..=100.0).contains(&r) {
            return Err(bad());
        }
        Ok(PrecisionRecall {
            name: name.to_string(),
            precision: p,
            recall: r,
        })
    }
}

fn fmt_opt(x: Option<f64>, width: usize) -> String {
    match x {
        Some(x) => format!("{:>width$.2}", round2(x)),
        None => format!("{:>width$}", "-"),
    }
}

fn fmt_drop(x: Option<f64>) -> String {
    match x {
        Some(x) => format!("{x:.1}%"),
        None => "undefined".into(),
    }
}

/// Comparison table sorted by overall unlabeled score, then degradation
/// and optional F-score lines.
pub fn render_comparison(
    reports: &[RobustnessReport],
    pr: &[PrecisionRecall],
) -> Result<String, CliError> {
    let mut sorted: Vec<&RobustnessReport> = reports.iter().collect();
    sorted.sort_by(|a, b| {
        b.overall
            .unlabeled
            .total_cmp(&a.overall.unlabeled)
            .then_with(|| a.parser.cmp(&b.parser))
    });
    let w = sorted
        .iter()
        .map(|r| r.parser.len())
        .max()
        .unwrap_or(0)
        .max(6);
    let mut out = format!(
        "{:<w$}  {:>8} {:>7} {:>7} {:>7}  {:>8} {:>7} {:>7} {:>7}\n",
        "parser", "unlab", "1", "2", "3", "lab", "1", "2", "3"
    );
    for r in &sorted {
        out.push_str(&format!(
            "{:<w$}  {} {} {} {}  {} {} {} {}\n",
            r.parser,
            fmt_opt(Some(r.overall.unlabeled), 8),
            fmt_opt(r.level(1).map(|l| l.unlabeled_incl), 7),
            fmt_opt(r.level(2).map(|l| l.unlabeled_incl), 7),
            fmt_opt(r.level(3).map(|l| l.unlabeled_incl), 7),
            fmt_opt(Some(r.overall.labeled), 8),
            fmt_opt(r.level(1).map(|l| l.labeled_incl), 7),
            fmt_opt(r.level(2).map(|l| l.labeled_incl), 7),
            fmt_opt(r.level(3).map(|l| l.labeled_incl), 7),
        ));
    }
    out.push('\n');
    for r in &sorted {
        out.push_str(&format!(
            "degradation {} (level 1 to 3): unlabeled {}, labeled {}\n",
            r.parser,
            fmt_drop(r.degradation.unlabeled),
            fmt_drop(r.degradation.labeled)
        ));
    }
    for p in pr {
        let f = fscore(p.precision, p.recall)?;
        out.push_str(&format!("F-score {}: {f:.1}\n", p.name));
    }
    Ok(out)
}
