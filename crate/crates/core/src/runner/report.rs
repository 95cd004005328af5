use std::fmt::Write;

use serde::Serialize;

use crate::rouge::{CorpusReport, RougeConfig, HISTOGRAM_BINS};
use crate::scoring::Method;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodReport {
    pub method: Method,
    pub report: CorpusReport<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rouge: RougeConfig,
    /// In method order: gsm, fuzzy, baseline.
    pub methods: Vec<MethodReport>,
}

fn label(m: Method) -> &'static str {
    match m {
        Method::Gsm => "GSM",
        Method::Fuzzy => "Fuzzy",
        Method::Baseline => "Baseline",
    }
}

/// Plain-text tables: average precision / recall / F-measure per method,
/// then the number of documents per F-measure bin.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ROUGE-1 average scores");
    let _ = writeln!(
        out,
        "{:<12}{:>12}{:>12}{:>12}{:>8}",
        "Summarizer", "Precision", "Recall", "F-measure", "Docs"
    );
    for m in &report.methods {
        let a = &m.report.averages;
        let _ = writeln!(
            out,
            "{:<12}{:>12.5}{:>12.5}{:>12.5}{:>8}",
            label(m.method),
            a.precision,
            a.recall,
            a.f_measure,
            m.report.documents.len()
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "Documents per F-measure range");
    let _ = write!(out, "{:<12}", "F-measure");
    for m in &report.methods {
        let _ = write!(out, "{:>10}", label(m.method));
    }
    let _ = writeln!(out);
    for (i, bin) in HISTOGRAM_BINS.iter().enumerate() {
        let _ = write!(out, "{bin:<12}");
        for m in &report.methods {
            let _ = write!(out, "{:>10}", m.report.histogram[i]);
        }
        let _ = writeln!(out);
    }
    out
}
