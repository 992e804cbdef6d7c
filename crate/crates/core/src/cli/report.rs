//! Machine-readable run reports (JSON and CSV).

use serde::{Serialize, Serializer};

use crate::arith::encode_bits;
use crate::grover::GroverReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits.
pub fn round_sig(p: f64) -> f64 {
    format!("{p:.11e}").parse().unwrap_or(p)
}

fn ser_prob<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramRow {
    pub state: String,
    pub x: u64,
    pub y: u64,
    #[serde(serialize_with = "ser_prob")]
    pub probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionRow {
    pub state: String,
    pub x_base2: String,
    pub y_base2: String,
    pub x: u64,
    pub y: u64,
    pub sum: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub bits: usize,
    pub target: u64,
    pub iterations: usize,
    pub index_space_size: u64,
    pub solution_count: u64,
    pub shots: u64,
    pub seed: u64,
    #[serde(serialize_with = "ser_prob")]
    pub success_probability: f64,
    #[serde(serialize_with = "ser_prob")]
    pub predicted_success: f64,
    pub histogram: Vec<HistogramRow>,
    /// Probability mass of rows dropped by top-K truncation.
    #[serde(serialize_with = "ser_prob")]
    pub residual_probability: f64,
    pub solutions: Vec<SolutionRow>,
}

impl ReportDocument {
    /// Histogram sorted by descending probability, ties by ascending state,
    /// truncated to `top` rows unless `top` is zero.
    pub fn from_report(report: &GroverReport, shots: u64, seed: u64, top: usize) -> ReportDocument {
        let m = report.problem.m;
        let mut rows: Vec<HistogramRow> = report
            .histogram
            .iter()
            .map(|(state, &p)| {
                let key = u64::from_str_radix(state, 2).unwrap_or(0);
                HistogramRow {
                    state: state.clone(),
                    x: key >> m,
                    y: key & ((1 << m) - 1),
                    probability: p,
                    count: report.counts.as_ref().map(|c| c.get(state).copied().unwrap_or(0)),
                }
            })
            .collect();
        rows.sort_by(|a, b| {
            round_sig(b.probability)
                .total_cmp(&round_sig(a.probability))
                .then_with(|| a.state.cmp(&b.state))
        });
        let mut residual = 0.0;
        if top > 0 && rows.len() > top {
            residual = rows[top..].iter().map(|r| r.probability).sum();
            rows.truncate(top);
        }
        let solutions = report
            .solutions
            .iter()
            .map(|s| SolutionRow {
                state: s.state.clone(),
                x_base2: encode_bits(s.x, m),
                y_base2: encode_bits(s.y, m),
                x: s.x,
                y: s.y,
                sum: s.x + s.y,
            })
            .collect();
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            bits: m,
            target: report.problem.n,
            iterations: report.iterations,
            index_space_size: report.problem.space,
            solution_count: report.problem.solutions,
            shots,
            seed,
            success_probability: report.success_probability,
            predicted_success: report.predicted_success,
            histogram: rows,
            residual_probability: residual,
            solutions,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `state,x,y,probability`, one row per histogram entry.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["state", "x", "y", "probability"])
            .expect("in-memory write");
        for r in &self.histogram {
            w.write_record([
                r.state.clone(),
                r.x.to_string(),
                r.y.to_string(),
                round_sig(r.probability).to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::{run_grover, RunOptions};

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(0.166_629_791_259_765_62), 0.166_629_791_26);
        assert_eq!(round_sig(0.015625), 0.015625);
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn histogram_order_and_truncation() {
        let r = run_grover(3, 5, &RunOptions::iterations(2)).unwrap();
        let doc = ReportDocument::from_report(&r, 0, 0, 0);
        assert_eq!(doc.histogram.len(), 64);
        let top: Vec<&str> = doc.histogram[..6].iter().map(|h| h.state.as_str()).collect();
        assert_eq!(top, vec!["000101", "001100", "010011", "011010", "100001", "101000"]);
        let total: f64 = doc.histogram.iter().map(|h| h.probability).sum();
        assert!((total - 1.0).abs() < 1e-9);

        let doc = ReportDocument::from_report(&r, 0, 0, 6);
        assert_eq!(doc.histogram.len(), 6);
        let shown: f64 = doc.histogram.iter().map(|h| h.probability).sum();
        assert!((shown + doc.residual_probability - 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_layout() {
        let r = run_grover(3, 5, &RunOptions::iterations(0)).unwrap();
        let csv = ReportDocument::from_report(&r, 0, 0, 2).to_csv();
        assert_eq!(csv, "state,x,y,probability\n000000,0,0,0.015625\n000001,0,1,0.015625\n");
    }

    #[test]
    fn solution_rows_echo_decimal_and_binary() {
        let r = run_grover(3, 5, &RunOptions::iterations(2)).unwrap();
        let doc = ReportDocument::from_report(&r, 0, 0, 0);
        let row = doc.solutions.iter().find(|s| s.x == 5).unwrap();
        assert_eq!(
            row,
            &SolutionRow {
                state: "101000".into(),
                x_base2: "101".into(),
                y_base2: "000".into(),
                x: 5,
                y: 0,
                sum: 5
            }
        );
    }
}
