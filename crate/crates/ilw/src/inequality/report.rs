use std::fmt::Write as _;

use serde::Serialize;

/// One evaluated inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioCase {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Ratios `lhs / rhs` of one inequality over a battery of cases.
///
/// Cases with `rhs = 0` are kept apart in `excluded`; `max_ratio` is 0 when
/// no case qualifies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub lemma: String,
    pub cases: Vec<RatioCase>,
    pub excluded: Vec<String>,
    pub max_ratio: f64,
    /// `max(a, b) / min(a, b)` of the maxima on the grid and its refinement.
    pub refinement_factor: Option<f64>,
}

impl RatioReport {
    pub fn new(lemma: impl Into<String>) -> Self {
        Self { lemma: lemma.into(), cases: Vec::new(), excluded: Vec::new(), max_ratio: 0.0, refinement_factor: None }
    }

    pub fn push(&mut self, label: impl Into<String>, lhs: f64, rhs: f64) {
        let label = label.into();
        if rhs == 0.0 {
            self.excluded.push(label);
            return;
        }
        let ratio = lhs / rhs;
        if ratio > self.max_ratio || ratio.is_nan() {
            self.max_ratio = ratio;
        }
        self.cases.push(RatioCase { label, lhs, rhs, ratio });
    }

    pub fn single(lemma: impl Into<String>, label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let mut r = Self::new(lemma);
        r.push(label, lhs, rhs);
        r
    }

    pub fn extend(&mut self, other: RatioReport) {
        for c in other.cases {
            self.push(c.label, c.lhs, c.rhs);
        }
        self.excluded.extend(other.excluded);
    }

    /// Ratio of a single-case report, `None` when the case was excluded.
    pub fn ratio(&self) -> Option<f64> {
        self.cases.first().map(|c| c.ratio)
    }

    pub fn is_finite(&self) -> bool {
        self.max_ratio.is_finite() && self.cases.iter().all(|c| c.ratio.is_finite() && c.ratio >= 0.0)
    }

    /// Record the change of `max_ratio` against the same battery on a refined grid.
    pub fn compare_refined(&mut self, refined: &RatioReport) {
        let (a, b) = (self.max_ratio, refined.max_ratio);
        let factor = if a == 0.0 && b == 0.0 { 1.0 } else { a.max(b) / a.min(b) };
        self.refinement_factor = Some(factor);
    }

    /// Finite and, when refined, changing by less than a factor 2.
    pub fn is_stable(&self) -> bool {
        self.is_finite() && self.refinement_factor.map_or(true, |f| f < 2.0)
    }

    pub const CSV_HEADER: &'static str = "lemma,case,lhs,rhs,ratio";

    /// One CSV row per case, without header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(out, "\"{}\",\"{}\",{:.16e},{:.16e},{:.16e}", self.lemma, c.label, c.lhs, c.rhs, c.ratio);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs_is_excluded() {
        let mut r = RatioReport::new("x");
        r.push("a", 0.0, 0.0);
        r.push("b", 1.0, 4.0);
        assert_eq!(r.excluded, vec!["a".to_string()]);
        assert_eq!(r.max_ratio, 0.25);
        assert!(r.is_finite());
    }

    #[test]
    fn refinement_factor_is_symmetric() {
        let mut a = RatioReport::single("x", "c", 1.0, 1.0);
        let b = RatioReport::single("x", "c", 1.5, 1.0);
        a.compare_refined(&b);
        assert_eq!(a.refinement_factor, Some(1.5));
        assert!(a.is_stable());
        let mut e = RatioReport::new("empty");
        e.compare_refined(&RatioReport::new("empty"));
        assert_eq!(e.refinement_factor, Some(1.0));
    }
}
