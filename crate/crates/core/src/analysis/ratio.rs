use std::fmt;

use serde::Serialize;

/// An empirical ratio of two nonnegative quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Ratio {
    Finite(f64),
    /// Numerator and denominator both vanish.
    DegenerateZero,
    /// Positive numerator over a vanishing denominator.
    Unbounded,
}

impl Ratio {
    pub fn new(num: f64, den: f64) -> Self {
        if num == 0.0 && den == 0.0 {
            Ratio::DegenerateZero
        } else if den == 0.0 || !(num / den).is_finite() {
            Ratio::Unbounded
        } else {
            Ratio::Finite(num / den)
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Ratio::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Ratio::Finite(_) => "finite",
            Ratio::DegenerateZero => "degenerate-zero",
            Ratio::Unbounded => "unbounded",
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(v) => write!(f, "{v}"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Ratios over a corpus with their maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    /// Largest finite ratio, `None` if there is none.
    pub max: Option<f64>,
    pub argmax: Option<String>,
    pub cases: Vec<(String, Ratio)>,
}

impl RatioReport {
    pub fn from_cases(cases: Vec<(String, Ratio)>) -> Self {
        let mut max = None;
        let mut argmax = None;
        for (id, r) in &cases {
            if let Some(v) = r.value() {
                if max.is_none_or(|m| v > m) {
                    max = Some(v);
                    argmax = Some(id.clone());
                }
            }
        }
        Self { max, argmax, cases }
    }

    /// No case is unbounded.
    pub fn all_finite(&self) -> bool {
        self.cases.iter().all(|(_, r)| *r != Ratio::Unbounded)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        assert_eq!(Ratio::new(0.0, 0.0), Ratio::DegenerateZero);
        assert_eq!(Ratio::new(1.0, 0.0), Ratio::Unbounded);
        assert_eq!(Ratio::new(1.0, 4.0), Ratio::Finite(0.25));
        assert_eq!(Ratio::new(0.0, 2.0).value(), Some(0.0));
        assert_eq!(Ratio::DegenerateZero.to_string(), "degenerate-zero");
    }

    #[test]
    fn report_picks_max() {
        let r = RatioReport::from_cases(vec![
            ("a".into(), Ratio::Finite(1.0)),
            ("b".into(), Ratio::DegenerateZero),
            ("c".into(), Ratio::Finite(3.0)),
        ]);
        assert_eq!(r.max, Some(3.0));
        assert_eq!(r.argmax.as_deref(), Some("c"));
        assert!(r.all_finite());
    }
}
