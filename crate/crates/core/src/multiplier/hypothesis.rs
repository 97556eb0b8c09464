use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::SpaceSpec;

/// Mixed-norm family on either side of a multiplier problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MixedA,
    TriebelF,
}

impl Family {
    /// `A^{p,q}_α` or `F^{p,q}_α`.
    pub fn spec(self, p: f64, q: f64, alpha: f64) -> Result<SpaceSpec> {
        match self {
            Family::MixedA => SpaceSpec::mixed_a(p, q, alpha),
            Family::TriebelF => SpaceSpec::triebel_f(p, q, alpha),
        }
    }
}

/// Multipliers from `X^{p,q}_α` (source) into `Y^{t,s}_β` (target), tested
/// through derivatives of order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremHypothesis {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub t: f64,
    pub s: f64,
    pub beta: f64,
    pub m: usize,
    pub source: Family,
    pub target: Family,
}

impl TheoremHypothesis {
    /// Every violated constraint, quoted.
    pub fn violations(&self) -> Vec<String> {
        let TheoremHypothesis {
            p,
            q,
            alpha,
            t,
            s,
            beta,
            m,
            ..
        } = *self;
        let mut v = Vec::new();
        for (name, x) in [("p", p), ("q", q), ("t", t), ("s", s), ("alpha", alpha), ("beta", beta)] {
            if !(x > 0.0 && x.is_finite()) {
                v.push(format!("{name} > 0 required ({name} = {x})"));
            }
        }
        if !(t <= 1.0) {
            v.push(format!("t ≤ 1 required (t = {t})"));
        }
        if !(t / 2.0 < s && s <= t) {
            v.push(format!("t/2 < s ≤ t required (t = {t}, s = {s})"));
        }
        if !(p.max(q) <= s) {
            v.push(format!("max(p, q) ≤ s required (p = {p}, q = {q}, s = {s})"));
        }
        let mid = alpha + 1.0 / p;
        if !(beta + 1.0 / t < mid && mid < 2.0 / t) {
            v.push(format!(
                "β + 1/t < α + 1/p < 2/t required ({} < {} < {})",
                beta + 1.0 / t,
                mid,
                2.0 / t
            ));
        }
        if !(m as f64 > 2.0 / t - 1.0) {
            v.push(format!("m > 2/t - 1 required (m = {m}, 2/t - 1 = {})", 2.0 / t - 1.0));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Hypothesis(v))
        }
    }

    /// Weight exponent of the multiplier condition, `m + 1 - 1/p + β - α`.
    pub fn tau(&self) -> f64 {
        self.m as f64 + 1.0 - 1.0 / self.p + self.beta - self.alpha
    }

    /// Kernel exponent `γ*` at which `(1 - z)^{-(γ+1)}` stops satisfying the
    /// condition: `β - α - 1/p + 1/t`.
    pub fn gamma_star(&self) -> f64 {
        self.beta - self.alpha - 1.0 / self.p + 1.0 / self.t
    }

    pub fn source_spec(&self) -> Result<SpaceSpec> {
        self.source.spec(self.p, self.q, self.alpha)
    }

    pub fn target_spec(&self) -> Result<SpaceSpec> {
        self.target.spec(self.t, self.s, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn scenario() -> TheoremHypothesis {
        TheoremHypothesis {
            p: 1.0,
            q: 1.0,
            alpha: 0.5,
            t: 1.0,
            s: 1.0,
            beta: 0.25,
            m: 2,
            source: Family::TriebelF,
            target: Family::MixedA,
        }
    }

    #[test]
    fn scenario_is_valid() {
        let h = scenario();
        assert!(h.violations().is_empty());
        assert_eq!(h.tau(), 1.75);
        assert_eq!(h.gamma_star(), -0.25);
    }

    #[test]
    fn lists_every_violation() {
        let h = TheoremHypothesis {
            t: 1.5,
            m: 0,
            ..scenario()
        };
        let v = h.violations();
        assert!(v.iter().any(|e| e.starts_with("t ≤ 1 required")), "{v:?}");
        assert!(v.iter().any(|e| e.starts_with("β + 1/t < α + 1/p < 2/t")), "{v:?}");
        assert!(v.iter().any(|e| e.starts_with("m > 2/t - 1")), "{v:?}");
        let err = h.validate().unwrap_err().to_string();
        assert!(err.contains("t ≤ 1 required"));
    }

    #[test]
    fn strict_boundary_rejected() {
        // β + 1/t = α + 1/p
        let h = TheoremHypothesis {
            beta: 0.5,
            ..scenario()
        };
        assert_eq!(h.violations().len(), 1);
    }
}
