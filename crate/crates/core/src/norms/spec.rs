use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the six space families with its parameters.
///
/// `p = f64::INFINITY` is accepted where the family allows it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SpaceSpec {
    /// `H^p`: `sup_r M_p(f, r)`.
    Hardy { p: f64 },
    /// `A^{p,q}_α`: `(∫ M_p^q(f, R) (1-R)^{αq-1} dR)^{1/q}`.
    MixedA { p: f64, q: f64, alpha: f64 },
    /// `F^{p,q}_α`: radial `L^q` inside, angular `L^p` outside.
    TriebelF { p: f64, q: f64, alpha: f64 },
    /// `A^{∞,∞}_{α,β}`: `sup_r M_∞(D^α f, r) (1-r)^β`.
    SupD { alpha: f64, beta: f64 },
    /// `F^{p,∞,s}`: `L^p` norm of `φ(ξ) = sup_r |f(rξ)| (1-r)^s`.
    LimitF { p: f64, s: f64 },
    /// `A^{p,∞,s}`: `sup_r M_p(f, r) (1-r)^s`.
    LimitA { p: f64, s: f64 },
}

fn positive(name: &str, v: f64, allow_inf: bool, errs: &mut Vec<String>) {
    let ok = v > 0.0 && (v.is_finite() || (allow_inf && v == f64::INFINITY));
    if !ok {
        let range = if allow_inf { "0 < {} <= inf" } else { "0 < {} < inf" };
        errs.push(format!("{} required, got {name} = {v}", range.replace("{}", name)));
    }
}

impl SpaceSpec {
    /// Checks the parameter ranges, reporting every violation.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        match *self {
            SpaceSpec::Hardy { p } => positive("p", p, true, &mut errs),
            SpaceSpec::MixedA { p, q, alpha } => {
                positive("p", p, true, &mut errs);
                positive("q", q, false, &mut errs);
                positive("alpha", alpha, false, &mut errs);
            }
            SpaceSpec::TriebelF { p, q, alpha } => {
                positive("p", p, false, &mut errs);
                positive("q", q, false, &mut errs);
                positive("alpha", alpha, false, &mut errs);
            }
            SpaceSpec::SupD { alpha, beta } => {
                for (name, v) in [("alpha", alpha), ("beta", beta)] {
                    if !(v >= 0.0 && v.is_finite()) {
                        errs.push(format!("{name} >= 0 required, got {name} = {v}"));
                    }
                }
            }
            SpaceSpec::LimitF { p, s } => {
                positive("p", p, false, &mut errs);
                positive("s", s, false, &mut errs);
            }
            SpaceSpec::LimitA { p, s } => {
                positive("p", p, true, &mut errs);
                positive("s", s, false, &mut errs);
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpace(format!("{}: {}", self.family(), errs.join("; "))))
        }
    }

    pub fn hardy(p: f64) -> Result<Self> {
        Self::checked(SpaceSpec::Hardy { p })
    }

    pub fn mixed_a(p: f64, q: f64, alpha: f64) -> Result<Self> {
        Self::checked(SpaceSpec::MixedA { p, q, alpha })
    }

    pub fn triebel_f(p: f64, q: f64, alpha: f64) -> Result<Self> {
        Self::checked(SpaceSpec::TriebelF { p, q, alpha })
    }

    pub fn sup_d(alpha: f64, beta: f64) -> Result<Self> {
        Self::checked(SpaceSpec::SupD { alpha, beta })
    }

    pub fn limit_f(p: f64, s: f64) -> Result<Self> {
        Self::checked(SpaceSpec::LimitF { p, s })
    }

    pub fn limit_a(p: f64, s: f64) -> Result<Self> {
        Self::checked(SpaceSpec::LimitA { p, s })
    }

    fn checked(spec: Self) -> Result<Self> {
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            SpaceSpec::Hardy { .. } => "hardy",
            SpaceSpec::MixedA { .. } => "mixed-a",
            SpaceSpec::TriebelF { .. } => "triebel-f",
            SpaceSpec::SupD { .. } => "sup-d",
            SpaceSpec::LimitF { .. } => "limit-f",
            SpaceSpec::LimitA { .. } => "limit-a",
        }
    }

    /// Whether the norm is a supremum over the boundary ladder.
    pub fn is_sup_type(&self) -> bool {
        !matches!(self, SpaceSpec::MixedA { .. } | SpaceSpec::TriebelF { .. })
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpaceSpec::Hardy { p } => write!(f, "H^{p}"),
            SpaceSpec::MixedA { p, q, alpha } => write!(f, "A^{{{p},{q}}}_{alpha}"),
            SpaceSpec::TriebelF { p, q, alpha } => write!(f, "F^{{{p},{q}}}_{alpha}"),
            SpaceSpec::SupD { alpha, beta } => write!(f, "A^{{inf,inf}}_{{{alpha},{beta}}}"),
            SpaceSpec::LimitF { p, s } => write!(f, "F^{{{p},inf,{s}}}"),
            SpaceSpec::LimitA { p, s } => write!(f, "A^{{{p},inf,{s}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_documented_ranges() {
        assert!(SpaceSpec::hardy(f64::INFINITY).is_ok());
        assert!(SpaceSpec::mixed_a(f64::INFINITY, 1.0, 0.5).is_ok());
        assert!(SpaceSpec::sup_d(0.0, 0.0).is_ok());
        assert!(SpaceSpec::limit_a(0.5, 0.1).is_ok());
    }

    #[test]
    fn reports_every_violation() {
        let err = SpaceSpec::triebel_f(f64::INFINITY, 0.0, -1.0).unwrap_err().to_string();
        assert!(err.contains("p = inf"), "{err}");
        assert!(err.contains("q = 0"), "{err}");
        assert!(err.contains("alpha = -1"), "{err}");
        assert!(SpaceSpec::sup_d(-0.1, 0.0).is_err());
        assert!(SpaceSpec::limit_f(1.0, 0.0).is_err());
        assert!(SpaceSpec::hardy(f64::NAN).is_err());
    }

    #[test]
    fn serde_tags_family() {
        let s = serde_json::to_string(&SpaceSpec::MixedA { p: 1.0, q: 2.0, alpha: 0.5 }).unwrap();
        assert_eq!(s, r#"{"family":"mixed-a","p":1.0,"q":2.0,"alpha":0.5}"#);
    }
}
