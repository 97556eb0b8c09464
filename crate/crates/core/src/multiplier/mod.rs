//! Coefficient multipliers between mixed-norm spaces: the derivative growth
//! condition on the generating function, operator ratios, necessity probes
//! along test kernels, and verdict tables over multiplier families.

mod hypothesis;
mod probe;
mod proposition;
mod scenario;

pub use hypothesis::{Family, TheoremHypothesis};
pub use probe::{
    condition_value, level_window, necessity_probe, operator_ratio, test_kernel, ConditionValue, NecessityPoint,
    NecessityProbe, FLAT_SLOPE,
};
pub use proposition::{proposition_probe, PropositionParams, PropositionReport};
pub use scenario::{
    kernel_sweep, theorem_scenario, GCase, MultiplierVerdict, ScenarioSettings, ScenarioSummary, ScenarioTable, Verdict,
};
