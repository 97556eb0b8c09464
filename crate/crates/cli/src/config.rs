//! Experiment configuration: one TOML file, validated up front.
//!
//! ```toml
//! seed = 7
//!
//! [output]
//! dir = "out"
//! format = "both"
//!
//! [grid]
//! oversample = 2
//!
//! [[experiment]]
//! name = "hardy-growth"
//! kind = "lemma3-fit"
//! levels = [4, 10]
//! ```
//!
//! See `docs/config.md` for every kind and its keys.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;

use polydisc::analysis::EmbeddingSource;
use polydisc::function::CoefficientLaw;
use polydisc::multiplier::{Family, PropositionParams, ScenarioSettings, TheoremHypothesis};
use polydisc::norms::{QuadGrid, SpaceSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Output {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for Output {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: Format::Both,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NormTable {
    pub dim: usize,
    pub degree: usize,
    /// Number of seeded random polynomials.
    pub count: usize,
    pub law: CoefficientLaw,
    /// Coefficient files added to the corpus, relative to the config file.
    pub files: Vec<PathBuf>,
    pub spaces: Vec<SpaceSpec>,
}

impl Default for NormTable {
    fn default() -> Self {
        Self {
            dim: 1,
            degree: 16,
            count: 4,
            law: CoefficientLaw::UnitDisk,
            files: Vec::new(),
            spaces: vec![
                SpaceSpec::Hardy { p: 2.0 },
                SpaceSpec::MixedA {
                    p: 2.0,
                    q: 2.0,
                    alpha: 1.0,
                },
                SpaceSpec::TriebelF {
                    p: 1.0,
                    q: 1.0,
                    alpha: 0.5,
                },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ParsevalSuite {
    pub dims: Vec<usize>,
    pub count: usize,
    pub degree: usize,
    pub radii: Vec<f64>,
    pub tol: f64,
}

impl Default for ParsevalSuite {
    fn default() -> Self {
        Self {
            dims: vec![1, 2],
            count: 50,
            degree: 32,
            radii: vec![0.1, 0.5, 0.9, 0.99, 0.999],
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PairingCheck {
    pub dim: usize,
    pub degree: usize,
    pub count: usize,
    pub radius: f64,
    pub alphas: Vec<f64>,
    pub k_max: usize,
    pub lhs_tol: f64,
    pub rhs_tol: f64,
}

impl Default for PairingCheck {
    fn default() -> Self {
        Self {
            dim: 1,
            degree: 32,
            count: 20,
            radius: 0.8,
            alphas: vec![0.5, 1.0, 1.5],
            k_max: 16,
            lhs_tol: 1e-10,
            rhs_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmbeddingSweep {
    pub source: EmbeddingSource,
    /// `[p, q, s, alpha]` rows.
    pub params: Vec<[f64; 4]>,
    pub dim: usize,
    pub degree: usize,
    pub count: usize,
    /// Radii of the `(1 - Rz)^{-2}` kernels added to the corpus.
    pub kernels: Vec<f64>,
}

impl Default for EmbeddingSweep {
    fn default() -> Self {
        Self {
            source: EmbeddingSource::TriebelF,
            params: vec![[1.0, 1.0, 2.0, 0.5], [2.0, 2.0, 2.0, 1.0], [0.5, 1.0, 1.0, 1.0]],
            dim: 1,
            degree: 16,
            count: 20,
            kernels: vec![0.5, 0.9],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DsSweep {
    pub vs: Vec<f64>,
    /// `[q, t]` rows.
    pub qt: Vec<[f64; 2]>,
    pub degree: usize,
    pub count: usize,
    /// `[re, im]` points of the `(1 - wz)^{-(beta+1)}` kernels.
    pub kernels: Vec<[f64; 2]>,
    pub kernel_beta: f64,
    pub unit_tol: f64,
    pub shift_tol: f64,
}

impl Default for DsSweep {
    fn default() -> Self {
        Self {
            vs: vec![0.6, 0.8, 1.0],
            qt: vec![[0.0, 1.0], [0.5, 1.0], [0.5, 2.0]],
            degree: 16,
            count: 50,
            kernels: vec![[0.5, 0.0], [0.7, 0.0], [0.9, 0.0], [0.95, 0.0], [0.0, 0.6]],
            kernel_beta: 1.0,
            unit_tol: 1e-9,
            shift_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BetaIntegralFit {
    /// `[alpha, lambda]` rows.
    pub cases: Vec<[f64; 2]>,
    pub levels: (usize, usize),
    pub tol: f64,
}

impl Default for BetaIntegralFit {
    fn default() -> Self {
        Self {
            cases: vec![[0.0, 2.0], [1.0, 3.0], [0.5, 2.0]],
            levels: (10, 20),
            tol: 0.02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma3Case {
    pub space: SpaceSpec,
    /// Kernel `(1 - Rz)^{-(beta+1)}`.
    pub beta: f64,
}

impl Lemma3Case {
    /// Predicted growth exponent of the space norm as `R → 1`.
    pub fn predicted(&self) -> Option<f64> {
        match self.space {
            SpaceSpec::Hardy { p } => Some(self.beta + 1.0 - 1.0 / p),
            SpaceSpec::MixedA { p, alpha, .. } | SpaceSpec::TriebelF { p, alpha, .. } => {
                Some(self.beta - alpha - 1.0 / p + 1.0)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Lemma3Fit {
    pub cases: Vec<Lemma3Case>,
    pub levels: (usize, usize),
    /// Accepted band `[predicted - below, predicted + above]`.
    pub below: f64,
    pub above: f64,
}

impl Default for Lemma3Fit {
    fn default() -> Self {
        let mut cases: Vec<Lemma3Case> = [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0)]
            .into_iter()
            .map(|(p, beta)| Lemma3Case {
                space: SpaceSpec::Hardy { p },
                beta,
            })
            .collect();
        for (p, q, alpha, beta) in [(1.0, 1.0, 0.5, 1.0), (2.0, 2.0, 1.0, 2.0)] {
            cases.push(Lemma3Case {
                space: SpaceSpec::MixedA { p, q, alpha },
                beta,
            });
            cases.push(Lemma3Case {
                space: SpaceSpec::TriebelF { p, q, alpha },
                beta,
            });
        }
        Self {
            cases,
            levels: (4, 10),
            below: 0.1,
            above: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TheoremScenario {
    pub hypothesis: TheoremHypothesis,
    /// Kernel exponents `gamma* + step·j`, `|j| <= half`.
    pub step: f64,
    pub half: usize,
    pub settings: ScenarioSettings,
    /// Torus oversampling used for this experiment.
    pub oversample: usize,
}

impl Default for TheoremScenario {
    fn default() -> Self {
        Self {
            hypothesis: TheoremHypothesis {
                p: 1.0,
                q: 1.0,
                alpha: 0.5,
                t: 1.0,
                s: 1.0,
                beta: 0.25,
                m: 2,
                source: Family::TriebelF,
                target: Family::MixedA,
            },
            step: 0.1,
            half: 5,
            settings: ScenarioSettings::default(),
            oversample: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PropositionProbe {
    pub params: PropositionParams,
    /// Exponents of the kernel multipliers probed next to the constant ones.
    pub gammas: Vec<f64>,
    pub settings: ScenarioSettings,
    /// Required fraction of the predicted ratio slope above the threshold.
    pub slope_fraction: f64,
}

impl Default for PropositionProbe {
    fn default() -> Self {
        Self {
            params: PropositionParams {
                v: 2.0,
                p: 2.0,
                s: 0.5,
                m: 1,
            },
            gammas: vec![1.0],
            settings: ScenarioSettings::default(),
            slope_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Kind {
    NormTable(NormTable),
    ParsevalSuite(ParsevalSuite),
    PairingCheck(PairingCheck),
    EmbeddingSweep(EmbeddingSweep),
    DsSweep(DsSweep),
    BetaIntegralFit(BetaIntegralFit),
    Lemma3Fit(Lemma3Fit),
    TheoremScenario(TheoremScenario),
    PropositionProbe(PropositionProbe),
}

pub const KINDS: [&str; 9] = [
    "norm-table",
    "parseval-suite",
    "pairing-check",
    "embedding-sweep",
    "ds-sweep",
    "beta-integral-fit",
    "lemma3-fit",
    "theorem-scenario",
    "proposition-probe",
];

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::NormTable(_) => KINDS[0],
            Kind::ParsevalSuite(_) => KINDS[1],
            Kind::PairingCheck(_) => KINDS[2],
            Kind::EmbeddingSweep(_) => KINDS[3],
            Kind::DsSweep(_) => KINDS[4],
            Kind::BetaIntegralFit(_) => KINDS[5],
            Kind::Lemma3Fit(_) => KINDS[6],
            Kind::TheoremScenario(_) => KINDS[7],
            Kind::PropositionProbe(_) => KINDS[8],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub name: String,
    #[serde(flatten)]
    pub kind: Kind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub seed: u64,
    pub output: Output,
    pub grid: QuadGrid,
    pub experiments: Vec<Experiment>,
    /// Directory relative paths in the config resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// Every problem found in a config.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} configuration error(s):", self.0.len())?;
        for e in &self.0 {
            writeln!(f, "  - {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

/// Deserializes `value`, recording every ignored key as unknown.
fn section<T: DeserializeOwned>(value: toml::Value, ctx: &str, errs: &mut Vec<String>) -> Option<T> {
    let mut unknown = Vec::new();
    let out = serde_ignored::deserialize(value, |path| unknown.push(path.to_string()));
    for key in unknown {
        errs.push(format!("{ctx}: unknown key `{key}`"));
    }
    match out {
        Ok(v) => Some(v),
        Err(e) => {
            errs.push(format!("{ctx}: {}", e.to_string().trim()));
            None
        }
    }
}

fn check(errs: &mut Vec<String>, ctx: &str, ok: bool, msg: impl fmt::Display) {
    if !ok {
        errs.push(format!("{ctx}: {msg}"));
    }
}

fn check_dim(errs: &mut Vec<String>, ctx: &str, dim: usize) {
    check(
        errs,
        ctx,
        (1..=polydisc::MAX_DIM).contains(&dim),
        format!("1 ≤ dim ≤ {} required (dim = {dim})", polydisc::MAX_DIM),
    );
}

fn check_radius(errs: &mut Vec<String>, ctx: &str, r: f64) {
    check(errs, ctx, (0.0..1.0).contains(&r), format!("0 ≤ radius < 1 required (radius = {r})"));
}

fn check_levels(errs: &mut Vec<String>, ctx: &str, (a, b): (usize, usize)) {
    check(
        errs,
        ctx,
        b >= a + 3 && b <= 40,
        format!("levels (a, b) need b ≥ a + 3 and b ≤ 40 (got ({a}, {b}))"),
    );
}

fn check_spec(errs: &mut Vec<String>, ctx: &str, spec: &SpaceSpec) {
    if let Err(e) = spec.validate() {
        errs.push(format!("{ctx}: {e}"));
    }
}

fn ds_violations(v: f64, q: f64, t: f64) -> Vec<String> {
    let mut out = Vec::new();
    if !(v > 0.5 && v <= 1.0) {
        out.push(format!("1/2 < v ≤ 1 required (v = {v})"));
    }
    if !(q > 1.0 / v - 2.0) {
        out.push(format!("q > 1/v - 2 required (q = {q}, v = {v})"));
    }
    if !(t > 0.0 && t.is_finite()) {
        out.push(format!("t > 0 required (t = {t})"));
    }
    out
}

fn validate(kind: &Kind, ctx: &str, errs: &mut Vec<String>) {
    let pos = |errs: &mut Vec<String>, name: &str, n: usize| check(errs, ctx, n > 0, format!("{name} ≥ 1 required"));
    match kind {
        Kind::NormTable(c) => {
            check_dim(errs, ctx, c.dim);
            check(errs, ctx, c.count > 0 || !c.files.is_empty(), "count ≥ 1 or a coefficient file required");
            pos(errs, "spaces", c.spaces.len());
            for s in &c.spaces {
                check_spec(errs, ctx, s);
            }
        }
        Kind::ParsevalSuite(c) => {
            for &d in &c.dims {
                check_dim(errs, ctx, d);
            }
            pos(errs, "count", c.count);
            pos(errs, "radii", c.radii.len());
            for &r in &c.radii {
                check_radius(errs, ctx, r);
            }
            check(errs, ctx, c.tol > 0.0, format!("tol > 0 required (tol = {})", c.tol));
        }
        Kind::PairingCheck(c) => {
            check_dim(errs, ctx, c.dim);
            pos(errs, "count", c.count);
            check_radius(errs, ctx, c.radius);
            pos(errs, "alphas", c.alphas.len());
            for &a in &c.alphas {
                check(errs, ctx, a > 0.0, format!("alpha > 0 required (alpha = {a})"));
            }
        }
        Kind::EmbeddingSweep(c) => {
            check_dim(errs, ctx, c.dim);
            pos(errs, "params", c.params.len());
            for &[p, q, s, alpha] in &c.params {
                check(
                    errs,
                    ctx,
                    p > 0.0 && q > 0.0 && p.max(q) <= s && s.is_finite(),
                    format!("0 < max(p, q) ≤ s < ∞ required (p = {p}, q = {q}, s = {s})"),
                );
                check(errs, ctx, alpha > 0.0, format!("alpha > 0 required (alpha = {alpha})"));
            }
            for &r in &c.kernels {
                check_radius(errs, ctx, r);
            }
        }
        Kind::DsSweep(c) => {
            for &v in &c.vs {
                for &[q, t] in &c.qt {
                    for e in ds_violations(v, q, t) {
                        errs.push(format!("{ctx}: {e}"));
                    }
                }
            }
            for &[x, y] in &c.kernels {
                check_radius(errs, ctx, x.hypot(y));
            }
            check(errs, ctx, c.kernel_beta > -1.0, "kernel_beta > -1 required");
        }
        Kind::BetaIntegralFit(c) => {
            check_levels(errs, ctx, c.levels);
            for &[alpha, lambda] in &c.cases {
                check(errs, ctx, alpha >= 0.0, format!("alpha ≥ 0 required (alpha = {alpha})"));
                check(
                    errs,
                    ctx,
                    lambda > alpha + 1.0,
                    format!("lambda > alpha + 1 required (alpha = {alpha}, lambda = {lambda})"),
                );
            }
        }
        Kind::Lemma3Fit(c) => {
            check_levels(errs, ctx, c.levels);
            pos(errs, "cases", c.cases.len());
            for case in &c.cases {
                check_spec(errs, ctx, &case.space);
                check(
                    errs,
                    ctx,
                    case.predicted().is_some(),
                    format!("space family `{}` has no predicted growth exponent", case.space.family()),
                );
                check(errs, ctx, case.beta > -1.0, format!("beta > -1 required (beta = {})", case.beta));
            }
        }
        Kind::TheoremScenario(c) => {
            for e in c.hypothesis.violations() {
                errs.push(format!("{ctx}: {e}"));
            }
            for e in c.settings.violations() {
                errs.push(format!("{ctx}: {e}"));
            }
            check(errs, ctx, c.step > 0.0, format!("step > 0 required (step = {})", c.step));
            pos(errs, "oversample", c.oversample);
        }
        Kind::PropositionProbe(c) => {
            for e in c.params.violations() {
                errs.push(format!("{ctx}: {e}"));
            }
            for e in c.settings.violations() {
                errs.push(format!("{ctx}: {e}"));
            }
            for &g in &c.gammas {
                check(errs, ctx, g > -1.0, format!("gamma > -1 required (gamma = {g})"));
            }
        }
    }
}

fn parse_kind(kind: &str, table: toml::Value, ctx: &str, errs: &mut Vec<String>) -> Option<Kind> {
    Some(match kind {
        "norm-table" => Kind::NormTable(section(table, ctx, errs)?),
        "parseval-suite" => Kind::ParsevalSuite(section(table, ctx, errs)?),
        "pairing-check" => Kind::PairingCheck(section(table, ctx, errs)?),
        "embedding-sweep" => Kind::EmbeddingSweep(section(table, ctx, errs)?),
        "ds-sweep" => Kind::DsSweep(section(table, ctx, errs)?),
        "beta-integral-fit" => Kind::BetaIntegralFit(section(table, ctx, errs)?),
        "lemma3-fit" => Kind::Lemma3Fit(section(table, ctx, errs)?),
        "theorem-scenario" => Kind::TheoremScenario(section(table, ctx, errs)?),
        "proposition-probe" => Kind::PropositionProbe(section(table, ctx, errs)?),
        other => {
            errs.push(format!("{ctx}: unknown kind `{other}` (expected one of {})", KINDS.join(", ")));
            return None;
        }
    })
}

/// Parses and validates a config, reporting every error found.
pub fn parse_config(text: &str) -> Result<Config, ConfigErrors> {
    let mut errs = Vec::new();
    let mut root: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigErrors(vec![e.to_string()]))?;

    let seed = match root.remove("seed") {
        None => 0,
        Some(toml::Value::Integer(s)) if s >= 0 => s as u64,
        Some(v) => {
            errs.push(format!("seed: nonnegative integer required (got {v})"));
            0
        }
    };
    let output = root
        .remove("output")
        .map_or(Some(Output::default()), |v| section(v, "[output]", &mut errs))
        .unwrap_or_default();
    let grid = root
        .remove("grid")
        .map_or(Some(QuadGrid::default()), |v| section(v, "[grid]", &mut errs))
        .unwrap_or_default();
    if let Err(e) = grid.validate() {
        errs.push(format!("[grid]: {e}"));
    }

    let tables = match root.remove("experiment") {
        None => Vec::new(),
        Some(toml::Value::Array(a)) => a,
        Some(_) => {
            errs.push("experiment: use [[experiment]] tables".into());
            Vec::new()
        }
    };
    for key in root.keys() {
        errs.push(format!("unknown top-level key `{key}`"));
    }

    let mut experiments = Vec::new();
    let mut names = HashSet::new();
    for (i, v) in tables.into_iter().enumerate() {
        let toml::Value::Table(mut t) = v else {
            errs.push(format!("experiment #{}: table expected", i + 1));
            continue;
        };
        let name = match t.remove("name") {
            Some(toml::Value::String(s)) if !s.is_empty() => s,
            _ => {
                errs.push(format!("experiment #{}: missing `name`", i + 1));
                format!("#{}", i + 1)
            }
        };
        let ctx = format!("experiment `{name}`");
        if !names.insert(name.clone()) {
            errs.push(format!("{ctx}: duplicate name"));
        }
        let Some(toml::Value::String(kind)) = t.remove("kind") else {
            errs.push(format!("{ctx}: missing `kind` (one of {})", KINDS.join(", ")));
            continue;
        };
        if let Some(kind) = parse_kind(&kind, toml::Value::Table(t), &ctx, &mut errs) {
            validate(&kind, &ctx, &mut errs);
            experiments.push(Experiment { name, kind });
        }
    }
    if experiments.is_empty() && errs.is_empty() {
        errs.push("no [[experiment]] tables".into());
    }

    if errs.is_empty() {
        Ok(Config {
            seed,
            output,
            grid,
            experiments,
            base_dir: PathBuf::new(),
        })
    } else {
        Err(ConfigErrors(errs))
    }
}
