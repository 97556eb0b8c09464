//! Experiment runners.

use std::fs;
use std::time::Instant;

use num_complex::Complex64;
use polydisc::analysis::{
    beta_integral_exponent, coefficient_pairing, ds_ratio, embedding_ratio, fit_exponent, ladder_window,
    lp_pairing_lhs, lp_pairing_rhs, pairing_diagonal, pairing_rhs_diagonal, PairingVariant, Ratio,
};
use polydisc::function::{bergman_kernel, parse_coefficients, random_poly, CoeffFn, CoefficientLaw, MultiplierSeq, Truncation};
use polydisc::multiplier::{kernel_sweep, proposition_probe, theorem_scenario, ScenarioSettings};
use polydisc::norms::{m_p_norm, space_norm, QuadGrid};
use polydisc::par;
use serde_json::json;

use crate::config::{
    BetaIntegralFit, Config, DsSweep, EmbeddingSweep, Experiment, Kind, Lemma3Fit, NormTable, PairingCheck,
    ParsevalSuite, PropositionProbe, TheoremScenario,
};
use crate::report::{num, opt, text, Report, Table};

/// Seed of the `i`-th corpus member.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

fn corpus(seed: u64, count: usize, dim: usize, degree: usize, law: CoefficientLaw) -> polydisc::Result<Vec<CoeffFn>> {
    (0..count)
        .map(|i| random_poly(case_seed(seed, i), dim, &vec![degree; dim], law))
        .collect()
}

fn ratio_cell(r: &polydisc::Result<Ratio>) -> serde_json::Value {
    match r {
        Ok(Ratio::Finite(v)) => num(*v),
        Ok(other) => text(other.tag()),
        Err(e) => text(format!("error: {e}")),
    }
}

/// Runs one experiment. Numerical failures become tagged rows and failed gates.
pub fn run(exp: &Experiment, config: &Config) -> Report {
    let t0 = Instant::now();
    let seed = config.seed;
    let grid = QuadGrid {
        seed,
        ..config.grid.clone()
    };
    let mut report = Report {
        experiment: exp.name.clone(),
        kind: exp.kind.name(),
        seed,
        config: toml::to_string(exp).unwrap_or_default(),
        grid: serde_json::to_value(&grid).unwrap_or_default(),
        tables: Vec::new(),
        gates: Vec::new(),
        notes: Vec::new(),
        elapsed_s: 0.0,
    };
    let out = match &exp.kind {
        Kind::NormTable(c) => norm_table(c, config, &grid, &mut report),
        Kind::ParsevalSuite(c) => parseval_suite(c, &grid, &mut report),
        Kind::PairingCheck(c) => pairing_check(c, &grid, &mut report),
        Kind::EmbeddingSweep(c) => embedding_sweep(c, &grid, &mut report),
        Kind::DsSweep(c) => ds_sweep(c, &grid, &mut report),
        Kind::BetaIntegralFit(c) => beta_fit(c, &mut report),
        Kind::Lemma3Fit(c) => lemma3_fit(c, &grid, &mut report),
        Kind::TheoremScenario(c) => theorem(c, &grid, &mut report),
        Kind::PropositionProbe(c) => proposition(c, &grid, &mut report),
    };
    if let Err(e) = out {
        report.gate("completed", false, e.to_string());
    }
    report.elapsed_s = t0.elapsed().as_secs_f64();
    report
}

fn norm_table(c: &NormTable, config: &Config, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let mut cases: Vec<(String, CoeffFn)> = corpus(grid.seed, c.count, c.dim, c.degree, c.law)?
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("poly{i}"), f))
        .collect();
    for path in &c.files {
        let full = config.base_dir.join(path);
        let body = fs::read_to_string(&full).map_err(|e| anyhow::anyhow!("{}: {e}", full.display()))?;
        let f = parse_coefficients(&body).map_err(|e| anyhow::anyhow!("{}: {e}", full.display()))?;
        cases.push((path.display().to_string(), f));
    }
    let jobs: Vec<(usize, usize)> = (0..cases.len()).flat_map(|i| (0..c.spaces.len()).map(move |j| (i, j))).collect();
    let results = par::map(&jobs, |&(i, j)| space_norm(&cases[i].1, &c.spaces[j], grid));
    let mut t = Table::new("norms", &["case", "space", "value", "status", "depth"]);
    let mut bad = 0;
    for (&(i, j), r) in jobs.iter().zip(&results) {
        let space = c.spaces[j].to_string();
        match r {
            Ok(n) => {
                bad += usize::from(!n.value.is_finite());
                t.push(vec![
                    text(&cases[i].0),
                    text(space),
                    num(n.value),
                    text(format!("{:?}", n.status).to_lowercase()),
                    n.depth.map_or(text("none"), |d| json!(d)),
                ]);
            }
            Err(e) => {
                bad += 1;
                t.push(vec![text(&cases[i].0), text(space), text(format!("error: {e}")), text("error"), text("none")]);
            }
        }
    }
    report.tables.push(t);
    report.gate("norms-finite", bad == 0, format!("{} norms, {bad} non-finite or failed", jobs.len()));
    Ok(())
}

fn parseval_suite(c: &ParsevalSuite, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let mut t = Table::new(
        "parseval",
        &["case", "dim", "radius", "m2_squared", "coefficient_sum", "scaled_deviation"],
    );
    let mut worst: f64 = 0.0;
    for &dim in &c.dims {
        let polys = corpus(grid.seed.wrapping_add(dim as u64), c.count, dim, c.degree, CoefficientLaw::Gaussian)?;
        let rows = par::map(&polys, |f| -> polydisc::Result<Vec<(f64, f64, f64, f64)>> {
            let total = f.l2_norm_sq();
            c.radii
                .iter()
                .map(|&r| {
                    let rr = vec![r; dim];
                    let m2 = m_p_norm(f, &rr, 2.0, grid)?;
                    let exact = f.weighted_l2_sq(&rr);
                    Ok((r, m2 * m2, exact, (m2 * m2 - exact).abs() / (1.0 + total)))
                })
                .collect()
        });
        for (i, rows) in rows.into_iter().enumerate() {
            for (r, m2, exact, dev) in rows? {
                worst = worst.max(dev);
                t.push(vec![text(format!("poly{i}")), json!(dim), num(r), num(m2), num(exact), num(dev)]);
            }
        }
    }
    report.tables.push(t);
    report.gate(
        "parseval",
        worst <= c.tol,
        format!("max scaled deviation {worst:.3e} (bound {:e})", c.tol),
    );
    Ok(())
}

const VARIANTS: [PairingVariant; 2] = [PairingVariant::AsStated, PairingVariant::ProofForm];

fn variant_name(v: PairingVariant) -> &'static str {
    match v {
        PairingVariant::AsStated => "as-stated",
        PairingVariant::ProofForm => "proof-form",
    }
}

fn pairing_check(c: &PairingCheck, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let fs = corpus(grid.seed, c.count, c.dim, c.degree, CoefficientLaw::UnitDisk)?;
    let gs = corpus(grid.seed.wrapping_add(1), c.count, c.dim, c.degree, CoefficientLaw::UnitDisk)?;
    let r = vec![c.radius; c.dim];
    let idx: Vec<usize> = (0..c.count).collect();
    let rows = par::map(&idx, |&i| -> polydisc::Result<Vec<(f64, PairingVariant, f64, f64)>> {
        let (f, g) = (&fs[i], &gs[i]);
        let lhs = lp_pairing_lhs(f, g, &r, grid)?;
        let exact = coefficient_pairing(f, g, &r)?;
        let lhs_err = (lhs - exact).norm() / (1.0 + exact.norm());
        let mut out = Vec::new();
        for &alpha in &c.alphas {
            for v in VARIANTS {
                let q = lp_pairing_rhs(f, g, &r, alpha, v, grid)?;
                let d = pairing_rhs_diagonal(f, g, &r, alpha, v)?;
                out.push((alpha, v, lhs_err, (q - d).norm() / (1.0 + d.norm())));
            }
        }
        Ok(out)
    });
    let mut t = Table::new("pairing", &["case", "alpha", "variant", "lhs_error", "rhs_error"]);
    let (mut lhs_worst, mut rhs_worst): (f64, f64) = (0.0, 0.0);
    for (i, rows) in rows.into_iter().enumerate() {
        for (alpha, v, l, q) in rows? {
            lhs_worst = lhs_worst.max(l);
            rhs_worst = rhs_worst.max(q);
            t.push(vec![text(format!("pair{i}")), num(alpha), text(variant_name(v)), num(l), num(q)]);
        }
    }
    report.tables.push(t);

    let mut lam = Table::new("lambda", &["variant", "alpha", "k", "lambda", "r_exponent"]);
    for &alpha in &c.alphas {
        for v in VARIANTS {
            let d = pairing_diagonal(alpha, v, c.k_max)?;
            for (k, l) in d.lambda.iter().enumerate() {
                lam.push(vec![text(variant_name(v)), num(alpha), json!(k), num(*l), num(d.r_exponent)]);
            }
            report.notes.push(format!(
                "{} alpha = {alpha}: lambda_k r^{} {} identically 1",
                variant_name(v),
                d.r_exponent,
                if d.unit { "is" } else { "is not" }
            ));
        }
    }
    report.tables.push(lam);
    report.gate(
        "lhs-vs-coefficients",
        lhs_worst <= c.lhs_tol,
        format!("max relative error {lhs_worst:.3e} (bound {:e})", c.lhs_tol),
    );
    report.gate(
        "rhs-vs-diagonal",
        rhs_worst <= c.rhs_tol,
        format!("max relative error {rhs_worst:.3e} (bound {:e})", c.rhs_tol),
    );
    Ok(())
}

fn kernel_real(r: f64, beta: f64) -> polydisc::Result<CoeffFn> {
    bergman_kernel(&[Complex64::new(r, 0.0)], beta, Truncation::auto())
}

fn embedding_sweep(c: &EmbeddingSweep, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let mut cases: Vec<(String, CoeffFn)> = corpus(grid.seed, c.count, c.dim, c.degree, CoefficientLaw::UnitDisk)?
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("poly{i}"), f))
        .collect();
    for &r in &c.kernels {
        let w = vec![Complex64::new(r, 0.0); c.dim];
        cases.push((format!("kernel[{r}]"), bergman_kernel(&w, 1.0, Truncation::auto())?));
    }
    let jobs: Vec<(usize, usize)> = (0..c.params.len()).flat_map(|j| (0..cases.len()).map(move |i| (j, i))).collect();
    let results = par::map(&jobs, |&(j, i)| {
        let [p, q, s, alpha] = c.params[j];
        embedding_ratio(&cases[i].1, p, q, s, alpha, c.source, grid)
    });
    let mut t = Table::new("embedding", &["case", "p", "q", "s", "alpha", "ratio"]);
    let mut bad = 0;
    let mut max: f64 = 0.0;
    for (&(j, i), r) in jobs.iter().zip(&results) {
        let [p, q, s, alpha] = c.params[j];
        match r {
            Ok(Ratio::Finite(v)) => max = max.max(*v),
            Ok(Ratio::DegenerateZero) => {}
            _ => bad += 1,
        }
        t.push(vec![text(&cases[i].0), num(p), num(q), num(s), num(alpha), ratio_cell(r)]);
    }
    report.tables.push(t);
    report.gate(
        "ratios-finite",
        bad == 0,
        format!("{} ratios, max {max:.6}, {bad} unbounded or failed", jobs.len()),
    );
    Ok(())
}

fn ds_sweep(c: &DsSweep, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let mut cases: Vec<(String, CoeffFn)> = corpus(grid.seed, c.count, 1, c.degree, CoefficientLaw::UnitDisk)?
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("poly{i}"), f))
        .collect();
    for &[x, y] in &c.kernels {
        let f = bergman_kernel(&[Complex64::new(x, y)], c.kernel_beta, Truncation::auto())?;
        cases.push((format!("kernel[{x}{y:+}i]"), f));
    }
    let mut jobs = Vec::new();
    for &v in &c.vs {
        for &[q, t] in &c.qt {
            for i in 0..cases.len() {
                jobs.push((v, q, t, i));
            }
        }
    }
    let results = par::map(&jobs, |&(v, q, t, i)| -> polydisc::Result<(Ratio, Ratio, Ratio)> {
        let f = &cases[i].1;
        Ok((
            ds_ratio(f, v, q, t, None, grid)?,
            ds_ratio(f, v, q, t, Some(&[0.0]), grid)?,
            ds_ratio(f, v, 0.0, t, None, grid)?,
        ))
    });
    let mut table = Table::new("ds", &["case", "v", "q", "t", "ratio", "shifted_r0", "unshifted_q0"]);
    let (mut bad, mut unit, mut shift, mut gap, mut max) = (0usize, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (&(v, q, t, i), r) in jobs.iter().zip(results) {
        let id = text(&cases[i].0);
        match r {
            Ok((a, s, b)) => {
                match (a.value(), s.value(), b.value()) {
                    (Some(a), Some(s), Some(b)) => {
                        max = max.max(a);
                        if v == 1.0 {
                            unit = unit.max((a - 1.0).abs());
                        }
                        shift = shift.max((s - b).abs() / b);
                        gap = gap.max((s - a).abs() / a);
                    }
                    _ => bad += 1,
                }
                table.push(vec![id, num(v), num(q), num(t), ratio_cell(&Ok(a)), ratio_cell(&Ok(s)), ratio_cell(&Ok(b))]);
            }
            Err(e) => {
                bad += 1;
                let err = text(format!("error: {e}"));
                table.push(vec![id, num(v), num(q), num(t), err.clone(), err.clone(), err]);
            }
        }
    }
    report.tables.push(table);
    report.gate("ratios-finite", bad == 0, format!("{} cases, max ratio {max:.6}, {bad} failed", jobs.len()));
    if c.vs.contains(&1.0) {
        report.gate(
            "unit-at-v1",
            unit <= c.unit_tol,
            format!("max |ratio - 1| at v = 1: {unit:.3e} (bound {:e})", c.unit_tol),
        );
    }
    report.gate(
        "shift-reduction",
        shift <= c.shift_tol,
        format!("shifted at r = 0 vs unshifted with q = 0: {shift:.3e} (bound {:e})", c.shift_tol),
    );
    report.notes.push(format!(
        "shifted at r = 0 vs unshifted with the same q differs by up to {gap:.3e}: the shifted weights replace the q-weight"
    ));
    Ok(())
}

fn beta_fit(c: &BetaIntegralFit, report: &mut Report) -> anyhow::Result<()> {
    let ladder = ladder_window(c.levels.0, c.levels.1);
    let mut t = Table::new("beta", &["alpha", "lambda", "predicted", "slope", "residual", "pass"]);
    let mut ok = true;
    for &[alpha, lambda] in &c.cases {
        let fit = beta_integral_exponent(alpha, lambda, &ladder)?;
        let predicted = lambda - alpha - 1.0;
        let pass = (fit.slope - predicted).abs() <= c.tol;
        ok &= pass;
        t.push(vec![num(alpha), num(lambda), num(predicted), num(fit.slope), num(fit.residual), json!(pass)]);
    }
    report.tables.push(t);
    report.gate("slopes", ok, format!("{} fits within {} of lambda - alpha - 1", c.cases.len(), c.tol));
    Ok(())
}

fn lemma3_fit(c: &Lemma3Fit, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let radii = ladder_window(c.levels.0, c.levels.1);
    let jobs: Vec<(usize, f64)> = (0..c.cases.len()).flat_map(|i| radii.iter().map(move |&r| (i, r))).collect();
    let values = par::map(&jobs, |&(i, r)| {
        let case = &c.cases[i];
        space_norm(&kernel_real(r, case.beta)?, &case.space, grid).map(|n| n.value)
    });
    let mut t = Table::new("lemma3", &["space", "beta", "predicted", "slope", "residual", "pass"]);
    let mut ok = true;
    for (i, case) in c.cases.iter().enumerate() {
        let samples: Vec<(f64, f64)> = jobs
            .iter()
            .zip(&values)
            .filter(|((j, _), _)| *j == i)
            .map(|((_, r), v)| v.clone().map(|v| (*r, v)))
            .collect::<polydisc::Result<_>>()?;
        let fit = fit_exponent(&samples, None)?;
        let predicted = case.predicted().unwrap_or(f64::NAN);
        let pass = fit.slope >= predicted - c.below && fit.slope <= predicted + c.above;
        ok &= pass;
        t.push(vec![
            text(case.space.to_string()),
            num(case.beta),
            num(predicted),
            num(fit.slope),
            num(fit.residual),
            json!(pass),
        ]);
    }
    report.tables.push(t);
    report.gate(
        "slopes",
        ok,
        format!("{} fits within [predicted - {}, predicted + {}]", c.cases.len(), c.below, c.above),
    );
    Ok(())
}

fn settings_with_seed(s: &ScenarioSettings, seed: u64) -> ScenarioSettings {
    ScenarioSettings { seed, ..s.clone() }
}

fn theorem(c: &TheoremScenario, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let settings = settings_with_seed(&c.settings, grid.seed);
    let grid = QuadGrid {
        oversample: c.oversample,
        ..grid.clone()
    };
    let hyp = &c.hypothesis;
    let cases = kernel_sweep(hyp.gamma_star(), c.step, c.half, &settings)?;
    let table = theorem_scenario(hyp, &cases, &settings, &grid)?;
    let mut t = Table::new(
        "verdicts",
        &["g-id", "gamma", "K", "K-slope", "max-ratio", "necessity-slope", "verdict"],
    );
    for r in &table.rows {
        t.push(vec![
            text(&r.id),
            opt(r.gamma),
            opt(r.k()),
            opt(r.k_slope()),
            opt(r.max_ratio()),
            opt(r.necessity_slope()),
            text(r.verdict.as_str()),
        ]);
        for f in &r.flags {
            report.notes.push(format!("{}: {f}", r.id));
        }
    }
    report.tables.push(t);
    let s = table.summary(&settings);
    report.notes.push(format!("gamma* = {}, tau = {}", table.gamma_star, table.tau));
    report.gate(
        "single-flip",
        s.flips == 1 && s.flip_at_threshold,
        format!("{} flip(s), between {:?}, threshold gamma* = {}", s.flips, s.flip_between, table.gamma_star),
    );
    report.gate("bounded-slopes", s.bounded_slopes_ok, format!("necessity slopes <= {}", settings.flat_slope));
    report.gate(
        "unbounded-slopes",
        s.unbounded_slopes_ok,
        format!("necessity slopes >= {} x predicted excess", settings.slope_fraction),
    );
    report.gate("scenario", s.pass, "all rows conclusive and consistent");
    Ok(())
}

fn proposition(c: &PropositionProbe, grid: &QuadGrid, report: &mut Report) -> anyhow::Result<()> {
    let settings = settings_with_seed(&c.settings, grid.seed);
    let params = &c.params;
    let w = vec![Complex64::new(settings.kernel_radius(), 0.0)];
    let mut cases: Vec<(String, Option<f64>, MultiplierSeq)> = vec![
        ("ones".into(), None, MultiplierSeq::ones(1)?),
        (
            "constant".into(),
            None,
            MultiplierSeq::explicit(CoeffFn::constant(1, Complex64::new(2.0, 0.0))?)?,
        ),
    ];
    for &g in &c.gammas {
        cases.push((format!("kernel[{g:+.2}]"), Some(g), MultiplierSeq::kernel(w.clone(), g)?));
    }
    let mut t = Table::new(
        "proposition",
        &["multiplier", "gamma", "K", "K-slope", "ratio-slope", "predicted-slope", "verdict"],
    );
    let mut ok = true;
    for (id, gamma, seq) in &cases {
        let rep = proposition_probe(seq, params, &settings, grid)?;
        let slope = rep.ratios.slope();
        let predicted = gamma.map(|g| params.predicted_slope(g));
        let verdict = match (gamma, slope) {
            (_, None) => "bounded",
            (Some(g), Some(s)) if *g > params.gamma_star() => {
                let p = params.predicted_slope(*g);
                if s >= c.slope_fraction * p {
                    "unbounded"
                } else {
                    "inconclusive"
                }
            }
            (_, Some(s)) => {
                if s <= settings.flat_slope && rep.condition.flat {
                    "bounded"
                } else {
                    "inconclusive"
                }
            }
        };
        let expected = match gamma {
            Some(g) if *g > params.gamma_star() => "unbounded",
            _ => "bounded",
        };
        ok &= verdict == expected;
        t.push(vec![
            text(id.as_str()),
            opt(*gamma),
            num(rep.condition.sup),
            opt(rep.condition.slope()),
            opt(slope),
            opt(predicted),
            text(verdict),
        ]);
    }
    report.tables.push(t);
    report.notes.push(format!("tau = {}, threshold gamma = {}", params.tau(), params.gamma_star()));
    report.gate(
        "verdicts",
        ok,
        format!(
            "constants bounded; kernels above the threshold grow at >= {} x predicted slope",
            c.slope_fraction
        ),
    );
    Ok(())
}

/// Runs the selected experiments in config order.
pub fn run_all(config: &Config, only: Option<&str>) -> Vec<Report> {
    config
        .experiments
        .iter()
        .filter(|e| only.is_none_or(|n| e.name == n))
        .map(|e| run(e, config))
        .collect()
}
