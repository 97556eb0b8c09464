//! Acceptance gates. Runs every criterion, prints one line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use polydisc::analysis::{
    beta_integral_exponent, coefficient_pairing, ds_ratio, fit_exponent, ladder_window, lp_pairing_lhs,
    lp_pairing_rhs, pairing_diagonal, pairing_rhs_diagonal, PairingVariant,
};
use polydisc::function::{bergman_kernel, random_poly, CoeffFn, CoefficientLaw, MultiplierSeq, Truncation};
use polydisc::multiplier::{
    kernel_sweep, proposition_probe, theorem_scenario, Family, PropositionParams, ScenarioSettings, TheoremHypothesis,
};
use polydisc::norms::{m_p_norm, space_norm, QuadGrid, SpaceSpec};

#[derive(Default)]
struct Outcome {
    pass: bool,
    detail: String,
    /// Ratios and norms that must reproduce on a refined grid.
    tracked: Vec<(String, f64)>,
    verdicts: Vec<String>,
}

fn poly(seed: u64, dim: usize, degree: usize) -> CoeffFn {
    random_poly(seed, dim, &vec![degree; dim], CoefficientLaw::UnitDisk).unwrap()
}

fn kernel(w: f64, beta: f64) -> CoeffFn {
    bergman_kernel(&[Complex64::new(w, 0.0)], beta, Truncation::auto()).unwrap()
}

fn parseval(_: &QuadGrid) -> Outcome {
    let grid = QuadGrid::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for dim in [1, 2] {
        for seed in 0..50 {
            let f = random_poly(seed, dim, &vec![32; dim], CoefficientLaw::Gaussian).unwrap();
            let total = f.l2_norm_sq();
            for r in [0.1, 0.5, 0.9, 0.99, 0.999] {
                let rr = vec![r; dim];
                let m2 = m_p_norm(&f, &rr, 2.0, &grid).unwrap();
                let dev = (m2 * m2 - f.weighted_l2_sq(&rr)).abs() / (1.0 + total);
                worst = worst.max(dev);
                ok &= dev <= 1e-9;
            }
        }
    }
    Outcome {
        pass: ok,
        detail: format!("max scaled deviation {worst:.2e} (bound 1e-9)"),
        ..Outcome::default()
    }
}

fn diagonal_coincidence(grid: &QuadGrid) -> Outcome {
    let mut out = Outcome {
        pass: true,
        ..Outcome::default()
    };
    let mut worst: f64 = 0.0;
    for p in [0.5, 1.0, 2.0] {
        for alpha in [0.25, 0.5, 1.0] {
            for seed in 0..20 {
                let f = poly(seed, 1, 16);
                let a = space_norm(&f, &SpaceSpec::mixed_a(p, p, alpha).unwrap(), grid).unwrap().value;
                let b = space_norm(&f, &SpaceSpec::triebel_f(p, p, alpha).unwrap(), grid).unwrap().value;
                let d = (a - b).abs() / b;
                worst = worst.max(d);
                out.pass &= d <= 1e-6;
                out.tracked.push((format!("F({p},{p},{alpha})#{seed}"), b));
            }
        }
    }
    out.detail = format!("max relative difference {worst:.2e} (bound 1e-6)");
    out
}

fn minkowski(grid: &QuadGrid) -> Outcome {
    let mut out = Outcome {
        pass: true,
        ..Outcome::default()
    };
    let mut margin = f64::INFINITY;
    for (t, s) in [(0.5, 1.0), (1.0, 1.0), (1.0, 2.0)] {
        for beta in [0.5, 1.0] {
            for seed in 0..100 {
                let f = poly(1000 + seed, 1, 16);
                let a = space_norm(&f, &SpaceSpec::mixed_a(t, s, beta).unwrap(), grid).unwrap().value;
                let b = space_norm(&f, &SpaceSpec::triebel_f(t, s, beta).unwrap(), grid).unwrap().value;
                margin = margin.min(b + 1e-9 - a);
                out.pass &= a <= b + 1e-9;
                out.tracked.push((format!("A/F({t},{s},{beta})#{seed}"), a / b));
            }
        }
    }
    out.detail = format!("600 cases, min margin F + 1e-9 - A = {margin:.3e}");
    out
}

fn lemma3(grid: &QuadGrid) -> Outcome {
    let radii = ladder_window(4, 10);
    let mut out = Outcome {
        pass: true,
        ..Outcome::default()
    };
    let mut parts = Vec::new();
    let mut check = |label: String, spec: SpaceSpec, beta: f64, predicted: f64| {
        let samples: Vec<(f64, f64)> = radii
            .iter()
            .map(|&r| (r, space_norm(&kernel(r, beta), &spec, grid).unwrap().value))
            .collect();
        let slope = fit_exponent(&samples, None).unwrap().slope;
        let ok = slope >= predicted - 0.1 && slope <= predicted + 0.05;
        out.pass &= ok;
        out.verdicts.push(format!("{label}:{ok}"));
        parts.push(format!("{label} {slope:.3}/{predicted:.2}"));
    };
    for (p, beta) in [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0)] {
        check(format!("H{p} b{beta}"), SpaceSpec::hardy(p).unwrap(), beta, beta + 1.0 - 1.0 / p);
    }
    for (p, q, alpha, beta) in [(1.0, 1.0, 0.5, 1.0), (2.0, 2.0, 1.0, 2.0)] {
        let predicted = beta - alpha - 1.0 / p + 1.0;
        check(format!("A({p},{q},{alpha}) b{beta}"), SpaceSpec::mixed_a(p, q, alpha).unwrap(), beta, predicted);
        check(format!("F({p},{q},{alpha}) b{beta}"), SpaceSpec::triebel_f(p, q, alpha).unwrap(), beta, predicted);
    }
    out.detail = format!("fitted/predicted: {}", parts.join(", "));
    out
}

fn pairing(grid: &QuadGrid) -> Outcome {
    let mut lhs_dev: f64 = 0.0;
    let mut rhs_dev: f64 = 0.0;
    for i in 0..20u64 {
        let (dim, deg) = if i < 10 { (1, 32) } else { (2, 8) };
        let f = poly(2000 + i, dim, deg);
        let g = poly(3000 + i, dim, deg);
        let r: Vec<f64> = (0..dim).map(|j| 0.3 + 0.065 * ((i as usize + 3 * j) % 10) as f64).collect();
        let a = lp_pairing_lhs(&f, &g, &r, grid).unwrap();
        let b = coefficient_pairing(&f, &g, &r).unwrap();
        lhs_dev = lhs_dev.max((a - b).norm() / (1.0 + b.norm()));
        let alpha = if i % 2 == 0 { 0.5 } else { 1.5 };
        for variant in [PairingVariant::AsStated, PairingVariant::ProofForm] {
            let q = lp_pairing_rhs(&f, &g, &r, alpha, variant, grid).unwrap();
            let d = pairing_rhs_diagonal(&f, &g, &r, alpha, variant).unwrap();
            rhs_dev = rhs_dev.max((q - d).norm() / (1.0 + d.norm()));
        }
    }
    let mut table = Vec::new();
    for variant in [PairingVariant::AsStated, PairingVariant::ProofForm] {
        let d = pairing_diagonal(1.0, variant, 16).unwrap();
        let lam: Vec<String> = d.lambda.iter().map(|l| format!("{l:.4}")).collect();
        table.push(format!(
            "    {variant:?} (alpha = 1): lambda_k r^{} with lambda_0..16 = [{}], unit = {}",
            d.r_exponent,
            lam.join(", "),
            d.unit
        ));
    }
    Outcome {
        pass: lhs_dev <= 1e-10 && rhs_dev <= 1e-8,
        detail: format!(
            "LHS vs coefficient sum {lhs_dev:.2e} (bound 1e-10), RHS quadrature vs diagonal {rhs_dev:.2e} (bound 1e-8)\n{}",
            table.join("\n")
        ),
        ..Outcome::default()
    }
}

fn beta_fit(_: &QuadGrid) -> Outcome {
    let ladder = ladder_window(10, 20);
    let mut ok = true;
    let mut parts = Vec::new();
    for (alpha, lambda) in [(0.0, 2.0), (1.0, 3.0), (0.5, 2.0)] {
        let slope = beta_integral_exponent(alpha, lambda, &ladder).unwrap().slope;
        let predicted = lambda - alpha - 1.0;
        ok &= (slope - predicted).abs() <= 0.02;
        parts.push(format!("({alpha},{lambda}) {slope:.4}/{predicted}"));
    }
    Outcome {
        pass: ok,
        detail: format!("fitted/predicted on l = 10..20: {}", parts.join(", ")),
        ..Outcome::default()
    }
}

fn ds_sweep(grid: &QuadGrid) -> Outcome {
    let mut out = Outcome {
        pass: true,
        ..Outcome::default()
    };
    let mut corpus: Vec<(String, CoeffFn)> = (0..50).map(|i| (format!("poly{i}"), poly(4000 + i, 1, 16))).collect();
    for (i, w) in [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.7, 0.0),
        Complex64::new(0.9, 0.0),
        Complex64::new(0.95, 0.0),
        Complex64::new(0.0, 0.6),
    ]
    .into_iter()
    .enumerate()
    {
        corpus.push((format!("kernel{i}"), bergman_kernel(&[w], 1.0, Truncation::auto()).unwrap()));
    }
    let mut max_ratio: f64 = 0.0;
    let mut unit_dev: f64 = 0.0;
    let mut shift_dev: f64 = 0.0;
    let mut same_q_gap: f64 = 0.0;
    for v in [0.6, 0.8, 1.0] {
        for (q, t) in [(0.0, 1.0), (0.5, 1.0), (0.5, 2.0)] {
            for (id, f) in &corpus {
                let r = ds_ratio(f, v, q, t, None, grid).unwrap();
                let Some(x) = r.value() else {
                    out.pass = false;
                    continue;
                };
                max_ratio = max_ratio.max(x);
                out.tracked.push((format!("ds({v},{q},{t})/{id}"), x));
                if v == 1.0 {
                    unit_dev = unit_dev.max((x - 1.0).abs());
                }
                // at r = 0 both shifted weights drop out: the unshifted form with q = 0
                let s = ds_ratio(f, v, q, t, Some(&[0.0]), grid).unwrap().value().unwrap();
                let base = ds_ratio(f, v, 0.0, t, None, grid).unwrap().value().unwrap();
                shift_dev = shift_dev.max((s - base).abs() / base);
                same_q_gap = same_q_gap.max((s - x).abs() / x);
            }
        }
    }
    out.pass &= unit_dev <= 1e-9 && shift_dev <= 1e-9 && max_ratio.is_finite();
    out.detail = format!(
        "{} ratios finite, max {max_ratio:.4}; v = 1 deviation {unit_dev:.2e}; shifted(r=0) vs unshifted(q=0) {shift_dev:.2e}; \
         shifted(r=0) vs unshifted(same q) differs by up to {same_q_gap:.2e} (informational)",
        out.tracked.len()
    );
    out
}

fn theorem(grid: &QuadGrid) -> Outcome {
    let scenario_grid = QuadGrid {
        oversample: 1,
        ..grid.clone()
    };
    let settings = ScenarioSettings::default();
    let mut out = Outcome {
        pass: true,
        ..Outcome::default()
    };
    let mut parts = Vec::new();
    for target in [Family::MixedA, Family::TriebelF] {
        let hyp = TheoremHypothesis {
            p: 1.0,
            q: 1.0,
            alpha: 0.5,
            t: 1.0,
            s: 1.0,
            beta: 0.25,
            m: 2,
            source: Family::TriebelF,
            target,
        };
        let cases = kernel_sweep(hyp.gamma_star(), 0.1, 5, &settings).unwrap();
        let table = theorem_scenario(&hyp, &cases, &settings, &scenario_grid).unwrap();
        let sum = table.summary(&settings);
        out.pass &= sum.pass;
        for r in &table.rows {
            out.verdicts.push(format!("{target:?}/{}:{}", r.id, r.verdict.as_str()));
            if let Some(k) = r.k() {
                out.tracked.push((format!("{target:?}/{}/K", r.id), k));
            }
            for (id, ratio) in &r.ratios.as_ref().map(|x| x.cases.clone()).unwrap_or_default() {
                if let Some(v) = ratio.value() {
                    out.tracked.push((format!("{target:?}/{}/{id}", r.id), v));
                }
            }
        }
        let slopes: Vec<String> = table
            .rows
            .iter()
            .map(|r| {
                format!(
                    "{:+.2}:{}{:.3}",
                    r.gamma.unwrap_or(f64::NAN),
                    if r.verdict == polydisc::multiplier::Verdict::ConsistentBounded { "B" } else { "U" },
                    r.necessity_slope().unwrap_or(f64::NAN)
                )
            })
            .collect();
        parts.push(format!(
            "    target {target:?}: flips {} between {:?}, bounded slopes ok {}, unbounded slopes ok {}; gamma:verdict slope = {}",
            sum.flips,
            sum.flip_between,
            sum.bounded_slopes_ok,
            sum.unbounded_slopes_ok,
            slopes.join(" ")
        ));
    }
    out.detail = format!("gamma* = -0.25, step 0.1\n{}", parts.join("\n"));
    out
}

fn proposition(grid: &QuadGrid) -> Outcome {
    let params = PropositionParams {
        v: 2.0,
        p: 2.0,
        s: 0.5,
        m: 1,
    };
    let settings = ScenarioSettings::default();
    let mut out = Outcome::default();
    let w = vec![Complex64::new(settings.kernel_radius(), 0.0)];
    let gamma = 1.0;
    let cases = [
        ("ones", MultiplierSeq::ones(1).unwrap()),
        (
            "const-g",
            MultiplierSeq::explicit(CoeffFn::constant(1, Complex64::new(2.0, 0.0)).unwrap()).unwrap(),
        ),
        ("kernel", MultiplierSeq::kernel(w, gamma).unwrap()),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (id, c) in &cases {
        let rep = proposition_probe(c, &params, &settings, grid).unwrap();
        let slope = rep.ratios.slope().unwrap();
        let kslope = rep.condition.slope().unwrap();
        for pt in &rep.ratios.points {
            out.tracked.push((format!("{id}/w={}", pt.w), pt.ratio.value().unwrap()));
        }
        if *id == "kernel" {
            let excess = params.predicted_slope(gamma);
            ok &= slope >= 0.5 * excess && kslope > settings.flat_slope;
            out.verdicts.push(format!("{id}:{}", slope >= 0.5 * excess));
            parts.push(format!(
                "{id} (gamma = {gamma}): ratio slope {slope:.3} vs 0.5 x excess {:.3}, condition slope {kslope:.3}",
                0.5 * excess
            ));
        } else {
            let bounded = slope <= settings.flat_slope && rep.condition.flat;
            ok &= bounded;
            out.verdicts.push(format!("{id}:{bounded}"));
            parts.push(format!("{id}: ratio slope {slope:.3}, condition slope {kslope:.3}, bounded {bounded}"));
        }
    }
    out.pass = ok;
    out.detail = format!("tau = {}; {}", params.tau(), parts.join("; "));
    out
}

type Criterion = (usize, &'static str, fn(&QuadGrid) -> Outcome, bool);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "parseval suite", parseval, false),
        (2, "diagonal coincidence", diagonal_coincidence, true),
        (3, "minkowski embedding", minkowski, true),
        (4, "boundary growth exponents", lemma3, true),
        (5, "pairing characterization", pairing, false),
        (6, "beta-integral exponent", beta_fit, false),
        (7, "ds estimate sweep", ds_sweep, true),
        (8, "theorem scenario", theorem, true),
        (9, "proposition probe", proposition, true),
    ];
    let grid = QuadGrid::default();
    let fine = grid.refined();
    let mut all = true;
    let mut coarse = Vec::new();
    for (id, name, run, refine) in criteria {
        let t0 = Instant::now();
        let o = run(&grid);
        let dt = t0.elapsed().as_secs_f64();
        all &= o.pass;
        println!(
            "criterion {id:>2} [{name}]: {} ({dt:.1} s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if refine {
            coarse.push((id, run, o));
        }
    }

    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    let mut same = true;
    let mut gates_same = true;
    for (id, run, a) in &coarse {
        let b = run(&fine);
        gates_same &= a.pass == b.pass;
        same &= a.verdicts == b.verdicts;
        for ((label, x), (_, y)) in a.tracked.iter().zip(&b.tracked) {
            let d = (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
            if d > worst {
                worst = d;
                worst_at = format!("criterion {id} {label}");
            }
        }
        same &= a.tracked.len() == b.tracked.len();
    }
    let pass = worst <= 1e-4 && same && gates_same;
    all &= pass;
    println!(
        "criterion 10 [grid-refinement stability]: {} ({:.1} s) max relative change {worst:.2e} at {worst_at} (bound 1e-4); \
         verdicts identical {same}; gate outcomes identical {gates_same}",
        if pass { "PASS" } else { "FAIL" },
        t0.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
