//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail (see the README); the
//! process exits nonzero only when the observed failures differ from that set.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semantic_g::{
    build_tilt, channel_update, decompose_info, imm_objective, matched_semantic_channel, semantic_bayes, semantic_mi,
    shannon_mi, single_message_point, solve_point, truth_from_likelihood, Pmf, SemanticChannel, ShannonChannel,
    SolverOptions,
};
use semantic_g_experiments::record::{prepare, Prepared};
use semantic_g_experiments::tables::{
    mortality_values, mortality_verdicts, point_mass_efficiency, sensitivity, two_goal_values, two_goal_verdicts,
};
use semantic_g_experiments::{reference, scenarios, tolerances as tol, Verdict};

const KNOWN_RED: &[u32] = &[3, 4];
const INSTANCES: usize = 100;
const CURVE_S: [f64; 8] = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0];
const ORDER_SLACK: f64 = 1e-9;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn failing_cells(verdicts: &[Verdict]) -> String {
    let bad: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.pass)
        .map(|v| format!("{} {:.4} vs {:.4}", v.label, v.computed, v.reference))
        .collect();
    if bad.is_empty() {
        format!("{} cells within tolerance", verdicts.len())
    } else {
        format!("{}/{} cells off: {}", bad.len(), verdicts.len(), bad.join("; "))
    }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_2024)
}

fn random_pmf(rng: &mut impl Rng, n: usize) -> Pmf {
    Pmf::normalized((0..n).map(|_| rng.gen_range(0.05..1.0)).collect()).unwrap()
}

fn random_channel(rng: &mut impl Rng, n_x: usize, n_y: usize) -> ShannonChannel {
    let rows = (0..n_x)
        .map(|_| {
            let w: Vec<f64> = (0..n_y).map(|_| rng.gen_range(0.01..1.0)).collect();
            let t: f64 = w.iter().sum();
            w.into_iter().map(|v| v / t).collect()
        })
        .collect();
    ShannonChannel::from_rows(rows).unwrap()
}

fn random_semantic(rng: &mut impl Rng, n_x: usize, n_y: usize) -> SemanticChannel {
    let cols = (0..n_y).map(|_| (0..n_x).map(|_| rng.gen_range(0.01..=1.0)).collect()).collect();
    SemanticChannel::from_columns(cols).unwrap()
}

fn sizes(rng: &mut impl Rng) -> (usize, usize) {
    (rng.gen_range(2..=50), rng.gen_range(2..=5))
}

fn tight() -> SolverOptions {
    SolverOptions::converge(1e-14, 200_000)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let values = mortality_values(1.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let verdicts = mortality_verdicts(&values);
    let ok = verdicts.iter().all(|v| v.pass) && elapsed < tol::MORTALITY_RUNTIME_S;
    outcome(ok, format!("{}; {elapsed:.3} s", failing_cells(&verdicts)))
}

fn criterion_2() -> Outcome {
    let diffs = sensitivity(&tol::SENSITIVITY_STEPS).unwrap();
    let (a, b, finest) = *diffs.last().unwrap();
    let all: Vec<String> = diffs.iter().map(|(a, b, d)| format!("{a}->{b}: {d:.2e}")).collect();
    outcome(finest < tol::GRID_SENSITIVITY, format!("max change {}; gated pair {a}->{b}", all.join(", ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let values = two_goal_values(0.5).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let verdicts = two_goal_verdicts(&values);
    let ok = verdicts.iter().all(|v| v.pass) && elapsed < tol::TWO_GOAL_RUNTIME_S;
    outcome(ok, format!("{}; {elapsed:.3} s", failing_cells(&verdicts)))
}

fn criterion_4() -> Outcome {
    let e = point_mass_efficiency(1.0).unwrap();
    let v = Verdict::new("efficiency", e, reference::POINT_MASS_EFFICIENCY, tol::POINT_MASS_EFFICIENCY);
    outcome(v.pass, format!("x=80 efficiency {e:.4} vs {:.2} ± {}", v.reference, v.tolerance))
}

fn criterion_5() -> Outcome {
    let mut rng = rng();
    let (mut a, mut b, mut c, mut d, mut e) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..INSTANCES {
        // (a) s = 1 on a matched semantic channel.
        let (n_x, n_y) = sizes(&mut rng);
        let prior = random_pmf(&mut rng, n_x);
        let sem = matched_semantic_channel(&random_channel(&mut rng, n_x, n_y)).unwrap();
        let p = solve_point(&prior, &sem, 1.0, &Pmf::uniform(n_y).unwrap(), &tight()).unwrap();
        a = a.max((p.r - p.g).abs());

        // (b) parametric R against the direct mutual information.
        let (n_x, n_y) = sizes(&mut rng);
        let prior = random_pmf(&mut rng, n_x);
        let sem = random_semantic(&mut rng, n_x, n_y);
        let s = rng.gen_range(0.0..10.0);
        let p = solve_point(&prior, &sem, s, &Pmf::uniform(n_y).unwrap(), &tight()).unwrap();
        b = b.max((p.r - shannon_mi(&prior, &p.channel).unwrap()).abs());

        // (c) decomposition against the direct semantic mutual information.
        let (n_x, n_y) = sizes(&mut rng);
        let prior = random_pmf(&mut rng, n_x);
        let ch = random_channel(&mut rng, n_x, n_y);
        let sem = random_semantic(&mut rng, n_x, n_y);
        let dec = decompose_info(&prior, &ch, &sem).unwrap();
        let rebuilt = dec.fuzzy_entropy_term - dec.avg_distortion;
        c = c.max((rebuilt - semantic_mi(&prior, &ch, &sem).unwrap()).abs());

        // (d) truth -> likelihood -> truth.
        let n_x = rng.gen_range(2..=50);
        let prior = random_pmf(&mut rng, n_x);
        let mut truth: Vec<f64> = (0..n_x).map(|_| rng.gen_range(0.01..1.0)).collect();
        let top = rng.gen_range(0..n_x);
        truth[top] = 1.0;
        let lik = semantic_bayes(&truth, &prior).unwrap();
        let (back, _) = truth_from_likelihood(&lik, &prior).unwrap();
        d = d.max(truth.iter().zip(&back).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));

        // (e) matched semantic channel.
        let (n_x, n_y) = sizes(&mut rng);
        let prior = random_pmf(&mut rng, n_x);
        let ch = random_channel(&mut rng, n_x, n_y);
        let sem = matched_semantic_channel(&ch).unwrap();
        e = e.max((semantic_mi(&prior, &ch, &sem).unwrap() - shannon_mi(&prior, &ch).unwrap()).abs());
    }
    let ok =
        a <= tol::IDENTITY && b <= tol::IDENTITY && c < tol::IDENTITY && d <= tol::ROUND_TRIP && e <= tol::IDENTITY;
    outcome(ok, format!("max residuals a={a:.1e} b={b:.1e} c={c:.1e} d={d:.1e} e={e:.1e}"))
}

/// `(s, G, R)` triples.
type Curve = Vec<(f64, f64, f64)>;

fn plan_curve(prep: &Prepared) -> Curve {
    CURVE_S
        .iter()
        .map(|&s| {
            let p = prep.plan(s).unwrap();
            (s, p.g, p.r)
        })
        .collect()
}

fn produced_curves() -> Vec<(String, Curve)> {
    let mut curves = Vec::new();
    for name in scenarios::names() {
        let prep = prepare(&scenarios::builtin(name).unwrap()).unwrap();
        curves.push((name.to_string(), plan_curve(&prep)));
    }
    let mut rng = rng();
    for k in 0..10 {
        let (n_x, n_y) = sizes(&mut rng);
        let prior = random_pmf(&mut rng, n_x);
        let sem = matched_semantic_channel(&random_channel(&mut rng, n_x, n_y)).unwrap();
        let init = Pmf::uniform(n_y).unwrap();
        let curve = CURVE_S
            .iter()
            .map(|&s| {
                let p = solve_point(&prior, &sem, s, &init, &tight()).unwrap();
                (s, p.g, p.r)
            })
            .collect();
        curves.push((format!("random-{k}"), curve));
    }
    curves
}

fn curve_violations(curve: &Curve) -> Vec<String> {
    let mut bad = Vec::new();
    for &(s, g, r) in curve {
        if g > r + ORDER_SLACK {
            bad.push(format!("G>R at s={s}"));
        }
        let unit = r > 0.0 && (g / r - 1.0).abs() <= ORDER_SLACK;
        if unit != (s == 1.0) {
            bad.push(format!("efficiency {} at s={s}", g / r));
        }
    }
    for w in curve.windows(2) {
        let ((s0, g0, r0), (s1, g1, r1)) = (w[0], w[1]);
        if g1 < g0 - ORDER_SLACK || r1 < r0 - ORDER_SLACK {
            bad.push(format!("decrease between s={s0} and s={s1}"));
        }
    }
    let secants: Vec<(f64, f64)> = curve
        .windows(2)
        .filter(|w| w[1].1 - w[0].1 > ORDER_SLACK)
        .map(|w| (w[1].0, (w[1].2 - w[0].2) / (w[1].1 - w[0].1)))
        .collect();
    for w in secants.windows(2) {
        if w[1].1 < w[0].1 - ORDER_SLACK {
            bad.push(format!("secant drops at s={}: {:.6} < {:.6}", w[1].0, w[1].1, w[0].1));
        }
    }
    bad
}

fn criterion_6() -> Outcome {
    let curves = produced_curves();
    let bad: Vec<String> = curves
        .iter()
        .flat_map(|(name, c)| curve_violations(c).into_iter().map(move |v| format!("{name}: {v}")))
        .collect();
    let detail = if bad.is_empty() { format!("{} curves ordered", curves.len()) } else { bad.join("; ") };
    outcome(bad.is_empty(), detail)
}

fn criterion_7() -> Outcome {
    let prep = prepare(&scenarios::mortality()).unwrap();
    let truth = prep.sem.column(0);
    let floor = prep.options.solver.truth_floor;
    let dense: Vec<(f64, f64)> = (0..=4000)
        .map(|k| {
            let p = single_message_point(&prep.prior, &truth, k as f64 * 0.02, floor).unwrap();
            (p.g, p.r)
        })
        .collect();
    let mut worst = f64::NEG_INFINITY;
    for row in &reference::MORTALITY {
        let plan = prep.plan(row.s).unwrap();
        let sur = prep.surrogate_row(&plan).unwrap();
        let seg = dense.windows(2).find(|w| w[0].0 <= sur.g1_bits && sur.g1_bits <= w[1].0).expect("G1 on curve");
        let t = (sur.g1_bits - seg[0].0) / (seg[1].0 - seg[0].0);
        let r_at = seg[0].1 + t * (seg[1].1 - seg[0].1);
        worst = worst.max(r_at - sur.r1_bits);
    }
    outcome(worst <= tol::DOMINANCE, format!("max R(G1) - R1 = {worst:.4}"))
}

fn perturb(rng: &mut impl Rng, w: &[f64], scale: f64) -> Vec<f64> {
    let v: Vec<f64> = w.iter().map(|x| x * (1.0 + scale * rng.gen_range(-1.0..1.0)) + 1e-12).collect();
    let t: f64 = v.iter().sum();
    v.into_iter().map(|x| x / t).collect()
}

/// `I(X;Y) - s G` of a joint channel, with the solver's floored truth.
fn joint_objective(prior: &Pmf, ch: &ShannonChannel, prep: &Prepared, s: f64) -> f64 {
    let ws = build_tilt(prior, &prep.sem, prep.options.solver.truth_floor).unwrap();
    let mut g = 0.0;
    for (i, (p, row)) in prior.weights().iter().zip(ch.rows()).enumerate() {
        g += p * row.iter().enumerate().map(|(j, c)| c * ws.log_m(i, j)).sum::<f64>();
    }
    shannon_mi(prior, ch).unwrap() - s * g / std::f64::consts::LN_2
}

fn criterion_8() -> Outcome {
    let mut rng = rng();
    let mut worst = f64::NEG_INFINITY;
    let mut checks = 0;
    for name in scenarios::names() {
        let prep = prepare(&scenarios::builtin(name).unwrap()).unwrap();
        for s in [1.0, 5.0, 20.0, 40.0] {
            // Per-action results for a fixed P(a).
            let plan = prep.plan(s).unwrap();
            let f0 = imm_objective(&prep.prior, &plan.pa, &plan.posteriors, &prep.sem, s).unwrap();
            for k in 0..INSTANCES {
                let scale = [0.01, 0.1, 0.5][k % 3];
                let posts: Vec<Pmf> =
                    plan.posteriors.iter().map(|q| Pmf::new(perturb(&mut rng, q.weights(), scale)).unwrap()).collect();
                let f = imm_objective(&prep.prior, &plan.pa, &posts, &prep.sem, s).unwrap();
                worst = worst.max(f0 - f);
                checks += 1;
            }
            // Joint channel at its fixed point.
            if prep.sem.n_y() < 2 {
                continue;
            }
            let init = Pmf::uniform(prep.sem.n_y()).unwrap();
            let opts = SolverOptions { truth_floor: prep.options.solver.truth_floor, ..tight() };
            let point = solve_point(&prep.prior, &prep.sem, s, &init, &opts).unwrap();
            let f0 = joint_objective(&prep.prior, &point.channel, &prep, s);
            for k in 0..INSTANCES {
                let scale = [0.01, 0.1, 0.5][k % 3];
                let rows = point.channel.rows().map(|r| perturb(&mut rng, r, scale)).collect();
                let ch = ShannonChannel::from_rows(rows).unwrap();
                worst = worst.max(f0 - joint_objective(&prep.prior, &ch, &prep, s));
                checks += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("{checks} perturbations; max f(opt) - f(perturbed) = {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let mut rng = rng();
    let mut cases: Vec<(Pmf, SemanticChannel)> = scenarios::names()
        .iter()
        .map(|n| {
            let prep = prepare(&scenarios::builtin(n).unwrap()).unwrap();
            (prep.prior, prep.sem)
        })
        .collect();
    for _ in 0..INSTANCES {
        let (n_x, n_y) = sizes(&mut rng);
        cases.push((random_pmf(&mut rng, n_x), random_semantic(&mut rng, n_x, n_y)));
    }
    let mut worst = 0.0f64;
    let mut finite = true;
    for (prior, sem) in &cases {
        let ws = build_tilt(prior, sem, 1e-12).unwrap();
        let (ch, log_lambda) = channel_update(&ws, &Pmf::uniform(sem.n_y()).unwrap(), 200.0).unwrap();
        finite &= log_lambda.iter().all(|v| v.is_finite());
        for row in ch.rows() {
            finite &= row.iter().all(|v| v.is_finite());
            worst = worst.max((row.iter().sum::<f64>() - 1.0).abs());
        }
    }
    outcome(finite && worst <= tol::ROW_SUM, format!("{} channels; max |row sum - 1| = {worst:.1e}", cases.len()))
}

fn criterion_10() -> Outcome {
    let values = two_goal_values(0.5).unwrap();
    let find = |s: f64, c: f64| values.iter().find(|v| v.s == s && v.c == c).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for s in [1.0, 5.0, 40.0] {
        let (a, b) = (find(s, 75.0).pa1, find(s, 80.0).pa1);
        ok &= b < a;
        notes.push(format!("s={s} P(a1) {a:.3}->{b:.3}"));
    }
    for c in [75.0, 80.0] {
        let gain = find(40.0, c).g - find(5.0, c).g;
        ok &= gain < tol::SATURATION_GAIN;
        notes.push(format!("c={c} G gain {gain:.3}"));
    }
    outcome(ok, notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "mortality table", criterion_1),
        (2, "grid sensitivity", criterion_2),
        (3, "two-goal table", criterion_3),
        (4, "point-mass efficiency", criterion_4),
        (5, "exact identities", criterion_5),
        (6, "curve order properties", criterion_6),
        (7, "surrogate dominance", criterion_7),
        (8, "optimality spot-check", criterion_8),
        (9, "stability at s=200", criterion_9),
        (10, "trend claims", criterion_10),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        println!("{} criterion {id:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    println!("failing: {failed:?}; expected red: {KNOWN_RED:?}");
    if failed != KNOWN_RED {
        println!("acceptance outcome differs from the expected set");
        std::process::exit(1);
    }
}
