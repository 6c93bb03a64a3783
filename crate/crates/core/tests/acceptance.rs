//! Acceptance criteria. Every test prints one `[AC-n] PASS|FAIL` line with
//! the measured quantities, then asserts. Tolerances and time limits are
//! the constants at the top of each test. The lines go straight to the
//! stdout handle so they show without `--nocapture`.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hardy_rellich::constants::{
    constant_of_eigenvalues, hardy_constant, hardy_rellich_constant, monopole_printed_constant, named_constant,
    one_d_hardy_rellich_constant, NamedCase, ProblemSpec,
};
use hardy_rellich::quotient::{
    carre_du_champ_residual, hardy_quotient, hardy_rellich_quotient, mode_numerator, ModeFunction,
};
use hardy_rellich::radial::{minimizing_profile, weighted_integral_on, MinimizingBranch, RadialProfile};
use hardy_rellich::spectra::{apply_exclusion, circle_schrodinger_spectrum, AngularOperator, ModeExclusion};
use hardy_rellich::verify::{brute_force_constant, minimizing_sweep, random_bump, seeded_rng};
use rand::Rng;

fn line(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
}

fn verdict(id: u32, title: &str, pass: bool, elapsed: Duration, limit: Duration, detail: &str) {
    let in_time = elapsed <= limit;
    let status = if pass && in_time { "PASS" } else { "FAIL" };
    line(&format!(
        "[AC-{id}] {status} {title}: {detail} ({:.3} s, limit {:.0} s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    ));
    assert!(pass, "AC-{id} failed: {detail}");
    assert!(in_time, "AC-{id} exceeded its time limit");
}

fn free(d: u32, alpha: f64) -> ProblemSpec {
    ProblemSpec::new(d, alpha, AngularOperator::Free { dim: d })
}

fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h)).sum();
    h * (inner + 0.5 * (f(a) + f(b)))
}

#[test]
fn ac01_closed_form_constants() {
    const TOL: f64 = 1e-12;
    const LIMIT: Duration = Duration::from_secs(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut check = |expected: f64, actual: f64| worst = worst.max((actual - expected).abs());

    check(0.25, one_d_hardy_rellich_constant(0.0));
    check(25.0 / 36.0, hardy_rellich_constant(&free(3, 0.0)).unwrap().value);
    check(3.0, hardy_rellich_constant(&free(4, 0.0)).unwrap().value);
    for d in 5..=10u32 {
        check((d * d) as f64 / 4.0, hardy_rellich_constant(&free(d, 0.0)).unwrap().value);
    }
    check(0.0, hardy_rellich_constant(&free(2, 0.0)).unwrap().value);
    let without_k1 = free(2, 0.0).with_exclusion([1].into_iter().collect());
    check(1.0, hardy_rellich_constant(&without_k1).unwrap().value);

    verdict(
        1,
        "closed-form constants C(1), C(3), C(4), C(5..10), C(2,0), C(2,0) without k=1",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("max error {worst:e} (tol {TOL:e})"),
    );
}

#[test]
fn ac02_electric_constant() {
    const TOL: f64 = 1e-12;
    const LIMIT: Duration = Duration::from_secs(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for a in [2.0f64, 3.0, 10.0] {
        let v = named_constant(NamedCase::ElectricConst { dim: 2, a }, 0.0).unwrap().value;
        worst = worst.max((v - (a - 1.0).powi(2) / (a + 1.0)).abs());
    }
    verdict(
        2,
        "C_a = (a-1)^2/(a+1) for a in {2, 3, 10}",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("max error {worst:e} (tol {TOL:e})"),
    );
}

#[test]
fn ac03_aharonov_bohm_hardy() {
    const TOL: f64 = 1e-12;
    const LIMIT: Duration = Duration::from_secs(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for flux in [0.1f64, 0.3, 0.5, 0.9] {
        let p = ProblemSpec::new(2, 0.0, AngularOperator::AharonovBohm { dim: 2, flux });
        let dist = (flux - flux.round()).abs().min((flux - flux.floor()).abs());
        worst = worst.max((hardy_constant(&p).unwrap().value - dist * dist).abs());
    }
    verdict(
        3,
        "C_D(2, 0) with AB flux equals dist(flux, Z)^2",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("max error {worst:e} (tol {TOL:e})"),
    );
}

#[test]
fn ac04_oracle_equivalence() {
    const TOL: f64 = 1e-12;
    const WINDOW: usize = 200;
    const LIMIT: Duration = Duration::from_secs(10);
    let start = Instant::now();
    let mut cases = Vec::new();
    for d in 2..=8u32 {
        for alpha in [-3.0, -1.0, 0.0, 1.0, 2.0, 3.0, d as f64 - 4.0] {
            for excl in [vec![], vec![0usize], vec![1]] {
                cases.push(free(d, alpha).with_exclusion(excl.into_iter().collect::<ModeExclusion>()));
            }
            for a in [0.5, 2.0, 10.0] {
                cases.push(ProblemSpec::new(d, alpha, AngularOperator::ElectricConst { dim: d, a }));
            }
            for flux in [0.25, 0.5, 0.9] {
                cases.push(ProblemSpec::new(d, alpha, AngularOperator::AharonovBohm { dim: d, flux }));
            }
            if d == 3 {
                for g in [0.5, 1.0, 1.5] {
                    cases.push(ProblemSpec::new(3, alpha, AngularOperator::Monopole { g }));
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for p in &cases {
        let fast = hardy_rellich_constant(p).unwrap().value;
        let all = p.operator.spectrum(WINDOW + p.exclusion.indices().count()).unwrap();
        let kept = apply_exclusion(&all, &p.exclusion).unwrap();
        let slow = brute_force_constant(&kept, p.d, p.alpha, WINDOW);
        worst = worst.max((fast - slow).abs());
    }
    verdict(
        4,
        "truncated minimizer equals the window-200 brute force",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("{} cases, max difference {worst:e} (tol {TOL:e})", cases.len()),
    );
}

#[test]
fn ac05_minimizing_sequence_sharpness() {
    const EPSILONS: [f64; 5] = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4];
    const FINAL_RATIO_TOL: f64 = 0.10;
    const SPREAD_LIMIT: f64 = 4.0;
    const LIMIT: Duration = Duration::from_secs(60);
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for (d, alpha, expected) in [(5u32, 0.0, 6.25), (3, 0.0, 25.0 / 36.0), (6, 2.0, 5.0)] {
        let s = minimizing_sweep(&free(d, alpha), &EPSILONS, None).unwrap();
        assert_eq!(s.constant, expected);
        let decreasing = s.rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
        let logs: Vec<f64> = s.rows.iter().map(|r| r.gap_times_log).collect();
        let (lo, hi) = logs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        let spread = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        let final_rel = s.final_ratio() / expected - 1.0;
        let close = final_rel.abs() <= FINAL_RATIO_TOL;
        let ok = decreasing && close && spread < SPREAD_LIMIT;
        line(&format!(
            "[AC-5]   (d={d}, alpha={alpha}) decreasing={decreasing} final ratio {:.6} vs {expected:.6} \
             ({:+.1}%, within 10%: {close}) log-law spread {spread:.3} (< 4: {})",
            s.final_ratio(),
            100.0 * final_rel,
            spread < SPREAD_LIMIT
        ));
        details.push(format!("(d={d},a={alpha}) {}", if ok { "ok" } else { "fails" }));
        pass &= ok;
    }
    verdict(
        5,
        "minimizing sweeps decrease, end within 10% of C, keep gap*|ln 4eps^2| within a factor 4",
        pass,
        start.elapsed(),
        LIMIT,
        &details.join(", "),
    );
}

#[test]
fn ac06_plateau_integrals() {
    const TOL: f64 = 1e-9;
    const EPS: f64 = 1e-3;
    const LIMIT: Duration = Duration::from_secs(5);
    let start = Instant::now();
    let log = -(4.0 * EPS * EPS).ln();
    let mut worst: f64 = 0.0;
    for (d, alpha) in [(5u32, 0.0), (3, 0.0), (8, 1.0), (6, -1.5)] {
        let s = d as f64 - alpha - 4.0;
        let f = minimizing_profile(EPS, d, alpha, MinimizingBranch::Power).unwrap();
        for (q, power, factor) in [
            (0u8, d as f64 - alpha - 5.0, 1.0),
            (1, d as f64 - alpha - 3.0, s * s / 4.0),
            (2, d as f64 - alpha - 1.0, s * s * (s + 2.0).powi(2) / 16.0),
        ] {
            let v = weighted_integral_on(&*f, q, power, 2.0 * EPS, 0.5 / EPS).unwrap();
            worst = worst.max((v / (factor * log) - 1.0).abs());
        }
    }
    verdict(
        6,
        "plateau integrals equal -ln(4 eps^2) times their prefactors at eps = 1e-3",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("max relative error {worst:e} (tol {TOL:e})"),
    );
}

#[test]
fn ac07_second_order_identity() {
    const TOL: f64 = 1e-6;
    const POINTS: usize = 1_000_000;
    const LIMIT: Duration = Duration::from_secs(30);
    let start = Instant::now();
    let mut rng = seeded_rng(0x5EED);
    let dims = [(3u32, 0.0), (5, 1.0), (2, -1.0), (4, 0.5), (6, 2.0)];
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let (d, alpha) = dims[i % dims.len()];
        let dd = d as f64;
        let f: Arc<dyn RadialProfile> = Arc::new(random_bump(&mut rng));
        let (lo, hi) = f.support();
        for l in [0.0, 2.0, 7.5] {
            let identity = mode_numerator(&ModeFunction::new(l, f.clone()).unwrap(), d, alpha).unwrap();
            let direct = trapezoid(
                |r| {
                    let v = -f.d2(r) - (dd - 1.0) * f.d1(r) / r + l * f.value(r) / (r * r);
                    v * v * r.powf(dd - alpha - 1.0)
                },
                lo,
                hi,
                POINTS,
            );
            worst = worst.max((identity / direct - 1.0).abs());
        }
    }
    verdict(
        7,
        "per-mode second-order identity equals the direct integral of |L_r f + lambda f/r^2|^2",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("10 profiles x 3 eigenvalues, max relative difference {worst:e} (tol {TOL:e})"),
    );
}

#[test]
fn ac08_inequality_battery() {
    const SLACK: f64 = 1e-6;
    const SETS: usize = 100;
    const LIMIT: Duration = Duration::from_secs(60);
    let start = Instant::now();
    let mut rng = seeded_rng(0xAC08);
    let mut violations = 0;
    let mut equalities = 0;
    let mut smallest_margin = f64::INFINITY;
    for family in ["free", "electric", "ab", "monopole"] {
        for _ in 0..SETS {
            let (d, op) = match family {
                "free" => {
                    let d = rng.random_range(2..=7u32);
                    (d, AngularOperator::Free { dim: d })
                }
                "electric" => {
                    let d = rng.random_range(2..=5u32);
                    (d, AngularOperator::ElectricConst { dim: d, a: rng.random_range(0.0..6.0) })
                }
                "ab" => {
                    let d = rng.random_range(2..=5u32);
                    (d, AngularOperator::AharonovBohm { dim: d, flux: rng.random_range(-2.0..2.0) })
                }
                _ => (3, AngularOperator::Monopole { g: [0.5, -0.5, 1.0, 1.5, 2.0][rng.random_range(0..5usize)] }),
            };
            let alpha = if rng.random_bool(0.2) { d as f64 - 4.0 } else { rng.random_range(-3.0..4.0) };
            let spectrum = op.spectrum(10).unwrap();
            let mut indices: Vec<usize> = (0..10).collect();
            let modes: Vec<ModeFunction> = (0..rng.random_range(1..=3usize))
                .map(|_| {
                    let i = indices.remove(rng.random_range(0..indices.len()));
                    ModeFunction::new(spectrum.eigenvalues()[i], Arc::new(random_bump(&mut rng))).unwrap()
                })
                .collect();
            let eigenvalues: Vec<f64> = modes.iter().map(|m| m.eigenvalue).collect();

            let c = constant_of_eigenvalues(&eigenvalues, d, alpha).unwrap().value;
            let hr = hardy_rellich_quotient(&modes, d, alpha).unwrap().ratio;
            let beta = alpha;
            let min_l = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            let cd = min_l + ((d as f64 - beta - 2.0) / 2.0).powi(2);
            let h = hardy_quotient(&modes, d, beta).unwrap().ratio;

            for (ratio, constant) in [(hr, c), (h, cd)] {
                if ratio < constant * (1.0 - SLACK) {
                    violations += 1;
                }
                let margin = if constant == 0.0 { ratio } else { ratio / constant - 1.0 };
                if margin <= SLACK {
                    equalities += 1;
                }
                smallest_margin = smallest_margin.min(margin);
            }
        }
    }
    verdict(
        8,
        "100 random mode sets per family satisfy both inequalities strictly",
        violations == 0 && equalities == 0,
        start.elapsed(),
        LIMIT,
        &format!("{violations} violations, {equalities} near-equalities, smallest relative margin {smallest_margin:e}"),
    );
}

#[test]
fn ac09_circle_eigensolver() {
    const TOL: f64 = 1e-8;
    const SELF_TOL: f64 = 1e-6;
    const LIMIT: Duration = Duration::from_secs(10);
    let start = Instant::now();
    let a = 0.7;
    let s = circle_schrodinger_spectrum(&vec![a; 256], 10).unwrap();
    let mut k2: Vec<f64> = (0..10i32).flat_map(|k| [(k * k) as f64; 2]).collect();
    k2.remove(0);
    k2.truncate(10);
    let constant_err = s
        .eigenvalues()
        .iter()
        .zip(&k2)
        .map(|(x, k)| (x - k - a).abs())
        .fold(0.0, f64::max);

    let sample = |n: usize| -> Vec<f64> {
        (0..n)
            .map(|i| 2.0 + (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
            .collect()
    };
    let coarse = circle_schrodinger_spectrum(&sample(128), 10).unwrap();
    let fine = circle_schrodinger_spectrum(&sample(256), 10).unwrap();
    let self_err = coarse
        .eigenvalues()
        .iter()
        .zip(fine.eigenvalues())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let mu0 = fine.eigenvalues()[0];

    verdict(
        9,
        "circle spectrum: constant potential, self-convergence, mu_0 >= min a",
        constant_err <= TOL && self_err <= SELF_TOL && mu0 >= 1.0,
        start.elapsed(),
        LIMIT,
        &format!("constant-potential error {constant_err:e} (tol {TOL:e}), N=128 vs 256 {self_err:e} (tol {SELF_TOL:e}), mu_0 = {mu0} >= 1"),
    );
}

#[test]
fn ac10_monopole_constant() {
    const TOL: f64 = 1e-12;
    const WINDOW: usize = 200;
    const LIMIT: Duration = Duration::from_secs(1);
    let start = Instant::now();
    let g: f64 = 0.5;
    // λ_l = k(k+2)/4 - g² with k = 2(|g| + l)
    let oracle = (0..WINDOW)
        .map(|l| {
            let k = 2.0 * (g.abs() + l as f64);
            let lambda = k * (k + 2.0) / 4.0 - g * g;
            (4.0 * lambda - 3.0f64 * 1.0).powi(2) / (4.0 * (4.0 * lambda + 1.0))
        })
        .fold(f64::INFINITY, f64::min);
    let v = named_constant(NamedCase::Monopole { g }, 0.0).unwrap().value;
    let printed = monopole_printed_constant(g, 0.0);
    let printed_alpha1 = monopole_printed_constant(g, 1.0);
    let general_alpha1 = named_constant(NamedCase::Monopole { g }, 1.0).unwrap().value;
    line(&format!(
        "[AC-10]   (alpha+1) denominator variant: {printed} at alpha=0, {printed_alpha1} vs general {general_alpha1} at alpha=1 (not asserted)"
    ));
    verdict(
        10,
        "monopole constant at g=1/2 equals the window-200 oracle",
        (v - oracle).abs() <= TOL && (oracle - 1.0 / 12.0).abs() <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("C_mon(0) = {v}, oracle {oracle}, 1/12 = {}", 1.0 / 12.0),
    );
}

#[test]
fn ac11_carre_du_champ_residual() {
    const TOL: f64 = 1e-8;
    const LIMIT: Duration = Duration::from_secs(5);
    let start = Instant::now();
    let mut rng = seeded_rng(0xCDC);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for a in [0.0, 2.0] {
        for beta in [-2.0, 0.0, 1.0] {
            for d in [2u32, 3, 4] {
                let op = AngularOperator::ElectricConst { dim: d, a };
                for lambda in op.spectrum(3).unwrap().eigenvalues().to_vec() {
                    let m = ModeFunction::new(lambda, Arc::new(random_bump(&mut rng))).unwrap();
                    worst = worst.max(carre_du_champ_residual(&m, &op, d, beta).unwrap());
                    count += 1;
                }
            }
        }
    }
    verdict(
        11,
        "Carre du Champ identity for constant angular potentials",
        worst <= TOL,
        start.elapsed(),
        LIMIT,
        &format!("{count} cases with a in {{0, 2}}, beta in {{-2, 0, 1}}, max residual {worst:e} (tol {TOL:e})"),
    );
}
