//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::time::Instant;

use common::{covariance, log2_det_sum, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sitcj_core::experiment::{write_csv, Dims};
use sitcj_core::linalg::{frobenius, real_diagonal};
use sitcj_core::mimo::Sdlc2Surrogate;
use sitcj_core::oracle::{
    finite_difference_gradient, grid_search_simo, projected_descent_modes, simo_breakpoints,
    AscentObjective, GridSpec,
};
use sitcj_core::simdiag::DEFAULT_RANK_TOL;
use sitcj_core::simo::{sit_cj_case, SimoGains, SitCjCase};
use sitcj_core::{
    generate_channel, optimize_no_mimo, optimize_sit_cj_mimo, rate_report, run_experiment,
    sdlc2_step, simultaneous_diagonalize, solve_no_jamming_simo, solve_simo, solve_sit_cj_simo,
    waterfill_modes, CMat, ExperimentConfig, ResultRow,
    Scheme, SolverBudget, SweepAxis,
};

const P20: f64 = 100.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn simo_closed_form_vs_grid() -> Outcome {
    let start = Instant::now();
    let (mut max_gap, mut min_margin) = (0.0f64, f64::INFINITY);
    for (cfg, (b, e)) in [2, 4, 8].into_iter().flat_map(|b| [1, 2, 4].map(|e| (b, e))).enumerate() {
        for trial in 0..200 {
            let ch = generate_channel(trial, 1000 + cfg as u64, b, e, 1).unwrap();
            let (n1, n2) = simo_breakpoints(&ch, P20, P20).unwrap();
            let spec = GridSpec::powers(300, P20, P20).unwrap().with_nodes(0, &n1).with_nodes(1, &n2);
            for scheme in Scheme::ALL {
                let closed = solve_simo(scheme, &ch, P20, P20).unwrap().rs;
                let grid = grid_search_simo(scheme, &ch, &spec).unwrap().value;
                max_gap = max_gap.max((closed - grid).abs());
                min_margin = min_margin.min(closed - grid);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        max_gap <= 5e-3 && min_margin >= -1e-9 && secs < 120.0,
        format!("max |closed - grid| = {max_gap:.3e}, min closed - grid = {min_margin:.3e}, {secs:.1} s"),
    )
}

fn dominance() -> Outcome {
    let mut worst = f64::INFINITY;
    let sizes = [1, 2, 4, 8];
    for trial in 0..1000u64 {
        let (b, e) = (sizes[(trial % 4) as usize], sizes[(trial / 4 % 4) as usize]);
        let ch = generate_channel(trial, 2000, b, e, 1).unwrap();
        let sit = solve_sit_cj_simo(&ch, P20, P20).unwrap().rs;
        worst = worst.min(sit - solve_no_jamming_simo(&ch, P20).unwrap().rs);
    }
    let simo = worst;
    let budget = SolverBudget::default();
    let mut worst = f64::INFINITY;
    for trial in 0..1000u64 {
        let ch = generate_channel(trial, 2001, 2, 2, 2).unwrap();
        let sit = optimize_sit_cj_mimo(&ch, P20, P20, &budget).unwrap().rs;
        worst = worst.min(sit - optimize_no_mimo(&ch, P20, &budget).unwrap().rs);
    }
    outcome(
        simo >= -1e-9 && worst >= -1e-9,
        format!("min sitcj - no: simo {simo:.3e}, mimo {worst:.3e} over 1000 channels each"),
    )
}

fn waterfill_vs_oracle() -> Outcome {
    let budget = SolverBudget::default();
    let mut r = rng(3000);
    let (mut gap, mut slack, mut over) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..50u64 {
        let t = 1 + (trial % 4) as usize;
        let ch = generate_channel(trial, 3000, 1 + r.random_range(0..4), 1 + r.random_range(0..4), t).unwrap();
        let p = r.random_range(1.0..P20);
        let f1 = covariance(&mut r, t, p);
        let f2 = sdlc2_step(&ch, &f1, &covariance(&mut r, t, p), p, &budget).unwrap();
        let (modes, _) = Sdlc2Surrogate::new(&ch, &f1, &f2).unwrap().modes().unwrap();
        let sol = waterfill_modes(&modes, t, p, &budget).unwrap();
        let oracle = projected_descent_modes(&modes, p, 50_000).unwrap();
        let oracle_value: f64 = modes.iter().zip(&oracle).map(|(m, l)| m.objective(*l)).sum();
        gap = gap.max(sol.objective(&modes) - oracle_value);
        let used = sol.power(&modes);
        slack = slack.max((sol.beta * (used - p)).abs());
        over = over.max((used - p) / p);
    }
    outcome(
        gap <= 1e-6 && slack <= 1e-7 && over <= 1e-9,
        format!("objective - oracle max {gap:.3e}, |beta * slack| max {slack:.3e}, relative overshoot max {over:.3e}"),
    )
}

fn sd_reconstruction() -> Outcome {
    let mut r = rng(4000);
    let (mut worst, mut eta_out) = (0.0f64, 0.0f64);
    let psd = |r: &mut ChaCha8Rng, t: usize, k: usize| {
        let x = common::gaussian(r, t, k);
        &x * x.adjoint()
    };
    for _ in 0..200 {
        let t = r.random_range(1..=6);
        let (k1, k2) = (r.random_range(0..=t), r.random_range(0..=t));
        let q1 = psd(&mut r, t, k1);
        let q2 = psd(&mut r, t, k2);
        let sd = simultaneous_diagonalize(&q1, &q2, DEFAULT_RANK_TOL).unwrap();
        let mut eta = vec![0.0; t];
        let mut ones = vec![0.0; t];
        eta[..sd.rank].copy_from_slice(&sd.eta);
        ones[..sd.rank].fill(1.0);
        let s = &q1 + &q2;
        let r1 = frobenius(&(sd.w.adjoint() * &q1 * &sd.w - real_diagonal(&eta))) / (1.0 + frobenius(&q1));
        let r2 = frobenius(&(sd.w.adjoint() * &s * &sd.w - real_diagonal(&ones))) / (1.0 + frobenius(&s));
        worst = worst.max(r1).max(r2);
        for e in &sd.eta {
            eta_out = eta_out.max(-e).max(e - 1.0);
        }
    }
    outcome(
        worst <= 1e-8 && eta_out <= 0.0,
        format!("relative residual max {worst:.3e}, eta outside [0,1] by {eta_out:.3e}"),
    )
}

fn crossing_power() -> Outcome {
    let mut r = rng(5000);
    let sizes = [1, 2, 4];
    let (mut split, mut eq_err, mut sign_violations) = (0, 0.0f64, 0);
    for trial in 0..500u64 {
        let (b, e) = (sizes[(trial % 3) as usize], sizes[(trial / 3 % 3) as usize]);
        let ch = generate_channel(trial, 5000, b, e, 1).unwrap();
        let SitCjCase::Split { p0_prime } = sit_cj_case(&ch, P20).unwrap() else { continue };
        split += 1;
        let m = ch.h1() * ch.h1().adjoint() * num_complex::Complex64::new(p0_prime, 0.0) + CMat::identity(b, b);
        let x = m.lu().solve(ch.h2()).unwrap();
        let lhs = (ch.h2().adjoint() * x)[(0, 0)].re;
        let g22: f64 = ch.g2().iter().map(|z| z.norm_sqr()).sum();
        eq_err = eq_err.max((lhs - g22).abs());
        let gains = SimoGains::new(&ch).unwrap();
        for k in 0..100 {
            let f1 = P20 * k as f64 / 99.0;
            let f2 = r.random_range(0.0..P20).max(1e-3);
            let d = gains.hat_difference(f1, f2) - gains.tilde_difference(f1, f2);
            let ok = if f1 <= p0_prime { d <= 1e-9 } else { d >= -1e-9 };
            sign_violations += usize::from(!ok);
        }
    }
    outcome(
        split > 0 && eq_err <= 1e-8 && sign_violations == 0,
        format!("{split} split channels, defining-equation error max {eq_err:.3e}, {sign_violations} sign violations"),
    )
}

fn open_rate_identities() -> Outcome {
    let mut r = rng(6000);
    let budget = SolverBudget::default();
    let (mut worst, mut positive) = (0.0f64, 0);
    for trial in 0..500u64 {
        let t = 1 + (trial % 3) as usize;
        let (b, e) = (1 + r.random_range(0..4), 1 + r.random_range(0..4));
        let ch = generate_channel(trial, 6000, b, e, t).unwrap();
        let (f1, f2) = if trial % 2 == 0 {
            (covariance(&mut r, t, P20), covariance(&mut r, t, P20))
        } else {
            let s = optimize_sit_cj_mimo(&ch, P20, P20, &budget).unwrap();
            (s.f1, s.f2)
        };
        let (m1, m2) = (f1.matrix(), f2.matrix());
        let targets = [
            log2_det_sum(b, &[(ch.h1(), m1)]),
            log2_det_sum(b, &[(ch.h1(), m1), (ch.h2(), m2)]) - log2_det_sum(b, &[(ch.h2(), m2)]),
            log2_det_sum(b, &[(ch.h1(), m1), (ch.h2(), m2)]),
        ];
        for (scheme, target) in Scheme::ALL.into_iter().zip(targets) {
            let rep = rate_report(scheme, &ch, &f1, &f2).unwrap();
            if rep.rs > 0.0 {
                positive += 1;
                worst = worst.max((rep.total() - target).abs());
            }
        }
    }
    outcome(
        positive > 0 && worst <= 1e-10,
        format!("{positive} reports with rs > 0, |rs + ro - log-det| max {worst:.3e}"),
    )
}

fn sweep(axis: SweepAxis, values: Vec<f64>, b: usize, threads: Option<usize>) -> ExperimentConfig {
    ExperimentConfig {
        schemes: Scheme::ALL.to_vec(),
        axis,
        values,
        fixed: Dims { b, e: 4, t: 1, p_db: 20.0 },
        trials: 200,
        seed: 7,
        budget: SolverBudget::default(),
        threads,
    }
}

fn sweep_configs() -> [ExperimentConfig; 2] {
    [
        sweep(SweepAxis::B, vec![1.0, 2.0, 4.0, 8.0], 4, None),
        sweep(SweepAxis::E, vec![1.0, 2.0, 4.0, 8.0], 4, None),
    ]
}

fn column(rows: &[ResultRow], scheme: Scheme, f: impl Fn(&ResultRow) -> f64) -> Vec<f64> {
    rows.iter().filter(|r| r.scheme == scheme).map(f).collect()
}

fn fmt(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ")
}

fn trends(b_rows: &[ResultRow], e_rows: &[ResultRow], secs: f64) -> Outcome {
    let mut pass = secs < 300.0;
    let mut detail = Vec::new();
    for scheme in Scheme::ALL {
        let over_b = column(b_rows, scheme, |r| r.mean_rs);
        let over_e = column(e_rows, scheme, |r| r.mean_rs);
        pass &= over_b.windows(2).all(|w| w[1] >= w[0]);
        pass &= over_e.windows(2).all(|w| w[1] <= w[0]);
        detail.push(format!("{scheme} rs over B [{}] over E [{}]", fmt(&over_b), fmt(&over_e)));
    }
    for rows in [b_rows, e_rows] {
        let sit = column(rows, Scheme::SitCj, |r| r.mean_rs);
        let no = column(rows, Scheme::No, |r| r.mean_rs);
        pass &= sit.iter().zip(&no).all(|(s, n)| s >= n);
    }
    detail.push(format!("{secs:.1} s"));
    outcome(pass, detail.join("; "))
}

fn spectral_ordering(b_rows: &[ResultRow], e_rows: &[ResultRow]) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, rows) in [("B", b_rows), ("E", e_rows)] {
        let sit = column(rows, Scheme::SitCj, |r| r.mean_rtotal);
        let gn = column(rows, Scheme::Gn, |r| r.mean_rtotal);
        let values = column(rows, Scheme::Gn, |r| r.sweep_value);
        for ((v, s), g) in values.iter().zip(&sit).zip(&gn) {
            if s <= g {
                pass = false;
                detail.push(format!("{name}={v}: sitcj {s:.4} <= gn {g:.4}"));
            }
        }
        detail.push(format!("{name}: sitcj [{}] gn [{}]", fmt(&sit), fmt(&gn)));
    }
    outcome(pass, detail.join("; "))
}

fn determinism() -> Outcome {
    let csv = |threads| {
        let mut out = Vec::new();
        let cfg = sweep(SweepAxis::B, vec![1.0, 2.0, 4.0, 8.0], 4, threads);
        write_csv(&run_experiment(&cfg).unwrap(), &mut out).unwrap();
        let mimo = ExperimentConfig {
            fixed: Dims { b: 2, e: 2, t: 2, p_db: 20.0 },
            axis: SweepAxis::E,
            values: vec![1.0, 2.0],
            trials: 20,
            ..cfg
        };
        write_csv(&run_experiment(&mimo).unwrap(), &mut out).unwrap();
        out
    };
    let first = csv(Some(1));
    let same = first == csv(Some(1));
    let across = first == csv(Some(4));
    outcome(
        same && across,
        format!("repeat identical: {same}, 1 vs 4 threads identical: {across}, {} bytes", first.len()),
    )
}

fn gradient_sanity() -> Outcome {
    let mut r = rng(10_000);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = |r: &mut ChaCha8Rng| common::gaussian(r, 2, 2);
        let (a, b, c, d, e, x) = (g(&mut r), g(&mut r), g(&mut r), g(&mut r), g(&mut r), g(&mut r));
        let f = covariance(&mut r, 2, 5.0).matrix() + CMat::identity(2, 2).scale(0.05);
        for obj in [
            AscentObjective::SecrecyDifference { hb: a, ge: b },
            AscentObjective::Capacity { h: c },
            AscentObjective::GnSurrogate { hhat: d, g: e, a: &x * x.adjoint() },
        ] {
            let analytic = obj.gradient(&f).unwrap();
            let fd = finite_difference_gradient(&obj, &f, 1e-5).unwrap();
            worst = worst.max(frobenius(&(&analytic - &fd)) / frobenius(&analytic).max(1e-12));
        }
    }
    outcome(worst <= 1e-5, format!("relative gradient error max {worst:.3e} on 20 instances"))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "single-antenna closed forms match grid search", simo_closed_form_vs_grid()),
        (2, "SIT-CJ never below no jamming", dominance()),
        (3, "jammer water-filling matches descent oracle", waterfill_vs_oracle()),
        (4, "simultaneous diagonalization reconstructs both matrices", sd_reconstruction()),
        (5, "crossing power and bound ordering", crossing_power()),
        (6, "open-rate sum identities", open_rate_identities()),
    ];

    let sweep_start = Instant::now();
    let [b_cfg, e_cfg] = sweep_configs();
    let b_rows = run_experiment(&b_cfg).unwrap();
    let e_rows = run_experiment(&e_cfg).unwrap();
    let secs = sweep_start.elapsed().as_secs_f64();
    results.push((7, "antenna-count trends", trends(&b_rows, &e_rows, secs)));
    results.push((8, "SIT-CJ total rate above GN total rate", spectral_ordering(&b_rows, &e_rows)));
    results.push((9, "byte-identical CSV", determinism()));
    results.push((10, "analytic gradients match finite differences", gradient_sanity()));

    let mut failed = 0;
    for (n, name, o) in &results {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {n:>2} {verdict}: {name} ({})", o.detail);
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
