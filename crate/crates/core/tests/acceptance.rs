//! Exit criteria. Each test prints one PASS/FAIL line and asserts it.
//! Run with `cargo test -p kslab --test acceptance -- --nocapture` to see
//! the verdicts.

mod common;

use std::sync::OnceLock;

use common::{
    coin_flip_graph, configuration_law, degree_count_covariance, fd_jacobian, grid_alpha, newton_w,
    simpson, subset_matching, verdict,
};
use kslab::experiment::stats::{anderson_darling, chi_square, moments, AD_CRITICAL_1PCT};
use kslab::experiment::{compare_models, degree_law_check, run_monte_carlo, ExperimentConfig, Model, SampleRecord};
use kslab::fluid::{chi_of_z, diffusion_matrix, jacobian_df, limiting_eigensystem, s_delta, z_of_s, DEFAULT_KCAP};
use kslab::gaussian::{
    correlation_phi, initial_covariance, propagate_to_z, sigma44_ladder, CovarianceModel, PropagateOptions,
    DEFAULT_LADDER,
};
use kslab::graph::{couple_configurations, edit_distance, gen_gnm, DegreeSequence, MultiGraph};
use kslab::ks::{run_ks, StopRule};
use kslab::oracles::{
    adjacency_rank, brute_matching, core_observables, max_matching, RankMode, BRUTE_EDGE_LIMIT,
};
use kslab::RngStream;
use rand::Rng;

#[test]
fn c01_oracle_equivalence() {
    let mut rng = RngStream::new(101, 0);
    let (mut bad_match, mut bad_rank, mut brute_checked) = (0, 0, 0);
    for _ in 0..500 {
        let n = rng.random_range(1..=12);
        let p = rng.random_range(0.1..0.7);
        let g = coin_flip_graph(n, p, &mut rng);
        let nu = max_matching(&g).size;
        if nu != subset_matching(&g) {
            bad_match += 1;
        }
        if g.edge_count() <= BRUTE_EDGE_LIMIT {
            brute_checked += 1;
            if nu != brute_matching(&g).unwrap() {
                bad_match += 1;
            }
        }
        let modular = adjacency_rank(&g, RankMode::Modular { verify: true }, &mut rng).unwrap().rank;
        let rational = adjacency_rank(&g, RankMode::Rational, &mut rng).unwrap().rank;
        if modular != rational {
            bad_rank += 1;
        }
    }
    let pass = bad_match == 0 && bad_rank == 0;
    let detail = format!("matching mismatches {bad_match}, rank mismatches {bad_rank}, brute-checked {brute_checked}/500");
    assert!(verdict(1, "oracle equivalence", pass, &detail));
}

#[test]
fn c02_leaf_removal_identity() {
    let mut rng = RngStream::new(102, 0);
    let mut failures = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=200);
        let c = rng.random_range(0.5..4.0);
        let g = coin_flip_graph(n, (c / n as f64).min(1.0), &mut rng);
        let trace = run_ks(&MultiGraph::from(g.clone()), StopRule::NoLeaves, &mut rng).unwrap();
        let x4 = trace.steps();
        let (nu_core, rk_core) =
            core_observables(&trace.core, RankMode::Modular { verify: true }, &mut rng).unwrap();
        let nu = max_matching(&g).size as u64;
        let rk = adjacency_rank(&g, RankMode::Modular { verify: true }, &mut rng).unwrap().rank as u64;
        if nu != x4 + nu_core || rk != 2 * x4 + rk_core {
            failures += 1;
        }
    }
    assert!(verdict(2, "leaf-removal identity", failures == 0, &format!("{failures}/500 graphs violate it")));
}

fn gnm_samples(n: usize, c: f64, samples: u64, seed: u64, solve_core: bool) -> Vec<SampleRecord> {
    let cfg = ExperimentConfig {
        model: Model::Gnm,
        n,
        c,
        samples,
        seed,
        matching: solve_core,
        rank: solve_core,
        ..Default::default()
    };
    run_monte_carlo(&cfg).unwrap()
}

#[test]
fn c03_law_of_large_numbers() {
    let n = 20_000;
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, c) in [1.0, 2.0, std::f64::consts::E].into_iter().enumerate() {
        let rows = gnm_samples(n, c, 50, 300 + k as u64, true);
        let mean = |f: &dyn Fn(&SampleRecord) -> f64| rows.iter().map(f).sum::<f64>() / rows.len() as f64;
        let nu = mean(&|r| r.nu.unwrap() as f64 / (n as f64 / 2.0));
        let rk = mean(&|r| r.rk.unwrap() as f64 / n as f64);
        let a = grid_alpha(c);
        pass &= (nu - a).abs() < 0.01 && (rk - a).abs() < 0.01;
        parts.push(format!("c={c:.3}: alpha={a:.5} nu={nu:.5} rk={rk:.5}"));
    }
    assert!(verdict(3, "law of large numbers", pass, &parts.join("; ")));
}

#[test]
fn c04_e_phenomenon() {
    let n = 20_000;
    let mut fractions = Vec::new();
    for (k, c) in [2.0, 2.5, 3.2].into_iter().enumerate() {
        let rows = gnm_samples(n, c, 30, 400 + k as u64, false);
        let f = rows.iter().map(|r| r.core_v as f64 / n as f64).sum::<f64>() / rows.len() as f64;
        fractions.push((c, f));
    }
    let pass = fractions[0].1 < 0.005 && fractions[1].1 < 0.005 && fractions[2].1 > 0.01;
    let detail = fractions.iter().map(|(c, f)| format!("c={c}: {f:.5}")).collect::<Vec<_>>().join(", ");
    assert!(verdict(4, "core phase transition", pass, &detail));
}

#[test]
fn c05_simple_probability() {
    let report = compare_models(10_000, 2.0, 2000, 500, None).unwrap();
    let target = (-2.0f64).exp();
    let gap = (report.simple_fraction - target).abs();
    let detail = format!("simple fraction {:.4} vs {target:.4}", report.simple_fraction);
    assert!(verdict(5, "multigraph simplicity", gap < 0.02, &detail));
}

/// Shared by the normality and variance criteria.
fn clt_samples(c: f64) -> &'static [SampleRecord] {
    static C15: OnceLock<Vec<SampleRecord>> = OnceLock::new();
    static C20: OnceLock<Vec<SampleRecord>> = OnceLock::new();
    let (cell, seed) = if c == 2.0 { (&C20, 600) } else { (&C15, 700) };
    cell.get_or_init(|| gnm_samples(10_000, c, 2000, seed, true))
}

#[test]
fn c06_normality() {
    let rows = clt_samples(2.0);
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, xs) in [
        ("nu", rows.iter().map(|r| r.nu.unwrap() as f64).collect::<Vec<_>>()),
        ("rk", rows.iter().map(|r| r.rk.unwrap() as f64).collect::<Vec<_>>()),
    ] {
        let m = moments(&xs).unwrap();
        let ad = anderson_darling(&xs).unwrap();
        pass &= m.skewness.abs() < 0.15 && m.excess_kurtosis.abs() < 0.3 && ad < AD_CRITICAL_1PCT;
        parts.push(format!(
            "{name}: skew {:.3} kurt {:.3} AD {ad:.3}",
            m.skewness, m.excess_kurtosis
        ));
    }
    assert!(verdict(6, "normality", pass, &parts.join("; ")));
}

#[test]
fn c07_variance_prediction() {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in [1.5, 2.0] {
        let rows = clt_samples(c);
        let nu: Vec<f64> = rows.iter().map(|r| r.nu.unwrap() as f64).collect();
        let emp = moments(&nu).unwrap().variance / 10_000.0;
        let pred = kslab::gaussian::limiting_sigma44(c, CovarianceModel::FixedEdges).unwrap().limit;
        let rel = (emp - pred).abs() / pred;
        pass &= rel < 0.25;
        parts.push(format!("c={c}: empirical {emp:.5} predicted {pred:.5} rel {rel:.3}"));
    }
    assert!(verdict(7, "variance prediction", pass, &parts.join("; ")));
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[test]
fn c08_analytic_ladder() {
    let mut pass = true;
    let mut parts = Vec::new();
    for model in [CovarianceModel::FixedEdges, CovarianceModel::BinomialEdges] {
        let rep = sigma44_ladder(2.0, model, &DEFAULT_LADDER, &PropagateOptions::default()).unwrap();
        let entry = |j: usize| -> Vec<f64> { rep.states.iter().map(|s| s.sigma_delta[(j, j)]).collect() };
        for j in 0..3 {
            let v = entry(j);
            if v.iter().all(|x| x.abs() <= 1e-12) {
                // the projection removes this coordinate exactly
                parts.push(format!("{model} S{0}{0}=0", j + 1));
                continue;
            }
            let decreasing = v.windows(2).all(|w| w[1] < w[0]);
            let rate = log_slope(&DEFAULT_LADDER, &v);
            pass &= decreasing && rate >= 0.4;
            parts.push(format!("{model} S{0}{0} rate {rate:.3}", j + 1));
        }
        let mut s44 = entry(3);
        let raw = s44.clone();
        s44.sort_by(f64::total_cmp);
        let median = s44[s44.len() / 2];
        let floor_ok = raw.iter().all(|&x| x >= 0.5 * median);
        pass &= floor_ok;
        parts.push(format!("{model} S44 in [{:.5}, {:.5}]", s44[0], s44[s44.len() - 1]));
    }
    assert!(verdict(8, "analytic-estimate ladder", pass, &parts.join("; ")));
}

#[test]
fn c09_ode_invariants() {
    let c = 2.0;
    let opts = PropagateOptions::default();
    let mut parts = Vec::new();

    let identity = [0.0, 0.1, 0.3].iter().all(|&u| {
        correlation_phi(c, u, u, &opts).unwrap() == kslab::fluid::Mat4::identity()
    });
    parts.push(format!("identity {identity}"));

    let mut semigroup = 0.0f64;
    for &(u, w, s) in &[(0.0, 0.15, 0.3), (0.05, 0.2, 0.35), (0.1, 0.15, s_delta(c, 0.05).unwrap())] {
        let direct = correlation_phi(c, u, s, &opts).unwrap();
        let split = correlation_phi(c, w, s, &opts).unwrap() * correlation_phi(c, u, w, &opts).unwrap();
        semigroup = semigroup.max((direct - split).abs().max());
    }
    parts.push(format!("semigroup {semigroup:.2e}"));

    // Lyapunov solution against Phi S0 Phi^T + int Phi G Phi^T du
    let s_end = s_delta(c, 0.2).unwrap();
    let s0 = initial_covariance(CovarianceModel::BinomialEdges, c).unwrap().sigma;
    let lyap = propagate_to_z(c, z_of_s(s_end, c).unwrap(), &s0, &opts).unwrap();
    let phi0 = correlation_phi(c, 0.0, s_end, &opts).unwrap();
    let integral = simpson(
        |u| {
            let phi = correlation_phi(c, u, s_end, &opts).unwrap();
            let x = chi_of_z(z_of_s(u, c).unwrap(), c).unwrap().chi;
            phi * diffusion_matrix(&x, DEFAULT_KCAP).unwrap() * phi.transpose()
        },
        0.0,
        s_end,
        64,
    );
    let quad = phi0 * s0 * phi0.transpose() + integral;
    let quad_err = (lyap - quad).abs().max();
    parts.push(format!("quadrature {quad_err:.2e}"));

    let mut jac_err = 0.0f64;
    for &z in &[1.9, 1.2, 0.6, 0.3, 0.1] {
        let base = chi_of_z(z, c).unwrap().chi;
        // off-trajectory points move away from the (2 x3 - x1) / x2 = 2 boundary
        for (a, b) in [(1.0, 1.0), (0.97, 1.0), (1.0, 1.03)] {
            let mut x = base;
            x[0] *= a;
            x[2] *= b;
            let j = jacobian_df(&x).unwrap();
            jac_err = jac_err.max((j - fd_jacobian(&x)).abs().max() / j.abs().max());
        }
    }
    parts.push(format!("jacobian {jac_err:.2e}"));

    let want = limiting_eigensystem(c).unwrap().product();
    let ratios: Vec<f64> = (0..6)
        .map(|k| {
            let z = 0.04 / 2f64.powi(k);
            let j = jacobian_df(&chi_of_z(z, c).unwrap().chi).unwrap();
            ((j.fixed_view::<3, 3>(0, 0) * (z * z)) - want).abs().max() / z
        })
        .collect();
    let k_fit = ratios.iter().cloned().fold(0.0, f64::max);
    let bounded = k_fit.is_finite() && ratios[ratios.len() - 1] <= 2.0 * ratios[0];
    parts.push(format!("eigen limit K {k_fit:.3}"));

    let pass = identity && semigroup < 1e-6 && quad_err < 1e-3 && jac_err < 1e-6 && bounded;
    assert!(verdict(9, "ODE invariants", pass, &parts.join("; ")));
}

fn random_sequence(rng: &mut RngStream, n: usize) -> DegreeSequence {
    let mut d: Vec<u32> = (0..n).map(|_| rng.random_range(0..=4)).collect();
    if d.iter().sum::<u32>() % 2 == 1 {
        d[0] = if d[0] == 0 { 1 } else { d[0] - 1 };
    }
    DegreeSequence(d)
}

fn canonical(g: &MultiGraph) -> Vec<(u32, u32)> {
    let mut e: Vec<_> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    e.sort_unstable();
    e
}

/// Chi-square of `draws` coupled marginals against exhaustive enumeration.
fn marginal_chi_square(d: &[u32], d2: &[u32], draws: usize, rng: &mut RngStream) -> bool {
    let (a, b) = (DegreeSequence(d.to_vec()), DegreeSequence(d2.to_vec()));
    let mut ok = true;
    for side in 0..2 {
        let law = configuration_law(if side == 0 { d } else { d2 });
        let keys: Vec<_> = law.keys().cloned().collect();
        let mut counts = vec![0u64; keys.len()];
        let mut local = rng.fork(side);
        for _ in 0..draws {
            let cp = couple_configurations(&a, &b, &mut local).unwrap();
            let g = if side == 0 { cp.first } else { cp.second };
            let k = canonical(&g);
            counts[keys.iter().position(|x| *x == k).expect("outcome outside support")] += 1;
        }
        let probs: Vec<f64> = keys.iter().map(|k| law[k]).collect();
        ok &= keys.len() < 2 || chi_square(&counts, &probs).unwrap().passes();
    }
    ok
}

#[test]
fn c10_coupling() {
    let mut rng = RngStream::new(110, 0);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.random_range(1..=50);
        let d = random_sequence(&mut rng, n);
        let d2 = random_sequence(&mut rng, n);
        let cp = couple_configurations(&d, &d2, &mut rng).unwrap();
        let de = edit_distance(&cp.first, &cp.second).unwrap();
        let l1 = d.l1_distance(&d2);
        if de > l1 + 1 {
            violations += 1;
            worst = worst.max(de as f64 / l1 as f64);
        }
    }
    let mut uniform = true;
    for (d, d2) in [
        (&[2u32, 1, 1][..], &[1u32, 1, 2, 2][..]),
        (&[3, 1], &[1, 1, 1, 1]),
        (&[2, 2, 2, 2], &[1, 1, 1, 1]),
        (&[1, 1, 1, 1, 1, 1], &[2, 0, 2, 1, 1, 0]),
        (&[4, 2, 2], &[2, 2, 2, 2]),
    ] {
        uniform &= marginal_chi_square(d, d2, 20_000, &mut rng);
    }
    let pass = violations == 0 && uniform;
    let detail = format!(
        "bound violated in {violations}/500 pairs (worst d_E/L1 {worst:.2}); marginals uniform: {uniform}"
    );
    assert!(verdict(10, "coupling bound", pass, &detail));
}

#[test]
fn c11_fluid_concentration() {
    let (n, c) = (50_000usize, 2.0);
    let mut worst = 0.0f64;
    for t in 0..10u64 {
        let mut rng = RngStream::new(111, t);
        let g: MultiGraph = gen_gnm(n, (c * n as f64 / 2.0) as usize, &mut rng).unwrap().into();
        let trace = run_ks(&g, StopRule::EdgesAtMost(0.05), &mut rng).unwrap();
        for st in &trace.snapshots {
            let x = st.scaled(n);
            let chi = chi_of_z(z_of_s(x[3], c).unwrap(), c).unwrap().chi;
            for i in 0..3 {
                worst = worst.max((x[i] - chi[i]).abs());
            }
        }
    }
    assert!(verdict(11, "fluid concentration", worst < 0.02, &format!("sup deviation {worst:.5}")));
}

#[test]
fn c12_degree_law() {
    let cfg = ExperimentConfig {
        model: Model::Gnm,
        n: 20_000,
        c: 2.0,
        delta: Some(0.05),
        samples: 200,
        seed: 112,
        ..Default::default()
    };
    let rep = degree_law_check(&cfg).unwrap();
    let detail = format!("mean TV {:.4} over {} samples ({} skipped)", rep.mean_tv, rep.samples.len(), rep.skipped);
    assert!(verdict(12, "degree law at the stop", rep.mean_tv < 0.05, &detail));
}

// The oracles above are only trusted because they agree with closed forms.
#[test]
fn oracle_self_checks() {
    assert!((newton_w(1.0) - 0.567_143_290_409_783_8).abs() < 1e-15);
    let j = degree_count_covariance(2.0, false);
    assert!((j[2][2] - 1.0).abs() < 1e-12);
    let law = configuration_law(&[2, 2]);
    assert!((law[&vec![(0, 0), (1, 1)]] - 1.0 / 3.0).abs() < 1e-15);
    assert!((law[&vec![(0, 1), (0, 1)]] - 2.0 / 3.0).abs() < 1e-15);
}
