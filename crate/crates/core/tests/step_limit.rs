mod oracles;

use oracles::{random_relevant, zero_discriminant, RelevantConfig};
use proptest::prelude::*;
use relreg::rng::RngStream;
use relreg::sampling::{quadratic_roots, step_limit_general, step_limit_uniform, StepLimitInputs};

fn closed_form(cfg: &RelevantConfig) -> f64 {
    let inp = cfg.inputs();
    if cfg.c_vp == 1.0 {
        step_limit_uniform(&inp).unwrap()
    } else {
        step_limit_general(&inp).unwrap()
    }
}

fn assert_matches_bisection(cfg: &RelevantConfig) {
    let gamma = closed_form(cfg);
    let oracle = cfg.bisect();
    assert!(
        (gamma - oracle).abs() <= 1e-9 * oracle,
        "closed form {gamma} vs bisection {oracle} for {cfg:?}"
    );
}

#[test]
fn uniform_matches_bisection() {
    let mut rng = RngStream::new(11);
    for _ in 0..20_000 {
        assert_matches_bisection(&random_relevant(&mut rng, false));
    }
}

#[test]
fn general_matches_bisection() {
    let mut rng = RngStream::new(12);
    for _ in 0..20_000 {
        assert_matches_bisection(&random_relevant(&mut rng, true));
    }
}

#[test]
fn zero_discriminant_branch_matches_bisection() {
    let mut rng = RngStream::new(13);
    for _ in 0..2_000 {
        let cfg = zero_discriminant(&mut rng);
        let (delta, _, _) = quadratic_roots(&cfg.inputs()).unwrap();
        assert_eq!(delta, 0.0);
        assert_eq!(closed_form(&cfg), cfg.c_i / cfg.c_vp);
        assert_matches_bisection(&cfg);
    }
}

#[test]
fn worked_examples_match_bisection() {
    // g_gp = 8, h = 4 with the goal at the origin
    let mk = |cos_pi: bool, c: f64, eps: f64| RelevantConfig {
        v_p: vec![4.0, 0.0],
        x_g: vec![0.0, 0.0],
        dir: vec![if cos_pi { -1.0 } else { 1.0 }, 0.0],
        g_t: 0.0,
        c_i: 8.0,
        c_vp: c,
        epsilon: eps,
    };
    for (cfg, expect) in [
        (mk(true, 1.0, 10.0), 6.0),
        (mk(true, 1.0, 0.9), 0.9),
        (mk(true, 2.0, 10.0), 4.0),
        (mk(false, 2.0, 10.0), 4.0 / 3.0),
    ] {
        assert!((closed_form(&cfg) - expect).abs() < 1e-14);
        assert!((cfg.bisect() - expect).abs() < 1e-12);
    }
    let at_goal = RelevantConfig {
        v_p: vec![0.0, 0.0],
        x_g: vec![0.0, 0.0],
        dir: vec![0.6, 0.8],
        g_t: 0.0,
        c_i: 4.0,
        c_vp: 1.0,
        epsilon: 10.0,
    };
    assert_eq!(closed_form(&at_goal), 2.0);
    assert!((at_goal.bisect() - 2.0).abs() < 1e-12);
}

#[test]
fn step_limit_is_positive_for_relevant_parents() {
    let mut rng = RngStream::new(14);
    for i in 0..20_000 {
        let cfg = random_relevant(&mut rng, i % 2 == 0);
        assert!(closed_form(&cfg) > 0.0, "{cfg:?}");
    }
}

#[test]
fn feasibility_brackets_the_limit() {
    let mut rng = RngStream::new(15);
    for i in 0..5_000 {
        let cfg = random_relevant(&mut rng, i % 2 == 1);
        let gamma = closed_form(&cfg);
        for _ in 0..4 {
            let g = gamma * rng.uniform();
            assert!(
                cfg.defect(g) < 0.0,
                "inside step {g} of {gamma} infeasible: {cfg:?}"
            );
        }
        if gamma < cfg.epsilon {
            assert!(
                cfg.defect(gamma * (1.0 + 1e-6)) >= 0.0,
                "limit {gamma} not tight: {cfg:?}"
            );
        }
    }
}

fn relevant_inputs() -> impl Strategy<Value = StepLimitInputs> {
    (
        0.01f64..50.0,
        0.0f64..0.999,
        -1.0f64..=1.0,
        1.0f64..10.0,
        0.05f64..100.0,
    )
        .prop_map(|(g, frac, cos_theta, c_vp, epsilon)| StepLimitInputs {
            g_gp: g,
            h_vg: g * frac,
            cos_theta,
            c_vp,
            epsilon,
        })
}

proptest! {
    #[test]
    fn discriminant_stays_within_its_bounds(inp in relevant_inputs()) {
        prop_assume!(inp.c_vp > 1.0);
        let (delta, _, _) = quadratic_roots(&inp).unwrap();
        let lo = (inp.g_gp - inp.h_vg * inp.c_vp).powi(2);
        let hi = (inp.g_gp + inp.h_vg * inp.c_vp).powi(2);
        let tol = 1e-12 * hi.max(1.0);
        prop_assert!(delta >= lo - tol && delta <= hi + tol, "{lo} <= {delta} <= {hi}");
    }

    #[test]
    fn larger_root_is_infeasible(inp in relevant_inputs()) {
        prop_assume!(inp.c_vp > 1.0);
        let (_, g1, g2) = quadratic_roots(&inp).unwrap();
        let bound = inp.g_gp / inp.c_vp;
        prop_assert!(g2 > bound, "gamma_2 {g2} <= {bound}");
        prop_assert!(g1 < bound + 1e-12, "gamma_1 {g1} >= {bound}");
        prop_assert!(step_limit_general(&inp).unwrap() < bound + 1e-12);
    }

    #[test]
    fn limit_peaks_when_heading_at_the_goal(inp in relevant_inputs()) {
        let at = |cos_theta: f64| StepLimitInputs { cos_theta, epsilon: f64::MAX, ..inp };
        let peak_uni = step_limit_uniform(&at(-1.0)).unwrap();
        let peak_gen = step_limit_general(&at(-1.0)).unwrap();
        prop_assert!((peak_uni - (inp.g_gp + inp.h_vg) / 2.0).abs() <= 1e-12 * peak_uni.max(1.0));
        for k in 0..=400 {
            let theta = std::f64::consts::PI * k as f64 / 400.0;
            let c = theta.cos().clamp(-1.0, 1.0);
            prop_assert!(step_limit_uniform(&at(c)).unwrap() <= peak_uni * (1.0 + 1e-12));
            prop_assert!(step_limit_general(&at(c)).unwrap() <= peak_gen * (1.0 + 1e-12));
        }
    }

    #[test]
    fn unit_cost_general_equals_uniform(inp in relevant_inputs()) {
        let one = StepLimitInputs { c_vp: 1.0, ..inp };
        prop_assert_eq!(step_limit_general(&one).unwrap(), step_limit_uniform(&one).unwrap());
    }

    #[test]
    fn limit_never_exceeds_epsilon(inp in relevant_inputs()) {
        let one = StepLimitInputs { c_vp: 1.0, ..inp };
        prop_assert!(step_limit_uniform(&one).unwrap() <= inp.epsilon);
        prop_assert!(step_limit_general(&inp).unwrap() <= inp.epsilon);
        prop_assert!(step_limit_general(&inp).unwrap() > 0.0);
    }
}
