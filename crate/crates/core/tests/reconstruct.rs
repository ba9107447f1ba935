use aorecon::polykernel::{smoothness_indicator, InterpOperator, Polynomial, StencilSpec};
use aorecon::reconstruct::{
    cwenoz_ao_blend, cwenoz_blend, cwz753, validate_cwz753, weno_ao753, BlendParams, Candidate,
    CandidateSet, Counters, ReconstructionConfig, Scheme, WaoVariant,
};
use aorecon::solver::{GAUSS4_NODES, GAUSS4_WEIGHTS};
use proptest::prelude::*;

const SEVENTH_ORDER: [Scheme; 5] = [
    Scheme::Cwz753,
    Scheme::WaoBgs,
    Scheme::WaoAhz,
    Scheme::Cweno { order: 7 },
    Scheme::Cwenoz { order: 7 },
];

fn every_scheme() -> Vec<Scheme> {
    let mut v = vec![
        Scheme::Cwz753,
        Scheme::WaoBgs,
        Scheme::WaoAhz,
        Scheme::FirstOrder,
    ];
    for order in [3, 5, 7] {
        v.push(Scheme::Cweno { order });
        v.push(Scheme::Cwenoz { order });
    }
    v
}

fn window_of(f: impl Fn(f64) -> f64, center: f64, dx: f64) -> [f64; 7] {
    let mut w = [0.0; 7];
    for (i, v) in w.iter_mut().enumerate() {
        let c = center + (i as f64 - 3.0) * dx;
        *v = GAUSS4_NODES
            .iter()
            .zip(GAUSS4_WEIGHTS)
            .map(|(t, wt)| wt * f(c + t * dx))
            .sum();
    }
    w
}

fn interp(first: i32, last: i32, w: &[f64; 7]) -> Polynomial {
    InterpOperator::new(StencilSpec::new(first, last).unwrap())
        .unwrap()
        .apply_window(w)
}

/// Independent transcription of the adaptive-order blend: `P_0` is formed
/// explicitly and the Z-weights are computed term by term.
fn cwz_oracle(w: &[f64; 7], dx: f64, mhat: i32, ell: i32, r: f64) -> (Polynomial, Vec<f64>) {
    let popt = interp(-3, 3, w);
    let p1 = interp(-2, 2, w);
    let qs = [interp(-2, 0, w), interp(-1, 1, w), interp(0, 2, w)];
    let delta = dx.powf(r).min(0.01);
    let d1 = 0.15;
    let d0 = 0.85 - 3.0 * delta;
    let eps = dx.powi(mhat).max(1e-300);

    let mut p0 = popt;
    p0.add_scaled(-d1, &p1);
    for q in &qs {
        p0.add_scaled(-delta, q);
    }
    let p0 = p0.scaled(1.0 / d0);

    let i0 = smoothness_indicator(&popt);
    let i1 = smoothness_indicator(&p1);
    let tau = (i0 - i1).abs();
    let lin = [d0, d1, delta, delta, delta];
    let ind = [
        i0,
        i1,
        smoothness_indicator(&qs[0]),
        smoothness_indicator(&qs[1]),
        smoothness_indicator(&qs[2]),
    ];
    let alpha: Vec<f64> = lin
        .iter()
        .zip(ind)
        .map(|(d, i)| d * (1.0 + (tau / (i + eps)).powi(ell)))
        .collect();
    let sum: f64 = alpha.iter().sum();
    let omega: Vec<f64> = alpha.iter().map(|a| a / sum).collect();

    let mut out = Polynomial::constant(0.0);
    for (om, p) in omega.iter().zip([p0, p1, qs[0], qs[1], qs[2]]) {
        out.add_scaled(*om, &p);
    }
    (out, omega)
}

fn assert_poly_close(a: &Polynomial, b: &Polynomial, tol: f64) {
    for xi in [-0.5, -0.25, 0.0, 0.1, 0.5] {
        let (x, y) = (a.eval(xi), b.eval(xi));
        assert!(
            (x - y).abs() <= tol * (1.0 + y.abs()),
            "at {xi}: {x} vs {y}"
        );
    }
}

#[test]
fn cwz753_matches_transcribed_blend() {
    let dx = 1.0 / 128.0;
    let cases: [Box<dyn Fn(f64) -> f64>; 4] = [
        Box::new(|x: f64| (-x * x).exp()),
        Box::new(|x: f64| if x < 0.004 { 1.0 } else { 0.2 } + x),
        Box::new(|x: f64| (40.0 * x).sin()),
        Box::new(|x: f64| x.abs()),
    ];
    for (k, f) in cases.iter().enumerate() {
        let w = window_of(f, 0.2 * (k as f64 - 1.0) * dx, dx);
        for (mhat, ell, r) in [(4, 2, 1.0), (6, 1, 2.0), (2, 3, 1.5)] {
            let cfg = ReconstructionConfig::with_params(Scheme::Cwz753, mhat, ell, r);
            let rec = cfg.build(dx).unwrap();
            let got = rec.reconstruct(&w, &mut Counters::default());
            let (want, omega) = cwz_oracle(&w, dx, mhat, ell, r);
            assert_poly_close(&got.poly, &want, 1e-12);
            for (a, b) in got.weights().iter().zip(&omega) {
                assert!(
                    (a - b).abs() < 1e-13,
                    "case {k}: {:?} vs {omega:?}",
                    got.weights()
                );
            }
            assert_poly_close(&cwz753(&w, &cfg, dx).unwrap(), &want, 1e-12);
        }
    }
}

#[test]
fn linear_and_constant_examples() {
    let line = window_of(|x| x, 0.0, 1.0);
    for v in [WaoVariant::Bgs, WaoVariant::Ahz] {
        let p = weno_ao753(&line, v, 1.0).unwrap();
        assert!((p.eval(0.5) - 0.5).abs() < 1e-13);
        let c = weno_ao753(&[0.4; 7], v, 0.01).unwrap();
        assert!((c.eval(-0.3) - 0.4).abs() < 1e-14);
    }
    let p = cwz753(&line, &ReconstructionConfig::default(), 1.0).unwrap();
    assert!((p.eval(-0.5) + 0.5).abs() < 1e-13);

    let rec = ReconstructionConfig::default().build(0.01).unwrap();
    let out = rec.reconstruct(&[1.5; 7], &mut Counters::default());
    assert_eq!(out.weights(), rec.linear_weights().as_slice());
}

#[test]
fn smooth_parabola_wins_near_a_step() {
    // the jump sits between cells 0 and 1: only Q_1 on {-2,-1,0} is smooth
    let dx = 1.0 / 256.0;
    let w = window_of(
        |x| (x + 0.3).cos() + if x > 0.5 * dx { 2.0 } else { 0.0 },
        0.0,
        dx,
    );
    let out = ReconstructionConfig::default()
        .build(dx)
        .unwrap()
        .reconstruct(&w, &mut Counters::default());
    let om = out.weights();
    assert!(om[2] > om[0] && om[2] > om[1], "{om:?}");
}

#[test]
fn gaussian_errors_are_comparable() {
    let dx = 0.5f64.powi(7);
    let w = window_of(|x| (-x * x).exp(), 0.2, dx);
    let exact = (-0.04f64).exp();
    let err_cwz = (cwz753(&w, &ReconstructionConfig::default(), dx)
        .unwrap()
        .eval(0.0)
        - exact)
        .abs();
    for v in [WaoVariant::Bgs, WaoVariant::Ahz] {
        let e = (weno_ao753(&w, v, dx).unwrap().eval(0.0) - exact).abs();
        assert!(e <= 10.0 * err_cwz.max(1e-16), "{v:?}: {e} vs {err_cwz}");
    }
}

#[test]
fn companion_polynomial_is_accurate() {
    // P_0 formed explicitly, r_k = 2 >= g - gamma_k
    let f = |x: f64| (-x * x).exp();
    let x0 = 0.2;
    let err = |j: i32| {
        let dx = 0.5f64.powi(j);
        let w = window_of(f, x0 + 0.05 * dx, dx);
        let delta = (dx * dx).min(0.01);
        let d0 = 0.85 - 3.0 * delta;
        let mut p0 = interp(-3, 3, &w);
        p0.add_scaled(-0.15, &interp(-2, 2, &w));
        for (a, b) in [(-2, 0), (-1, 1), (0, 2)] {
            p0.add_scaled(-delta, &interp(a, b, &w));
        }
        (p0.scaled(1.0 / d0).eval(-0.05) - f(x0)).abs()
    };
    let rate = (err(6) / err(7)).log2();
    assert!(rate >= 4.0 - 0.3, "rate {rate}");
}

#[test]
fn z_weights_approach_linear_weights() {
    let f = |x: f64| (3.0 * x).sin() + 0.5 * x;
    for scheme in [Scheme::Cwenoz { order: 7 }, Scheme::Cwz753] {
        let dev = |j: i32| {
            let dx = 0.5f64.powi(j);
            let rec = ReconstructionConfig::new(scheme).build(dx).unwrap();
            let out = rec.reconstruct(&window_of(f, 0.3, dx), &mut Counters::default());
            out.weights()
                .iter()
                .zip(rec.linear_weights())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let (a, b) = (dev(5), dev(6));
        assert!(a / b >= 8.0, "{scheme}: {a} -> {b}");
    }
}

#[test]
fn forced_zero_tau_is_linear() {
    let w = [0.3, -1.0, 0.2, 2.0, 1.1, -0.4, 0.9];
    let popt = Candidate::new(interp(-3, 3, &w), 0.7);
    let p1 = Candidate::new(interp(-2, 2, &w), 0.2);
    let p2 = Candidate::new(interp(-3, 1, &w), 0.4);
    let qs = [
        Candidate::new(interp(-2, 0, &w), 3.0),
        Candidate::new(interp(-1, 1, &w), 0.01),
    ];
    let d = [0.6, 0.2, 0.15];
    let delta = [0.03, 0.02];
    let params = BlendParams {
        d: &d,
        delta: &delta,
        lambda: &[0.0; 3],
        eps: 1e-6,
        ell: 2,
    };
    let cands = CandidateSet {
        p_opt: popt,
        p_high: &[p1, p2],
        q_low: &qs,
    };
    let out = cwenoz_ao_blend(&params, &cands, &mut Counters::default()).unwrap();
    let mut p0 = popt.poly;
    for (dk, c) in [(d[1], p1), (d[2], p2)]
        .into_iter()
        .chain(delta.iter().copied().zip(qs))
    {
        p0.add_scaled(-dk, &c.poly);
    }
    let mut want = p0.scaled(1.0 / d[0]).scaled(d[0]);
    want.add_scaled(d[1], &p1.poly);
    want.add_scaled(d[2], &p2.poly);
    want.add_scaled(delta[0], &qs[0].poly);
    want.add_scaled(delta[1], &qs[1].poly);
    assert_poly_close(&out.poly, &want, 1e-13);
    assert_poly_close(&out.poly, &popt.poly, 1e-13);
    assert_eq!(out.weights(), &[0.6, 0.2, 0.15, 0.03, 0.02]);

    let d = [0.5, 0.25, 0.25];
    let params = BlendParams {
        d: &d,
        delta: &[],
        lambda: &[0.0; 3],
        eps: 1e-6,
        ell: 1,
    };
    let cands = CandidateSet {
        p_opt: popt,
        p_high: &[p1, p2],
        q_low: &[],
    };
    let out = cwenoz_blend(&params, &cands, &mut Counters::default()).unwrap();
    assert_poly_close(&out.poly, &popt.poly, 1e-13);
}

#[test]
fn weight_set_and_indicator_counts() {
    let w = [0.0, 1.0, 0.5, 3.0, 0.1, 0.2, -2.0];
    for (s, ind, sets) in [
        (Scheme::Cwz753, 5, 1),
        (Scheme::WaoAhz, 6, 2),
        (Scheme::WaoBgs, 5, 3),
    ] {
        let mut c = Counters::default();
        ReconstructionConfig::new(s)
            .build(0.02)
            .unwrap()
            .reconstruct(&w, &mut c);
        assert_eq!((c.indicators, c.weight_sets), (ind, sets), "{s}");
    }
}

/// Table of sufficient conditions at a critical point of order 2; every
/// other cell reads `ell >= 1, r_k >= 1`.
fn table_feasible(mhat: i32, n_cp: usize, ell: i32, r: f64) -> bool {
    let base = ell >= 1 && r >= 1.0;
    match (mhat, n_cp) {
        (6, 2) => (ell >= 2 && r >= 1.0) || (ell >= 1 && r >= 2.0),
        (7, 2) => (ell >= 3 && r >= 1.0) || (ell >= 2 && r >= 2.0),
        _ => base,
    }
}

#[test]
fn validator_reproduces_condition_table() {
    for mhat in 1..=7 {
        for ell in 1..=4 {
            for r in [0.0, 1.0, 2.0] {
                let rep = validate_cwz753(mhat, ell, r).unwrap();
                for row in &rep.per_ncp {
                    assert_eq!(
                        row.satisfied,
                        table_feasible(mhat, row.n_cp, ell, r),
                        "mhat={mhat} ell={ell} r={r} n_cp={}",
                        row.n_cp
                    );
                }
                let all = (0..4).all(|n| table_feasible(mhat, n, ell, r));
                assert_eq!(rep.satisfied, all);
            }
        }
    }
    assert!(!validate_cwz753(8, 4, 2.0).unwrap().satisfied);
}

fn window() -> impl Strategy<Value = [f64; 7]> {
    prop::array::uniform7(-10.0f64..10.0)
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop::sample::select(every_scheme())
}

proptest! {
    #[test]
    fn weights_sum_to_one(w in window(), s in scheme(), e in 1i32..12) {
        let rec = ReconstructionConfig::new(s).build(0.5f64.powi(e)).unwrap();
        let out = rec.reconstruct(&w, &mut Counters::default());
        let sum: f64 = out.weights().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-14, "{s}: {sum}");
        prop_assert!(out.weights().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn central_average_preserved(w in window(), s in scheme(), e in 1i32..12) {
        let rec = ReconstructionConfig::new(s).build(0.5f64.powi(e)).unwrap();
        let out = rec.reconstruct(&w, &mut Counters::default());
        let scale = w.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        prop_assert!((out.poly.cell_average(0) - w[3]).abs() <= 1e-13 * scale, "{s}");
    }

    #[test]
    fn quadratics_reproduced(
        c in prop::array::uniform3(-5.0f64..5.0),
        s in prop::sample::select(SEVENTH_ORDER.to_vec()),
        e in 1i32..12,
    ) {
        let p = Polynomial::new(&c).unwrap();
        let mut w = [0.0; 7];
        for (i, v) in w.iter_mut().enumerate() {
            *v = p.cell_average(i as i32 - 3);
        }
        let rec = ReconstructionConfig::new(s).build(0.5f64.powi(e)).unwrap();
        let out = rec.reconstruct(&w, &mut Counters::default());
        for xi in [-0.5, -0.2, 0.0, 0.3, 0.5] {
            prop_assert!((out.poly.eval(xi) - p.eval(xi)).abs() <= 1e-12 * (1.0 + p.eval(xi).abs()), "{s}");
        }
    }
}
