use aorecon::physics::{
    char_basis, cons_to_prim, euler_flux, euler_max_speed, prim_to_cons, radial_source, EulerState,
    Model, GAMMA,
};
use proptest::prelude::*;

type Mat = [[f64; 3]; 3];

/// Unchecked: perturbed states near vacuum may have negative pressure.
fn flux(u: [f64; 3]) -> [f64; 3] {
    let mut f = [0.0; 3];
    Model::euler().flux(&u, &mut f);
    f
}

/// Central differences with one Richardson step, column `k` = d f / d u_k.
/// Steps follow the natural scale of each variable.
fn fd_jacobian(u: [f64; 3]) -> Mat {
    let (rho, m, e) = (u[0], u[1], u[2]);
    let p = (GAMMA - 1.0) * (e - 0.5 * m * m / rho);
    let c = (GAMMA * p / rho).sqrt();
    let scale = [rho, m.abs() + rho * c, e];
    let mut jac = [[0.0; 3]; 3];
    for k in 0..3 {
        let h = 1e-3 * scale[k];
        let diff = |h: f64| {
            let (mut up, mut dn) = (u, u);
            up[k] += h;
            dn[k] -= h;
            let (fp, fm) = (flux(up), flux(dn));
            [0, 1, 2].map(|i| (fp[i] - fm[i]) / (2.0 * h))
        };
        let (a, b) = (diff(h), diff(0.5 * h));
        for i in 0..3 {
            jac[i][k] = (4.0 * b[i] - a[i]) / 3.0;
        }
    }
    jac
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn admissible_state() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.05f64..10.0, -5.0f64..5.0, 0.05f64..10.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn eigenbasis_diagonalizes_the_jacobian((rho, v, p) in admissible_state()) {
        let s = prim_to_cons(rho, v, p, GAMMA).unwrap();
        let u = s.to_array();
        let b = char_basis(&s, GAMMA).unwrap();
        let jac = fd_jacobian(u);
        let d = mul(&b.l, &mul(&jac, &b.r));
        let c = (GAMMA * p / rho).sqrt();
        let lam = [v - c, v, v + c];
        let scale = v.abs() + c;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { lam[i] } else { 0.0 };
                prop_assert!((d[i][j] - want).abs() <= 1e-8 * scale, "{i},{j}: {} vs {want}", d[i][j]);
            }
        }
        prop_assert!(lam[0] <= lam[1] && lam[1] <= lam[2]);

        let id = mul(&b.l, &b.r);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((id[i][j] - want).abs() <= 1e-12);
            }
        }

        // eigenvalues of the stored state, whose pressure carries round-off
        let (r2, v2, p2) = cons_to_prim(&s, GAMMA).unwrap();
        let c2 = (GAMMA * p2 / r2).sqrt();
        let speed = euler_max_speed(&s, GAMMA).unwrap();
        prop_assert!([v2 - c2, v2, v2 + c2].iter().all(|l| l.abs() <= speed));
        prop_assert!((Model::euler().max_speed(&u) - speed).abs() <= 1e-12 * speed);
    }

    #[test]
    fn source_scales_inversely_with_radius(
        (rho, v, p) in admissible_state(),
        sigma in 0.01f64..5.0,
        dim in 1u32..=3,
    ) {
        let s = prim_to_cons(rho, v, p, GAMMA).unwrap();
        let a = radial_source(&s, sigma, dim, GAMMA).unwrap();
        let b = radial_source(&s, 2.0 * sigma, dim, GAMMA).unwrap();
        for k in 0..3 {
            prop_assert!((b[k] - 0.5 * a[k]).abs() <= 1e-14 * (1.0 + a[k].abs()));
        }
    }

    #[test]
    fn conversions_invert((rho, v, p) in admissible_state()) {
        let s = prim_to_cons(rho, v, p, GAMMA).unwrap();
        let (r2, v2, p2) = cons_to_prim(&s, GAMMA).unwrap();
        prop_assert!((r2 - rho).abs() <= 1e-14 * rho);
        prop_assert!((v2 - v).abs() <= 1e-13 * (1.0 + v.abs()));
        prop_assert!((p2 - p).abs() <= 1e-12 * (1.0 + p));
    }
}

#[test]
fn flux_examples() {
    let s = prim_to_cons(1.0, 2.0, 1.0, GAMMA).unwrap();
    assert_eq!(s.e, 4.5);
    let f = euler_flux(&s, GAMMA).unwrap();
    for (a, b) in f.iter().zip([2.0, 5.0, 11.0]) {
        assert!((a - b).abs() < 1e-14);
    }
    assert!((euler_max_speed(&s, GAMMA).unwrap() - (2.0 + 1.4f64.sqrt())).abs() < 1e-15);

    let rest = prim_to_cons(1.0, 0.0, 1.0, GAMMA).unwrap();
    let f = euler_flux(&rest, GAMMA).unwrap();
    assert_eq!(f, [0.0, 1.0, 0.0]);

    let adv = Model::advection();
    let mut out = [0.0];
    adv.flux(&[0.7], &mut out);
    assert_eq!(out[0], 0.7);
    assert_eq!(adv.max_speed(&[123.0]), 1.0);
    assert!(adv.char_basis(&[1.0]).unwrap().is_none());
}

#[test]
fn rest_state_eigenvalues() {
    let s = prim_to_cons(1.0, 0.0, 1.0, GAMMA).unwrap();
    let b = char_basis(&s, GAMMA).unwrap();
    let d = mul(&b.l, &mul(&fd_jacobian(s.to_array()), &b.r));
    let c = 1.4f64.sqrt();
    for (i, want) in [-c, 0.0, c].iter().enumerate() {
        assert!((d[i][i] - want).abs() < 1e-10);
    }
}

#[test]
fn source_examples() {
    let s = prim_to_cons(1.0, 2.0, 1.0, GAMMA).unwrap();
    let src = radial_source(&s, 2.0, 3, GAMMA).unwrap();
    for (a, b) in src.iter().zip([-2.0, -4.0, -2.0]) {
        assert!((a - b).abs() < 1e-14);
    }
    assert_eq!(radial_source(&s, 2.0, 1, GAMMA).unwrap(), [0.0; 3]);
    let still = prim_to_cons(0.3, 0.0, 2.0, GAMMA).unwrap();
    assert!(radial_source(&still, 0.1, 3, GAMMA)
        .unwrap()
        .iter()
        .all(|v| *v == 0.0));
    assert!(radial_source(&s, 0.0, 3, GAMMA).is_err());
}

#[test]
fn inadmissible_states_are_rejected() {
    assert!(cons_to_prim(&EulerState::new(-1.0, 0.0, 1.0), GAMMA).is_err());
    assert!(cons_to_prim(&EulerState::new(1.0, 3.0, 1.0), GAMMA).is_err());
    assert!(char_basis(&EulerState::new(1.0, 0.0, -1.0), GAMMA).is_err());
    assert!(prim_to_cons(1.0, 0.0, 0.0, GAMMA).is_err());
}
