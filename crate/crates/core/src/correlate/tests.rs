use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::kernels::{make_kernel, Modulation};
use crate::linalg::hankel_determinant;

fn k(id: KernelId) -> WeightKernel {
    make_kernel(id).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

#[test]
fn closed_examples() {
    let bx = k(KernelId::Box);
    assert!(close(nu_closed(KernelId::Box, 2, 0.0, Normalization::Simplex).unwrap(), 8.0 / 3.0, 1e-14));
    assert!(close(nu_closed(KernelId::Tent, 2, 3.0, Normalization::Simplex).unwrap(), 1.0 / 480.0, 1e-14));
    let g3 = CorrelationKernel::closed(&k(KernelId::Gaussian), 3).unwrap();
    assert!(close(g3.evaluate(0.0).unwrap(), 7.255197456936871, 1e-13));
    assert!(matches!(CorrelationKernel::closed(&bx, 3), Err(Error::NoClosedForm { .. })));
    assert!(matches!(CorrelationKernel::closed(&k(KernelId::RiemannPhi), 2), Err(Error::NoClosedForm { .. })));
}

#[test]
fn numeric_matches_closed() {
    let cases: Vec<(KernelId, usize)> = vec![
        (KernelId::Gaussian, 2),
        (KernelId::Gaussian, 3),
        (KernelId::Laguerre { alpha: 0.5 }, 2),
        (KernelId::Laguerre { alpha: 1.0 }, 3),
        (KernelId::Jacobi { alpha: 1.0, beta: 2.0 }, 2),
        (KernelId::Gegenbauer { lambda: 1.5 }, 2),
        (KernelId::Tent, 2),
        (KernelId::Box, 2),
        (KernelId::UnitBox, 2),
        (KernelId::UJacobi { alpha: 1.0, beta: 1.0 }, 2),
    ];
    for (id, n) in cases {
        let w = k(id);
        let closed = CorrelationKernel::closed(&w, n).unwrap();
        let num = CorrelationKernel::numeric(&w, n, 1e-10).unwrap();
        let (lo, hi) = num.range(1e-10).unwrap();
        for t in grid(lo, hi, 13) {
            let (a, b) = (num.evaluate(t).unwrap(), closed.evaluate(t).unwrap());
            assert!(close(a, b, 1e-6), "{id:?} n={n} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn simplex_normalization_is_raw() {
    let g = k(KernelId::Gaussian);
    let v = nu_numeric_with(&g, 2, 0.0, 1e-12, Normalization::Simplex).unwrap();
    assert!(close(v, 2.0 * PI.sqrt(), 1e-10));
    assert_eq!(nu_numeric(&g, 1, 0.5, 1e-12).unwrap(), g.evaluate(0.5));
}

#[test]
fn evenness_and_support() {
    for id in [KernelId::Tent, KernelId::Gegenbauer { lambda: 0.8 }, KernelId::RiemannPhi] {
        let w = k(id);
        for t in [0.3, 1.1, 1.9] {
            let a = nu_numeric(&w, 2, t, 1e-11).unwrap();
            let b = nu_numeric(&w, 2, -t, 1e-11).unwrap();
            assert!(close(a, b, 1e-9), "{id:?} t={t}");
        }
    }
    let j = k(KernelId::Jacobi { alpha: 0.5, beta: 1.5 });
    for t in [-2.5, -2.0, 2.0, 3.0] {
        assert!(nu_numeric(&j, 2, t, 1e-10).unwrap().abs() < 1e-12);
    }
    assert!(nu_numeric(&k(KernelId::Laguerre { alpha: 0.0 }), 3, -0.1, 1e-10).unwrap().abs() < 1e-14);
}

#[test]
fn mass_identity() {
    let cases = [
        (KernelId::Gaussian, 2, 2.0 * PI),
        (KernelId::Box, 2, 4.0 / 3.0),
        (KernelId::Laguerre { alpha: 0.0 }, 2, 1.0),
    ];
    for (id, n, want) in cases {
        let ck = CorrelationKernel::closed(&k(id), n).unwrap();
        assert!(close(mass(&ck, 1e-12).unwrap(), want, 1e-9), "{id:?}");
    }
    for id in [KernelId::Tent, KernelId::Jacobi { alpha: 1.0, beta: 2.0 }, KernelId::Laguerre { alpha: 0.5 }] {
        let w = k(id);
        for n in [2, 3] {
            let moments: Vec<f64> = (0..2 * n - 1).map(|m| w.moment(m, 1e-13).unwrap()).collect();
            let det = hankel_determinant(&moments, n).unwrap().value;
            let ck = CorrelationKernel::numeric(&w, n, 1e-10).unwrap();
            let m = ck.mass(1e-8).unwrap();
            assert!(close(m, det, 1e-6), "{id:?} n={n}: {m} vs {det}");
        }
    }
}

#[test]
fn cosh_split() {
    let w = k(KernelId::Tent);
    for y in [0.2, 0.5] {
        let c = w.modulate(Modulation::Cosh(y)).unwrap();
        let s = w.modulate(Modulation::Sinh(y)).unwrap();
        for t in grid(-3.9, 3.9, 9) {
            let lhs = nu_numeric(&c, 2, t, 1e-12).unwrap() + nu_numeric(&s, 2, t, 1e-12).unwrap();
            let rhs = (y * t).cosh() * nu_numeric(&w, 2, t, 1e-12).unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "y={y} t={t}");
        }
    }
}

#[test]
fn k2y_examples() {
    let g = build_k2y(&k(KernelId::Gaussian), 1.0, 1e-12).unwrap();
    assert!(close(g.evaluate(2.0).unwrap(), 2f64.cosh() * PI.sqrt() * (-1f64).exp(), 1e-9));
    let b = build_k2y(&k(KernelId::Box), 0.0, 1e-12).unwrap();
    assert!(close(b.evaluate(0.7).unwrap(), 1.3f64.powi(3) / 6.0, 1e-10));
    let p = build_k2y(&k(KernelId::RiemannPhi), 0.3, 1e-10).unwrap();
    assert!(p.evaluate(0.0).unwrap() > 0.0);
    assert!(build_k2y(&k(KernelId::UnitBox), 0.3, 1e-10).is_err());
    let lag = k(KernelId::Laguerre { alpha: 0.0 });
    assert!(matches!(build_k2y(&lag, 0.3, 1e-10), Err(Error::Precondition(_))));
}

#[test]
fn lattice_matches_direct() {
    let w = k(KernelId::RiemannPhi);
    let lat = CorrelationKernel::phi_lattice().unwrap();
    for t in [0.0, 0.013, 0.5, 1.234, 2.0, 3.1] {
        let direct = nu_numeric(&w, 2, t, 1e-13).unwrap();
        let l = lat.evaluate(t).unwrap();
        assert!((direct - l).abs() < 1e-7 * (1.0 + direct.abs()), "t={t}: {direct} vs {l}");
    }
    let node = 0.5;
    let direct = nu_numeric(&w, 2, node, 1e-14).unwrap();
    assert!((lat.evaluate(node).unwrap() - direct).abs() < 1e-13);
    assert_eq!(lat.evaluate(9.0).unwrap(), 0.0);
}

#[test]
fn tabulated_transforms() {
    let g = CorrelationKernel::closed(&k(KernelId::Gaussian), 2).unwrap();
    let tab = g.tabulate(5.0).unwrap();
    for x in [0.0, 1.0, 3.0] {
        let (f, err) = tab.fourier(x);
        let want = 2.0 * PI * (-x * x).exp();
        assert!((f.re - want).abs() < 1e-10 && f.im.abs() < 1e-12, "x={x}");
        assert!(err < 1e-8);
    }
    let lag = CorrelationKernel::closed(&k(KernelId::Laguerre { alpha: 0.0 }), 2).unwrap();
    let (v, _) = lag.tabulate(1.0).unwrap().laplace(1.0);
    assert!(close(v, 1.0 / 16.0, 1e-9));
}

#[test]
fn kinks_are_sums() {
    let ck = CorrelationKernel::closed(&k(KernelId::Tent), 2).unwrap();
    assert_eq!(ck.kinks(), vec![-4.0, -2.0, 0.0, 2.0, 4.0]);
    assert_eq!(ck.support(), Support::Interval(-4.0, 4.0));
    assert_eq!(ck.parity(), Parity::Even);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_reflection(a in 0u32..3, b in 0u32..3, t in 0.01f64..1.99) {
        let (a, b) = (a as f64, b as f64);
        let l = nu_closed(KernelId::Jacobi { alpha: a, beta: b }, 2, -t, Normalization::Simplex).unwrap();
        let r = nu_closed(KernelId::Jacobi { alpha: b, beta: a }, 2, t, Normalization::Simplex).unwrap();
        prop_assert!((l - r).abs() <= 1e-12 * (1.0 + r.abs()));
    }

    #[test]
    fn box_numeric_even(t in 0.0f64..2.5) {
        let w = k(KernelId::Box);
        let a = nu_numeric(&w, 2, t, 1e-12).unwrap();
        let b = nu_numeric(&w, 2, -t, 1e-12).unwrap();
        prop_assert!((a - b).abs() < 1e-11);
        prop_assert!(a >= -1e-14);
    }
}
