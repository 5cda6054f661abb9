use proptest::prelude::*;

use super::*;

fn k(spec: &str) -> WeightKernel {
    parse_kernel(spec).unwrap()
}

#[test]
fn make_kernel_metadata() {
    let g = make_kernel(KernelId::Gaussian).unwrap();
    assert_eq!(g.support(), Support::WholeLine);
    assert_eq!(g.parity(), Parity::Even);
    assert_eq!(g.decay(), Decay::Gaussian);

    let j = make_kernel(KernelId::Jacobi { alpha: -0.5, beta: 1.2 }).unwrap();
    assert_eq!(j.support(), Support::Interval(-1.0, 1.0));
    assert_eq!(j.parity(), Parity::None);
    assert!(j.singular_endpoints());

    assert!(matches!(make_kernel(KernelId::Gegenbauer { lambda: -0.6 }), Err(Error::Domain(_))));
    assert!(matches!(parse_kernel("cauchy"), Err(Error::UnknownKernel(_))));
}

#[test]
fn evaluate_examples() {
    assert_eq!(evaluate(&k("tent"), 0.0), 0.5);
    assert_eq!(evaluate(&k("tent"), 3.0), 0.0);
    assert_eq!(evaluate(&k("jacobi:alpha=1,beta=2"), 0.0), 1.0);
    assert_eq!(evaluate(&k("laguerre:alpha=0.5"), -0.1), 0.0);
    assert_eq!(evaluate(&k("box"), 1.0), 1.0);
}

#[test]
fn moment_examples() {
    assert_eq!(moment(&k("gaussian"), 1, 1e-10).unwrap(), 0.0);
    assert!((moment(&k("laguerre:alpha=0"), 3, 1e-10).unwrap() - 6.0).abs() < 1e-13);
    assert!((moment(&k("box"), 2, 1e-10).unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn closed_moments_match_quadrature() {
    let specs = [
        "gaussian",
        "laguerre:alpha=0",
        "laguerre:alpha=0.5",
        "laguerre:alpha=-0.4",
        "jacobi:alpha=1,beta=2",
        "jacobi:alpha=-0.5,beta=1.2",
        "gegenbauer:lambda=1.5",
        "gegenbauer:lambda=0.2",
        "box",
        "unitbox",
        "tent",
        "ujacobi:alpha=1,beta=1",
        "ujacobi:alpha=0.3,beta=2.5",
        "laguerre:alpha=0.5:pow=2",
    ];
    for s in specs {
        let ker = k(s);
        // floats cannot resolve t within an ulp of +-1, so an endpoint factor
        // |1 -+ t|^p with p < 0 loses about ulp^{1+p}/(1+p) of mass
        let (qtol, atol) = match s {
            "jacobi:alpha=-0.5,beta=1.2" => (1e-10, 1e-6),
            _ if ker.singular_endpoints() => (1e-10, 1e-8),
            _ => (1e-12, 1e-8),
        };
        for m in 0..=6 {
            let closed = ker.closed_moment(m).unwrap();
            let f = ker.weighted(move |t| t.powi(m as i32));
            let q = match integrate_line(&f, qtol) {
                Ok(r) => r.value,
                Err(e) => panic!("{s} m={m}: {e}"),
            };
            assert!((q - closed).abs() <= atol * (1.0 + closed.abs()), "{s} m={m}: quad {q} closed {closed}");
        }
    }
}

#[test]
fn phi_moments_by_quadrature() {
    let ker = k("riemann-phi");
    assert!(ker.closed_moment(0).is_none());
    // 2 int_0^inf Phi = Xi(0)
    let m0 = ker.moment(0, 1e-13).unwrap();
    assert!((m0 - 0.497_120_778_188_314_1).abs() < 1e-12);
    assert_eq!(ker.moment(3, 1e-12).unwrap(), 0.0);
}

#[test]
fn modulation_examples() {
    let g = k("gaussian");
    assert_eq!(g.modulate(Modulation::Cosh(0.0)).unwrap(), g);
    assert_eq!(k("riemann-phi").modulate(Modulation::Sinh(0.3)).unwrap().parity(), Parity::Odd);
    let b2 = k("box").modulate(Modulation::Power(2)).unwrap();
    assert_eq!(b2.parity(), Parity::Even);
    assert_eq!(b2.evaluate(0.5), 0.25);
    assert_eq!(b2.evaluate(1.5), 0.0);
    assert!(k("box:sinh=0.3").is_signed());
    assert!(!k("box:cosh=0.3").is_signed());
    assert!(matches!(k("laguerre:alpha=1").modulate(Modulation::Cosh(1.5)), Err(Error::Decay(_))));
}

#[test]
fn modulated_laguerre_mass() {
    // int cosh(y t) e^{-t} dt = 1/(1 - y^2)
    let ker = k("laguerre:alpha=0:cosh=0.6");
    let m0 = ker.moment(0, 1e-12).unwrap();
    assert!((m0 - 1.0 / (1.0 - 0.36)).abs() < 1e-10);
}

#[test]
fn cosh_even_in_y() {
    for s in ["gaussian", "riemann-phi", "tent", "jacobi:alpha=1,beta=2"] {
        let a = k(s).modulate(Modulation::Cosh(0.4)).unwrap();
        let b = k(s).modulate(Modulation::Cosh(-0.4)).unwrap();
        for i in -40..=40 {
            let t = f64::from(i) * 0.1;
            assert_eq!(a.evaluate(t), b.evaluate(t));
        }
    }
}

#[test]
fn spec_strings_round_trip() {
    for s in [
        "gaussian",
        "laguerre:alpha=0.5",
        "jacobi:alpha=1,beta=2",
        "gegenbauer:lambda=0.5",
        "box",
        "unitbox",
        "tent",
        "ujacobi:alpha=1,beta=1",
        "riemann-phi",
        "tent:cosh=0.5",
        "riemann-phi:sinh=0.3",
        "box:pow=2",
    ] {
        assert_eq!(k(s).spec_string(), s);
    }
    assert!(parse_kernel("jacobi:alpha=1").is_err());
    assert!(parse_kernel("box:alpha=1").is_err());
    assert!(parse_kernel("tent:pow=-1").is_err());
}

proptest! {
    #[test]
    fn even_kernels_are_even(t in -5.0f64..5.0, lambda in -0.4f64..3.0, y in -1.0f64..1.0) {
        for ker in [k("gaussian"), k("tent"), k("box"), k("riemann-phi"),
                    make_kernel(KernelId::Gegenbauer { lambda }).unwrap(),
                    k("gaussian").modulate(Modulation::Cosh(y)).unwrap()] {
            prop_assert_eq!(ker.evaluate(t), ker.evaluate(-t));
        }
    }

    #[test]
    fn catalog_kernels_nonnegative(t in -5.0f64..5.0, a in -0.9f64..3.0, b in -0.9f64..3.0) {
        for ker in [make_kernel(KernelId::Jacobi { alpha: a, beta: b }).unwrap(),
                    make_kernel(KernelId::UJacobi { alpha: a, beta: b }).unwrap(),
                    make_kernel(KernelId::Laguerre { alpha: a }).unwrap(),
                    k("tent"), k("riemann-phi")] {
            prop_assert!(ker.evaluate(t) >= 0.0);
        }
    }

    #[test]
    fn zero_off_support(t in 2.0001f64..50.0) {
        for ker in [k("tent"), k("box"), k("jacobi:alpha=1,beta=2"), k("unitbox")] {
            prop_assert_eq!(ker.evaluate(t), 0.0);
            prop_assert_eq!(ker.evaluate(-t), 0.0);
        }
    }

    #[test]
    fn parse_round_trips_parameters(a in -0.99f64..5.0, b in -0.99f64..5.0, y in -2.0f64..2.0) {
        let ker = make_kernel(KernelId::Jacobi { alpha: a, beta: b }).unwrap().modulate(Modulation::Sinh(y)).unwrap();
        prop_assert_eq!(parse_kernel(&ker.spec_string()).unwrap(), ker);
    }
}
