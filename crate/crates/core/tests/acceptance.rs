//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use corrwron::checks::*;
use corrwron::correlate::{nu_closed, CorrelationKernel, Normalization};
use corrwron::kernels::{parse_kernel, WeightKernel};
use corrwron::linalg::hankel_determinant;
use corrwron::riemann::{find_xi_zeros, phi, scan_rh_positivity, Verdict};
use corrwron::xform::{closed_transform, closed_wronskian, laplace_jet, wronskian, TransformKind};
use corrwron::kernels::KernelId;
use corrwron::xform::fourier_jet;

const CATALOG: [&str; 12] = [
    "gaussian",
    "laguerre:alpha=0",
    "laguerre:alpha=0.5",
    "laguerre:alpha=1",
    "jacobi:alpha=1,beta=2",
    "gegenbauer:lambda=0.5",
    "gegenbauer:lambda=1.5",
    "box",
    "unitbox",
    "tent",
    "ujacobi:alpha=1,beta=1",
    "riemann-phi",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn k(spec: &str) -> WeightKernel {
    parse_kernel(spec).unwrap()
}

fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn oracle_suite() -> Outcome {
    let mut cases: Vec<(String, usize)> = vec![("gaussian".into(), 2), ("gaussian".into(), 3)];
    for a in ["0", "0.5", "1"] {
        for n in [2, 3] {
            cases.push((format!("laguerre:alpha={a}"), n));
        }
    }
    for a in [1, 2] {
        for b in [1, 2] {
            cases.push((format!("jacobi:alpha={a},beta={b}"), 2));
        }
    }
    for s in ["gegenbauer:lambda=0.5", "gegenbauer:lambda=1.5", "tent", "box", "ujacobi:alpha=1,beta=1"] {
        cases.push((s.into(), 2));
    }
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for (spec, n) in &cases {
        let w = k(spec);
        let closed = CorrelationKernel::closed(&w, *n).unwrap();
        let numeric = CorrelationKernel::numeric(&w, *n, 1e-10).unwrap();
        let (lo, hi) = numeric.range(1e-10).unwrap();
        for t in lin(lo, hi, 25) {
            let c = closed.evaluate(t).unwrap();
            let e = (numeric.evaluate(t).unwrap() - c).abs() / (1.0 + c.abs());
            if e > worst {
                worst = e;
                worst_case = format!("{spec} n={n} t={t:.3}");
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-6 && elapsed < Duration::from_secs(60),
        format!("{} pairs x 25 points, worst {worst:.2e} at {worst_case}, {:.1}s", cases.len(), elapsed.as_secs_f64()),
    )
}

fn central_identity() -> Outcome {
    let fx = lin(0.1, 10.0, 50);
    let lx = lin(0.2, 5.0, 50);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    for spec in CATALOG {
        let w = k(spec);
        for n in [2, 3] {
            let mut reports = vec![check_fourier_identity(&w, n, &fx, 1e-5)];
            if w.on_half_line() {
                reports.push(check_laplace_identity(&w, n, &lx, 1e-5));
            }
            for r in reports {
                count += 1;
                worst = worst.max(r.worst);
                if !r.pass {
                    failures.push(format!("{} {spec} n={n}", r.check));
                }
            }
        }
    }
    // Sign at n = 3 from both closed forms: W_3(F h) against F(a_3 e^{-t^2/6}).
    let a3 = nu_closed(KernelId::Gaussian, 3, 0.0, Normalization::Transform).unwrap();
    let mut sign_ok = true;
    for x in lin(-2.0, 2.0, 50) {
        let w3 = closed_wronskian(KernelId::Gaussian, TransformKind::Fourier, 3, x).unwrap().re;
        let f_nu = a3 * (6.0 * PI).sqrt() * (-1.5 * x * x).exp();
        sign_ok &= w3 < 0.0 && (w3 + f_nu).abs() <= 1e-12 * f_nu;
    }
    if !sign_ok {
        failures.push("gaussian n=3 sign".into());
    }
    outcome(
        failures.is_empty(),
        format!("{count} identity checks, worst residual {worst:.2e}; gaussian n=3 sign -1 confirmed: {sign_ok}; failures {failures:?}"),
    )
}

fn mass_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for spec in CATALOG {
        let w = k(spec);
        for n in [2usize, 3] {
            let moments: Vec<f64> = (0..2 * n - 1).map(|m| w.moment(m, 1e-13).unwrap()).collect();
            let det = hankel_determinant(&moments, n).unwrap().value;
            let ck = CorrelationKernel::best(&w, n, 1e-11).unwrap();
            let m = ck.mass(1e-10).unwrap();
            let rel = (m - det).abs() / det.abs();
            worst = worst.max(rel);
            if rel > 1e-6 {
                failures.push(format!("{spec} n={n}: {m} vs {det}"));
            }
        }
    }
    let named = [("gaussian", 2.0 * PI), ("box", 4.0 / 3.0), ("laguerre:alpha=0", 1.0)];
    for (spec, want) in named {
        let m = CorrelationKernel::best(&k(spec), 2, 1e-11).unwrap().mass(1e-12).unwrap();
        if (m - want).abs() > 1e-6 * want {
            failures.push(format!("{spec} n=2 mass {m} vs {want}"));
        }
    }
    outcome(failures.is_empty(), format!("{} kernels x n=2,3, worst relative {worst:.2e}; failures {failures:?}", CATALOG.len()))
}

fn closed_form_specials() -> Outcome {
    let fails = std::cell::RefCell::new(Vec::new());
    let check = |name: &str, got: f64, want: f64, tol: f64| {
        if (got - want).abs().is_nan() || (got - want).abs() > tol * want.abs().max(1.0) {
            fails.borrow_mut().push(format!("{name}: {got} vs {want}"));
        }
    };
    let raw = Normalization::Simplex;
    check("nu2(box;0)", nu_closed(KernelId::Box, 2, 0.0, raw).unwrap(), 8.0 / 3.0, 1e-9);
    let below = nu_closed(KernelId::Tent, 2, 2.0 - 1e-13, raw).unwrap();
    let above = nu_closed(KernelId::Tent, 2, 2.0 + 1e-13, raw).unwrap();
    check("nu2(tent;2-)", below, 1.0 / 15.0, 1e-9);
    check("nu2(tent;2+)", above, 1.0 / 15.0, 1e-9);
    // W_2^F(box) = 2(-1 + 2x^2 + cos 2x)/x^4 <= 4/3.
    let bx = k("box");
    let mut sup = 0.0f64;
    for x in lin(0.05, 20.0, 200) {
        let expected = 2.0 * (-1.0 + 2.0 * x * x + (2.0 * x).cos()) / x.powi(4);
        let w2 = -closed_wronskian(KernelId::Box, TransformKind::Fourier, 2, x).unwrap().re;
        let jet = -wronskian(&fourier_jet(&bx, x, 2, 1e-13).unwrap(), 2).unwrap().value.re;
        check("W2F(box) closed", w2, expected, 1e-9);
        check("W2F(box) jets", jet, expected, 1e-9);
        sup = sup.max(w2);
    }
    let at0 = -closed_wronskian(KernelId::Box, TransformKind::Fourier, 2, 0.0).unwrap().re;
    check("W2F(box;0)", at0, 4.0 / 3.0, 1e-12);
    if sup > 4.0 / 3.0 {
        fails.borrow_mut().push(format!("sup W2F(box) {sup} > 4/3"));
    }
    let ub = k("unitbox");
    for x in lin(0.1, 6.0, 60) {
        let expected = (2.0 * x.cosh() - x * x - 2.0) / x.powi(4) * (-x).exp();
        let closed = closed_wronskian(KernelId::UnitBox, TransformKind::Laplace, 2, x).unwrap().re;
        let jet = wronskian(&laplace_jet(&ub, x, 2, 1e-14).unwrap(), 2).unwrap().value.re;
        check("W2L(unitbox) closed", closed, expected, 1e-9);
        check("W2L(unitbox) jets", jet, expected, 1e-9);
    }
    for alpha in [0.0, 0.5, 1.0] {
        let id = KernelId::Laguerre { alpha };
        let w = k(&format!("laguerre:alpha={alpha}"));
        for x in lin(0.0, 5.0, 11) {
            let expected = corrwron::specfun::gamma(alpha + 1.0).unwrap() * (1.0 + x).powf(-alpha - 1.0);
            check("L laguerre closed", closed_transform(id, TransformKind::Laplace, x).unwrap().re, expected, 1e-12);
            check("L laguerre jet", laplace_jet(&w, x, 0, 1e-14).unwrap().values[0].re, expected, 1e-9);
            for n in [2usize, 3] {
                let nf = n as f64;
                let c: f64 = (0..n)
                    .map(|j| corrwron::specfun::factorial::<f64>(j) * corrwron::specfun::pochhammer(alpha + 1.0, j))
                    .product::<f64>()
                    * corrwron::specfun::gamma(alpha + 1.0).unwrap().powi(n as i32);
                let expected = c * (1.0 + x).powf(-nf * (nf + alpha));
                let jet = wronskian(&laplace_jet(&w, x, 2 * n - 2, 1e-14).unwrap(), n).unwrap().value.re;
                check("W_n L laguerre", jet, expected, 1e-9);
            }
        }
    }
    let fails = fails.into_inner();
    outcome(fails.is_empty(), format!("8/3, 1/15 (both sides), sup W2F(box) = {at0} at 0, unitbox/laguerre Laplace forms; failures {fails:?}"))
}

fn bessel_bound() -> Outcome {
    let xs = lin(0.0, 40.0, 4001);
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in [0.0, 0.5, 1.0, 1.5] {
        let r = check_bessel_bound(lambda, &xs);
        pass &= r.pass;
        parts.push(format!(
            "l={lambda}: min {:.2e}, max {:.4} <= bound {:.4} (margin {:.4})",
            r.summary["min"].as_f64().unwrap(),
            r.summary["max"].as_f64().unwrap(),
            r.summary["bound"].as_f64().unwrap(),
            r.summary["upper_margin"].as_f64().unwrap()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn psd_sampling() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for spec in ["box", "gegenbauer:lambda=1"] {
        let w = k(spec);
        let r = check_positive_definite(fourier_wronskian_fn(&w, 2, 1e-12), 200, (-10.0, 10.0), 1e-8, 20240601);
        pass &= r.pass;
        parts.push(format!("{spec}: min eigenvalue {:.2e}", r.summary["min_eigenvalue"].as_f64().unwrap()));
    }
    outcome(pass, format!("200 Gram matrices each; {}", parts.join(", ")))
}

fn complete_monotonicity() -> Outcome {
    let xs = lin(0.1, 5.0, 50);
    let ub = k("unitbox");
    let a = check_completely_monotone("L unitbox", |x, m| Ok(laplace_jet(&ub, x, m, 1e-14)?.real()), 6, &xs, 1e-9);
    let tab = CorrelationKernel::closed(&ub, 2).unwrap().tabulate(1.0).unwrap();
    let b = check_completely_monotone("L nu2(unitbox)", tabulated_laplace_jet(&tab), 6, &xs, 1e-9);
    outcome(a.pass && b.pass, format!("k<=6: L chi worst {:.2e}, L nu2 worst {:.2e}", a.worst, b.worst))
}

fn riemann_desk() -> Outcome {
    const ZEROS: [f64; 5] = [14.134725, 21.022040, 25.010858, 30.424876, 32.935062];
    let start = Instant::now();
    let phi_ok = (phi(0.0) - 0.8933938).abs() <= 1e-6;
    let zeros = find_xi_zeros(0.0, 60.0, 1e-8).unwrap();
    let zeros_ok = zeros.len() >= 5 && zeros.iter().zip(ZEROS).all(|(z, w)| (z - w).abs() <= 1e-4);
    let mut scans = Vec::new();
    let mut scans_ok = true;
    for y in [0.0, 0.2, -0.2, 0.49, -0.49] {
        let s = scan_rh_positivity(y, 30.0, 0.05, 1e-12).unwrap();
        scans_ok &= s.verdict == Verdict::AllPositive;
        let tail = match s.first_unresolved {
            Some(x) => format!(" (within tolerance from x={x:.2}, min {:.2e})", s.min_value),
            None => String::new(),
        };
        scans.push(format!("y={y}: {:?}{tail}", s.verdict));
    }
    let elapsed = start.elapsed();
    outcome(
        phi_ok && zeros_ok && scans_ok && elapsed < Duration::from_secs(300),
        format!(
            "Phi(0)={:.7} ok={phi_ok}; zeros {:?} ok={zeros_ok}; scans [{}]; {:.1}s",
            phi(0.0),
            zeros.iter().take(5).map(|z| format!("{z:.6}")).collect::<Vec<_>>(),
            scans.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn jensen_identity() -> Outcome {
    let g = check_jensen_wronskian(&k("gaussian"), 0.7, &lin(-3.0, 3.0, 50), 1e-5);
    let p = check_jensen_wronskian(&k("riemann-phi"), 0.3, &lin(0.0, 30.0, 50), 1e-5);
    let sign = |r: &CheckReport| r.summary["jensen_sum_nonpositive"].as_bool().unwrap();
    outcome(
        g.pass && p.pass,
        format!(
            "gaussian y=0.7 residual {:.2e} (Jensen sum nonpositive: {}), phi y=0.3 residual {:.2e} (Jensen sum nonpositive: {})",
            g.worst,
            sign(&g),
            p.worst,
            sign(&p)
        ),
    )
}

fn designed_failure() -> Outcome {
    let tent = k("tent");
    let plain = CorrelationKernel::closed(&tent, 2).unwrap();
    let r0 = check_density_surrogate(&plain, 15.0, 0.05, 1e-6);
    let min0 = r0.summary["min_abs"].as_f64().unwrap();
    let at0 = r0.summary["min_abs_x"].as_f64().unwrap();
    let modulated = CorrelationKernel::numeric(&k("tent:cosh=0.5"), 2, 1e-12).unwrap();
    let r5 = check_density_surrogate(&modulated, 15.0, 0.05, 1e-6);
    let min5 = r5.summary["min_abs"].as_f64().unwrap();
    let positive = r5.points.iter().all(|p| p.lhs.re > 0.0);
    let k2y = corrwron::correlate::build_k2y(&tent, 0.5, 1e-12).unwrap();
    let rk = check_density_surrogate(&k2y, 15.0, 0.05, 1e-6);
    let first_k2y_change = rk.summary["sign_changes"].as_array().and_then(|a| a.first()).map_or("none".to_string(), |v| v.to_string());
    outcome(
        !r0.pass && min0 < 1e-6 && r5.pass && positive,
        format!(
            "y=0: min |F| {min0:.2e} at x={at0:.4} (detected: {}); tent:cosh=0.5: all positive {positive}, min {min5:.2e}; \
             informational cosh(0.5t)nu2(tent;t) first sign change near x={first_k2y_change}",
            !r0.pass
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle suite", oracle_suite),
        ("central identity", central_identity),
        ("mass identity", mass_identity),
        ("closed-form specials", closed_form_specials),
        ("bessel bound", bessel_bound),
        ("psd sampling", psd_sampling),
        ("complete monotonicity", complete_monotonicity),
        ("riemann desk-scale", riemann_desk),
        ("jensen identity", jensen_identity),
        ("designed failure", designed_failure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {name} ({:.1}s): {}",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
