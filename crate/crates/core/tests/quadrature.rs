use proptest::prelude::*;
use rug::Float;
use zeta_workbench::quadrature::{evaluation_count, integrate, Decay, Domain, Singularity};
use zeta_workbench::{Error, PrecisionConfig};

fn close(a: &Float, b: &Float, tol: f64) -> bool {
    Float::with_val(a.prec(), a - b).abs() < tol
}

#[test]
fn same_integral_twice_is_bit_identical() {
    let cfg = PrecisionConfig::default();
    let tol = cfg.quad_tol();
    let d = Domain::half_line(Decay::Exponential).unwrap();
    let f = |x: &Float| Ok(Float::with_val(cfg.bits(), -x).exp() * Float::with_val(cfg.bits(), x.cos_ref()));
    let a = integrate(&cfg, f, &d, tol).unwrap();
    let b = integrate(&cfg, f, &d, tol).unwrap();
    assert_eq!(a, b);
    assert!(close(&a.value, &cfg.ratio(1, 2), 1e-35));
}

#[test]
fn evaluation_counter_advances_by_reported_amount() {
    let cfg = PrecisionConfig::default();
    let tol = cfg.quad_tol();
    let d = Domain::finite(cfg.zero(), cfg.num(1)).unwrap();
    let before = evaluation_count();
    let r = integrate(&cfg, |x: &Float| Ok(Float::with_val(cfg.bits(), x.square_ref())), &d, tol).unwrap();
    assert_eq!(evaluation_count() - before, r.evaluations);
    assert!(close(&r.value, &cfg.ratio(1, 3), 1e-35));
}

#[test]
fn log_singular_and_algebraic_tails() {
    let cfg = PrecisionConfig::default();
    let bits = cfg.bits();
    let tol = cfg.quad_tol();
    // ∫₀¹ log²x dx = 2
    let d = Domain::finite(cfg.zero(), cfg.num(1)).unwrap().with_left_singularity(Singularity::LogPower(2));
    let v = integrate(&cfg, |x: &Float| Ok(Float::with_val(bits, x.ln_ref()).square()), &d, tol)
        .unwrap()
        .into_value(tol)
        .unwrap();
    assert!(close(&v, &cfg.num(2), 1e-30));
    // ∫₀^∞ dx/(1+x²) = π/2
    let d = Domain::half_line(Decay::Algebraic(2.0)).unwrap();
    let v = integrate(&cfg, |x: &Float| Ok((Float::with_val(bits, x.square_ref()) + 1u32).recip()), &d, tol)
        .unwrap()
        .into_value(tol)
        .unwrap();
    assert!(close(&v, &(cfg.pi() / 2u32), 1e-30));
}

#[test]
fn bad_domains_are_rejected() {
    let cfg = PrecisionConfig::default();
    assert!(matches!(Domain::finite(cfg.num(1), cfg.num(1)), Err(Error::Argument(_))));
    assert!(matches!(Domain::half_line(Decay::Algebraic(1.0)), Err(Error::Argument(_))));
    assert!(matches!(Domain::semi_infinite(cfg.num(-1), Decay::Exponential), Err(Error::Argument(_))));
}

#[test]
fn non_finite_integrand_is_reported() {
    let cfg = PrecisionConfig::default();
    let d = Domain::finite(cfg.num(-1), cfg.num(1)).unwrap();
    let r = integrate(&cfg, |x: &Float| Ok(Float::with_val(cfg.bits(), x.recip_ref())), &d, cfg.quad_tol());
    let bad = match r {
        Err(Error::Integrand { .. }) => true,
        Ok(q) => !q.converged,
        Err(_) => false,
    };
    assert!(bad);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monomials_on_random_intervals(k in 0u32..6, a in 0.0f64..2.0, w in 0.1f64..3.0) {
        let cfg = PrecisionConfig::default();
        let bits = cfg.bits();
        let tol = cfg.quad_tol();
        let (lo, hi) = (cfg.num(a), cfg.num(a + w));
        let d = Domain::finite(lo.clone(), hi.clone()).unwrap();
        let v = integrate(&cfg, |x: &Float| Ok(Float::with_val(bits, rug::ops::Pow::pow(x, k))), &d, tol)
            .unwrap()
            .into_value(tol)
            .unwrap();
        let exact = (Float::with_val(bits, rug::ops::Pow::pow(&hi, k + 1))
            - Float::with_val(bits, rug::ops::Pow::pow(&lo, k + 1)))
            / (k + 1);
        let scale = exact.to_f64().abs().max(1.0);
        prop_assert!(close(&v, &exact, 1e-26 * scale));
    }
}
