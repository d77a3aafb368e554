use rug::Float;
use zeta_workbench::constants::{stieltjes, zeta_deriv0, StieltjesRoute, ZetaDerivRoute};
use zeta_workbench::identities::{catalog_ids, evaluate_identity, find_identity, Params};
use zeta_workbench::{Error, PrecisionConfig, Workbench};

fn workbench() -> Workbench {
    Workbench::new(PrecisionConfig::default()).unwrap()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec(), a - b).abs().to_f64()
}

#[test]
fn zeta_derivative_routes_agree_with_oracle() {
    let wb = workbench();
    for n in 1..=6 {
        let oracle = wb.zeta_deriv0_oracle(n).unwrap();
        for route in ZetaDerivRoute::FORMULAS {
            let v = zeta_deriv0(&wb, n, route).unwrap();
            assert!(diff(&v, &oracle) < 1e-25, "{route} at n = {n}");
        }
    }
}

#[test]
fn stieltjes_routes_agree_with_oracle() {
    let wb = workbench();
    for n in 0..=5 {
        let oracle = wb.stieltjes_oracle(n).unwrap();
        for route in StieltjesRoute::ALL {
            let v = stieltjes(&wb, n, route).unwrap();
            assert!(diff(&v, &oracle) < 1e-25, "{route} at n = {n}");
        }
    }
}

#[test]
fn known_decimals() {
    let wb = workbench();
    // γ₁ and ζ″(0), both from mpmath at 50 digits.
    let g1 = wb.config().num(Float::parse("-0.072815845483676724860586375874901319137736338334338").unwrap());
    assert!(diff(&wb.stieltjes_oracle(1).unwrap(), &g1) < 1e-35);
    let z2 = wb.config().num(Float::parse("-2.0063564559085848512101000267299604381989949101609").unwrap());
    assert!(diff(&wb.zeta_deriv0_oracle(2).unwrap(), &z2) < 1e-30);
}

#[test]
fn parameterised_point_and_errors() {
    let wb = workbench();
    let mut p = Params::new();
    p.insert("s", 0.4);
    let r = evaluate_identity(&wb, "EQ_1_1", &p, 1e-25).unwrap();
    assert!(r.pass);
    assert_eq!(r.params, p);

    p.insert("s", 1.0);
    assert!(matches!(evaluate_identity(&wb, "EQ_2_1", &p, 1e-25), Err(Error::Pole(_))));
    p.insert("s", 3.0);
    assert!(matches!(evaluate_identity(&wb, "EQ_2_1", &p, 1e-25), Err(Error::Domain(_))));

    let mut q = Params::new();
    q.insert("nope", 1.0);
    assert!(matches!(evaluate_identity(&wb, "EQ_1_1", &q, 1e-25), Err(Error::Argument(_))));
    assert!(matches!(evaluate_identity(&wb, "EQ_9_9", &Params::new(), 1e-8), Err(Error::UnknownId(_))));
    assert!(matches!(evaluate_identity(&wb, "EQ_1_1", &Params::new(), 0.0), Err(Error::Argument(_))));
}

#[test]
fn catalog_lookup() {
    let ids = catalog_ids();
    assert!(ids.contains(&"EQ_1_8") && ids.contains(&"EQ_4_24"));
    assert_eq!(find_identity("EQ_1_8").unwrap().id, "EQ_1_8");
}

#[test]
fn relaxed_tolerance_applies_from_threshold() {
    let wb = workbench();
    let mut p = Params::new();
    p.insert("n", 7.0);
    let relaxed = evaluate_identity(&wb, "EQ_1_8", &p, 1e-20).unwrap().tol;
    assert!((relaxed / 1e-18 - 1.0).abs() < 1e-12);
    p.insert("n", 3.0);
    assert_eq!(evaluate_identity(&wb, "EQ_1_8", &p, 1e-20).unwrap().tol, 1e-20);
}
