//! The identity records. Ids follow the equation numbering they check
//! (EQ_a_b), with a few named ids for unnumbered displays.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::cohen::{cohen_series, MIN_COHEN_TOL};
use super::kernels::{kernel_eval, kernel_log_moment, Kernel};
use super::named::{fermi_integral, i_closed_form, named_function_eval, NamedFunction};
use super::representations::{kernel_mellin_log, zeta_db_kernel, zeta_debruijn, zeta_kloosterman};
use super::{IdentityRecord, ParamDomain, ParamSpec, Params, TolRule};
use crate::constants::{
    self, bell_values, binomial, d_n, d_n_lehmer, eta, eta_table, even_zeta_args, factorial, g_deriv0, gamma1_bose,
    gamma1_of_u, lehmer_b, lehmer_b_by_inversion, sigma, sigma_from_lehmer, stieltjes, zeta_deriv0, StieltjesRoute,
    ZetaDerivRoute,
};
use crate::numdiff::derivative;
use crate::quadrature::{integrate, log_weighted_algebraic, Decay, Domain, Singularity};
use crate::specfun::{
    bose_integral, digamma, digamma_remainder, generalized_stieltjes, hurwitz_deriv0, hurwitz_em, hurwitz_em_deriv,
    hurwitz_hermite, ln_gamma, log_gamma_binet, polygamma, stieltjes_oracle, trigamma_remainder, zeta_em,
    zeta_times_pole,
};
use crate::{PrecisionConfig, Result, Workbench};

/// Step for the finite-difference sides.
const FD_STEP: f64 = 1e-8;
/// Below this u the integrand (ψ(1+u) + γ)/u is summed as a series.
const DIGAMMA_SERIES_BELOW: f64 = 1e-3;
/// From here on log u − log(1+u) + 1/(1+u) is summed in powers of 1/u.
const LOG_SERIES_FROM: f64 = 16.0;
/// Below this y the Bose bracket 1/(eʸ − 1) − 1/y is summed as a series.
const BOSE_SERIES_BELOW: f64 = 0.5;
const MAX_SERIES_TERMS: usize = 400;

fn real(name: &'static str, min: f64, max: f64, defaults: &[f64]) -> ParamSpec {
    ParamSpec {
        name,
        domain: ParamDomain::Real { min, max, exclude: &[] },
        defaults: defaults.to_vec(),
    }
}

fn positive(name: &'static str, defaults: &[f64]) -> ParamSpec {
    real(name, 0.0, f64::INFINITY, defaults)
}

fn int(name: &'static str, min: i64, max: i64, defaults: &[f64]) -> ParamSpec {
    ParamSpec {
        name,
        domain: ParamDomain::Integer { min, max },
        defaults: defaults.to_vec(),
    }
}

/// An integer parameter whose defaults are its whole range.
fn index(name: &'static str, min: i64, max: i64) -> ParamSpec {
    int(name, min, max, &(min..=max).map(|v| v as f64).collect::<Vec<_>>())
}

fn rec<L, R>(
    id: &'static str,
    description: &'static str,
    params: Vec<ParamSpec>,
    tol_rule: TolRule,
    lhs: L,
    rhs: R,
) -> IdentityRecord
where
    L: Fn(&Workbench, &Params) -> Result<Float> + Send + Sync + 'static,
    R: Fn(&Workbench, &Params) -> Result<Float> + Send + Sync + 'static,
{
    IdentityRecord {
        id,
        description,
        params,
        tol_rule,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}

/// The tolerance is relaxed a hundredfold from index `n` on.
fn relaxed_from(n: f64) -> TolRule {
    TolRule::RelaxedFrom {
        param: "n",
        from: n,
        factor: 100.0,
    }
}

fn arg(wb: &Workbench, p: &Params, name: &str) -> Float {
    wb.config().num(p[name])
}

fn idx(p: &Params, name: &str) -> usize {
    p[name] as usize
}

fn sign(n: usize) -> i32 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn ln(bits: u32, x: &Float) -> Float {
    Float::with_val(bits, x.ln_ref())
}

/// u^{−s}.
fn power(bits: u32, u: &Float, s: &Float) -> Float {
    (Float::with_val(bits, -s) * ln(bits, u)).exp()
}

fn quad<F>(cfg: &PrecisionConfig, f: F, d: Domain) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let tol = cfg.quad_tol();
    integrate(cfg, f, &d, tol)?.into_value(tol)
}

fn unit(cfg: &PrecisionConfig) -> Result<Domain> {
    Domain::finite(cfg.zero(), cfg.num(1))
}

fn euler(cfg: &PrecisionConfig) -> Float {
    cfg.num(Constant::Euler)
}

fn cohen(wb: &Workbench) -> Result<Float> {
    cohen_series(wb, MIN_COHEN_TOL)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut all = section_one();
    all.extend(section_two());
    all.extend(section_three());
    all.extend(section_four());
    all
}

/// γ₁ + ½γ² − ¼ζ(2) − ½log²2π.
fn ramanujan_second_derivative(wb: &Workbench) -> Result<Float> {
    let cfg = wb.config();
    let g = wb.stieltjes_oracle(0)?;
    let l = cfg.ln_2pi();
    Ok(wb.stieltjes_oracle(1)? + g.square() / 2u32 - wb.zeta_int(2)? / 4u32 - l.square() / 2u32)
}

/// 1/(eʸ − 1) − 1/y, by its Bernoulli series for small y.
fn bose_bracket(cfg: &PrecisionConfig, y: &Float) -> Float {
    let bits = cfg.bits();
    if y.to_f64() >= BOSE_SERIES_BELOW {
        return Float::with_val(bits, y.exp_m1_ref()).recip() - Float::with_val(bits, y.recip_ref());
    }
    // −½ + Σ B₂ₖ y^{2k−1}/(2k)!
    let cutoff = cfg.series_cutoff();
    let y2 = Float::with_val(bits, y.square_ref());
    let mut acc = cfg.ratio(-1, 2);
    let mut pw = Float::with_val(bits, y);
    for k in 1..MAX_SERIES_TERMS {
        let b = Float::with_val(bits, crate::specfun::bernoulli_even(k));
        let t = b * &pw / factorial(bits, 2 * k);
        let small = t.clone().abs() < cutoff;
        acc += t;
        if small {
            break;
        }
        pw *= &y2;
    }
    acc
}

fn section_one() -> Vec<IdentityRecord> {
    let s_unit = || real("s", 0.0, 1.0, &[0.25, 0.5, 0.75]);
    let s_sym = || real("s", -1.0, 1.0, &[-0.5, 0.0, 0.5]);
    vec![
        rec(
            "EQ_1_1",
            "ζ(s) = sin(πs)/π ∫₀^∞ [log u − ψ(1+u)] u^{−s} du",
            vec![s_unit()],
            TolRule::Global,
            |wb, p| zeta_kloosterman(wb.config(), &arg(wb, p, "s")),
            |wb, p| zeta_em(wb.config(), &arg(wb, p, "s")),
        ),
        rec(
            "EQ_1_2",
            "∫₀^∞ u^{−s}/(1+u) du = π/sin(πs)",
            vec![s_unit()],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let s = arg(wb, p, "s");
                let d = Domain::half_line(Decay::Algebraic(1.0 + s.to_f64()))?;
                quad(cfg, |u: &Float| Ok(power(bits, u, &s) / Float::with_val(bits, u + 1u32)), d)
            },
            |wb, p| {
                let cfg = wb.config();
                Ok(cfg.pi() / (cfg.pi() * arg(wb, p, "s")).sin())
            },
        ),
        rec(
            "EQ_1_3",
            "ζ(s) = 1/(s−1) + sin(πs)/π ∫₀^∞ [log(1+u) − ψ(1+u)] u^{−s} du",
            vec![s_unit()],
            TolRule::Global,
            |wb, p| zeta_db_kernel(wb.config(), &arg(wb, p, "s")),
            |wb, p| zeta_em(wb.config(), &arg(wb, p, "s")),
        ),
        rec(
            "EQ_1_5_6",
            "∫₀^∞ A(u) du = ζ′(0) = −½log 2π",
            vec![],
            TolRule::Global,
            |wb, _| wb.kernel_moment(Kernel::A, 0),
            |wb, _| Ok(-wb.config().ln_2pi() / 2u32),
        ),
        rec(
            "EQ_1_7",
            "ζ⁽ⁿ⁾(s) = (1/π) Σ C(n,k) πᵏ sin(πs + kπ/2) ∫ A(u)(−log u)ⁿ⁻ᵏ u^{−s} du, against differences of the B-kernel form",
            vec![real("s", 0.0, 1.0, &[0.3, 0.5]), int("n", 1, 3, &[1.0, 2.0])],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let s = arg(wb, p, "s");
                let n = idx(p, "n");
                let pi = cfg.pi();
                let mut acc = cfg.zero();
                for k in 0..=n {
                    let phase = Float::with_val(bits, &pi * &s) + Float::with_val(bits, &pi * k as u32) / 2u32;
                    let pw = Float::with_val(bits, (&pi).pow(k as u32));
                    let m = kernel_mellin_log(cfg, Kernel::A, &s, (n - k) as u32)?;
                    acc += binomial(bits, n, k) * pw * phase.sin() * m * sign(n - k);
                }
                Ok(acc / pi)
            },
            |wb, p| {
                let cfg = wb.config();
                let f = |x: &Float| zeta_debruijn(cfg, x);
                let n = idx(p, "n") as u32;
                Ok(derivative(&f, &arg(wb, p, "s"), n, &cfg.num(FD_STEP))?.value)
            },
        ),
        rec(
            "EQ_1_8",
            "ζ⁽ⁿ⁾(0) from the A-kernel log-moments",
            vec![index("n", 1, 8)],
            relaxed_from(6.0),
            |wb, p| zeta_deriv0(wb, idx(p, "n"), ZetaDerivRoute::KernelIntegral),
            |wb, p| wb.zeta_deriv0_oracle(idx(p, "n")),
        ),
        rec(
            "EQ_1_9",
            "ζ″(0) = −2 ∫₀^∞ A(u) log u du",
            vec![],
            TolRule::Global,
            |wb, _| Ok(wb.kernel_moment(Kernel::A, 1)? * -2i32),
            |wb, _| wb.zeta_deriv0_oracle(2),
        ),
        rec(
            "EQ_1_10",
            "ζ″(0) = γ₁ + ½γ² − ¼ζ(2) − ½log²2π",
            vec![],
            TolRule::Global,
            |wb, _| ramanujan_second_derivative(wb),
            |wb, _| wb.zeta_deriv0_oracle(2),
        ),
        rec(
            "EQ_1_9_vs_1_10",
            "−2 ∫₀^∞ A(u) log u du = γ₁ + ½γ² − ¼ζ(2) − ½log²2π",
            vec![],
            TolRule::Global,
            |wb, _| Ok(wb.kernel_moment(Kernel::A, 1)? * -2i32),
            |wb, _| ramanujan_second_derivative(wb),
        ),
        rec(
            "EQ_1_13",
            "ζ‴(0) = 3 ∫₀^∞ A(u) log²u du + ½π² log 2π",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let pi2 = cfg.pi().square();
                Ok(wb.kernel_moment(Kernel::A, 2)? * 3u32 + pi2 * cfg.ln_2pi() / 2u32)
            },
            |wb, _| wb.zeta_deriv0_oracle(3),
        ),
        rec(
            "EQ_1_16",
            "ζ⁽ⁿ⁾(0) from Bell polynomials of even zeta values and A-kernel log-moments",
            vec![index("n", 1, 8)],
            relaxed_from(6.0),
            |wb, p| zeta_deriv0(wb, idx(p, "n"), ZetaDerivRoute::BellKernel),
            |wb, p| wb.zeta_deriv0_oracle(idx(p, "n")),
        ),
        rec(
            "EQ_1_16_1",
            "Σ_{k<n} C(n,k) ζ⁽ⁿ⁻ᵏ⁾(0) Yₖ(x⁺) = n(−1)ⁿ⁻¹ ∫ A logⁿ⁻¹, solved for ζ⁽ⁿ⁾(0)",
            vec![index("n", 1, 8)],
            relaxed_from(6.0),
            |wb, p| zeta_deriv0(wb, idx(p, "n"), ZetaDerivRoute::LeibnizKernel),
            |wb, p| wb.zeta_deriv0_oracle(idx(p, "n")),
        ),
        rec(
            "EQ_1_18",
            "∫₀^∞ u^{−s}/(x²+u²) du = π/(2x^{s+1} cos(πs/2))",
            vec![s_sym(), positive("x", &[0.5, 2.0])],
            TolRule::Global,
            |wb, p| Ok(log_weighted_algebraic(wb.config(), &arg(wb, p, "s"), &arg(wb, p, "x"))?.0),
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let s = arg(wb, p, "s");
                let x = arg(wb, p, "x");
                let c = (cfg.pi() * &s / 2u32).cos();
                let xs = power(bits, &x, &Float::with_val(bits, -(s + 1u32)));
                Ok(cfg.pi() / (xs * c * 2u32))
            },
        ),
        rec(
            "EQ_1_20",
            "log u − ψ(1+u) = 2∫₀^∞ x/(x²+u²) [1/(e^{2πx}−1) − 1/(2πx)] dx",
            vec![positive("u", &[0.5, 1.0, 5.0])],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let u = arg(wb, p, "u");
                let half_inv = Float::with_val(cfg.bits(), u.recip_ref()) / 2u32;
                Ok(-digamma_remainder(cfg, &u)? - half_inv)
            },
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let u2 = Float::with_val(bits, arg(wb, p, "u").square_ref());
                let two_pi = cfg.pi() * 2u32;
                let d = Domain::half_line(Decay::Algebraic(2.0))?;
                let v = quad(
                    cfg,
                    |x: &Float| {
                        let r2 = Float::with_val(bits, x.square_ref()) + &u2;
                        let y = Float::with_val(bits, x * &two_pi);
                        Ok(Float::with_val(bits, x / r2) * bose_bracket(cfg, &y))
                    },
                    d,
                )?;
                Ok(v * 2u32)
            },
        ),
        rec(
            "EQ_1_22",
            "∫₀^∞ u^{−s} log u/(x²+u²) du = (π/2)x^{−(s+1)}[cos(πs/2) log x − (π/2) sin(πs/2)]/cos²(πs/2)",
            vec![s_sym(), positive("x", &[0.5, 2.0])],
            TolRule::Global,
            |wb, p| Ok(log_weighted_algebraic(wb.config(), &arg(wb, p, "s"), &arg(wb, p, "x"))?.1),
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let s = arg(wb, p, "s");
                let x = arg(wb, p, "x");
                let pi = cfg.pi();
                let half = Float::with_val(bits, &pi * &s) / 2u32;
                let (sn, cs) = (Float::with_val(bits, half.sin_ref()), half.cos());
                let xs = power(bits, &x, &Float::with_val(bits, &s + 1u32));
                let bracket = Float::with_val(bits, &cs * ln(bits, &x)) - Float::with_val(bits, &pi * sn) / 2u32;
                Ok(pi / 2u32 * xs * bracket / cs.square())
            },
        ),
        rec(
            "EQ_1_23",
            "∫₀^∞ log u/(x²+u²) du = π log x/(2x)",
            vec![positive("x", &[0.5, 2.0, 3.0])],
            TolRule::Global,
            |wb, p| Ok(log_weighted_algebraic(wb.config(), &wb.config().zero(), &arg(wb, p, "x"))?.1),
            |wb, p| {
                let cfg = wb.config();
                let x = arg(wb, p, "x");
                Ok(cfg.pi() * ln(cfg.bits(), &x) / (x * 2u32))
            },
        ),
    ]
}

/// ∫₀¹ (ψ(1+u) + γ)/u du, with the Taylor series Σ (−1)ᵏζ(k)uᵏ⁻² near 0.
fn digamma_head(wb: &Workbench) -> Result<Float> {
    let cfg = wb.config();
    let bits = cfg.bits();
    let g = euler(cfg);
    let cutoff = cfg.series_cutoff();
    quad(
        cfg,
        |u: &Float| {
            if u.to_f64() < DIGAMMA_SERIES_BELOW {
                let mut acc = cfg.zero();
                let mut pw = cfg.num(1);
                for k in 2..MAX_SERIES_TERMS {
                    let t = wb.zeta_int(k as u32)? * &pw * sign(k);
                    let small = t.clone().abs() < cutoff;
                    acc += t;
                    if small {
                        break;
                    }
                    pw *= u;
                }
                return Ok(acc);
            }
            let up = Float::with_val(bits, u + 1u32);
            Ok((digamma(cfg, &up)? + &g) / u)
        },
        unit(cfg)?,
    )
}

fn b_log_on(wb: &Workbench, tail: bool) -> Result<Float> {
    let cfg = wb.config();
    let bits = cfg.bits();
    let d = if tail {
        Domain::semi_infinite(cfg.num(1), Decay::Algebraic(2.0))?
    } else {
        unit(cfg)?.with_left_singularity(Singularity::LogPower(1))
    };
    quad(cfg, |u: &Float| Ok(kernel_eval(cfg, Kernel::B, u)? * ln(bits, u)), d)
}

fn trigamma_log_head(wb: &Workbench) -> Result<Float> {
    let cfg = wb.config();
    let bits = cfg.bits();
    let d = unit(cfg)?.with_left_singularity(Singularity::LogPower(1));
    quad(
        cfg,
        |u: &Float| Ok(polygamma(cfg, 1, &Float::with_val(bits, u + 1u32))? * ln(bits, u)),
        d,
    )
}

fn stieltjes_record(id: &'static str, description: &'static str, route: StieltjesRoute) -> IdentityRecord {
    rec(
        id,
        description,
        vec![index("n", 0, 8)],
        relaxed_from(5.0),
        move |wb, p| stieltjes(wb, idx(p, "n"), route),
        |wb, p| wb.stieltjes_oracle(idx(p, "n")),
    )
}

fn section_two() -> Vec<IdentityRecord> {
    vec![
        rec(
            "EQ_2_1",
            "ζ(s) = 1/(s−1) − sin(πs)/(π(s−1)) ∫₀^∞ B(u) u^{1−s} du",
            vec![ParamSpec {
                name: "s",
                domain: ParamDomain::Real {
                    min: 0.0,
                    max: 2.0,
                    exclude: &[1.0],
                },
                defaults: vec![0.25, 0.5, 0.75, 1.5],
            }],
            TolRule::Global,
            |wb, p| zeta_debruijn(wb.config(), &arg(wb, p, "s")),
            |wb, p| zeta_em(wb.config(), &arg(wb, p, "s")),
        ),
        rec(
            "EQ_2_2",
            "∫₀^∞ B(u) du = γ",
            vec![],
            TolRule::Global,
            |wb, _| wb.kernel_moment(Kernel::B, 0),
            |wb, _| wb.stieltjes_oracle(0),
        ),
        stieltjes_record(
            "EQ_2_3",
            "γₙ = Σ C(n,k)(−1)ᵏ Yₖ(x⁻) ∫₀^∞ B(u) logⁿ⁻ᵏu du",
            StieltjesRoute::BellSum,
        ),
        rec(
            "EQ_2_4",
            "γ₁ = ∫₀^∞ B(u) log u du",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                kernel_log_moment(cfg, Kernel::B, 1)
            },
            |wb, _| stieltjes_oracle(wb.config(), 1),
        ),
        rec(
            "EQ_2_5",
            "∫₀^∞ B(u) logⁿu du = Σ C(n,k) Yₖ(x⁺)(−1)ᵏ γₙ₋ₖ",
            vec![index("n", 0, 8)],
            relaxed_from(5.0),
            |wb, p| wb.kernel_moment(Kernel::B, idx(p, "n") as u32),
            |wb, p| {
                let n = idx(p, "n");
                let bits = wb.config().bits();
                let f = bell_values(wb, even_zeta_args(wb, n)?)?;
                let mut acc = Float::new(bits);
                for (k, fk) in f.iter().enumerate() {
                    acc += binomial(bits, n, k) * fk * wb.stieltjes_oracle(n - k)? * sign(k);
                }
                Ok(acc)
            },
        ),
        rec(
            "EQ_2_6",
            "∫₁^∞ [log u − log(1+u)]/u du = Li₂(−1) = −½ζ(2)",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let d = Domain::semi_infinite(cfg.num(1), Decay::Algebraic(2.0))?;
                quad(
                    cfg,
                    |u: &Float| {
                        let inv = Float::with_val(bits, u.recip_ref());
                        Ok(-Float::with_val(bits, inv.ln_1p_ref()) * inv)
                    },
                    d,
                )
            },
            |wb, _| Ok(-wb.zeta_int(2)? / 2u32),
        ),
        rec(
            "EQ_2_7",
            "∫₀¹ (ψ(1+u) + γ)/u du + ∫₁^∞ (ψ(1+u) − log u)/u du = ζ(2) − γ₁",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let d = Domain::semi_infinite(cfg.num(1), Decay::Algebraic(2.0))?;
                // ψ(1+u) − log u = R(u) + 1/(2u).
                let tail = quad(
                    cfg,
                    |u: &Float| {
                        let half_inv = Float::with_val(bits, u.recip_ref()) / 2u32;
                        Ok((digamma_remainder(cfg, u)? + half_inv) / u)
                    },
                    d,
                )?;
                Ok(digamma_head(wb)? + tail)
            },
            |wb, _| Ok(wb.zeta_int(2)? - wb.stieltjes_oracle(1)?),
        ),
        rec(
            "EQ_2_8",
            "∫₀¹ (ψ(1+u) + γ)/u du = Σ log(n+1)/(n(n+1))",
            vec![],
            TolRule::Global,
            |wb, _| digamma_head(wb),
            |wb, _| cohen(wb),
        ),
        rec(
            "EQ_2_9_10",
            "form 9: ∫₁^∞ B log u = S + γ₁ − ½ζ(2); form 10: ∫₀¹ B log u = ½ζ(2) − S",
            vec![int("form", 9, 10, &[9.0, 10.0])],
            TolRule::Global,
            |wb, p| b_log_on(wb, p["form"] == 9.0),
            |wb, p| {
                let half_zeta2 = wb.zeta_int(2)? / 2u32;
                let s = cohen(wb)?;
                if p["form"] == 9.0 {
                    Ok(s + wb.stieltjes_oracle(1)? - half_zeta2)
                } else {
                    Ok(half_zeta2 - s)
                }
            },
        ),
        rec(
            "EQ_2_11_12",
            "∫₀¹ ψ′(1+u) log u du = −S (form 11) = −Σ (1/n) log((n+1)/n) (form 12)",
            vec![int("form", 11, 12, &[11.0, 12.0])],
            TolRule::Global,
            |wb, _| trigamma_log_head(wb),
            |wb, p| {
                if p["form"] == 11.0 {
                    Ok(-cohen(wb)?)
                } else {
                    Ok(-wb.cohen_routes()?.log_ratio)
                }
            },
        ),
        stieltjes_record(
            "EQ_2_13",
            "(−1)ⁿ(n+1)γₙ = Σ C(n+1,j) πⁿ⁻ʲ sin((n+1−j)π/2)(−1)ʲ ∫₀^∞ B logʲu du",
            StieltjesRoute::LeibnizSine,
        ),
        // Not an equation of its own: the triangular solve of EQ_2_5 for γₙ.
        stieltjes_record(
            "EQ_2_5_INVERSION",
            "γₙ from the triangular system of the B-kernel log-moments",
            StieltjesRoute::TriangularInversion,
        ),
    ]
}

/// ∫₀^∞ R(t+u) log t dt with R the digamma remainder.
fn remainder_log_integral(wb: &Workbench, u: &Float) -> Result<Float> {
    let cfg = wb.config();
    let bits = cfg.bits();
    let d = Domain::half_line(Decay::Algebraic(2.0))?.with_left_singularity(Singularity::LogPower(1));
    quad(
        cfg,
        |t: &Float| Ok(digamma_remainder(cfg, &Float::with_val(bits, t + u))? * ln(bits, t)),
        d,
    )
}

/// (½ − u)log²u + 2u log u − 2u, the elementary part of ζ″(0, u).
fn hurwitz_second_elementary(wb: &Workbench, u: &Float) -> Float {
    let bits = wb.config().bits();
    let l = ln(bits, u);
    let half_minus = Float::with_val(bits, 0.5f64 - u);
    let two_u = Float::with_val(bits, u * 2u32);
    half_minus * Float::with_val(bits, l.square_ref()) + Float::with_val(bits, &two_u * &l) - two_u
}

/// ζ″(0, u) with the J function.
fn hurwitz_second_by_j(wb: &Workbench, u: &Float) -> Result<Float> {
    let j = named_function_eval(wb.config(), NamedFunction::J, u)?;
    Ok(hurwitz_second_elementary(wb, u) - j * 2u32)
}

/// ζ″(0, u) with the digamma-remainder integral.
fn hurwitz_second_by_remainder(wb: &Workbench, u: &Float) -> Result<Float> {
    Ok(hurwitz_second_elementary(wb, u) + remainder_log_integral(wb, u)? * 2u32)
}

fn section_three() -> Vec<IdentityRecord> {
    let u3 = || positive("u", &[0.5, 1.0, 2.0]);
    vec![
        rec(
            "EQ_3_3",
            "Hermite's integral for ζ(s, u)",
            vec![
                ParamSpec {
                    name: "s",
                    domain: ParamDomain::Real {
                        min: -10.0,
                        max: 10.0,
                        exclude: &[1.0],
                    },
                    defaults: vec![2.0, 3.0],
                },
                u3(),
            ],
            TolRule::Global,
            |wb, p| hurwitz_hermite(wb.config(), &arg(wb, p, "s"), &arg(wb, p, "u")),
            |wb, p| hurwitz_em(wb.config(), &arg(wb, p, "s"), &arg(wb, p, "u")),
        ),
        rec(
            "EQ_3_5",
            "Binet's second formula for log Γ(u)",
            vec![positive("u", &[0.5, 1.0, 2.0, 5.0])],
            TolRule::Global,
            |wb, p| log_gamma_binet(wb.config(), &arg(wb, p, "u")),
            |wb, p| {
                let u = arg(wb, p, "u");
                Ok(Float::with_val(wb.config().bits(), u.ln_gamma_ref()))
            },
        ),
        rec(
            "LERCH",
            "ζ′(0, u) = log Γ(u) − ½log 2π",
            vec![positive("u", &[0.5, 1.0, 2.0, 5.0])],
            TolRule::Global,
            |wb, p| hurwitz_deriv0(wb.config(), &arg(wb, p, "u")),
            |wb, p| {
                let cfg = wb.config();
                Ok(ln_gamma(cfg, &arg(wb, p, "u"))? - cfg.ln_2pi() / 2u32)
            },
        ),
        rec(
            "EQ_3_6",
            "ζ″(0, u) = (½ − u)log²u + 2u log u − 2u − 2J(u)",
            vec![u3()],
            TolRule::Global,
            |wb, p| hurwitz_second_by_j(wb, &arg(wb, p, "u")),
            |wb, p| hurwitz_em_deriv(wb.config(), &wb.config().zero(), &arg(wb, p, "u"), 2),
        ),
        rec(
            "EQ_3_7",
            "∫₀^∞ log t/((t+u)² + x²) dt = log(u² + x²) arctan(x/u)/(2x)",
            vec![u3(), positive("x", &[0.7, 2.0])],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let u = arg(wb, p, "u");
                let x2 = Float::with_val(bits, arg(wb, p, "x").square_ref());
                let d = Domain::half_line(Decay::Algebraic(2.0))?.with_left_singularity(Singularity::LogPower(1));
                quad(
                    cfg,
                    |t: &Float| {
                        let v = Float::with_val(bits, t + &u).square() + &x2;
                        Ok(ln(bits, t) / v)
                    },
                    d,
                )
            },
            |wb, p| {
                let bits = wb.config().bits();
                let u = arg(wb, p, "u");
                let x = arg(wb, p, "x");
                let r2 = Float::with_val(bits, u.square_ref()) + Float::with_val(bits, x.square_ref());
                let angle = Float::with_val(bits, &x / &u).atan();
                Ok(r2.ln() * angle / (x * 2u32))
            },
        ),
        rec(
            "EQ_3_8",
            "ψ(u) = log u − 1/(2u) − 2∫₀^∞ x/((u²+x²)(e^{2πx}−1)) dx",
            vec![positive("u", &[0.5, 1.0, 3.0])],
            TolRule::Global,
            |wb, p| digamma(wb.config(), &arg(wb, p, "u")),
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let u = arg(wb, p, "u");
                let u2 = Float::with_val(bits, u.square_ref());
                let integral = bose_integral(cfg, |x: &Float| {
                    Ok(Float::with_val(bits, x / (Float::with_val(bits, x.square_ref()) + &u2)))
                })?;
                let half_inv = Float::with_val(bits, u.recip_ref()) / 2u32;
                Ok(ln(bits, &u) - half_inv - integral * 2u32)
            },
        ),
        rec(
            "EQ_3_10",
            "J(u) = −∫₀^∞ [ψ(t+u) − log(t+u) + 1/(2(t+u))] log t dt",
            vec![u3()],
            TolRule::Global,
            |wb, p| named_function_eval(wb.config(), NamedFunction::J, &arg(wb, p, "u")),
            |wb, p| Ok(-remainder_log_integral(wb, &arg(wb, p, "u"))?),
        ),
        rec(
            "EQ_3_11",
            "ζ″(0, u) by the digamma-remainder integral equals the J form",
            vec![u3()],
            TolRule::Global,
            |wb, p| hurwitz_second_by_remainder(wb, &arg(wb, p, "u")),
            |wb, p| hurwitz_second_by_j(wb, &arg(wb, p, "u")),
        ),
        rec(
            "EQ_3_12",
            "ζ″(0) = −2 + 2∫₀^∞ [ψ(t+1) − log(t+1) + 1/(2(t+1))] log t dt",
            vec![],
            TolRule::Global,
            |wb, _| hurwitz_second_by_remainder(wb, &wb.config().num(1)),
            |wb, _| wb.zeta_deriv0_oracle(2),
        ),
        rec(
            "EQ_3_13",
            "∫₀^∞ [log u − log(1+u) + 1/(1+u)] log u du = 1",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let cutoff = cfg.series_cutoff();
                let d = Domain::half_line(Decay::Algebraic(2.0))?.with_left_singularity(Singularity::LogPower(2));
                quad(
                    cfg,
                    |u: &Float| {
                        let bracket = if u.to_f64() >= LOG_SERIES_FROM {
                            // Σ_{k≥2} (−1)^{k+1}(k−1)/k · u^{−k}
                            let inv = Float::with_val(bits, u.recip_ref());
                            let mut pw = Float::with_val(bits, inv.square_ref());
                            let mut acc = cfg.zero();
                            for k in 2..MAX_SERIES_TERMS as u32 {
                                let t = Float::with_val(bits, &pw * (k - 1)) / k;
                                let small = t < cutoff;
                                if k % 2 == 0 {
                                    acc -= t;
                                } else {
                                    acc += t;
                                }
                                if small {
                                    break;
                                }
                                pw *= &inv;
                            }
                            acc
                        } else {
                            let up = Float::with_val(bits, u + 1u32);
                            ln(bits, u) - ln(bits, &up) + up.recip()
                        };
                        Ok(bracket * ln(bits, u))
                    },
                    d,
                )
            },
            |wb, _| Ok(wb.config().num(1)),
        ),
        rec(
            "EQ_3_13_1",
            "γ₁(u) = log u/(2u) − ½log²u + ∫₀^∞ [ψ′(t+u) − 1/(t+u) − 1/(2(t+u)²)] log t dt",
            vec![u3()],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let u = arg(wb, p, "u");
                let d = Domain::half_line(Decay::Algebraic(3.0))?.with_left_singularity(Singularity::LogPower(1));
                let integral = quad(
                    cfg,
                    |t: &Float| Ok(trigamma_remainder(cfg, &Float::with_val(bits, t + &u))? * ln(bits, t)),
                    d,
                )?;
                let l = ln(bits, &u);
                let first = Float::with_val(bits, &l / &u) / 2u32;
                Ok(first - l.square() / 2u32 + integral)
            },
            |wb, p| generalized_stieltjes(wb.config(), 1, &arg(wb, p, "u")),
        ),
        rec(
            "EQ_3_13_2",
            "γ₁(u) = −½log²u + ∫₀^∞ [ψ′(t+u) − 1/(t+u)] log t dt",
            vec![u3()],
            TolRule::Global,
            |wb, p| gamma1_of_u(wb, &arg(wb, p, "u")),
            |wb, p| generalized_stieltjes(wb.config(), 1, &arg(wb, p, "u")),
        ),
        rec(
            "EQ_3_13_3",
            "γ₁ = ∫₀^∞ [ψ′(t+1) − 1/(t+1)] log t dt",
            vec![],
            TolRule::Global,
            |wb, _| gamma1_of_u(wb, &wb.config().num(1)),
            |wb, _| wb.stieltjes_oracle(1),
        ),
        rec(
            "EQ_3_13_3_CHOI",
            "γ₁(u) from the two Bose-weight integrals equals the trigamma-integral form",
            vec![u3()],
            TolRule::Global,
            |wb, p| gamma1_bose(wb, &arg(wb, p, "u")),
            |wb, p| gamma1_of_u(wb, &arg(wb, p, "u")),
        ),
        rec(
            "JKH_ALGEBRA",
            "H(u) = 2[2K(u/2) log 2 + J(u/2) − J(u)]",
            vec![u3()],
            TolRule::Global,
            |wb, p| named_function_eval(wb.config(), NamedFunction::H, &arg(wb, p, "u")),
            |wb, p| {
                let cfg = wb.config();
                let u = arg(wb, p, "u");
                let half = Float::with_val(cfg.bits(), &u / 2u32);
                let k = named_function_eval(cfg, NamedFunction::K, &half)?;
                let j_half = named_function_eval(cfg, NamedFunction::J, &half)?;
                let j = named_function_eval(cfg, NamedFunction::J, &u)?;
                Ok((k * cfg.ln2() * 2u32 + j_half - j) * 2u32)
            },
        ),
        rec(
            "HPRIME_1",
            "2∫ arctan x/((1+x²)(e^{πx}+1)) − ∫ x log(1+x²)/((1+x²)(e^{πx}+1)) = γ₁ + γ log 2 − ½log²2",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let bits = cfg.bits();
                fermi_integral(cfg, |x: &Float| {
                    let r2 = Float::with_val(bits, x.square_ref()) + 1u32;
                    let a = Float::with_val(bits, x.atan_ref()) * 2u32;
                    let b = Float::with_val(bits, r2.ln_ref()) * x;
                    Ok((a - b) / r2)
                })
            },
            |wb, _| {
                let cfg = wb.config();
                let l2 = cfg.ln2();
                Ok(wb.stieltjes_oracle(1)? + euler(cfg) * &l2 - l2.square() / 2u32)
            },
        ),
        rec(
            "SE_INTEGRAL",
            "∫₀^∞ arctan x/((1+x²)(e^{πx}+1)) dx = π²/16 − ¼ − S/4",
            vec![],
            TolRule::Global,
            |wb, _| {
                let cfg = wb.config();
                let bits = cfg.bits();
                fermi_integral(cfg, |x: &Float| {
                    let r2 = Float::with_val(bits, x.square_ref()) + 1u32;
                    Ok(Float::with_val(bits, x.atan_ref()) / r2)
                })
            },
            |wb, _| {
                let cfg = wb.config();
                Ok(cfg.pi().square() / 16u32 - cfg.ratio(1, 4) - cohen(wb)? / 4u32)
            },
        ),
        rec(
            "EQ_3_14",
            "ψ(v) − log v + 1/(2v) = −2∫₀^∞ x/((1+x²)(e^{2πvx}−1)) dx",
            vec![positive("v", &[0.5, 1.0, 3.0])],
            TolRule::Global,
            |wb, p| digamma_remainder(wb.config(), &arg(wb, p, "v")),
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let rate = cfg.pi() * 2u32 * arg(wb, p, "v");
                let d = Domain::half_line(Decay::Exponential)?;
                let v = quad(
                    cfg,
                    |x: &Float| {
                        let denom = Float::with_val(bits, x * &rate).exp_m1();
                        let r2 = Float::with_val(bits, x.square_ref()) + 1u32;
                        Ok(Float::with_val(bits, x / denom) / r2)
                    },
                    d,
                )?;
                Ok(v * -2i32)
            },
        ),
        rec(
            "EQ_3_15",
            "∫₀^∞ log(1 − e^{−2πux})/(1+x²) dx = −2πu ∫₀^∞ arctan x/(e^{2πux}−1) dx",
            vec![u3()],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let rate = cfg.pi() * 2u32 * arg(wb, p, "u");
                let d = Domain::half_line(Decay::Exponential)?.with_left_singularity(Singularity::LogPower(1));
                quad(
                    cfg,
                    |x: &Float| {
                        let e = -Float::with_val(bits, -Float::with_val(bits, x * &rate)).exp_m1();
                        let r2 = Float::with_val(bits, x.square_ref()) + 1u32;
                        Ok(e.ln() / r2)
                    },
                    d,
                )
            },
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let rate = cfg.pi() * 2u32 * arg(wb, p, "u");
                let d = Domain::half_line(Decay::Exponential)?;
                let v = quad(
                    cfg,
                    |x: &Float| {
                        let denom = Float::with_val(bits, x * &rate).exp_m1();
                        Ok(Float::with_val(bits, x.atan_ref()) / denom)
                    },
                    d,
                )?;
                Ok(-v * rate)
            },
        ),
        rec(
            "EQ_3_16_17",
            "I(u) by quadrature equals the log Γ closed form (form 16) and −2K(u) (form 17)",
            vec![u3(), int("form", 16, 17, &[16.0, 17.0])],
            TolRule::Global,
            |wb, p| named_function_eval(wb.config(), NamedFunction::I, &arg(wb, p, "u")),
            |wb, p| {
                let cfg = wb.config();
                let u = arg(wb, p, "u");
                if p["form"] == 16.0 {
                    i_closed_form(cfg, &u)
                } else {
                    Ok(named_function_eval(cfg, NamedFunction::K, &u)? * -2i32)
                }
            },
        ),
        rec(
            "EQ_3_18",
            "∫₀^∞ [ψ′(t+u) − 1/(t+u)] dt = log u − ψ(u)",
            vec![u3()],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let u = arg(wb, p, "u");
                let d = Domain::half_line(Decay::Algebraic(2.0))?;
                quad(
                    cfg,
                    |t: &Float| constants::trigamma_minus_inverse(wb, &Float::with_val(bits, t + &u)),
                    d,
                )
            },
            |wb, p| {
                let cfg = wb.config();
                let u = arg(wb, p, "u");
                Ok(ln(cfg.bits(), &u) - digamma(cfg, &u)?)
            },
        ),
    ]
}

fn zeta_route_record(id: &'static str, description: &'static str, route: ZetaDerivRoute, from: i64) -> IdentityRecord {
    rec(
        id,
        description,
        vec![index("n", from, 10)],
        TolRule::Global,
        move |wb, p| zeta_deriv0(wb, idx(p, "n"), route),
        |wb, p| wb.zeta_deriv0_oracle(idx(p, "n")),
    )
}

/// −g(0), −g′(0), …: arguments of the Bell polynomials in the functional-equation route.
fn minus_g_args(wb: &Workbench, n: usize) -> Result<Vec<Float>> {
    (0..n).map(|i| g_deriv0(wb, i).map(|g| -g)).collect()
}

/// (1 + b_{j−1})(j−1)! for j = 1..n.
fn lehmer_args(wb: &Workbench, n: usize) -> Result<Vec<Float>> {
    let bits = wb.config().bits();
    (1..=n)
        .map(|j| Ok((lehmer_b(wb, j - 1)? + 1u32) * factorial(bits, j - 1)))
        .collect()
}

fn section_four() -> Vec<IdentityRecord> {
    vec![
        zeta_route_record(
            "EQ_4_1",
            "2ζ⁽ⁿ⁾(0) = Σ C(n,i) Yᵢ(−g(0), −g′(0), …) f⁽ⁿ⁻ⁱ⁾(0), including the i = n term f(0) = −1",
            ZetaDerivRoute::Functional,
            0,
        ),
        rec(
            "EQ_4_2",
            "nγₙ₋₁ = 2 Σ C(n,i) Yᵢ(g(0), g′(0), …) ζ⁽ⁿ⁻ⁱ⁾(0), ζ derivatives by the Lehmer route",
            vec![index("n", 1, 6)],
            TolRule::Global,
            |wb, p| {
                let n = idx(p, "n");
                Ok(wb.stieltjes_oracle(n - 1)? * n as u32)
            },
            |wb, p| {
                let n = idx(p, "n");
                let bits = wb.config().bits();
                let args = (0..n).map(|i| g_deriv0(wb, i)).collect::<Result<Vec<_>>>()?;
                let y = bell_values(wb, args)?;
                let mut acc = Float::new(bits);
                for (i, yi) in y.iter().enumerate() {
                    acc += binomial(bits, n, i) * yi * zeta_deriv0(wb, n - i, ZetaDerivRoute::Lehmer)?;
                }
                Ok(acc * 2u32)
            },
        ),
        rec(
            "EQ_4_6",
            "Y_{n+1}(−0!η₀, …, −n!ηₙ) = (−1)ⁿ(n+1)γₙ with η from Bell inversion",
            vec![index("n", 0, 8)],
            TolRule::AtMost(1e-30),
            |wb, p| {
                let n = idx(p, "n");
                let bits = wb.config().bits();
                let args = eta_table(wb, n)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, e)| -e * factorial(bits, k))
                    .collect();
                Ok(bell_values(wb, args)?.swap_remove(n + 1))
            },
            |wb, p| {
                let n = idx(p, "n");
                Ok(wb.stieltjes_oracle(n)? * (n as u32 + 1) * sign(n))
            },
        ),
        rec(
            "EQ_4_7",
            "Yₙ(−x₁, x₂, …, (−1)ⁿxₙ) = (−1)ⁿ Yₙ(x₁, …, xₙ) at xⱼ = −g⁽ʲ⁻¹⁾(0)",
            vec![index("n", 1, 10)],
            TolRule::Global,
            |wb, p| {
                let n = idx(p, "n");
                let alt = minus_g_args(wb, n)?
                    .into_iter()
                    .enumerate()
                    .map(|(j, x)| x * sign(j + 1))
                    .collect();
                Ok(bell_values(wb, alt)?.swap_remove(n))
            },
            |wb, p| {
                let n = idx(p, "n");
                Ok(bell_values(wb, minus_g_args(wb, n)?)?.swap_remove(n) * sign(n))
            },
        ),
        rec(
            "EQ_4_8",
            "Yₙ(x + y) = Σ C(n,i) Yᵢ(y) Yₙ₋ᵢ(x) at x = even zeta arguments, y = −g derivatives",
            vec![index("n", 1, 8)],
            TolRule::Global,
            |wb, p| {
                let n = idx(p, "n");
                let sum = even_zeta_args(wb, n)?
                    .into_iter()
                    .zip(minus_g_args(wb, n)?)
                    .map(|(x, y)| x + y)
                    .collect();
                Ok(bell_values(wb, sum)?.swap_remove(n))
            },
            |wb, p| {
                let n = idx(p, "n");
                let bits = wb.config().bits();
                let yx = bell_values(wb, even_zeta_args(wb, n)?)?;
                let yy = bell_values(wb, minus_g_args(wb, n)?)?;
                let mut acc = Float::new(bits);
                for i in 0..=n {
                    acc += binomial(bits, n, i) * &yy[i] * &yx[n - i];
                }
                Ok(acc)
            },
        ),
        rec(
            "EQ_4_9_21",
            "(−1)ⁿ⁺¹Yₙ(dⱼ(j−1)!) with dⱼ = (−1)ʲ(1 + bⱼ₋₁) equals −Yₙ((1 + bⱼ₋₁)(j−1)!)",
            vec![index("n", 1, 10)],
            TolRule::Global,
            |wb, p| {
                let n = idx(p, "n");
                let args = lehmer_args(wb, n)?
                    .into_iter()
                    .enumerate()
                    .map(|(j, x)| x * sign(j + 1))
                    .collect();
                Ok(bell_values(wb, args)?.swap_remove(n) * sign(n + 1))
            },
            |wb, p| {
                let n = idx(p, "n");
                Ok(-bell_values(wb, lehmer_args(wb, n)?)?.swap_remove(n))
            },
        ),
        rec(
            "EQ_4_11_17",
            "σₙ from ηₙ₋₁ equals −bₙ₋₁ − (−1)ⁿ2⁻ⁿζ(n) with b from the ζ⁽ᵐ⁾(0) inversion",
            vec![index("n", 2, 10)],
            TolRule::AtMost(1e-20),
            |wb, p| sigma(wb, idx(p, "n")),
            |wb, p| {
                let n = idx(p, "n");
                let b = lehmer_b_by_inversion(wb, n - 1)?.swap_remove(n - 1);
                sigma_from_lehmer(wb, n, &b)
            },
        ),
        rec(
            "EQ_4_12_18",
            "dₙ from its defining combination equals (−1)ⁿ(1 + bₙ₋₁)",
            vec![index("n", 2, 10)],
            TolRule::AtMost(1e-20),
            |wb, p| d_n(wb, idx(p, "n")),
            |wb, p| d_n_lehmer(wb, idx(p, "n")),
        ),
        zeta_route_record(
            "EQ_4_19",
            "2ζ⁽ⁿ⁾(0) = (−1)ⁿ⁺¹ Yₙ((−1)ʲ(1 + bⱼ₋₁)(j−1)!)",
            ZetaDerivRoute::Lehmer,
            1,
        ),
        zeta_route_record(
            "EQ_4_24",
            "ζ⁽ⁿ⁺¹⁾(0) = Σ C(n,i) i! ζ⁽ⁿ⁻ⁱ⁾(0)(1 + bᵢ), from ζ(0) = −½",
            ZetaDerivRoute::Recurrence,
            1,
        ),
        rec(
            "ETA_1",
            "η₁ = γ² + 2γ₁",
            vec![],
            TolRule::Global,
            |wb, _| eta(wb, 1),
            |wb, _| Ok(wb.stieltjes_oracle(0)?.square() + wb.stieltjes_oracle(1)? * 2u32),
        ),
        rec(
            "F_SERIES",
            "f(s) = sζ(1−s): f(0) = −1 and f⁽ᵏ⁾(0) = kγₖ₋₁, by differences",
            vec![index("k", 0, 3)],
            TolRule::Global,
            |wb, p| {
                let cfg = wb.config();
                let bits = cfg.bits();
                let f = |s: &Float| Ok(-zeta_times_pole(cfg, &Float::with_val(bits, 1u32 - s))?);
                Ok(derivative(&f, &cfg.zero(), idx(p, "k") as u32, &cfg.num(FD_STEP))?.value)
            },
            |wb, p| {
                let k = idx(p, "k");
                if k == 0 {
                    Ok(wb.config().num(-1))
                } else {
                    Ok(wb.stieltjes_oracle(k - 1)? * k as u32)
                }
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{catalog_ids, evaluate_identity};

    #[test]
    fn ids_are_unique() {
        let mut ids = catalog_ids();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn bose_bracket_series_meets_direct_form() {
        let cfg = PrecisionConfig::default();
        let y = cfg.num(BOSE_SERIES_BELOW);
        let below = bose_bracket(&cfg, &Float::with_val(cfg.bits(), &y - 1e-30));
        let direct = Float::with_val(cfg.bits(), y.exp_m1_ref()).recip() - Float::with_val(cfg.bits(), y.recip_ref());
        assert!(Float::with_val(cfg.bits(), below - direct).abs() < 1e-28);
    }

    #[test]
    fn every_identity_passes_at_defaults() {
        let wb = Workbench::new(PrecisionConfig::default()).unwrap();
        for id in catalog_ids() {
            let r = evaluate_identity(&wb, id, &Params::new(), 1e-8).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(r.pass, "{id} at {:?}: {} vs {}", r.params, r.lhs_value, r.rhs_value);
        }
    }
}
