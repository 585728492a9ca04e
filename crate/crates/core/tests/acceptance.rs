//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! Every comparison is exact. Runtime budgets are enforced per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eulerian_core::algebra::{rat, ratio};
use eulerian_core::convexity::{
    check_q_log_convex, check_strong_q_log_convex, symbolic_gap, transform_preserves_lcx, zhu_criterion, BuiltinSeq,
    Triangle, Witness,
};
use eulerian_core::families::{
    eulerian_b_numbers, eulerian_b_poly_rec, general_eulerian, EnumerationCache, EulerParams, Enumerator, FamilyName,
    FamilySpec,
};
use eulerian_core::jacobi::{required_depth, JFraction, MomentSeq};
use eulerian_core::riordan::{production_matrix_direct, production_matrix_formula};
use eulerian_core::{Error, QPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, runtime budget in seconds, body.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: eulerian_core::Result<T>, ctx: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

fn t_values() -> [Rational; 5] {
    [rat(0), rat(1), rat(2), ratio(1, 2), rat(3)]
}

fn family_grid() -> Vec<FamilySpec> {
    let mut out = vec![FamilySpec::type_a_shifted(), FamilySpec::type_a(), FamilySpec::type_b()];
    for t in t_values() {
        out.push(FamilySpec::type_a_qt(t.clone()));
        out.push(FamilySpec::type_b_qt(t));
    }
    for (a, d) in [(1, 1), (1, 2), (1, 3), (2, 5), (0, 1)] {
        out.push(FamilySpec::general(rat(a), rat(d)));
    }
    out
}

fn poly(c0: Rational, c1: Rational) -> QPoly {
    QPoly::from_coeffs(vec![c0, c1])
}

fn ints(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

fn criterion_1() -> Outcome {
    let n = 12;
    let grid = family_grid();
    for spec in &grid {
        let params = spec.params();
        let egf = ok(params.egf(n), spec)?;
        ensure!(egf.len() == n, "{spec}: {} EGF coefficients", egf.len());
        let jf = params.jfraction(required_depth(n));
        let motzkin = ok(jf.moments_motzkin(n), spec)?;
        let cfrac = ok(jf.moments_cfrac(n), spec)?;
        for (k, ((m, c), e)) in motzkin.mu().iter().zip(cfrac.mu()).zip(&egf).enumerate() {
            ensure!(m == e, "{spec}: mu_{k} = {m} but EGF gives {e}");
            ensure!(c == e, "{spec}: continued fraction term {k} differs");
        }
    }
    Ok(format!("{} instances, n = 0..{}", grid.len(), n - 1))
}

fn criterion_2() -> Outcome {
    let order = 10;
    for spec in family_grid() {
        let EulerParams { a, b, d } = spec.params();
        let riordan = ok(spec.params().riordan(order), &spec)?;
        let direct = ok(production_matrix_direct(&riordan.matrix()), &spec)?;
        let (c, r) = ok(riordan.c_and_r(), &spec)?;
        let formula = ok(production_matrix_formula(&c, &r, direct.rows()), &spec)?;
        ensure!(direct == formula, "{spec}: direct and formula production matrices differ");
        ensure!(direct.is_tridiagonal(), "{spec}: production matrix is not tridiagonal");
        let jf = ok(direct.to_jfraction(), &spec)?;
        for i in 0..=7 {
            let di = &d * rat(i);
            let s = poly(&di + &a * &b, &di + &b * &d - &a * &b);
            ensure!(jf.s()[i as usize] == s, "{spec}: s_{i} = {} expected {s}", jf.s()[i as usize]);
            if i >= 1 {
                let t = QPoly::monomial(&d * &d * rat(i) * (rat(i - 1) + &b), 1);
                ensure!(jf.t()[i as usize - 1] == t, "{spec}: t_{i} = {} expected {t}", jf.t()[i as usize - 1]);
            }
        }
    }
    Ok(format!("N = {order}, window {}x{}", order - 1, order))
}

fn criterion_3() -> Outcome {
    for spec in family_grid() {
        let params = spec.params();
        let l = ok(params.riordan(8), &spec)?.matrix();
        let inverse = ok(l.inverse(), &spec)?;
        let basis = ok(params.jfraction(8).orthopoly(8), &spec)?;
        ensure!(basis.matrix() == &inverse, "{spec}: orthogonal polynomial matrix differs from L^-1");
        let mu = ok(params.jfraction(6).moments_motzkin(11), &spec)?;
        let six = ok(params.jfraction(6).orthopoly(6), &spec)?;
        ensure!(ok(six.check_orthogonality(&mu), &spec)?, "{spec}: orthogonality fails at N = 6");
    }
    Ok("rows 0..7, orthogonality at N = 6".into())
}

fn criterion_4() -> Outcome {
    let limits = Enumerator::default();
    ensure!(ok(limits.descents_a(3), "S_3")? == ints(&[1, 4, 1]), "S_3 descent polynomial");
    ensure!(ok(limits.signed(2, &rat(1)), "B_2")? == ints(&[1, 6, 1]), "B_2 polynomial");
    ensure!(eulerian_b_numbers(3) == [1, 23, 23, 1].map(Into::into), "B row at n = 3");

    let mut compared = 0usize;
    let mut cache = EnumerationCache::new(limits);
    for spec in family_grid() {
        let params = spec.params();
        let cap = cache.cap(spec.name()).unwrap_or(10);
        let egf = ok(params.egf(cap + 1), &spec)?;
        let cfrac = ok(params.jfraction(required_depth(cap + 1)).moments_cfrac(cap + 1), &spec)?;
        for (n, (e, c)) in egf.iter().zip(cfrac.mu()).enumerate() {
            let (label, route) = match spec.name() {
                FamilyName::General => ("recurrence", general_eulerian(n, spec.a().unwrap(), spec.d().unwrap())),
                _ => ("enumeration", ok(cache.enumerate(&spec, n), &spec)?),
            };
            ensure!(&route == e, "{spec}, n = {n}: {label} gives {route}, EGF gives {e}");
            ensure!(&route == c, "{spec}, n = {n}: {label} differs from continued fraction");
            compared += 1;
        }
    }
    Ok(format!("{compared} polynomials compared three ways"))
}

fn criterion_5() -> Outcome {
    let egf = ok(EulerParams::from_ints(1, 1, 2).egf(11), "TypeB")?;
    for (n, expected) in egf.iter().enumerate() {
        let numbers = QPoly::from_coeffs(eulerian_b_numbers(n).into_iter().map(Rational::from_integer).collect());
        ensure!(&numbers == expected, "n = {n}: B numbers give {numbers}, EGF gives {expected}");
        let rec = eulerian_b_poly_rec(n);
        ensure!(&rec == expected, "n = {n}: differential recurrence gives {rec}, EGF gives {expected}");
    }
    Ok("n = 0..10".into())
}

fn criterion_6() -> Outcome {
    let mut instances = 0;
    for spec in family_grid() {
        let params = spec.params();
        if !params.in_convex_range() {
            continue;
        }
        instances += 1;
        let first = ok(params.egf(10), &spec)?;
        let strong = ok(check_strong_q_log_convex(&first), &spec)?;
        ensure!(strong.verdict(), "{spec}: strong q-log-convexity fails at {:?}", strong.witnesses());
        let zhu = ok(zhu_criterion(&params.jfraction(52), 50), &spec)?;
        ensure!(zhu.report.verdict(), "{spec}: Zhu criterion fails at {:?}", zhu.report.witnesses());
        ensure!(zhu.hypothesis_nonneg, "{spec}: s_i or t_i has a negative coefficient");
    }
    let values = [rat(0), rat(1), rat(2), ratio(1, 2), rat(3)];
    let bs = [rat(0), rat(1), rat(2), ratio(1, 2), rat(5)];
    let mut gaps = 0;
    for a in &values {
        for d in values.iter().filter(|d| *d >= a) {
            for b in &bs {
                let params = EulerParams::new(a.clone(), b.clone(), d.clone());
                for i in 0..=50 {
                    let gap = symbolic_gap(i, &params);
                    ensure!(gap.gap.is_nonneg(), "gap negative at {params:?}, i = {i}: {}", gap.gap);
                    gaps += 1;
                }
            }
        }
    }
    Ok(format!("{instances} family instances, {gaps} symbolic gaps"))
}

fn random_poly(rng: &mut ChaCha8Rng) -> QPoly {
    let deg = rng.gen_range(0..=2);
    QPoly::from_coeffs(
        (0..=deg)
            .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect(),
    )
}

fn random_jfraction(rng: &mut ChaCha8Rng, depth: usize) -> JFraction {
    let s = (0..depth).map(|_| random_poly(rng)).collect();
    let t = (1..depth)
        .map(|_| loop {
            let p = random_poly(rng);
            if !p.is_zero() {
                break p;
            }
        })
        .collect();
    JFraction::new(s, t).expect("lengths match")
}

fn round_trip(jf: &JFraction, ctx: impl std::fmt::Display) -> Result<(), String> {
    let mu = ok(jf.moments_motzkin(2 * jf.depth()), &ctx)?;
    let back = ok(mu.to_jfraction_depth(jf.depth()), &ctx)?;
    ensure!(&back == jf, "{ctx}: moments -> J-fraction does not invert");
    Ok(())
}

fn criterion_7() -> Outcome {
    let depth = 6;
    let mut families = 0;
    for spec in family_grid() {
        let jf = spec.params().jfraction(depth);
        // t_1 = d^2 b q vanishes when b = 0; the functional is then degenerate
        if jf.t().iter().any(QPoly::is_zero) {
            continue;
        }
        round_trip(&jf, &spec)?;
        families += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..20 {
        round_trip(&random_jfraction(&mut rng, depth), format!("random J-fraction #{k}"))?;
    }
    Ok(format!("{families} family J-fractions, 20 random, depth {depth}"))
}

fn criterion_8() -> Outcome {
    let report = ok(check_q_log_convex(&[ints(&[1]), ints(&[1, 1]), ints(&[1])]), "(1, 1+q, 1)")?;
    ensure!(!report.verdict(), "(1, 1+q, 1) accepted");
    ensure!(
        report.witnesses().iter().map(|w| (w.m, w.n)).eq([(1, 1)]),
        "unexpected witnesses {:?}",
        report.witnesses()
    );

    let jf = JFraction::new(vec![ints(&[1]), ints(&[1]), ints(&[1])], vec![ints(&[1]), ints(&[2, 2])])
        .map_err(|e| e.to_string())?;
    let zhu = ok(zhu_criterion(&jf, 1), "Zhu counterexample")?;
    ensure!(
        zhu.report.witnesses() == [Witness { m: 1, n: 1, coeff_index: Some(0) }],
        "Zhu counterexample not rejected: {:?}",
        zhu.report.witnesses()
    );

    let mu = MomentSeq::new(vec![QPoly::one(), QPoly::zero(), QPoly::zero(), QPoly::zero(), QPoly::zero(), QPoly::zero()]);
    match mu.to_jfraction_depth(3) {
        Err(Error::NotQuasiDefinite { .. }) => {}
        other => return Err(format!("mu = (1, 0, 0, ...) gave {other:?}")),
    }
    Ok("3 controls rejected".into())
}

fn criterion_9() -> Outcome {
    let n_max = 12;
    let mut summary = Vec::new();
    for triangle in [Triangle::EulerianA, Triangle::EulerianB] {
        for seq in BuiltinSeq::ALL {
            let x = seq.terms(n_max + 1);
            let first = ok(transform_preserves_lcx(triangle, &x, n_max), seq.as_str())?;
            let second = ok(transform_preserves_lcx(triangle, &x, n_max), seq.as_str())?;
            ensure!(first == second, "{triangle:?}/{}: runs differ", seq.as_str());
            let tag = if triangle == Triangle::EulerianA { "A" } else { "B" };
            let witnesses: Vec<usize> = first.witnesses().iter().map(|w| w.n).collect();
            summary.push(if first.verdict() {
                format!("{tag}/{}=lcx", seq.as_str())
            } else {
                format!("{tag}/{}=fails@{witnesses:?}", seq.as_str())
            });
        }
    }
    Ok(summary.join(" "))
}

fn main() -> ExitCode {
    // silence the default hook; panics are reported as failures below
    panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 9] = [
        ("moments equal EGF coefficients", 30, criterion_1),
        ("production matrices", 30, criterion_2),
        ("orthogonal polynomials invert the Riordan array", 30, criterion_3),
        ("combinatorial three-way agreement", 120, criterion_4),
        ("type-B recurrences", 5, criterion_5),
        ("strong q-log-convexity instances", 30, criterion_6),
        ("moment inversion round-trip", 30, criterion_7),
        ("negative controls", 30, criterion_8),
        ("transformation experiment", 30, criterion_9),
    ];
    let mut failures = 0;
    for (index, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("exceeded {budget}s budget"))
            } else {
                Ok(detail)
            }
        });
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS ({secs:.2}s) {name}: {detail}", index + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {} FAIL ({secs:.2}s) {name}: {reason}", index + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
