use std::fs;
use std::path::Path;

use eulerian_core::convexity::{
    check_q_log_convex, check_strong_q_log_convex, transform, transform_preserves_lcx, zhu_criterion, BuiltinSeq,
    Triangle,
};
use eulerian_core::families::{EnumerationCache, Enumerator, EulerParams, FamilySpec};
use eulerian_core::jacobi::required_depth;
use eulerian_core::riordan::{production_matrix_direct, production_matrix_formula, ProductionMatrix};
use eulerian_core::{Error, QPoly, QRatFun};
use serde_json::{json, Value};

use crate::formats;
use crate::text;
use crate::{Mode, ProdRoute, Report, Route, Status, TriangleArg, UsageError, NMAX_CAP, PRODMAT_ORDER_CAP};

fn family_json(spec: &FamilySpec) -> Value {
    let EulerParams { a, b, d } = spec.params();
    json!({
        "family": spec.name().as_str(),
        "t": spec.t().map(formats::rational),
        "a": spec.a().map(formats::rational),
        "d": spec.d().map(formats::rational),
        "params": { "a": formats::rational(&a), "b": formats::rational(&b), "d": formats::rational(&d) },
    })
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn ensure_range(name: &str, value: usize, min: usize, max: usize) -> Result<(), UsageError> {
    if value < min || value > max {
        return Err(UsageError(format!("--{name} must lie in {min}..={max}, got {value}")));
    }
    Ok(())
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Egf => "egf",
        Route::Cfrac => "cfrac",
        Route::Enum => "enum",
        Route::Recurrence => "recurrence",
    }
}

pub(crate) fn rows_by_route(
    spec: &FamilySpec,
    nmax: usize,
    route: Route,
    cache: &mut EnumerationCache,
) -> Result<Vec<QPoly>, UsageError> {
    let params = spec.params();
    Ok(match route {
        Route::Egf => params.egf(nmax)?,
        Route::Cfrac => params.jfraction(required_depth(nmax)).moments_cfrac(nmax)?.into_vec(),
        Route::Enum => {
            let cap = cache
                .cap(spec.name())
                .ok_or_else(|| UsageError(format!("{} has no enumeration route", spec.name())))?;
            if nmax > cap + 1 {
                return Err(UsageError(format!(
                    "enumeration of {} stops at n = {cap}; use --nmax {} or raise the cap",
                    spec.name(),
                    cap + 1
                )));
            }
            (0..nmax).map(|n| cache.enumerate(spec, n)).collect::<Result<_, _>>()?
        }
        Route::Recurrence => (0..nmax).map(|n| spec.recurrence(n)).collect::<Result<_, _>>()?,
    })
}

pub(crate) fn table(spec: &FamilySpec, nmax: usize, route: Route, limits: Enumerator) -> Result<Report, UsageError> {
    ensure_range("nmax", nmax, 1, NMAX_CAP)?;
    let rows = rows_by_route(spec, nmax, route, &mut EnumerationCache::new(limits))?;
    let config = with(
        family_json(spec),
        json!({
            "nmax": nmax,
            "route": route_name(route),
            "max_symmetric": limits.max_symmetric,
            "max_signed": limits.max_signed,
        }),
    );
    let text_rows: Vec<Vec<String>> = rows
        .iter()
        .enumerate()
        .map(|(n, p)| vec![n.to_string(), p.to_string()])
        .collect();
    Ok(Report {
        command: "table",
        status: Status::Ok,
        result: with(family_json(spec), json!({ "route": route_name(route), "rows": formats::polys(&rows) })),
        text: format!("{spec} via {}\n{}", route_name(route), text::table(&["n", "T_n(q)"], &text_rows)),
        config,
    })
}

pub(crate) fn cfrac(spec: &FamilySpec, depth: usize, moments: Option<usize>) -> Result<Report, UsageError> {
    ensure_range("depth", depth, 1, NMAX_CAP)?;
    let jf = spec.params().jfraction(depth);
    let mut result = with(family_json(spec), formats::jfraction(&jf));
    let mut text_rows: Vec<Vec<String>> = (0..depth)
        .map(|i| {
            let t = if i == 0 { String::new() } else { jf.t()[i - 1].to_string() };
            vec![i.to_string(), jf.s()[i].to_string(), t]
        })
        .collect();
    let mut text = format!("{spec}\n{}", text::table(&["i", "s_i", "t_i"], &text_rows));
    if let Some(n) = moments {
        ensure_range("moments", n, 1, 2 * depth)?;
        let mu = jf.moments_motzkin(n)?;
        result = with(result, formats::moments(&mu));
        text_rows = mu.mu().iter().enumerate().map(|(k, m)| vec![k.to_string(), m.to_string()]).collect();
        text.push_str(&text::table(&["n", "mu_n"], &text_rows));
    }
    Ok(Report {
        command: "cfrac",
        status: Status::Ok,
        config: with(family_json(spec), json!({ "depth": depth, "moments": moments })),
        result,
        text,
    })
}

fn band_text(f: &QRatFun) -> String {
    match f.as_poly() {
        Some(p) => p.to_string(),
        None => format!("({}) / ({})", f.num(), f.den()),
    }
}

pub(crate) fn prodmat(spec: &FamilySpec, order: usize, route: ProdRoute, full: bool) -> Result<Report, UsageError> {
    ensure_range("order", order, 2, PRODMAT_ORDER_CAP)?;
    let riordan = spec.params().riordan(order)?;
    let (route_name, pm): (&str, ProductionMatrix) = match route {
        ProdRoute::Direct => ("direct", production_matrix_direct(&riordan.matrix())?),
        ProdRoute::Formula => {
            let (c, r) = riordan.c_and_r()?;
            ("formula", production_matrix_formula(&c, &r, order - 1)?)
        }
    };
    let s = pm.diagonal();
    let t = pm.subdiagonal();
    let mut result = with(
        family_json(spec),
        json!({
            "route": route_name,
            "s": s.iter().map(formats::ratfun_compact).collect::<Vec<_>>(),
            "t": t.iter().map(formats::ratfun_compact).collect::<Vec<_>>(),
            "tridiagonal": pm.is_tridiagonal(),
        }),
    );
    if full {
        let entries: Vec<Value> = pm
            .entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(formats::ratfun).collect()))
            .collect();
        result = with(result, json!({ "matrix": entries }));
    }
    let rows: Vec<Vec<String>> = (0..s.len())
        .map(|i| {
            let ti = if i == 0 { String::new() } else { band_text(&t[i - 1]) };
            vec![i.to_string(), band_text(&s[i]), ti]
        })
        .collect();
    Ok(Report {
        command: "prodmat",
        status: Status::Ok,
        config: with(family_json(spec), json!({ "order": order, "route": route_name, "full": full })),
        result,
        text: format!(
            "{spec} via {route_name}, tridiagonal: {}\n{}",
            pm.is_tridiagonal(),
            text::table(&["i", "s_i", "t_i"], &rows)
        ),
    })
}

pub(crate) fn check(spec: &FamilySpec, nmax: usize, mode: Mode) -> Result<Report, UsageError> {
    let params = spec.params();
    let mode_name = match mode {
        Mode::Qlcx => "qlcx",
        Mode::Strong => "strong",
        Mode::Zhu => "zhu",
    };
    let config = with(family_json(spec), json!({ "nmax": nmax, "mode": mode_name }));
    let (report, extra, extra_text) = match mode {
        Mode::Qlcx | Mode::Strong => {
            ensure_range("nmax", nmax, 3, NMAX_CAP)?;
            let seq = params.egf(nmax)?;
            let report = if mode == Mode::Qlcx {
                check_q_log_convex(&seq)?
            } else {
                check_strong_q_log_convex(&seq)?
            };
            (report, json!({}), String::new())
        }
        Mode::Zhu => {
            // i_max = nmax; the J-fraction must reach s_{nmax+1}
            ensure_range("nmax", nmax, 1, 10 * NMAX_CAP)?;
            let zhu = zhu_criterion(&params.jfraction(nmax + 2), nmax)?;
            let extra = json!({
                "hypothesis_nonneg": zhu.hypothesis_nonneg,
                "gap_at_zero": formats::poly(&zhu.gap_at_zero),
            });
            let extra_text = format!(
                "s_i, t_i nonnegative: {}\ns_0 s_1 - t_1 = {}\n",
                zhu.hypothesis_nonneg, zhu.gap_at_zero
            );
            (zhu.report, extra, extra_text)
        }
    };
    Ok(Report {
        command: "check",
        status: Status::from_pass(report.verdict()),
        result: with(
            with(family_json(spec), json!({ "mode": mode_name, "report": formats::report(&report) })),
            extra,
        ),
        text: format!("{spec} {mode_name}\n{}{extra_text}", text::report(&report)),
        config,
    })
}

fn load_sequence(seq: &str) -> Result<Vec<eulerian_core::Rational>, UsageError> {
    let raw = fs::read_to_string(seq).map_err(|e| {
        let names: Vec<_> = BuiltinSeq::ALL.iter().map(|s| s.as_str()).collect();
        UsageError(format!("{seq:?} is neither a builtin ({}) nor a readable file: {e}", names.join(", ")))
    })?;
    let value: Value = serde_json::from_str(&raw).map_err(|e| UsageError(format!("{seq}: {e}")))?;
    let array = value.get("x").unwrap_or(&value);
    Ok(formats::rationals_from_json(array).map_err(|e| format!("{seq}: {e}"))?)
}

pub(crate) fn conjecture(triangle: TriangleArg, seq: &str, nmax: usize) -> Result<Report, UsageError> {
    ensure_range("nmax", nmax, 1, eulerian_core::convexity::TRANSFORM_MAX_N)?;
    let (triangle, tri_name) = match triangle {
        TriangleArg::A => (Triangle::EulerianA, "A"),
        TriangleArg::B => (Triangle::EulerianB, "B"),
    };
    let x = match BuiltinSeq::from_name(seq) {
        Some(builtin) => builtin.terms(nmax + 1),
        None => load_sequence(seq)?,
    };
    if x.len() < nmax + 1 {
        return Err(UsageError(format!("--nmax {nmax} needs {} terms, the sequence has {}", nmax + 1, x.len())));
    }
    let x = &x[..=nmax];
    let report = transform_preserves_lcx(triangle, x, nmax).map_err(|e| match e {
        Error::NotLogConvex { index } => UsageError(format!("input is not log-convex at index {index}")),
        other => other.into(),
    })?;
    let z = transform(triangle, x, nmax)?;
    let rows: Vec<Vec<String>> = x
        .iter()
        .zip(&z)
        .enumerate()
        .map(|(n, (xn, zn))| vec![n.to_string(), xn.to_string(), zn.to_string()])
        .collect();
    Ok(Report {
        command: "conjecture",
        status: Status::from_pass(report.verdict()),
        config: json!({ "triangle": tri_name, "seq": seq, "nmax": nmax }),
        result: json!({
            "triangle": tri_name,
            "seq": seq,
            "x": formats::rationals(x),
            "z": formats::rationals(&z),
            "report": formats::report(&report),
        }),
        text: format!(
            "triangle {tri_name}, input {seq}\n{}{}",
            text::table(&["n", "x_n", "z_n"], &rows),
            text::report(&report)
        ),
    })
}

pub(crate) fn invert_moments(input: &Path, depth: Option<usize>) -> Result<Report, UsageError> {
    let raw = fs::read_to_string(input).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
    let value: Value = serde_json::from_str(&raw).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
    let mu = formats::moments_from_json(&value).map_err(|e| format!("{}: {e}", input.display()))?;
    let depth = depth.unwrap_or(mu.len() / 2);
    let config = json!({ "input": input.display().to_string(), "depth": depth });
    match mu.to_jfraction_depth(depth) {
        Ok(jf) => {
            let rows: Vec<Vec<String>> = (0..jf.depth())
                .map(|i| {
                    let t = if i == 0 { String::new() } else { jf.t()[i - 1].to_string() };
                    vec![i.to_string(), jf.s()[i].to_string(), t]
                })
                .collect();
            Ok(Report {
                command: "invert-moments",
                status: Status::Ok,
                config,
                result: with(json!({ "depth": depth }), formats::jfraction(&jf)),
                text: text::table(&["i", "s_i", "t_i"], &rows),
            })
        }
        Err(e @ (Error::NotQuasiDefinite { .. } | Error::NotPolynomial { .. })) => Ok(Report {
            command: "invert-moments",
            status: Status::CheckFailed,
            config,
            result: json!({ "depth": depth, "error": e.to_string() }),
            text: format!("no J-fraction: {e}\n"),
        }),
        Err(e) => Err(e.into()),
    }
}
