//! EGF, continued fraction and enumeration (or the general recurrence)
//! compared for every family at the configured caps.

use eulerian_core::algebra::{rat, ratio};
use eulerian_core::families::{t_zero_comparison, EnumerationCache, Enumerator, FamilySpec};
use eulerian_core::jacobi::{required_depth, JFraction};
use eulerian_core::{QPoly, Rational};
use serde_json::{json, Value};

use crate::commands::rows_by_route;
use crate::formats;
use crate::text;
use crate::{Report, Route, Status, UsageError, GENERAL_SELFTEST_CAP};

fn families() -> Vec<FamilySpec> {
    let ts: [Rational; 5] = [rat(0), rat(1), rat(2), ratio(1, 2), rat(3)];
    let mut out = vec![FamilySpec::type_a_shifted(), FamilySpec::type_a()];
    out.extend(ts.iter().cloned().map(FamilySpec::type_a_qt));
    out.push(FamilySpec::type_b());
    out.extend(ts.iter().cloned().map(FamilySpec::type_b_qt));
    for (a, d) in [(1, 1), (1, 2), (1, 3), (2, 5), (0, 1)] {
        out.push(FamilySpec::general(rat(a), rat(d)));
    }
    out
}

/// Continued-fraction moments, with `t_1` negated when `fault` is set.
fn cfrac_rows(spec: &FamilySpec, len: usize, fault: bool) -> Result<Vec<QPoly>, UsageError> {
    let mut jf = spec.params().jfraction(required_depth(len));
    if fault && jf.depth() > 1 {
        let mut t = jf.t().to_vec();
        t[0] = -&t[0];
        jf = JFraction::new(jf.s().to_vec(), t)?;
    }
    Ok(jf.moments_cfrac(len)?.into_vec())
}

struct Line {
    family: String,
    pair: String,
    passes: Vec<bool>,
}

pub fn selftest(limits: Enumerator, inject_fault: bool) -> Result<Report, UsageError> {
    let mut cache = EnumerationCache::new(limits);
    let mut cells = Vec::new();
    let mut lines = Vec::new();
    for spec in families() {
        let (third, cap) = match cache.cap(spec.name()) {
            Some(cap) => (Route::Enum, cap),
            None => (Route::Recurrence, GENERAL_SELFTEST_CAP),
        };
        let len = cap + 1;
        let egf = rows_by_route(&spec, len, Route::Egf, &mut cache)?;
        let cfrac = cfrac_rows(&spec, len, inject_fault)?;
        let other = rows_by_route(&spec, len, third, &mut cache)?;
        let third_name = if third == Route::Enum { "enum" } else { "recurrence" };
        let pairs = [
            ("egf=cfrac".to_string(), &egf, &cfrac),
            (format!("egf={third_name}"), &egf, &other),
            (format!("cfrac={third_name}"), &cfrac, &other),
        ];
        for (pair, left, right) in pairs {
            let passes: Vec<bool> = left.iter().zip(right).map(|(l, r)| l == r).collect();
            for (n, pass) in passes.iter().enumerate() {
                cells.push(json!({ "family": spec.to_string(), "n": n, "pair": pair, "pass": pass }));
            }
            lines.push(Line {
                family: spec.to_string(),
                pair,
                passes,
            });
        }
    }
    let failed = lines.iter().flat_map(|l| &l.passes).filter(|p| !**p).count();

    let t_zero = t_zero_comparison(limits.max_signed + 1)?;
    let t_zero_json: Vec<Value> = t_zero
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "B_n(q;0)": formats::poly(&row.b_n_q_0),
                "A_n(q)": formats::poly(&row.a_n),
                "P(A_n,q)": formats::poly(&row.p_a_n),
                "equals_A_n": row.matches_a_n(),
                "equals_P_A_n": row.matches_p_a_n(),
            })
        })
        .collect();

    let matrix_rows: Vec<Vec<String>> = lines
        .iter()
        .map(|l| {
            let marks: String = l.passes.iter().map(|&p| if p { '+' } else { 'x' }).collect();
            vec![l.family.clone(), l.pair.clone(), marks]
        })
        .collect();
    let t_zero_rows: Vec<Vec<String>> = t_zero
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                row.b_n_q_0.to_string(),
                row.matches_a_n().to_string(),
                row.matches_p_a_n().to_string(),
            ]
        })
        .collect();
    let text = format!(
        "{}{} of {} cells failed\n\nB_n(q;0) against A_n(q) and P(A_n,q)\n{}",
        text::table(&["family", "routes", "n = 0.."], &matrix_rows),
        failed,
        cells.len(),
        text::table(&["n", "B_n(q;0)", "= A_n", "= P(A_n)"], &t_zero_rows),
    );

    let config = json!({
        "max_symmetric": limits.max_symmetric,
        "max_signed": limits.max_signed,
        "general_max_n": GENERAL_SELFTEST_CAP,
        "inject_fault": inject_fault,
    });
    Ok(Report {
        command: "selftest",
        status: Status::from_pass(failed == 0),
        config,
        result: json!({
            "matrix": cells,
            "summary": { "cells": cells.len(), "failed": failed },
            "t_zero": t_zero_json,
        }),
        text,
    })
}
