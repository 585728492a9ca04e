//! JSON encoding of the core types. Rationals are strings `"p/q"` (or `"p"`
//! when `q = 1`); a polynomial is an array of rationals indexed by the power
//! of `q`, with the zero polynomial as `[]`.

use eulerian_core::convexity::{ConvexityReport, Witness};
use eulerian_core::jacobi::{JFraction, MomentSeq};
use eulerian_core::riordan::LowerTri;
use eulerian_core::series::TruncSeries;
use eulerian_core::{QPoly, QRatFun, Rational};
use serde_json::{json, Value};

/// Parses `p/q` or an integer literal. Decimals and exponents are refused.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("{s:?}: decimals are not accepted, write p/q"));
    }
    s.parse::<Rational>().map_err(|e| format!("{s:?}: {e}"))
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

pub fn poly(p: &QPoly) -> Value {
    rationals(p.coeffs())
}

pub fn polys(ps: &[QPoly]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn ratfun(f: &QRatFun) -> Value {
    json!({ "num": poly(f.num()), "den": poly(f.den()) })
}

/// A polynomial when the function is one, `{"num", "den"}` otherwise.
pub fn ratfun_compact(f: &QRatFun) -> Value {
    match f.as_poly() {
        Some(p) => poly(p),
        None => ratfun(f),
    }
}

pub fn series(s: &TruncSeries) -> Value {
    Value::Array(s.coeffs().iter().map(ratfun).collect())
}

pub fn lower_tri(l: &LowerTri) -> Value {
    Value::Array(
        (0..l.order())
            .map(|i| Value::Array(l.row(i).iter().map(ratfun).collect()))
            .collect(),
    )
}

pub fn jfraction(j: &JFraction) -> Value {
    json!({ "s": polys(j.s()), "t": polys(j.t()) })
}

pub fn moments(m: &MomentSeq) -> Value {
    json!({ "mu": polys(m.mu()) })
}

pub fn witness(w: &Witness) -> Value {
    json!({ "m": w.m, "n": w.n, "coeff_index": w.coeff_index })
}

pub fn report(r: &ConvexityReport) -> Value {
    let (m_max, n_max) = r.checked_range();
    json!({
        "verdict": r.verdict(),
        "witnesses": r.witnesses().iter().map(witness).collect::<Vec<_>>(),
        "checked_range": [m_max, n_max],
    })
}

/// Accepts a rational string or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(format!("expected a rational string, found {other}")),
    }
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected an array, found {v}"))?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn poly_from_json(v: &Value) -> Result<QPoly, String> {
    rationals_from_json(v).map(QPoly::from_coeffs)
}

pub fn polys_from_json(v: &Value) -> Result<Vec<QPoly>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected an array of polynomials, found {v}"))?
        .iter()
        .map(poly_from_json)
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

/// `{"mu": [...]}`, or a bare array of polynomials.
pub fn moments_from_json(v: &Value) -> Result<MomentSeq, String> {
    let mu = if v.is_array() { v } else { field(v, "mu")? };
    polys_from_json(mu).map(MomentSeq::new)
}

pub fn jfraction_from_json(v: &Value) -> Result<JFraction, String> {
    let s = polys_from_json(field(v, "s")?)?;
    let t = polys_from_json(field(v, "t")?)?;
    JFraction::new(s, t).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulerian_core::algebra::{rat, ratio};
    use eulerian_core::families::EulerParams;
    use proptest::prelude::*;

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&ratio(3, 6)), json!("1/2"));
        assert_eq!(rational(&rat(-4)), json!("-4"));
        assert_eq!(parse_rational("-3/9").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        for bad in ["0.5", "1e3", "1/0", "", "a/b", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn poly_shape() {
        assert_eq!(poly(&QPoly::from_ints(&[1, 6, 1])), json!(["1", "6", "1"]));
        assert_eq!(poly(&QPoly::zero()), json!([]));
        assert_eq!(poly_from_json(&json!(["1", 2, "1/2"])).unwrap(), QPoly::from_coeffs(vec![rat(1), rat(2), ratio(1, 2)]));
        assert!(poly_from_json(&json!([0.5])).is_err());
    }

    #[test]
    fn ratfun_shape() {
        let f = QRatFun::new(QPoly::one(), QPoly::from_ints(&[1, -1])).unwrap();
        assert_eq!(ratfun(&f), json!({ "num": ["-1"], "den": ["-1", "1"] }));
        assert_eq!(ratfun_compact(&QPoly::q().into()), json!(["0", "1"]));
    }

    #[test]
    fn jfraction_round_trip() {
        let jf = EulerParams::from_ints(1, 1, 2).jfraction(4);
        assert_eq!(jfraction_from_json(&jfraction(&jf)).unwrap(), jf);
        let mu = jf.moments_motzkin(6).unwrap();
        assert_eq!(moments_from_json(&moments(&mu)).unwrap(), mu);
        assert_eq!(moments_from_json(&moments(&mu)["mu"]).unwrap(), mu);
    }

    proptest! {
        #[test]
        fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let r = ratio(n, d);
            prop_assert_eq!(rational_from_json(&rational(&r)).unwrap(), r);
        }

        #[test]
        fn polys_round_trip(c in proptest::collection::vec((-50i64..50, 1i64..9), 0..6)) {
            let p = QPoly::from_coeffs(c.into_iter().map(|(n, d)| ratio(n, d)).collect());
            prop_assert_eq!(poly_from_json(&poly(&p)).unwrap(), p);
        }
    }
}
