//! Deterministic JSON forms.
//!
//! Polynomials serialize as a list of `[exponent-vector, "num/den"]` pairs
//! in descending graded-lex order; rational functions as `{num, den}`;
//! automorphisms as `{perm, scale, shift}` over the setting's variable
//! order; skew elements as `{setting, terms}` sorted by the canonical
//! automorphism order. All forms round-trip exactly.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::aut::AffineAut;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rat::{parse_rat, rat_string, Rat};
use crate::ratfunc::RatFunc;
use crate::setting::Setting;
use crate::skew::SkewElement;

fn bad(msg: &str) -> Error {
    Error::Invalid(format!("json: {msg}"))
}

pub fn poly_to_json(p: &Poly, nvars: usize) -> Value {
    let mut terms: Vec<Value> = Vec::new();
    for (m, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let mut exps = vec![0u32; nvars];
        for &(v, e) in m.pairs() {
            if (v as usize) < nvars {
                exps[v as usize] = e;
            }
        }
        terms.push(json!([exps, rat_string(c)]));
    }
    Value::Array(terms)
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("poly must be an array"))?;
    let mut p = Poly::zero();
    for t in arr {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            bad("poly term must be [exponents, coefficient]")
        })?;
        let exps = pair[0]
            .as_array()
            .ok_or_else(|| bad("exponent vector must be an array"))?;
        let mut pairs = Vec::new();
        for (i, e) in exps.iter().enumerate() {
            let e = e.as_u64().ok_or_else(|| bad("exponent must be a nonnegative integer"))?;
            if e > 0 {
                pairs.push((i as u32, e as u32));
            }
        }
        let c = pair[1]
            .as_str()
            .and_then(parse_rat)
            .ok_or_else(|| bad("coefficient must be a rational string"))?;
        p.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(p)
}

pub fn ratfunc_to_json(f: &RatFunc, nvars: usize) -> Value {
    json!({
        "num": poly_to_json(f.num(), nvars),
        "den": poly_to_json(f.den(), nvars),
    })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc> {
    let num = poly_from_json(v.get("num").ok_or_else(|| bad("missing num"))?)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| bad("missing den"))?)?;
    RatFunc::new(num, den)
}

pub fn aut_to_json(a: &AffineAut) -> Value {
    json!({
        "perm": a.perm(),
        "scale": a.scale().iter().map(rat_string).collect::<Vec<_>>(),
        "shift": a.shift().iter().map(rat_string).collect::<Vec<_>>(),
    })
}

pub fn aut_from_json(v: &Value) -> Result<AffineAut> {
    let perm = v
        .get("perm")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing perm"))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as u32).ok_or_else(|| bad("bad perm entry")))
        .collect::<Result<Vec<u32>>>()?;
    let rats = |key: &str| -> Result<Vec<Rat>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing field"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .and_then(parse_rat)
                    .ok_or_else(|| bad("bad rational entry"))
            })
            .collect()
    };
    AffineAut::new(perm, rats("scale")?, rats("shift")?)
}

pub fn skew_to_json(x: &SkewElement) -> Value {
    let nvars = x.setting().nvars();
    let terms: Vec<Value> = x
        .terms()
        .map(|(a, c)| {
            json!({
                "aut": aut_to_json(a),
                "coeff": ratfunc_to_json(c, nvars),
            })
        })
        .collect();
    json!({
        "setting": x.setting().label,
        "terms": terms,
    })
}

pub fn skew_from_json(setting: &Arc<Setting>, v: &Value) -> Result<SkewElement> {
    let label = v
        .get("setting")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing setting label"))?;
    if label != setting.label {
        return Err(Error::SettingMismatch);
    }
    let mut out = SkewElement::zero(setting.clone());
    for t in v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?
    {
        let aut = aut_from_json(t.get("aut").ok_or_else(|| bad("missing aut"))?)?;
        let coeff = ratfunc_from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
        out = out.add(&SkewElement::term(setting.clone(), coeff, aut)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::build_gt;
    use crate::rat::{rat, ratf};

    #[test]
    fn poly_roundtrip() {
        let p = Poly::var(0)
            .mul(&Poly::var(1))
            .add(&Poly::var(2).scale(&ratf(-5, 3)))
            .add(&Poly::one());
        let v = poly_to_json(&p, 3);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        // leading term first
        let first = v.as_array().unwrap()[0].as_array().unwrap();
        assert_eq!(first[0], json!([1, 1, 0]));
    }

    #[test]
    fn ratfunc_roundtrip() {
        let f = RatFunc::new(
            Poly::var(0).add(&Poly::one()),
            Poly::var(1).scale(&rat(2)),
        )
        .unwrap();
        let v = ratfunc_to_json(&f, 2);
        assert_eq!(ratfunc_from_json(&v).unwrap(), f);
    }

    #[test]
    fn aut_and_element_roundtrip() {
        let s = build_gt(2).unwrap();
        let e = crate::parser::parse_element(&s, "[(l21+l22-2*l11) * d(1,1)] + 3*e").unwrap();
        let v = skew_to_json(&e);
        let back = skew_from_json(&s, &v).unwrap();
        assert_eq!(e, back);
        let a = crate::parser::parse_aut(&s, "sh(1,0,-2)").unwrap();
        assert_eq!(aut_from_json(&aut_to_json(&a)).unwrap(), a);
    }
}
