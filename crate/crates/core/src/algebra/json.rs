//! JSON forms of polynomials and series polynomials. All numbers are exact
//! fraction strings.

use serde_json::{json, Value};

use super::{
    format_rational, parse_rational, Monomial, MultiPoly, Rational, TruncatedSeries, Var, VarRegistry, YSeriesPoly,
};
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::usage(format!("malformed JSON: {}", msg.into()))
}

/// `{"vars":[...],"terms":[{"exp":[...],"coef":"p/q"}]}` with terms in
/// descending monomial order.
pub fn poly_to_json(p: &MultiPoly<Rational>) -> Value {
    let reg = VarRegistry::new(p.vars()).expect("variable set is unique");
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let exp: Vec<u32> = reg.vars().iter().map(|&v| m.exp(v)).collect();
            json!({"exp": exp, "coef": format_rational(c)})
        })
        .collect();
    let vars: Vec<String> = reg.vars().iter().map(Var::to_string).collect();
    json!({"vars": vars, "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly<Rational>> {
    let vars: Vec<Var> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `vars`"))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| bad("variable names must be strings"))?.parse())
        .collect::<Result<_>>()?;
    VarRegistry::new(vars.iter().copied())?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `terms`"))?;
    let mut p = MultiPoly::zero();
    for t in terms {
        let exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term without `exp`"))?;
        if exp.len() != vars.len() {
            return Err(bad("exponent vector length differs from `vars`"));
        }
        let pairs = exp
            .iter()
            .zip(&vars)
            .map(|(e, &var)| {
                let e = e
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| bad("bad exponent"))?;
                Ok((var, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let coef = rational_field(t.get("coef"))?;
        p.add_term(Monomial::from_pairs(pairs), &coef);
    }
    Ok(p)
}

/// Accepts `"p/q"` strings or JSON integers.
pub fn rational_field(v: Option<&Value>) -> Result<Rational> {
    match v {
        Some(Value::String(s)) => parse_rational(s).ok_or_else(|| bad(format!("bad rational `{s}`"))),
        Some(Value::Number(n)) if n.is_i64() => Ok(super::int(n.as_i64().unwrap())),
        _ => Err(bad("expected a rational string")),
    }
}

/// `{"var":"X","degree":n,"x_precision":P,"coeffs":[[c_{0,j},...,c_{P,j}] for j]}`.
pub fn ypoly_to_json(f: &YSeriesPoly<Rational>) -> Value {
    let coeffs: Vec<Vec<String>> = (0..=f.degree())
        .map(|j| f.coeff(j).coeffs().iter().map(format_rational).collect())
        .collect();
    json!({
        "var": f.var().to_string(),
        "degree": f.degree(),
        "x_precision": f.prec(),
        "coeffs": coeffs,
    })
}

pub fn ypoly_from_json(v: &Value) -> Result<YSeriesPoly<Rational>> {
    let var: Var = match v.get("var").and_then(Value::as_str) {
        Some(s) => s.parse()?,
        None => Var::X,
    };
    let prec = v
        .get("x_precision")
        .and_then(Value::as_u64)
        .and_then(|p| u32::try_from(p).ok())
        .ok_or_else(|| bad("missing `x_precision`"))?;
    let rows = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `coeffs`"))?;
    let mut coeffs = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("coefficient rows must be arrays"))?;
        if row.len() > prec as usize + 1 {
            return Err(bad("coefficient row longer than the precision"));
        }
        let cs = row
            .iter()
            .map(|c| rational_field(Some(c)))
            .collect::<Result<Vec<_>>>()?;
        coeffs.push(TruncatedSeries::from_coeffs(var, prec, cs));
    }
    Ok(YSeriesPoly::new(var, prec, coeffs))
}
