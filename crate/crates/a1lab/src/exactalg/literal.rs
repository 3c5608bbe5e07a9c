//! The polynomial literal format used in files and on the CLI: a JSON array
//! of terms, each term `[coeff-string, [e0, e1, ..., en]]`. Coefficient
//! strings are decimal integers or `a/b` fractions over Q, a decimal residue
//! over F_p, and comma-separated residues over F_{p^r}.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactalg::field::FieldSpec;
use crate::exactalg::poly::MultiPoly;

pub fn poly_to_json(poly: &MultiPoly) -> Value {
    let terms: Vec<Value> = poly
        .terms()
        .map(|(exps, c)| {
            Value::Array(vec![
                Value::String(poly.field().scalar_to_string(c)),
                Value::Array(exps.iter().map(|&e| Value::from(e)).collect()),
            ])
        })
        .collect();
    Value::Array(terms)
}

pub fn poly_from_json(field: &FieldSpec, num_vars: usize, value: &Value) -> Result<MultiPoly> {
    let Value::Array(terms) = value else {
        return Err(Error::Parse("polynomial literal must be an array".into()));
    };
    let mut parsed = Vec::with_capacity(terms.len());
    for term in terms {
        let Value::Array(pair) = term else {
            return Err(Error::Parse(
                "each term must be [coeff-string, [exponents]]".into(),
            ));
        };
        if pair.len() != 2 {
            return Err(Error::Parse(
                "each term must be [coeff-string, [exponents]]".into(),
            ));
        }
        let coeff = match &pair[0] {
            Value::String(s) => field.parse_scalar(s)?,
            Value::Number(n) => field.parse_scalar(&n.to_string())?,
            other => {
                return Err(Error::Parse(format!(
                    "coefficient must be a string, got {other}"
                )))
            }
        };
        let Value::Array(exps) = &pair[1] else {
            return Err(Error::Parse("exponent vector must be an array".into()));
        };
        let exps: Vec<u32> = exps
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent {e}")))
            })
            .collect::<Result<_>>()?;
        parsed.push((coeff, exps));
    }
    MultiPoly::from_terms(field.clone(), num_vars, parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_over_q() {
        let q = FieldSpec::Rationals;
        let value = json!([["1/2", [2, 0, 0]], ["-3", [0, 1, 1]]]);
        let poly = poly_from_json(&q, 3, &value).unwrap();
        assert_eq!(poly.num_terms(), 2);
        let back = poly_to_json(&poly);
        assert_eq!(poly_from_json(&q, 3, &back).unwrap(), poly);
    }

    #[test]
    fn duplicate_exponents_are_summed() {
        let f5 = FieldSpec::prime(5).unwrap();
        let value = json!([["3", [1, 0]], ["4", [1, 0]]]);
        let poly = poly_from_json(&f5, 2, &value).unwrap();
        assert_eq!(poly.num_terms(), 1);
        assert_eq!(poly.coefficient(&[1, 0]), f5.from_i64(2));
    }

    #[test]
    fn extension_coefficients() {
        let f9 = crate::exactalg::make_extension(3, 2).unwrap();
        let value = json!([["1,2", [1, 1]]]);
        let poly = poly_from_json(&f9, 2, &value).unwrap();
        let back = poly_to_json(&poly);
        assert_eq!(back, json!([["1,2", [1, 1]]]));
    }

    #[test]
    fn malformed_literals_error() {
        let q = FieldSpec::Rationals;
        assert!(poly_from_json(&q, 2, &json!({"a": 1})).is_err());
        assert!(poly_from_json(&q, 2, &json!([["1"]])).is_err());
        assert!(poly_from_json(&q, 2, &json!([["1", [1]]])).is_err());
    }
}
