//! JSON encodings for scalars, matrices and groups.
//!
//! Scalars are written as {"n": conductor, "terms": [{"num", "den", "pow"}]}
//! with the integers as decimal strings, matrices as {"dim", "rows"} and
//! groups as {"dim", "generators"}.

use num::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::cyclotomic::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::matrix::RepMatrix;

pub fn cyc_to_json(x: &CycNum) -> Value {
    let terms: Vec<Value> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            json!({
                "num": c.numer().to_string(),
                "den": c.denom().to_string(),
                "pow": k,
            })
        })
        .collect();
    json!({ "n": x.conductor(), "terms": terms })
}

fn parse_bigint(v: &Value, field: &str) -> Result<BigInt> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::BadInput(format!("{field} must be a decimal string")))?;
    s.parse::<BigInt>()
        .map_err(|_| Error::BadInput(format!("bad integer {s:?} in {field}")))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::BadInput(format!("missing field {name:?}")))
}

pub fn cyc_from_json(v: &Value) -> Result<CycNum> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("scalar must be an object".into()))?;
    let n = field(obj, "n")?
        .as_u64()
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .ok_or_else(|| Error::BadInput("conductor must be a positive integer".into()))?
        as u32;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| Error::BadInput("terms must be an array".into()))?;
    let mut dense = vec![Rat::zero(); n as usize];
    for t in terms {
        let t = t
            .as_object()
            .ok_or_else(|| Error::BadInput("term must be an object".into()))?;
        let num = parse_bigint(field(t, "num")?, "num")?;
        let den = parse_bigint(field(t, "den")?, "den")?;
        if den.is_zero() {
            return Err(Error::BadInput("zero denominator".into()));
        }
        let pow = field(t, "pow")?
            .as_u64()
            .filter(|&p| p < n as u64)
            .ok_or_else(|| Error::BadInput("pow must be an integer below the conductor".into()))?
            as usize;
        dense[pow] += Rat::new(num, den);
    }
    Ok(CycNum::from_dense(n, &dense))
}

pub fn matrix_to_json(m: &RepMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| cyc_to_json(&m[(i, j)])).collect()))
        .collect();
    json!({ "dim": m.rows(), "rows": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<RepMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("matrix must be an object".into()))?;
    let dim = field(obj, "dim")?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::BadInput("dim must be a positive integer".into()))? as usize;
    let rows = field(obj, "rows")?
        .as_array()
        .ok_or_else(|| Error::BadInput("rows must be an array".into()))?;
    if rows.len() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            got: rows.len(),
        });
    }
    let mut parsed = Vec::with_capacity(dim);
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::BadInput("row must be an array".into()))?;
        if row.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        parsed.push(row.iter().map(cyc_from_json).collect::<Result<Vec<_>>>()?);
    }
    Ok(RepMatrix::from_rows(parsed))
}

pub fn group_to_json(dim: usize, generators: &[RepMatrix]) -> Value {
    json!({
        "dim": dim,
        "generators": generators.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Parses {"dim", "generators"} into the generator matrices.
pub fn group_from_json(v: &Value) -> Result<(usize, Vec<RepMatrix>)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("group must be an object".into()))?;
    let dim = field(obj, "dim")?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::BadInput("dim must be a positive integer".into()))? as usize;
    let gens = field(obj, "generators")?
        .as_array()
        .ok_or_else(|| Error::BadInput("generators must be an array".into()))?
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    for g in &gens {
        if g.rows() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: g.rows(),
            });
        }
    }
    Ok((dim, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        let x = CycNum::zeta(12).unwrap() + CycNum::from_frac(-7, 3);
        let v = cyc_to_json(&x);
        assert_eq!(cyc_from_json(&v).unwrap(), x);
    }

    #[test]
    fn scalar_reduces_on_parse() {
        // zeta_6 written with conductor 6 must come back at conductor 3.
        let v = json!({"n": 6, "terms": [{"num": "1", "den": "1", "pow": 1}]});
        let x = cyc_from_json(&v).unwrap();
        assert_eq!(x.conductor(), 3);
        assert_eq!(x, CycNum::zeta(3).unwrap() + CycNum::one());
    }

    #[test]
    fn matrix_round_trip() {
        let i = CycNum::zeta(4).unwrap();
        let m = RepMatrix::from_rows(vec![
            vec![i.clone(), CycNum::zero()],
            vec![CycNum::from_frac(1, 2), i.conj()],
        ]);
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(cyc_from_json(&json!({"n": 0, "terms": []})).is_err());
        assert!(cyc_from_json(&json!({"n": 4, "terms": [{"num": "1", "den": "0", "pow": 0}]}))
            .is_err());
        assert!(matrix_from_json(&json!({"dim": 2, "rows": []})).is_err());
    }

    #[test]
    fn group_round_trip() {
        let gens = vec![RepMatrix::identity(2)];
        let v = group_to_json(2, &gens);
        let (dim, parsed) = group_from_json(&v).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(parsed, gens);
    }
}
