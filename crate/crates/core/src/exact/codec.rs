//! Matrix JSON (`{"n", "ring", "rows"}`) and CSV encodings.
//!
//! Integers and rationals are written as decimal strings so that values of
//! any size survive a round trip. Laurent entries are `{"shift": e, "coeffs": [...]}`
//! with coefficients ascending from `t^shift`; bivariate entries are
//! `{"terms": [[deg_T, deg_H, "c"], ...]}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::bipoly::BiPoly;
use super::laurent::Laurent;
use super::matrix::Matrix;
use super::ring::Ring;

pub trait EntryCodec: Ring {
    fn to_value(&self) -> Value;
    fn from_value(v: &Value) -> Result<Self>;
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

/// Parses `"p"`, `"p/q"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                    let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                    if q.is_zero() {
                        return Err(Error::Parse(format!("zero denominator in {s:?}")));
                    }
                    Ok(BigRational::new(p, q))
                }
                None => Ok(BigRational::from_integer(parse_int(v)?)),
            }
        }
        _ => Ok(BigRational::from_integer(parse_int(v)?)),
    }
}

impl EntryCodec for BigInt {
    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_value(v: &Value) -> Result<Self> {
        parse_int(v)
    }
}

impl EntryCodec for BigRational {
    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_value(v: &Value) -> Result<Self> {
        parse_rational(v)
    }
}

impl EntryCodec for Laurent {
    fn to_value(&self) -> Value {
        json!({
            "shift": self.min_exp(),
            "coeffs": self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    fn from_value(v: &Value) -> Result<Self> {
        let shift = v
            .get("shift")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("laurent entry needs integer \"shift\"".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("laurent entry needs \"coeffs\" array".into()))?
            .iter()
            .map(parse_int)
            .collect::<Result<Vec<_>>>()?;
        Ok(Laurent::new(shift, coeffs))
    }
}

impl EntryCodec for BiPoly {
    fn to_value(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(&(t, h), c)| json!([t, h, c.to_string()]))
            .collect();
        json!({ "terms": terms })
    }

    fn from_value(v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("bipoly entry needs \"terms\" array".into()))?;
        let mut out = Vec::with_capacity(terms.len());
        for term in terms {
            let parts = term.as_array().filter(|p| p.len() == 3).ok_or_else(|| Error::Parse("bipoly term must be [deg_T, deg_H, coeff]".into()))?;
            let dt = parts[0].as_u64().ok_or_else(|| Error::Parse("bad T degree".into()))? as u32;
            let dh = parts[1].as_u64().ok_or_else(|| Error::Parse("bad H degree".into()))? as u32;
            out.push(((dt, dh), parse_int(&parts[2])?));
        }
        Ok(BiPoly::from_terms(out))
    }
}

impl<R: EntryCodec> Matrix<R> {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = (0..self.order())
            .map(|i| self.row(i).iter().map(EntryCodec::to_value).collect())
            .collect();
        json!({ "n": self.order(), "ring": R::TAG, "rows": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v.get("ring").and_then(Value::as_str).unwrap_or(R::TAG);
        if ring != R::TAG {
            return Err(Error::Parse(format!("expected ring {:?}, found {ring:?}", R::TAG)));
        }
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix JSON needs \"rows\"".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(R::from_value)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(parsed)?;
        if let Some(n) = v.get("n").and_then(Value::as_u64) {
            if n as usize != m.order() {
                return Err(Error::SizeMismatch(n as usize, m.order()));
            }
        }
        Ok(m)
    }

    /// One line per row, entries comma-separated in their display form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order() {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|e| {
                    let s = e.to_string();
                    if s.contains(',') || s.contains(' ') {
                        format!("\"{s}\"")
                    } else {
                        s
                    }
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// A matrix over any supported ring, as read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Int(Matrix<BigInt>),
    Rat(Matrix<BigRational>),
    Laurent(Matrix<Laurent>),
    BiPoly(Matrix<BiPoly>),
}

impl AnyMatrix {
    pub fn ring(&self) -> &'static str {
        match self {
            AnyMatrix::Int(_) => BigInt::TAG,
            AnyMatrix::Rat(_) => BigRational::TAG,
            AnyMatrix::Laurent(_) => Laurent::TAG,
            AnyMatrix::BiPoly(_) => BiPoly::TAG,
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("ring").and_then(Value::as_str).unwrap_or("int") {
            "int" => Ok(AnyMatrix::Int(Matrix::from_json(v)?)),
            "rat" => Ok(AnyMatrix::Rat(Matrix::from_json(v)?)),
            "laurent" => Ok(AnyMatrix::Laurent(Matrix::from_json(v)?)),
            "bipoly" => Ok(AnyMatrix::BiPoly(Matrix::from_json(v)?)),
            other => Err(Error::Parse(format!("unknown ring {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Int(m) => m.to_json(),
            AnyMatrix::Rat(m) => m.to_json(),
            AnyMatrix::Laurent(m) => m.to_json(),
            AnyMatrix::BiPoly(m) => m.to_json(),
        }
    }

    pub fn mat_mul(&self, rhs: &AnyMatrix) -> Result<AnyMatrix> {
        match (self, rhs) {
            (AnyMatrix::Int(a), AnyMatrix::Int(b)) => Ok(AnyMatrix::Int(a.mat_mul(b)?)),
            (AnyMatrix::Rat(a), AnyMatrix::Rat(b)) => Ok(AnyMatrix::Rat(a.mat_mul(b)?)),
            (AnyMatrix::Laurent(a), AnyMatrix::Laurent(b)) => Ok(AnyMatrix::Laurent(a.mat_mul(b)?)),
            (AnyMatrix::BiPoly(a), AnyMatrix::BiPoly(b)) => Ok(AnyMatrix::BiPoly(a.mat_mul(b)?)),
            (a, b) => Err(Error::RingMismatch(a.ring(), b.ring())),
        }
    }

    pub fn tensor(&self, rhs: &AnyMatrix) -> Result<AnyMatrix> {
        match (self, rhs) {
            (AnyMatrix::Int(a), AnyMatrix::Int(b)) => Ok(AnyMatrix::Int(a.tensor(b))),
            (AnyMatrix::Rat(a), AnyMatrix::Rat(b)) => Ok(AnyMatrix::Rat(a.tensor(b))),
            (AnyMatrix::Laurent(a), AnyMatrix::Laurent(b)) => Ok(AnyMatrix::Laurent(a.tensor(b))),
            (AnyMatrix::BiPoly(a), AnyMatrix::BiPoly(b)) => Ok(AnyMatrix::BiPoly(a.tensor(b))),
            (a, b) => Err(Error::RingMismatch(a.ring(), b.ring())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn laurent_matrix_round_trip() {
        let t = Laurent::t();
        let m = Matrix::from_rows(vec![
            vec![Laurent::monomial(-1, -1), Laurent::zero()],
            vec![t.clone() * t.clone() - t, Laurent::one()],
        ])
        .unwrap();
        let v = m.to_json();
        assert_eq!(v["ring"], "laurent");
        assert_eq!(v["rows"][0][0], json!({"shift": -1, "coeffs": ["-1"]}));
        assert_eq!(Matrix::<Laurent>::from_json(&v).unwrap(), m);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = AnyMatrix::Int(Matrix::identity(2));
        let b = AnyMatrix::Rat(Matrix::identity(2));
        assert_eq!(a.mat_mul(&b), Err(Error::RingMismatch("int", "rat")));
        assert!(a.tensor(&a).is_ok());
    }

    #[test]
    fn csv_uses_decimal_strings() {
        let m = Matrix::<BigInt>::from_i64_rows(&[&[1, -2], &[30, 4]]).unwrap();
        assert_eq!(m.to_csv(), "1,-2\n30,4\n");
    }

    #[test]
    fn rejects_wrong_declared_order() {
        let v = json!({"n": 3, "ring": "int", "rows": [["1"]]});
        assert!(AnyMatrix::from_json(&v).is_err());
    }

    proptest! {
        #[test]
        fn rational_and_bipoly_round_trip(entries in prop::collection::vec((-50i64..50, 1i64..9), 9),
                                          degs in prop::collection::vec((0u32..3, 0u32..3, -9i64..9), 9)) {
            let rat = Matrix::from_fn(3, |i, j| {
                let (p, q) = entries[3 * i + j];
                BigRational::new(p.into(), q.into())
            });
            prop_assert_eq!(&Matrix::<BigRational>::from_json(&rat.to_json()).unwrap(), &rat);
            let bp = Matrix::from_fn(3, |i, j| {
                let (dt, dh, c) = degs[3 * i + j];
                BiPoly::monomial(c, dt, dh) + BiPoly::constant(1)
            });
            let any = AnyMatrix::from_json(&bp.to_json()).unwrap();
            prop_assert_eq!(any, AnyMatrix::BiPoly(bp));
        }
    }
}
