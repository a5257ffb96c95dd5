use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use kostant_core::QPoly;

const SAFE_INTEGER: i64 = 1 << 53;

/// An exact integer: a JSON number when `|x| <= 2^53`, otherwise its decimal string.
pub fn integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if (-SAFE_INTEGER..=SAFE_INTEGER).contains(&v) => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn poly(p: &QPoly) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(integer).collect::<Vec<_>>() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let edge = BigInt::from(SAFE_INTEGER);
        assert_eq!(integer(&edge), json!(9007199254740992i64));
        assert_eq!(integer(&(&edge + BigInt::from(1))), json!("9007199254740993"));
        assert_eq!(integer(&-(&edge + BigInt::from(1))), json!("-9007199254740993"));
        let big = BigInt::from(1u8) << 200;
        assert_eq!(integer(&big), Value::String(big.to_string()));
    }

    #[test]
    fn polynomials_are_dense_from_degree_zero() {
        let p = QPoly::from_coeffs([0, 1, 1, 1]);
        assert_eq!(poly(&p), json!({"coeffs": [0, 1, 1, 1]}));
        assert_eq!(poly(&QPoly::zero()), json!({"coeffs": []}));
    }
}
