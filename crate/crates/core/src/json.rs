//! Serde adapters: integers beyond 53 bits travel as decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

const SAFE: i64 = (1 << 53) - 1;

pub fn to_value(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE => serde_json::Value::from(v),
        _ => serde_json::Value::String(x.to_string()),
    }
}

pub fn from_value(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("expected an integer, got {n}"))
            }
        }
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&to_value(x), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_value(&v).map_err(D::Error::custom)
    }
}

pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = x.iter().map(to_value).collect();
        serde::Serialize::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter().map(|x| from_value(x).map_err(D::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary() {
        assert_eq!(to_value(&BigInt::from(SAFE)), serde_json::json!(9007199254740991i64));
        assert_eq!(to_value(&BigInt::from(SAFE + 1)), serde_json::json!("9007199254740992"));
        assert_eq!(to_value(&BigInt::from(-SAFE - 1)), serde_json::json!("-9007199254740992"));
        for v in [serde_json::json!(12), serde_json::json!("-123456789012345678901234567890")] {
            assert_eq!(to_value(&from_value(&v).unwrap()), v);
        }
        assert!(from_value(&serde_json::json!(1.5)).is_err());
    }
}
