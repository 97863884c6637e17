//! Small helpers for building JSON documents with big integers.

use num_bigint::BigInt;
use serde_json::{Number, Value};
use std::str::FromStr;

use crate::realnum::RealValue;

/// A JSON number for any integer size.
pub fn int_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

/// Real values go out in their text syntax.
pub fn real_json(x: &RealValue) -> Value {
    Value::String(x.to_string())
}
