//! Canonical JSON: object keys sorted, no whitespace, exact numbers as strings.

use serde::{Serialize, Serializer};
use std::fmt::Display;

/// Serializes any `Display` value as a JSON string.
pub fn as_string<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn as_opt_string<T: Display, S: Serializer>(
    value: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Canonical JSON text of a value. Parsing the output and serializing it
/// again with this function reproduces it byte for byte.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap, which sorts them.
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string(&v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        #[derive(Serialize)]
        struct S {
            zeta: u32,
            alpha: &'static str,
        }
        let text = canonical_json(&S {
            zeta: 1,
            alpha: "x",
        });
        assert_eq!(text, r#"{"alpha":"x","zeta":1}"#);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&v), text);
    }
}
