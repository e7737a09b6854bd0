//! Deformation-theoretic invariants of isolated singularities, computed
//! exactly over the rationals.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bidouble;
pub mod parse;
pub mod resolve;
pub mod defo;
pub mod singular;
pub mod surf;

pub use algebra::{Ideal, MonomialOrder, Polynomial, Rational, Ring, RingRef};
pub use parse::{parse_polynomial, ParseError};
pub use singular::{AdeType, DynkinData, SingularityReport};

/// Big integers serialize as decimal strings.
pub(crate) mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
