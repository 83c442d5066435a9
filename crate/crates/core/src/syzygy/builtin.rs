//! The five known relations among the invariants, kept as text so they can be
//! checked against their published form by eye. Each one is parsed into a
//! [`SyzygyRelation`] with exact rational coefficients.
//!
//! The two degree-10 relations are linear in I8 and K6 respectively; the
//! function-basis reconstruction solves them for those two invariants.

use std::sync::OnceLock;

use super::{Basis, SyzygyRelation};

pub const I8_RELATION: &str = "6 J2 I8 = -I2^2 J2 K4 - I2^3 L4 + 3 I2 I4 L4 - 3 I2 J4 K4 + 4 J2 I4 K4 \
     + 2 I2^2 J6 + 3 I2 J2 L6 - 3 L4 I6 - 6 I4 J6 + 3 J4 L6 + 6 K4 K6";

pub const K6_RELATION: &str = "2 I2 J2 K6 + I2^2 J2 J4 - I2 J4^2 + 2 I2 K4 L4 + 3 J2 K4^2 - 2 J2 I4 J4 \
     + J2^2 I6 - 2 I2^2 M6 - 12 K4 J6 + 6 L4 L6 + 6 I4 M6 - 3 J4 K6 = 0";

pub const DEGREE16_A: &str = "2 I2^3 J2^3 J4 - 4 I2 J2^3 I4 J4 - 6 J2^3 J4 I6 - 9 I2^2 J2^2 J4^2 \
     + 18 J2^2 I4 J4^2 + 9 J4^4 + 36 I2 J2 J6^2 - 54 J4 J6^2 - 48 I2 J2^2 K4 J6 \
     + 144 J2 J4 K4 J6 + 12 I2 J2^3 K4^2 - 36 J2^2 J4 K4^2 - 24 I2^2 J2 L4 J6 + 36 I2 J4 L4 J6 \
     + 12 I2^2 J2^2 K4 L4 - 18 I2 J2 J4 K4 L4 - 18 J4^2 K4 L4 + 6 I2^3 J2 L4^2 - 6 I2 J2 I4 L4^2 \
     - 9 I2^2 J4 L4^2 + 9 I4 J4 L4^2 - 36 J2 J4 L4 L6 - 6 I2^3 J2^2 M6 + 12 I2 J2^2 I4 M6 \
     + 9 J2^2 I6 M6 + 36 I2^2 J2 J4 M6 - 72 J2 I4 J4 M6 - 18 I2 J4^2 M6 - 108 K4 J6 M6 \
     + 27 J2 K4^2 M6 + 18 I2 K4 L4 M6 + 54 L4 L6 M6 - 18 I2^2 M6^2 + 54 I4 M6^2 = 0";

pub const DEGREE16_B: &str = "4/9 I2^3 J2^3 K4 + 2/9 I2^4 J2^2 L4 + 4/3 I2^3 J2 J4 L4 \
     - 8/9 I2 J2^3 I4 K4 - 4/9 I2^2 J2^2 I4 L4 - 4/3 I2^2 J2^2 J4 K4 - 2 I2^2 J4^2 L4 \
     + 2 I2^2 K4 L4^2 + 2 J2^2 K4^3 + 4 I2 J2 J4^2 K4 + 5 I2 J2 K4^2 L4 - 4 I2 J2 I4 J4 L4 \
     - 4/3 I2^3 J2^2 J6 + 2/3 J2^3 K4 I6 + 1/3 I2 J2^2 L4 I6 + 8/3 I2 J2^2 I4 J6 \
     + 4/3 I2^2 J2 J4 J6 - 2 I2^3 L4 M6 + J2 J4 L4 I6 - 16 I2 K4 L4 J6 - 14 J2 K4^2 J6 \
     + 6 I2 L4^2 L6 + 4 J2 K4 L4 L6 + 6 I2 I4 L4 M6 - 2 I2 J4 K4 M6 + 4 J2 I4 K4 M6 \
     + 4 I2^2 J6 M6 - 2 J2^2 I6 J6 - 4 I2 J2 L6 M6 - 12 I4 J6 M6 + 6 J4 L6 M6 + 24 K4 J6^2 \
     - 12 L4 J6 L6 - 4 J4^3 K4 + 4 I4 J4^2 L4 - J4 K4^2 L4 = 0";

pub const DEGREE16_C: &str = "1/18 I2^5 J2^3 - 2/9 I2^3 J2^3 I4 + 2/9 I2 J2^3 I4^2 + 1/12 I2^2 J2^3 I6 \
     - 1/6 J2^3 I4 I6 - 1/6 I2^4 J2^2 J4 + 1/3 I2^2 J2^2 I4 J4 + 1/2 I2 J2^2 J4 I6 \
     + 1/2 I2^3 J2 J4^2 - I2 J2 I4 J4^2 - 3/4 J2 J4^2 I6 - 1/2 I2^2 J4^3 + I4 J4^3 \
     - I2^2 J2 K4 J6 + 2 J2 I4 K4 J6 + 1/4 I2^2 J2^2 K4^2 - 1/2 J2^2 I4 K4^2 \
     + 3/2 I2 J2 J4 K4^2 - 9/4 J4^2 K4^2 + 1/2 I2^3 J2 K4 L4 - I2 J2 I4 K4 L4 \
     - 1/2 I2^2 J4 K4 L4 + I4 J4 K4 L4 + 2 I2 J2 J6 L6 - 3 J4 J6 L6 - 2 I2 J2^2 K4 L6 \
     + 3 J2 J4 K4 L6 - 1/2 I2^2 J2 L4 L6 - J2 I4 L4 L6 + 3/2 I2 J4 L4 L6 \
     - 1/6 I2^4 J2 M6 + 5/6 I2^2 J2 I4 M6 - J2 I4^2 M6 - I2 J2 I6 M6 + 3/2 J4 I6 M6 = 0";

/// `(label, text, basis)` for every built-in relation.
const TABLE: [(&str, &str, Basis); 5] = [
    ("i8-elimination", I8_RELATION, Basis::Thirteen),
    ("k6-elimination", K6_RELATION, Basis::Thirteen),
    ("degree16-a", DEGREE16_A, Basis::Eleven),
    ("degree16-b", DEGREE16_B, Basis::Eleven),
    ("degree16-c", DEGREE16_C, Basis::Eleven),
];

/// All five relations, parsed once.
pub fn builtin_relations() -> &'static [SyzygyRelation] {
    static CACHE: OnceLock<Vec<SyzygyRelation>> = OnceLock::new();
    CACHE.get_or_init(|| {
        TABLE
            .iter()
            .map(|(label, text, basis)| {
                SyzygyRelation::parse(text, *basis)
                    .unwrap_or_else(|e| panic!("built-in relation {label} does not parse: {e}"))
                    .with_label(label)
            })
            .collect()
    })
}

pub fn i8_relation() -> &'static SyzygyRelation {
    &builtin_relations()[0]
}

pub fn k6_relation() -> &'static SyzygyRelation {
    &builtin_relations()[1]
}
