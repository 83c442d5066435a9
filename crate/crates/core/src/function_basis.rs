//! Recovering K6 and I8 from the eleven remaining invariants.
//!
//! Each of the two degree-10 relations is linear in the invariant it
//! eliminates, so `denominator · X + rest = 0` is solved for `X`. The
//! denominators are `6 J2` for I8 and `2 I2 J2 - 3 J4` for K6; they vanish
//! exactly when `u = 0`, or (for K6) when `D = 0`, and in those cases the
//! eliminated invariant is itself zero.
//!
//! Zero test in the float field: `|6 J2| <= 1e-12 · 6 (I2 + J2)` and
//! `|2 I2 J2 - 3 J4| <= 1e-12 · I2 J2`. Both scales have the same degree as
//! the denominator they guard, so the test does not depend on the overall
//! size of the tensor. This threshold is implementation-defined.

use std::array;

use crate::invariants::{Invariant, InvariantVector};
use crate::scalar::Scalar;
use crate::syzygy::{i8_relation, k6_relation, SyzygyRelation};

/// Values of I2, J2, I4, J4, K4, L4, I6, J6, L6, M6, I10.
#[derive(Debug, Clone, PartialEq)]
pub struct ElevenBasis<S> {
    values: [S; 11],
}

impl<S: Scalar> ElevenBasis<S> {
    pub fn from_values(values: [S; 11]) -> Self {
        ElevenBasis { values }
    }

    /// Drops K6 and I8.
    pub fn from_invariants(v: &InvariantVector<S>) -> Self {
        ElevenBasis { values: array::from_fn(|n| v.get(Invariant::ELEVEN[n]).clone()) }
    }

    pub fn values(&self) -> &[S; 11] {
        &self.values
    }

    /// `None` for K6 and I8.
    pub fn get(&self, inv: Invariant) -> Option<&S> {
        Invariant::ELEVEN.iter().position(|&i| i == inv).map(|n| &self.values[n])
    }

    fn value(&self, inv: Invariant) -> S {
        self.get(inv).cloned().expect("member of the eleven-invariant basis")
    }

    /// A full vector with the given K6 and I8 filled in.
    fn with(&self, k6: S, i8: S) -> InvariantVector<S> {
        InvariantVector::from_values(array::from_fn(|n| match Invariant::ALL[n] {
            Invariant::K6 => k6.clone(),
            Invariant::I8 => i8.clone(),
            inv => self.value(inv),
        }))
    }
}

/// Splits `relation` into `coeff · unknown + rest` at `values` (where the
/// unknown's slot in `values` is ignored).
fn split_linear<S: Scalar>(relation: &SyzygyRelation, unknown: Invariant, values: &InvariantVector<S>) -> (S, S) {
    let mut coeff = S::zero();
    let mut rest = S::zero();
    for (c, t) in relation.terms() {
        let c = S::from_exact(c);
        match t.exponent(unknown) {
            0 => rest = rest + c * t.evaluate(values),
            1 => {
                let cofactor = t.without_one(unknown).expect("exponent is one");
                coeff = coeff + c * cofactor.evaluate(values);
            }
            e => panic!("relation is not linear in {unknown}: exponent {e}"),
        }
    }
    (coeff, rest)
}

/// Denominator of the I8 reconstruction, `6 J2` up to sign convention.
pub fn i8_denominator<S: Scalar>(b: &ElevenBasis<S>) -> S {
    split_linear(i8_relation(), Invariant::I8, &b.with(S::zero(), S::zero())).0
}

/// Denominator of the K6 reconstruction, `2 I2 J2 - 3 J4` up to sign.
pub fn k6_denominator<S: Scalar>(b: &ElevenBasis<S>) -> S {
    split_linear(k6_relation(), Invariant::K6, &b.with(S::zero(), S::zero())).0
}

/// I8 from the eleven invariants and K6. Returns 0 when `J2` is zero.
pub fn reconstruct_i8<S: Scalar>(b: &ElevenBasis<S>, k6: &S) -> S {
    let i2 = b.value(Invariant::I2);
    let j2 = b.value(Invariant::J2);
    let (coeff, rest) = split_linear(i8_relation(), Invariant::I8, &b.with(k6.clone(), S::zero()));
    let scale = S::from_i64(6) * (i2 + j2);
    if coeff.is_negligible(&scale) {
        return S::zero();
    }
    -rest / coeff
}

/// K6 from the eleven invariants. Returns 0 when `2 I2 J2 - 3 J4` is zero.
pub fn reconstruct_k6<S: Scalar>(b: &ElevenBasis<S>) -> S {
    let scale = b.value(Invariant::I2) * b.value(Invariant::J2);
    let (coeff, rest) = split_linear(k6_relation(), Invariant::K6, &b.with(S::zero(), S::zero()));
    if coeff.is_negligible(&scale) {
        return S::zero();
    }
    -rest / coeff
}

/// All thirteen invariants from the eleven.
pub fn complete<S: Scalar>(b: &ElevenBasis<S>) -> InvariantVector<S> {
    let k6 = reconstruct_k6(b);
    let i8 = reconstruct_i8(b, &k6);
    b.with(k6, i8)
}
