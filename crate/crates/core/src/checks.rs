//! Seeded sweeps over random tensors, shared by the command line and the
//! test suites.

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::invariants::{all_invariants, invariants_of, Invariant, Parity};
use crate::io::NamedValues;
use crate::scalar::ExactScalar;
use crate::syzygy::{builtin_relations, verify_relation, Basis};
use crate::tensor::{random_harmonic_with, random_orthogonal_with, random_sym3_with, rotate, DetSign, HarmonicParts};

/// Integer entries of the random harmonic parts lie in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 9;

#[derive(Debug, Clone, Serialize)]
pub struct RelationResidual {
    pub label: String,
    pub degree: u32,
    pub basis: &'static str,
    /// Largest residual in absolute value, as `p/q` or an integer.
    pub max_residual: String,
    pub zero: bool,
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Thirteen => "13",
        Basis::Eleven => "11",
    }
}

fn exact_samples(seed: u64, samples: usize) -> Vec<HarmonicParts<ExactScalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_harmonic_with(&mut rng, SAMPLE_BOUND)).collect()
}

/// Residual of every built-in relation at `samples` random exact points.
pub fn syzygy_residuals(seed: u64, samples: usize) -> Vec<RelationResidual> {
    let points = exact_samples(seed, samples);
    let values: Vec<_> = points.par_iter().map(all_invariants).collect();
    builtin_relations()
        .iter()
        .map(|r| {
            let worst = values
                .iter()
                .map(|v| r.residual_at(v))
                .max_by(|a, b| a.abs().cmp(&b.abs()))
                .unwrap_or_else(ExactScalar::zero);
            RelationResidual {
                label: r.label().unwrap_or("").to_string(),
                degree: r.degree(),
                basis: basis_name(r.basis()),
                zero: worst.is_zero(),
                max_residual: worst.to_string(),
            }
        })
        .collect()
}

/// Residual of one relation at one point; exposed for mutation tests.
pub fn residual(r: &crate::syzygy::SyzygyRelation, h: &HarmonicParts<ExactScalar>) -> ExactScalar {
    verify_relation(r, h)
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotropyReport {
    pub samples: usize,
    /// Largest deviation per invariant.
    pub max_deviation: NamedValues,
    pub worst: f64,
}

/// Compares invariants before and after random orthogonal changes of
/// frame, alternating the determinant sign. Tensor components are uniform
/// in `[-1, 1]`. The deviation is `|f(QA) - f(A)| / max(|f(A)|, 1)`:
/// relative for values of magnitude at least one, absolute below that.
pub fn isotropy_deviation(seed: u64, samples: usize) -> IsotropyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 13];
    for k in 0..samples {
        let a = random_sym3_with::<f64, _>(&mut rng, 1);
        let sign = if k % 2 == 0 { DetSign::Positive } else { DetSign::Negative };
        let q = random_orthogonal_with(&mut rng, sign);
        let before = invariants_of(&a);
        let after = invariants_of(&rotate(&a, &q));
        for inv in Invariant::ALL {
            let v = *before.get(inv);
            let dev = (after.get(inv) - v).abs() / v.abs().max(1.0);
            worst[inv.index()] = worst[inv.index()].max(dev);
        }
    }
    IsotropyReport {
        samples,
        max_deviation: NamedValues(Invariant::ALL.iter().map(|i| (i.to_string(), worst[i.index()].into())).collect()),
        worst: worst.iter().copied().fold(0.0, f64::max),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityReport {
    pub samples: usize,
    /// `"<invariant> at sample <n>"` for every violation.
    pub failures: Vec<String>,
}

/// Checks exactly that `u -> -u` fixes the even invariants and negates the
/// odd ones.
pub fn parity_violations(seed: u64, samples: usize) -> ParityReport {
    let points = exact_samples(seed, samples);
    let failures = points
        .par_iter()
        .enumerate()
        .flat_map_iter(|(n, h)| {
            let v = all_invariants(h);
            let w = all_invariants(&h.flip_vector());
            Invariant::ALL
                .into_iter()
                .filter(move |&inv| match inv.parity() {
                    Parity::Even => w.get(inv) != v.get(inv),
                    Parity::Odd => *w.get(inv) != -v.get(inv).clone(),
                })
                .map(move |inv| format!("{inv} at sample {n}"))
                .collect::<Vec<_>>()
        })
        .collect();
    ParityReport { samples, failures }
}
