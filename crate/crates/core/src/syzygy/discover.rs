//! Finds every linear relation among the invariant products of one degree by
//! evaluating them at random rational points and taking the exact nullspace
//! of the resulting matrix.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{enumerate_products, relation_from_vector, verify_relation, Basis, ProductTerm, SyzygyRelation};
use crate::error::{Error, Result};
use crate::exact::{nullspace_multimodular, RationalMatrix};
use crate::scalar::ExactScalar;
use crate::tensor::{random_harmonic_with, HarmonicParts};

/// Entries of the evaluation points are integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 9;
/// Re-verification points use the much wider box `[-VERIFY_BOUND, VERIFY_BOUND]`.
pub const VERIFY_BOUND: i64 = 1_000_000;
pub const VERIFY_POINTS: usize = 20;
/// Minimum number of rows beyond the number of products.
pub const EXTRA_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscoveryConfig {
    pub basis: Basis,
    pub degree: u32,
    pub seed: u64,
    /// Defaults to the number of products plus [`EXTRA_SAMPLES`].
    pub sample_count: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Discovery {
    pub products: Vec<ProductTerm>,
    pub sample_count: usize,
    pub rank: usize,
    /// One relation per nullspace basis vector that survived re-verification.
    pub relations: Vec<SyzygyRelation>,
    /// Nullspace vectors that failed at a fresh point.
    pub discarded: Vec<SyzygyRelation>,
}

impl Discovery {
    pub fn nullity(&self) -> usize {
        self.products.len() - self.rank
    }
}

fn sample_points(rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Vec<HarmonicParts<ExactScalar>> {
    (0..count).map(|_| random_harmonic_with(rng, bound)).collect()
}

pub fn discover_relations(config: &DiscoveryConfig) -> Result<Discovery> {
    let products = enumerate_products(config.basis, config.degree)?;
    let needed = products.len() + EXTRA_SAMPLES;
    let sample_count = config.sample_count.unwrap_or(needed);
    if sample_count < needed {
        return Err(Error::InvalidArgument(format!(
            "{} products at degree {} need at least {needed} samples, got {sample_count}",
            products.len(),
            config.degree
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points = sample_points(&mut rng, sample_count, SAMPLE_BOUND);
    // Rows land in point order regardless of how rayon schedules them.
    let rows: Vec<Vec<ExactScalar>> =
        points.par_iter().map(|h| super::evaluate_products(&products, h)).collect();
    let matrix = RationalMatrix::from_rows(rows)?;

    let basis_vectors = nullspace_multimodular(&matrix)?;
    let rank = products.len() - basis_vectors.len();

    let mut fresh = ChaCha8Rng::seed_from_u64(config.seed);
    fresh.set_stream(1);
    let checks = sample_points(&mut fresh, VERIFY_POINTS, VERIFY_BOUND);

    let mut relations = Vec::new();
    let mut discarded = Vec::new();
    for x in &basis_vectors {
        let r = relation_from_vector(&products, x, config.basis)?;
        let sound = checks.par_iter().all(|h| verify_relation(&r, h).is_zero());
        if sound {
            relations.push(r);
        } else {
            discarded.push(r);
        }
    }
    Ok(Discovery { products, sample_count, rank, relations, discarded })
}
