use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sym3inv::checks::{residual, syzygy_residuals};
use sym3inv::exact::{nullspace, nullspace_multimodular, rank, RationalMatrix};
use sym3inv::function_basis::{complete, i8_denominator, k6_denominator, reconstruct_i8, reconstruct_k6, ElevenBasis};
use sym3inv::syzygy::{
    builtin_relations, discover_relations, enumerate_products, evaluate_products, express_in_span, same_span, Basis,
    DiscoveryConfig, SyzygyRelation,
};
use sym3inv::tensor::random_harmonic_with;
use sym3inv::{all_invariants, ExactScalar, HarmonicParts, Invariant, Traceless3Tensor, Vec3};

type Q = ExactScalar;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn builtin(degree: u32) -> Vec<&'static SyzygyRelation> {
    builtin_relations().iter().filter(|r| r.degree() == degree).collect()
}

#[test]
fn builtin_relations_vanish_on_hundred_points() {
    for r in syzygy_residuals(7, 100) {
        assert!(r.zero, "{} has residual {}", r.label, r.max_residual);
    }
}

#[test]
fn perturbed_relations_are_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points: Vec<HarmonicParts<Q>> = (0..3).map(|_| random_harmonic_with(&mut rng, 9)).collect();
    for r in builtin_relations() {
        for idx in [0, r.terms().len() / 2, r.terms().len() - 1] {
            let bad = r.perturbed(idx, &q(1, 7));
            assert!(points.iter().any(|h| !residual(&bad, h).is_zero()), "{:?} term {idx}", r.label());
        }
    }
}

#[test]
fn degree_ten_discovery_contains_the_elimination_relations() {
    let found = discover_relations(&DiscoveryConfig { basis: Basis::Thirteen, degree: 10, seed: 1, sample_count: None })
        .unwrap();
    assert_eq!(found.products.len(), 80);
    assert_eq!(found.relations.len(), 2);
    assert!(found.discarded.is_empty());
    for r in builtin(10) {
        assert!(express_in_span(&found.relations, r).unwrap().is_some(), "{:?}", r.label());
    }
}

#[test]
fn degree_sixteen_discovery_contains_the_three_relations() {
    let found = discover_relations(&DiscoveryConfig { basis: Basis::Eleven, degree: 16, seed: 1, sample_count: None })
        .unwrap();
    assert_eq!(found.nullity(), 3);
    assert!(found.discarded.is_empty());
    let known = builtin(16);
    assert_eq!(known.len(), 3);
    for r in &known {
        assert!(express_in_span(&found.relations, r).unwrap().is_some(), "{:?}", r.label());
    }
    let owned: Vec<SyzygyRelation> = known.into_iter().cloned().collect();
    assert!(same_span(&found.relations, &owned).unwrap());
}

#[test]
fn discovery_is_stable_across_seeds() {
    let run = |seed| {
        discover_relations(&DiscoveryConfig { basis: Basis::Thirteen, degree: 10, seed, sample_count: Some(100) })
            .unwrap()
            .relations
    };
    let (a, b) = (run(1), run(2));
    assert_eq!(a.len(), b.len());
    assert!(same_span(&a, &b).unwrap());
}

#[test]
fn low_degrees_have_no_relations() {
    for basis in [Basis::Thirteen, Basis::Eleven] {
        for degree in [4, 6] {
            let found = discover_relations(&DiscoveryConfig { basis, degree, seed: 4, sample_count: None }).unwrap();
            assert!(found.relations.is_empty(), "{basis:?} degree {degree}");
        }
    }
}

#[test]
fn too_few_samples_is_an_error() {
    assert!(discover_relations(&DiscoveryConfig { basis: Basis::Thirteen, degree: 10, seed: 4, sample_count: Some(20) })
        .is_err());
}

#[test]
fn modular_and_fraction_free_nullspaces_agree_on_an_evaluation_matrix() {
    let products = enumerate_products(Basis::Thirteen, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rows: Vec<Vec<Q>> =
        (0..products.len() + 10).map(|_| evaluate_products(&products, &random_harmonic_with(&mut rng, 9))).collect();
    let m = RationalMatrix::from_rows(rows).unwrap();
    let modular = nullspace_multimodular(&m).unwrap();
    assert_eq!(modular, nullspace(&m));
    assert_eq!(rank(&m), products.len() - modular.len());
}

#[test]
fn reconstruction_matches_direct_contractions() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let h: HarmonicParts<Q> = HarmonicParts::from_variables(std::array::from_fn(|_| {
            q(rng.random_range(-12..=12), rng.random_range(1..=3))
        }));
        let direct = all_invariants(&h);
        let b = ElevenBasis::from_invariants(&direct);
        let k6 = reconstruct_k6(&b);
        assert_eq!(&k6, direct.get(Invariant::K6));
        assert_eq!(&reconstruct_i8(&b, &k6), direct.get(Invariant::I8));
        assert_eq!(complete(&b), direct);
    }
}

#[test]
fn degenerate_branches_return_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let d = Traceless3Tensor::new(std::array::from_fn(|_| q(rng.random_range(-9..=9), 1)));
        let u = Vec3::new(std::array::from_fn(|_| q(rng.random_range(-9..=9), 1)));
        for h in [HarmonicParts::new(d.clone(), Vec3::zero()), HarmonicParts::new(Traceless3Tensor::zero(), u.clone())] {
            let direct = all_invariants(&h);
            let b = ElevenBasis::from_invariants(&direct);
            assert!(k6_denominator(&b).is_zero());
            let k6 = reconstruct_k6(&b);
            assert!(k6.is_zero());
            assert_eq!(&k6, direct.get(Invariant::K6));
            let i8 = reconstruct_i8(&b, &k6);
            assert!(i8.is_zero());
            assert_eq!(&i8, direct.get(Invariant::I8));
        }
        let b = ElevenBasis::from_invariants(&all_invariants(&HarmonicParts::new(d, Vec3::zero())));
        assert!(i8_denominator(&b).is_zero());
    }
}

#[test]
fn float_reconstruction_is_close() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let h: HarmonicParts<f64> = random_harmonic_with(&mut rng, 3);
        let direct = all_invariants(&h);
        let rebuilt = complete(&ElevenBasis::from_invariants(&direct));
        let size = direct.get(Invariant::I2) + direct.get(Invariant::J2);
        for inv in [Invariant::K6, Invariant::I8] {
            let scale = direct.get(inv).abs().max(size.powi(inv.degree() as i32 / 2));
            assert!((rebuilt.get(inv) - direct.get(inv)).abs() <= 1e-8 * scale, "{inv}");
        }
    }
}
