//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sym3inv::checks::{isotropy_deviation, parity_violations, syzygy_residuals};
use sym3inv::function_basis::{reconstruct_i8, reconstruct_k6, ElevenBasis};
use sym3inv::optimizer::{minimize, objective, sampled_minimum, FeasiblePoint};
use sym3inv::syzygy::{builtin_relations, discover_relations, express_in_span, Basis, DiscoveryConfig};
use sym3inv::witness::{run_witness, WitnessCase, WitnessOptions};
use sym3inv::{all_invariants, ExactScalar, HarmonicParts, Invariant, Traceless3Tensor, Vec3};

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(n: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let t = start.elapsed();
    let in_time = t <= limit;
    let pass = out.pass && in_time;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let late = if in_time { String::new() } else { format!(", over the {:.1} s limit", limit.as_secs_f64()) };
    println!("{verdict} {n:>2}. {name}: {} ({:.3} s{late})", out.detail, t.as_secs_f64());
    pass
}

fn witness(case: WitnessCase) -> Outcome {
    match run_witness(case, &WitnessOptions::default()) {
        Ok(r) => {
            let gating: Vec<_> = r.gating_checks().collect();
            let failed: Vec<&str> = gating.iter().filter(|c| !c.pass).map(|c| c.label.as_str()).collect();
            let worst = gating.iter().map(|c| c.deviation).fold(0.0, f64::max);
            Outcome {
                pass: failed.is_empty() && !gating.is_empty(),
                detail: if failed.is_empty() {
                    format!("{} checks, largest deviation {worst:.2e}", gating.len())
                } else {
                    format!("failed: {}", failed.join(", "))
                },
            }
        }
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn both(a: Outcome, b: Outcome, la: &str, lb: &str) -> Outcome {
    Outcome { pass: a.pass && b.pass, detail: format!("{la}: {}; {lb}: {}", a.detail, b.detail) }
}

fn reconstruction() -> Outcome {
    let q = |n: i64, d: i64| ExactScalar::new(BigInt::from(n), BigInt::from(d));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..1000 {
        let h: HarmonicParts<ExactScalar> =
            HarmonicParts::from_variables(std::array::from_fn(|_| q(rng.random_range(-9..=9), rng.random_range(1..=3))));
        let v = all_invariants(&h);
        let b = ElevenBasis::from_invariants(&v);
        let k6 = reconstruct_k6(&b);
        if &k6 != v.get(Invariant::K6) || &reconstruct_i8(&b, &k6) != v.get(Invariant::I8) {
            bad += 1;
        }
    }
    let d = Traceless3Tensor::new(std::array::from_fn(|n| q(n as i64 - 3, 1)));
    let u = Vec3::new([q(2, 1), q(-1, 1), q(3, 1)]);
    let mut degenerate_ok = true;
    for h in [HarmonicParts::new(d, Vec3::zero()), HarmonicParts::new(Traceless3Tensor::zero(), u)] {
        let b = ElevenBasis::from_invariants(&all_invariants(&h));
        let k6 = reconstruct_k6(&b);
        degenerate_ok &= k6.is_zero() && reconstruct_i8(&b, &k6).is_zero();
    }
    Outcome {
        pass: bad == 0 && degenerate_ok,
        detail: format!("{bad} mismatches in 1000, degenerate branches {}", if degenerate_ok { "zero" } else { "nonzero" }),
    }
}

fn discovery() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (basis, degree) in [(Basis::Thirteen, 10), (Basis::Eleven, 16)] {
        let found = match discover_relations(&DiscoveryConfig { basis, degree, seed: 1, sample_count: None }) {
            Ok(f) => f,
            Err(e) => return Outcome { pass: false, detail: e.to_string() },
        };
        let known: Vec<_> = builtin_relations().iter().filter(|r| r.degree() == degree).collect();
        let contained = known.iter().filter(|r| matches!(express_in_span(&found.relations, r), Ok(Some(_)))).count();
        pass &= contained == known.len() && found.discarded.is_empty();
        parts.push(format!(
            "degree {degree}: {} relations, {contained}/{} known ones in span",
            found.relations.len(),
            known.len()
        ));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn minimum_value() -> Outcome {
    let best = match minimize(1, 200, 500) {
        Ok(m) => m.value,
        Err(e) => return Outcome { pass: false, detail: e.to_string() },
    };
    let printed = FeasiblePoint::normalized(
        &Traceless3Tensor::new([0.2829, 0.0, 0.0, -0.2828, -0.2450, 0.0, -0.2828]),
        &Vec3::new([-0.4471, -0.7746, -0.4474]),
    )
    .and_then(|p| objective(&p));
    let printed = match printed {
        Ok(v) => v,
        Err(e) => return Outcome { pass: false, detail: e.to_string() },
    };
    let sampled = sampled_minimum(1, 100_000).unwrap_or(f64::NEG_INFINITY);
    Outcome {
        pass: (best - 0.2).abs() <= 1e-3 && (printed - 0.2).abs() <= 2e-3 && sampled >= 0.2 - 1e-6,
        detail: format!("multi-start {best:.9}, printed minimizer {printed:.6}, sampled minimum {sampled:.6}"),
    }
}

fn main() {
    let secs = Duration::from_secs_f64;
    let results = [
        criterion(1, "witness L6, exact", secs(0.1), || witness(WitnessCase::L6)),
        criterion(2, "witness K4, radicals", secs(0.1), || witness(WitnessCase::K4)),
        criterion(3, "witnesses J6 and L4, four-digit values", secs(0.1), || {
            both(witness(WitnessCase::J6), witness(WitnessCase::L4), "J6", "L4")
        }),
        criterion(4, "witness M6 pair", secs(0.1), || witness(WitnessCase::M6)),
        criterion(5, "witness J4 family", secs(1.0), || witness(WitnessCase::J4)),
        criterion(6, "syzygy residuals on 100 points", secs(30.0), || {
            let r = syzygy_residuals(7, 100);
            let nonzero: Vec<String> = r.iter().filter(|x| !x.zero).map(|x| x.label.clone()).collect();
            Outcome {
                pass: nonzero.is_empty() && r.len() == 5,
                detail: format!("{} relations, nonzero: [{}]", r.len(), nonzero.join(", ")),
            }
        }),
        criterion(7, "K6 and I8 reconstruction", secs(60.0), reconstruction),
        criterion(8, "relation discovery at degrees 10 and 16", secs(600.0), discovery),
        criterion(9, "minimum of 2 I2 J2 - 3 J4 is 0.2", secs(120.0), minimum_value),
        criterion(10, "isotropy under 1000 frames", secs(30.0), || {
            let r = isotropy_deviation(1, 1000);
            Outcome { pass: r.worst <= 1e-9, detail: format!("largest deviation {:.2e}", r.worst) }
        }),
        criterion(11, "parity under u -> -u on 1000 points", secs(30.0), || {
            let r = parity_violations(1, 1000);
            Outcome { pass: r.failures.is_empty(), detail: format!("{} violations", r.failures.len()) }
        }),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
