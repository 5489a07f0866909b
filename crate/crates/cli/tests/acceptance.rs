//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! 1. Corner-sweep table reproduction at fixed tolerances, under 1 s.
//! 2. The dot-product index drops on the squared counterexample matrix.
//! 3. `pcm axioms all --strict` exits 0 at default trials, under 60 s.
//! 4. Consistency equivalences over >= 1000 random cases per property.
//! 5. Closed-form corner identities for PLI, KII, and lambda_max.
//! 6. Random-index table behavior at 100 000 samples, under 2 min.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcm::axioms::{build_ri_table, estimate_ri, random_reciprocal, IndexFn, RandomScale};
use pcm::{
    geometric_mean_weights, kii, pli, principal_eigen_default, ComparisonMatrix, CornerSpec,
    IndexName, WeightMethod,
};

/// Reference corner-sweep values: (x, RIC, CI, GWI, PLI, KII, GCI).
const TABLE2: [(f64, [f64; 6]); 11] = [
    (1.0, [0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (2.0, [0.0474, 0.027, 0.1595, 0.5, 0.5, 0.1602]),
    (3.0, [0.1011, 0.068, 0.2509, 1.3333, 0.667, 0.4023]),
    (4.0, [0.1391, 0.109, 0.3113, 2.25, 0.75, 0.6406]),
    (5.0, [0.1658, 0.147, 0.3547, 3.2, 0.8, 0.8634]),
    (6.0, [0.1853, 0.184, 0.3875, 4.1667, 0.8333, 1.07]),
    (7.0, [0.1999, 0.218, 0.4134, 5.1429, 0.857, 1.2622]),
    (8.0, [0.2113, 0.25, 0.4344, 6.125, 0.875, 1.4414]),
    (9.0, [0.2204, 0.28, 0.4518, 7.1111, 0.889, 1.6093]),
    (10.0, [0.2279, 0.309, 0.4666, 8.1, 0.9, 1.7676]),
    (100.0, [0.292, 1.428, 0.6492, 98.1, 0.99, 7.0692]),
];

const TABLE2_NAMES: [IndexName; 6] = [
    IndexName::Ric,
    IndexName::Ci,
    IndexName::Gwi,
    IndexName::Pli,
    IndexName::Kii,
    IndexName::Gci,
];

fn corner3(x: f64) -> ComparisonMatrix<f64> {
    ComparisonMatrix::corner(CornerSpec::new(3, x).unwrap())
}

#[test]
fn criterion_1_corner_sweep_table_reproduction() {
    let start = Instant::now();
    for (x, expected) in TABLE2 {
        let report = pcm::report(&corner3(x), None, WeightMethod::Gm).unwrap();
        for (name, want) in TABLE2_NAMES.iter().zip(expected) {
            let got = report.get(*name).unwrap();
            // PLI's printed value at x = 100 is 98.1 while the triad
            // formula gives 98.01; everything else sits within 5e-3
            let tol = if *name == IndexName::Pli && x == 100.0 {
                0.15
            } else {
                5e-3
            };
            assert!(
                (got - want).abs() <= tol,
                "{name} at x = {x}: got {got}, want {want} +- {tol}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "sweep took {elapsed:?}");
    println!("criterion 1 (corner-sweep table, 11 columns x 6 indices): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_ric_drops_on_the_squared_counterexample() {
    let a: ComparisonMatrix<f64> =
        ComparisonMatrix::from_upper_triangle(3, &[0.1, 0.15, 0.3]).unwrap();
    let b = a.elementwise_power(2.0).unwrap();

    let ric_a = pcm::ric(&a).unwrap();
    let ric_b = pcm::ric(&b).unwrap();
    assert!((ric_a - 0.047).abs() <= 1e-3, "RIC(A) = {ric_a}");
    assert!((ric_b - 0.018).abs() <= 1e-3, "RIC(A^2) = {ric_b}");
    assert!(ric_b < ric_a, "squaring must lower RIC here");
    println!(
        "criterion 2 (intensification counterexample): PASS, RIC(A) = {ric_a:.4} -> RIC(A^2) = {ric_b:.4}"
    );
}

#[test]
fn criterion_3_strict_axiom_table_exits_zero() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pcm"))
        .args(["axioms", "all", "--strict"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();

    assert!(
        out.status.success(),
        "exit {:?}\nstdout:\n{}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    for row in [
        "CI     Y   Y   Y   Y   Y   N",
        "GWI    Y   Y   N   ?   Y   Y",
        "GCI    Y   Y   Y   Y   Y   N",
        "PLI    Y   Y   Y   Y   Y   N",
        "RIC    Y   Y   N   Y   Y   Y",
        "KII    Y   Y   Y   Y   Y   Y",
    ] {
        assert!(text.contains(row), "missing row '{row}' in:\n{text}");
    }
    assert!(elapsed.as_secs_f64() < 60.0, "axioms run took {elapsed:?}");
    println!("criterion 3 (strict verdict table via CLI): PASS in {elapsed:?}");
}

/// Random positive weights with at least one strongly off-one ratio,
/// plus the cell realizing it.
fn random_weights_with_gap(
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (ComparisonMatrix<f64>, (usize, usize)) {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| rng.gen_range((1.0f64 / 9.0).ln()..=9.0f64.ln()).exp())
            .collect();
        let m = ComparisonMatrix::from_weights(&w).unwrap();
        let mut best = (0, 1);
        let mut gap = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let g = m.get(i, j).ln().abs();
                if g > gap {
                    gap = g;
                    best = (i, j);
                }
            }
        }
        if gap >= 0.2 {
            return (m, best);
        }
    }
}

#[test]
fn criterion_4_consistency_equivalence_properties() {
    const CASES: usize = 1000;
    let indices = IndexFn::<f64>::standard_six(WeightMethod::Gm);

    // EM and GM agree on consistent matrices
    let mut rng = ChaCha8Rng::seed_from_u64(4001);
    for _ in 0..CASES {
        let n = rng.gen_range(3..=7);
        let (m, _) = random_weights_with_gap(n, &mut rng);
        let em = principal_eigen_default(&m).unwrap().vector;
        let gm = geometric_mean_weights(&m).unwrap();
        for (a, b) in em.weights().iter().zip(gm.weights()) {
            assert!((a - b).abs() <= 1e-8, "EM/GM disagree: {a} vs {b}");
        }
    }

    // lambda_max >= n on arbitrary reciprocal samples
    let mut rng = ChaCha8Rng::seed_from_u64(4002);
    for _ in 0..CASES {
        let n = rng.gen_range(3..=7);
        let m = random_reciprocal::<f64>(n, RandomScale::SaatyDiscrete, &mut rng).unwrap();
        let lambda = principal_eigen_default(&m).unwrap().lambda_max;
        assert!(lambda >= n as f64 - 1e-9, "lambda {lambda} below n = {n}");
    }

    // every index: zero on consistent, positive on delta-perturbed
    let mut rng = ChaCha8Rng::seed_from_u64(4003);
    for _ in 0..CASES {
        let n = rng.gen_range(3..=7);
        let (m, (i, j)) = random_weights_with_gap(n, &mut rng);
        for f in &indices {
            let zero = f.eval(&m).unwrap();
            assert!(zero <= 1e-9, "{} = {zero} on a consistent matrix", f.name());
        }
        for delta in [2.0, 0.5] {
            let perturbed = m.perturb_entry(i, j, delta).unwrap();
            for f in &indices {
                let v = f.eval(&perturbed).unwrap();
                assert!(v > 1e-9, "{} = {v} on a perturbed matrix", f.name());
            }
        }
    }

    // permutation invariance of every index
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    for _ in 0..CASES {
        let n = rng.gen_range(3..=7);
        let m = random_reciprocal::<f64>(n, RandomScale::SaatyDiscrete, &mut rng).unwrap();
        let mut sigma: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        sigma.shuffle(&mut rng);
        let p = m.permute(&sigma).unwrap();
        for f in &indices {
            let base = f.eval(&m).unwrap();
            let permuted = f.eval(&p).unwrap();
            assert!(
                (base - permuted).abs() <= 1e-9 * base.abs().max(1.0),
                "{} not permutation-invariant: {base} vs {permuted}",
                f.name()
            );
        }
    }

    println!("criterion 4 (consistency equivalences, {CASES} cases per property): PASS");
}

#[test]
fn criterion_5_closed_form_corner_identities() {
    for x in [1.1, 2.0, 5.0, 10.0, 100.0] {
        let c = corner3(x);

        let pli_closed = x + 1.0 / x - 2.0;
        assert!(
            (pli(&c).unwrap() - pli_closed).abs() <= 1e-12,
            "PLI(corner(3,{x}))"
        );

        let kii_closed = 1.0 - 1.0 / x;
        assert!(
            (kii(&c).unwrap() - kii_closed).abs() <= 1e-12,
            "KII(corner(3,{x}))"
        );

        let lambda = principal_eigen_default(&c).unwrap().lambda_max;
        let relation = lambda.powi(3) - 3.0 * lambda.powi(2) - (x + 1.0 / x - 2.0);
        assert!(
            relation.abs() <= 1e-6,
            "characteristic relation off by {relation} at x = {x}"
        );
    }
    println!("criterion 5 (closed-form corner identities at 1e-12 / 1e-6): PASS");
}

#[test]
fn criterion_6_random_index_behavior() {
    const SAMPLES: usize = 100_000;
    let start = Instant::now();

    let table = build_ri_table::<f64>(3..=8, SAMPLES, 42).unwrap();
    let values: Vec<(usize, f64)> = table.entries().collect();
    for pair in values.windows(2) {
        assert!(
            pair[1].1 >= pair[0].1,
            "R.I. not monotone: {:?} -> {:?}",
            pair[0],
            pair[1]
        );
    }

    let ri10 = estimate_ri::<f64>(10, SAMPLES, 42, RandomScale::SaatyDiscrete).unwrap();
    assert!(ri10.mean_ci < 1.7, "R.I.(10) = {}", ri10.mean_ci);
    assert_eq!(ri10.skipped, 0);

    let again = build_ri_table::<f64>(3..=8, SAMPLES, 42).unwrap();
    assert_eq!(again, table, "identical seeds must give identical tables");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "R.I. runs took {elapsed:?}");
    println!(
        "criterion 6 (R.I. monotone over 3..8, R.I.(10) = {:.4} < 1.7, reproducible): PASS in {elapsed:?}",
        ri10.mean_ci
    );
}
