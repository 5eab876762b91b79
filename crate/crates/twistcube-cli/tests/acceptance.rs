//! Acceptance gate for the whole workspace. Each test covers one release
//! criterion and prints a PASS line with the measured facts; run with
//! `--nocapture` to see them. Frozen values come from the brute-force
//! oracles in the library's test suites and from hand derivations.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistcube::character::{compare_characters, demazure_character, FormalCharacter};
use twistcube::cube::CubeSpec;
use twistcube::rep::{derive_constants, necessary_conditions, CartanMatrix};
use twistcube::toric::{all_cartier_points, cartier_point, section_polytope_contains, SignVector};
use twistcube::untwist::{closure_witness, grid_convexity, is_untwisted, positivity_necessity_holds};
use twistcube::{Error, Limits, Rational};

fn pick(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    let width = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % width) as i64
}

fn random_spec(rng: &mut ChaCha8Rng, max_n: usize, c_abs: i64, ell_abs: i64) -> CubeSpec {
    let n = 1 + (pick(rng, 0, max_n as i64 - 1) as usize);
    let mut c = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            c.push((i, j, pick(rng, -c_abs, c_abs)));
        }
    }
    let ell: Vec<i64> = (0..n).map(|_| pick(rng, -ell_abs, ell_abs)).collect();
    CubeSpec::new(n, &c, &ell).unwrap()
}

#[test]
fn criterion_1_two_dimensional_witness_values() {
    let spec = CubeSpec::new(2, &[(1, 2, 2)], &[4, 3]).unwrap();
    let all_minus = SignVector::all_minus(2).unwrap();
    let point = cartier_point(&spec, all_minus).unwrap();
    assert_eq!(point.m, vec![-2, 3]);
    assert!(!section_polytope_contains(&spec, &point.m).unwrap());
    let report = is_untwisted(&spec, &Limits::default()).unwrap();
    assert!(!report.untwisted);
    println!(
        "PASS criterion 1: all-minus Cartier point (-2, 3) outside the section polytope, verdict false"
    );
}

#[test]
fn criterion_2_six_letter_word_instance() {
    let cartan = CartanMatrix::from_label("A3").unwrap();
    let lambda = [0, 0, 2];
    let word = [2, 1, 2, 3, 2, 1];
    let spec = derive_constants(&cartan, &lambda, &word).unwrap();

    let expected_c = [
        (1, 2, -1), (1, 3, 2), (1, 4, -1), (1, 5, 2), (1, 6, -1),
        (2, 3, -1), (2, 4, 0), (2, 5, -1), (2, 6, 2),
        (3, 4, -1), (3, 5, 2), (3, 6, -1),
        (4, 5, -1), (4, 6, 0),
        (5, 6, -1),
    ];
    assert_eq!(spec.c_triples(), expected_c);
    assert_eq!(spec.ell(), &[0, 0, 0, 2, 0, 0]);

    let necessary = necessary_conditions(&cartan, &lambda, &word).unwrap();
    assert!(necessary.both_hold());

    let limits = Limits::default();
    assert!(!is_untwisted(&spec, &limits).unwrap().untwisted);

    let cones = all_cartier_points(&spec, &limits).unwrap();
    assert_eq!(cones.len(), 64);
    let negative_cones: BTreeSet<String> = cones
        .iter()
        .filter(|point| point.m.iter().any(|&v| v < 0))
        .map(|point| point.sigma.to_string())
        .collect();
    let expected: BTreeSet<String> = ["-+--++", "-+---+", "-+--+-", "-+----"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(negative_cones, expected);

    let all_minus = cones.last().unwrap();
    assert_eq!(all_minus.sigma, SignVector::all_minus(6).unwrap());
    assert_eq!(all_minus.m, vec![0, 2, 2, 2, 0, 0]);

    // The recorded golden file must carry the same all-minus vector.
    let golden: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/sixletter_cartier.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let recorded = golden["result"]["cones"].as_array().unwrap().last().unwrap();
    assert_eq!(recorded["sigma"], "------");
    assert_eq!(recorded["m"], serde_json::json!([0, 2, 2, 2, 0, 0]));

    println!(
        "PASS criterion 2: six-letter instance derives the frozen tables, fails untwistedness, \
         and 4 of 64 cones carry a negative Cartier coordinate (all-minus point recorded as (0,2,2,2,0,0))"
    );
}

#[test]
fn criterion_3_repeated_letter_contrapositive() {
    let cartan = CartanMatrix::from_label("A2").unwrap();
    let lambda = [2, 1];
    let word = [1, 2, 1];
    let spec = derive_constants(&cartan, &lambda, &word).unwrap();
    assert_eq!(spec.c_triples(), vec![(1, 2, -1), (1, 3, 2), (2, 3, -1)]);
    assert_eq!(spec.ell(), &[2, 1, 2]);

    let necessary = necessary_conditions(&cartan, &lambda, &word).unwrap();
    assert!(necessary.support_dominant);
    assert!(!necessary.repeats_vanish);
    assert_eq!(necessary.repeat_violations, vec![1]);

    assert!(!is_untwisted(&spec, &Limits::default()).unwrap().untwisted);
    println!(
        "PASS criterion 3: repeated-letter instance derives (c, ell) exactly, fails the \
         vanishing condition at letter 1, and is twisted"
    );
}

#[test]
fn criterion_4_figure_examples() {
    let limits = Limits::default();

    let mixed = CubeSpec::new(2, &[(1, 2, 1)], &[3, 5]).unwrap();
    assert!(!is_untwisted(&mixed, &limits).unwrap().untwisted);
    let points = mixed.lattice_points(&limits).unwrap();
    assert_eq!(points.len(), 11);
    let negatives: Vec<&[i64]> = points
        .points()
        .iter()
        .filter(|p| p.sign < 0)
        .map(|p| p.coords.as_slice())
        .collect();
    assert_eq!(negatives, vec![&[-1, 5][..]]);

    let open = CubeSpec::new(2, &[(1, 2, -1)], &[-7, 5]).unwrap();
    assert!(!is_untwisted(&open, &limits).unwrap().untwisted);
    let evidence = grid_convexity(&open, 4, &limits).unwrap();
    assert!(evidence.convex_on_grid);
    assert!(evidence.violation.is_none());
    let open_points = open.lattice_points(&limits).unwrap();
    assert_eq!(open_points.len(), 21);
    assert!(open_points.points().iter().all(|p| p.sign == -1));

    println!(
        "PASS criterion 4: mixed example has 11 points with the single negative (-1, 5); \
         open example has 21 negative points and is grid-convex at denominator 4 yet twisted"
    );
}

#[test]
fn criterion_5_five_way_agreement_at_scale() {
    let started = Instant::now();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
    let total = 10_000;
    let mut untwisted = 0usize;
    for _ in 0..total {
        let spec = random_spec(&mut rng, 4, 3, 5);
        let report = is_untwisted(&spec, &limits)
            .unwrap_or_else(|e| panic!("cross-check failure on {spec:?}: {e}"));
        let agree = [
            report.cartier_in_cube,
            report.cartier_nonnegative,
            report.recursive_positivity,
            report.cube_equals_polytope,
            report.basepoint_free,
        ]
        .iter()
        .all(|&v| v == report.untwisted);
        assert!(agree, "conditions disagree on {spec:?}: {report:?}");
        if report.untwisted {
            untwisted += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "ran {total} specs in {elapsed:?}"
    );
    println!(
        "PASS criterion 5: all five conditions agree on {total} random specs \
         ({untwisted} untwisted) in {elapsed:?} with zero inconsistencies"
    );
}

#[test]
fn criterion_6_closure_witnesses_at_scale() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    let epsilons = [
        Rational::new(1, 2),
        Rational::new(1, 4),
        Rational::new(1, 8),
        Rational::new(1, 16),
    ];
    let mut witnesses = 0usize;
    for _ in 0..1_000 {
        let spec = random_spec(&mut rng, 4, 3, 5);
        for mask in 0..(1u64 << spec.n()) {
            let sigma = SignVector::from_mask(mask, spec.n()).unwrap();
            for &epsilon in &epsilons {
                let witness = closure_witness(&spec, sigma, epsilon)
                    .unwrap_or_else(|e| panic!("{spec:?} sigma {sigma}: {e}"));
                assert!(
                    spec.contains_rational(&witness).unwrap(),
                    "witness {witness:?} escaped the cube for {spec:?}"
                );
                witnesses += 1;
            }
        }
    }
    println!(
        "PASS criterion 6: {witnesses} closure witnesses over 1000 specs all verify exact membership"
    );
}

#[test]
fn criterion_7_positivity_and_convexity_sufficiency() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    for _ in 0..5_000 {
        let spec = random_spec(&mut rng, 4, 3, 5);
        assert!(
            positivity_necessity_holds(&spec, &limits).unwrap(),
            "untwisted cube with a negative offset: {spec:?}"
        );
    }

    let grid_limits = Limits {
        point_cap: 6_000_000,
        ..Limits::default()
    };
    let mut evaluated = 0usize;
    let mut convex_confirmed = 0usize;
    for _ in 0..300 {
        let n = 1 + (pick(&mut rng, 0, 2) as usize);
        let mut c = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                c.push((i, j, pick(&mut rng, -3, 3)));
            }
        }
        let ell: Vec<i64> = (0..n).map(|_| pick(&mut rng, 1, 5)).collect();
        let spec = CubeSpec::new(n, &c, &ell).unwrap();
        let evidence = match grid_convexity(&spec, 8, &grid_limits) {
            Ok(evidence) => evidence,
            Err(Error::Capacity { .. }) => continue,
            Err(e) => panic!("{spec:?}: {e}"),
        };
        evaluated += 1;
        if evidence.convex_on_grid {
            convex_confirmed += 1;
            assert!(
                is_untwisted(&spec, &limits).unwrap().untwisted,
                "grid-convex cube with positive offsets is twisted: {spec:?}"
            );
        }
    }
    assert!(evaluated >= 100, "only {evaluated} grids fit the budget");
    assert!(convex_confirmed >= 50, "only {convex_confirmed} convex instances");
    println!(
        "PASS criterion 7: untwisted implies nonnegative offsets on 5000 specs; \
         {convex_confirmed}/{evaluated} positive-offset specs passing the denominator-8 grid are all untwisted"
    );
}

#[test]
fn criterion_8_character_agreement() {
    let limits = Limits::default();
    let labels = ["A1", "A2", "A3", "B2", "G2"];
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut agreed = 0usize;
    let mut attempts = 0usize;
    while agreed < 200 {
        attempts += 1;
        assert!(attempts <= 4_000, "not enough untwisted instances generated");
        let label = labels[(rng.next_u64() % labels.len() as u64) as usize];
        let cartan = CartanMatrix::from_label(label).unwrap();
        let rank = cartan.rank();
        let lambda: Vec<i64> = (0..rank).map(|_| pick(&mut rng, 0, 3)).collect();
        let length = pick(&mut rng, 0, 4) as usize;
        let word: Vec<usize> = (0..length)
            .map(|_| 1 + (rng.next_u64() % rank as u64) as usize)
            .collect();
        let spec = derive_constants(&cartan, &lambda, &word).unwrap();
        if !is_untwisted(&spec, &limits).unwrap().untwisted {
            continue;
        }
        let comparison = compare_characters(&spec, &cartan, &lambda, &word, &limits).unwrap();
        assert!(
            comparison.equal,
            "characters differ on {label} lambda {lambda:?} word {word:?}"
        );
        agreed += 1;
    }

    let a1 = CartanMatrix::from_label("A1").unwrap();
    let character = demazure_character(&a1, &[2], &[1]).unwrap();
    let mut expected = FormalCharacter::zero();
    expected.add_term(vec![2], 1).unwrap();
    expected.add_term(vec![0], 1).unwrap();
    expected.add_term(vec![-2], 1).unwrap();
    assert_eq!(character, expected);

    println!(
        "PASS criterion 8: signed and Demazure characters agree term-for-term on 200 untwisted \
         instances ({attempts} sampled); the rank-one instance matches its three-term character"
    );
}

fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|line| !line.contains("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_9_golden_reports_are_stable() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let mut config_paths: Vec<PathBuf> = std::fs::read_dir(base.join("configs"))
        .unwrap()
        .map(|entry| entry.unwrap().path())
        .collect();
    config_paths.sort();
    assert_eq!(config_paths.len(), 12);

    for config in &config_paths {
        let name = config.file_stem().unwrap().to_str().unwrap();
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(config).unwrap()).unwrap();
        let command = doc["command"].as_str().unwrap();

        let golden = std::fs::read_to_string(base.join("golden").join(format!("{name}.json")))
            .unwrap_or_else(|_| panic!("missing golden for {name}"));

        let mut runs = Vec::new();
        for _ in 0..3 {
            let output = Command::new(env!("CARGO_BIN_EXE_twistcube"))
                .args([command, "--config", config.to_str().unwrap()])
                .output()
                .unwrap();
            assert!(
                output.status.success(),
                "{name}: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            runs.push(String::from_utf8(output.stdout).unwrap());
        }
        let stripped: Vec<String> = runs.iter().map(|r| strip_timing(r)).collect();
        assert_eq!(stripped[0], stripped[1], "{name} differs between runs");
        assert_eq!(stripped[1], stripped[2], "{name} differs between runs");
        assert_eq!(stripped[0], strip_timing(&golden), "{name} differs from golden");
    }
    println!("PASS criterion 9: 12 golden reports byte-stable across 3 runs apart from timing");
}
