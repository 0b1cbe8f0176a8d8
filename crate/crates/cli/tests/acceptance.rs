//! Acceptance suite: one test per criterion, exact arithmetic, zero
//! tolerance. Each test prints a `ACCEPTANCE <n> ... PASS` line (visible
//! with `--nocapture`); the harness result is the per-criterion verdict.
//!
//! Run with: `cargo test -p hamfix-cli --test acceptance -- --nocapture`

use hamfix::{
    build_phi, check_inequality, check_unimodality, gen_cpn, gen_product, mutation_corpus, mutate,
    phi_kernel, rat, residue_check, sign_certificate, BettiProfile, CanonicalBasis,
    ClassRestrictions, CpnSpec, FixedPointSet, LocalizationSum, Rat, VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

fn cpn(n: usize, a: &[i64]) -> (FixedPointSet, CanonicalBasis) {
    gen_cpn(&CpnSpec::new(n, a.to_vec()).unwrap())
}

fn cpn_std(n: usize) -> (FixedPointSet, CanonicalBasis) {
    let a: Vec<i64> = (0..=n as i64).collect();
    cpn(n, &a)
}

fn cp2xcp2() -> (FixedPointSet, CanonicalBasis) {
    let l = cpn(2, &[0, 1, 2]);
    let r = cpn(2, &[0, 5, 10]);
    gen_product(&l.0, &l.1, &r.0, &r.1).unwrap()
}

fn cp1xcp1() -> (FixedPointSet, CanonicalBasis) {
    let l = cpn(1, &[0, 1]);
    let r = cpn(1, &[0, 3]);
    gen_product(&l.0, &l.1, &r.0, &r.1).unwrap()
}

fn hamfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamfix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hamfix-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_cpn(n: usize, weights: &str, name: &str) -> PathBuf {
    let path = tmp_dir().join(name);
    let out = hamfix(&[
        "gen",
        "cpn",
        "--n",
        &n.to_string(),
        "--weights",
        weights,
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

fn write_product(left: &std::path::Path, right: &std::path::Path, name: &str) -> PathBuf {
    let path = tmp_dir().join(name);
    let out = hamfix(&[
        "gen",
        "product",
        left.to_str().unwrap(),
        right.to_str().unwrap(),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

/// Criterion 1: `check-theorem` reproduces the dimension-8 statement on
/// CP^4 (b2 = 1 <= b4 = 1) and on CP^2 x CP^2 (2 <= 3), verdict
/// CONSISTENT, each run under one second.
#[test]
fn acceptance_1_theorem_reproduction() {
    let cp4 = write_cpn(4, "0,1,2,3,4", "acc1-cp4.json");
    let cp2a = write_cpn(2, "0,1,2", "acc1-cp2a.json");
    let cp2b = write_cpn(2, "0,5,10", "acc1-cp2b.json");
    let prod = write_product(&cp2a, &cp2b, "acc1-p22.json");

    for (path, lhs, rhs) in [(&cp4, "1", "1"), (&prod, "2", "3")] {
        let start = Instant::now();
        let out = hamfix(&["check-theorem", path.to_str().unwrap()]);
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["data"]["result"], "CONSISTENT");
        let inequality = report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["check"] == "inequality")
            .unwrap();
        assert_eq!(inequality["verdict"], "pass");
        assert_eq!(inequality["witness"]["lhs"], lhs);
        assert_eq!(inequality["witness"]["rhs"], rhs);
    }
    println!("ACCEPTANCE 1 (theorem reproduction): PASS");
}

/// Criterion 2: residue identities hold exactly on CP^n for n = 1..8 and
/// on all pairwise products of CP^1..CP^3 with generic weights; the top
/// symplectic volume is strictly positive on each. Under 10 s total.
#[test]
fn acceptance_2_localization_exactness() {
    let start = Instant::now();
    let mut datasets: Vec<(String, FixedPointSet)> = Vec::new();
    for n in 1..=8 {
        let (fps, _) = cpn_std(n);
        datasets.push((format!("cp{n}"), fps));
    }
    // generic: left and right factors use different weight spreads
    let left_weights: [&[i64]; 3] = [&[0, 1], &[0, 1, 2], &[0, 1, 2, 3]];
    let right_weights: [&[i64]; 3] = [&[0, 5], &[0, 5, 11], &[0, 5, 11, 18]];
    for i in 1..=3usize {
        for j in 1..=3usize {
            let l = cpn(i, left_weights[i - 1]);
            let r = cpn(j, right_weights[j - 1]);
            let (fps, _) = gen_product(&l.0, &l.1, &r.0, &r.1).unwrap();
            datasets.push((format!("cp{i}xcp{j}"), fps));
        }
    }
    for (name, fps) in &datasets {
        let cert = residue_check(fps);
        assert!(cert.passed(), "{name}: {cert}");
        let omega = ClassRestrictions::omega(fps).unwrap();
        let volume = LocalizationSum::compute(fps, &omega.pow(fps.half_dim())).unwrap();
        assert!(volume.is_pure(), "{name}: volume has residues");
        assert!(volume.value() > rat(0), "{name}: volume not positive");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 (localization exactness, {} datasets in {elapsed:?}): PASS",
        datasets.len()
    );
}

/// Criterion 3: every generated dataset passes the canonical axioms, and
/// flipping the sign of any single nonzero restriction value makes
/// verification fail with a pinpointed witness.
#[test]
fn acceptance_3_canonical_axioms() {
    let mut datasets = [("cp1".to_owned(), cpn_std(1)),
        ("cp2".to_owned(), cpn_std(2)),
        ("cp3".to_owned(), cpn_std(3)),
        ("cp4".to_owned(), cpn_std(4)),
        ("cp1xcp1".to_owned(), cp1xcp1()),
        ("cp2xcp2".to_owned(), cp2xcp2())];
    let mut flips = 0usize;
    for (name, (fps, basis)) in datasets.iter_mut() {
        let cert = basis.verify(fps, VerifyOptions::default()).unwrap();
        assert!(cert.passed(), "{name}: {cert}");
        for (p_label, cls) in basis.classes() {
            for (q_label, value) in cls.coefficients() {
                if value == &rat(0) {
                    continue;
                }
                let mut classes = basis.classes().clone();
                let mut coeffs = cls.coefficients().clone();
                coeffs.insert(q_label.clone(), -value.clone());
                classes.insert(
                    p_label.clone(),
                    ClassRestrictions::from_coefficients(cls.degree(), coeffs).unwrap(),
                );
                let cert = CanonicalBasis::new(classes)
                    .verify(fps, VerifyOptions::default())
                    .unwrap();
                assert!(
                    cert.failed(),
                    "{name}: flip of {p_label}|{q_label} not caught"
                );
                assert_eq!(
                    cert.witness["p"], *p_label,
                    "{name}: witness does not pinpoint the class"
                );
                assert!(
                    cert.witness.contains_key("axiom"),
                    "{name}: witness has no axiom"
                );
                flips += 1;
            }
        }
    }
    println!("ACCEPTANCE 3 (canonical axioms, {flips} sign flips all caught): PASS");
}

/// Criterion 4: Phi is injective on CP^4, CP^6 (the dim-12 branch) and
/// CP^2 x CP^2; the CP^4 Phi matrix is [[1,1],[0,-2]].
#[test]
fn acceptance_4_phi_injectivity() {
    for (name, (fps, basis)) in [
        ("cp4", cpn_std(4)),
        ("cp6", cpn_std(6)),
        ("cp2xcp2", cp2xcp2()),
    ] {
        let phi = build_phi(&fps, &basis).unwrap();
        assert!(phi_kernel(&phi).is_empty(), "{name}: nontrivial kernel");
    }
    let (fps, basis) = cpn_std(4);
    let phi = build_phi(&fps, &basis).unwrap();
    let m = phi.matrix();
    assert_eq!((m.rows(), m.cols()), (2, 2));
    let entries = [
        m.at(0, 0).clone(),
        m.at(0, 1).clone(),
        m.at(1, 0).clone(),
        m.at(1, 1).clone(),
    ];
    assert_eq!(entries, [rat(1), rat(1), rat(0), rat(-2)]);
    println!("ACCEPTANCE 4 (Phi injectivity, CP4 matrix [[1,1],[0,-2]]): PASS");
}

/// Criterion 5: on every generated moment-normalized dataset of dimension
/// divisible by 4, all per-point sign-certificate values share one weak
/// sign — 1000 randomized tuples, zero violations.
#[test]
fn acceptance_5_uniform_sign_law() {
    let datasets = [cpn_std(2),
        cpn_std(4),
        cpn_std(6),
        cp1xcp1(),
        cp2xcp2(),
        {
            let l = cpn(1, &[0, 2]);
            let r = cpn(3, &[0, 1, 4, 9]);
            gen_product(&l.0, &l.1, &r.0, &r.1).unwrap()
        }];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157);
    let mut trials = 0usize;
    let mut violations = 0usize;
    while trials < 1000 {
        let (fps, _) = &datasets[trials % datasets.len()];
        assert!(fps.is_normalized());
        let n = fps.half_dim();
        let max_index = 2 * n;
        let coeffs: BTreeMap<String, Rat> = fps
            .points()
            .iter()
            .map(|p| {
                let free = p.index() % 4 == 2 || p.index() == max_index;
                let c = if free {
                    hamfix::ratio(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=8))
                } else {
                    rat(0)
                };
                (p.label.clone(), c)
            })
            .collect();
        let cls = ClassRestrictions::from_coefficients(n - 2, coeffs).unwrap();
        let cert = sign_certificate(fps, &cls).unwrap();
        if !cert.uniform_sign() || cert.realized_sign() == Some(1) {
            violations += 1;
        }
        trials += 1;
    }
    assert_eq!(violations, 0, "{violations} of {trials} trials violated the sign law");
    println!("ACCEPTANCE 5 (uniform sign law, {trials} trials, 0 violations): PASS");
}

/// Criterion 6: 100% of single-edit mutations of CP^2, CP^4 and
/// CP^1 x CP^1 are rejected by the full validate pipeline (structure +
/// Morse/duality + moment order + residues).
#[test]
fn acceptance_6_mutation_kill_rate() {
    let full_validate = |fps: &FixedPointSet| fps.validate().passed() && residue_check(fps).passed();
    let mut total = 0usize;
    let mut killed = 0usize;
    for (name, (fps, _)) in [
        ("cp2", cpn_std(2)),
        ("cp4", cpn_std(4)),
        ("cp1xcp1", cp1xcp1()),
    ] {
        assert!(full_validate(&fps), "{name}: baseline must pass");
        for edit in mutation_corpus(&fps) {
            let mutated = mutate(&fps, &edit).unwrap();
            total += 1;
            if !full_validate(&mutated) {
                killed += 1;
            } else {
                panic!("{name}: mutation {edit} survived the pipeline");
            }
        }
    }
    assert_eq!(killed, total);
    println!("ACCEPTANCE 6 (mutation kill rate {killed}/{total}): PASS");
}

/// Criterion 7: over 10,000 random symmetric unimodal profiles with
/// b0 = 1 and even N <= 20, unimodality implies the main inequality,
/// with zero exceptions.
#[test]
fn acceptance_7_profile_implication() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1221);
    let mut checked = 0usize;
    while checked < 10_000 {
        let half = rng.gen_range(1usize..=10); // N = 2*half, even, <= 20
        let n = 2 * half;
        let mut values = vec![0u64; n + 1];
        values[0] = 1;
        for k in 1..=half {
            values[k] = values[k - 1] + rng.gen_range(0u64..=4);
        }
        for k in half + 1..=n {
            values[k] = values[n - k];
        }
        let profile = BettiProfile::new(values);
        assert!(profile.is_symmetric());
        assert!(
            check_unimodality(&profile).passed(),
            "constructed profile must be unimodal"
        );
        let inequality = check_inequality(&profile);
        assert!(
            inequality.passed(),
            "unimodal symmetric profile {:?} fails the inequality: {inequality}",
            profile.values()
        );
        checked += 1;
    }
    println!("ACCEPTANCE 7 (profile implication, {checked} profiles): PASS");
}

/// Criterion 8: byte-identical reports across two runs on the full
/// bundled corpus; no floats anywhere in any report.
#[test]
fn acceptance_8_determinism() {
    let cp1 = write_cpn(1, "0,1", "acc8-cp1.json");
    let cp2 = write_cpn(2, "0,1,2", "acc8-cp2.json");
    let cp3 = write_cpn(3, "0,1,2,3", "acc8-cp3.json");
    let cp4 = write_cpn(4, "0,1,2,3,4", "acc8-cp4.json");
    let cp6 = write_cpn(6, "0,1,2,3,4,5,6", "acc8-cp6.json");
    let cp1b = write_cpn(1, "0,3", "acc8-cp1b.json");
    let cp2b = write_cpn(2, "0,5,10", "acc8-cp2b.json");
    let p11 = write_product(&cp1, &cp1b, "acc8-p11.json");
    let p22 = write_product(&cp2, &cp2b, "acc8-p22.json");
    let fabricated = tmp_dir().join("acc8-fabricated.json");
    std::fs::write(&fabricated, fabricated_dataset::FABRICATED_B2_GT_B4).unwrap();

    let all = [&cp1, &cp2, &cp3, &cp4, &cp6, &p11, &p22, &fabricated];
    let mut corpus: Vec<Vec<String>> = Vec::new();
    for ds in all {
        let path = ds.to_str().unwrap().to_owned();
        for cmd in ["validate", "betti", "residues", "check-unimodality"] {
            corpus.push(vec![cmd.to_owned(), path.clone()]);
        }
    }
    for ds in [&cp2, &cp4, &cp6, &p11, &p22, &fabricated] {
        let path = ds.to_str().unwrap().to_owned();
        for cmd in ["verify-canonical", "phi", "check-theorem"] {
            corpus.push(vec![cmd.to_owned(), path.clone()]);
        }
        corpus.push(vec![
            "integrate".to_owned(),
            path.clone(),
            "--omega-power".to_owned(),
            "2".to_owned(),
        ]);
    }
    corpus.push(vec![
        "check-theorem".to_owned(),
        cp3.to_str().unwrap().to_owned(),
    ]);
    corpus.push(vec![
        "integrate".to_owned(),
        cp2.to_str().unwrap().to_owned(),
        "--class".to_owned(),
        "p1".to_owned(),
    ]);
    corpus.push(vec![
        "mutate".to_owned(),
        cp2.to_str().unwrap().to_owned(),
        "--shift-moment".to_owned(),
        "p1:1/2".to_owned(),
    ]);
    corpus.push(vec![
        "validate".to_owned(),
        cp4.to_str().unwrap().to_owned(),
        "--format".to_owned(),
        "text".to_owned(),
    ]);

    let float_pattern = |text: &str| {
        text.bytes().zip(text.bytes().skip(1)).zip(text.bytes().skip(2)).any(
            |((a, b), c)| a.is_ascii_digit() && b == b'.' && c.is_ascii_digit(),
        )
    };
    for args in &corpus {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = hamfix(&argv);
        let second = hamfix(&argv);
        assert_eq!(
            first.stdout, second.stdout,
            "non-deterministic output for {args:?}"
        );
        assert_eq!(first.status.code(), second.status.code());
        let text = String::from_utf8(first.stdout).unwrap();
        let lower = text.to_lowercase();
        assert!(!lower.contains("inf"), "`inf` in report for {args:?}");
        assert!(!lower.contains("nan"), "`nan` in report for {args:?}");
        assert!(!float_pattern(&text), "decimal float in report for {args:?}");
    }
    println!(
        "ACCEPTANCE 8 (determinism, {} invocations run twice): PASS",
        corpus.len()
    );
}

#[path = "common/fabricated.rs"]
mod fabricated_dataset;
