//! Brute-force localization oracle.
//!
//! Recomputes every localization value used elsewhere by direct rational
//! summation over raw coefficient maps, without touching the engine's
//! `localization` module. Frozen tables in these tests were produced by
//! this oracle and checked by hand.

use hamfix::{
    gen_cpn, gen_product, pairing_matrix, rat, ratio, CanonicalBasis, ClassRestrictions, CpnSpec,
    FixedPointSet, LocalizationSum, Rat,
};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Direct evaluation of `Σ_p c_p · u^{k-N} / Λ_p` as an exponent map.
/// Independent of `hamfix::localization`: only raw rational arithmetic.
fn oracle_sum(fps: &FixedPointSet, u_degree: i64, coeffs: &BTreeMap<String, Rat>) -> BTreeMap<i64, Rat> {
    let n = fps.half_dim() as i64;
    let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
    for p in fps.points() {
        let mut lambda = rat(1);
        for &w in &p.weights {
            lambda *= rat(w);
        }
        let term = &coeffs[&p.label] / lambda;
        let entry = out.entry(u_degree - n).or_insert_with(Rat::zero);
        *entry += term;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Oracle pairing entry: `u^0` coefficient of `∫ α_i α_j u^{N-k_i-k_j}`,
/// zero when the completion power is negative.
fn oracle_pairing(fps: &FixedPointSet, a: &ClassRestrictions, b: &ClassRestrictions) -> Rat {
    let n = fps.half_dim();
    let ka = a.u_degree();
    let kb = b.u_degree();
    if ka + kb > n {
        return Rat::zero();
    }
    let coeffs: BTreeMap<String, Rat> = fps
        .labels()
        .map(|l| (l.to_owned(), a.coefficient(l) * b.coefficient(l)))
        .collect();
    // integrand u-degree: ka + kb + (n - ka - kb) = n, so the sum sits at u^0
    let sum = oracle_sum(fps, n as i64, &coeffs);
    sum.get(&0).cloned().unwrap_or_else(Rat::zero)
}

fn cpn(n: usize, a: Vec<i64>) -> (FixedPointSet, CanonicalBasis) {
    gen_cpn(&CpnSpec::new(n, a).unwrap())
}

#[test]
fn cp1_pairing_table_frozen_and_recomputed() {
    let (fps, basis) = cpn(1, vec![0, 1]);
    let classes = vec![ClassRestrictions::one(&fps), basis.class("p1").unwrap().clone()];
    // frozen: [[0, 1], [1, 0]]
    let expected = [[rat(0), rat(1)], [rat(1), rat(0)]];
    let m = pairing_matrix(&fps, &classes).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(*m.at(i, j), expected[i][j], "engine ({i},{j})");
            assert_eq!(
                oracle_pairing(&fps, &classes[i], &classes[j]),
                expected[i][j],
                "oracle ({i},{j})"
            );
        }
    }
}

#[test]
fn cp2_basis_pairing_is_antidiagonal() {
    let (fps, basis) = cpn(2, vec![0, 1, 2]);
    let classes = basis.ordered(&fps).unwrap();
    // frozen: antidiagonal ones
    let m = pairing_matrix(&fps, &classes).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i + j == 2 { rat(1) } else { rat(0) };
            assert_eq!(*m.at(i, j), expected, "engine ({i},{j})");
            assert_eq!(oracle_pairing(&fps, &classes[i], &classes[j]), expected);
        }
    }
}

#[test]
fn engine_pairing_agrees_with_oracle_on_products() {
    let a = cpn(2, vec![0, 1, 2]);
    let b = cpn(1, vec![0, 3]);
    let (fps, basis) = gen_product(&a.0, &a.1, &b.0, &b.1).unwrap();
    let classes = basis.ordered(&fps).unwrap();
    let m = pairing_matrix(&fps, &classes).unwrap();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            assert_eq!(
                *m.at(i, j),
                oracle_pairing(&fps, &classes[i], &classes[j]),
                "({i},{j})"
            );
        }
    }
}

#[test]
fn integrate_matches_oracle_exponent_maps() {
    let (fps, basis) = cpn(4, vec![0, 1, 2, 3, 4]);
    for label in ["p0", "p1", "p2", "p3", "p4"] {
        let cls = basis.class(label).unwrap();
        let sum = LocalizationSum::compute(&fps, cls).unwrap();
        let oracle = oracle_sum(&fps, cls.u_degree() as i64, cls.coefficients());
        let engine: BTreeMap<i64, Rat> = sum.total().terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(engine, oracle, "class at {label}");
    }
}

#[test]
fn cp2_alpha1_square_volume_frozen() {
    // ∫ α_1²: summands 0 + (-1)²/(-1) ... by hand: 0 - 1 + 2 = 1
    let (fps, basis) = cpn(2, vec![0, 1, 2]);
    let a1 = basis.class("p1").unwrap();
    let sq = a1.mul(a1).unwrap();
    let oracle = oracle_sum(&fps, 2, sq.coefficients());
    assert_eq!(oracle, BTreeMap::from([(0, rat(1))]));
}

#[test]
fn residue_identities_by_direct_summation() {
    // Σ H^k / Λ = 0 for k < N, recomputed without the engine
    for (n, a) in [(2usize, vec![0i64, 1, 2]), (4, vec![0, 1, 2, 3, 4]), (3, vec![0, 2, 3, 7])] {
        let (fps, _) = cpn(n, a);
        for k in 0..n {
            let coeffs: BTreeMap<String, Rat> = fps
                .points()
                .iter()
                .map(|p| {
                    let mut hk = rat(1);
                    for _ in 0..k {
                        hk *= p.moment.clone();
                    }
                    (p.label.clone(), hk)
                })
                .collect();
            let sum = oracle_sum(&fps, k as i64, &coeffs);
            assert!(sum.is_empty(), "n={n} k={k}: {sum:?}");
        }
    }
}

#[test]
fn shifted_moment_residue_value_frozen() {
    // CP² with H(p1) += 1/2 leaves Σ H/Λ = -1/2 at k = 1
    let (fps, _) = cpn(2, vec![0, 1, 2]);
    let mut pts = fps.points().to_vec();
    pts[1].moment += ratio(1, 2);
    let bad = FixedPointSet::new(2, pts);
    let coeffs: BTreeMap<String, Rat> = bad
        .points()
        .iter()
        .map(|p| (p.label.clone(), p.moment.clone()))
        .collect();
    let sum = oracle_sum(&bad, 1, &coeffs);
    assert_eq!(sum, BTreeMap::from([(-1, ratio(-1, 2))]));
}

#[test]
fn sign_certificate_summands_frozen() {
    // CP⁴, tuple (0, u, 0, u, 0): -c²H/Λ = (-1/2 at p1, -1/6 at p3)
    let (fps, _) = cpn(4, vec![0, 1, 2, 3, 4]);
    let h = |l: &str| fps.point(l).unwrap().moment.clone();
    let lam = |l: &str| fps.point(l).unwrap().euler_product();
    let at_p1 = -rat(1) * h("p1") / lam("p1");
    let at_p3 = -rat(1) * h("p3") / lam("p3");
    assert_eq!(at_p1, ratio(-1, 2));
    assert_eq!(at_p3, ratio(-1, 6));
    assert_eq!(at_p1 + at_p3, ratio(-2, 3));
}
