//! Candidate fixed-point data for a closed Hamiltonian circle manifold,
//! its structural validation, and Morse-theoretic Betti numbers.
//!
//! The moment map of a Hamiltonian circle action with isolated fixed
//! points is a perfect Morse function whose critical points all have even
//! index (Frankel), the index at a fixed point being twice the number of
//! negative weights. That single fact drives everything in this module:
//! Betti counting, Poincare duality of the profile, and the placement of
//! the unique maximum/minimum.

use crate::certificate::Certificate;
use crate::rat::{format_rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// One isolated fixed point: label, moment value `H(p)`, and the nonzero
/// integer weights of the tangential circle representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPoint {
    pub label: String,
    pub moment: Rat,
    pub weights: Vec<i64>,
}

impl FixedPoint {
    pub fn new(label: impl Into<String>, moment: Rat, weights: Vec<i64>) -> Self {
        Self {
            label: label.into(),
            moment,
            weights,
        }
    }

    /// Number of negative weights.
    pub fn negative_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }

    /// Morse index of the moment map at this point: twice the number of
    /// negative weights, hence always even.
    pub fn index(&self) -> usize {
        2 * self.negative_count()
    }

    /// Product of all weights: the equivariant Euler number `Λ_p` in the
    /// localization denominator.
    pub fn euler_product(&self) -> Rat {
        let mut v = Rat::one();
        for &w in &self.weights {
            v *= crate::rat::rat(w);
        }
        v
    }

    pub fn all_negative(&self) -> bool {
        !self.weights.is_empty() && self.weights.iter().all(|&w| w < 0)
    }

    pub fn all_positive(&self) -> bool {
        !self.weights.is_empty() && self.weights.iter().all(|&w| w > 0)
    }
}

/// Fixed-point data of a candidate `2N`-dimensional manifold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointSet {
    half_dim: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointSet {
    /// Wraps raw data without validation; run [`FixedPointSet::validate`]
    /// to learn whether the data is structurally admissible.
    pub fn new(half_dim: usize, points: Vec<FixedPoint>) -> Self {
        Self { half_dim, points }
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, label: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.label.as_str())
    }

    pub fn label_set(&self) -> BTreeSet<String> {
        self.points.iter().map(|p| p.label.clone()).collect()
    }

    /// The unique all-negative-weight point when it exists (the moment
    /// maximum on genuine data).
    pub fn max_point(&self) -> Option<&FixedPoint> {
        let mut it = self.points.iter().filter(|p| p.all_negative());
        match (it.next(), it.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    /// The unique all-positive-weight point when it exists (the moment
    /// minimum on genuine data).
    pub fn min_point(&self) -> Option<&FixedPoint> {
        let mut it = self.points.iter().filter(|p| p.all_positive());
        match (it.next(), it.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    /// Even Betti numbers by Morse counting: `b_{2k}` is the number of
    /// fixed points with exactly `k` negative weights.
    pub fn betti(&self) -> BettiProfile {
        let mut values = vec![0u64; self.half_dim + 1];
        for p in &self.points {
            let k = p.negative_count();
            if k < values.len() {
                values[k] += 1;
            }
        }
        BettiProfile { values }
    }

    /// Structural and Morse-theoretic validation.
    ///
    /// Checks, in order: positive half-dimension, at least two points,
    /// unique labels, weight count `N` per point, no zero weight, exactly
    /// one all-negative and one all-positive point, Poincare duality of the
    /// Betti profile, and strictly extremal moment values at the two
    /// extrema. Reports the first violated rule with the offending labels.
    /// Localization residue identities are a separate check
    /// ([`crate::localization::residue_check`]).
    pub fn validate(&self) -> Certificate {
        const CHECK: &str = "validate";
        if self.half_dim == 0 {
            return Certificate::fail(CHECK).with("rule", "half-dim-positive");
        }
        if self.points.len() < 2 {
            return Certificate::fail(CHECK)
                .with("rule", "point-count")
                .with("found", self.points.len());
        }
        let mut seen = BTreeSet::new();
        for p in &self.points {
            if !seen.insert(&p.label) {
                return Certificate::fail(CHECK)
                    .with("rule", "duplicate-label")
                    .with("label", &p.label);
            }
        }
        for p in &self.points {
            if p.weights.len() != self.half_dim {
                return Certificate::fail(CHECK)
                    .with("rule", "weight-count")
                    .with("label", &p.label)
                    .with("expected", self.half_dim)
                    .with("found", p.weights.len());
            }
            if let Some(slot) = p.weights.iter().position(|&w| w == 0) {
                return Certificate::fail(CHECK)
                    .with("rule", "zero-weight")
                    .with("label", &p.label)
                    .with("slot", slot);
            }
        }
        let negatives: Vec<&FixedPoint> = self.points.iter().filter(|p| p.all_negative()).collect();
        if negatives.len() != 1 {
            return Certificate::fail(CHECK)
                .with("rule", "unique-maximum")
                .with("all-negative-count", negatives.len())
                .with(
                    "labels",
                    negatives.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(","),
                );
        }
        let positives: Vec<&FixedPoint> = self.points.iter().filter(|p| p.all_positive()).collect();
        if positives.len() != 1 {
            return Certificate::fail(CHECK)
                .with("rule", "unique-minimum")
                .with("all-positive-count", positives.len())
                .with(
                    "labels",
                    positives.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(","),
                );
        }
        let profile = self.betti();
        if let Some(k) = profile.first_duality_failure() {
            return Certificate::fail(CHECK)
                .with("rule", "duality")
                .with("k", 2 * k)
                .with("profile", profile.render());
        }
        let max = negatives[0];
        for p in &self.points {
            if p.label != max.label && p.moment >= max.moment {
                return Certificate::fail(CHECK)
                    .with("rule", "maximum-moment-strict")
                    .with("max-label", &max.label)
                    .with("label", &p.label)
                    .with("moment", format_rat(&p.moment));
            }
        }
        let min = positives[0];
        for p in &self.points {
            if p.label != min.label && p.moment <= min.moment {
                return Certificate::fail(CHECK)
                    .with("rule", "minimum-moment-strict")
                    .with("min-label", &min.label)
                    .with("label", &p.label)
                    .with("moment", format_rat(&p.moment));
            }
        }
        Certificate::pass(CHECK)
            .with("points", self.points.len())
            .with("profile", profile.render())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// Largest moment value over all points.
    pub fn moment_max(&self) -> Option<Rat> {
        self.points.iter().map(|p| p.moment.clone()).max()
    }

    /// Copy with a constant added to all moment values so the maximum is 0.
    /// Idempotent; on valid data every non-maximal value becomes strictly
    /// negative.
    pub fn normalize_moment(&self) -> FixedPointSet {
        let Some(max) = self.moment_max() else {
            return self.clone();
        };
        let points = self
            .points
            .iter()
            .map(|p| FixedPoint::new(p.label.clone(), &p.moment - &max, p.weights.clone()))
            .collect();
        FixedPointSet {
            half_dim: self.half_dim,
            points,
        }
    }

    /// True when the maximal moment value is exactly 0.
    pub fn is_normalized(&self) -> bool {
        self.moment_max().is_some_and(|m| m.is_zero())
    }
}

/// The even Betti numbers `b_0, b_2, ..., b_{2N}`; odd ones vanish and are
/// not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiProfile {
    values: Vec<u64>,
}

impl BettiProfile {
    /// `values[k]` is `b_{2k}`.
    pub fn new(values: Vec<u64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Half-dimension `N` this profile belongs to.
    pub fn half_dim(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// `b_{2k}`, zero out of range.
    pub fn b(&self, k: usize) -> u64 {
        self.values.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Smallest `k` with `b_{2k} != b_{2N-2k}`, if any.
    pub fn first_duality_failure(&self) -> Option<usize> {
        let n = self.half_dim();
        (0..=n).find(|&k| self.values[k] != self.values[n - k])
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_duality_failure().is_none()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cpn, gen_product, CpnSpec};
    use crate::rat::rat;

    fn cp4() -> FixedPointSet {
        gen_cpn(&CpnSpec::new(4, vec![0, 1, 2, 3, 4]).unwrap()).0
    }

    #[test]
    fn cp4_betti_is_flat() {
        assert_eq!(cp4().betti().values(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn product_betti_is_convolution() {
        let a = gen_cpn(&CpnSpec::new(2, vec![0, 1, 2]).unwrap());
        let b = gen_cpn(&CpnSpec::new(2, vec![0, 5, 10]).unwrap());
        let (fps, _) = gen_product(&a.0, &a.1, &b.0, &b.1).unwrap();
        assert_eq!(fps.betti().values(), &[1, 2, 3, 2, 1]);
    }

    #[test]
    fn valid_data_has_unique_minimum_count() {
        let fps = cp4();
        assert!(fps.validate().passed());
        assert_eq!(fps.betti().b(0), 1);
    }

    #[test]
    fn negated_weight_breaks_duality() {
        let mut fps = cp4();
        // negate the third weight at p2 (weight +1 -> -1): index jumps 4 -> 6
        fps.points[2].weights[2] = -fps.points[2].weights[2];
        assert_eq!(fps.betti().values(), &[1, 1, 0, 2, 1]);
        let cert = fps.validate();
        assert!(cert.failed());
        assert_eq!(cert.witness["rule"], "duality");
    }

    #[test]
    fn zero_weight_is_rejected() {
        let fps = FixedPointSet::new(
            1,
            vec![
                FixedPoint::new("p0", rat(-1), vec![0]),
                FixedPoint::new("p1", rat(0), vec![-1]),
            ],
        );
        let cert = fps.validate();
        assert!(cert.failed());
        assert_eq!(cert.witness["rule"], "zero-weight");
        assert_eq!(cert.witness["label"], "p0");
    }

    #[test]
    fn normalize_moment_shifts_and_is_idempotent() {
        let fps = FixedPointSet::new(
            1,
            vec![
                FixedPoint::new("p0", rat(3), vec![1]),
                FixedPoint::new("p1", rat(4), vec![-1]),
            ],
        );
        let n = fps.normalize_moment();
        assert_eq!(n.point("p0").unwrap().moment, rat(-1));
        assert_eq!(n.point("p1").unwrap().moment, rat(0));
        assert_eq!(n.normalize_moment(), n);
        assert!(n.is_normalized());
    }

    #[test]
    fn euler_product_sign_matches_index() {
        for p in cp4().points() {
            let sign = if p.index() / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.euler_product() > rat(0), sign > 0, "at {}", p.label);
        }
    }

    #[test]
    fn betti_is_label_and_order_invariant() {
        let fps = cp4();
        let mut pts = fps.points().to_vec();
        pts.reverse();
        for (i, p) in pts.iter_mut().enumerate() {
            p.label = format!("q{i}");
        }
        let relabeled = FixedPointSet::new(fps.half_dim(), pts);
        assert_eq!(relabeled.betti(), fps.betti());
    }

    #[test]
    fn betti_total_counts_points() {
        let fps = cp4();
        assert_eq!(fps.betti().total(), fps.points().len() as u64);
    }

    #[test]
    fn moment_tie_at_interior_points_is_allowed() {
        // two interior points sharing a moment value: still valid
        let fps = FixedPointSet::new(
            2,
            vec![
                FixedPoint::new("a", rat(-2), vec![1, 1]),
                FixedPoint::new("b", rat(-1), vec![-1, 1]),
                FixedPoint::new("c", rat(-1), vec![1, -2]),
                FixedPoint::new("d", rat(0), vec![-1, -1]),
            ],
        );
        assert!(fps.validate().passed());
    }

    #[test]
    fn dropping_the_maximum_is_structural_failure() {
        let fps = cp4();
        let pts: Vec<FixedPoint> = fps.points().iter().filter(|p| p.label != "p4").cloned().collect();
        let cert = FixedPointSet::new(4, pts).validate();
        assert!(cert.failed());
        assert_eq!(cert.witness["rule"], "unique-maximum");
    }
}
