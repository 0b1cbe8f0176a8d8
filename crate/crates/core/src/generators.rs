//! Ground-truth dataset construction: projective spaces with linear
//! circle actions, diagonal-action products, and controlled mutations for
//! negative testing.
//!
//! `CP^n` with action weights `a_0 < a_1 < ... < a_n` has fixed points
//! `p_0, ..., p_n` where `p_i` carries tangent weights `{a_j - a_i}` and
//! moment value `a_i - a_n` (normalized so the maximum is 0). Its
//! canonical classes are the equivariant Schubert-type classes
//!
//! ```text
//!     α_k|_{p_j} = (-1)^k · Π_{l<k} (a_j - a_l) · u^k   for j >= k,  else 0,
//! ```
//!
//! the sign chosen so that `α_k|_{p_k}` is exactly the product of the `k`
//! negative weights at `p_k`.

use crate::classes::{CanonicalBasis, ClassRestrictions, VerifyOptions};
use crate::model::{FixedPoint, FixedPointSet};
use crate::rat::{format_rat, rat, ratio, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("action weights must be strictly increasing with n+1 entries, got {0:?}")]
    BadActionWeights(Vec<i64>),
    #[error("n must be at least 1")]
    BadDimension,
    #[error("product data collision: {0}")]
    Collision(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("point `{label}` has no weight slot {slot}")]
    UnknownSlot { label: String, slot: usize },
}

/// Parameters for a linear circle action on `CP^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CpnSpec {
    n: usize,
    action_weights: Vec<i64>,
}

impl CpnSpec {
    /// `action_weights` must be strictly increasing with `n + 1` entries,
    /// which guarantees isolated fixed points and distinct moment values.
    pub fn new(n: usize, action_weights: Vec<i64>) -> Result<Self, GenError> {
        if n == 0 {
            return Err(GenError::BadDimension);
        }
        if action_weights.len() != n + 1 || action_weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GenError::BadActionWeights(action_weights));
        }
        Ok(Self { n, action_weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn action_weights(&self) -> &[i64] {
        &self.action_weights
    }
}

/// Fixed-point data and canonical basis of `CP^n` with the given action.
pub fn gen_cpn(spec: &CpnSpec) -> (FixedPointSet, CanonicalBasis) {
    let n = spec.n;
    let a = &spec.action_weights;
    let points: Vec<FixedPoint> = (0..=n)
        .map(|i| {
            let weights: Vec<i64> = (0..=n).filter(|&j| j != i).map(|j| a[j] - a[i]).collect();
            FixedPoint::new(format!("p{i}"), rat(a[i] - a[n]), weights)
        })
        .collect();
    let fps = FixedPointSet::new(n, points);
    let mut classes = BTreeMap::new();
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let coeffs: BTreeMap<String, Rat> = (0..=n)
            .map(|j| {
                let c = if j < k {
                    Rat::zero()
                } else {
                    let mut v = rat(sign);
                    for l in 0..k {
                        v *= rat(a[j] - a[l]);
                    }
                    v
                };
                (format!("p{j}"), c)
            })
            .collect();
        classes.insert(
            format!("p{k}"),
            ClassRestrictions::from_coefficients(2 * k, coeffs).expect("even degree"),
        );
    }
    (fps, CanonicalBasis::new(classes))
}

/// Product of two datasets under the diagonal circle action: labels pair
/// up, weights concatenate, moment values add (then renormalize), and
/// candidate canonical classes are the pointwise tensor products.
///
/// The output is re-validated and re-verified; any failure — a zero
/// weight, a label collision, or a violated canonical axiom — is returned
/// as [`GenError::Collision`], in which case the caller should perturb
/// the action weights.
pub fn gen_product(
    left_fps: &FixedPointSet,
    left_basis: &CanonicalBasis,
    right_fps: &FixedPointSet,
    right_basis: &CanonicalBasis,
) -> Result<(FixedPointSet, CanonicalBasis), GenError> {
    let n = left_fps.half_dim() + right_fps.half_dim();
    let join = |l: &str, r: &str| format!("{l}x{r}");
    let mut points = Vec::new();
    for pl in left_fps.points() {
        for pr in right_fps.points() {
            let mut weights = pl.weights.clone();
            weights.extend_from_slice(&pr.weights);
            points.push(FixedPoint::new(
                join(&pl.label, &pr.label),
                &pl.moment + &pr.moment,
                weights,
            ));
        }
    }
    let fps = FixedPointSet::new(n, points).normalize_moment();

    let mut classes = BTreeMap::new();
    for pl in left_fps.points() {
        for pr in right_fps.points() {
            let cl = left_basis
                .class(&pl.label)
                .ok_or_else(|| GenError::UnknownLabel(pl.label.clone()))?;
            let cr = right_basis
                .class(&pr.label)
                .ok_or_else(|| GenError::UnknownLabel(pr.label.clone()))?;
            let coeffs: BTreeMap<String, Rat> = left_fps
                .points()
                .iter()
                .flat_map(|ql| {
                    right_fps.points().iter().map(move |qr| {
                        (
                            join(&ql.label, &qr.label),
                            cl.coefficient(&ql.label) * cr.coefficient(&qr.label),
                        )
                    })
                })
                .collect();
            classes.insert(
                join(&pl.label, &pr.label),
                ClassRestrictions::from_coefficients(cl.degree() + cr.degree(), coeffs)
                    .expect("even degree"),
            );
        }
    }
    let basis = CanonicalBasis::new(classes);

    let cert = fps.validate();
    if !cert.passed() {
        return Err(GenError::Collision(cert.to_string()));
    }
    let cert = basis
        .verify(&fps, VerifyOptions::default())
        .map_err(|e| GenError::Collision(e.to_string()))?;
    if !cert.passed() {
        return Err(GenError::Collision(cert.to_string()));
    }
    Ok((fps, basis))
}

/// A single controlled edit of a fixed-point set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mutation {
    NegateWeight { label: String, slot: usize },
    ShiftMoment { label: String, delta: Rat },
    DropPoint { label: String },
}

impl std::fmt::Display for Mutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mutation::NegateWeight { label, slot } => write!(f, "negate-weight({label},{slot})"),
            Mutation::ShiftMoment { label, delta } => {
                write!(f, "shift-moment({label},{})", format_rat(delta))
            }
            Mutation::DropPoint { label } => write!(f, "drop-point({label})"),
        }
    }
}

/// Applies one edit and returns the copy. No validation is performed —
/// producing broken data is the point.
pub fn mutate(fps: &FixedPointSet, edit: &Mutation) -> Result<FixedPointSet, GenError> {
    let mut points = fps.points().to_vec();
    match edit {
        Mutation::NegateWeight { label, slot } => {
            let p = points
                .iter_mut()
                .find(|p| &p.label == label)
                .ok_or_else(|| GenError::UnknownLabel(label.clone()))?;
            let w = p.weights.get_mut(*slot).ok_or_else(|| GenError::UnknownSlot {
                label: label.clone(),
                slot: *slot,
            })?;
            *w = -*w;
        }
        Mutation::ShiftMoment { label, delta } => {
            let p = points
                .iter_mut()
                .find(|p| &p.label == label)
                .ok_or_else(|| GenError::UnknownLabel(label.clone()))?;
            p.moment += delta;
        }
        Mutation::DropPoint { label } => {
            let before = points.len();
            points.retain(|p| &p.label != label);
            if points.len() == before {
                return Err(GenError::UnknownLabel(label.clone()));
            }
        }
    }
    Ok(FixedPointSet::new(fps.half_dim(), points))
}

/// The standard single-edit corpus for kill-rate testing: every weight
/// negation, every interior moment shift by ±1/2, and every point drop.
pub fn mutation_corpus(fps: &FixedPointSet) -> Vec<Mutation> {
    let mut out = Vec::new();
    for p in fps.points() {
        for slot in 0..p.weights.len() {
            out.push(Mutation::NegateWeight {
                label: p.label.clone(),
                slot,
            });
        }
    }
    for p in fps.points() {
        if p.all_negative() || p.all_positive() {
            continue;
        }
        for delta in [ratio(1, 2), ratio(-1, 2)] {
            out.push(Mutation::ShiftMoment {
                label: p.label.clone(),
                delta,
            });
        }
    }
    for p in fps.points() {
        out.push(Mutation::DropPoint {
            label: p.label.clone(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::residue_check;
    use crate::rat::rat;

    fn cpn(n: usize, a: Vec<i64>) -> (FixedPointSet, CanonicalBasis) {
        gen_cpn(&CpnSpec::new(n, a).unwrap())
    }

    #[test]
    fn cp1_shape() {
        let (fps, _) = cpn(1, vec![0, 1]);
        assert_eq!(fps.points().len(), 2);
        assert_eq!(fps.point("p0").unwrap().weights, vec![1]);
        assert_eq!(fps.point("p1").unwrap().weights, vec![-1]);
        assert_eq!(fps.point("p0").unwrap().moment, rat(-1));
        assert_eq!(fps.point("p1").unwrap().moment, rat(0));
    }

    #[test]
    fn cp2_canonical_values() {
        let (fps, basis) = cpn(2, vec![0, 1, 2]);
        assert_eq!(fps.point("p0").unwrap().weights, vec![1, 2]);
        assert_eq!(fps.point("p1").unwrap().weights, vec![-1, 1]);
        assert_eq!(fps.point("p2").unwrap().weights, vec![-2, -1]);
        let a1 = basis.class("p1").unwrap();
        assert_eq!(
            [a1.coefficient("p0"), a1.coefficient("p1"), a1.coefficient("p2")],
            [rat(0), rat(-1), rat(-2)]
        );
        let a2 = basis.class("p2").unwrap();
        assert_eq!(
            [a2.coefficient("p0"), a2.coefficient("p1"), a2.coefficient("p2")],
            [rat(0), rat(0), rat(2)]
        );
        assert!(basis.verify(&fps, VerifyOptions::default()).unwrap().passed());
    }

    #[test]
    fn cp4_euler_products() {
        let (fps, _) = cpn(4, vec![0, 1, 2, 3, 4]);
        let lams: Vec<Rat> = fps.points().iter().map(|p| p.euler_product()).collect();
        assert_eq!(lams, vec![rat(24), rat(-6), rat(4), rat(-6), rat(24)]);
    }

    #[test]
    fn generated_data_passes_all_checkers() {
        for n in 1..=5 {
            let a: Vec<i64> = (0..=n as i64).collect();
            let (fps, basis) = cpn(n, a);
            assert!(fps.validate().passed(), "validate cp{n}");
            assert!(residue_check(&fps).passed(), "residues cp{n}");
            assert!(
                basis.verify(&fps, VerifyOptions::default()).unwrap().passed(),
                "canonical cp{n}"
            );
            assert_eq!(fps.betti().values(), vec![1u64; n + 1].as_slice());
        }
    }

    #[test]
    fn product_of_lines_has_four_points() {
        let a = cpn(1, vec![0, 1]);
        let b = cpn(1, vec![0, 3]);
        let (fps, basis) = gen_product(&a.0, &a.1, &b.0, &b.1).unwrap();
        assert_eq!(fps.points().len(), 4);
        assert_eq!(fps.betti().values(), &[1, 2, 1]);
        assert!(basis.verify(&fps, VerifyOptions::default()).unwrap().passed());
    }

    #[test]
    fn equal_weight_lines_still_produce_valid_product() {
        let a = cpn(1, vec![0, 1]);
        let (fps, _) = gen_product(&a.0, &a.1, &a.0, &a.1).unwrap();
        assert!(fps.validate().passed());
    }

    #[test]
    fn spec_validation() {
        assert!(CpnSpec::new(0, vec![0]).is_err());
        assert!(CpnSpec::new(2, vec![0, 1]).is_err());
        assert!(CpnSpec::new(2, vec![0, 1, 1]).is_err());
        assert!(CpnSpec::new(2, vec![3, 1, 2]).is_err());
    }

    #[test]
    fn mutations_edit_and_report_unknowns() {
        let (fps, _) = cpn(2, vec![0, 1, 2]);
        let m = mutate(
            &fps,
            &Mutation::NegateWeight {
                label: "p1".into(),
                slot: 0,
            },
        )
        .unwrap();
        assert_eq!(m.point("p1").unwrap().weights, vec![1, 1]);
        assert!(mutate(
            &fps,
            &Mutation::DropPoint {
                label: "nope".into()
            }
        )
        .is_err());
        assert!(mutate(
            &fps,
            &Mutation::NegateWeight {
                label: "p1".into(),
                slot: 9
            }
        )
        .is_err());
    }

    #[test]
    fn corpus_covers_all_edit_kinds() {
        let (fps, _) = cpn(2, vec![0, 1, 2]);
        let corpus = mutation_corpus(&fps);
        // 3 points x 2 weights + 1 interior point x 2 shifts + 3 drops
        assert_eq!(corpus.len(), 6 + 2 + 3);
    }
}
