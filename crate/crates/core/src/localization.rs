//! The Atiyah-Bott/Berline-Vergne pushforward and the consistency
//! identities it imposes on fixed-point data.
//!
//! For isolated fixed points the localization theorem evaluates the
//! integral of an equivariant class as
//!
//! ```text
//!     ∫ α  =  Σ_p  α|_p / (Λ_p · u^N)
//! ```
//!
//! with `Λ_p` the product of the weights at `p`. On genuine data the sum
//! of a class of degree below `2N` has no `u^0` or negative-exponent part;
//! a surviving negative-exponent residue is exactly a witness that the
//! data comes from no manifold, so residues are surfaced as values, never
//! truncated.

use crate::certificate::Certificate;
use crate::classes::ClassRestrictions;
use crate::exec;
use crate::laurent::LaurentPoly;
use crate::matrix::RatMatrix;
use crate::model::FixedPointSet;
use crate::rat::{format_rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("class labels do not match the fixed-point set")]
    LabelMismatch,
}

/// A localization sum split into its per-point summands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalizationSum {
    total: LaurentPoly,
    per_point: BTreeMap<String, LaurentPoly>,
}

impl LocalizationSum {
    /// Evaluates `Σ_p α|_p / (Λ_p u^N)` exactly.
    pub fn compute(
        fps: &FixedPointSet,
        cls: &ClassRestrictions,
    ) -> Result<Self, LocalizationError> {
        let fps_labels = fps.label_set();
        let cls_labels: std::collections::BTreeSet<String> =
            cls.labels().map(str::to_owned).collect();
        if fps_labels != cls_labels {
            return Err(LocalizationError::LabelMismatch);
        }
        let n = fps.half_dim() as i64;
        let k = cls.u_degree() as i64;
        let summands = exec::map_ordered(fps.points(), |p| {
            let c = cls.coefficient(&p.label) / p.euler_product();
            (p.label.clone(), LaurentPoly::monomial(k - n, c))
        });
        let total = summands.iter().map(|(_, s)| s.clone()).sum();
        Ok(Self {
            total,
            per_point: summands.into_iter().collect(),
        })
    }

    pub fn total(&self) -> &LaurentPoly {
        &self.total
    }

    pub fn per_point(&self) -> &BTreeMap<String, LaurentPoly> {
        &self.per_point
    }

    /// Coefficient of `u^0` in the total — the value of the integral when
    /// the sum is pure.
    pub fn value(&self) -> Rat {
        self.total.coefficient(0)
    }

    /// True when no negative exponent survives in the total.
    pub fn is_pure(&self) -> bool {
        self.total.is_polynomial()
    }
}

/// The localization pushforward `∫ α` as a Laurent polynomial in `u`.
pub fn integrate(
    fps: &FixedPointSet,
    cls: &ClassRestrictions,
) -> Result<LaurentPoly, LocalizationError> {
    Ok(LocalizationSum::compute(fps, cls)?.total)
}

/// Necessary localization identities: `Σ_p H(p)^k / Λ_p = 0` exactly for
/// every `k = 0, ..., N-1` (the pushforwards of `ω_H^k` below the top
/// degree). Reports the first failing `k` with the nonzero value.
///
/// The identities are invariant under a global moment shift, so the input
/// need not be normalized.
pub fn residue_check(fps: &FixedPointSet) -> Certificate {
    const CHECK: &str = "residues";
    let n = fps.half_dim();
    let points = fps.points();
    let mut h_power: Vec<Rat> = points.iter().map(|_| Rat::one()).collect();
    for k in 0..n {
        let terms = exec::map_range(points.len(), |i| &h_power[i] / points[i].euler_product());
        let sum: Rat = terms.into_iter().sum();
        if !sum.is_zero() {
            return Certificate::fail(CHECK)
                .with("k", k)
                .with("value", format_rat(&sum));
        }
        for (p, hp) in points.iter().zip(h_power.iter_mut()) {
            *hp *= p.moment.clone();
        }
    }
    Certificate::pass(CHECK).with("max-k", n.saturating_sub(1))
}

/// Gram matrix of the degree-completed pairing
/// `(i, j) ↦ u^0-coefficient of ∫ α_i · α_j · u^{N - k_i - k_j}`,
/// zero by convention when the completion power would be negative.
///
/// Completion uses powers of `u` (the module action), which keeps entries
/// independent of the moment normalization. A nonsingular matrix certifies
/// linear independence of the classes.
pub fn pairing_matrix(
    fps: &FixedPointSet,
    classes: &[ClassRestrictions],
) -> Result<RatMatrix, LocalizationError> {
    let fps_labels = fps.label_set();
    for cls in classes {
        let cls_labels: std::collections::BTreeSet<String> =
            cls.labels().map(str::to_owned).collect();
        if cls_labels != fps_labels {
            return Err(LocalizationError::LabelMismatch);
        }
    }
    let m = classes.len();
    let n = fps.half_dim();
    // upper triangle; the pairing is symmetric
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let entries = exec::map_ordered(&pairs, |&(i, j)| {
        let ki = classes[i].u_degree();
        let kj = classes[j].u_degree();
        if ki + kj > n {
            return Rat::zero();
        }
        let mut sum = Rat::zero();
        for p in fps.points() {
            sum += classes[i].coefficient(&p.label) * classes[j].coefficient(&p.label)
                / p.euler_product();
        }
        sum
    });
    let mut out = RatMatrix::zero(m, m);
    for (&(i, j), v) in pairs.iter().zip(entries) {
        out.set(i, j, v.clone());
        if i != j {
            out.set(j, i, v);
        }
    }
    Ok(out)
}
