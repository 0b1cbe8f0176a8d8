//! Equivariant cohomology classes as restriction tuples, the equivariant
//! symplectic class, canonical-class axiom verification, and degree-slice
//! bases.
//!
//! A class of even degree `2k` restricts at every fixed point to an
//! element of `H^{2k}` of the classifying space, i.e. to `c * u^k` for a
//! single rational `c`. Classes are therefore stored as one coefficient
//! per point plus the degree; the full Laurent restriction is recovered on
//! demand. The coefficient map is dense: every label of the underlying
//! fixed-point set is present, zeros included.

use crate::certificate::Certificate;
use crate::exec;
use crate::laurent::LaurentPoly;
use crate::model::FixedPointSet;
use crate::rat::{format_rat, is_integer, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("class degree {0} is odd")]
    OddDegree(usize),
    #[error("restriction label sets do not match")]
    LabelMismatch,
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("moment map not normalized: maximum value is {max}, expected 0")]
    NotNormalized { max: String },
    #[error("no class supplied for fixed point `{0}`")]
    MissingClass(String),
    #[error("class supplied for unknown label `{0}`")]
    UnknownLabel(String),
    #[error("class at `{label}` has degree {degree} but the point has index {index}")]
    IndexMismatch {
        label: String,
        degree: usize,
        index: usize,
    },
}

/// An equivariant class represented by its restrictions to the fixed
/// points: degree `2k` and one rational coefficient per point, the
/// restriction at `p` being `c_p * u^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassRestrictions {
    degree: usize,
    coeffs: BTreeMap<String, Rat>,
}

impl ClassRestrictions {
    /// Builds a class from its coefficient tuple. The degree must be even;
    /// homogeneity is guaranteed by construction.
    pub fn from_coefficients(
        degree: usize,
        coeffs: BTreeMap<String, Rat>,
    ) -> Result<Self, ClassError> {
        if !degree.is_multiple_of(2) {
            return Err(ClassError::OddDegree(degree));
        }
        Ok(Self { degree, coeffs })
    }

    /// The constant class 1 on `fps`.
    pub fn one(fps: &FixedPointSet) -> Self {
        Self::u_power(fps, 0)
    }

    /// The pullback of `u^j`: degree `2j`, restriction `u^j` everywhere.
    pub fn u_power(fps: &FixedPointSet, j: usize) -> Self {
        Self {
            degree: 2 * j,
            coeffs: fps.labels().map(|l| (l.to_owned(), Rat::one())).collect(),
        }
    }

    /// The equivariant symplectic class: degree 2 with restriction
    /// `-H(p) * u` at every point. Requires moment-normalized input so the
    /// restriction at the maximum is 0.
    pub fn omega(fps: &FixedPointSet) -> Result<Self, ClassError> {
        if !fps.is_normalized() {
            let max = fps.moment_max().map_or_else(|| "none".to_owned(), |m| format_rat(&m));
            return Err(ClassError::NotNormalized { max });
        }
        Ok(Self {
            degree: 2,
            coeffs: fps
                .points()
                .iter()
                .map(|p| (p.label.clone(), -p.moment.clone()))
                .collect(),
        })
    }

    /// Equivariant cohomological degree `2k`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `u`-degree `k` of the nonzero restrictions.
    pub fn u_degree(&self) -> usize {
        self.degree / 2
    }

    /// Coefficient of `u^k` in the restriction at `label`; zero for
    /// unknown labels.
    pub fn coefficient(&self, label: &str) -> Rat {
        self.coeffs.get(label).cloned().unwrap_or_else(Rat::zero)
    }

    /// The restriction at `label` as a Laurent polynomial.
    pub fn restriction(&self, label: &str) -> LaurentPoly {
        LaurentPoly::monomial(self.u_degree() as i64, self.coefficient(label))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn coefficients(&self) -> &BTreeMap<String, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Rat::is_zero)
    }

    /// True when the label sets coincide.
    pub fn same_labels(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.keys().zip(other.coeffs.keys()).all(|(a, b)| a == b)
    }

    /// Product of classes: degrees add, restrictions multiply pointwise.
    pub fn mul(&self, other: &Self) -> Result<Self, ClassError> {
        if !self.same_labels(other) {
            return Err(ClassError::LabelMismatch);
        }
        Ok(Self {
            degree: self.degree + other.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c * &other.coeffs[l]))
                .collect(),
        })
    }

    /// `k`-th power; the empty product is the constant 1 on the same labels.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self {
            degree: 0,
            coeffs: self.coeffs.keys().map(|l| (l.clone(), Rat::one())).collect(),
        };
        for _ in 0..k {
            out = out.mul(self).expect("same labels by construction");
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    /// Sum of classes of equal degree on the same labels.
    pub fn add(&self, other: &Self) -> Result<Self, ClassError> {
        if !self.same_labels(other) {
            return Err(ClassError::LabelMismatch);
        }
        if self.degree != other.degree {
            return Err(ClassError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c + &other.coeffs[l]))
                .collect(),
        })
    }

    /// Module action of `u^j`: same coefficients, degree raised by `2j`.
    pub fn times_u(&self, j: usize) -> Self {
        Self {
            degree: self.degree + 2 * j,
            coeffs: self.coeffs.clone(),
        }
    }
}

/// Verification options for [`CanonicalBasis::verify`].
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Additionally require every restriction coefficient to be an integer.
    pub strict_integral: bool,
}

/// One candidate canonical class per fixed point, keyed by the point label.
///
/// The defining axioms (vanishing on the lower set, prescribed leading
/// value, basis property) are verified, never assumed: abstract data does
/// not determine the off-support restrictions, so the basis is input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalBasis {
    classes: BTreeMap<String, ClassRestrictions>,
}

struct Violation {
    point_idx: usize,
    certificate: Certificate,
}

impl CanonicalBasis {
    pub fn new(classes: BTreeMap<String, ClassRestrictions>) -> Self {
        Self { classes }
    }

    pub fn class(&self, label: &str) -> Option<&ClassRestrictions> {
        self.classes.get(label)
    }

    pub fn classes(&self) -> &BTreeMap<String, ClassRestrictions> {
        &self.classes
    }

    /// Classes in the order of the fixed points of `fps`.
    pub fn ordered(&self, fps: &FixedPointSet) -> Result<Vec<ClassRestrictions>, ClassError> {
        self.check_shape(fps)?;
        Ok(fps
            .points()
            .iter()
            .map(|p| self.classes[&p.label].clone())
            .collect())
    }

    fn check_shape(&self, fps: &FixedPointSet) -> Result<(), ClassError> {
        for label in self.classes.keys() {
            if fps.point(label).is_none() {
                return Err(ClassError::UnknownLabel(label.clone()));
            }
        }
        let fps_labels = fps.label_set();
        for p in fps.points() {
            let cls = self
                .classes
                .get(&p.label)
                .ok_or_else(|| ClassError::MissingClass(p.label.clone()))?;
            if cls.degree() != p.index() {
                return Err(ClassError::IndexMismatch {
                    label: p.label.clone(),
                    degree: cls.degree(),
                    index: p.index(),
                });
            }
            let cls_labels: std::collections::BTreeSet<String> =
                cls.labels().map(str::to_owned).collect();
            if cls_labels != fps_labels {
                return Err(ClassError::LabelMismatch);
            }
        }
        Ok(())
    }

    /// Checks the canonical-class axioms for every class, then the basis
    /// property via nonsingularity of the pairing matrix.
    ///
    /// Per class `α_p` of degree `2k` the axioms are, in order:
    ///
    /// 1. vanishing: `α_p|_q = 0` for every `q != p` with `H(q) <= H(p)`
    ///    or `ind(q) <= 2k`;
    /// 2. leading value: `α_p|_p` equals the product of the negative
    ///    weights at `p` times `u^k` (empty product = 1 at the minimum);
    /// 3. optionally integrality of all coefficients;
    /// 4. pushforward residues: the localization integral of
    ///    `α_p * ω_H^j` must vanish for every `j` with `k + j < N` — the
    ///    necessary condition for `α_p` to restrict from a genuine class.
    ///
    /// The first violated axiom in fixed-point order is reported with a
    /// `(p, q, axiom)` witness; a singular pairing is reported separately.
    pub fn verify(
        &self,
        fps: &FixedPointSet,
        options: VerifyOptions,
    ) -> Result<Certificate, ClassError> {
        const CHECK: &str = "verify-canonical";
        self.check_shape(fps)?;
        let n = fps.half_dim();
        let normalized = fps.normalize_moment();
        let points = normalized.points();

        let per_point: Vec<Option<Violation>> = exec::map_range(points.len(), |i| {
            let p = &points[i];
            let cls = &self.classes[&p.label];
            let k = cls.u_degree();
            // axiom 1: vanishing on the lower set
            for q in points {
                if q.label == p.label {
                    continue;
                }
                if (q.moment <= p.moment || q.index() <= p.index())
                    && !cls.coefficient(&q.label).is_zero()
                {
                    return Some(Violation {
                        point_idx: i,
                        certificate: Certificate::fail(CHECK)
                            .with("axiom", "vanishing")
                            .with("p", &p.label)
                            .with("q", &q.label)
                            .with("value", format_rat(&cls.coefficient(&q.label))),
                    });
                }
            }
            // axiom 2: leading value is the product of negative weights
            let expected: Rat = p
                .weights
                .iter()
                .filter(|&&w| w < 0)
                .fold(Rat::one(), |acc, &w| acc * crate::rat::rat(w));
            let found = cls.coefficient(&p.label);
            if found != expected {
                return Some(Violation {
                    point_idx: i,
                    certificate: Certificate::fail(CHECK)
                        .with("axiom", "leading-value")
                        .with("p", &p.label)
                        .with("q", &p.label)
                        .with("expected", format_rat(&expected))
                        .with("found", format_rat(&found)),
                });
            }
            // axiom 3: optional integrality
            if options.strict_integral {
                for q in points {
                    let c = cls.coefficient(&q.label);
                    if !is_integer(&c) {
                        return Some(Violation {
                            point_idx: i,
                            certificate: Certificate::fail(CHECK)
                                .with("axiom", "integrality")
                                .with("p", &p.label)
                                .with("q", &q.label)
                                .with("value", format_rat(&c)),
                        });
                    }
                }
            }
            // axiom 4: pushforward residues of α_p * ω^j for k + j < N
            let mut h_power: Vec<Rat> = points.iter().map(|_| Rat::one()).collect();
            for j in 0..n.saturating_sub(k) {
                let mut sum = Rat::zero();
                for (q, hp) in points.iter().zip(&h_power) {
                    sum += cls.coefficient(&q.label) * hp / q.euler_product();
                }
                if !sum.is_zero() {
                    return Some(Violation {
                        point_idx: i,
                        certificate: Certificate::fail(CHECK)
                            .with("axiom", "integral-residue")
                            .with("p", &p.label)
                            .with("omega-power", j)
                            .with("value", format_rat(&sum)),
                    });
                }
                for (q, hp) in points.iter().zip(h_power.iter_mut()) {
                    *hp *= -q.moment.clone();
                }
            }
            None
        });

        if let Some(v) = per_point.into_iter().flatten().min_by_key(|v| v.point_idx) {
            return Ok(v.certificate);
        }

        let ordered = self.ordered(fps)?;
        let pairing = crate::localization::pairing_matrix(fps, &ordered)
            .expect("basis classes share the fixed-point labels");
        let rank = pairing.rank();
        if rank != ordered.len() {
            return Ok(Certificate::fail(CHECK)
                .with("axiom", "pairing-singular")
                .with("rank", rank)
                .with("size", ordered.len()));
        }
        Ok(Certificate::pass(CHECK)
            .with("classes", ordered.len())
            .with("pairing-rank", rank))
    }

    /// Basis of the degree-`d` slice: `{α_p * u^{(d - ind(p))/2} : ind(p) <= d}`
    /// in fixed-point order. Its size is `b_0 + b_2 + ... + b_d`.
    pub fn degree_slice(
        &self,
        fps: &FixedPointSet,
        d: usize,
    ) -> Result<Vec<ClassRestrictions>, ClassError> {
        if !d.is_multiple_of(2) {
            return Err(ClassError::OddDegree(d));
        }
        self.check_shape(fps)?;
        Ok(fps
            .points()
            .iter()
            .filter(|p| p.index() <= d)
            .map(|p| self.classes[&p.label].times_u((d - p.index()) / 2))
            .collect())
    }

    /// `(point label, u-power)` descriptors matching [`Self::degree_slice`].
    pub fn degree_slice_descriptors(
        &self,
        fps: &FixedPointSet,
        d: usize,
    ) -> Result<Vec<(String, usize)>, ClassError> {
        if !d.is_multiple_of(2) {
            return Err(ClassError::OddDegree(d));
        }
        Ok(fps
            .points()
            .iter()
            .filter(|p| p.index() <= d)
            .map(|p| (p.label.clone(), (d - p.index()) / 2))
            .collect())
    }
}
