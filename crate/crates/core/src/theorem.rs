//! Replays the kernel argument behind the Betti-number inequality for
//! dimensions divisible by 4, and checks the inequality and unimodality
//! at the profile level.
//!
//! The engine builds the restriction-evaluation map Phi from the
//! degree-`(N-2)` slice of equivariant cohomology to the fixed points of
//! index divisible by 4 below the top, computes its exact kernel, and
//! evaluates the localization identity `∫ α² ω_H = 0` on each kernel
//! element. Every summand of that identity at an index `≡ 2 (mod 4)`
//! point carries the same weak sign, so a nonzero total — or a kernel
//! element that dodges the identity by vanishing everywhere it matters —
//! certifies that the data is not realizable by a closed Hamiltonian
//! circle manifold. The theorem itself is never in question; only inputs
//! can be at fault.

use crate::certificate::Certificate;
use crate::classes::{CanonicalBasis, ClassError, ClassRestrictions};
use crate::exec;
use crate::matrix::RatMatrix;
use crate::model::{BettiProfile, FixedPointSet};
use crate::rat::{format_rat, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("half-dimension {0} is odd: the manifold dimension must be divisible by 4")]
    OddHalfDim(usize),
    #[error("fixed-point data fails validation: {0}")]
    InvalidData(String),
    #[error("moment map not normalized")]
    NotNormalized,
    #[error("class has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("class does not vanish at `{label}` (index {index} ≡ 0 mod 4)")]
    VanishingPrecondition { label: String, index: usize },
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// Main Betti-number inequality for `dim M ≡ 0 (mod 4)`:
///
/// ```text
///     Σ b_i  (i ≡ 2 mod 4, 2 ≤ i ≤ N-2)   ≤   Σ b_i  (i ≡ 0 mod 4, 4 ≤ i ≤ N)
/// ```
///
/// which specializes to `b_2 ≤ b_4` in dimensions 8 and 12. Dimensions
/// not divisible by 4 yield a `not-covered` verdict, distinct from
/// failure.
pub fn check_inequality(profile: &BettiProfile) -> Certificate {
    const CHECK: &str = "inequality";
    let n = profile.half_dim();
    if !n.is_multiple_of(2) || n == 0 {
        return Certificate::not_covered(CHECK)
            .with("dim", 2 * n)
            .with("reason", "dimension not divisible by 4");
    }
    // k odd with 2k <= N-2 on the left, k even with 4 <= 2k <= N on the right
    let lhs_ks: Vec<usize> = (1..=(n - 2) / 2).filter(|k| k % 2 == 1).collect();
    let rhs_ks: Vec<usize> = (2..=n / 2).filter(|k| k % 2 == 0).collect();
    let lhs: u64 = lhs_ks.iter().map(|&k| profile.b(k)).sum();
    let rhs: u64 = rhs_ks.iter().map(|&k| profile.b(k)).sum();
    let term_list = |ks: &[usize]| {
        if ks.is_empty() {
            "0".to_owned()
        } else {
            ks.iter().map(|k| format!("b{}", 2 * k)).collect::<Vec<_>>().join("+")
        }
    };
    let case = if (2 * n).is_multiple_of(8) { "8n" } else { "8n+4" };
    let cert = if lhs <= rhs {
        Certificate::pass(CHECK)
    } else {
        Certificate::fail(CHECK)
    };
    cert.with("lhs", lhs)
        .with("rhs", rhs)
        .with("lhs-terms", term_list(&lhs_ks))
        .with("rhs-terms", term_list(&rhs_ks))
        .with("dim-case", case)
}

/// Unimodality of the even Betti numbers up to the middle:
/// `b_{2i} ≤ b_{2i+2}` for every `i < ⌊N/2⌋`.
pub fn check_unimodality(profile: &BettiProfile) -> Certificate {
    const CHECK: &str = "unimodality";
    let n = profile.half_dim();
    for i in 0..n / 2 {
        if profile.b(i) > profile.b(i + 1) {
            return Certificate::fail(CHECK)
                .with("i", i)
                .with("b", profile.b(i))
                .with("b-next", profile.b(i + 1));
        }
    }
    Certificate::pass(CHECK).with("checked-below", n / 2)
}

/// The restriction-evaluation map from the degree-`(N-2)` slice to the
/// fixed points of index `≡ 0 (mod 4)` below the top.
///
/// Rows are the slice classes (in fixed-point order of their base class),
/// columns the target points; the entry is the coefficient of
/// `u^{(N-2)/2}` in the restriction. A vector in the kernel of the map is
/// a class vanishing at every target.
#[derive(Clone, Debug)]
pub struct PhiMap {
    domain: Vec<ClassRestrictions>,
    domain_descriptors: Vec<(String, usize)>,
    targets: Vec<String>,
    matrix: RatMatrix,
}

impl PhiMap {
    /// Slice classes spanning the domain.
    pub fn domain(&self) -> &[ClassRestrictions] {
        &self.domain
    }

    /// `(base point label, u-power)` of each domain class.
    pub fn domain_descriptors(&self) -> &[(String, usize)] {
        &self.domain_descriptors
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    /// Restriction coefficients, `domain × targets`.
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

/// Builds the Phi map for a verified basis. `N` must be even.
pub fn build_phi(fps: &FixedPointSet, basis: &CanonicalBasis) -> Result<PhiMap, TheoremError> {
    let n = fps.half_dim();
    if !n.is_multiple_of(2) {
        return Err(TheoremError::OddHalfDim(n));
    }
    let d = n - 2;
    let domain = basis.degree_slice(fps, d)?;
    let domain_descriptors = basis.degree_slice_descriptors(fps, d)?;
    let targets: Vec<String> = fps
        .points()
        .iter()
        .filter(|p| p.index() % 4 == 0 && p.index() < 2 * n)
        .map(|p| p.label.clone())
        .collect();
    let matrix = RatMatrix::from_fn(domain.len(), targets.len(), |r, c| {
        domain[r].coefficient(&targets[c])
    });
    Ok(PhiMap {
        domain,
        domain_descriptors,
        targets,
        matrix,
    })
}

/// Exact kernel of the Phi map, re-expanded as restriction tuples.
///
/// Each returned class is the corresponding nullspace combination of the
/// domain classes; by construction it vanishes at every target point.
pub fn phi_kernel(phi: &PhiMap) -> Vec<ClassRestrictions> {
    if phi.domain.is_empty() {
        return Vec::new();
    }
    // kernel vectors live in domain coordinates: solve vᵀ·M = 0
    let null = phi.matrix.transpose().nullspace();
    null.into_iter()
        .map(|v| {
            let mut acc: Option<ClassRestrictions> = None;
            for (c, cls) in v.iter().zip(&phi.domain) {
                let term = cls.scale(c);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term).expect("slice classes share degree and labels"),
                });
            }
            let out = acc.expect("nonempty domain");
            debug_assert!(phi.targets.iter().all(|t| out.coefficient(t).is_zero()));
            out
        })
        .collect()
}

/// Per-point summands of the localization identity `∫ α² ω_H = 0` at the
/// index `≡ 2 (mod 4)` points, i.e. the `u^{-1}` coefficients
/// `-(α|_p)² H(p) / Λ_p`, together with their exact total.
///
/// On moment-normalized data every summand carries the same weak sign
/// (non-positive under this weight convention), so any strictly nonzero
/// summand forces a nonzero total.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignCertificate {
    per_point: BTreeMap<String, Rat>,
    total: Rat,
}

impl SignCertificate {
    pub fn per_point(&self) -> &BTreeMap<String, Rat> {
        &self.per_point
    }

    pub fn total(&self) -> &Rat {
        &self.total
    }

    /// All summands share a weak sign (all `≥ 0` or all `≤ 0`).
    pub fn uniform_sign(&self) -> bool {
        let any_pos = self.per_point.values().any(|v| v > &Rat::zero());
        let any_neg = self.per_point.values().any(|v| v < &Rat::zero());
        !(any_pos && any_neg)
    }

    /// The shared sign: `-1`, `0` or `1`; `None` when signs are mixed.
    pub fn realized_sign(&self) -> Option<i8> {
        if !self.uniform_sign() {
            return None;
        }
        if self.per_point.values().any(|v| v > &Rat::zero()) {
            Some(1)
        } else if self.per_point.values().any(|v| v < &Rat::zero()) {
            Some(-1)
        } else {
            Some(0)
        }
    }

    pub fn any_nonzero(&self) -> bool {
        self.per_point.values().any(|v| !v.is_zero())
    }

    pub fn to_certificate(&self) -> Certificate {
        let mut cert = if self.total.is_zero() {
            Certificate::pass("sign-certificate")
        } else {
            Certificate::fail("sign-certificate")
        }
        .with("total", format_rat(&self.total))
        .with(
            "sign",
            match self.realized_sign() {
                Some(s) => s.to_string(),
                None => "mixed".to_owned(),
            },
        );
        for (l, v) in &self.per_point {
            cert = cert.with(format!("at-{l}"), format_rat(v));
        }
        cert
    }
}

/// Evaluates the sign certificate of a degree-`(N-2)` restriction tuple.
///
/// Preconditions: `fps` valid and moment-normalized, `N` even, and the
/// tuple vanishes at every point of index `≡ 0 (mod 4)` below the top.
/// The maximum itself is exempt — its summand is annihilated by
/// `H(p_max) = 0` regardless of the restriction there. The tuple need not
/// be a genuine class; the operation doubles as a non-realizability probe
/// for fabricated data.
pub fn sign_certificate(
    fps: &FixedPointSet,
    cls: &ClassRestrictions,
) -> Result<SignCertificate, TheoremError> {
    let n = fps.half_dim();
    if !n.is_multiple_of(2) {
        return Err(TheoremError::OddHalfDim(n));
    }
    if !fps.is_normalized() {
        return Err(TheoremError::NotNormalized);
    }
    if cls.degree() != n - 2 {
        return Err(TheoremError::WrongDegree {
            expected: n - 2,
            found: cls.degree(),
        });
    }
    for p in fps.points() {
        if p.index() % 4 == 0 && p.index() < 2 * n && !cls.coefficient(&p.label).is_zero() {
            return Err(TheoremError::VanishingPrecondition {
                label: p.label.clone(),
                index: p.index(),
            });
        }
    }
    let summands = exec::map_ordered(fps.points(), |p| {
        if p.index() % 4 != 2 {
            return None;
        }
        let c = cls.coefficient(&p.label);
        Some((
            p.label.clone(),
            -(&c * &c) * &p.moment / p.euler_product(),
        ))
    });
    let per_point: BTreeMap<String, Rat> = summands.into_iter().flatten().collect();
    let total = per_point.values().cloned().sum();
    Ok(SignCertificate { per_point, total })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReplayVerdict {
    /// No obstruction found: Phi is injective on the supplied data, or
    /// every kernel certificate is identically zero in a way the data can
    /// sustain.
    Consistent,
    /// The data cannot come from a closed Hamiltonian circle manifold.
    Contradiction,
}

impl fmt::Display for ReplayVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayVerdict::Consistent => write!(f, "CONSISTENT"),
            ReplayVerdict::Contradiction => write!(f, "CONTRADICTION"),
        }
    }
}

/// Why a kernel element contradicts realizability.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Contradiction {
    /// `∫ α² ω_H` has a nonzero `u^{-1}` coefficient; on a manifold it
    /// integrates to zero.
    NonzeroTotal { element: usize, total: Rat },
    /// The element vanishes everywhere except the maximum, where it does
    /// not: then `∫ α ≠ 0` although the degree forces `∫ α = 0`.
    TopRestrictionNonzero { element: usize, value: Rat },
    /// The element is a nonzero combination of basis classes restricting
    /// to zero at every point, violating injectivity of the restriction
    /// map.
    RestrictsToZero { element: usize },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::NonzeroTotal { element, total } => write!(
                f,
                "kernel element {element}: localization total {} != 0",
                format_rat(total)
            ),
            Contradiction::TopRestrictionNonzero { element, value } => write!(
                f,
                "kernel element {element}: restricts to {} at the maximum only, so its integral cannot vanish",
                format_rat(value)
            ),
            Contradiction::RestrictsToZero { element } => write!(
                f,
                "kernel element {element}: nonzero basis combination restricts to zero everywhere"
            ),
        }
    }
}

/// Full transcript of the kernel argument on one dataset.
#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub verdict: ReplayVerdict,
    pub profile: BettiProfile,
    pub inequality: Certificate,
    /// `dim` of the domain slice: `b_0 + b_2 + ... + b_{N-2}`.
    pub domain_dim: u64,
    /// Upper bound for `dim Im Phi`: the number of targets counted with
    /// Betti multiplicity, `Σ b_i` over `i ≡ 0 (mod 4)`, `i < 2N`.
    pub range_bound: u64,
    /// Whether the dimension count alone forces a kernel
    /// (`range_bound < domain_dim`); by Poincare duality this happens
    /// exactly when the inequality fails.
    pub forces_kernel: bool,
    pub phi: PhiMap,
    pub kernel: Vec<ClassRestrictions>,
    pub kernel_certificates: Vec<SignCertificate>,
    pub contradictions: Vec<Contradiction>,
}

impl ReplayReport {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Flat summary certificate.
    pub fn certificate(&self) -> Certificate {
        let base = match self.verdict {
            ReplayVerdict::Consistent => Certificate::pass("replay-proof"),
            ReplayVerdict::Contradiction => Certificate::fail("replay-proof"),
        };
        let mut cert = base
            .with("verdict", self.verdict)
            .with("profile", self.profile.render())
            .with("kernel-dim", self.kernel_dim())
            .with("domain-dim", self.domain_dim)
            .with("range-bound", self.range_bound)
            .with("forces-kernel", self.forces_kernel)
            .with("inequality-lhs", &self.inequality.witness["lhs"])
            .with("inequality-rhs", &self.inequality.witness["rhs"]);
        for (i, c) in self.contradictions.iter().enumerate() {
            cert = cert.with(format!("contradiction-{i}"), c);
        }
        cert
    }
}

/// Replays the proof on one dataset: normalizes the moment map, builds
/// Phi, computes its kernel, evaluates the sign certificate of every
/// kernel element, and classifies the outcome.
///
/// Preconditions: `fps` passes [`FixedPointSet::validate`], `N` is even,
/// and `basis` passes [`CanonicalBasis::verify`]. The verdict is invariant
/// under relabeling and global moment shifts.
pub fn replay_proof(
    fps: &FixedPointSet,
    basis: &CanonicalBasis,
) -> Result<ReplayReport, TheoremError> {
    let cert = fps.validate();
    if !cert.passed() {
        return Err(TheoremError::InvalidData(cert.to_string()));
    }
    let fps = fps.normalize_moment();
    let n = fps.half_dim();
    if !n.is_multiple_of(2) {
        return Err(TheoremError::OddHalfDim(n));
    }
    let profile = fps.betti();
    let inequality = check_inequality(&profile);
    let phi = build_phi(&fps, basis)?;
    let kernel = phi_kernel(&phi);

    let domain_dim: u64 = (0..=(n - 2) / 2).map(|k| profile.b(k)).sum();
    let range_bound: u64 = (0..n)
        .filter(|k| (2 * k) % 4 == 0)
        .map(|k| profile.b(k))
        .sum();
    let forces_kernel = range_bound < domain_dim;

    let kernel_certificates: Vec<SignCertificate> = exec::map_ordered(&kernel, |cls| {
        sign_certificate(&fps, cls).expect("kernel elements satisfy the certificate preconditions")
    });

    let max_label = fps
        .max_point()
        .expect("validated data has a unique maximum")
        .label
        .clone();
    let mut contradictions = Vec::new();
    for (i, (cls, cert)) in kernel.iter().zip(&kernel_certificates).enumerate() {
        if !cert.total().is_zero() {
            contradictions.push(Contradiction::NonzeroTotal {
                element: i,
                total: cert.total().clone(),
            });
            continue;
        }
        // total zero with uniform signs: every summand vanished, so the
        // element restricts to zero away from the maximum
        let top = cls.coefficient(&max_label);
        if !top.is_zero() {
            contradictions.push(Contradiction::TopRestrictionNonzero {
                element: i,
                value: top,
            });
        } else {
            contradictions.push(Contradiction::RestrictsToZero { element: i });
        }
    }

    let verdict = if contradictions.is_empty() {
        ReplayVerdict::Consistent
    } else {
        ReplayVerdict::Contradiction
    };
    Ok(ReplayReport {
        verdict,
        profile,
        inequality,
        domain_dim,
        range_bound,
        forces_kernel,
        phi,
        kernel,
        kernel_certificates,
        contradictions,
    })
}
