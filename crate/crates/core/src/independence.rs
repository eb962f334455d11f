//! Numerical certificates of linear independence for finite families of
//! displaced window states.
//!
//! A point configuration lambda_1..lambda_N and a window w determine the
//! family U_{lambda_k} w. Its Gram matrix is positive semidefinite, and a
//! strictly positive smallest eigenvalue proves linear independence. The
//! certificate couples that eigenvalue with a slack term accounting for
//! truncation, so a verdict of independence is only issued when the
//! spectral margin clearly dominates every numerical defect. The verdict
//! is graded evidence: it can report independence or be inconclusive, but
//! a truncated computation can never certify dependence.
//!
//! For special configurations (tiny families, pairs on parallel lines,
//! subsets of an affine lattice) independence is a theorem, not a numeric
//! question; [`classify_known_case`] recognizes those shapes, using exact
//! cyclotomic arithmetic for the lattice test.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::cyclo::CycloElement;
use crate::exact::lattice::lattice_membership_decision;
use crate::fock::FockVector;
use crate::operators::apply_weyl;

/// Points closer than this (without exact forms) are considered coincident.
pub const MIN_SEPARATION: f64 = 1e-12;

/// Relative tolerance for the parallel-direction test on four points.
pub const PARALLEL_TOLERANCE: f64 = 1e-10;

/// Gram diagonal entries must reproduce the window energy this tightly.
const DIAGONAL_DEFECT_LIMIT: f64 = 1e-8;

/// A finite set of distinct displacement points, optionally backed by
/// exact cyclotomic forms for decisions that need exact arithmetic.
#[derive(Clone, Debug)]
pub struct PointConfig {
    points: Vec<Complex64>,
    exact: Option<Vec<CycloElement>>,
}

impl PointConfig {
    /// Numeric-only configuration; points must be pairwise farther apart
    /// than [`MIN_SEPARATION`].
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        let config = PointConfig { points, exact: None };
        config.validate()?;
        Ok(config)
    }

    /// Configuration with exact forms attached. Distinctness is decided
    /// exactly, so points may be arbitrarily close as floats.
    pub fn with_exact(points: Vec<Complex64>, exact: Vec<CycloElement>) -> Result<Self> {
        let config = PointConfig {
            points,
            exact: Some(exact),
        };
        config.validate()?;
        Ok(config)
    }

    /// Builds the float points from the exact forms themselves.
    pub fn from_exact(exact: Vec<CycloElement>) -> Result<Self> {
        let points = exact.iter().map(|e| e.to_complex()).collect();
        Self::with_exact(points, exact)
    }

    fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::DegenerateInput(
                "a configuration needs at least one point".into(),
            ));
        }
        for (index, p) in self.points.iter().enumerate() {
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        if let Some(exact) = &self.exact {
            if exact.len() != self.points.len() {
                return Err(Error::InvalidArgument(
                    "exact forms must match the points one to one".into(),
                ));
            }
            for (p, e) in self.points.iter().zip(exact) {
                if (p - e.to_complex()).norm() > 1e-9 {
                    return Err(Error::InvalidArgument(
                        "exact form disagrees with its floating point value".into(),
                    ));
                }
            }
            for i in 0..exact.len() {
                for j in (i + 1)..exact.len() {
                    if exact[i].sub(&exact[j])?.is_zero() {
                        return Err(Error::PointsTooClose {
                            min_distance: (self.points[i] - self.points[j]).norm(),
                        });
                    }
                }
            }
        } else {
            for i in 0..self.points.len() {
                for j in (i + 1)..self.points.len() {
                    let dist = (self.points[i] - self.points[j]).norm();
                    if dist <= MIN_SEPARATION {
                        return Err(Error::PointsTooClose { min_distance: dist });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn exact_forms(&self) -> Option<&[CycloElement]> {
        self.exact.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Outcome grade of a certificate. Truncated numerics can never prove
/// dependence, so there is no third variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Independent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Independent => "INDEPENDENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Gram data for a configuration, with the spectral quantities needed to
/// judge independence and the slack term that guards them.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub gram: DMatrix<Complex64>,
    pub min_eigenvalue: f64,
    pub condition_number: f64,
    /// N times the largest observed per-vector energy defect; bounds how
    /// far any Gram entry can sit from its untruncated value.
    pub tail_slack: f64,
    pub verdict: Option<Verdict>,
}

fn spectral_bounds(gram: &DMatrix<Complex64>) -> (f64, f64) {
    let hermitized = (gram + gram.adjoint()).scale(0.5);
    let eigen = hermitized.symmetric_eigen();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in eigen.eigenvalues.iter() {
        min = min.min(*v);
        max = max.max(*v);
    }
    (min, max)
}

/// Computes the Gram matrix of the displaced family at truncation `dim`,
/// together with its spectral bounds. The verdict is left unset.
///
/// The diagonal must reproduce the window energy to within 1e-8; a larger
/// defect means the truncation cannot support the configuration and is
/// reported as such rather than silently degrading the certificate.
pub fn gram_matrix(config: &PointConfig, window: &FockVector, dim: usize) -> Result<Certificate> {
    let w = window.resized(dim);
    let energy = w.norm_sq();
    let n = config.len();
    let displaced: Vec<FockVector> = config
        .points()
        .iter()
        .map(|&p| apply_weyl(p, &w))
        .collect::<Result<_>>()?;
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    let mut worst_defect = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            gram[(j, k)] = displaced[j].inner(&displaced[k]);
        }
        worst_defect = worst_defect.max((gram[(j, j)].re - energy).abs());
    }
    if worst_defect > DIAGONAL_DEFECT_LIMIT {
        return Err(Error::NeedsLargerTruncation {
            deviation: worst_defect,
            dim,
        });
    }
    let (min_eigenvalue, max_eigenvalue) = spectral_bounds(&gram);
    let condition_number = if min_eigenvalue > 0.0 {
        max_eigenvalue / min_eigenvalue
    } else {
        f64::INFINITY
    };
    Ok(Certificate {
        gram,
        min_eigenvalue,
        condition_number,
        tail_slack: n as f64 * worst_defect,
        verdict: None,
    })
}

/// Runs [`gram_matrix`] and grades the outcome: independence is certified
/// only when the smallest eigenvalue clears N times the tail slack.
pub fn certify_independence(
    config: &PointConfig,
    window: &FockVector,
    dim: usize,
) -> Result<Certificate> {
    let mut certificate = gram_matrix(config, window, dim)?;
    let threshold = config.len() as f64 * certificate.tail_slack;
    certificate.verdict = Some(if certificate.min_eigenvalue > threshold {
        Verdict::Independent
    } else {
        Verdict::Inconclusive
    });
    Ok(certificate)
}

/// Configuration shapes whose independence is already settled exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseClass {
    /// At most three points.
    SmallN,
    /// Four points splitting into two pairs on two parallel lines.
    ParallelPairs,
    /// All points inside one affine planar lattice.
    RegularLattice,
    /// None of the settled shapes applies.
    Unknown,
}

fn has_parallel_pairing(points: &[Complex64]) -> bool {
    let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
    pairings.iter().any(|&(a, b, c, d)| {
        let u = points[b] - points[a];
        let v = points[d] - points[c];
        (u * v.conj()).im.abs() <= PARALLEL_TOLERANCE * u.norm() * v.norm()
    })
}

/// Recognizes configurations with a settled independence answer, checked
/// in the order: point count, parallel pair split, affine lattice. The
/// lattice test is exact and therefore demands exact forms; asking for it
/// without them is an error rather than a guess.
pub fn classify_known_case(config: &PointConfig) -> Result<CaseClass> {
    if config.len() <= 3 {
        return Ok(CaseClass::SmallN);
    }
    if config.len() == 4 && has_parallel_pairing(config.points()) {
        return Ok(CaseClass::ParallelPairs);
    }
    let Some(exact) = config.exact_forms() else {
        return Err(Error::ExactnessRequired(
            "the lattice test needs exact point coordinates".into(),
        ));
    };
    let decision = lattice_membership_decision(exact)?;
    Ok(if decision.embeddable {
        CaseClass::RegularLattice
    } else {
        CaseClass::Unknown
    })
}

/// The scaled d-th roots of unity beta, beta w, ..., beta w^{d-1}.
/// For the default scale beta = 1 the exact cyclotomic forms are attached,
/// making the configuration usable by the exact classifiers.
pub fn roots_config(d: u32, beta: Complex64) -> Result<PointConfig> {
    if d == 0 {
        return Err(Error::InvalidArgument("root order must be positive".into()));
    }
    if !beta.re.is_finite() || !beta.im.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    if beta.norm() == 0.0 {
        return Err(Error::DegenerateInput("scale must be nonzero".into()));
    }
    if beta == Complex64::new(1.0, 0.0) {
        let exact: Vec<CycloElement> = (0..d as i64).map(|k| CycloElement::zeta_pow(d, k)).collect();
        return PointConfig::from_exact(exact);
    }
    let omega = crate::operators::RootOfUnity::new(d)?;
    let points: Vec<Complex64> = (0..d as i64).map(|k| beta * omega.power(k)).collect();
    PointConfig::new(points)
}

/// The window whose analytic image is the constant function 1: the ground
/// basis vector, i.e. a standard Gaussian on the signal side.
pub fn gaussian_window(dim: usize) -> Result<FockVector> {
    FockVector::basis_vector(0, dim)
}
