//! Constraint systems for zeros of prescribed depth along rotation orbits.
//!
//! Fix an order d and a displacement beta. A function f whose coefficient
//! classes vanish as follows:
//!
//! * a_j = 0 for every j in the zero class (j divisible by d), and
//! * (U_beta f)^(n)(0) = 0 for every n not divisible by d,
//!
//! would exhibit zeros of maximal depth at the orbit points. Assembling
//! both families of conditions as rows over the first M coefficients
//! gives a square system; the smallest singular value of its interior
//! column block measures how far truncated functions are from satisfying
//! all constraints at once. A value bounded away from zero is spectral
//! evidence that only the zero function complies.
//!
//! Rows act on normalized coefficients c_j (f = sum c_j z^j / sqrt(j!)).
//! Since f^(j)(0) = j! a_j and a_j = c_j / sqrt(j!), a row annihilates a
//! derivative at 0 exactly when it annihilates the matching normalized
//! coefficient, so the two formulations have the same solution set while
//! the matrix keeps unitary scaling (at beta = 0 it is the identity).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::operators::{apply_weyl, project, weyl_matrix, RootOfUnity};

/// Parameters of one constraint assembly.
#[derive(Clone, Copy, Debug)]
pub struct DeepZeroProblem {
    d: u32,
    beta: Complex64,
    dim: usize,
    guard: usize,
}

impl DeepZeroProblem {
    /// Requires d >= 2, dim >= 4 d (enough room for several full residue
    /// cycles) and a guard band shorter than the truncation.
    pub fn new(d: u32, beta: Complex64, dim: usize, guard: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(
                "rotation order must be at least 2".into(),
            ));
        }
        if !beta.re.is_finite() || !beta.im.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        if dim < 4 * d as usize {
            return Err(Error::InvalidArgument(format!(
                "truncation {dim} too small for order {d}; need at least {}",
                4 * d
            )));
        }
        if guard >= dim {
            return Err(Error::InvalidArgument(
                "guard band must be shorter than the truncation".into(),
            ));
        }
        Ok(DeepZeroProblem { d, beta, dim, guard })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// Orders 2, 3, 4 and 6 are the rotation orders compatible with a
    /// planar lattice; for any other order the spectral sweep explores
    /// territory without that exact backing.
    pub fn crystallographic(&self) -> bool {
        matches!(self.d, 2 | 3 | 4 | 6)
    }
}

/// Indices below `dim` grouped by residue class modulo d; class k is the
/// k-th entry.
pub fn residue_classes(d: u32, dim: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); d as usize];
    for n in 0..dim {
        classes[n % d as usize].push(n);
    }
    classes
}

/// Square constraint system over the first `dim` normalized coefficients.
///
/// Row i enforces the vanishing condition attached to index
/// `row_labels[i]`: a plain coefficient selector when the index is in the
/// zero class, and the matching row of the displacement matrix otherwise.
/// The labels are exactly 0..dim in order, so they partition the index
/// range by construction.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub matrix: DMatrix<Complex64>,
    pub row_labels: Vec<usize>,
}

/// Builds the constraint rows. The displacement matrix must pass its
/// interior guard at the problem's truncation; the refusal (with its
/// measured deviation) propagates to the caller.
pub fn assemble_constraints(problem: &DeepZeroProblem) -> Result<ConstraintSystem> {
    let d = problem.d as usize;
    let dim = problem.dim;
    let weyl = weyl_matrix(problem.beta, dim, problem.guard)?;
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    let mut row_labels = Vec::with_capacity(dim);
    for n in 0..dim {
        if n % d == 0 {
            matrix[(n, n)] = Complex64::new(1.0, 0.0);
        } else {
            for m in 0..dim {
                matrix[(n, m)] = weyl.entry(n, m);
            }
        }
        row_labels.push(n);
    }
    Ok(ConstraintSystem { matrix, row_labels })
}

/// Smallest singular value of the interior column block (columns below
/// dim - guard). Computed from the Hermitian eigenproblem of S^H S, which
/// is deterministic; the clamp guards against a tiny negative rounding of
/// the smallest eigenvalue.
pub fn min_singular_value(system: &ConstraintSystem, guard: usize) -> Result<f64> {
    let dim = system.matrix.ncols();
    if guard >= dim {
        return Err(Error::InvalidArgument(
            "guard band must leave at least one interior column".into(),
        ));
    }
    let interior = system.matrix.columns(0, dim - guard);
    let normal = interior.adjoint() * interior;
    let eigen = normal.symmetric_eigen();
    let mut min = f64::INFINITY;
    for v in eigen.eigenvalues.iter() {
        min = min.min(*v);
    }
    Ok(min.max(0.0).sqrt())
}

/// Residual of the averaging identity for class-zero inputs:
/// the class-zero part of U_{-beta} h equals the average of the d
/// displaced copies U_{-beta w^{-m}} h. Measured on interior coefficients
/// (the leading three quarters), like the other operator residuals.
///
/// The input must be supported on the zero class; anything else makes the
/// identity meaningless and is reported as a precondition failure.
pub fn reduction_identity_residual(d: u32, beta: Complex64, h: &FockVector) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "rotation order must be at least 2".into(),
        ));
    }
    let peak = h.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (n, c) in h.coeffs().iter().enumerate() {
        if n % d as usize != 0 && c.norm() > 1e-14 * peak {
            return Err(Error::Precondition(format!(
                "input carries coefficient mass at index {n} outside the zero class"
            )));
        }
    }
    let omega = RootOfUnity::new(d)?;
    let lhs = project(0, d, &apply_weyl(-beta, h)?);
    let mut sum = FockVector::zero(h.trunc_dim());
    for m in 0..d as i64 {
        sum = sum.add(&apply_weyl(-beta * omega.power(-m), h)?);
    }
    let rhs = sum.scale(Complex64::new(1.0 / d as f64, 0.0));
    let dim = h.trunc_dim();
    Ok(lhs.sub(&rhs).norm_below(dim - dim / 4))
}

/// Pointwise residuals of the order-4 symmetry conditions.
#[derive(Clone, Copy, Debug)]
pub struct FunctionalEquationReport {
    /// max over samples of |sum_{m<4} f(i^m z)|: vanishes exactly when f
    /// has no coefficient in the zero class mod 4.
    pub symmetry_residual: f64,
    /// max over samples of |U_beta f(i z) - U_beta f(z)| when a
    /// displacement was supplied.
    pub displaced_invariance: Option<f64>,
}

/// Probes the order-4 coefficient conditions pointwise at the given
/// sample points, optionally after a displacement.
pub fn functional_equation_check(
    f: &FockVector,
    beta: Option<Complex64>,
    samples: &[Complex64],
) -> Result<FunctionalEquationReport> {
    for (index, z) in samples.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    let i_unit = Complex64::new(0.0, 1.0);
    let mut symmetry_residual = 0.0f64;
    for &z in samples {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut rotated = z;
        for _ in 0..4 {
            acc += f.evaluate(rotated);
            rotated *= i_unit;
        }
        symmetry_residual = symmetry_residual.max(acc.norm());
    }
    let displaced_invariance = match beta {
        None => None,
        Some(b) => {
            let g = apply_weyl(b, f)?;
            let mut worst = 0.0f64;
            for &z in samples {
                worst = worst.max((g.evaluate(i_unit * z) - g.evaluate(z)).norm());
            }
            Some(worst)
        }
    };
    Ok(FunctionalEquationReport {
        symmetry_residual,
        displaced_invariance,
    })
}
