//! Truncated vectors of the Fock space of entire functions.
//!
//! A vector stores the Taylor coefficients `a_0 .. a_{M-1}` of
//! `f(z) = sum_j a_j z^j` and all inner products use the weighted pairing
//!
//! ```text
//! <f, g> = sum_j a_j conj(b_j) j!
//! ```
//!
//! which is the Gaussian-measure pairing with the area element normalized by
//! `1/pi`, so that `<z^j, z^k> = delta_{jk} j!` and `e_j = z^j / sqrt(j!)` is
//! an orthonormal basis. That weighting is the contract of this module: every
//! norm, inner product and energy below uses it, and downstream operator
//! columns are expressed against the normalized basis `e_j`.
//!
//! Truncation is explicit. The top fraction of the coefficient range is a
//! guard region: consumers that are sensitive to truncation refuse vectors
//! whose guard-region energy is not negligible (see [`TailGuard`]).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation dimension used by front ends.
pub const DEFAULT_TRUNCATION: usize = 64;

/// Largest truncation dimension for which the factorial weights stay inside
/// f64 range (170! is the last finite factorial).
pub const MAX_TRUNCATION: usize = 170;

/// `0!, 1!, ..., (len-1)!` as f64, by running product.
#[cfg(test)]
fn factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = 1.0f64;
    for j in 0..len {
        if j > 0 {
            acc *= j as f64;
        }
        out.push(acc);
    }
    out
}

/// `sqrt(j!)` for `j < len`, by running product of square roots.
pub(crate) fn sqrt_factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = 1.0f64;
    for j in 0..len {
        if j > 0 {
            acc *= (j as f64).sqrt();
        }
        out.push(acc);
    }
    out
}

/// Energy split of a truncated vector: total weighted energy and the part
/// carried by the top `guard_fraction` of coefficient indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailReport {
    pub total_energy: f64,
    pub guard_energy: f64,
    pub guard_fraction: f64,
}

/// Refusal policy for truncation-sensitive consumers.
///
/// A vector passes when its guard-region energy (top `guard_fraction` of
/// indices) is at most `relative_threshold` times its total energy.
#[derive(Clone, Copy, Debug)]
pub struct TailGuard {
    pub guard_fraction: f64,
    pub relative_threshold: f64,
}

impl Default for TailGuard {
    fn default() -> Self {
        TailGuard {
            guard_fraction: 0.25,
            relative_threshold: 1e-10,
        }
    }
}

impl TailGuard {
    pub fn check(&self, f: &FockVector) -> Result<()> {
        let report = f.tail_report(self.guard_fraction);
        let threshold = self.relative_threshold * report.total_energy;
        if report.guard_energy > threshold {
            return Err(Error::TailGuardViolation {
                guard_energy: report.guard_energy,
                threshold,
                guard_fraction: self.guard_fraction,
            });
        }
        Ok(())
    }
}

/// Taylor coefficients of an entire function, truncated at `trunc_dim` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
}

impl FockVector {
    /// Wraps a coefficient sequence, rejecting non-finite entries and
    /// sequences whose weighted energy overflows f64.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "truncation dimension must be positive".into(),
            ));
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        let v = FockVector { coeffs };
        if !v.norm_sq().is_finite() {
            return Err(Error::EnergyOverflow {
                dim: v.trunc_dim(),
            });
        }
        Ok(v)
    }

    /// The zero vector with `dim` coefficients.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "truncation dimension must be positive");
        FockVector {
            coeffs: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// The normalized basis vector `e_j = z^j / sqrt(j!)` truncated at `dim`.
    pub fn basis_vector(j: usize, dim: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        let mut v = FockVector::zero(dim);
        v.coeffs[j] = Complex64::new(1.0 / sqrt_factorials(j + 1)[j], 0.0);
        Ok(v)
    }

    pub fn trunc_dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `a_j`, zero past the truncation.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs
            .get(j)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<Complex64>) -> Self {
        FockVector { coeffs }
    }

    /// Same coefficients, truncation extended (or shortened) to `dim`.
    pub fn resized(&self, dim: usize) -> Self {
        assert!(dim >= 1, "truncation dimension must be positive");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim, Complex64::new(0.0, 0.0));
        FockVector { coeffs }
    }

    /// Squared weighted norm `sum_j |a_j|^2 j!`.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0f64;
        let mut weight = 1.0f64;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                weight *= j as f64;
            }
            let e = c.norm_sqr();
            // Skip exact zeros so an overflowed weight cannot poison them.
            if e != 0.0 {
                acc += e * weight;
            }
        }
        acc
    }

    /// Weighted norm; finite by construction.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Weighted inner product `sum_j a_j conj(b_j) j!`, conjugate-linear in
    /// the second argument. Differing truncations are zero-padded.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut acc = Complex64::new(0.0, 0.0);
        let mut weight = 1.0f64;
        for j in 0..n {
            if j > 0 {
                weight *= j as f64;
            }
            let term = self.coeffs[j] * other.coeffs[j].conj();
            if term != Complex64::new(0.0, 0.0) {
                acc += term * weight;
            }
        }
        acc
    }

    /// Evaluates the truncated series at `z` by Horner's scheme.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Energy split against the top `ceil(guard_fraction * M)` indices.
    pub fn tail_report(&self, guard_fraction: f64) -> TailReport {
        assert!(
            guard_fraction > 0.0 && guard_fraction <= 1.0,
            "guard fraction must lie in (0, 1]"
        );
        let dim = self.trunc_dim();
        let guard_len = ((guard_fraction * dim as f64).ceil() as usize).min(dim);
        let start = dim - guard_len;
        let mut total = 0.0f64;
        let mut guard = 0.0f64;
        let mut weight = 1.0f64;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                weight *= j as f64;
            }
            let e = c.norm_sqr();
            if e != 0.0 {
                let w = e * weight;
                total += w;
                if j >= start {
                    guard += w;
                }
            }
        }
        TailReport {
            total_energy: total,
            guard_energy: guard,
            guard_fraction,
        }
    }

    /// Coefficientwise sum; truncations are padded to the larger.
    pub fn add(&self, other: &FockVector) -> FockVector {
        let dim = self.trunc_dim().max(other.trunc_dim());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(j) + other.coeff(j);
        }
        FockVector { coeffs }
    }

    /// Coefficientwise difference; truncations are padded to the larger.
    pub fn sub(&self, other: &FockVector) -> FockVector {
        let dim = self.trunc_dim().max(other.trunc_dim());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(j) - other.coeff(j);
        }
        FockVector { coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> FockVector {
        FockVector {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Weighted norm of the restriction to indices `< cut`.
    pub fn norm_below(&self, cut: usize) -> f64 {
        let mut acc = 0.0f64;
        let mut weight = 1.0f64;
        for (j, c) in self.coeffs.iter().enumerate().take(cut) {
            if j > 0 {
                weight *= j as f64;
            }
            let e = c.norm_sqr();
            if e != 0.0 {
                acc += e * weight;
            }
        }
        acc.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent oracle: `(1/pi) * int_{|z|<=R} |z|^{2j} e^{-|z|^2} dA`
    /// reduces to the radial integral `2 int_0^R r^{2j+1} e^{-r^2} dr`,
    /// evaluated with composite Simpson so it shares nothing with the
    /// library's quadrature code.
    fn monomial_norm_sq_by_quadrature(j: u32, radius: f64, intervals: usize) -> f64 {
        assert!(intervals % 2 == 0);
        let h = radius / intervals as f64;
        let f = |r: f64| 2.0 * r.powi(2 * j as i32 + 1) * (-r * r).exp();
        let mut acc = f(0.0) + f(radius);
        for i in 1..intervals {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn monomial_norms_match_factorial_oracle() {
        let facts = factorials(11);
        for j in 0..=10u32 {
            let oracle = monomial_norm_sq_by_quadrature(j, 10.0, 20_000);
            let mut v = FockVector::zero(j as usize + 1);
            v.coeffs[j as usize] = c(1.0, 0.0);
            let lib = v.norm_sq();
            assert!(
                (lib - facts[j as usize]).abs() <= 1e-12 * facts[j as usize],
                "library weight at j={j}"
            );
            assert!(
                (oracle - facts[j as usize]).abs() <= 1e-8 * facts[j as usize],
                "quadrature oracle at j={j}: {oracle} vs {}",
                facts[j as usize]
            );
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(FockVector::new(vec![c(1.0, 0.0)]).unwrap().norm(), 1.0);
        let v = FockVector::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let w = FockVector::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0 / 2f64.sqrt(), 0.0)])
            .unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inner_is_weighted_and_conjugate_linear() {
        let f = FockVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let g = FockVector::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(f.inner(&g), c(0.0, 0.0));
        let a = FockVector::new(vec![c(0.0, 1.0)]).unwrap();
        let b = FockVector::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(a.inner(&b), c(0.0, 1.0));
        assert_eq!(b.inner(&a), c(0.0, -1.0));
    }

    #[test]
    fn basis_vectors_are_orthonormal() {
        let dim = 13;
        for j in 0..dim {
            for k in 0..dim {
                let ej = FockVector::basis_vector(j, dim).unwrap();
                let ek = FockVector::basis_vector(k, dim).unwrap();
                let got = ej.inner(&ek);
                let want = if j == k { 1.0 } else { 0.0 };
                assert!(
                    (got - c(want, 0.0)).norm() < 1e-12,
                    "<e_{j}, e_{k}> = {got}"
                );
            }
        }
    }

    #[test]
    fn basis_vector_out_of_range() {
        assert!(matches!(
            FockVector::basis_vector(4, 4),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let one = FockVector::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(one.evaluate(c(5.0, -3.0)), c(1.0, 0.0));
        let idf = FockVector::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(idf.evaluate(c(2.0, 1.0)), c(2.0, 1.0));
        let sum = FockVector::new(vec![c(1.0, 0.0); 3]).unwrap();
        assert_eq!(sum.evaluate(c(1.0, 0.0)), c(3.0, 0.0));
    }

    #[test]
    fn evaluate_matches_basis_formula() {
        let dim = 41;
        let sf = sqrt_factorials(dim);
        for j in [0usize, 1, 5, 17, 40] {
            let e = FockVector::basis_vector(j, dim).unwrap();
            for z in [c(0.3, 0.1), c(-1.5, 2.0), c(0.0, -4.0)] {
                let want = z.powu(j as u32) / sf[j];
                let got = e.evaluate(z);
                assert!(
                    (got - want).norm() <= 1e-12 * want.norm().max(1.0),
                    "e_{j}({z}) = {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn tail_report_examples() {
        let dim = 8;
        let mut coeffs = vec![c(0.0, 0.0); dim];
        coeffs[7] = c(1.0, 0.0);
        let v = FockVector::new(coeffs).unwrap();
        let r = v.tail_report(0.25);
        assert_eq!(r.guard_energy, r.total_energy);

        let low = FockVector::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let r = low.tail_report(0.25);
        assert_eq!(r.guard_energy, 0.0);
        assert_eq!(r.total_energy, 2.0);

        let r = low.tail_report(1.0);
        assert_eq!(r.guard_energy, r.total_energy);
    }

    #[test]
    fn tail_guard_refuses_hot_tails() {
        let guard = TailGuard::default();
        let mut coeffs = vec![c(0.0, 0.0); 16];
        coeffs[0] = c(1.0, 0.0);
        let clean = FockVector::new(coeffs.clone()).unwrap();
        assert!(guard.check(&clean).is_ok());

        coeffs[15] = c(1e-3, 0.0);
        let hot = FockVector::new(coeffs).unwrap();
        assert!(matches!(
            guard.check(&hot),
            Err(Error::TailGuardViolation { .. })
        ));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            FockVector::new(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 0 })
        ));
        assert!(matches!(
            FockVector::new(vec![c(0.0, f64::INFINITY)]),
            Err(Error::NonFinite { index: 0 })
        ));
        assert!(FockVector::new(vec![]).is_err());
        // 200 coefficients of size 1: the factorial weights overflow f64.
        let big = vec![c(1.0, 0.0); 200];
        assert!(matches!(
            FockVector::new(big),
            Err(Error::EnergyOverflow { dim: 200 })
        ));
    }

    #[test]
    fn zero_coefficients_do_not_touch_overflowed_weights() {
        // Nonzero data only at low indices keeps everything finite even when
        // the truncation dimension nominally exceeds the factorial range.
        let mut coeffs = vec![c(0.0, 0.0); 200];
        coeffs[3] = c(2.0, -1.0);
        let v = FockVector::new(coeffs).unwrap();
        assert!((v.norm_sq() - 5.0 * 6.0).abs() < 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_vector(dim: usize) -> impl Strategy<Value = FockVector> {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_map(|pairs| {
                FockVector::new(pairs.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap()
            })
        }

        proptest! {
            #[test]
            fn parseval_against_basis_expansion(f in arb_vector(24)) {
                let dim = f.trunc_dim();
                let mut acc = 0.0;
                for j in 0..dim {
                    let e = FockVector::basis_vector(j, dim).unwrap();
                    acc += f.inner(&e).norm_sqr();
                }
                let n2 = f.norm_sq();
                prop_assert!((acc - n2).abs() <= 1e-12 * n2.max(1.0));
            }

            #[test]
            fn cauchy_schwarz(f in arb_vector(20), g in arb_vector(20)) {
                let lhs = f.inner(&g).norm();
                let rhs = f.norm() * g.norm();
                prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
            }

            #[test]
            fn norm_is_absolutely_homogeneous(f in arb_vector(12), re in -3.0f64..3.0, im in -3.0f64..3.0) {
                let s = c(re, im);
                let scaled = f.scale(s);
                prop_assert!((scaled.norm() - s.norm() * f.norm()).abs() <= 1e-10 * f.norm().max(1.0));
            }
        }
    }
}
