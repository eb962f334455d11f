//! Weyl translation, rotation and residue-class projection operators on
//! truncated coefficient space.
//!
//! The Weyl operator acts on entire functions by
//!
//! ```text
//! (W_a f)(z) = exp(-|a|^2/2 - conj(a) z) f(z + a)
//! ```
//!
//! and is unitary for the weighted pairing of [`crate::fock`], with inverse
//! `W_{-a}`. Its truncated matrix is built column by column through series
//! composition: expand `(z + a)^m` binomially, multiply by the power series
//! of `exp(-conj(a) z)`, scale by `exp(-|a|^2/2)`, and convert to the
//! normalized basis `e_j`. Every entry of the result is the exact pairing
//! `<W_a e_m, e_n>` up to floating-point arithmetic; truncation only drops
//! rows `n >= M`.
//!
//! Truncation is tracked with a guard band `g`: the top `g` rows/columns are
//! considered polluted, and matrix construction refuses (needs-larger-
//! truncation) when an interior column loses more than 1e-6 of its norm.
//! How large the usable interior is depends strongly on `|a|`: a displaced
//! basis vector `e_m` carries energy up to index about `(sqrt(m) + |a|)^2`,
//! so interior columns must keep that reach plus a safety margin below `M`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fock::{sqrt_factorials, FockVector, TailGuard, MAX_TRUNCATION};

/// Relative norm loss beyond which truncated Weyl application is refused.
const TRUNCATION_DEFECT_LIMIT: f64 = 1e-6;

/// A primitive d-th root of unity with a table of its powers.
///
/// Powers are produced by repeated multiplication, renormalized to unit
/// modulus every 64 steps so long tables cannot drift. The quarter-turn
/// orders 1, 2 and 4 use exact base values, which keeps their power tables
/// exact in floating point.
#[derive(Clone, Debug)]
pub struct RootOfUnity {
    order: u32,
    powers: Vec<Complex64>,
}

impl RootOfUnity {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root order must be positive".into()));
        }
        let base = match order {
            1 => Complex64::new(1.0, 0.0),
            2 => Complex64::new(-1.0, 0.0),
            4 => Complex64::new(0.0, 1.0),
            _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / order as f64),
        };
        let mut powers = Vec::with_capacity(order as usize);
        let mut p = Complex64::new(1.0, 0.0);
        for j in 0..order {
            if j > 0 {
                p *= base;
                if j % 64 == 0 {
                    p /= p.norm();
                }
            }
            powers.push(p);
        }
        Ok(RootOfUnity { order, powers })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The primitive root itself, `exp(2 pi i / d)`.
    pub fn value(&self) -> Complex64 {
        if self.order == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            self.powers[1]
        }
    }

    /// `omega^k` for any integer `k`, via exact exponent reduction mod d.
    pub fn power(&self, k: i64) -> Complex64 {
        let d = self.order as i64;
        let idx = k.rem_euclid(d) as usize;
        self.powers[idx]
    }
}

/// Dense operator matrix in the normalized basis, with truncation metadata.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
    guard_band: usize,
    label: String,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn guard_band(&self) -> usize {
        self.guard_band
    }

    /// Number of columns considered truncation-clean.
    pub fn interior_dim(&self) -> usize {
        self.dim() - self.guard_band
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Entry `<A e_m, e_n>` at row `n`, column `m`.
    pub fn entry(&self, n: usize, m: usize) -> Complex64 {
        self.entries[(n, m)]
    }

    /// Applies the matrix to a vector given in Taylor coordinates.
    ///
    /// The vector is zero-padded to the matrix dimension; it must not be
    /// longer than that.
    pub fn apply(&self, f: &FockVector) -> Result<FockVector> {
        let dim = self.dim();
        if f.trunc_dim() > dim {
            return Err(Error::InvalidArgument(format!(
                "vector dimension {} exceeds operator dimension {}",
                f.trunc_dim(),
                dim
            )));
        }
        let sf = sqrt_factorials(dim);
        // Taylor -> normalized coordinates.
        let v: Vec<Complex64> = (0..dim).map(|j| f.coeff(j) * sf[j]).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for m in 0..dim {
            let vm = v[m];
            if vm == Complex64::new(0.0, 0.0) {
                continue;
            }
            let col = self.entries.column(m);
            for n in 0..dim {
                out[n] += col[n] * vm;
            }
        }
        // Normalized -> Taylor coordinates.
        for (n, c) in out.iter_mut().enumerate() {
            *c /= sf[n];
        }
        Ok(FockVector::from_coeffs_unchecked(out))
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OperatorMatrix", 4)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("guard_band", &self.guard_band)?;
        s.serialize_field("label", &self.label)?;
        let pairs: Vec<[f64; 2]> = self
            .entries
            .row_iter()
            .flat_map(|row| {
                row.iter()
                    .map(|c| [c.re, c.im])
                    .collect::<Vec<_>>()
                    .into_iter()
            })
            .collect();
        s.serialize_field("entries", &pairs)?;
        s.end()
    }
}

/// Raw truncated Weyl matrix in the normalized basis, no guard applied.
/// Each entry equals the exact pairing up to rounding.
pub(crate) fn weyl_entries(alpha: Complex64, dim: usize) -> DMatrix<Complex64> {
    let sf = sqrt_factorials(dim);
    let scale = (-alpha.norm_sqr() / 2.0).exp();
    // Power series of exp(-conj(a) z).
    let neg_conj = -alpha.conj();
    let mut exp_series = Vec::with_capacity(dim);
    let mut e = Complex64::new(1.0, 0.0);
    for t in 0..dim {
        if t > 0 {
            e = e * neg_conj / t as f64;
        }
        exp_series.push(e);
    }
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    // Binomial coefficients of (z + a)^m, grown one factor per column.
    let mut binom: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    for m in 0..dim {
        if m > 0 {
            // Multiply by (z + a), keeping at most dim coefficients.
            let len = (binom.len() + 1).min(dim);
            let mut next = vec![Complex64::new(0.0, 0.0); len];
            for (k, slot) in next.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                if k < binom.len() {
                    acc += alpha * binom[k];
                }
                if k >= 1 && k - 1 < binom.len() {
                    acc += binom[k - 1];
                }
                *slot = acc;
            }
            binom = next;
        }
        for n in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, b) in binom.iter().enumerate().take(n + 1) {
                acc += b * exp_series[n - k];
            }
            entries[(n, m)] = acc * scale * (sf[n] / sf[m]);
        }
    }
    entries
}

fn check_weyl_args(dim: usize, guard: usize) -> Result<()> {
    if dim == 0 || dim > MAX_TRUNCATION {
        return Err(Error::InvalidArgument(format!(
            "truncation dimension {dim} outside 1..={MAX_TRUNCATION}"
        )));
    }
    if guard >= dim {
        return Err(Error::InvalidArgument(format!(
            "guard band {guard} must be smaller than dimension {dim}"
        )));
    }
    Ok(())
}

/// Truncated Weyl matrix `<W_a e_m, e_n>` with guard band `guard`.
///
/// Construction refuses when any interior column (index `< dim - guard`)
/// deviates from unit norm by more than 1e-6, since that much of the
/// column's energy has been pushed past the truncation.
pub fn weyl_matrix(alpha: Complex64, dim: usize, guard: usize) -> Result<OperatorMatrix> {
    check_weyl_args(dim, guard)?;
    let entries = weyl_entries(alpha, dim);
    let mut worst = 0.0f64;
    for m in 0..dim - guard {
        let norm = entries.column(m).norm();
        worst = worst.max((norm - 1.0).abs());
    }
    if worst > TRUNCATION_DEFECT_LIMIT {
        return Err(Error::NeedsLargerTruncation {
            deviation: worst,
            dim,
        });
    }
    Ok(OperatorMatrix {
        entries,
        guard_band: guard,
        label: format!("weyl({}, {})", alpha.re, alpha.im),
    })
}

/// Applies the Weyl operator `W_a` to `f` at `f`'s own truncation.
///
/// `f` must pass the default tail guard. After the product, the output norm
/// is compared against the input norm; a relative defect above 1e-6 means
/// the truncation swallowed real mass and the call refuses.
pub fn apply_weyl(alpha: Complex64, f: &FockVector) -> Result<FockVector> {
    apply_weyl_guarded(alpha, f, &TailGuard::default())
}

/// [`apply_weyl`] with an explicit refusal policy for `f`'s tail.
pub fn apply_weyl_guarded(alpha: Complex64, f: &FockVector, guard: &TailGuard) -> Result<FockVector> {
    let dim = f.trunc_dim();
    check_weyl_args(dim, 0)?;
    guard.check(f)?;
    let entries = weyl_entries(alpha, dim);
    let sf = sqrt_factorials(dim);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for m in 0..dim {
        let vm = f.coeff(m) * sf[m];
        if vm == Complex64::new(0.0, 0.0) {
            continue;
        }
        for n in 0..dim {
            out[n] += entries[(n, m)] * vm;
        }
    }
    for (n, c) in out.iter_mut().enumerate() {
        *c /= sf[n];
    }
    let result = FockVector::from_coeffs_unchecked(out);
    let in_norm = f.norm();
    if in_norm > 0.0 {
        let defect = (result.norm() / in_norm - 1.0).abs();
        if defect > TRUNCATION_DEFECT_LIMIT {
            return Err(Error::NeedsLargerTruncation {
                deviation: defect,
                dim,
            });
        }
    }
    Ok(result)
}

/// Rotation `(C^m f)(z) = f(omega^m z)`: coefficient `j` picks up `omega^{jm}`.
/// Exactly norm-preserving since every factor has unit modulus.
pub fn rotation_apply(omega: &RootOfUnity, m: i64, f: &FockVector) -> FockVector {
    let d = omega.order() as i64;
    let m_red = m.rem_euclid(d);
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * omega.power(j as i64 * m_red))
        .collect();
    FockVector::from_coeffs_unchecked(coeffs)
}

/// Projection onto the residue class `j = k (mod d)`: keeps those
/// coefficients, zeroes the rest. Exact.
pub fn project(k: u32, d: u32, f: &FockVector) -> FockVector {
    assert!(d >= 1, "modulus must be positive");
    assert!(k < d, "residue {k} out of range for modulus {d}");
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j as u32 % d == k {
                *c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    FockVector::from_coeffs_unchecked(coeffs)
}

/// The same projection through the averaged rotation filter
/// `P_k f = (1/d) sum_m omega^{-km} f(omega^m z)`.
pub fn project_via_filter(k: u32, d: u32, f: &FockVector) -> Result<FockVector> {
    assert!(d >= 1, "modulus must be positive");
    assert!(k < d, "residue {k} out of range for modulus {d}");
    let omega = RootOfUnity::new(d)?;
    let mut acc = FockVector::zero(f.trunc_dim());
    for m in 0..d {
        let rotated = rotation_apply(&omega, m as i64, f);
        let phase = omega.power(-(k as i64 * m as i64));
        acc = acc.add(&rotated.scale(phase));
    }
    Ok(acc.scale(Complex64::new(1.0 / d as f64, 0.0)))
}

/// Residual of the commutation rule `C W_b = W_{b/omega} C` applied to `f`,
/// measured on the interior coefficients (indices below `M - M/4`).
pub fn commutation_residual(d: u32, beta: Complex64, f: &FockVector) -> Result<f64> {
    let omega = RootOfUnity::new(d)?;
    let lhs = rotation_apply(&omega, 1, &apply_weyl(beta, f)?);
    let rhs = apply_weyl(beta * omega.power(-1), &rotation_apply(&omega, 1, f))?;
    let dim = f.trunc_dim();
    let interior = dim - dim / 4;
    Ok(lhs.sub(&rhs).norm_below(interior))
}
