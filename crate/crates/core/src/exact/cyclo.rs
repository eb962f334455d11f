//! Cyclotomic polynomials over the integers and exact arithmetic in the
//! fields they cut out.
//!
//! An element of the n-th cyclotomic field is stored as a rational
//! coefficient vector of length phi(n) over the power basis
//! `1, z, ..., z^{phi(n)-1}`, where z stands for a primitive n-th root of
//! unity. Products are reduced modulo the n-th cyclotomic polynomial, so
//! every operation here is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::totient::euler_phi;

/// Polynomial product, coefficients ascending.
#[cfg(test)]
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Division of integer polynomials known to be exact (monic divisor).
/// Panics if a nonzero remainder shows up, which would mean the caller's
/// divisibility claim was wrong.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    assert!(rem.len() > dn, "degree of dividend below divisor");
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(BigInt::is_zero), "division left a remainder");
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, ascending, exact.
///
/// Built by the divisor chain: `x^n - 1` divided by the cyclotomic
/// polynomials of all proper divisors of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    fn compute(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(hit) = memo.get(&n) {
            return hit.clone();
        }
        // x^n - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut result = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = compute(d, memo);
                result = poly_div_exact(&result, &phi_d);
            }
        }
        memo.insert(n, result.clone());
        result
    }
    let mut memo = HashMap::new();
    compute(n, &mut memo)
}

/// Exact element of the n-th cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

/// `z^k = sum_t rows[k - deg][t] z^t` for k from deg to deg + count - 1.
fn reduction_rows(modulus: &[BigInt], deg: usize, count: usize) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(count);
    // First row from the modulus itself: z^deg = -(c_0 + ... + c_{deg-1} z^{deg-1}).
    if count == 0 {
        return rows;
    }
    let first: Vec<BigRational> = (0..deg)
        .map(|t| BigRational::from_integer(-modulus[t].clone()))
        .collect();
    rows.push(first);
    for _ in 1..count {
        let prev = rows.last().unwrap();
        // Multiply the previous row by z and reduce the overflow term.
        let top = prev[deg - 1].clone();
        let mut next = vec![BigRational::zero(); deg];
        for t in 1..deg {
            next[t] = prev[t - 1].clone();
        }
        if !top.is_zero() {
            for t in 0..deg {
                next[t] += &top * &rows[0][t];
            }
        }
        rows.push(next);
    }
    rows
}

impl CycloElement {
    /// Wraps a coefficient vector; its length must be phi(conductor).
    pub fn new(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let deg = euler_phi(conductor as u64) as usize;
        if coeffs.len() != deg {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector length {} does not match field degree {} for conductor {}",
                coeffs.len(),
                deg,
                conductor
            )));
        }
        Ok(CycloElement { conductor, coeffs })
    }

    pub fn zero(conductor: u32) -> Self {
        let deg = euler_phi(conductor as u64) as usize;
        CycloElement {
            conductor,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut e = Self::zero(conductor);
        e.coeffs[0] = q;
        e
    }

    /// The primitive root z itself.
    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    /// `z^k` for any integer exponent, reduced into the power basis.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let n = conductor as i64;
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n) as usize;
        let deg = euler_phi(conductor as u64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce_raw(conductor, deg, raw)
    }

    /// Conductor-4 element `re + im z`, i.e. an exact Gaussian-rational
    /// point of the plane.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        CycloElement {
            conductor: 4,
            coeffs: vec![re, im],
        }
    }

    fn reduce_raw(conductor: u32, deg: usize, mut raw: Vec<BigRational>) -> Self {
        if raw.len() > deg {
            let modulus = cyclotomic_polynomial(conductor);
            let rows = reduction_rows(&modulus, deg, raw.len() - deg);
            for j in deg..raw.len() {
                let c = std::mem::replace(&mut raw[j], BigRational::zero());
                if c.is_zero() {
                    continue;
                }
                let row = &rows[j - deg];
                for t in 0..deg {
                    let add = &c * &row[t];
                    raw[t] += add;
                }
            }
        }
        raw.truncate(deg);
        raw.resize(deg, BigRational::zero());
        CycloElement {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in the prime field.
    pub fn try_to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn require_same_field(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloElement {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same_field(other)?;
        let deg = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * deg.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Ok(Self::reduce_raw(self.conductor, deg, raw))
    }

    /// Complex conjugation: substitutes `z -> z^{n-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut acc = Self::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Self::zeta_pow(n, -(j as i64)).scale(c);
            acc = acc.add(&term).expect("same conductor by construction");
        }
        acc
    }

    /// True when the element equals its own conjugate, i.e. has zero
    /// imaginary part. This is an exact test.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Floating-point value at `z = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.conductor as f64;
        let zeta = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n);
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let v = c.to_f64().unwrap_or_else(|| {
                let num = c.numer().to_f64().unwrap_or(f64::NAN);
                let den = c.denom().to_f64().unwrap_or(f64::NAN);
                num / den
            });
            acc = acc * zeta + num_complex::Complex64::new(v, 0.0);
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = num_integer::lcm(d, c.denom().abs());
        }
        d
    }
}
