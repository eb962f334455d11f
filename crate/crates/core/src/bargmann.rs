//! Lift of sampled line signals into the analytic coefficient space.
//!
//! The integral transform used here has kernel
//!
//! ```text
//! A(z, x) = (2pi)^{-1/4} exp(-izx + z^2/2 - x^2/4)
//! ```
//!
//! and sends square-integrable signals on the line to entire functions.
//! Its ground state is g0(x) = (2pi)^{-1/4} exp(-x^2/4), whose image is the
//! constant function 1; time-frequency shifted copies of g0 map to scalar
//! multiples of Weyl translates, with the shift pair (a, b) landing on the
//! point -2 pi b - i a / 2. That point map is real-affine, so it carries
//! lines to lines and lattices to lattices; those geometric facts have
//! direct test hooks below.
//!
//! Transforms are evaluated by Gauss-Legendre quadrature on a symmetric
//! interval, with a hard precondition that the integrand has decayed at the
//! interval ends. Taylor coefficients of an image are recovered by
//! averaging over equispaced points of a circle; the averaging is repeated
//! at twice the point count and kept only when the two rounds agree, which
//! bounds the aliasing error.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::cyclo::CycloElement;
use crate::exact::lattice::{lattice_membership_decision, MembershipResult};
use crate::fock::FockVector;
use crate::quadrature::gauss_legendre;

/// Default node count for signal quadrature.
pub const DEFAULT_SIGNAL_NODES: usize = 400;
/// Default half-width of the sampling interval.
pub const DEFAULT_HALF_WIDTH: f64 = 12.0;
/// Default circle radius for coefficient extraction.
pub const DEFAULT_CONTOUR_RADIUS: f64 = 1.0;

/// Integrand magnitude allowed at the interval ends, relative to its peak.
const ENDPOINT_DECAY_LIMIT: f64 = 1e-14;
/// Largest tolerated per-coefficient change when the circle is refined.
const ALIASING_LIMIT: f64 = 1e-8;

fn kernel_norm() -> f64 {
    (2.0 * std::f64::consts::PI).powf(-0.25)
}

/// The transform kernel A(z, x).
pub fn bargmann_kernel(z: Complex64, x: f64) -> Complex64 {
    let exponent = -Complex64::i() * z * x + z * z * 0.5 - Complex64::new(x * x / 4.0, 0.0);
    kernel_norm() * exponent.exp()
}

/// Ground-state window g0(x) = (2pi)^{-1/4} exp(-x^2/4); its image is 1.
pub fn gaussian_ground(x: f64) -> f64 {
    kernel_norm() * (-x * x / 4.0).exp()
}

/// A time shift and a frequency shift acting on line signals as
/// `(T f)(x) = exp(2 pi i b x) f(x - a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeFrequencyAtom {
    pub time_shift: f64,
    pub frequency_shift: f64,
}

impl TimeFrequencyAtom {
    pub fn new(time_shift: f64, frequency_shift: f64) -> Result<Self> {
        if !time_shift.is_finite() || !frequency_shift.is_finite() {
            return Err(Error::InvalidArgument(
                "atom shifts must be finite".into(),
            ));
        }
        Ok(TimeFrequencyAtom {
            time_shift,
            frequency_shift,
        })
    }

    /// Applies the shift pair to a signal.
    pub fn apply<F: Fn(f64) -> Complex64>(&self, f: F) -> impl Fn(f64) -> Complex64 {
        let a = self.time_shift;
        let b = self.frequency_shift;
        move |x: f64| {
            let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * b * x);
            phase * f(x - a)
        }
    }
}

/// Where the shift pair lands in the analytic plane: -2 pi b - i a / 2.
pub fn tf_to_fock_point(atom: &TimeFrequencyAtom) -> Complex64 {
    Complex64::new(
        -2.0 * std::f64::consts::PI * atom.frequency_shift,
        -atom.time_shift / 2.0,
    )
}

/// The unit-modulus factor exp(i pi a b) relating the transform of a
/// shifted window to the Weyl translate of the window's transform.
pub fn tf_phase(atom: &TimeFrequencyAtom) -> Complex64 {
    Complex64::from_polar(
        1.0,
        std::f64::consts::PI * atom.time_shift * atom.frequency_shift,
    )
}

/// A signal tabulated on quadrature nodes.
#[derive(Clone, Debug)]
pub struct SampledSignal {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.len() != values.len() {
            return Err(Error::InvalidArgument(
                "nodes, weights and values must have equal lengths".into(),
            ));
        }
        if nodes.len() < 2 {
            return Err(Error::DegenerateInput(
                "a sampled signal needs at least two nodes".into(),
            ));
        }
        for (i, pair) in nodes.windows(2).enumerate() {
            if !(pair[0] < pair[1]) {
                return Err(Error::InvalidArgument(format!(
                    "nodes must increase strictly (violated at index {i})"
                )));
            }
        }
        for (i, (&x, &w)) in nodes.iter().zip(&weights).enumerate() {
            if !x.is_finite() || !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "node or weight at index {i} is not a finite positive pair"
                )));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        Ok(SampledSignal {
            nodes,
            weights,
            values,
        })
    }

    /// Tabulates a function on Gauss-Legendre nodes over [-half_width,
    /// half_width].
    pub fn from_function<F: Fn(f64) -> Complex64>(
        f: F,
        n_nodes: usize,
        half_width: f64,
    ) -> Result<Self> {
        if n_nodes < 2 || !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidArgument(
                "need at least two nodes and a positive half-width".into(),
            ));
        }
        let (nodes, weights) = gauss_legendre(n_nodes, -half_width, half_width);
        let values = nodes.iter().map(|&x| f(x)).collect();
        SampledSignal::new(nodes, weights, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Quadrature value of the plain L2 pairing with another signal on the
    /// same grid.
    pub fn l2_inner(&self, other: &SampledSignal) -> Result<Complex64> {
        if self.nodes.len() != other.nodes.len()
            || self
                .nodes
                .iter()
                .zip(&other.nodes)
                .any(|(a, b)| (a - b).abs() > 1e-12)
        {
            return Err(Error::InvalidArgument(
                "signals must share their quadrature grid".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.weights)
            .map(|((f, g), &w)| f * g.conj() * w)
            .sum())
    }
}

/// Shift pair applied to the ground window, tabulated for transforming.
pub fn gaussian_atom_signal(
    atom: &TimeFrequencyAtom,
    n_nodes: usize,
    half_width: f64,
) -> Result<SampledSignal> {
    let shifted = atom.apply(|x| Complex64::new(gaussian_ground(x), 0.0));
    SampledSignal::from_function(shifted, n_nodes, half_width)
}

/// Transform value at one point, by quadrature over the signal grid.
///
/// Refuses when the integrand has not decayed at the grid endpoints, since
/// the quadrature then silently misses mass outside the interval.
pub fn bargmann_point(signal: &SampledSignal, z: Complex64) -> Result<Complex64> {
    let n = signal.nodes.len();
    let mut peak = 0.0f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut first_mag = 0.0;
    let mut last_mag = 0.0;
    for i in 0..n {
        let term = bargmann_kernel(z, signal.nodes[i]) * signal.values[i];
        let mag = term.norm();
        peak = peak.max(mag);
        if i == 0 {
            first_mag = mag;
        }
        if i == n - 1 {
            last_mag = mag;
        }
        acc += term * signal.weights[i];
    }
    if peak == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let endpoint_ratio = first_mag.max(last_mag) / peak;
    if endpoint_ratio >= ENDPOINT_DECAY_LIMIT {
        return Err(Error::InsufficientGrid { endpoint_ratio });
    }
    Ok(acc)
}

fn contour_coefficients(
    signal: &SampledSignal,
    m_dim: usize,
    radius: f64,
    n_points: usize,
) -> Result<Vec<Complex64>> {
    let mut sums = vec![Complex64::new(0.0, 0.0); m_dim];
    for k in 0..n_points {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_points as f64;
        let z = Complex64::from_polar(radius, theta);
        let value = bargmann_point(signal, z)?;
        for (j, slot) in sums.iter_mut().enumerate() {
            let phase = Complex64::from_polar(1.0, -(j as f64) * theta);
            *slot += value * phase;
        }
    }
    let mut r_pow = 1.0;
    for (j, slot) in sums.iter_mut().enumerate() {
        if j > 0 {
            r_pow *= radius;
        }
        *slot /= n_points as f64 * r_pow;
    }
    Ok(sums)
}

/// Taylor coefficients of the transformed signal, by circle averaging.
///
/// Uses at least 4 * m_dim equispaced points, then doubles the count; the
/// run is accepted only when no coefficient moves by more than 1e-8
/// between the two rounds, and the finer result is returned.
pub fn bargmann_coefficients(
    signal: &SampledSignal,
    m_dim: usize,
    radius: f64,
) -> Result<FockVector> {
    if m_dim == 0 {
        return Err(Error::InvalidArgument(
            "coefficient count must be positive".into(),
        ));
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidArgument(
            "extraction radius must be positive".into(),
        ));
    }
    let n_points = (4 * m_dim).max(8);
    let coarse = contour_coefficients(signal, m_dim, radius, n_points)?;
    let fine = contour_coefficients(signal, m_dim, radius, 2 * n_points)?;
    let delta = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    if delta > ALIASING_LIMIT {
        return Err(Error::AliasingNotConverged { delta });
    }
    FockVector::new(fine)
}

/// Checks that the images of three distinct shift pairs are collinear.
///
/// The point map is real-affine, so for genuinely collinear inputs this
/// always holds; the function recomputes it from the images rather than
/// trusting the premise.
pub fn map_preserves_lines(
    p: &TimeFrequencyAtom,
    q: &TimeFrequencyAtom,
    r: &TimeFrequencyAtom,
) -> Result<bool> {
    if p == q || p == r || q == r {
        return Err(Error::DegenerateInput(
            "collinearity needs three distinct shift pairs".into(),
        ));
    }
    let base = tf_to_fock_point(p);
    let u = tf_to_fock_point(q) - base;
    let v = tf_to_fock_point(r) - base;
    let cross = (u * v.conj()).im;
    let scale = (u.norm() * v.norm()).max(1.0);
    Ok(cross.abs() <= 1e-12 * scale)
}

/// Exact lattice decision for the images of rational shift pairs.
///
/// The point map sends (a, b) to b * u1 + a * u2 with the fixed frame
/// u1 = -2 pi and u2 = -i/2. Since the map is linear and invertible,
/// lattice questions about the images reduce exactly to the frame
/// coordinates (b, a), which are handled as Gaussian-rational points.
pub fn tf_lattice_decision(pairs: &[(BigRational, BigRational)]) -> Result<MembershipResult> {
    let points: Vec<CycloElement> = pairs
        .iter()
        .map(|(a, b)| CycloElement::gaussian(b.clone(), a.clone()))
        .collect();
    lattice_membership_decision(&points)
}

/// Maps a frame-coordinate value (as produced by [`tf_lattice_decision`]
/// witnesses) back to the analytic plane.
pub fn frame_to_fock_point(value: Complex64) -> Complex64 {
    Complex64::new(
        -2.0 * std::f64::consts::PI * value.re,
        -value.im / 2.0,
    )
}

/// Moment of the standard normal density: 0 for odd k, (k-1)!! for even k.
fn normal_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut t = k as i64 - 1;
    while t > 1 {
        acc *= t as f64;
        t -= 2;
    }
    acc
}

/// Coefficients (ascending) of the degree-n polynomial p_n such that
/// h_n = p_n * g0 is the n-th orthonormal mode in L2.
///
/// Built by Gram-Schmidt on the monomial multipliers x^k g0. Because
/// g0^2 is exactly the standard normal density, the pairing of x^j g0 and
/// x^k g0 is the (j+k)-th normal moment, known in closed form; no
/// quadrature enters the construction.
pub fn hermite_polynomial(n: usize) -> Vec<f64> {
    let form = |p: &[f64], q: &[f64]| -> f64 {
        let mut acc = 0.0;
        for (j, pj) in p.iter().enumerate() {
            if *pj == 0.0 {
                continue;
            }
            for (k, qk) in q.iter().enumerate() {
                if *qk != 0.0 {
                    acc += pj * qk * normal_moment(j + k);
                }
            }
        }
        acc
    };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = vec![0.0; k + 1];
        v[k] = 1.0;
        for b in &basis {
            let c = form(&v, b);
            for (slot, bj) in v.iter_mut().zip(b) {
                *slot -= c * bj;
            }
        }
        let norm = form(&v, &v).sqrt();
        for slot in v.iter_mut() {
            *slot /= norm;
        }
        basis.push(v);
    }
    basis.pop().expect("loop ran at least once")
}

/// The n-th orthonormal mode h_n = p_n * g0, tabulated for transforming.
pub fn hermite_mode(n: usize, n_nodes: usize, half_width: f64) -> Result<SampledSignal> {
    let poly = hermite_polynomial(n);
    SampledSignal::from_function(
        move |x| {
            let mut p = 0.0;
            for c in poly.iter().rev() {
                p = p * x + c;
            }
            Complex64::new(p * gaussian_ground(x), 0.0)
        },
        n_nodes,
        half_width,
    )
}
