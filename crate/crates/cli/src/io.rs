//! JSON schemas, CSV tables and SVG figures for the command-line front
//! end. Complex numbers travel as [re, im] pairs; exact integers travel
//! as JSON numbers when they fit in an i64 and as decimal strings
//! otherwise, so arbitrarily large witnesses survive a round trip.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use fockzero::exact::{CycloElement, LatticeWitness, MembershipResult};
use fockzero::independence::{CaseClass, Certificate};

/// An exact integer: a plain number when small, a decimal string when not.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Small(i64),
    Big(String),
}

impl IntValue {
    pub fn from_bigint(v: &BigInt) -> IntValue {
        match v.to_i64() {
            Some(s) => IntValue::Small(s),
            None => IntValue::Big(v.to_string()),
        }
    }

    pub fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntValue::Small(s) => Ok(BigInt::from(*s)),
            IntValue::Big(text) => text
                .parse::<BigInt>()
                .map_err(|_| format!("not an integer: {text:?}")),
        }
    }
}

/// Exact cyclotomic element: conductor plus rational coefficients as
/// [numerator, denominator] pairs over the power basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycloJson {
    pub conductor: u32,
    pub coeffs: Vec<[IntValue; 2]>,
}

impl CycloJson {
    pub fn from_element(e: &CycloElement) -> CycloJson {
        CycloJson {
            conductor: e.conductor(),
            coeffs: e
                .coeffs()
                .iter()
                .map(|q| {
                    [
                        IntValue::from_bigint(q.numer()),
                        IntValue::from_bigint(q.denom()),
                    ]
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<CycloElement, String> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|[n, d]| {
                let den = d.to_bigint()?;
                if den == BigInt::from(0) {
                    return Err("zero denominator".to_string());
                }
                Ok(BigRational::new(n.to_bigint()?, den))
            })
            .collect::<Result<Vec<_>, String>>()?;
        CycloElement::new(self.conductor, coeffs).map_err(|e| e.to_string())
    }
}

/// Input configuration for the independence certificate subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndependenceConfigJson {
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactPointsJson>,
    pub window: WindowJson,
    #[serde(rename = "M")]
    pub dim: usize,
}

/// Exact forms for all points: one conductor, one coefficient vector per
/// point over the power basis of that conductor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactPointsJson {
    pub conductor: u32,
    pub coeffs: Vec<Vec<[IntValue; 2]>>,
}

/// Window choice: the named Gaussian default or explicit coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindowJson {
    Named(String),
    Coefficients(Vec<[f64; 2]>),
}

/// Certificate output, mirroring the library type entry for entry. A
/// non-finite condition number serializes as null.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub gram: Vec<Vec<[f64; 2]>>,
    pub min_eigenvalue: f64,
    pub condition_number: Option<f64>,
    pub tail_slack: f64,
    pub verdict: Option<String>,
    pub classification: Option<String>,
}

pub fn case_class_name(class: CaseClass) -> &'static str {
    match class {
        CaseClass::SmallN => "SMALL_N",
        CaseClass::ParallelPairs => "PARALLEL_PAIRS",
        CaseClass::RegularLattice => "REGULAR_LATTICE",
        CaseClass::Unknown => "UNKNOWN",
    }
}

pub fn certificate_json(cert: &Certificate, classification: Option<CaseClass>) -> CertificateJson {
    let n = cert.gram.nrows();
    let gram = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let e = cert.gram[(j, k)];
                    [e.re, e.im]
                })
                .collect()
        })
        .collect();
    CertificateJson {
        gram,
        min_eigenvalue: cert.min_eigenvalue,
        condition_number: cert.condition_number.is_finite().then_some(cert.condition_number),
        tail_slack: cert.tail_slack,
        verdict: cert.verdict.map(|v| v.as_str().to_string()),
        classification: classification.map(|c| case_class_name(c).to_string()),
    }
}

/// Lattice membership output with the verified witness, when one exists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipJson {
    pub embeddable: bool,
    pub rank_certificate: usize,
    pub collinear_obstruction: bool,
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub e1: CycloJson,
    pub e2: CycloJson,
    pub offset: CycloJson,
    pub coordinates: Vec<[IntValue; 2]>,
}

fn witness_json(witness: &LatticeWitness) -> WitnessJson {
    WitnessJson {
        e1: CycloJson::from_element(&witness.basis.e1),
        e2: CycloJson::from_element(&witness.basis.e2),
        offset: CycloJson::from_element(&witness.basis.offset),
        coordinates: witness
            .coordinates
            .iter()
            .map(|(x, y)| [IntValue::from_bigint(x), IntValue::from_bigint(y)])
            .collect(),
    }
}

pub fn membership_json(result: &MembershipResult) -> MembershipJson {
    MembershipJson {
        embeddable: result.embeddable,
        rank_certificate: result.rank_certificate,
        collinear_obstruction: result.collinear_obstruction,
        witness: result.witness.as_ref().map(witness_json),
    }
}

/// Exact lattice input: one conductor, one coefficient vector per point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticePointsJson {
    pub conductor: u32,
    pub points: Vec<Vec<[IntValue; 2]>>,
}

/// One cell of the spectral sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeepZeroRowJson {
    pub d: u32,
    pub beta: [f64; 2],
    #[serde(rename = "M")]
    pub dim: usize,
    pub guard: usize,
    pub sigma_min: f64,
    pub reduction_residual: f64,
    pub exploratory: bool,
}

/// Experiment input for the spectral sweep subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentJson {
    pub d: u32,
    pub beta: [f64; 2],
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<usize>,
}

/// Totient subcommand output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiJson {
    pub bound: u64,
    pub phi_two: Vec<u64>,
    pub table: Vec<[u64; 2]>,
}

/// Sampled-signal input: a strictly increasing grid and one complex value
/// per node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignalJson {
    pub grid: Vec<f64>,
    pub values: Vec<[f64; 2]>,
}

pub fn complex_pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

pub fn csv_deep_zero(rows: &[DeepZeroRowJson]) -> String {
    let mut out = String::from("d,beta_re,beta_im,M,guard,sigma_min,reduction_residual,exploratory\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.d, r.beta[0], r.beta[1], r.dim, r.guard, r.sigma_min, r.reduction_residual,
            r.exploratory
        ));
    }
    out
}

pub fn csv_phi(table: &[[u64; 2]]) -> String {
    let mut out = String::from("n,phi\n");
    for row in table {
        out.push_str(&format!("{},{}\n", row[0], row[1]));
    }
    out
}

pub fn csv_coefficients(coeffs: &[Complex64]) -> String {
    let mut out = String::from("j,re,im\n");
    for (j, c) in coeffs.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", j, c.re, c.im));
    }
    out
}

/// Static figure: the d-th roots of unity on the unit circle, overlaid
/// with the witness lattice lines when the membership decision found one.
pub fn svg_roots_figure(d: u32, result: &MembershipResult) -> String {
    let mut body = String::new();
    let size = 480.0;
    let view = 1.6;
    // Map the analytic plane to viewport pixels; SVG's y axis points down.
    let map = |p: Complex64| -> (f64, f64) {
        (
            (p.re + view) / (2.0 * view) * size,
            (view - p.im) / (2.0 * view) * size,
        )
    };
    body.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    ));
    body.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    if let Some(witness) = &result.witness {
        let e1 = witness.basis.e1.to_complex();
        let e2 = witness.basis.e2.to_complex();
        let offset = witness.basis.offset.to_complex();
        // Enough anchors and extent to cross the whole viewport, derived
        // from the generator lengths (capped for very fine lattices).
        let span = 2.0 * view + offset.norm();
        let steps = |g: Complex64| ((span / g.norm()).ceil() as i64).clamp(1, 64);
        for (dir, step) in [(e1, e2), (e2, e1)] {
            let reach = steps(step);
            let extent = steps(dir) as f64;
            for k in -reach..=reach {
                let anchor = offset + step * k as f64;
                let a = map(anchor - dir * extent);
                let b = map(anchor + dir * extent);
                body.push_str(&format!(
                    "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#7aa6d9\" stroke-width=\"0.6\" stroke-dasharray=\"4 3\"/>\n",
                    a.0, a.1, b.0, b.1
                ));
            }
        }
    }
    let (cx, cy) = map(Complex64::new(0.0, 0.0));
    let r = size / (2.0 * view);
    body.push_str(&format!(
        "  <circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"{r:.4}\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n"
    ));
    for k in 0..d {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64;
        let (px, py) = map(Complex64::from_polar(1.0, angle));
        body.push_str(&format!(
            "  <circle cx=\"{px:.4}\" cy=\"{py:.4}\" r=\"5\" fill=\"#c0392b\"/>\n"
        ));
    }
    let caption = if result.embeddable {
        format!("order {d}: lattice found (rank {})", result.rank_certificate)
    } else {
        format!("order {d}: no lattice (rank {})", result.rank_certificate)
    };
    body.push_str(&format!(
        "  <text x=\"12\" y=\"{:.4}\" font-family=\"monospace\" font-size=\"14\" fill=\"#222222\">{caption}</text>\n",
        size - 14.0
    ));
    body.push_str("</svg>\n");
    body
}
