//! End-to-end scenarios across modules: signal analysis feeding the
//! displacement engine, numeric certificates cross-checked against exact
//! decisions, and the spectral sweep on top of both.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fockzero::bargmann::{
    bargmann_coefficients, frame_to_fock_point, gaussian_atom_signal, tf_lattice_decision,
    tf_phase, tf_to_fock_point, TimeFrequencyAtom,
};
use fockzero::deepzero::{
    assemble_constraints, min_singular_value, reduction_identity_residual, DeepZeroProblem,
};
use fockzero::exact::{euler_phi, roots_in_lattice};
use fockzero::independence::{
    certify_independence, classify_known_case, gaussian_window, roots_config, CaseClass,
    PointConfig, Verdict,
};
use fockzero::{apply_weyl, project, FockVector};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn atom_analysis_matches_displaced_window() {
    // Sample a shifted-modulated Gaussian, recover the coefficients of
    // its analytic image, and compare with the displacement picture.
    let atom = TimeFrequencyAtom::new(0.5, -0.25).unwrap();
    let signal = gaussian_atom_signal(&atom, 400, 12.0).unwrap();
    let recovered = bargmann_coefficients(&signal, 96, 1.0).unwrap();

    let lambda = tf_to_fock_point(&atom);
    let predicted = apply_weyl(lambda, &gaussian_window(96).unwrap())
        .unwrap()
        .scale(tf_phase(&atom));

    let diff: f64 = recovered
        .coeffs()
        .iter()
        .zip(predicted.coeffs())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    assert!(diff < 1e-6, "coefficient mismatch {diff}");
}

#[test]
fn rational_atom_family_is_certified_and_embeds() {
    let pairs = [
        (rat(0, 1), rat(0, 1)),
        (rat(1, 2), rat(0, 1)),
        (rat(0, 1), rat(1, 3)),
        (rat(1, 2), rat(1, 3)),
        (rat(1, 1), rat(2, 3)),
    ];

    // Numeric side: the atoms map to distinct displacement points whose
    // family is certified independent.
    let mut points = Vec::new();
    for (a, b) in &pairs {
        let atom = TimeFrequencyAtom::new(a.to_f64().unwrap(), b.to_f64().unwrap()).unwrap();
        points.push(tf_to_fock_point(&atom));
    }
    let config = PointConfig::new(points.clone()).unwrap();
    let cert = certify_independence(&config, &gaussian_window(64).unwrap(), 64).unwrap();
    assert_eq!(cert.verdict, Some(Verdict::Independent));

    // Exact side: the same shift pairs embed in an affine lattice, and
    // the witness transports to the displacement plane.
    let decision = tf_lattice_decision(&pairs).unwrap();
    assert!(decision.embeddable);
    let witness = decision.witness.unwrap();
    let e1 = frame_to_fock_point(witness.basis.e1.to_complex());
    let e2 = frame_to_fock_point(witness.basis.e2.to_complex());
    let base = frame_to_fock_point(witness.basis.offset.to_complex());
    for (point, (x, y)) in points.iter().zip(&witness.coordinates) {
        let rebuilt = base + e1 * x.to_f64().unwrap() + e2 * y.to_f64().unwrap();
        assert!((point - rebuilt).norm() < 1e-12);
    }
}

#[test]
fn spectral_sweep_on_settled_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for d in [3u32, 6] {
        // Identity check at no displacement.
        let idle = DeepZeroProblem::new(d, c(0.0, 0.0), 64, 40).unwrap();
        let sigma = min_singular_value(&assemble_constraints(&idle).unwrap(), 40).unwrap();
        assert_eq!(sigma, 1.0);

        // Unit displacement: strictly positive interior singular value.
        let problem = DeepZeroProblem::new(d, c(1.0, 0.0), 64, 40).unwrap();
        let sigma = min_singular_value(&assemble_constraints(&problem).unwrap(), 40).unwrap();
        assert!(sigma > 0.0, "order {d}: {sigma}");

        // Averaging identity on a projected random input.
        let mut coeffs = vec![c(0.0, 0.0); 96];
        for slot in coeffs.iter_mut().take(24) {
            *slot = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let f = FockVector::new(coeffs).unwrap();
        let h = project(0, d, &f);
        let h = h.scale(c(1.0 / h.norm(), 0.0));
        let residual = reduction_identity_residual(d, c(1.0, 0.0), &h).unwrap();
        assert!(residual <= 1e-7, "order {d}: residual {residual}");
    }
}

#[test]
fn exact_backbone_agrees_across_modules() {
    // The lattice decision, the totient and the classifier must tell one
    // consistent story about the roots of unity.
    for d in 1..=30u32 {
        let membership = roots_in_lattice(d).unwrap();
        assert_eq!(
            membership.embeddable,
            euler_phi(d as u64) <= 2,
            "order {d}"
        );
    }
    for d in 5..=20u32 {
        let config = roots_config(d, c(1.0, 0.0)).unwrap();
        let class = classify_known_case(&config).unwrap();
        let embeddable = roots_in_lattice(d).unwrap().embeddable;
        let want = if embeddable {
            CaseClass::RegularLattice
        } else {
            CaseClass::Unknown
        };
        assert_eq!(class, want, "order {d}");
    }
}
