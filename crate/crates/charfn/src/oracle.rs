//! Independent ground truth: positive-definiteness via Gram-matrix
//! eigenvalues, numeric validation of the closed-form kernel Fourier
//! transforms, and the Laplace-transform reference for measures restricted
//! to a half-line.
//!
//! The Gram test with finitely many points can only certify failure; a pass
//! means no violation was found on the chosen point set.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CharFnError, Result};
use crate::model::{CandidateFunction, HalfLine, SpectralMeasure};
use crate::transforms::quad::{
    integrate_over, integrate_real_line_oscillatory, QuadratureConfig,
};
use crate::transforms::{modified_cauchy_kernel, modified_kernel_fourier};
use crate::warnings::WarningCode;

/// Evaluation points and tolerance for the Gram test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramSpec {
    pub points: Vec<f64>,
    pub psd_tol: f64,
}

impl Default for GramSpec {
    fn default() -> Self {
        Self::with_points(default_points(8, None))
    }
}

fn default_points(extra: usize, seed: Option<u64>) -> Vec<f64> {
    // 32 uniform points on [-10, 10]: the induced differences sweep enough
    // of a period to expose trigonometric-sum violations.
    let mut pts: Vec<f64> = (0..32).map(|i| -10.0 + 20.0 * i as f64 / 31.0).collect();
    match seed {
        None => {
            // golden-ratio low-discrepancy fill; deterministic
            let golden = (5.0f64.sqrt() - 1.0) / 2.0;
            pts.extend((0..extra).map(|k| ((0.5 + k as f64 * golden) % 1.0) * 20.0 - 10.0));
        }
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            pts.extend((0..extra).map(|_| rng.gen_range(-10.0..10.0)));
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

impl GramSpec {
    pub fn with_points(points: Vec<f64>) -> Self {
        let n = points.len();
        Self {
            points,
            psd_tol: 1e-8 * n as f64,
        }
    }

    /// Default deterministic set with `extra` low-discrepancy points, or
    /// seeded-random extras when a seed is given.
    pub fn standard(extra: usize, seed: Option<u64>) -> Self {
        Self::with_points(default_points(extra, seed))
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(CharFnError::InvalidParameter(
                "the Gram test needs at least two points".into(),
            ));
        }
        let mut sorted = self.points.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CharFnError::InvalidParameter(
                "Gram points must be distinct".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BochnerOutcome {
    pub min_eigenvalue: f64,
    pub pass: bool,
    pub n_points: usize,
    pub psd_tol: f64,
    /// Largest |G[i][j] - conj(G[j][i])| seen before symmetrization.
    pub hermitian_deviation: f64,
    pub symmetrized: bool,
}

impl BochnerOutcome {
    pub fn warnings(&self) -> Vec<WarningCode> {
        if self.symmetrized {
            vec![WarningCode::NonHermitianSymmetrized]
        } else {
            Vec::new()
        }
    }
}

/// Smallest eigenvalue of the Hermitian part of G[i][j] = f(x_i - x_j).
///
/// The Hermitian eigenproblem is solved through the real-symmetric
/// embedding [[A, -B], [B, A]] of G = A + iB, whose spectrum is that of G
/// with doubled multiplicity.
pub fn bochner_test(f: &CandidateFunction, spec: &GramSpec) -> Result<BochnerOutcome> {
    spec.validate()?;
    let n = spec.points.len();
    let mut gram = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = f.evaluate(spec.points[i] - spec.points[j]);
        }
    }

    let mut hermitian_deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let dev = (gram[i * n + j] - gram[j * n + i].conj()).norm();
            hermitian_deviation = hermitian_deviation.max(dev);
        }
    }
    let symmetrized = hermitian_deviation > 1e-9;

    // Hermitian part (G + G*)/2, then the real embedding.
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let h = (gram[i * n + j] + gram[j * n + i].conj()) * 0.5;
            m[(i, j)] = h.re;
            m[(n + i, n + j)] = h.re;
            m[(i, n + j)] = -h.im;
            m[(n + i, j)] = h.im;
        }
    }
    let eigen = m.symmetric_eigen();
    let min_eigenvalue = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);

    Ok(BochnerOutcome {
        min_eigenvalue,
        pass: min_eigenvalue >= -spec.psd_tol,
        n_points: n,
        psd_tol: spec.psd_tol,
        hermitian_deviation,
        symmetrized,
    })
}

/// One pair of the kernel-Fourier validation battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelFtCheck {
    pub y: f64,
    pub x: f64,
    pub closed_form: f64,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub deviation: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelFtValidation {
    pub max_abs_deviation: f64,
    pub checks: Vec<KernelFtCheck>,
}

/// Numerically computes int gamma(iy; t) e^{ixt} dt by oscillation-aware
/// quadrature and compares with the closed form, pair by pair.
pub fn validate_kernel_ft(pairs: &[(f64, f64)], cfg: &QuadratureConfig) -> Result<KernelFtValidation> {
    let mut checks = Vec::with_capacity(pairs.len());
    let mut max_abs_deviation = 0.0f64;
    for &(y, x) in pairs {
        if y == 0.0 {
            return Err(CharFnError::OnRealAxis);
        }
        let prefactor = Complex64::new(0.0, 1.0 / std::f64::consts::PI);
        let integrand = move |t: f64| {
            prefactor * modified_cauchy_kernel(y, t) * Complex64::new(0.0, x * t).exp()
        };
        let out = if x == 0.0 {
            // no oscillation: the tan map integrates the full line exactly
            crate::transforms::quad::integrate_real_line(integrand, cfg)
        } else {
            let ya = y.abs();
            integrate_real_line_oscillatory(
                integrand,
                x.abs(),
                move |t: f64| {
                    let t = t.max(2.0 * ya + 2.0);
                    (2.0 / (t * t) + 4.0 * ya / t) / std::f64::consts::PI
                },
                cfg,
            )
        };
        let closed_form = modified_kernel_fourier(y, x);
        let deviation = (out.value - Complex64::new(closed_form, 0.0)).norm();
        max_abs_deviation = max_abs_deviation.max(deviation);
        checks.push(KernelFtCheck {
            y,
            x,
            closed_form,
            numeric_re: out.value.re,
            numeric_im: out.value.im,
            deviation,
            error_estimate: out.error_estimate(),
        });
    }
    Ok(KernelFtValidation {
        max_abs_deviation,
        checks,
    })
}

/// The default 20-pair battery: both x = 0 special cases plus moderate
/// frequencies on both sides of the axis.
pub fn default_kernel_ft_battery() -> Vec<(f64, f64)> {
    vec![
        (1.0, 0.0),
        (-1.0, 0.0),
        (2.0, 0.0),
        (-0.5, 0.0),
        (1.0, 1.0),
        (1.0, -1.0),
        (2.0, 1.0),
        (2.0, -2.0),
        (0.5, 0.5),
        (0.5, -3.0),
        (1.0, 2.5),
        (1.0, 5.0),
        (3.0, 1.5),
        (-1.0, 1.0),
        (-1.0, -1.0),
        (-2.0, 0.5),
        (-2.0, -2.5),
        (-0.5, 4.0),
        (-3.0, -1.0),
        (-1.5, 2.0),
    ]
}

/// int e^{-yx} d sigma_side(x) over the half-line restriction of m, the
/// reference for the offset-shifted transform identity.
pub fn laplace_reference(
    m: &SpectralMeasure,
    side: HalfLine,
    y: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let valid = match side {
        HalfLine::NonNeg => y > 0.0,
        HalfLine::NonPos => y < 0.0,
    };
    if !valid {
        return Err(CharFnError::InvalidParameter(
            "the Laplace reference needs y on the side of the restriction".into(),
        ));
    }
    let restricted = m.restrict(side);
    let mut value: f64 = restricted
        .atoms
        .iter()
        .map(|a| a.w * (-y * a.x).exp())
        .sum();
    if let Some(d) = &restricted.density {
        let (lo, hi) = d.bounds();
        let out = integrate_over(
            |x| Complex64::new((-y * x).exp() * d.pdf(x), 0.0),
            lo,
            hi,
            cfg,
        );
        value += out.value.re;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog::catalog_entry;
    use crate::model::{DensityShape, TwoAtomFamily};
    use approx::assert_abs_diff_eq;
    use std::collections::BTreeMap;

    #[test]
    fn constant_one_is_positive_semidefinite_on_any_point_set() {
        let f = catalog_entry("delta", &BTreeMap::new()).unwrap();
        for spec in [
            GramSpec::default(),
            GramSpec::with_points(vec![0.0, 0.3, 1.0, 4.5]),
        ] {
            let out = bochner_test(&f, &spec).unwrap();
            assert!(out.pass);
            assert!(out.min_eigenvalue.abs() <= spec.psd_tol);
        }
    }

    #[test]
    fn two_atom_alpha_above_one_fails_with_pi_half_spacing() {
        // at points {0, pi/2} the 2x2 Gram has eigenvalues 1 +- |2a - 1|
        let f = TwoAtomFamily::new(1.2).candidate();
        let spec = GramSpec::with_points(vec![0.0, std::f64::consts::FRAC_PI_2]);
        let out = bochner_test(&f, &spec).unwrap();
        assert!(!out.pass);
        assert_abs_diff_eq!(out.min_eigenvalue, -0.4, epsilon = 1e-12);
    }

    #[test]
    fn quartic_fails_on_the_default_point_set() {
        let f = catalog_entry("quartic", &BTreeMap::new()).unwrap();
        let out = bochner_test(&f, &GramSpec::default()).unwrap();
        assert!(!out.pass);
        // independently computed spectrum: about -0.596
        assert!(out.min_eigenvalue < -0.5, "min eig {}", out.min_eigenvalue);
    }

    #[test]
    fn gaussian_passes_on_the_default_point_set() {
        let f = catalog_entry("gaussian", &BTreeMap::new()).unwrap();
        let out = bochner_test(&f, &GramSpec::default()).unwrap();
        assert!(out.pass);
        assert!(!out.symmetrized);
    }

    #[test]
    fn refinement_never_raises_the_minimum_eigenvalue() {
        let f = catalog_entry("quartic", &BTreeMap::new()).unwrap();
        let coarse = GramSpec::with_points((0..8).map(|i| -7.0 + 2.0 * i as f64).collect());
        let fine = GramSpec::with_points(
            (0..8)
                .map(|i| -7.0 + 2.0 * i as f64)
                .chain((0..7).map(|i| -6.0 + 2.0 * i as f64))
                .collect(),
        );
        let a = bochner_test(&f, &coarse).unwrap();
        let b = bochner_test(&f, &fine).unwrap();
        assert!(b.min_eigenvalue <= a.min_eigenvalue + 1e-12);
    }

    #[test]
    fn non_hermitian_input_is_flagged() {
        let f = CandidateFunction::from_closure(
            |t| Complex64::new(0.0, t).exp() + Complex64::new(0.0, 0.3),
            crate::model::Source::Catalog {
                name: "skewed".into(),
                params: BTreeMap::new(),
            },
            crate::model::DecayClass::NotCauchyIntegrable,
            1.3,
        );
        let out = bochner_test(&f, &GramSpec::default()).unwrap();
        assert!(out.symmetrized);
        assert!(out.hermitian_deviation > 0.1);
    }

    #[test]
    fn kernel_ft_battery_special_values() {
        let cfg = QuadratureConfig::default();
        let v = validate_kernel_ft(&[(1.0, 0.0), (-1.0, 0.0)], &cfg).unwrap();
        assert_abs_diff_eq!(v.checks[0].closed_form, 1.0);
        assert_abs_diff_eq!(v.checks[1].closed_form, -1.0);
        assert!(v.max_abs_deviation < 1e-6, "dev {}", v.max_abs_deviation);
    }

    #[test]
    fn laplace_reference_examples() {
        let cfg = QuadratureConfig::default();
        // delta at 0: e^0 * 1 = 1 for any y > 0
        let delta = SpectralMeasure::point_mass(0.0);
        assert_abs_diff_eq!(
            laplace_reference(&delta, HalfLine::NonNeg, 3.0, &cfg).unwrap(),
            1.0
        );
        // two-atom alpha = 0.3: restricted atom (1, 0.6), value 0.6 e^{-1}
        let m = SpectralMeasure::from_atoms(&[(-1.0, 0.7), (1.0, 0.3)]).unwrap();
        assert_abs_diff_eq!(
            laplace_reference(&m, HalfLine::NonNeg, 1.0, &cfg).unwrap(),
            0.6 * (-1.0f64).exp(),
            epsilon = 1e-15
        );
        // standard gaussian: e^{1/2} erfc(1/sqrt 2), the frozen oracle value
        let g = SpectralMeasure::from_density(DensityShape::Gaussian { mean: 0.0, stddev: 1.0 }, 1.0)
            .unwrap();
        assert_abs_diff_eq!(
            laplace_reference(&g, HalfLine::NonNeg, 1.0, &cfg).unwrap(),
            0.52315658373024674,
            epsilon = 1e-10
        );
        // wrong side is rejected
        assert!(laplace_reference(&m, HalfLine::NonNeg, -1.0, &cfg).is_err());
    }

    #[test]
    fn seeded_point_sets_are_reproducible() {
        let a = GramSpec::standard(8, Some(42));
        let b = GramSpec::standard(8, Some(42));
        let c = GramSpec::standard(8, Some(43));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
