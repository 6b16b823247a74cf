//! Candidate functions: evaluable f: R -> C with provenance metadata, decay
//! classification and (when available) an exact spectral decomposition that
//! the transform layer uses as a fast path.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::measure::{DensityShape, SpectralMeasure, Support, MASS_TOL_SAMPLED};
use crate::error::{CharFnError, Result};

/// Whether int |f(t)| / (1 + |t|) dt converges. Decides between the plain
/// and the modified Cauchy-transform test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    CauchyIntegrable,
    NotCauchyIntegrable,
    Unknown,
}

/// Extension rule outside the sampled range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailModel {
    #[default]
    Zero,
    HoldLast,
}

/// Piecewise-linear interpolant over strictly increasing sample points.
#[derive(Debug, Clone)]
pub struct SampledData {
    pub ts: Vec<f64>,
    pub values: Vec<Complex64>,
    pub tail: TailModel,
}

impl SampledData {
    pub fn new(ts: Vec<f64>, values: Vec<Complex64>, tail: TailModel) -> Result<Self> {
        if ts.len() != values.len() {
            return Err(CharFnError::SampleFormat(
                "t and value columns differ in length".into(),
            ));
        }
        if ts.len() < 2 {
            return Err(CharFnError::SampleFormat("need at least two samples".into()));
        }
        if !ts.windows(2).all(|w| w[0] < w[1]) {
            return Err(CharFnError::SampleFormat(
                "t column must be strictly increasing".into(),
            ));
        }
        if ts.iter().any(|t| !t.is_finite())
            || values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(CharFnError::SampleFormat("non-finite entry".into()));
        }
        Ok(Self { ts, values, tail })
    }

    /// CSV with columns t, re_f, im_f. A non-numeric first row is treated as
    /// a header.
    pub fn from_csv<R: Read>(reader: R, tail: TailModel) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(false)
            .from_reader(reader);
        let mut ts = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| CharFnError::SampleFormat(e.to_string()))?;
            if rec.len() != 3 {
                return Err(CharFnError::SampleFormat(format!(
                    "row {}: expected 3 columns (t, re_f, im_f), got {}",
                    i + 1,
                    rec.len()
                )));
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                rec.iter().map(|s| s.parse::<f64>()).collect();
            match parsed {
                Ok(nums) => {
                    ts.push(nums[0]);
                    values.push(Complex64::new(nums[1], nums[2]));
                }
                Err(e) => {
                    if i == 0 {
                        continue; // header row
                    }
                    return Err(CharFnError::SampleFormat(format!("row {}: {e}", i + 1)));
                }
            }
        }
        Self::new(ts, values, tail)
    }

    pub fn from_csv_file(path: &Path, tail: TailModel) -> Result<Self> {
        Self::from_csv(std::fs::File::open(path)?, tail)
    }

    pub fn interpolate(&self, t: f64) -> Complex64 {
        let n = self.ts.len();
        if t < self.ts[0] {
            return match self.tail {
                TailModel::Zero => Complex64::new(0.0, 0.0),
                TailModel::HoldLast => self.values[0],
            };
        }
        if t > self.ts[n - 1] {
            return match self.tail {
                TailModel::Zero => Complex64::new(0.0, 0.0),
                TailModel::HoldLast => self.values[n - 1],
            };
        }
        let idx = match self.ts.binary_search_by(|probe| probe.total_cmp(&t)) {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let (t0, t1) = (self.ts[idx - 1], self.ts[idx]);
        let lambda = (t - t0) / (t1 - t0);
        self.values[idx - 1] * (1.0 - lambda) + self.values[idx] * lambda
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// The tail is resolved when the outer 5% of samples on each side stay
    /// below 1e-3 of the overall peak.
    pub fn tail_resolved(&self) -> bool {
        let n = self.ts.len();
        let edge = (n / 20).max(1);
        let peak = self.max_abs();
        if peak == 0.0 {
            return true;
        }
        let small = |v: &Complex64| v.norm() <= 1e-3 * peak;
        self.values[..edge].iter().all(small) && self.values[n - edge..].iter().all(small)
    }
}

/// Where a candidate came from.
#[derive(Debug, Clone)]
pub enum Source {
    FromMeasure(SpectralMeasure),
    Catalog {
        name: String,
        params: BTreeMap<String, f64>,
    },
    Sampled(SampledData),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::FromMeasure(_) => write!(f, "measure"),
            Source::Catalog { name, params } => {
                write!(f, "catalog:{name}")?;
                for (k, v) in params {
                    write!(f, " {k}={v}")?;
                }
                Ok(())
            }
            Source::Sampled(s) => write!(f, "samples({} points)", s.ts.len()),
        }
    }
}

/// Exact spectral structure: finite exponential sums (complex coefficients
/// allowed) plus weighted density components. Transforms of such functions
/// reduce to closed-form kernel Fourier transforms plus one-dimensional
/// density integrals.
#[derive(Debug, Clone, Default)]
pub struct SpectralParts {
    /// (location, coefficient) of e^{i * location * t} terms.
    pub atoms: Vec<(f64, Complex64)>,
    /// (weight, shape, support) density components.
    pub densities: Vec<(f64, DensityShape, Support)>,
}

impl SpectralParts {
    pub fn from_measure(m: &SpectralMeasure) -> Self {
        SpectralParts {
            atoms: m
                .atoms
                .iter()
                .map(|a| (a.x, Complex64::new(a.w, 0.0)))
                .collect(),
            densities: m
                .density
                .iter()
                .map(|d| (d.multiplier, d.shape, d.support))
                .collect(),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        SpectralParts {
            atoms: self.atoms.iter().map(|&(x, c)| (x, c * lambda)).collect(),
            densities: self
                .densities
                .iter()
                .map(|&(w, s, sup)| (lambda * w, s, sup))
                .collect(),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.atoms.extend_from_slice(&other.atoms);
        self.densities.extend_from_slice(&other.densities);
    }

    pub fn has_atoms(&self) -> bool {
        self.atoms.iter().any(|(_, c)| c.norm() > 0.0)
    }
}

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// An evaluable candidate f: R -> C together with everything the pipeline
/// needs to route it: decay class, a modulus bound, the source description
/// and an optional exact spectral decomposition.
#[derive(Clone)]
pub struct CandidateFunction {
    evaluator: Evaluator,
    source: Source,
    decay: DecayClass,
    bound: f64,
    spectral: Option<Arc<SpectralParts>>,
    oscillation: Arc<OnceLock<crate::transforms::quad::OscillationProbe>>,
}

impl fmt::Debug for CandidateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateFunction")
            .field("source", &self.source.to_string())
            .field("decay", &self.decay)
            .field("bound", &self.bound)
            .field("spectral", &self.spectral.is_some())
            .finish()
    }
}

impl CandidateFunction {
    /// Characteristic function of a finite nonnegative measure, assembled
    /// from the closed forms of the named densities plus the atom sum.
    pub fn from_measure(m: SpectralMeasure) -> Result<Self> {
        m.validate()?;
        if !m.total_mass().is_finite() {
            return Err(CharFnError::InvalidMeasure("infinite total mass".into()));
        }
        let parts = SpectralParts::from_measure(&m);
        let eval_parts = parts.clone();
        let evaluator: Evaluator = Arc::new(move |t| eval_spectral(&eval_parts, t));
        let decay = decay_of_parts(&parts);
        let bound = m.total_mass();
        Ok(Self {
            evaluator,
            source: Source::FromMeasure(m),
            decay,
            bound,
            spectral: Some(Arc::new(parts)),
            oscillation: Arc::new(OnceLock::new()),
        })
    }

    /// Finite exponential sum sum_j c_j e^{i x_j t} with arbitrary complex
    /// coefficients (a signed/complex "measure" of atoms).
    pub fn from_exponential_sum(
        atoms: Vec<(f64, Complex64)>,
        source: Source,
    ) -> Self {
        let parts = SpectralParts {
            atoms,
            densities: Vec::new(),
        };
        let bound: f64 = parts.atoms.iter().map(|(_, c)| c.norm()).sum();
        let decay = decay_of_parts(&parts);
        let eval_parts = parts.clone();
        Self {
            evaluator: Arc::new(move |t| eval_spectral(&eval_parts, t)),
            source,
            decay,
            bound,
            spectral: Some(Arc::new(parts)),
            oscillation: Arc::new(OnceLock::new()),
        }
    }

    /// Black-box evaluator with caller-supplied analytic knowledge.
    pub fn from_closure<F>(f: F, source: Source, decay: DecayClass, bound: f64) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            evaluator: Arc::new(f),
            source,
            decay,
            bound,
            spectral: None,
            oscillation: Arc::new(OnceLock::new()),
        }
    }

    pub fn from_samples(data: SampledData) -> Self {
        let bound = data.max_abs();
        let decay = if data.tail == TailModel::Zero && data.tail_resolved() {
            DecayClass::CauchyIntegrable
        } else {
            DecayClass::Unknown
        };
        let interp = data.clone();
        Self {
            evaluator: Arc::new(move |t| interp.interpolate(t)),
            source: Source::Sampled(data),
            decay,
            bound,
            spectral: None,
            oscillation: Arc::new(OnceLock::new()),
        }
    }

    /// Convex (or affine) combination sum lambda_i f_i. The spectral parts
    /// merge whenever every component has them, so mixtures keep the fast
    /// transform path.
    pub fn mix(components: &[(f64, &CandidateFunction)]) -> Self {
        let spectral = if components.iter().all(|(_, f)| f.spectral.is_some()) {
            let mut parts = SpectralParts::default();
            for (lambda, f) in components {
                parts.merge(&f.spectral.as_ref().unwrap().scaled(*lambda));
            }
            Some(Arc::new(parts))
        } else {
            None
        };
        let decay = components
            .iter()
            .map(|(_, f)| f.decay)
            .fold(DecayClass::CauchyIntegrable, |acc, d| match (acc, d) {
                (DecayClass::NotCauchyIntegrable, _) | (_, DecayClass::NotCauchyIntegrable) => {
                    DecayClass::NotCauchyIntegrable
                }
                (DecayClass::Unknown, _) | (_, DecayClass::Unknown) => DecayClass::Unknown,
                _ => DecayClass::CauchyIntegrable,
            });
        let bound = components
            .iter()
            .map(|(l, f)| l.abs() * f.bound)
            .sum();
        let evals: Vec<(f64, Evaluator)> = components
            .iter()
            .map(|(l, f)| (*l, f.evaluator.clone()))
            .collect();
        let params: BTreeMap<String, f64> = components
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (format!("lambda{i}"), *l))
            .collect();
        Self {
            evaluator: Arc::new(move |t| {
                evals
                    .iter()
                    .map(|(l, e)| e(t) * *l)
                    .sum::<Complex64>()
            }),
            source: Source::Catalog {
                name: "mixture".into(),
                params,
            },
            decay,
            bound,
            spectral,
            oscillation: Arc::new(OnceLock::new()),
        }
    }

    pub fn evaluate(&self, t: f64) -> Complex64 {
        (self.evaluator)(t)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn decay_class(&self) -> DecayClass {
        self.decay
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn spectral_parts(&self) -> Option<&SpectralParts> {
        self.spectral.as_deref()
    }

    /// Cached oscillation probe of the evaluator.
    pub fn oscillation(&self) -> crate::transforms::quad::OscillationProbe {
        *self.oscillation.get_or_init(|| {
            crate::transforms::quad::probe_oscillation(|t| self.evaluate(t), 64.0, 513)
        })
    }

    /// Screen tolerance appropriate to the provenance: sampled data gets the
    /// looser mass tolerance.
    pub fn screen_tol(&self) -> f64 {
        match self.source {
            Source::Sampled(_) => MASS_TOL_SAMPLED,
            _ => 1e-9,
        }
    }
}

fn eval_spectral(parts: &SpectralParts, t: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, c) in &parts.atoms {
        acc += c * Complex64::new(0.0, x * t).exp();
    }
    for &(w, shape, support) in &parts.densities {
        debug_assert_eq!(support, Support::Full, "restricted densities are not candidates");
        acc += shape.char_fn(t) * w;
    }
    acc
}

fn decay_of_parts(parts: &SpectralParts) -> DecayClass {
    if parts.has_atoms() {
        DecayClass::NotCauchyIntegrable
    } else {
        // every named density has a char fn decaying at least like 1/|t|,
        // which makes |f|/(1+|t|) integrable
        DecayClass::CauchyIntegrable
    }
}

/// Re-derives the decay class from the source, the routing rule the
/// constructors apply.
pub fn classify_decay(f: &CandidateFunction) -> DecayClass {
    f.decay_class()
}

/// Result of the necessary-condition prefilter.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScreenReport {
    pub pass: bool,
    pub tol: f64,
    /// |f(0) - 1|
    pub f0_deviation: f64,
    /// x achieving the largest |f(-x) - conj f(x)| and the deviation itself.
    pub worst_hermitian: (f64, f64),
    /// x achieving the largest |f(x)| and that modulus.
    pub worst_modulus: (f64, f64),
}

/// Checks f(0) = 1, Hermitian symmetry f(-x) = conj f(x), and |f| <= 1 + tol
/// on a symmetric grid.
pub fn hermitian_screen(f: &CandidateFunction, grid: &[f64], tol: f64) -> ScreenReport {
    let f0_deviation = (f.evaluate(0.0) - Complex64::new(1.0, 0.0)).norm();
    let mut worst_hermitian = (0.0, 0.0);
    let mut worst_modulus = (0.0, f.evaluate(0.0).norm());
    for &x in grid {
        let dev = (f.evaluate(-x) - f.evaluate(x).conj()).norm();
        if dev > worst_hermitian.1 {
            worst_hermitian = (x, dev);
        }
        let modulus = f.evaluate(x).norm();
        if modulus > worst_modulus.1 {
            worst_modulus = (x, modulus);
        }
    }
    let pass =
        f0_deviation <= tol && worst_hermitian.1 <= tol && worst_modulus.1 <= 1.0 + tol;
    ScreenReport {
        pass,
        tol,
        f0_deviation,
        worst_hermitian,
        worst_modulus,
    }
}

/// Symmetric screen grid on [-halfwidth, halfwidth].
pub fn screen_grid(halfwidth: f64, points: usize) -> Vec<f64> {
    let n = points.max(3) | 1; // odd, so 0 is included
    (0..n)
        .map(|i| -halfwidth + 2.0 * halfwidth * i as f64 / (n - 1) as f64)
        .collect()
}

/// The one-parameter family (1 - alpha) e^{-ix} + alpha e^{ix}. It is a
/// characteristic function exactly for alpha in [0, 1], yet its Poisson
/// extension at the origin is e^{-y} for every alpha, which is what makes
/// it the canonical stress test for the real-even-only criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoAtomFamily {
    pub alpha: f64,
}

impl TwoAtomFamily {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    pub fn candidate(&self) -> CandidateFunction {
        let mut params = BTreeMap::new();
        params.insert("alpha".to_string(), self.alpha);
        CandidateFunction::from_exponential_sum(
            vec![
                (-1.0, Complex64::new(1.0 - self.alpha, 0.0)),
                (1.0, Complex64::new(self.alpha, 0.0)),
            ],
            Source::Catalog {
                name: "two-atom".into(),
                params,
            },
        )
    }

    /// Exact modified transform on the upper axis: 2a e^{-y} + (1-2a) e^{-1}.
    pub fn modified_transform_upper(&self, y: f64) -> f64 {
        2.0 * self.alpha * (-y).exp() + (1.0 - 2.0 * self.alpha) * (-1.0f64).exp()
    }

    /// Exact modified transform on the lower axis: -2(1-a) e^{y} + (1-2a) e^{-1}.
    pub fn modified_transform_lower(&self, y: f64) -> f64 {
        -2.0 * (1.0 - self.alpha) * y.exp() + (1.0 - 2.0 * self.alpha) * (-1.0f64).exp()
    }

    /// The offset constant for the family: (2a - 1) e^{-1}.
    pub fn offset(&self) -> f64 {
        (2.0 * self.alpha - 1.0) * (-1.0f64).exp()
    }
}

/// Builds the characteristic function of a measure (operation form of
/// `CandidateFunction::from_measure`).
pub fn char_function_from_measure(m: &SpectralMeasure) -> Result<CandidateFunction> {
    CandidateFunction::from_measure(m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::measure::DensityShape;
    use approx::assert_abs_diff_eq;

    #[test]
    fn delta_gives_constant_one() {
        let f = char_function_from_measure(&SpectralMeasure::point_mass(0.0)).unwrap();
        for t in [-5.0, 0.0, 1.7, 100.0] {
            let v = f.evaluate(t);
            assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
        assert_eq!(f.decay_class(), DecayClass::NotCauchyIntegrable);
    }

    #[test]
    fn two_atoms_match_exponential_sum() {
        let m = SpectralMeasure::from_atoms(&[(-1.0, 0.7), (1.0, 0.3)]).unwrap();
        let f = char_function_from_measure(&m).unwrap();
        for t in [-3.0, 0.4, 2.0] {
            let expect = 0.7 * Complex64::new(0.0, -t).exp() + 0.3 * Complex64::new(0.0, t).exp();
            let got = f.evaluate(t);
            assert_abs_diff_eq!(got.re, expect.re, epsilon = 1e-14);
            assert_abs_diff_eq!(got.im, expect.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn gaussian_measure_gives_gaussian_char_fn() {
        let m = SpectralMeasure::from_density(DensityShape::Gaussian { mean: 0.0, stddev: 1.0 }, 1.0)
            .unwrap();
        let f = char_function_from_measure(&m).unwrap();
        // e^{-1/2}, the independently quadrature-checked value
        assert_abs_diff_eq!(f.evaluate(1.0).re, 0.60653065971263342, epsilon = 1e-14);
        assert_abs_diff_eq!(f.evaluate(1.0).im, 0.0, epsilon = 1e-15);
        assert_eq!(f.decay_class(), DecayClass::CauchyIntegrable);
    }

    #[test]
    fn f_at_zero_equals_total_mass() {
        let m = SpectralMeasure::from_density(DensityShape::Laplace { location: 0.0, scale: 2.0 }, 0.4)
            .unwrap()
            .with_atoms(&[(1.0, 0.6)])
            .unwrap();
        let f = char_function_from_measure(&m).unwrap();
        assert_abs_diff_eq!(f.evaluate(0.0).re, m.total_mass(), epsilon = 1e-12);
    }

    #[test]
    fn decay_classification_rules() {
        let two_atom = TwoAtomFamily::new(0.4).candidate();
        assert_eq!(classify_decay(&two_atom), DecayClass::NotCauchyIntegrable);

        let gauss = char_function_from_measure(
            &SpectralMeasure::from_density(DensityShape::Gaussian { mean: 0.0, stddev: 1.0 }, 1.0)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(classify_decay(&gauss), DecayClass::CauchyIntegrable);

        let laplace_char = char_function_from_measure(
            &SpectralMeasure::from_density(DensityShape::Laplace { location: 0.0, scale: 1.0 }, 1.0)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(classify_decay(&laplace_char), DecayClass::CauchyIntegrable);
    }

    #[test]
    fn screen_passes_constant_one() {
        let f = char_function_from_measure(&SpectralMeasure::point_mass(0.0)).unwrap();
        let report = hermitian_screen(&f, &screen_grid(10.0, 101), 1e-9);
        assert!(report.pass);
        assert_eq!(report.worst_hermitian.1, 0.0);
    }

    #[test]
    fn screen_passes_single_phase() {
        // f(x) = e^{ix} is Hermitian with unit modulus
        let f = CandidateFunction::from_exponential_sum(
            vec![(1.0, Complex64::new(1.0, 0.0))],
            Source::Catalog { name: "phase".into(), params: BTreeMap::new() },
        );
        let report = hermitian_screen(&f, &screen_grid(10.0, 101), 1e-9);
        assert!(report.pass);
    }

    #[test]
    fn screen_catches_shifted_phase() {
        // f(x) = e^{ix} + 0.5 has f(0) = 1.5
        let base = CandidateFunction::from_exponential_sum(
            vec![(1.0, Complex64::new(1.0, 0.0)), (0.0, Complex64::new(0.5, 0.0))],
            Source::Catalog { name: "shifted".into(), params: BTreeMap::new() },
        );
        let report = hermitian_screen(&base, &screen_grid(10.0, 101), 1e-9);
        assert!(!report.pass);
        assert_abs_diff_eq!(report.f0_deviation, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn screen_catches_two_atom_outside_unit_interval() {
        let f = TwoAtomFamily::new(1.2).candidate();
        let report = hermitian_screen(&f, &screen_grid(10.0, 201), 1e-9);
        assert!(!report.pass);
        assert!(report.worst_modulus.1 > 1.3);
    }

    #[test]
    fn sampled_tent_interpolates_exactly() {
        let data = SampledData::new(
            vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            TailModel::Zero,
        )
        .unwrap();
        let f = CandidateFunction::from_samples(data);
        assert_eq!(f.decay_class(), DecayClass::CauchyIntegrable);
        for t in [-3.0, -0.25, 0.0, 0.6, 1.0, 10.0] {
            let expect = (1.0 - t.abs()).max(0.0);
            assert_abs_diff_eq!(f.evaluate(t).re, expect, epsilon = 1e-15);
        }
    }

    #[test]
    fn sampled_csv_round_trip() {
        let csv_text = "t,re_f,im_f\n-1.0,0.0,0.0\n0.0,1.0,0.0\n1.0,0.0,0.0\n";
        let data = SampledData::from_csv(csv_text.as_bytes(), TailModel::Zero).unwrap();
        assert_eq!(data.ts, vec![-1.0, 0.0, 1.0]);

        let bad = "t,re_f,im_f\n1.0,0.0,0.0\n0.0,1.0,0.0\n";
        assert!(SampledData::from_csv(bad.as_bytes(), TailModel::Zero).is_err());
    }

    #[test]
    fn unresolved_tail_is_unknown() {
        let data = SampledData::new(
            vec![-1.0, 0.0, 1.0],
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.6, 0.0),
            ],
            TailModel::Zero,
        )
        .unwrap();
        let f = CandidateFunction::from_samples(data);
        assert_eq!(f.decay_class(), DecayClass::Unknown);
    }

    #[test]
    fn mixture_combines_spectral_parts() {
        let a = TwoAtomFamily::new(0.5).candidate();
        let g = char_function_from_measure(
            &SpectralMeasure::from_density(DensityShape::Gaussian { mean: 0.0, stddev: 1.0 }, 1.0)
                .unwrap(),
        )
        .unwrap();
        let mixed = CandidateFunction::mix(&[(0.25, &a), (0.75, &g)]);
        assert!(mixed.spectral_parts().is_some());
        assert_eq!(mixed.decay_class(), DecayClass::NotCauchyIntegrable);
        let t = 0.9;
        let expect = a.evaluate(t) * 0.25 + g.evaluate(t) * 0.75;
        let got = mixed.evaluate(t);
        assert_abs_diff_eq!(got.re, expect.re, epsilon = 1e-14);
        assert_abs_diff_eq!(got.im, expect.im, epsilon = 1e-14);
    }
}
