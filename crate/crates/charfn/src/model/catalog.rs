//! Named candidate functions with known ground truth, used by the CLI and
//! by the cross-validation suites.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::candidate::{CandidateFunction, DecayClass, Source, TwoAtomFamily};
use super::measure::{DensityShape, SpectralMeasure};
use crate::error::{CharFnError, Result};

/// Catalog entries and their parameters (with defaults).
pub const CATALOG: &[(&str, &str)] = &[
    ("delta", "f = 1, the point mass at the origin"),
    ("two-atom", "(1-alpha) e^{-ix} + alpha e^{ix}; alpha (default 0.5)"),
    ("cosine", "cos x, the symmetric two-atom case"),
    ("gaussian", "exp(i mean t - stddev^2 t^2 / 2); mean (0), stddev (1)"),
    ("laplace", "char fn of the Laplace distribution, e^{i loc t}/(1 + scale^2 t^2); location (0), scale (1)"),
    ("cauchy", "char fn of the Cauchy distribution, e^{i loc t - scale |t|}; location (0), scale (1)"),
    ("uniform", "char fn of the uniform distribution on [a, b]; a (-1), b (1)"),
    ("triangular", "tent max(0, 1 - |t|/width); width (1); a compactly supported positive-definite function"),
    ("quartic", "exp(-t^4); bounded, real, even, and not positive definite"),
    ("overshoot", "(1+beta) e^{-t^2/2} - beta e^{-t^2}; beta (2); exceeds modulus 1"),
    ("mix-gauss-two-atom", "lambda * gaussian + (1-lambda) * two-atom(alpha); lambda (0.5), alpha (0.5)"),
    ("mix-laplace-cauchy", "lambda * laplace + (1-lambda) * cauchy; lambda (0.5)"),
];

fn get(params: &BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    params.get(key).copied().unwrap_or(default)
}

fn reject_unknown(name: &str, params: &BTreeMap<String, f64>, known: &[&str]) -> Result<()> {
    for k in params.keys() {
        if !known.contains(&k.as_str()) {
            return Err(CharFnError::InvalidParameter(format!(
                "catalog entry '{name}' does not take parameter '{k}'"
            )));
        }
    }
    Ok(())
}

/// Builds a catalog entry.
pub fn catalog_entry(name: &str, params: &BTreeMap<String, f64>) -> Result<CandidateFunction> {
    let source = Source::Catalog {
        name: name.to_string(),
        params: params.clone(),
    };
    match name {
        "delta" => {
            reject_unknown(name, params, &[])?;
            CandidateFunction::from_measure(SpectralMeasure::point_mass(0.0))
        }
        "two-atom" => {
            reject_unknown(name, params, &["alpha"])?;
            Ok(TwoAtomFamily::new(get(params, "alpha", 0.5)).candidate())
        }
        "cosine" => {
            reject_unknown(name, params, &[])?;
            Ok(CandidateFunction::from_exponential_sum(
                vec![
                    (-1.0, Complex64::new(0.5, 0.0)),
                    (1.0, Complex64::new(0.5, 0.0)),
                ],
                source,
            ))
        }
        "gaussian" => {
            reject_unknown(name, params, &["mean", "stddev"])?;
            CandidateFunction::from_measure(SpectralMeasure::from_density(
                DensityShape::Gaussian {
                    mean: get(params, "mean", 0.0),
                    stddev: get(params, "stddev", 1.0),
                },
                1.0,
            )?)
        }
        "laplace" => {
            reject_unknown(name, params, &["location", "scale"])?;
            CandidateFunction::from_measure(SpectralMeasure::from_density(
                DensityShape::Laplace {
                    location: get(params, "location", 0.0),
                    scale: get(params, "scale", 1.0),
                },
                1.0,
            )?)
        }
        "cauchy" => {
            reject_unknown(name, params, &["location", "scale"])?;
            CandidateFunction::from_measure(SpectralMeasure::from_density(
                DensityShape::Cauchy {
                    location: get(params, "location", 0.0),
                    scale: get(params, "scale", 1.0),
                },
                1.0,
            )?)
        }
        "uniform" => {
            reject_unknown(name, params, &["a", "b"])?;
            CandidateFunction::from_measure(SpectralMeasure::from_density(
                DensityShape::Uniform {
                    a: get(params, "a", -1.0),
                    b: get(params, "b", 1.0),
                },
                1.0,
            )?)
        }
        "triangular" => {
            reject_unknown(name, params, &["width"])?;
            let width = get(params, "width", 1.0);
            if width <= 0.0 {
                return Err(CharFnError::InvalidParameter("width must be positive".into()));
            }
            Ok(CandidateFunction::from_closure(
                move |t| Complex64::new((1.0 - (t / width).abs()).max(0.0), 0.0),
                source,
                DecayClass::CauchyIntegrable,
                1.0,
            ))
        }
        "quartic" => {
            reject_unknown(name, params, &[])?;
            Ok(CandidateFunction::from_closure(
                |t| Complex64::new((-t.powi(4)).exp(), 0.0),
                source,
                DecayClass::CauchyIntegrable,
                1.0,
            ))
        }
        "overshoot" => {
            reject_unknown(name, params, &["beta"])?;
            let beta = get(params, "beta", 2.0);
            Ok(CandidateFunction::from_closure(
                move |t| {
                    Complex64::new(
                        (1.0 + beta) * (-0.5 * t * t).exp() - beta * (-t * t).exp(),
                        0.0,
                    )
                },
                source,
                DecayClass::CauchyIntegrable,
                1.0 + 2.0 * beta.abs(),
            ))
        }
        "mix-gauss-two-atom" => {
            reject_unknown(name, params, &["lambda", "alpha"])?;
            let lambda = get(params, "lambda", 0.5);
            let mut sub = BTreeMap::new();
            sub.insert("alpha".to_string(), get(params, "alpha", 0.5));
            let g = catalog_entry("gaussian", &BTreeMap::new())?;
            let a = catalog_entry("two-atom", &sub)?;
            Ok(CandidateFunction::mix(&[(lambda, &g), (1.0 - lambda, &a)]))
        }
        "mix-laplace-cauchy" => {
            reject_unknown(name, params, &["lambda"])?;
            let lambda = get(params, "lambda", 0.5);
            let l = catalog_entry("laplace", &BTreeMap::new())?;
            let c = catalog_entry("cauchy", &BTreeMap::new())?;
            Ok(CandidateFunction::mix(&[(lambda, &l), (1.0 - lambda, &c)]))
        }
        other => Err(CharFnError::UnknownCatalog(other.to_string())),
    }
}
