//! Finite nonnegative spectral measures on the real line: point masses plus
//! an optional named absolutely-continuous component.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CharFnError, Result};

/// Probability-mass tolerance for analytically specified measures.
pub const MASS_TOL_ANALYTIC: f64 = 1e-12;
/// Probability-mass tolerance for sampled data.
pub const MASS_TOL_SAMPLED: f64 = 1e-6;

/// The named absolutely-continuous shapes. Each integrates to 1 over its
/// natural (full) support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "lowercase")]
pub enum DensityShape {
    Gaussian { mean: f64, stddev: f64 },
    Cauchy { location: f64, scale: f64 },
    Laplace { location: f64, scale: f64 },
    Uniform { a: f64, b: f64 },
}

impl DensityShape {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DensityShape::Gaussian { stddev, .. } => stddev > 0.0,
            DensityShape::Cauchy { scale, .. } | DensityShape::Laplace { scale, .. } => scale > 0.0,
            DensityShape::Uniform { a, b } => a < b,
        };
        if ok {
            Ok(())
        } else {
            Err(CharFnError::InvalidMeasure(format!(
                "invalid density parameters: {self:?}"
            )))
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            DensityShape::Gaussian { mean, stddev } => {
                let z = (x - mean) / stddev;
                (-0.5 * z * z).exp() / (stddev * (2.0 * std::f64::consts::PI).sqrt())
            }
            DensityShape::Cauchy { location, scale } => {
                let z = (x - location) / scale;
                1.0 / (std::f64::consts::PI * scale * (1.0 + z * z))
            }
            DensityShape::Laplace { location, scale } => {
                (-((x - location).abs() / scale)).exp() / (2.0 * scale)
            }
            DensityShape::Uniform { a, b } => {
                if x >= a && x <= b {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            DensityShape::Gaussian { mean, stddev } => {
                0.5 * erfc_approx(-(x - mean) / (stddev * std::f64::consts::SQRT_2))
            }
            DensityShape::Cauchy { location, scale } => {
                0.5 + ((x - location) / scale).atan() / std::f64::consts::PI
            }
            DensityShape::Laplace { location, scale } => {
                let z = (x - location) / scale;
                if z < 0.0 {
                    0.5 * z.exp()
                } else {
                    1.0 - 0.5 * (-z).exp()
                }
            }
            DensityShape::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
        }
    }

    /// Characteristic function of the unit-mass shape: int e^{ixt} pdf(x) dx.
    pub fn char_fn(&self, t: f64) -> Complex64 {
        match *self {
            DensityShape::Gaussian { mean, stddev } => {
                Complex64::new(-0.5 * stddev * stddev * t * t, mean * t).exp()
            }
            DensityShape::Cauchy { location, scale } => {
                Complex64::new(-scale * t.abs(), location * t).exp()
            }
            DensityShape::Laplace { location, scale } => {
                Complex64::new(0.0, location * t).exp() / (1.0 + scale * scale * t * t)
            }
            DensityShape::Uniform { a, b } => {
                if t == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    let num = Complex64::new(0.0, b * t).exp() - Complex64::new(0.0, a * t).exp();
                    num / Complex64::new(0.0, t * (b - a))
                }
            }
        }
    }

    /// Natural support before any half-line restriction.
    pub fn natural_bounds(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            DensityShape::Uniform { a, b } => (Some(a), Some(b)),
            _ => (None, None),
        }
    }
}

// Complementary error function, Chebyshev-fit form. Max error ~1.2e-7,
// which is only ever used for mass bookkeeping of half-line-restricted
// gaussian components; every quantitative transform path integrates the
// pdf directly instead.
fn erfc_approx(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_approx(-x);
    }
    let z = 1.0 / (1.0 + 0.5 * x);
    let tau = z
        * (-x * x - 1.26551223
            + z * (1.00002368
                + z * (0.37409196
                    + z * (0.09678418
                        + z * (-0.18628806
                            + z * (0.27886807
                                + z * (-1.13520398
                                    + z * (1.48851587
                                        + z * (-0.82215223 + z * 0.17087277)))))))))
        .exp();
    tau
}

/// Side of the real line used by half-line restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfLine {
    NonNeg,
    NonPos,
}

/// Support of a density component. Restrictions of full-support shapes to a
/// half-line are representable without changing the shape itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    #[default]
    Full,
    NonNeg,
    NonPos,
}

impl Support {
    fn contains(self, x: f64) -> bool {
        match self {
            Support::Full => true,
            Support::NonNeg => x >= 0.0,
            Support::NonPos => x <= 0.0,
        }
    }

    fn intersect(self, side: HalfLine) -> Support {
        match (self, side) {
            (Support::Full, HalfLine::NonNeg) => Support::NonNeg,
            (Support::Full, HalfLine::NonPos) => Support::NonPos,
            (s, HalfLine::NonNeg) if s == Support::NonNeg => Support::NonNeg,
            (s, HalfLine::NonPos) if s == Support::NonPos => Support::NonPos,
            // Opposite restrictions leave only {0}, which has density mass 0;
            // represented as the degenerate NonNeg/NonPos pair with zero mass
            // handled by the caller.
            (_, HalfLine::NonNeg) => Support::NonNeg,
            (_, HalfLine::NonPos) => Support::NonPos,
        }
    }
}

/// A scaled, possibly half-line-restricted density component. `multiplier`
/// scales the pointwise pdf of the unit-mass shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityComponent {
    #[serde(flatten)]
    pub shape: DensityShape,
    #[serde(rename = "mass")]
    pub multiplier: f64,
    #[serde(default, skip_serializing_if = "is_full")]
    pub support: Support,
}

fn is_full(s: &Support) -> bool {
    *s == Support::Full
}

impl DensityComponent {
    pub fn pdf(&self, x: f64) -> f64 {
        if self.support.contains(x) {
            self.multiplier * self.shape.pdf(x)
        } else {
            0.0
        }
    }

    /// Total mass of the component: multiplier times the shape mass on the
    /// support.
    pub fn mass(&self) -> f64 {
        let frac = match self.support {
            Support::Full => 1.0,
            Support::NonNeg => 1.0 - self.shape.cdf(0.0),
            Support::NonPos => self.shape.cdf(0.0),
        };
        self.multiplier * frac
    }

    /// Integration bounds: natural shape bounds intersected with the support.
    pub fn bounds(&self) -> (Option<f64>, Option<f64>) {
        let (lo, hi) = self.shape.natural_bounds();
        match self.support {
            Support::Full => (lo, hi),
            Support::NonNeg => (Some(lo.unwrap_or(0.0).max(0.0)), hi),
            Support::NonPos => (lo, Some(hi.unwrap_or(0.0).min(0.0))),
        }
    }
}

/// Finite nonnegative measure on the line: atoms plus at most one named
/// density component.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectralMeasure {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityComponent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub w: f64,
}

impl SpectralMeasure {
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        let m = Self {
            atoms: atoms.iter().map(|&(x, w)| Atom { x, w }).collect(),
            density: None,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn point_mass(x: f64) -> Self {
        Self {
            atoms: vec![Atom { x, w: 1.0 }],
            density: None,
        }
    }

    pub fn from_density(shape: DensityShape, multiplier: f64) -> Result<Self> {
        let m = Self {
            atoms: Vec::new(),
            density: Some(DensityComponent {
                shape,
                multiplier,
                support: Support::Full,
            }),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_atoms(mut self, atoms: &[(f64, f64)]) -> Result<Self> {
        self.atoms
            .extend(atoms.iter().map(|&(x, w)| Atom { x, w }));
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.atoms {
            if !a.w.is_finite() || a.w < 0.0 {
                return Err(CharFnError::InvalidMeasure(format!(
                    "atom at {} has weight {}",
                    a.x, a.w
                )));
            }
            if !a.x.is_finite() {
                return Err(CharFnError::InvalidMeasure("non-finite atom location".into()));
            }
        }
        if let Some(d) = &self.density {
            d.shape.validate()?;
            if !d.multiplier.is_finite() || d.multiplier < 0.0 {
                return Err(CharFnError::InvalidMeasure(format!(
                    "density mass multiplier {}",
                    d.multiplier
                )));
            }
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|a| a.w).sum();
        atoms + self.density.as_ref().map_or(0.0, |d| d.mass())
    }

    /// Asserts total mass 1 within the analytic tolerance.
    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= MASS_TOL_ANALYTIC
    }

    pub fn atom_weight_at_zero(&self) -> f64 {
        self.atoms.iter().filter(|a| a.x == 0.0).map(|a| a.w).sum()
    }

    /// Mass of the closed half-line.
    pub fn mass_on(&self, side: HalfLine) -> f64 {
        let atom_part: f64 = self
            .atoms
            .iter()
            .filter(|a| match side {
                HalfLine::NonNeg => a.x >= 0.0,
                HalfLine::NonPos => a.x <= 0.0,
            })
            .map(|a| a.w)
            .sum();
        let dens_part = self.density.as_ref().map_or(0.0, |d| {
            DensityComponent {
                shape: d.shape,
                multiplier: d.multiplier,
                support: d.support.intersect(match side {
                    HalfLine::NonNeg => HalfLine::NonNeg,
                    HalfLine::NonPos => HalfLine::NonPos,
                }),
            }
            .mass()
        });
        atom_part + dens_part
    }

    /// Half-line restriction: 2 * measure restricted to the closed half-line,
    /// minus the atom at 0 (so the origin keeps its original weight).
    pub fn restrict(&self, side: HalfLine) -> SpectralMeasure {
        let keep = |x: f64| match side {
            HalfLine::NonNeg => x >= 0.0,
            HalfLine::NonPos => x <= 0.0,
        };
        let atoms = self
            .atoms
            .iter()
            .filter(|a| keep(a.x))
            .map(|a| Atom {
                x: a.x,
                w: if a.x == 0.0 { a.w } else { 2.0 * a.w },
            })
            .collect();
        let density = self.density.as_ref().map(|d| DensityComponent {
            shape: d.shape,
            multiplier: 2.0 * d.multiplier,
            support: d.support.intersect(side),
        });
        SpectralMeasure { atoms, density }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let m: SpectralMeasure =
            serde_json::from_str(s).map_err(|e| CharFnError::MeasureFormat(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn point_mass_is_probability() {
        let m = SpectralMeasure::point_mass(0.0);
        assert!(m.is_probability());
        assert_eq!(m.atom_weight_at_zero(), 1.0);
    }

    #[test]
    fn negative_weight_rejected() {
        let m = SpectralMeasure::from_atoms(&[(1.0, -0.5)]);
        assert!(matches!(m, Err(CharFnError::InvalidMeasure(_))));
    }

    #[test]
    fn bad_density_params_rejected() {
        assert!(SpectralMeasure::from_density(
            DensityShape::Gaussian { mean: 0.0, stddev: -1.0 },
            1.0
        )
        .is_err());
        assert!(SpectralMeasure::from_density(DensityShape::Uniform { a: 2.0, b: 1.0 }, 1.0).is_err());
    }

    #[test]
    fn restrict_point_mass_at_origin() {
        let m = SpectralMeasure::point_mass(0.0);
        let r = m.restrict(HalfLine::NonNeg);
        assert_eq!(r.atoms.len(), 1);
        assert_eq!(r.atoms[0].x, 0.0);
        assert_eq!(r.atoms[0].w, 1.0); // 2*1 - 1
    }

    #[test]
    fn restrict_two_atoms() {
        let m = SpectralMeasure::from_atoms(&[(-1.0, 0.7), (1.0, 0.3)]).unwrap();
        let pos = m.restrict(HalfLine::NonNeg);
        assert_eq!(pos.atoms.len(), 1);
        assert_abs_diff_eq!(pos.atoms[0].x, 1.0);
        assert_abs_diff_eq!(pos.atoms[0].w, 0.6, epsilon = 1e-15);

        let neg = m.restrict(HalfLine::NonPos);
        assert_eq!(neg.atoms.len(), 1);
        assert_abs_diff_eq!(neg.atoms[0].x, -1.0);
        assert_abs_diff_eq!(neg.atoms[0].w, 1.4, epsilon = 1e-15);
    }

    #[test]
    fn restriction_mass_identity() {
        // mass(restrict(nonneg)) = 2 m([0,inf)) - m({0}), same on the other side
        let m = SpectralMeasure::from_density(DensityShape::Gaussian { mean: 0.3, stddev: 1.2 }, 0.5)
            .unwrap()
            .with_atoms(&[(0.0, 0.2), (-2.0, 0.3)])
            .unwrap();
        for side in [HalfLine::NonNeg, HalfLine::NonPos] {
            let expect = 2.0 * m.mass_on(side) - m.atom_weight_at_zero();
            assert_abs_diff_eq!(m.restrict(side).total_mass(), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn density_cdf_sanity() {
        let g = DensityShape::Gaussian { mean: 0.0, stddev: 1.0 };
        assert_abs_diff_eq!(g.cdf(0.0), 0.5, epsilon = 1e-7);
        let l = DensityShape::Laplace { location: 0.0, scale: 1.0 };
        assert_abs_diff_eq!(l.cdf(0.0), 0.5, epsilon = 1e-15);
        let c = DensityShape::Cauchy { location: 1.0, scale: 1.0 };
        assert_abs_diff_eq!(c.cdf(1.0), 0.5, epsilon = 1e-15);
        let u = DensityShape::Uniform { a: -1.0, b: 3.0 };
        assert_abs_diff_eq!(u.cdf(0.0), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn json_round_trip_matches_documented_format() {
        let text = r#"{"atoms":[{"x":-1.0,"w":0.7},{"x":1.0,"w":0.3}],
                       "density":{"name":"gaussian","params":{"mean":0,"stddev":1},"mass":0.0}}"#;
        let m = SpectralMeasure::from_json_str(text).unwrap();
        assert_eq!(m.atoms.len(), 2);
        assert!(matches!(
            m.density.as_ref().unwrap().shape,
            DensityShape::Gaussian { .. }
        ));
        let back = SpectralMeasure::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(m, back);
    }
}
