//! Imaginary-axis grids and transform tables (values of a transform and its
//! y-derivatives of orders 0..N at every grid point).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{
    cauchy_transform, modified_cauchy_transform, modified_transform_from_parts,
    plain_transform_from_parts, poisson_extension_dy, poisson_from_parts, Transformed,
};
use super::quad::QuadratureConfig;
use crate::error::{CharFnError, Result};
use crate::model::CandidateFunction;
use crate::warnings::WarningCode;

/// Sign-homogeneous geometric grid of nonzero imaginary-axis ordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryAxisGrid {
    pub y_min: f64,
    pub y_max: f64,
    pub points_per_side: usize,
}

impl Default for ImaginaryAxisGrid {
    fn default() -> Self {
        Self {
            y_min: 1e-2,
            y_max: 1e2,
            points_per_side: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl ImaginaryAxisGrid {
    pub fn new(y_min: f64, y_max: f64, points_per_side: usize) -> Result<Self> {
        if !(y_min > 0.0 && y_max > y_min && points_per_side >= 2) {
            return Err(CharFnError::InvalidParameter(format!(
                "grid needs 0 < y_min < y_max and at least two points per side \
                 (got y_min={y_min}, y_max={y_max}, points={points_per_side})"
            )));
        }
        Ok(Self {
            y_min,
            y_max,
            points_per_side,
        })
    }

    /// Strictly increasing points of one side: geometric spacing from
    /// y_min to y_max (upper) or -y_max to -y_min (lower).
    pub fn points(&self, side: Side) -> Vec<f64> {
        let n = self.points_per_side;
        let ratio = (self.y_max / self.y_min).powf(1.0 / (n - 1) as f64);
        let ascending: Vec<f64> = (0..n)
            .map(|i| self.y_min * ratio.powi(i as i32))
            .collect();
        match side {
            Side::Upper => ascending,
            Side::Lower => ascending.iter().rev().map(|y| -y).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    PoissonU,
    CauchyK,
    ModifiedCauchyK,
}

/// Values[order][point] of one transform kind on one side of the axis,
/// with per-entry absolute error estimates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformTable {
    pub kind: TableKind,
    pub side: Side,
    pub ys: Vec<f64>,
    pub max_order: usize,
    pub values: Vec<Vec<Complex64>>,
    pub errors: Vec<Vec<f64>>,
    pub warnings: Vec<WarningCode>,
}

impl TransformTable {
    pub fn value(&self, order: usize, point: usize) -> Complex64 {
        self.values[order][point]
    }

    pub fn error(&self, order: usize, point: usize) -> f64 {
        self.errors[order][point]
    }

    pub fn column(&self, order: usize) -> &[Complex64] {
        &self.values[order]
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

/// Builds a transform table. Structured candidates (known spectral parts)
/// route through the semi-closed kernel-Fourier path; black boxes go
/// through quadrature, one column of orders per grid point, grid points in
/// parallel.
pub fn build_table(
    f: &CandidateFunction,
    kind: TableKind,
    side: Side,
    ys: &[f64],
    max_order: usize,
    cfg: &QuadratureConfig,
) -> Result<TransformTable> {
    if ys.is_empty() {
        return Err(CharFnError::InvalidParameter("empty grid".into()));
    }
    let sign_ok = match side {
        Side::Upper => ys.iter().all(|&y| y > 0.0),
        Side::Lower => ys.iter().all(|&y| y < 0.0),
    };
    if !sign_ok {
        return Err(CharFnError::InvalidParameter(
            "grid points must lie strictly on the requested side".into(),
        ));
    }
    if kind == TableKind::PoissonU && side == Side::Lower {
        return Err(CharFnError::InvalidParameter(
            "the Poisson extension table lives on the upper side only".into(),
        ));
    }

    let columns: Result<Vec<Vec<Transformed>>> = ys
        .par_iter()
        .map(|&y| {
            (0..=max_order)
                .map(|n| transform_at(f, kind, y, n, cfg))
                .collect::<Result<Vec<_>>>()
        })
        .collect();
    let columns = columns?;

    let mut values = vec![vec![Complex64::new(0.0, 0.0); ys.len()]; max_order + 1];
    let mut errors = vec![vec![0.0; ys.len()]; max_order + 1];
    let mut warnings: Vec<WarningCode> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        for (n, t) in col.iter().enumerate() {
            values[n][i] = t.value;
            errors[n][i] = t.error_estimate;
            for w in &t.warnings {
                if !warnings.contains(w) {
                    warnings.push(*w);
                }
            }
        }
    }

    Ok(TransformTable {
        kind,
        side,
        ys: ys.to_vec(),
        max_order,
        values,
        errors,
        warnings,
    })
}

fn transform_at(
    f: &CandidateFunction,
    kind: TableKind,
    y: f64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Transformed> {
    if let Some(parts) = f.spectral_parts() {
        return match kind {
            TableKind::ModifiedCauchyK => modified_transform_from_parts(parts, y, n, cfg),
            TableKind::CauchyK => plain_transform_from_parts(parts, y, n, cfg),
            TableKind::PoissonU => poisson_from_parts(parts, 0.0, y, n, cfg),
        };
    }
    match kind {
        TableKind::ModifiedCauchyK => {
            if n == 0 {
                modified_cauchy_transform(f, y, cfg)
            } else {
                cauchy_transform(f, y, n, cfg)
            }
        }
        TableKind::CauchyK => cauchy_transform(f, y, n, cfg),
        TableKind::PoissonU => poisson_extension_dy(f, 0.0, y, n, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TwoAtomFamily;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_is_geometric_and_sign_homogeneous() {
        let g = ImaginaryAxisGrid::new(1e-2, 1e2, 5).unwrap();
        let up = g.points(Side::Upper);
        assert_eq!(up.len(), 5);
        assert_abs_diff_eq!(up[0], 1e-2, epsilon = 1e-15);
        assert_abs_diff_eq!(up[4], 1e2, epsilon = 1e-10);
        assert_abs_diff_eq!(up[2], 1.0, epsilon = 1e-12);
        assert!(up.windows(2).all(|w| w[0] < w[1]));

        let lo = g.points(Side::Lower);
        assert!(lo.iter().all(|&y| y < 0.0));
        assert!(lo.windows(2).all(|w| w[0] < w[1]));
        assert_abs_diff_eq!(lo[0], -1e2, epsilon = 1e-10);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(ImaginaryAxisGrid::new(0.0, 1.0, 4).is_err());
        assert!(ImaginaryAxisGrid::new(2.0, 1.0, 4).is_err());
        assert!(ImaginaryAxisGrid::new(0.1, 1.0, 1).is_err());
    }

    #[test]
    fn two_atom_table_matches_hand_formulas() {
        let fam = TwoAtomFamily::new(0.25);
        let f = fam.candidate();
        let grid = ImaginaryAxisGrid::new(0.1, 10.0, 8).unwrap();
        let cfg = QuadratureConfig::default();

        let up = build_table(&f, TableKind::ModifiedCauchyK, Side::Upper, &grid.points(Side::Upper), 3, &cfg)
            .unwrap();
        for (i, &y) in up.ys.iter().enumerate() {
            assert_abs_diff_eq!(up.value(0, i).re, fam.modified_transform_upper(y), epsilon = 1e-13);
            // d^2/dy^2 (2 a e^{-y}) = 2 a e^{-y}
            assert_abs_diff_eq!(up.value(2, i).re, 0.5 * (-y).exp(), epsilon = 1e-13);
        }

        let lo = build_table(&f, TableKind::ModifiedCauchyK, Side::Lower, &grid.points(Side::Lower), 3, &cfg)
            .unwrap();
        for (i, &y) in lo.ys.iter().enumerate() {
            assert_abs_diff_eq!(lo.value(0, i).re, fam.modified_transform_lower(y), epsilon = 1e-13);
        }
        assert!(up.is_finite() && lo.is_finite());
    }

    #[test]
    fn side_mismatch_is_rejected() {
        let f = TwoAtomFamily::new(0.5).candidate();
        let cfg = QuadratureConfig::default();
        let err = build_table(&f, TableKind::ModifiedCauchyK, Side::Upper, &[-1.0, -0.5], 2, &cfg);
        assert!(err.is_err());
        let err = build_table(&f, TableKind::PoissonU, Side::Lower, &[-1.0, -0.5], 2, &cfg);
        assert!(err.is_err());
    }
}
