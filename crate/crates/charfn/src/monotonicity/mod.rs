//! Sign tests for complete and absolute monotonicity of transform tables,
//! and the feasibility interval for the undetermined additive offset.

pub mod verdict;

use serde::{Deserialize, Serialize};

use crate::transforms::{Side, TransformTable};

pub use verdict::{
    verdict_theorem1, verdict_theorem1_forced, verdict_theorem2, verdict_theorem3, Decision,
    TheoremPath, Verdict, VerdictConfig, Violation, ViolationKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotonicityKind {
    Complete,
    Absolute,
}

/// One grid entry of the signed test quantity, carrying the tolerance band
/// (sign tolerance plus the table's error estimate at that entry).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDiagnostic {
    pub order: usize,
    pub y: f64,
    pub value: f64,
    pub band: f64,
}

/// Per-order, per-gridpoint sign diagnostics of one monotonicity test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub kind: MonotonicityKind,
    /// Minimum of the signed test quantity over the grid, one entry per
    /// order 0..=N.
    pub per_order_min: Vec<f64>,
    /// The (order, y, value) achieving the global minimum.
    pub worst_violation: PointDiagnostic,
    /// Largest |imaginary part| over all orders and grid points.
    pub imag_max: f64,
    pub tol: f64,
    /// Most negative entry lying beyond its tolerance band, if any.
    pub beyond_band: Option<PointDiagnostic>,
    /// Most negative entry lying within its band (borderline), if any.
    pub within_band: Option<PointDiagnostic>,
}

impl MonotonicityReport {
    /// The plain two-sided gate: no entry below -tol and no imaginary part
    /// above tol.
    pub fn passes(&self) -> bool {
        self.worst_violation.value >= -self.tol && self.imag_max <= self.tol
    }
}

fn scan(
    kind: MonotonicityKind,
    table: &TransformTable,
    quantity: impl Fn(usize, usize) -> f64,
    tol: f64,
) -> MonotonicityReport {
    let orders = table.max_order + 1;
    let mut per_order_min = vec![f64::INFINITY; orders];
    let mut worst = PointDiagnostic {
        order: 0,
        y: table.ys[0],
        value: f64::INFINITY,
        band: tol,
    };
    let mut beyond: Option<PointDiagnostic> = None;
    let mut within: Option<PointDiagnostic> = None;
    let mut imag_max = 0.0f64;

    for n in 0..orders {
        for (i, &y) in table.ys.iter().enumerate() {
            let q = quantity(n, i);
            let band = tol + table.error(n, i);
            imag_max = imag_max.max(table.value(n, i).im.abs());
            if q < per_order_min[n] {
                per_order_min[n] = q;
            }
            if q < worst.value {
                worst = PointDiagnostic { order: n, y, value: q, band };
            }
            if q < 0.0 {
                let diag = PointDiagnostic { order: n, y, value: q, band };
                if q < -band {
                    if beyond.map_or(true, |b| q < b.value) {
                        beyond = Some(diag);
                    }
                } else if within.map_or(true, |b| q < b.value) {
                    within = Some(diag);
                }
            }
        }
    }

    MonotonicityReport {
        kind,
        per_order_min,
        worst_violation: worst,
        imag_max,
        tol,
        beyond_band: beyond,
        within_band: within,
    }
}

/// Complete monotonicity of g(y) = offset + T(iy) on the upper side:
/// (-1)^n Re g^(n)(y) >= 0 for every order and grid point. The offset only
/// shifts order 0.
pub fn check_complete_monotone(
    table: &TransformTable,
    offset: f64,
    tol: f64,
) -> MonotonicityReport {
    debug_assert_eq!(table.side, Side::Upper);
    scan(
        MonotonicityKind::Complete,
        table,
        |n, i| {
            let g = if n == 0 {
                offset + table.value(0, i).re
            } else {
                table.value(n, i).re
            };
            if n % 2 == 0 {
                g
            } else {
                -g
            }
        },
        tol,
    )
}

/// Absolute monotonicity of g(y) = -(offset + T(iy)) on the lower side:
/// Re g^(n)(y) >= 0 for every order and grid point.
pub fn check_absolute_monotone(
    table: &TransformTable,
    offset: f64,
    tol: f64,
) -> MonotonicityReport {
    debug_assert_eq!(table.side, Side::Lower);
    scan(
        MonotonicityKind::Absolute,
        table,
        |n, i| {
            if n == 0 {
                -(offset + table.value(0, i).re)
            } else {
                -table.value(n, i).re
            }
        },
        tol,
    )
}

/// Feasibility interval for the additive offset: it must lift the order-0
/// upper-side values to be nonnegative and keep the negated lower-side
/// values nonnegative, so
///
///   max_y>0 (-Re T(iy))  <=  offset  <=  min_y<0 (-Re T(iy)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffsetInterval {
    pub lower: f64,
    pub upper: f64,
    pub feasible: bool,
}

impl OffsetInterval {
    /// A representative feasible offset: the midpoint, clamped to a finite
    /// endpoint plus/minus one when a side is unbounded.
    pub fn chosen_offset(&self) -> f64 {
        match (self.lower.is_finite(), self.upper.is_finite()) {
            (true, true) => 0.5 * (self.lower + self.upper),
            (true, false) => self.lower + 1.0,
            (false, true) => self.upper - 1.0,
            (false, false) => 0.0,
        }
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }
}

pub fn solve_offset_interval(
    upper_table: &TransformTable,
    lower_table: &TransformTable,
    tol: f64,
) -> OffsetInterval {
    debug_assert_eq!(upper_table.side, Side::Upper);
    debug_assert_eq!(lower_table.side, Side::Lower);
    let lower = upper_table
        .column(0)
        .iter()
        .map(|v| -v.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = lower_table
        .column(0)
        .iter()
        .map(|v| -v.re)
        .fold(f64::INFINITY, f64::min);
    OffsetInterval {
        lower,
        upper,
        feasible: lower <= upper + tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{Side, TableKind, TransformTable};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    /// Table of an exactly known function with exact derivatives.
    fn table_of(
        side: Side,
        ys: &[f64],
        max_order: usize,
        g: impl Fn(usize, f64) -> f64,
    ) -> TransformTable {
        let values: Vec<Vec<Complex64>> = (0..=max_order)
            .map(|n| ys.iter().map(|&y| Complex64::new(g(n, y), 0.0)).collect())
            .collect();
        TransformTable {
            kind: TableKind::ModifiedCauchyK,
            side,
            ys: ys.to_vec(),
            max_order,
            values: values.clone(),
            errors: vec![vec![0.0; ys.len()]; max_order + 1],
            warnings: Vec::new(),
        }
    }

    fn upper_ys() -> Vec<f64> {
        crate::transforms::ImaginaryAxisGrid::new(0.01, 100.0, 32)
            .unwrap()
            .points(Side::Upper)
    }

    fn lower_ys() -> Vec<f64> {
        crate::transforms::ImaginaryAxisGrid::new(0.01, 100.0, 32)
            .unwrap()
            .points(Side::Lower)
    }

    #[test]
    fn decaying_exponential_is_completely_monotone() {
        // g = e^{-y}: (-1)^n g^(n) = e^{-y} > 0
        let t = table_of(Side::Upper, &upper_ys(), 6, |n, y| {
            (if n % 2 == 0 { 1.0 } else { -1.0 }) * (-y).exp()
        });
        let r = check_complete_monotone(&t, 0.0, 1e-7);
        assert!(r.passes());
        assert!(r.per_order_min.iter().all(|&m| m > 0.0));
        assert!(r.beyond_band.is_none() && r.within_band.is_none());
    }

    #[test]
    fn cosine_fails_complete_monotonicity() {
        let ys: Vec<f64> = (1..40).map(|i| i as f64 * 0.25).collect();
        let t = table_of(Side::Upper, &ys, 4, |n, y| match n % 4 {
            0 => y.cos(),
            1 => -y.sin(),
            2 => -y.cos(),
            _ => y.sin(),
        });
        let r = check_complete_monotone(&t, 0.0, 1e-7);
        assert!(!r.passes());
        assert!(r.beyond_band.is_some());
    }

    #[test]
    fn growing_exponential_is_absolutely_monotone() {
        // lower side holds -(offset + T); feed T = -e^{y} so g = e^{y}
        let t = table_of(Side::Lower, &lower_ys(), 6, |_, y| -y.exp());
        let r = check_absolute_monotone(&t, 0.0, 1e-7);
        assert!(r.passes());
    }

    #[test]
    fn two_atom_alpha_above_one_fails_lower_side() {
        // alpha = 1.2 with the family's own offset: g = -0.4 e^{y} < 0 at n = 0
        let fam = crate::model::TwoAtomFamily::new(1.2);
        let t = table_of(Side::Lower, &lower_ys(), 3, |n, y| {
            // derivatives of K^- = 0.4 e^y - 1.4 e^{-1}
            if n == 0 {
                fam.modified_transform_lower(y)
            } else {
                0.4 * y.exp()
            }
        });
        let r = check_absolute_monotone(&t, fam.offset(), 1e-7);
        assert!(!r.passes());
        let beyond = r.beyond_band.expect("clear violation");
        assert_eq!(beyond.order, 0);
        // at the grid point closest to 0 the violation is about -0.4
        assert_abs_diff_eq!(r.per_order_min[0], -0.4 * (-0.01f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn offset_invariance_of_higher_orders() {
        let fam = crate::model::TwoAtomFamily::new(0.4);
        let t = table_of(Side::Upper, &upper_ys(), 5, |n, y| {
            if n == 0 {
                fam.modified_transform_upper(y)
            } else {
                0.8 * (if n % 2 == 0 { 1.0 } else { -1.0 }) * (-y).exp()
            }
        });
        let r1 = check_complete_monotone(&t, 0.3, 1e-7);
        let r2 = check_complete_monotone(&t, -1.7, 1e-7);
        assert_eq!(&r1.per_order_min[1..], &r2.per_order_min[1..]);
        assert_abs_diff_eq!(
            r1.per_order_min[0] - r2.per_order_min[0],
            0.3 - (-1.7),
            epsilon = 1e-14
        );
    }

    #[test]
    fn offset_interval_for_symmetric_two_atom() {
        let fam = crate::model::TwoAtomFamily::new(0.5);
        let up = table_of(Side::Upper, &upper_ys(), 0, |_, y| fam.modified_transform_upper(y));
        let lo = table_of(Side::Lower, &lower_ys(), 0, |_, y| fam.modified_transform_lower(y));
        let iv = solve_offset_interval(&up, &lo, 1e-7);
        assert!(iv.feasible);
        assert!(iv.contains(0.0, 1e-7), "interval [{}, {}]", iv.lower, iv.upper);
    }

    #[test]
    fn offset_interval_for_constant_one() {
        // K = 1 above, K = -1 below: interval is [-1, 1]
        let up = table_of(Side::Upper, &upper_ys(), 0, |_, _| 1.0);
        let lo = table_of(Side::Lower, &lower_ys(), 0, |_, _| -1.0);
        let iv = solve_offset_interval(&up, &lo, 1e-7);
        assert!(iv.feasible);
        assert_abs_diff_eq!(iv.lower, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(iv.upper, 1.0, epsilon = 1e-15);
        assert!(iv.contains(0.0, 0.0));
    }

    #[test]
    fn offset_interval_infeasible_for_alpha_above_one() {
        let fam = crate::model::TwoAtomFamily::new(1.2);
        let up = table_of(Side::Upper, &upper_ys(), 0, |_, y| fam.modified_transform_upper(y));
        let lo = table_of(Side::Lower, &lower_ys(), 0, |_, y| fam.modified_transform_lower(y));
        let iv = solve_offset_interval(&up, &lo, 1e-7);
        assert!(!iv.feasible);
    }

    #[test]
    fn worst_violation_equals_global_minimum() {
        let ys: Vec<f64> = (1..20).map(|i| i as f64 * 0.3).collect();
        let t = table_of(Side::Upper, &ys, 3, |n, y| (n as f64 + 1.0) * (y - 3.0));
        let r = check_complete_monotone(&t, 0.0, 1e-7);
        let global_min = r
            .per_order_min
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        assert_eq!(r.worst_violation.value, global_min);
    }
}
