//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands on
//! finite, half-infinite and infinite intervals.
//!
//! The whole real line is mapped to (-pi/2, pi/2) by t = tan(theta), so
//! integrands with algebraic decay need no truncation at all. Oscillatory
//! non-decaying integrands (trigonometric sums) go through a separate
//! truncated path whose panel width is capped at a quarter of the estimated
//! oscillation period; the truncation tail enters the error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Tolerances and budgets for the quadrature engine.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Initial truncation half-width for oscillatory integrands.
    pub truncation_halfwidth: f64,
    /// Hard cap for truncation growth.
    pub max_truncation_halfwidth: f64,
    /// Panel-split budget for the adaptive loop on smooth integrands.
    pub max_panels: usize,
    /// Budget for the initial slicing of a truncated oscillatory range.
    pub max_oscillatory_panels: usize,
    /// Sign-change count above which an integrand is treated as oscillatory.
    pub oscillation_threshold: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            truncation_halfwidth: 1e4,
            max_truncation_halfwidth: 1e8,
            max_panels: 2000,
            max_oscillatory_panels: 32_768,
            oscillation_threshold: 8,
        }
    }
}

/// Value plus a decomposed error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: Complex64,
    /// Accumulated panel error estimates.
    pub quad_error: f64,
    /// Bound on the discarded tail (zero for untruncated paths).
    pub tail_bound: f64,
    /// Machine-roundoff floor: eps times the L1 mass of the integrand.
    /// Dominates when the integrand cancels catastrophically.
    pub roundoff: f64,
    pub converged: bool,
    pub oscillatory: bool,
}

impl QuadOutcome {
    pub fn error_estimate(&self) -> f64 {
        self.quad_error + self.tail_bound + self.roundoff
    }
}

// 15-point Kronrod nodes with embedded 7-point Gauss rule (positive half).
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// GSL-style error rescaling: sharpens the raw |K15 - G7| difference while
/// keeping a machine-precision floor tied to the integrand's L1 mass.
fn rescale_error(raw: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = raw.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn qk15_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let f_center = f(center);
    let mut res_kronrod = f_center * WGK15[7];
    let mut res_gauss = Complex64::new(0.0, 0.0);
    let mut resabs = f_center.norm() * WGK15[7];

    let mut fv = [Complex64::new(0.0, 0.0); 15];
    fv[7] = f_center;

    for j in 0..7 {
        let abscissa = half * XGK15[j];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        res_kronrod += fsum * WGK15[j];
        resabs += WGK15[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            res_gauss += fsum * WG7[j / 2];
        }
    }

    let mean = res_kronrod * 0.5;
    let mut resasc = WGK15[7] * (fv[7] - mean).norm();
    for j in 0..7 {
        resasc += WGK15[j] * ((fv[j] - mean).norm() + (fv[14 - j] - mean).norm());
    }

    let raw = ((res_kronrod - res_gauss) * half).norm();
    Panel {
        a,
        b,
        value: res_kronrod * half,
        err: rescale_error(raw, resabs * abs_half, resasc * abs_half),
        resabs: resabs * abs_half,
    }
}

/// Globally adaptive bisection over an initial panel list.
fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    segments: &[(f64, f64)],
    abs_tol: f64,
    rel_tol: f64,
    split_budget: usize,
) -> QuadOutcome {
    let mut heap: BinaryHeap<Panel> = segments
        .iter()
        .filter(|(a, b)| b > a)
        .map(|&(a, b)| qk15_panel(f, a, b))
        .collect();

    let mut splits = 0usize;
    let mut converged = true;
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let total_val: Complex64 = heap.iter().map(|p| p.value).sum();
        if total_err <= abs_tol.max(rel_tol * total_val.norm()) {
            break;
        }
        if splits >= split_budget {
            converged = false;
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        // A panel narrower than a few ulps cannot be refined further.
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            let mut p = worst;
            p.err = 0.0;
            heap.push(p);
            continue;
        }
        heap.push(qk15_panel(f, worst.a, mid));
        heap.push(qk15_panel(f, mid, worst.b));
        splits += 1;
    }

    let value: Complex64 = heap.iter().map(|p| p.value).sum();
    let quad_error: f64 = heap.iter().map(|p| p.err).sum();
    let l1: f64 = heap.iter().map(|p| p.resabs).sum();
    QuadOutcome {
        value,
        quad_error,
        tail_bound: 0.0,
        roundoff: f64::EPSILON * l1 * (heap.len() as f64).sqrt().max(1.0),
        converged,
        oscillatory: false,
    }
}

/// Integrate over a finite interval.
pub fn integrate_interval<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> QuadOutcome {
    let mid = 0.5 * (a + b);
    adapt(&f, &[(a, mid), (mid, b)], cfg.abs_tol, cfg.rel_tol, cfg.max_panels)
}

// Initial theta split points for the tan map. Clustered toward the
// endpoints so the first pass already resolves slowly decaying tails.
const THETA_SPLITS: [f64; 7] = [0.0, 0.5, 0.9, 1.2, 1.4, 1.5, 1.55];

fn theta_segments(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut pts: Vec<f64> = THETA_SPLITS
        .iter()
        .flat_map(|&t| [t, -t])
        .chain([lo, hi])
        .filter(|&t| t >= lo && t <= hi)
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Integrate over an interval that may be unbounded on either side,
/// via the substitution t = shift + tan(theta).
///
/// `None` bounds mean -inf / +inf respectively. The substituted integrand
/// uses the exact identity sec^2(theta) = 1 + tan^2(theta), which is stable
/// arbitrarily close to the endpoints.
pub fn integrate_over<F: Fn(f64) -> Complex64>(
    f: F,
    lo: Option<f64>,
    hi: Option<f64>,
    cfg: &QuadratureConfig,
) -> QuadOutcome {
    match (lo, hi) {
        (Some(a), Some(b)) => integrate_interval(f, a, b, cfg),
        (None, None) => {
            let g = move |theta: f64| {
                let t = theta.tan();
                f(t) * (1.0 + t * t)
            };
            adapt(
                &g,
                &theta_segments(-FRAC_PI_2, FRAC_PI_2),
                cfg.abs_tol,
                cfg.rel_tol,
                cfg.max_panels,
            )
        }
        (Some(a), None) => {
            let g = move |theta: f64| {
                let t = theta.tan();
                f(a + t) * (1.0 + t * t)
            };
            adapt(&g, &theta_segments(0.0, FRAC_PI_2), cfg.abs_tol, cfg.rel_tol, cfg.max_panels)
        }
        (None, Some(b)) => {
            let g = move |theta: f64| {
                let t = theta.tan();
                f(b + t) * (1.0 + t * t)
            };
            adapt(&g, &theta_segments(-FRAC_PI_2, 0.0), cfg.abs_tol, cfg.rel_tol, cfg.max_panels)
        }
    }
}

/// Integrate the whole real line (convenience wrapper).
pub fn integrate_real_line<F: Fn(f64) -> Complex64>(f: F, cfg: &QuadratureConfig) -> QuadOutcome {
    integrate_over(f, None, None, cfg)
}

/// Truncated quadrature for oscillatory non-decaying integrands.
///
/// The range [-T, T] is sliced into panels no wider than a quarter of the
/// estimated oscillation period; T starts at the configured half-width and
/// doubles while the caller-supplied tail bound stays above abs_tol/2 and
/// the panel budget allows. The final tail bound is folded into the error
/// estimate.
pub fn integrate_real_line_oscillatory<F, T>(
    f: F,
    freq: f64,
    tail_bound: T,
    cfg: &QuadratureConfig,
) -> QuadOutcome
where
    F: Fn(f64) -> Complex64,
    T: Fn(f64) -> f64,
{
    let quarter_period = if freq > 0.0 { FRAC_PI_2 / freq } else { 16.0 };
    let width = quarter_period.min(16.0).max(1e-3);

    let mut halfwidth = cfg.truncation_halfwidth;
    let budget = cfg.max_oscillatory_panels.max(16) as f64;
    // Shrink to the budget if even the initial slicing is too fine.
    if 2.0 * halfwidth / width > budget {
        halfwidth = 0.5 * budget * width;
    }
    while tail_bound(halfwidth) > 0.5 * cfg.abs_tol
        && 2.0 * halfwidth <= cfg.max_truncation_halfwidth
        && 4.0 * halfwidth / width <= budget
    {
        halfwidth *= 2.0;
    }

    let n = ((2.0 * halfwidth / width).ceil() as usize).max(2);
    let step = 2.0 * halfwidth / n as f64;
    let segments: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            (
                -halfwidth + i as f64 * step,
                -halfwidth + (i + 1) as f64 * step,
            )
        })
        .collect();

    let mut out = adapt(&f, &segments, cfg.abs_tol, cfg.rel_tol, 2000);
    out.tail_bound = tail_bound(halfwidth);
    out.oscillatory = true;
    out
}

/// Crude spectral probe: counts sign changes of Re f and Im f on a uniform
/// grid and converts the count to a dominant-frequency estimate.
#[derive(Debug, Clone, Copy)]
pub struct OscillationProbe {
    pub crossings: usize,
    /// Dominant angular frequency estimate (0 when not oscillatory).
    pub freq: f64,
    pub max_abs: f64,
    /// Largest |f| sampled far outside the probe window; distinguishes
    /// persistent oscillation (trigonometric sums) from decaying wiggles.
    pub far_field: f64,
}

pub fn probe_oscillation<F: Fn(f64) -> Complex64>(f: F, halfwidth: f64, n: usize) -> OscillationProbe {
    let n = n.max(16);
    let values: Vec<Complex64> = (0..n)
        .map(|i| f(-halfwidth + 2.0 * halfwidth * i as f64 / (n - 1) as f64))
        .collect();
    let max_abs = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 1e-9 * max_abs;

    let count = |part: &dyn Fn(&Complex64) -> f64| {
        let mut crossings = 0usize;
        let mut last_sign = 0i8;
        for v in &values {
            let x = part(v);
            if x.abs() <= floor {
                continue;
            }
            let s = if x > 0.0 { 1 } else { -1 };
            if last_sign != 0 && s != last_sign {
                crossings += 1;
            }
            last_sign = s;
        }
        crossings
    };

    let crossings = count(&|v: &Complex64| v.re).max(count(&|v: &Complex64| v.im));
    let freq = PI * crossings as f64 / (2.0 * halfwidth);
    let far_field = [3.0, 8.0, 31.0, 101.0]
        .iter()
        .flat_map(|&m| {
            let t = m * halfwidth;
            [f(t).norm(), f(-t).norm()]
        })
        .fold(0.0, f64::max);
    OscillationProbe { crossings, freq, max_abs, far_field }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_integral_over_real_line() {
        let cfg = QuadratureConfig::default();
        let out = integrate_real_line(|t| re((-t * t).exp()), &cfg);
        assert!(out.converged);
        assert_abs_diff_eq!(out.value.re, PI.sqrt(), epsilon = 1e-12);
        assert!(out.value.im.abs() < 1e-14);
    }

    #[test]
    fn algebraic_tail_needs_no_truncation() {
        let cfg = QuadratureConfig::default();
        let out = integrate_real_line(|t| re(1.0 / (1.0 + t * t)), &cfg);
        assert_abs_diff_eq!(out.value.re, PI, epsilon = 1e-10);
        assert_eq!(out.tail_bound, 0.0);
    }

    #[test]
    fn half_line_laplace_transform() {
        let cfg = QuadratureConfig::default();
        let out = integrate_over(|t| re((-3.0 * t).exp()), Some(0.0), None, &cfg);
        assert_abs_diff_eq!(out.value.re, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn shifted_lower_half_line() {
        let cfg = QuadratureConfig::default();
        // int_{-inf}^{-1} e^{t} dt = e^{-1}
        let out = integrate_over(|t| re(t.exp()), None, Some(-1.0), &cfg);
        assert_abs_diff_eq!(out.value.re, (-1.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn kink_at_zero_is_resolved() {
        let cfg = QuadratureConfig::default();
        let out = integrate_real_line(|t| re((-t.abs()).exp()), &cfg);
        assert_abs_diff_eq!(out.value.re, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn oscillatory_poisson_against_cosine() {
        // (1/pi) int y/(t^2+y^2) cos(t) dt = e^{-y}
        let cfg = QuadratureConfig::default();
        let y = 1.5;
        let out = integrate_real_line_oscillatory(
            |t| re(y / (PI * (t * t + y * y)) * t.cos()),
            1.0,
            |big_t| 2.0 * y / (PI * big_t),
            &cfg,
        );
        assert!(out.oscillatory);
        assert_abs_diff_eq!(out.value.re, (-y).exp(), epsilon = 1e-7);
    }

    #[test]
    fn probe_detects_single_frequency() {
        let p = probe_oscillation(|t| Complex64::new(0.0, t).exp(), 64.0, 513);
        assert!(p.crossings > 30);
        assert!((p.freq - 1.0).abs() < 0.1);
    }

    #[test]
    fn probe_ignores_monotone_decay() {
        let p = probe_oscillation(|t| re((-t * t).exp()), 64.0, 513);
        assert_eq!(p.crossings, 0);
        assert_eq!(p.freq, 0.0);
    }

    #[test]
    fn roundoff_floor_tracks_cancellation() {
        // Integrand with huge cancelling lobes: the value is ~0 but the
        // roundoff floor must reflect the 1e8 L1 mass.
        let cfg = QuadratureConfig::default();
        let out = integrate_interval(|t| re(1e8 * t), -1.0, 1.0, &cfg);
        assert!(out.value.norm() < 1e-6);
        assert!(out.roundoff > 1e-10);
    }
}
