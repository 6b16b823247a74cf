//! Library side of the command-line front end: run configuration, the
//! machine-readable report, and the check / validate pipelines.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{CharFnError, Result};
use crate::model::{
    catalog_entry, CandidateFunction, DecayClass, SampledData, ScreenReport, SpectralMeasure,
    TailModel,
};
use crate::monotonicity::{
    verdict_theorem1_forced, verdict_theorem2, verdict_theorem3, Decision, MonotonicityReport,
    OffsetInterval, TheoremPath, Verdict, VerdictConfig, Violation,
};
use crate::oracle::{
    bochner_test, default_kernel_ft_battery, validate_kernel_ft, BochnerOutcome, GramSpec,
};
use crate::transforms::{
    cauchy_kernel_dy, cauchy_transform, modified_transform_from_parts, poisson_cauchy_identity_check,
    ImaginaryAxisGrid, QuadratureConfig,
};
use crate::warnings::WarningCode;

pub const REPORT_SCHEMA: &str = "charfn.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathChoice {
    Auto,
    T1,
    T2,
    T3,
}

impl std::str::FromStr for PathChoice {
    type Err = CharFnError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(PathChoice::Auto),
            "t1" => Ok(PathChoice::T1),
            "t2" => Ok(PathChoice::T2),
            "t3" => Ok(PathChoice::T3),
            other => Err(CharFnError::InvalidParameter(format!(
                "unknown theorem path '{other}' (expected auto|t1|t2|t3)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = CharFnError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(CharFnError::InvalidParameter(format!(
                "unknown format '{other}' (expected json|text)"
            ))),
        }
    }
}

/// Everything a run depends on; echoed verbatim into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub theorem: PathChoice,
    pub y_min: f64,
    pub y_max: f64,
    pub points_per_side: usize,
    pub max_order: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub tol_sign: f64,
    /// Extra Gram points beyond the uniform grid.
    pub gram_extra: usize,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            theorem: PathChoice::Auto,
            y_min: 1e-2,
            y_max: 1e2,
            points_per_side: 64,
            max_order: 10,
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            tol_sign: 1e-7,
            gram_extra: 8,
            seed: None,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn verdict_config(&self) -> Result<VerdictConfig> {
        Ok(VerdictConfig {
            grid: ImaginaryAxisGrid::new(self.y_min, self.y_max, self.points_per_side)?,
            max_order: self.max_order,
            tol_sign: self.tol_sign,
            quad: QuadratureConfig {
                abs_tol: self.abs_tol,
                rel_tol: self.rel_tol,
                ..QuadratureConfig::default()
            },
            ..VerdictConfig::default()
        })
    }
}

/// Where the candidate comes from.
#[derive(Debug, Clone)]
pub enum SpecSource {
    Catalog {
        name: String,
        params: BTreeMap<String, f64>,
    },
    MeasureFile(PathBuf),
    SampleFile(PathBuf),
}

pub fn build_candidate(source: &SpecSource) -> Result<CandidateFunction> {
    match source {
        SpecSource::Catalog { name, params } => catalog_entry(name, params),
        SpecSource::MeasureFile(path) => {
            let m = SpectralMeasure::from_json_file(path)?;
            CandidateFunction::from_measure(m)
        }
        SpecSource::SampleFile(path) => Ok(CandidateFunction::from_samples(
            SampledData::from_csv_file(path, TailModel::Zero)?,
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub source: String,
    pub verdict: Decision,
    pub theorem_requested: PathChoice,
    pub theorem_path: TheoremPath,
    pub decay_class: DecayClass,
    pub screen: ScreenReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset_interval: Option<OffsetInterval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset_used: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_report: Option<MonotonicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_report: Option<MonotonicityReport>,
    pub oracle: Option<BochnerOutcome>,
    /// Whether the decisive verdict matches the oracle outcome; absent for
    /// INCONCLUSIVE verdicts or when the oracle was skipped.
    pub oracle_agrees: Option<bool>,
    pub violations: Vec<Violation>,
    pub warnings: Vec<WarningCode>,
    pub config_digest: String,
    pub timing_ms: u64,
    pub config: RunConfig,
}

fn theorem_verdict(
    f: &CandidateFunction,
    choice: PathChoice,
    vcfg: &VerdictConfig,
) -> Result<(Verdict, Vec<WarningCode>)> {
    let mut extra = Vec::new();
    let verdict = match choice {
        PathChoice::T1 => verdict_theorem1_forced(f, vcfg),
        PathChoice::T2 => verdict_theorem2(f, vcfg),
        PathChoice::T3 => match verdict_theorem3(f, vcfg) {
            Ok(v) => v,
            Err(CharFnError::NotApplicable(_)) => {
                // fall back to the general route, flagged
                extra.push(WarningCode::PathNotApplicable);
                verdict_theorem2(f, vcfg)
            }
            Err(e) => return Err(e),
        },
        PathChoice::Auto => {
            if f.decay_class() == DecayClass::CauchyIntegrable {
                verdict_theorem3(f, vcfg)?
            } else {
                verdict_theorem2(f, vcfg)
            }
        }
    };
    Ok((verdict, extra))
}

fn with_thread_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(job),
        _ => job(),
    }
}

/// The full check pipeline: screen, theorem-path verdict, oracle
/// cross-check, report.
pub fn run(source: &SpecSource, cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let f = build_candidate(source)?;
    let vcfg = cfg.verdict_config()?;

    let (mut verdict, extra) =
        with_thread_pool(cfg.threads, || theorem_verdict(&f, cfg.theorem, &vcfg))?;
    for w in extra {
        if !verdict.warnings.contains(&w) {
            verdict.warnings.push(w);
        }
    }

    let gram = GramSpec::standard(cfg.gram_extra, cfg.seed);
    let oracle = bochner_test(&f, &gram)?;
    for w in oracle.warnings() {
        if !verdict.warnings.contains(&w) {
            verdict.warnings.push(w);
        }
    }
    let oracle_agrees = match verdict.decision {
        Decision::Pass => Some(oracle.pass),
        Decision::Fail => Some(!oracle.pass),
        Decision::Inconclusive => None,
    };
    if oracle_agrees == Some(false) && !verdict.warnings.contains(&WarningCode::OracleDisagreement)
    {
        verdict.warnings.push(WarningCode::OracleDisagreement);
    }

    let source_label = match source {
        SpecSource::Catalog { .. } => f.source().to_string(),
        SpecSource::MeasureFile(p) => format!("measure-file:{}", p.display()),
        SpecSource::SampleFile(p) => format!("sample-file:{}", p.display()),
    };

    Ok(Report {
        schema: REPORT_SCHEMA.to_string(),
        command: "check".to_string(),
        source: source_label,
        verdict: verdict.decision,
        theorem_requested: cfg.theorem,
        theorem_path: verdict.theorem_path,
        decay_class: f.decay_class(),
        screen: verdict.screen,
        offset_interval: verdict.offset_interval,
        offset_used: verdict.offset_used,
        upper_report: verdict.upper_report,
        lower_report: verdict.lower_report,
        oracle: Some(oracle),
        oracle_agrees,
        violations: verdict.violations,
        warnings: verdict.warnings,
        config_digest: verdict.config_digest,
        timing_ms: start.elapsed().as_millis() as u64,
        config: cfg.clone(),
    })
}

// ---------------------------------------------------------------------------
// Self-validation battery.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    /// Worst observed deviation, normalized so that `threshold` is the gate.
    pub deviation: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema: String,
    pub command: String,
    pub checks: Vec<ValidationCheck>,
    pub pass: bool,
    pub timing_ms: u64,
    pub config: RunConfig,
}

fn push_check(checks: &mut Vec<ValidationCheck>, name: &str, deviation: f64, threshold: f64) {
    checks.push(ValidationCheck {
        name: name.to_string(),
        deviation,
        threshold,
        pass: deviation <= threshold,
    });
}

/// Runs the numeric self-test battery: kernel Fourier transforms against
/// direct quadrature, the Poisson / Cauchy boundary identity on the
/// integrable catalog, and derivative-order consistency by finite
/// differences.
pub fn validate(cfg: &RunConfig) -> Result<ValidationReport> {
    let start = Instant::now();
    let quad = QuadratureConfig {
        abs_tol: cfg.abs_tol,
        rel_tol: cfg.rel_tol,
        ..QuadratureConfig::default()
    };
    let mut checks = Vec::new();

    with_thread_pool::<Result<()>>(cfg.threads, || {
        // 1. closed-form kernel Fourier transform vs oscillation-aware quadrature
        let battery = default_kernel_ft_battery();
        let v = validate_kernel_ft(&battery, &quad)?;
        push_check(&mut checks, "kernel-fourier-battery", v.max_abs_deviation, 1e-6);

        // 2. boundary-value identity on the integrable catalog
        let pairs = [(0.0, 1.0), (0.5, 0.5), (1.0, 2.0), (0.3, 1.5), (2.0, 1.0)];
        let mut worst = 0.0f64;
        for name in ["gaussian", "laplace", "cauchy"] {
            let f = catalog_entry(name, &BTreeMap::new())?;
            for &(x, y) in &pairs {
                let chk = poisson_cauchy_identity_check(&f, x, y, &quad)?;
                worst = worst.max(chk.deviation);
            }
        }
        push_check(&mut checks, "poisson-cauchy-identity", worst, 1e-8);

        // 3. kernel derivative vs finite difference of the previous order
        let mut worst = 0.0f64;
        for &(y, t) in &[(1.0, 0.5), (0.4, -2.0), (2.5, 3.0)] {
            let h = 1e-4;
            let d2 = cauchy_kernel_dy(2, y, t)?;
            let fd = (cauchy_kernel_dy(1, y + h, t)? - cauchy_kernel_dy(1, y - h, t)?) / (2.0 * h);
            worst = worst.max((d2 - fd).norm() / d2.norm());
        }
        push_check(&mut checks, "kernel-derivative-fd", worst, 1e-6);

        // 4. transform derivative orders vs finite differences, quadrature route
        let f = catalog_entry("gaussian", &BTreeMap::new())?;
        let mut worst = 0.0f64;
        for n in 1..=cfg.max_order.min(10) {
            for &y in &[0.1, 0.5, 1.0, 2.0] {
                let h = 5e-4 * y;
                let dn = cauchy_transform(&f, y, n, &quad)?.value;
                let up = cauchy_transform(&f, y + h, n - 1, &quad)?.value;
                let dw = cauchy_transform(&f, y - h, n - 1, &quad)?.value;
                let fd = (up - dw) / (2.0 * h);
                let scale = (1e-5 * dn.norm()).max(1e-8);
                worst = worst.max((dn - fd).norm() / scale);
            }
        }
        push_check(&mut checks, "transform-derivative-fd", worst, 1.0);

        // 5. fast-path derivative orders vs finite differences
        let two_atom = catalog_entry("two-atom", &BTreeMap::new())?;
        let parts = two_atom.spectral_parts().expect("catalog entry is structured");
        let mut worst = 0.0f64;
        for n in 1..=cfg.max_order.min(10) {
            for &y in &[0.5f64, -0.5, 2.0, -2.0] {
                let h = 5e-4 * y.abs();
                let dn = modified_transform_from_parts(parts, y, n, &quad)?.value;
                let up = modified_transform_from_parts(parts, y + h, n - 1, &quad)?.value;
                let dw = modified_transform_from_parts(parts, y - h, n - 1, &quad)?.value;
                let fd = (up - dw) / (2.0 * h);
                let scale = (1e-5 * dn.norm()).max(1e-8);
                worst = worst.max((dn - fd).norm() / scale);
            }
        }
        push_check(&mut checks, "fast-path-derivative-fd", worst, 1.0);

        Ok(())
    })?;

    let pass = checks.iter().all(|c| c.pass);
    Ok(ValidationReport {
        schema: REPORT_SCHEMA.to_string(),
        command: "validate".to_string(),
        checks,
        pass,
        timing_ms: start.elapsed().as_millis() as u64,
        config: cfg.clone(),
    })
}

// ---------------------------------------------------------------------------
// Rendering.

pub fn render_report_text(r: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, format!("source          {}", r.source));
    push(&mut out, format!("verdict         {:?}", r.verdict).to_uppercase().replace("VERDICT", "verdict"));
    push(&mut out, format!("theorem path    {:?} (requested {:?})", r.theorem_path, r.theorem_requested));
    push(&mut out, format!("decay class     {:?}", r.decay_class));
    push(
        &mut out,
        format!(
            "screen          pass={} f0_dev={:.2e} hermitian_dev={:.2e} max|f|={:.6}",
            r.screen.pass, r.screen.f0_deviation, r.screen.worst_hermitian.1, r.screen.worst_modulus.1
        ),
    );
    if let Some(iv) = &r.offset_interval {
        push(
            &mut out,
            format!(
                "offset interval [{:.6e}, {:.6e}] feasible={} used={:.6e}",
                iv.lower,
                iv.upper,
                iv.feasible,
                r.offset_used.unwrap_or(f64::NAN)
            ),
        );
    }
    for (label, rep) in [("upper", &r.upper_report), ("lower", &r.lower_report)] {
        if let Some(rep) = rep {
            push(
                &mut out,
                format!(
                    "{label} side      worst={:.3e} at order {} y={:.3e}; imag_max={:.2e}",
                    rep.worst_violation.value,
                    rep.worst_violation.order,
                    rep.worst_violation.y,
                    rep.imag_max
                ),
            );
        }
    }
    if let Some(o) = &r.oracle {
        push(
            &mut out,
            format!(
                "oracle          min_eig={:.6e} pass={} ({} points)",
                o.min_eigenvalue, o.pass, o.n_points
            ),
        );
    }
    if let Some(a) = r.oracle_agrees {
        push(&mut out, format!("oracle agrees   {a}"));
    }
    for v in &r.violations {
        push(
            &mut out,
            format!(
                "violation       {:?} value={:.6e} band={:.2e} at {}{}",
                v.kind,
                v.value,
                v.band,
                v.location,
                v.order.map_or(String::new(), |n| format!(" order {n}"))
            ),
        );
    }
    for w in &r.warnings {
        push(&mut out, format!("warning         {w}"));
    }
    push(&mut out, format!("elapsed         {} ms", r.timing_ms));
    out
}

pub fn render_validation_text(r: &ValidationReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out.push_str(&format!(
            "{}  {:32} deviation={:.3e} threshold={:.1e}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.deviation,
            c.threshold
        ));
    }
    out.push_str(&format!(
        "{}  overall ({} ms)\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.timing_ms
    ));
    out
}
