//! Warning codes attached to transforms, verdicts and reports.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WarningCode {
    /// A truncated integration range left a tail bound above the tolerance.
    Truncation,
    /// The adaptive loop ran out of panel budget; the value is best-effort.
    BudgetExceeded,
    /// The integrand was routed through the oscillation-aware path.
    Oscillatory,
    /// Decay class of the candidate is unknown; classification-dependent
    /// results are best-effort.
    UnknownDecay,
    /// A theorem path was forced outside its hypotheses.
    PathNotApplicable,
    /// The Gram matrix was not Hermitian within tolerance and was symmetrized.
    NonHermitianSymmetrized,
    /// Monotonicity verdict and positive-definiteness oracle disagree.
    OracleDisagreement,
}

impl WarningCode {
    /// Codes that downgrade a clean PASS to INCONCLUSIVE. Informational
    /// codes (oscillatory routing, forced paths, ...) do not.
    pub fn demotes(self) -> bool {
        matches!(
            self,
            WarningCode::BudgetExceeded | WarningCode::UnknownDecay
        )
    }
}

impl fmt::Display for WarningCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WarningCode::Truncation => "truncation",
            WarningCode::BudgetExceeded => "budget-exceeded",
            WarningCode::Oscillatory => "oscillatory",
            WarningCode::UnknownDecay => "unknown-decay",
            WarningCode::PathNotApplicable => "path-not-applicable",
            WarningCode::NonHermitianSymmetrized => "non-hermitian-symmetrized",
            WarningCode::OracleDisagreement => "oracle-disagreement",
        };
        f.write_str(s)
    }
}
