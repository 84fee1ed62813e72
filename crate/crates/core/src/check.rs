//! Outcome records shared by every verification step.

use alloc::string::String;
use core::fmt;

use crate::cuboid::IdentityName;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reserved for facts this toolkit records but cannot establish itself.
    ExternalAssumption,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ExternalAssumption => "external-assumption",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Identifier of a check. The derived order is the certificate order:
/// identities, then the curve, then parameter admissibility, then the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Identity(IdentityName),
    CurvePoints,
    CurveCompleteness,
    NoAdmissibleParameter,
    RootSweep,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Identity(name) => name.as_str(),
            CheckId::CurvePoints => "CURVE_POINTS",
            CheckId::CurveCompleteness => "CURVE_COMPLETENESS",
            CheckId::NoAdmissibleParameter => "NO_ADMISSIBLE_PARAMETER",
            CheckId::RootSweep => "ROOT_SWEEP",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check: CheckId,
    pub status: CheckStatus,
    /// The statement being checked, in mathematical terms.
    pub citation: String,
    /// Canonical text of the compared objects, or the counterexample.
    pub witness: String,
}

impl CheckResult {
    pub fn new(check: CheckId, status: CheckStatus, citation: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { check, status, citation: citation.into(), witness: witness.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}
