//! Spectral geometry of the mode cloud and consistency rules between the
//! conditioning scan and declared facts about the untruncated family.

use alloc::vec::Vec;
use core::fmt;

use crate::bfc::BfcOutcome;
use crate::spectral::ValidatedSystem;

/// Findings of [`consistency_rules`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleFlag {
    /// A conditioning certificate alongside declared unbounded real spectrum.
    /// A genuine system cannot have both; on a truncation it means the
    /// section is too coarse for the scan grid.
    ContradictionPrap,
    /// Conditioning found and the real spectrum is declared bounded: the
    /// semigroup should extend to a group.
    ExpectGroup { group_extendable: bool },
    /// Unbounded real spectrum is declared, so no conditioning pair should exist.
    NoBfcExpected,
    /// Conditioning found with a declared compact resolvent: only
    /// finite-dimensional state spaces are compatible.
    FiniteDimExpected,
}

impl RuleFlag {
    pub fn name(&self) -> &'static str {
        match self {
            RuleFlag::ContradictionPrap => "ContradictionPrap",
            RuleFlag::ExpectGroup { .. } => "ExpectGroup",
            RuleFlag::NoBfcExpected => "NoBfcExpected",
            RuleFlag::FiniteDimExpected => "FiniteDimExpected",
        }
    }
}

impl fmt::Display for RuleFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleFlag::ExpectGroup { group_extendable } => {
                write!(f, "ExpectGroup(group_extendable={group_extendable})")
            }
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDiagnostics {
    pub sup_re: f64,
    pub inf_re: f64,
    pub strip_width: f64,
    /// The section has bounded real parts and the family is not declared unbounded.
    pub group_extendable: bool,
    pub flags: Vec<RuleFlag>,
}

pub fn spectral_summary(sys: &ValidatedSystem) -> SpectralDiagnostics {
    let sup_re = sys.max_re();
    let inf_re = sys.min_re();
    let declared_unbounded = sys.metadata().is_some_and(|m| m.re_spectrum_unbounded);
    SpectralDiagnostics {
        sup_re,
        inf_re,
        strip_width: sup_re - inf_re,
        group_extendable: sup_re.is_finite() && !declared_unbounded,
        flags: Vec::new(),
    }
}

pub fn consistency_rules(sys: &ValidatedSystem, bfc: &BfcOutcome) -> Vec<RuleFlag> {
    let mut flags = Vec::new();
    let found = bfc.certificate().is_some();
    let Some(meta) = sys.metadata() else {
        return flags;
    };
    if meta.re_spectrum_unbounded {
        if found {
            flags.push(RuleFlag::ContradictionPrap);
        }
        flags.push(RuleFlag::NoBfcExpected);
    } else if found {
        flags.push(RuleFlag::ExpectGroup { group_extendable: spectral_summary(sys).group_extendable });
    }
    if found && meta.compact_resolvent {
        flags.push(RuleFlag::FiniteDimExpected);
    }
    flags
}

/// Summary with the rule findings attached.
pub fn diagnose(sys: &ValidatedSystem, bfc: &BfcOutcome) -> SpectralDiagnostics {
    SpectralDiagnostics { flags: consistency_rules(sys, bfc), ..spectral_summary(sys) }
}
