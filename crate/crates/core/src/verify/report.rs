use std::collections::BTreeMap;
use std::fmt;

/// Denominator floor for identically-zero reference scales.
pub const SCALE_FLOOR: f64 = f64::MIN_POSITIVE;

/// Outcome of one numerical check: `relative = residual / max(scale, floor)`
/// and `passed ⇔ relative ≤ tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub name: String,
    pub residual_norm: f64,
    pub reference_scale: f64,
    pub relative: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: BTreeMap<String, String>,
}

impl ResidualReport {
    pub fn new(
        name: impl Into<String>,
        residual_norm: f64,
        reference_scale: f64,
        tolerance: f64,
    ) -> Self {
        let relative = residual_norm / reference_scale.max(SCALE_FLOOR);
        ResidualReport {
            name: name.into(),
            residual_norm,
            reference_scale,
            relative,
            tolerance,
            // NaN residuals fail
            passed: relative <= tolerance,
            context: BTreeMap::new(),
        }
    }

    /// Re-evaluates the verdict against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.relative <= tolerance;
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.context.insert(key.into(), value.to_string());
        self
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: relative {:.3e} (tolerance {:.1e}, residual {:.3e}, scale {:.3e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.relative,
            self.tolerance,
            self.residual_norm,
            self.reference_scale
        )
    }
}

/// True when every report passed.
pub fn all_passed(reports: &[ResidualReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
