use serde::Serialize;

/// One named identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check_name: String,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Ordered list of identity checks. Serializes as a bare JSON array of
/// `{check_name, max_deviation, pass}` objects.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AlgebraReport {
    checks: Vec<Check>,
}

impl AlgebraReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check that passes iff `deviation <= tol` (NaN fails).
    pub fn record(&mut self, name: impl Into<String>, deviation: f64, tol: f64) -> &mut Self {
        self.checks.push(Check {
            check_name: name.into(),
            max_deviation: deviation,
            pass: deviation <= tol,
        });
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: AlgebraReport) {
        self.checks.extend(other.checks);
    }

    /// Returns a copy with every check name prefixed by `scope`.
    pub fn scoped(mut self, scope: &str) -> Self {
        for c in &mut self.checks {
            c.check_name = format!("{scope}: {}", c.check_name);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_deviation_fails() {
        let mut r = AlgebraReport::new();
        r.record("a", 0.0, 1e-14).record("b", f64::NAN, 1e-14);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_shape() {
        let mut r = AlgebraReport::new();
        r.record("x", 0.5, 1.0);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"check_name": "x", "max_deviation": 0.5, "pass": true}])
        );
    }
}
