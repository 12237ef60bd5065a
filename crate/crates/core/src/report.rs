//! Named inequality outcomes with signed margins.
//!
//! Margins are reported in the natural units of each inequality; positive
//! means satisfied. Downstream consumers (plots, region scans) want the raw
//! signed values, so no normalization is applied.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ConditionEntry {
    /// Name of the checked condition, e.g. "A2" or "L4".
    pub condition: String,
    pub holds: bool,
    /// Signed distance of the inequality from equality; positive = satisfied.
    pub margin: f64,
    /// Whether the underlying inequality is strict.
    pub strict: bool,
    /// False when the condition's hypothesis does not apply to the input.
    pub applicable: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConditionReport {
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, condition: &str, margin: f64, strict: bool) {
        let holds = if strict { margin > 0.0 } else { margin >= 0.0 };
        self.entries.push(ConditionEntry {
            condition: condition.to_string(),
            holds,
            margin,
            strict,
            applicable: true,
        });
    }

    /// Record a condition whose hypothesis is not met; counts as holding.
    pub fn push_not_applicable(&mut self, condition: &str) {
        self.entries.push(ConditionEntry {
            condition: condition.to_string(),
            holds: true,
            margin: 0.0,
            strict: false,
            applicable: false,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, condition: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.condition == condition)
    }

    /// First failing entry, if any.
    pub fn first_failure(&self) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| !e.holds)
    }

    pub fn extend(&mut self, other: ConditionReport) {
        self.entries.extend(other.entries);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_follows_margin_and_strictness() {
        let mut r = ConditionReport::new();
        r.push("strict-pos", 0.5, true);
        r.push("strict-zero", 0.0, true);
        r.push("lax-zero", 0.0, false);
        assert!(r.get("strict-pos").unwrap().holds);
        assert!(!r.get("strict-zero").unwrap().holds);
        assert!(r.get("lax-zero").unwrap().holds);
        assert!(!r.all_hold());
        assert_eq!(r.first_failure().unwrap().condition, "strict-zero");
    }

    #[test]
    fn json_shape() {
        let mut r = ConditionReport::new();
        r.push("A1", 0.3, false);
        r.push_not_applicable("C3");
        let json = r.to_json();
        assert!(json.contains("\"condition\": \"A1\""));
        assert!(json.contains("\"holds\": true"));
        assert!(json.contains("\"margin\": 0.3"));
        assert!(json.contains("\"strict\": false"));
        assert!(json.contains("\"applicable\": false"));
    }
}
