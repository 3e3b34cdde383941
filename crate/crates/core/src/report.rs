use serde::Serialize;

/// A single failed law together with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
}

/// Outcome of checking a family of laws. `passed` holds iff there are no violations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push(&mut self, law: impl Into<String>, witness: Vec<usize>) {
        self.violations.push(Violation { law: law.into(), witness });
    }

    /// Records a violation of `law` for each witness where `holds` is false.
    pub(crate) fn check_all<I>(&mut self, law: &str, witnesses: I, mut holds: impl FnMut(&[usize]) -> bool)
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        for w in witnesses {
            if !holds(&w) {
                self.push(law, w);
            }
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    /// First witness recorded for `law`, if any.
    pub fn witness(&self, law: &str) -> Option<&[usize]> {
        self.violations.iter().find(|v| v.law == law).map(|v| v.witness.as_slice())
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("VerificationReport", 2)?;
        st.serialize_field("passed", &self.passed())?;
        st.serialize_field("violations", &self.violations)?;
        st.end()
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return f.write_str("passed");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{} at {:?}", v.law, v.witness)).collect();
        write!(f, "{} violation(s): {}", parts.len(), parts.join("; "))
    }
}
