//! Check results and the JSON report format shared by the toolkit and the CLI.

use serde::Serialize;
use serde_json::Value;

/// Version of the report layout; bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Traceability anchors attached to every check.
pub mod anchors {
    pub const T1: &str = "T1 identity triangle";
    pub const T2: &str = "T2 cone completes f";
    pub const T3: &str = "T3 closed under isomorphism";
    pub const T4: &str = "T4 rotation";
    pub const T5: &str = "T5 composition axiom";
    pub const SIGNS: &str = "Prop 3.1 insert two signs";
    pub const FILLING: &str = "Prop 3.2 filling morphism";
    pub const VANISH_GF: &str = "Prop 3.3 gf=0";
    pub const VANISH_HG: &str = "Prop 3.3 hg=0";
    pub const VANISH_FH: &str = "Prop 3.3 (Σf)h=0";
    pub const HOM_EXACT: &str = "Prop 3.4 Hom(W,-) homological";
    pub const PUPPE: &str = "Puppe sequence";
    pub const BRAID: &str = "braid diagram";
    pub const FILLING_ISO: &str = "Prop 4.1 filling is iso";
    pub const ISO_CONE: &str = "Cor 4.7 iso iff zero cone";
    pub const CONE_SHIFT: &str = "Remark 4.4 C_Σf ≅ ΣC_f";
    pub const WEAK_COKERNEL: &str = "Remark 4.6 weak cokernel";
    pub const WEAK_KERNEL: &str = "Remark 4.6 weak kernel";
    pub const UNROTATE: &str = "Prop 4.8 unrotation";
    pub const BIPRODUCT: &str = "Lemma 4.9 biproduct equations";
    pub const SPLIT: &str = "Prop 4.10 split mono";
    pub const GRID_SQUARE: &str = "Lemma 5.1 commuting square";
    pub const GRID_CORNER: &str = "Lemma 5.1 anticommuting corner";
    pub const GRID_LINES: &str = "Lemma 5.1 rows and columns";
    pub const BIPRODUCT_AXIOMS: &str = "Cor 5.2 biproduct from axioms";
    pub const SUM: &str = "Prop 5.3 sum of triangles";
    pub const TRIPLE: &str = "Prop 5.4 triple composition";
    pub const ADDITIVE: &str = "additive structure";
    pub const STRICT_SHIFT: &str = "strict suspension";
    pub const SUBCATEGORY: &str = "Def 6.2 triangulated subcategory";
    pub const THICK: &str = "Def 6.4 thick";
    pub const THICK_CLOSURE: &str = "Prop 6.5 thick closure";
    pub const THICK_CRIT: &str = "Cor 6.7 thickness criterion";
    pub const TWO_OF_THREE: &str = "Lemma 7.1 2-out-of-3";
    pub const PUSHOUT: &str = "Prop 7.2 homotopy pushout";
    pub const FRACTIONS: &str = "Prop 7.2 calculus of fractions";
    pub const FRACTION_EQ: &str = "Lemma 7.4 fraction equality";
    pub const LOC_ISO_PAIR: &str = "Lemma 7.5 Loc iso via gf, fh";
    pub const LOC_ISO: &str = "Prop 7.6 Loc iso";
    pub const LOC_TRIANGULATION: &str = "Thm 7.8 localized triangulation";
    pub const LOC_FACTOR: &str = "Cor 7.8.1 factorization";
    pub const LOC_KERNEL: &str = "Prop 7.9 kernel of Loc";
}

/// One executed check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub anchor: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Checks(pub Vec<Check>);

impl Checks {
    pub fn new() -> Self {
        Checks(Vec::new())
    }

    pub fn push(&mut self, anchor: &str, passed: bool, detail: impl Into<Option<String>>) {
        self.0.push(Check { anchor: anchor.to_string(), passed, detail: detail.into() });
    }

    /// Records `passed`, attaching `detail()` only on failure.
    pub fn expect(&mut self, anchor: &str, passed: bool, detail: impl FnOnce() -> String) {
        let d = if passed { None } else { Some(detail()) };
        self.push(anchor, passed, d);
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.0.iter().filter(|c| !c.passed).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether some check under `anchor` ran and all such checks passed.
    pub fn passed(&self, anchor: &str) -> bool {
        let mut seen = false;
        for c in self.0.iter().filter(|c| c.anchor == anchor) {
            if !c.passed {
                return false;
            }
            seen = true;
        }
        seen
    }
}

/// Aggregate of all checks under one anchor.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub anchor: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<String>,
}

const MAX_COUNTEREXAMPLES: usize = 3;

/// A machine-readable run report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub instance: String,
    pub seed: Option<u64>,
    pub entries: Vec<ReportEntry>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, instance: &str, seed: Option<u64>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            instance: instance.to_string(),
            seed,
            entries: Vec::new(),
            data: Value::Object(Default::default()),
        }
    }

    /// Folds checks into per-anchor entries, keeping first-seen order.
    pub fn absorb(&mut self, checks: &Checks) {
        for c in &checks.0 {
            let idx = match self.entries.iter().position(|e| e.anchor == c.anchor) {
                Some(i) => i,
                None => {
                    self.entries.push(ReportEntry {
                        anchor: c.anchor.clone(),
                        passed: 0,
                        failed: 0,
                        counterexamples: Vec::new(),
                    });
                    self.entries.len() - 1
                }
            };
            let e = &mut self.entries[idx];
            if c.passed {
                e.passed += 1;
            } else {
                e.failed += 1;
                if e.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    e.counterexamples.push(c.detail.clone().unwrap_or_default());
                }
            }
        }
    }

    pub fn set_data(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), value);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.failed == 0)
    }

    pub fn failed_count(&self) -> usize {
        self.entries.iter().map(|e| e.failed).sum()
    }

    pub fn entry(&self, anchor: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.anchor == anchor)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
