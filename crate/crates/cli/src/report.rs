use std::fmt::Write;

use pdm_core::Parity;

use crate::format::fmt12;
use crate::reference::ReferenceRow;

pub const REL_TOL: f64 = 1e-4;
/// Absolute tolerance for reference values below 1 in magnitude.
pub const ABS_TOL: f64 = 1e-3;

pub fn within_tolerance(computed: f64, reference: f64) -> bool {
    let d = (computed - reference).abs();
    if reference.abs() < 1.0 {
        d <= ABS_TOL
    } else {
        d <= REL_TOL * reference.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub column: String,
    pub label: String,
    pub tag: &'static str,
    pub reference: f64,
    /// `None` when the solver found fewer values than the reference lists.
    pub computed: Option<f64>,
    pub parity: Option<Parity>,
    pub pass: bool,
}

impl ReportRow {
    pub fn abs_dev(&self) -> Option<f64> {
        self.computed.map(|c| (c - self.reference).abs())
    }

    pub fn rel_dev(&self) -> Option<f64> {
        self.abs_dev().map(|d| d / self.reference.abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountCheck {
    pub column: String,
    pub expected: usize,
    pub computed: Option<usize>,
}

impl CountCheck {
    pub fn pass(&self) -> bool {
        self.computed == Some(self.expected)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TableReport {
    pub table: u8,
    pub rows: Vec<ReportRow>,
    pub counts: Vec<CountCheck>,
    /// Computed values past the end of a reference column.
    pub unmatched: Vec<(String, f64)>,
    /// Solver failures; any entry marks the report incomplete.
    pub errors: Vec<String>,
}

impl TableReport {
    pub fn new(table: u8) -> Self {
        TableReport {
            table,
            ..Default::default()
        }
    }

    /// Pairs reference rows with computed `(value, parity)` in order.
    pub fn compare_column(&mut self, column: &str, reference: &[ReferenceRow], computed: &[(f64, Parity)]) {
        for (i, r) in reference.iter().enumerate() {
            let hit = computed.get(i).copied();
            self.rows.push(ReportRow {
                column: column.to_string(),
                label: r.label.clone(),
                tag: r.tag.as_str(),
                reference: r.value,
                computed: hit.map(|h| h.0),
                parity: hit.map(|h| h.1),
                pass: hit.is_some_and(|h| within_tolerance(h.0, r.value)),
            });
        }
        for &(v, _) in computed.iter().skip(reference.len()) {
            self.unmatched.push((column.to_string(), v));
        }
    }

    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }

    /// Every row passes, every count matches and no solver failed.
    pub fn pass(&self) -> bool {
        self.is_complete() && self.rows.iter().all(|r| r.pass) && self.counts.iter().all(|c| c.pass())
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| match r.computed {
                Some(c) => format!(
                    "{} {}: computed {} vs {} {} (rel {:.2e})",
                    r.column,
                    r.label,
                    fmt12(c),
                    r.tag,
                    fmt12(r.reference),
                    r.rel_dev().unwrap_or(f64::NAN)
                ),
                None => format!("{} {}: not found", r.column, r.label),
            })
            .collect();
        for c in self.counts.iter().filter(|c| !c.pass()) {
            let got = c.computed.map_or("none".to_string(), |n| n.to_string());
            out.push(format!("{} count: computed {got}, expected {}", c.column, c.expected));
        }
        out.extend(self.errors.iter().cloned());
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if !self.is_complete() {
            "INCOMPLETE"
        } else if self.pass() {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(s, "table {}: {status}", self.table).unwrap();
        writeln!(
            s,
            "{:<6} {:<8} {:>2} {:>20} {:>20} {:>10}  result",
            "column", "label", "P", "reference", "computed", "rel_dev"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                s,
                "{:<6} {:<8} {:>2} {:>20} {:>20} {:>10}  {}{}",
                r.column,
                r.label,
                r.parity.map_or("-", |p| p.label()),
                fmt12(r.reference),
                r.computed.map_or("-".into(), fmt12),
                r.rel_dev().map_or("-".into(), |d| format!("{d:.2e}")),
                if r.pass { "ok" } else { "FAIL" },
                if r.tag == "printed" { "" } else { " (printed-typo)" },
            )
            .unwrap();
        }
        for (column, v) in &self.unmatched {
            writeln!(s, "{column:<6} {:<8} {:>2} {:>20} {:>20}", "extra", "", "-", fmt12(*v)).unwrap();
        }
        for c in &self.counts {
            writeln!(
                s,
                "count {:<6} expected {:>3} computed {:>4}  {}",
                c.column,
                c.expected,
                c.computed.map_or("-".into(), |n| n.to_string()),
                if c.pass() { "ok" } else { "FAIL" }
            )
            .unwrap();
        }
        for e in &self.errors {
            writeln!(s, "solver error: {e}").unwrap();
        }
        s
    }

    /// `table,column,label,parity,reference,computed,abs_dev,rel_dev,pass`;
    /// count checks appear as rows labelled `count`.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), fmt12);
        let mut s = String::from("table,column,label,parity,reference,computed,abs_dev,rel_dev,pass\n");
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                self.table,
                r.column,
                r.label,
                r.parity.map_or("", |p| p.label()),
                fmt12(r.reference),
                opt(r.computed),
                opt(r.abs_dev()),
                opt(r.rel_dev()),
                r.pass
            )
            .unwrap();
        }
        for (column, v) in &self.unmatched {
            writeln!(s, "{},{column},extra,,,{},,,", self.table, fmt12(*v)).unwrap();
        }
        for c in &self.counts {
            writeln!(
                s,
                "{},{},count,,{},{},,,{}",
                self.table,
                c.column,
                c.expected,
                c.computed.map_or(String::new(), |n| n.to_string()),
                c.pass()
            )
            .unwrap();
        }
        s
    }
}
