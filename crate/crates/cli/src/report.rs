use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::args::Format;

pub const SCHEMA: &str = "calogero-report/1";
pub const UNITS: &str = "lengths in 1/k0, energies in k0^2, angles in rad";

/// One reported quantity. Checked quantities carry their tolerance and
/// verdict; informational ones leave both empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub group: String,
    pub quantity: String,
    pub value: f64,
    pub unit: String,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub units: String,
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA.into(),
            command: command.into(),
            units: UNITS.into(),
            inputs: BTreeMap::new(),
            seed: None,
            rows: Vec::new(),
            notes: Vec::new(),
            pass: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn info(&mut self, group: &str, quantity: &str, value: f64, unit: &str) -> &mut Self {
        self.rows.push(Row {
            group: group.into(),
            quantity: quantity.into(),
            value,
            unit: unit.into(),
            tolerance: None,
            pass: None,
        });
        self
    }

    /// Records `value <= tolerance` (NaN fails).
    pub fn check(&mut self, group: &str, quantity: &str, value: f64, tolerance: f64, unit: &str) -> bool {
        let ok = value <= tolerance;
        self.push_checked(group, quantity, value, tolerance, unit, ok);
        ok
    }

    /// Records a check with an externally decided verdict.
    pub fn push_checked(&mut self, group: &str, quantity: &str, value: f64, tolerance: f64, unit: &str, ok: bool) {
        self.pass &= ok;
        self.rows.push(Row {
            group: group.into(),
            quantity: quantity.into(),
            value,
            unit: unit.into(),
            tolerance: Some(tolerance),
            pass: Some(ok),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        self.rows.extend(other.rows);
        self.notes.extend(other.notes);
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => self.to_csv()?,
            Format::Table => self.to_table(),
        })
    }

    fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["group", "quantity", "value", "unit", "tolerance", "pass"])?;
        for r in &self.rows {
            w.write_record([
                r.group.clone(),
                r.quantity.clone(),
                format!("{:.14e}", r.value),
                r.unit.clone(),
                r.tolerance.map(|t| format!("{t:.14e}")).unwrap_or_default(),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} ({}; schema {})", self.command, self.units, self.schema);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "#   {k} = {v}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "#   seed = {seed}");
        }
        let gw = self.rows.iter().map(|r| r.group.len()).max().unwrap_or(0).max(5);
        let qw = self.rows.iter().map(|r| r.quantity.len()).max().unwrap_or(0).max(8);
        let _ = writeln!(
            out,
            "{:<gw$}  {:<qw$}  {:>22}  {:<6}  {:>9}  status",
            "group", "quantity", "value", "unit", "tolerance"
        );
        for r in &self.rows {
            let tol = r.tolerance.map(|t| format!("{t:.1e}")).unwrap_or_default();
            let status = match r.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "",
            };
            let _ = writeln!(
                out,
                "{:<gw$}  {:<qw$}  {:>22.14e}  {:<6}  {:>9}  {status}",
                r.group, r.quantity, r.value, r.unit, tol
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
