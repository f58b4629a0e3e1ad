use std::fmt::{self, Write as _};

use crate::chaos_metrics::{LyapunovPair, Sensitivity, SweepPoint};
use crate::ra_map::MapState;

/// Rectangular table with a header row, `,` separators and `\n` endings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Panics if the row width differs from the header.
    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "ragged CSV row");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }
}

impl fmt::Display for CsvTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}

// Debug formatting is the shortest round-trip form and keeps a ".0" on
// integral values.
fn real(v: f64) -> String {
    let mut s = String::new();
    let _ = write!(s, "{v:?}");
    s
}

pub fn bifurcation_csv(points: &[SweepPoint]) -> CsvTable {
    let mut t = CsvTable::new(["param", "value"]);
    for p in points {
        t.push_row(vec![real(p.param_value), real(p.value)]);
    }
    t
}

pub fn attractor_csv(points: &[MapState]) -> CsvTable {
    let mut t = CsvTable::new(["x", "y"]);
    for p in points {
        t.push_row(vec![real(p.x), real(p.y)]);
    }
    t
}

pub fn lyapunov_csv(rows: &[(u32, LyapunovPair)]) -> CsvTable {
    let mut t = CsvTable::new(["param", "le1", "le2"]);
    for (param, le) in rows {
        t.push_row(vec![real(f64::from(*param)), real(le.le1), real(le.le2)]);
    }
    t
}

pub fn sensitivity_csv(s: &Sensitivity) -> CsvTable {
    let mut t = CsvTable::new(["iter", "x_a", "x_b"]);
    for (i, (a, b)) in s.reference.iter().zip(&s.perturbed).enumerate() {
        t.push_row(vec![(i + 1).to_string(), real(a.x), real(b.x)]);
    }
    t
}

pub fn metric_sweep_csv(rows: &[(u32, f64)]) -> CsvTable {
    let mut t = CsvTable::new(["param", "metric"]);
    for (param, m) in rows {
        t.push_row(vec![real(f64::from(*param)), real(*m)]);
    }
    t
}
