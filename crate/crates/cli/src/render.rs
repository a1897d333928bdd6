//! Plain-text number formatting and column alignment.

use std::fmt;

/// Number formatter at a fixed count of decimals.
#[derive(Clone, Copy)]
pub struct Num(pub usize);

impl Num {
    /// Fixed-point.
    pub fn f(self, x: f64) -> String {
        format!("{x:.*}", self.0)
    }

    /// Scientific, for small deviations.
    pub fn e(self, x: f64) -> String {
        format!("{x:.*e}", self.0.min(3))
    }

    /// Shortest form that keeps at most the configured decimals; used for
    /// inputs such as sweep abscissae and coordinates.
    pub fn g(self, x: f64) -> String {
        let s = self.f(x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Left-aligned first column, right-aligned others.
pub struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            rows: vec![header.iter().map(|h| h.to_string()).collect()],
        }
    }

    pub fn row<const N: usize>(&mut self, cells: [String; N]) {
        self.rows.push(cells.into());
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.rows[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| self.rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, &w))| {
                    if i == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            writeln!(f, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }
}
