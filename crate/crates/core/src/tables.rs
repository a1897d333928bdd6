//! Published interior-angle tables and their recomputation.
//!
//! Each table fixes `A₁ = (1,1,0,0)` and `A₂`, and lists five third vertices
//! with the angles `ω₁, ω₂, ω₃` and their sum, rounded to five decimals.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{GeometryKind, ModelPoint};
use crate::triangle::{GeodesicTriangle, TriangleAngles};

/// Largest deviation from a published value accepted by [`TableRowReport::passes`].
pub const TABLE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedRow {
    pub a3: [f64; 3],
    pub angles: [f64; 3],
    pub sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedTable {
    pub id: u8,
    pub kind: GeometryKind,
    pub a2: [f64; 3],
    pub rows: Vec<PublishedRow>,
}

fn row(a3: [f64; 3], angles: [f64; 3], sum: f64) -> PublishedRow {
    PublishedRow { a3, angles, sum }
}

/// The two published tables, S²×R first.
pub fn published_tables() -> [PublishedTable; 2] {
    let r5 = 5f64.sqrt();
    let r8 = 8f64.sqrt();
    [
        PublishedTable {
            id: 1,
            kind: GeometryKind::SphereTimesR,
            a2: [3.0, -2.0, 1.0],
            rows: vec![
                row([2.0 / r5, 1.0 / r5, 0.0], [1.97206, 0.26028, 0.92635], 3.15869),
                row([2.0, 1.0, 0.0], [0.94654, 0.68775, 1.51707], 3.15135),
                row([4.0, 2.0, 0.0], [0.73193, 1.29546, 1.12123], 3.14862),
                row([12.0, 6.0, 0.0], [0.61470, 1.99926, 0.53246], 3.14643),
                row([2000.0, 1000.0, 0.0], [0.50628, 2.52677, 0.11050], 3.14355),
            ],
        },
        PublishedTable {
            id: 2,
            kind: GeometryKind::HyperbolicTimesR,
            a2: [2.0, 1.5, 1.0],
            rows: vec![
                row([3.0 / r8, -1.0 / r8, 0.0], [2.54659, 0.06953, 0.41780], 3.03392),
                row([3.0, -1.0, 0.0], [1.93230, 0.49280, 0.69816], 3.12325),
                row([6.0, -2.0, 0.0], [1.83102, 0.71611, 0.58348], 3.13061),
                row([9.0, -3.0, 0.0], [1.80083, 0.81224, 0.51964], 3.13270),
                row([3000.0, -1000.0, 0.0], [1.70394, 1.25735, 0.17793], 3.13922),
            ],
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRowReport {
    pub table: u8,
    /// One-based row number.
    pub row: usize,
    pub kind: GeometryKind,
    pub a3: [f64; 3],
    pub computed: TriangleAngles,
    pub published: PublishedRow,
    /// Largest `|computed − published|` over `ω₁, ω₂, ω₃` and the sum.
    pub max_abs_deviation: f64,
}

impl TableRowReport {
    pub fn passes(&self) -> bool {
        self.max_abs_deviation <= TABLE_TOLERANCE
    }
}

/// Recomputes every row of `table`.
pub fn reproduce(table: &PublishedTable) -> Result<Vec<TableRowReport>> {
    let a2 = ModelPoint::new(table.kind, table.a2[0], table.a2[1], table.a2[2])?;
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let a3 = ModelPoint::new(table.kind, r.a3[0], r.a3[1], r.a3[2])?;
            let computed = GeodesicTriangle::new(table.kind, ModelPoint::base(), a2, a3)?.angle_sum()?;
            let max_abs_deviation = computed
                .as_array()
                .iter()
                .zip(r.angles)
                .map(|(c, p)| (c - p).abs())
                .chain(std::iter::once((computed.sum - r.sum).abs()))
                .fold(0.0, f64::max);
            Ok(TableRowReport {
                table: table.id,
                row: i + 1,
                kind: table.kind,
                a3: r.a3,
                computed,
                published: *r,
                max_abs_deviation,
            })
        })
        .collect()
}

/// Recomputes both published tables.
pub fn reproduce_all() -> Result<Vec<TableRowReport>> {
    let mut out = Vec::new();
    for t in published_tables() {
        out.extend(reproduce(&t)?);
    }
    Ok(out)
}
