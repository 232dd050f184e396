//! Reference census values for 3 ≤ c ≤ 15.
//!
//! Columns: c, TK, TS, average braid index, TK*, TS*, average braid index up
//! to mirror image. Averages are exact fractions.

use num_bigint::BigInt;

use crate::rational::Rational;

use super::{CensusRow, Mismatch};

pub struct ReferenceRow {
    pub c: u32,
    pub tk: u64,
    pub ts: u64,
    pub avg_braid: (i64, i64),
    pub tk_star: u64,
    pub ts_star: u64,
    pub avg_braid_star: (i64, i64),
}

#[rustfmt::skip]
pub const REFERENCE: [ReferenceRow; 13] = [
    ReferenceRow { c: 3,  tk: 2,    ts: 2,     avg_braid: (2, 1),       tk_star: 1,    ts_star: 1,    avg_braid_star: (2, 1) },
    ReferenceRow { c: 4,  tk: 1,    ts: 0,     avg_braid: (3, 1),       tk_star: 1,    ts_star: 0,    avg_braid_star: (3, 1) },
    ReferenceRow { c: 5,  tk: 4,    ts: 8,     avg_braid: (5, 2),       tk_star: 2,    ts_star: 4,    avg_braid_star: (5, 2) },
    ReferenceRow { c: 6,  tk: 5,    ts: 6,     avg_braid: (17, 5),      tk_star: 3,    ts_star: 4,    avg_braid_star: (10, 3) },
    ReferenceRow { c: 7,  tk: 14,   ts: 30,    avg_braid: (24, 7),      tk_star: 7,    ts_star: 15,   avg_braid_star: (24, 7) },
    ReferenceRow { c: 8,  tk: 21,   ts: 44,    avg_braid: (83, 21),     tk_star: 12,   ts_star: 24,   avg_braid_star: (4, 1) },
    ReferenceRow { c: 9,  tk: 48,   ts: 132,   avg_braid: (33, 8),      tk_star: 24,   ts_star: 66,   avg_braid_star: (33, 8) },
    ReferenceRow { c: 10, tk: 85,   ts: 242,   avg_braid: (389, 85),    tk_star: 45,   ts_star: 128,  avg_braid_star: (206, 45) },
    ReferenceRow { c: 11, tk: 182,  ts: 598,   avg_braid: (34, 7),      tk_star: 91,   ts_star: 299,  avg_braid_star: (34, 7) },
    ReferenceRow { c: 12, tk: 341,  ts: 1208,  avg_braid: (1783, 341),  tk_star: 176,  ts_star: 620,  avg_braid_star: (461, 88) },
    ReferenceRow { c: 13, tk: 704,  ts: 2764,  avg_braid: (1949, 352),  tk_star: 352,  ts_star: 1382, avg_braid_star: (1949, 352) },
    ReferenceRow { c: 14, tk: 1365, ts: 5758,  avg_braid: (8041, 1365), tk_star: 693,  ts_star: 2920, avg_braid_star: (4084, 693) },
    ReferenceRow { c: 15, tk: 2774, ts: 12678, avg_braid: (8620, 1387), tk_star: 1387, ts_star: 6339, avg_braid_star: (8620, 1387) },
];

pub fn reference(c: u32) -> Option<&'static ReferenceRow> {
    REFERENCE.iter().find(|r| r.c == c)
}

/// Differences between a computed row and the reference values (only the
/// six printed columns are compared).
pub fn diff_against_reference(row: &CensusRow) -> Option<Vec<Mismatch>> {
    let r = reference(row.c)?;
    let mut out = Vec::new();
    let mut check = |field: &str, got: String, want: String| {
        if got != want {
            out.push(Mismatch {
                c: row.c,
                field: field.to_string(),
                left: got,
                right: want,
            });
        }
    };
    check("tk", row.tk.to_string(), BigInt::from(r.tk).to_string());
    check("ts", row.ts.to_string(), BigInt::from(r.ts).to_string());
    check(
        "avg_braid",
        row.avg_braid.to_string(),
        Rational::new(r.avg_braid.0, r.avg_braid.1).to_string(),
    );
    check("tk_star", row.tk_star.to_string(), r.tk_star.to_string());
    check("ts_star", row.ts_star.to_string(), r.ts_star.to_string());
    check(
        "avg_braid_star",
        row.avg_braid_star.to_string(),
        Rational::new(r.avg_braid_star.0, r.avg_braid_star.1).to_string(),
    );
    Some(out)
}
