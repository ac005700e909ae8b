//! Reference tables and per-case contribution lists as CSV data.
//!
//! A copy is compiled into the crate; [`GoldenData::from_dir`] reads the same layout
//! from disk (`paper_tables.csv` plus `paper_breakdowns/<case>.csv`).

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::exact_torus::CurveOrder;
use crate::report::literal::{parse_element, GroupLiteral};
use crate::vw_group::{GroupElement, Subgroup};

const TABLES: &str = include_str!("../../data/paper_tables.csv");

const BREAKDOWNS: [(&str, &str); 17] = [
    (
        "III.1",
        include_str!("../../data/paper_breakdowns/III.1.csv"),
    ),
    (
        "III.2",
        include_str!("../../data/paper_breakdowns/III.2.csv"),
    ),
    (
        "III.3",
        include_str!("../../data/paper_breakdowns/III.3.csv"),
    ),
    (
        "III.4",
        include_str!("../../data/paper_breakdowns/III.4.csv"),
    ),
    (
        "III.5",
        include_str!("../../data/paper_breakdowns/III.5.csv"),
    ),
    (
        "III.6",
        include_str!("../../data/paper_breakdowns/III.6.csv"),
    ),
    (
        "III.7",
        include_str!("../../data/paper_breakdowns/III.7.csv"),
    ),
    (
        "III.8",
        include_str!("../../data/paper_breakdowns/III.8.csv"),
    ),
    ("IV.1", include_str!("../../data/paper_breakdowns/IV.1.csv")),
    ("IV.2", include_str!("../../data/paper_breakdowns/IV.2.csv")),
    ("IV.3", include_str!("../../data/paper_breakdowns/IV.3.csv")),
    ("IV.4", include_str!("../../data/paper_breakdowns/IV.4.csv")),
    ("IV.5", include_str!("../../data/paper_breakdowns/IV.5.csv")),
    ("IV.6", include_str!("../../data/paper_breakdowns/IV.6.csv")),
    ("IV.7", include_str!("../../data/paper_breakdowns/IV.7.csv")),
    ("IV.8", include_str!("../../data/paper_breakdowns/IV.8.csv")),
    ("VI.1", include_str!("../../data/paper_breakdowns/VI.1.csv")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowStatus {
    Firm,
    Disputed,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Firm => "firm",
            RowStatus::Disputed => "disputed",
        }
    }
}

/// One table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub case_id: String,
    pub n: CurveOrder,
    pub gens: String,
    pub h11: u32,
    pub h12: u32,
    pub pi1: FiniteAbelianGroup,
    pub status: RowStatus,
}

impl GoldenRow {
    pub fn group(&self) -> Result<Subgroup> {
        GroupLiteral::admissible_group(self.n, &self.gens)
            .map_err(|e| Error::Golden(format!("{}: {e}", self.case_id)))
    }

    pub fn hodge(&self) -> (u32, u32) {
        (self.h11, self.h12)
    }
}

/// One listed `(element, contribution)` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakdownRow {
    pub element: GroupElement,
    pub h11: u32,
    pub h12: u32,
    pub orbit_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenBreakdown {
    pub case_id: String,
    pub n: CurveOrder,
    pub entries: Vec<BreakdownRow>,
}

impl GoldenBreakdown {
    pub fn total(&self) -> (u32, u32) {
        self.entries
            .iter()
            .fold((0, 0), |acc, e| (acc.0 + e.h11, acc.1 + e.h12))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenData {
    pub rows: Vec<GoldenRow>,
    pub breakdowns: Vec<GoldenBreakdown>,
}

#[derive(Deserialize)]
struct RawRow {
    case_id: String,
    n: u8,
    gens: String,
    h11: u32,
    h12: u32,
    pi1: String,
    status: String,
}

#[derive(Deserialize)]
struct RawEntry {
    element: String,
    h11: u32,
    h12: u32,
    orbit_size: Option<usize>,
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn parse_pi1(code: &str) -> Result<FiniteAbelianGroup> {
    let orders: Vec<u64> = code
        .split('x')
        .map(|d| {
            d.trim()
                .parse()
                .map_err(|_| Error::Golden(format!("bad pi1 `{code}`")))
        })
        .collect::<Result<_>>()?;
    Ok(FiniteAbelianGroup::from_cyclic_orders(&orders))
}

fn parse_tables(text: &str) -> Result<Vec<GoldenRow>> {
    let mut rows = Vec::new();
    for raw in reader(text).deserialize::<RawRow>() {
        let raw = raw.map_err(|e| Error::Golden(e.to_string()))?;
        let n = CurveOrder::try_from(raw.n).map_err(|e| Error::Golden(e.to_string()))?;
        let status = match raw.status.as_str() {
            "firm" => RowStatus::Firm,
            "disputed" => RowStatus::Disputed,
            other => return Err(Error::Golden(format!("unknown status `{other}`"))),
        };
        rows.push(GoldenRow {
            case_id: raw.case_id,
            n,
            gens: raw.gens,
            h11: raw.h11,
            h12: raw.h12,
            pi1: parse_pi1(&raw.pi1)?,
            status,
        });
    }
    Ok(rows)
}

fn parse_breakdown(case_id: &str, n: CurveOrder, text: &str) -> Result<GoldenBreakdown> {
    let mut entries = Vec::new();
    for raw in reader(text).deserialize::<RawEntry>() {
        let raw = raw.map_err(|e| Error::Golden(format!("{case_id}: {e}")))?;
        let element =
            parse_element(n, &raw.element).map_err(|e| Error::Golden(format!("{case_id}: {e}")))?;
        entries.push(BreakdownRow {
            element,
            h11: raw.h11,
            h12: raw.h12,
            orbit_size: raw.orbit_size,
        });
    }
    Ok(GoldenBreakdown {
        case_id: case_id.to_string(),
        n,
        entries,
    })
}

impl GoldenData {
    /// The compiled-in copy.
    pub fn embedded() -> Result<Self> {
        let rows = parse_tables(TABLES)?;
        let mut breakdowns = Vec::new();
        for (id, text) in BREAKDOWNS {
            let n = rows
                .iter()
                .find(|r| r.case_id == id)
                .map(|r| r.n)
                .ok_or_else(|| Error::Golden(format!("list {id} has no table row")))?;
            breakdowns.push(parse_breakdown(id, n, text)?);
        }
        Ok(GoldenData { rows, breakdowns })
    }

    /// Reads `dir/paper_tables.csv` and every `dir/paper_breakdowns/<case_id>.csv` that exists.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let text = fs::read_to_string(dir.join("paper_tables.csv"))
            .map_err(|e| Error::Golden(format!("{}: {e}", dir.display())))?;
        let rows = parse_tables(&text)?;
        let mut breakdowns = Vec::new();
        for row in &rows {
            let path = dir
                .join("paper_breakdowns")
                .join(format!("{}.csv", row.case_id));
            if path.exists() {
                let text = fs::read_to_string(&path)?;
                breakdowns.push(parse_breakdown(&row.case_id, row.n, &text)?);
            }
        }
        Ok(GoldenData { rows, breakdowns })
    }

    pub fn table_rows(&self, n: CurveOrder) -> impl Iterator<Item = &GoldenRow> {
        self.rows.iter().filter(move |r| r.n == n)
    }

    pub fn row(&self, case_id: &str) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| r.case_id == case_id)
    }

    pub fn breakdown(&self, case_id: &str) -> Option<&GoldenBreakdown> {
        self.breakdowns.iter().find(|b| b.case_id == case_id)
    }
}
