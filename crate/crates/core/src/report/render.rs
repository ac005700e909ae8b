//! JSON, CSV and Markdown output.

use serde::{Deserialize, Serialize};

use crate::cohomology::{BreakdownEntry, HodgeDiamond};
use crate::error::{Error, Result};
use crate::moves::{ClassRecord, Classification};
use crate::report::golden::GoldenData;
use crate::vw_group::Subgroup;
use crate::FiniteAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// One class as emitted by `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub case_id: String,
    pub n: u8,
    pub gens: String,
    pub order: usize,
    pub rank: usize,
    pub h11: u32,
    pub h12: u32,
    pub pi1: Vec<u64>,
    pub status: String,
    pub members: usize,
}

impl ClassRow {
    pub fn from_record(n: u8, c: &ClassRecord, golden: &GoldenData) -> Self {
        let status = if c.listed {
            golden
                .row(&c.class_id)
                .map(|r| r.status.as_str())
                .unwrap_or("firm")
        } else {
            "unlisted"
        };
        ClassRow {
            case_id: c.class_id.clone(),
            n,
            gens: c.representative.literal(),
            order: c.order,
            rank: c.rank,
            h11: c.diamond.h11(),
            h12: c.diamond.h12(),
            pi1: c.pi1.invariant_factors().to_vec(),
            status: status.to_string(),
            members: c.members,
        }
    }
}

pub fn class_rows(c: &Classification, golden: &GoldenData) -> Vec<ClassRow> {
    c.classes
        .iter()
        .map(|r| ClassRow::from_record(c.n.n(), r, golden))
        .collect()
}

fn pi1_code(factors: &[u64]) -> String {
    FiniteAbelianGroup::from_cyclic_orders(factors).code()
}

fn pi1_text(factors: &[u64]) -> String {
    FiniteAbelianGroup::from_cyclic_orders(factors).to_string()
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Io(e.to_string()))
}

fn md_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = format!("| {} |\n", header.join(" | "));
    out += &format!("|{}\n", "---|".repeat(header.len()));
    for r in rows {
        out += &format!("| {} |\n", r.join(" | "));
    }
    out
}

pub fn render_classes(rows: &[ClassRow], format: Format) -> Result<String> {
    const HEADER: [&str; 10] = [
        "case_id", "n", "gens", "order", "rank", "h11", "h12", "pi1", "status", "members",
    ];
    match format {
        Format::Json => json_string(rows),
        Format::Csv => csv_string(
            &HEADER,
            rows.iter()
                .map(|r| {
                    vec![
                        r.case_id.clone(),
                        r.n.to_string(),
                        r.gens.clone(),
                        r.order.to_string(),
                        r.rank.to_string(),
                        r.h11.to_string(),
                        r.h12.to_string(),
                        pi1_code(&r.pi1),
                        r.status.clone(),
                        r.members.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Md => Ok(md_table(
            &[
                "case",
                "generators",
                "order",
                "rank",
                "(h11,h12)",
                "π₁",
                "status",
                "members",
            ],
            rows.iter()
                .map(|r| {
                    vec![
                        r.case_id.clone(),
                        format!("`{}`", r.gens),
                        r.order.to_string(),
                        r.rank.to_string(),
                        format!("({},{})", r.h11, r.h12),
                        pi1_text(&r.pi1),
                        r.status.clone(),
                        r.members.to_string(),
                    ]
                })
                .collect(),
        )),
    }
}

/// Parses `classify --format json` output back into rows.
pub fn parse_class_rows(json: &str) -> Result<Vec<ClassRow>> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct HodgeOut<'a> {
    n: u8,
    gens: &'a str,
    h11: u32,
    h12: u32,
    diamond: [[u32; 4]; 4],
}

pub fn render_hodge(g: &Subgroup, d: &HodgeDiamond, format: Format) -> Result<String> {
    let gens = g.literal();
    match format {
        Format::Json => json_string(&HodgeOut {
            n: g.curve_order().n(),
            gens: &gens,
            h11: d.h11(),
            h12: d.h12(),
            diamond: d.h,
        }),
        Format::Csv => csv_string(
            &["n", "gens", "h11", "h12"],
            vec![vec![
                g.curve_order().n().to_string(),
                gens,
                d.h11().to_string(),
                d.h12().to_string(),
            ]],
        ),
        Format::Md => Ok(format!("({},{})\n", d.h11(), d.h12())),
    }
}

#[derive(Serialize)]
struct Pi1Out<'a> {
    n: u8,
    gens: &'a str,
    pi1: &'a [u64],
}

pub fn render_pi1(g: &Subgroup, pi1: &FiniteAbelianGroup, format: Format) -> Result<String> {
    let gens = g.literal();
    match format {
        Format::Json => json_string(&Pi1Out {
            n: g.curve_order().n(),
            gens: &gens,
            pi1: pi1.invariant_factors(),
        }),
        Format::Csv => csv_string(
            &["n", "gens", "pi1"],
            vec![vec![g.curve_order().n().to_string(), gens, pi1.code()]],
        ),
        Format::Md => Ok(format!("{pi1}\n")),
    }
}

#[derive(Serialize)]
struct EntryOut {
    element: String,
    h11: u32,
    h12: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_size: Option<usize>,
}

pub fn render_breakdown(entries: &[BreakdownEntry], format: Format) -> Result<String> {
    let grouped = entries.iter().any(|e| e.orbit_size.is_some());
    match format {
        Format::Json => json_string(
            &entries
                .iter()
                .map(|e| EntryOut {
                    element: e.element.literal(),
                    h11: e.h11,
                    h12: e.h12,
                    orbit_size: e.orbit_size,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut header = vec!["element", "h11", "h12"];
            if grouped {
                header.push("orbit_size");
            }
            csv_string(
                &header,
                entries
                    .iter()
                    .map(|e| {
                        let mut r = vec![e.element.literal(), e.h11.to_string(), e.h12.to_string()];
                        if let Some(s) = e.orbit_size {
                            r.push(s.to_string());
                        }
                        r
                    })
                    .collect(),
            )
        }
        Format::Md => {
            let total = entries
                .iter()
                .fold((0, 0), |a, e| (a.0 + e.h11, a.1 + e.h12));
            let mut out = String::new();
            for e in entries {
                out += &format!("({}) ({},{})", e.element.literal(), e.h11, e.h12);
                if let Some(s) = e.orbit_size {
                    out += &format!(" [{s}]");
                }
                out.push('\n');
            }
            out += &format!("total ({},{})\n", total.0, total.1);
            Ok(out)
        }
    }
}
