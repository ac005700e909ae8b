//! Recomputes every stored table row and contribution list and reports differences.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{
    chen_ruan_diamond, contribution_breakdown, inverse_pair_key, permutation_pair_key,
    BreakdownEntry,
};
use crate::error::Result;
use crate::exact_torus::CurveOrder;
use crate::moves::{canonical_form, classify_with, MergeOutcome};
use crate::pi1::fundamental_group;
use crate::report::golden::{GoldenBreakdown, GoldenData, RowStatus};
use crate::vw_group::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Differs from a disputed row; reported, not counted as a failure.
    Disputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub scope: String,
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub outcome: Outcome,
}

/// Adjudication of one disputed row against both published figures for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisputeReport {
    pub case_id: String,
    pub computed: (u32, u32),
    pub table: (u32, u32),
    pub list_total: Option<(u32, u32)>,
    pub matches: Vec<String>,
}

impl DisputeReport {
    pub fn verdict(&self) -> String {
        if self.matches.is_empty() {
            "matches neither figure".into()
        } else {
            format!("matches the {}", self.matches.join(" and "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeNote {
    pub candidate: String,
    pub candidate_id: String,
    pub candidate_hodge: (u32, u32),
    pub target_id: String,
    pub target_hodge: (u32, u32),
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub disputes: Vec<DisputeReport>,
    pub merges: Vec<MergeNote>,
    pub shared_invariants: Vec<(String, String)>,
    pub strict: bool,
    /// Disputed rows that could not be compared against both figures.
    pub incomplete_disputes: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.outcome == Outcome::Fail)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty() && !(self.strict && !self.incomplete_disputes.is_empty())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Disputed => "DISPUTED",
            };
            out += &format!(
                "{tag} {} {}: expected {}, computed {}\n",
                c.scope, c.what, c.expected, c.computed
            );
        }
        if !self.disputes.is_empty() {
            out += "\ndisputed rows:\n";
            for d in &self.disputes {
                let list = d
                    .list_total
                    .map(|t| format!("({},{})", t.0, t.1))
                    .unwrap_or_else(|| "missing".into());
                out += &format!(
                    "  {}: computed ({},{}); table ({},{}); list total {}; {}\n",
                    d.case_id,
                    d.computed.0,
                    d.computed.1,
                    d.table.0,
                    d.table.1,
                    list,
                    d.verdict()
                );
            }
        }
        if !self.merges.is_empty() {
            out += "\nasserted merges into the shift-free class:\n";
            for m in &self.merges {
                out += &format!(
                    "  {} [{} ({},{})] -> {} ({},{}): {}\n",
                    m.candidate,
                    m.candidate_id,
                    m.candidate_hodge.0,
                    m.candidate_hodge.1,
                    m.target_id,
                    m.target_hodge.0,
                    m.target_hodge.1,
                    m.outcome
                );
            }
        }
        if !self.shared_invariants.is_empty() {
            out += "\nclasses sharing (h11,h12) and pi1:\n";
            for (a, b) in &self.shared_invariants {
                out += &format!("  {a} ~ {b}\n");
            }
        }
        for id in &self.incomplete_disputes {
            out += &format!("\nincomplete dispute report for {id}\n");
        }
        let failed = self.failures().len();
        out += &if self.passed() {
            "\nresult: ok\n".to_string()
        } else {
            format!("\nresult: FAILED ({failed} failing checks)\n")
        };
        out
    }
}

fn pair(p: (u32, u32)) -> String {
    format!("({},{})", p.0, p.1)
}

type Keyed = BTreeMap<GroupElement, (u32, u32, Option<usize>)>;

fn key_for(n: CurveOrder, g: &GroupElement) -> GroupElement {
    if n == CurveOrder::Six {
        permutation_pair_key(g)
    } else {
        inverse_pair_key(g)
    }
}

fn keyed_computed(n: CurveOrder, entries: &[BreakdownEntry]) -> Keyed {
    entries
        .iter()
        .map(|e| (key_for(n, &e.element), (e.h11, e.h12, e.orbit_size)))
        .collect()
}

/// Entry-by-entry differences, matched by inverse pair (and permutation orbit for `n = 6`).
pub fn compare_breakdown(computed: &[BreakdownEntry], golden: &GoldenBreakdown) -> Vec<String> {
    let n = golden.n;
    let have = keyed_computed(n, computed);
    let mut want: Keyed = BTreeMap::new();
    let mut diffs = Vec::new();
    for e in &golden.entries {
        let k = key_for(n, &e.element);
        if want.insert(k, (e.h11, e.h12, e.orbit_size)).is_some() {
            diffs.push(format!("({}) listed twice", e.element.literal()));
        }
    }
    let show = |v: &(u32, u32, Option<usize>)| match v.2 {
        Some(s) => format!("({},{})[{s}]", v.0, v.1),
        None => format!("({},{})", v.0, v.1),
    };
    for e in &golden.entries {
        let k = key_for(n, &e.element);
        let w = &want[&k];
        match have.get(&k) {
            None => diffs.push(format!(
                "({}) listed {} but not a sector of the group",
                e.element.literal(),
                show(w)
            )),
            Some(h) if h != w => diffs.push(format!(
                "({}) listed {} computed {}",
                e.element.literal(),
                show(w),
                show(h)
            )),
            _ => {}
        }
    }
    for e in computed {
        let k = key_for(n, &e.element);
        if !want.contains_key(&k) {
            diffs.push(format!(
                "({}) not listed, computed {}",
                e.element.literal(),
                show(&(e.h11, e.h12, e.orbit_size))
            ));
        }
    }
    diffs
}

/// Whether contributions agree once shifts are ignored and entries are summed per
/// twist-level inverse pair.
pub fn agrees_by_twist(computed: &[BreakdownEntry], golden: &GoldenBreakdown) -> bool {
    let n = golden.n;
    let fold = |items: Vec<(GroupElement, u32, u32)>| {
        let mut m: BTreeMap<GroupElement, (u32, u32)> = BTreeMap::new();
        for (g, a, b) in items {
            let bare = GroupElement::new_unchecked(n, g.twist(), [0; 3]);
            let e = m.entry(key_for(n, &bare)).or_default();
            e.0 += a;
            e.1 += b;
        }
        m
    };
    fold(computed.iter().map(|e| (e.element, e.h11, e.h12)).collect())
        == fold(
            golden
                .entries
                .iter()
                .map(|e| (e.element, e.h11, e.h12))
                .collect(),
        )
}

fn push(
    checks: &mut Vec<Check>,
    scope: &str,
    what: &str,
    expected: String,
    computed: String,
    ok: bool,
    firm: bool,
) {
    let outcome = match (ok, firm) {
        (true, _) => Outcome::Pass,
        (false, true) => Outcome::Fail,
        (false, false) => Outcome::Disputed,
    };
    checks.push(Check {
        scope: scope.to_string(),
        what: what.to_string(),
        expected,
        computed,
        outcome,
    });
}

/// Runs the full comparison for `only` (or every curve order).
pub fn verify_paper(
    golden: &GoldenData,
    only: Option<CurveOrder>,
    strict: bool,
) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let mut disputes = Vec::new();
    let mut merges = Vec::new();
    let mut shared = Vec::new();
    let mut incomplete = Vec::new();
    for n in CurveOrder::ALL {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let rows: Vec<_> = golden.table_rows(n).collect();
        let classification = classify_with(n, golden)?;
        let scope = format!("n={}", n.n());
        let unlisted: Vec<String> = classification
            .classes
            .iter()
            .filter(|c| !c.listed)
            .map(|c| format!("{} ({},{})", c.class_id, c.diamond.h11(), c.diamond.h12()))
            .collect();
        push(
            &mut checks,
            &scope,
            "class count",
            rows.len().to_string(),
            if unlisted.is_empty() {
                classification.classes.len().to_string()
            } else {
                format!(
                    "{} (unlisted: {})",
                    classification.classes.len(),
                    unlisted.join(", ")
                )
            },
            rows.len() == classification.classes.len(),
            true,
        );
        let members: usize = classification.classes.iter().map(|c| c.members).sum();
        push(
            &mut checks,
            &scope,
            "class members partition the enumeration",
            classification.enumerated.to_string(),
            members.to_string(),
            members == classification.enumerated,
            true,
        );
        for m in &classification.merges {
            merges.push(MergeNote {
                candidate: m.candidate.literal(),
                candidate_id: m.candidate_id.clone(),
                candidate_hodge: m.candidate_hodge,
                target_id: m.target_id.clone(),
                target_hodge: m.target_hodge,
                outcome: match m.outcome {
                    MergeOutcome::AbsorbedByReduction => "absorbed by reduction",
                    MergeOutcome::Merged => "merged",
                    MergeOutcome::Refused => "refused: invariants differ",
                }
                .into(),
            });
        }
        shared.extend(classification.shared_invariant_pairs());

        for row in rows {
            let firm = row.status == RowStatus::Firm;
            let g = row.group()?;
            let canon = canonical_form(&g)?;
            let class = classification
                .classes
                .iter()
                .find(|c| c.representative == canon);
            push(
                &mut checks,
                &row.case_id,
                "class",
                row.case_id.clone(),
                class
                    .map(|c| c.class_id.clone())
                    .unwrap_or_else(|| "none".into()),
                class.is_some_and(|c| c.class_id == row.case_id),
                true,
            );
            let d = chen_ruan_diamond(&g)?;
            push(
                &mut checks,
                &row.case_id,
                "(h11,h12)",
                pair(row.hodge()),
                pair(d.pair()),
                d.pair() == row.hodge(),
                firm,
            );
            let p = fundamental_group(&g)?;
            push(
                &mut checks,
                &row.case_id,
                "pi1",
                row.pi1.to_string(),
                p.to_string(),
                p == row.pi1,
                true,
            );
            let computed = contribution_breakdown(&g)?;
            let total = computed
                .iter()
                .fold((0, 0), |a, e| (a.0 + e.h11, a.1 + e.h12));
            push(
                &mut checks,
                &row.case_id,
                "breakdown sums to diamond",
                pair(d.pair()),
                pair(total),
                total == d.pair(),
                true,
            );
            let list = golden.breakdown(&row.case_id);
            if let Some(list) = list {
                let diffs = compare_breakdown(&computed, list);
                push(
                    &mut checks,
                    &row.case_id,
                    "contribution list",
                    format!("{} entries", list.entries.len()),
                    if diffs.is_empty() {
                        format!("{} entries", list.entries.len())
                    } else if agrees_by_twist(&computed, list) {
                        format!("{} (agrees when matched by twist alone)", diffs.join("; "))
                    } else {
                        diffs.join("; ")
                    },
                    diffs.is_empty(),
                    firm,
                );
            }
            if !firm {
                let list_total = list.map(GoldenBreakdown::total);
                let mut matches = Vec::new();
                if d.pair() == row.hodge() {
                    matches.push("table".to_string());
                }
                if list_total == Some(d.pair()) {
                    matches.push("list total".to_string());
                }
                if list_total.is_none() {
                    incomplete.push(row.case_id.clone());
                }
                disputes.push(DisputeReport {
                    case_id: row.case_id.clone(),
                    computed: d.pair(),
                    table: row.hodge(),
                    list_total,
                    matches,
                });
            }
        }
    }
    Ok(VerifyReport {
        checks,
        disputes,
        merges,
        shared_invariants: shared,
        strict,
        incomplete_disputes: incomplete,
    })
}
