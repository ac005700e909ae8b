//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::character_scan;
use toroidal_orbifold::cohomology::{
    age, burnside_orbit_count, fixed_locus, orbit_decomposition, twisted_sectors,
    untwisted_sector_diamond, FixedLocus,
};
use toroidal_orbifold::exact_torus::{act_affine, solve_twisted_fixed_points, zeta_matrix};
use toroidal_orbifold::moves::{
    admissible_characters, axes_avoiding_subspaces, strip_reduce, Move,
};
use toroidal_orbifold::report::golden::GoldenData;
use toroidal_orbifold::report::verify::{compare_breakdown, verify_paper};
use toroidal_orbifold::vw_group::all_elements;
use toroidal_orbifold::{
    chen_ruan_diamond, classify, contribution_breakdown, enumerate_admissible, fundamental_group,
    Classification, CurveOrder, GroupElement, Subgroup, TorusPoint,
};

const PER_N_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(300);
const HODGE_TOLERANCE: u32 = 0;
const AFFINE_SAMPLES: usize = 1000;
const SEED: u64 = 0x6163_6365;

const CLASS_COUNTS: [(CurveOrder, usize); 3] = [
    (CurveOrder::Three, 8),
    (CurveOrder::Four, 8),
    (CurveOrder::Six, 1),
];

const FIRM_ROWS: [(&str, (u32, u32)); 15] = [
    ("III.1", (84, 0)),
    ("III.2", (24, 12)),
    ("III.3", (18, 6)),
    ("III.4", (12, 0)),
    ("III.5", (40, 4)),
    ("III.6", (36, 0)),
    ("III.7", (16, 4)),
    ("III.8", (18, 6)),
    ("IV.1", (90, 0)),
    ("IV.2", (54, 0)),
    ("IV.3", (42, 0)),
    ("IV.4", (30, 0)),
    ("IV.5", (61, 1)),
    ("IV.6", (54, 0)),
    ("VI.1", (80, 0)),
];

const BREAKDOWN_CASES: [&str; 15] = [
    "III.1", "III.2", "III.3", "III.4", "III.5", "III.6", "III.7", "III.8", "IV.1", "IV.2", "IV.3",
    "IV.4", "IV.5", "IV.6", "VI.1",
];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(problems: Vec<String>, ok_detail: impl Into<String>) -> Verdict {
    if problems.is_empty() {
        Verdict {
            ok: true,
            detail: ok_detail.into(),
        }
    } else {
        Verdict {
            ok: false,
            detail: problems.join("; "),
        }
    }
}

struct Ctx {
    golden: GoldenData,
    classes: Vec<(Classification, Duration)>,
    groups: Vec<Vec<Subgroup>>,
}

fn c1_counts(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for ((n, want), (c, t)) in CLASS_COUNTS.iter().zip(&ctx.classes) {
        seen.push(format!("n={n}: {} in {:.1?}", c.classes.len(), t));
        if c.classes.len() != *want {
            let extra: Vec<String> = c
                .classes
                .iter()
                .filter(|r| !r.listed)
                .map(|r| format!("{} {:?}", r.class_id, r.hodge()))
                .collect();
            bad.push(format!(
                "n={n}: {} classes, expected {want} (unlisted: {})",
                c.classes.len(),
                extra.join(", ")
            ));
        }
        if *t > PER_N_LIMIT {
            bad.push(format!("n={n}: {t:.1?} exceeds {PER_N_LIMIT:?}"));
        }
    }
    verdict(bad, seen.join(", "))
}

fn find_class<'a>(ctx: &'a Ctx, id: &str) -> Option<&'a toroidal_orbifold::ClassRecord> {
    ctx.classes.iter().find_map(|(c, _)| c.class(id))
}

fn c2_firm_rows(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    for (id, want) in FIRM_ROWS {
        match find_class(ctx, id) {
            None => bad.push(format!("{id}: no class")),
            Some(c) => {
                let got = c.hodge();
                if got.0.abs_diff(want.0) > HODGE_TOLERANCE
                    || got.1.abs_diff(want.1) > HODGE_TOLERANCE
                {
                    bad.push(format!("{id}: computed {got:?}, expected {want:?}"));
                }
            }
        }
    }
    verdict(bad, format!("{} rows", FIRM_ROWS.len()))
}

fn torb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_torb"))
        .args(args)
        .output()
        .expect("run torb")
}

fn c3_disputed(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let a = verify_paper(&ctx.golden, Some(CurveOrder::Four), true).expect("verify");
    let b = verify_paper(&ctx.golden, Some(CurveOrder::Four), true).expect("verify");
    let get = |r: &toroidal_orbifold::report::verify::VerifyReport, id: &str| {
        r.disputes.iter().find(|d| d.case_id == id).cloned()
    };
    match get(&a, "IV.7") {
        None => bad.push("IV.7: no dispute report".into()),
        Some(d) => {
            notes.push(format!("IV.7 computed {:?}, {}", d.computed, d.verdict()));
            if d.computed != (38, 0) && d.computed != (37, 0) {
                bad.push(format!(
                    "IV.7: computed {:?}, neither (38,0) nor (37,0)",
                    d.computed
                ));
            }
        }
    }
    match (get(&a, "IV.8"), get(&b, "IV.8")) {
        (Some(d), Some(e)) => {
            notes.push(format!("IV.8 computed {:?}, {}", d.computed, d.verdict()));
            if d.computed != e.computed {
                bad.push("IV.8: not deterministic".into());
            }
            if d.table != (42, 0) || d.list_total != Some((61, 1)) {
                bad.push(format!(
                    "IV.8: compared against {:?} and {:?}",
                    d.table, d.list_total
                ));
            }
        }
        _ => bad.push("IV.8: no dispute report".into()),
    }
    let out = torb(&["verify-paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    if !text.contains("IV.7") || !text.contains("IV.8") {
        bad.push("verify-paper report lacks the disputed rows".into());
    }
    if out.status.code() != Some(0) {
        let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
        bad.push(format!(
            "verify-paper exit {:?} ({})",
            out.status.code(),
            fails.join(" | ")
        ));
    }
    let mut v = verdict(bad, notes.join("; "));
    if !v.ok {
        v.detail = format!("{}; {}", notes.join("; "), v.detail);
    }
    v
}

fn c4_pi1(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let mut total = 0;
    for (c, _) in &ctx.classes {
        for r in &c.classes {
            total += 1;
            let want: &[u64] = if r.class_id == "III.4" { &[3] } else { &[] };
            if r.pi1.invariant_factors() != want {
                bad.push(format!("{}: {}", r.class_id, r.pi1));
            }
        }
    }
    verdict(bad, format!("{total} classes"))
}

fn c5_breakdowns(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    for id in BREAKDOWN_CASES {
        let (Some(row), Some(list)) = (ctx.golden.row(id), ctx.golden.breakdown(id)) else {
            bad.push(format!("{id}: missing data"));
            continue;
        };
        let g = row.group().expect("row group");
        let computed = contribution_breakdown(&g).expect("breakdown");
        let diffs = compare_breakdown(&computed, list);
        if !diffs.is_empty() {
            bad.push(format!("{id}: {}", diffs.join(", ")));
        }
    }
    if let Some(l) = ctx.golden.breakdown("VI.1") {
        if l.total() != (80, 0) {
            bad.push(format!("VI.1 list sums to {:?}", l.total()));
        }
    }
    verdict(bad, format!("{} lists", BREAKDOWN_CASES.len()))
}

fn c6_untwisted(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let mut count = 0;
    for groups in &ctx.groups {
        for g in groups {
            count += 1;
            let d = untwisted_sector_diamond(g).expect("untwisted");
            let mut want = [[0u32; 4]; 4];
            for (p, q) in [(0, 0), (3, 0), (0, 3), (3, 3)] {
                want[p][q] = 1;
            }
            for (p, q) in [(1, 1), (2, 2)] {
                want[p][q] = 3;
            }
            if d.h != want {
                bad.push(format!("{g}: {d}"));
            }
        }
    }
    verdict(bad, format!("{count} groups"))
}

fn c7_moves(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let (mut moves, mut strips) = (0, 0);
    for groups in &ctx.groups {
        for g in groups {
            let n = g.curve_order();
            let d = chen_ruan_diamond(g).expect("diamond");
            let p = fundamental_group(g).expect("pi1");
            let mut check = |h: &Subgroup, what: &str| {
                let dh = chen_ruan_diamond(h).expect("diamond");
                let ph = fundamental_group(h).expect("pi1");
                if dh != d || ph != p {
                    bad.push(format!("{what} on {g}"));
                }
            };
            for mv in Move::generators(n) {
                moves += 1;
                check(&mv.apply(g).expect("move"), &format!("{mv:?}"));
            }
            let r = strip_reduce(g).expect("strip");
            if r != *g {
                strips += 1;
                check(&r, "strip_reduce");
            }
        }
    }
    verdict(bad, format!("{moves} moves, {strips} reductions"))
}

fn c8_oracles(ctx: &Ctx) -> Verdict {
    let mut bad = Vec::new();
    let mut sectors = 0;
    for groups in &ctx.groups {
        for g in groups {
            for s in twisted_sectors(g).expect("sectors") {
                sectors += 1;
                let (direct, burnside) = match fixed_locus(g, &s.element).expect("locus") {
                    FixedLocus::Points(p) => {
                        let act = |h: &GroupElement, q: [TorusPoint; 3]| h.act(q);
                        (
                            orbit_decomposition(g, &p, act).expect("orbits").len(),
                            burnside_orbit_count(g, &p, act).expect("burnside"),
                        )
                    }
                    FixedLocus::Curves { free, components } => {
                        let t: Vec<usize> = (0..3).filter(|&j| j != free).collect();
                        let act = |h: &GroupElement, c: [TorusPoint; 2]| {
                            [h.act_on_torus(t[0], c[0]), h.act_on_torus(t[1], c[1])]
                        };
                        (
                            orbit_decomposition(g, &components, act)
                                .expect("orbits")
                                .len(),
                            burnside_orbit_count(g, &components, act).expect("burnside"),
                        )
                    }
                    other => {
                        bad.push(format!(
                            "{g}: sector {} has locus {other:?}",
                            s.element.literal()
                        ));
                        continue;
                    }
                };
                if direct != burnside {
                    bad.push(format!(
                        "(a) {g} at {}: {direct} vs {burnside}",
                        s.element.literal()
                    ));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..AFFINE_SAMPLES {
        let n = CurveOrder::ALL[rng.gen_range(0..3)];
        let el = all_elements(n);
        let g = el[rng.gen_range(0..el.len())];
        let h = el[rng.gen_range(0..el.len())];
        let gh = g.compose(&h).expect("compose");
        let j = rng.gen_range(0..3);
        let p = TorusPoint::from_twelfths(rng.gen_range(0..12), rng.gen_range(0..12));
        let step = act_affine(n, h.twist()[j], h.shift()[j], p).expect("affine");
        let want = act_affine(n, g.twist()[j], g.shift()[j], step).expect("affine");
        if gh.act_on_torus(j, p) != want {
            bad.push(format!(
                "(b) {} * {} on torus {j}",
                g.literal(),
                h.literal()
            ));
        }
    }

    for n in CurveOrder::ALL {
        let lib: Vec<Vec<u8>> = admissible_characters(n)
            .iter()
            .map(|c| c.shifts.clone())
            .collect();
        if lib != character_scan(n) {
            bad.push(format!("(c) n={n}: characters {lib:?}"));
        }
    }
    bad.truncate(10);
    verdict(
        bad,
        format!("{sectors} sectors, {AFFINE_SAMPLES} samples, 3 character sets"),
    )
}

fn c9_lemmas() -> Verdict {
    let mut bad = Vec::new();
    for (q, want) in [(3u8, 4usize), (2, 1)] {
        let planes = axes_avoiding_subspaces(q).expect("planes");
        if planes.len() != want {
            bad.push(format!("F_{q}: {} planes", planes.len()));
        }
    }
    for n in CurveOrder::ALL {
        for g in all_elements(n).into_iter().filter(|g| g.is_fully_twisted()) {
            let s = age(n, g.twist()) + age(n, g.inverse().twist());
            if s != 3 {
                bad.push(format!("κ({0}) + κ({0}⁻¹) = {s}", g.literal()));
            }
        }
        for m in 1..n.n() {
            let det = zeta_matrix(n, m)
                .expect("zeta")
                .minus_identity()
                .det()
                .unsigned_abs() as usize;
            for a in 0..n.shift_modulus() {
                let k = solve_twisted_fixed_points(n, m, a).expect("fixed").len();
                if k != det {
                    bad.push(format!(
                        "n={n} m={m} a={a}: {k} fixed points, |det| = {det}"
                    ));
                }
            }
        }
    }
    verdict(bad, "planes 4/1, ages, fixed-point counts")
}

fn c10_determinism() -> Verdict {
    let mut bad = Vec::new();
    let runs: [Vec<&str>; 4] = [
        vec!["classify", "--n", "3", "--format", "json"],
        vec!["classify", "--n", "4", "--format", "json"],
        vec!["classify", "--n", "6", "--format", "json"],
        vec!["verify-paper", "--format", "json"],
    ];
    for args in &runs {
        let mut serial = args.clone();
        serial.extend(["--jobs", "1"]);
        let a = torb(&serial);
        let b = torb(args);
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            bad.push(format!(
                "`{}` differs between serial and parallel runs",
                args.join(" ")
            ));
        }
        if a.stdout.is_empty() {
            bad.push(format!("`{}` produced no output", args.join(" ")));
        }
    }
    verdict(
        bad,
        "classify (n=3,4,6) and verify-paper, --jobs 1 vs default pool",
    )
}

fn main() {
    let start = Instant::now();
    let golden = GoldenData::embedded().expect("embedded golden data");
    let classes = CurveOrder::ALL
        .iter()
        .map(|&n| {
            let t = Instant::now();
            let c = classify(n).expect("classify");
            (c, t.elapsed())
        })
        .collect();
    let groups = CurveOrder::ALL
        .iter()
        .map(|&n| enumerate_admissible(n))
        .collect();
    let ctx = Ctx {
        golden,
        classes,
        groups,
    };

    let results: Vec<(&str, Verdict)> = vec![
        ("classification counts", c1_counts(&ctx)),
        ("firm Hodge rows", c2_firm_rows(&ctx)),
        ("disputed rows", c3_disputed(&ctx)),
        ("fundamental groups", c4_pi1(&ctx)),
        ("contribution lists", c5_breakdowns(&ctx)),
        ("untwisted sector", c6_untwisted(&ctx)),
        ("move and reduction soundness", c7_moves(&ctx)),
        ("oracle agreement", c8_oracles(&ctx)),
        ("structure lemmas", c9_lemmas()),
        ("determinism", c10_determinism()),
    ];
    let elapsed = start.elapsed();

    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        if !v.ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if v.ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    let in_time = elapsed <= TOTAL_LIMIT;
    println!(
        "{} runtime: {elapsed:.1?} (limit {TOTAL_LIMIT:?})",
        if in_time { "PASS" } else { "FAIL" }
    );
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 || !in_time {
        std::process::exit(1);
    }
}
