//! Equivalence moves on admissible subgroups and the resulting classification.
//!
//! Three kinds of move give equivariant homeomorphisms of the quotients:
//!
//! * permuting the three curve factors,
//! * conjugating by a translation `λ = (λ₁, λ₂, λ₃)` of `E_n³`, which changes the shift
//!   on torus `j` by `(ζ^{m_j} − 1) λ_j`; only `λ_j` keeping every shift inside `⟨t_n⟩`
//!   are allowed, and each such `λ_j` induces a character `m ↦ χ(m)` (found by brute
//!   force in [`admissible_characters`]),
//! * `z_j ↦ −z_j` on one factor, which commutes with `ζ_n` and sends `t_n` to `−t_n`.
//!
//! On top of these, [`strip_reduce`] applies the reduction principle: a pure translation
//! supported on a single factor `j` can be divided out first, and the isogeny `ζ − 1`
//! (kernel `⟨t_n⟩`) identifies the intermediate torus with `E_n³` while sending every
//! torus-`j` shift to zero.
//!
//! [`canonical_form`] takes the lexicographically smallest element list over the move
//! orbit of the stripped group, and [`classify`] groups the enumeration by canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::abelian::FiniteAbelianGroup;
use crate::cohomology::{chen_ruan_diamond, HodgeDiamond};
use crate::error::{Error, Result};
use crate::exact_torus::{grid_points, zeta_matrix, CurveModel, CurveOrder};
use crate::pi1::fundamental_group;
use crate::report::golden::GoldenData;
use crate::vw_group::{closure, enumerate_admissible, GroupElement, Subgroup};

/// A permutation of the three curve factors; `images[i]` is where factor `i` goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPermutation([usize; 3]);

impl TorusPermutation {
    pub const IDENTITY: TorusPermutation = TorusPermutation([0, 1, 2]);

    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i >= 3 || seen[i] {
                return Err(Error::Contract(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(TorusPermutation(images))
    }

    /// The transposition of factors `i` and `j` (0-based).
    pub fn transposition(i: usize, j: usize) -> Result<Self> {
        let mut images = [0, 1, 2];
        if i >= 3 || j >= 3 {
            return Err(Error::Contract("torus index out of range".into()));
        }
        images.swap(i, j);
        Ok(TorusPermutation(images))
    }

    pub fn all() -> [TorusPermutation; 6] {
        [
            TorusPermutation([0, 1, 2]),
            TorusPermutation([0, 2, 1]),
            TorusPermutation([1, 0, 2]),
            TorusPermutation([1, 2, 0]),
            TorusPermutation([2, 0, 1]),
            TorusPermutation([2, 1, 0]),
        ]
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    pub fn apply<T: Copy>(&self, triple: [T; 3]) -> [T; 3] {
        let mut out = triple;
        for (i, &v) in triple.iter().enumerate() {
            out[self.0[i]] = v;
        }
        out
    }
}

/// One generator-level equivalence move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Permute(TorusPermutation),
    /// Per-torus index into [`admissible_characters`].
    Conjugate([u8; 3]),
    /// 0-based torus index.
    Negate(usize),
}

impl Move {
    pub fn apply(&self, g: &Subgroup) -> Result<Subgroup> {
        match *self {
            Move::Permute(s) => Ok(permute_tori(s, g)),
            Move::Conjugate(c) => conjugate_by_character(c, g),
            Move::Negate(j) => negate_torus(j, g),
        }
    }

    /// A generating set of the move group for `n`.
    pub fn generators(n: CurveOrder) -> Vec<Move> {
        let mut out = vec![
            Move::Permute(TorusPermutation([1, 0, 2])),
            Move::Permute(TorusPermutation([0, 2, 1])),
        ];
        if admissible_characters(n).len() > 1 {
            for j in 0..3 {
                let mut c = [0u8; 3];
                c[j] = 1;
                out.push(Move::Conjugate(c));
            }
        }
        if n.shift_modulus() > 2 {
            out.extend((0..3).map(Move::Negate));
        }
        out
    }
}

pub fn permute_tori(sigma: TorusPermutation, g: &Subgroup) -> Subgroup {
    let n = g.curve_order();
    g.map_elements(|x| {
        GroupElement::new_unchecked(n, sigma.apply(x.twist()), sigma.apply(x.shift()))
    })
}

/// A shift change `m ↦ χ(m)` induced on one torus by conjugating with a translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    /// `shifts[m]` is the shift change for twist `m`, in units of `t_n`.
    pub shifts: Vec<u8>,
}

impl Character {
    pub fn eval(&self, m: u8) -> u8 {
        self.shifts[m as usize]
    }
}

/// Every character `m ↦ (ζ^m − 1) λ / t_n` for `λ` on the 1/12 grid keeping all images
/// inside `⟨t_n⟩`, sorted. Index 0 is always the zero character.
pub fn admissible_characters(n: CurveOrder) -> &'static [Character] {
    static CELLS: [OnceLock<Vec<Character>>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = CurveOrder::ALL.iter().position(|&x| x == n).unwrap();
    CELLS[idx].get_or_init(|| scan_characters(n))
}

fn scan_characters(n: CurveOrder) -> Vec<Character> {
    let t = CurveModel::new(n).t_coords;
    let k = n.shift_modulus();
    let span: Vec<_> = (0..k).map(|a| t.scale(a as i64)).collect();
    let shifted: Vec<_> = (0..n.n())
        .map(|m| zeta_matrix(n, m).unwrap().minus_identity())
        .collect();
    let mut found = BTreeSet::new();
    for lambda in grid_points() {
        let table: Option<Vec<u8>> = shifted
            .iter()
            .map(|mat| {
                let d = mat.apply(lambda);
                span.iter().position(|&s| s == d).map(|a| a as u8)
            })
            .collect();
        if let Some(shifts) = table {
            found.insert(Character { shifts });
        }
    }
    found.into_iter().collect()
}

fn check_character_indices(n: CurveOrder, c: [u8; 3]) -> Result<()> {
    let count = admissible_characters(n).len();
    for &cj in &c {
        if cj as usize >= count {
            return Err(Error::OutOfRange {
                what: "character index",
                value: cj as i64,
                bound: count as i64,
            });
        }
    }
    Ok(())
}

/// Conjugates every element by the translations realising characters `c`.
pub fn conjugate_by_character(c: [u8; 3], g: &Subgroup) -> Result<Subgroup> {
    let n = g.curve_order();
    check_character_indices(n, c)?;
    let chars = admissible_characters(n);
    let k = n.shift_modulus();
    Ok(g.map_elements(|x| {
        let t = x.twist();
        let s = x.shift();
        let shift = std::array::from_fn(|j| (s[j] + chars[c[j] as usize].eval(t[j])) % k);
        GroupElement::new_unchecked(n, t, shift)
    }))
}

/// Negates shifts on torus `j` (0-based), realised by `z_j ↦ −z_j`.
pub fn negate_torus(j: usize, g: &Subgroup) -> Result<Subgroup> {
    if j >= 3 {
        return Err(Error::OutOfRange {
            what: "torus index",
            value: j as i64,
            bound: 3,
        });
    }
    let n = g.curve_order();
    let k = n.shift_modulus();
    Ok(g.map_elements(|x| {
        let mut s = x.shift();
        s[j] = (k - s[j]) % k;
        GroupElement::new_unchecked(n, x.twist(), s)
    }))
}

/// Torus indices whose shifts the reduction principle removes.
pub fn strip_support(g: &Subgroup) -> [bool; 3] {
    let mut stripped = [false; 3];
    loop {
        let mut changed = false;
        for x in g.translations() {
            let live: Vec<usize> = (0..3)
                .filter(|&j| !stripped[j] && x.shift()[j] != 0)
                .collect();
            if live.len() == 1 {
                stripped[live[0]] = true;
                changed = true;
            }
        }
        if !changed {
            return stripped;
        }
    }
}

/// Repeatedly divides out pure translations supported on a single torus.
///
/// The fixpoint does not depend on the order of the steps: a coordinate that can be
/// stripped stays strippable after other coordinates are stripped.
pub fn strip_reduce(g: &Subgroup) -> Result<Subgroup> {
    g.require_admissible()?;
    let stripped = strip_support(g);
    if !stripped.iter().any(|&s| s) {
        return Ok(g.clone());
    }
    let n = g.curve_order();
    Ok(g.map_elements(|x| {
        let mut s = x.shift();
        for j in 0..3 {
            if stripped[j] {
                s[j] = 0;
            }
        }
        GroupElement::new_unchecked(n, x.twist(), s)
    }))
}

/// Element-index permutations for every move in the move group of `n`.
fn move_table(n: CurveOrder) -> &'static [Vec<u16>] {
    static CELLS: [OnceLock<Vec<Vec<u16>>>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = CurveOrder::ALL.iter().position(|&x| x == n).unwrap();
    CELLS[idx].get_or_init(|| build_move_table(n))
}

fn build_move_table(n: CurveOrder) -> Vec<Vec<u16>> {
    let chars = admissible_characters(n);
    let k = n.shift_modulus();
    let negations: Vec<[bool; 3]> = if k > 2 {
        (0..8)
            .map(|b| [b & 1 != 0, b & 2 != 0, b & 4 != 0])
            .collect()
    } else {
        vec![[false; 3]]
    };
    let nc = chars.len();
    let all = crate::vw_group::all_elements(n);
    let mut table = Vec::new();
    for sigma in TorusPermutation::all() {
        for ci in 0..nc * nc * nc {
            let c = [ci % nc, (ci / nc) % nc, ci / (nc * nc)];
            for neg in &negations {
                let map = all
                    .iter()
                    .map(|x| {
                        let t = x.twist();
                        let s = x.shift();
                        let shift: [u8; 3] = std::array::from_fn(|j| {
                            let a = if neg[j] { (k - s[j]) % k } else { s[j] };
                            (a + chars[c[j]].eval(t[j])) % k
                        });
                        GroupElement::new_unchecked(n, sigma.apply(t), sigma.apply(shift)).index()
                            as u16
                    })
                    .collect();
                table.push(map);
            }
        }
    }
    table
}

/// Size of the full move group for `n` (`6·27·8`, `6·8`, `6`).
pub fn move_group_order(n: CurveOrder) -> usize {
    move_table(n).len()
}

/// Lexicographically smallest element list over the move orbit of `strip_reduce(g)`.
pub fn canonical_form(g: &Subgroup) -> Result<Subgroup> {
    let stripped = strip_reduce(g)?;
    let n = g.curve_order();
    let indices: Vec<u16> = stripped.iter().map(|x| x.index() as u16).collect();
    let mut best: Option<Vec<u16>> = None;
    let mut image = Vec::with_capacity(indices.len());
    for map in move_table(n) {
        image.clear();
        image.extend(indices.iter().map(|&i| map[i as usize]));
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    let elements = best
        .unwrap_or_default()
        .into_iter()
        .map(|i| GroupElement::from_index(n, i as usize))
        .collect();
    Ok(Subgroup::from_closed_set(n, elements))
}

/// All 2-dimensional subspaces of `𝔽_q³` meeting the coordinate axes only at 0.
pub fn axes_avoiding_subspaces(q: u8) -> Result<Vec<Vec<[u8; 3]>>> {
    if q != 2 && q != 3 {
        return Err(Error::Contract(format!("field size {q} not in {{2, 3}}")));
    }
    let vectors: Vec<[u8; 3]> = (0..q)
        .flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| [a, b, c])))
        .collect();
    let span = |u: [u8; 3], v: [u8; 3]| -> BTreeSet<[u8; 3]> {
        let mut out = BTreeSet::new();
        for s in 0..q {
            for t in 0..q {
                out.insert(std::array::from_fn(|i| (s * u[i] + t * v[i]) % q));
            }
        }
        out
    };
    let on_axis = |v: &[u8; 3]| v.iter().filter(|&&x| x != 0).count() == 1;
    let plane_size = (q as usize) * (q as usize);
    let mut planes = BTreeSet::new();
    for &u in &vectors {
        for &v in &vectors {
            let p = span(u, v);
            if p.len() == plane_size && !p.iter().any(on_axis) {
                planes.insert(p.into_iter().collect::<Vec<_>>());
            }
        }
    }
    Ok(planes.into_iter().collect())
}

/// One homeomorphism class of quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub class_id: String,
    /// Canonical-form representative.
    pub representative: Subgroup,
    pub order: usize,
    pub rank: usize,
    pub diamond: HodgeDiamond,
    pub pi1: FiniteAbelianGroup,
    /// Number of enumerated admissible subgroups in the class.
    pub members: usize,
    /// Whether the class matches a row of the stored tables.
    pub listed: bool,
}

impl ClassRecord {
    pub fn hodge(&self) -> (u32, u32) {
        (self.diamond.h11(), self.diamond.h12())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    /// Already in the target class through strip reduction.
    AbsorbedByReduction,
    /// Invariants agree; classes combined.
    Merged,
    /// Invariants disagree; classes kept apart.
    Refused,
}

/// Audit record for one asserted merge into the class of the shift-free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeRecord {
    pub candidate: Subgroup,
    pub candidate_id: String,
    pub candidate_hodge: (u32, u32),
    pub candidate_pi1: FiniteAbelianGroup,
    pub target_id: String,
    pub target_hodge: (u32, u32),
    pub target_pi1: FiniteAbelianGroup,
    pub outcome: MergeOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: CurveOrder,
    pub classes: Vec<ClassRecord>,
    pub merges: Vec<MergeRecord>,
    /// Admissible subgroups enumerated.
    pub enumerated: usize,
}

impl Classification {
    pub fn class(&self, id: &str) -> Option<&ClassRecord> {
        self.classes.iter().find(|c| c.class_id == id)
    }

    /// Pairs of distinct classes sharing `(h11, h12)` and `π₁`.
    pub fn shared_invariant_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, a) in self.classes.iter().enumerate() {
            for b in &self.classes[i + 1..] {
                if a.hodge() == b.hodge() && a.pi1 == b.pi1 {
                    out.push((a.class_id.clone(), b.class_id.clone()));
                }
            }
        }
        out
    }
}

fn class_sort_key(id: &str) -> (bool, usize, String) {
    let tail = id.rsplit('.').next().unwrap_or("");
    let unlisted = tail.starts_with('X');
    let num = tail.trim_start_matches('X').parse().unwrap_or(usize::MAX);
    (unlisted, num, id.to_string())
}

/// Shift-free multiplicative part `⟨(1,n−1,0), (n−1,0,1)⟩`.
pub fn multiplicative_part(n: CurveOrder) -> Subgroup {
    let nn = n.n();
    closure(
        n,
        &[
            GroupElement::new_unchecked(n, [1, nn - 1, 0], [0; 3]),
            GroupElement::new_unchecked(n, [nn - 1, 0, 1], [0; 3]),
        ],
    )
    .expect("same curve order")
}

/// The groups `M × H` (axes-avoiding planes `H`) and `M × T_n` asserted to reduce to `M`.
pub fn merge_candidates(n: CurveOrder) -> Vec<Subgroup> {
    let m = multiplicative_part(n);
    let mut out = Vec::new();
    if n.shift_modulus() > 1 {
        for plane in axes_avoiding_subspaces(n.shift_modulus()).expect("q in {2, 3}") {
            let mut gens = m.generators().to_vec();
            gens.extend(
                plane
                    .iter()
                    .map(|&s| GroupElement::new_unchecked(n, [0; 3], s)),
            );
            out.push(closure(n, &gens).expect("same curve order"));
        }
    }
    out.push(Subgroup::full(n));
    out
}

/// Classifies `enumerate_admissible(n)` with labels from the embedded tables.
pub fn classify(n: CurveOrder) -> Result<Classification> {
    classify_with(n, &GoldenData::embedded()?)
}

/// Classifies `enumerate_admissible(n)`, labelling classes by the canonical forms of
/// the table rows in `golden`.
pub fn classify_with(n: CurveOrder, golden: &GoldenData) -> Result<Classification> {
    let groups = enumerate_admissible(n);
    let canon: Vec<Subgroup> = groups
        .par_iter()
        .map(canonical_form)
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<Subgroup, usize> = BTreeMap::new();
    for c in canon {
        *counts.entry(c).or_default() += 1;
    }

    let mut labels: BTreeMap<Subgroup, String> = BTreeMap::new();
    for row in golden.table_rows(n) {
        let g = row.group()?;
        labels.insert(canonical_form(&g)?, row.case_id.clone());
    }

    let reps: Vec<(Subgroup, usize)> = counts.into_iter().collect();
    let invariants: Vec<(HodgeDiamond, FiniteAbelianGroup, usize)> = reps
        .par_iter()
        .map(|(g, _)| {
            Ok((
                chen_ruan_diamond(g)?,
                fundamental_group(g)?,
                g.group_rank()?,
            ))
        })
        .collect::<Result<_>>()?;

    let mut unlisted = 0;
    let mut classes: Vec<ClassRecord> = Vec::new();
    let mut order_reps: Vec<usize> = (0..reps.len()).collect();
    order_reps.sort_by_key(|&i| (reps[i].0.order(), reps[i].0.clone()));
    for i in order_reps {
        let (rep, members) = &reps[i];
        let (diamond, pi1, rank) = invariants[i].clone();
        let (class_id, listed) = match labels.get(rep) {
            Some(id) => (id.clone(), true),
            None => {
                unlisted += 1;
                (format!("{}.X{}", n.roman(), unlisted), false)
            }
        };
        classes.push(ClassRecord {
            class_id,
            representative: rep.clone(),
            order: rep.order(),
            rank,
            diamond,
            pi1,
            members: *members,
            listed,
        });
    }

    let merges = apply_merges(n, &mut classes)?;
    classes.sort_by_key(|c| class_sort_key(&c.class_id));
    Ok(Classification {
        n,
        classes,
        merges,
        enumerated: groups.len(),
    })
}

fn apply_merges(n: CurveOrder, classes: &mut Vec<ClassRecord>) -> Result<Vec<MergeRecord>> {
    let target_rep = canonical_form(&multiplicative_part(n))?;
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for candidate in merge_candidates(n) {
        let canon = canonical_form(&candidate)?;
        if !seen.insert(canon.clone()) {
            continue;
        }
        let find = |cs: &[ClassRecord], g: &Subgroup| {
            cs.iter()
                .position(|c| &c.representative == g)
                .ok_or_else(|| Error::Consistency(format!("no class for {g}")))
        };
        let ti = find(classes, &target_rep)?;
        let ci = find(classes, &canon)?;
        let target = classes[ti].clone();
        let cand = classes[ci].clone();
        let outcome = if ti == ci {
            MergeOutcome::AbsorbedByReduction
        } else if cand.diamond == target.diamond && cand.pi1 == target.pi1 {
            MergeOutcome::Merged
        } else {
            MergeOutcome::Refused
        };
        records.push(MergeRecord {
            candidate: canon,
            candidate_id: cand.class_id.clone(),
            candidate_hodge: cand.hodge(),
            candidate_pi1: cand.pi1.clone(),
            target_id: target.class_id.clone(),
            target_hodge: target.hodge(),
            target_pi1: target.pi1.clone(),
            outcome: outcome.clone(),
        });
        if outcome == MergeOutcome::Merged {
            classes[ti].members += cand.members;
            classes.remove(ci);
        }
    }
    Ok(records)
}
