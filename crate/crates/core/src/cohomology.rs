//! Chen–Ruan orbifold Hodge numbers of `X_n / G`.
//!
//! For abelian `G` the orbifold cohomology splits over group elements:
//! `H^{p,q} = ⊕_g H^{p−κ(g), q−κ(g)}(X^g)^G`. The identity gives the untwisted sector
//! (invariant forms on `X_n`). Every other element with a nonempty fixed locus fixes
//! either finitely many points or a disjoint union of curves `E_n × {pt}`; its
//! `G`-invariant cohomology is one class per orbit of points, and per orbit of curves
//! either a `ℙ¹` or an elliptic curve depending on how the stabiliser acts on the
//! free factor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_torus::{fixed_raw, CurveOrder, TorusPoint};
use crate::vw_group::{GroupElement, Subgroup};

/// Orbifold Hodge numbers `h[p][q]`, `0 ≤ p, q ≤ 3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HodgeDiamond {
    pub h: [[u32; 4]; 4],
}

impl HodgeDiamond {
    pub fn h(&self, p: usize, q: usize) -> u32 {
        self.h[p][q]
    }

    pub fn h11(&self) -> u32 {
        self.h[1][1]
    }

    pub fn h12(&self) -> u32 {
        self.h[1][2]
    }

    pub fn h21(&self) -> u32 {
        self.h[2][1]
    }

    pub fn pair(&self) -> (u32, u32) {
        (self.h11(), self.h12())
    }

    /// `Σ (−1)^{p+q} h^{p,q}`.
    pub fn euler(&self) -> i64 {
        let mut e = 0i64;
        for p in 0..4 {
            for q in 0..4 {
                let v = self.h[p][q] as i64;
                e += if (p + q) % 2 == 0 { v } else { -v };
            }
        }
        e
    }

    pub fn add(&mut self, other: &HodgeDiamond) {
        for p in 0..4 {
            for q in 0..4 {
                self.h[p][q] += other.h[p][q];
            }
        }
    }

    /// Complex-conjugation and Serre symmetry.
    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|p| {
            (0..4).all(|q| self.h[p][q] == self.h[q][p] && self.h[p][q] == self.h[3 - p][3 - q])
        })
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, row) in self.h.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
            if p < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// `κ = Σ m_i / n`.
pub fn age(n: CurveOrder, twist: [u8; 3]) -> u8 {
    (twist.iter().map(|&m| m as u32).sum::<u32>() / n.n() as u32) as u8
}

/// Fixed set of one element on `X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    Full,
    Empty,
    Points(Vec<[TorusPoint; 3]>),
    /// Curves `E × {pt}` along torus `free`; each component is given by its points on
    /// the two twisted tori, in increasing torus order.
    Curves {
        free: usize,
        components: Vec<[TorusPoint; 2]>,
    },
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        matches!(self, FixedLocus::Empty)
    }
}

pub(crate) fn locus_of(g: &GroupElement) -> FixedLocus {
    let n = g.order_n();
    let t = g.twist();
    let s = g.shift();
    if g.is_identity() {
        return FixedLocus::Full;
    }
    if (0..3).any(|j| t[j] == 0 && s[j] != 0) {
        return FixedLocus::Empty;
    }
    let per: Vec<&[TorusPoint]> = (0..3)
        .map(|j| {
            if t[j] == 0 {
                &[][..]
            } else {
                fixed_raw(n, t[j], s[j])
            }
        })
        .collect();
    match (0..3).find(|&j| t[j] == 0) {
        None => {
            let mut pts = Vec::with_capacity(per[0].len() * per[1].len() * per[2].len());
            for &x in per[0] {
                for &y in per[1] {
                    for &z in per[2] {
                        pts.push([x, y, z]);
                    }
                }
            }
            FixedLocus::Points(pts)
        }
        Some(free) => {
            let (a, b) = twisted_pair(free);
            let mut components = Vec::new();
            for &x in per[a] {
                for &y in per[b] {
                    components.push([x, y]);
                }
            }
            FixedLocus::Curves { free, components }
        }
    }
}

fn twisted_pair(free: usize) -> (usize, usize) {
    match free {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Fixed locus of `g ∈ G`.
pub fn fixed_locus(group: &Subgroup, g: &GroupElement) -> Result<FixedLocus> {
    if !group.contains(g) {
        return Err(Error::Contract(format!("{g} is not in the group")));
    }
    Ok(locus_of(g))
}

/// Invariant monomials `dz_I ∧ dz̄_J` under the given twists.
///
/// An empty twist list gives the Hodge diamond of the 3-torus.
pub fn invariant_form_diamond(n: CurveOrder, twists: &[[u8; 3]]) -> HodgeDiamond {
    let nn = n.n() as u32;
    let mut d = HodgeDiamond::default();
    for i_mask in 0u8..8 {
        for j_mask in 0u8..8 {
            let fixed = twists.iter().all(|t| {
                let mut w = 0u32;
                for k in 0..3 {
                    if i_mask & (1 << k) != 0 {
                        w += t[k] as u32;
                    }
                    if j_mask & (1 << k) != 0 {
                        w += nn - t[k] as u32;
                    }
                }
                w.is_multiple_of(nn)
            });
            if fixed {
                d.h[i_mask.count_ones() as usize][j_mask.count_ones() as usize] += 1;
            }
        }
    }
    d
}

/// The identity sector; translations act trivially on forms.
pub fn untwisted_sector_diamond(group: &Subgroup) -> Result<HodgeDiamond> {
    group.require_admissible()?;
    let twists: Vec<[u8; 3]> = group.generators().iter().map(|g| g.twist()).collect();
    Ok(invariant_form_diamond(group.curve_order(), &twists))
}

/// One orbit with the elements fixing (any, hence every) point of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<P> {
    pub points: Vec<P>,
    pub stabilizer: Vec<GroupElement>,
}

impl<P> Orbit<P> {
    pub fn stabilizer_group(&self, n: CurveOrder) -> Subgroup {
        Subgroup::from_closed_set(n, self.stabilizer.clone())
    }
}

/// Partitions `points` into `G`-orbits. Stabilisers are computed element-wise.
pub fn orbit_decomposition<P, F>(group: &Subgroup, points: &[P], act: F) -> Result<Vec<Orbit<P>>>
where
    P: Ord + Copy,
    F: Fn(&GroupElement, P) -> P,
{
    let index: BTreeMap<P, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen = vec![false; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![points[start]];
        let mut frontier = vec![points[start]];
        while let Some(p) = frontier.pop() {
            for g in group.generators() {
                let q = act(g, p);
                let Some(&i) = index.get(&q) else {
                    return Err(Error::Contract(
                        "point set is not closed under the action".into(),
                    ));
                };
                if !seen[i] {
                    seen[i] = true;
                    members.push(q);
                    frontier.push(q);
                }
            }
        }
        members.sort();
        let base = points[start];
        let stabilizer = group
            .iter()
            .copied()
            .filter(|g| act(g, base) == base)
            .collect();
        orbits.push(Orbit {
            points: members,
            stabilizer,
        });
    }
    Ok(orbits)
}

/// `(1/|G|) Σ_h |Fix(h)|`.
pub fn burnside_orbit_count<P, F>(group: &Subgroup, points: &[P], act: F) -> Result<usize>
where
    P: PartialEq + Copy,
    F: Fn(&GroupElement, P) -> P,
{
    let total: usize = group
        .iter()
        .map(|g| points.iter().filter(|&&p| act(g, p) == p).count())
        .sum();
    if !total.is_multiple_of(group.order()) {
        return Err(Error::Consistency(
            "Burnside sum not divisible by |G|".into(),
        ));
    }
    Ok(total / group.order())
}

pub(crate) fn act_on_point(g: &GroupElement, p: [TorusPoint; 3]) -> [TorusPoint; 3] {
    g.act(p)
}

pub(crate) fn act_on_component(
    free: usize,
) -> impl Fn(&GroupElement, [TorusPoint; 2]) -> [TorusPoint; 2] {
    let (a, b) = twisted_pair(free);
    move |g, c| [g.act_on_torus(a, c[0]), g.act_on_torus(b, c[1])]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectorKind {
    Points,
    Curves { free: usize },
}

/// Cohomological type of one orbit of fixed components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitType {
    PointLike,
    ProjectiveLine,
    Elliptic,
}

/// The summand of one twisted sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorContribution {
    pub element: GroupElement,
    pub kappa: u8,
    pub kind: SectorKind,
    pub orbit_types: Vec<OrbitType>,
    pub delta: HodgeDiamond,
}

impl SectorContribution {
    pub fn orbit_count(&self) -> usize {
        self.orbit_types.len()
    }

    pub fn elliptic_count(&self) -> usize {
        self.orbit_types
            .iter()
            .filter(|&&t| t == OrbitType::Elliptic)
            .count()
    }
}

/// Contribution of a non-identity `g` with nonempty fixed locus.
pub fn sector_contribution(group: &Subgroup, g: &GroupElement) -> Result<SectorContribution> {
    let locus = fixed_locus(group, g)?;
    let n = group.curve_order();
    let kappa = age(n, g.twist());
    let mut delta = HodgeDiamond::default();
    let (kind, orbit_types) = match locus {
        FixedLocus::Full | FixedLocus::Empty => {
            return Err(Error::Contract(format!(
                "{g} has no twisted sector (identity or empty locus)"
            )))
        }
        FixedLocus::Points(points) => {
            let orbits = orbit_decomposition(group, &points, act_on_point)?;
            let k = kappa as usize;
            delta.h[k][k] = orbits.len() as u32;
            (SectorKind::Points, vec![OrbitType::PointLike; orbits.len()])
        }
        FixedLocus::Curves { free, components } => {
            if kappa != 1 {
                return Err(Error::Consistency(format!(
                    "curve sector {g} has age {kappa}"
                )));
            }
            let orbits = orbit_decomposition(group, &components, act_on_component(free))?;
            let types: Vec<OrbitType> = orbits
                .iter()
                .map(|o| {
                    if o.stabilizer.iter().all(|h| h.twist()[free] == 0) {
                        OrbitType::Elliptic
                    } else {
                        OrbitType::ProjectiveLine
                    }
                })
                .collect();
            let elliptic = types.iter().filter(|&&t| t == OrbitType::Elliptic).count() as u32;
            delta.h[1][1] = types.len() as u32;
            delta.h[2][2] = types.len() as u32;
            delta.h[2][1] = elliptic;
            delta.h[1][2] = elliptic;
            (SectorKind::Curves { free }, types)
        }
    };
    Ok(SectorContribution {
        element: *g,
        kappa,
        kind,
        orbit_types,
        delta,
    })
}

/// Every twisted sector of `G` with a nonempty fixed locus, in element order.
pub fn twisted_sectors(group: &Subgroup) -> Result<Vec<SectorContribution>> {
    group
        .iter()
        .filter(|g| !g.is_identity() && !locus_of(g).is_empty())
        .map(|g| sector_contribution(group, g))
        .collect()
}

/// The full orbifold Hodge diamond. Symmetry is checked, never imposed.
pub fn chen_ruan_diamond(group: &Subgroup) -> Result<HodgeDiamond> {
    let mut d = untwisted_sector_diamond(group)?;
    for s in twisted_sectors(group)? {
        d.add(&s.delta);
    }
    if !d.is_symmetric() {
        return Err(Error::Consistency(format!(
            "asymmetric diamond for {group}:\n{d}"
        )));
    }
    Ok(d)
}

/// One line of a per-element listing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakdownEntry {
    pub element: GroupElement,
    pub h11: u32,
    pub h12: u32,
    /// Permutation-orbit size of `element`; only set in the `n = 6` grouping.
    pub orbit_size: Option<usize>,
}

/// Smaller of `g` and `g⁻¹`.
pub fn inverse_pair_key(g: &GroupElement) -> GroupElement {
    (*g).min(g.inverse())
}

fn permuted(g: &GroupElement, sigma: [usize; 3]) -> GroupElement {
    let mut t = [0u8; 3];
    let mut s = [0u8; 3];
    for i in 0..3 {
        t[sigma[i]] = g.twist()[i];
        s[sigma[i]] = g.shift()[i];
    }
    GroupElement::new_unchecked(g.order_n(), t, s)
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Smallest inverse-pair key over all coordinate permutations of `g`.
pub fn permutation_pair_key(g: &GroupElement) -> GroupElement {
    PERMUTATIONS
        .iter()
        .map(|&s| inverse_pair_key(&permuted(g, s)))
        .min()
        .expect("nonempty")
}

/// Number of distinct coordinate permutations of `g`.
pub fn permutation_orbit_size(g: &GroupElement) -> usize {
    PERMUTATIONS
        .iter()
        .map(|&s| permuted(g, s))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Per-element listing of `(h11, h12)` contributions.
///
/// The identity comes first with the untwisted values. Each inverse pair then appears
/// once: a curve-type pair under its smaller element with doubled contribution (an
/// involution counts once); a point-type pair under its age-1 member with its orbit
/// count. For `n = 6` the pairs are further grouped by coordinate permutation, each
/// group listed under its smallest entry with the group total.
pub fn contribution_breakdown(group: &Subgroup) -> Result<Vec<BreakdownEntry>> {
    let untwisted = untwisted_sector_diamond(group)?;
    let mut entries = vec![BreakdownEntry {
        element: GroupElement::identity(group.curve_order()),
        h11: untwisted.h11(),
        h12: untwisted.h12(),
        orbit_size: None,
    }];
    let mut pairs: BTreeMap<GroupElement, BreakdownEntry> = BTreeMap::new();
    for s in twisted_sectors(group)? {
        let g = s.element;
        let key = inverse_pair_key(&g);
        let entry = match s.kind {
            SectorKind::Points => {
                if s.kappa != 1 {
                    continue;
                }
                BreakdownEntry {
                    element: g,
                    h11: s.orbit_count() as u32,
                    h12: 0,
                    orbit_size: None,
                }
            }
            SectorKind::Curves { .. } => {
                if g != key {
                    continue;
                }
                let factor = if g.inverse() == g { 1 } else { 2 };
                BreakdownEntry {
                    element: g,
                    h11: factor * s.orbit_count() as u32,
                    h12: factor * s.elliptic_count() as u32,
                    orbit_size: None,
                }
            }
        };
        pairs.insert(key, entry);
    }
    if group.curve_order() != CurveOrder::Six {
        entries.extend(pairs.into_values());
        return Ok(entries);
    }
    let mut grouped: BTreeMap<GroupElement, BreakdownEntry> = BTreeMap::new();
    for e in pairs.into_values() {
        let key = permutation_pair_key(&e.element);
        grouped
            .entry(key)
            .and_modify(|acc| {
                acc.h11 += e.h11;
                acc.h12 += e.h12;
                if e.element < acc.element {
                    acc.element = e.element;
                }
            })
            .or_insert(e);
    }
    entries[0].orbit_size = Some(1);
    entries.extend(grouped.into_values().map(|mut e| {
        e.orbit_size = Some(permutation_orbit_size(&e.element));
        e
    }));
    Ok(entries)
}
