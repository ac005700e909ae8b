//! The Vafa–Witten groups `V_n = (ℤ/n)² × T_n` acting on `X_n = E_n³`.
//!
//! An element `(m₁,m₂,m₃; a₁,a₂,a₃)` acts by `z_j ↦ ζ_n^{m_j} z_j + a_j t_n`. The
//! twists sum to zero mod `n`; shifts live in `ℤ/k_n`. Since `ζ_n` fixes `t_n`, the
//! composition law is componentwise addition. That law is checked against
//! [`act_affine`](crate::exact_torus::act_affine) in the tests rather than assumed.

use std::collections::BTreeSet;
use std::fmt;

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::exact_torus::{act_raw, CurveOrder, TorusPoint};

/// One affine symmetry of `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: CurveOrder,
    twist: [u8; 3],
    shift: [u8; 3],
}

impl GroupElement {
    /// Validated constructor.
    pub fn new(n: CurveOrder, twist: [u8; 3], shift: [u8; 3]) -> Result<Self> {
        for &m in &twist {
            if m >= n.n() {
                return Err(Error::OutOfRange {
                    what: "twist",
                    value: m as i64,
                    bound: n.n() as i64,
                });
            }
        }
        if n.shift_modulus() == 1 && shift.iter().any(|&a| a != 0) {
            return Err(Error::TorsionTrivial);
        }
        for &a in &shift {
            if a >= n.shift_modulus() {
                return Err(Error::OutOfRange {
                    what: "shift",
                    value: a as i64,
                    bound: n.shift_modulus() as i64,
                });
            }
        }
        if twist.iter().map(|&m| m as u32).sum::<u32>() % n.n() as u32 != 0 {
            return Err(Error::InadmissibleTwist(
                twist[0],
                twist[1],
                twist[2],
                n.n(),
            ));
        }
        Ok(GroupElement { n, twist, shift })
    }

    /// Builds an element from arbitrary integers, reducing them first.
    pub fn reduced(n: CurveOrder, twist: [i64; 3], shift: [i64; 3]) -> Result<Self> {
        let nn = n.n() as i64;
        let k = n.shift_modulus() as i64;
        Self::new(
            n,
            twist.map(|m| m.rem_euclid(nn) as u8),
            shift.map(|a| a.rem_euclid(k) as u8),
        )
    }

    pub(crate) fn new_unchecked(n: CurveOrder, twist: [u8; 3], shift: [u8; 3]) -> Self {
        GroupElement { n, twist, shift }
    }

    pub fn identity(n: CurveOrder) -> Self {
        GroupElement {
            n,
            twist: [0; 3],
            shift: [0; 3],
        }
    }

    pub fn order_n(&self) -> CurveOrder {
        self.n
    }

    pub fn twist(&self) -> [u8; 3] {
        self.twist
    }

    pub fn shift(&self) -> [u8; 3] {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.twist == [0; 3] && self.shift == [0; 3]
    }

    /// Pure translation: trivial twist.
    pub fn is_translation(&self) -> bool {
        self.twist == [0; 3]
    }

    /// Every twist entry nonzero.
    pub fn is_fully_twisted(&self) -> bool {
        self.twist.iter().all(|&m| m != 0)
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n != other.n {
            return Err(Error::MismatchedOrder(self.n.n(), other.n.n()));
        }
        Ok(self.add(other))
    }

    #[inline]
    pub(crate) fn add(&self, other: &GroupElement) -> GroupElement {
        let n = self.n.n();
        let k = self.n.shift_modulus();
        GroupElement {
            n: self.n,
            twist: std::array::from_fn(|i| (self.twist[i] + other.twist[i]) % n),
            shift: std::array::from_fn(|i| (self.shift[i] + other.shift[i]) % k),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.n.n();
        let k = self.n.shift_modulus();
        GroupElement {
            n: self.n,
            twist: self.twist.map(|m| (n - m) % n),
            shift: self.shift.map(|a| (k - a) % k),
        }
    }

    /// `g^e` in multiplicative notation.
    pub fn pow(&self, e: u64) -> GroupElement {
        let n = self.n.n() as u64;
        let k = self.n.shift_modulus() as u64;
        GroupElement {
            n: self.n,
            twist: self.twist.map(|m| ((m as u64 * e) % n) as u8),
            shift: self.shift.map(|a| ((a as u64 * e) % k) as u8),
        }
    }

    pub fn element_order(&self) -> u64 {
        let mut g = *self;
        let mut e = 1;
        while !g.is_identity() {
            g = g.add(self);
            e += 1;
        }
        e
    }

    /// Age `κ(g) = Σ m_i / n`, in `{0, 1, 2}`.
    pub fn age(&self) -> u8 {
        (self.twist.iter().map(|&m| m as u32).sum::<u32>() / self.n.n() as u32) as u8
    }

    /// Action on one curve factor.
    #[inline]
    pub fn act_on_torus(&self, j: usize, p: TorusPoint) -> TorusPoint {
        act_raw(self.n, self.twist[j], self.shift[j], p)
    }

    pub fn act(&self, p: [TorusPoint; 3]) -> [TorusPoint; 3] {
        std::array::from_fn(|j| self.act_on_torus(j, p[j]))
    }

    /// Dense index; ascending index order equals lexicographic order on `(twist, shift)`.
    pub fn index(&self) -> usize {
        let n = self.n.n() as usize;
        let k = self.n.shift_modulus() as usize;
        let mut i = self.twist[0] as usize * n + self.twist[1] as usize;
        for &a in &self.shift {
            i = i * k + a as usize;
        }
        i
    }

    pub fn from_index(n: CurveOrder, mut i: usize) -> GroupElement {
        let nn = n.n() as usize;
        let k = n.shift_modulus() as usize;
        let mut shift = [0u8; 3];
        for slot in shift.iter_mut().rev() {
            *slot = (i % k) as u8;
            i /= k;
        }
        let m2 = (i % nn) as u8;
        let m1 = (i / nn) as u8;
        let m3 = ((2 * nn - m1 as usize - m2 as usize) % nn) as u8;
        GroupElement {
            n,
            twist: [m1, m2, m3],
            shift,
        }
    }

    /// Group-literal form `m1,m2,m3;a1,a2,a3`.
    pub fn literal(&self) -> String {
        let t = self.twist;
        let s = self.shift;
        format!("{},{},{};{},{},{}", t[0], t[1], t[2], s[0], s[1], s[2])
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.literal())
    }
}

/// Every element of `V_n`, in index order.
pub fn all_elements(n: CurveOrder) -> Vec<GroupElement> {
    (0..n.vafa_witten_order())
        .map(|i| GroupElement::from_index(n, i))
        .collect()
}

/// A subgroup of `V_n`, identified by its sorted element set.
///
/// The cached generators are informational; equality, ordering and hashing only
/// look at the element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    n: CurveOrder,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.elements).cmp(&(other.n, &other.elements))
    }
}

/// Smallest subgroup containing `gens`.
pub fn closure(n: CurveOrder, gens: &[GroupElement]) -> Result<Subgroup> {
    for g in gens {
        if g.n != n {
            return Err(Error::MismatchedOrder(n.n(), g.n.n()));
        }
    }
    Ok(closure_unchecked(n, gens))
}

fn closure_unchecked(n: CurveOrder, gens: &[GroupElement]) -> Subgroup {
    let size = n.vafa_witten_order();
    let mut seen = vec![false; size];
    let identity = GroupElement::identity(n);
    seen[identity.index()] = true;
    let mut frontier = vec![identity];
    let mut out = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.add(g);
            let i = y.index();
            if !seen[i] {
                seen[i] = true;
                out.push(y);
                frontier.push(y);
            }
        }
    }
    out.sort_unstable();
    Subgroup {
        n,
        elements: out,
        generators: gens.to_vec(),
    }
}

impl Subgroup {
    /// Wraps an element set already known to be a subgroup; computes generators greedily.
    pub(crate) fn from_closed_set(n: CurveOrder, mut elements: Vec<GroupElement>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let generators = greedy_generators(n, &elements);
        Subgroup {
            n,
            elements,
            generators,
        }
    }

    /// Builds a subgroup from an explicit element list, checking closure.
    pub fn from_elements(n: CurveOrder, elements: Vec<GroupElement>) -> Result<Subgroup> {
        let candidate = Subgroup::from_closed_set(n, elements);
        let closed = closure(n, &candidate.elements)?;
        if closed.elements != candidate.elements {
            return Err(Error::Contract("element set is not closed".into()));
        }
        Ok(candidate)
    }

    pub fn trivial(n: CurveOrder) -> Subgroup {
        closure_unchecked(n, &[])
    }

    /// `V_n` itself.
    pub fn full(n: CurveOrder) -> Subgroup {
        Subgroup::from_closed_set(n, all_elements(n))
    }

    pub fn curve_order(&self) -> CurveOrder {
        self.n
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn twist_projection(&self) -> BTreeSet<[u8; 3]> {
        self.elements.iter().map(|g| g.twist).collect()
    }

    /// Surjects onto the multiplicative part: the twist projection has order `n²`.
    pub fn is_admissible(&self) -> bool {
        let n = self.n.n() as usize;
        self.twist_projection().len() == n * n
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible)
        }
    }

    /// All pure translations in the group.
    pub fn translations(&self) -> Vec<GroupElement> {
        self.elements
            .iter()
            .copied()
            .filter(GroupElement::is_translation)
            .collect()
    }

    /// Abelian structure of the group in invariant-factor form.
    pub fn structure(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_torsion_counts(self.order() as u64, |p, k| {
            let e = p.pow(k);
            self.elements
                .iter()
                .filter(|g| g.pow(e).is_identity())
                .count() as u64
        })
    }

    /// Minimal number of generators minus two.
    pub fn group_rank(&self) -> Result<usize> {
        self.require_admissible()?;
        Ok(self.structure().generator_count() - 2)
    }

    /// Quotient `G / N` in invariant-factor form; `N` must be a subgroup of `G`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<FiniteAbelianGroup> {
        if !normal.is_subgroup_of(self) {
            return Err(Error::Contract("quotient by a non-subgroup".into()));
        }
        let index = (self.order() / normal.order()) as u64;
        Ok(FiniteAbelianGroup::from_torsion_counts(index, |p, k| {
            let e = p.pow(k);
            let hits = self
                .elements
                .iter()
                .filter(|g| normal.contains(&g.pow(e)))
                .count();
            (hits / normal.order()) as u64
        }))
    }

    /// Generators in the normal form `g₁ = (1,n−1,0;*)`, `g₂ = (n−1,0,1;*)` followed by
    /// pure translations, each chosen lexicographically smallest.
    ///
    /// Meaningful for admissible groups; falls back to the cached generators otherwise.
    pub fn normal_form_generators(&self) -> Vec<GroupElement> {
        if !self.is_admissible() {
            return self.generators.clone();
        }
        let n = self.n.n();
        let pick = |t: [u8; 3]| self.elements.iter().copied().find(|g| g.twist == t);
        let (Some(g1), Some(g2)) = (pick([1, n - 1, 0]), pick([n - 1, 0, 1])) else {
            return self.generators.clone();
        };
        let mut gens = vec![g1, g2];
        let translations = self.translations();
        let mut span = closure_unchecked(self.n, &[]);
        for t in translations {
            if !span.contains(&t) {
                gens.push(t);
                let basis: Vec<_> = gens[2..].to_vec();
                span = closure_unchecked(self.n, &basis);
            }
        }
        gens
    }

    /// Renders the group as a literal `g | g | …` from its normal-form generators.
    pub fn literal(&self) -> String {
        self.normal_form_generators()
            .iter()
            .map(GroupElement::literal)
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Applies an element-wise map that is known to be a group homomorphism.
    pub(crate) fn map_elements(&self, f: impl Fn(&GroupElement) -> GroupElement) -> Subgroup {
        let elements: Vec<_> = self.elements.iter().map(f).collect();
        Subgroup::from_closed_set(self.n, elements)
    }
}

fn greedy_generators(n: CurveOrder, elements: &[GroupElement]) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let mut span = closure_unchecked(n, &[]);
    // high-order elements first keeps the list short
    let mut candidates: Vec<_> = elements.to_vec();
    candidates.sort_by_key(|g| std::cmp::Reverse(g.element_order()));
    for g in candidates {
        if !span.contains(&g) {
            gens.push(g);
            span = closure_unchecked(n, &gens);
        }
    }
    gens
}

impl<'a> IntoIterator for &'a Subgroup {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.literal())
    }
}

/// The translation group `T_n` as a list of pure translations.
pub fn translation_group(n: CurveOrder) -> Vec<GroupElement> {
    all_elements(n)
        .into_iter()
        .filter(GroupElement::is_translation)
        .collect()
}

/// Every subgroup of `T_n`.
pub fn translation_subgroups(n: CurveOrder) -> Vec<Subgroup> {
    let t = translation_group(n);
    let mut found = BTreeSet::new();
    // T_n has rank ≤ 3
    for a in &t {
        for b in &t {
            for c in &t {
                found.insert(closure_unchecked(n, &[*a, *b, *c]));
            }
        }
    }
    found.into_iter().collect()
}

/// All admissible subgroups of `V_n`, sorted and duplicate-free.
///
/// Every admissible group is `⟨g₁, g₂⟩ · T'` with `g₁ = (1,n−1,0;a)`,
/// `g₂ = (n−1,0,1;b)` and `T' = G ∩ T_n`, so the search ranges over shift pairs and
/// translation subgroups.
pub fn enumerate_admissible(n: CurveOrder) -> Vec<Subgroup> {
    let nn = n.n();
    let shifts: Vec<[u8; 3]> = translation_group(n).iter().map(|g| g.shift).collect();
    let mut found = BTreeSet::new();
    for sub in translation_subgroups(n) {
        for a in &shifts {
            for b in &shifts {
                let mut gens = vec![
                    GroupElement::new_unchecked(n, [1, nn - 1, 0], *a),
                    GroupElement::new_unchecked(n, [nn - 1, 0, 1], *b),
                ];
                gens.extend(sub.generators.iter().copied());
                found.insert(closure_unchecked(n, &gens));
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: CurveOrder, t: [u8; 3], s: [u8; 3]) -> GroupElement {
        GroupElement::new(n, t, s).unwrap()
    }

    const N3: CurveOrder = CurveOrder::Three;
    const N4: CurveOrder = CurveOrder::Four;
    const N6: CurveOrder = CurveOrder::Six;

    fn table_group(n: CurveOrder, a: [u8; 3], b: [u8; 3], extra: &[[u8; 3]]) -> Subgroup {
        let nn = n.n();
        let mut gens = vec![el(n, [1, nn - 1, 0], a), el(n, [nn - 1, 0, 1], b)];
        gens.extend(extra.iter().map(|c| el(n, [0, 0, 0], *c)));
        closure(n, &gens).unwrap()
    }

    #[test]
    fn element_validation() {
        assert!(GroupElement::new(N3, [1, 2, 0], [0, 1, 0]).is_ok());
        assert_eq!(
            GroupElement::new(N3, [1, 1, 0], [0, 0, 0]),
            Err(Error::InadmissibleTwist(1, 1, 0, 3))
        );
        assert!(GroupElement::new(N6, [1, 3, 2], [0, 0, 0]).is_ok());
        assert_eq!(
            GroupElement::new(N6, [1, 3, 2], [0, 1, 0]),
            Err(Error::TorsionTrivial)
        );
        assert!(matches!(
            GroupElement::new(N4, [1, 3, 0], [0, 2, 0]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn compose_and_inverse() {
        let g = el(N3, [1, 2, 0], [0, 0, 1]);
        let h = el(N3, [2, 0, 1], [1, 1, 0]);
        assert_eq!(g.compose(&h).unwrap(), el(N3, [0, 2, 1], [1, 1, 1]));
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert_eq!(
            g.compose(&GroupElement::identity(N4)),
            Err(Error::MismatchedOrder(3, 4))
        );
        for x in all_elements(N3) {
            assert!(x.pow(3).is_identity());
        }
    }

    #[test]
    fn index_roundtrip_and_order() {
        for n in CurveOrder::ALL {
            let all = all_elements(n);
            assert_eq!(all.len(), n.vafa_witten_order());
            for (i, g) in all.iter().enumerate() {
                assert_eq!(g.index(), i);
                assert!(GroupElement::new(n, g.twist, g.shift).is_ok());
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn vafa_witten_orders() {
        assert_eq!(Subgroup::full(N3).order(), 243);
        assert_eq!(Subgroup::full(N4).order(), 128);
        assert_eq!(Subgroup::full(N6).order(), 36);
    }

    #[test]
    fn closure_examples() {
        let g = closure(N3, &[el(N3, [1, 2, 0], [0; 3]), el(N3, [2, 0, 1], [0; 3])]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(
            closure(N3, &[GroupElement::identity(N3)]).unwrap().order(),
            1
        );
        let iii4 = table_group(N3, [0, 0, 1], [1, 1, 0], &[]);
        assert_eq!(iii4.order(), 9);
        assert!(closure(N3, &[GroupElement::identity(N4)]).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(table_group(N3, [0; 3], [0; 3], &[]).is_admissible());
        let t3 = closure(N3, &translation_group(N3)).unwrap();
        assert!(!t3.is_admissible());
        assert!(Subgroup::full(N4).is_admissible());
        let half = closure(N3, &[el(N3, [1, 2, 0], [0; 3])]).unwrap();
        assert!(!half.is_admissible());
        assert_eq!(half.group_rank(), Err(Error::NotAdmissible));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(table_group(N3, [0; 3], [0; 3], &[]).group_rank(), Ok(0));
        assert_eq!(
            table_group(N3, [0; 3], [0; 3], &[[0, 1, 1]]).group_rank(),
            Ok(1)
        );
        assert_eq!(Subgroup::full(N3).group_rank(), Ok(3));
        assert_eq!(Subgroup::full(N4).group_rank(), Ok(3));
        assert_eq!(
            table_group(N4, [0, 0, 1], [1, 1, 0], &[]).group_rank(),
            Ok(0)
        );
        assert_eq!(Subgroup::full(N6).group_rank(), Ok(0));
    }

    #[test]
    fn translation_examples() {
        assert_eq!(
            table_group(N3, [0; 3], [0; 3], &[]).translations(),
            vec![GroupElement::identity(N3)]
        );
        assert_eq!(
            table_group(N3, [0; 3], [0; 3], &[[0, 1, 1]]).translations(),
            vec![
                el(N3, [0; 3], [0, 0, 0]),
                el(N3, [0; 3], [0, 1, 1]),
                el(N3, [0; 3], [0, 2, 2])
            ]
        );
        assert_eq!(Subgroup::full(N4).translations().len(), 8);
    }

    #[test]
    fn translation_subgroup_counts() {
        // subgroups of F_3^3 and F_2^3
        assert_eq!(translation_subgroups(N3).len(), 1 + 13 + 13 + 1);
        assert_eq!(translation_subgroups(N4).len(), 1 + 7 + 7 + 1);
        assert_eq!(translation_subgroups(N6).len(), 1);
    }

    #[test]
    fn enumeration_counts_are_pinned() {
        let six = enumerate_admissible(N6);
        assert_eq!(six, vec![Subgroup::full(N6)]);
        let three = enumerate_admissible(N3);
        // Σ over T' ≤ T of 729/|T'|²
        assert_eq!(three.len(), 1900);
        assert!(three
            .iter()
            .all(|g| [9, 27, 81, 243].contains(&g.order()) && g.is_admissible()));
        let four = enumerate_admissible(N4);
        assert_eq!(four.len(), 205);
        assert!(four.iter().all(|g| g.twist_projection().len() == 16));
    }

    #[test]
    fn normal_form_literal() {
        let g = table_group(N3, [0; 3], [0, 1, 0], &[[1, 0, 1]]);
        let lit = g.literal();
        assert!(lit.starts_with("1,2,0;"), "{lit}");
        let gens = g.normal_form_generators();
        assert_eq!(closure(N3, &gens).unwrap(), g);
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn v_n_is_abelian_with_expected_structure() {
        assert_eq!(
            Subgroup::full(N3).structure(),
            FiniteAbelianGroup::from_cyclic_orders(&[3; 5])
        );
        assert_eq!(
            Subgroup::full(N4).structure(),
            FiniteAbelianGroup::from_cyclic_orders(&[4, 4, 2, 2, 2])
        );
        assert_eq!(
            Subgroup::full(N6).structure(),
            FiniteAbelianGroup::from_cyclic_orders(&[6, 6])
        );
        let all = all_elements(N4);
        for g in &all {
            for h in &all {
                assert_eq!(g.add(h), h.add(g));
            }
        }
    }
}
