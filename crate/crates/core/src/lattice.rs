//! Finite bounded lattices.
//!
//! A [`FiniteLattice`] is built from any generating set of `⩽` pairs. The
//! relation is closed reflexively and transitively, checked for
//! antisymmetry, and every pair is given a greatest lower bound and a least
//! upper bound. After validation all queries are table lookups.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quantale::MultTable;

/// Largest universe a lattice may have; [`ElementSet`] is one machine word.
pub const MAX_ELEMENTS: usize = 64;

/// Position of an element inside one lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u8);

impl ElementId {
    pub fn new(index: usize) -> Self {
        debug_assert!(index < MAX_ELEMENTS);
        ElementId(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a lattice universe, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet(0)
    }

    /// The whole universe `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: ElementId) -> Self {
        ElementSet(1u64 << x.0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, x: ElementId) -> bool {
        self.0 >> x.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: ElementId) {
        self.0 |= 1u64 << x.0;
    }

    #[inline]
    pub fn remove(&mut self, x: ElementId) {
        self.0 &= !(1u64 << x.0);
    }

    pub fn with(mut self, x: ElementId) -> Self {
        self.insert(x);
        self
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member by index.
    pub fn first(self) -> Option<ElementId> {
        (self.0 != 0).then(|| ElementId(self.0.trailing_zeros() as u8))
    }

    /// Members in increasing index order.
    pub fn iter(self) -> ElementSetIter {
        ElementSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|x| x.0)).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = ElementSetIter;

    fn into_iter(self) -> ElementSetIter {
        self.iter()
    }
}

pub struct ElementSetIter(u64);

impl Iterator for ElementSetIter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(ElementId(i as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElementSetIter {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Meet => "meet",
            BoundKind::Join => "join",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the element universe is empty")]
    EmptyUniverse,
    #[error("{n} elements exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{got} labels given for {expected} elements")]
    LabelCount { got: usize, expected: usize },
    #[error("element index {0} is not in the universe")]
    ForeignElement(usize),
    #[error("order is not antisymmetric: {a} and {b} lie on a cycle")]
    NotAntisymmetric { a: String, b: String },
    #[error("no unique {kind} for ({a}, {b}); candidates: {}", candidates.join(", "))]
    NoUniqueBound { kind: BoundKind, a: String, b: String, candidates: Vec<String> },
    #[error("map has {got} entries but the source has {expected} elements")]
    ShapeMismatch { got: usize, expected: usize },
}

/// A validated finite bounded lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    /// `up[x]` = every `y` with `x ⩽ y`.
    up: Vec<ElementSet>,
    /// `down[x]` = every `y` with `y ⩽ x`.
    down: Vec<ElementSet>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    covers: Vec<(ElementId, ElementId)>,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Validates the order generated by `pairs` (each `(a, b)` meaning
    /// `a ⩽ b`) on the universe `{0, .., n-1}`.
    ///
    /// Labels default to `e0, e1, ..`.
    pub fn from_order(n: usize, pairs: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::EmptyUniverse);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { n, max: MAX_ELEMENTS });
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(LatticeError::LabelCount { got: l.len(), expected: n }),
            Some(l) => l,
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };

        let mut up = vec![ElementSet::empty(); n];
        for (i, u) in up.iter_mut().enumerate() {
            u.insert(ElementId::new(i));
        }
        for &(a, b) in pairs {
            if a >= n {
                return Err(LatticeError::ForeignElement(a));
            }
            if b >= n {
                return Err(LatticeError::ForeignElement(b));
            }
            up[a].insert(ElementId::new(b));
        }
        // Warshall on bit rows.
        for k in 0..n {
            let kid = ElementId::new(k);
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(kid) {
                    *row = row.union(row_k);
                }
            }
        }
        let mut down = vec![ElementSet::empty(); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b.index()].insert(ElementId::new(a));
            }
        }
        for (a, ups) in up.iter().enumerate() {
            for b in ups.iter() {
                if b.index() != a && up[b.index()].contains(ElementId::new(a)) {
                    return Err(LatticeError::NotAntisymmetric { a: labels[a].clone(), b: labels[b.index()].clone() });
                }
            }
        }

        // The least element of a set of common bounds, if it exists, is the
        // member whose own up-set covers all of them.
        let least = |s: ElementSet| s.iter().find(|x| s.is_subset(up[x.index()]));
        let greatest = |s: ElementSet| s.iter().find(|x| s.is_subset(down[x.index()]));
        let minimal = |s: ElementSet| -> Vec<String> {
            s.iter()
                .filter(|x| down[x.index()].intersection(s) == ElementSet::singleton(*x))
                .map(|x| labels[x.index()].clone())
                .collect()
        };
        let maximal = |s: ElementSet| -> Vec<String> {
            s.iter()
                .filter(|x| up[x.index()].intersection(s) == ElementSet::singleton(*x))
                .map(|x| labels[x.index()].clone())
                .collect()
        };

        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for a in 0..n {
            for b in a..n {
                let uppers = up[a].intersection(up[b]);
                let Some(j) = least(uppers) else {
                    return Err(LatticeError::NoUniqueBound {
                        kind: BoundKind::Join,
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        candidates: minimal(uppers),
                    });
                };
                let lowers = down[a].intersection(down[b]);
                let Some(m) = greatest(lowers) else {
                    return Err(LatticeError::NoUniqueBound {
                        kind: BoundKind::Meet,
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        candidates: maximal(lowers),
                    });
                };
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }

        let all = ElementSet::full(n);
        let bottom = least(all).expect("pairwise meets exist, so the universe has a least element");
        let top = greatest(all).expect("pairwise joins exist, so the universe has a greatest element");

        let mut covers = Vec::new();
        for (a, ups) in up.iter().enumerate() {
            for b in ups.iter() {
                if b.index() == a {
                    continue;
                }
                let between = up[a].intersection(down[b.index()]);
                if between.len() == 2 {
                    covers.push((ElementId::new(a), b));
                }
            }
        }

        Ok(FiniteLattice { n, up, down, meet, join, bottom, top, covers, labels })
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.n).map(ElementId::new)
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn is_trivial(&self) -> bool {
        self.bottom == self.top
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    /// `{y | x ⩽ y}`
    pub fn up_set(&self, x: ElementId) -> ElementSet {
        self.up[x.index()]
    }

    /// `{y | y ⩽ x}`
    pub fn down_set(&self, x: ElementId) -> ElementSet {
        self.down[x.index()]
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.n + b.index()]
    }

    /// Hasse edges `(lower, upper)`.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.index()]
    }

    /// Looks an element up by label. `"0"` and `"1"` fall back to bottom and
    /// top when no element carries those labels.
    pub fn element(&self, label: &str) -> Option<ElementId> {
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Some(ElementId::new(i));
        }
        match label {
            "0" => Some(self.bottom),
            "1" => Some(self.top),
            _ => None,
        }
    }

    pub fn check_set(&self, s: ElementSet) -> Result<(), LatticeError> {
        match s.difference(self.universe()).first() {
            Some(x) => Err(LatticeError::ForeignElement(x.index())),
            None => Ok(()),
        }
    }

    pub fn check_element(&self, x: ElementId) -> Result<(), LatticeError> {
        if x.index() < self.n {
            Ok(())
        } else {
            Err(LatticeError::ForeignElement(x.index()))
        }
    }

    /// Meet or join of a subset; `meet(∅) = top`, `join(∅) = bottom`.
    pub fn bound_of_set(&self, kind: BoundKind, s: ElementSet) -> Result<ElementId, LatticeError> {
        self.check_set(s)?;
        Ok(match kind {
            BoundKind::Meet => self.meet_all(s),
            BoundKind::Join => self.join_all(s),
        })
    }

    /// Unchecked meet of a subset of this universe.
    pub fn meet_all(&self, s: ElementSet) -> ElementId {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Unchecked join of a subset of this universe.
    pub fn join_all(&self, s: ElementSet) -> ElementId {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// All `y` with `x ∧ y = 0` and `x ∨ y = 1`.
    pub fn complements_of(&self, x: ElementId) -> Result<ElementSet, LatticeError> {
        self.check_element(x)?;
        Ok(self.elements().filter(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top).collect())
    }

    pub fn is_complemented(&self, x: ElementId) -> bool {
        self.elements().any(|y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: ElementId) -> ElementSet {
        self.covers.iter().filter(|(_, b)| *b == x).map(|(a, _)| *a).collect()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: ElementId) -> ElementSet {
        self.covers.iter().filter(|(a, _)| *a == x).map(|(_, b)| *b).collect()
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> ElementSet {
        self.elements().filter(|&x| self.lower_covers(x).len() == 1).collect()
    }

    /// Minimal members of `s` under `⩽`.
    pub fn minimal_of(&self, s: ElementSet) -> ElementSet {
        s.iter().filter(|&x| self.down_set(x).intersection(s) == ElementSet::singleton(x)).collect()
    }

    /// Maximal members of `s` under `⩽`.
    pub fn maximal_of(&self, s: ElementSet) -> ElementSet {
        s.iter().filter(|&x| self.up_set(x).intersection(s) == ElementSet::singleton(x)).collect()
    }

    /// Whether the members of `s` are pairwise comparable.
    pub fn is_chain(&self, s: ElementSet) -> bool {
        s.iter().all(|a| s.is_subset(self.up_set(a).union(self.down_set(a))))
    }

    /// The order as generating pairs (the Hasse edges), by index.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers.iter().map(|(a, b)| (a.index(), b.index())).collect()
    }

    /// The same lattice with different labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.n {
            return Err(LatticeError::LabelCount { got: labels.len(), expected: self.n });
        }
        Ok(FiniteLattice { labels, ..self.clone() })
    }
}

/// A map between two lattices, checked against the lattice laws on demand.
#[derive(Clone, Debug)]
pub struct LatticeHom<'a> {
    pub source: &'a FiniteLattice,
    pub target: &'a FiniteLattice,
    pub map: Vec<ElementId>,
}

/// Outcome of [`check_homomorphism`]: first violating pair per law.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub order: Option<(ElementId, ElementId)>,
    pub joins: Option<(ElementId, ElementId)>,
    pub meets: Option<(ElementId, ElementId)>,
    /// `None` when products were not checked.
    pub products: Option<Option<(ElementId, ElementId)>>,
}

impl HomReport {
    /// Preserves order, binary joins and binary meets.
    pub fn is_homomorphism(&self) -> bool {
        self.order.is_none() && self.joins.is_none() && self.meets.is_none()
    }

    /// Additionally preserves products, when they were checked.
    pub fn is_strict(&self) -> bool {
        self.is_homomorphism() && matches!(self.products, Some(None))
    }
}

impl LatticeHom<'_> {
    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x.index()]
    }

    /// Members of the source mapped onto `y`.
    pub fn preimage(&self, y: ElementId) -> ElementSet {
        self.source.elements().filter(|&x| self.apply(x) == y).collect()
    }
}

/// Checks that `hom` preserves `⩽`, binary joins and binary meets. With
/// `strict_mult` (source and target products), products are checked too and
/// reported separately.
pub fn check_homomorphism(
    hom: &LatticeHom<'_>,
    strict_mult: Option<(&MultTable, &MultTable)>,
) -> Result<HomReport, LatticeError> {
    let (src, tgt) = (hom.source, hom.target);
    if hom.map.len() != src.size() {
        return Err(LatticeError::ShapeMismatch { got: hom.map.len(), expected: src.size() });
    }
    for &y in &hom.map {
        tgt.check_element(y)?;
    }
    let mut report = HomReport::default();
    if let Some((sm, tm)) = strict_mult {
        if sm.size() != src.size() {
            return Err(LatticeError::ShapeMismatch { got: sm.size(), expected: src.size() });
        }
        if tm.size() != tgt.size() {
            return Err(LatticeError::ShapeMismatch { got: tm.size(), expected: tgt.size() });
        }
        report.products = Some(None);
    }
    let f = |x: ElementId| hom.apply(x);
    for a in src.elements() {
        for b in src.elements() {
            if report.order.is_none() && src.leq(a, b) && !tgt.leq(f(a), f(b)) {
                report.order = Some((a, b));
            }
            if report.joins.is_none() && f(src.join(a, b)) != tgt.join(f(a), f(b)) {
                report.joins = Some((a, b));
            }
            if report.meets.is_none() && f(src.meet(a, b)) != tgt.meet(f(a), f(b)) {
                report.meets = Some((a, b));
            }
            if let (Some((sm, tm)), Some(None)) = (strict_mult, report.products) {
                if f(sm.get(a, b)) != tm.get(f(a), f(b)) {
                    report.products = Some(Some((a, b)));
                }
            }
        }
    }
    Ok(report)
}
