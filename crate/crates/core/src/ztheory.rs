//! z-elements and everything built on them.
//!
//! For an element `a`, `M_a` is the set of maximal elements above `a` and
//! `m_a = ⋀ M_a`. An element `x` is a z-element when `M_a ⊇ M_b` and
//! `b ⩽ x` always force `a ⩽ x`; equivalently `m_x = x`, equivalently
//! `cz(x) = x` where `cz(a)` is the least z-element above `a`. All three
//! forms are computed independently and compared by [`is_z_element`].
//!
//! The z-variants of the element classes (z-prime, z-semiprime, ..) quantify
//! only over z-elements and are false off `Z(L)`.
//!
//! [`is_z_element`]: MultiplicativeLattice::is_z_element

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{ElementId, ElementSet};
use crate::quantale::MultiplicativeLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("the lattice is trivial (0 = 1)")]
    TrivialLattice,
    #[error("{0} is not a z-element")]
    NotZElement(String),
    #[error("z-element definitions disagree at {element}: pairs ⊇ {pairs_superset}, pairs = {pairs_equal}, m_x = x {meet_of_maximals}, cz(x) = x {closure}")]
    DefinitionDisagreement {
        element: String,
        pairs_superset: bool,
        pairs_equal: bool,
        meet_of_maximals: bool,
        closure: bool,
    },
    #[error("quotient law `{law}` fails at ({})", witness.join(", "))]
    QuotientLawViolation { law: &'static str, witness: Vec<String> },
}

/// Per-element z-data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZProfile {
    pub element: ElementId,
    pub maximal_cover: ElementSet,
    pub m: ElementId,
    pub cz: ElementId,
    pub is_z: bool,
    pub z_prime: bool,
    pub z_semiprime: bool,
    pub z_primary: bool,
    pub z_irreducible: bool,
    pub z_strongly_irreducible: bool,
    /// `x` is a meet of maximal elements.
    pub strong_z: bool,
    /// `x = m_a` for some `a`.
    pub basic_z: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZPredicates {
    /// Every basic z-element is idempotent.
    pub szi: bool,
    /// Every prime is a z-element.
    pub pz: bool,
    /// `Z(L)` is closed under binary joins.
    pub z_join_closed: bool,
}

/// `Z(L)` with `a ⊙ b = cz(ab)` and `a ⋁′ b = cz(a ∨ b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFrame {
    pub carrier: ElementSet,
    members: Vec<ElementId>,
    odot: Vec<ElementId>,
    vee: Vec<ElementId>,
    /// `cz` as a map `L → Z(L)`, indexed by source element.
    pub projection: Vec<ElementId>,
}

impl QuotientFrame {
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    fn slot(&self, a: ElementId) -> usize {
        self.members.iter().position(|&x| x == a).expect("carrier member")
    }

    /// `a ⊙ b` for carrier members.
    pub fn odot(&self, a: ElementId, b: ElementId) -> ElementId {
        self.odot[self.slot(a) * self.members.len() + self.slot(b)]
    }

    /// `a ⋁′ b` for carrier members.
    pub fn vee(&self, a: ElementId, b: ElementId) -> ElementId {
        self.vee[self.slot(a) * self.members.len() + self.slot(b)]
    }
}

impl MultiplicativeLattice {
    /// `(M_a, m_a)`.
    pub fn maximal_cover(&self, a: ElementId) -> (ElementSet, ElementId) {
        let cover = self.maximal_set().intersection(self.lattice().up_set(a));
        (cover, self.m_of(a))
    }

    /// `m_a = ⋀ M_a`.
    pub fn m_of(&self, a: ElementId) -> ElementId {
        self.cache.maximal_meet.get_or_init(|| {
            let maximal = self.maximal_set();
            self.elements().map(|x| self.lattice().meet_all(maximal.intersection(self.lattice().up_set(x)))).collect()
        })[a.index()]
    }

    fn cover_set(&self, a: ElementId) -> ElementSet {
        self.maximal_set().intersection(self.lattice().up_set(a))
    }

    /// The defining form: `M_a ⊇ M_b` (or `M_a = M_b` when `equal`) and
    /// `b ⩽ x` imply `a ⩽ x`.
    pub fn is_z_by_pairs(&self, x: ElementId, equal: bool) -> bool {
        self.lattice().down_set(x).iter().all(|b| {
            let mb = self.cover_set(b);
            self.elements().all(|a| {
                let ma = self.cover_set(a);
                let related = if equal { ma == mb } else { mb.is_subset(ma) };
                !related || self.leq(a, x)
            })
        })
    }

    /// `Z(L)` by the pair form.
    pub fn z_elements(&self) -> ElementSet {
        *self.cache.z.get_or_init(|| self.elements().filter(|&x| self.is_z_by_pairs(x, false)).collect())
    }

    /// Membership in `Z(L)`, with every equivalent definition evaluated and
    /// compared.
    pub fn is_z_element(&self, x: ElementId) -> Result<bool, ZError> {
        let pairs_superset = self.is_z_by_pairs(x, false);
        let pairs_equal = self.is_z_by_pairs(x, true);
        let meet_of_maximals = self.m_of(x) == x;
        let closure = self.z_closure(x) == x;
        if pairs_superset == pairs_equal && pairs_equal == meet_of_maximals && meet_of_maximals == closure {
            Ok(pairs_superset)
        } else {
            Err(ZError::DefinitionDisagreement {
                element: self.label(x).into(),
                pairs_superset,
                pairs_equal,
                meet_of_maximals,
                closure,
            })
        }
    }

    /// `cz(a) = ⋀{z ∈ Z(L) | a ⩽ z}`.
    pub fn z_closure(&self, a: ElementId) -> ElementId {
        self.cache.closure.get_or_init(|| {
            let z = self.z_elements();
            self.elements().map(|x| self.lattice().meet_all(z.intersection(self.lattice().up_set(x)))).collect()
        })[a.index()]
    }

    pub fn is_z(&self, x: ElementId) -> bool {
        self.z_elements().contains(x)
    }

    fn z_proper(&self, x: ElementId) -> bool {
        self.is_proper(x) && self.is_z(x)
    }

    pub fn is_z_prime(&self, p: ElementId) -> bool {
        let z = self.z_elements();
        self.z_proper(p)
            && z.iter().all(|a| self.leq(a, p) || z.iter().all(|b| !self.leq(self.multiply(a, b), p) || self.leq(b, p)))
    }

    pub fn is_z_semiprime(&self, q: ElementId) -> bool {
        self.z_proper(q) && self.z_elements().iter().all(|a| !self.leq(self.multiply(a, a), q) || self.leq(a, q))
    }

    pub fn is_z_primary(&self, r: ElementId) -> bool {
        let z = self.z_elements();
        self.z_proper(r)
            && z.iter().all(|x| {
                self.leq(x, r)
                    || z.iter().all(|y| !self.leq(self.multiply(x, y), r) || self.leq(self.stable_power(y), r))
            })
    }

    pub fn is_z_irreducible(&self, s: ElementId) -> bool {
        let z = self.z_elements();
        self.z_proper(s) && z.iter().all(|a| a == s || z.iter().all(|b| b == s || self.meet(a, b) != s))
    }

    pub fn is_z_strongly_irreducible(&self, s: ElementId) -> bool {
        let z = self.z_elements();
        self.z_proper(s)
            && z.iter().all(|a| self.leq(a, s) || z.iter().all(|b| !self.leq(self.meet(a, b), s) || self.leq(b, s)))
    }

    pub fn z_classify(&self, x: ElementId) -> ZProfile {
        let (cover, m) = self.maximal_cover(x);
        ZProfile {
            element: x,
            maximal_cover: cover,
            m,
            cz: self.z_closure(x),
            is_z: self.is_z(x),
            z_prime: self.is_z_prime(x),
            z_semiprime: self.is_z_semiprime(x),
            z_primary: self.is_z_primary(x),
            z_irreducible: self.is_z_irreducible(x),
            z_strongly_irreducible: self.is_z_strongly_irreducible(x),
            strong_z: m == x,
            basic_z: self.elements().any(|a| self.m_of(a) == x),
        }
    }

    pub fn z_predicates(&self) -> ZPredicates {
        let z = self.z_elements();
        ZPredicates {
            szi: self.elements().all(|a| {
                let m = self.m_of(a);
                self.multiply(m, m) == m
            }),
            pz: self.primes().is_subset(z),
            z_join_closed: z.iter().all(|a| z.iter().all(|b| z.contains(self.join(a, b)))),
        }
    }

    /// `P_z(L)`.
    pub fn z_primes(&self) -> ElementSet {
        self.elements().filter(|&p| self.is_z_prime(p)).collect()
    }

    pub fn minimal_z_primes(&self) -> Result<ElementSet, ZError> {
        if self.lattice().is_trivial() {
            return Err(ZError::TrivialLattice);
        }
        Ok(self.lattice().minimal_of(self.z_primes()))
    }

    /// `V_z(p) = {q ∈ P_z(L) | p ⩽ q}`.
    pub fn closed_set_vz(&self, p: ElementId) -> ElementSet {
        self.z_primes().intersection(self.lattice().up_set(p))
    }

    /// A smallest set of z-irreducible elements meeting to `x`; among those
    /// of least size, the lexicographically first by id. `1` decomposes as
    /// the empty meet.
    pub fn z_irreducible_decomposition(&self, x: ElementId) -> Result<ElementSet, ZError> {
        if !self.is_z(x) {
            return Err(ZError::NotZElement(self.label(x).into()));
        }
        let candidates: Vec<ElementId> =
            self.lattice().up_set(x).iter().filter(|&s| self.is_z_irreducible(s)).collect();
        for k in 0..=candidates.len() {
            for combo in candidates.iter().copied().combinations(k) {
                let s: ElementSet = combo.into_iter().collect();
                if self.lattice().meet_all(s) == x {
                    return Ok(s);
                }
            }
        }
        // Z(L) is meet-closed and finite, so this is unreachable on
        // validated input.
        Err(ZError::QuotientLawViolation {
            law: "every z-element is a finite meet of z-irreducibles",
            witness: vec![self.label(x).into()],
        })
    }

    /// Builds `Z(L)` with `⊙` and `⋁′` and checks: `⊙ = ∧` on the carrier,
    /// `cz` preserves order, binary meets and binary joins onto `⋁′` and is
    /// onto, the carrier is distributive, and
    /// `cz(ab) = cz(a·cz(b)) = cz(cz(a)·b) = cz(cz(a)·cz(b))`.
    pub fn z_quotient(&self) -> Result<QuotientFrame, ZError> {
        let z = self.z_elements();
        let members = z.to_vec();
        let k = members.len();
        let cz = |a| self.z_closure(a);
        let fail = |law, w: &[ElementId]| ZError::QuotientLawViolation {
            law,
            witness: w.iter().map(|&x| self.label(x).to_string()).collect(),
        };

        let mut odot = Vec::with_capacity(k * k);
        let mut vee = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let p = cz(self.multiply(a, b));
                if p != self.meet(a, b) {
                    return Err(fail("a⊙b = a∧b", &[a, b]));
                }
                odot.push(p);
                vee.push(cz(self.join(a, b)));
            }
        }
        let projection: Vec<ElementId> = self.elements().map(cz).collect();
        for a in self.elements() {
            if !z.contains(cz(a)) {
                return Err(fail("cz(a) ∈ Z(L)", &[a]));
            }
            for b in self.elements() {
                if self.leq(a, b) && !self.leq(cz(a), cz(b)) {
                    return Err(fail("a ⩽ b ⇒ cz(a) ⩽ cz(b)", &[a, b]));
                }
                if cz(self.meet(a, b)) != self.meet(cz(a), cz(b)) {
                    return Err(fail("cz(a∧b) = cz(a)∧cz(b)", &[a, b]));
                }
                if cz(self.join(a, b)) != cz(self.join(cz(a), cz(b))) {
                    return Err(fail("cz(a∨b) = cz(a)⋁′cz(b)", &[a, b]));
                }
                let ab = cz(self.multiply(a, b));
                if ab != cz(self.multiply(a, cz(b)))
                    || ab != cz(self.multiply(cz(a), b))
                    || ab != cz(self.multiply(cz(a), cz(b)))
                {
                    return Err(fail("cz(ab) = cz(a·cz(b)) = cz(cz(a)·b) = cz(cz(a)·cz(b))", &[a, b]));
                }
            }
        }
        for &a in &members {
            if cz(a) != a {
                return Err(fail("cz is onto Z(L)", &[a]));
            }
            for &b in &members {
                for &c in &members {
                    let lhs = self.meet(a, cz(self.join(b, c)));
                    let rhs = cz(self.join(self.meet(a, b), self.meet(a, c)));
                    if lhs != rhs {
                        return Err(fail("a∧(b⋁′c) = (a∧b)⋁′(a∧c)", &[a, b, c]));
                    }
                }
            }
        }
        Ok(QuotientFrame { carrier: z, members, odot, vee, projection })
    }
}
