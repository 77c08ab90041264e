//! Classical element classes: maximal, prime, semiprime, primary,
//! (strongly) irreducible; radicals and lattice-level predicates.
//!
//! Every flag here that asks for properness is false for the top element.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{ElementId, ElementSet};
use crate::quantale::MultiplicativeLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("the lattice is trivial (0 = 1)")]
    TrivialLattice,
    #[error("radical formulas disagree at {element}: powers {by_powers}, primes {by_primes}, minimal primes {by_minimal_primes}")]
    RadicalFormulaMismatch { element: String, by_powers: String, by_primes: String, by_minimal_primes: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub element: ElementId,
    pub proper: bool,
    pub maximal: bool,
    pub prime: bool,
    pub semiprime: bool,
    pub primary: bool,
    pub irreducible: bool,
    pub strongly_irreducible: bool,
    pub complemented: bool,
    pub radical_element: bool,
    pub idempotent: bool,
    pub radical: ElementId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePredicates {
    /// `j_L = 0`
    pub semisimple: bool,
    /// Finitely many maximal elements; always true here.
    pub quasi_local: bool,
    pub maximal_count: usize,
    /// Every (compact) element is complemented.
    pub regular: bool,
    /// `·` coincides with `∧`.
    pub frame: bool,
    /// Always true for finite lattices.
    pub top_compact: bool,
}

impl MultiplicativeLattice {
    /// Coatoms; empty for the one-point lattice.
    pub fn maximal_set(&self) -> ElementSet {
        *self.cache.maximal.get_or_init(|| {
            if self.lattice().is_trivial() {
                ElementSet::empty()
            } else {
                self.lattice().lower_covers(self.top())
            }
        })
    }

    pub fn maximal_elements(&self) -> Result<ElementSet, SpectraError> {
        if self.lattice().is_trivial() {
            return Err(SpectraError::TrivialLattice);
        }
        Ok(self.maximal_set())
    }

    pub fn is_maximal(&self, x: ElementId) -> bool {
        self.maximal_set().contains(x)
    }

    /// `xy ⩽ p ⇒ x ⩽ p or y ⩽ p`, `p` proper.
    pub fn is_prime(&self, p: ElementId) -> bool {
        self.is_proper(p)
            && self
                .elements()
                .all(|x| self.leq(x, p) || self.elements().all(|y| !self.leq(self.multiply(x, y), p) || self.leq(y, p)))
    }

    /// `a² ⩽ q ⇒ a ⩽ q`, `q` proper.
    pub fn is_semiprime(&self, q: ElementId) -> bool {
        self.is_proper(q) && self.elements().all(|a| !self.leq(self.multiply(a, a), q) || self.leq(a, q))
    }

    /// `xy ⩽ r ⇒ x ⩽ r or yⁿ ⩽ r` for some `n`, `r` proper.
    pub fn is_primary(&self, r: ElementId) -> bool {
        self.is_proper(r)
            && self.elements().all(|x| {
                self.leq(x, r)
                    || self.elements().all(|y| !self.leq(self.multiply(x, y), r) || self.leq(self.stable_power(y), r))
            })
    }

    /// `a ∧ b = s ⇒ a = s or b = s`, `s` proper.
    pub fn is_irreducible(&self, s: ElementId) -> bool {
        self.is_proper(s) && self.elements().all(|a| a == s || self.elements().all(|b| b == s || self.meet(a, b) != s))
    }

    /// `a ∧ b ⩽ s ⇒ a ⩽ s or b ⩽ s`, `s` proper.
    pub fn is_strongly_irreducible(&self, s: ElementId) -> bool {
        self.is_proper(s)
            && self
                .elements()
                .all(|a| self.leq(a, s) || self.elements().all(|b| !self.leq(self.meet(a, b), s) || self.leq(b, s)))
    }

    /// `P(L)`.
    pub fn primes(&self) -> ElementSet {
        *self.cache.primes.get_or_init(|| self.elements().filter(|&p| self.is_prime(p)).collect())
    }

    /// `V_P(a) = {p ∈ P(L) | a ⩽ p}`.
    pub fn closed_set_vp(&self, a: ElementId) -> ElementSet {
        self.primes().intersection(self.lattice().up_set(a))
    }

    /// Minimal members of `V_P(x)`, ascending by id.
    pub fn minimal_primes_over(&self, x: ElementId) -> ElementSet {
        self.lattice().minimal_of(self.closed_set_vp(x))
    }

    /// `√x`, computed three ways and cross-checked: the join of all `y`
    /// with some `yⁿ ⩽ x`, the meet of the primes above `x`, and the meet of
    /// the minimal primes over `x`.
    pub fn radical(&self, x: ElementId) -> Result<ElementId, SpectraError> {
        let (by_powers, by_primes, by_minimal) = self.radical_forms(x);
        if by_powers != by_primes || by_primes != by_minimal {
            return Err(SpectraError::RadicalFormulaMismatch {
                element: self.label(x).into(),
                by_powers: self.label(by_powers).into(),
                by_primes: self.label(by_primes).into(),
                by_minimal_primes: self.label(by_minimal).into(),
            });
        }
        Ok(by_primes)
    }

    pub(crate) fn radical_forms(&self, x: ElementId) -> (ElementId, ElementId, ElementId) {
        let lat = self.lattice();
        let nil: ElementSet = self.elements().filter(|&y| self.leq(self.stable_power(y), x)).collect();
        (lat.join_all(nil), lat.meet_all(self.closed_set_vp(x)), lat.meet_all(self.minimal_primes_over(x)))
    }

    /// `√x` by the prime-meet formula only.
    pub fn radical_by_primes(&self, x: ElementId) -> ElementId {
        self.lattice().meet_all(self.closed_set_vp(x))
    }

    /// `j_L`, the meet of all maximal elements.
    pub fn jacobson_radical(&self) -> Result<ElementId, SpectraError> {
        Ok(self.lattice().meet_all(self.maximal_elements()?))
    }

    pub fn classify_element(&self, x: ElementId) -> Result<ClassificationRecord, SpectraError> {
        let radical = self.radical(x)?;
        Ok(ClassificationRecord {
            element: x,
            proper: self.is_proper(x),
            maximal: self.is_maximal(x),
            prime: self.primes().contains(x),
            semiprime: self.is_semiprime(x),
            primary: self.is_primary(x),
            irreducible: self.is_irreducible(x),
            strongly_irreducible: self.is_strongly_irreducible(x),
            complemented: self.lattice().is_complemented(x),
            radical_element: radical == x,
            idempotent: self.multiply(x, x) == x,
            radical,
        })
    }

    /// Records for every element, in id order.
    pub fn classify_all(&self) -> Result<Vec<ClassificationRecord>, SpectraError> {
        self.primes();
        self.elements().collect::<Vec<_>>().into_par_iter().map(|x| self.classify_element(x)).collect()
    }

    pub fn lattice_predicates(&self) -> LatticePredicates {
        let lat = self.lattice();
        let maximal = self.maximal_set();
        LatticePredicates {
            semisimple: lat.meet_all(maximal) == self.bottom(),
            quasi_local: true,
            maximal_count: maximal.len(),
            regular: self.elements().all(|x| lat.is_complemented(x)),
            frame: self.is_frame(),
            top_compact: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::named_fixture;

    fn set(ml: &MultiplicativeLattice, labels: &[&str]) -> ElementSet {
        labels.iter().map(|l| ml.element(l).unwrap()).collect()
    }

    #[test]
    fn maximal_elements() {
        let c3 = named_fixture("C3").unwrap();
        assert_eq!(c3.maximal_elements().unwrap(), set(&c3, &["m"]));
        let d12 = named_fixture("D12").unwrap();
        assert_eq!(d12.maximal_elements().unwrap(), set(&d12, &["(2)", "(3)"]));
        let b4 = named_fixture("B4").unwrap();
        assert_eq!(b4.maximal_elements().unwrap(), set(&b4, &["a", "b"]));
        let one = named_fixture("chain:1").unwrap();
        assert_eq!(one.maximal_elements(), Err(SpectraError::TrivialLattice));
        assert_eq!(one.jacobson_radical(), Err(SpectraError::TrivialLattice));
    }

    #[test]
    fn classification_of_top_is_all_false() {
        for name in ["C3", "B4", "Z8", "D12"] {
            let ml = named_fixture(name).unwrap();
            let r = ml.classify_element(ml.top()).unwrap();
            assert!(!r.proper && !r.maximal && !r.prime && !r.semiprime && !r.primary);
            assert!(!r.irreducible && !r.strongly_irreducible);
        }
    }

    #[test]
    fn z8_q_is_primary_not_prime() {
        let z8 = named_fixture("Z8").unwrap();
        let r = z8.classify_element(z8.element("(4)").unwrap()).unwrap();
        assert!(r.primary);
        assert!(!r.prime);
    }

    #[test]
    fn boolean_atom_is_prime() {
        let b4 = named_fixture("B4").unwrap();
        let r = b4.classify_element(b4.element("a").unwrap()).unwrap();
        assert!(r.prime && r.strongly_irreducible && r.irreducible);
    }

    #[test]
    fn radicals() {
        let z8 = named_fixture("Z8").unwrap();
        assert_eq!(z8.radical(z8.top()).unwrap(), z8.top());
        assert_eq!(z8.radical(z8.bottom()).unwrap(), z8.element("(2)").unwrap());
        let d12 = named_fixture("D12").unwrap();
        assert_eq!(d12.radical(d12.element("(4)").unwrap()).unwrap(), d12.element("(2)").unwrap());
    }

    #[test]
    fn jacobson() {
        let b4 = named_fixture("B4").unwrap();
        assert_eq!(b4.jacobson_radical().unwrap(), b4.bottom());
        let c3 = named_fixture("C3").unwrap();
        assert_eq!(c3.jacobson_radical().unwrap(), c3.element("m").unwrap());
        let d12 = named_fixture("D12").unwrap();
        assert_eq!(d12.jacobson_radical().unwrap(), d12.element("(6)").unwrap());
    }

    #[test]
    fn minimal_primes() {
        let z8 = named_fixture("Z8").unwrap();
        assert_eq!(z8.minimal_primes_over(z8.bottom()), set(&z8, &["(2)"]));
        let d12 = named_fixture("D12").unwrap();
        assert_eq!(d12.minimal_primes_over(d12.bottom()), set(&d12, &["(2)", "(3)"]));
        for ml in [z8, d12] {
            for p in ml.primes() {
                assert_eq!(ml.minimal_primes_over(p), ElementSet::singleton(p));
            }
        }
    }

    #[test]
    fn predicates() {
        let b4 = named_fixture("B4").unwrap().lattice_predicates();
        assert!(b4.semisimple && b4.regular && b4.frame);
        let c3 = named_fixture("C3").unwrap().lattice_predicates();
        assert!(!c3.regular && !c3.semisimple);
        let z8 = named_fixture("Z8").unwrap().lattice_predicates();
        assert!(z8.quasi_local);
        assert_eq!(z8.maximal_count, 1);
    }

    #[test]
    fn maximal_elements_are_prime_and_cover_everything() {
        for name in ["C3", "B4", "Z8", "D12", "zn:36", "boolean:3"] {
            let ml = named_fixture(name).unwrap();
            assert!(ml.maximal_set().is_subset(ml.primes()));
            for a in ml.elements().filter(|&a| ml.is_proper(a)) {
                assert!(ml.maximal_set().iter().any(|m| ml.leq(a, m)));
            }
        }
    }
}
