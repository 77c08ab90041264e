//! Multiplications on finite lattices.
//!
//! A [`MultiplicativeLattice`] pairs a [`FiniteLattice`] with a product that
//! is commutative, associative, has the top element as identity and
//! distributes over joins. Distribution over arbitrary joins is checked as
//! binary distributivity plus `x·0 = 0`, which is equivalent for finite
//! carriers.

mod fixtures;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::lattice::{ElementId, ElementSet, FiniteLattice, LatticeError};

pub use fixtures::{build_fixture, named_fixture, FixtureFamily, FIXTURE_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("product table has {got} entries, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("product table entry {0} is not an element")]
    ForeignProduct(usize),
    #[error("multiplication is not commutative: {a}·{b} ≠ {b}·{a}")]
    NotCommutative { a: String, b: String },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("top is not a multiplicative identity: 1·{x} ≠ {x}")]
    IdentityLawFails { x: String },
    #[error("multiplication does not distribute over joins at {}", fmt_dist(x, over))]
    DistributivityFails { x: String, over: Option<(String, String)> },
    #[error("basic multiplication law `{law}` fails at ({})", witness.join(", "))]
    BasicsViolated { law: &'static str, witness: Vec<String> },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("bad fixture parameter: {0}")]
    BadParam(String),
}

fn fmt_dist(x: &str, over: &Option<(String, String)>) -> String {
    match over {
        None => format!("{x}·0 ≠ 0"),
        Some((y, z)) => format!("{x}·({y}∨{z})"),
    }
}

/// A square product table indexed by element positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultTable {
    n: usize,
    product: Vec<ElementId>,
}

impl MultTable {
    /// Row-major table of `n × n` products.
    pub fn new(n: usize, product: Vec<ElementId>) -> Result<Self, QuantaleError> {
        if product.len() != n * n {
            return Err(QuantaleError::DimensionMismatch { got: product.len(), expected: n * n });
        }
        if let Some(bad) = product.iter().find(|p| p.index() >= n) {
            return Err(QuantaleError::ForeignProduct(bad.index()));
        }
        Ok(MultTable { n, product })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(ElementId, ElementId) -> ElementId) -> Self {
        let mut product = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                product.push(f(ElementId::new(a), ElementId::new(b)));
            }
        }
        MultTable { n, product }
    }

    /// The meet table of `lattice`, i.e. the frame multiplication.
    pub fn meet_of(lattice: &FiniteLattice) -> Self {
        Self::from_fn(lattice.size(), |a, b| lattice.meet(a, b))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: ElementId, b: ElementId) -> ElementId {
        self.product[a.index() * self.n + b.index()]
    }

    pub fn entries(&self) -> &[ElementId] {
        &self.product
    }
}

impl fmt::Debug for MultTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> = self.product.chunks(self.n.max(1)).map(|r| r.iter().map(|x| x.0).collect()).collect();
        f.debug_struct("MultTable").field("rows", &rows).finish()
    }
}

/// Lazily derived sets, computed at most once per structure.
#[derive(Clone, Default)]
pub(crate) struct Cache {
    pub maximal: OnceLock<ElementSet>,
    pub primes: OnceLock<ElementSet>,
    pub stable_power: OnceLock<Vec<ElementId>>,
    pub maximal_meet: OnceLock<Vec<ElementId>>,
    pub z: OnceLock<ElementSet>,
    pub closure: OnceLock<Vec<ElementId>>,
}

/// A finite lattice with a validated multiplication.
#[derive(Clone)]
pub struct MultiplicativeLattice {
    name: String,
    lattice: FiniteLattice,
    mult: MultTable,
    pub(crate) cache: Cache,
}

impl fmt::Debug for MultiplicativeLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeLattice")
            .field("name", &self.name)
            .field("labels", &self.lattice.labels())
            .field("mult", &self.mult)
            .finish()
    }
}

impl PartialEq for MultiplicativeLattice {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.mult == other.mult
    }
}

impl Eq for MultiplicativeLattice {}

impl MultiplicativeLattice {
    /// Checks every quantale axiom exhaustively.
    pub fn new(name: impl Into<String>, lattice: FiniteLattice, mult: MultTable) -> Result<Self, QuantaleError> {
        validate_quantale(&lattice, &mult)?;
        Ok(MultiplicativeLattice { name: name.into(), lattice, mult, cache: Cache::default() })
    }

    /// The lattice with `· = ∧`.
    pub fn frame_of(name: impl Into<String>, lattice: FiniteLattice) -> Result<Self, QuantaleError> {
        let mult = MultTable::meet_of(&lattice);
        Self::new(name, lattice, mult)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn table(&self) -> &MultTable {
        &self.mult
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.lattice.elements()
    }

    pub fn bottom(&self) -> ElementId {
        self.lattice.bottom()
    }

    pub fn top(&self) -> ElementId {
        self.lattice.top()
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lattice.join(a, b)
    }

    pub fn label(&self, x: ElementId) -> &str {
        self.lattice.label(x)
    }

    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.lattice.element(label)
    }

    pub fn is_proper(&self, x: ElementId) -> bool {
        x != self.top()
    }

    #[inline]
    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mult.get(a, b)
    }

    /// `x^k` for `k ⩾ 1`.
    ///
    /// Powers descend (`x^{k+1} ⩽ x^k`), so the sequence is constant after at
    /// most `n` steps; exponents past `2n` return the stable value.
    pub fn power(&self, x: ElementId, k: u32) -> Result<ElementId, QuantaleError> {
        if k == 0 {
            return Err(QuantaleError::ZeroExponent);
        }
        let cap = 2 * self.size() as u32;
        let mut acc = x;
        for _ in 1..k.min(cap) {
            let next = self.multiply(acc, x);
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Limit of the descending sequence `x, x², x³, ..`.
    pub fn stable_power(&self, x: ElementId) -> ElementId {
        self.cache
            .stable_power
            .get_or_init(|| self.elements().map(|y| self.power(y, u32::MAX).expect("positive exponent")).collect())
            [x.index()]
    }

    /// `(a : b) = ⋁{l | l·b ⩽ a}`.
    pub fn residual(&self, a: ElementId, b: ElementId) -> ElementId {
        let ok: ElementSet = self.elements().filter(|&l| self.leq(self.multiply(l, b), a)).collect();
        self.lattice.join_all(ok)
    }

    /// `(0 : b)`.
    pub fn annihilator(&self, b: ElementId) -> ElementId {
        self.residual(self.bottom(), b)
    }

    /// Whether `·` coincides with `∧`.
    pub fn is_frame(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.multiply(a, b) == self.meet(a, b)))
    }
}

/// Exhaustive check of the quantale axioms, followed by the elementary
/// consequences `xy ⩽ x`, `xy ⩽ x∧y`, `x0 = 0` and monotonicity.
pub fn validate_quantale(lat: &FiniteLattice, mult: &MultTable) -> Result<(), QuantaleError> {
    let n = lat.size();
    if mult.size() != n {
        return Err(QuantaleError::DimensionMismatch { got: mult.size() * mult.size(), expected: n * n });
    }
    let lab = |x: ElementId| lat.label(x).to_string();
    let p = |a, b| mult.get(a, b);
    let els: Vec<ElementId> = lat.elements().collect();

    for &a in &els {
        for &b in &els {
            if p(a, b) != p(b, a) {
                return Err(QuantaleError::NotCommutative { a: lab(a), b: lab(b) });
            }
        }
    }
    for &x in &els {
        if p(lat.top(), x) != x {
            return Err(QuantaleError::IdentityLawFails { x: lab(x) });
        }
    }
    for &x in &els {
        if p(x, lat.bottom()) != lat.bottom() {
            return Err(QuantaleError::DistributivityFails { x: lab(x), over: None });
        }
    }
    for &x in &els {
        for &y in &els {
            for &z in &els {
                if p(x, lat.join(y, z)) != lat.join(p(x, y), p(x, z)) {
                    return Err(QuantaleError::DistributivityFails { x: lab(x), over: Some((lab(y), lab(z))) });
                }
            }
        }
    }
    for &a in &els {
        for &b in &els {
            for &c in &els {
                if p(p(a, b), c) != p(a, p(b, c)) {
                    return Err(QuantaleError::NotAssociative { a: lab(a), b: lab(b), c: lab(c) });
                }
            }
        }
    }

    let fail =
        |law, w: &[ElementId]| QuantaleError::BasicsViolated { law, witness: w.iter().map(|&x| lab(x)).collect() };
    for &x in &els {
        for &y in &els {
            if !lat.leq(p(x, y), x) {
                return Err(fail("xy ⩽ x", &[x, y]));
            }
            if !lat.leq(p(x, y), lat.meet(x, y)) {
                return Err(fail("xy ⩽ x∧y", &[x, y]));
            }
            if !lat.leq(x, y) {
                continue;
            }
            for &z in &els {
                if !lat.leq(p(x, z), p(y, z)) {
                    return Err(fail("x ⩽ y ⇒ xz ⩽ yz", &[x, y, z]));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FiniteLattice {
        FiniteLattice::from_order(3, &[(0, 1), (1, 2)], Some(vec!["0".into(), "m".into(), "1".into()])).unwrap()
    }

    fn e(ml: &MultiplicativeLattice, s: &str) -> ElementId {
        ml.element(s).unwrap()
    }

    #[test]
    fn chain_with_idempotent_top_square_fails_distributivity() {
        let l = chain3();
        let (z, m, one) = (ElementId(0), ElementId(1), ElementId(2));
        // m·m = 1, everything else forced
        let t = MultTable::from_fn(3, |a, b| match (a, b) {
            (x, y) if x == z || y == z => z,
            (x, y) if x == one => y,
            (x, _) if x == m => {
                if b == one {
                    m
                } else {
                    one
                }
            }
            _ => unreachable!(),
        });
        let err = MultiplicativeLattice::new("bad", l, t).unwrap_err();
        assert!(matches!(err, QuantaleError::DistributivityFails { over: Some(_), .. }), "{err}");
    }

    #[test]
    fn boolean_frame_is_valid() {
        let ml = named_fixture("B4").unwrap();
        assert!(ml.is_frame());
    }

    #[test]
    fn non_commutative_and_identity_failures() {
        let l = chain3();
        let t = MultTable::from_fn(3, |a, _| a);
        assert!(matches!(MultiplicativeLattice::new("x", l.clone(), t), Err(QuantaleError::NotCommutative { .. })));
        let t = MultTable::from_fn(3, |_, _| ElementId(0));
        assert!(matches!(MultiplicativeLattice::new("x", l.clone(), t), Err(QuantaleError::IdentityLawFails { .. })));
        assert!(matches!(MultTable::new(3, vec![ElementId(0); 4]), Err(QuantaleError::DimensionMismatch { .. })));
    }

    #[test]
    fn powers() {
        let z8 = named_fixture("Z8").unwrap();
        let (m, q, zero) = (e(&z8, "(2)"), e(&z8, "(4)"), e(&z8, "(8)"));
        for x in z8.elements() {
            assert_eq!(z8.power(x, 1).unwrap(), x);
        }
        assert_eq!(z8.multiply(m, m), q);
        assert_eq!(z8.power(m, 2).unwrap(), q);
        assert_eq!(z8.power(m, 3).unwrap(), zero);
        assert_eq!(z8.power(m, 1000).unwrap(), zero);
        assert_eq!(z8.stable_power(m), zero);
        assert_eq!(z8.power(m, 0), Err(QuantaleError::ZeroExponent));

        let d12 = named_fixture("D12").unwrap();
        assert_eq!(d12.multiply(e(&d12, "(2)"), e(&d12, "(3)")), e(&d12, "(6)"));
    }

    #[test]
    fn residuals_and_annihilators() {
        let z8 = named_fixture("Z8").unwrap();
        let (m, q) = (e(&z8, "(2)"), e(&z8, "(4)"));
        for a in z8.elements() {
            assert_eq!(z8.residual(a, z8.top()), a);
            assert_eq!(z8.residual(z8.top(), a), z8.top());
        }
        assert_eq!(z8.residual(q, m), m);
        assert_eq!(z8.annihilator(z8.bottom()), z8.top());
        assert_eq!(z8.annihilator(m), q);

        let b4 = named_fixture("B4").unwrap();
        assert_eq!(b4.annihilator(e(&b4, "a")), e(&b4, "b"));
    }
}
