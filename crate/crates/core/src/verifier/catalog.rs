//! The catalog of checked statements.
//!
//! Each theorem is a list of clauses. A clause has an arity `k` and a
//! predicate on `k`-tuples of elements; the check runs it on every tuple and
//! the first failing tuple becomes the witness. Conditional theorems carry
//! a hypothesis on the whole structure and report `not-applicable` when it
//! fails.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::lattice::{ElementId, ElementSet};
use crate::quantale::{named_fixture, MultiplicativeLattice};
use crate::spectra::LatticePredicates;
use crate::ztheory::ZPredicates;

use super::homs::{self, HomReading};
use super::VerifyError;

macro_rules! theorem_ids {
    ($($variant:ident => $code:literal : $statement:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum TheoremId { $($variant,)* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn code(self) -> &'static str {
                match self { $(TheoremId::$variant => $code,)* }
            }

            /// The statement being checked, as a formula.
            pub fn statement(self) -> &'static str {
                match self { $(TheoremId::$variant => $statement,)* }
            }
        }

        impl FromStr for TheoremId {
            type Err = VerifyError;

            fn from_str(s: &str) -> Result<Self, VerifyError> {
                match s.to_ascii_uppercase().as_str() {
                    $($code => Ok(TheoremId::$variant),)*
                    _ => Err(VerifyError::UnknownTheoremId(s.to_string())),
                }
            }
        }
    };
}

theorem_ids! {
    MultBasics => "MULT-BASICS": "xy ⩽ x∧y, x0 = 0, x ⩽ y ⇒ xz ⩽ yz; l ⩽ (a:b) ⇔ lb ⩽ a",
    MaxPrime => "MAX-PRIME": "Max(L) ⊆ P(L); every proper a lies below some m ∈ Max(L)",
    RadicalForms => "RADICAL-FORMS": "√a = ⋁{y | yⁿ ⩽ a} = ⋀V_P(a) = ⋀min V_P(a)",
    ZDefs => "Z-DEFS": "x ∈ Z(L) ⇔ (M_a ⊇ M_b, b ⩽ x ⇒ a ⩽ x) ⇔ (M_a = M_b, b ⩽ x ⇒ a ⩽ x) ⇔ m_x = x ⇔ cz(x) = x",
    ZMeets => "Z-MEETS": "{xᵢ} ⊆ Z(L) ⇒ ⋀xᵢ ∈ Z(L)",
    ZMaximal => "Z-MAXIMAL": "Max(L) ⊆ Z(L); j_L ∈ Z(L); j_L = 0 ⇒ 0 ∈ Z(L); Max(L) = {m} ⇒ a < m ∉ Z(L)",
    ZMinPrime => "Z-MINPRIME": "x ∈ Z(L), p ∈ min V_P(x) ⇒ p ∈ Z(L)",
    ZResidual => "Z-RESIDUAL": "a ∈ Z(L) ⇒ (a:b) ∈ Z(L); ((a:b):c) = (a:bc) = ((a:c):b); meet and join variants",
    ZAnnihilator => "Z-ANNIHILATOR": "j_L = 0 ⇒ (0:b) ∈ Z(L)",
    QuasilocalPz => "QUASILOCAL-PZ": "|Max(L)| < ∞, P(L) ⊆ Z(L) ⇒ P(L) = Max(L)",
    SemisimpleDichotomy => "SEMISIMPLE-DICHOTOMY": "j_L = 0, p ∈ P(L) ⇒ p ∈ Z(L) or max{x ∈ Z(L) | x ⩽ p} ⊆ P_z(L)",
    ZProductSzi => "Z-PRODUCT-SZI": "Z(L)·Z(L) ⊆ Z(L) ⇔ m_a² = m_a for all a",
    HomInv => "HOM-INV": "φ⁻¹(Z(L′)) ⊆ Z(L) ⇔ φ⁻¹(Max(L′)) ⊆ Z(L)",
    HomKernel => "HOM-KERNEL": "⋀aᵢ = 0′, φ⁻¹(aᵢ) ∈ Z(L) ⇒ φ⁻¹(0′) ∈ Z(L)",
    RegularStrongZ => "REGULAR-STRONGZ": "L regular ⇒ x = m_x for all x",
    CzLaws => "CZ-LAWS": "a ⩽ cz(a) = cz(cz(a)); cz(a) = 1 ⇔ a = 1; √a ⩽ cz(a); cz(ab) = cz(a∧b) = cz(a)∧cz(b); cz(aⁿ) = cz(a); cz(a) = m_a",
    CzMultSzi => "CZ-MULT-SZI": "szi ⇒ cz(ab) = cz(a)cz(b)",
    CzJoinEq => "CZ-JOIN-EQ": "Z(L) ∨-closed ⇔ cz(a∨b) = cz(a)∨cz(b) ⇔ ⋁-closed ⇔ cz(⋁aᵢ) = ⋁cz(aᵢ)",
    PzChar => "PZ-CHAR": "P(L) ⊆ Z(L) ⇔ semiprimes ⊆ Z(L) ⇔ m_a = ⋀V_P(a) ⇔ cz(a) = √a",
    NucleusSzi => "NUCLEUS-SZI": "szi ⇒ cz(ab) = cz(a·cz(b)) = cz(cz(a)·b) = cz(cz(a)cz(b))",
    QuotientFrame => "QUOTIENT-FRAME": "(Z(L), ⊙, ⋁′) with a⊙b = cz(ab) is a frame and cz: L → Z(L) is an onto homomorphism",
    SiHierarchy => "SI-HIERARCHY": "P(L) ⊆ SI(L); z-SI(L) ⊆ z-Irr(L)",
    EqIrr => "EQ-IRR": "z-SI(L) = Z(L) ∩ SI(L); z-Irr(L) = Z(L) ∩ Irr(L)",
    MinZsi => "MIN-ZSI": "every proper x ∈ Z(L) lies below a minimal z-strongly irreducible element",
    ZChain => "ZCHAIN": "every proper z-element is z-SI ⇒ Z(L) is a chain",
    ZDecomp => "Z-DECOMP": "every x ∈ Z(L) is an irredundant finite meet of z-irreducible elements",
    EqPrime => "EQ-PRIME": "szi ⇒ P_z(L) = Z(L) ∩ P(L)",
    EqSemiprime => "EQ-SEMIPRIME": "szi ⇒ z-semiprimes = Z(L) ∩ semiprimes",
    EqPrimary => "EQ-PRIMARY": "szi ⇒ z-primaries = Z(L) ∩ primaries",
    Vpss => "VPSS": "szi, x ∈ Z(L) ⇒ (x ∈ P_z(L) ⇔ x z-semiprime and z-SI)",
    MinZprime => "MIN-ZPRIME": "L nontrivial ⇒ min P_z(L) ≠ ∅, finite, and below every z-prime",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// Named results and the check that covers each.
pub const COVERAGE: &[(&str, TheoremId)] = &[
    ("multiplication basics lemma", TheoremId::MultBasics),
    ("maximal elements are prime", TheoremId::MaxPrime),
    ("existence of maximal elements", TheoremId::MaxPrime),
    ("z-element properties lemma: meets", TheoremId::ZMeets),
    ("z-element properties lemma: m_x = x", TheoremId::ZDefs),
    ("z-element properties lemma: maximal elements, unique maximal, Jacobson radical", TheoremId::ZMaximal),
    ("z-element properties lemma: minimal primes", TheoremId::ZMinPrime),
    ("residual proposition", TheoremId::ZResidual),
    ("residual corollary", TheoremId::ZResidual),
    ("annihilator corollary", TheoremId::ZAnnihilator),
    ("quasi-local pz proposition", TheoremId::QuasilocalPz),
    ("semisimple prime/z dichotomy theorem", TheoremId::SemisimpleDichotomy),
    ("product-closure szi theorem", TheoremId::ZProductSzi),
    ("finite products corollary", TheoremId::ZProductSzi),
    ("homomorphism inverse-image proposition", TheoremId::HomInv),
    ("homomorphism kernel proposition", TheoremId::HomKernel),
    ("regular strong-z theorem", TheoremId::RegularStrongZ),
    ("cz property proposition", TheoremId::CzLaws),
    ("cz property proposition: szi product", TheoremId::CzMultSzi),
    ("join-closure equivalence proposition", TheoremId::CzJoinEq),
    ("pz characterization proposition", TheoremId::PzChar),
    ("quantic nucleus identities", TheoremId::NucleusSzi),
    ("quotient construction theorem", TheoremId::QuotientFrame),
    ("compact frame theorem", TheoremId::QuotientFrame),
    ("prime and z-strongly irreducible lemma", TheoremId::SiHierarchy),
    ("z-(strongly) irreducible equivalence", TheoremId::EqIrr),
    ("minimal z-strongly irreducible existence", TheoremId::MinZsi),
    ("totally ordered Z(L) proposition", TheoremId::ZChain),
    ("z-irreducible decomposition theorem", TheoremId::ZDecomp),
    ("z-prime equivalence", TheoremId::EqPrime),
    ("minimal z-prime existence", TheoremId::MinZprime),
    ("finiteness of minimal z-primes", TheoremId::MinZprime),
    ("z-semiprime equivalence", TheoremId::EqSemiprime),
    ("z-prime via z-semiprime and z-strongly irreducible", TheoremId::Vpss),
    ("z-primary equivalence", TheoremId::EqPrimary),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// A homomorphism `L → target` and the target elements it fails at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    /// Fixture name of the target, or `self`.
    pub target: String,
    pub map: Vec<ElementId>,
    pub reading: HomReading,
    /// Offending `j` (inverse image) or family (kernel), in the target.
    pub at: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub elements: Vec<ElementId>,
    pub labels: Vec<String>,
    pub hom: Option<HomWitness>,
}

/// Outcome of one homomorphism reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingResult {
    pub reading: HomReading,
    pub maps: usize,
    pub counterexample: Option<HomWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub structure: String,
    pub verdict: Verdict,
    /// The hypothesis of a conditional theorem.
    pub hypothesis: Option<&'static str>,
    pub witness: Option<Witness>,
    /// Homomorphism statements only: every reading, the verdict following
    /// [`HomReading::Adjoint`].
    pub readings: Vec<ReadingResult>,
}

/// Everything the clauses look at, computed once per structure.
pub(crate) struct Ctx<'a> {
    pub ml: &'a MultiplicativeLattice,
    pub z: ElementSet,
    pub maximal: ElementSet,
    pub primes: ElementSet,
    pub jac: ElementId,
    pub preds: LatticePredicates,
    pub zp: ZPredicates,
    pub product_closed: bool,
    rad: Vec<ElementId>,
    semiprime: ElementSet,
    primary: ElementSet,
    irr: ElementSet,
    si: ElementSet,
    z_prime: ElementSet,
    z_semiprime: ElementSet,
    z_primary: ElementSet,
    z_irr: ElementSet,
    z_si: ElementSet,
}

impl<'a> Ctx<'a> {
    pub fn new(ml: &'a MultiplicativeLattice) -> Self {
        let z = ml.z_elements();
        let set = |f: &dyn Fn(ElementId) -> bool| ml.elements().filter(|&x| f(x)).collect::<ElementSet>();
        Ctx {
            ml,
            z,
            maximal: ml.maximal_set(),
            primes: ml.primes(),
            jac: ml.lattice().meet_all(ml.maximal_set()),
            preds: ml.lattice_predicates(),
            zp: ml.z_predicates(),
            product_closed: z.iter().all(|a| z.iter().all(|b| z.contains(ml.multiply(a, b)))),
            rad: ml.elements().map(|x| ml.radical_by_primes(x)).collect(),
            semiprime: set(&|x| ml.is_semiprime(x)),
            primary: set(&|x| ml.is_primary(x)),
            irr: set(&|x| ml.is_irreducible(x)),
            si: set(&|x| ml.is_strongly_irreducible(x)),
            z_prime: set(&|x| ml.is_z_prime(x)),
            z_semiprime: set(&|x| ml.is_z_semiprime(x)),
            z_primary: set(&|x| ml.is_z_primary(x)),
            z_irr: set(&|x| ml.is_z_irreducible(x)),
            z_si: set(&|x| ml.is_z_strongly_irreducible(x)),
        }
    }

    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.ml.multiply(a, b)
    }
    fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.ml.leq(a, b)
    }
    fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.ml.meet(a, b)
    }
    fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.ml.join(a, b)
    }
    fn cz(&self, a: ElementId) -> ElementId {
        self.ml.z_closure(a)
    }
    fn m(&self, a: ElementId) -> ElementId {
        self.ml.m_of(a)
    }
    fn rad(&self, a: ElementId) -> ElementId {
        self.rad[a.index()]
    }
    fn res(&self, a: ElementId, b: ElementId) -> ElementId {
        self.ml.residual(a, b)
    }
    fn top(&self) -> ElementId {
        self.ml.top()
    }
    fn bot(&self) -> ElementId {
        self.ml.bottom()
    }
    fn is_z(&self, a: ElementId) -> bool {
        self.z.contains(a)
    }
    fn proper(&self, a: ElementId) -> bool {
        a != self.top()
    }
    fn all(&self, f: impl Fn(ElementId) -> bool) -> bool {
        self.ml.elements().all(f)
    }
}

type Pred = fn(&Ctx, &[ElementId]) -> bool;

pub(crate) struct Clause {
    pub name: &'static str,
    pub arity: usize,
    pub holds: Pred,
}

fn cl(name: &'static str, arity: usize, holds: Pred) -> Clause {
    Clause { name, arity, holds }
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

type Hypothesis = (&'static str, fn(&Ctx) -> bool);

fn hypothesis(id: TheoremId) -> Option<Hypothesis> {
    use TheoremId::*;
    let szi: Hypothesis = ("szi", |c| c.zp.szi);
    Some(match id {
        ZAnnihilator | SemisimpleDichotomy => ("semisimple", |c| c.preds.semisimple),
        QuasilocalPz => ("quasi-local and pz", |c| c.preds.quasi_local && c.zp.pz),
        RegularStrongZ => ("regular", |c| c.preds.regular),
        CzMultSzi | NucleusSzi | EqPrime | EqSemiprime | EqPrimary | Vpss => szi,
        ZChain => ("every proper z-element is z-strongly irreducible", |c| {
            c.z.iter().filter(|&x| c.proper(x)).all(|x| c.z_si.contains(x))
        }),
        MinZprime => ("nontrivial", |c| !c.ml.lattice().is_trivial()),
        _ => return None,
    })
}

fn clauses(id: TheoremId) -> Vec<Clause> {
    use TheoremId::*;
    match id {
        MultBasics => vec![
            cl("ab = ba", 2, |c, x| c.mul(x[0], x[1]) == c.mul(x[1], x[0])),
            cl("(ab)c = a(bc)", 3, |c, x| c.mul(c.mul(x[0], x[1]), x[2]) == c.mul(x[0], c.mul(x[1], x[2]))),
            cl("a(b∨c) = ab∨ac", 3, |c, x| {
                c.mul(x[0], c.join(x[1], x[2])) == c.join(c.mul(x[0], x[1]), c.mul(x[0], x[2]))
            }),
            cl("a1 = a", 1, |c, x| c.mul(x[0], c.top()) == x[0]),
            cl("ab ⩽ a∧b", 2, |c, x| c.leq(c.mul(x[0], x[1]), c.meet(x[0], x[1]))),
            cl("a0 = 0", 1, |c, x| c.mul(x[0], c.bot()) == c.bot()),
            cl("a ⩽ b, u ⩽ v ⇒ au ⩽ bv", 4, |c, x| {
                implies(c.leq(x[0], x[1]) && c.leq(x[2], x[3]), c.leq(c.mul(x[0], x[2]), c.mul(x[1], x[3])))
            }),
            cl("l ⩽ (a:b) ⇔ lb ⩽ a", 3, |c, x| c.leq(x[0], c.res(x[1], x[2])) == c.leq(c.mul(x[0], x[2]), x[1])),
        ],
        MaxPrime => vec![
            cl("m maximal ⇒ m prime", 1, |c, x| implies(c.maximal.contains(x[0]), c.primes.contains(x[0]))),
            cl("a proper ⇒ a ⩽ m for some maximal m", 1, |c, x| {
                implies(c.proper(x[0]), c.maximal.iter().any(|m| c.leq(x[0], m)))
            }),
            cl("m maximal: a ⩽ m ⇔ a² ⩽ m", 2, |c, x| {
                implies(c.maximal.contains(x[1]), c.leq(x[0], x[1]) == c.leq(c.mul(x[0], x[0]), x[1]))
            }),
        ],
        RadicalForms => vec![
            cl("√a by powers = by primes = by minimal primes", 1, |c, x| {
                let (p, q, r) = c.ml.radical_forms(x[0]);
                p == q && q == r
            }),
            cl("a ⩽ √a = √√a", 1, |c, x| c.leq(x[0], c.rad(x[0])) && c.rad(c.rad(x[0])) == c.rad(x[0])),
            cl("√(ab) = √(a∧b) = √a∧√b", 2, |c, x| {
                let r = c.meet(c.rad(x[0]), c.rad(x[1]));
                c.rad(c.mul(x[0], x[1])) == r && c.rad(c.meet(x[0], x[1])) == r
            }),
        ],
        ZDefs => vec![
            cl("pair forms, m_x = x and cz(x) = x agree", 1, |c, x| c.ml.is_z_element(x[0]).is_ok()),
            cl("x ⩽ m_x = m_(m_x)", 1, |c, x| c.leq(x[0], c.m(x[0])) && c.m(c.m(x[0])) == c.m(x[0])),
        ],
        ZMeets => vec![
            cl("a, b ∈ Z ⇒ a∧b ∈ Z", 2, |c, x| {
                implies(c.is_z(x[0]) && c.is_z(x[1]), c.is_z(c.meet(x[0], x[1])))
            }),
            cl("⋀∅ = 1 ∈ Z", 0, |c, _| c.is_z(c.top())),
            cl("⋀Z ∈ Z", 0, |c, _| c.is_z(c.ml.lattice().meet_all(c.z))),
            cl("m_a ∈ Z", 1, |c, x| c.is_z(c.m(x[0]))),
        ],
        ZMaximal => vec![
            cl("m maximal ⇒ m ∈ Z", 1, |c, x| implies(c.maximal.contains(x[0]), c.is_z(x[0]))),
            cl("j_L ∈ Z", 0, |c, _| c.is_z(c.jac)),
            cl("j_L = 0 ⇒ 0 ∈ Z", 0, |c, _| implies(c.jac == c.bot(), c.is_z(c.bot()))),
            cl("Max = {m}, a < m ⇒ a ∉ Z", 1, |c, x| {
                implies(c.maximal.len() == 1 && x[0] != c.jac && c.leq(x[0], c.jac), !c.is_z(x[0]))
            }),
        ],
        ZMinPrime => vec![cl("x ∈ Z, p ∈ min V_P(x) ⇒ p ∈ Z", 2, |c, x| {
            implies(c.is_z(x[0]) && c.ml.minimal_primes_over(x[0]).contains(x[1]), c.is_z(x[1]))
        })],
        ZResidual => vec![
            cl("a ∈ Z ⇒ (a:b) ∈ Z", 2, |c, x| implies(c.is_z(x[0]), c.is_z(c.res(x[0], x[1])))),
            cl("((a:b):c) = (a:bc) = ((a:c):b)", 3, |c, x| {
                let (a, b, d) = (x[0], x[1], x[2]);
                let v = c.res(a, c.mul(b, d));
                c.res(c.res(a, b), d) == v && c.res(c.res(a, d), b) == v
            }),
            cl("a, a′ ∈ Z ⇒ (a∧a′:b) = (a:b)∧(a′:b) ∈ Z", 3, |c, x| {
                let (a, a2, b) = (x[0], x[1], x[2]);
                let v = c.res(c.meet(a, a2), b);
                implies(c.is_z(a) && c.is_z(a2), v == c.meet(c.res(a, b), c.res(a2, b)) && c.is_z(v))
            }),
            cl("a ∈ Z ⇒ (a:b∨d) = (a:b)∧(a:d) ∈ Z", 3, |c, x| {
                let (a, b, d) = (x[0], x[1], x[2]);
                let v = c.res(a, c.join(b, d));
                implies(c.is_z(a), v == c.meet(c.res(a, b), c.res(a, d)) && c.is_z(v))
            }),
        ],
        ZAnnihilator => vec![cl("(0:b) ∈ Z", 1, |c, x| c.is_z(c.ml.annihilator(x[0])))],
        QuasilocalPz => {
            vec![cl("p prime ⇒ p maximal", 1, |c, x| implies(c.primes.contains(x[0]), c.maximal.contains(x[0])))]
        }
        SemisimpleDichotomy => vec![cl("p prime ⇒ p ∈ Z or max{x ∈ Z | x ⩽ p} ⊆ P_z", 1, |c, x| {
            let p = x[0];
            let below = c.z.intersection(c.ml.lattice().down_set(p));
            implies(c.primes.contains(p), c.is_z(p) || c.ml.lattice().maximal_of(below).is_subset(c.z_prime))
        })],
        ZProductSzi => vec![
            cl("Z·Z ⊆ Z ⇔ szi", 0, |c, _| c.product_closed == c.zp.szi),
            cl("szi, a, b ∈ Z ⇒ ab ∈ Z", 2, |c, x| {
                implies(c.zp.szi && c.is_z(x[0]) && c.is_z(x[1]), c.is_z(c.mul(x[0], x[1])))
            }),
            cl("Z·Z ⊆ Z ⇒ m_a² = m_a", 1, |c, x| {
                implies(c.product_closed, c.mul(c.m(x[0]), c.m(x[0])) == c.m(x[0]))
            }),
        ],
        HomInv | HomKernel => Vec::new(),
        RegularStrongZ => vec![cl("x = m_x", 1, |c, x| c.m(x[0]) == x[0]), cl("j_L = 0", 0, |c, _| c.jac == c.bot())],
        CzLaws => vec![
            cl("cz(a) is the least z-element above a", 2, |c, x| {
                c.is_z(c.cz(x[0]))
                    && c.leq(x[0], c.cz(x[0]))
                    && implies(c.is_z(x[1]) && c.leq(x[0], x[1]), c.leq(c.cz(x[0]), x[1]))
            }),
            cl("cz(a) = a ⇔ a ∈ Z", 1, |c, x| (c.cz(x[0]) == x[0]) == c.is_z(x[0])),
            cl("cz(a) = 1 ⇔ a = 1", 1, |c, x| (c.cz(x[0]) == c.top()) == (x[0] == c.top())),
            cl("j_L = 0 ⇒ cz(0) = 0", 0, |c, _| implies(c.jac == c.bot(), c.cz(c.bot()) == c.bot())),
            cl("a ⩽ b ⇒ cz(a) ⩽ cz(b)", 2, |c, x| implies(c.leq(x[0], x[1]), c.leq(c.cz(x[0]), c.cz(x[1])))),
            cl("cz(cz(a)) = cz(a)", 1, |c, x| c.cz(c.cz(x[0])) == c.cz(x[0])),
            cl("√a ⩽ cz(a)", 1, |c, x| c.leq(c.rad(x[0]), c.cz(x[0]))),
            cl("√cz(a) = cz(√a)", 1, |c, x| c.rad(c.cz(x[0])) == c.cz(c.rad(x[0]))),
            cl("cz(ab) = cz(a∧b) = cz(a)∧cz(b)", 2, |c, x| {
                let v = c.meet(c.cz(x[0]), c.cz(x[1]));
                c.cz(c.mul(x[0], x[1])) == v && c.cz(c.meet(x[0], x[1])) == v
            }),
            cl("cz(a)∨cz(b) ⩽ cz(a∨b) = cz(cz(a)∨cz(b))", 2, |c, x| {
                let (a, b) = (c.cz(x[0]), c.cz(x[1]));
                let v = c.cz(c.join(x[0], x[1]));
                c.leq(c.join(a, b), v) && v == c.cz(c.join(a, b))
            }),
            cl("cz(a) ⩽ m_a, with equality on Z", 1, |c, x| {
                c.leq(c.cz(x[0]), c.m(x[0])) && implies(c.is_z(x[0]), c.cz(x[0]) == c.m(x[0]))
            }),
            cl("cz(aⁿ) = cz(a)", 1, |c, x| {
                let mut p = x[0];
                for _ in 0..=c.ml.size() {
                    if c.cz(p) != c.cz(x[0]) {
                        return false;
                    }
                    p = c.mul(p, x[0]);
                }
                true
            }),
        ],
        CzMultSzi => {
            vec![cl("cz(ab) = cz(a)cz(b)", 2, |c, x| c.cz(c.mul(x[0], x[1])) == c.mul(c.cz(x[0]), c.cz(x[1])))]
        }
        CzJoinEq => vec![
            cl("(1) ⇔ (2)", 0, |c, _| c.zp.z_join_closed == cz_join_preserving(c)),
            cl("(1) ⇔ (3)", 0, |c, _| c.zp.z_join_closed == z_arbitrary_join_closed(c)),
            cl("(3) ⇔ (4)", 0, |c, _| z_arbitrary_join_closed(c) == cz_arbitrary_join_preserving(c)),
            cl("Z ∨-closed ⇒ cz(a∨b) = cz(a)∨cz(b)", 2, |c, x| {
                implies(c.zp.z_join_closed, c.cz(c.join(x[0], x[1])) == c.join(c.cz(x[0]), c.cz(x[1])))
            }),
        ],
        PzChar => vec![
            cl("pz ⇔ semiprimes ⊆ Z ⇔ m_a = ⋀V_P(a) ⇔ cz(a) = √a", 0, |c, _| {
                let v = pz_forms(c);
                v.iter().all(|&b| b == v[0])
            }),
            cl("pz ⇒ m_a = ⋀V_P(a) = cz(a) = √a", 1, |c, x| {
                let a = x[0];
                implies(c.zp.pz, c.m(a) == c.rad(a) && c.cz(a) == c.rad(a))
            }),
            cl("pz ⇒ semiprime q ∈ Z", 1, |c, x| implies(c.zp.pz && c.semiprime.contains(x[0]), c.is_z(x[0]))),
        ],
        NucleusSzi => vec![
            cl("cz(a)cz(b) ⩽ cz(ab)", 2, |c, x| c.leq(c.mul(c.cz(x[0]), c.cz(x[1])), c.cz(c.mul(x[0], x[1])))),
            cl("cz(ab) = cz(a·cz(b)) = cz(cz(a)·b) = cz(cz(a)cz(b))", 2, |c, x| {
                let (a, b) = (x[0], x[1]);
                let v = c.cz(c.mul(a, b));
                v == c.cz(c.mul(a, c.cz(b))) && v == c.cz(c.mul(c.cz(a), b)) && v == c.cz(c.mul(c.cz(a), c.cz(b)))
            }),
        ],
        QuotientFrame => vec![
            cl("a, b ∈ Z ⇒ a⊙b = a∧b", 2, |c, x| {
                implies(c.is_z(x[0]) && c.is_z(x[1]), c.cz(c.mul(x[0], x[1])) == c.meet(x[0], x[1]))
            }),
            cl("cz(ab) = cz(a)⊙cz(b)", 2, |c, x| c.cz(c.mul(x[0], x[1])) == c.cz(c.mul(c.cz(x[0]), c.cz(x[1])))),
            cl("cz(a∨b) = cz(a)⋁′cz(b)", 2, |c, x| {
                c.cz(c.join(x[0], x[1])) == c.cz(c.join(c.cz(x[0]), c.cz(x[1])))
            }),
            cl("cz(1) = 1, cz(0) = ⋀Z", 0, |c, _| {
                c.cz(c.top()) == c.top() && c.cz(c.bot()) == c.ml.lattice().meet_all(c.z)
            }),
            cl("cz onto Z", 1, |c, x| implies(c.is_z(x[0]), c.cz(x[0]) == x[0])),
            cl("a∧(b⋁′d) = (a∧b)⋁′(a∧d) on Z", 3, |c, x| {
                let (a, b, d) = (x[0], x[1], x[2]);
                implies(
                    c.is_z(a) && c.is_z(b) && c.is_z(d),
                    c.meet(a, c.cz(c.join(b, d))) == c.cz(c.join(c.meet(a, b), c.meet(a, d))),
                )
            }),
            cl("quotient builds", 0, |c, _| c.ml.z_quotient().is_ok()),
        ],
        SiHierarchy => vec![
            cl("prime ⇒ strongly irreducible", 1, |c, x| implies(c.primes.contains(x[0]), c.si.contains(x[0]))),
            cl("strongly irreducible ⇒ irreducible", 1, |c, x| implies(c.si.contains(x[0]), c.irr.contains(x[0]))),
            cl("z-SI ⇒ z-irreducible", 1, |c, x| implies(c.z_si.contains(x[0]), c.z_irr.contains(x[0]))),
            cl("prime ⇒ semiprime, primary", 1, |c, x| {
                implies(c.primes.contains(x[0]), c.semiprime.contains(x[0]) && c.primary.contains(x[0]))
            }),
        ],
        EqIrr => vec![
            cl("z-SI ⇔ z and SI", 1, |c, x| c.z_si.contains(x[0]) == (c.is_z(x[0]) && c.si.contains(x[0]))),
            cl("z-irreducible ⇔ z and irreducible", 1, |c, x| {
                c.z_irr.contains(x[0]) == (c.is_z(x[0]) && c.irr.contains(x[0]))
            }),
        ],
        MinZsi => vec![cl("proper a ∈ Z ⇒ a ⩽ s for a minimal z-SI s", 1, |c, x| {
            let minimal = c.ml.lattice().minimal_of(c.z_si);
            implies(c.is_z(x[0]) && c.proper(x[0]), minimal.iter().any(|s| c.leq(x[0], s)))
        })],
        ZChain => vec![cl("a, b ∈ Z ⇒ a ⩽ b or b ⩽ a", 2, |c, x| {
            implies(c.is_z(x[0]) && c.is_z(x[1]), c.leq(x[0], x[1]) || c.leq(x[1], x[0]))
        })],
        ZDecomp => vec![cl("x ∈ Z ⇒ x = ⋀ of an irredundant set of z-irreducibles", 1, |c, x| {
            if !c.is_z(x[0]) {
                return true;
            }
            let Ok(d) = c.ml.z_irreducible_decomposition(x[0]) else { return false };
            let lat = c.ml.lattice();
            d.is_subset(c.z_irr)
                && lat.meet_all(d) == x[0]
                && d.iter().all(|s| lat.meet_all(d.difference(ElementSet::singleton(s))) != x[0])
        })],
        EqPrime => vec![cl("z-prime ⇔ z and prime", 1, |c, x| {
            c.z_prime.contains(x[0]) == (c.is_z(x[0]) && c.primes.contains(x[0]))
        })],
        EqSemiprime => vec![cl("z-semiprime ⇔ z and semiprime", 1, |c, x| {
            c.z_semiprime.contains(x[0]) == (c.is_z(x[0]) && c.semiprime.contains(x[0]))
        })],
        EqPrimary => vec![cl("z-primary ⇔ z and primary", 1, |c, x| {
            c.z_primary.contains(x[0]) == (c.is_z(x[0]) && c.primary.contains(x[0]))
        })],
        Vpss => vec![cl("x ∈ Z ⇒ (z-prime ⇔ z-semiprime and z-SI)", 1, |c, x| {
            implies(c.is_z(x[0]), c.z_prime.contains(x[0]) == (c.z_semiprime.contains(x[0]) && c.z_si.contains(x[0])))
        })],
        MinZprime => vec![
            cl("min P_z ≠ ∅", 0, |c, _| !c.ml.lattice().minimal_of(c.z_prime).is_empty()),
            cl("m maximal ⇒ m z-prime", 1, |c, x| implies(c.maximal.contains(x[0]), c.z_prime.contains(x[0]))),
            cl("p z-prime ⇒ q ⩽ p for a minimal z-prime q", 1, |c, x| {
                let minimal = c.ml.lattice().minimal_of(c.z_prime);
                implies(c.z_prime.contains(x[0]), minimal.iter().any(|q| c.leq(q, x[0])))
            }),
        ],
    }
}

fn cz_join_preserving(c: &Ctx) -> bool {
    c.all(|a| c.all(|b| c.cz(c.join(a, b)) == c.join(c.cz(a), c.cz(b))))
}

/// Joins of nonempty subfamilies of `Z(L)`.
fn z_arbitrary_join_closed(c: &Ctx) -> bool {
    nonempty_subsets(c.z).all(|s| c.is_z(c.ml.lattice().join_all(s)))
}

fn cz_arbitrary_join_preserving(c: &Ctx) -> bool {
    let lat = c.ml.lattice();
    nonempty_subsets(lat.universe()).all(|s| {
        let cz_join = lat.join_all(s.iter().map(|a| c.cz(a)).collect());
        c.cz(lat.join_all(s)) == cz_join
    })
}

/// Nonempty subsets of `s`; large sets fall back to pairs, which suffice
/// for the join statements by induction.
fn nonempty_subsets(s: ElementSet) -> Box<dyn Iterator<Item = ElementSet>> {
    let items = s.to_vec();
    if items.len() <= 12 {
        Box::new(
            (1u64..1 << items.len()).map(move |mask| {
                items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
            }),
        )
    } else {
        let pairs: Vec<ElementSet> =
            items.iter().flat_map(|&a| items.iter().map(move |&b| ElementSet::singleton(a).with(b))).collect();
        Box::new(pairs.into_iter())
    }
}

fn pz_forms(c: &Ctx) -> [bool; 4] {
    [c.zp.pz, c.semiprime.is_subset(c.z), c.all(|a| c.m(a) == c.rad(a)), c.all(|a| c.cz(a) == c.rad(a))]
}

/// Runs `holds` on every tuple in index order; returns the first failure.
fn first_failure(c: &Ctx, clause: &Clause) -> Option<Vec<ElementId>> {
    let n = c.ml.size();
    let k = clause.arity;
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<ElementId> = idx.iter().map(|&i| ElementId::new(i)).collect();
        if !(clause.holds)(c, &tuple) {
            return Some(tuple);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn witness_of(ml: &MultiplicativeLattice, clause: &str, elements: Vec<ElementId>) -> Witness {
    Witness {
        clause: clause.into(),
        labels: elements.iter().map(|&x| ml.label(x).to_string()).collect(),
        elements,
        hom: None,
    }
}

/// Runs the selected checks on `ml`, in catalog order, each at most once.
pub fn run_theorems(ml: &MultiplicativeLattice, selection: &[TheoremId]) -> Vec<TheoremReport> {
    let ctx = Ctx::new(ml);
    let mut ids = selection.to_vec();
    ids.sort();
    ids.dedup();
    ids.into_iter().map(|id| run_one(&ctx, id)).collect()
}

/// Parses theorem codes, case-insensitively.
pub fn parse_selection<S: AsRef<str>>(codes: &[S]) -> Result<Vec<TheoremId>, VerifyError> {
    codes.iter().map(|s| s.as_ref().parse()).collect()
}

fn run_one(c: &Ctx, id: TheoremId) -> TheoremReport {
    let hyp = hypothesis(id);
    let mut report = TheoremReport {
        theorem: id,
        structure: c.ml.name().to_string(),
        verdict: Verdict::Pass,
        hypothesis: hyp.map(|h| h.0),
        witness: None,
        readings: Vec::new(),
    };
    if let Some((_, holds)) = hyp {
        if !holds(c) {
            report.verdict = Verdict::NotApplicable;
            return report;
        }
    }
    match id {
        TheoremId::HomInv | TheoremId::HomKernel => {
            report.readings = run_hom(c.ml, id);
            let main = report.readings.iter().find(|r| r.reading == HomReading::Adjoint);
            if let Some(w) = main.and_then(|r| r.counterexample.clone()) {
                report.verdict = Verdict::Fail;
                report.witness = Some(Witness {
                    clause: format!("{} reading", w.reading.name()),
                    elements: Vec::new(),
                    labels: Vec::new(),
                    hom: Some(w),
                });
            }
        }
        _ => {
            for clause in clauses(id) {
                if let Some(t) = first_failure(c, &clause) {
                    report.verdict = Verdict::Fail;
                    report.witness = Some(witness_of(c.ml, clause.name, t));
                    break;
                }
            }
        }
    }
    report
}

fn hom_violation(
    src: &MultiplicativeLattice,
    tgt: &MultiplicativeLattice,
    map: &[ElementId],
    id: TheoremId,
    reading: HomReading,
) -> Option<Vec<ElementId>> {
    if id == TheoremId::HomInv {
        homs::hom_inv_violation(src, tgt, map, reading).map(|j| vec![j])
    } else {
        homs::hom_kernel_violation(src, tgt, map, reading)
    }
}

fn run_hom(ml: &MultiplicativeLattice, id: TheoremId) -> Vec<ReadingResult> {
    let family = homs::hom_family(ml);
    let readings: &[HomReading] =
        if id == TheoremId::HomInv { &HomReading::ALL } else { &[HomReading::Adjoint, HomReading::Preimage] };
    readings
        .iter()
        .map(|&reading| {
            let mut maps = 0;
            let mut counterexample = None;
            for fam in &family {
                for map in &fam.maps {
                    if !homs::in_scope(ml, &fam.target, map, reading) {
                        continue;
                    }
                    maps += 1;
                    if counterexample.is_none() {
                        if let Some(at) = hom_violation(ml, &fam.target, map, id, reading) {
                            counterexample =
                                Some(HomWitness { target: fam.target_name.clone(), map: map.clone(), reading, at });
                        }
                    }
                }
            }
            ReadingResult { reading, maps, counterexample }
        })
        .collect()
}

/// Re-evaluates a failure witness against the named clause (or
/// homomorphism) alone. `Ok(true)` means the failure reproduces.
pub fn recheck_witness(ml: &MultiplicativeLattice, id: TheoremId, witness: &Witness) -> Result<bool, VerifyError> {
    if let Some(h) = &witness.hom {
        let target = if h.target == "self" {
            ml.clone()
        } else {
            named_fixture(&h.target).ok_or_else(|| VerifyError::BadWitness(format!("unknown target {}", h.target)))?
        };
        let hom = crate::lattice::LatticeHom { source: ml.lattice(), target: target.lattice(), map: h.map.clone() };
        let report =
            crate::lattice::check_homomorphism(&hom, None).map_err(|e| VerifyError::BadWitness(e.to_string()))?;
        if !report.is_homomorphism() || !homs::in_scope(ml, &target, &h.map, h.reading) {
            return Ok(false);
        }
        return Ok(hom_violation(ml, &target, &h.map, id, h.reading).is_some());
    }
    let c = Ctx::new(ml);
    let clause = clauses(id)
        .into_iter()
        .find(|cl| cl.name == witness.clause)
        .ok_or_else(|| VerifyError::BadWitness(format!("{id} has no clause `{}`", witness.clause)))?;
    if clause.arity != witness.elements.len() || witness.elements.iter().any(|x| x.index() >= ml.size()) {
        return Err(VerifyError::BadWitness("witness does not fit the clause".into()));
    }
    Ok(!(clause.holds)(&c, &witness.elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for &id in TheoremId::ALL {
            assert_eq!(id.code().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!("NOPE".parse::<TheoremId>(), Err(VerifyError::UnknownTheoremId(_))));
        assert_eq!("z-meets".parse::<TheoremId>().unwrap(), TheoremId::ZMeets);
    }

    #[test]
    fn every_clause_name_is_unique_per_theorem() {
        for &id in TheoremId::ALL {
            let names: Vec<_> = clauses(id).iter().map(|c| c.name).collect();
            let mut d = names.clone();
            d.sort();
            d.dedup();
            assert_eq!(d.len(), names.len(), "{id}");
        }
    }

    #[test]
    fn d12_szi_checks_not_applicable() {
        let d12 = named_fixture("D12").unwrap();
        let reports = run_theorems(&d12, TheoremId::ALL);
        for r in &reports {
            assert_ne!(r.verdict, Verdict::Fail, "{r:?}");
        }
        let v = |id| reports.iter().find(|r| r.theorem == id).unwrap().verdict;
        assert_eq!(v(TheoremId::CzMultSzi), Verdict::NotApplicable);
        assert_eq!(v(TheoremId::EqPrime), Verdict::NotApplicable);
        assert_eq!(v(TheoremId::ZMeets), Verdict::Pass);
    }

    #[test]
    fn b4_regular() {
        let b4 = named_fixture("B4").unwrap();
        let r = run_theorems(&b4, &[TheoremId::RegularStrongZ]);
        assert_eq!(r[0].verdict, Verdict::Pass);
    }

    #[test]
    fn forged_witness_does_not_reproduce() {
        let c3 = named_fixture("C3").unwrap();
        let w = witness_of(&c3, "a, b ∈ Z ⇒ a∧b ∈ Z", vec![c3.top(), c3.bottom()]);
        assert!(!recheck_witness(&c3, TheoremId::ZMeets, &w).unwrap());
        let bad = witness_of(&c3, "no such clause", vec![]);
        assert!(recheck_witness(&c3, TheoremId::ZMeets, &bad).is_err());
    }
}
