//! Bounded counterexample search over a corpus stream.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{ElementId, ElementSet};
use crate::quantale::MultiplicativeLattice;

use super::enumerate::{enumerate_corpus, CorpusSpec};
use super::homs::{self, HomReading};
use super::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// `a, b ∈ Z(L)` with `ab ∉ Z(L)`.
    ZProductNotClosed,
    /// `a, b ∈ Z(L)` with `a ∨ b ∉ Z(L)`.
    ZJoinNotClosed,
    /// A prime outside `Z(L)`.
    PrimeNotZ,
    /// A non-szi structure where z-prime (z-semiprime, z-primary) differs
    /// from z-element and prime (semiprime, primary).
    ZPrimeNotPrimeNonSzi,
    /// `0 ∈ Z(L)` while `j_L ≠ 0`.
    ZeroZNotSemisimple,
    /// `cz(a) ≠ m_a`.
    CzNeqMa,
    /// An element that is a meet of maximal elements exactly when it is
    /// not a z-element; meets of subsets of `Max(L)` are enumerated
    /// directly.
    StrongZNeqZ,
    /// A homomorphism into a fixture (or the structure itself) violating
    /// the inverse-image statement with preimages read as sets.
    HomPreimageSet,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::ZProductNotClosed,
        Property::ZJoinNotClosed,
        Property::PrimeNotZ,
        Property::ZPrimeNotPrimeNonSzi,
        Property::ZeroZNotSemisimple,
        Property::CzNeqMa,
        Property::StrongZNeqZ,
        Property::HomPreimageSet,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Property::ZProductNotClosed => "ZPRODUCT-NOT-CLOSED",
            Property::ZJoinNotClosed => "ZJOIN-NOT-CLOSED",
            Property::PrimeNotZ => "PRIME-NOT-Z",
            Property::ZPrimeNotPrimeNonSzi => "ZPRIME-NOT-PRIME-NONSZI",
            Property::ZeroZNotSemisimple => "ZERO-Z-NOT-SEMISIMPLE",
            Property::CzNeqMa => "CZ-NEQ-MA",
            Property::StrongZNeqZ => "STRONGZ-NEQ-Z",
            Property::HomPreimageSet => "HOM-PREIMAGE-SET",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl FromStr for Property {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let up = s.to_ascii_uppercase();
        Property::ALL.into_iter().find(|p| p.code() == up).ok_or_else(|| VerifyError::UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchWitness {
    pub structure: String,
    pub elements: Vec<ElementId>,
    pub labels: Vec<String>,
    pub detail: String,
    #[serde(skip)]
    pub instance: MultiplicativeLattice,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub property: Property,
    pub spec: CorpusSpec,
    /// Structures in the stream up to and including the witness.
    pub examined: usize,
    pub witness: Option<SearchWitness>,
}

impl SearchOutcome {
    pub fn exhausted(&self) -> bool {
        self.witness.is_none()
    }
}

/// First witness of `property` in the stream of `spec`, or exhausted.
pub fn search_counterexample(property: Property, spec: &CorpusSpec) -> Result<SearchOutcome, VerifyError> {
    let corpus: Vec<MultiplicativeLattice> = enumerate_corpus(spec)?.collect();
    let hit = corpus.par_iter().enumerate().find_map_first(|(i, ml)| find_in(property, ml).map(|w| (i, w)));
    Ok(match hit {
        Some((i, (elements, detail))) => {
            let ml = &corpus[i];
            SearchOutcome {
                property,
                spec: *spec,
                examined: i + 1,
                witness: Some(SearchWitness {
                    structure: ml.name().to_string(),
                    labels: elements.iter().map(|&x| ml.label(x).to_string()).collect(),
                    elements,
                    detail,
                    instance: ml.clone(),
                }),
            }
        }
        None => SearchOutcome { property, spec: *spec, examined: corpus.len(), witness: None },
    })
}

/// The first witness of `property` inside one structure.
pub fn find_in(property: Property, ml: &MultiplicativeLattice) -> Option<(Vec<ElementId>, String)> {
    let z = ml.z_elements();
    let pairs = || z.iter().flat_map(move |a| z.iter().map(move |b| (a, b)));
    let l = |x: ElementId| ml.label(x).to_string();
    match property {
        Property::ZProductNotClosed => pairs()
            .find(|&(a, b)| !z.contains(ml.multiply(a, b)))
            .map(|(a, b)| (vec![a, b], format!("{}·{} = {} ∉ Z(L)", l(a), l(b), l(ml.multiply(a, b))))),
        Property::ZJoinNotClosed => pairs()
            .find(|&(a, b)| !z.contains(ml.join(a, b)))
            .map(|(a, b)| (vec![a, b], format!("{} ∨ {} = {} ∉ Z(L)", l(a), l(b), l(ml.join(a, b))))),
        Property::PrimeNotZ => ml
            .primes()
            .iter()
            .find(|&p| !z.contains(p))
            .map(|p| (vec![p], format!("{} is prime and not a z-element", l(p)))),
        Property::ZPrimeNotPrimeNonSzi => {
            if ml.z_predicates().szi {
                return None;
            }
            ml.elements().find_map(|x| {
                let zx = z.contains(x);
                let checks = [
                    ("z-prime", ml.is_z_prime(x), ml.is_prime(x)),
                    ("z-semiprime", ml.is_z_semiprime(x), ml.is_semiprime(x)),
                    ("z-primary", ml.is_z_primary(x), ml.is_primary(x)),
                ];
                checks.into_iter().find(|&(_, zs, s)| zs != (zx && s)).map(|(name, zs, _)| {
                    let how = if zs { "holds" } else { "fails" };
                    (vec![x], format!("{name} {how} at {} but z-element and {} disagree", l(x), &name[2..]))
                })
            })
        }
        Property::ZeroZNotSemisimple => {
            let jac = ml.lattice().meet_all(ml.maximal_set());
            (z.contains(ml.bottom()) && jac != ml.bottom())
                .then(|| (vec![ml.bottom()], format!("0 ∈ Z(L) and j_L = {}", l(jac))))
        }
        Property::CzNeqMa => ml
            .elements()
            .find(|&a| ml.z_closure(a) != ml.m_of(a))
            .map(|a| (vec![a], format!("cz({}) = {} ≠ m = {}", l(a), l(ml.z_closure(a)), l(ml.m_of(a))))),
        Property::StrongZNeqZ => {
            let strong = meets_of_maximal_subsets(ml);
            ml.elements().find(|&x| strong.contains(x) != z.contains(x)).map(|x| {
                let (s, zz) = (strong.contains(x), z.contains(x));
                (vec![x], format!("{}: meet of maximal elements {s}, z-element {zz}", l(x)))
            })
        }
        Property::HomPreimageSet => homs::hom_family(ml).into_iter().find_map(|fam| {
            fam.maps.iter().find_map(|map| {
                homs::hom_inv_violation(ml, &fam.target, map, HomReading::Preimage).map(|_| {
                    let image: Vec<&str> = map.iter().map(|&y| fam.target.label(y)).collect();
                    (Vec::new(), format!("into {}: {}", fam.target_name, image.join(" ")))
                })
            })
        }),
    }
}

fn meets_of_maximal_subsets(ml: &MultiplicativeLattice) -> ElementSet {
    let maximal = ml.maximal_set().to_vec();
    let lat = ml.lattice();
    if maximal.len() > 20 {
        // more subsets than we care to list; closing under binary meets is equivalent
        let mut s: ElementSet = maximal.iter().copied().collect::<ElementSet>().with(ml.top());
        loop {
            let next = s.iter().fold(s, |acc, a| s.iter().fold(acc, |acc, b| acc.with(lat.meet(a, b))));
            if next == s {
                return s;
            }
            s = next;
        }
    }
    (0u64..1 << maximal.len())
        .map(|mask| {
            let sub: ElementSet =
                maximal.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &m)| m).collect();
            lat.meet_all(sub)
        })
        .collect()
}
