//! Small multiplicative lattices, up to isomorphism.
//!
//! Lattices are generated with the bottom at index 0 and the top at index
//! `n-1`. The middle elements run over every naturally labelled partial
//! order (relations only from lower to higher index, which covers every
//! poset via a linear extension). A lattice's canonical code is the least
//! row-major encoding of its middle order over all relabellings.
//!
//! Multiplications are generated from products of join-irreducible pairs
//! (each product lies below the meet of its factors), extended to the whole
//! table by join-distributivity and filtered through the quantale
//! validator. Tables are then reduced modulo lattice automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::lattice::{ElementId, FiniteLattice};
use crate::quantale::{named_fixture, validate_quantale, MultTable, MultiplicativeLattice, FIXTURE_NAMES};

use super::VerifyError;

/// Largest size the corpus enumerator accepts unless raised.
pub const DEFAULT_CEILING: usize = 6;
/// Hard limit on the ceiling.
pub const MAX_CEILING: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultMode {
    /// Every valid multiplication.
    All,
    /// Only `· = ∧`, on distributive lattices.
    FrameOnly,
    /// Only the built-in fixtures.
    FixturesOnly,
}

impl std::str::FromStr for MultMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(MultMode::All),
            "frame-only" => Ok(MultMode::FrameOnly),
            "fixtures-only" => Ok(MultMode::FixturesOnly),
            _ => Err(format!("unknown multiplication mode `{s}` (all, frame-only, fixtures-only)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CorpusSpec {
    pub max_n: usize,
    pub mode: MultMode,
    pub iso_reduction: bool,
    pub ceiling: usize,
}

impl CorpusSpec {
    pub fn new(max_n: usize, mode: MultMode) -> Self {
        CorpusSpec { max_n, mode, iso_reduction: true, ceiling: DEFAULT_CEILING }
    }

    fn check(&self) -> Result<(), VerifyError> {
        if self.max_n < 1 {
            return Err(VerifyError::BadSpec("max_n must be at least 1".into()));
        }
        let ceiling = self.ceiling.min(MAX_CEILING);
        if self.max_n > ceiling && self.mode != MultMode::FixturesOnly {
            return Err(VerifyError::CeilingExceeded { requested: self.max_n, ceiling });
        }
        Ok(())
    }
}

/// Every structure described by `spec`, in a fixed order: by size, then by
/// canonical lattice code, then by canonical table.
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<impl Iterator<Item = MultiplicativeLattice>, VerifyError> {
    spec.check()?;
    let mut out = Vec::new();
    if spec.mode == MultMode::FixturesOnly {
        for name in FIXTURE_NAMES {
            let ml = named_fixture(name).expect("built-in fixture");
            if ml.size() <= spec.max_n {
                out.push(ml);
            }
        }
        return Ok(out.into_iter());
    }
    for n in 1..=spec.max_n {
        for (li, lat) in lattices_of_size(n, spec.iso_reduction).into_iter().enumerate() {
            let tables = match spec.mode {
                MultMode::FrameOnly => {
                    let meet = MultTable::meet_of(&lat);
                    validate_quantale(&lat, &meet).map(|_| meet).into_iter().collect()
                }
                _ => multiplications(&lat, spec.iso_reduction),
            };
            for (mi, t) in tables.into_iter().enumerate() {
                let name = format!("n{n}.L{li}.M{mi}");
                let ml = MultiplicativeLattice::new(name, lat.clone(), t).expect("enumerated tables are validated");
                out.push(ml);
            }
        }
    }
    Ok(out.into_iter())
}

/// Every lattice with at most `max_n` elements followed by the fixtures:
/// the standard corpus for exhaustive checks.
pub fn standard_corpus(max_n: usize) -> Result<Vec<MultiplicativeLattice>, VerifyError> {
    let mut v: Vec<_> = enumerate_corpus(&CorpusSpec::new(max_n, MultMode::All))?.collect();
    v.extend(FIXTURE_NAMES.iter().map(|n| named_fixture(n).expect("built-in fixture")));
    Ok(v)
}

fn middle_labels(k: usize) -> impl Iterator<Item = String> {
    (0..k).map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") })
}

fn labels_for(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain(middle_labels(n - 2))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

/// Row-major code of a strict order on `k` middle elements under `perm`
/// (new position `i` holds old element `perm[i]`).
fn code(rel: &[Vec<bool>], perm: &[usize]) -> u64 {
    let k = perm.len();
    let mut c = 0u64;
    for i in 0..k {
        for j in 0..k {
            c = c << 1 | rel[perm[i]][perm[j]] as u64;
        }
    }
    c
}

fn canonical_perm(rel: &[Vec<bool>]) -> (u64, Vec<usize>) {
    let k = rel.len();
    (0..k).permutations(k).map(|p| (code(rel, &p), p)).min().unwrap_or((0, Vec::new()))
}

fn lattice_from_middle(rel: &[Vec<bool>]) -> Option<FiniteLattice> {
    let k = rel.len();
    let n = k + 2;
    let mut pairs = Vec::new();
    for (i, row) in rel.iter().enumerate() {
        pairs.push((0, i + 1));
        pairs.push((i + 1, n - 1));
        for (j, &below) in row.iter().enumerate() {
            if below {
                pairs.push((i + 1, j + 1));
            }
        }
    }
    pairs.push((0, n - 1));
    FiniteLattice::from_order(n, &pairs, Some(labels_for(n))).ok()
}

/// Transitively closed strict orders on `k` points with relations only from
/// lower to higher index.
fn natural_posets(k: usize) -> Vec<Vec<Vec<bool>>> {
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in slots.iter().enumerate() {
            rel[i][j] = mask >> b & 1 == 1;
        }
        let closed = (0..k).all(|i| (0..k).all(|j| !rel[i][j] || (0..k).all(|l| !rel[j][l] || rel[i][l])));
        if closed {
            out.push(rel);
        }
    }
    out
}

/// All lattices with exactly `n` elements, one per isomorphism class when
/// `reduce` is set.
pub fn lattices_of_size(n: usize, reduce: bool) -> Vec<FiniteLattice> {
    match n {
        0 => return Vec::new(),
        1 => return vec![FiniteLattice::from_order(1, &[], Some(labels_for(1))).expect("one point")],
        2 => return vec![FiniteLattice::from_order(2, &[(0, 1)], Some(labels_for(2))).expect("two chain")],
        _ => {}
    }
    let k = n - 2;
    let mut seen: BTreeMap<u64, FiniteLattice> = BTreeMap::new();
    let mut plain = Vec::new();
    for rel in natural_posets(k) {
        let Some(lat) = lattice_from_middle(&rel) else { continue };
        if !reduce {
            plain.push(lat);
            continue;
        }
        let (c, perm) = canonical_perm(&rel);
        seen.entry(c).or_insert_with(|| {
            let canon: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| rel[perm[i]][perm[j]]).collect()).collect();
            lattice_from_middle(&canon).expect("relabelled lattice")
        });
    }
    if reduce {
        seen.into_values().collect()
    } else {
        plain
    }
}

/// Order automorphisms of `lat`, as permutations of the whole universe.
pub fn automorphisms(lat: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = lat.size();
    let e = |i: usize| ElementId::new(i);
    let mut out = Vec::new();
    for p in (0..n).permutations(n) {
        let ok = (0..n).all(|i| (0..n).all(|j| lat.leq(e(i), e(j)) == lat.leq(e(p[i]), e(p[j]))));
        if ok {
            out.push(p);
        }
    }
    out
}

fn permuted_table(t: &MultTable, p: &[usize]) -> Vec<u8> {
    // the table of the structure transported along p: (pa)(pb) = p(ab)
    let n = p.len();
    let mut inv = vec![0usize; n];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = t.get(ElementId::new(a), ElementId::new(b)).index();
            out[p[a] * n + p[b]] = p[ab] as u8;
        }
    }
    let _ = inv;
    out
}

/// Every valid multiplication on `lat`; with `reduce`, one per orbit under
/// the automorphism group, ordered by canonical table.
pub fn multiplications(lat: &FiniteLattice, reduce: bool) -> Vec<MultTable> {
    let tables = multiplications_raw(lat);
    if !reduce {
        return tables;
    }
    let autos = automorphisms(lat);
    let n = lat.size();
    let mut canon: BTreeSet<Vec<u8>> = BTreeSet::new();
    for t in &tables {
        let best = autos.iter().map(|p| permuted_table(t, p)).min().expect("identity automorphism");
        canon.insert(best);
    }
    canon
        .into_iter()
        .map(|v| MultTable::new(n, v.into_iter().map(ElementId).collect()).expect("square table"))
        .collect()
}

fn multiplications_raw(lat: &FiniteLattice) -> Vec<MultTable> {
    let n = lat.size();
    if n == 1 {
        return vec![MultTable::meet_of(lat)];
    }
    let ji = lat.join_irreducibles().to_vec();
    let pairs: Vec<(usize, usize)> = (0..ji.len()).flat_map(|i| (i..ji.len()).map(move |j| (i, j))).collect();
    let candidates: Vec<Vec<ElementId>> = pairs
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (ji[i], ji[j]);
            if a == lat.top() {
                vec![b]
            } else if b == lat.top() {
                vec![a]
            } else {
                lat.down_set(lat.meet(a, b)).to_vec()
            }
        })
        .collect();
    // below[x] = join-irreducibles under x, as positions in `ji`
    let below: Vec<Vec<usize>> =
        lat.elements().map(|x| (0..ji.len()).filter(|&i| lat.leq(ji[i], x)).collect()).collect();

    let mut out = Vec::new();
    let mut assign = vec![ElementId(0); pairs.len()];
    let mut pair_index = vec![vec![0usize; ji.len()]; ji.len()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i][j] = k;
        pair_index[j][i] = k;
    }
    search(lat, &ji, &pairs, &candidates, &pair_index, &below, 0, &mut assign, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    lat: &FiniteLattice,
    ji: &[ElementId],
    pairs: &[(usize, usize)],
    candidates: &[Vec<ElementId>],
    pair_index: &[Vec<usize>],
    below: &[Vec<usize>],
    k: usize,
    assign: &mut [ElementId],
    out: &mut Vec<MultTable>,
) {
    if k == pairs.len() {
        let t = MultTable::from_fn(lat.size(), |x, y| {
            let mut acc = lat.bottom();
            for &i in &below[x.index()] {
                for &j in &below[y.index()] {
                    acc = lat.join(acc, assign[pair_index[i][j]]);
                }
            }
            acc
        });
        if validate_quantale(lat, &t).is_ok() {
            out.push(t);
        }
        return;
    }
    let (i, j) = pairs[k];
    'cand: for &v in &candidates[k] {
        // monotone in each factor on already assigned pairs
        for (k2, &(i2, j2)) in pairs[..k].iter().enumerate() {
            let w = assign[k2];
            let le = |a: usize, b: usize| lat.leq(ji[a], ji[b]);
            let below_it = (le(i2, i) && le(j2, j)) || (le(i2, j) && le(j2, i));
            let above_it = (le(i, i2) && le(j, j2)) || (le(j, i2) && le(i, j2));
            if below_it && !lat.leq(w, v) || above_it && !lat.leq(v, w) {
                continue 'cand;
            }
        }
        assign[k] = v;
        search(lat, ji, pairs, candidates, pair_index, below, k + 1, assign, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_up_to_six() {
        let counts: Vec<usize> = (1..=6).map(|n| lattices_of_size(n, true).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn two_chain_has_one_multiplication() {
        let c = CorpusSpec::new(2, MultMode::All);
        let v: Vec<_> = enumerate_corpus(&c).unwrap().collect();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].size(), 2);
    }

    #[test]
    fn every_lattice_admits_meet() {
        for n in 1..=5 {
            for lat in lattices_of_size(n, true) {
                let ts = multiplications(&lat, true);
                let meet = MultTable::meet_of(&lat);
                // M3-like lattices admit nothing; distributive ones admit ∧
                let distributive = lat.elements().all(|a| {
                    lat.elements().all(|b| {
                        lat.elements().all(|c| lat.meet(a, lat.join(b, c)) == lat.join(lat.meet(a, b), lat.meet(a, c)))
                    })
                });
                if distributive {
                    let autos = automorphisms(&lat);
                    let canon = autos.iter().map(|p| permuted_table(&meet, p)).min().unwrap();
                    assert!(ts.iter().any(|t| t.entries().iter().map(|e| e.0).collect::<Vec<_>>() == canon));
                }
            }
        }
    }

    #[test]
    fn ceiling_enforced() {
        let mut c = CorpusSpec::new(7, MultMode::All);
        assert!(matches!(enumerate_corpus(&c), Err(VerifyError::CeilingExceeded { .. })));
        c.max_n = 0;
        assert!(matches!(enumerate_corpus(&c), Err(VerifyError::BadSpec(_))));
    }

    #[test]
    fn four_chain_multiplications() {
        // the 4-chain carries ∧, the ℤ/8 table, and others
        let lat = &lattices_of_size(4, true)[0];
        let chain = lat.is_chain(lat.universe());
        let lat = if chain { lat.clone() } else { lattices_of_size(4, true)[1].clone() };
        let ts = multiplications(&lat, true);
        assert!(ts.len() >= 2);
    }
}
