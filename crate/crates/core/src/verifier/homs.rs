//! Lattice homomorphisms between small structures and the two statements
//! about pulling z-elements back along them.
//!
//! `φ⁻¹(y)` is read in one of three ways:
//!
//! * [`HomReading::Adjoint`]: the element `φ_*(y) = ⋁{x | φ(x) ⩽ y}`.
//! * [`HomReading::Preimage`]: the set `{x | φ(x) = y}`, with
//!   "`φ⁻¹(y)` is a z-element" meaning every member is one.
//! * [`HomReading::PreimagePerJ`]: as `Preimage`, but the equivalence is
//!   asked separately for each `j ∈ Z(L′)`.

use serde::Serialize;

use crate::lattice::{ElementId, ElementSet, FiniteLattice};
use crate::quantale::{named_fixture, MultiplicativeLattice};

/// Homomorphisms per target kept by [`hom_family`].
pub const HOMS_PER_TARGET: usize = 4096;
/// Sources up to this size also get their endomorphisms checked.
pub const ENDO_MAX: usize = 7;
/// Targets besides the source itself.
pub const HOM_TARGETS: [&str; 5] = ["chain:2", "C3", "B4", "Z8", "D12"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomReading {
    Adjoint,
    Preimage,
    PreimagePerJ,
}

impl HomReading {
    pub const ALL: [HomReading; 3] = [HomReading::Adjoint, HomReading::Preimage, HomReading::PreimagePerJ];

    pub fn name(self) -> &'static str {
        match self {
            HomReading::Adjoint => "adjoint",
            HomReading::Preimage => "preimage",
            HomReading::PreimagePerJ => "preimage-per-j",
        }
    }
}

/// Maps `src → tgt` preserving order, binary joins and binary meets, in
/// lexicographic order of the image vector, at most `limit` of them.
pub fn enumerate_homs(src: &FiniteLattice, tgt: &FiniteLattice, limit: usize) -> Vec<Vec<ElementId>> {
    let n = src.size();
    let mut out = Vec::new();
    let mut map = vec![ElementId(0); n];
    extend(src, tgt, 0, &mut map, limit, &mut out);
    out
}

fn extend(
    src: &FiniteLattice,
    tgt: &FiniteLattice,
    k: usize,
    map: &mut [ElementId],
    limit: usize,
    out: &mut Vec<Vec<ElementId>>,
) {
    if out.len() >= limit {
        return;
    }
    if k == map.len() {
        out.push(map.to_vec());
        return;
    }
    let x = ElementId::new(k);
    for y in tgt.elements() {
        map[k] = y;
        let consistent = (0..=k).all(|i| {
            let a = ElementId::new(i);
            (0..=k).all(|j| {
                let b = ElementId::new(j);
                if a != x && b != x && src.join(a, b) != x && src.meet(a, b) != x {
                    return true;
                }
                let (jn, mt) = (src.join(a, b), src.meet(a, b));
                (!src.leq(a, b) || tgt.leq(map[i], map[j]))
                    && (jn.index() > k || map[jn.index()] == tgt.join(map[i], map[j]))
                    && (mt.index() > k || map[mt.index()] == tgt.meet(map[i], map[j]))
            })
        });
        if consistent {
            extend(src, tgt, k + 1, map, limit, out);
        }
    }
}

/// A target structure with the homomorphisms into it.
pub struct HomFamily {
    pub target: MultiplicativeLattice,
    /// Name to rebuild the target with: a fixture name, or `self`.
    pub target_name: String,
    pub maps: Vec<Vec<ElementId>>,
}

/// Homomorphisms from `ml` into each of [`HOM_TARGETS`] and, when small
/// enough, into `ml` itself.
pub fn hom_family(ml: &MultiplicativeLattice) -> Vec<HomFamily> {
    let mut out = Vec::new();
    if ml.size() <= ENDO_MAX {
        out.push(HomFamily {
            target: ml.clone(),
            target_name: "self".into(),
            maps: enumerate_homs(ml.lattice(), ml.lattice(), HOMS_PER_TARGET),
        });
    }
    for name in HOM_TARGETS {
        let target = named_fixture(name).expect("built-in fixture");
        let maps = enumerate_homs(ml.lattice(), target.lattice(), HOMS_PER_TARGET);
        out.push(HomFamily { target, target_name: name.into(), maps });
    }
    out
}

/// `φ_*(y) = ⋁{x | φ(x) ⩽ y}`.
pub fn adjoint(src: &MultiplicativeLattice, tgt: &MultiplicativeLattice, map: &[ElementId], y: ElementId) -> ElementId {
    let below: ElementSet = src.elements().filter(|x| tgt.leq(map[x.index()], y)).collect();
    src.lattice().join_all(below)
}

fn preimage(src: &MultiplicativeLattice, map: &[ElementId], y: ElementId) -> ElementSet {
    src.elements().filter(|x| map[x.index()] == y).collect()
}

/// Whether the pulled-back value at `y` counts as a z-element of `src`.
fn pulls_back_z(
    src: &MultiplicativeLattice,
    tgt: &MultiplicativeLattice,
    map: &[ElementId],
    y: ElementId,
    reading: HomReading,
) -> bool {
    match reading {
        HomReading::Adjoint => src.is_z(adjoint(src, tgt, map, y)),
        _ => preimage(src, map, y).is_subset(src.z_elements()),
    }
}

/// Whether the map is in scope for `reading`: the adjoint reading needs
/// `φ(0) = 0′`.
pub fn in_scope(
    src: &MultiplicativeLattice,
    tgt: &MultiplicativeLattice,
    map: &[ElementId],
    reading: HomReading,
) -> bool {
    reading != HomReading::Adjoint || map[src.bottom().index()] == tgt.bottom()
}

/// `φ⁻¹(j) ∈ Z(L)` for all `j ∈ Z(L′)` iff `φ⁻¹(m) ∈ Z(L)` for all
/// `m ∈ Max(L′)`. Returns the offending `j` (the target top when the whole
/// statement fails) or `None` when it holds.
pub fn hom_inv_violation(
    src: &MultiplicativeLattice,
    tgt: &MultiplicativeLattice,
    map: &[ElementId],
    reading: HomReading,
) -> Option<ElementId> {
    let on_max = tgt.maximal_set().iter().all(|m| pulls_back_z(src, tgt, map, m, reading));
    match reading {
        HomReading::PreimagePerJ => {
            tgt.z_elements().iter().find(|&j| pulls_back_z(src, tgt, map, j, reading) != on_max)
        }
        _ => {
            let on_z = tgt.z_elements().iter().all(|j| pulls_back_z(src, tgt, map, j, reading));
            (on_z != on_max).then_some(tgt.top())
        }
    }
}

/// For families `{aᵢ} ⊆ L′` of size one or two, and `L′` itself, with
/// `⋀aᵢ = 0′` and every `φ⁻¹(aᵢ) ∈ Z(L)`, also `φ⁻¹(0′) ∈ Z(L)`. Returns the
/// first failing family.
pub fn hom_kernel_violation(
    src: &MultiplicativeLattice,
    tgt: &MultiplicativeLattice,
    map: &[ElementId],
    reading: HomReading,
) -> Option<Vec<ElementId>> {
    let kernel_z = pulls_back_z(src, tgt, map, tgt.bottom(), reading);
    if kernel_z {
        return None;
    }
    let ok = |y: ElementId| pulls_back_z(src, tgt, map, y, reading);
    let mut families: Vec<Vec<ElementId>> = Vec::new();
    for a in tgt.elements() {
        families.push(vec![a]);
        for b in tgt.elements().filter(|&b| b > a) {
            families.push(vec![a, b]);
        }
    }
    families.push(tgt.elements().collect());
    families.into_iter().find(|f| {
        let meet = tgt.lattice().meet_all(f.iter().copied().collect());
        meet == tgt.bottom() && f.iter().all(|&a| ok(a))
    })
}
