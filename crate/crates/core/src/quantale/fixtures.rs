//! Built-in structures used by tests, docs and the `fixtures` command.

use crate::lattice::{ElementId, FiniteLattice, MAX_ELEMENTS};

use super::{MultTable, MultiplicativeLattice, QuantaleError};

/// Names accepted by [`named_fixture`] besides the parametric forms
/// `chain:N`, `boolean:K` and `zn:N`.
pub const FIXTURE_NAMES: [&str; 4] = ["C3", "B4", "Z8", "D12"];

#[derive(Clone, Debug)]
pub enum FixtureFamily {
    /// `n`-element chain with `· = ∧`.
    ChainFrame(usize),
    /// Boolean lattice on `k` atoms with `· = ∧`.
    BooleanFrame(usize),
    /// Ideals of the integers modulo `n`.
    ZnIdeal(u64),
    /// Any lattice with `· = ∧`.
    FrameOf(FiniteLattice),
}

pub fn build_fixture(family: FixtureFamily) -> Result<MultiplicativeLattice, QuantaleError> {
    match family {
        FixtureFamily::ChainFrame(n) => chain_frame(n),
        FixtureFamily::BooleanFrame(k) => boolean_frame(k),
        FixtureFamily::ZnIdeal(n) => zn_ideal(n),
        FixtureFamily::FrameOf(l) => MultiplicativeLattice::frame_of("frame", l),
    }
}

/// `C3`, `B4`, `Z8`, `D12`, or `chain:N`, `boolean:K`, `zn:N`.
pub fn named_fixture(name: &str) -> Option<MultiplicativeLattice> {
    let family = match name {
        "C3" => FixtureFamily::ChainFrame(3),
        "B4" => FixtureFamily::BooleanFrame(2),
        "Z8" => FixtureFamily::ZnIdeal(8),
        "D12" => FixtureFamily::ZnIdeal(12),
        _ => {
            let (kind, arg) = name.split_once(':')?;
            let arg: u64 = arg.parse().ok()?;
            match kind {
                "chain" => FixtureFamily::ChainFrame(arg as usize),
                "boolean" => FixtureFamily::BooleanFrame(arg as usize),
                "zn" => FixtureFamily::ZnIdeal(arg),
                _ => return None,
            }
        }
    };
    build_fixture(family).ok().map(|ml| ml.with_name(name))
}

fn chain_frame(n: usize) -> Result<MultiplicativeLattice, QuantaleError> {
    if n < 1 {
        return Err(QuantaleError::BadParam(format!("chain_frame needs n ⩾ 1, got {n}")));
    }
    let labels: Vec<String> = match n {
        1 => vec!["0".into()],
        2 => vec!["0".into(), "1".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_string())
            .chain((1..n - 1).map(|i| format!("c{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    };
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let lat = FiniteLattice::from_order(n, &pairs, Some(labels))?;
    MultiplicativeLattice::frame_of(format!("chain_frame({n})"), lat)
}

fn boolean_frame(k: usize) -> Result<MultiplicativeLattice, QuantaleError> {
    if k < 1 {
        return Err(QuantaleError::BadParam(format!("boolean_frame needs k ⩾ 1, got {k}")));
    }
    if 1usize << k.min(63) > MAX_ELEMENTS || k > 6 {
        return Err(QuantaleError::BadParam(format!("boolean_frame({k}) has more than {MAX_ELEMENTS} elements")));
    }
    let n = 1usize << k;
    let atom = |i: usize| (b'a' + i as u8) as char;
    let labels = (0..n)
        .map(|s| match s {
            0 => "0".to_string(),
            _ if s == n - 1 => "1".to_string(),
            _ => (0..k).filter(|i| s >> i & 1 == 1).map(atom).collect(),
        })
        .collect();
    let mut pairs = Vec::new();
    for s in 0..n {
        for i in 0..k {
            if s >> i & 1 == 0 {
                pairs.push((s, s | 1 << i));
            }
        }
    }
    let lat = FiniteLattice::from_order(n, &pairs, Some(labels))?;
    MultiplicativeLattice::frame_of(format!("boolean_frame({k})"), lat)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ideals `(d)` of `ℤ/n` for divisors `d` of `n`, ordered by increasing `d`;
/// `(a) ⩽ (b)` iff `b | a` and `(a)(b) = (gcd(ab, n))`.
fn zn_ideal(n: u64) -> Result<MultiplicativeLattice, QuantaleError> {
    if n < 1 {
        return Err(QuantaleError::BadParam(format!("zn_ideal needs n ⩾ 1, got {n}")));
    }
    let divisors: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    let size = divisors.len();
    let mut pairs = Vec::new();
    for (i, &a) in divisors.iter().enumerate() {
        for (j, &b) in divisors.iter().enumerate() {
            if i != j && a % b == 0 {
                pairs.push((i, j));
            }
        }
    }
    let labels = divisors.iter().map(|d| format!("({d})")).collect();
    let lat = FiniteLattice::from_order(size, &pairs, Some(labels))?;
    let index_of = |d: u64| divisors.iter().position(|&x| x == d).expect("gcd with n divides n");
    let mult = MultTable::from_fn(size, |a, b| {
        let (da, db) = (divisors[a.index()] as u128, divisors[b.index()] as u128);
        ElementId::new(index_of(gcd((da * db % n as u128) as u64, n)))
    });
    MultiplicativeLattice::new(format!("zn_ideal({n})"), lat, mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_fixtures_build() {
        for name in FIXTURE_NAMES {
            let ml = named_fixture(name).unwrap();
            assert_eq!(ml.name(), name);
        }
        assert_eq!(named_fixture("C3").unwrap().size(), 3);
        assert_eq!(named_fixture("B4").unwrap().size(), 4);
        assert_eq!(named_fixture("Z8").unwrap().size(), 4);
        assert_eq!(named_fixture("D12").unwrap().size(), 6);
        assert_eq!(named_fixture("chain:5").unwrap().size(), 5);
        assert_eq!(named_fixture("boolean:3").unwrap().size(), 8);
        assert_eq!(named_fixture("zn:30").unwrap().size(), 8);
        assert!(named_fixture("nope").is_none());
    }

    #[test]
    fn bad_params() {
        assert!(matches!(build_fixture(FixtureFamily::ChainFrame(0)), Err(QuantaleError::BadParam(_))));
        assert!(matches!(build_fixture(FixtureFamily::BooleanFrame(0)), Err(QuantaleError::BadParam(_))));
        assert!(matches!(build_fixture(FixtureFamily::BooleanFrame(7)), Err(QuantaleError::BadParam(_))));
        assert!(matches!(build_fixture(FixtureFamily::ZnIdeal(0)), Err(QuantaleError::BadParam(_))));
    }

    #[test]
    fn z8_is_a_four_chain() {
        let z8 = named_fixture("Z8").unwrap();
        let l = z8.lattice();
        let labels: Vec<_> = l.labels().to_vec();
        assert_eq!(labels, ["(1)", "(2)", "(4)", "(8)"]);
        assert_eq!(l.label(l.top()), "(1)");
        assert_eq!(l.label(l.bottom()), "(8)");
        assert!(l.is_chain(l.universe()));
        let (m, q) = (z8.element("(2)").unwrap(), z8.element("(4)").unwrap());
        assert_eq!(z8.multiply(m, q), z8.bottom());
        assert_eq!(z8.multiply(q, q), z8.bottom());
    }

    #[test]
    fn frame_of_is_idempotent() {
        let d = named_fixture("D12").unwrap();
        let f = build_fixture(FixtureFamily::FrameOf(d.lattice().clone())).unwrap();
        for x in f.elements() {
            assert_eq!(f.multiply(x, x), x);
        }
    }
}
