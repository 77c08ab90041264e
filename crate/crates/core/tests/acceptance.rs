//! One line per acceptance criterion; exits non-zero if any fails. Built
//! without the libtest harness so the lines always reach the output.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use zlat::mlat::{parse_mlat, MlatDocument};
use zlat::quantale::{named_fixture, FIXTURE_NAMES};
use zlat::verifier::{
    lattices_of_size, run_theorems, search_counterexample, standard_corpus, CorpusSpec, MultMode, Property, TheoremId,
    Verdict, COVERAGE,
};
use zlat::{ElementId, MultiplicativeLattice};

/// Corpus bound for the definition and enumeration checks.
const CORPUS_MAX_N: usize = 5;
/// Corpus bound for the theorem, product-closure, pz and quotient checks.
const EXTENDED_MAX_N: usize = 6;
const DEF_EQUIV_BUDGET: Duration = Duration::from_secs(300);
const FIXTURE_SEARCH_BUDGET: Duration = Duration::from_secs(1);
const LATTICE_COUNTS: [usize; 5] = [1, 1, 1, 2, 5];

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn corpus(max_n: usize) -> Vec<MultiplicativeLattice> {
    standard_corpus(max_n).expect("corpus within ceiling")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels(ml: &MultiplicativeLattice, s: zlat::ElementSet) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|x| ml.label(x).to_string()).collect();
    v.sort();
    v
}

fn definition_equivalence() -> Outcome {
    let start = Instant::now();
    let structures = corpus(CORPUS_MAX_N);
    let mut elements = 0;
    for ml in &structures {
        let oracle = common::raw_of(ml);
        for x in ml.elements() {
            elements += 1;
            let pair = ml.is_z_by_pairs(x, false);
            let by_m = ml.m_of(x) == x;
            let by_cz = ml.z_closure(x) == x;
            let literal = ml.size() == 1 || oracle.is_z(x.index());
            ensure(pair == by_m && by_m == by_cz && by_cz == literal, || {
                format!("{}: definitions disagree at {}", ml.name(), ml.label(x))
            })?;
        }
    }
    let took = start.elapsed();
    ensure(took < DEF_EQUIV_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{} structures, {elements} elements, 0 disagreements in {took:.2?}", structures.len()))
}

fn golden_values() -> Outcome {
    let d12 = named_fixture("D12").unwrap();
    let o = common::divisor_structure(12);
    ensure(labels(&d12, d12.z_elements()) == ["(1)", "(2)", "(3)", "(6)"], || "Z(D12)".into())?;
    ensure(o.labels_of(&o.z_set()) == ["(1)", "(2)", "(3)", "(6)"], || "oracle Z(D12)".into())?;
    let cz0 = d12.z_closure(d12.bottom());
    ensure(d12.label(cz0) == "(6)" && Ok(cz0) == d12.jacobson_radical(), || "cz(0) in D12".into())?;
    ensure(o.labels[o.cz(o.bottom())] == "(6)" && o.cz(o.bottom()) == o.jacobson(), || "oracle cz(0)".into())?;
    let min = d12.minimal_z_primes().map_err(|e| e.to_string())?;
    ensure(labels(&d12, min) == ["(2)", "(3)"], || "minimal z-primes of D12".into())?;
    ensure(o.labels_of(&o.minimal_z_primes()) == ["(2)", "(3)"], || "oracle minimal z-primes".into())?;

    // Z8 as (1) > (2) > (4) > (8): 1 = (1), m = (2).
    let z8 = named_fixture("Z8").unwrap();
    let o8 = common::divisor_structure(8);
    ensure(labels(&z8, z8.z_elements()) == ["(1)", "(2)"], || "Z(Z8)".into())?;
    ensure(o8.labels_of(&o8.z_set()) == ["(1)", "(2)"], || "oracle Z(Z8)".into())?;
    let b4 = named_fixture("B4").unwrap();
    ensure(b4.z_elements().len() == 4 && common::square_frame().z_set().len() == 4, || "Z(B4)".into())?;
    let c3 = named_fixture("C3").unwrap();
    let oc3 = common::chain_frame(&["0", "m", "1"]);
    ensure(labels(&c3, c3.z_elements()) == ["1", "m"], || "Z(C3)".into())?;
    ensure(oc3.labels_of(&oc3.z_set()) == ["1", "m"], || "oracle Z(C3)".into())?;
    Ok("D12, Z8, B4, C3 match library and oracle".into())
}

/// Results that must each have a covering check.
const REQUIRED_RESULTS: &[&str] = &[
    "multiplication basics lemma",
    "maximal elements are prime",
    "existence of maximal elements",
    "z-element properties lemma: meets",
    "z-element properties lemma: m_x = x",
    "z-element properties lemma: maximal elements, unique maximal, Jacobson radical",
    "z-element properties lemma: minimal primes",
    "residual proposition",
    "annihilator corollary",
    "quasi-local pz proposition",
    "semisimple prime/z dichotomy theorem",
    "product-closure szi theorem",
    "homomorphism inverse-image proposition",
    "homomorphism kernel proposition",
    "regular strong-z theorem",
    "cz property proposition",
    "join-closure equivalence proposition",
    "pz characterization proposition",
    "quantic nucleus identities",
    "quotient construction theorem",
    "compact frame theorem",
    "z-(strongly) irreducible equivalence",
    "minimal z-strongly irreducible existence",
    "totally ordered Z(L) proposition",
    "z-irreducible decomposition theorem",
    "z-prime equivalence",
    "minimal z-prime existence",
    "finiteness of minimal z-primes",
    "z-semiprime equivalence",
    "z-primary equivalence",
    "z-prime via z-semiprime and z-strongly irreducible",
];

fn theorem_suite() -> Outcome {
    for r in REQUIRED_RESULTS {
        let id = COVERAGE.iter().find(|(name, _)| name == r).map(|&(_, id)| id);
        ensure(id.is_some_and(|id| TheoremId::ALL.contains(&id)), || format!("no check covers `{r}`"))?;
    }
    let structures = corpus(EXTENDED_MAX_N);
    let (mut pass, mut na) = (0, 0);
    for ml in &structures {
        for r in run_theorems(ml, TheoremId::ALL) {
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::NotApplicable => na += 1,
                Verdict::Fail => return Err(format!("{} fails on {}: {:?}", r.theorem, ml.name(), r.witness)),
            }
        }
    }
    Ok(format!(
        "{} ids x {} structures: {pass} pass, {na} not-applicable, 0 fail; {} results covered",
        TheoremId::ALL.len(),
        structures.len(),
        REQUIRED_RESULTS.len()
    ))
}

fn product_closed(ml: &MultiplicativeLattice) -> bool {
    let z = ml.z_elements();
    z.iter().all(|a| z.iter().all(|b| z.contains(ml.multiply(a, b))))
}

fn product_closure() -> Outcome {
    let structures = corpus(EXTENDED_MAX_N);
    let mut szi = 0;
    for ml in &structures {
        let flag = ml.z_predicates().szi;
        szi += flag as usize;
        ensure(flag == product_closed(ml), || format!("{}: szi = {flag}, closed = {}", ml.name(), !flag))?;
    }
    let z8 = named_fixture("Z8").unwrap();
    let m = z8.element("(2)").unwrap();
    let q = z8.multiply(m, m);
    ensure(!z8.z_predicates().szi && z8.label(q) == "(4)" && !z8.z_elements().contains(q), || {
        "Z8 does not certify the non-szi side".into()
    })?;
    Ok(format!("{} structures ({szi} szi), 0 mismatches; Z8: m·m = q ∉ Z", structures.len()))
}

fn pz_conditions(ml: &MultiplicativeLattice) -> Result<[bool; 4], String> {
    let pz = ml.z_predicates().pz;
    let z = ml.z_elements();
    let semiprime_z = ml.elements().filter(|&q| ml.is_semiprime(q)).all(|q| z.contains(q));
    let m_is_vp_meet = ml.elements().all(|a| ml.m_of(a) == ml.lattice().meet_all(ml.closed_set_vp(a)));
    let mut cz_is_radical = true;
    for a in ml.elements() {
        cz_is_radical &= ml.z_closure(a) == ml.radical(a).map_err(|e| e.to_string())?;
    }
    Ok([pz, semiprime_z, m_is_vp_meet, cz_is_radical])
}

fn pz_characterization() -> Outcome {
    let structures = corpus(EXTENDED_MAX_N);
    let mut pz = 0;
    for ml in structures.iter().filter(|m| m.size() > 1) {
        let c = pz_conditions(ml)?;
        ensure(c.iter().all(|&x| x == c[0]), || format!("{}: conditions {c:?}", ml.name()))?;
        pz += c[0] as usize;
    }
    let get = |n| pz_conditions(&named_fixture(n).unwrap());
    ensure(get("C3")? == [false; 4], || "C3 is not all-false".into())?;
    ensure(get("D12")? == [true; 4] && get("Z8")? == [true; 4], || "D12/Z8 are not all-true".into())?;
    Ok(format!("{} structures ({pz} pz), 0 splits; C3 all-false, D12 and Z8 all-true", structures.len()))
}

fn quotient_laws(ml: &MultiplicativeLattice) -> Result<(), String> {
    let q = ml.z_quotient().map_err(|e| format!("{}: {e}", ml.name()))?;
    let cz = |a| ml.z_closure(a);
    let fail = |law: &str, w: &[ElementId]| {
        let w: Vec<&str> = w.iter().map(|&x| ml.label(x)).collect();
        format!("{}: {law} at {w:?}", ml.name())
    };
    for &a in q.members() {
        for &b in q.members() {
            ensure(q.odot(a, b) == ml.meet(a, b), || fail("⊙ = ∧", &[a, b]))?;
        }
    }
    for a in ml.elements() {
        ensure(q.members().contains(&cz(a)), || fail("cz(a) ∈ Z", &[a]))?;
        for b in ml.elements() {
            ensure(!ml.leq(a, b) || ml.leq(cz(a), cz(b)), || fail("order", &[a, b]))?;
            ensure(cz(ml.meet(a, b)) == ml.meet(cz(a), cz(b)), || fail("meet", &[a, b]))?;
            ensure(cz(ml.join(a, b)) == q.vee(cz(a), cz(b)), || fail("join onto ⋁′", &[a, b]))?;
        }
    }
    ensure(q.members().iter().all(|&z| cz(z) == z), || fail("onto", &[]))?;
    if ml.z_predicates().szi {
        for a in ml.elements() {
            ensure(ml.leq(a, cz(a)) && cz(cz(a)) == cz(a), || fail("closure", &[a]))?;
            for b in ml.elements() {
                ensure(ml.leq(ml.multiply(cz(a), cz(b)), cz(ml.multiply(a, b))), || {
                    fail("cz(a)cz(b) ⩽ cz(ab)", &[a, b])
                })?;
            }
        }
    }
    Ok(())
}

fn quotient_frame() -> Outcome {
    let structures = corpus(EXTENDED_MAX_N);
    for ml in structures.iter().filter(|m| m.size() > 1) {
        quotient_laws(ml)?;
    }
    Ok(format!("{} structures, 0 violations", structures.len()))
}

fn counterexample_searches() -> Outcome {
    let fixtures = CorpusSpec::new(EXTENDED_MAX_N, MultMode::FixturesOnly);
    let mut lines = Vec::new();
    for (prop, expected) in [(Property::ZProductNotClosed, "Z8"), (Property::PrimeNotZ, "C3")] {
        let start = Instant::now();
        let o = search_counterexample(prop, &fixtures).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let w = o.witness.ok_or_else(|| format!("{prop}: no witness"))?;
        ensure(w.structure == expected, || format!("{prop}: witness on {}", w.structure))?;
        ensure(took < FIXTURE_SEARCH_BUDGET, || format!("{prop}: took {took:?}"))?;
        lines.push(format!("{prop} on {expected} {:?} in {took:.2?}", w.labels));
    }
    let bounded = CorpusSpec::new(CORPUS_MAX_N, MultMode::All);
    for prop in [Property::ZeroZNotSemisimple, Property::StrongZNeqZ] {
        let o = search_counterexample(prop, &bounded).map_err(|e| e.to_string())?;
        let report = match &o.witness {
            Some(w) => format!("witness on {} {:?}", w.structure, w.labels),
            None => format!("exhausted after {}", o.examined),
        };
        lines.push(format!("{prop} (n ⩽ {CORPUS_MAX_N}): {report}"));
    }
    Ok(lines.join("; "))
}

fn enumeration_sanity() -> Outcome {
    let ours: Vec<usize> = (1..=5).map(|n| lattices_of_size(n, true).len()).collect();
    let naive: Vec<usize> = (1..=5).map(|n| common::naive_lattice_classes(n).len()).collect();
    ensure(ours == LATTICE_COUNTS && naive == LATTICE_COUNTS, || format!("ours {ours:?}, naive {naive:?}"))?;
    let structures: Vec<MultiplicativeLattice> =
        corpus(CORPUS_MAX_N).into_iter().filter(|m| !FIXTURE_NAMES.contains(&m.name())).collect();
    for (i, a) in structures.iter().enumerate() {
        for b in structures[i + 1..].iter().filter(|b| b.size() == a.size()) {
            ensure(!common::structures_isomorphic(a, b), || format!("{} ≅ {}", a.name(), b.name()))?;
        }
    }
    Ok(format!("counts {ours:?} (naive agrees); {} structures pairwise non-isomorphic", structures.len()))
}

fn parser_and_cli() -> Outcome {
    for name in FIXTURE_NAMES {
        let ml = named_fixture(name).unwrap();
        let text = MlatDocument::from_structure(&ml).serialize();
        let back = parse_mlat(&text).map_err(|e| format!("{name}: {e}"))?.build().map_err(|e| e.to_string())?;
        ensure(common::raw_of(&back).mult == common::raw_of(&ml).mult, || format!("{name}: products"))?;
        ensure(common::order_of(&back) == common::order_of(&ml), || format!("{name}: order"))?;
        ensure(MlatDocument::from_structure(&back).serialize() == text, || format!("{name}: text"))?;
    }

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/malformed");
    let mut samples = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let expect = text.lines().next().and_then(|l| l.strip_prefix("# expect: ")).unwrap_or_default();
        let err = match parse_mlat(&text).and_then(|d| d.build()) {
            Ok(_) => return Err(format!("{} parsed", path.display())),
            Err(e) => e,
        };
        let pos = err.pos().ok_or_else(|| format!("{}: no position", path.display()))?;
        ensure(format!("{}:{}", pos.line, pos.column) == expect, || format!("{}: at {pos:?}", path.display()))?;
        samples += 1;
    }

    let tmp = std::env::temp_dir().join(format!("zlat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    let c3 = tmp.join("c3.mlat");
    let bad = tmp.join("bad.mlat");
    std::fs::write(&c3, MlatDocument::from_structure(&named_fixture("C3").unwrap()).serialize()).unwrap();
    std::fs::write(&bad, "lattice V\nelements 0 a b\norder 0 < a, 0 < b\nmult meet\n").unwrap();
    let (c3, bad) = (c3.to_str().unwrap(), bad.to_str().unwrap());
    let unparsable = dir.join("missing_eq.mlat");
    let cases: [(&[&str], i32); 6] = [
        (&["validate", c3], 0),
        (&["validate", bad], 1),
        (&["search", "--property", "PRIME-NOT-Z", "--max-size", "3", "--mult", "fixtures-only"], 2),
        (&["validate", unparsable.to_str().unwrap()], 3),
        (&["verify", c3, "--theorem", "NO-SUCH-ID"], 3),
        (&["closure", c3, "--element", "nope"], 3),
    ];
    for (args, want) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_zlat")).args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(want), || format!("{args:?}: exit {:?}, want {want}", out.status.code()))?;
    }
    let _ = std::fs::remove_dir_all(&tmp);
    Ok(format!(
        "{} fixtures round-trip; {samples} malformed samples positioned; {} exit codes",
        FIXTURE_NAMES.len(),
        cases.len()
    ))
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("definition equivalence", definition_equivalence),
        ("fixture golden values", golden_values),
        ("theorem suite", theorem_suite),
        ("product-closure biconditional", product_closure),
        ("pz characterization", pz_characterization),
        ("quotient frame", quotient_frame),
        ("counterexample searches", counterexample_searches),
        ("enumeration sanity", enumeration_sanity),
        ("parser and exit codes", parser_and_cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {} FAIL {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
