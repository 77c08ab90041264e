//! Report generation shared by the CLI and by `query` directives.

use std::str::FromStr;

use comfy_table::{presets, CellAlignment, Table};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{ElementId, ElementSet};
use crate::mlat::{MlatDocument, MlatError};
use crate::quantale::{named_fixture, MultiplicativeLattice, FIXTURE_NAMES};
use crate::spectra::SpectraError;
use crate::verifier::{
    parse_selection, run_theorems, search_counterexample, CorpusSpec, MultMode, Property, SearchOutcome, TheoremId,
    TheoremReport, Verdict, VerifyError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify { element: Option<String> },
    Zmap,
    Closure { element: String },
    Verify { theorems: Vec<String> },
    Search { property: String, max_size: usize, mode: MultMode },
    Fixtures { name: Option<String> },
}

/// Query-line syntax: `classify [LABEL]`, `zmap`, `closure LABEL`,
/// `verify [ID …]`, `validate`, `search PROPERTY MAX [MODE]`,
/// `fixtures [NAME]`.
impl FromStr for Command {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, QueryError> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let bad = || QueryError::UnknownCommand(s.to_string());
        let owned = |w: &[&str]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        Ok(match words.as_slice() {
            ["validate"] => Command::Validate,
            ["classify"] => Command::Classify { element: None },
            ["classify", e] => Command::Classify { element: Some(e.to_string()) },
            ["zmap"] => Command::Zmap,
            ["closure", e] => Command::Closure { element: e.to_string() },
            ["verify", ids @ ..] => Command::Verify { theorems: owned(ids) },
            ["search", p, n, rest @ ..] if rest.len() <= 1 => Command::Search {
                property: p.to_string(),
                max_size: n.parse().map_err(|_| bad())?,
                mode: match rest.first() {
                    Some(m) => m.parse().map_err(|_| bad())?,
                    None => MultMode::All,
                },
            },
            ["fixtures"] => Command::Fixtures { name: None },
            ["fixtures", n] => Command::Fixtures { name: Some(n.to_string()) },
            _ => return Err(bad()),
        })
    }
}

/// `Violation` when a theorem check failed or a search found a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryOutput {
    pub body: String,
    pub status: Status,
}

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{structure}: no element labelled `{label}`")]
    UnknownElement { structure: String, label: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Mlat(#[from] MlatError),
    #[error("{structure}: {source}")]
    Verify { structure: String, source: VerifyError },
    #[error("{structure}: {source}")]
    Spectra { structure: String, source: SpectraError },
}

impl QueryError {
    /// 1 for structures that fail validation, 3 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            QueryError::Mlat(e) if !e.is_parse_error() => 1,
            QueryError::Spectra { .. } => 1,
            _ => 3,
        }
    }
}

/// Builds the document's structure and runs `command` on it.
pub fn run_query(doc: &MlatDocument, command: &Command, format: Format) -> Result<QueryOutput, QueryError> {
    match command {
        Command::Search { .. } | Command::Fixtures { .. } => run_standalone(command, format),
        _ => {
            let ml = doc.build()?;
            run_on(&ml, command, format)
        }
    }
}

/// Commands that need no input structure.
pub fn run_standalone(command: &Command, format: Format) -> Result<QueryOutput, QueryError> {
    match command {
        Command::Search { property, max_size, mode } => search(property, *max_size, *mode, format),
        Command::Fixtures { name } => fixtures(name.as_deref(), format),
        _ => Err(QueryError::UnknownCommand(format!("{command:?} needs an input file"))),
    }
}

/// Runs `command` on an already validated structure.
pub fn run_on(ml: &MultiplicativeLattice, command: &Command, format: Format) -> Result<QueryOutput, QueryError> {
    let ok = |body| Ok(QueryOutput { body, status: Status::Ok });
    match command {
        Command::Validate => ok(validate(ml, format)),
        Command::Classify { element } => ok(classify(ml, element.as_deref(), format)?),
        Command::Zmap => ok(zmap(ml, format)),
        Command::Closure { element } => ok(closure(ml, element, format)?),
        Command::Verify { theorems } => verify(ml, theorems, format),
        Command::Search { .. } | Command::Fixtures { .. } => run_standalone(command, format),
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut t = Table::new();
    t.load_preset(presets::NOTHING);
    t.set_header(headers.to_vec());
    for r in rows {
        t.add_row(r);
    }
    for col in t.column_iter_mut() {
        col.set_cell_alignment(CellAlignment::Left);
    }
    let mut s: String = t.lines().map(|l| l.trim_end().to_string() + "\n").collect();
    if s.is_empty() {
        s.push('\n');
    }
    s
}

fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn element(ml: &MultiplicativeLattice, label: &str) -> Result<ElementId, QueryError> {
    ml.element(label)
        .ok_or_else(|| QueryError::UnknownElement { structure: ml.name().to_string(), label: label.to_string() })
}

fn labels(ml: &MultiplicativeLattice, s: ElementSet) -> Vec<String> {
    s.iter().map(|x| ml.label(x).to_string()).collect()
}

fn set_text(ml: &MultiplicativeLattice, s: ElementSet) -> String {
    format!("{{{}}}", labels(ml, s).join(", "))
}

fn validate(ml: &MultiplicativeLattice, format: Format) -> String {
    let p = ml.lattice_predicates();
    let z = ml.z_predicates();
    match format {
        Format::Json => render(&json!({
            "structure": ml.name(),
            "valid": true,
            "size": ml.size(),
            "frame": p.frame,
            "semisimple": p.semisimple,
            "regular": p.regular,
            "maximal_count": p.maximal_count,
            "szi": z.szi,
            "pz": z.pz,
        })),
        Format::Text => {
            let flags = [
                ("frame", p.frame),
                ("semisimple", p.semisimple),
                ("regular", p.regular),
                ("szi", z.szi),
                ("pz", z.pz),
            ];
            let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
            let on = if on.is_empty() { "none".to_string() } else { on.join(" ") };
            format!("{}: valid multiplicative lattice, {} elements; holds: {on}\n", ml.name(), ml.size())
        }
    }
}

fn classify(ml: &MultiplicativeLattice, only: Option<&str>, format: Format) -> Result<String, QueryError> {
    let wrap = |source| QueryError::Spectra { structure: ml.name().to_string(), source };
    let records = match only {
        Some(l) => vec![ml.classify_element(element(ml, l)?).map_err(wrap)?],
        None => ml.classify_all().map_err(wrap)?,
    };
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "element": ml.label(r.element),
                        "proper": r.proper,
                        "maximal": r.maximal,
                        "prime": r.prime,
                        "semiprime": r.semiprime,
                        "primary": r.primary,
                        "irreducible": r.irreducible,
                        "strongly_irreducible": r.strongly_irreducible,
                        "complemented": r.complemented,
                        "radical": ml.label(r.radical),
                        "radical_element": r.radical_element,
                        "idempotent": r.idempotent,
                        "z": ml.is_z(r.element),
                    })
                })
                .collect();
            render(&json!({ "structure": ml.name(), "rows": rows }))
        }
        Format::Text => {
            let headers = [
                "element",
                "maximal",
                "prime",
                "semiprime",
                "primary",
                "irred",
                "s-irred",
                "compl",
                "idem",
                "radical",
                "z",
            ];
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        ml.label(r.element).to_string(),
                        yn(r.maximal),
                        yn(r.prime),
                        yn(r.semiprime),
                        yn(r.primary),
                        yn(r.irreducible),
                        yn(r.strongly_irreducible),
                        yn(r.complemented),
                        yn(r.idempotent),
                        ml.label(r.radical).to_string(),
                        yn(ml.is_z(r.element)),
                    ]
                })
                .collect();
            table(&headers, rows)
        }
    })
}

fn zmap(ml: &MultiplicativeLattice, format: Format) -> String {
    let p = ml.lattice_predicates();
    let zp = ml.z_predicates();
    let profiles: Vec<_> = ml.elements().map(|x| ml.z_classify(x)).collect();
    match format {
        Format::Json => {
            let rows: Vec<Value> = profiles
                .iter()
                .map(|z| {
                    json!({
                        "element": ml.label(z.element),
                        "maximal_cover": labels(ml, z.maximal_cover),
                        "m": ml.label(z.m),
                        "cz": ml.label(z.cz),
                        "z": z.is_z,
                        "z_prime": z.z_prime,
                        "z_semiprime": z.z_semiprime,
                        "z_primary": z.z_primary,
                        "z_irreducible": z.z_irreducible,
                        "z_strongly_irreducible": z.z_strongly_irreducible,
                        "strong_z": z.strong_z,
                        "basic_z": z.basic_z,
                    })
                })
                .collect();
            render(&json!({
                "structure": ml.name(),
                "z_elements": labels(ml, ml.z_elements()),
                "predicates": {
                    "semisimple": p.semisimple,
                    "szi": zp.szi,
                    "pz": zp.pz,
                    "z_join_closed": zp.z_join_closed,
                },
                "rows": rows,
            }))
        }
        Format::Text => {
            let headers = [
                "element",
                "M_a",
                "m_a",
                "cz",
                "z",
                "z-prime",
                "z-semiprime",
                "z-primary",
                "z-irred",
                "z-s-irred",
                "strong-z",
                "basic-z",
            ];
            let rows = profiles
                .iter()
                .map(|z| {
                    vec![
                        ml.label(z.element).to_string(),
                        set_text(ml, z.maximal_cover),
                        ml.label(z.m).to_string(),
                        ml.label(z.cz).to_string(),
                        yn(z.is_z),
                        yn(z.z_prime),
                        yn(z.z_semiprime),
                        yn(z.z_primary),
                        yn(z.z_irreducible),
                        yn(z.z_strongly_irreducible),
                        yn(z.strong_z),
                        yn(z.basic_z),
                    ]
                })
                .collect();
            format!(
                "{}: Z(L) = {}; szi {}, pz {}, semisimple {}\n{}",
                ml.name(),
                set_text(ml, ml.z_elements()),
                yn(zp.szi),
                yn(zp.pz),
                yn(p.semisimple),
                table(&headers, rows)
            )
        }
    }
}

fn closure(ml: &MultiplicativeLattice, label: &str, format: Format) -> Result<String, QueryError> {
    let a = element(ml, label)?;
    let (cz, m) = (ml.z_closure(a), ml.m_of(a));
    Ok(match format {
        Format::Json => render(&json!({
            "structure": ml.name(),
            "element": ml.label(a),
            "cz": ml.label(cz),
            "m": ml.label(m),
            "z": ml.is_z(a),
        })),
        Format::Text => format!("cz({}) = {}\n", ml.label(a), ml.label(cz)),
    })
}

fn verify(ml: &MultiplicativeLattice, theorems: &[String], format: Format) -> Result<QueryOutput, QueryError> {
    let selection = if theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        parse_selection(theorems).map_err(|source| QueryError::Verify { structure: ml.name().to_string(), source })?
    };
    let reports = run_theorems(ml, &selection);
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let body = match format {
        Format::Json => render(&serde_json::to_value(&reports).expect("reports serialize")),
        Format::Text => {
            let rows =
                reports.iter().map(|r| vec![r.theorem.to_string(), r.verdict.to_string(), detail(ml, r)]).collect();
            table(&["theorem", "verdict", "detail"], rows)
        }
    };
    Ok(QueryOutput { body, status: if failed { Status::Violation } else { Status::Ok } })
}

fn detail(ml: &MultiplicativeLattice, r: &TheoremReport) -> String {
    match (&r.verdict, &r.witness) {
        (Verdict::NotApplicable, _) => format!("hypothesis fails: {}", r.hypothesis.unwrap_or("")),
        (Verdict::Fail, Some(w)) => match &w.hom {
            Some(h) => {
                let target = if h.target == "self" { ml.clone() } else { named_fixture(&h.target).expect("fixture") };
                let image: Vec<&str> = h.map.iter().map(|&y| target.label(y)).collect();
                format!("{} into {}: {}", w.clause, h.target, image.join(" "))
            }
            None => format!("{} at ({})", w.clause, w.labels.join(", ")),
        },
        _ => {
            let broken: Vec<&str> =
                r.readings.iter().filter(|x| x.counterexample.is_some()).map(|x| x.reading.name()).collect();
            if broken.is_empty() {
                String::new()
            } else {
                format!("set readings fail: {}", broken.join(", "))
            }
        }
    }
}

fn search(property: &str, max_size: usize, mode: MultMode, format: Format) -> Result<QueryOutput, QueryError> {
    let wrap = |source| QueryError::Verify { structure: "corpus".into(), source };
    let property: Property = property.parse().map_err(wrap)?;
    let spec = CorpusSpec::new(max_size, mode);
    let outcome = search_counterexample(property, &spec).map_err(wrap)?;
    let status = if outcome.exhausted() { Status::Ok } else { Status::Violation };
    Ok(QueryOutput { body: search_report(&outcome, format), status })
}

fn search_report(o: &SearchOutcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(o).expect("outcome serializes");
            v["exhausted"] = json!(o.exhausted());
            if let Some(w) = &o.witness {
                v["witness"]["mlat"] = json!(MlatDocument::from_structure(&w.instance).serialize());
            }
            render(&v)
        }
        Format::Text => match &o.witness {
            Some(w) => format!(
                "{}: witness in {} at ({}): {}\n{}",
                o.property,
                w.structure,
                w.labels.join(", "),
                w.detail,
                MlatDocument::from_structure(&w.instance).serialize()
            ),
            None => format!("{}: exhausted after {} structures (max size {})\n", o.property, o.examined, o.spec.max_n),
        },
    }
}

fn fixtures(name: Option<&str>, format: Format) -> Result<QueryOutput, QueryError> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => FIXTURE_NAMES.to_vec(),
    };
    let mut docs = Vec::new();
    for n in names {
        let ml = named_fixture(n).ok_or_else(|| QueryError::UnknownFixture(n.to_string()))?;
        docs.push((n, MlatDocument::from_structure(&ml).serialize()));
    }
    let body = match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                docs.into_iter().map(|(n, d)| (n.to_string(), json!(d))).collect();
            render(&Value::Object(map))
        }
        Format::Text => docs.into_iter().map(|(_, d)| d).collect::<Vec<_>>().join("\n"),
    };
    Ok(QueryOutput { body, status: Status::Ok })
}
