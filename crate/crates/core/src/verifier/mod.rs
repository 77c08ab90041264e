//! Executable checks, a corpus of small structures, and counterexample
//! search.

mod catalog;
mod enumerate;
pub mod homs;
mod search;

use thiserror::Error;

pub use catalog::{
    parse_selection, recheck_witness, run_theorems, HomWitness, ReadingResult, TheoremId, TheoremReport, Verdict,
    Witness, COVERAGE,
};
pub use enumerate::{
    automorphisms, enumerate_corpus, lattices_of_size, multiplications, standard_corpus, CorpusSpec, MultMode,
    DEFAULT_CEILING, MAX_CEILING,
};
pub use search::{find_in, search_counterexample, Property, SearchOutcome, SearchWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("corpus size {requested} exceeds the ceiling {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },
    #[error("bad corpus spec: {0}")]
    BadSpec(String),
    #[error("bad witness: {0}")]
    BadWitness(String),
}
