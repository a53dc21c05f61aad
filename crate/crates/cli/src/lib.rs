//! Table builders and output records for the `dfaorev` command-line tool.

pub mod tables;

use dfaorev::complexity::TauUlmBreakdown;
use dfaorev::search::SearchResult;
use dfaorev::Error;
use serde_json::{json, Value};

/// One JSON-lines search record. Arrays are 1-based.
pub fn search_record(r: &SearchResult) -> Value {
    json!({
        "k": r.k,
        "n": r.n,
        "mode": r.mode.name(),
        "max": r.max_size,
        "alpha": r.alpha.as_transformation().to_one_based(),
        "beta": r.beta.to_one_based(),
        "tau": r.tau.to_one_based(),
        "examined": r.examined,
        "seed": r.seed(),
    })
}

/// `key<TAB>value` lines for every quantity of the bound.
pub fn formula_lines(b: &TauUlmBreakdown) -> String {
    format!(
        "k\t{}\nl\t{}\nm\t{}\nn\t{}\nk^n\t{}\nF\t{}\nG\t{}\nresult\t{}\n",
        b.k,
        b.l,
        b.m,
        b.l + b.m,
        b.k_pow_n,
        b.f,
        b.g,
        b.size
    )
}

/// Process exit status for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::ValidationFailed(_) | Error::MethodDisagreement(_) | Error::ClosureLimit(_) => 1,
        _ => 2,
    }
}
