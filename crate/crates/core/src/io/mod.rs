//! File formats: JSON schemes, CSV datasets and JSON result documents.

mod dataset;
mod result;
mod scheme;

pub use dataset::{load_dataset, parse_dataset};
pub use result::{
    load_result, parse_result, render_documents, store_result, CriterionSetting, Meta, RankedAlternative,
    ResultDocument,
};
pub use scheme::{load_scheme, parse_scheme, scheme_to_json, CriterionFile, KindTag, ScaleFile, SchemeFile, TermFile};

use crate::error::Error;

/// Maps a serde_json failure onto our error kinds: malformed text is a
/// parse error, well-formed text of the wrong shape a schema violation.
pub(crate) fn json_error(err: serde_json::Error) -> Error {
    let location = format!("line {}, column {}", err.line(), err.column());
    match err.classify() {
        serde_json::error::Category::Data => Error::SchemaViolation {
            pointer: location,
            message: err.to_string(),
        },
        _ => Error::Parse {
            location,
            message: err.to_string(),
        },
    }
}
