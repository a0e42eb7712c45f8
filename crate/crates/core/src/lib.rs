//! Ranking of alternatives against weighted criteria with fuzzy TOPSIS and
//! the fuzzy Weighted Product model. Ratings and weights may be crisp
//! numbers or linguistic terms backed by triangular fuzzy numbers; both are
//! lowered to crisp values by centroid defuzzification before ranking.

pub mod bundled;
pub mod error;
pub mod evaluate;
pub mod fuzzy;
pub mod io;
pub mod model;
pub mod rank;
pub mod store;
pub mod topsis;
pub mod wp;

pub use error::{Error, Result};
pub use evaluate::{
    evaluate, evaluate_all, explain, prepare, run, CriterionOverride, Explanation, Method, MethodSelection, Overrides,
    Prepared, WeightOverride,
};
pub use fuzzy::{defuzzify_centroid, lookup_term, make_tfn, LinguisticScale, LinguisticTerm, Tfn};
pub use io::{RankedAlternative, ResultDocument};
pub use model::{
    lower_to_crisp, validate_dataset, weight_vector, Alternative, Cell, CrispMatrix, Criterion, Orientation, Scheme,
    ValidationIssue,
};
