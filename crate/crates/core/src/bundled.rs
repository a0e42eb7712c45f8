//! The two scholarship schemes and the 15-applicant dataset shipped in `data/`.

use crate::io::{parse_dataset, parse_scheme};
use crate::model::{Alternative, Scheme};

pub const ACADEMIC: &str = include_str!("../../../data/academic.json");
pub const NON_ACADEMIC: &str = include_str!("../../../data/non_academic.json");
/// All nine criterion columns; the academic scheme reads the first three.
pub const TABLE3: &str = include_str!("../../../data/table3.csv");

pub fn academic() -> Scheme {
    parse_scheme(ACADEMIC).expect("bundled academic scheme is valid")
}

pub fn non_academic() -> Scheme {
    parse_scheme(NON_ACADEMIC).expect("bundled non-academic scheme is valid")
}

pub fn table3(scheme: &Scheme) -> Vec<Alternative> {
    parse_dataset(TABLE3, scheme).expect("bundled dataset parses")
}
