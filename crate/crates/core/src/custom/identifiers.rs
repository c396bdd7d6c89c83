use std::sync::LazyLock;

use percent_encoding::{utf8_percent_encode, AsciiSet, CONTROLS};
use regex::Regex;

use super::Finding;

static DOI: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)^10\.[0-9]{4,9}/\S+$").unwrap());
static ORCID: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[0-9]{4}-[0-9]{4}-[0-9]{4}-[0-9]{3}[0-9X]$").unwrap());
static ISSN: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[0-9]{4}-[0-9]{3}[0-9X]$").unwrap());

// Characters that cannot appear raw in a URL path. '/' is kept: DOI
// suffixes routinely contain it and doi.org expects it unescaped.
const PATH: &AsciiSet = &CONTROLS
    .add(b' ')
    .add(b'"')
    .add(b'#')
    .add(b'%')
    .add(b'<')
    .add(b'>')
    .add(b'?')
    .add(b'`')
    .add(b'{')
    .add(b'}')
    .add(b'^')
    .add(b'|')
    .add(b'\\');

/// `10.` + 4 to 9 digits + `/` + a non-empty suffix without whitespace.
pub fn doi_syntax(value: &str) -> Option<Finding> {
    if DOI.is_match(value) {
        None
    } else {
        Some(Finding::violation(format!("{value:?} is not a syntactically valid DOI")))
    }
}

/// Resolver URL for a DOI.
pub fn doi_url(doi: &str) -> String {
    format!("https://doi.org/{}", utf8_percent_encode(doi, PATH))
}

/// ISO 7064 MOD 11-2 check character over a digit string.
pub fn mod11_2_check_digit(digits: &str) -> Option<char> {
    let mut total: u32 = 0;
    for c in digits.chars() {
        total = (total + c.to_digit(10)?) * 2;
    }
    let result = (12 - total % 11) % 11;
    Some(if result == 10 { 'X' } else { char::from_digit(result, 10)? })
}

/// ISSN check character for the first seven digits (weights 8 down to 2).
pub fn issn_check_digit(digits: &str) -> Option<char> {
    if digits.len() != 7 {
        return None;
    }
    let mut sum = 0;
    for (c, weight) in digits.chars().zip((2..=8).rev()) {
        sum += c.to_digit(10)? * weight;
    }
    let check = (11 - sum % 11) % 11;
    Some(if check == 10 { 'X' } else { char::from_digit(check, 10)? })
}

pub fn orcid_checksum(value: &str) -> Option<Finding> {
    if !ORCID.is_match(value) {
        return Some(Finding::violation(format!(
            "{value:?} is not an ORCID of the form dddd-dddd-dddd-dddX"
        )));
    }
    let digits: String = value.chars().filter(|c| *c != '-').collect();
    let (body, check) = digits.split_at(15);
    match mod11_2_check_digit(body) {
        Some(expected) if check.starts_with(expected) => None,
        Some(expected) => Some(Finding::violation(format!(
            "ORCID {value} has check digit {check}, expected {expected}"
        ))),
        None => unreachable!("pattern admits digits only"),
    }
}

pub fn issn_checksum(value: &str) -> Option<Finding> {
    if !ISSN.is_match(value) {
        return Some(Finding::violation(format!("{value:?} is not an ISSN of the form dddd-dddX")));
    }
    let digits: String = value.chars().filter(|c| *c != '-').collect();
    let (body, check) = digits.split_at(7);
    match issn_check_digit(body) {
        Some(expected) if check.starts_with(expected) => None,
        Some(expected) => Some(Finding::violation(format!(
            "ISSN {value} has check digit {check}, expected {expected}"
        ))),
        None => unreachable!("pattern admits digits only"),
    }
}
