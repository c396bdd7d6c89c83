//! Check digits found by trying every candidate against the defining
//! congruence, rather than by the usual iterative formulas.

/// The ORCID check value c in 0..=10 with
/// sum(d_i * 2^(15 - i)) + c = 1 (mod 11) over the 15 body digits.
pub fn orcid_check(body: &[u8; 15]) -> char {
    let weighted: u64 = body
        .iter()
        .enumerate()
        .map(|(i, &d)| u64::from(d) * (1u64 << (15 - i)))
        .sum();
    let c = (0..=10u64)
        .find(|c| (weighted + c) % 11 == 1)
        .expect("exactly one residue works");
    render(c)
}

/// The ISSN check value c in 0..=10 with sum(d_i * (8 - i)) + c = 0 (mod 11).
pub fn issn_check(body: &[u8; 7]) -> char {
    let weighted: u64 = body.iter().enumerate().map(|(i, &d)| u64::from(d) * (8 - i as u64)).sum();
    let c = (0..=10u64)
        .find(|c| (weighted + c).is_multiple_of(11))
        .expect("exactly one residue works");
    render(c)
}

fn render(c: u64) -> char {
    if c == 10 {
        'X'
    } else {
        char::from_digit(c as u32, 10).unwrap()
    }
}

pub fn format_orcid(body: &[u8; 15], check: char) -> String {
    let digits: String = body.iter().map(|d| char::from(b'0' + d)).chain([check]).collect();
    format!("{}-{}-{}-{}", &digits[0..4], &digits[4..8], &digits[8..12], &digits[12..16])
}

pub fn format_issn(body: &[u8; 7], check: char) -> String {
    let digits: String = body.iter().map(|d| char::from(b'0' + d)).chain([check]).collect();
    format!("{}-{}", &digits[0..4], &digits[4..8])
}

/// All eleven possible final characters.
pub const CANDIDATES: [char; 11] = ['0', '1', '2', '3', '4', '5', '6', '7', '8', '9', 'X'];
