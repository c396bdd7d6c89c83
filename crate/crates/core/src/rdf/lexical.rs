//! Lexical-form checks for the supported XSD datatypes.

use std::sync::LazyLock;

use regex::Regex;

use crate::vocab::xsd;

/// Outcome of [`validate_lexical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexicalCheck {
    Valid,
    Invalid,
    /// The datatype is outside the supported set; callers treat this as a
    /// pass and surface a warning.
    UnknownDatatype,
}

impl LexicalCheck {
    /// True unless the value is definitely invalid.
    pub fn passes(self) -> bool {
        !matches!(self, LexicalCheck::Invalid)
    }
}

pub const SUPPORTED_DATATYPES: [&str; 7] = [
    xsd::STRING,
    xsd::INTEGER,
    xsd::DECIMAL,
    xsd::BOOLEAN,
    xsd::DATE,
    xsd::DATE_TIME,
    xsd::ANY_URI,
];

pub fn is_supported_datatype(datatype: &str) -> bool {
    SUPPORTED_DATATYPES.contains(&datatype)
}

static INTEGER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[+-]?[0-9]+$").unwrap());
static DECIMAL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$").unwrap());
static DATE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(-?(?:[1-9][0-9]{4,}|[0-9]{4}))-([0-9]{2})-([0-9]{2})(Z|[+-][0-9]{2}:[0-9]{2})?$").unwrap()
});
static DATE_TIME: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^(-?(?:[1-9][0-9]{4,}|[0-9]{4}))-([0-9]{2})-([0-9]{2})T([0-9]{2}):([0-9]{2}):([0-9]{2})(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?$",
    )
    .unwrap()
});

/// Checks `value` against the lexical space of `datatype`.
pub fn validate_lexical(value: &str, datatype: &str) -> LexicalCheck {
    let ok = match datatype {
        xsd::STRING => true,
        xsd::INTEGER => INTEGER.is_match(value),
        xsd::DECIMAL => DECIMAL.is_match(value),
        xsd::BOOLEAN => matches!(value, "true" | "false" | "1" | "0"),
        xsd::DATE => DATE
            .captures(value)
            .is_some_and(|c| valid_date(&c[1], &c[2], &c[3]) && c.get(4).is_none_or(|tz| valid_tz(tz.as_str()))),
        xsd::DATE_TIME => DATE_TIME.captures(value).is_some_and(|c| {
            valid_date(&c[1], &c[2], &c[3])
                && valid_time(&c[4], &c[5], &c[6], c.get(7).map(|m| m.as_str()))
                && c.get(8).is_none_or(|tz| valid_tz(tz.as_str()))
        }),
        xsd::ANY_URI => value
            .chars()
            .all(|c| !c.is_whitespace() && !c.is_control() && !matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`')),
        _ => return LexicalCheck::UnknownDatatype,
    };
    if ok {
        LexicalCheck::Valid
    } else {
        LexicalCheck::Invalid
    }
}

fn valid_date(year: &str, month: &str, day: &str) -> bool {
    let (Ok(year), Ok(month), Ok(day)) = (year.parse::<i64>(), month.parse::<u32>(), day.parse::<u32>()) else {
        return false;
    };
    if !(1..=12).contains(&month) || day == 0 {
        return false;
    }
    let leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    let days = match month {
        2 if leap => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    };
    day <= days
}

fn valid_time(hour: &str, minute: &str, second: &str, fraction: Option<&str>) -> bool {
    let (Ok(h), Ok(m), Ok(s)) = (hour.parse::<u32>(), minute.parse::<u32>(), second.parse::<u32>()) else {
        return false;
    };
    if h == 24 {
        let zero_fraction = fraction.is_none_or(|f| f[1..].chars().all(|c| c == '0'));
        return m == 0 && s == 0 && zero_fraction;
    }
    h < 24 && m < 60 && s < 60
}

fn valid_tz(tz: &str) -> bool {
    if tz == "Z" {
        return true;
    }
    let (Ok(h), Ok(m)) = (tz[1..3].parse::<u32>(), tz[4..6].parse::<u32>()) else {
        return false;
    };
    m < 60 && (h < 14 || (h == 14 && m == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strings_always_valid() {
        assert_eq!(validate_lexical("hello", xsd::STRING), LexicalCheck::Valid);
        assert_eq!(validate_lexical("", xsd::STRING), LexicalCheck::Valid);
    }

    #[test]
    fn integers() {
        assert_eq!(validate_lexical("12.5", xsd::INTEGER), LexicalCheck::Invalid);
        for ok in ["0", "-7", "+0042"] {
            assert_eq!(validate_lexical(ok, xsd::INTEGER), LexicalCheck::Valid, "{ok}");
        }
        for bad in ["", "+", "1 ", "1e3"] {
            assert_eq!(validate_lexical(bad, xsd::INTEGER), LexicalCheck::Invalid, "{bad}");
        }
    }

    #[test]
    fn decimals_and_booleans() {
        for ok in ["1", "1.", ".5", "-3.25"] {
            assert!(validate_lexical(ok, xsd::DECIMAL).passes(), "{ok}");
        }
        assert_eq!(validate_lexical(".", xsd::DECIMAL), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("TRUE", xsd::BOOLEAN), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("0", xsd::BOOLEAN), LexicalCheck::Valid);
    }

    #[test]
    fn dates() {
        assert_eq!(validate_lexical("2023-09-01", xsd::DATE), LexicalCheck::Valid);
        assert_eq!(validate_lexical("2024-02-29Z", xsd::DATE), LexicalCheck::Valid);
        assert_eq!(validate_lexical("2023-02-29", xsd::DATE), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("1900-02-29", xsd::DATE), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("2023-13-01", xsd::DATE), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("2023-9-01", xsd::DATE), LexicalCheck::Invalid);
        assert_eq!(validate_lexical("02023-01-01", xsd::DATE), LexicalCheck::Invalid);
    }

    #[test]
    fn date_times() {
        assert!(validate_lexical("2023-09-01T10:20:30", xsd::DATE_TIME).passes());
        assert!(validate_lexical("2023-09-01T24:00:00.000+02:00", xsd::DATE_TIME).passes());
        assert!(!validate_lexical("2023-09-01T24:00:01", xsd::DATE_TIME).passes());
        assert!(!validate_lexical("2023-09-01", xsd::DATE_TIME).passes());
        assert!(!validate_lexical("2023-09-01T10:20:30+15:00", xsd::DATE_TIME).passes());
    }

    #[test]
    fn any_uri_and_unknown() {
        assert!(validate_lexical("https://doi.org/10.1/x", xsd::ANY_URI).passes());
        assert!(!validate_lexical("has space", xsd::ANY_URI).passes());
        assert_eq!(
            validate_lexical("x", "http://example.org/custom"),
            LexicalCheck::UnknownDatatype
        );
        assert!(LexicalCheck::UnknownDatatype.passes());
    }
}
