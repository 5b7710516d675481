use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ParseError;

/// Typographic units accepted in lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Em,
    Ex,
    Pt,
    Mm,
    Cm,
    In,
}

impl Unit {
    pub const ALL: [Unit; 6] = [Unit::Em, Unit::Ex, Unit::Pt, Unit::Mm, Unit::Cm, Unit::In];

    pub fn suffix(self) -> &'static str {
        match self {
            Unit::Em => "em",
            Unit::Ex => "ex",
            Unit::Pt => "pt",
            Unit::Mm => "mm",
            Unit::Cm => "cm",
            Unit::In => "in",
        }
    }

    /// Size of one unit in em, with 1em = 10pt, 1ex = 4.3pt, 1in = 72.27pt
    /// and 1in = 25.4mm.
    pub fn em_per_unit(self) -> f64 {
        const PT: f64 = 0.1;
        match self {
            Unit::Em => 1.0,
            Unit::Ex => 4.3 * PT,
            Unit::Pt => PT,
            Unit::In => 72.27 * PT,
            Unit::Mm => 72.27 * PT / 25.4,
            Unit::Cm => 72.27 * PT / 2.54,
        }
    }
}

/// A TeX-style length such as `.7em` or `12pt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Length {
    pub value: f64,
    pub unit: Unit,
}

impl Length {
    pub const fn em(value: f64) -> Self {
        Length {
            value,
            unit: Unit::Em,
        }
    }

    pub fn to_em(self) -> f64 {
        self.value * self.unit.em_per_unit()
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.unit.suffix())
    }
}

/// Parses an optionally signed decimal followed by a unit suffix.
/// Leading-dot decimals (`.7em`) are accepted; whitespace is not.
pub fn parse_length(text: &str) -> Result<Length, ParseError> {
    let bad = || ParseError::BadLength {
        text: text.to_string(),
        span: None,
    };
    let unit = Unit::ALL
        .into_iter()
        .find(|u| text.ends_with(u.suffix()))
        .ok_or_else(bad)?;
    let number = &text[..text.len() - unit.suffix().len()];
    let digits = number.strip_prefix(['+', '-']).unwrap_or(number);
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.len() + frac.len() == 0 || !all_digits(int) || !all_digits(frac) {
        return Err(bad());
    }
    let value: f64 = number.parse().map_err(|_| bad())?;
    Ok(Length { value, unit })
}

impl FromStr for Length {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_length(s)
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_length(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn listing_lengths() {
        assert_eq!(parse_length(".7em").unwrap(), Length::em(0.7));
        assert_eq!(parse_length("0em").unwrap(), Length::em(0.0));
        assert_eq!(parse_length("1.3em").unwrap(), Length::em(1.3));
        assert_eq!(
            parse_length("-2pt").unwrap(),
            Length {
                value: -2.0,
                unit: Unit::Pt
            }
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "em", "1", "1.2.3em", "1 em", "1furlong", "+em", ".em", "1e3em", "x1em",
        ] {
            assert!(
                matches!(parse_length(bad), Err(ParseError::BadLength { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn unit_table() {
        assert_eq!(Length::em(1.0).to_em(), 1.0);
        assert_eq!(parse_length("10pt").unwrap().to_em(), 1.0);
        assert!((parse_length("1in").unwrap().to_em() - 7.227).abs() < 1e-12);
        assert!((parse_length("25.4mm").unwrap().to_em() - 7.227).abs() < 1e-12);
        assert!((parse_length("2.54cm").unwrap().to_em() - 7.227).abs() < 1e-12);
        assert!((parse_length("1ex").unwrap().to_em() - 0.43).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn display_round_trips(value in -1.0e6f64..1.0e6, unit in 0usize..6) {
            let len = Length { value, unit: Unit::ALL[unit] };
            let text = len.to_string();
            prop_assert_eq!(parse_length(&text).unwrap(), len);
        }
    }
}
