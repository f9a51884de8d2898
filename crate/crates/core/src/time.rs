//! Minimal UTC calendar types. The stream is bucketed by calendar month, so
//! all the crate needs is a month key and a validated civil date-time;
//! parsing/formatting of ISO-8601 strings lives in the companion crate.

use alloc::string::ToString;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A UTC calendar month, the unit of temporal bucketing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthKey {
    pub year: i32,
    /// 1-based month.
    pub month: u32,
}

impl MonthKey {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidTimestamp(alloc::format!(
                "month {month} out of range 1..=12"
            )));
        }
        Ok(MonthKey { year, month })
    }

    /// The following calendar month.
    pub fn next(self) -> Self {
        if self.month == 12 {
            MonthKey { year: self.year + 1, month: 1 }
        } else {
            MonthKey { year: self.year, month: self.month + 1 }
        }
    }

    /// Number of months from `start` to `self` (negative if earlier).
    pub fn months_since(self, start: MonthKey) -> i64 {
        (self.year as i64 - start.year as i64) * 12 + (self.month as i64 - start.month as i64)
    }

    /// The month `offset` months after `self`.
    pub fn plus_months(self, offset: u32) -> Self {
        let total = self.year as i64 * 12 + (self.month as i64 - 1) + offset as i64;
        MonthKey { year: (total.div_euclid(12)) as i32, month: (total.rem_euclid(12) + 1) as u32 }
    }
}

impl fmt::Display for MonthKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl core::str::FromStr for MonthKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (y, m) = s
            .split_once('-')
            .ok_or_else(|| Error::InvalidTimestamp(alloc::format!("bad month key {s:?}")))?;
        let year: i32 = y
            .parse()
            .map_err(|_| Error::InvalidTimestamp(alloc::format!("bad year in {s:?}")))?;
        let month: u32 = m
            .parse()
            .map_err(|_| Error::InvalidTimestamp(alloc::format!("bad month in {s:?}")))?;
        MonthKey::new(year, month)
    }
}

// Serialized as "YYYY-MM" so config files stay readable.
impl Serialize for MonthKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MonthKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = alloc::string::String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A validated UTC date-time with second resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UtcDateTime {
    pub year: i32,
    pub month: u32,
    pub day: u32,
    pub hour: u32,
    pub minute: u32,
    pub second: u32,
}

impl UtcDateTime {
    pub fn new(year: i32, month: u32, day: u32, hour: u32, minute: u32, second: u32) -> Result<Self> {
        let key = MonthKey::new(year, month)?;
        if day == 0 || day > days_in_month(year, month) {
            return Err(Error::InvalidTimestamp(alloc::format!(
                "day {day} out of range for {key}"
            )));
        }
        if hour > 23 || minute > 59 || second > 59 {
            return Err(Error::InvalidTimestamp(alloc::format!(
                "time {hour:02}:{minute:02}:{second:02} out of range"
            )));
        }
        Ok(UtcDateTime { year, month, day, hour, minute, second })
    }

    pub fn month_key(&self) -> MonthKey {
        MonthKey { year: self.year, month: self.month }
    }
}

impl fmt::Display for UtcDateTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z",
            self.year, self.month, self.day, self.hour, self.minute, self.second
        )
    }
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 => {
            if is_leap_year(year) {
                29
            } else {
                28
            }
        }
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn month_key_ordering_and_next() {
        let dec = MonthKey::new(2014, 12).unwrap();
        let jan = dec.next();
        assert_eq!(jan, MonthKey::new(2015, 1).unwrap());
        assert!(dec < jan);
        assert_eq!(jan.months_since(dec), 1);
        assert_eq!(dec.months_since(jan), -1);
        assert_eq!(dec.plus_months(13), MonthKey::new(2016, 1).unwrap());
    }

    #[test]
    fn month_key_display_roundtrip() {
        let key = MonthKey::new(2014, 3).unwrap();
        assert_eq!(key.to_string(), "2014-03");
        assert_eq!("2014-03".parse::<MonthKey>().unwrap(), key);
        assert!("2014-13".parse::<MonthKey>().is_err());
        assert!("nope".parse::<MonthKey>().is_err());
    }

    #[test]
    fn datetime_validation() {
        assert!(UtcDateTime::new(2014, 2, 29, 0, 0, 0).is_err());
        assert!(UtcDateTime::new(2016, 2, 29, 0, 0, 0).is_ok());
        assert!(UtcDateTime::new(2014, 1, 1, 24, 0, 0).is_err());
        let dt = UtcDateTime::new(2014, 7, 15, 13, 5, 9).unwrap();
        assert_eq!(dt.to_string(), "2014-07-15T13:05:09Z");
        assert_eq!(dt.month_key(), MonthKey::new(2014, 7).unwrap());
    }

    #[test]
    fn leap_years() {
        assert!(is_leap_year(2016));
        assert!(!is_leap_year(2100));
        assert!(is_leap_year(2000));
        assert_eq!(days_in_month(2015, 2), 28);
        assert_eq!(days_in_month(2016, 2), 29);
    }
}
