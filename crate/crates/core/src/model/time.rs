//! Integer-microsecond durations.
//!
//! All engine arithmetic happens on [`Micros`] so that a trace total is the
//! exact sum of its operators. Values cross the serialization boundary as
//! seconds and are rounded back to the nearest microsecond on the way in.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A non-negative duration in whole microseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Micros(pub u64);

impl Micros {
    pub const ZERO: Micros = Micros(0);

    /// Rounds a duration in seconds to the nearest microsecond.
    ///
    /// Returns `None` for negative, NaN or infinite input.
    pub fn from_secs_f64(secs: f64) -> Option<Micros> {
        if !secs.is_finite() || secs < 0.0 {
            return None;
        }
        let us = (secs * 1e6).round();
        if us > u64::MAX as f64 {
            return None;
        }
        Some(Micros(us as u64))
    }

    /// Scales by a real factor, rounding to the nearest microsecond.
    pub fn scale(self, factor: f64) -> Micros {
        Micros((self.0 as f64 * factor).round() as u64)
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / 1e6
    }

    pub fn as_micros(self) -> u64 {
        self.0
    }

    /// Signed difference `self - other` in microseconds.
    pub fn signed_diff(self, other: Micros) -> i64 {
        self.0 as i64 - other.0 as i64
    }
}

impl Add for Micros {
    type Output = Micros;
    fn add(self, rhs: Micros) -> Micros {
        Micros(self.0 + rhs.0)
    }
}

impl AddAssign for Micros {
    fn add_assign(&mut self, rhs: Micros) {
        self.0 += rhs.0;
    }
}

impl Sum for Micros {
    fn sum<I: Iterator<Item = Micros>>(iter: I) -> Micros {
        iter.fold(Micros::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Micros> for Micros {
    fn sum<I: Iterator<Item = &'a Micros>>(iter: I) -> Micros {
        iter.copied().sum()
    }
}

/// Seconds with exactly six decimals, e.g. `3.610000`.
impl fmt::Display for Micros {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:06}", self.0 / 1_000_000, self.0 % 1_000_000)
    }
}

/// Formats a signed microsecond delta as seconds with six decimals.
pub fn format_signed_micros(us: i64) -> String {
    let sign = if us < 0 { "-" } else { "" };
    let abs = us.unsigned_abs();
    format!("{sign}{}.{:06}", abs / 1_000_000, abs % 1_000_000)
}

impl Serialize for Micros {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_secs_f64())
    }
}

impl<'de> Deserialize<'de> for Micros {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Micros, D::Error> {
        let secs = f64::deserialize(deserializer)?;
        Micros::from_secs_f64(secs)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid duration {secs} s")))
    }
}
