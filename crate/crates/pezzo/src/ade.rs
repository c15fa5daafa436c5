//! Du Val singularity type symbols: the A / D / E families with their index
//! ranges, plain-text parsing, and display.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeFamily {
    A,
    D,
    E,
}

/// A Du Val (rational double point) type: `A_n` (n >= 1), `D_n` (n >= 4),
/// or `E_6`, `E_7`, `E_8`. The index equals the number of exceptional
/// (-2)-curves in the minimal resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeType {
    family: AdeFamily,
    index: u32,
}

impl AdeType {
    pub fn new(family: AdeFamily, index: u32) -> Option<AdeType> {
        let valid = match family {
            AdeFamily::A => index >= 1,
            AdeFamily::D => index >= 4,
            AdeFamily::E => (6..=8).contains(&index),
        };
        valid.then_some(AdeType { family, index })
    }

    pub fn a(index: u32) -> AdeType {
        AdeType::new(AdeFamily::A, index).expect("A_n needs n >= 1")
    }

    pub fn d(index: u32) -> AdeType {
        AdeType::new(AdeFamily::D, index).expect("D_n needs n >= 4")
    }

    pub fn e(index: u32) -> AdeType {
        AdeType::new(AdeFamily::E, index).expect("E_n needs n in 6..=8")
    }

    pub fn family(&self) -> AdeFamily {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Number of vertices in the Dynkin diagram.
    pub fn rank(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            AdeFamily::A => 'A',
            AdeFamily::D => 'D',
            AdeFamily::E => 'E',
        };
        write!(f, "{}{}", fam, self.index)
    }
}

impl FromStr for AdeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::BadSymbol(s.to_owned());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => AdeFamily::A,
            Some('D') => AdeFamily::D,
            Some('E') => AdeFamily::E,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        AdeType::new(family, index).ok_or_else(bad)
    }
}
