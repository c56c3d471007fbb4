use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Parse { what: "parity", message: format!("{s:?}") }),
        }
    }
}

/// `(-1)^{a·b}` as a flag: true means the sign is negative.
pub fn koszul(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    L,
    G,
}

impl Kind {
    pub fn parity(self) -> Parity {
        match self {
            Kind::L => Parity::Even,
            Kind::G => Parity::Odd,
        }
    }

    /// The generator kind carrying the given parity.
    pub fn of_parity(p: Parity) -> Kind {
        match p {
            Parity::Even => Kind::L,
            Parity::Odd => Kind::G,
        }
    }
}

/// A generator `L_n` or `G_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisVector {
    pub kind: Kind,
    pub degree: i64,
}

impl BasisVector {
    pub fn l(n: i64) -> Self {
        BasisVector { kind: Kind::L, degree: n }
    }

    pub fn g(n: i64) -> Self {
        BasisVector { kind: Kind::G, degree: n }
    }

    pub fn new(kind: Kind, degree: i64) -> Self {
        BasisVector { kind, degree }
    }

    pub fn parity(&self) -> Parity {
        self.kind.parity()
    }

    pub fn is_odd(&self) -> bool {
        self.kind == Kind::G
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => 'L',
            Kind::G => 'G',
        };
        write!(f, "{k}[{}]", self.degree)
    }
}

impl FromStr for BasisVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse { what: "basis vector", message: format!("{s:?}") };
        let s = s.trim();
        let kind = match s.as_bytes().first() {
            Some(b'L') => Kind::L,
            Some(b'G') => Kind::G,
            _ => return Err(bad()),
        };
        let inner = s[1..].strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let degree = inner.trim().parse().map_err(|_| bad())?;
        Ok(BasisVector { kind, degree })
    }
}
