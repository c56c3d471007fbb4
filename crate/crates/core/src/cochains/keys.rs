//! Canonical coefficient labels and the sign rules that map an ordered pair of
//! generators onto them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::window::Window;
use crate::error::Error;
use crate::qwitt::{BasisVector, Kind, Parity};

/// Coefficient table of a cochain: `a` (L inputs), `b` (mixed), `c` (G,G).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    A,
    B,
    C,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::A => "a",
            Table::B => "b",
            Table::C => "c",
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Table {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "a" => Ok(Table::A),
            "b" => Ok(Table::B),
            "c" => Ok(Table::C),
            _ => Err(Error::Parse { what: "table", message: format!("{s:?}") }),
        }
    }
}

/// Canonical unknown of a 2-cochain: `a` with `n < p`, `b` any, `c` with `n <= p`.
/// The derived order is the documented column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairKey {
    pub table: Table,
    pub n: i64,
    pub p: i64,
}

impl PairKey {
    /// Canonicalize `(table, n, p)`; returns the key and whether the stored
    /// value must be negated. `None` for the structurally zero `a_{n,n}`.
    pub fn canonical(table: Table, n: i64, p: i64) -> Option<(PairKey, bool)> {
        match table {
            Table::A if n == p => None,
            Table::A if n > p => Some((PairKey { table, n: p, p: n }, true)),
            Table::C if n > p => Some((PairKey { table, n: p, p: n }, false)),
            _ => Some((PairKey { table, n, p }, false)),
        }
    }

    /// The ordered pair of generators whose value this key stores.
    pub fn inputs(&self) -> (BasisVector, BasisVector) {
        match self.table {
            Table::A => (BasisVector::l(self.n), BasisVector::l(self.p)),
            Table::B => (BasisVector::l(self.n), BasisVector::g(self.p)),
            Table::C => (BasisVector::g(self.n), BasisVector::g(self.p)),
        }
    }

    pub fn in_window(&self, w: &Window) -> bool {
        w.pair_in(self.n, self.p)
    }

    pub fn in_core(&self, w: &Window) -> bool {
        w.pair_in_core(self.n, self.p)
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.table, self.n, self.p)
    }
}

/// Key and sign of `f(x, y)` for a super-antisymmetric 2-cochain.
pub fn pair_key(x: BasisVector, y: BasisVector) -> Option<(PairKey, bool)> {
    match (x.kind, y.kind) {
        (Kind::L, Kind::L) => PairKey::canonical(Table::A, x.degree, y.degree),
        (Kind::L, Kind::G) => PairKey::canonical(Table::B, x.degree, y.degree),
        // f(G_n, L_p) = -f(L_p, G_n)
        (Kind::G, Kind::L) => Some((PairKey { table: Table::B, n: y.degree, p: x.degree }, true)),
        (Kind::G, Kind::G) => PairKey::canonical(Table::C, x.degree, y.degree),
    }
}

/// Generator that `f(x, y)` is a multiple of.
pub fn pair_target(parity: Parity, s: i64, x: BasisVector, y: BasisVector) -> BasisVector {
    let k = Kind::of_parity(x.parity() + y.parity() + parity);
    BasisVector::new(k, x.degree + y.degree + s)
}

/// Unknown of a 1-cochain: `a_k` (input `L_k`) or `b_k` (input `G_k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneKey {
    pub table: Table,
    pub k: i64,
}

impl OneKey {
    pub fn of(x: BasisVector) -> OneKey {
        match x.kind {
            Kind::L => OneKey { table: Table::A, k: x.degree },
            Kind::G => OneKey { table: Table::B, k: x.degree },
        }
    }

    pub fn input(&self) -> BasisVector {
        match self.table {
            Table::B => BasisVector::g(self.k),
            _ => BasisVector::l(self.k),
        }
    }
}

impl fmt::Display for OneKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.table, self.k)
    }
}

/// Generator that `g(x)` is a multiple of.
pub fn one_target(parity: Parity, s: i64, x: BasisVector) -> BasisVector {
    BasisVector::new(Kind::of_parity(x.parity() + parity), x.degree + s)
}

/// Argument pattern of a 3-slot evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot3 {
    LLL,
    LLG,
    LGG,
    GGG,
}

impl Slot3 {
    pub const ALL: [Slot3; 4] = [Slot3::LLL, Slot3::LLG, Slot3::LGG, Slot3::GGG];

    pub fn kinds(self) -> [Kind; 3] {
        match self {
            Slot3::LLL => [Kind::L, Kind::L, Kind::L],
            Slot3::LLG => [Kind::L, Kind::L, Kind::G],
            Slot3::LGG => [Kind::L, Kind::G, Kind::G],
            Slot3::GGG => [Kind::G, Kind::G, Kind::G],
        }
    }
}

impl fmt::Display for Slot3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Canonically ordered argument triple of a δ² value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleKey {
    pub slot: Slot3,
    pub n: i64,
    pub m: i64,
    pub p: i64,
}

impl TripleKey {
    pub fn inputs(&self) -> (BasisVector, BasisVector, BasisVector) {
        let [a, b, c] = self.slot.kinds();
        (BasisVector::new(a, self.n), BasisVector::new(b, self.m), BasisVector::new(c, self.p))
    }

    /// Representatives modulo super-antisymmetry: `LLL` with `n<m<p`, `LLG`
    /// with `n<m`, `LGG` with `m<=p`, `GGG` with `n<=m<=p`.
    pub fn is_canonical(&self) -> bool {
        match self.slot {
            Slot3::LLL => self.n < self.m && self.m < self.p,
            Slot3::LLG => self.n < self.m,
            Slot3::LGG => self.m <= self.p,
            Slot3::GGG => self.n <= self.m && self.m <= self.p,
        }
    }

    /// All canonical triples with indices in `[-bound, bound]`, in order.
    pub fn enumerate(bound: i64) -> Vec<TripleKey> {
        let mut v = Vec::new();
        for slot in Slot3::ALL {
            for n in -bound..=bound {
                for m in -bound..=bound {
                    for p in -bound..=bound {
                        let t = TripleKey { slot, n, m, p };
                        if t.is_canonical() {
                            v.push(t);
                        }
                    }
                }
            }
        }
        v
    }
}

impl fmt::Display for TripleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{})", self.slot, self.n, self.m, self.p)
    }
}
