//! Text and JSON forms of cochains and defect reports.
//!
//! Text layout: header lines `kind`, `parity`, `degree`, `window`, then one
//! line per stored coefficient `slot n p value` (2-cochains) or `slot k value`
//! (1-cochains). Undefined slots are written with the value `undefined`.

use serde::{Deserialize, Serialize};

use super::cochain::{Cochain1, Cochain2, Cochain3Defect};
use super::keys::{OneKey, PairKey, Slot3, Table};
use crate::error::{Error, Result};
use crate::qfield::{CoeffField, QRat, Symbolic};
use crate::qwitt::Parity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub slot: Table,
    pub n: i64,
    pub p: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain2Json {
    pub kind: String,
    pub parity: Parity,
    pub degree: i64,
    pub window: i64,
    pub entries: Vec<PairEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undefined: Vec<PairKey>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneEntry {
    pub slot: Table,
    pub k: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain1Json {
    pub kind: String,
    pub parity: Parity,
    pub degree: i64,
    pub entries: Vec<OneEntry>,
}

fn parse_err(what: &'static str, m: impl Into<String>) -> Error {
    Error::Parse { what, message: m.into() }
}

impl Cochain2<QRat> {
    pub fn to_json_value(&self) -> Cochain2Json {
        Cochain2Json {
            kind: "cochain2".into(),
            parity: self.parity,
            degree: self.degree,
            window: self.bound,
            entries: self.values().iter().map(|(k, v)| PairEntry { slot: k.table, n: k.n, p: k.p, value: v.to_string() }).collect(),
            undefined: self.undefined().iter().copied().collect(),
        }
    }

    pub fn from_json_value(j: &Cochain2Json) -> Result<Self> {
        if j.kind != "cochain2" {
            return Err(parse_err("cochain", format!("expected kind cochain2, got {}", j.kind)));
        }
        let f = Symbolic::new();
        let mut c = Cochain2::new(j.parity, j.degree, j.window);
        for e in &j.entries {
            check_pair_in_bound(e.n, e.p, j.window)?;
            c.set(&f, e.slot, e.n, e.p, e.value.parse()?)?;
        }
        for k in &j.undefined {
            c.mark_undefined(*k);
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: Cochain2Json = serde_json::from_str(s).map_err(|e| parse_err("cochain JSON", e.to_string()))?;
        Cochain2::from_json_value(&j)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind cochain2\nparity {}\ndegree {}\nwindow {}\n", self.parity, self.degree, self.bound);
        for (k, v) in self.values() {
            s.push_str(&format!("{} {} {} {}\n", k.table, k.n, k.p, v));
        }
        for k in self.undefined() {
            s.push_str(&format!("{} {} {} undefined\n", k.table, k.n, k.p));
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let h = Header::read(&mut lines, "cochain2", true)?;
        let f = Symbolic::new();
        let mut c = Cochain2::new(h.parity, h.degree, h.window);
        for line in lines {
            let mut it = line.splitn(4, ' ');
            let (Some(t), Some(n), Some(p), Some(v)) = (it.next(), it.next(), it.next(), it.next()) else {
                return Err(parse_err("cochain text", format!("bad entry line {line:?}")));
            };
            let table: Table = t.parse()?;
            let n: i64 = n.parse().map_err(|_| parse_err("cochain text", format!("bad index in {line:?}")))?;
            let p: i64 = p.parse().map_err(|_| parse_err("cochain text", format!("bad index in {line:?}")))?;
            check_pair_in_bound(n, p, h.window)?;
            if v.trim() == "undefined" {
                let (k, _) = PairKey::canonical(table, n, p).ok_or_else(|| parse_err("cochain text", "undefined diagonal a"))?;
                c.mark_undefined(k);
            } else {
                c.set(&f, table, n, p, v.parse()?)?;
            }
        }
        Ok(c)
    }
}

fn check_pair_in_bound(n: i64, p: i64, bound: i64) -> Result<()> {
    for k in [n, p] {
        if k.abs() > bound {
            return Err(Error::OutOfWindow { index: k, bound });
        }
    }
    Ok(())
}

struct Header {
    parity: Parity,
    degree: i64,
    window: i64,
}

impl Header {
    fn read<'a>(lines: &mut impl Iterator<Item = &'a str>, kind: &str, with_window: bool) -> Result<Header> {
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| parse_err("cochain text", format!("missing {name} line")))?;
            let rest = line.strip_prefix(name).ok_or_else(|| parse_err("cochain text", format!("expected {name}, got {line:?}")))?;
            Ok(rest.trim().to_string())
        };
        let k = field("kind")?;
        if k != kind {
            return Err(parse_err("cochain text", format!("expected kind {kind}, got {k}")));
        }
        let parity: Parity = field("parity")?.parse()?;
        let degree = field("degree")?.parse().map_err(|_| parse_err("cochain text", "bad degree"))?;
        let window = if with_window {
            field("window")?.parse().map_err(|_| parse_err("cochain text", "bad window"))?
        } else {
            0
        };
        Ok(Header { parity, degree, window })
    }
}

impl Cochain1<QRat> {
    pub fn to_json_value(&self) -> Cochain1Json {
        Cochain1Json {
            kind: "cochain1".into(),
            parity: self.parity,
            degree: self.degree,
            entries: self.values().iter().map(|(k, v)| OneEntry { slot: k.table, k: k.k, value: v.to_string() }).collect(),
        }
    }

    pub fn from_json_value(j: &Cochain1Json) -> Result<Self> {
        if j.kind != "cochain1" {
            return Err(parse_err("cochain", format!("expected kind cochain1, got {}", j.kind)));
        }
        let f = Symbolic::new();
        let mut g = Cochain1::new(j.parity, j.degree);
        for e in &j.entries {
            if e.slot == Table::C {
                return Err(parse_err("cochain", "1-cochains have no c table"));
            }
            g.set(&f, OneKey { table: e.slot, k: e.k }, e.value.parse()?);
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind cochain1\nparity {}\ndegree {}\n", self.parity, self.degree);
        for (k, v) in self.values() {
            s.push_str(&format!("{} {} {}\n", k.table, k.k, v));
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let h = Header::read(&mut lines, "cochain1", false)?;
        let f = Symbolic::new();
        let mut g = Cochain1::new(h.parity, h.degree);
        for line in lines {
            let mut it = line.splitn(3, ' ');
            let (Some(t), Some(k), Some(v)) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err("cochain text", format!("bad entry line {line:?}")));
            };
            let table: Table = t.parse()?;
            if table == Table::C {
                return Err(parse_err("cochain text", "1-cochains have no c table"));
            }
            let k: i64 = k.parse().map_err(|_| parse_err("cochain text", format!("bad index in {line:?}")))?;
            g.set(&f, OneKey { table, k }, v.parse()?);
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectEntry {
    pub slot: Slot3,
    pub indices: [i64; 3],
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub parity: Parity,
    pub degree: i64,
    pub checked: usize,
    pub skipped: usize,
    /// Empty means identically zero on the checked triples.
    pub defects: Vec<DefectEntry>,
}

impl<T: Clone + PartialEq> Cochain3Defect<T> {
    pub fn report<F: CoeffField<Elem = T>>(&self, f: &F) -> DefectReport {
        DefectReport {
            parity: self.parity,
            degree: self.degree,
            checked: self.checked,
            skipped: self.skipped,
            defects: self
                .values
                .iter()
                .map(|(k, v)| DefectEntry { slot: k.slot, indices: [k.n, k.m, k.p], value: f.render(v) })
                .collect(),
        }
    }
}
