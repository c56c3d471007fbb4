use std::collections::BTreeMap;

use super::basis::BasisVector;
use crate::error::{Error, Result};
use crate::qfield::{CoeffField, QRat};

/// Finite linear combination of generators with nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    terms: BTreeMap<BasisVector, T>,
}

impl<T: Clone> Default for Element<T> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<T: Clone + PartialEq> Element<T> {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn term<F: CoeffField<Elem = T>>(f: &F, b: BasisVector, c: T) -> Self {
        let mut e = Element::zero();
        e.add_term(f, b, c);
        e
    }

    pub fn basis<F: CoeffField<Elem = T>>(f: &F, b: BasisVector) -> Self {
        Element::term(f, b, f.one())
    }

    pub fn from_opt<F: CoeffField<Elem = T>>(f: &F, t: Option<(BasisVector, T)>) -> Self {
        match t {
            Some((b, c)) => Element::term(f, b, c),
            None => Element::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<BasisVector, T> {
        &self.terms
    }

    pub fn coeff(&self, b: &BasisVector) -> Option<&T> {
        self.terms.get(b)
    }

    pub fn add_term<F: CoeffField<Elem = T>>(&mut self, f: &F, b: BasisVector, c: T) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                *v = f.add(v, &c);
                if f.is_zero(v) {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut r = self.clone();
        for (b, c) in &o.terms {
            r.add_term(f, *b, c.clone());
        }
        r
    }

    pub fn sub<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.scale(f, &f.neg(&f.one())))
    }

    pub fn scale<F: CoeffField<Elem = T>>(&self, f: &F, k: &T) -> Self {
        let mut r = Element::zero();
        for (b, c) in &self.terms {
            r.add_term(f, *b, f.mul(c, k));
        }
        r
    }

    pub fn render<F: CoeffField<Elem = T>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms.iter().map(|(b, c)| format!("{} * {b}", f.render(c))).collect::<Vec<_>>().join(" + ")
    }
}

impl Element<QRat> {
    /// Parse the `c * L[n] + c * G[m]` format.
    pub fn parse(s: &str) -> Result<Self> {
        let f = crate::qfield::Symbolic::new();
        let s = s.trim();
        let mut e = Element::zero();
        if s == "0" {
            return Ok(e);
        }
        let bad = |m: &str| Error::Parse { what: "element", message: format!("{m} in {s:?}") };
        let mut rest = s;
        loop {
            let pos = [rest.find("* L["), rest.find("* G[")].into_iter().flatten().min().ok_or_else(|| bad("missing generator"))?;
            let coeff: QRat = rest[..pos].trim().parse()?;
            let after = &rest[pos + 2..];
            let close = after.find(']').ok_or_else(|| bad("unclosed bracket"))?;
            let b: BasisVector = after[..=close].parse()?;
            e.add_term(&f, b, coeff);
            let tail = after[close + 1..].trim_start();
            if tail.is_empty() {
                return Ok(e);
            }
            rest = tail.strip_prefix('+').ok_or_else(|| bad("expected '+'"))?;
        }
    }
}
