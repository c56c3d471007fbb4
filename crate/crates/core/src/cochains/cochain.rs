use std::collections::{BTreeMap, BTreeSet};

use super::keys::{one_target, pair_key, pair_target, OneKey, PairKey, Table, TripleKey};
use super::window::Window;
use crate::error::{Error, Result};
use crate::qfield::{CoeffField, QRat};
use crate::qwitt::{alpha_coeff, BasisVector, Element, Parity};

/// Homogeneous 1-cochain `g(L_k) = a_k X_{k+s}`, `g(G_k) = b_k Y_{k+s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain1<T> {
    pub parity: Parity,
    pub degree: i64,
    values: BTreeMap<OneKey, T>,
}

impl<T: Clone + PartialEq> Cochain1<T> {
    pub fn new(parity: Parity, degree: i64) -> Self {
        Cochain1 { parity, degree, values: BTreeMap::new() }
    }

    pub fn values(&self) -> &BTreeMap<OneKey, T> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get<F: CoeffField<Elem = T>>(&self, f: &F, key: OneKey) -> T {
        self.values.get(&key).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn a<F: CoeffField<Elem = T>>(&self, f: &F, k: i64) -> T {
        self.get(f, OneKey { table: Table::A, k })
    }

    pub fn b<F: CoeffField<Elem = T>>(&self, f: &F, k: i64) -> T {
        self.get(f, OneKey { table: Table::B, k })
    }

    pub fn set<F: CoeffField<Elem = T>>(&mut self, f: &F, key: OneKey, v: T) {
        if f.is_zero(&v) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn set_a<F: CoeffField<Elem = T>>(&mut self, f: &F, k: i64, v: T) {
        self.set(f, OneKey { table: Table::A, k }, v);
    }

    pub fn set_b<F: CoeffField<Elem = T>>(&mut self, f: &F, k: i64, v: T) {
        self.set(f, OneKey { table: Table::B, k }, v);
    }

    /// Largest `|k|` in the support.
    pub fn support_radius(&self) -> i64 {
        self.values.keys().map(|k| k.k.abs()).max().unwrap_or(0)
    }

    pub fn apply_basis<F: CoeffField<Elem = T>>(&self, _f: &F, x: BasisVector) -> Option<(BasisVector, T)> {
        let v = self.values.get(&OneKey::of(x))?;
        Some((one_target(self.parity, self.degree, x), v.clone()))
    }

    pub fn apply<F: CoeffField<Elem = T>>(&self, f: &F, x: &Element<T>) -> Element<T> {
        let mut r = Element::zero();
        for (b, c) in x.terms() {
            if let Some((t, v)) = self.apply_basis(f, *b) {
                r.add_term(f, t, f.mul(c, &v));
            }
        }
        r
    }

    pub fn add<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.values {
            let cur = r.get(f, *k);
            r.set(f, *k, f.add(&cur, v));
        }
        r
    }

    pub fn scale<F: CoeffField<Elem = T>>(&self, f: &F, c: &T) -> Self {
        let mut r = Cochain1::new(self.parity, self.degree);
        for (k, v) in &self.values {
            r.set(f, *k, f.mul(v, c));
        }
        r
    }

    pub fn try_map<U: Clone + PartialEq>(&self, g: impl Fn(&T) -> Result<U>, is_zero: impl Fn(&U) -> bool) -> Result<Cochain1<U>> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            let u = g(v)?;
            if !is_zero(&u) {
                values.insert(*k, u);
            }
        }
        Ok(Cochain1 { parity: self.parity, degree: self.degree, values })
    }

    /// `g(α x) - α(g(x))` on a generator.
    pub fn hom_compat_defect<F: CoeffField<Elem = T>>(&self, f: &F, x: BasisVector) -> Element<T> {
        match self.apply_basis(f, x) {
            None => Element::zero(),
            Some((t, v)) => {
                let k = f.sub(&alpha_coeff(f, x), &alpha_coeff(f, t));
                Element::term(f, t, f.mul(&v, &k))
            }
        }
    }
}

impl Cochain1<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<Cochain1<F::Elem>> {
        self.try_map(|v| f.from_qrat(v), |u| f.is_zero(u))
    }
}

impl<T: Clone + PartialEq> Cochain1<T> {
    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> Cochain1<QRat> {
        self.try_map(|v| Ok(f.to_qrat(v)), |u| u.is_zero()).expect("lifting is infallible")
    }
}

/// The identity map as an even degree-0 1-cochain on `[-bound, bound]`.
pub fn identity_cochain<F: CoeffField>(f: &F, bound: i64) -> Cochain1<F::Elem> {
    let mut g = Cochain1::new(Parity::Even, 0);
    for k in -bound..=bound {
        g.set_a(f, k, f.one());
        g.set_b(f, k, f.one());
    }
    g
}

/// Homogeneous super-antisymmetric 2-cochain stored on canonical keys.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2<T> {
    pub parity: Parity,
    pub degree: i64,
    /// Window bound `N` the cochain lives on.
    pub bound: i64,
    values: BTreeMap<PairKey, T>,
    undefined: BTreeSet<PairKey>,
}

impl<T: Clone + PartialEq> Cochain2<T> {
    pub fn new(parity: Parity, degree: i64, bound: i64) -> Self {
        Cochain2 { parity, degree, bound, values: BTreeMap::new(), undefined: BTreeSet::new() }
    }

    pub fn values(&self) -> &BTreeMap<PairKey, T> {
        &self.values
    }

    pub fn undefined(&self) -> &BTreeSet<PairKey> {
        &self.undefined
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mark_undefined(&mut self, key: PairKey) {
        self.values.remove(&key);
        self.undefined.insert(key);
    }

    pub fn is_defined(&self, key: &PairKey) -> bool {
        !self.undefined.contains(key)
    }

    pub fn window(&self) -> Window {
        Window::new(self.bound.max(1), 0).expect("bound is positive")
    }

    pub fn key_value<F: CoeffField<Elem = T>>(&self, f: &F, key: &PairKey) -> T {
        self.values.get(key).cloned().unwrap_or_else(|| f.zero())
    }

    /// Read a table entry in any index order.
    pub fn get<F: CoeffField<Elem = T>>(&self, f: &F, table: Table, n: i64, p: i64) -> T {
        match PairKey::canonical(table, n, p) {
            None => f.zero(),
            Some((k, neg)) => f.sign(&self.key_value(f, &k), neg),
        }
    }

    /// Write a table entry in any index order.
    pub fn set<F: CoeffField<Elem = T>>(&mut self, f: &F, table: Table, n: i64, p: i64, v: T) -> Result<()> {
        match PairKey::canonical(table, n, p) {
            None if f.is_zero(&v) => Ok(()),
            None => Err(Error::Precondition(format!("a[{n},{n}] must vanish"))),
            Some((k, neg)) => {
                self.set_key(f, k, f.sign(&v, neg));
                Ok(())
            }
        }
    }

    pub fn set_key<F: CoeffField<Elem = T>>(&mut self, f: &F, k: PairKey, v: T) {
        if f.is_zero(&v) {
            self.values.remove(&k);
        } else {
            self.values.insert(k, v);
        }
    }

    fn check_bound(&self, x: BasisVector) -> Result<()> {
        if x.degree.abs() > self.bound {
            return Err(Error::OutOfWindow { index: x.degree, bound: self.bound });
        }
        Ok(())
    }

    /// Value `f(x, y)` as a single term.
    pub fn apply_basis<F: CoeffField<Elem = T>>(&self, f: &F, x: BasisVector, y: BasisVector) -> Result<Option<(BasisVector, T)>> {
        self.check_bound(x)?;
        self.check_bound(y)?;
        let Some((k, neg)) = pair_key(x, y) else { return Ok(None) };
        if self.undefined.contains(&k) {
            return Err(Error::OutOfWindow { index: x.degree + y.degree, bound: self.bound });
        }
        Ok(self.values.get(&k).map(|v| (pair_target(self.parity, self.degree, x, y), f.sign(v, neg))))
    }

    pub fn apply2<F: CoeffField<Elem = T>>(&self, f: &F, x: BasisVector, y: BasisVector) -> Result<Element<T>> {
        Ok(Element::from_opt(f, self.apply_basis(f, x, y)?))
    }

    /// `f(α x, α y) - α(f(x, y))`.
    pub fn hom_compat_defect<F: CoeffField<Elem = T>>(&self, f: &F, x: BasisVector, y: BasisVector) -> Result<Element<T>> {
        Ok(match self.apply_basis(f, x, y)? {
            None => Element::zero(),
            Some((t, v)) => {
                let k = f.sub(&f.mul(&alpha_coeff(f, x), &alpha_coeff(f, y)), &alpha_coeff(f, t));
                Element::term(f, t, f.mul(&v, &k))
            }
        })
    }

    pub fn add<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.values {
            let cur = r.key_value(f, k);
            r.set_key(f, *k, f.add(&cur, v));
        }
        r.undefined.extend(o.undefined.iter().copied());
        for k in &r.undefined.clone() {
            r.values.remove(k);
        }
        r
    }

    pub fn sub<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.scale(f, &f.neg(&f.one())))
    }

    pub fn scale<F: CoeffField<Elem = T>>(&self, f: &F, c: &T) -> Self {
        let mut r = Cochain2::new(self.parity, self.degree, self.bound);
        for (k, v) in &self.values {
            r.set_key(f, *k, f.mul(v, c));
        }
        r.undefined = self.undefined.clone();
        r
    }

    /// Keep only entries whose key satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&PairKey) -> bool) -> Self {
        let mut r = self.clone();
        r.values.retain(|k, _| keep(k));
        r.undefined.retain(|k| keep(k));
        r
    }

    pub fn try_map<U: Clone + PartialEq>(&self, g: impl Fn(&T) -> Result<U>, is_zero: impl Fn(&U) -> bool) -> Result<Cochain2<U>> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            let u = g(v)?;
            if !is_zero(&u) {
                values.insert(*k, u);
            }
        }
        Ok(Cochain2 { parity: self.parity, degree: self.degree, bound: self.bound, values, undefined: self.undefined.clone() })
    }

    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> Cochain2<QRat> {
        self.try_map(|v| Ok(f.to_qrat(v)), |u| u.is_zero()).expect("lifting is infallible")
    }
}

impl Cochain2<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<Cochain2<F::Elem>> {
        self.try_map(|v| f.from_qrat(v), |u| f.is_zero(u))
    }
}

/// Canonical keys of all pairs inside the window, in column order.
pub fn window_pair_keys(w: &Window) -> Vec<PairKey> {
    let n = w.n();
    let mut v = Vec::new();
    for table in [Table::A, Table::B, Table::C] {
        for a in -n..=n {
            for b in -n..=n {
                if !w.pair_in(a, b) {
                    continue;
                }
                if let Some((k, false)) = PairKey::canonical(table, a, b) {
                    if k.n == a {
                        v.push(k);
                    }
                }
            }
        }
    }
    v
}

/// Keys of all 1-cochain unknowns with `|k| <= bound`, `a` block first.
pub fn one_keys(bound: i64) -> Vec<OneKey> {
    let mut v: Vec<OneKey> = (-bound..=bound).map(|k| OneKey { table: Table::A, k }).collect();
    v.extend((-bound..=bound).map(|k| OneKey { table: Table::B, k }));
    v
}

/// Nonzero values of a 3-argument evaluation, keyed by canonical triples.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain3Defect<T> {
    pub parity: Parity,
    pub degree: i64,
    pub values: BTreeMap<TripleKey, T>,
    /// Number of triples that were defined and evaluated.
    pub checked: usize,
    /// Number of triples skipped because they reference undefined slots.
    pub skipped: usize,
}

impl<T: Clone + PartialEq> Cochain3Defect<T> {
    pub fn new(parity: Parity, degree: i64) -> Self {
        Cochain3Defect { parity, degree, values: BTreeMap::new(), checked: 0, skipped: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> Option<(&TripleKey, &T)> {
        self.values.iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::Symbolic;

    #[test]
    fn apply2_examples() {
        let f = Symbolic::new();
        let (l, g) = (BasisVector::l, BasisVector::g);
        let mut c = Cochain2::new(Parity::Even, 0, 6);
        c.set(&f, Table::A, 1, 2, QRat::q()).unwrap();
        assert_eq!(c.apply2(&f, l(2), l(1)).unwrap(), Element::term(&f, l(3), -QRat::q()));

        let mut c = Cochain2::new(Parity::Even, 2, 6);
        c.set(&f, Table::C, 0, 0, QRat::one()).unwrap();
        assert_eq!(c.apply2(&f, g(0), g(0)).unwrap(), Element::basis(&f, l(2)));

        let mut c = Cochain2::new(Parity::Odd, 1, 6);
        c.set(&f, Table::B, 1, 0, QRat::one()).unwrap();
        assert_eq!(c.apply2(&f, l(1), g(0)).unwrap(), Element::basis(&f, l(2)));
        assert_eq!(c.apply2(&f, g(0), l(1)).unwrap(), Element::term(&f, l(2), -QRat::one()));
        assert!(matches!(c.apply2(&f, l(7), g(0)), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn canonical_storage_round_trip() {
        let f = Symbolic::new();
        let mut c = Cochain2::new(Parity::Even, 0, 4);
        c.set(&f, Table::A, 3, -1, QRat::from_int(5)).unwrap();
        c.set(&f, Table::C, 2, -2, QRat::from_int(7)).unwrap();
        assert_eq!(c.get(&f, Table::A, -1, 3), QRat::from_int(-5));
        assert_eq!(c.get(&f, Table::C, -2, 2), QRat::from_int(7));
        assert!(c.set(&f, Table::A, 1, 1, QRat::one()).is_err());
        assert!(c.get(&f, Table::A, 2, 2).is_zero());
    }

    #[test]
    fn hom_compat_examples() {
        let f = Symbolic::new();
        let l = BasisVector::l;
        let z: Cochain2<QRat> = Cochain2::new(Parity::Even, 0, 6);
        assert!(z.hom_compat_defect(&f, l(1), l(2)).unwrap().is_zero());
        let mut c = Cochain2::new(Parity::Even, 0, 6);
        c.set(&f, Table::A, 1, 2, QRat::one()).unwrap();
        let want = &(&QRat::one_plus_q_pow(1) * &QRat::one_plus_q_pow(2)) - &QRat::one_plus_q_pow(3);
        assert_eq!(c.hom_compat_defect(&f, l(1), l(2)).unwrap(), Element::term(&f, l(3), want));
        assert!(c.hom_compat_defect(&f, l(0), l(2)).unwrap().is_zero());
    }

    #[test]
    fn window_keys_are_sorted_and_in_window() {
        let w = Window::new(3, 0).unwrap();
        let keys = window_pair_keys(&w);
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
        assert!(keys.iter().all(|k| k.in_window(&w)));
        // hexagon |n|,|p|,|n+p| <= 3 has 37 pairs, 3 of them diagonal
        assert_eq!(keys.len(), 17 + 37 + 20);
    }
}
