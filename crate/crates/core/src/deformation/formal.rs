use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cochains::{pair_key, Cochain1, Cochain1Json, Cochain2, Cochain2Json, OneKey, PairKey, Window};
use crate::qfield::{CoeffField, QRat};
use crate::qwitt::{bracket_basis, BasisVector, Element, Parity};
use crate::{Error, Result};

fn out_of_window(window: &Window, degrees: &[i64]) -> Error {
    let index = degrees.iter().copied().max_by_key(|d| d.abs()).unwrap_or(0);
    Error::OutOfWindow { index, bound: window.n() }
}

/// An even bilinear map on the window, split into homogeneous degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBracket<T> {
    pub components: BTreeMap<i64, Cochain2<T>>,
    /// Slots whose value could not be computed inside the window.
    pub undefined: BTreeSet<PairKey>,
}

impl<T> Default for GradedBracket<T> {
    fn default() -> Self {
        GradedBracket { components: BTreeMap::new(), undefined: BTreeSet::new() }
    }
}

impl<T: Clone + PartialEq> GradedBracket<T> {
    pub fn is_zero(&self) -> bool {
        self.undefined.is_empty() && self.components.values().all(|c| c.is_zero())
    }

    /// Add `c` into the component of its degree.
    pub fn add_component<F: CoeffField<Elem = T>>(&mut self, f: &F, c: Cochain2<T>) -> Result<()> {
        if c.parity != Parity::Even {
            return Err(Error::Precondition("deformation brackets must be even".into()));
        }
        let entry = self.components.entry(c.degree);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(f, &c);
                o.insert(sum);
            }
        }
        Ok(())
    }

    /// Value on two generators; errors when the pair leaves the window or is undefined.
    pub fn eval<F: CoeffField<Elem = T>>(&self, f: &F, window: &Window, x: BasisVector, y: BasisVector) -> Result<Element<T>> {
        if !window.pair_in(x.degree, y.degree) {
            return Err(out_of_window(window, &[x.degree, y.degree, x.degree + y.degree]));
        }
        if let Some((k, _)) = pair_key(x, y) {
            if self.undefined.contains(&k) {
                return Err(out_of_window(window, &[x.degree, y.degree, x.degree + y.degree]));
            }
        }
        let mut r = Element::zero();
        for c in self.components.values() {
            r = r.add(f, &c.apply2(f, x, y)?);
        }
        Ok(r)
    }

    /// Whether `k` is defined and every component vanishes there.
    pub fn is_zero_at<F: CoeffField<Elem = T>>(&self, f: &F, k: &PairKey) -> bool {
        !self.undefined.contains(k) && self.components.values().all(|c| f.is_zero(&c.key_value(f, k)))
    }

    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> GradedBracket<QRat> {
        GradedBracket { components: self.components.iter().map(|(d, c)| (*d, c.lift(f))).collect(), undefined: self.undefined.clone() }
    }
}

/// An even linear map on the window generators, split into homogeneous degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<T> {
    pub components: BTreeMap<i64, Cochain1<T>>,
    pub undefined: BTreeSet<OneKey>,
}

impl<T> Default for GradedMap<T> {
    fn default() -> Self {
        GradedMap { components: BTreeMap::new(), undefined: BTreeSet::new() }
    }
}

impl<T: Clone + PartialEq> GradedMap<T> {
    pub fn is_zero(&self) -> bool {
        self.undefined.is_empty() && self.components.values().all(|c| c.is_zero())
    }

    pub fn add_component<F: CoeffField<Elem = T>>(&mut self, f: &F, g: Cochain1<T>) -> Result<()> {
        if g.parity != Parity::Even {
            return Err(Error::Precondition("automorphism components must be even".into()));
        }
        let sum = match self.components.remove(&g.degree) {
            Some(old) => old.add(f, &g),
            None => g,
        };
        self.components.insert(sum.degree, sum);
        Ok(())
    }

    pub fn eval<F: CoeffField<Elem = T>>(&self, f: &F, window: &Window, x: BasisVector) -> Result<Element<T>> {
        if !window.contains(x.degree) || self.undefined.contains(&OneKey::of(x)) {
            return Err(out_of_window(window, &[x.degree]));
        }
        let mut r = Element::zero();
        for g in self.components.values() {
            r = r.add(f, &g.apply(f, &Element::basis(f, x)));
        }
        Ok(r)
    }

    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> GradedMap<QRat> {
        GradedMap { components: self.components.iter().map(|(d, c)| (*d, c.lift(f))).collect(), undefined: self.undefined.clone() }
    }
}

impl GradedMap<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<GradedMap<F::Elem>> {
        let mut components = BTreeMap::new();
        for (d, c) in &self.components {
            components.insert(*d, c.specialize(f)?);
        }
        Ok(GradedMap { components, undefined: self.undefined.clone() })
    }
}

impl GradedBracket<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<GradedBracket<F::Elem>> {
        let mut components = BTreeMap::new();
        for (d, c) in &self.components {
            components.insert(*d, c.specialize(f)?);
        }
        Ok(GradedBracket { components, undefined: self.undefined.clone() })
    }
}

/// `[.,.]_t = Σ tⁱ [.,.]_i` up to `t^order`; `[.,.]_0` is the algebra bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedDeformation<T> {
    pub window: Window,
    /// `brackets[i - 1]` is `[.,.]_i`.
    pub brackets: Vec<GradedBracket<T>>,
}

impl<T: Clone + PartialEq> TruncatedDeformation<T> {
    /// The undeformed bracket, padded with zero terms up to `order`.
    pub fn trivial(window: Window, order: usize) -> Self {
        TruncatedDeformation { window, brackets: (0..order).map(|_| GradedBracket::default()).collect() }
    }

    /// Order one deformation with the given homogeneous components.
    pub fn first_order<F: CoeffField<Elem = T>>(f: &F, window: Window, parts: Vec<Cochain2<T>>) -> Result<Self> {
        let mut d = Self::trivial(window, 1);
        for c in parts {
            d.add_component(f, 1, c)?;
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.brackets.len()
    }

    pub fn add_component<F: CoeffField<Elem = T>>(&mut self, f: &F, level: usize, mut c: Cochain2<T>) -> Result<()> {
        if level == 0 || level > self.order() {
            return Err(Error::Precondition(format!("bracket level {level} outside 1..={}", self.order())));
        }
        c = c.restrict(|k| k.in_window(&self.window));
        c.bound = self.window.n();
        self.brackets[level - 1].add_component(f, c)
    }

    /// `[x, y]_level` on generators.
    pub fn bracket_at<F: CoeffField<Elem = T>>(&self, f: &F, level: usize, x: BasisVector, y: BasisVector) -> Result<Element<T>> {
        if level == 0 {
            return Ok(Element::from_opt(f, bracket_basis(f, x, y)));
        }
        self.brackets[level - 1].eval(f, &self.window, x, y)
    }

    /// `[u, v]_level` extended bilinearly; zero arguments never leave the window.
    pub fn bracket_elem<F: CoeffField<Elem = T>>(&self, f: &F, level: usize, u: &Element<T>, v: &Element<T>) -> Result<Element<T>> {
        let mut r = Element::zero();
        for (bx, cx) in u.terms() {
            for (by, cy) in v.terms() {
                let t = self.bracket_at(f, level, *bx, *by)?;
                r = r.add(f, &t.scale(f, &f.mul(cx, cy)));
            }
        }
        Ok(r)
    }

    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> TruncatedDeformation<QRat> {
        TruncatedDeformation { window: self.window, brackets: self.brackets.iter().map(|b| b.lift(f)).collect() }
    }
}

impl TruncatedDeformation<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<TruncatedDeformation<F::Elem>> {
        Ok(TruncatedDeformation { window: self.window, brackets: self.brackets.iter().map(|b| b.specialize(f)).collect::<Result<_>>()? })
    }
}

/// `φ_t = id + Σ tⁱ φ_i` up to `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedAutomorphism<T> {
    pub window: Window,
    /// `maps[i - 1]` is `φ_i`.
    pub maps: Vec<GradedMap<T>>,
}

impl<T: Clone + PartialEq> TruncatedAutomorphism<T> {
    pub fn identity(window: Window, order: usize) -> Self {
        TruncatedAutomorphism { window, maps: (0..order).map(|_| GradedMap::default()).collect() }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn add_component<F: CoeffField<Elem = T>>(&mut self, f: &F, level: usize, g: Cochain1<T>) -> Result<()> {
        if level == 0 || level > self.order() {
            return Err(Error::Precondition(format!("map level {level} outside 1..={}", self.order())));
        }
        self.maps[level - 1].add_component(f, g)
    }

    /// `φ_level(x)`, with `φ_0` the identity.
    pub fn map_at<F: CoeffField<Elem = T>>(&self, f: &F, level: usize, x: BasisVector) -> Result<Element<T>> {
        if level == 0 {
            return Ok(Element::basis(f, x));
        }
        self.maps[level - 1].eval(f, &self.window, x)
    }

    pub fn map_elem<F: CoeffField<Elem = T>>(&self, f: &F, level: usize, u: &Element<T>) -> Result<Element<T>> {
        let mut r = Element::zero();
        for (b, c) in u.terms() {
            r = r.add(f, &self.map_at(f, level, *b)?.scale(f, c));
        }
        Ok(r)
    }

    pub fn lift<F: CoeffField<Elem = T>>(&self, f: &F) -> TruncatedAutomorphism<QRat> {
        TruncatedAutomorphism { window: self.window, maps: self.maps.iter().map(|m| m.lift(f)).collect() }
    }
}

impl TruncatedAutomorphism<QRat> {
    pub fn specialize<F: CoeffField>(&self, f: &F) -> Result<TruncatedAutomorphism<F::Elem>> {
        Ok(TruncatedAutomorphism { window: self.window, maps: self.maps.iter().map(|m| m.specialize(f)).collect::<Result<_>>()? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationJson {
    pub kind: String,
    pub order: usize,
    pub window: i64,
    pub core: i64,
    /// Components of `[.,.]_1`, `[.,.]_2`, ...
    pub brackets: Vec<Vec<Cochain2Json>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undefined: Vec<Vec<PairKey>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub kind: String,
    pub order: usize,
    pub window: i64,
    pub core: i64,
    /// Components of `φ_1`, `φ_2`, ...
    pub maps: Vec<Vec<Cochain1Json>>,
}

fn parse_err(m: impl Into<String>) -> Error {
    Error::Parse { what: "deformation", message: m.into() }
}

impl TruncatedDeformation<QRat> {
    pub fn to_json_value(&self) -> DeformationJson {
        let undefined: Vec<Vec<PairKey>> = self.brackets.iter().map(|b| b.undefined.iter().copied().collect()).collect();
        DeformationJson {
            kind: "deformation".into(),
            order: self.order(),
            window: self.window.n(),
            core: self.window.core(),
            brackets: self.brackets.iter().map(|b| b.components.values().map(|c| c.to_json_value()).collect()).collect(),
            undefined: if undefined.iter().all(|u| u.is_empty()) { Vec::new() } else { undefined },
        }
    }

    pub fn from_json_value(j: &DeformationJson) -> Result<Self> {
        if j.kind != "deformation" {
            return Err(parse_err(format!("expected kind deformation, got {}", j.kind)));
        }
        if j.brackets.len() != j.order {
            return Err(parse_err(format!("order {} but {} bracket levels", j.order, j.brackets.len())));
        }
        let window = Window::new(j.window, j.core)?;
        let f = crate::qfield::Symbolic::new();
        let mut d = TruncatedDeformation::trivial(window, j.order);
        for (i, level) in j.brackets.iter().enumerate() {
            for c in level {
                d.add_component(&f, i + 1, Cochain2::from_json_value(c)?)?;
            }
        }
        for (i, u) in j.undefined.iter().enumerate() {
            let b = d.brackets.get_mut(i).ok_or_else(|| parse_err("undefined list longer than the order"))?;
            b.undefined.extend(u.iter().copied());
        }
        Ok(d)
    }

    /// Text form: `kind deformation`, `order k`, `window N core`, then one
    /// `@bracket i` line before each component in the cochain text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("kind deformation\norder {}\nwindow {} {}\n", self.order(), self.window.n(), self.window.core());
        for (i, b) in self.brackets.iter().enumerate() {
            for c in b.components.values() {
                let mut c = c.clone();
                for k in &b.undefined {
                    c.mark_undefined(*k);
                }
                s.push_str(&format!("@bracket {}\n{}", i + 1, c.to_text()));
            }
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let (header, blocks) = split_blocks(s, "@bracket")?;
        let (order, window) = read_header(&header, "deformation")?;
        let f = crate::qfield::Symbolic::new();
        let mut d = TruncatedDeformation::trivial(window, order);
        for (level, body) in blocks {
            let c = Cochain2::from_text(&body)?;
            let undefined: Vec<PairKey> = c.undefined().iter().copied().collect();
            d.add_component(&f, level, c)?;
            d.brackets[level - 1].undefined.extend(undefined);
        }
        Ok(d)
    }
}

impl TruncatedAutomorphism<QRat> {
    pub fn to_json_value(&self) -> AutomorphismJson {
        AutomorphismJson {
            kind: "automorphism".into(),
            order: self.order(),
            window: self.window.n(),
            core: self.window.core(),
            maps: self.maps.iter().map(|m| m.components.values().map(|g| g.to_json_value()).collect()).collect(),
        }
    }

    pub fn from_json_value(j: &AutomorphismJson) -> Result<Self> {
        if j.kind != "automorphism" {
            return Err(parse_err(format!("expected kind automorphism, got {}", j.kind)));
        }
        if j.maps.len() != j.order {
            return Err(parse_err(format!("order {} but {} map levels", j.order, j.maps.len())));
        }
        let f = crate::qfield::Symbolic::new();
        let mut a = TruncatedAutomorphism::identity(Window::new(j.window, j.core)?, j.order);
        for (i, level) in j.maps.iter().enumerate() {
            for g in level {
                a.add_component(&f, i + 1, Cochain1::from_json_value(g)?)?;
            }
        }
        Ok(a)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind automorphism\norder {}\nwindow {} {}\n", self.order(), self.window.n(), self.window.core());
        for (i, m) in self.maps.iter().enumerate() {
            for g in m.components.values() {
                s.push_str(&format!("@map {}\n{}", i + 1, g.to_text()));
            }
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let (header, blocks) = split_blocks(s, "@map")?;
        let (order, window) = read_header(&header, "automorphism")?;
        let f = crate::qfield::Symbolic::new();
        let mut a = TruncatedAutomorphism::identity(window, order);
        for (level, body) in blocks {
            a.add_component(&f, level, Cochain1::from_text(&body)?)?;
        }
        Ok(a)
    }
}

type Blocks = (Vec<String>, Vec<(usize, String)>);

fn split_blocks(s: &str, marker: &str) -> Result<Blocks> {
    let mut header = Vec::new();
    let mut blocks: Vec<(usize, String)> = Vec::new();
    for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(rest) = line.strip_prefix(marker) {
            let level = rest.trim().parse().map_err(|_| parse_err(format!("bad level in {line:?}")))?;
            blocks.push((level, String::new()));
        } else if let Some((_, body)) = blocks.last_mut() {
            body.push_str(line);
            body.push('\n');
        } else {
            header.push(line.to_string());
        }
    }
    Ok((header, blocks))
}

fn read_header(lines: &[String], kind: &str) -> Result<(usize, Window)> {
    let field = |i: usize, name: &str| -> Result<&str> {
        let l = lines.get(i).ok_or_else(|| parse_err(format!("missing {name} line")))?;
        l.strip_prefix(name).map(str::trim).ok_or_else(|| parse_err(format!("expected {name}, got {l:?}")))
    };
    if field(0, "kind")? != kind {
        return Err(parse_err(format!("expected kind {kind}")));
    }
    let order = field(1, "order")?.parse().map_err(|_| parse_err("bad order"))?;
    let w: Vec<i64> = field(2, "window")?.split_whitespace().map(|t| t.parse()).collect::<std::result::Result<_, _>>().map_err(|_| parse_err("bad window"))?;
    let window = match w.as_slice() {
        [n] => Window::with_default_core(*n)?,
        [n, c] => Window::new(*n, *c)?,
        _ => return Err(parse_err("window line takes N and an optional core")),
    };
    Ok((order, window))
}
