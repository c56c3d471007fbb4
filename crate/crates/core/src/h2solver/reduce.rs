//! Constructive reductions `h = f - δ¹g` following the printed recipes, with
//! a linear-solve fallback on the core when a recipe leaves a residual.

use serde::{Deserialize, Serialize};

use crate::coboundary::{d1, d1_form, d2};
use crate::cochains::{one_keys, window_pair_keys, Cochain1, Cochain1Json, Cochain2, Cochain2Json, OneKey, PairKey, Table, Window};
use crate::linalg::{kernel, Exact, Row};
use crate::qfield::CoeffField;
use crate::qwitt::Parity;
use crate::{Error, Result};

/// Which printed construction a sector uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    /// `g(L_p) = f(L_0,L_p)/(q^p{s})`-type division, sectors away from the exceptional degrees.
    Generic,
    EvenS0,
    EvenS2,
    OddS1,
    OddSm1,
}

impl Recipe {
    pub fn for_sector(parity: Parity, s: i64) -> Recipe {
        match (parity, s) {
            (Parity::Even, 0) => Recipe::EvenS0,
            (Parity::Even, 2) => Recipe::EvenS2,
            (Parity::Odd, 1) => Recipe::OddS1,
            (Parity::Odd, -1) => Recipe::OddSm1,
            _ => Recipe::Generic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Generic => "generic",
            Recipe::EvenS0 => "even-s0",
            Recipe::EvenS2 => "even-s2",
            Recipe::OddS1 => "odd-s1",
            Recipe::OddSm1 => "odd-s-1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// The printed recipe alone produced a residual vanishing on the core.
    Printed,
    /// The recipe left a residual; `g` was obtained by solving `δ¹g = f` on the core.
    LinearSolve,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Fail with [`Error::ResidualNonzero`] instead of falling back.
    pub strict: bool,
}

/// A vanishing condition the recipe is designed to enforce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub stage: usize,
    pub key: PairKey,
    pub holds: bool,
    pub value: String,
}

/// A core coefficient left nonzero by the printed recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub key: PairKey,
    pub value: String,
}

/// `f`, `g` and the residual `h = f - δ¹g`, zero on the declared set.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<T> {
    pub recipe: Recipe,
    pub method: Method,
    pub window: Window,
    pub f: Cochain2<T>,
    pub g: Cochain1<T>,
    pub residual: Cochain2<T>,
    /// The `g` built by the printed recipe, when the fallback replaced it.
    pub printed_g: Option<Cochain1<T>>,
    pub zero_on: String,
    pub checks: Vec<LemmaCheck>,
    pub discrepancies: Vec<ResidualEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub recipe: Recipe,
    pub method: Method,
    pub window: i64,
    pub core: i64,
    pub f: Cochain2Json,
    pub g: Cochain1Json,
    pub residual: Cochain2Json,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_g: Option<Cochain1Json>,
    pub zero_on: String,
    pub checks: Vec<LemmaCheck>,
    pub discrepancies: Vec<ResidualEntry>,
}

impl<T: Clone + PartialEq> Certificate<T> {
    pub fn to_json_value<F: CoeffField<Elem = T>>(&self, f: &F) -> CertificateJson {
        CertificateJson {
            recipe: self.recipe,
            method: self.method,
            window: self.window.n(),
            core: self.window.core(),
            f: self.f.lift(f).to_json_value(),
            g: self.g.lift(f).to_json_value(),
            residual: self.residual.lift(f).to_json_value(),
            printed_g: self.printed_g.as_ref().map(|g| g.lift(f).to_json_value()),
            zero_on: self.zero_on.clone(),
            checks: self.checks.clone(),
            discrepancies: self.discrepancies.clone(),
        }
    }

    /// Recompute `f - δ¹g` with the generic operator and confirm it vanishes on the core.
    pub fn verify<F: CoeffField<Elem = T>>(&self, f: &F) -> bool {
        let h = residual(f, &self.f, &self.g, &self.window);
        core_keys(&self.window).iter().all(|k| f.is_zero(&h.key_value(f, k)))
    }
}

fn core_keys(w: &Window) -> Vec<PairKey> {
    window_pair_keys(w).into_iter().filter(|k| k.in_core(w)).collect()
}

/// `f - δ¹g` on the window pairs.
pub fn residual<F: CoeffField>(f: &F, c: &Cochain2<F::Elem>, g: &Cochain1<F::Elem>, window: &Window) -> Cochain2<F::Elem> {
    let c = c.restrict(|k| k.in_window(window));
    let mut c = c;
    c.bound = window.n();
    c.sub(f, &d1(f, g, window))
}

/// Reads of `f` that refuse to leave the window.
struct Reader<'a, F: CoeffField> {
    f: &'a F,
    c: &'a Cochain2<F::Elem>,
    window: Window,
}

impl<F: CoeffField> Reader<'_, F> {
    fn get(&self, table: Table, n: i64, p: i64) -> Result<F::Elem> {
        if !self.window.pair_in(n, p) {
            let index = n.abs().max(p.abs()).max((n + p).abs());
            return Err(Error::RecursionOutOfWindow { index, bound: self.window.n() });
        }
        Ok(self.c.get(self.f, table, n, p))
    }

    fn ll(&self, n: i64, p: i64) -> Result<F::Elem> {
        self.get(Table::A, n, p)
    }

    fn lg(&self, n: i64, p: i64) -> Result<F::Elem> {
        self.get(Table::B, n, p)
    }
}

/// Small arithmetic helpers over a coefficient context.
struct Ar<'a, F: CoeffField>(&'a F);

impl<F: CoeffField> Ar<'_, F> {
    fn d(&self, a: i64, b: i64) -> F::Elem {
        self.0.qdiff(a, b)
    }
    fn q(&self, n: i64) -> F::Elem {
        self.0.q_pow(n)
    }
    fn n(&self, n: i64) -> F::Elem {
        self.0.qnum(n)
    }
    fn c(&self, n: i64) -> F::Elem {
        self.0.from_i64(n)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn div(&self, a: &F::Elem, b: &F::Elem, what: &str) -> Result<F::Elem> {
        self.0.div_ctx(a, b, what)
    }
    /// `q^a - q^b`.
    fn qq(&self, a: i64, b: i64) -> F::Elem {
        self.sub(&self.q(a), &self.q(b))
    }
}

fn check_sector(recipe: Recipe, parity: Parity, s: i64) -> Result<()> {
    let ok = match recipe {
        Recipe::Generic => Recipe::for_sector(parity, s) == Recipe::Generic,
        r => Recipe::for_sector(parity, s) == r,
    };
    if ok {
        return Ok(());
    }
    let expected = match recipe {
        Recipe::Generic => "even with s not in {0, 2}, or odd with s not in {1, -1}".to_string(),
        Recipe::EvenS0 => "even, s = 0".into(),
        Recipe::EvenS2 => "even, s = 2".into(),
        Recipe::OddS1 => "odd, s = 1".into(),
        Recipe::OddSm1 => "odd, s = -1".into(),
    };
    Err(Error::WrongSector { parity: parity.to_string(), s, expected })
}

fn check_cocycle<F: CoeffField>(f: &F, c: &Cochain2<F::Elem>, window: &Window) -> Result<()> {
    let mut c = c.restrict(|k| k.in_window(window));
    c.bound = window.n();
    let d = d2(f, &c, window);
    if let Some((t, v)) = d.values.iter().next() {
        return Err(Error::Precondition(format!("input is not a window cocycle: δ²f{t} = {}", f.render(v))));
    }
    Ok(())
}

/// Generic division recipe for `g` at every window index.
fn generic_g<F: CoeffField>(f: &F, rd: &Reader<'_, F>, parity: Parity, s: i64, source: Option<&Cochain2<F::Elem>>) -> Result<Cochain1<F::Elem>> {
    let ar = Ar(f);
    let nn = rd.window.n();
    let mut g = Cochain1::new(parity, s);
    let (sl, sg) = if parity.is_odd() { (s + 1, s - 1) } else { (s, s) };
    let read = |t: Table, p: i64| -> Result<F::Elem> {
        match source {
            Some(h) => Ok(h.get(f, t, 0, p)),
            None => rd.get(t, 0, p),
        }
    };
    for p in -nn..=nn {
        let den_l = ar.mul(&ar.q(p), &ar.n(sl));
        g.set_a(f, p, ar.div(&read(Table::A, p)?, &den_l, &format!("q^{p}{{{sl}}}"))?);
        let den_g = ar.mul(&ar.q(p + 1), &ar.n(sg));
        g.set_b(f, p, ar.div(&read(Table::B, p)?, &den_g, &format!("q^{}{{{sg}}}", p + 1))?);
    }
    Ok(g)
}

fn range_bound(window: &Window) -> i64 {
    window.core().max(2)
}

fn even_s0_g<F: CoeffField>(f: &F, rd: &Reader<'_, F>) -> Result<Cochain1<F::Elem>> {
    let ar = Ar(f);
    let r = range_bound(&rd.window);
    let mut a = std::collections::BTreeMap::new();
    a.insert(1, f.zero());
    a.insert(0, rd.ll(0, 1)?);
    for n in (-r..=-1).rev() {
        let t = ar.div(&rd.ll(n, 1)?, &ar.d(1, n), "{1}-{n}")?;
        a.insert(n, ar.add(&a[&(n + 1)], &t));
    }
    let t = ar.div(&rd.ll(-1, 2)?, &ar.d(2, -1), "{2}-{-1}")?;
    a.insert(2, ar.sub(&t, &a[&-1]));
    for n in 2..r {
        let t = ar.div(&rd.ll(n, 1)?, &ar.d(n, 1), "{n}-{1}")?;
        a.insert(n + 1, ar.add(&a[&n], &t));
    }
    let mut b = std::collections::BTreeMap::new();
    b.insert(0, f.zero());
    for m in (-r..=-1).rev() {
        let t = ar.div(&rd.lg(1, m)?, &ar.d(1, m + 1), "{1}-{m+1}")?;
        b.insert(m, ar.sub(&b[&(m + 1)], &t));
    }
    let t = ar.div(&rd.lg(-1, 1)?, &ar.d(-1, 2), "{-1}-{2}")?;
    b.insert(1, ar.sub(&f.neg(&a[&-1]), &t));
    for m in 1..r {
        let t = ar.div(&rd.lg(1, m)?, &ar.d(1, m + 1), "{1}-{m+1}")?;
        b.insert(m + 1, ar.add(&b[&m], &t));
    }
    Ok(assemble(f, Parity::Even, 0, a, b))
}

fn odd_s1_g<F: CoeffField>(f: &F, rd: &Reader<'_, F>) -> Result<Cochain1<F::Elem>> {
    let ar = Ar(f);
    let r = range_bound(&rd.window);
    let (fm11, f01, f2m1) = (rd.ll(-1, 1)?, rd.ll(0, 1)?, rd.ll(2, -1)?);
    let mut a = std::collections::BTreeMap::new();
    a.insert(-1, f.zero());
    let a1 = ar.add(&ar.div(&fm11, &ar.qq(2, 0), "q^2-1")?, &ar.div(&f01, &ar.qq(2, 3), "q^2-q^3")?);
    a.insert(1, a1.clone());
    for n in (-r..=-2).rev() {
        let num = ar.add(&ar.sub(&ar.mul(&ar.d(3, n), &a1), &rd.ll(n, 1)?), &ar.mul(&ar.d(n, 1), &a[&(n + 1)]));
        a.insert(n, ar.div(&num, &ar.d(n + 2, 1), "{n+2}-{1}")?);
    }
    let a0 = ar.add(
        &ar.div(&fm11, &ar.qq(1, 0), "q-1")?,
        &ar.mul(&ar.div(&ar.add(&ar.c(1), &ar.q(-2)), &ar.sub(&ar.c(1), &ar.q(1)), "1-q")?, &f01),
    );
    a.insert(0, a0);
    let t1 = ar.mul(&ar.div(&ar.sub(&ar.c(1), &ar.q(1)), &ar.qq(4, -1), "q^4-q^-1")?, &f2m1);
    let k = ar.qq(3, 0);
    let t2 = ar.mul(&ar.div(&k, &ar.mul(&ar.qq(5, 0), &ar.qq(2, 0)), "(q^5-1)(q^2-1)")?, &fm11);
    let t3 = ar.mul(&ar.div(&k, &ar.mul(&ar.qq(5, 0), &ar.qq(3, 2)), "(q^5-1)(q^3-q^2)")?, &f01);
    a.insert(2, ar.sub(&ar.add(&t1, &t2), &t3));
    for n in 2..r {
        let num = ar.add(&ar.sub(&rd.ll(n, 1)?, &ar.mul(&ar.d(3, n), &a1)), &ar.mul(&ar.d(n + 2, 1), &a[&n]));
        a.insert(n + 1, ar.div(&num, &ar.d(n, 1), "{n}-{1}")?);
    }
    let mut b = std::collections::BTreeMap::new();
    b.insert(1, ar.div(&rd.lg(-1, 1)?, &ar.d(2, -1), "{2}-{-1}")?);
    b.insert(0, f.zero());
    for m in (-r..=-1).rev() {
        let t = ar.div(&rd.lg(1, m)?, &ar.d(m + 1, 1), "{m+1}-{1}")?;
        b.insert(m, ar.add(&b[&(m + 1)], &t));
    }
    for m in 1..r {
        let t = ar.div(&rd.lg(1, m)?, &ar.d(1, m + 1), "{1}-{m+1}")?;
        b.insert(m + 1, ar.add(&b[&m], &t));
    }
    Ok(assemble(f, Parity::Odd, 1, a, b))
}

fn odd_sm1_g<F: CoeffField>(f: &F, rd: &Reader<'_, F>) -> Result<Cochain1<F::Elem>> {
    let ar = Ar(f);
    let r = range_bound(&rd.window);
    let mut a = std::collections::BTreeMap::new();
    a.insert(1, f.zero());
    a.insert(0, f.neg(&rd.ll(1, 0)?));
    for n in (-r..=-1).rev() {
        let t = ar.div(&rd.ll(1, n)?, &ar.d(1, n), "{1}-{n}")?;
        a.insert(n, ar.sub(&a[&(n + 1)], &t));
    }
    let t = ar.div(&rd.ll(2, -1)?, &ar.d(2, -1), "{2}-{-1}")?;
    a.insert(2, ar.sub(&f.neg(&t), &a[&-1]));
    for n in 2..r {
        let t = ar.div(&rd.ll(1, n)?, &ar.d(1, n), "{1}-{n}")?;
        a.insert(n + 1, ar.add(&t, &a[&n]));
    }
    let f10 = rd.lg(1, 0)?;
    let mut b = std::collections::BTreeMap::new();
    b.insert(0, f.neg(&ar.mul(&ar.div(&ar.q(1), &f.one_plus_q_pow(1), "1+q")?, &f10)));
    for m in (-r..=-1).rev() {
        let den = ar.d(m - 1, 1);
        let k = ar.div(&ar.d(m + 1, 1), &den, "{m-1}-{1}")?;
        let t = ar.div(&rd.lg(1, m)?, &den, "{m-1}-{1}")?;
        b.insert(m, ar.add(&ar.mul(&k, &b[&(m + 1)]), &t));
    }
    let k3 = ar.div(&ar.mul(&ar.q(1), &ar.n(3)), &ar.n(2), "{2}")?;
    b.insert(1, ar.sub(&ar.mul(&ar.q(1), &rd.lg(-1, 1)?), &ar.mul(&k3, &f10)));
    for m in 1..r {
        let den = ar.d(1, m + 1);
        let k = ar.div(&ar.d(1, m - 1), &den, "{1}-{m+1}")?;
        let t = ar.div(&rd.lg(1, m)?, &den, "{1}-{m+1}")?;
        b.insert(m + 1, ar.add(&ar.mul(&k, &b[&m]), &t));
    }
    Ok(assemble(f, Parity::Odd, -1, a, b))
}

fn assemble<F: CoeffField>(
    f: &F,
    parity: Parity,
    s: i64,
    a: std::collections::BTreeMap<i64, F::Elem>,
    b: std::collections::BTreeMap<i64, F::Elem>,
) -> Cochain1<F::Elem> {
    let mut g = Cochain1::new(parity, s);
    for (k, v) in a {
        g.set_a(f, k, v);
    }
    for (k, v) in b {
        g.set_b(f, k, v);
    }
    g
}

/// The vanishing conditions each stage is built to produce, on pairs whose
/// indices stay within the recursion range.
fn lemma_keys(recipe: Recipe, stage: usize, window: &Window) -> Vec<PairKey> {
    let r = range_bound(window);
    let inside = |n: i64, p: i64| n.abs() <= r && p.abs() <= r && (n + p).abs() <= r && window.pair_in(n, p);
    let mut out = Vec::new();
    let mut push = |t: Table, n: i64, p: i64| {
        if inside(n, p) {
            if let Some((k, _)) = PairKey::canonical(t, n, p) {
                out.push(k);
            }
        }
    };
    match (recipe, stage) {
        (Recipe::Generic | Recipe::EvenS2, 1) | (Recipe::OddS1 | Recipe::OddSm1, 2) => {
            for p in -r..=r {
                if recipe != Recipe::OddSm1 {
                    push(Table::A, 0, p);
                }
                if recipe != Recipe::OddS1 {
                    push(Table::B, 0, p);
                }
            }
        }
        (Recipe::EvenS0 | Recipe::OddS1 | Recipe::OddSm1, 1) => {
            for n in -r..=r {
                push(Table::A, n, 1);
                if n != 0 || recipe == Recipe::OddSm1 {
                    push(Table::B, 1, n);
                }
            }
            push(Table::A, -1, 2);
            push(Table::B, -1, 1);
        }
        _ => {}
    }
    out.sort();
    out.dedup();
    out
}

fn run_checks<F: CoeffField>(f: &F, h: &Cochain2<F::Elem>, recipe: Recipe, stage: usize, window: &Window) -> Vec<LemmaCheck> {
    lemma_keys(recipe, stage, window)
        .into_iter()
        .map(|key| {
            let v = h.key_value(f, &key);
            LemmaCheck { stage, key, holds: f.is_zero(&v), value: f.render(&v) }
        })
        .collect()
}

/// Solve `δ¹g = f` on the core pairs; `None` if `f` is not a coboundary there.
pub fn solve_on_core<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window) -> Option<Cochain1<F::Elem>> {
    let units = one_keys(window.n());
    let col: std::collections::HashMap<OneKey, usize> = units.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let t = units.len();
    let rows: Vec<Row<F::Elem>> = core_keys(window)
        .into_iter()
        .map(|k| {
            let (x, y) = k.inputs();
            let (_, form) = d1_form(f, c.parity, c.degree, x, y);
            let mut r: Row<F::Elem> = form.terms.into_iter().map(|(o, v)| (col[&o], v)).collect();
            let fv = c.key_value(f, &k);
            if !f.is_zero(&fv) {
                r.push((t, fv));
            }
            r.sort_by_key(|(i, _)| *i);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let ker = kernel(f, t + 1, &rows);
    let v = ker.into_iter().find(|v| v.iter().any(|(i, _)| *i == t))?;
    let tv = v.iter().find(|(i, _)| *i == t).map(|(_, x)| x.clone()).expect("component present");
    let scale = f.neg(&f.inv(&tv).ok()?);
    let mut g = Cochain1::new(c.parity, c.degree);
    for (i, x) in v {
        if i < t {
            g.set(f, units[i], f.mul(&x, &scale));
        }
    }
    Some(g)
}

fn finish<F: Exact>(
    f: &F,
    recipe: Recipe,
    c: &Cochain2<F::Elem>,
    g: Cochain1<F::Elem>,
    checks: Vec<LemmaCheck>,
    window: &Window,
    opts: ReduceOptions,
) -> Result<Certificate<F::Elem>> {
    let h = residual(f, c, &g, window);
    let core = core_keys(window);
    let zero_on = format!("pairs with |n|, |p|, |n+p| <= {} ({} coefficients)", window.core(), core.len());
    let discrepancies: Vec<ResidualEntry> = core
        .iter()
        .filter_map(|k| {
            let v = h.key_value(f, k);
            (!f.is_zero(&v)).then(|| ResidualEntry { key: *k, value: f.render(&v) })
        })
        .collect();
    if discrepancies.is_empty() {
        return Ok(Certificate {
            recipe,
            method: Method::Printed,
            window: *window,
            f: c.clone(),
            g,
            residual: h,
            printed_g: None,
            zero_on,
            checks,
            discrepancies,
        });
    }
    if opts.strict {
        let first = &discrepancies[0];
        return Err(Error::ResidualNonzero { slot: first.key.to_string(), value: first.value.clone() });
    }
    let g2 = solve_on_core(f, c, window)
        .ok_or_else(|| Error::NotCoboundaryOnCore(format!("no 1-cochain on N = {} matches f on the core", window.n())))?;
    let h2 = residual(f, c, &g2, window);
    Ok(Certificate {
        recipe,
        method: Method::LinearSolve,
        window: *window,
        f: c.clone(),
        g: g2,
        residual: h2,
        printed_g: Some(g),
        zero_on,
        checks,
        discrepancies,
    })
}

fn reduce_with<F: Exact>(f: &F, recipe: Recipe, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    check_sector(recipe, c.parity, c.degree)?;
    check_cocycle(f, c, window)?;
    let rd = Reader { f, c, window: *window };
    let (g, checks) = match recipe {
        Recipe::Generic | Recipe::EvenS2 => {
            let g = generic_g(f, &rd, c.parity, c.degree, None)?;
            let h = residual(f, c, &g, window);
            let checks = run_checks(f, &h, recipe, 1, window);
            (g, checks)
        }
        Recipe::EvenS0 => {
            let g = even_s0_g(f, &rd)?;
            let h = residual(f, c, &g, window);
            (g, run_checks(f, &h, recipe, 1, window))
        }
        Recipe::OddS1 | Recipe::OddSm1 => {
            let g1 = if recipe == Recipe::OddS1 { odd_s1_g(f, &rd)? } else { odd_sm1_g(f, &rd)? };
            let h1 = residual(f, c, &g1, window);
            let mut checks = run_checks(f, &h1, recipe, 1, window);
            // Second stage: divide the remaining (L_0, -) values as in the generic recipe.
            let ar = Ar(f);
            let mut g2 = Cochain1::new(c.parity, c.degree);
            let nn = window.n();
            for p in -nn..=nn {
                if recipe == Recipe::OddS1 {
                    let den = ar.mul(&ar.q(p), &ar.n(2));
                    g2.set_a(f, p, ar.div(&h1.get(f, Table::A, 0, p), &den, "q^p{2}")?);
                } else {
                    let den = ar.mul(&ar.q(p + 1), &ar.n(-2));
                    g2.set_b(f, p, ar.div(&h1.get(f, Table::B, 0, p), &den, "q^{p+1}{-2}")?);
                }
            }
            let g = g1.add(f, &g2);
            let h2 = residual(f, c, &g, window);
            checks.extend(run_checks(f, &h2, recipe, 2, window));
            (g, checks)
        }
    };
    finish(f, recipe, c, g, checks, window, opts)
}

/// Dispatch on the sector of `c`.
pub fn reduce<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::for_sector(c.parity, c.degree), c, window, opts)
}

pub fn reduce_generic<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::Generic, c, window, opts)
}

pub fn reduce_even_s0<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::EvenS0, c, window, opts)
}

pub fn reduce_even_s2<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::EvenS2, c, window, opts)
}

pub fn reduce_odd_s1<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::OddS1, c, window, opts)
}

pub fn reduce_odd_sm1<F: Exact>(f: &F, c: &Cochain2<F::Elem>, window: &Window, opts: ReduceOptions) -> Result<Certificate<F::Elem>> {
    reduce_with(f, Recipe::OddSm1, c, window, opts)
}
