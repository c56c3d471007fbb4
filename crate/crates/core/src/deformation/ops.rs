use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::formal::{GradedBracket, GradedMap, TruncatedAutomorphism, TruncatedDeformation};
use crate::coboundary::{d2_form, form_defined};
use crate::cochains::{one_keys, one_target, window_pair_keys, Cochain1, Cochain2, OneKey, PairKey, TripleKey};
use crate::h2solver::{reduce, Method, ReduceOptions};
use crate::linalg::Exact;
use crate::qfield::CoeffField;
use crate::qwitt::{alpha_coeff, koszul, BasisVector, Element, Parity};
use crate::{Error, Result};

/// Order-`s` coefficient of the deformed Hom-Jacobi cyclic sum,
/// `↻ (-1)^{|x||z|} Σ_{i≤s} [α x, [y, z]_i]_{s-i}`.
pub fn deformation_defect<F: CoeffField>(
    f: &F,
    d: &TruncatedDeformation<F::Elem>,
    s: usize,
    x: BasisVector,
    y: BasisVector,
    z: BasisVector,
) -> Result<Element<F::Elem>> {
    if s > d.order() {
        return Err(Error::Precondition(format!("order {s} exceeds the deformation order {}", d.order())));
    }
    let mut r = Element::zero();
    for (a, b, c) in [(x, y, z), (z, x, y), (y, z, x)] {
        let ax = Element::term(f, a, alpha_coeff(f, a));
        let mut part = Element::zero();
        for i in 0..=s {
            let inner = d.bracket_at(f, i, b, c)?;
            part = part.add(f, &d.bracket_elem(f, s - i, &ax, &inner)?);
        }
        let sign = f.sign(&f.one(), koszul(a.parity(), c.parity()));
        r = r.add(f, &part.scale(f, &sign));
    }
    Ok(r)
}

/// `δ²` of the order-one bracket at a triple, summed over its components.
pub fn d2_of_bracket<F: CoeffField>(
    f: &F,
    d: &TruncatedDeformation<F::Elem>,
    x: BasisVector,
    y: BasisVector,
    z: BasisVector,
) -> Result<Element<F::Elem>> {
    let b = d.brackets.first().ok_or_else(|| Error::Precondition("deformation has order 0".into()))?;
    let mut r = Element::zero();
    for (s, c) in &b.components {
        let (target, form) = d2_form(f, Parity::Even, *s, x, y, z);
        if !form_defined(&form, Some(c), &d.window) || !form.all_touched(|k| !b.undefined.contains(k)) {
            return Err(Error::OutOfWindow { index: x.degree.abs().max(y.degree.abs()).max(z.degree.abs()), bound: d.window.n() });
        }
        r.add_term(f, target, form.eval(f, |k| c.key_value(f, k)));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub triple: TripleKey,
    pub defect: Element<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderCheck<T> {
    pub cocycle: bool,
    /// Triples whose defect could be evaluated inside the window.
    pub checked: usize,
    pub skipped: usize,
    /// The first nonvanishing triple in canonical order.
    pub witness: Option<Witness<T>>,
}

/// Whether `[.,.]_1` satisfies the order-one deformation equation on every
/// window triple where it can be evaluated.
pub fn first_order_cocycle_check<F: CoeffField>(f: &F, d: &TruncatedDeformation<F::Elem>) -> Result<FirstOrderCheck<F::Elem>> {
    if d.order() < 1 {
        return Err(Error::Precondition("deformation has order 0".into()));
    }
    let results: Vec<(TripleKey, Option<Element<F::Elem>>)> = TripleKey::enumerate(d.window.n())
        .into_par_iter()
        .map(|t| {
            let (x, y, z) = t.inputs();
            match deformation_defect(f, d, 1, x, y, z) {
                Ok(e) => (t, Some(e)),
                Err(_) => (t, None),
            }
        })
        .collect();
    let checked = results.iter().filter(|(_, e)| e.is_some()).count();
    let witness = results
        .into_iter()
        .find_map(|(t, e)| e.filter(|e| !e.is_zero()).map(|defect| Witness { triple: t, defect }));
    Ok(FirstOrderCheck { cocycle: witness.is_none(), checked, skipped: TripleKey::enumerate(d.window.n()).len() - checked, witness })
}

/// Recompute a witness through the generic `δ²`: the order-one defect equals
/// `(-1)^{|x||z|} δ²([.,.]_1)(x, y, z)`.
pub fn verify_witness<F: CoeffField>(f: &F, d: &TruncatedDeformation<F::Elem>, w: &Witness<F::Elem>) -> bool {
    let (x, y, z) = w.triple.inputs();
    match d2_of_bracket(f, d, x, y, z) {
        Ok(v) => {
            let v = if koszul(x.parity(), z.parity()) { v.scale(f, &f.neg(&f.one())) } else { v };
            !v.is_zero() && v == w.defect
        }
        Err(_) => false,
    }
}

fn split_pair<F: CoeffField>(
    f: &F,
    key: PairKey,
    value: &Element<F::Elem>,
    out: &mut GradedBracket<F::Elem>,
    bound: i64,
) -> Result<()> {
    let (x, y) = key.inputs();
    for (b, c) in value.terms() {
        if b.parity() != Parity::from_bit(x.parity().bit() + y.parity().bit()) {
            return Err(Error::Precondition(format!("odd term {b:?} in the value at {key}")));
        }
        let s = b.degree - x.degree - y.degree;
        out.components.entry(s).or_insert_with(|| Cochain2::new(Parity::Even, s, bound)).set_key(f, key, c.clone());
    }
    Ok(())
}

fn split_one<F: CoeffField>(f: &F, key: OneKey, value: &Element<F::Elem>, out: &mut GradedMap<F::Elem>) -> Result<()> {
    let x = key.input();
    for (b, c) in value.terms() {
        if b.parity() != x.parity() {
            return Err(Error::Precondition(format!("odd term {b:?} in the image of {x:?}")));
        }
        let s = b.degree - x.degree;
        out.components.entry(s).or_insert_with(|| Cochain1::new(Parity::Even, s)).set(f, key, c.clone());
    }
    Ok(())
}

fn transformed_value<F: CoeffField>(
    f: &F,
    d: &TruncatedDeformation<F::Elem>,
    phi: &TruncatedAutomorphism<F::Elem>,
    done: &TruncatedDeformation<F::Elem>,
    k: usize,
    x: BasisVector,
    y: BasisVector,
) -> Result<Element<F::Elem>> {
    // φ_t([x,y]_t) = [φ_t x, φ_t y]'_t at order k, solved for [x,y]'_k.
    let mut r = Element::zero();
    for j in 0..=k {
        let inner = d.bracket_at(f, j, x, y)?;
        r = r.add(f, &phi.map_elem(f, k - j, &inner)?);
    }
    for l in 0..k {
        for i in 0..=(k - l) {
            let u = phi.map_at(f, i, x)?;
            let v = phi.map_at(f, k - l - i, y)?;
            r = r.sub(f, &done.bracket_elem(f, l, &u, &v)?);
        }
    }
    Ok(r)
}

/// The deformation `[.,.]'_t` with `φ_t([x,y]_t) = [φ_t x, φ_t y]'_t`,
/// solved order by order. Slots that need values outside the window are
/// marked undefined.
pub fn apply_equivalence<F: CoeffField>(
    f: &F,
    d: &TruncatedDeformation<F::Elem>,
    phi: &TruncatedAutomorphism<F::Elem>,
) -> Result<TruncatedDeformation<F::Elem>> {
    if d.order() != phi.order() || d.window != phi.window {
        return Err(Error::Precondition(format!(
            "deformation (order {}, N = {}) and automorphism (order {}, N = {}) do not match",
            d.order(),
            d.window.n(),
            phi.order(),
            phi.window.n()
        )));
    }
    let keys = window_pair_keys(&d.window);
    let mut out = TruncatedDeformation::trivial(d.window, d.order());
    for k in 1..=d.order() {
        let vals: Vec<(PairKey, Result<Element<F::Elem>>)> = keys
            .par_iter()
            .map(|key| {
                let (x, y) = key.inputs();
                (*key, transformed_value(f, d, phi, &out, k, x, y))
            })
            .collect();
        let mut b = GradedBracket::default();
        for (key, v) in vals {
            match v {
                Ok(e) => split_pair(f, key, &e, &mut b, d.window.n())?,
                Err(Error::OutOfWindow { .. }) => {
                    b.undefined.insert(key);
                }
                Err(e) => return Err(e),
            }
        }
        out.brackets[k - 1] = b;
    }
    Ok(out)
}

/// The truncated inverse `ψ_t` with `ψ_t ∘ φ_t = id` up to the order,
/// from `ψ_k = -Σ_{i=1}^{k} φ_i ∘ ψ_{k-i}`.
pub fn truncated_inverse<F: CoeffField>(f: &F, phi: &TruncatedAutomorphism<F::Elem>) -> Result<TruncatedAutomorphism<F::Elem>> {
    let mut psi = TruncatedAutomorphism::identity(phi.window, phi.order());
    let keys = one_keys(phi.window.n());
    for k in 1..=phi.order() {
        let vals: Vec<(OneKey, Result<Element<F::Elem>>)> = keys
            .par_iter()
            .map(|key| {
                let run = || -> Result<Element<F::Elem>> {
                    let mut r = Element::zero();
                    for i in 1..=k {
                        let inner = psi.map_at(f, k - i, key.input())?;
                        r = r.sub(f, &phi.map_elem(f, i, &inner)?);
                    }
                    Ok(r)
                };
                (*key, run())
            })
            .collect();
        let mut m = GradedMap::default();
        for (key, v) in vals {
            match v {
                Ok(e) => split_one(f, key, &e, &mut m)?,
                Err(Error::OutOfWindow { .. }) => {
                    m.undefined.insert(key);
                }
                Err(e) => return Err(e),
            }
        }
        psi.maps[k - 1] = m;
    }
    Ok(psi)
}

/// Whether every `φ_i` commutes with the twist on the window generators.
pub fn commutes_with_alpha<F: CoeffField>(f: &F, phi: &TruncatedAutomorphism<F::Elem>) -> bool {
    phi.maps.iter().all(|m| {
        m.components.iter().all(|(s, g)| {
            g.values().iter().all(|(k, v)| {
                let x = k.input();
                f.is_zero(v) || alpha_coeff(f, x) == alpha_coeff(f, one_target(Parity::Even, *s, x))
            })
        })
    })
}

/// Outcome of removing the order-one term.
#[derive(Clone, Debug, PartialEq)]
pub struct Trivialization<T> {
    /// `φ_1 = g` with `[.,.]_1 = δ¹g` on the core; higher `φ_i` vanish.
    pub automorphism: TruncatedAutomorphism<T>,
    pub transformed: TruncatedDeformation<T>,
    /// How each homogeneous component of `[.,.]_1` was reduced.
    pub methods: Vec<(i64, Method)>,
    /// `[.,.]'_1` is defined and zero on every core pair.
    pub order1_core_zero: bool,
    pub commutes_with_alpha: bool,
}

/// Find `φ_1` making the order-one bracket vanish on the core.
pub fn trivialize_first_order<F: Exact>(f: &F, d: &TruncatedDeformation<F::Elem>) -> Result<Trivialization<F::Elem>> {
    if d.order() < 1 {
        return Err(Error::Precondition("deformation has order 0".into()));
    }
    let mut phi = TruncatedAutomorphism::identity(d.window, d.order());
    let mut methods = Vec::new();
    for (s, c) in &d.brackets[0].components {
        let cert = reduce(f, c, &d.window, ReduceOptions::default())?;
        methods.push((*s, cert.method));
        phi.add_component(f, 1, cert.g)?;
    }
    let transformed = apply_equivalence(f, d, &phi)?;
    let order1_core_zero =
        window_pair_keys(&d.window).iter().filter(|k| k.in_core(&d.window)).all(|k| transformed.brackets[0].is_zero_at(f, k));
    let commutes = commutes_with_alpha(f, &phi);
    Ok(Trivialization { automorphism: phi, transformed, methods, order1_core_zero, commutes_with_alpha: commutes })
}

/// Serializable summary of a first-order check and trivialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformReport {
    pub order: usize,
    pub window: i64,
    pub core: i64,
    pub cocycle: bool,
    pub checked: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_verified: Option<bool>,
    pub trivializable: Option<bool>,
    pub methods: Vec<(i64, Method)>,
    pub commutes_with_alpha: Option<bool>,
}

/// Check, then trivialize when the order-one bracket is a cocycle.
pub fn deform_report<F: Exact>(f: &F, d: &TruncatedDeformation<F::Elem>) -> Result<(DeformReport, Option<Trivialization<F::Elem>>)> {
    let check = first_order_cocycle_check(f, d)?;
    let mut report = DeformReport {
        order: d.order(),
        window: d.window.n(),
        core: d.window.core(),
        cocycle: check.cocycle,
        checked: check.checked,
        skipped: check.skipped,
        witness: check.witness.as_ref().map(|w| format!("{}: {}", w.triple, w.defect.render(f))),
        witness_verified: check.witness.as_ref().map(|w| verify_witness(f, d, w)),
        trivializable: None,
        methods: Vec::new(),
        commutes_with_alpha: None,
    };
    if !check.cocycle {
        return Ok((report, None));
    }
    let t = trivialize_first_order(f, d)?;
    report.trivializable = Some(t.order1_core_zero);
    report.methods = t.methods.clone();
    report.commutes_with_alpha = Some(t.commutes_with_alpha);
    Ok((report, Some(t)))
}
