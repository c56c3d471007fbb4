//! Direct expansion of δ¹ and δ² for the adjoint module, term by term,
//! with the Koszul signs taken literally from the operator definitions.

use rayon::prelude::*;

use super::form::LinForm;
use crate::cochains::{
    one_target, pair_key, pair_target, window_pair_keys, Cochain1, Cochain2, Cochain3Defect, OneKey, PairKey, TripleKey,
    Window,
};
use crate::qfield::CoeffField;
use crate::qwitt::{alpha_coeff, bracket_basis, koszul, BasisVector, Kind, Parity};

/// `δ¹g(x, y)` as a linear form in the unknowns of `g`, with its output generator.
///
/// `δ¹g(x,y) = -g([x,y]) + (-1)^{|x||g|}[x,g(y)] - (-1)^{|y|(|g|+|x|)}[y,g(x)]`
pub fn d1_form<F: CoeffField>(
    f: &F,
    parity: Parity,
    s: i64,
    x: BasisVector,
    y: BasisVector,
) -> (BasisVector, LinForm<OneKey, F::Elem>) {
    let out = BasisVector::new(Kind::of_parity(x.parity() + y.parity() + parity), x.degree + y.degree + s);
    let mut form = LinForm::new();
    if let Some((b, c)) = bracket_basis(f, x, y) {
        form.add(f, OneKey::of(b), c, true);
    }
    let gy = one_target(parity, s, y);
    if let Some((_, c)) = bracket_basis(f, x, gy) {
        form.add(f, OneKey::of(y), c, koszul(x.parity(), parity));
    }
    let gx = one_target(parity, s, x);
    if let Some((_, c)) = bracket_basis(f, y, gx) {
        form.add(f, OneKey::of(x), c, !koszul(y.parity(), parity + x.parity()));
    }
    (out, form)
}

/// `δ²f(x, y, z)` as a linear form in the unknowns of `f`, with its output generator.
///
/// ```text
/// δ²f(x,y,z) = -f([x,y],αz) + (-1)^{|z||y|} f([x,z],αy) + f(αx,[y,z])
///            + (-1)^{|x||f|}[αx,f(y,z)] - (-1)^{|y|(|f|+|x|)}[αy,f(x,z)]
///            + (-1)^{|z|(|f|+|x|+|y|)}[αz,f(x,y)]
/// ```
pub fn d2_form<F: CoeffField>(
    f: &F,
    parity: Parity,
    s: i64,
    x: BasisVector,
    y: BasisVector,
    z: BasisVector,
) -> (BasisVector, LinForm<PairKey, F::Elem>) {
    let out = BasisVector::new(
        Kind::of_parity(x.parity() + y.parity() + z.parity() + parity),
        x.degree + y.degree + z.degree + s,
    );
    let mut form = LinForm::new();
    let (ax, ay, az) = (alpha_coeff(f, x), alpha_coeff(f, y), alpha_coeff(f, z));

    let value_term = |form: &mut LinForm<PairKey, F::Elem>, u: BasisVector, v: BasisVector, c: F::Elem, neg: bool| {
        if let Some((k, kneg)) = pair_key(u, v) {
            form.add(f, k, c, neg ^ kneg);
        }
    };
    if let Some((b, c)) = bracket_basis(f, x, y) {
        value_term(&mut form, b, z, f.mul(&c, &az), true);
    }
    if let Some((b, c)) = bracket_basis(f, x, z) {
        value_term(&mut form, b, y, f.mul(&c, &ay), koszul(z.parity(), y.parity()));
    }
    if let Some((b, c)) = bracket_basis(f, y, z) {
        value_term(&mut form, x, b, f.mul(&c, &ax), false);
    }

    let bracket_term = |form: &mut LinForm<PairKey, F::Elem>, a: BasisVector, alpha: &F::Elem, u: BasisVector, v: BasisVector, neg: bool| {
        let Some((k, kneg)) = pair_key(u, v) else { return };
        let t = pair_target(parity, s, u, v);
        if let Some((_, c)) = bracket_basis(f, a, t) {
            form.add(f, k, f.mul(&c, alpha), neg ^ kneg);
        }
    };
    bracket_term(&mut form, x, &ax, y, z, koszul(x.parity(), parity));
    bracket_term(&mut form, y, &ay, x, z, !koszul(y.parity(), parity + x.parity()));
    bracket_term(&mut form, z, &az, x, y, koszul(z.parity(), parity + x.parity() + y.parity()));
    (out, form)
}

/// `δ¹g` on every pair of the window.
pub fn d1<F: CoeffField>(f: &F, g: &Cochain1<F::Elem>, window: &Window) -> Cochain2<F::Elem> {
    let keys = window_pair_keys(window);
    let vals: Vec<(PairKey, F::Elem)> = keys
        .par_iter()
        .map(|k| {
            let (x, y) = k.inputs();
            let (_, form) = d1_form(f, g.parity, g.degree, x, y);
            (*k, form.eval(f, |o| g.get(f, *o)))
        })
        .collect();
    let mut out = Cochain2::new(g.parity, g.degree, window.n());
    for (k, v) in vals {
        out.set_key(f, k, v);
    }
    out
}

/// Exposes `δ¹g` for 1-cocycle experiments.
pub fn z1_defect<F: CoeffField>(f: &F, g: &Cochain1<F::Elem>, window: &Window) -> Cochain2<F::Elem> {
    d1(f, g, window)
}

/// Whether a δ² form only involves defined slots of `c` inside the window.
pub fn form_defined<T: Clone + PartialEq>(form: &LinForm<PairKey, T>, c: Option<&Cochain2<T>>, window: &Window) -> bool {
    form.all_touched(|k| k.in_window(window) && c.is_none_or(|c| c.is_defined(k)))
}

/// `δ²f` on every canonical triple whose referenced slots are all defined.
pub fn d2<F: CoeffField>(f: &F, c: &Cochain2<F::Elem>, window: &Window) -> Cochain3Defect<F::Elem> {
    let triples = TripleKey::enumerate(window.n());
    let vals: Vec<Option<(TripleKey, F::Elem)>> = triples
        .par_iter()
        .map(|t| {
            let (x, y, z) = t.inputs();
            let (_, form) = d2_form(f, c.parity, c.degree, x, y, z);
            if !form_defined(&form, Some(c), window) {
                return None;
            }
            Some((*t, form.eval(f, |k| c.key_value(f, k))))
        })
        .collect();
    let mut out = Cochain3Defect::new(c.parity, c.degree);
    for v in vals {
        match v {
            None => out.skipped += 1,
            Some((t, v)) => {
                out.checked += 1;
                if !f.is_zero(&v) {
                    out.values.insert(t, v);
                }
            }
        }
    }
    out
}

/// `δ²(δ¹g)` on the triples where every slot of `δ¹g` is defined.
pub fn complex_defect<F: CoeffField>(f: &F, g: &Cochain1<F::Elem>, window: &Window) -> Cochain3Defect<F::Elem> {
    d2(f, &d1(f, g, window), window)
}
