//! The Hom-Lie superalgebra `W^q` spanned by `L_n` (even) and `G_n` (odd).
//!
//! Structure constants are produced on demand from q-numbers, so any degree
//! range can be used. All functions are generic over the coefficient context.

mod basis;
mod element;
mod superalg;

pub use basis::{koszul, BasisVector, Kind, Parity};
pub use element::Element;
pub use superalg::{sigma_derivation_defect, AElement, SigmaDerivation};

use rayon::prelude::*;

use crate::qfield::CoeffField;

/// Bracket of two generators as a single term, `None` when it vanishes.
pub fn bracket_basis<F: CoeffField>(f: &F, x: BasisVector, y: BasisVector) -> Option<(BasisVector, F::Elem)> {
    let (n, m) = (x.degree, y.degree);
    let (kind, c) = match (x.kind, y.kind) {
        (Kind::L, Kind::L) => (Kind::L, f.qdiff(m, n)),
        (Kind::L, Kind::G) => (Kind::G, f.qdiff(m + 1, n)),
        (Kind::G, Kind::L) => (Kind::G, f.neg(&f.qdiff(n + 1, m))),
        (Kind::G, Kind::G) => return None,
    };
    if f.is_zero(&c) {
        None
    } else {
        Some((BasisVector::new(kind, n + m), c))
    }
}

pub fn bracket<F: CoeffField>(f: &F, x: &Element<F::Elem>, y: &Element<F::Elem>) -> Element<F::Elem> {
    let mut r = Element::zero();
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            if let Some((b, c)) = bracket_basis(f, *bx, *by) {
                r.add_term(f, b, f.mul(&c, &f.mul(cx, cy)));
            }
        }
    }
    r
}

/// Eigenvalue of the twist on a generator.
pub fn alpha_coeff<F: CoeffField>(f: &F, x: BasisVector) -> F::Elem {
    match x.kind {
        Kind::L => f.one_plus_q_pow(x.degree),
        Kind::G => f.one_plus_q_pow(x.degree + 1),
    }
}

pub fn alpha<F: CoeffField>(f: &F, x: &Element<F::Elem>) -> Element<F::Elem> {
    let mut r = Element::zero();
    for (b, c) in x.terms() {
        r.add_term(f, *b, f.mul(c, &alpha_coeff(f, *b)));
    }
    r
}

/// Super Hom-Jacobi cyclic sum for an arbitrary basis-level bracket.
pub fn jacobi_defect_with<F, B>(f: &F, br: B, x: BasisVector, y: BasisVector, z: BasisVector) -> Element<F::Elem>
where
    F: CoeffField,
    B: Fn(BasisVector, BasisVector) -> Option<(BasisVector, F::Elem)>,
{
    let mut r = Element::zero();
    let cyc = [(x, y, z), (z, x, y), (y, z, x)];
    for (a, b, c) in cyc {
        // (-1)^{|a||c|} [α a, [b, c]]
        let Some((inner, k1)) = br(b, c) else { continue };
        let Some((out, k2)) = br(a, inner) else { continue };
        let v = f.mul(&f.mul(&k1, &k2), &alpha_coeff(f, a));
        r.add_term(f, out, f.sign(&v, koszul(a.parity(), c.parity())));
    }
    r
}

pub fn jacobi_defect<F: CoeffField>(f: &F, x: BasisVector, y: BasisVector, z: BasisVector) -> Element<F::Elem> {
    jacobi_defect_with(f, |a, b| bracket_basis(f, a, b), x, y, z)
}

/// `[x, y] + (-1)^{|x||y|} [y, x]`.
pub fn supersymmetry_defect<F: CoeffField>(f: &F, x: BasisVector, y: BasisVector) -> Element<F::Elem> {
    let a = Element::from_opt(f, bracket_basis(f, x, y));
    let b = Element::from_opt(f, bracket_basis(f, y, x));
    let b = if koszul(x.parity(), y.parity()) { b.scale(f, &f.neg(&f.one())) } else { b };
    a.add(f, &b)
}

/// All generators with degree in `[lo, hi]`.
pub fn generators(lo: i64, hi: i64) -> Vec<BasisVector> {
    let mut v = Vec::new();
    for n in lo..=hi {
        v.push(BasisVector::l(n));
        v.push(BasisVector::g(n));
    }
    v
}

/// A nonzero value of a checked identity at the given generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Defect<T> {
    pub inputs: Vec<BasisVector>,
    pub value: Element<T>,
}

/// Hom-Jacobi cyclic sums over every generator triple with degrees in
/// `[lo, hi]`, using `br` as the bracket. Returns the number of triples and
/// the nonzero defects in canonical order.
pub fn scan_jacobi<F, B>(f: &F, br: B, lo: i64, hi: i64) -> (usize, Vec<Defect<F::Elem>>)
where
    F: CoeffField,
    B: Fn(BasisVector, BasisVector) -> Option<(BasisVector, F::Elem)> + Sync,
{
    let gens = generators(lo, hi);
    let g = &gens;
    let triples: Vec<(BasisVector, BasisVector, BasisVector)> =
        g.iter().flat_map(|&x| g.iter().flat_map(move |&y| g.iter().map(move |&z| (x, y, z)))).collect();
    let defects = triples
        .par_iter()
        .filter_map(|&(x, y, z)| {
            let v = jacobi_defect_with(f, &br, x, y, z);
            (!v.is_zero()).then(|| Defect { inputs: vec![x, y, z], value: v })
        })
        .collect();
    (triples.len(), defects)
}

/// `Δ` checked as a σ-derivation on all pairs of monomials `t^a`, `θ t^a`
/// with exponents in `[lo, hi]`. Returns the pair count and the failing
/// exponent pairs with their parities.
pub fn scan_sigma_derivation<F: CoeffField>(f: &F, lo: i64, hi: i64) -> (usize, Vec<((i64, bool), (i64, bool))>) {
    let monos: Vec<(i64, bool)> = (lo..=hi).flat_map(|n| [(n, false), (n, true)]).collect();
    let make = |(n, odd): (i64, bool)| if odd { AElement::theta_t_pow(f, n) } else { AElement::t_pow(f, n) };
    let m = &monos;
    let pairs: Vec<((i64, bool), (i64, bool))> = m.iter().flat_map(|&a| m.iter().map(move |&b| (a, b))).collect();
    let bad = pairs
        .par_iter()
        .filter(|&&(a, b)| !sigma_derivation_defect(f, SigmaDerivation::Delta, &make(a), &make(b)).is_zero())
        .copied()
        .collect();
    (pairs.len(), bad)
}
