//! The supercommutative algebra `A = C[t, t^-1] ⊕ θ C[t, t^-1]` with the
//! twist `σ` and the σ-derivation `Δ` that generates the bracket.

use std::collections::BTreeMap;

use crate::qfield::CoeffField;

#[derive(Clone, Debug, PartialEq)]
pub struct AElement<T> {
    /// Coefficient of `t^n`.
    pub even_part: BTreeMap<i64, T>,
    /// Coefficient of `θ t^n`.
    pub odd_part: BTreeMap<i64, T>,
}

impl<T: Clone + PartialEq> AElement<T> {
    pub fn zero() -> Self {
        AElement { even_part: BTreeMap::new(), odd_part: BTreeMap::new() }
    }

    pub fn t_pow<F: CoeffField<Elem = T>>(f: &F, n: i64) -> Self {
        let mut a = AElement::zero();
        a.even_part.insert(n, f.one());
        a
    }

    pub fn theta_t_pow<F: CoeffField<Elem = T>>(f: &F, n: i64) -> Self {
        let mut a = AElement::zero();
        a.odd_part.insert(n, f.one());
        a
    }

    pub fn is_zero(&self) -> bool {
        self.even_part.is_empty() && self.odd_part.is_empty()
    }

    /// Parity if the element is homogeneous and nonzero.
    pub fn homogeneous_odd(&self) -> Option<bool> {
        match (self.even_part.is_empty(), self.odd_part.is_empty()) {
            (false, true) => Some(false),
            (true, false) => Some(true),
            _ => None,
        }
    }

    fn push<F: CoeffField<Elem = T>>(f: &F, m: &mut BTreeMap<i64, T>, n: i64, c: T) {
        if f.is_zero(&c) {
            return;
        }
        let v = m.entry(n).or_insert_with(|| f.zero());
        *v = f.add(v, &c);
        if f.is_zero(v) {
            m.remove(&n);
        }
    }

    pub fn add<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut r = self.clone();
        for (n, c) in &o.even_part {
            Self::push(f, &mut r.even_part, *n, c.clone());
        }
        for (n, c) in &o.odd_part {
            Self::push(f, &mut r.odd_part, *n, c.clone());
        }
        r
    }

    pub fn neg<F: CoeffField<Elem = T>>(&self, f: &F) -> Self {
        AElement {
            even_part: self.even_part.iter().map(|(n, c)| (*n, f.neg(c))).collect(),
            odd_part: self.odd_part.iter().map(|(n, c)| (*n, f.neg(c))).collect(),
        }
    }

    /// Product; `θ` commutes with `t` and `θ² = 0`.
    pub fn mul<F: CoeffField<Elem = T>>(&self, f: &F, o: &Self) -> Self {
        let mut r = AElement::zero();
        for (n, a) in &self.even_part {
            for (m, b) in &o.even_part {
                Self::push(f, &mut r.even_part, n + m, f.mul(a, b));
            }
            for (m, b) in &o.odd_part {
                Self::push(f, &mut r.odd_part, n + m, f.mul(a, b));
            }
        }
        for (n, a) in &self.odd_part {
            for (m, b) in &o.even_part {
                Self::push(f, &mut r.odd_part, n + m, f.mul(a, b));
            }
        }
        r
    }

    fn map_diag<F: CoeffField<Elem = T>>(&self, f: &F, ev: impl Fn(i64) -> T, od: impl Fn(i64) -> T) -> Self {
        let mut r = AElement::zero();
        for (n, c) in &self.even_part {
            Self::push(f, &mut r.even_part, *n, f.mul(c, &ev(*n)));
        }
        for (n, c) in &self.odd_part {
            Self::push(f, &mut r.odd_part, *n, f.mul(c, &od(*n)));
        }
        r
    }

    /// `σ(t^n) = q^n t^n`, `σ(θ t^n) = q^{n+1} θ t^n`.
    pub fn sigma<F: CoeffField<Elem = T>>(&self, f: &F) -> Self {
        self.map_diag(f, |n| f.q_pow(n), |n| f.q_pow(n + 1))
    }

    /// `Δ(t^n) = {n} t^n`, `Δ(θ t^n) = {n+1} θ t^n`.
    pub fn delta<F: CoeffField<Elem = T>>(&self, f: &F) -> Self {
        self.map_diag(f, |n| f.qnum(n), |n| f.qnum(n + 1))
    }
}

/// The σ-derivations available for checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaDerivation {
    Delta,
}

/// `D(ab) - D(a) b - σ(a) D(b)`; `Δ` is even, so no sign enters.
pub fn sigma_derivation_defect<F: CoeffField>(
    f: &F,
    d: SigmaDerivation,
    a: &AElement<F::Elem>,
    b: &AElement<F::Elem>,
) -> AElement<F::Elem> {
    let apply = |x: &AElement<F::Elem>| match d {
        SigmaDerivation::Delta => x.delta(f),
    };
    let lhs = apply(&a.mul(f, b));
    let r1 = apply(a).mul(f, b);
    let r2 = a.sigma(f).mul(f, &apply(b));
    lhs.add(f, &r1.neg(f)).add(f, &r2.neg(f))
}
