//! Dense univariate polynomials over ℤ, used for gcd computations and as the
//! fraction-free domain behind symbolic elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Ascending coefficient vector, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        ZPoly::from_coeffs(vec![v])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    /// `coeff * x^exp`.
    pub fn monomial(coeff: BigInt, exp: usize) -> Self {
        let mut c = vec![BigInt::zero(); exp + 1];
        c[exp] = coeff;
        ZPoly::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Divide by `x^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly::from_coeffs(self.c[k.min(self.c.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = self.c.get(i).cloned().unwrap_or_default();
            if let Some(w) = o.c.get(i) {
                v += w;
            }
            c.push(v);
        }
        ZPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = self.c.get(i).cloned().unwrap_or_default();
            if let Some(w) = o.c.get(i) {
                v -= w;
            }
            c.push(v);
        }
        ZPoly::from_coeffs(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        ZPoly::from_coeffs(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, and the signed
    /// factor `k` with `self = k * pp`.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut g = self.content();
        if self.lead().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        (g.clone(), self.div_scalar(&g))
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.lead().unwrap().clone();
            r = r.scale(&lc).sub(&d.scale(&lr).shift_up(dr - dd));
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (content ignored).
    pub fn gcd_primitive(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive().1;
        }
        if b.is_zero() {
            return a.primitive().1;
        }
        let (mut x, mut y) = (a.primitive().1, b.primitive().1);
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.is_constant() {
                return ZPoly::one();
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive().1;
        }
        x.primitive().1
    }

    /// Full gcd including content.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return ZPoly::zero();
        }
        let c = a.content().gcd(&b.content());
        if a.is_constant() || b.is_constant() {
            return ZPoly::constant(c);
        }
        ZPoly::gcd_primitive(a, b).scale(&c)
    }

    /// Exact quotient `self / d` over ℤ, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if dd == 0 {
            let k = &d.c[0];
            if self.c.iter().all(|x| x.is_multiple_of(k)) {
                return Some(self.div_scalar(k));
            }
            return None;
        }
        let lc = d.lead().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.c.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let lr = r.lead().unwrap();
            let (t, rem) = lr.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.scale(&t).shift_up(dr - dd));
            q[dr - dd] = t;
        }
        Some(ZPoly::from_coeffs(q))
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Value at `x` modulo `p`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for c in self.c.iter().rev() {
            let cm = c.mod_floor(&pb);
            let cm: u64 = cm.try_into().unwrap();
            acc = (acc * x as u128 + cm as u128) % p as u128;
        }
        acc as u64
    }
}
