//! Laurent polynomials in `q` with rational coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::ZPoly;

/// Sparse map from exponent to nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn lead_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Value at a rational point; `None` if a negative power meets `q = 0`.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(x, *e);
        }
        Some(acc)
    }

    /// Decompose as `q^shift * scale * p` with `p` primitive over ℤ, positive
    /// leading coefficient and nonzero constant term. Zero maps to zero parts.
    pub fn to_primitive(&self) -> (i64, BigRational, ZPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, BigRational::zero(), ZPoly::zero());
        };
        let hi = self.max_exp().unwrap();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        let (k, p) = ZPoly::from_coeffs(coeffs).primitive();
        (lo, BigRational::new(k, den), p)
    }

    pub fn from_zpoly(shift: i64, scale: &BigRational, p: &ZPoly) -> Self {
        let mut terms = BTreeMap::new();
        if scale.is_zero() {
            return LaurentPoly { terms };
        }
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(shift + i as i64, scale * BigRational::from_integer(c.clone()));
            }
        }
        LaurentPoly { terms }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }

    pub fn leading_is_positive(&self) -> bool {
        self.lead_coeff().is_some_and(|c| c.is_positive())
    }
}

pub(crate) fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = LaurentPoly::from_terms([(1, r(2)), (1, r(-2)), (0, r(3))]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(0), r(3));
    }

    #[test]
    fn multiply_with_negative_exponents() {
        let a = LaurentPoly::from_terms([(-1, r(1)), (1, r(1))]);
        let sq = a.mul(&a);
        assert_eq!(sq, LaurentPoly::from_terms([(-2, r(1)), (0, r(2)), (2, r(1))]));
    }

    #[test]
    fn primitive_decomposition_round_trips() {
        let p = LaurentPoly::from_terms([
            (-2, BigRational::new(BigInt::from(3), BigInt::from(2))),
            (0, r(-6)),
        ]);
        let (s, k, z) = p.to_primitive();
        assert_eq!(s, -2);
        assert_eq!(LaurentPoly::from_zpoly(s, &k, &z), p);
        assert!(z.lead().unwrap().is_positive());
    }

    #[test]
    fn eval_at_zero_with_pole() {
        let p = LaurentPoly::monomial(r(1), -1);
        assert_eq!(p.eval(&r(0)), None);
        assert_eq!(p.eval(&r(2)), Some(BigRational::new(BigInt::from(1), BigInt::from(2))));
    }
}
