use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qfield::{CoeffField, LaurentPoly, ModP, QRat, Sampled, Symbolic, ZPoly};

/// An integral domain in which rows are eliminated by cross-multiplication.
pub trait Domain: Send + Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn is_zero(&self, x: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Rough storage size, used to break pivot ties toward small entries.
    fn size(&self, x: &Self::E) -> usize;
    /// Reduce `(a, b)` by a common factor before cross-multiplying.
    fn cancel(&self, a: &Self::E, b: &Self::E) -> (Self::E, Self::E);
    /// Divide a nonzero row by its content and fix its sign.
    fn normalize(&self, row: &mut [(usize, Self::E)]);
}

/// Polynomials in `q` over ℤ.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolyDomain;

impl Domain for PolyDomain {
    type E = ZPoly;

    fn is_zero(&self, x: &ZPoly) -> bool {
        x.is_zero()
    }

    fn mul(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        a.mul(b)
    }

    fn sub(&self, a: &ZPoly, b: &ZPoly) -> ZPoly {
        a.sub(b)
    }

    fn neg(&self, a: &ZPoly) -> ZPoly {
        a.neg()
    }

    fn size(&self, x: &ZPoly) -> usize {
        x.coeffs().iter().map(|c| c.bits() as usize + 1).sum()
    }

    fn cancel(&self, a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
        let g = ZPoly::gcd(a, b);
        if g.is_one() || g.is_zero() {
            return (a.clone(), b.clone());
        }
        (a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"))
    }

    fn normalize(&self, row: &mut [(usize, ZPoly)]) {
        let Some(first) = row.first() else { return };
        let mut g = first.1.clone();
        for (_, x) in row.iter().skip(1) {
            if g.is_one() {
                break;
            }
            g = ZPoly::gcd(&g, x);
        }
        if row[0].1.lead().is_some_and(|l| l.is_negative()) {
            g = g.neg();
        }
        if g.is_one() {
            return;
        }
        for (_, x) in row.iter_mut() {
            *x = x.div_exact(&g).expect("content divides");
        }
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntDomain;

impl Domain for IntDomain {
    type E = BigInt;

    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn size(&self, x: &BigInt) -> usize {
        x.bits() as usize
    }

    fn cancel(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let g = a.gcd(b);
        if g.is_one() || g.is_zero() {
            return (a.clone(), b.clone());
        }
        (a / &g, b / &g)
    }

    fn normalize(&self, row: &mut [(usize, BigInt)]) {
        let Some(first) = row.first() else { return };
        let mut g = first.1.abs();
        for (_, x) in row.iter().skip(1) {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if row[0].1.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return;
        }
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// 𝔽_p; rows are scaled to a leading one.
#[derive(Clone, Copy, Debug)]
pub struct PrimeDomain {
    pub p: u64,
}

impl PrimeDomain {
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut e, mut r) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(r, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        r
    }
}

impl Domain for PrimeDomain {
    type E = u64;

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn size(&self, _: &u64) -> usize {
        1
    }

    fn cancel(&self, a: &u64, b: &u64) -> (u64, u64) {
        // Over a field the pivot can be scaled to one.
        (self.mulmod(*a, self.inv(*b)), 1)
    }

    fn normalize(&self, row: &mut [(usize, u64)]) {
        let Some(first) = row.first() else { return };
        if first.1 == 1 {
            return;
        }
        let k = self.inv(first.1);
        for (_, x) in row.iter_mut() {
            *x = self.mulmod(*x, k);
        }
    }
}

/// A coefficient field whose rows can be cleared into a [`Domain`].
pub trait Exact: CoeffField {
    type D: Domain;

    fn domain(&self) -> Self::D;
    /// Multiply a row by a nonzero scalar so that every entry lies in the domain.
    fn clear_row(&self, row: &[(usize, Self::Elem)]) -> Vec<(usize, <Self::D as Domain>::E)>;
    /// `num / den` back in the field.
    fn ratio(&self, num: &<Self::D as Domain>::E, den: &<Self::D as Domain>::E) -> Self::Elem;
}

impl Exact for Symbolic {
    type D = PolyDomain;

    fn domain(&self) -> PolyDomain {
        PolyDomain
    }

    fn clear_row(&self, row: &[(usize, QRat)]) -> Vec<(usize, ZPoly)> {
        // Common denominator: lcm of the (primitive, monic up to content) denominators.
        let mut l = ZPoly::one();
        for (_, x) in row {
            let (_, _, d) = x.denominator().to_primitive();
            if !d.is_one() {
                let g = ZPoly::gcd_primitive(&l, &d);
                l = l.mul(&d.div_exact(&g).expect("gcd divides"));
            }
        }
        let lq = LaurentPoly::from_zpoly(0, &BigRational::one(), &l);
        let scaled: Vec<(usize, LaurentPoly)> = row
            .iter()
            .map(|(c, x)| {
                let y = &QRat::from_laurent(lq.clone()) * x;
                debug_assert!(y.is_laurent());
                (*c, y.numerator().clone())
            })
            .collect();
        let lo = scaled.iter().filter_map(|(_, y)| y.min_exp()).min().unwrap_or(0);
        let mut den = BigInt::one();
        for (_, y) in &scaled {
            for c in y.terms().values() {
                den = den.lcm(c.denom());
            }
        }
        scaled
            .into_iter()
            .filter(|(_, y)| !y.is_zero())
            .map(|(c, y)| {
                let hi = y.max_exp().unwrap();
                let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, v) in y.terms() {
                    coeffs[(e - lo) as usize] = v.numer() * (&den / v.denom());
                }
                (c, ZPoly::from_coeffs(coeffs))
            })
            .collect()
    }

    fn ratio(&self, num: &ZPoly, den: &ZPoly) -> QRat {
        let one = BigRational::one();
        QRat::from_parts(LaurentPoly::from_zpoly(0, &one, num), LaurentPoly::from_zpoly(0, &one, den))
            .expect("pivot is nonzero")
    }
}

impl Exact for Sampled {
    type D = IntDomain;

    fn domain(&self) -> IntDomain {
        IntDomain
    }

    fn clear_row(&self, row: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
        let mut den = BigInt::one();
        for (_, x) in row {
            den = den.lcm(x.denom());
        }
        row.iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (*c, x.numer() * (&den / x.denom())))
            .collect()
    }

    fn ratio(&self, num: &BigInt, den: &BigInt) -> BigRational {
        BigRational::new(num.clone(), den.clone())
    }
}

impl Exact for ModP {
    type D = PrimeDomain;

    fn domain(&self) -> PrimeDomain {
        PrimeDomain { p: self.prime() }
    }

    fn clear_row(&self, row: &[(usize, u64)]) -> Vec<(usize, u64)> {
        row.iter().filter(|(_, x)| *x != 0).cloned().collect()
    }

    fn ratio(&self, num: &u64, den: &u64) -> u64 {
        self.mul(num, &self.inv(den).expect("pivot is nonzero"))
    }
}
