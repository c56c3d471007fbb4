//! Elements of ℚ(q) in canonical form.
//!
//! A value is stored as `num / den` where `den` is a monic polynomial with
//! nonzero constant term and `gcd(num, den) = 1`. Powers of `q` live in the
//! numerator, so two values are equal exactly when their fields are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentPoly;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        QRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QRat::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        QRat { num: LaurentPoly::constant(r), den: LaurentPoly::one() }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        QRat { num: p, den: LaurentPoly::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QRat::q_pow(1)
    }

    pub fn q_pow(n: i64) -> Self {
        QRat::from_laurent(LaurentPoly::monomial(BigRational::one(), n))
    }

    /// The q-number `{n} = (1 - q^n)/(1 - q)`.
    pub fn qnum(n: i64) -> Self {
        let one = BigRational::one();
        let p = if n >= 0 {
            LaurentPoly::from_terms((0..n).map(|e| (e, one.clone())))
        } else {
            LaurentPoly::from_terms((n..0).map(|e| (e, -one.clone())))
        };
        QRat::from_laurent(p)
    }

    /// `1 + q^n`.
    pub fn one_plus_q_pow(n: i64) -> Self {
        let one = BigRational::one();
        QRat::from_laurent(LaurentPoly::from_terms([(0, one.clone()), (n, one)]))
    }

    /// Build `num / den` and bring it to canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("QRat denominator".into()));
        }
        Ok(normalize(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Recompute the canonical form; a no-op on values built by this module.
    pub fn normalized(&self) -> Self {
        normalize(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero".into()));
        }
        Ok(normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `q = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let pole = || Error::EvalPole(x.to_string());
        let d = self.den.eval(x).ok_or_else(pole)?;
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval(x).ok_or_else(pole)?;
        Ok(n / d)
    }

    /// Value modulo the prime `p` at `q = x`, if the denominator is a unit.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let n = laurent_mod(&self.num, x, p)?;
        let d = laurent_mod(&self.den, x, p)?;
        if d == 0 {
            return None;
        }
        Some(mulmod(n, inv_mod(d, p), p))
    }
}

fn normalize(num: LaurentPoly, den: LaurentPoly) -> QRat {
    if num.is_zero() {
        return QRat::zero();
    }
    if den.len() == 1 {
        let (&k, c) = den.terms().iter().next().unwrap();
        let num = if den.is_one() { num } else { num.shift(-k).scale(&c.recip()) };
        return QRat { num, den: LaurentPoly::one() };
    }
    let (sn, cn, pn) = num.to_primitive();
    let (sd, cd, pd) = den.to_primitive();
    let g = ZPoly::gcd_primitive(&pn, &pd);
    let (pn, pd) = if g.is_one() {
        (pn, pd)
    } else {
        (pn.div_exact(&g).expect("gcd divides"), pd.div_exact(&g).expect("gcd divides"))
    };
    let lead = BigRational::from_integer(pd.lead().unwrap().clone());
    let scale = cn / (cd * &lead);
    QRat {
        num: LaurentPoly::from_zpoly(sn - sd, &scale, &pn),
        den: LaurentPoly::from_zpoly(0, &lead.recip(), &pd),
    }
}

fn laurent_mod(p: &LaurentPoly, x: u64, m: u64) -> Option<u64> {
    let xi = if p.has_negative_exponent() {
        if x % m == 0 {
            return None;
        }
        Some(inv_mod(x % m, m))
    } else {
        None
    };
    let mut acc = 0u64;
    for (e, c) in p.terms() {
        let cm = rat_mod(c, m)?;
        let base = if *e < 0 { xi.unwrap() } else { x % m };
        acc = (acc + mulmod(cm, powmod(base, e.unsigned_abs(), m), m)) % m;
    }
    Some(acc)
}

pub(crate) fn rat_mod(c: &BigRational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let n: u64 = num_integer::Integer::mod_floor(c.numer(), &mb).try_into().ok()?;
    let d: u64 = num_integer::Integer::mod_floor(c.denom(), &mb).try_into().ok()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, inv_mod(d, m), m))
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    powmod(a, m - 2, m)
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return normalize(self.num.add(&o.num), self.den.clone());
        }
        normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QRat { num: self.num.mul(&o.num), den: LaurentPoly::one() };
        }
        normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

// ---- rendering ----

fn render_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_term(e: i64, c: &BigRational) -> String {
    let var = match e {
        0 => return render_coeff(c),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    if c.is_one() {
        var
    } else if (-c).is_one() {
        format!("-{var}")
    } else {
        format!("{}*{var}", render_coeff(c))
    }
}

pub(crate) fn render_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in p.terms().iter().enumerate() {
        if i == 0 {
            s.push_str(&render_term(*e, c));
        } else if c.is_negative() {
            s.push_str(" - ");
            s.push_str(&render_term(*e, &-c.clone()));
        } else {
            s.push_str(" + ");
            s.push_str(&render_term(*e, c));
        }
    }
    s
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = render_poly(&self.den);
        if self.den.len() == 1 {
            write!(f, "({})/{}", render_poly(&self.num), den)
        } else {
            write!(f, "({})/({})", render_poly(&self.num), den)
        }
    }
}

// ---- parsing ----

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            what: "QRat",
            message: format!("{msg} at byte {} of {:?}", self.i, String::from_utf8_lossy(self.s)),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    /// term := coeff ['*' var] | var ; var := 'q' ['^' int]
    fn term(&mut self) -> Result<(i64, BigRational)> {
        let mut c = BigRational::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.uint()?;
            let d = if self.peek() == Some(b'/') && self.s.get(self.i + 1).is_some_and(|b| b.is_ascii_digit()) {
                self.i += 1;
                self.uint()?
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return Err(self.err("zero denominator in coefficient"));
            }
            c = BigRational::new(n, d);
            has_coeff = true;
            if !self.eat(b'*') {
                return Ok((0, c));
            }
        }
        if !self.eat(b'q') {
            return Err(self.err(if has_coeff { "expected 'q' after '*'" } else { "expected term" }));
        }
        let e = if self.eat(b'^') { self.int()? } else { 1 };
        Ok((e, c))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let (e, c) = self.term()?;
            p.add_term(e, if sign < 0 { -c } else { c });
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(p);
            }
        }
    }

    fn group(&mut self) -> Result<LaurentPoly> {
        if self.eat(b'(') {
            let p = self.poly()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(p)
        } else {
            self.poly()
        }
    }
}

impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor { s: s.as_bytes(), i: 0 };
        let num = c.group()?;
        let den = if c.eat(b'/') { c.group()? } else { LaurentPoly::one() };
        if c.peek().is_some() {
            return Err(c.err("trailing input"));
        }
        QRat::from_parts(num, den)
    }
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
