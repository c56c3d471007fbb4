//! Coefficient contexts. Every algebraic routine is generic over a
//! [`CoeffField`], so the same code runs over ℚ(q), over ℚ at a sampled `q`,
//! or over 𝔽_p at a residue of `q` (used only for rank bounds).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::pow_rat;
use super::qrat::{inv_mod, mulmod, powmod, rat_mod, QRat};
use super::sample::{render_rational, QSample};
use crate::error::{Error, Result};

/// How `q` is treated in a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "q")]
pub enum Mode {
    Symbolic,
    Sampled(QSample),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => f.write_str("symbolic"),
            Mode::Sampled(s) => write!(f, "sampled({s})"),
        }
    }
}

pub trait CoeffField: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Specialize an element of ℚ(q) into this context.
    fn from_qrat(&self, x: &QRat) -> Result<Self::Elem>;
    /// Lift back to ℚ(q) for rendering and serialization.
    fn to_qrat(&self, x: &Self::Elem) -> QRat;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn q_pow(&self, n: i64) -> Self::Elem;
    fn qnum(&self, n: i64) -> Self::Elem;
    fn mode(&self) -> Option<Mode>;
    /// Short text form of an element.
    fn render(&self, x: &Self::Elem) -> String;

    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Division guarded with a description of what was being divided by.
    fn div_ctx(&self, x: &Self::Elem, y: &Self::Elem, what: &str) -> Result<Self::Elem> {
        if self.is_zero(y) {
            return Err(Error::DivisionByZero(what.to_string()));
        }
        self.div(x, y)
    }

    fn one_plus_q_pow(&self, n: i64) -> Self::Elem {
        self.add(&self.one(), &self.q_pow(n))
    }

    /// `{a} - {b}`, the shape of every structure constant.
    fn qdiff(&self, a: i64, b: i64) -> Self::Elem {
        self.sub(&self.qnum(a), &self.qnum(b))
    }

    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem) {
        *acc = self.add(acc, x);
    }

    fn sign(&self, x: &Self::Elem, negative: bool) -> Self::Elem {
        if negative {
            self.neg(x)
        } else {
            x.clone()
        }
    }
}

const CACHE_RADIUS: i64 = 96;

#[derive(Debug)]
struct PowCache<T> {
    pows: Vec<T>,
    nums: Vec<T>,
}

impl<T: Clone> PowCache<T> {
    fn get(v: &[T], n: i64) -> Option<T> {
        if n.abs() <= CACHE_RADIUS {
            Some(v[(n + CACHE_RADIUS) as usize].clone())
        } else {
            None
        }
    }
}

/// Exact arithmetic in ℚ(q).
#[derive(Clone, Debug)]
pub struct Symbolic {
    cache: Arc<PowCache<QRat>>,
}

impl Default for Symbolic {
    fn default() -> Self {
        Symbolic::new()
    }
}

impl Symbolic {
    pub fn new() -> Self {
        let range = -CACHE_RADIUS..=CACHE_RADIUS;
        Symbolic {
            cache: Arc::new(PowCache {
                pows: range.clone().map(QRat::q_pow).collect(),
                nums: range.map(QRat::qnum).collect(),
            }),
        }
    }
}

impl CoeffField for Symbolic {
    type Elem = QRat;

    fn zero(&self) -> QRat {
        QRat::zero()
    }
    fn one(&self) -> QRat {
        QRat::one()
    }
    fn from_i64(&self, n: i64) -> QRat {
        QRat::from_int(n)
    }
    fn from_qrat(&self, x: &QRat) -> Result<QRat> {
        Ok(x.clone())
    }
    fn to_qrat(&self, x: &QRat) -> QRat {
        x.clone()
    }
    fn is_zero(&self, x: &QRat) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &QRat, y: &QRat) -> QRat {
        x + y
    }
    fn sub(&self, x: &QRat, y: &QRat) -> QRat {
        x - y
    }
    fn mul(&self, x: &QRat, y: &QRat) -> QRat {
        x * y
    }
    fn neg(&self, x: &QRat) -> QRat {
        -x
    }
    fn inv(&self, x: &QRat) -> Result<QRat> {
        x.inv()
    }
    fn q_pow(&self, n: i64) -> QRat {
        PowCache::get(&self.cache.pows, n).unwrap_or_else(|| QRat::q_pow(n))
    }
    fn qnum(&self, n: i64) -> QRat {
        PowCache::get(&self.cache.nums, n).unwrap_or_else(|| QRat::qnum(n))
    }
    fn mode(&self) -> Option<Mode> {
        Some(Mode::Symbolic)
    }
    fn render(&self, x: &QRat) -> String {
        x.to_string()
    }
}

/// Exact arithmetic in ℚ with `q` replaced by a rational sample.
#[derive(Clone, Debug)]
pub struct Sampled {
    q: QSample,
    cache: Arc<PowCache<BigRational>>,
}

impl Sampled {
    pub fn new(q: QSample) -> Self {
        let one = BigRational::one();
        let range: Vec<i64> = (-CACHE_RADIUS..=CACHE_RADIUS).collect();
        let pows: Vec<BigRational> = range.iter().map(|&n| pow_rat(q.value(), n)).collect();
        // {n} = (1 - q^n)/(1 - q)
        let denom = (&one - q.value()).recip();
        let nums = pows.iter().map(|p| (&one - p) * &denom).collect();
        Sampled { q, cache: Arc::new(PowCache { pows, nums }) }
    }

    pub fn sample(&self) -> &QSample {
        &self.q
    }
}

impl CoeffField for Sampled {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_qrat(&self, x: &QRat) -> Result<BigRational> {
        x.eval(self.q.value())
    }
    fn to_qrat(&self, x: &BigRational) -> QRat {
        QRat::from_rational(x.clone())
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::DivisionByZero(String::new()));
        }
        Ok(x.recip())
    }
    fn q_pow(&self, n: i64) -> BigRational {
        PowCache::get(&self.cache.pows, n).unwrap_or_else(|| pow_rat(self.q.value(), n))
    }
    fn qnum(&self, n: i64) -> BigRational {
        PowCache::get(&self.cache.nums, n).unwrap_or_else(|| {
            let one = BigRational::one();
            (&one - pow_rat(self.q.value(), n)) / (&one - self.q.value())
        })
    }
    fn mode(&self) -> Option<Mode> {
        Some(Mode::Sampled(self.q.clone()))
    }
    fn render(&self, x: &BigRational) -> String {
        render_rational(x)
    }
}

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

/// Arithmetic in 𝔽_p with `q` replaced by a fixed residue.
#[derive(Clone, Debug)]
pub struct ModP {
    p: u64,
    q: u64,
    qinv: u64,
}

impl ModP {
    /// `q` must be a nonzero residue.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        let q = q % p;
        if q == 0 {
            return Err(Error::InadmissibleSample(format!("0 mod {p}")));
        }
        Ok(ModP { p, q, qinv: inv_mod(q, p) })
    }

    /// Reduction of a rational sample, if its denominator is a unit mod `p`.
    pub fn for_sample(p: u64, s: &QSample) -> Result<Self> {
        let q = rat_mod(s.value(), p).ok_or_else(|| Error::InadmissibleSample(s.to_string()))?;
        ModP::new(p, q)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn q_residue(&self) -> u64 {
        self.q
    }
}

impl CoeffField for ModP {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_qrat(&self, x: &QRat) -> Result<u64> {
        x.eval_mod(self.q, self.p).ok_or_else(|| Error::EvalPole(format!("{} mod {}", self.q, self.p)))
    }
    fn to_qrat(&self, x: &u64) -> QRat {
        QRat::from_rational(BigRational::from_integer(BigInt::from(*x)))
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mulmod(*x, *y, self.p)
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }
    fn inv(&self, x: &u64) -> Result<u64> {
        if *x == 0 {
            return Err(Error::DivisionByZero(String::new()));
        }
        Ok(inv_mod(*x, self.p))
    }
    fn q_pow(&self, n: i64) -> u64 {
        let b = if n < 0 { self.qinv } else { self.q };
        powmod(b, n.unsigned_abs(), self.p)
    }
    fn qnum(&self, n: i64) -> u64 {
        // Geometric sum, valid even when q = 1 mod p.
        let mut acc = 0u64;
        if n >= 0 {
            let mut t = 1u64;
            for _ in 0..n {
                acc = self.add(&acc, &t);
                t = self.mul(&t, &self.q);
            }
            acc
        } else {
            let mut t = self.qinv;
            for _ in 0..(-n) {
                acc = self.add(&acc, &t);
                t = self.mul(&t, &self.qinv);
            }
            self.neg(&acc)
        }
    }
    fn mode(&self) -> Option<Mode> {
        None
    }
    fn render(&self, x: &u64) -> String {
        x.to_string()
    }
}
