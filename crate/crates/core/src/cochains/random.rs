//! Seeded random cochains. Coefficients are drawn in key order, so a seed
//! determines the output exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cochain::{one_keys, window_pair_keys, Cochain1, Cochain2};
use super::keys::{one_target, OneKey};
use super::window::Window;
use crate::qfield::{LaurentPoly, QRat, Symbolic};
use crate::qwitt::{alpha_coeff, Parity};

/// Shape of random coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    /// Integers in `[-9, 9]`.
    #[default]
    Integer,
    /// Polynomials in `q` of degree at most 2 with coefficients in `[-9, 9]`.
    Polynomial,
}

fn draw(rng: &mut ChaCha8Rng, kind: CoeffKind) -> QRat {
    match kind {
        CoeffKind::Integer => QRat::from_int(rng.gen_range(-9..=9)),
        CoeffKind::Polynomial => {
            let terms = (0..3).map(|e| (e, BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))));
            QRat::from_laurent(LaurentPoly::from_terms(terms))
        }
    }
}

pub fn random_cochain1(parity: Parity, s: i64, window: &Window, seed: u64, kind: CoeffKind) -> Cochain1<QRat> {
    random_cochain1_filtered(parity, s, window, seed, kind, |_| true)
}

/// Random 1-cochain restricted to unknowns for which `g ∘ α = α ∘ g`.
pub fn random_alpha_compatible_cochain1(parity: Parity, s: i64, window: &Window, seed: u64, kind: CoeffKind) -> Cochain1<QRat> {
    let f = Symbolic::new();
    random_cochain1_filtered(parity, s, window, seed, kind, |k| {
        let x = k.input();
        alpha_coeff(&f, x) == alpha_coeff(&f, one_target(parity, s, x))
    })
}

fn random_cochain1_filtered(
    parity: Parity,
    s: i64,
    window: &Window,
    seed: u64,
    kind: CoeffKind,
    keep: impl Fn(&OneKey) -> bool,
) -> Cochain1<QRat> {
    let f = Symbolic::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Cochain1::new(parity, s);
    for k in one_keys(window.n()) {
        let v = draw(&mut rng, kind);
        if keep(&k) {
            g.set(&f, k, v);
        }
    }
    g
}

/// Random 2-cochain on every canonical window pair.
pub fn random_cochain2(parity: Parity, s: i64, window: &Window, seed: u64, kind: CoeffKind) -> Cochain2<QRat> {
    let f = Symbolic::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Cochain2::new(parity, s, window.n());
    for k in window_pair_keys(window) {
        let v = draw(&mut rng, kind);
        c.set_key(&f, k, v);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::Table;
    use crate::qfield::Symbolic;

    #[test]
    fn deterministic_for_a_seed() {
        let w = Window::new(6, 0).unwrap();
        let a = random_cochain2(Parity::Even, 0, &w, 1, CoeffKind::Integer);
        let b = random_cochain2(Parity::Even, 0, &w, 1, CoeffKind::Integer);
        assert_eq!(a, b);
        assert_ne!(a, random_cochain2(Parity::Even, 0, &w, 2, CoeffKind::Integer));
    }

    #[test]
    fn symmetry_invariants_hold() {
        let f = Symbolic::new();
        let w = Window::new(6, 0).unwrap();
        let c = random_cochain2(Parity::Odd, 1, &w, 9, CoeffKind::Polynomial);
        for n in -3..=3 {
            assert!(c.get(&f, Table::A, n, n).is_zero());
            for p in -3..=3 {
                assert_eq!(c.get(&f, Table::C, n, p), c.get(&f, Table::C, p, n));
                assert_eq!(c.get(&f, Table::A, n, p), -c.get(&f, Table::A, p, n));
            }
        }
    }

    #[test]
    fn alpha_compatible_supports() {
        let w = Window::new(4, 0).unwrap();
        let even0 = random_alpha_compatible_cochain1(Parity::Even, 0, &w, 3, CoeffKind::Integer);
        let full = random_cochain1(Parity::Even, 0, &w, 3, CoeffKind::Integer);
        assert_eq!(even0, full);
        let odd1 = random_alpha_compatible_cochain1(Parity::Odd, 1, &w, 3, CoeffKind::Integer);
        assert!(odd1.values().keys().all(|k| k.table == Table::B));
        let odd_m1 = random_alpha_compatible_cochain1(Parity::Odd, -1, &w, 3, CoeffKind::Integer);
        assert!(odd_m1.values().keys().all(|k| k.table == Table::A));
        assert!(random_alpha_compatible_cochain1(Parity::Even, 2, &w, 3, CoeffKind::Integer).is_zero());
    }
}
