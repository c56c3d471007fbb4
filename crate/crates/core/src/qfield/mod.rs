//! Exact arithmetic in ℚ(q) and its specializations.
//!
//! [`QRat`] is the canonical rational-function type. [`CoeffField`] abstracts
//! over the three places computations can run: [`Symbolic`] (ℚ(q)),
//! [`Sampled`] (ℚ at a rational `q`) and [`ModP`] (𝔽_p, rank bounds only).

mod field;
mod laurent;
mod qrat;
mod sample;
mod zpoly;

pub use field::{CoeffField, ModP, Mode, Sampled, Symbolic, DEFAULT_PRIME};
pub use laurent::LaurentPoly;
pub use qrat::QRat;
pub use sample::{admissibility_radius, is_admissible_radius, render_rational, QSample, DEFAULT_SHIFT_BOUND};
pub use zpoly::ZPoly;

use crate::cochains::Window;

/// The q-number `{n}` in ℚ(q).
pub fn qnum(n: i64) -> QRat {
    QRat::qnum(n)
}

/// Exact value of `x` at the sample point.
pub fn eval(x: &QRat, s: &QSample) -> crate::Result<num_rational::BigRational> {
    x.eval(s.value())
}

/// Whether `s` avoids every pole the window computations can meet.
pub fn is_admissible(s: &QSample, window: &Window) -> bool {
    is_admissible_radius(s, admissibility_radius(window.n(), DEFAULT_SHIFT_BOUND))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn small_qrat() -> impl Strategy<Value = QRat> {
        let poly = proptest::collection::vec((-3i64..=3, -6i64..=6), 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))))
        });
        (poly.clone(), poly).prop_map(|(n, d)| {
            if d.is_zero() {
                QRat::from_laurent(n)
            } else {
                QRat::from_parts(n, d).unwrap()
            }
        })
    }

    #[test]
    fn pascal_identity_symbolic() {
        for n in -20..=20 {
            for m in -20..=20 {
                let rhs = &qnum(n) + &(&QRat::q_pow(n) * &qnum(m));
                assert_eq!(qnum(n + m), rhs, "n={n} m={m}");
            }
        }
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(x in small_qrat()) {
            prop_assert_eq!(x.normalized(), x.clone());
            let back: QRat = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn denominator_is_monic_polynomial(x in small_qrat()) {
            let d = x.denominator();
            prop_assert!(!d.has_negative_exponent());
            prop_assert!(d.lead_coeff().unwrap() == &BigRational::from_integer(BigInt::from(1)));
            prop_assert!(!d.coeff(0).is_zero() || x.is_zero());
        }

        #[test]
        fn equality_matches_cross_multiplication(x in small_qrat(), y in small_qrat()) {
            let cross = x.numerator().mul(y.denominator()) == y.numerator().mul(x.denominator());
            prop_assert_eq!(cross, x == y);
        }

        #[test]
        fn field_axioms(x in small_qrat(), y in small_qrat(), z in small_qrat()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }

    /// Evaluation is a ring homomorphism on 100 seeded random pairs.
    #[test]
    fn evaluation_homomorphism() {
        use proptest::test_runner::{Config, TestRunner};
        let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
        let s = QSample::from_ratio(7, 3).unwrap();
        runner
            .run(&(small_qrat(), small_qrat()), |(x, y)| {
                let (ex, ey) = (eval(&x, &s), eval(&y, &s));
                if let (Ok(ex), Ok(ey)) = (ex, ey) {
                    prop_assert_eq!(eval(&(&x + &y), &s).unwrap(), &ex + &ey);
                    prop_assert_eq!(eval(&(&x * &y), &s).unwrap(), &ex * &ey);
                }
                Ok(())
            })
            .unwrap();
    }

    #[test]
    fn admissibility_on_windows() {
        let w = Window::new(12, 6).unwrap();
        assert!(is_admissible(&QSample::from_ratio(2, 1).unwrap(), &w));
        assert!(is_admissible(&QSample::from_ratio(3, 2).unwrap(), &w));
    }
}
