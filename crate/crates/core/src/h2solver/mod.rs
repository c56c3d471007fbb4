//! Windowed second cohomology: the cocycle system of each `(parity, s)`
//! sector, the core quotient `dim πZ - dim π(B ∩ Z)`, and constructive
//! reductions of cocycles to coboundaries with checkable certificates.

mod quotient;
mod reduce;
mod system;

pub use quotient::{h2_core_dimension, h2_core_dimension_in, sweep, ClosedCoboundaries, QuotientReport, CSV_HEADER};
pub use reduce::{
    reduce, reduce_even_s0, reduce_even_s2, reduce_generic, reduce_odd_s1, reduce_odd_sm1, residual, solve_on_core, Certificate,
    CertificateJson, LemmaCheck, Method, Recipe, ReduceOptions, ResidualEntry,
};
pub use system::{build_system, check_admissible, coboundary_image_basis, nullspace, probe_for, SparseSystem, SYMBOLIC_PROBE_Q};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coboundary::{d1, d2, PrintedD2};
    use crate::cochains::{random_alpha_compatible_cochain1, random_cochain1, random_cochain2, CoeffKind, PairKey, Slot3, Table, TripleKey, Window};
    use crate::linalg::dot;
    use crate::qfield::{CoeffField, Mode, QRat, QSample, Sampled, Symbolic};
    use crate::qwitt::Parity;
    use crate::Error;

    fn sampled(p: i64, q: i64) -> Sampled {
        Sampled::new(QSample::from_ratio(p, q).unwrap())
    }

    #[test]
    fn lll_row_matches_the_printed_family() {
        let f = Symbolic::new();
        let w = Window::new(3, 0).unwrap();
        let sys = build_system(&f, Parity::Even, 0, &w);
        let t = TripleKey { slot: Slot3::LLL, n: 0, m: 1, p: 2 };
        let row = sys.row(&t).expect("row present");
        let printed = sys.to_row(&PrintedD2::Pairds.form(&f, 0, 0, 1, 2)).unwrap();
        assert_eq!(row, &printed);
    }

    #[test]
    fn odd_b_columns_only_meet_llg_rows() {
        let f = Symbolic::new();
        let w = Window::new(2, 0).unwrap();
        let sys = build_system(&f, Parity::Odd, 1, &w);
        for (t, r) in &sys.rows {
            if r.iter().any(|(c, _)| sys.columns[*c].table == Table::B) {
                assert!(matches!(t.slot, Slot3::LLG | Slot3::LGG), "{t}");
            }
        }
    }

    #[test]
    fn rows_are_dropped_when_they_leave_the_window() {
        let f = Symbolic::new();
        let w = Window::new(2, 0).unwrap();
        let sys = build_system(&f, Parity::Even, 1, &w);
        assert!(sys.row(&TripleKey { slot: Slot3::LLL, n: 2, m: 2, p: -2 }).is_none());
        for (_, r) in &sys.rows {
            assert!(!r.is_empty());
        }
    }

    #[test]
    fn closed_coboundaries_satisfy_every_row() {
        let f = sampled(2, 1);
        let w = Window::new(8, 2).unwrap();
        for (parity, s) in [(Parity::Even, 0), (Parity::Even, 3), (Parity::Odd, 1), (Parity::Odd, -1), (Parity::Odd, 2)] {
            let sys = build_system(&f, parity, s, &w);
            let closed = ClosedCoboundaries::new(&f, parity, s, &w).unwrap();
            let c = d1(&f, &closed.sample(&f, 7), &w);
            assert!(!c.is_zero(), "{parity} s={s}");
            let v = sys.to_vector(&f, &c);
            for (t, r) in &sys.rows {
                assert!(f.is_zero(&dot(&f, r, &v)), "{parity} s={s} {t}");
            }
        }
    }

    #[test]
    fn alpha_compatible_coboundaries_are_closed() {
        let f = sampled(2, 1);
        let w = Window::new(7, 1).unwrap();
        for (parity, s) in [(Parity::Even, 0), (Parity::Odd, 1), (Parity::Odd, -1)] {
            let g = random_alpha_compatible_cochain1(parity, s, &w, 5, CoeffKind::Integer).specialize(&f).unwrap();
            assert!(d2(&f, &d1(&f, &g, &w), &w).is_zero(), "{parity} s={s}");
        }
    }

    #[test]
    fn nullspace_vectors_solve_the_system() {
        let f = sampled(3, 2);
        let w = Window::new(6, 0).unwrap();
        let sys = build_system(&f, Parity::Odd, 2, &w);
        let (k, cert) = nullspace(&f, &sys).unwrap();
        assert_eq!(cert.kernel_dim, k.len());
        for v in &k {
            for (_, r) in &sys.rows {
                assert!(f.is_zero(&dot(&f, r, v)));
            }
        }
    }

    #[test]
    fn roots_of_unity_are_rejected_as_samples() {
        assert!(matches!(QSample::from_ratio(-1, 1), Err(Error::InadmissibleSample(_))));
        let f = sampled(2, 1);
        assert!(check_admissible(&f, &Window::new(12, 6).unwrap()).is_ok());
    }

    #[test]
    fn h2_core_vanishes_in_sampled_sectors() {
        let w = Window::new(10, 4).unwrap();
        let mode = Mode::Sampled(QSample::from_ratio(2, 1).unwrap());
        let sectors = [(Parity::Even, 0), (Parity::Even, 2), (Parity::Even, 3), (Parity::Odd, 1), (Parity::Odd, -1), (Parity::Odd, -2)];
        for r in sweep(&mode, &sectors, &w, false) {
            let r = r.unwrap();
            assert!(r.dim_b_core <= r.dim_z_core);
            assert_eq!(r.dim_h2_core, 0, "{:?}", r);
        }
    }

    #[test]
    fn symbolic_and_sampled_dimensions_agree() {
        let w = Window::new(3, 0).unwrap();
        for (parity, s) in [(Parity::Even, 0), (Parity::Odd, 1), (Parity::Odd, -1), (Parity::Even, -2)] {
            let a = h2_core_dimension(&Symbolic::new(), parity, s, &w).unwrap();
            let b = h2_core_dimension(&sampled(5, 3), parity, s, &w).unwrap();
            assert_eq!((a.dim_z_core, a.dim_b_core, a.dim_h2_core), (b.dim_z_core, b.dim_b_core, b.dim_h2_core), "{parity} {s}");
        }
    }

    #[test]
    fn csv_record_has_the_header_width() {
        let w = Window::new(7, 1).unwrap();
        let r = h2_core_dimension_in(&Mode::Sampled(QSample::from_ratio(2, 1).unwrap()), Parity::Even, 1, &w, true).unwrap();
        let rec = r.csv_record();
        assert_eq!(rec.len(), CSV_HEADER.len());
        assert!(!rec[8].is_empty());
    }

    fn coboundary_input(f: &Sampled, parity: Parity, s: i64, w: &Window, seed: u64) -> crate::cochains::Cochain2<num_rational::BigRational> {
        let g = ClosedCoboundaries::new(f, parity, s, w).unwrap().sample(f, seed);
        let c = d1(f, &g, w);
        assert!(!c.is_zero());
        c
    }

    #[test]
    fn reducers_certify_coboundaries() {
        let f = sampled(2, 1);
        let w = Window::new(9, 3).unwrap();
        for (parity, s) in [(Parity::Even, 0), (Parity::Even, 2), (Parity::Odd, 1), (Parity::Odd, -1), (Parity::Even, 3), (Parity::Odd, -3)] {
            let c = coboundary_input(&f, parity, s, &w, 11);
            let cert = reduce(&f, &c, &w, ReduceOptions::default()).unwrap();
            assert!(cert.verify(&f), "{parity} {s}");
            let h = residual(&f, &c, &cert.g, &w);
            assert!(h.values().keys().all(|k| !k.in_core(&w)));
        }
    }

    #[test]
    fn zero_cochain_reduces_to_zero() {
        let f = Symbolic::new();
        let w = Window::new(4, 0).unwrap();
        let c = crate::cochains::Cochain2::<QRat>::new(Parity::Even, 0, 4);
        let cert = reduce(&f, &c, &w, ReduceOptions { strict: true }).unwrap();
        assert!(cert.g.is_zero());
        assert_eq!(cert.method, Method::Printed);
    }

    #[test]
    fn reducer_rejects_other_sectors_and_non_cocycles() {
        let f = sampled(2, 1);
        let w = Window::new(8, 2).unwrap();
        let c = coboundary_input(&f, Parity::Even, 3, &w, 1);
        assert!(matches!(reduce_even_s0(&f, &c, &w, ReduceOptions::default()), Err(Error::WrongSector { .. })));
        let bad = random_cochain2(Parity::Even, 0, &w, 3, CoeffKind::Integer).specialize(&f).unwrap();
        assert!(matches!(reduce(&f, &bad, &w, ReduceOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn certificate_json_round_trips() {
        let f = sampled(3, 2);
        let w = Window::new(8, 2).unwrap();
        let c = coboundary_input(&f, Parity::Odd, 2, &w, 4);
        let cert = reduce(&f, &c, &w, ReduceOptions::default()).unwrap();
        let j = cert.to_json_value(&f);
        let text = serde_json::to_string(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.residual.entries.iter().filter(|e| PairKey { table: e.slot, n: e.n, p: e.p }.in_core(&w)).count(), 0);
    }

    #[test]
    fn general_odd_coboundary_is_not_a_window_cocycle() {
        let f = sampled(2, 1);
        let w = Window::new(6, 0).unwrap();
        let g = random_cochain1(Parity::Odd, 1, &w, 2, CoeffKind::Integer).specialize(&f).unwrap();
        let c = d1(&f, &g, &w);
        assert!(matches!(reduce(&f, &c, &w, ReduceOptions::default()), Err(Error::Precondition(_))));
    }
}
