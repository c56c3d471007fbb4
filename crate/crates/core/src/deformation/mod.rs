//! Truncated one-parameter formal deformations `[.,.]_t = Σ tⁱ [.,.]_i` of
//! the bracket and formal automorphisms `φ_t = id + Σ tⁱ φ_i`, checked order
//! by order on a window.
//!
//! Expanding `φ_t([x,y]_t) = [φ_t x, φ_t y]'_t` at order one gives
//! `[.,.]'_1 = [.,.]_1 - δ¹φ_1` for even `φ_1`, so a first-order term
//! `δ¹g` is removed by `φ_1 = g`.

mod formal;
mod ops;

pub use formal::{AutomorphismJson, DeformationJson, GradedBracket, GradedMap, TruncatedAutomorphism, TruncatedDeformation};
pub use ops::{
    apply_equivalence, commutes_with_alpha, d2_of_bracket, deform_report, deformation_defect, first_order_cocycle_check,
    trivialize_first_order, truncated_inverse, verify_witness, DeformReport, FirstOrderCheck, Trivialization, Witness,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coboundary::d1;
    use crate::h2solver::ClosedCoboundaries;
    use crate::cochains::{random_cochain1, random_cochain2, window_pair_keys, CoeffKind, Cochain1, Window};
    use crate::qfield::{CoeffField, QRat, QSample, Sampled, Symbolic};
    use crate::qwitt::{bracket, generators, jacobi_defect, Element, Parity};

    fn sampled() -> Sampled {
        Sampled::new(QSample::from_ratio(2, 1).unwrap())
    }

    fn coboundary_deformation(f: &Sampled, w: Window, seed: u64) -> (TruncatedDeformation<num_rational::BigRational>, Vec<Cochain1<num_rational::BigRational>>) {
        let mut gs = Vec::new();
        let mut parts = Vec::new();
        for s in [0, 2, -1] {
            let g = ClosedCoboundaries::new(f, Parity::Even, s, &w).unwrap().sample(f, seed.wrapping_add_signed(s));
            parts.push(d1(f, &g, &w));
            gs.push(g);
        }
        (TruncatedDeformation::first_order(f, w, parts).unwrap(), gs)
    }

    #[test]
    fn order_zero_defect_is_the_jacobi_defect() {
        let f = Symbolic::new();
        let w = Window::new(3, 0).unwrap();
        let d = TruncatedDeformation::<QRat>::trivial(w, 1);
        let gens = generators(-2, 2);
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    let a = deformation_defect(&f, &d, 0, x, y, z).unwrap();
                    assert_eq!(a, jacobi_defect(&f, x, y, z));
                    assert!(a.is_zero());
                }
            }
        }
    }

    #[test]
    fn order_one_defect_is_signed_d2() {
        let f = sampled();
        let w = Window::new(4, 0).unwrap();
        let parts = vec![
            random_cochain2(Parity::Even, 1, &w, 3, CoeffKind::Integer).specialize(&f).unwrap(),
            random_cochain2(Parity::Even, -2, &w, 4, CoeffKind::Integer).specialize(&f).unwrap(),
        ];
        let d = TruncatedDeformation::first_order(&f, w, parts).unwrap();
        let mut compared = 0;
        for t in crate::cochains::TripleKey::enumerate(2) {
            let (x, y, z) = t.inputs();
            let (Ok(a), Ok(b)) = (deformation_defect(&f, &d, 1, x, y, z), d2_of_bracket(&f, &d, x, y, z)) else { continue };
            let b = if x.parity().is_odd() && z.parity().is_odd() { b.scale(&f, &f.neg(&f.one())) } else { b };
            assert_eq!(a, b, "{t}");
            compared += 1;
        }
        assert!(compared > 50);
    }

    #[test]
    fn coboundary_first_order_terms_pass_and_trivialize() {
        let f = sampled();
        let w = Window::new(9, 3).unwrap();
        let (d, _) = coboundary_deformation(&f, w, 1);
        let check = first_order_cocycle_check(&f, &d).unwrap();
        assert!(check.cocycle && check.checked > 0);
        let t = trivialize_first_order(&f, &d).unwrap();
        assert!(t.order1_core_zero);
        // Components of nonzero degree force a φ_1 that does not commute with α.
        assert!(!t.commutes_with_alpha);

        let g = ClosedCoboundaries::new(&f, Parity::Even, 0, &w).unwrap().sample(&f, 4);
        let d0 = TruncatedDeformation::first_order(&f, w, vec![d1(&f, &g, &w)]).unwrap();
        let t0 = trivialize_first_order(&f, &d0).unwrap();
        assert!(t0.order1_core_zero && t0.commutes_with_alpha);
    }

    #[test]
    fn random_first_order_term_fails_with_a_verified_witness() {
        let f = sampled();
        let w = Window::new(4, 0).unwrap();
        let c = random_cochain2(Parity::Even, 1, &w, 9, CoeffKind::Integer).specialize(&f).unwrap();
        let d = TruncatedDeformation::first_order(&f, w, vec![c]).unwrap();
        let check = first_order_cocycle_check(&f, &d).unwrap();
        assert!(!check.cocycle);
        assert!(verify_witness(&f, &d, check.witness.as_ref().unwrap()));
        assert!(matches!(trivialize_first_order(&f, &d), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn zero_first_order_term_is_a_cocycle_with_identity_trivialization() {
        let f = Symbolic::new();
        let w = Window::new(3, 0).unwrap();
        let d = TruncatedDeformation::<QRat>::trivial(w, 2);
        assert!(first_order_cocycle_check(&f, &d).unwrap().cocycle);
        let t = trivialize_first_order(&f, &d).unwrap();
        assert!(t.automorphism.maps.iter().all(|m| m.is_zero()));
        assert_eq!(t.transformed, d);
    }

    #[test]
    fn identity_automorphism_leaves_the_deformation_unchanged() {
        let f = sampled();
        let w = Window::new(6, 0).unwrap();
        let (d, _) = coboundary_deformation(&f, w, 5);
        let out = apply_equivalence(&f, &d, &TruncatedAutomorphism::identity(w, 1)).unwrap();
        for k in window_pair_keys(&w) {
            let (x, y) = k.inputs();
            assert_eq!(out.bracket_at(&f, 1, x, y).unwrap(), d.bracket_at(&f, 1, x, y).unwrap());
        }
    }

    #[test]
    fn order_one_effect_is_minus_d1() {
        // Expand φ_t([x,y]) = [φ_t x, φ_t y]'_t at order one by hand for a trivial D.
        let f = sampled();
        let w = Window::new(5, 0).unwrap();
        let g = random_cochain1(Parity::Even, 1, &w, 2, CoeffKind::Integer).specialize(&f).unwrap();
        let mut phi = TruncatedAutomorphism::identity(w, 1);
        phi.add_component(&f, 1, g.clone()).unwrap();
        let out = apply_equivalence(&f, &TruncatedDeformation::trivial(w, 1), &phi).unwrap();
        let dg = d1(&f, &g, &w);
        for k in window_pair_keys(&w) {
            let (x, y) = k.inputs();
            let Ok(v) = out.bracket_at(&f, 1, x, y) else { continue };
            let (ex, ey) = (Element::basis(&f, x), Element::basis(&f, y));
            let by_hand = g
                .apply(&f, &bracket(&f, &ex, &ey))
                .sub(&f, &bracket(&f, &g.apply(&f, &ex), &ey))
                .sub(&f, &bracket(&f, &ex, &g.apply(&f, &ey)));
            assert_eq!(v, by_hand, "{k}");
            assert_eq!(v, dg.apply2(&f, x, y).unwrap().scale(&f, &f.neg(&f.one())), "{k}");
        }
    }

    #[test]
    fn inverse_restores_the_deformation_on_the_core() {
        let f = sampled();
        let w = Window::new(10, 4).unwrap();
        let mut d = TruncatedDeformation::trivial(w, 2);
        for (lvl, s, seed) in [(1, 1, 3u64), (2, -1, 4)] {
            d.add_component(&f, lvl, random_cochain2(Parity::Even, s, &w, seed, CoeffKind::Integer).specialize(&f).unwrap()).unwrap();
        }
        let mut phi = TruncatedAutomorphism::identity(w, 2);
        phi.add_component(&f, 1, random_cochain1(Parity::Even, 1, &w, 8, CoeffKind::Integer).specialize(&f).unwrap()).unwrap();
        phi.add_component(&f, 2, random_cochain1(Parity::Even, 0, &w, 9, CoeffKind::Integer).specialize(&f).unwrap()).unwrap();
        let psi = truncated_inverse(&f, &phi).unwrap();
        let there = apply_equivalence(&f, &d, &phi).unwrap();
        let back = apply_equivalence(&f, &there, &psi).unwrap();
        for k in window_pair_keys(&w).into_iter().filter(|k| k.in_core(&w)) {
            let (x, y) = k.inputs();
            for lvl in 1..=2 {
                assert_eq!(back.bracket_at(&f, lvl, x, y).unwrap(), d.bracket_at(&f, lvl, x, y).unwrap(), "{k} level {lvl}");
            }
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let f = Symbolic::new();
        let w = Window::new(4, 1).unwrap();
        let mut d = TruncatedDeformation::trivial(w, 2);
        d.add_component(&f, 1, random_cochain2(Parity::Even, 0, &w, 1, CoeffKind::Polynomial)).unwrap();
        d.add_component(&f, 2, random_cochain2(Parity::Even, 3, &w, 2, CoeffKind::Integer)).unwrap();
        assert_eq!(TruncatedDeformation::from_text(&d.to_text()).unwrap(), d);
        let j = serde_json::to_string(&d.to_json_value()).unwrap();
        assert_eq!(TruncatedDeformation::from_json_value(&serde_json::from_str(&j).unwrap()).unwrap(), d);

        let mut a = TruncatedAutomorphism::identity(w, 1);
        a.add_component(&f, 1, random_cochain1(Parity::Even, 2, &w, 3, CoeffKind::Integer)).unwrap();
        assert_eq!(TruncatedAutomorphism::from_text(&a.to_text()).unwrap(), a);
        assert_eq!(TruncatedAutomorphism::from_json_value(&a.to_json_value()).unwrap(), a);
    }

    #[test]
    fn odd_components_are_rejected() {
        let f = Symbolic::new();
        let w = Window::new(3, 0).unwrap();
        let c = random_cochain2(Parity::Odd, 1, &w, 1, CoeffKind::Integer);
        assert!(TruncatedDeformation::first_order(&f, w, vec![c]).is_err());
    }
}
