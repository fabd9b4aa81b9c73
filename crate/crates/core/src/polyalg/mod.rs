//! Multivariate polynomials over ℚ(q), Gröbner bases, finite quotient bases,
//! multiplication matrices and characteristic polynomials.

mod groebner;
mod matrix;
mod monomial;
mod mpoly;
mod upoly;

pub use groebner::{
    coordinates, groebner, mult_matrix, normal_form, quotient_basis, reduce, GroebnerBasis,
    MonomialOrder,
};
pub(crate) use groebner::mult_matrix_in_basis;
pub use matrix::{bareiss_det, char_poly, BareissRing, Matrix};
pub use monomial::Monomial;
pub use mpoly::{vars, MPoly, Vars};
pub use upoly::UniPoly;

#[cfg(test)]
mod props {
    use super::*;
    use crate::coeffs::{rat, RatFunc};
    use proptest::prelude::*;

    fn arb_poly(v: Vars, max_deg: u32) -> impl Strategy<Value = MPoly> {
        let n = v.len();
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, n), -4i64..=4, 0usize..=2),
            0..5,
        )
        .prop_map(move |terms| {
            MPoly::from_terms(
                &v,
                terms
                    .into_iter()
                    .map(|(e, c, k)| (Monomial::new(e), RatFunc::q_monomial(rat(c), k))),
            )
        })
    }

    fn sample_ideal(v: &Vars) -> Vec<MPoly> {
        let x = MPoly::var(v, 0);
        let y = MPoly::var(v, 1);
        let q = MPoly::constant(v, RatFunc::q());
        vec![&x.pow(2) - &(&y * &q), &y.pow(2) - &(&x * &y), &(&x * &y.pow(2)) - &q.pow(3)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_is_idempotent_and_kills_the_ideal(p in arb_poly(vars(&["x", "y"]), 4), r in arb_poly(vars(&["x", "y"]), 2)) {
            let v = p.vars().clone();
            let gens = sample_ideal(&v);
            let gb = groebner(&v, &gens, MonomialOrder::DegRevLex);
            let nf = gb.normal_form(&p);
            prop_assert_eq!(gb.normal_form(&nf), nf.clone());
            for g in &gens {
                prop_assert!(gb.normal_form(&(&r * g)).is_zero());
            }
            // ℚ(q)-linearity
            let c = RatFunc::q_monomial(rat(3), 1);
            prop_assert_eq!(gb.normal_form(&(&p.scale(&c) + &r)), &nf.scale(&c) + &gb.normal_form(&r));
        }

        #[test]
        fn ideal_membership_is_independent_of_variable_order(p in arb_poly(vars(&["x", "y"]), 3)) {
            let v = p.vars().clone();
            let w = vars(&["y", "x"]);
            let swap = [1usize, 0];
            let gens = sample_ideal(&v);
            let gb = groebner(&v, &gens, MonomialOrder::DegRevLex);
            let swapped: Vec<MPoly> = gens.iter().map(|g| g.embed(&w, &swap)).collect();
            let gb2 = groebner(&w, &swapped, MonomialOrder::DegRevLex);
            // p ≡ NF(p) in both presentations, so their difference maps into the ideal
            let nf1 = gb.normal_form(&p).embed(&w, &swap);
            let nf2 = gb2.normal_form(&p.embed(&w, &swap));
            prop_assert!(gb2.normal_form(&(&nf1 - &nf2)).is_zero());
            prop_assert_eq!(quotient_basis(&gb).unwrap().len(), quotient_basis(&gb2).unwrap().len());
        }
    }

    #[test]
    fn cayley_hamilton_on_sample_quotient() {
        let v = vars(&["x", "y"]);
        let gb = groebner(&v, &sample_ideal(&v), MonomialOrder::DegRevLex);
        let basis = quotient_basis(&gb).unwrap();
        let e = &MPoly::var(&v, 0) + &MPoly::var(&v, 1).scale(&RatFunc::from_int(2));
        let m = mult_matrix(&e, &gb).unwrap();
        assert_eq!(m.rows(), basis.len());
        let p = char_poly(&m);
        assert_eq!(p.degree(), Some(basis.len()));
        assert!(p.eval_matrix(&m).is_zero());
    }
}
