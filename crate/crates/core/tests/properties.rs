use proptest::prelude::*;

use qkl::canon::{canonical_basis, canonical_basis_via_lift, KLTable};
use qkl::fock::{chevalley_tensor, chevalley_wedge, chevalley_wedge_via_lift, hecke_act, hecke_generators, Generator};
use qkl::weights::{f_to_lambda, lambda_to_f, super_bruhat_leq};
use qkl::{LaurentQ, QueerWeight, SuperIndex, TensorVector, WedgeVector, WeightFunction};

fn dominant(m: usize, n: usize, lo: i64, hi: i64) -> impl Strategy<Value = WeightFunction> {
    let span = (hi - lo + 1) as usize;
    (
        proptest::sample::subsequence((lo..=hi).collect::<Vec<_>>(), m.min(span)),
        proptest::sample::subsequence((lo..=hi).collect::<Vec<_>>(), n.min(span)),
    )
        .prop_map(|(mut neg, pos)| {
            neg.reverse();
            WeightFunction::new(neg, pos)
        })
}

fn any_shape_dominant() -> impl Strategy<Value = WeightFunction> {
    prop_oneof![
        dominant(1, 1, -3, 3),
        dominant(2, 1, -2, 3),
        dominant(1, 2, -2, 3),
        dominant(2, 2, -1, 3),
    ]
}

fn laurent() -> impl Strategy<Value = LaurentQ> {
    proptest::collection::vec((-3i32..=3, -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = LaurentQ::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    })
}

fn tensor(shape: SuperIndex) -> impl Strategy<Value = TensorVector> {
    let label = (
        proptest::collection::vec(-2i64..=2, shape.m),
        proptest::collection::vec(-2i64..=2, shape.n),
    );
    proptest::collection::vec((label, laurent()), 1..4).prop_map(move |terms| {
        let mut v = TensorVector::zero(shape);
        for ((neg, pos), c) in terms {
            v.add_term(&WeightFunction::new(neg, pos), &c).unwrap();
        }
        v
    })
}

fn generator() -> impl Strategy<Value = Generator> {
    (0..4u8, -3i64..=3).prop_map(|(t, a)| match t {
        0 => Generator::E(a),
        1 => Generator::F(a),
        2 => Generator::K(a),
        _ => Generator::KInv(a),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labels_round_trip(f in any_shape_dominant()) {
        let text = f.to_string();
        prop_assert_eq!(text.parse::<WeightFunction>().unwrap(), f.clone());
        let lam = f_to_lambda(&f);
        prop_assert_eq!(lam.to_string().parse::<QueerWeight>().unwrap(), lam.clone());
        prop_assert_eq!(lambda_to_f(&lam), f);
    }

    #[test]
    fn laurent_round_trip_and_bar(p in laurent(), r in laurent()) {
        prop_assert_eq!(p.to_string().parse::<LaurentQ>().unwrap(), p.clone());
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!((&p * &r).bar(), &p.bar() * &r.bar());
    }

    #[test]
    fn bruhat_order_axioms(f in dominant(2, 1, -2, 2), g in dominant(2, 1, -2, 2), h in dominant(2, 1, -2, 2)) {
        let leq = |a: &WeightFunction, b: &WeightFunction| super_bruhat_leq(a, b).unwrap();
        prop_assert!(leq(&f, &f));
        if leq(&f, &g) && leq(&g, &f) {
            prop_assert_eq!(&f, &g);
        }
        if leq(&f, &g) && leq(&g, &h) {
            prop_assert!(leq(&f, &h));
        }
    }

    #[test]
    fn hecke_quadratic(v in tensor(SuperIndex::new(2, 2))) {
        for i in hecke_generators(v.shape()) {
            let hv = hecke_act(&v, i).unwrap();
            let hhv = hecke_act(&hv, i).unwrap();
            let expect = &v - &hv.scale(&LaurentQ::q_minus_q_inv());
            prop_assert_eq!(hhv, expect);
        }
    }

    #[test]
    fn hecke_commutes_with_chevalley(v in tensor(SuperIndex::new(2, 1)), g in generator()) {
        for i in hecke_generators(v.shape()) {
            let left = chevalley_tensor(g, &hecke_act(&v, i).unwrap());
            let right = hecke_act(&chevalley_tensor(g, &v), i).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn chevalley_oracle(f in any_shape_dominant(), g in generator()) {
        let w = WedgeVector::basis(&f).unwrap();
        prop_assert_eq!(chevalley_wedge(g, &w).unwrap(), chevalley_wedge_via_lift(g, &w).unwrap());
    }

    #[test]
    fn canonical_basis_oracle(f in any_shape_dominant()) {
        prop_assert_eq!(canonical_basis(&f).unwrap(), canonical_basis_via_lift(&f).unwrap());
    }

    #[test]
    fn canonical_basis_shift_invariant(f in any_shape_dominant(), c in -4i64..=4) {
        let u = canonical_basis(&f).unwrap();
        let shifted = canonical_basis(&f.shifted(c)).unwrap();
        prop_assert_eq!(u.len(), shifted.len());
        for (g, p) in u.terms() {
            prop_assert_eq!(&shifted.coeff(&g.shifted(c)), p);
        }
    }

    #[test]
    fn kl_tables_invert(f in prop_oneof![dominant(1, 1, -2, 2), dominant(2, 1, -1, 2)]) {
        let t = KLTable::compute(&f, 4).unwrap();
        prop_assert_eq!(t.inversion_defect(), None);
    }
}
