mod common;

use std::cmp::Ordering;

use morsify::exact::{int, FieldElement, NumberField, Rational};
use morsify::morse::sigma;
use morsify::oracle::{numeric_snake, sample, sampling_denominator};
use morsify::puiseux::{BivarPoly, Exponent, PuiseuxPoly};
use morsify::treebuild::{build_contact_tree, build_embedded_trees, is_planar_order, wedge_map, LeafLabel};
use morsify::RootSystem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x2b7e_1516), failure_persistence: None, ..ProptestConfig::default() }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn fields() -> Vec<NumberField> {
    vec![
        NumberField::rationals(),
        NumberField::gaussian(),
        NumberField::eisenstein(),
        // Q(sqrt 2) with sqrt 2 -> -sqrt 2
        NumberField::new(vec![int(-2), int(0), int(1)], vec![int(0), int(-1)]).unwrap(),
    ]
}

fn field_element(field: NumberField) -> impl Strategy<Value = FieldElement> {
    prop::collection::vec(rational(), field.degree()).prop_map(move |c| field.element(c))
}

fn field_and_elements(k: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    (0..fields().len()).prop_flat_map(move |i| prop::collection::vec(field_element(fields()[i].clone()), k))
}

fn exponent() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn gaussian_series() -> impl Strategy<Value = PuiseuxPoly> {
    let f = NumberField::gaussian();
    prop::collection::vec((exponent(), rational(), rational()), 0..4).prop_map(move |terms| {
        PuiseuxPoly::from_terms(&f, terms.into_iter().map(|(e, a, b)| (e, f.element(vec![a, b])))).unwrap()
    })
}

fn real_series() -> impl Strategy<Value = PuiseuxPoly> {
    let f = NumberField::rationals();
    prop::collection::vec((exponent(), rational()), 0..4)
        .prop_map(move |terms| PuiseuxPoly::real(&f, terms).unwrap())
}

fn problem() -> impl Strategy<Value = (RootSystem, BivarPoly)> {
    any::<u64>().prop_filter_map("draw not right-reduced", |seed| {
        common::random_problem(&mut ChaCha8Rng::seed_from_u64(seed), 6, 2)
    })
}

fn canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

fn derivative_y(f: &BivarPoly) -> BivarPoly {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a.scale(&FieldElement::from_rational(f.field(), int(k as i64))))
        .collect();
    BivarPoly::from_coeffs(f.field(), coeffs)
}

fn min_exp(a: &Exponent, b: &Exponent) -> Exponent {
    match (a, b) {
        (Exponent::Finite(x), Exponent::Finite(y)) => Exponent::Finite(x.min(y).clone()),
        (Exponent::Finite(_), _) => a.clone(),
        _ => b.clone(),
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        for r in [&a + &b, &a * &c, &a - &c] {
            prop_assert!(canonical(&r));
        }
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_ring_homomorphism(v in field_and_elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!((a * b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((a + b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a * b).coeffs().len(), a.field().degree());
    }

    #[test]
    fn field_multiplication_is_associative_and_distributive(v in field_and_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * b, b * a);
    }

    #[test]
    fn puiseux_ring_laws(a in gaussian_series(), b in gaussian_series(), c in gaussian_series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn valuation_laws(a in gaussian_series(), b in gaussian_series()) {
        prop_assert_eq!((&a * &b).val(), &a.val() + &b.val());
        let sum = (&a + &b).val();
        let low = min_exp(&a.val(), &b.val());
        if a.val() != b.val() {
            prop_assert_eq!(sum, low);
        } else if let (Exponent::Finite(s), Exponent::Finite(m)) = (&sum, &low) {
            prop_assert!(s >= m);
        }
    }

    #[test]
    fn integration_inverts_differentiation(coeffs in prop::collection::vec(gaussian_series(), 0..5)) {
        let f = BivarPoly::from_coeffs(&NumberField::gaussian(), coeffs);
        prop_assert_eq!(derivative_y(&f.integrate_y()), f);
    }

    #[test]
    fn real_order_is_a_strict_total_order(a in real_series(), b in real_series(), c in real_series()) {
        prop_assume!(a != b && b != c && a != c);
        let lt = |x: &PuiseuxPoly, y: &PuiseuxPoly| x.real_less(y).unwrap();
        prop_assert!(lt(&a, &b) != lt(&b, &a));
        prop_assert!(a.real_less(&a).is_err());
        if lt(&a, &b) && lt(&b, &c) {
            prop_assert!(lt(&a, &c));
        }
        prop_assert_eq!(a.real_cmp(&b).unwrap(), b.real_cmp(&a).unwrap().reverse());
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn every_root_is_a_root_of_the_product((rs, unit) in problem()) {
        let f = BivarPoly::product_from_roots(&rs, &unit).unwrap();
        prop_assert!(f.is_real());
        let degree: u32 = rs.n_real() as u32 + rs.complex_roots().iter().map(|c| c.multiplicity).sum::<u32>();
        prop_assert_eq!(f.degree_y(), Some(degree as usize + unit.degree_y().unwrap()));
        for xi in rs.real_roots() {
            prop_assert!(f.compose(xi).val().is_infinite());
        }
        for eta in rs.complex_roots() {
            prop_assert!(f.compose(&eta.series).val().is_infinite());
        }
    }

    #[test]
    fn contact_orders_are_valuations_of_differences((rs, _) in problem()) {
        let t = build_embedded_trees(&rs).unwrap();
        let series = |l: LeafLabel| match l {
            LeafLabel::Real(i) => rs.real_roots()[i].clone(),
            LeafLabel::Complex(l) => rs.complex_roots()[l].series.clone(),
        };
        let leaves = t.leaves();
        for (k, &a) in leaves.iter().enumerate() {
            for &b in &leaves[k + 1..] {
                let d = &series(t.leaf_label(a).unwrap()) - &series(t.leaf_label(b).unwrap());
                prop_assert_eq!(t.exponent(t.wedge(a, b)), &d.val());
            }
        }
        for v in 0..t.len() {
            if let Some(p) = t.parent(v) {
                prop_assert!(t.exponent(p) < t.exponent(v) || t.exponent(v).is_infinite());
            }
        }
    }

    #[test]
    fn wedge_map_is_a_bijection((rs, _) in problem()) {
        let tr = build_contact_tree(rs.real_roots()).unwrap();
        let wm = wedge_map(&tr);
        prop_assert_eq!(wm.source_len(), wm.target_len());
        prop_assert_eq!(wm.source_len() + 1, rs.n_real());
        prop_assert!(wm.is_bijective());
        prop_assert!(is_planar_order(&tr, &tr.planar_leaves()));
    }

    #[test]
    fn real_tree_ignores_input_order((rs, _) in problem(), seed in any::<u64>()) {
        let mut shuffled = rs.real_roots().to_vec();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = build_contact_tree(rs.real_roots()).unwrap();
        let b = build_contact_tree(&shuffled).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for v in 0..a.len() {
            prop_assert_eq!(a.exponent(v), b.exponent(v));
            prop_assert_eq!(a.parent(v), b.parent(v));
        }
        let leaf_series = |t: &morsify::ContactTree, roots: &[PuiseuxPoly]| -> Vec<PuiseuxPoly> {
            t.planar_leaves()
                .into_iter()
                .map(|v| match t.leaf_label(v) {
                    Some(LeafLabel::Real(i)) => roots[i].clone(),
                    _ => unreachable!(),
                })
                .collect()
        };
        prop_assert_eq!(leaf_series(&a, rs.real_roots()), leaf_series(&b, &shuffled));
        let again = RootSystem::new(rs.field(), shuffled, rs.complex_roots().iter().map(|c| (c.series.clone(), c.multiplicity)).collect()).unwrap();
        prop_assert_eq!(again, rs);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn morse_invariants((rs, unit) in problem()) {
        let r = morsify::analyze(&rs, &unit).unwrap();
        let tr = r.real_tree();
        for a in &r.areas {
            prop_assert_eq!(a.series.val(), Exponent::Finite(sigma(&r.trees, a.wedge_vertex)));
        }
        for w in r.areas.windows(2) {
            prop_assert_ne!(w[0].s.is_positive(), w[1].s.is_positive());
        }
        for (&v, s) in &r.sigma {
            if let Some(p) = tr.parent(v).filter(|&p| p != tr.root()) {
                prop_assert!(r.sigma[&p] < *s);
            }
        }
        if let Some(it) = &r.integrated {
            prop_assert!(is_planar_order(tr, &it.planar_leaves()));
            prop_assert!(r.theorem_b.as_ref().unwrap().isomorphic);
            let snake = r.snake.as_ref().unwrap();
            let mut ranks = snake.ranks().to_vec();
            ranks.sort_unstable();
            prop_assert_eq!(ranks, (1..=rs.n_real()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn oracle_snake_survives_five_more_halvings((rs, unit) in problem()) {
        let r = morsify::analyze(&rs, &unit).unwrap();
        prop_assume!(r.snake.is_some());
        let o = numeric_snake(&r.primitive, &rs).unwrap();
        prop_assert_eq!(Some(&o.snake), r.snake.as_ref());
        let d: u64 = sampling_denominator(&r.primitive, &rs).try_into().unwrap();
        let bits = o.x0_used.denom().bits() - 1;
        prop_assert_eq!(o.x0_used.denom(), &(BigInt::one() << bits));
        let j = (bits / d) as u32;
        for k in 1..=5 {
            let s = sample(&r.primitive, &rs, j + k, d).unwrap();
            prop_assert_eq!(s.snake(), Some(o.snake.clone()));
        }
        prop_assert_eq!(o.x0_used.cmp(&Rational::zero()), Ordering::Greater);
    }
}
