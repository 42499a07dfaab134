use super::*;
use crate::exact::{int, rat, FieldElement, NumberField, Rational};
use crate::puiseux::{Exponent, PuiseuxPoly};

fn q() -> NumberField {
    NumberField::rationals()
}

fn real(terms: &[(Rational, Rational)]) -> PuiseuxPoly {
    PuiseuxPoly::real(&q(), terms.iter().cloned()).unwrap()
}

fn fin(r: Rational) -> Exponent {
    Exponent::Finite(r)
}

// -x, x, x + x^3, x + 2x^3
fn ex45() -> Vec<PuiseuxPoly> {
    vec![
        real(&[(int(1), int(-1))]),
        real(&[(int(1), int(1))]),
        real(&[(int(1), int(1)), (int(3), int(1))]),
        real(&[(int(1), int(1)), (int(3), int(2))]),
    ]
}

fn leaf(t: &ContactTree, i: usize) -> VertexId {
    t.leaf_vertex(LeafLabel::Real(i)).unwrap()
}

#[test]
fn four_root_tree_shape() {
    let t = build_contact_tree(&ex45()).unwrap();
    assert_eq!(t.len(), 7);
    assert_eq!(t.exponent(0), &Exponent::zero());
    assert_eq!(t.children(0).len(), 1);
    let v = t.children(0)[0];
    assert_eq!(t.exponent(v), &fin(int(1)));
    assert_eq!(t.children(v).len(), 2);
    assert_eq!(t.children(v)[0], leaf(&t, 0));
    let w = t.children(v)[1];
    assert_eq!(t.exponent(w), &fin(int(3)));
    assert_eq!(t.children(w), &[leaf(&t, 1), leaf(&t, 2), leaf(&t, 3)]);
    assert_eq!(t.exponent(t.wedge(leaf(&t, 1), leaf(&t, 3))), &fin(int(3)));
}

#[test]
fn single_root_is_a_path() {
    let t = build_contact_tree(&[real(&[(rat(1, 2), int(1))])]).unwrap();
    assert_eq!(t.len(), 2);
    assert!(t.is_leaf(1));
    assert_eq!(t.exponent(1), &Exponent::Infinity);
}

#[test]
fn duplicates_and_constants_are_rejected() {
    let a = real(&[(int(1), int(1))]);
    assert_eq!(build_contact_tree(&[a.clone(), a.clone()]), Err(TreeError::DuplicateRoot(0, 1)));
    let c = real(&[(int(0), int(1)), (int(1), int(1))]);
    assert_eq!(build_contact_tree(&[a, c]), Err(TreeError::NonPositiveValuation(1)));
    assert_eq!(build_contact_tree(&[]), Err(TreeError::Empty));
}

#[test]
fn wedge_laws() {
    let t = build_contact_tree(&ex45()).unwrap();
    for v in 0..t.len() {
        assert_eq!(t.wedge(v, v), v);
        assert_eq!(t.wedge(0, v), 0);
        for u in 0..t.len() {
            assert_eq!(t.wedge(u, v), t.wedge(v, u));
            let w = t.wedge(u, v);
            assert!(t.precedes_or_eq(w, u) && t.precedes_or_eq(w, v));
        }
    }
}

#[test]
fn children_follow_real_order_regardless_of_input_order() {
    let mut roots = ex45();
    roots.reverse();
    let t = build_contact_tree(&roots).unwrap();
    let labels: Vec<_> = t.planar_leaves().iter().map(|&v| t.leaf_label(v).unwrap()).collect();
    assert_eq!(labels, vec![LeafLabel::Real(3), LeafLabel::Real(2), LeafLabel::Real(1), LeafLabel::Real(0)]);
}

fn three_leaf() -> ContactTree {
    // l1, l2 meet at E=2 below the common vertex with l3 at E=1
    build_contact_tree(&[
        real(&[(int(1), int(-1))]),
        real(&[(int(1), int(-1)), (int(2), int(1))]),
        real(&[(int(1), int(1))]),
    ])
    .unwrap()
}

#[test]
fn planar_order_check() {
    let t = three_leaf();
    let (l1, l2, l3) = (leaf(&t, 0), leaf(&t, 1), leaf(&t, 2));
    assert!(is_planar_order(&t, &[l1, l2, l3]));
    assert!(is_planar_order(&t, &[l2, l1, l3]));
    assert!(is_planar_order(&t, &[l3, l2, l1]));
    assert!(!is_planar_order(&t, &[l1, l3, l2]));
    assert!(!is_planar_order(&t, &[l1, l2]));
    assert!(!is_planar_order(&t, &[l1, l1, l3]));

    let two = build_contact_tree(&[real(&[(int(1), int(1))]), real(&[(int(2), int(1))])]).unwrap();
    let (a, b) = (leaf(&two, 0), leaf(&two, 1));
    assert!(is_planar_order(&two, &[a, b]) && is_planar_order(&two, &[b, a]));
}

fn ex63_roots() -> Vec<PuiseuxPoly> {
    vec![
        real(&[(int(1), int(-1))]),
        real(&[(int(2), int(-1))]),
        PuiseuxPoly::zero(&q()),
        real(&[(int(2), int(1))]),
        real(&[(int(1), int(1)), (int(2), rat(1, 2))]),
    ]
}

#[test]
fn wedge_map_of_five_roots() {
    let t = build_contact_tree(&ex63_roots()).unwrap();
    let w = wedge_map(&t);
    assert!(w.is_bijective());
    assert_eq!(w.source_len(), 4);
    let top = t.children(0)[0];
    assert_eq!(t.exponent(top), &fin(int(1)));
    assert_eq!(t.children(top).len(), 3);
    assert_eq!(w.inverse(top, BasicInterval(0)), Some(BasicInterval(0)));
    assert_eq!(w.inverse(top, BasicInterval(1)), Some(BasicInterval(3)));
    let mid = t.children(top)[1];
    assert_eq!(t.exponent(mid), &fin(int(2)));
    assert_eq!(w.inverse(mid, BasicInterval(0)), Some(BasicInterval(1)));
    assert_eq!(w.apply(BasicInterval(2)), (mid, BasicInterval(1)));
}

#[test]
fn two_leaf_wedge_map() {
    let t = build_contact_tree(&[real(&[(int(1), int(1))]), real(&[(int(2), int(1))])]).unwrap();
    let w = wedge_map(&t);
    assert!(w.is_bijective());
    assert_eq!(w.apply(BasicInterval(0)), (1, BasicInterval(0)));
}

fn cusp_roots(c: Rational) -> (NumberField, Vec<PuiseuxPoly>, Vec<(PuiseuxPoly, u32)>) {
    let f = NumberField::eisenstein();
    let r = |terms: &[(Rational, Rational)]| PuiseuxPoly::real(&f, terms.iter().cloned()).unwrap();
    let e = rat(3, 2);
    let real = vec![
        r(&[(e.clone(), -c.clone())]),
        r(&[(e.clone(), int(-1))]),
        r(&[(e.clone(), int(1))]),
        r(&[(e.clone(), c)]),
        r(&[(rat(2, 3), int(1))]),
    ];
    let eta = PuiseuxPoly::monomial(f.generator(), rat(2, 3));
    let complex = vec![(eta.clone(), 1), (eta.conj(), 1)];
    (f, real, complex)
}

#[test]
fn embedded_trees_with_conjugate_pair() {
    let (f, real, complex) = cusp_roots(int(2));
    let rs = RootSystem::new(&f, real, complex).unwrap();
    let tc = build_embedded_trees(&rs).unwrap();
    let top = tc.children(0)[0];
    assert_eq!(tc.exponent(top), &fin(rat(2, 3)));
    assert_eq!(tc.children(top).len(), 2);
    assert_eq!(tc.vertex(top).complex_children.len(), 2);
    for &c in &tc.vertex(top).complex_children {
        assert!(!tc.is_real(c));
        assert!(matches!(tc.leaf_label(c), Some(LeafLabel::Complex(_))));
    }
    let p = tc.children(top)[0];
    assert_eq!(tc.exponent(p), &fin(rat(3, 2)));
    assert_eq!(tc.children(p).len(), 4);
    assert_eq!(tc.leaf_label(tc.children(top)[1]), Some(LeafLabel::Real(4)));

    let (tr, map) = tc.real_part();
    assert_eq!(tr.len(), tc.len() - 2);
    for v in 0..tr.len() {
        assert_eq!(tr.exponent(v), tc.exponent(map[v]));
    }
    assert!(is_planar_order(&tr, &tr.planar_leaves()));
}

#[test]
fn real_part_contracts_valency_two_points() {
    // one real root next to a conjugate pair: in T_C the real leaf and the
    // pair meet at E=1, which is not a vertex of T_R
    let f = NumberField::gaussian();
    let xi = PuiseuxPoly::real(&f, [(int(1), int(1))]).unwrap();
    let eta = PuiseuxPoly::monomial(f.generator(), int(1));
    let xi2 = PuiseuxPoly::real(&f, [(int(2), int(1))]).unwrap();
    let rs = RootSystem::new(&f, vec![xi, xi2], vec![(eta.clone(), 2), (eta.conj(), 2)]).unwrap();
    let tc = build_embedded_trees(&rs).unwrap();
    let (tr, map) = tc.real_part();
    assert_eq!(tr.len(), 4);
    assert_eq!(tr.exponent(1), &fin(int(1)));
    assert_eq!(tc.vertex(map[1]).complex_children.len(), 2);
    let c = tc.vertex(map[1]).complex_children[0];
    assert_eq!(tc.vertex(c).multiplicity, 2);

    let lone = RootSystem::new(
        &f,
        vec![PuiseuxPoly::real(&f, [(int(2), int(1))]).unwrap()],
        vec![(eta.clone(), 1), (eta.conj(), 1)],
    )
    .unwrap();
    let tc = build_embedded_trees(&lone).unwrap();
    let (tr, _) = tc.real_part();
    assert_eq!(tr.len(), 2);
    assert!(tr.is_leaf(1));
}

#[test]
fn no_complex_roots_marks_everything_real() {
    let rs = RootSystem::new(&q(), ex45(), vec![]).unwrap();
    let tc = build_embedded_trees(&rs).unwrap();
    assert!((0..tc.len()).all(|v| tc.is_real(v)));
    let (tr, _) = tc.real_part();
    assert_eq!(tr, tc);
}

#[test]
fn root_system_validation() {
    let f = NumberField::gaussian();
    let x = PuiseuxPoly::real(&f, [(int(1), int(1))]).unwrap();
    let eta = PuiseuxPoly::monomial(f.generator(), int(1));
    assert_eq!(RootSystem::new(&f, vec![x.clone(), x.clone()], vec![]), Err(RootError::NotRightReduced(1, 2)));
    assert_eq!(
        RootSystem::new(&f, vec![x.clone()], vec![(eta.clone(), 1)]),
        Err(RootError::ConjugationClosureViolated(1))
    );
    assert_eq!(
        RootSystem::new(&f, vec![x.clone()], vec![(eta.clone(), 1), (eta.conj(), 2)]),
        Err(RootError::ConjugationClosureViolated(1))
    );
    let c = PuiseuxPoly::constant(FieldElement::one(&f));
    assert!(matches!(
        RootSystem::new(&f, vec![x.clone(), &x + &c], vec![]),
        Err(RootError::NonPositiveValuation { index: 2, .. })
    ));
    assert_eq!(RootSystem::new(&f, vec![], vec![]), Err(RootError::NoRealRoots));
    assert_eq!(RootSystem::new(&f, vec![eta.clone()], vec![]), Err(RootError::RealRootNotRational(1)));
}
