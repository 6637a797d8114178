mod common;

use acstk_core::cayley_dickson::{
    associator, cd_multiply, conjugate, imaginary_part, norm_sq, real_part, CDElement,
};
use acstk_core::char_class::{
    conjugate_classes, pontryagin_from_complexification, ClassKind, TotalClass,
};
use acstk_core::rational::{q, Q};
use acstk_core::sphere_acs::{
    j_apply, nijenhuis, rational_sphere_point, tangent_projection, SpherePoint, TangentVector,
};
use acstk_core::symfun::{
    expand_elementary, newton_polynomial, reduce_to_elementary, GradedPoly, MultiPoly,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::small_rational;

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| small_rational(n, d))
}

fn element(level: u32) -> impl Strategy<Value = CDElement> {
    prop::collection::vec(rational(), 1usize << level)
        .prop_map(move |cs| CDElement::new(level, cs).unwrap())
}

fn imaginary(level: u32) -> impl Strategy<Value = CDElement> {
    element(level).prop_map(|x| imaginary_part(&x))
}

fn sphere_point(sphere: u32) -> impl Strategy<Value = SpherePoint> {
    prop::collection::vec(rational(), sphere as usize)
        .prop_map(move |ps| rational_sphere_point(sphere, &ps).unwrap())
}

fn point_and_tangents(
    sphere: u32,
) -> impl Strategy<Value = (SpherePoint, TangentVector, TangentVector)> {
    let level = if sphere == 2 { 2 } else { 3 };
    (sphere_point(sphere), imaginary(level), imaginary(level)).prop_map(|(p, a, b)| {
        let u = tangent_projection(&p, &a).unwrap();
        let v = tangent_projection(&p, &b).unwrap();
        (p, u, v)
    })
}

fn mul(a: &CDElement, b: &CDElement) -> CDElement {
    cd_multiply(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involutive_anti_automorphism(a in element(3), b in element(3)) {
        prop_assert_eq!(conjugate(&conjugate(&a)), a.clone());
        prop_assert_eq!(conjugate(&mul(&a, &b)), mul(&conjugate(&b), &conjugate(&a)));
    }

    #[test]
    fn norm_is_real_part_of_a_times_conjugate(a in element(3)) {
        let prod = mul(&a, &conjugate(&a));
        prop_assert_eq!(real_part(&prod), norm_sq(&a));
        prop_assert!(imaginary_part(&prod).is_zero());
    }

    #[test]
    fn norms_compose_up_to_octonions(a in element(3), b in element(3), c in element(2), d in element(2)) {
        prop_assert_eq!(norm_sq(&mul(&a, &b)), norm_sq(&a) * norm_sq(&b));
        prop_assert_eq!(norm_sq(&mul(&c, &d)), norm_sq(&c) * norm_sq(&d));
    }

    #[test]
    fn polarization_for_imaginary_pairs(u in imaginary(3), v in imaginary(3), x in imaginary(2), y in imaginary(2)) {
        for (u, v) in [(&u, &v), (&x, &y)] {
            let lhs = mul(u, &conjugate(v)).try_add(&mul(&conjugate(v), u)).unwrap();
            let rhs = CDElement::from_real(u.level(), q(2) * u.dot(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orthogonal_imaginary_pairs_anticommute(u in imaginary(3), w in imaginary(3)) {
        // make w orthogonal to u
        let v = if u.is_zero() { w } else {
            w.try_sub(&u.scale(&(w.dot(&u).unwrap() / u.dot(&u).unwrap()))).unwrap()
        };
        prop_assert!(u.dot(&v).unwrap().is_zero());
        prop_assert_eq!(mul(&u, &conjugate(&v)), mul(&conjugate(&v), &u).neg());
    }

    #[test]
    fn octonion_associator_alternates(u in element(3), v in element(3)) {
        prop_assert!(associator(&u, &u, &v).unwrap().is_zero());
        prop_assert!(associator(&u, &v, &u).unwrap().is_zero());
        prop_assert!(associator(&v, &u, &u).unwrap().is_zero());
    }

    #[test]
    fn associator_is_trilinear(u in element(3), v in element(3), w in element(3), s in rational()) {
        let lhs = associator(&u.scale(&s), &v, &w).unwrap();
        prop_assert_eq!(lhs, associator(&u, &v, &w).unwrap().scale(&s));
    }

    #[test]
    fn stereographic_points_are_unit(p in sphere_point(6), r in sphere_point(2)) {
        prop_assert!(norm_sq(p.vector()).is_one());
        prop_assert!(norm_sq(r.vector()).is_one());
    }

    #[test]
    fn tangent_projection_is_idempotent((p, u, _v) in point_and_tangents(6)) {
        prop_assert_eq!(tangent_projection(&p, u.vector()).unwrap(), u);
    }

    #[test]
    fn j_is_a_complex_structure((p, u, _v) in point_and_tangents(6)) {
        let ju = j_apply(&u);
        prop_assert_eq!(j_apply(&ju).vector().clone(), u.vector().neg());
        prop_assert!(ju.vector().dot(p.vector()).unwrap().is_zero());
        prop_assert_eq!(norm_sq(ju.vector()), norm_sq(u.vector()));
    }

    #[test]
    fn nijenhuis_is_tensorial_and_antisymmetric((p, u, v) in point_and_tangents(6), s in rational()) {
        let n = nijenhuis(&p, &u, &v).unwrap();
        prop_assert_eq!(nijenhuis(&p, &u.scale(&s), &v).unwrap(), n.scale(&s));
        prop_assert_eq!(nijenhuis(&p, &u, &v.scale(&s)).unwrap(), n.scale(&s));
        prop_assert_eq!(nijenhuis(&p, &v, &u).unwrap(), n.neg());
        prop_assert!(n.dot(p.vector()).unwrap().is_zero());
    }

    #[test]
    fn nijenhuis_is_j_antilinear((p, u, v) in point_and_tangents(6)) {
        // N(Ju, v) = -J N(u, v) for any almost complex structure
        let n = nijenhuis(&p, &u, &v).unwrap();
        let lhs = nijenhuis(&p, &j_apply(&u), &v).unwrap();
        let jn = j_apply(&TangentVector::new(p.clone(), n).unwrap());
        prop_assert_eq!(lhs, jn.vector().neg());
    }

    #[test]
    fn nijenhuis_vanishes_on_s2((p, u, v) in point_and_tangents(2)) {
        prop_assert!(nijenhuis(&p, &u, &v).unwrap().is_zero());
    }
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    let vars = MultiPoly::indexed_vars("b", 3);
    prop::collection::vec((prop::collection::vec(0u32..3, 3), rational()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(vars.clone(), terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().values().all(|c| !c.is_zero()));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly3(), b in poly3(), x in prop::collection::vec(rational(), 3)) {
        let ea = a.evaluate(&x).unwrap();
        let eb = b.evaluate(&x).unwrap();
        prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), ea + eb);
    }

    #[test]
    fn symmetrized_polynomials_reduce_and_expand_back(a in poly3()) {
        // symmetrize over S_3
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut sym = MultiPoly::zero(a.vars().to_vec());
        for perm in perms {
            let images: Vec<MultiPoly> = perm.iter().map(|&i| MultiPoly::var(a.vars().to_vec(), i)).collect();
            sym = &sym + &a.substitute(&images).unwrap();
        }
        let reduced = reduce_to_elementary(&sym).unwrap();
        prop_assert_eq!(expand_elementary(&reduced, 3).unwrap(), sym);
    }

    #[test]
    fn chern_conjugation_is_an_involution(k in 1u32..6, c in rational()) {
        let sphere = 2 * k;
        let class = TotalClass::new(ClassKind::Chern, sphere, &[(k as usize, c)]).unwrap();
        let once = conjugate_classes(&class).unwrap();
        prop_assert_eq!(conjugate_classes(&once).unwrap(), class.clone());
        prop_assert_eq!(
            pontryagin_from_complexification(&once).unwrap().is_trivial(),
            pontryagin_from_complexification(&class).unwrap().is_trivial()
        );
    }
}

/// Every monomial in `s1..sm` of weight ≤ 8 survives expand-then-reduce.
#[test]
fn elementary_monomials_round_trip_to_weight_8() {
    fn partitions(weight: u32, max_part: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if weight == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part.min(weight)).rev() {
            cur.push(part);
            partitions(weight - part, part, out, cur);
            cur.pop();
        }
    }
    for weight in 1..=8u32 {
        let mut parts = Vec::new();
        partitions(weight, weight, &mut parts, &mut Vec::new());
        for part in parts {
            let m = *part.iter().max().unwrap() as usize;
            let (names, weights) = GradedPoly::indexed_generators("s", m, 1);
            let mut exps = vec![0u32; m];
            for p in &part {
                exps[*p as usize - 1] += 1;
            }
            let g = GradedPoly::new(
                MultiPoly::from_terms(names, [(exps, Q::one())]).unwrap(),
                weights,
            )
            .unwrap();
            let expanded = expand_elementary(&g, m).unwrap();
            assert_eq!(
                reduce_to_elementary(&expanded).unwrap(),
                g,
                "partition {part:?}"
            );
        }
    }
}

#[test]
fn newton_polynomials_are_homogeneous() {
    for k in 1..=8 {
        assert_eq!(newton_polynomial(k).homogeneous_weight(), Some(k as u32));
    }
}

#[test]
fn anti_automorphism_and_composition_exhaustive_on_basis() {
    for level in 0..=4u32 {
        let dim = 1usize << level;
        for i in 0..dim {
            for j in 0..dim {
                let a = CDElement::basis(level, i);
                let b = CDElement::basis(level, j);
                assert_eq!(conjugate(&mul(&a, &b)), mul(&conjugate(&b), &conjugate(&a)));
                assert!(norm_sq(&mul(&a, &b)).is_one());
            }
        }
    }
}
