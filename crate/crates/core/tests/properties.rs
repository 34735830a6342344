use cosetcalc_core::norm::{bucket_norms, norm};
use cosetcalc_core::spectrum::{embed, idempotent_of, profinite, DEFAULT_PRECISION};
use cosetcalc_core::topology::TopologyTag;
use cosetcalc_core::{
    canonicalize, CanonicalCosetSet, Coset, CosetExpr, Error, GradedElement, GroupDescriptor, HdSet, Rational,
    SpectrumPoint, Subgroup,
};
use proptest::prelude::*;

const PERIODS: [i64; 19] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 21, 24, 28, 30];

fn z() -> GroupDescriptor {
    GroupDescriptor::integers()
}

fn plane() -> GroupDescriptor {
    GroupDescriptor::plane()
}

fn coset(g: &GroupDescriptor, offset: &[i64], gens: &[Vec<i64>]) -> Coset {
    Coset::new(g, offset, Subgroup::generated(g, gens).unwrap()).unwrap()
}

fn z_leaf() -> impl Strategy<Value = CosetExpr> {
    prop_oneof![
        4 => (prop::sample::select(&PERIODS[..]), -30i64..30)
            .prop_map(|(d, a)| CosetExpr::Coset(coset(&z(), &[a], &[vec![d]]))),
        1 => prop::collection::vec(-15i64..15, 0..4).prop_map(|xs| CosetExpr::Points(xs.into_iter().map(|x| vec![x]).collect())),
        1 => Just(CosetExpr::Empty),
        1 => Just(CosetExpr::Full),
    ]
}

fn plane_leaf() -> impl Strategy<Value = CosetExpr> {
    let lattice = (1i64..4, 0i64..4, 1i64..4, -5i64..5, -5i64..5)
        .prop_map(|(a, b, c, x, y)| CosetExpr::Coset(coset(&plane(), &[x, y], &[vec![a, b % a.max(1)], vec![0, c]])));
    let line = (prop::sample::select(&[(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)][..]), 1i64..3, -4i64..4, -4i64..4)
        .prop_map(|((p, q), k, x, y)| CosetExpr::Coset(coset(&plane(), &[x, y], &[vec![k * p, k * q]])));
    let points = prop::collection::vec((-4i64..4, -4i64..4), 0..3)
        .prop_map(|xs| CosetExpr::Points(xs.into_iter().map(|(x, y)| vec![x, y]).collect()));
    prop_oneof![3 => lattice, 3 => line, 1 => points, 1 => Just(CosetExpr::Full)]
}

fn expr(leaf: impl Strategy<Value = CosetExpr> + 'static) -> impl Strategy<Value = CosetExpr> {
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CosetExpr::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CosetExpr::intersection(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CosetExpr::difference(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CosetExpr::symmetric_difference(a, b)),
            inner.prop_map(CosetExpr::complement),
        ]
    })
}

fn z_set() -> impl Strategy<Value = CanonicalCosetSet> {
    expr(z_leaf()).prop_map(|e| canonicalize(&z(), &e).unwrap())
}

fn plane_set() -> impl Strategy<Value = CanonicalCosetSet> {
    expr(plane_leaf()).prop_map(|e| canonicalize(&plane(), &e).unwrap())
}

/// Small rational combinations of coset indicators over `Z`.
fn z_element() -> impl Strategy<Value = GradedElement> {
    prop::collection::vec((prop::sample::select(&PERIODS[..12]), -10i64..10, -3i64..4, 1i64..3, any::<bool>()), 1..4).prop_map(
        |terms| {
            let g = z();
            let items = terms.into_iter().map(|(d, a, n, q, point)| {
                let gens = if point { vec![] } else { vec![vec![d]] };
                (coset(&g, &[a], &gens), Rational::new(n.into(), q.into()))
            });
            GradedElement::from_weighted_cosets(&g, items).unwrap()
        },
    )
}

fn window_z() -> impl Iterator<Item = Vec<i64>> {
    (-70..=70).map(|x| vec![x])
}

fn window_plane() -> impl Iterator<Item = Vec<i64>> {
    (-12..=12).flat_map(|x| (-12..=12).map(move |y| vec![x, y]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_membership_matches_tree(e in expr(z_leaf())) {
        let s = canonicalize(&z(), &e).unwrap();
        for x in window_z() {
            prop_assert_eq!(s.member(&x), e.contains(&z(), &x));
        }
        prop_assert_eq!(canonicalize(&z(), &s.to_expr()).unwrap(), s);
    }

    #[test]
    fn canonical_membership_matches_tree_in_the_plane(e in expr(plane_leaf())) {
        let s = canonicalize(&plane(), &e).unwrap();
        for x in window_plane() {
            prop_assert_eq!(s.member(&x), e.contains(&plane(), &x));
        }
        prop_assert_eq!(canonicalize(&plane(), &s.to_expr()).unwrap(), s);
    }

    #[test]
    fn boolean_ring_laws(a in z_set(), b in z_set(), c in z_set()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(a.union(&a.intersect(&b)), a.clone());
        prop_assert_eq!(a.symmetric_difference(&b).symmetric_difference(&c), a.symmetric_difference(&b.symmetric_difference(&c)));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.difference(&b), a.intersect(&b.complement()));
        prop_assert!(a.intersect(&b).is_subset_of(&a));
    }

    #[test]
    fn boolean_ring_laws_in_the_plane(a in plane_set(), b in plane_set()) {
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert!(a.symmetric_difference(&a).is_empty());
        let sum: Vec<_> = a.indicator().components().values().collect();
        for x in window_plane().take(200) {
            let v: Rational = sum.iter().map(|c| c.eval(&x)).sum();
            prop_assert!(v == Rational::from_integer(0.into()) || v == Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn algebra_laws(u in z_element(), v in z_element(), w in z_element()) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        prop_assert_eq!(&(&u + &v) - &v, u.clone());
        for x in window_z() {
            prop_assert_eq!((&u * &v).evaluate(&x), u.evaluate(&x) * v.evaluate(&x));
        }
    }

    #[test]
    fn grading_law(a in z_set(), b in z_set()) {
        for &s in a.indicator().components().keys() {
            for &t in b.indicator().components().keys() {
                let u = a.indicator().bucket(s);
                let v = b.indicator().bucket(t);
                let join = s.join(t);
                prop_assert!((&u * &v).support().all(|tag| tag.leq(join)));
            }
        }
    }

    #[test]
    fn characters_are_multiplicative(u in z_element(), v in z_element(), r in 0i64..2520, top in any::<bool>()) {
        let g = z();
        let s: SpectrumPoint = if top {
            embed(&g, &[r - 1260]).unwrap()
        } else {
            profinite(&g, &[(vec![r], DEFAULT_PRECISION)]).unwrap()
        };
        let uv = &u * &v;
        prop_assert_eq!(s.chi(&uv).unwrap(), s.chi(&u).unwrap() * s.chi(&v).unwrap());
        if top {
            prop_assert_eq!(s.chi(&u).unwrap(), u.evaluate(&[r - 1260]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norms_are_additive_and_submultiplicative(u in z_element(), v in z_element()) {
        let (Ok(nu), Ok(nv), Ok(nuv)) = (norm(&u), norm(&v), norm(&(&u * &v))) else {
            return Err(TestCaseError::fail("norm failed"));
        };
        prop_assert!(nuv.hi <= nu.hi * nv.hi + 1e-6);
        let parts = bucket_norms(&u).unwrap();
        let (lo, hi) = parts.iter().fold((0.0, 0.0), |(l, h), i| (l + i.lo, h + i.hi));
        prop_assert!((nu.lo - lo).abs() <= 1e-6 && (nu.hi - hi).abs() <= 1e-6);
    }

    #[test]
    fn idempotent_norms_are_at_least_one(a in z_set()) {
        prop_assume!(!a.is_empty());
        let n = norm(a.indicator()).unwrap();
        prop_assert!(n.hi >= 1.0 - 1e-9);
    }
}

#[test]
fn idempotents_form_the_hd_semilattice() {
    let g = plane();
    let tags = [
        TopologyTag::Td,
        TopologyTag::Dir(cosetcalc_core::Direction::new(1, 0).unwrap()),
        TopologyTag::Dir(cosetcalc_core::Direction::new(1, 1).unwrap()),
        TopologyTag::Discrete,
    ];
    for &s in &tags {
        for &t in &tags {
            let (hs, ht) = (HdSet::principal(s), HdSet::principal(t));
            let e = idempotent_of(&g, hs).unwrap().mult(&idempotent_of(&g, ht).unwrap()).unwrap();
            assert_eq!(e, idempotent_of(&g, hs.intersect(&ht)).unwrap());
        }
    }
}

#[test]
fn values_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<CanonicalCosetSet>();
    check::<GradedElement>();
    check::<SpectrumPoint>();
    check::<cosetcalc_core::PiecewiseAffineMap>();
    check::<Error>();
}
