mod support;

use std::sync::OnceLock;

use proptest::prelude::*;

use alcove_core::affine::{self, ExtAffineElement};
use alcove_core::alcoves::{
    alcove_of, alcove_to_element, distance, find_direction, in_acute_cone, in_w_direction,
    minimal_gallery, Alcove,
};
use alcove_core::rootsys::conv_membership;
use alcove_core::steinberg::{build_theta, ThetaAutomorphism};
use alcove_core::{musets, Family, FiniteWeylElement, RationalVector, RootDatum};
use support::*;

const RANK2: [(Family, usize); 4] = [
    (Family::A, 2),
    (Family::B, 2),
    (Family::C, 2),
    (Family::G2, 2),
];
const RANK3: [(Family, usize); 3] = [(Family::A, 3), (Family::B, 3), (Family::C, 3)];

fn rank2() -> &'static [RootDatum] {
    static DATA: OnceLock<Vec<RootDatum>> = OnceLock::new();
    DATA.get_or_init(|| RANK2.iter().map(|&(f, n)| datum(f, n)).collect())
}

fn rank3() -> &'static [RootDatum] {
    static DATA: OnceLock<Vec<RootDatum>> = OnceLock::new();
    DATA.get_or_init(|| RANK3.iter().map(|&(f, n)| datum(f, n)).collect())
}

fn gl4_theta() -> &'static ThetaAutomorphism {
    static THETA: OnceLock<ThetaAutomorphism> = OnceLock::new();
    THETA.get_or_init(|| build_theta(datum(Family::GL, 4)).unwrap())
}

/// An element of `W̃` from raw lattice coordinates and a Weyl index.
fn element(d: &RootDatum, raw: &[i64], w: usize) -> ExtAffineElement {
    let g = d.weyl().unwrap();
    let w = g.elements().nth(w % g.order()).unwrap();
    ExtAffineElement::from_parts(d, raw[..d.lattice_rank()].to_vec(), w)
}

fn affine_word(d: &RootDatum, word: &[u8]) -> ExtAffineElement {
    let s: Vec<u8> = word.iter().map(|&i| i % (d.rank() as u8 + 1)).collect();
    ExtAffineElement::from_word(d, &s)
}

fn finite(d: &RootDatum, i: usize) -> FiniteWeylElement {
    let g = d.weyl().unwrap();
    g.elements().nth(i % g.order()).unwrap()
}

fn raw() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4)
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws(k in 0usize..4, a in raw(), b in raw(), c in raw(), i in 0usize..64, j in 0usize..64, l in 0usize..64) {
        let d = &rank2()[k];
        let (x, y, z) = (element(d, &a, i), element(d, &b, j), element(d, &c, l));
        let xy_z = affine::compose(d, &affine::compose(d, &x, &y).unwrap(), &z).unwrap();
        let x_yz = affine::compose(d, &x, &affine::compose(d, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let inv = affine::inverse(d, &x);
        prop_assert!(affine::compose(d, &x, &inv).unwrap().is_identity());
        prop_assert_eq!(affine::length(d, &x), affine::length(d, &inv));
        let p = d.barycenter();
        let xy = affine::compose(d, &x, &y).unwrap();
        prop_assert_eq!(affine::act(d, &xy, p), affine::act(d, &x, &affine::act(d, &y, p)));
    }

    #[test]
    fn omega_factor_has_length_zero(k in 0usize..4, a in raw(), i in 0usize..64) {
        let d = &rank2()[k];
        let x = element(d, &a, i);
        let (u, tau) = affine::omega_decompose(d, &x);
        prop_assert_eq!(affine::compose(d, &u, &tau).unwrap(), x.clone());
        prop_assert_eq!(affine::length(d, &tau), 0);
        prop_assert!(affine::in_affine_weyl(d, &u));
        prop_assert_eq!(affine::length(d, &u), affine::length(d, &x));
        prop_assert!(affine::same_coset(d, &x, &tau));
    }

    #[test]
    fn alcoves_round_trip(k in 0usize..4, w in word(12)) {
        let d = &rank2()[k];
        let x = affine_word(d, &w);
        let a = alcove_of(d, &x);
        prop_assert_eq!(alcove_to_element(d, &a), x.clone());
        prop_assert_eq!(distance(&Alcove::base(d), &a), affine::length(d, &x));
    }

    #[test]
    fn bruhat_is_a_partial_order(k in 0usize..4, u in word(8), v in word(8), s in 0usize..3) {
        let d = &rank2()[k];
        let (x, y) = (affine_word(d, &u), affine_word(d, &v));
        prop_assert!(affine::bruhat_leq(d, &x, &x));
        if affine::bruhat_leq(d, &x, &y) && affine::bruhat_leq(d, &y, &x) {
            prop_assert_eq!(&x, &y);
        }
        let xs = affine::right_mul_simple(d, &x, s);
        let (lo, hi) = if affine::length(d, &xs) < affine::length(d, &x) { (&xs, &x) } else { (&x, &xs) };
        prop_assert!(affine::bruhat_leq(d, lo, hi));
        prop_assert!(!affine::bruhat_leq(d, hi, lo));
    }

    #[test]
    fn lower_interval_is_the_order_ideal(k in 0usize..4, v in word(6)) {
        let d = &rank2()[k];
        let y = affine_word(d, &v);
        let below = as_set(&affine::lower_interval(d, &y).unwrap());
        for x in affine::affine_ball(d, affine::length(d, &y)) {
            prop_assert_eq!(below.contains(&x), affine::bruhat_leq(d, &x, &y));
        }
    }

    #[test]
    fn acute_cone_matches_gallery_direction(k in 0usize..4, u in word(8), v in word(8), i in 0usize..12) {
        let d = &rank2()[k];
        let a = alcove_of(d, &affine_word(d, &u));
        let b = alcove_of(d, &affine_word(d, &v));
        let w = finite(d, i);
        prop_assert_eq!(in_acute_cone(d, &a, w, &b), in_w_direction(d, &minimal_gallery(d, &a, &b), w));
        let dir = find_direction(d, &a, &b).unwrap();
        prop_assert!(in_acute_cone(d, &a, dir, &b));
    }

    #[test]
    fn theta_embedding_is_a_homomorphism(u in word(8), v in word(8)) {
        let t = gl4_theta();
        let f = t.fixed();
        let (x, y) = (affine_word(f, &u), affine_word(f, &v));
        let ex = t.embed_element(&x).unwrap();
        let ey = t.embed_element(&y).unwrap();
        let exy = t.embed_element(&affine::compose(f, &x, &y).unwrap()).unwrap();
        prop_assert_eq!(affine::compose(t.host(), &ex, &ey).unwrap(), exy);
        prop_assert!(t.commutes(&ex));
        prop_assert_eq!(t.restrict_element(&ex).unwrap(), Some(x.clone()));
        prop_assert_eq!(
            affine::bruhat_leq(f, &x, &y),
            affine::bruhat_leq(t.host(), &ex, &t.embed_element(&y).unwrap())
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank3_cones_and_lengths(k in 0usize..3, u in word(10), v in word(10), i in 0usize..48) {
        let d = &rank3()[k];
        let x = affine_word(d, &u);
        let a = alcove_of(d, &x);
        let b = alcove_of(d, &affine_word(d, &v));
        prop_assert_eq!(alcove_to_element(d, &a), x.clone());
        let w = finite(d, i);
        prop_assert_eq!(in_acute_cone(d, &a, w, &b), in_w_direction(d, &minimal_gallery(d, &a, &b), w));
    }

    #[test]
    fn conv_membership_matches_simplex(k in 0usize..3, m in prop::collection::vec(0i64..=2, 3), p in prop::collection::vec(-3i64..=3, 3)) {
        let d = &rank3()[k];
        let n = d.ambient_dim();
        let mut c: Vec<i64> = (0..n).map(|i| m.get(i).copied().unwrap_or(0)).collect();
        c.sort_unstable_by(|x, y| y.cmp(x));
        let mu = RationalVector::from_ints(&c);
        prop_assume!(d.is_dominant(&mu));
        let v = RationalVector::from_ints(&(0..n).map(|i| p.get(i).copied().unwrap_or(0)).collect::<Vec<_>>());
        prop_assert_eq!(conv_membership(d, &mu, &v).unwrap(), hull_contains(&orbit(d, &mu), &v));
    }

    #[test]
    fn set_inclusions_at_rank_two(k in 0usize..4, m in prop::collection::vec(-1i64..=2, 3)) {
        let d = &rank2()[k];
        let n = d.ambient_dim();
        let mu = RationalVector::from_ints(&m[..n]);
        prop_assume!(d.is_dominant(&mu) && d.in_lattice(&mu));
        let r = musets::compare(d, &mu).unwrap();
        prop_assert!(r.verdicts.adm_subset_perm);
        prop_assert!(r.verdicts.perm_st_subset_adm);
        prop_assert_eq!(as_set(&r.adm), adm_by_reflections(d, &mu));
    }
}
