mod support;

use alcove_core::affine::{self, ExtAffineElement};
use alcove_core::rational::Q;
use alcove_core::rootsys::conv_membership;
use alcove_core::{musets, Family, FiniteWeylElement, RationalVector};
use support::*;

#[test]
fn weyl_group_orders() {
    for (f, n, order) in [
        (Family::A, 4, 120u128),
        (Family::B, 3, 48),
        (Family::C, 3, 48),
        (Family::D, 4, 192),
        (Family::G2, 2, 12),
        (Family::F4, 4, 1152),
        (Family::GSp, 6, 48),
    ] {
        let d = datum(f, n);
        assert_eq!(d.weyl_order(), order, "{}", d.label());
        assert_eq!(d.weyl().unwrap().order() as u128, order);
    }
}

#[test]
fn length_counts_separating_walls() {
    for (f, n) in [
        (Family::B, 2),
        (Family::G2, 2),
        (Family::C, 3),
        (Family::GL, 4),
    ] {
        let d = datum(f, n);
        for x in affine::affine_ball(&d, 7) {
            assert_eq!(
                affine::length(&d, &x),
                wall_length(&d, &x),
                "{}",
                affine::describe(&d, &x)
            );
        }
        for mu in integer_dominant(&d, 0, 2)
            .into_iter()
            .filter(|m| d.in_lattice(m))
        {
            let t = ExtAffineElement::translation(&d, &mu).unwrap();
            assert_eq!(affine::length(&d, &t), translation_length(&d, &mu));
        }
    }
}

#[test]
fn symmetric_group_bruhat_matches_tableau() {
    for n in 3..=4 {
        let d = datum(Family::GL, n);
        let g = d.weyl().unwrap();
        for u in g.elements() {
            for v in g.elements() {
                let tab = tableau_leq(&one_line(&d, u), &one_line(&d, v));
                assert_eq!(g.bruhat_leq(u, v), tab);
                assert_eq!(musets::deodhar_order_criterion(&d, u, v), tab);
            }
        }
    }
}

#[test]
fn frozen_adm_counts() {
    // each count is checked against the reflection closure before being compared
    for (f, n, mu, count) in [
        (Family::GL, 2, vec![1, 0], 3usize),
        (Family::GL, 3, vec![1, 0, 0], 7),
        (Family::GL, 3, vec![1, 1, 0], 7),
        (Family::GL, 4, vec![1, 0, 0, 0], 15),
        (Family::GL, 4, vec![1, 1, 0, 0], 33),
        (Family::GSp, 4, vec![1, 1, 0, 0], 13),
        (Family::GSp, 6, vec![1, 1, 1, 0, 0, 0], 79),
        (Family::B, 2, vec![1, 0], 13),
        (Family::C, 2, vec![1, 0], 19),
    ] {
        let d = datum(f, n);
        let mu = RationalVector::from_ints(&mu);
        let oracle = adm_by_reflections(&d, &mu);
        assert_eq!(oracle.len(), count, "{} {mu}", d.label());
        let adm = musets::enumerate_adm(&d, &mu).unwrap();
        assert_eq!(as_set(&adm), oracle, "{} {mu}", d.label());
    }
}

#[test]
fn adm_and_perm_match_definitions() {
    for (f, n, bound) in [
        (Family::GL, 3, 1),
        (Family::A, 2, 2),
        (Family::B, 2, 2),
        (Family::C, 2, 2),
        (Family::G2, 2, 1),
        (Family::GSp, 4, 2),
        (Family::B, 3, 1),
    ] {
        let d = datum(f, n);
        let lo = if d.lattice_rank() > d.rank() {
            0
        } else {
            -bound
        };
        for mu in alcove_core::verify::mu_grid(&d, bound) {
            assert!(mu.coords().iter().all(|c| *c >= Q::from_integer(lo)));
            let adm = musets::enumerate_adm(&d, &mu).unwrap();
            assert_eq!(
                as_set(&adm),
                adm_by_reflections(&d, &mu),
                "Adm {} {mu}",
                d.label()
            );
            let perm = musets::enumerate_perm(&d, &mu).unwrap();
            assert_eq!(
                as_set(&perm),
                perm_by_definition(&d, &mu),
                "Perm {} {mu}",
                d.label()
            );
        }
    }
}

#[test]
fn conv_membership_matches_simplex_on_small_boxes() {
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G2, 2)] {
        let d = datum(f, n);
        for mu in alcove_core::verify::mu_grid(&d, 1) {
            let pts = orbit(&d, &mu);
            for v in lattice_box(&d, &pts, 1) {
                assert_eq!(
                    conv_membership(&d, &mu, &v).unwrap(),
                    hull_contains(&pts, &v),
                    "{} {mu} {v}",
                    d.label()
                );
            }
        }
    }
}

#[test]
fn counterexample_in_d4_checks_out() {
    let d = datum(Family::D, 4);
    let c = musets::find_counterexample(&d, 8)
        .unwrap()
        .expect("D4 has a witness");
    let pts = orbit(&d, &c.mu);
    for a in d.vertices() {
        assert!(hull_contains(&pts, &(&affine::act(&d, &c.x, a) - a)));
    }
    let t = ExtAffineElement::translation(&d, &c.mu).unwrap();
    assert!(affine::same_coset(&d, &c.x, &t));
    // a maximal-length admissible element is a translation
    assert_eq!(wall_length(&d, &c.x), translation_length(&d, &c.mu));
    assert!(c.x.finite_part() != FiniteWeylElement::IDENTITY);
}

#[test]
fn b3_inclusion_is_strict_at_one_one_one() {
    let d = datum(Family::B, 3);
    let mu = RationalVector::from_ints(&[1, 1, 1]);
    let adm = adm_by_reflections(&d, &mu);
    let perm = perm_by_definition(&d, &mu);
    assert_eq!((adm.len(), perm.len()), (219, 227));
    assert!(adm.is_subset(&perm));
    let r = musets::compare(&d, &mu).unwrap();
    assert_eq!((r.adm.len(), r.perm.len()), (219, 227));
    assert!(!r.verdicts.adm_eq_perm);
}
