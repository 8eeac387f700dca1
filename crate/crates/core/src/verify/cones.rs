//! Galleries, acute cones and the Bruhat order.

use rand::Rng;

use super::{word, Ctx, Outcome, Subject};
use crate::affine::{self, ExtAffineElement};
use crate::alcoves::{
    alcove_of, all_minimal_galleries, find_direction, in_acute_cone, in_positive_half,
    in_w_direction, is_minimal, minimal_gallery, parabolic_decompose, pointed_cone_member,
    vertex_parabolic, Alcove, Gallery, Wall,
};
use crate::error::Result;
use crate::rational::RationalVector;
use crate::rootsys::{Family, FiniteWeylElement, RootDatum};

const GALLERY_LIMIT: usize = 500;

fn random_finite(ctx: &mut Ctx, d: &RootDatum) -> Result<FiniteWeylElement> {
    let g = d.weyl()?;
    Ok(FiniteWeylElement(ctx.rng.gen_range(0..g.order() as u32)))
}

/// A random alcove pair at gallery distance at most `reach`.
fn random_pair(ctx: &mut Ctx, d: &RootDatum, reach: usize) -> (Alcove, Alcove) {
    let x = ctx.random_affine(d, reach);
    let word = ctx.random_word(d, reach);
    let g = Gallery::from_word(d, &x, &word);
    (g.start().clone(), g.end().clone())
}

pub(crate) fn direction_minimality(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::G2, 2)?;
    let g = d.weyl()?;
    for _ in 0..ctx.instances(&d) {
        let (a, b) = random_pair(ctx, &d, 6);
        let galleries = all_minimal_galleries(&d, &a, &b, GALLERY_LIMIT)?;
        for w in g.elements() {
            let first = in_w_direction(&d, &galleries[0], w);
            let split = galleries
                .iter()
                .find(|gal| in_w_direction(&d, gal, w) != first);
            out.check(split.is_none(), || {
                format!(
                    "{a} → {b}, w = {}: minimal galleries disagree on direction",
                    word(&d, w)
                )
            });
        }
        // a random gallery that happens to be in some w-direction must be minimal
        let x = ctx.random_affine(&d, 4);
        let walk = ctx.random_word(&d, 6);
        let gal = Gallery::from_word(&d, &x, &walk);
        for w in g.elements() {
            if in_w_direction(&d, &gal, w) {
                out.check(is_minimal(&gal), || {
                    format!(
                        "word {walk:?} from {}: w = {} direction but not minimal",
                        gal.start(),
                        word(&d, w)
                    )
                });
            }
        }
        // concatenating two w-direction galleries stays in the w-direction
        let w = random_finite(ctx, &d)?;
        let first = minimal_gallery(&d, &a, &b);
        if in_w_direction(&d, &first, w) {
            let y = alcoves_element(&d, &b);
            let more = ctx.random_word(&d, 4);
            let second = Gallery::from_word(&d, &y, &more);
            if in_w_direction(&d, &second, w) {
                let joined = first.concat(&second)?;
                out.check(in_w_direction(&d, &joined, w), || {
                    format!(
                        "{a} → {b} → {}: concatenation leaves the w-direction",
                        second.end()
                    )
                });
            }
        }
    }
    Ok(Subject::of(&d))
}

fn alcoves_element(d: &RootDatum, a: &Alcove) -> ExtAffineElement {
    crate::alcoves::alcove_to_element(d, a)
}

pub(crate) fn pointed_inside_acute(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let g = d.weyl()?;
    let mut hits = 0usize;
    for _ in 0..ctx.instances(&d) {
        let p = ctx.random_interior(&d);
        let a = alcove_of(&d, &ctx.random_affine(&d, 6));
        let b = alcove_of(&d, &ctx.random_affine(&d, 6));
        for w in g.elements() {
            if pointed_cone_member(&d, &p, &a, w, &b)? {
                hits += 1;
                out.check(in_acute_cone(&d, &a, w, &b), || {
                    format!(
                        "p = {p}, {a} → {b}, w = {}: in C_p but not in C",
                        word(&d, w)
                    )
                });
            }
        }
        out.check(pointed_cone_member(&d, &p, &a, g.longest(), &a)?, || {
            format!("{a} ∉ C_p({a}, w_0)")
        });
    }
    out.note(format!("{hits} pointed-cone memberships tested"));
    Ok(Subject::of(&d))
}

pub(crate) fn cones_cover(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::G2, 2)?;
    for _ in 0..ctx.instances(&d) {
        let a = alcove_of(&d, &ctx.random_affine(&d, 8));
        let b = alcove_of(&d, &ctx.random_affine(&d, 8));
        let w = find_direction(&d, &a, &b)?;
        out.check(in_acute_cone(&d, &a, w, &b), || {
            format!("{a} → {b}: returned direction fails")
        });
        let gal = minimal_gallery(&d, &a, &b);
        out.check(in_w_direction(&d, &gal, w), || {
            format!(
                "{a} → {b}: minimal gallery not in the {} direction",
                word(&d, w)
            )
        });
    }
    Ok(Subject::of(&d))
}

pub(crate) fn translations_in_cones(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let g = d.weyl()?;
    let base = Alcove::base(&d);
    let mut mus = ctx.mus(&d)?;
    // random dominant lattice points on top of the grid
    while mus.len() < ctx.instances(&d) && ctx.params.mu.is_none() {
        let c: Vec<i64> = (0..d.lattice_rank())
            .map(|_| ctx.rng.gen_range(-6..=6))
            .collect();
        let v = d.lattice_vector(&c);
        let (dom, _) = crate::rootsys::dominant_representative(&d, &v)?;
        mus.push(dom);
    }
    for mu in &mus {
        for w in g.elements() {
            let wmu = d.weyl_apply(w, mu);
            let t = ExtAffineElement::translation(&d, &wmu)?;
            let b = alcove_of(&d, &t);
            out.check(in_acute_cone(&d, &base, w, &b), || {
                format!("μ = {mu}, w = {}: t_wμ(A_0) = {b} ∉ C(A_0, w)", word(&d, w))
            });
            if d.in_coroot_lattice(mu) {
                out.check(
                    pointed_cone_member(&d, d.barycenter(), &base, w, &b)?,
                    || {
                        format!(
                            "μ = {mu}, w = {}: t_wμ(A_0) ∉ C_p(A_0, w) at the barycenter",
                            word(&d, w)
                        )
                    },
                );
            }
        }
    }
    Ok(Subject::of(&d))
}

/// `B` lies on the `w`-positive side of every wall whose `w`-positive side
/// contains `A`, scanning each root over the `k` that can separate them.
fn halfspace_oracle(d: &RootDatum, a: &Alcove, w: FiniteWeylElement, b: &Alcove) -> bool {
    (0..d.num_positive_roots()).all(|r| {
        let (ka, kb) = (a.coord(d, r), b.coord(d, r));
        (ka.min(kb) - 1..=ka.max(kb) + 1).all(|k| {
            let wall = Wall::new(d, r, k);
            !in_positive_half(d, w, &wall, a) || in_positive_half(d, w, &wall, b)
        })
    })
}

pub(crate) fn halfspace_characterization(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::C, 2)?;
    let g = d.weyl()?;
    for _ in 0..ctx.instances(&d) {
        let a = alcove_of(&d, &ctx.random_affine(&d, 6));
        let b = alcove_of(&d, &ctx.random_affine(&d, 6));
        let gal = minimal_gallery(&d, &a, &b);
        for w in g.elements() {
            let cone = in_acute_cone(&d, &a, w, &b);
            let half = halfspace_oracle(&d, &a, w, &b);
            let dir = in_w_direction(&d, &gal, w);
            out.check(cone == half && cone == dir, || {
                format!(
                    "{a} → {b}, w = {}: cone {cone}, half-spaces {half}, gallery direction {dir}",
                    word(&d, w)
                )
            });
        }
    }
    Ok(Subject::of(&d))
}

/// Draws until `accept` holds, up to a fixed number of tries.
fn sample_where(
    ctx: &mut Ctx,
    d: &RootDatum,
    max_len: usize,
    accept: impl Fn(&ExtAffineElement) -> bool,
) -> Option<ExtAffineElement> {
    (0..400)
        .map(|_| ctx.random_affine(d, max_len))
        .find(|x| accept(x))
}

pub(crate) fn left_multiplication(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let g = d.weyl()?;
    let base = Alcove::base(&d);
    let mut skipped = 0usize;
    for _ in 0..ctx.instances(&d) {
        let w = random_finite(ctx, &d)?;
        let opposite = g.compose(w, g.longest());
        let in_cone = |x: &ExtAffineElement| in_acute_cone(&d, &base, w, &alcove_of(&d, x));
        let x1 = sample_where(ctx, &d, 6, in_cone);
        let x2 = sample_where(ctx, &d, 6, in_cone);
        // z = y^{-1} with z(A_0) ∈ C(A_0, w w_0)
        let z = sample_where(ctx, &d, 5, |z| {
            in_acute_cone(&d, &base, opposite, &alcove_of(&d, z))
        });
        let (Some(x1), Some(x2), Some(z)) = (x1, x2, z) else {
            skipped += 1;
            continue;
        };
        let y = affine::inverse(&d, &z);
        let ly = affine::length(&d, &y);
        for x in [&x1, &x2] {
            let yx = affine::compose(&d, &y, x)?;
            let (l, lx) = (affine::length(&d, &yx), affine::length(&d, x));
            out.check(l == ly + lx, || {
                format!(
                    "y = {}, x = {}: l(yx) = {l} ≠ {ly} + {lx}",
                    affine::describe(&d, &y),
                    affine::describe(&d, x)
                )
            });
        }
        let before = affine::bruhat_leq(&d, &x1, &x2);
        let after = affine::bruhat_leq(
            &d,
            &affine::compose(&d, &y, &x1)?,
            &affine::compose(&d, &y, &x2)?,
        );
        out.check(before == after, || {
            format!(
                "x1 = {}, x2 = {}, y = {}: x1 ≤ x2 is {before}, yx1 ≤ yx2 is {after}",
                affine::describe(&d, &x1),
                affine::describe(&d, &x2),
                affine::describe(&d, &y)
            )
        });
    }
    if skipped > 0 {
        out.note(format!(
            "{skipped} draws found no sample satisfying the cone conditions"
        ));
    }
    Ok(Subject::of(&d))
}

pub(crate) fn parabolic_projections(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::G2, 2)?;
    let radius = if d.rank() <= 2 { 6 } else { 4 };
    let js: Vec<Vec<usize>> = d
        .vertices()
        .iter()
        .map(|a| vertex_parabolic(&d, a))
        .collect();
    let common = (0..=d.rank()).find(|s| js.iter().all(|j| j.contains(s)));
    out.check(common.is_none(), || {
        format!("generator s{} lies in every J_a", common.unwrap())
    });
    let ball = affine::affine_ball(&d, radius);
    let projections: Vec<Vec<ExtAffineElement>> = ball
        .iter()
        .map(|x| {
            js.iter()
                .map(|j| parabolic_decompose(&d, x, j).map(|(min, _)| min))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (i, x) in ball.iter().enumerate() {
        for (k, y) in ball.iter().enumerate() {
            let leq = affine::bruhat_leq(&d, x, y);
            let by_parts = projections[i]
                .iter()
                .zip(&projections[k])
                .all(|(xj, yj)| affine::bruhat_leq(&d, xj, yj));
            out.check(leq == by_parts, || {
                format!(
                    "x = {}, y = {}: x ≤ y is {leq}, projections say {by_parts}",
                    affine::describe(&d, x),
                    affine::describe(&d, y)
                )
            });
        }
    }
    out.note(format!("{} elements of length ≤ {radius}", ball.len()));
    Ok(Subject::of(&d))
}

pub(crate) fn near_translations(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let g = d.weyl()?;
    for _ in 0..ctx.instances(&d) {
        let c: Vec<i64> = (0..d.lattice_rank())
            .map(|_| ctx.rng.gen_range(-3..=3))
            .collect();
        let lam = d.lattice_vector(&c);
        let coset: Vec<ExtAffineElement> = g
            .elements()
            .map(|w| ExtAffineElement::new(&d, &lam, w))
            .collect::<Result<_>>()?;
        let lengths: Vec<usize> = coset.iter().map(|x| affine::length(&d, x)).collect();
        let min = *lengths.iter().min().expect("W_0 is nonempty");
        let minimal: Vec<usize> = (0..coset.len()).filter(|&i| lengths[i] == min).collect();
        out.check(minimal.len() == 1, || {
            format!("λ = {lam}: {} minimal elements in t_λ W_0", minimal.len())
        });
        let w_lam = coset[minimal[0]].finite_part();
        let lifted: Vec<ExtAffineElement> = g
            .elements()
            .map(|w| ExtAffineElement::new(&d, &lam, g.compose(w_lam, w)))
            .collect::<Result<_>>()?;
        for w1 in g.elements() {
            let x1 = &lifted[w1.index()];
            out.check(affine::length(&d, x1) == min + g.length(w1), || {
                format!("λ = {lam}, w = {}: lengths do not add", word(&d, w1))
            });
            for w2 in g.elements() {
                let affine_leq = affine::bruhat_leq(&d, x1, &lifted[w2.index()]);
                let finite_leq = g.bruhat_leq(w1, w2);
                out.check(affine_leq == finite_leq, || {
                    format!(
                        "λ = {lam}, w1 = {}, w2 = {}: affine {affine_leq}, finite {finite_leq}",
                        word(&d, w1),
                        word(&d, w2)
                    )
                });
            }
        }
    }
    Ok(Subject::of(&d))
}

pub(crate) fn antidominant_boundary(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::C, 3)?;
    let g = d.weyl()?;
    let base = Alcove::base(&d);
    let w0 = g.longest();
    for mu in ctx.mus(&d)? {
        let low: RationalVector = d.weyl_apply(w0, &mu);
        let t = ExtAffineElement::translation(&d, &low)?;
        for w in g.elements() {
            let x = affine::compose(&d, &t, &ExtAffineElement::finite(&d, w))?;
            let b = alcove_of(&d, &x);
            out.check(in_acute_cone(&d, &base, w0, &b), || {
                format!(
                    "μ = {mu}, w = {}: t_(w_0 μ) w(A_0) = {b} ∉ C(A_0, w_0)",
                    word(&d, w)
                )
            });
        }
    }
    Ok(Subject::of(&d))
}
