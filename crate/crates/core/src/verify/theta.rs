//! The flip on `GL(m)`, its fixed datum, and the odd orthogonal chain.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rand::Rng;

use super::{first_missing, word, Ctx, Outcome, Subject};
use crate::affine::{self, ExtAffineElement};
use crate::alcoves::{
    alcove_containing, alcove_of, alcove_to_element, in_acute_cone, in_positive_half, Alcove, Wall,
};
use crate::error::{Error, Result};
use crate::musets;
use crate::rational::{q, RationalVector};
use crate::rootsys::{build_root_datum, Family, RootDatum};
use crate::steinberg::{build_theta, odd_orthogonal_chain, Restriction, ThetaAutomorphism};

fn host_theta(ctx: &Ctx, default_size: usize) -> Result<ThetaAutomorphism> {
    let family = ctx.params.family.unwrap_or(Family::GL);
    if !family.is_type_a() {
        return Err(Error::Config(format!(
            "the flip needs a type A host, not {family}"
        )));
    }
    build_theta(build_root_datum(
        family,
        ctx.params.size.unwrap_or(default_size),
    )?)
}

fn show(d: &RootDatum, x: &ExtAffineElement) -> String {
    affine::describe(d, x)
}

/// Host alcove of a fixed alcove, through the embedded element.
fn host_alcove(t: &ThetaAutomorphism, a: &Alcove) -> Result<Alcove> {
    let y = t.embed_element(&alcove_to_element(t.fixed(), a))?;
    Ok(alcove_of(t.host(), &y))
}

pub(crate) fn fixed_affine_group(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    let radius = 4;
    let host_ball = affine::affine_ball(h, radius);
    let commuting: HashSet<ExtAffineElement> = host_ball
        .iter()
        .filter(|y| t.commutes(y))
        .cloned()
        .collect();
    let mut embedded = HashSet::new();
    for x in affine::affine_ball(f, radius) {
        let y = t.embed_element(&x)?;
        out.check(t.commutes(&y), || {
            format!("{} does not commute with Θ", show(h, &y))
        });
        out.check(affine::in_affine_weyl(h, &y), || {
            format!("{} left W_aff", show(h, &y))
        });
        if affine::length(h, &y) <= radius {
            embedded.insert(y);
        }
    }
    for y in &commuting {
        out.check(embedded.contains(y), || {
            format!("Θ-fixed {} is not in the fixed group", show(h, y))
        });
        out.check(t.restrict_element(y)?.is_some(), || {
            format!("Θ-fixed {} has no preimage", show(h, y))
        });
    }
    out.check(commuting.len() == embedded.len(), || {
        format!(
            "{} Θ-fixed elements but {} embedded",
            commuting.len(),
            embedded.len()
        )
    });
    // translations by the fixed lattice commute only modulo the center
    for b in f.lattice_basis() {
        let y = t.embed_element(&ExtAffineElement::translation(f, b)?)?;
        out.check(t.commutes_mod_center(&y), || {
            format!("t_{b} does not commute modulo the center")
        });
    }
    out.note(format!(
        "{} Θ-fixed elements of length ≤ {radius}",
        commuting.len()
    ));
    Ok(Subject::of(h))
}

pub(crate) fn averaged_roots(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    let mut hit = HashSet::new();
    let mut halves = 0usize;
    for b in 0..h.roots().len() {
        match t.bar_theta(b) {
            Err(e) => out.check(false, || e.to_string()),
            Ok((_, r)) => {
                let (Restriction::Root(i) | Restriction::HalfRoot(i)) = r;
                halves += matches!(r, Restriction::HalfRoot(_)) as usize;
                hit.insert(i);
                out.check(h.is_positive_index(b) == f.is_positive_index(i), || {
                    format!("root {} changes sign under averaging", h.root(b))
                });
                let image = t.root_image(b);
                out.check(h.is_positive_index(b) == h.is_positive_index(image), || {
                    format!("Θ does not preserve the sign of {}", h.root(b))
                });
            }
        }
    }
    out.check(hit.len() == f.roots().len(), || {
        format!(
            "{} of {} fixed roots arise as averages",
            hit.len(),
            f.roots().len()
        )
    });
    let odd = h.ambient_dim() % 2 == 1;
    out.check((halves > 0) == odd, || {
        format!("{halves} half roots for m = {}", h.ambient_dim())
    });
    out.note(format!(
        "fixed type {}, {halves} averages are half roots",
        f.cartan_type()
    ));
    Ok(Subject::of(h))
}

pub(crate) fn alcove_restriction(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    out.check(
        t.restrict_alcove(&Alcove::base(h))? == Some(Alcove::base(f)),
        || "A_0 does not restrict to A'_0".into(),
    );
    let mut restricted = 0usize;
    for y in affine::affine_ball(h, 5) {
        let a = alcove_of(h, &y);
        let inner = affine::act(h, &y, h.barycenter());
        let stable = alcove_containing(h, &t.apply(&inner))? == a;
        match t.restrict_alcove(&a)? {
            None => out.check(!stable, || format!("Θ-stable {a} restricts to nothing")),
            Some(fa) => {
                restricted += 1;
                out.check(stable, || format!("{a} restricts but is not Θ-stable"));
                let p = affine::act(f, &alcove_to_element(f, &fa), f.barycenter());
                let back = alcove_containing(h, &t.embedding().apply(&p))?;
                out.check(back == a, || {
                    format!("{a} restricts to {fa}, whose points lie in {back}")
                });
            }
        }
    }
    // every fixed alcove comes from exactly one host alcove
    for x in affine::affine_ball(f, 5) {
        let fa = alcove_of(f, &x);
        let a = host_alcove(&t, &fa)?;
        out.check(t.restrict_alcove(&a)? == Some(fa.clone()), || {
            format!("{fa} is not the restriction of {a}")
        });
    }
    out.note(format!(
        "{restricted} host alcoves of length ≤ 5 meet V^[Θ]"
    ));
    Ok(Subject::of(h))
}

pub(crate) fn halfspace_restriction(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    let gf = f.weyl()?;
    let emb = t.embedding();
    let fixed_alcoves: Vec<Alcove> = affine::affine_ball(f, 5)
        .iter()
        .map(|x| alcove_of(f, x))
        .collect();
    // points of V^[Θ] off every wall
    let samples: Vec<RationalVector> = (0..ctx.instances(f))
        .map(|_| {
            let c: Vec<i64> = t
                .fixed_space_basis()
                .iter()
                .map(|_| ctx.rng.gen_range(-400..=400))
                .collect();
            t.fixed_space_basis()
                .iter()
                .zip(&c)
                .fold(RationalVector::zeros(h.ambient_dim()), |acc, (b, &x)| {
                    acc.add_scaled(q(x) / q(97), b)
                })
        })
        .collect();
    for b in 0..h.num_positive_roots() {
        for k in -2..=2 {
            let hw = Wall::new(h, b, k);
            let fw = t.restricted_wall(b, k)?;
            for p in &samples {
                out.check(t.in_fixed_space(p), || format!("{p} is not in V^[Θ]"));
                let on_host = h.root(b).dot(p) - q(k);
                let on_fixed = f.root(fw.root).dot(p) - q(fw.k);
                let same = on_host.is_positive() == on_fixed.is_positive()
                    && on_host.is_zero() == on_fixed.is_zero();
                out.check(same, || {
                    format!(
                        "{p}: sides of H_({},{k}) and its restriction differ",
                        h.root(b)
                    )
                });
            }
            for w in gf.elements() {
                let hw_dir = emb.finite_image(w);
                for fa in &fixed_alcoves {
                    let a = host_alcove(&t, fa)?;
                    let up = in_positive_half(h, hw_dir, &hw, &a);
                    let up_fixed = in_positive_half(f, w, &fw, fa);
                    out.check(up == up_fixed, || {
                        format!(
                            "w = {}, {fa}: H_({},{k}) positive side {up}, restricted {up_fixed}",
                            word(f, w),
                            h.root(b)
                        )
                    });
                }
            }
        }
    }
    Ok(Subject::of(h))
}

pub(crate) fn cone_restriction(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    let gf = f.weyl()?;
    let emb = t.embedding();
    let fixed_alcoves: Vec<Alcove> = affine::affine_ball(f, 5)
        .iter()
        .map(|x| alcove_of(f, x))
        .collect();
    let hosts: Vec<Alcove> = fixed_alcoves
        .iter()
        .map(|a| host_alcove(&t, a))
        .collect::<Result<_>>()?;
    let base = Alcove::base(f);
    let host_base = Alcove::base(h);
    for w in gf.elements() {
        let hw = emb.finite_image(w);
        for (fa, a) in fixed_alcoves.iter().zip(&hosts) {
            let fixed = in_acute_cone(f, &base, w, fa);
            let host = in_acute_cone(h, &host_base, hw, a);
            out.check(fixed == host, || {
                format!(
                    "w = {}, {fa}: fixed cone {fixed}, host cone {host}",
                    word(f, w)
                )
            });
        }
        // cones at other apexes, on a sample of pairs
        for _ in 0..ctx.instances(f) {
            let i = ctx.rng.gen_range(0..fixed_alcoves.len());
            let j = ctx.rng.gen_range(0..fixed_alcoves.len());
            let fixed = in_acute_cone(f, &fixed_alcoves[i], w, &fixed_alcoves[j]);
            let host = in_acute_cone(h, &hosts[i], hw, &hosts[j]);
            out.check(fixed == host, || {
                format!(
                    "w = {}, {} → {}: fixed {fixed}, host {host}",
                    word(f, w),
                    fixed_alcoves[i],
                    fixed_alcoves[j]
                )
            });
        }
    }
    Ok(Subject::of(h))
}

/// Length-zero elements of the fixed extended group met by translations
/// along the fixed lattice basis.
fn fixed_omega(f: &RootDatum) -> Result<Vec<ExtAffineElement>> {
    let mut out = vec![ExtAffineElement::identity(f)];
    for b in f.lattice_basis() {
        let (_, tau) = affine::omega_decompose(f, &ExtAffineElement::translation(f, b)?);
        if !out.contains(&tau) {
            out.push(tau);
        }
    }
    Ok(out)
}

pub(crate) fn inherited_order(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let (h, f) = (t.host(), t.fixed());
    let ball = affine::affine_ball(f, 5);
    let omegas = fixed_omega(f)?;
    for tau in &omegas {
        let xs: Vec<ExtAffineElement> = ball
            .iter()
            .map(|x| affine::compose(f, x, tau))
            .collect::<Result<_>>()?;
        let ys: Vec<ExtAffineElement> = xs
            .iter()
            .map(|x| t.embed_element(x))
            .collect::<Result<_>>()?;
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                let fixed = affine::bruhat_leq(f, &xs[i], &xs[j]);
                let host = affine::bruhat_leq(h, &ys[i], &ys[j]);
                out.check(fixed == host, || {
                    format!(
                        "{} vs {}: fixed {fixed}, host {host}",
                        show(f, &xs[i]),
                        show(f, &xs[j])
                    )
                });
            }
        }
    }
    out.note(format!(
        "{} elements per coset, {} cosets",
        ball.len(),
        omegas.len()
    ));
    Ok(Subject::of(h))
}

pub(crate) fn adm_via_host(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let t = host_theta(ctx, 4)?;
    let f = t.fixed();
    let mus = match &ctx.params.mu {
        Some(_) => ctx.mus(f)?,
        None => super::mu_grid(f, 2),
    };
    for mu in mus {
        let via = t.adm_theta_via_perm(&mu)?;
        let adm = musets::adm_by_intervals(f, &mu)?;
        let extra = first_missing(&via, &adm);
        out.check(extra.is_none(), || {
            format!(
                "μ = {mu}: {} in Perm ∩ W̃^[Θ] but not admissible",
                show(f, extra.unwrap())
            )
        });
        let miss = first_missing(&adm, &via);
        out.check(miss.is_none(), || {
            format!(
                "μ = {mu}: admissible {} missing from Perm",
                show(f, miss.unwrap())
            )
        });
    }
    Ok(Subject::of(t.host()))
}

pub(crate) fn gsp_equality(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::GSp, 4)?;
    if d.family() != Family::GSp {
        return Err(Error::Config(format!(
            "this statement concerns GSp, not {}",
            d.family()
        )));
    }
    let n = d.ambient_dim() / 2;
    let mus: Vec<RationalVector> = match &ctx.params.mu {
        Some(_) => ctx.mus(&d)?,
        None => (0..=2)
            .flat_map(|a| (0..=a).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut c = vec![a; n];
                c.extend(std::iter::repeat_n(b, n));
                RationalVector::from_ints(&c)
            })
            .collect(),
    };
    let theta = build_theta(build_root_datum(Family::GL, d.ambient_dim())?)?;
    for mu in mus {
        let adm = musets::adm_by_intervals(&d, &mu)?;
        let perm = musets::enumerate_perm(&d, &mu)?;
        let extra = first_missing(&perm, &adm);
        out.check(extra.is_none(), || {
            format!(
                "μ = {mu}: {} permissible, not admissible",
                show(&d, extra.unwrap())
            )
        });
        let miss = first_missing(&adm, &perm);
        out.check(miss.is_none(), || {
            format!(
                "μ = {mu}: {} admissible, not permissible",
                show(&d, miss.unwrap())
            )
        });
        // the same count through the flip on GL
        let via = theta.adm_theta_via_perm(&mu)?;
        out.check(via.len() == perm.len(), || {
            format!(
                "μ = {mu}: |Perm ∩ W̃^[Θ]| = {} but |Perm| = {}",
                via.len(),
                perm.len()
            )
        });
        out.note(format!(
            "μ = {mu}: |Adm| = {}, |Perm| = {}",
            adm.len(),
            perm.len()
        ));
    }
    Ok(Subject::of(&d))
}

pub(crate) fn odd_non_inheritance(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let ch = odd_orthogonal_chain(ctx.params.size.unwrap_or(2))?;
    let (b, c) = (ch.b(), ch.c());
    let e = ch.b_to_c();
    let s0 = ExtAffineElement::simple_reflection(b, 0);
    let s1 = ExtAffineElement::simple_reflection(b, 1);
    out.check(
        !affine::bruhat_leq(b, &s0, &s1) && !affine::bruhat_leq(b, &s1, &s0),
        || "s_0 and s_1 are comparable in W_aff(B_n)".into(),
    );
    let image0 = e.embed(b, c, &s0)?;
    out.check(image0 == ExtAffineElement::from_word(c, &[0, 1, 0]), || {
        format!("s_0 maps to {}", show(c, &image0))
    });
    for i in 1..=b.rank() {
        let image = e.embed(b, c, &ExtAffineElement::simple_reflection(b, i))?;
        out.check(image == ExtAffineElement::simple_reflection(c, i), || {
            format!("s_{i} maps to {}", show(c, &image))
        });
    }
    let tau = ch.nontrivial_omega()?;
    let image_tau = e.embed(b, c, &tau)?;
    out.check(
        image_tau == ExtAffineElement::simple_reflection(c, 0),
        || format!("τ maps to {}", show(c, &image_tau)),
    );
    out.check(ch.inheritance(&s1, &s0)? == (false, true), || {
        "s'_1 ≤ s'_0 s'_1 s'_0 fails".into()
    });
    match ch.coset_witness(4)? {
        Some((x, y)) => {
            let (fb, fc) = ch.inheritance(&x, &y)?;
            out.note(format!(
                "coset τ: x = {}, y = {}: x ≤ y is {fb} in B_n, {fc} in C_n",
                show(b, &x),
                show(b, &y)
            ));
            out.check(fb != fc, || {
                "coset witness does not change the order".into()
            });
        }
        None => out.note("no coset witness among elements of length ≤ 4"),
    }
    Ok(Subject::of(b))
}

pub(crate) fn odd_counts(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let ch = odd_orthogonal_chain(ctx.params.size.unwrap_or(2))?;
    let (b, c) = (ch.b(), ch.c());
    let mu = match &ctx.params.mu {
        Some(_) => ctx.mus(b)?.remove(0),
        None => RationalVector::unit(b.ambient_dim(), 0),
    };
    let adm_b = ch.adm_b(&mu)?;
    let adm_c = ch.adm_c(&mu)?;
    let pulled = ch.host_perm_on_b(&mu)?;
    let images: Vec<ExtAffineElement> = pulled
        .iter()
        .map(|x| ch.b_to_c().embed(b, c, x))
        .collect::<Result<_>>()?;
    let mut sorted_images = images.clone();
    affine::sort_elements(c, &mut sorted_images);
    out.check(sorted_images == adm_c, || {
        format!(
            "Perm^A ∩ W̃(B) has {} elements, Adm^C has {}",
            pulled.len(),
            adm_c.len()
        )
    });
    if b.rank() == 2 && mu == RationalVector::from_ints(&[1, 0]) {
        out.check(adm_b.len() == 13, || {
            format!("|Adm^B2(1,0)| = {}", adm_b.len())
        });
        out.check(pulled.len() == 19, || {
            format!("|Perm^A4(1,0) ∩ W̃(B2)| = {}", pulled.len())
        });
        out.check(adm_c.len() == 19, || {
            format!("|Adm^C2(1,0)| = {}", adm_c.len())
        });
    }
    out.note(format!(
        "μ = {mu}: |Adm^B| = {}, |Perm^A ∩ W̃(B)| = {}, |Adm^C| = {}",
        adm_b.len(),
        pulled.len(),
        adm_c.len()
    ));
    Ok(Subject::of(b))
}
