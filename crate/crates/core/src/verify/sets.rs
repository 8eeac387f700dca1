//! Statements about `Adm`, `Perm`, `Perm^st` and the strong sets.

use rand::Rng;

use num_traits::Signed;

use super::{first_missing, word, Ctx, Outcome, Subject};
use crate::affine::{self, ExtAffineElement};
use crate::alcoves::{in_closed_chamber, obtuse_member, same_affine_orbit, strong_set};
use crate::error::{Error, Result};
use crate::musets::{self, ESCALATION_LIMIT};
use crate::rational::{q, RationalVector};
use crate::rootsys::{conv_membership, Family, FiniteWeylElement, RootDatum};

fn require_type_a(d: &RootDatum) -> Result<()> {
    if d.family().is_type_a() {
        Ok(())
    } else {
        Err(Error::Config(format!("{} is not of type A", d.label())))
    }
}

fn is_minuscule(d: &RootDatum, mu: &RationalVector) -> bool {
    d.positive_roots().iter().all(|a| a.dot(mu).abs() <= q(1))
}

fn show(d: &RootDatum, x: &ExtAffineElement) -> String {
    affine::describe(d, x)
}

pub(crate) fn adm_in_perm(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    for mu in ctx.mus(&d)? {
        let adm = musets::adm_by_intervals(&d, &mu)?;
        let perm = musets::enumerate_perm(&d, &mu)?;
        let miss = first_missing(&adm, &perm);
        out.check(miss.is_none(), || {
            format!(
                "μ = {mu}: {} is admissible but not permissible",
                show(&d, miss.unwrap())
            )
        });
        let tops = musets::extreme_translations(&d, &mu)?;
        let miss = first_missing(&tops, &perm);
        out.check(miss.is_none(), || {
            format!("μ = {mu}: {} not permissible", show(&d, miss.unwrap()))
        });
        if matches!(d.family(), Family::GL | Family::GSp) && is_minuscule(&d, &mu) {
            let extra = first_missing(&perm, &adm);
            out.check(extra.is_none(), || {
                format!(
                    "minuscule μ = {mu}: {} is permissible but not admissible",
                    show(&d, extra.unwrap())
                )
            });
        }
        if adm.len() != perm.len() {
            out.note(format!(
                "μ = {mu}: |Adm| = {}, |Perm| = {}",
                adm.len(),
                perm.len()
            ));
        }
    }
    Ok(Subject::of(&d))
}

pub(crate) fn type_a_equality(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::GL, 3)?;
    require_type_a(&d)?;
    for mu in ctx.mus(&d)? {
        let adm = musets::adm_by_intervals(&d, &mu)?;
        let perm = musets::enumerate_perm(&d, &mu)?;
        let perm_st = musets::perm_st_from_perm(&d, &mu, &perm)?;
        for (a, b, what) in [
            (&perm, &adm, "permissible but not admissible"),
            (&adm, &perm, "admissible but not permissible"),
            (&perm, &perm_st, "permissible but not strongly permissible"),
        ] {
            let miss = first_missing(a, b);
            out.check(miss.is_none(), || {
                format!("μ = {mu}: {} is {what}", show(&d, miss.unwrap()))
            });
        }
    }
    Ok(Subject::of(&d))
}

pub(crate) fn strong_in_adm(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::C, 2)?;
    for mu in ctx.mus(&d)? {
        let adm = musets::adm_by_intervals(&d, &mu)?;
        let perm_st = musets::enumerate_perm_st(&d, &mu)?;
        let miss = first_missing(&perm_st, &adm);
        out.check(miss.is_none(), || {
            format!(
                "μ = {mu}: {} is strongly permissible but not admissible",
                show(&d, miss.unwrap())
            )
        });
    }
    Ok(Subject::of(&d))
}

/// Offsets `n ∈ [0, bound]^r` in odometer order.
fn window_offsets(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut c = vec![0; bound.len()];
    loop {
        out.push(c.clone());
        let mut j = 0;
        loop {
            if j == c.len() {
                return out;
            }
            if c[j] < bound[j] {
                c[j] += 1;
                break;
            }
            c[j] = 0;
            j += 1;
        }
    }
}

/// `v − w(Σ n_i α_i^∨)`.
fn cone_point(
    d: &RootDatum,
    v: &RationalVector,
    w: FiniteWeylElement,
    n: &[i64],
) -> RationalVector {
    let s = n
        .iter()
        .zip(d.simple_coroots())
        .fold(RationalVector::zeros(d.ambient_dim()), |acc, (&c, co)| {
            acc.add_scaled(q(c), co)
        });
    v - &d.weyl_apply(w, &s)
}

fn random_finite(ctx: &mut Ctx, d: &RootDatum) -> Result<FiniteWeylElement> {
    let g = d.weyl()?;
    Ok(FiniteWeylElement(ctx.rng.gen_range(0..g.order() as u32)))
}

pub(crate) fn type_a_strong_sets(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::GL, 3)?;
    require_type_a(&d)?;
    let bound = vec![2; d.rank()];
    let offsets = window_offsets(&bound);
    for _ in 0..ctx.instances(&d) {
        let x = ctx.random_affine(&d, 6);
        let a = ctx.rng.gen_range(0..d.vertices().len());
        let v = affine::act(&d, &x, &d.vertices()[a]);
        let w = random_finite(ctx, &d)?;
        let ww = word(&d, w);
        let set = strong_set(&d, &v, w, &bound)?;
        let mut count = 0;
        for n in &offsets {
            let p = cone_point(&d, &v, w, n);
            let orbit = same_affine_orbit(&d, &p, &v);
            count += orbit as usize;
            out.check(set.contains(&d, &p) == orbit, || {
                format!(
                    "v = {v}, w = {ww}, p = {p}: strong {} but orbit {orbit}",
                    set.contains(&d, &p)
                )
            });
        }
        out.check(set.len() == count, || {
            format!(
                "v = {v}, w = {ww}: |B| = {} but {count} orbit points",
                set.len()
            )
        });
    }
    if ctx.params.mu.is_some() {
        for mu in ctx.mus(&d)? {
            let perm = musets::enumerate_perm(&d, &mu)?;
            let st = musets::perm_st_from_perm(&d, &mu, &perm)?;
            let miss = first_missing(&perm, &st);
            out.check(miss.is_none(), || {
                format!(
                    "μ = {mu}: {} not strongly permissible",
                    show(&d, miss.unwrap())
                )
            });
        }
    }
    Ok(Subject::of(&d))
}

/// `⟨α, a⟩ ∈ Z` for every root.
fn is_special(d: &RootDatum, a: &RationalVector) -> bool {
    d.positive_roots().iter().all(|r| r.dot(a).is_integer())
}

pub(crate) fn special_vertices(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let bound = vec![2; d.rank()];
    let offsets = window_offsets(&bound);
    let mut nonspecial_witnesses = 0usize;
    for _ in 0..ctx.instances(&d) {
        let x = ctx.random_affine(&d, 4);
        let a = ctx.rng.gen_range(0..d.vertices().len());
        let special = is_special(&d, &d.vertices()[a]);
        let v = affine::act(&d, &x, &d.vertices()[a]);
        let w = random_finite(ctx, &d)?;
        let ww = word(&d, w);
        let set = strong_set(&d, &v, w, &bound)?;
        for p in set.points(&d) {
            let ok = same_affine_orbit(&d, &p, &v) && obtuse_member(&d, &p, &v, w)?;
            out.check(ok, || {
                format!("v = {v}, w = {ww}: {p} ∈ B(v,w) outside W_aff(v) ∩ (v + w(B_0))")
            });
        }
        for n in &offsets {
            let p = cone_point(&d, &v, w, n);
            if special {
                out.check(set.contains(&d, &p), || {
                    format!("special v = {v}, w = {ww}: {p} missing from B(v,w)")
                });
            } else if same_affine_orbit(&d, &p, &v) && !set.contains(&d, &p) {
                nonspecial_witnesses += 1;
                if nonspecial_witnesses <= 3 {
                    out.note(format!(
                        "nonspecial v = {v}, w = {ww}: {p} ∈ W_aff(v) ∩ (v + w(B_0)) but not in B(v,w)"
                    ));
                }
            }
        }
    }
    out.note(format!(
        "{nonspecial_witnesses} nonspecial witnesses in total"
    ));
    Ok(Subject::of(&d))
}

/// Integer points of the box spanned by a finite set, widened by one.
fn integer_box(points: &[RationalVector]) -> Vec<RationalVector> {
    let dim = points[0].dim();
    let lo: Vec<i64> = (0..dim)
        .map(|j| {
            points
                .iter()
                .map(|p| crate::rational::floor_q(&p.coords()[j]))
                .min()
                .unwrap()
                - 1
        })
        .collect();
    let hi: Vec<i64> = (0..dim)
        .map(|j| {
            points
                .iter()
                .map(|p| crate::rational::ceil_q(&p.coords()[j]))
                .max()
                .unwrap()
                + 1
        })
        .collect();
    let mut out = Vec::new();
    let mut c = lo.clone();
    loop {
        out.push(RationalVector::from_ints(&c));
        let mut j = 0;
        loop {
            if j == dim {
                return out;
            }
            if c[j] < hi[j] {
                c[j] += 1;
                break;
            }
            c[j] = lo[j];
            j += 1;
        }
    }
}

pub(crate) fn chamber_slices(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::B, 2)?;
    let g = d.weyl()?;
    for mu in ctx.mus(&d)? {
        let orbit: Vec<RationalVector> = g.elements().map(|w| d.weyl_apply(w, &mu)).collect();
        let candidates: Vec<RationalVector> = integer_box(&orbit)
            .into_iter()
            .filter(|v| d.in_lattice(v))
            .collect();
        for w in g.elements() {
            let ww = word(&d, w);
            let wmu = d.weyl_apply(w, &mu);
            for v in candidates.iter().filter(|v| in_closed_chamber(&d, w, v)) {
                let cone = obtuse_member(&d, v, &wmu, w)?;
                let conv = conv_membership(&d, &mu, v)?;
                out.check(cone == conv, || {
                    format!("μ = {mu}, w = {ww}, v = {v}: obtuse cone {cone}, Conv(μ) {conv}")
                });
            }
        }
    }
    Ok(Subject::of(&d))
}

pub(crate) fn counterexample(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::D, 4)?;
    match musets::find_counterexample(&d, ESCALATION_LIMIT)? {
        None => {
            let expected_none = d.rank() <= 3 || d.family().is_type_a();
            out.check(expected_none, || {
                format!("no Deodhar pair found in {}", d.label())
            });
            out.note(format!("{} has no Deodhar pair", d.label()));
        }
        Some(c) => {
            out.check(c.verified(), || {
                format!(
                    "x = {} for μ = {}: in Perm {}, in Adm {}, l(x) = {}, l(t_μ) = {}",
                    show(&d, &c.x),
                    c.mu,
                    c.in_perm,
                    c.in_adm,
                    c.length,
                    c.length_t_mu
                )
            });
            let g = d.weyl()?;
            out.note(format!(
                "w = {:?}, w' = {:?}, μ = {} (multiple {}), x = {}",
                g.word(c.w),
                g.word(c.w2),
                c.mu,
                c.multiple,
                show(&d, &c.x)
            ));
        }
    }
    Ok(Subject::of(&d))
}

pub(crate) fn deodhar_type_a(ctx: &mut Ctx, out: &mut Outcome) -> Result<Subject> {
    let d = ctx.datum(Family::GL, 4)?;
    require_type_a(&d)?;
    let g = d.weyl()?;
    for w2 in g.elements() {
        for w in g.elements() {
            let crit = musets::deodhar_order_criterion(&d, w2, w);
            let leq = g.bruhat_leq(w2, w);
            out.check(crit == leq, || {
                format!(
                    "w' = {:?}, w = {:?}: criterion {crit}, Bruhat {leq}",
                    g.word(w2),
                    g.word(w)
                )
            });
        }
    }
    Ok(Subject::of(&d))
}
