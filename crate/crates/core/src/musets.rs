//! The admissible, permissible and strongly permissible sets attached to a
//! dominant cocharacter, and the counterexamples to their equality.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{self, ExtAffineElement};
use crate::alcoves::{strong_set, strong_window, StrongSet};
use crate::error::{Error, Result};
use crate::rational::{ceil_q, floor_q, RationalVector, Q};
use crate::rootsys::{ConvHull, FiniteWeylElement, RootDatum};

/// Largest number of lattice points scanned for one finite Weyl element.
pub const BOX_GUARD: u128 = 50_000_000;

/// Exact test of `x(a) − a ∈ Conv(μ)` for all base-alcove vertices `a`,
/// in scaled integer arithmetic on lattice coordinates.
pub struct PermTest<'a> {
    d: &'a RootDatum,
    mu: RationalVector,
    tau: ExtAffineElement,
    /// scaled `⟨u_h, b_j⟩`
    rows: Vec<Vec<i64>>,
    /// scaled `⟨ϖ_i, μ⟩`
    bounds: Vec<i64>,
    /// `offsets[w][a][h]` = scaled `⟨u_h, w(a) − a⟩`
    offsets: Vec<Vec<Vec<i64>>>,
    /// center equations on lattice coordinates, with right-hand sides
    equations: Vec<(Vec<Q>, Q)>,
    /// `(lo, hi)` per lattice coordinate and `w`, or `None` when empty
    boxes: Vec<Option<Vec<(i64, i64)>>>,
    max_points: u128,
}

impl<'a> PermTest<'a> {
    pub fn new(d: &'a RootDatum, mu: &RationalVector) -> Result<PermTest<'a>> {
        d.require_dominant(mu)?;
        let tmu = ExtAffineElement::translation(d, mu)?;
        let (_, tau) = affine::omega_decompose(d, &tmu);
        let hull = ConvHull::new(d, mu)?;
        let g = d.weyl()?;
        let basis = d.lattice_basis();
        let nh = hull.halfspaces().len();

        let moved: Vec<Vec<RationalVector>> = g
            .elements()
            .map(|w| {
                d.vertices()
                    .iter()
                    .map(|a| &d.weyl_apply(w, a) - a)
                    .collect()
            })
            .collect();

        let mut rows = Vec::with_capacity(nh);
        let mut bounds = Vec::with_capacity(nh);
        let mut scaled_offsets = vec![vec![vec![0i64; nh]; d.vertices().len()]; g.order()];
        for (h, (u, b)) in hull.halfspaces().iter().enumerate() {
            let coeffs: Vec<Q> = basis.iter().map(|v| u.dot(v)).collect();
            let offs: Vec<Vec<Q>> = moved
                .iter()
                .map(|per_w| per_w.iter().map(|m| u.dot(m)).collect())
                .collect();
            let mut den: i64 = b.denom().lcm(&1);
            for c in &coeffs {
                den = den.lcm(c.denom());
            }
            for per_w in &offs {
                for o in per_w {
                    den = den.lcm(o.denom());
                }
            }
            let scale = |x: &Q| (x * Q::from_integer(den)).to_integer();
            rows.push(coeffs.iter().map(scale).collect());
            bounds.push(scale(b));
            for (w, per_w) in offs.iter().enumerate() {
                for (a, o) in per_w.iter().enumerate() {
                    scaled_offsets[w][a][h] = scale(o);
                }
            }
        }
        let equations = hull
            .center_equations()
            .iter()
            .map(|(z, c)| (basis.iter().map(|v| z.dot(v)).collect(), *c))
            .collect();

        // bounding box of the orbit W_0 μ in lattice coordinates
        let orbit: Vec<Vec<Q>> = g
            .elements()
            .map(|w| {
                d.lattice_coords_rational(&d.weyl_apply(w, mu))
                    .expect("orbit lies in the lattice span")
            })
            .collect();
        let n = d.lattice_rank();
        let lo: Vec<Q> = (0..n)
            .map(|j| orbit.iter().map(|c| c[j]).min().expect("nonempty"))
            .collect();
        let hi: Vec<Q> = (0..n)
            .map(|j| orbit.iter().map(|c| c[j]).max().expect("nonempty"))
            .collect();
        let boxes = moved
            .iter()
            .map(|per_w| {
                let mut bx: Vec<(i64, i64)> = (0..n).map(|_| (i64::MIN, i64::MAX)).collect();
                for m in per_w {
                    // λ ∈ Conv(μ) − (w(a) − a)
                    let s = d
                        .lattice_coords_rational(m)
                        .expect("vertices lie in the lattice span");
                    for j in 0..n {
                        bx[j].0 = bx[j].0.max(ceil_q(&(lo[j] - s[j])));
                        bx[j].1 = bx[j].1.min(floor_q(&(hi[j] - s[j])));
                    }
                }
                if bx.iter().any(|(l, h)| l > h) {
                    None
                } else {
                    Some(bx)
                }
            })
            .collect();
        Ok(PermTest {
            d,
            mu: mu.clone(),
            tau,
            rows,
            bounds,
            offsets: scaled_offsets,
            equations,
            boxes,
            max_points: BOX_GUARD,
        })
    }

    pub fn mu(&self) -> &RationalVector {
        &self.mu
    }

    /// The `Ω`-component of `t_μ`.
    pub fn omega(&self) -> &ExtAffineElement {
        &self.tau
    }

    fn center_ok(&self, c: &[i64]) -> bool {
        self.equations.iter().all(|(z, rhs)| {
            let mut s = Q::zero();
            for (a, &x) in z.iter().zip(c) {
                if x != 0 {
                    s += *a * Q::from_integer(x);
                }
            }
            s == *rhs
        })
    }

    fn hull_ok(&self, c: &[i64], w: usize, values: &mut [i64]) -> bool {
        for (v, row) in values.iter_mut().zip(&self.rows) {
            *v = row.iter().zip(c).map(|(a, x)| a * x).sum();
        }
        self.offsets[w].iter().all(|off| {
            values
                .iter()
                .zip(off)
                .zip(&self.bounds)
                .all(|((v, o), b)| v + o <= *b)
        })
    }

    fn coset_ok(&self, c: &[i64]) -> bool {
        let lam = self.d.lattice_vector(c);
        self.d.in_coroot_lattice(&(&lam - &self.mu))
    }

    /// Whether `x ∈ Perm(μ)`.
    pub fn contains(&self, x: &ExtAffineElement) -> bool {
        if x.datum_id() != self.d.id() {
            return false;
        }
        let c = x.lattice_translation();
        let mut values = vec![0i64; self.rows.len()];
        self.center_ok(c)
            && self.hull_ok(c, x.finite_part().index(), &mut values)
            && self.coset_ok(c)
    }

    /// Replaces the per-element scan limit, `BOX_GUARD` by default.
    pub fn with_guard(mut self, max_points: u128) -> Self {
        self.max_points = max_points;
        self
    }

    /// Lattice box scanned for the finite part `w`.
    pub fn search_box(&self, w: FiniteWeylElement) -> Option<&[(i64, i64)]> {
        self.boxes[w.index()].as_deref()
    }

    fn scan(&self, w: FiniteWeylElement) -> Result<Vec<ExtAffineElement>> {
        let Some(bx) = self.search_box(w) else {
            return Ok(Vec::new());
        };
        let volume: u128 = bx.iter().map(|(l, h)| (h - l + 1) as u128).product();
        if volume > self.max_points {
            return Err(Error::Guard(format!(
                "{volume} lattice points to scan (limit {})",
                self.max_points
            )));
        }
        let mut out = Vec::new();
        let mut c: Vec<i64> = bx.iter().map(|(l, _)| *l).collect();
        let mut values = vec![0i64; self.rows.len()];
        'scan: loop {
            if self.hull_ok(&c, w.index(), &mut values) && self.center_ok(&c) && self.coset_ok(&c) {
                out.push(ExtAffineElement::from_parts(self.d, c.clone(), w));
            }
            for j in 0..c.len() {
                if c[j] < bx[j].1 {
                    c[j] += 1;
                    continue 'scan;
                }
                c[j] = bx[j].0;
            }
            break;
        }
        Ok(out)
    }

    /// All of `Perm(μ)`, sorted canonically.
    pub fn enumerate(&self) -> Result<Vec<ExtAffineElement>> {
        let g = self.d.weyl()?;
        let ws: Vec<FiniteWeylElement> = g.elements().collect();
        let parts: Vec<Vec<ExtAffineElement>> = ws
            .par_iter()
            .map(|&w| self.scan(w))
            .collect::<Result<_>>()?;
        let mut out: Vec<ExtAffineElement> = parts.into_iter().flatten().collect();
        affine::sort_elements(self.d, &mut out);
        Ok(out)
    }
}

/// `Perm(μ)`.
pub fn enumerate_perm(d: &RootDatum, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
    PermTest::new(d, mu)?.enumerate()
}

/// Distinct translations `t_λ`, `λ ∈ W_0 μ`.
pub fn extreme_translations(d: &RootDatum, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
    let g = d.weyl()?;
    let mut orbit: Vec<RationalVector> = g.elements().map(|w| d.weyl_apply(w, mu)).collect();
    orbit.sort();
    orbit.dedup();
    orbit
        .iter()
        .map(|l| ExtAffineElement::translation(d, l))
        .collect()
}

/// Whether `x ≤ t_λ` for some `λ ∈ W_0 μ`, given those translations.
pub fn below_some(d: &RootDatum, x: &ExtAffineElement, tops: &[ExtAffineElement]) -> bool {
    tops.first().is_some_and(|t| affine::same_coset(d, x, t))
        && tops.iter().any(|t| affine::bruhat_leq_same_coset(d, x, t))
}

/// `Adm(μ)`, obtained by filtering `Perm(μ) ⊇ Adm(μ)`.
pub fn enumerate_adm(d: &RootDatum, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
    let perm = enumerate_perm(d, mu)?;
    adm_from_perm(d, mu, &perm)
}

/// Union of the lower Bruhat intervals below the translations `t_λ`,
/// `λ ∈ W_0μ`.
pub fn adm_by_intervals(d: &RootDatum, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
    let mut out: Vec<ExtAffineElement> = Vec::new();
    for t in extreme_translations(d, mu)? {
        out.extend(affine::lower_interval(d, &t)?);
    }
    affine::sort_elements(d, &mut out);
    out.dedup();
    Ok(out)
}

/// The elements of `perm` lying below some `t_λ`.
pub fn adm_from_perm(
    d: &RootDatum,
    mu: &RationalVector,
    perm: &[ExtAffineElement],
) -> Result<Vec<ExtAffineElement>> {
    let tops = extreme_translations(d, mu)?;
    Ok(perm
        .par_iter()
        .filter(|x| below_some(d, x, &tops))
        .cloned()
        .collect())
}

/// The sets `B(t_{wμ}(a), w)` for all `w` and all vertices `a`, cut to the
/// window that contains every point relevant to `Perm(μ)`.
pub struct StrongTest<'a> {
    d: &'a RootDatum,
    /// `sets[w][a]`
    sets: Vec<Vec<StrongSet>>,
}

impl<'a> StrongTest<'a> {
    pub fn new(d: &'a RootDatum, mu: &RationalVector) -> Result<StrongTest<'a>> {
        d.require_dominant(mu)?;
        let g = d.weyl()?;
        let bound = strong_window(d, mu)?;
        let ws: Vec<FiniteWeylElement> = g.elements().collect();
        let sets = ws
            .par_iter()
            .map(|&w| {
                let wmu = d.weyl_apply(w, mu);
                d.vertices()
                    .iter()
                    .map(|a| strong_set(d, &(&wmu + a), w, &bound))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StrongTest { d, sets })
    }

    /// Whether `x(a) ∈ B(t_{wμ}(a), w)` for all `a` and `w`; `x` is assumed
    /// to be `μ`-permissible and in the right coset.
    pub fn contains_permissible(&self, x: &ExtAffineElement) -> bool {
        let images: Vec<RationalVector> = self
            .d
            .vertices()
            .iter()
            .map(|a| affine::act(self.d, x, a))
            .collect();
        self.sets.iter().all(|per_w| {
            per_w
                .iter()
                .zip(&images)
                .all(|(s, p)| s.contains(self.d, p))
        })
    }

    pub fn set(&self, w: FiniteWeylElement, vertex: usize) -> &StrongSet {
        &self.sets[w.index()][vertex]
    }
}

/// `Perm^st(μ)`, as the strongly permissible elements of `Perm(μ)`.
pub fn enumerate_perm_st(d: &RootDatum, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
    let perm = enumerate_perm(d, mu)?;
    perm_st_from_perm(d, mu, &perm)
}

pub fn perm_st_from_perm(
    d: &RootDatum,
    mu: &RationalVector,
    perm: &[ExtAffineElement],
) -> Result<Vec<ExtAffineElement>> {
    let st = StrongTest::new(d, mu)?;
    Ok(perm
        .par_iter()
        .filter(|x| st.contains_permissible(x))
        .cloned()
        .collect())
}

/// The three sets for one `μ`, with their differences.
#[derive(Clone, Debug)]
pub struct MuSetReport {
    pub datum: String,
    pub fingerprint: String,
    pub mu: RationalVector,
    pub adm: Vec<ExtAffineElement>,
    pub perm: Vec<ExtAffineElement>,
    pub perm_st: Vec<ExtAffineElement>,
    pub perm_minus_adm: Vec<ExtAffineElement>,
    pub perm_minus_perm_st: Vec<ExtAffineElement>,
    pub verdicts: Verdicts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub adm_subset_perm: bool,
    pub adm_eq_perm: bool,
    pub perm_eq_perm_st: bool,
    pub perm_st_subset_adm: bool,
}

fn minus(a: &[ExtAffineElement], b: &[ExtAffineElement]) -> Vec<ExtAffineElement> {
    let bs: HashSet<&ExtAffineElement> = b.iter().collect();
    a.iter().filter(|x| !bs.contains(x)).cloned().collect()
}

fn subset(a: &[ExtAffineElement], b: &[ExtAffineElement]) -> bool {
    let bs: HashSet<&ExtAffineElement> = b.iter().collect();
    a.iter().all(|x| bs.contains(x))
}

/// `Adm(μ)`, `Perm(μ)` and `Perm^st(μ)` side by side.
pub fn compare(d: &RootDatum, mu: &RationalVector) -> Result<MuSetReport> {
    compare_with_guard(d, mu, BOX_GUARD)
}

/// `compare` with an explicit limit on lattice points scanned per `w`.
pub fn compare_with_guard(
    d: &RootDatum,
    mu: &RationalVector,
    max_points: u128,
) -> Result<MuSetReport> {
    let perm = PermTest::new(d, mu)?.with_guard(max_points).enumerate()?;
    let adm = adm_from_perm(d, mu, &perm)?;
    let perm_st = perm_st_from_perm(d, mu, &perm)?;
    let tops = extreme_translations(d, mu)?;
    let verdicts = Verdicts {
        adm_subset_perm: subset(&tops, &perm) && subset(&adm, &perm),
        adm_eq_perm: adm.len() == perm.len(),
        perm_eq_perm_st: perm.len() == perm_st.len(),
        perm_st_subset_adm: subset(&perm_st, &adm),
    };
    Ok(MuSetReport {
        datum: d.label(),
        fingerprint: d.fingerprint().to_string(),
        mu: mu.clone(),
        perm_minus_adm: minus(&perm, &adm),
        perm_minus_perm_st: minus(&perm, &perm_st),
        adm,
        perm,
        perm_st,
        verdicts,
    })
}

/// `a(ϖ_i^∨) − b(ϖ_i^∨)` is a nonnegative combination of simple coroots for
/// every fundamental coweight. For type A this is `a ≤ b`.
pub fn deodhar_order_criterion(d: &RootDatum, a: FiniteWeylElement, b: FiniteWeylElement) -> bool {
    d.fundamental_coweights().iter().all(|l| {
        let diff = &d.weyl_apply(a, l) - &d.weyl_apply(b, l);
        d.coroot_coords(&diff)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    })
}

/// Largest finite Weyl group searched for Deodhar pairs.
pub const DEODHAR_GUARD: usize = 10_000;

/// First `(w, w')` with `w ≠ w'`, `l(w) = l(w')` and
/// `w(λ) − w'(λ) ≥ 0` for all dominant `λ`, in the order (length, word of
/// `w`, word of `w'`).
pub fn search_deodhar_pair(
    d: &RootDatum,
) -> Result<Option<(FiniteWeylElement, FiniteWeylElement)>> {
    if d.weyl_order() > DEODHAR_GUARD as u128 {
        return Err(Error::Guard(format!(
            "|W_0| = {} exceeds {DEODHAR_GUARD}",
            d.weyl_order()
        )));
    }
    let g = d.weyl()?;
    // images of the fundamental coweights, in simple-coroot coordinates
    let images: Vec<Vec<Vec<Q>>> = g
        .elements()
        .map(|w| {
            d.fundamental_coweights()
                .iter()
                .map(|l| {
                    d.coroot_coords(&d.weyl_apply(w, l))
                        .expect("coweights lie in the coroot span")
                })
                .collect()
        })
        .collect();
    let ge = |a: usize, b: usize| {
        images[a]
            .iter()
            .zip(&images[b])
            .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p >= q))
    };
    // elements are numbered by (length, word)
    for a in g.elements() {
        for b in g.elements() {
            if g.length(b) != g.length(a) || a == b {
                continue;
            }
            if ge(a.index(), b.index()) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// `t_{w^{-1}μ}(w^{-1}w')(a) − a ∈ w^{-1}(C̄_0)` for every vertex `a`.
pub fn is_sufficiently_regular(
    d: &RootDatum,
    mu: &RationalVector,
    w: FiniteWeylElement,
    w2: FiniteWeylElement,
) -> Result<bool> {
    let x = counterexample_element(d, mu, w, w2)?;
    Ok(d.vertices().iter().all(|a| {
        let v = &affine::act(d, &x, a) - a;
        let wv = d.weyl_apply(w, &v);
        (0..d.rank()).all(|i| !d.root(i).dot(&wv).is_negative())
    }))
}

fn counterexample_element(
    d: &RootDatum,
    mu: &RationalVector,
    w: FiniteWeylElement,
    w2: FiniteWeylElement,
) -> Result<ExtAffineElement> {
    let g = d.weyl()?;
    let wi = g.inverse(w);
    ExtAffineElement::new(d, &d.weyl_apply(wi, mu), g.compose(wi, w2))
}

/// `x = t_{w^{-1}μ} w^{-1} w'`, after checking the hypotheses under which it
/// lies in `Perm(μ) ∖ Adm(μ)`.
pub fn build_counterexample(
    d: &RootDatum,
    mu: &RationalVector,
    w: FiniteWeylElement,
    w2: FiniteWeylElement,
) -> Result<ExtAffineElement> {
    d.require_dominant(mu)?;
    if w == w2 || !deodhar_order_criterion(d, w, w2) {
        return Err(Error::Config("(w, w') is not a Deodhar pair".into()));
    }
    let g = d.weyl()?;
    if g.length(w) != g.length(w2) {
        return Err(Error::Config("w and w' have different lengths".into()));
    }
    if (0..d.rank()).any(|i| !d.root(i).dot(mu).is_positive()) {
        return Err(Error::Config(format!("μ = {mu} is not regular")));
    }
    if !d.in_coroot_lattice(mu) {
        return Err(Error::Config(format!(
            "μ = {mu} is not in the coroot lattice"
        )));
    }
    if !is_sufficiently_regular(d, mu, w, w2)? {
        return Err(Error::Config(format!(
            "μ = {mu} is not sufficiently regular"
        )));
    }
    counterexample_element(d, mu, w, w2)
}

/// `m ρ^∨` for the least `m ≥ 1` putting the sum of the fundamental coweights
/// into the coroot lattice.
pub fn regular_coroot_step(d: &RootDatum) -> RationalVector {
    let rho = d
        .fundamental_coweights()
        .iter()
        .fold(RationalVector::zeros(d.ambient_dim()), |acc, v| &acc + v);
    let mut m = 1;
    loop {
        let v = rho.scale(Q::from_integer(m));
        if d.in_coroot_lattice(&v) {
            return v;
        }
        m += 1;
    }
}

/// Default limit for the multiple `N` of the regular step.
pub const ESCALATION_LIMIT: i64 = 64;

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub w: FiniteWeylElement,
    pub w2: FiniteWeylElement,
    pub multiple: i64,
    pub mu: RationalVector,
    pub x: ExtAffineElement,
    pub in_perm: bool,
    pub in_adm: bool,
    pub length: usize,
    pub length_t_mu: usize,
}

impl Counterexample {
    pub fn verified(&self) -> bool {
        self.in_perm && !self.in_adm && self.length == self.length_t_mu
    }
}

/// Deodhar pair, then `μ = N m ρ^∨` for the least `N ≤ limit` that is
/// sufficiently regular, then the element and its verification.
pub fn find_counterexample(d: &RootDatum, limit: i64) -> Result<Option<Counterexample>> {
    let Some((w, w2)) = search_deodhar_pair(d)? else {
        return Ok(None);
    };
    let step = regular_coroot_step(d);
    for n in 1..=limit {
        let mu = step.scale(Q::from_integer(n));
        if !is_sufficiently_regular(d, &mu, w, w2)? {
            continue;
        }
        let x = build_counterexample(d, &mu, w, w2)?;
        let perm = PermTest::new(d, &mu)?;
        let tops = extreme_translations(d, &mu)?;
        let tmu = ExtAffineElement::translation(d, &mu)?;
        return Ok(Some(Counterexample {
            w,
            w2,
            multiple: n,
            in_perm: perm.contains(&x),
            in_adm: below_some(d, &x, &tops),
            length: affine::length(d, &x),
            length_t_mu: affine::length(d, &tmu),
            mu,
            x,
        }));
    }
    Err(Error::Guard(format!(
        "no sufficiently regular multiple up to {limit}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, Family};

    #[test]
    fn zero_mu_gives_identity() {
        for (f, n) in [(Family::GL, 3), (Family::B, 2), (Family::G2, 2)] {
            let d = build_root_datum(f, n).unwrap();
            let r = compare(&d, &RationalVector::zeros(d.ambient_dim())).unwrap();
            assert_eq!(r.perm, vec![ExtAffineElement::identity(&d)]);
            assert_eq!(r.adm.len(), 1);
            assert_eq!(r.perm_st.len(), 1);
        }
    }

    #[test]
    fn gl2_minuscule() {
        let d = build_root_datum(Family::GL, 2).unwrap();
        let perm = enumerate_perm(&d, &RationalVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(perm.len(), 3);
        assert_eq!(
            enumerate_adm(&d, &RationalVector::from_ints(&[1, 0]))
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn b2_count() {
        let d = build_root_datum(Family::B, 2).unwrap();
        assert_eq!(
            enumerate_adm(&d, &RationalVector::from_ints(&[1, 0]))
                .unwrap()
                .len(),
            13
        );
    }

    #[test]
    fn no_pairs_in_small_rank() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3)] {
            let d = build_root_datum(f, n).unwrap();
            assert_eq!(search_deodhar_pair(&d).unwrap(), None);
        }
    }

    #[test]
    fn regular_steps() {
        let d = build_root_datum(Family::C, 4).unwrap();
        assert_eq!(
            regular_coroot_step(&d),
            RationalVector::from_ints(&[7, 5, 3, 1])
        );
        let d = build_root_datum(Family::D, 4).unwrap();
        assert_eq!(
            regular_coroot_step(&d),
            RationalVector::from_ints(&[3, 2, 1, 0])
        );
    }
}
