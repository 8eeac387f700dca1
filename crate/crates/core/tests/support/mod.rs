//! Oracles that share no code path with the library routines they check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use alcove_core::affine::{self, ExtAffineElement};
use alcove_core::rational::{ceil_q, floor_q, Q};
use alcove_core::{build_root_datum, Family, FiniteWeylElement, RationalVector, RootDatum};

pub fn datum(family: Family, size: usize) -> RootDatum {
    build_root_datum(family, size).expect("datum builds")
}

fn big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// `W_0 μ` by closing under `v ↦ v − ⟨α_i, v⟩ α_i^∨`.
pub fn orbit(d: &RootDatum, mu: &RationalVector) -> Vec<RationalVector> {
    let mut seen: BTreeSet<RationalVector> = BTreeSet::new();
    let mut stack = vec![mu.clone()];
    seen.insert(mu.clone());
    while let Some(v) = stack.pop() {
        for (a, c) in d.simple_roots().iter().zip(d.simple_coroots()) {
            let u = v.add_scaled(-a.dot(&v), c);
            if seen.insert(u.clone()) {
                stack.push(u);
            }
        }
    }
    seen.into_iter().collect()
}

/// Feasibility of `Σ λ_i p_i = v`, `Σ λ_i = 1`, `λ ≥ 0` by a phase-one simplex
/// with Bland's rule over big rationals.
pub fn hull_contains(points: &[RationalVector], v: &RationalVector) -> bool {
    let n = points.len();
    let dim = v.dim();
    let m = dim + 1;
    // rows: coordinates, then the affine row; columns: λ, artificials, rhs
    let cols = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols]; m];
    for (j, p) in points.iter().enumerate() {
        for i in 0..dim {
            t[i][j] = big(&p.coords()[i]);
        }
        t[dim][j] = BigRational::one();
    }
    for i in 0..dim {
        t[i][cols - 1] = big(&v.coords()[i]);
    }
    t[dim][cols - 1] = BigRational::one();
    for row in t.iter_mut() {
        if row[cols - 1].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    for (i, row) in t.iter_mut().enumerate() {
        row[n + i] = BigRational::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // reduced costs of minimizing the sum of artificials
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = if j >= n {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for (i, &b) in basis.iter().enumerate() {
                if b >= n {
                    r -= &t[i][j];
                }
            }
            r.is_negative()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.expect("phase one is bounded below");
        let pivot = t[p][j].clone();
        for x in t[p].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..m {
            if i != p && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                for c in 0..cols {
                    let delta = &f * &t[p][c];
                    t[i][c] -= delta;
                }
            }
        }
        basis[p] = j;
    }
    basis
        .iter()
        .enumerate()
        .all(|(i, &b)| b < n || t[i][cols - 1].is_zero())
}

/// Lattice points whose lattice coordinates lie in the bounding box of
/// `points`, widened by `pad`.
pub fn lattice_box(d: &RootDatum, points: &[RationalVector], pad: i64) -> Vec<RationalVector> {
    let r = d.lattice_rank();
    let coords: Vec<Vec<Q>> = points
        .iter()
        .map(|p| d.lattice_coords_rational(p).expect("in the lattice span"))
        .collect();
    let lo: Vec<i64> = (0..r)
        .map(|i| coords.iter().map(|c| floor_q(&c[i])).min().unwrap() - pad)
        .collect();
    let hi: Vec<i64> = (0..r)
        .map(|i| coords.iter().map(|c| ceil_q(&c[i])).max().unwrap() + pad)
        .collect();
    let mut out = Vec::new();
    let mut c = lo.clone();
    loop {
        out.push(d.lattice_vector(&c));
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            if c[i] < hi[i] {
                c[i] += 1;
                break;
            }
            c[i] = lo[i];
            i += 1;
        }
    }
}

/// The affine reflection `v ↦ v − (⟨α_b, v⟩ − k) α_b^∨`.
pub fn affine_reflection(d: &RootDatum, b: usize, k: i64) -> ExtAffineElement {
    let w = d.reflection_element(b).expect("reflection in W_0");
    let shift = d.coroot(b).scale(Q::from_integer(k));
    ExtAffineElement::new(d, &shift, w).expect("coroot shift is a lattice vector")
}

/// `Adm(μ)` as the closure of `{t_λ}` under `x ↦ x r` for affine reflections
/// `r` with `l(xr) < l(x)`.
pub fn adm_by_reflections(d: &RootDatum, mu: &RationalVector) -> HashSet<ExtAffineElement> {
    let positive: Vec<usize> = (0..d.roots().len())
        .filter(|&b| d.is_positive_index(b))
        .collect();
    let mut seen: HashSet<ExtAffineElement> = HashSet::new();
    let mut stack: Vec<ExtAffineElement> = orbit(d, mu)
        .iter()
        .map(|l| ExtAffineElement::translation(d, l).unwrap())
        .collect();
    seen.extend(stack.iter().cloned());
    let top = stack
        .iter()
        .map(|x| affine::length(d, x))
        .max()
        .unwrap_or(0) as i64;
    let reflections: Vec<ExtAffineElement> = positive
        .iter()
        .flat_map(|&b| (-top - 1..=top + 1).map(move |k| (b, k)))
        .map(|(b, k)| affine_reflection(d, b, k))
        .collect();
    while let Some(x) = stack.pop() {
        let lx = affine::length(d, &x);
        for r in &reflections {
            let y = affine::compose(d, &x, r).unwrap();
            if affine::length(d, &y) < lx && seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// `Perm(μ)` straight from the definition, with hull membership decided by
/// the simplex oracle.
pub fn perm_by_definition(d: &RootDatum, mu: &RationalVector) -> HashSet<ExtAffineElement> {
    let pts = orbit(d, mu);
    let t_mu = ExtAffineElement::translation(d, mu).unwrap();
    let g = d.weyl().unwrap();
    let mut out = HashSet::new();
    for lambda in lattice_box(d, &pts, 0) {
        if !hull_contains(&pts, &lambda) {
            continue;
        }
        for w in g.elements() {
            let x = ExtAffineElement::new(d, &lambda, w).unwrap();
            if !affine::same_coset(d, &x, &t_mu) {
                continue;
            }
            let ok = d
                .vertices()
                .iter()
                .all(|a| hull_contains(&pts, &(&affine::act(d, &x, a) - a)));
            if ok {
                out.insert(x);
            }
        }
    }
    out
}

pub fn as_set(xs: &[ExtAffineElement]) -> HashSet<ExtAffineElement> {
    xs.iter().cloned().collect()
}

/// Dominant lattice points with ambient coordinates in `[lo, hi]`, for data
/// whose lattice is the integer lattice.
pub fn integer_dominant(d: &RootDatum, lo: i64, hi: i64) -> Vec<RationalVector> {
    let n = d.ambient_dim();
    let mut out = Vec::new();
    let mut c = vec![lo; n];
    loop {
        let v = RationalVector::from_ints(&c);
        if d.is_dominant(&v) && d.in_lattice(&v) {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if c[i] < hi {
                c[i] += 1;
                break;
            }
            c[i] = lo;
            i += 1;
        }
    }
}

/// Number of hyperplanes `⟨α, ·⟩ = k` strictly between `p` and `q`.
pub fn walls_between(d: &RootDatum, p: &RationalVector, q: &RationalVector) -> usize {
    let mut n = 0;
    for (b, a) in d.roots().iter().enumerate() {
        if !d.is_positive_index(b) {
            continue;
        }
        let (x, y) = (a.dot(p), a.dot(q));
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        // p and q are generic, so no endpoint is an integer
        n += (floor_q(&hi) - floor_q(&lo)) as usize;
    }
    n
}

pub fn wall_length(d: &RootDatum, x: &ExtAffineElement) -> usize {
    let p = d.barycenter();
    walls_between(d, p, &affine::act(d, x, p))
}

pub fn translation_length(d: &RootDatum, mu: &RationalVector) -> usize {
    d.roots()
        .iter()
        .enumerate()
        .filter(|(b, _)| d.is_positive_index(*b))
        .map(|(_, a)| {
            let v: Q = a.dot(mu);
            assert!(v.is_integer());
            v.to_integer().unsigned_abs() as usize
        })
        .sum()
}

/// One-line notation of a permutation in `GL(n)`.
pub fn one_line(d: &RootDatum, w: FiniteWeylElement) -> Vec<usize> {
    let n = d.ambient_dim();
    (0..n)
        .map(|j| {
            let img = d.weyl_apply(w, &RationalVector::unit(n, j));
            (0..n).find(|&i| !img.coords()[i].is_zero()).unwrap()
        })
        .collect()
}

/// Tableau criterion for the Bruhat order on permutations.
pub fn tableau_leq(u: &[usize], v: &[usize]) -> bool {
    let n = u.len();
    (0..n).all(|i| {
        (0..n).all(|k| {
            let cu = u[..=i].iter().filter(|&&x| x >= k).count();
            let cv = v[..=i].iter().filter(|&&x| x >= k).count();
            cu <= cv
        })
    })
}
