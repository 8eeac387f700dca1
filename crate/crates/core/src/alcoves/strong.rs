//! Reflection-reachability sets `B(v, w)` and `W_aff`-orbits of points.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor_q, RationalVector, Q};
use crate::rootsys::{FiniteWeylElement, RootDatum};

/// Largest set `strong_set` will materialize.
pub const STRONG_SET_GUARD: usize = 4_000_000;

/// The part of `B(v, w)` inside a window.
///
/// Points `u` of `v + w(B_0)` are recorded by `d`, the simple-coroot
/// coefficients of `w^{-1}(v − u)`. Every admissible reflection step
/// increases `d` coordinatewise, so the window `0 ≤ d ≤ bound` loses nothing:
/// a chain leaving it never returns.
#[derive(Clone, Debug)]
pub struct StrongSet {
    origin: RationalVector,
    w: FiniteWeylElement,
    winv: FiniteWeylElement,
    bound: Vec<i64>,
    offsets: HashSet<Vec<Q>>,
}

impl StrongSet {
    pub fn origin(&self) -> &RationalVector {
        &self.origin
    }

    pub fn direction(&self) -> FiniteWeylElement {
        self.w
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    fn offset_of(&self, d: &RootDatum, p: &RationalVector) -> Option<Vec<Q>> {
        d.coroot_coords(&d.weyl_apply(self.winv, &(&self.origin - p)))
    }

    /// Membership; points outside the window are reported as absent.
    pub fn contains(&self, d: &RootDatum, p: &RationalVector) -> bool {
        match self.offset_of(d, p) {
            Some(c) => self.offsets.contains(&c),
            None => false,
        }
    }

    /// Whether `p` lies inside the window, where membership is decided exactly.
    pub fn in_window(&self, d: &RootDatum, p: &RationalVector) -> bool {
        match self.offset_of(d, p) {
            Some(c) => c
                .iter()
                .zip(&self.bound)
                .all(|(x, &b)| !x.is_negative() && *x <= Q::from_integer(b)),
            None => false,
        }
    }

    /// The points, sorted.
    pub fn points(&self, d: &RootDatum) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = self
            .offsets
            .iter()
            .map(|c| {
                let mut s = RationalVector::zeros(d.ambient_dim());
                for (x, co) in c.iter().zip(d.simple_coroots()) {
                    s = s.add_scaled(*x, co);
                }
                &self.origin - &d.weyl_apply(self.w, &s)
            })
            .collect();
        out.sort();
        out
    }
}

/// Simple-coroot coefficients of `μ − w_0 μ`: every point `p` with
/// `p − a ∈ Conv(μ)` lies in the window of `B(t_{wμ}(a), w)` with this bound.
pub fn strong_window(d: &RootDatum, mu: &RationalVector) -> Result<Vec<i64>> {
    let g = d.weyl()?;
    let low = d.weyl_apply(g.longest(), mu);
    let c = d
        .coroot_coords(&(mu - &low))
        .ok_or_else(|| Error::Internal("μ − w_0 μ outside the coroot span".into()))?;
    Ok(c.iter().map(|x| x.to_integer()).collect())
}

/// `B(v, w) ∩ {0 ≤ d ≤ bound}` by breadth-first closure.
pub fn strong_set(
    d: &RootDatum,
    v: &RationalVector,
    w: FiniteWeylElement,
    bound: &[i64],
) -> Result<StrongSet> {
    d.check_dim(v)?;
    let rank = d.rank();
    if bound.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: bound.len(),
        });
    }
    if bound.iter().any(|&b| b < 0) {
        return Err(Error::Config(
            "strong-set window must contain its origin: bounds are nonnegative".into(),
        ));
    }
    let g = d.weyl()?;
    let winv = g.inverse(w);
    let pulled = d.weyl_apply(winv, v);
    // for each positive root β' (β = wβ'): ⟨β', w^{-1}v⟩, ⟨β', α_j^∨⟩ and the
    // simple-coroot coefficients of β'^∨
    let roots: Vec<(Q, Vec<i64>, Vec<i64>)> = (0..d.num_positive_roots())
        .map(|b| {
            let pair: Vec<i64> = (0..rank)
                .map(|j| d.root(b).dot(&d.simple_coroots()[j]).to_integer())
                .collect();
            (d.root(b).dot(&pulled), pair, d.coroot_coeffs(b).to_vec())
        })
        .collect();
    let bound_q: Vec<Q> = bound.iter().map(|&b| Q::from_integer(b)).collect();

    let start = vec![Q::zero(); rank];
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for (base, pair, co) in &roots {
            let mut value = *base;
            for (x, &p) in cur.iter().zip(pair) {
                if p != 0 {
                    value -= *x * Q::from_integer(p);
                }
            }
            // smallest t > 0 with t ≡ ⟨β, u⟩ mod 1
            let mut t = value - Q::from_integer(floor_q(&value));
            if t.is_zero() {
                t = Q::one();
            }
            // largest t allowed by the window
            let mut tmax: Option<Q> = None;
            for ((x, &c), b) in cur.iter().zip(co).zip(&bound_q) {
                if c > 0 {
                    let room = (*b - *x) / Q::from_integer(c);
                    tmax = Some(tmax.map_or(room, |m: Q| m.min(room)));
                }
            }
            let tmax = tmax.expect("coroots are nonzero");
            while t <= tmax {
                let next: Vec<Q> = cur
                    .iter()
                    .zip(co)
                    .map(|(x, &c)| *x + t * Q::from_integer(c))
                    .collect();
                if seen.insert(next.clone()) {
                    if seen.len() > STRONG_SET_GUARD {
                        return Err(Error::Guard(format!(
                            "strong set exceeds {STRONG_SET_GUARD} points"
                        )));
                    }
                    queue.push_back(next);
                }
                t += Q::one();
            }
        }
    }
    Ok(StrongSet {
        origin: v.clone(),
        w,
        winv,
        bound: bound.to_vec(),
        offsets: seen,
    })
}

/// The representative of the `W_aff`-orbit of `p` in the closed base alcove.
pub fn fold_to_base_alcove(d: &RootDatum, p: &RationalVector) -> RationalVector {
    let mut p = p.clone();
    let h = d.highest_index();
    loop {
        if let Some(i) = (0..d.rank()).find(|&i| d.root(i).dot(&p).is_negative()) {
            p = d.reflect(i, &p);
            continue;
        }
        let x = d.highest_root().dot(&p);
        if x > Q::one() {
            p = p.add_scaled(-(x - Q::one()), d.coroot(h));
            continue;
        }
        return p;
    }
}

pub fn same_affine_orbit(d: &RootDatum, p: &RationalVector, q: &RationalVector) -> bool {
    fold_to_base_alcove(d, p) == fold_to_base_alcove(d, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, Family};

    #[test]
    fn special_vertex_gives_a_translated_cone() {
        let d = build_root_datum(Family::C, 2).unwrap();
        let g = d.weyl().unwrap();
        let bound = [2, 3];
        for w in g.elements() {
            let s = strong_set(&d, &RationalVector::zeros(2), w, &bound).unwrap();
            assert_eq!(s.len(), 3 * 4);
        }
    }

    #[test]
    fn folding_is_invariant() {
        let d = build_root_datum(Family::G2, 2).unwrap();
        let p = RationalVector::from_ints(&[3, -1, -2]);
        let f = fold_to_base_alcove(&d, &p);
        assert!(same_affine_orbit(&d, &d.reflect(3, &p), &p));
        assert!(d.highest_root().dot(&f) <= Q::one());
    }

    #[test]
    fn negative_bound_rejected() {
        let d = build_root_datum(Family::B, 2).unwrap();
        let r = strong_set(
            &d,
            &RationalVector::zeros(2),
            FiniteWeylElement::IDENTITY,
            &[1, -1],
        );
        assert!(matches!(r, Err(Error::Config(_))));
    }
}
