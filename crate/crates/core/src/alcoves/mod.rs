//! Alcoves in integer coordinates, walls, galleries, acute and obtuse
//! cones, and parabolic decompositions.
//!
//! An alcove is recorded by the integers `k_α` with
//! `k_α < ⟨α, p⟩ < k_α + 1` for interior points `p`, one per positive root.

mod strong;
pub mod svg;

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::{self, ExtAffineElement};
use crate::error::{Error, Result};
use crate::rational::{floor_q, RationalVector, Q};
use crate::rootsys::{FiniteWeylElement, RootDatum};

pub use strong::{fold_to_base_alcove, same_affine_orbit, strong_set, strong_window, StrongSet};

/// The hyperplane `H_{α,k} = {v : ⟨α, v⟩ = k}` with `α` a positive root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Wall {
    /// index of a positive root
    pub root: usize,
    pub k: i64,
}

impl Wall {
    /// `H_{β,k}` for any root index, normalized to a positive root.
    pub fn new(d: &RootDatum, b: usize, k: i64) -> Wall {
        if d.is_positive_index(b) {
            Wall { root: b, k }
        } else {
            Wall {
                root: d.negate_index(b),
                k: -k,
            }
        }
    }

    pub fn contains(&self, d: &RootDatum, v: &RationalVector) -> bool {
        d.root(self.root).dot(v) == Q::from_integer(self.k)
    }

    /// The affine reflection in this wall, as an element of `W_aff`.
    pub fn reflection(&self, d: &RootDatum) -> ExtAffineElement {
        // s_{α,k} = t_{kα^∨} s_α
        let mut t = d.coroot_lat(self.root);
        for c in &mut t {
            *c *= self.k;
        }
        let s = d
            .reflection_element(self.root)
            .expect("finite Weyl group within guard");
        ExtAffineElement::from_parts(d, t, s)
    }
}

/// An alcove, stored as its coordinates `k_α` for positive roots `α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Alcove {
    coords: Vec<i64>,
}

impl Alcove {
    pub fn base(d: &RootDatum) -> Alcove {
        Alcove {
            coords: vec![0; d.num_positive_roots()],
        }
    }

    /// Validates that the coordinates describe an actual alcove.
    pub fn from_coords(d: &RootDatum, coords: Vec<i64>) -> Result<Alcove> {
        if coords.len() != d.num_positive_roots() {
            return Err(Error::DimensionMismatch {
                expected: d.num_positive_roots(),
                got: coords.len(),
            });
        }
        let a = Alcove { coords };
        let x = walk_to_base(d, &a)
            .ok_or_else(|| Error::Config("coordinates do not describe an alcove".into()))?;
        if alcove_of(d, &x) != a {
            return Err(Error::Config(
                "coordinates do not describe an alcove".into(),
            ));
        }
        Ok(a)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `k_β` for any root index; `k_{−α} = −k_α − 1`.
    pub fn coord(&self, d: &RootDatum, b: usize) -> i64 {
        if d.is_positive_index(b) {
            self.coords[b]
        } else {
            -self.coords[d.negate_index(b)] - 1
        }
    }

    pub fn is_base(&self) -> bool {
        self.coords.iter().all(|&k| k == 0)
    }

    /// Whether the alcove lies on the side `⟨α, v⟩ > k` of a wall.
    pub fn above(&self, wall: &Wall) -> bool {
        self.coords[wall.root] >= wall.k
    }

    /// Image under the affine reflection in `wall`.
    pub fn reflect(&self, d: &RootDatum, wall: &Wall) -> Alcove {
        // k_β(s_{γ,m} A) = k_{s_γ β}(A) + m ⟨β, γ^∨⟩
        let g = d.weyl().expect("finite Weyl group within guard");
        let s = d
            .reflection_element(wall.root)
            .expect("finite Weyl group within guard");
        let cg = d.coroot(wall.root);
        let coords = (0..d.num_positive_roots())
            .map(|b| {
                let pair = d.root(b).dot(cg).to_integer();
                self.coord(d, g.act_root(s, b)) + wall.k * pair
            })
            .collect();
        Alcove { coords }
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// `x(A_0)`.
pub fn alcove_of(d: &RootDatum, x: &ExtAffineElement) -> Alcove {
    Alcove {
        coords: (0..d.num_positive_roots())
            .map(|b| affine::alcove_coordinate(d, x, b))
            .collect(),
    }
}

/// Coordinates of the alcove containing an interior point.
pub fn alcove_containing(d: &RootDatum, p: &RationalVector) -> Result<Alcove> {
    let mut coords = Vec::with_capacity(d.num_positive_roots());
    for b in 0..d.num_positive_roots() {
        let v = d.root(b).dot(p);
        if v.is_integer() {
            return Err(Error::NotInterior(format!(
                "{p} lies on a wall of root {}",
                d.root(b)
            )));
        }
        coords.push(floor_q(&v));
    }
    Ok(Alcove { coords })
}

fn walk_to_base(d: &RootDatum, a: &Alcove) -> Option<ExtAffineElement> {
    let budget: i64 = a.coords.iter().map(|k| k.abs()).sum();
    let mut cur = a.clone();
    let mut word = Vec::new();
    for _ in 0..=budget {
        match first_descent(d, &cur) {
            None => return Some(ExtAffineElement::from_word(d, &word)),
            Some((s, wall)) => {
                word.push(s as u8);
                cur = cur.reflect(d, &wall);
            }
        }
    }
    None
}

fn first_descent(d: &RootDatum, a: &Alcove) -> Option<(usize, Wall)> {
    let h = d.highest_index();
    if a.coords[h] >= 1 {
        return Some((0, Wall { root: h, k: 1 }));
    }
    (0..d.rank())
        .find(|&i| a.coords[i] < 0)
        .map(|i| (i + 1, Wall { root: i, k: 0 }))
}

/// The unique `y ∈ W_aff` with `y(A_0) = A`.
pub fn alcove_to_element(d: &RootDatum, a: &Alcove) -> ExtAffineElement {
    walk_to_base(d, a).expect("alcove coordinates are realizable")
}

/// The wall of `y(A_0)` which is the image of the wall of `A_0` fixed by
/// the simple affine reflection `s`.
pub fn wall_of(d: &RootDatum, y: &ExtAffineElement, s: usize) -> Wall {
    let g = d.weyl().expect("finite Weyl group within guard");
    let w = y.finite_part();
    let lam = y.lattice_translation();
    if s == 0 {
        let b = g.act_root(w, d.highest_index());
        Wall::new(d, b, d.pair_root_lat(b, lam) + 1)
    } else {
        let b = g.act_root(w, s - 1);
        Wall::new(d, b, d.pair_root_lat(b, lam))
    }
}

/// Whether `H_{α,k}` lies strictly between two alcoves.
pub fn separates(wall: &Wall, a: &Alcove, b: &Alcove) -> bool {
    let (ka, kb) = (a.coords[wall.root], b.coords[wall.root]);
    ka.min(kb) < wall.k && wall.k <= ka.max(kb)
}

/// All walls separating `a` and `b`, ordered by (root index, k).
pub fn separating_walls(a: &Alcove, b: &Alcove) -> Vec<Wall> {
    let mut out = Vec::new();
    for (root, (&ka, &kb)) in a.coords.iter().zip(&b.coords).enumerate() {
        for k in ka.min(kb) + 1..=ka.max(kb) {
            out.push(Wall { root, k });
        }
    }
    out
}

pub fn distance(a: &Alcove, b: &Alcove) -> usize {
    a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| (x - y).unsigned_abs() as usize)
        .sum()
}

/// A sequence of alcoves, each adjacent to the next across the recorded wall.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Gallery {
    alcoves: Vec<Alcove>,
    walls: Vec<Wall>,
}

impl Gallery {
    pub fn trivial(a: Alcove) -> Gallery {
        Gallery {
            alcoves: vec![a],
            walls: Vec::new(),
        }
    }

    /// Checks adjacency and records the common walls.
    pub fn from_alcoves(alcoves: Vec<Alcove>) -> Result<Gallery> {
        if alcoves.is_empty() {
            return Err(Error::Config("a gallery has at least one alcove".into()));
        }
        let mut walls = Vec::with_capacity(alcoves.len() - 1);
        for pair in alcoves.windows(2) {
            let sep = separating_walls(&pair[0], &pair[1]);
            if sep.len() != 1 {
                return Err(Error::Config(format!(
                    "alcoves {} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
            walls.push(sep[0]);
        }
        Ok(Gallery { alcoves, walls })
    }

    /// `y(A_0), y s_1 (A_0), y s_1 s_2 (A_0), …`
    pub fn from_word(d: &RootDatum, start: &ExtAffineElement, word: &[u8]) -> Gallery {
        let mut y = start.clone();
        let mut alcoves = vec![alcove_of(d, &y)];
        let mut walls = Vec::with_capacity(word.len());
        for &s in word {
            walls.push(wall_of(d, &y, s as usize));
            y = affine::right_mul_simple(d, &y, s as usize);
            alcoves.push(alcove_of(d, &y));
        }
        Gallery { alcoves, walls }
    }

    pub fn alcoves(&self) -> &[Alcove] {
        &self.alcoves
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn start(&self) -> &Alcove {
        &self.alcoves[0]
    }

    pub fn end(&self) -> &Alcove {
        self.alcoves.last().expect("nonempty")
    }

    pub fn reversed(&self) -> Gallery {
        let mut alcoves = self.alcoves.clone();
        alcoves.reverse();
        let mut walls = self.walls.clone();
        walls.reverse();
        Gallery { alcoves, walls }
    }

    /// `self` followed by `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Gallery) -> Result<Gallery> {
        if self.end() != other.start() {
            return Err(Error::Config("galleries do not meet".into()));
        }
        let mut alcoves = self.alcoves.clone();
        alcoves.extend_from_slice(&other.alcoves[1..]);
        let mut walls = self.walls.clone();
        walls.extend_from_slice(&other.walls);
        Ok(Gallery { alcoves, walls })
    }
}

/// One minimal gallery from `a` to `b`: at each step cross the least
/// (root index, k) wall of the current alcove that separates it from `b`.
pub fn minimal_gallery(d: &RootDatum, a: &Alcove, b: &Alcove) -> Gallery {
    let mut y = alcove_to_element(d, a);
    let mut cur = a.clone();
    let mut alcoves = vec![cur.clone()];
    let mut walls = Vec::new();
    while cur != *b {
        let (s, wall) = (0..=d.rank())
            .map(|s| (s, wall_of(d, &y, s)))
            .filter(|(_, w)| separates(w, &cur, b))
            .min_by_key(|(_, w)| *w)
            .expect("distinct alcoves have a separating wall of the first");
        y = affine::right_mul_simple(d, &y, s);
        cur = cur.reflect(d, &wall);
        walls.push(wall);
        alcoves.push(cur.clone());
    }
    Gallery { alcoves, walls }
}

/// Every minimal gallery from `a` to `b`, up to `limit` of them.
pub fn all_minimal_galleries(
    d: &RootDatum,
    a: &Alcove,
    b: &Alcove,
    limit: usize,
) -> Result<Vec<Gallery>> {
    let mut out = Vec::new();
    let mut stack = vec![(alcove_to_element(d, a), Gallery::trivial(a.clone()))];
    while let Some((y, g)) = stack.pop() {
        let cur = g.end().clone();
        if cur == *b {
            if out.len() == limit {
                return Err(Error::Guard(format!("more than {limit} minimal galleries")));
            }
            out.push(g);
            continue;
        }
        for s in (0..=d.rank()).rev() {
            let wall = wall_of(d, &y, s);
            if separates(&wall, &cur, b) {
                let mut next = g.clone();
                let nc = cur.reflect(d, &wall);
                next.walls.push(wall);
                next.alcoves.push(nc);
                stack.push((affine::right_mul_simple(d, &y, s), next));
            }
        }
    }
    Ok(out)
}

/// No wall is crossed twice.
pub fn is_minimal(g: &Gallery) -> bool {
    let mut seen = HashSet::new();
    g.walls.iter().all(|w| seen.insert(*w))
}

/// Whether `c` lies in the `w`-positive half-space of `wall`: the side
/// `⟨β, v⟩ > k` for the representative `β ∈ w(R⁺)`.
pub fn in_positive_half(d: &RootDatum, w: FiniteWeylElement, wall: &Wall, c: &Alcove) -> bool {
    let g = d.weyl().expect("finite Weyl group within guard");
    let pulled = g.act_root(g.inverse(w), wall.root);
    if d.is_positive_index(pulled) {
        c.above(wall)
    } else {
        !c.above(wall)
    }
}

/// Each crossing goes from the `w`-negative to the `w`-positive side.
pub fn in_w_direction(d: &RootDatum, g: &Gallery, w: FiniteWeylElement) -> bool {
    g.walls.iter().enumerate().all(|(i, wall)| {
        !in_positive_half(d, w, wall, &g.alcoves[i])
            && in_positive_half(d, w, wall, &g.alcoves[i + 1])
    })
}

/// `b ∈ C(a, w)`: `b` lies in every `w`-positive half-space containing `a`.
/// Only walls separating the two alcoves can fail.
pub fn in_acute_cone(d: &RootDatum, a: &Alcove, w: FiniteWeylElement, b: &Alcove) -> bool {
    separating_walls(a, b)
        .iter()
        .all(|wall| in_positive_half(d, w, wall, b))
}

/// The first `w` in the fixed enumeration of `W_0` with `b ∈ C(a, w)`.
pub fn find_direction(d: &RootDatum, a: &Alcove, b: &Alcove) -> Result<FiniteWeylElement> {
    let g = d.weyl()?;
    g.elements()
        .find(|&w| in_acute_cone(d, a, w, b))
        .ok_or_else(|| Error::Internal(format!("no direction from {a} to {b}")))
}

/// Whether `p` lies in the open base alcove.
pub fn in_open_base_alcove(d: &RootDatum, p: &RationalVector) -> bool {
    (0..d.rank()).all(|i| d.root(i).dot(p).is_positive()) && d.highest_root().dot(p) < Q::one()
}

/// `b ∈ C_p(a, w)`, i.e. `b(p) ∈ a(p) + w(C̄_0)`, for `p` in the open base
/// alcove and `a(p)`, `b(p)` its images under the `W_aff` elements of the
/// alcoves.
pub fn pointed_cone_member(
    d: &RootDatum,
    p: &RationalVector,
    a: &Alcove,
    w: FiniteWeylElement,
    b: &Alcove,
) -> Result<bool> {
    d.check_dim(p)?;
    if !in_open_base_alcove(d, p) {
        return Err(Error::NotInterior(format!(
            "{p} is not in the open base alcove"
        )));
    }
    let ya = alcove_to_element(d, a);
    let yb = alcove_to_element(d, b);
    let diff = &affine::act(d, &yb, p) - &affine::act(d, &ya, p);
    Ok(in_closed_chamber(d, w, &diff))
}

/// `v ∈ w(C̄_0)`.
pub fn in_closed_chamber(d: &RootDatum, w: FiniteWeylElement, v: &RationalVector) -> bool {
    let g = d.weyl().expect("finite Weyl group within guard");
    (0..d.rank()).all(|i| !d.root(g.act_root(w, i)).dot(v).is_negative())
}

/// `v1 − v0 ∈ w(B_0)`: `w^{-1}(v1 − v0)` is a nonpositive combination of
/// simple coroots.
pub fn obtuse_member(
    d: &RootDatum,
    v1: &RationalVector,
    v0: &RationalVector,
    w: FiniteWeylElement,
) -> Result<bool> {
    d.check_dim(v1)?;
    d.check_dim(v0)?;
    let g = d.weyl()?;
    let pulled = d.weyl_apply(g.inverse(w), &(v1 - v0));
    Ok(match d.coroot_coords(&pulled) {
        Some(c) => c.iter().all(|x| !x.is_positive()),
        None => false,
    })
}

/// Generators of `W_J` for the walls of `A_0` through a point of its closure.
pub fn vertex_parabolic(d: &RootDatum, a: &RationalVector) -> Vec<usize> {
    let mut j = Vec::new();
    if d.highest_root().dot(a) == Q::one() {
        j.push(0);
    }
    for i in 0..d.rank() {
        if d.root(i).dot(a).is_zero() {
            j.push(i + 1);
        }
    }
    j
}

/// `x = x^J x_J` with `x^J` minimal in `x W_J` and `x_J ∈ W_J`.
pub fn parabolic_decompose(
    d: &RootDatum,
    x: &ExtAffineElement,
    j: &[usize],
) -> Result<(ExtAffineElement, ExtAffineElement)> {
    if j.iter().any(|&s| s > d.rank()) {
        return Err(Error::Config(format!(
            "generator index outside 0..={}",
            d.rank()
        )));
    }
    let distinct: HashSet<_> = j.iter().collect();
    if distinct.len() > d.rank() {
        return Err(Error::Config(
            "W_J is infinite: J contains every affine generator".into(),
        ));
    }
    let mut min = x.clone();
    let mut len = affine::length(d, &min);
    'outer: loop {
        for &s in j {
            let next = affine::right_mul_simple(d, &min, s);
            let nl = affine::length(d, &next);
            if nl < len {
                min = next;
                len = nl;
                continue 'outer;
            }
        }
        break;
    }
    let fin = affine::compose(d, &affine::inverse(d, &min), x)?;
    Ok((min, fin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootsys::{build_root_datum, Family};

    #[test]
    fn base_and_translations() {
        let d = build_root_datum(Family::GL, 3).unwrap();
        assert!(alcove_of(&d, &ExtAffineElement::identity(&d)).is_base());
        let t = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[2, 0, -1])).unwrap();
        let a = alcove_of(&d, &t);
        for b in 0..d.num_positive_roots() {
            assert_eq!(
                a.coords()[b],
                d.root(b).dot(&t.translation_vector(&d)).to_integer()
            );
        }
        let (_, tau) = affine::omega_decompose(&d, &t);
        assert!(alcove_of(&d, &tau).is_base());
    }

    #[test]
    fn element_round_trip() {
        let d = build_root_datum(Family::G2, 2).unwrap();
        let x = ExtAffineElement::from_word(&d, &[0, 1, 2, 0, 1, 2, 1]);
        let a = alcove_of(&d, &x);
        assert_eq!(alcove_to_element(&d, &a), x);
        assert_eq!(
            separating_walls(&Alcove::base(&d), &a).len(),
            affine::length(&d, &x)
        );
        assert!(Alcove::from_coords(&d, vec![5, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn adjacent_alcoves() {
        let d = build_root_datum(Family::C, 2).unwrap();
        let a = Alcove::base(&d);
        let b = alcove_of(&d, &ExtAffineElement::simple_reflection(&d, 0));
        let g = minimal_gallery(&d, &a, &b);
        assert_eq!(g.len(), 1);
        assert_eq!(
            g.walls()[0],
            Wall {
                root: d.highest_index(),
                k: 1
            }
        );
        assert!(is_minimal(&g));
    }

    #[test]
    fn obtuse_generators() {
        let d = build_root_datum(Family::B, 2).unwrap();
        let g = d.weyl().unwrap();
        let v0 = RationalVector(vec![qf(1, 2), qf(1, 3)]);
        for w in g.elements() {
            assert!(obtuse_member(&d, &v0, &v0, w).unwrap());
            for i in 0..2 {
                let c = d.coroot(g.act_root(w, i));
                assert!(obtuse_member(&d, &(&v0 - c), &v0, w).unwrap());
                assert!(!obtuse_member(&d, &(&v0 + c), &v0, w).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_of_vertex() {
        let d = build_root_datum(Family::C, 2).unwrap();
        let x = ExtAffineElement::from_word(&d, &[0, 1, 2, 1, 0, 2]);
        for a in d.vertices() {
            let j = vertex_parabolic(&d, a);
            let (min, fin) = parabolic_decompose(&d, &x, &j).unwrap();
            assert_eq!(affine::act(&d, &min, a), affine::act(&d, &x, a));
            assert_eq!(
                affine::length(&d, &x),
                affine::length(&d, &min) + affine::length(&d, &fin)
            );
        }
        assert!(parabolic_decompose(&d, &x, &[0, 1, 2]).is_err());
    }
}
