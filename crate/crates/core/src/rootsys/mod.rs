//! Based root data, the finite Weyl group, pairings, reflections and
//! dominance.

mod conv;
pub mod lattice;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qf, RationalVector, Q};
use lattice::{rational_kernel, Coordinates};

pub use conv::ConvHull;
pub use weyl::{FiniteWeylElement, WeylGroup};

/// Largest finite Weyl group that will be enumerated.
pub const WEYL_ORDER_GUARD: u128 = 1_000_000;
pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    GL,
    A,
    B,
    C,
    D,
    F4,
    G2,
    GSp,
    /// Fixed points of the flip on `GL(2n+1)`: type `C_n` inside `R^{2n+1}`.
    FoldedA,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::GSp => "GSp",
            Family::FoldedA => "FoldedA",
        }
    }

    /// Whether the datum is of Cartan type A.
    pub fn is_type_a(self) -> bool {
        matches!(self, Family::GL | Family::A)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "GL" => Family::GL,
            "A" | "SL" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "F" | "F4" => Family::F4,
            "G" | "G2" => Family::G2,
            "GSP" => Family::GSp,
            _ => return Err(Error::Config(format!("unknown family `{s}`"))),
        })
    }
}

struct WeylData {
    group: WeylGroup,
    /// reflection `s_β` for each positive root index
    reflections: Vec<FiniteWeylElement>,
    /// `s_α̃ · w` and `w · s_α̃`
    left_highest: Vec<FiniteWeylElement>,
    right_highest: Vec<FiniteWeylElement>,
}

/// A based root datum realized in a rational ambient space.
///
/// Roots are stored as vectors via the standard inner product; indices
/// `0..num_pos` are the positive roots (simple roots first), and index
/// `num_pos + i` is the negative of root `i`.
pub struct RootDatum {
    family: Family,
    size: usize,
    ambient_dim: usize,
    rank: usize,
    roots: Vec<RationalVector>,
    coroots: Vec<RationalVector>,
    root_index: HashMap<RationalVector, usize>,
    num_pos: usize,
    /// coefficients of each positive root in the simple roots
    root_coeffs: Vec<Vec<i64>>,
    /// coefficients of each positive coroot in the simple coroots
    coroot_coeffs: Vec<Vec<i64>>,
    highest: usize,
    cartan: Vec<Vec<i64>>,
    lattice: Coordinates,
    simple_coroot_coords: Coordinates,
    /// ⟨root b, basis_j⟩ for positive b
    root_pair_lat: Vec<Vec<i64>>,
    /// lattice coordinates of the coroot of positive root b
    coroot_lat: Vec<Vec<i64>>,
    fund_coweights: Vec<RationalVector>,
    fund_weights: Vec<RationalVector>,
    center: Vec<RationalVector>,
    vertices: Vec<RationalVector>,
    barycenter: RationalVector,
    fingerprint: String,
    weyl: OnceLock<WeylData>,
    conv_orbits: OnceLock<Vec<Vec<RationalVector>>>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({})", self.label())
    }
}

/// Constructs the standard datum of a family.
pub fn build_root_datum(family: Family, size: usize) -> Result<RootDatum> {
    let bad = || Error::Config(format!("unsupported size {size} for family {family}"));
    let e = |n: usize, i: usize| RationalVector::unit(n, i);
    let diff = |n: usize, i: usize, j: usize| &e(n, i) - &e(n, j);
    match family {
        Family::GL | Family::A => {
            let n = if family == Family::GL { size } else { size + 1 };
            if !(2..=MAX_RANK + 1).contains(&n) {
                return Err(bad());
            }
            let simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let basis: Vec<_> = (0..n).map(|i| e(n, i)).collect();
            let verts = (1..n)
                .map(|i| {
                    let mut v = RationalVector::zeros(n);
                    for j in 0..i {
                        v.0[j] = Q::one();
                    }
                    v
                })
                .collect();
            RootDatum::from_parts(family, size, simple.clone(), simple, basis, Some(verts))
        }
        Family::B => {
            let n = size;
            if !(2..=MAX_RANK).contains(&n) {
                return Err(bad());
            }
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut co = simple.clone();
            simple.push(e(n, n - 1));
            co.push(e(n, n - 1).scale(q(2)));
            let basis = (0..n).map(|i| e(n, i)).collect();
            RootDatum::from_parts(family, size, simple, co, basis, None)
        }
        Family::C => {
            let n = size;
            if !(1..=MAX_RANK).contains(&n) {
                return Err(bad());
            }
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut co = simple.clone();
            simple.push(e(n, n - 1).scale(q(2)));
            co.push(e(n, n - 1));
            let basis = (0..n).map(|i| e(n, i)).collect();
            RootDatum::from_parts(family, size, simple, co, basis, None)
        }
        Family::D => {
            let n = size;
            if !(3..=MAX_RANK).contains(&n) {
                return Err(bad());
            }
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(&e(n, n - 2) + &e(n, n - 1));
            let basis = (0..n).map(|i| e(n, i)).collect();
            RootDatum::from_parts(family, size, simple.clone(), simple, basis, None)
        }
        Family::F4 => {
            if size != 4 {
                return Err(bad());
            }
            let h = qf(1, 2);
            let a4 = RationalVector(vec![h, -h, -h, -h]);
            let simple = vec![diff(4, 1, 2), diff(4, 2, 3), e(4, 3), a4.clone()];
            let co = vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                e(4, 3).scale(q(2)),
                a4.scale(q(2)),
            ];
            let basis = vec![
                diff(4, 0, 1),
                diff(4, 1, 2),
                diff(4, 2, 3),
                &e(4, 2) + &e(4, 3),
            ];
            RootDatum::from_parts(family, size, simple, co, basis, None)
        }
        Family::G2 => {
            if size != 2 {
                return Err(bad());
            }
            let a1 = RationalVector::from_ints(&[1, -1, 0]);
            let a2 = RationalVector::from_ints(&[-2, 1, 1]);
            let co = vec![a1.clone(), a2.scale(qf(1, 3))];
            RootDatum::from_parts(family, size, vec![a1, a2], co.clone(), co, None)
        }
        Family::GSp => {
            if !size.is_multiple_of(2) || !(2..=2 * MAX_RANK).contains(&size) {
                return Err(bad());
            }
            let (simple, co, basis, verts) = gsp_parts(size / 2);
            RootDatum::from_parts(family, size, simple, co, basis, Some(verts))
        }
        Family::FoldedA => Err(Error::Config(
            "FoldedA data are produced by the steinberg module".into(),
        )),
    }
}

type Parts = (
    Vec<RationalVector>,
    Vec<RationalVector>,
    Vec<RationalVector>,
    Vec<RationalVector>,
);

/// Symplectic datum inside `R^{2n}` with coordinates `(x_1..x_n, y_n..y_1)`.
fn gsp_parts(n: usize) -> Parts {
    let m = 2 * n;
    let e = |i: usize| RationalVector::unit(m, i);
    let mut simple = Vec::new();
    let mut co = Vec::new();
    for i in 0..n - 1 {
        // ½(e_i − e_{i+1} + e_{2n−1−i} − e_{2n−i}) in 0-based indices
        let a = &(&(&e(i) - &e(i + 1)) + &e(m - 2 - i)) - &e(m - 1 - i);
        simple.push(a.scale(qf(1, 2)));
        co.push(a);
    }
    let long = &e(n - 1) - &e(n);
    simple.push(long.clone());
    co.push(long);
    let mut basis: Vec<_> = (0..n).map(|i| &e(i) - &e(m - 1 - i)).collect();
    let mut upper = RationalVector::zeros(m);
    for j in n..m {
        upper.0[j] = Q::one();
    }
    basis.push(upper);
    let omega = |i: usize| {
        let mut v = RationalVector::zeros(m);
        for j in 0..i {
            v.0[j] = Q::one();
        }
        v
    };
    let verts = (1..=n)
        .map(|i| (&omega(i) + &omega(m - i)).scale(qf(1, 2)))
        .collect();
    (simple, co, basis, verts)
}

impl RootDatum {
    /// Builds a datum from simple roots, simple coroots and a Z-basis of the
    /// cocharacter lattice. Vertices default to `ϖ_i^∨ / c_i`.
    pub fn from_parts(
        family: Family,
        size: usize,
        simple: Vec<RationalVector>,
        simple_co: Vec<RationalVector>,
        lattice_basis: Vec<RationalVector>,
        vertices: Option<Vec<RationalVector>>,
    ) -> Result<RootDatum> {
        let rank = simple.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Config(format!("rank {rank} outside 1..={MAX_RANK}")));
        }
        if simple_co.len() != rank {
            return Err(Error::Config(
                "simple roots and coroots differ in number".into(),
            ));
        }
        let dim = simple[0].dim();
        for v in simple.iter().chain(&simple_co).chain(&lattice_basis) {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        for (a, c) in simple.iter().zip(&simple_co) {
            if a.scale(q(2) / a.norm2()) != *c {
                return Err(Error::Config(format!(
                    "coroot {c} is not 2α/(α,α) for α = {a}"
                )));
            }
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let x = simple[i].dot(&simple_co[j]);
                if !x.is_integer() {
                    return Err(Error::Config("non-integral Cartan matrix".into()));
                }
                cartan[i][j] = x.to_integer();
            }
        }
        if !connected(&cartan) {
            return Err(Error::Config("Dynkin diagram is not connected".into()));
        }

        // closure of the simple roots under the simple reflections
        let reflect =
            |i: usize, v: &RationalVector| v.add_scaled(-v.dot(&simple_co[i]), &simple[i]);
        let simple_coords = Coordinates::new(&simple)
            .ok_or_else(|| Error::Config("simple roots are dependent".into()))?;
        let mut all: Vec<RationalVector> = simple.clone();
        let mut seen: HashMap<RationalVector, ()> = all.iter().map(|v| (v.clone(), ())).collect();
        let mut head = 0;
        while head < all.len() {
            let v = all[head].clone();
            head += 1;
            for i in 0..rank {
                let r = reflect(i, &v);
                if !seen.contains_key(&r) {
                    if seen.len() > 10_000 {
                        return Err(Error::Config("root closure does not terminate".into()));
                    }
                    seen.insert(r.clone(), ());
                    all.push(r);
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, RationalVector)> = Vec::new();
        for v in &all {
            let c = simple_coords
                .solve_integral(v)
                .ok_or_else(|| Error::Config(format!("root {v} not integral in simple roots")))?;
            if c.iter().all(|&x| x >= 0) {
                positive.push((c, v.clone()));
            } else if !c.iter().all(|&x| x <= 0) {
                return Err(Error::Internal(format!("root {v} has mixed signs")));
            }
        }
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            (ha, std::cmp::Reverse(a)).cmp(&(hb, std::cmp::Reverse(b)))
        });
        let num_pos = positive.len();
        if 2 * num_pos != all.len() {
            return Err(Error::Internal("root system is not symmetric".into()));
        }
        let mut roots: Vec<RationalVector> = positive.iter().map(|(_, v)| v.clone()).collect();
        let root_coeffs: Vec<Vec<i64>> = positive.iter().map(|(c, _)| c.clone()).collect();
        for i in 0..num_pos {
            let n = -&roots[i];
            roots.push(n);
        }
        let coroots: Vec<RationalVector> =
            roots.iter().map(|r| r.scale(q(2) / r.norm2())).collect();
        let root_index: HashMap<RationalVector, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();

        let simple_coroot_coords = Coordinates::new(&simple_co)
            .ok_or_else(|| Error::Config("simple coroots are dependent".into()))?;
        let mut coroot_coeffs = Vec::with_capacity(num_pos);
        for c in &coroots[..num_pos] {
            coroot_coeffs.push(
                simple_coroot_coords.solve_integral(c).ok_or_else(|| {
                    Error::Config(format!("coroot {c} not in the coroot lattice"))
                })?,
            );
        }

        // highest root: unique root of maximal height, checked dominance-maximal
        let highest = num_pos - 1;
        for (i, c) in root_coeffs.iter().enumerate() {
            if !c.iter().zip(&root_coeffs[highest]).all(|(a, b)| a <= b) {
                return Err(Error::Internal(format!(
                    "root {} exceeds highest root",
                    roots[i]
                )));
            }
        }

        let lattice = Coordinates::new(&lattice_basis)
            .ok_or_else(|| Error::Config("lattice basis is dependent".into()))?;
        let mut root_pair_lat = Vec::with_capacity(num_pos);
        let mut coroot_lat = Vec::with_capacity(num_pos);
        for b in 0..num_pos {
            let mut row = Vec::with_capacity(lattice_basis.len());
            for v in &lattice_basis {
                let x = roots[b].dot(v);
                if !x.is_integer() {
                    return Err(Error::Config(format!(
                        "root {} does not pair integrally with the lattice",
                        roots[b]
                    )));
                }
                row.push(x.to_integer());
            }
            root_pair_lat.push(row);
            coroot_lat.push(lattice.solve_integral(&coroots[b]).ok_or_else(|| {
                Error::Config(format!(
                    "coroot {} is not in the cocharacter lattice",
                    coroots[b]
                ))
            })?);
        }

        // fundamental coweights and weights inside the (co)root span
        let cm = crate::rational::QMatrix {
            rows: rank,
            cols: rank,
            data: cartan.iter().flatten().map(|&x| q(x)).collect(),
        };
        let cinv = cm
            .inverse()
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        let mut fund_coweights = Vec::new();
        let mut fund_weights = Vec::new();
        for i in 0..rank {
            let mut cw = RationalVector::zeros(dim);
            let mut fw = RationalVector::zeros(dim);
            for k in 0..rank {
                // Σ_k cartan[j][k] x_k = δ_ij  =>  x = C^{-1} e_i
                cw = cw.add_scaled(cinv.get(k, i), &simple_co[k]);
                // Σ_k cartan[k][j] y_k = δ_ij  =>  y = C^{-T} e_i
                fw = fw.add_scaled(cinv.get(i, k), &simple[k]);
            }
            fund_coweights.push(cw);
            fund_weights.push(fw);
        }
        let center = rational_kernel(&simple_co, dim);

        let vertices = match vertices {
            Some(v) => v,
            None => (0..rank)
                .map(|i| fund_coweights[i].scale(q(root_coeffs[highest][i]).recip()))
                .collect(),
        };
        let mut all_vertices = vec![RationalVector::zeros(dim)];
        all_vertices.extend(vertices);
        let barycenter = all_vertices
            .iter()
            .fold(RationalVector::zeros(dim), |acc, v| &acc + v)
            .scale(qf(1, all_vertices.len() as i64));

        let fingerprint = fingerprint(family, size, &simple, &simple_co, &lattice_basis);
        let datum = RootDatum {
            family,
            size,
            ambient_dim: dim,
            rank,
            roots,
            coroots,
            root_index,
            num_pos,
            root_coeffs,
            coroot_coeffs,
            highest,
            cartan,
            lattice,
            simple_coroot_coords,
            root_pair_lat,
            coroot_lat,
            fund_coweights,
            fund_weights,
            center,
            vertices: all_vertices,
            barycenter,
            fingerprint,
            weyl: OnceLock::new(),
            conv_orbits: OnceLock::new(),
        };
        datum.check_vertices()?;
        Ok(datum)
    }

    fn check_vertices(&self) -> Result<()> {
        for v in &self.vertices {
            for i in 0..self.rank {
                if self.roots[i].dot(v).is_negative() {
                    return Err(Error::Config(format!(
                        "vertex {v} outside the closed chamber"
                    )));
                }
            }
            if self.highest_root().dot(v) > Q::one() {
                return Err(Error::Config(format!(
                    "vertex {v} outside the closed alcove"
                )));
            }
            if self.lattice.solve(v).is_none() {
                return Err(Error::Config(format!(
                    "vertex {v} outside the ambient lattice span"
                )));
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::F4 | Family::G2 => self.family.name().to_string(),
            f => format!("{}({})", f, self.size),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.num_pos
    }

    /// All roots; the first `num_positive_roots()` are positive.
    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    pub fn root(&self, b: usize) -> &RationalVector {
        &self.roots[b]
    }

    pub fn coroot(&self, b: usize) -> &RationalVector {
        &self.coroots[b]
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.roots[..self.num_pos]
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.roots[..self.rank]
    }

    pub fn simple_coroots(&self) -> &[RationalVector] {
        &self.coroots[..self.rank]
    }

    pub fn root_index(&self, v: &RationalVector) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// Index of `-root b`.
    pub fn negate_index(&self, b: usize) -> usize {
        if b < self.num_pos {
            b + self.num_pos
        } else {
            b - self.num_pos
        }
    }

    pub fn is_positive_index(&self, b: usize) -> bool {
        b < self.num_pos
    }

    pub fn highest_index(&self) -> usize {
        self.highest
    }

    pub fn highest_root(&self) -> &RationalVector {
        &self.roots[self.highest]
    }

    /// Coefficients `c_i` with `α̃ = Σ c_i α_i`.
    pub fn highest_coeffs(&self) -> &[i64] {
        &self.root_coeffs[self.highest]
    }

    /// Coefficients of positive root `b` in the simple roots.
    pub fn root_coeffs(&self, b: usize) -> &[i64] {
        &self.root_coeffs[b]
    }

    /// Coefficients of the coroot of positive root `b` in the simple coroots.
    pub fn coroot_coeffs(&self, b: usize) -> &[i64] {
        &self.coroot_coeffs[b]
    }

    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn lattice_basis(&self) -> &[RationalVector] {
        self.lattice.basis()
    }

    /// Base-alcove vertex representatives; index 0 is the origin.
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn barycenter(&self) -> &RationalVector {
        &self.barycenter
    }

    pub fn fundamental_coweights(&self) -> &[RationalVector] {
        &self.fund_coweights
    }

    pub fn fundamental_weights(&self) -> &[RationalVector] {
        &self.fund_weights
    }

    /// Basis of the orthogonal complement of the coroot span.
    pub fn center_basis(&self) -> &[RationalVector] {
        &self.center
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Short numeric id used to tag elements.
    pub fn id(&self) -> u64 {
        u64::from_str_radix(&self.fingerprint[..16], 16).unwrap_or(0)
    }

    /// `|W_0| = ℓ! · Π c_i · det(Cartan)`.
    pub fn weyl_order(&self) -> u128 {
        let mut f: u128 = (1..=self.rank as u128).product();
        for &c in self.highest_coeffs() {
            f *= c as u128;
        }
        f * integer_det(&self.cartan) as u128
    }

    pub fn weyl(&self) -> Result<&WeylGroup> {
        Ok(&self.weyl_data()?.group)
    }

    fn weyl_data(&self) -> Result<&WeylData> {
        if let Some(w) = self.weyl.get() {
            return Ok(w);
        }
        let order = self.weyl_order();
        if order > WEYL_ORDER_GUARD {
            return Err(Error::Guard(format!(
                "finite Weyl group of {} has {order} elements (limit {WEYL_ORDER_GUARD})",
                self.label()
            )));
        }
        Ok(self.weyl.get_or_init(|| self.build_weyl()))
    }

    fn build_weyl(&self) -> WeylData {
        let perm_of = |b: usize| -> Vec<u16> {
            (0..self.roots.len())
                .map(|c| {
                    let v = self.reflect(b, &self.roots[c]);
                    self.root_index[&v] as u16
                })
                .collect()
        };
        let gens: Vec<Vec<u16>> = (0..self.rank).map(perm_of).collect();
        let group = WeylGroup::generate(&gens, self.num_pos);
        let reflections: Vec<FiniteWeylElement> = (0..self.num_pos)
            .map(|b| {
                let p = perm_of(b);
                let key: Vec<u16> = (0..self.rank).map(|i| p[i]).collect();
                group
                    .from_root_images(&key)
                    .expect("reflection lies in W_0")
            })
            .collect();
        let sh: FiniteWeylElement = reflections[self.highest];
        let left_highest = group.elements().map(|w| group.compose(sh, w)).collect();
        let right_highest = group.elements().map(|w| group.compose(w, sh)).collect();
        WeylData {
            group,
            reflections,
            left_highest,
            right_highest,
        }
    }

    /// The finite reflection `s_β` for a root index.
    pub fn reflection_element(&self, b: usize) -> Result<FiniteWeylElement> {
        let b = if b < self.num_pos {
            b
        } else {
            self.negate_index(b)
        };
        Ok(self.weyl_data()?.reflections[b])
    }

    /// `s_α̃ · w`
    pub fn left_highest(&self, w: FiniteWeylElement) -> FiniteWeylElement {
        self.weyl_data()
            .expect("finite Weyl group within guard")
            .left_highest[w.index()]
    }

    /// `w · s_α̃`
    pub fn right_highest(&self, w: FiniteWeylElement) -> FiniteWeylElement {
        self.weyl_data()
            .expect("finite Weyl group within guard")
            .right_highest[w.index()]
    }

    /// `s_β(v) = v − ⟨β, v⟩ β^∨`
    pub fn reflect(&self, b: usize, v: &RationalVector) -> RationalVector {
        v.add_scaled(-self.roots[b].dot(v), &self.coroots[b])
    }

    pub fn reflect_simple(&self, i: usize, v: &RationalVector) -> RationalVector {
        self.reflect(i - 1, v)
    }

    /// `w(v)` via a reduced word.
    pub fn weyl_apply(&self, w: FiniteWeylElement, v: &RationalVector) -> RationalVector {
        let group = self.weyl().expect("finite Weyl group within guard");
        let mut out = v.clone();
        for &i in group.word(w).iter().rev() {
            out = self.reflect(i as usize - 1, &out);
        }
        out
    }

    /// `w(c)` on lattice coordinates.
    pub fn weyl_apply_lat(&self, w: FiniteWeylElement, c: &[i64]) -> Vec<i64> {
        let group = self.weyl().expect("finite Weyl group within guard");
        let mut out = c.to_vec();
        for &i in group.word(w).iter().rev() {
            self.reflect_lat_in_place(i as usize - 1, &mut out);
        }
        out
    }

    /// Reflection in the positive root `b` on lattice coordinates.
    pub fn reflect_lat_in_place(&self, b: usize, c: &mut [i64]) {
        let p = self.pair_root_lat(b, c);
        if p != 0 {
            for (x, y) in c.iter_mut().zip(&self.coroot_lat[b]) {
                *x -= p * y;
            }
        }
    }

    /// ⟨root b, λ⟩ for λ in lattice coordinates; `b` may be negative.
    pub fn pair_root_lat(&self, b: usize, c: &[i64]) -> i64 {
        let (b, sign) = if b < self.num_pos {
            (b, 1)
        } else {
            (b - self.num_pos, -1)
        };
        sign * self.root_pair_lat[b]
            .iter()
            .zip(c)
            .map(|(a, x)| a * x)
            .sum::<i64>()
    }

    /// Lattice coordinates of the coroot of root `b`.
    pub fn coroot_lat(&self, b: usize) -> Vec<i64> {
        if b < self.num_pos {
            self.coroot_lat[b].clone()
        } else {
            self.coroot_lat[b - self.num_pos]
                .iter()
                .map(|x| -x)
                .collect()
        }
    }

    pub fn lattice_coords(&self, v: &RationalVector) -> Option<Vec<i64>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        self.lattice.solve_integral(v)
    }

    pub fn lattice_vector(&self, c: &[i64]) -> RationalVector {
        self.lattice.combine_int(c)
    }

    /// Rational coordinates in the lattice basis of a point of the span.
    pub fn lattice_coords_rational(&self, v: &RationalVector) -> Option<Vec<Q>> {
        self.lattice.solve(v)
    }

    pub fn in_lattice(&self, v: &RationalVector) -> bool {
        self.lattice_coords(v).is_some()
    }

    /// Coefficients of `v` in the simple coroots, if `v` lies in their span.
    pub fn coroot_coords(&self, v: &RationalVector) -> Option<Vec<Q>> {
        self.simple_coroot_coords.solve(v)
    }

    pub fn in_coroot_lattice(&self, v: &RationalVector) -> bool {
        self.simple_coroot_coords.solve_integral(v).is_some()
    }

    /// Whether a vector lies in the real span of the coroots.
    pub fn in_coroot_span(&self, v: &RationalVector) -> bool {
        self.coroot_coords(v).is_some()
    }

    pub fn is_dominant(&self, v: &RationalVector) -> bool {
        self.dominance_violation(v).is_none()
    }

    /// First simple root pairing negatively with `v`.
    pub fn dominance_violation(&self, v: &RationalVector) -> Option<(usize, Q)> {
        (0..self.rank)
            .map(|i| (i + 1, self.roots[i].dot(v)))
            .find(|(_, x)| x.is_negative())
    }

    pub fn require_dominant(&self, mu: &RationalVector) -> Result<()> {
        self.check_dim(mu)?;
        if let Some((i, x)) = self.dominance_violation(mu) {
            return Err(Error::NotDominant(format!(
                "⟨α_{i}, μ⟩ = {} < 0 for α_{i} = {} and μ = {mu}",
                fmt_q(&x),
                self.roots[i - 1]
            )));
        }
        Ok(())
    }

    pub fn check_dim(&self, v: &RationalVector) -> Result<()> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Cartan type such as `C3`, read off the Dynkin diagram.
    pub fn cartan_type(&self) -> String {
        cartan_type(&self.cartan, &self.roots[..self.rank])
    }

    /// W_0-orbits of the fundamental weights, deduplicated.
    pub(crate) fn weight_orbits(&self) -> Result<&Vec<Vec<RationalVector>>> {
        if let Some(o) = self.conv_orbits.get() {
            return Ok(o);
        }
        let group = self.weyl()?;
        let orbits = self
            .fund_weights
            .iter()
            .map(|fw| {
                let mut pts: Vec<RationalVector> =
                    group.elements().map(|w| self.weyl_apply(w, fw)).collect();
                pts.sort();
                pts.dedup();
                pts
            })
            .collect();
        Ok(self.conv_orbits.get_or_init(|| orbits))
    }
}

/// Checked pairing `⟨functional, point⟩`.
pub fn pairing(
    datum: &RootDatum,
    functional: &RationalVector,
    point: &RationalVector,
) -> Result<Q> {
    datum.check_dim(functional)?;
    datum.check_dim(point)?;
    Ok(functional.dot(point))
}

/// `s_{α,k}(v) = v − (⟨α, v⟩ − k) α^∨`
pub fn affine_reflect(
    datum: &RootDatum,
    alpha: &RationalVector,
    k: i64,
    v: &RationalVector,
) -> Result<RationalVector> {
    datum.check_dim(v)?;
    let b = datum
        .root_index(alpha)
        .ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
    Ok(v.add_scaled(-(alpha.dot(v) - q(k)), datum.coroot(b)))
}

pub fn enumerate_finite_weyl(datum: &RootDatum) -> Result<Vec<FiniteWeylElement>> {
    Ok(datum.weyl()?.elements().collect())
}

/// `(v⁺, w)` with `v⁺ = w(v)` dominant.
pub fn dominant_representative(
    datum: &RootDatum,
    v: &RationalVector,
) -> Result<(RationalVector, FiniteWeylElement)> {
    datum.check_dim(v)?;
    let group = datum.weyl()?;
    let mut cur = v.clone();
    let mut w = FiniteWeylElement::IDENTITY;
    while let Some((i, _)) = datum.dominance_violation(&cur) {
        cur = datum.reflect(i - 1, &cur);
        w = group.left_simple(i, w);
    }
    Ok((cur, w))
}

/// Membership in the convex hull of `W_0 μ`, as the intersection of the
/// obtuse cones `wμ + w(B_0)`.
pub fn conv_membership(datum: &RootDatum, mu: &RationalVector, v: &RationalVector) -> Result<bool> {
    datum.require_dominant(mu)?;
    datum.check_dim(v)?;
    let group = datum.weyl()?;
    for w in group.elements() {
        let pulled = datum.weyl_apply(group.inverse(w), v);
        match datum.coroot_coords(&(&pulled - mu)) {
            Some(c) if c.iter().all(|x| !x.is_positive()) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn connected(cartan: &[Vec<i64>]) -> bool {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && cartan[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn integer_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= f * t;
            }
        }
    }
    det.to_integer()
}

fn cartan_type(cartan: &[Vec<i64>], simple: &[RationalVector]) -> String {
    let n = cartan.len();
    if n == 1 {
        return "A1".into();
    }
    let bond = |i: usize, j: usize| cartan[i][j] * cartan[j][i];
    let degree = |i: usize| (0..n).filter(|&j| j != i && cartan[i][j] != 0).count();
    let mut multi = None;
    for i in 0..n {
        for j in i + 1..n {
            let b = bond(i, j);
            if b == 3 {
                return format!("G{n}");
            }
            if b == 2 {
                multi = Some((i, j));
            }
        }
    }
    match multi {
        None => {
            if (0..n).any(|i| degree(i) == 3) {
                let branch = (0..n).find(|&i| degree(i) == 3).unwrap();
                let leaves = (0..n)
                    .filter(|&j| j != branch && cartan[branch][j] != 0 && degree(j) == 1)
                    .count();
                if leaves >= 2 {
                    format!("D{n}")
                } else {
                    format!("E{n}")
                }
            } else {
                format!("A{n}")
            }
        }
        Some((i, j)) => {
            let end = if degree(j) == 1 {
                j
            } else if degree(i) == 1 {
                i
            } else {
                return format!("F{n}");
            };
            let other = if end == i { j } else { i };
            if simple[end].norm2() < simple[other].norm2() {
                format!("B{n}")
            } else {
                format!("C{n}")
            }
        }
    }
}

fn fingerprint(
    family: Family,
    size: usize,
    simple: &[RationalVector],
    co: &[RationalVector],
    basis: &[RationalVector],
) -> String {
    let mut h = Sha256::new();
    h.update(format!("{family}:{size}"));
    for (tag, list) in [("r", simple), ("c", co), ("x", basis)] {
        h.update(tag);
        for v in list {
            h.update(v.to_string());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_trivial() {
        let d = build_root_datum(Family::GL, 2).unwrap();
        assert_eq!(d.positive_roots(), &[RationalVector::from_ints(&[1, -1])]);
        assert_eq!(d.highest_root(), &RationalVector::from_ints(&[1, -1]));
    }

    #[test]
    fn gl_simple_roots() {
        let d = build_root_datum(Family::GL, 4).unwrap();
        assert_eq!(d.num_positive_roots(), 6);
        for (i, a) in d.simple_roots().iter().enumerate() {
            let mut v = vec![0; 4];
            v[i] = 1;
            v[i + 1] = -1;
            assert_eq!(*a, RationalVector::from_ints(&v));
        }
        for r in d.positive_roots() {
            let ints = r.to_ints().unwrap();
            assert_eq!(ints.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(ints.iter().filter(|&&x| x == -1).count(), 1);
            let i = ints.iter().position(|&x| x == 1).unwrap();
            let j = ints.iter().position(|&x| x == -1).unwrap();
            assert!(i < j);
        }
    }

    #[test]
    fn highest_root_of_c_is_dominance_maximal() {
        for n in 1..=4 {
            let d = build_root_datum(Family::C, n).unwrap();
            let mut expect = RationalVector::zeros(n);
            expect.0[0] = q(2);
            assert_eq!(d.highest_root(), &expect);
            // brute force: the only root r with α̃ − r a nonnegative combination for all r
            for r in d.positive_roots() {
                let diff = d.highest_root() - r;
                let c = Coordinates::new(d.simple_roots())
                    .unwrap()
                    .solve(&diff)
                    .unwrap();
                assert!(c.iter().all(|x| !x.is_negative()));
            }
        }
    }

    #[test]
    fn weyl_orders() {
        let cases = [
            (Family::GL, 3, 6u128),
            (Family::B, 2, 8),
            (Family::C, 3, 48),
            (Family::D, 4, 192),
            (Family::F4, 4, 1152),
            (Family::G2, 2, 12),
            (Family::GSp, 6, 48),
        ];
        for (f, n, order) in cases {
            let d = build_root_datum(f, n).unwrap();
            assert_eq!(d.weyl_order(), order, "{f}{n}");
            assert_eq!(d.weyl().unwrap().order() as u128, order, "{f}{n}");
        }
    }

    #[test]
    fn cartan_types() {
        let cases = [
            (Family::GL, 4, "A3"),
            (Family::B, 3, "B3"),
            (Family::C, 3, "C3"),
            (Family::B, 2, "B2"),
            (Family::C, 2, "C2"),
            (Family::D, 4, "D4"),
            (Family::F4, 4, "F4"),
            (Family::G2, 2, "G2"),
            (Family::GSp, 6, "C3"),
            (Family::GSp, 4, "C2"),
        ];
        for (f, n, t) in cases {
            assert_eq!(build_root_datum(f, n).unwrap().cartan_type(), t);
        }
    }

    #[test]
    fn unsupported_sizes_are_config_errors() {
        for (f, n) in [
            (Family::GL, 1),
            (Family::B, 9),
            (Family::D, 2),
            (Family::GSp, 5),
            (Family::F4, 3),
        ] {
            assert!(matches!(build_root_datum(f, n), Err(Error::Config(_))));
        }
    }

    #[test]
    fn large_group_hits_guard() {
        let d = build_root_datum(Family::B, 8).unwrap();
        assert!(matches!(d.weyl(), Err(Error::Guard(_))));
    }

    #[test]
    fn pairing_examples() {
        let d = build_root_datum(Family::GL, 2).unwrap();
        let v = pairing(
            &d,
            &RationalVector::from_ints(&[1, -1]),
            &RationalVector::from_ints(&[1, 0]),
        );
        assert_eq!(v.unwrap(), q(1));
        assert!(pairing(
            &d,
            &RationalVector::from_ints(&[1, -1, 0]),
            &RationalVector::from_ints(&[1, 0])
        )
        .is_err());
        let c = build_root_datum(Family::C, 3).unwrap();
        let half = RationalVector(vec![qf(1, 2), q(0), q(0)]);
        assert_eq!(
            pairing(&c, &RationalVector::from_ints(&[2, 0, 0]), &half).unwrap(),
            q(1)
        );
        for v in c.vertices() {
            let x = c.highest_root().dot(v);
            assert!(x >= q(0) && x <= q(1));
        }
    }

    #[test]
    fn affine_reflection_examples() {
        let d = build_root_datum(Family::GL, 2).unwrap();
        let a = RationalVector::from_ints(&[1, -1]);
        let v = RationalVector::from_ints(&[1, 0]);
        assert_eq!(
            affine_reflect(&d, &a, 0, &v).unwrap(),
            RationalVector::from_ints(&[0, 1])
        );
        let w = RationalVector(vec![qf(3, 2), qf(1, 2)]);
        assert_eq!(affine_reflect(&d, &a, 1, &w).unwrap(), w);
        let p = RationalVector(vec![qf(2, 7), qf(-5, 3)]);
        let twice = affine_reflect(&d, &a, 1, &affine_reflect(&d, &a, 0, &p).unwrap()).unwrap();
        assert_eq!(twice, &p + &RationalVector::from_ints(&[1, -1]));
        assert!(matches!(
            affine_reflect(&d, &RationalVector::from_ints(&[1, 1]), 0, &v),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn dominant_representative_sorts_in_type_a() {
        let d = build_root_datum(Family::GL, 3).unwrap();
        let (vp, w) = dominant_representative(&d, &RationalVector::from_ints(&[0, 1, 0])).unwrap();
        assert_eq!(vp, RationalVector::from_ints(&[1, 0, 0]));
        assert_eq!(d.weyl().unwrap().word(w), &[1]);
        let (vp, w) = dominant_representative(&d, &RationalVector::from_ints(&[3, 1, 1])).unwrap();
        assert_eq!(vp, RationalVector::from_ints(&[3, 1, 1]));
        assert_eq!(w, FiniteWeylElement::IDENTITY);
    }

    #[test]
    fn conv_membership_examples() {
        let d = build_root_datum(Family::GL, 3).unwrap();
        let mu = RationalVector::from_ints(&[1, 0, 0]);
        let third = RationalVector(vec![qf(1, 3); 3]);
        assert!(conv_membership(&d, &mu, &third).unwrap());
        assert!(!conv_membership(&d, &mu, &RationalVector::from_ints(&[1, 1, -1])).unwrap());
        for w in d.weyl().unwrap().elements() {
            assert!(conv_membership(&d, &mu, &d.weyl_apply(w, &mu)).unwrap());
        }
        assert!(matches!(
            conv_membership(&d, &RationalVector::from_ints(&[0, 1, 0]), &third),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn words_reproduce_action_and_length() {
        for (f, n) in [(Family::B, 3), (Family::G2, 2), (Family::F4, 4)] {
            let d = build_root_datum(f, n).unwrap();
            let g = d.weyl().unwrap();
            assert_eq!(g.length(g.longest()), d.num_positive_roots());
            for w in g.elements() {
                let neg = (0..d.num_positive_roots())
                    .filter(|&b| !d.is_positive_index(g.act_root(w, b)))
                    .count();
                assert_eq!(neg, g.length(w));
                assert_eq!(g.word(w).len(), g.length(w));
                for b in 0..d.roots().len() {
                    assert_eq!(d.weyl_apply(w, d.root(b)), *d.root(g.act_root(w, b)));
                }
                assert_eq!(g.from_word(g.word(w)), w);
            }
        }
    }
}
