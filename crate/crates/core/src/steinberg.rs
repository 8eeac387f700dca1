//! The flip automorphism of `GL(m)`, its fixed-point root datum, embeddings
//! of extended affine Weyl groups, and the chain `B_n ⊂ C_n ⊂ A_{2n}`.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::affine::{self, ExtAffineElement};
use crate::alcoves::{self, Alcove, Wall};
use crate::error::{Error, Result};
use crate::musets::{self, PermTest, BOX_GUARD};
use crate::rational::{ceil_q, floor_q, q, qf, QMatrix, RationalVector};
use crate::rootsys::lattice::integer_kernel;
use crate::rootsys::{
    build_root_datum, dominant_representative, Family, FiniteWeylElement, RootDatum,
};

/// An injective linear map of ambient spaces that carries the extended
/// affine Weyl group of `source` into that of `target`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: u64,
    target: u64,
    map: QMatrix,
    /// target ambient → source lattice coordinates, inverting `map` on its image
    pull: QMatrix,
    finite: Vec<FiniteWeylElement>,
    finite_back: HashMap<FiniteWeylElement, FiniteWeylElement>,
}

fn left_inverse(m: &QMatrix) -> Result<QMatrix> {
    let t = m.transpose();
    let gram = t.mul(m);
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::Config("linear map is not injective".into()))?;
    Ok(inv.mul(&t))
}

impl Embedding {
    /// Checks that `map` sends the lattice into the lattice and intertwines
    /// the finite Weyl groups on the lattice span, and tabulates the finite
    /// parts.
    pub fn new(source: &RootDatum, target: &RootDatum, map: QMatrix) -> Result<Embedding> {
        if map.cols != source.ambient_dim() || map.rows != target.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                got: map.rows,
            });
        }
        for b in source.lattice_basis() {
            if !target.in_lattice(&map.mul_vec(b)) {
                return Err(Error::Config(format!(
                    "image of {b} is not in the cocharacter lattice of {}",
                    target.label()
                )));
            }
        }
        let basis = QMatrix::from_columns(source.lattice_basis());
        let pull = left_inverse(&basis)?.mul(&left_inverse(&map)?);

        let gs = source.weyl()?;
        let gt = target.weyl()?;
        let regular = |p: &RationalVector| {
            let ip = map.mul_vec(p);
            target
                .positive_roots()
                .iter()
                .all(|a| !a.dot(&ip).is_zero())
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x1f2e3d);
        let p = (0..64)
            .map(|_| {
                source
                    .lattice_basis()
                    .iter()
                    .fold(RationalVector::zeros(source.ambient_dim()), |acc, b| {
                        acc.add_scaled(q(rng.gen_range(-997..=997)), b)
                    })
            })
            .find(|p| regular(p))
            .ok_or_else(|| Error::Config("no regular point in the image".into()))?;
        let ip = map.mul_vec(&p);
        let (dom, u1) = dominant_representative(target, &ip)?;

        let mut finite = vec![FiniteWeylElement::IDENTITY; gs.order()];
        let mut finite_back = HashMap::new();
        for w in gs.elements() {
            let image = map.mul_vec(&source.weyl_apply(w, &p));
            let (dom2, u2) = dominant_representative(target, &image)?;
            if dom2 != dom {
                return Err(Error::Config(
                    "map does not intertwine the Weyl groups".into(),
                ));
            }
            let wt = gt.compose(gt.inverse(u2), u1);
            for b in source.lattice_basis() {
                if target.weyl_apply(wt, &map.mul_vec(b)) != map.mul_vec(&source.weyl_apply(w, b)) {
                    return Err(Error::Config(
                        "map does not intertwine the Weyl groups".into(),
                    ));
                }
            }
            finite[w.index()] = wt;
            finite_back.insert(wt, w);
        }
        Ok(Embedding {
            source: source.id(),
            target: target.id(),
            map,
            pull,
            finite,
            finite_back,
        })
    }

    pub fn map(&self) -> &QMatrix {
        &self.map
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        self.map.mul_vec(v)
    }

    /// The target Weyl element acting like `w` on the image.
    pub fn finite_image(&self, w: FiniteWeylElement) -> FiniteWeylElement {
        self.finite[w.index()]
    }

    fn check(&self, source: &RootDatum, target: &RootDatum) -> Result<()> {
        if source.id() != self.source || target.id() != self.target {
            return Err(Error::DatumMismatch);
        }
        Ok(())
    }

    /// The image of `t_λ w`: translation by the image of `λ`, followed by the
    /// target Weyl element agreeing with `w` on the image.
    pub fn embed(
        &self,
        source: &RootDatum,
        target: &RootDatum,
        x: &ExtAffineElement,
    ) -> Result<ExtAffineElement> {
        self.check(source, target)?;
        if x.datum_id() != self.source {
            return Err(Error::DatumMismatch);
        }
        let lam = self.apply(&x.translation_vector(source));
        let c = target
            .lattice_coords(&lam)
            .ok_or_else(|| Error::Internal(format!("image translation {lam} left the lattice")))?;
        Ok(ExtAffineElement::from_parts(
            target,
            c,
            self.finite[x.finite_part().index()],
        ))
    }

    /// The preimage of a target element, if it lies in the image.
    pub fn preimage(
        &self,
        source: &RootDatum,
        target: &RootDatum,
        y: &ExtAffineElement,
    ) -> Result<Option<ExtAffineElement>> {
        self.check(source, target)?;
        if y.datum_id() != self.target {
            return Err(Error::DatumMismatch);
        }
        let Some(&w) = self.finite_back.get(&y.finite_part()) else {
            return Ok(None);
        };
        let lam = y.translation_vector(target);
        let c = self.pull.mul_vec(&lam);
        let Some(c) = c.to_ints() else {
            return Ok(None);
        };
        let x = ExtAffineElement::from_parts(source, c, w);
        Ok(if self.embed(source, target, &x)? == *y {
            Some(x)
        } else {
            None
        })
    }

    /// Source lattice coordinates, extended linearly to the target ambient space.
    fn coordinate_functionals(&self) -> &QMatrix {
        &self.pull
    }
}

/// `{x ∈ W̃_source : ι(x) ∈ Perm_target(μ)}`, sorted.
pub fn pullback_perm(
    emb: &Embedding,
    source: &RootDatum,
    target: &RootDatum,
    mu: &RationalVector,
) -> Result<Vec<ExtAffineElement>> {
    emb.check(source, target)?;
    let test = PermTest::new(target, mu)?;
    let gt = target.weyl()?;
    let orbit: HashSet<RationalVector> = gt.elements().map(|w| target.weyl_apply(w, mu)).collect();
    let f = emb.coordinate_functionals();
    let mut bounds = Vec::with_capacity(f.rows);
    let mut volume: u128 = 1;
    for j in 0..f.rows {
        let row = f.row(j);
        let vals: Vec<_> = orbit.iter().map(|v| row.dot(v)).collect();
        let lo = ceil_q(vals.iter().min().expect("nonempty orbit"));
        let hi = floor_q(vals.iter().max().expect("nonempty orbit"));
        if lo > hi {
            return Ok(Vec::new());
        }
        volume = volume.saturating_mul((hi - lo + 1) as u128);
        bounds.push((lo, hi));
    }
    let gs = source.weyl()?;
    if volume.saturating_mul(gs.order() as u128) > BOX_GUARD {
        return Err(Error::Guard(format!(
            "{} candidates to test (limit {BOX_GUARD})",
            volume.saturating_mul(gs.order() as u128)
        )));
    }
    let ws: Vec<FiniteWeylElement> = gs.elements().collect();
    let found: Vec<Vec<ExtAffineElement>> = ws
        .par_iter()
        .map(|&w| -> Result<Vec<ExtAffineElement>> {
            let mut out = Vec::new();
            let mut c: Vec<i64> = bounds.iter().map(|b| b.0).collect();
            loop {
                let x = ExtAffineElement::from_parts(source, c.clone(), w);
                if test.contains(&emb.embed(source, target, &x)?) {
                    out.push(x);
                }
                // odometer
                let mut j = 0;
                loop {
                    if j == c.len() {
                        return Ok(out);
                    }
                    if c[j] < bounds[j].1 {
                        c[j] += 1;
                        break;
                    }
                    c[j] = bounds[j].0;
                    j += 1;
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<_> = found.into_iter().flatten().collect();
    affine::sort_elements(source, &mut out);
    Ok(out)
}

/// `(x ≤ y in the source, ι(x) ≤ ι(y) in the target)`.
pub fn check_bruhat_inheritance(
    emb: &Embedding,
    source: &RootDatum,
    target: &RootDatum,
    x: &ExtAffineElement,
    y: &ExtAffineElement,
) -> Result<(bool, bool)> {
    let a = affine::bruhat_leq(source, x, y);
    let b = affine::bruhat_leq(
        target,
        &emb.embed(source, target, x)?,
        &emb.embed(source, target, y)?,
    );
    Ok((a, b))
}

/// How the average `Θ̄(α)` of a host root sits in the fixed root system.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Restriction {
    /// `Θ̄(α)` is the fixed root with this index
    Root(usize),
    /// `Θ̄(α)` is half the fixed root with this index
    HalfRoot(usize),
}

/// The flip `x ↦ −rev(x)` of a `GL(m)` datum with its fixed-point datum.
pub struct ThetaAutomorphism {
    host: RootDatum,
    action: QMatrix,
    fixed: RootDatum,
    fixed_space: Vec<RationalVector>,
    embedding: Embedding,
}

impl std::fmt::Debug for ThetaAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ThetaAutomorphism({} ⊃ {})",
            self.host.label(),
            self.fixed.label()
        )
    }
}

fn flip_matrix(m: usize) -> QMatrix {
    let mut a = QMatrix::zeros(m, m);
    for i in 0..m {
        a.set(i, m - 1 - i, -q(1));
    }
    a
}

/// Builds the flip on a type-A host and derives the fixed datum: type `C_n`
/// on `GL(2n)` (the `GSp(2n)` datum) and on `GL(2n+1)`.
pub fn build_theta(host: RootDatum) -> Result<ThetaAutomorphism> {
    if !host.family().is_type_a() {
        return Err(Error::Config(format!(
            "the flip needs a GL or A host, got {}",
            host.label()
        )));
    }
    let m = host.ambient_dim();
    let rank = host.rank();
    let action = flip_matrix(m);
    let theta = |v: &RationalVector| action.mul_vec(v);

    let mut perm = Vec::with_capacity(rank);
    for a in host.simple_roots() {
        match host.root_index(&theta(a)) {
            Some(j) if j < rank => perm.push(j),
            _ => {
                return Err(Error::Config(
                    "the flip does not permute the simple roots".into(),
                ))
            }
        }
    }
    if theta(host.highest_root()) != *host.highest_root() {
        return Err(Error::Internal("the flip moves the highest root".into()));
    }
    for b in host.lattice_basis() {
        if !host.in_lattice(&theta(b)) {
            return Err(Error::Config(
                "the flip does not preserve the lattice".into(),
            ));
        }
    }

    let average = |v: &RationalVector| (v + &theta(v)).scale(qf(1, 2));
    let averages: HashSet<RationalVector> = host.roots().iter().map(average).collect();
    let fixed_roots: HashSet<RationalVector> = averages
        .iter()
        .filter(|v| !averages.contains(&v.scale(q(2))))
        .cloned()
        .collect();

    // one simple root per orbit of the flip on the simple roots: the average
    // of the highest root supported on the orbit
    let mut simple = Vec::new();
    for i in 0..rank {
        let orbit = [i, perm[i]];
        if perm[i] < i {
            continue;
        }
        let top = (0..host.num_positive_roots())
            .filter(|&b| {
                host.root_coeffs(b)
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || orbit.contains(&j))
            })
            .max_by_key(|&b| {
                (
                    host.root_coeffs(b).iter().sum::<i64>(),
                    std::cmp::Reverse(b),
                )
            })
            .expect("simple roots are supported on their orbit");
        let a = average(host.root(top));
        if !fixed_roots.contains(&a) {
            return Err(Error::Internal(format!(
                "orbit average {a} is not a fixed root"
            )));
        }
        simple.push(a);
    }
    let co: Vec<RationalVector> = simple.iter().map(|a| a.scale(q(2) / a.norm2())).collect();

    // X_*^[Θ] = {x : x − Θx central}, i.e. the kernel of x ↦ (⟨α_i, x − Θx⟩)_i
    let basis = host.lattice_basis();
    let rows: Vec<Vec<i64>> = host
        .simple_roots()
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let v = a.dot(&(b - &theta(b)));
                    if v.is_integer() {
                        Ok(v.to_integer())
                    } else {
                        Err(Error::Internal(
                            "non-integral pairing on the lattice".into(),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let fixed_space: Vec<RationalVector> = integer_kernel(&rows, basis.len())
        .iter()
        .map(|c| host.lattice_vector(c))
        .collect();

    let hv = host.vertices();
    let verts = (1..=m / 2)
        .map(|i| (&hv[i] + &hv[m - i]).scale(qf(1, 2)))
        .collect();
    let family = if m.is_multiple_of(2) {
        Family::GSp
    } else {
        Family::FoldedA
    };
    let fixed = RootDatum::from_parts(family, m, simple, co, fixed_space.clone(), Some(verts))?;

    let built: HashSet<RationalVector> = fixed.roots().iter().cloned().collect();
    if built != fixed_roots {
        return Err(Error::Internal(
            "fixed roots do not form the averaged system".into(),
        ));
    }
    let n = m / 2;
    let expected = if n == 1 {
        "A1".to_string()
    } else {
        format!("C{n}")
    };
    if fixed.cartan_type() != expected {
        return Err(Error::Internal(format!(
            "fixed datum has type {}, expected {expected}",
            fixed.cartan_type()
        )));
    }
    if m.is_multiple_of(2) {
        same_gsp_data(&fixed, &build_root_datum(Family::GSp, m)?)?;
    }
    let embedding = Embedding::new(&fixed, &host, QMatrix::identity(m))?;
    Ok(ThetaAutomorphism {
        host,
        action,
        fixed,
        fixed_space,
        embedding,
    })
}

fn same_gsp_data(a: &RootDatum, b: &RootDatum) -> Result<()> {
    let roots = |d: &RootDatum| d.roots().iter().cloned().collect::<HashSet<_>>();
    let verts = |d: &RootDatum| d.vertices().iter().cloned().collect::<HashSet<_>>();
    let same = roots(a) == roots(b)
        && a.simple_roots() == b.simple_roots()
        && verts(a) == verts(b)
        && a.lattice_rank() == b.lattice_rank()
        && a.lattice_basis().iter().all(|v| b.in_lattice(v))
        && b.lattice_basis().iter().all(|v| a.in_lattice(v));
    if same {
        Ok(())
    } else {
        Err(Error::Internal(
            "fixed datum differs from the direct GSp datum".into(),
        ))
    }
}

impl ThetaAutomorphism {
    pub fn host(&self) -> &RootDatum {
        &self.host
    }

    pub fn fixed(&self) -> &RootDatum {
        &self.fixed
    }

    pub fn action(&self) -> &QMatrix {
        &self.action
    }

    /// A Z-basis of `X_*^[Θ]`; its real span is `V^[Θ]`.
    pub fn fixed_space_basis(&self) -> &[RationalVector] {
        &self.fixed_space
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        self.action.mul_vec(v)
    }

    /// Index of `Θα` for a host root index.
    pub fn root_image(&self, b: usize) -> usize {
        self.host
            .root_index(&self.apply(self.host.root(b)))
            .expect("the flip permutes the roots")
    }

    /// `Θ̄(α) = (α + Θα)/2` and whether it is a fixed root or half of one.
    pub fn bar_theta(&self, b: usize) -> Result<(RationalVector, Restriction)> {
        let a = self.host.root(b);
        let v = (a + &self.apply(a)).scale(qf(1, 2));
        if let Some(r) = self.fixed.root_index(&v) {
            return Ok((v, Restriction::Root(r)));
        }
        if let Some(r) = self.fixed.root_index(&v.scale(q(2))) {
            return Ok((v, Restriction::HalfRoot(r)));
        }
        Err(Error::Internal(format!(
            "{v} is neither a fixed root nor half of one"
        )))
    }

    /// `H_{α,k} ∩ V^[Θ]` as a fixed wall `H_{α',k'}`.
    pub fn restricted_wall(&self, b: usize, k: i64) -> Result<Wall> {
        Ok(match self.bar_theta(b)?.1 {
            Restriction::Root(r) => Wall::new(&self.fixed, r, k),
            Restriction::HalfRoot(r) => Wall::new(&self.fixed, r, 2 * k),
        })
    }

    /// `v ∈ V^[Θ]`, i.e. `v − Θv` is central.
    pub fn in_fixed_space(&self, v: &RationalVector) -> bool {
        let d = v - &self.apply(v);
        self.host.simple_roots().iter().all(|a| a.dot(&d).is_zero())
    }

    pub fn embed_element(&self, x: &ExtAffineElement) -> Result<ExtAffineElement> {
        self.embedding.embed(&self.fixed, &self.host, x)
    }

    pub fn restrict_element(&self, y: &ExtAffineElement) -> Result<Option<ExtAffineElement>> {
        self.embedding.preimage(&self.fixed, &self.host, y)
    }

    /// Images under `y` of `0` and the unit vectors, the data of an affine map.
    fn probe(&self, y: &ExtAffineElement, conj: bool) -> Vec<RationalVector> {
        let m = self.host.ambient_dim();
        std::iter::once(RationalVector::zeros(m))
            .chain((0..m).map(|i| RationalVector::unit(m, i)))
            .map(|v| {
                if conj {
                    self.apply(&affine::act(&self.host, y, &self.apply(&v)))
                } else {
                    affine::act(&self.host, y, &v)
                }
            })
            .collect()
    }

    /// `ΘyΘ^{-1} = y`.
    pub fn commutes(&self, y: &ExtAffineElement) -> bool {
        self.probe(y, true) == self.probe(y, false)
    }

    /// `ΘyΘ^{-1}y^{-1}` is a central translation; this cuts out `W̃^[Θ]`.
    pub fn commutes_mod_center(&self, y: &ExtAffineElement) -> bool {
        let a = self.probe(y, true);
        let b = self.probe(y, false);
        let shift = &a[0] - &b[0];
        a.iter().zip(&b).all(|(u, v)| (u - v) == shift)
            && self
                .host
                .simple_roots()
                .iter()
                .all(|r| r.dot(&shift).is_zero())
    }

    /// `A ∩ V^[Θ]` as a fixed alcove; empty unless `k_α(A) = k_{Θα}(A)` for
    /// every root.
    pub fn restrict_alcove(&self, a: &Alcove) -> Result<Option<Alcove>> {
        let h = &self.host;
        for b in 0..h.num_positive_roots() {
            if a.coord(h, b) != a.coord(h, self.root_image(b)) {
                return Ok(None);
            }
        }
        // A is Θ-stable, so it contains the Θ-average of any interior point
        let inner = affine::act(h, &alcoves::alcove_to_element(h, a), h.barycenter());
        let p = (&inner + &self.apply(&inner)).scale(qf(1, 2));
        let coords = (0..self.fixed.num_positive_roots())
            .map(|r| {
                let v = self.fixed.root(r).dot(&p);
                if v.is_integer() {
                    Err(Error::Internal(format!(
                        "restricted point {p} lies on a fixed wall"
                    )))
                } else {
                    Ok(floor_q(&v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Alcove::from_coords(&self.fixed, coords).map(Some)
    }

    /// `Adm^Θ(μ)` computed as the pullback of the host `Perm(μ)`.
    pub fn adm_theta_via_perm(&self, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
        self.fixed.require_dominant(mu)?;
        let (host_mu, _) = dominant_representative(&self.host, &self.embedding.apply(mu))?;
        pullback_perm(&self.embedding, &self.fixed, &self.host, &host_mu)
    }
}

/// `W̃(B_n) → W_aff(C_n) → W̃^[Θ] ⊂ W̃(GL(2n+1))`, with `B_n` and `C_n` in
/// their standard coordinates.
pub struct OddOrthogonalChain {
    b: RootDatum,
    c: RootDatum,
    theta: ThetaAutomorphism,
    b_to_c: Embedding,
    c_to_fixed: Embedding,
    b_to_host: Embedding,
}

/// `x ↦ (x, 0, −rev x)` from `R^n` to `R^{2n+1}`.
fn odd_fold_matrix(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(2 * n + 1, n);
    for i in 0..n {
        m.set(i, i, q(1));
        m.set(2 * n - i, i, -q(1));
    }
    m
}

pub fn odd_orthogonal_chain(n: usize) -> Result<OddOrthogonalChain> {
    if n < 2 {
        return Err(Error::Config("the B_n chain needs n ≥ 2".into()));
    }
    let b = build_root_datum(Family::B, n)?;
    let c = build_root_datum(Family::C, n)?;
    let theta = build_theta(build_root_datum(Family::GL, 2 * n + 1)?)?;
    let b_to_c = Embedding::new(&b, &c, QMatrix::identity(n))?;
    let c_to_fixed = Embedding::new(&c, theta.fixed(), odd_fold_matrix(n))?;
    let b_to_host = Embedding::new(&b, theta.host(), odd_fold_matrix(n))?;
    Ok(OddOrthogonalChain {
        b,
        c,
        theta,
        b_to_c,
        c_to_fixed,
        b_to_host,
    })
}

impl OddOrthogonalChain {
    pub fn b(&self) -> &RootDatum {
        &self.b
    }

    pub fn c(&self) -> &RootDatum {
        &self.c
    }

    pub fn theta(&self) -> &ThetaAutomorphism {
        &self.theta
    }

    pub fn b_to_c(&self) -> &Embedding {
        &self.b_to_c
    }

    pub fn c_to_fixed(&self) -> &Embedding {
        &self.c_to_fixed
    }

    pub fn b_to_host(&self) -> &Embedding {
        &self.b_to_host
    }

    /// The host cocharacter corresponding to `μ ∈ R^n`, made dominant.
    pub fn host_mu(&self, mu: &RationalVector) -> Result<RationalVector> {
        self.b.check_dim(mu)?;
        Ok(dominant_representative(self.theta.host(), &self.b_to_host.apply(mu))?.0)
    }

    pub fn adm_b(&self, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
        musets::enumerate_adm(&self.b, mu)
    }

    pub fn adm_c(&self, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
        musets::enumerate_adm(&self.c, mu)
    }

    /// `Perm^{A_{2n}}(μ) ∩ W̃(B_n)`, as elements of `W̃(B_n)`.
    pub fn host_perm_on_b(&self, mu: &RationalVector) -> Result<Vec<ExtAffineElement>> {
        self.b.require_dominant(mu)?;
        let host_mu = self.host_mu(mu)?;
        pullback_perm(&self.b_to_host, &self.b, self.theta.host(), &host_mu)
    }

    /// Bruhat relations of a `B_n` pair before and after passing to `C_n`.
    pub fn inheritance(&self, x: &ExtAffineElement, y: &ExtAffineElement) -> Result<(bool, bool)> {
        check_bruhat_inheritance(&self.b_to_c, &self.b, &self.c, x, y)
    }

    /// Shortest pair in the nontrivial `Ω`-coset of `W̃(B_n)` whose Bruhat
    /// relation changes under the embedding, searched up to length `max_len`.
    pub fn coset_witness(
        &self,
        max_len: usize,
    ) -> Result<Option<(ExtAffineElement, ExtAffineElement)>> {
        let tau = self.nontrivial_omega()?;
        let ball: Vec<ExtAffineElement> = affine::affine_ball(&self.b, max_len)
            .iter()
            .map(|u| affine::compose(&self.b, u, &tau))
            .collect::<Result<_>>()?;
        for y in &ball {
            for x in &ball {
                let (fb, fc) = self.inheritance(x, y)?;
                if fb != fc {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }

    /// The length-zero element `τ ≠ 1` of `W̃(B_n)`.
    pub fn nontrivial_omega(&self) -> Result<ExtAffineElement> {
        let t =
            ExtAffineElement::translation(&self.b, &RationalVector::unit(self.b.ambient_dim(), 0))?;
        let (_, tau) = affine::omega_decompose(&self.b, &t);
        if tau.is_identity() {
            return Err(Error::Internal("t_{e_1} lies in W_aff(B_n)".into()));
        }
        Ok(tau)
    }
}
