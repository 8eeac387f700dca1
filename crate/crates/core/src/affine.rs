//! The extended affine Weyl group `X_* ⋊ W_0`.
//!
//! Simple affine reflections are indexed `0..=rank`: index 0 is
//! `s_0 = s_{α̃,1}` and `i ≥ 1` is the finite simple reflection `s_i`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::RationalVector;
use crate::rootsys::{FiniteWeylElement, RootDatum};

/// Default guard on the length of elements whose lower interval is
/// materialized.
pub const LOWER_INTERVAL_MAX_LENGTH: usize = 25;

/// `t_λ w`, acting by `v ↦ λ + w(v)`. The translation is stored in
/// coordinates of the datum's lattice basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtAffineElement {
    datum: u64,
    translation: Vec<i64>,
    finite: FiniteWeylElement,
}

impl ExtAffineElement {
    pub fn identity(d: &RootDatum) -> Self {
        ExtAffineElement {
            datum: d.id(),
            translation: vec![0; d.lattice_rank()],
            finite: FiniteWeylElement::IDENTITY,
        }
    }

    /// `t_λ w` from lattice coordinates.
    pub fn from_parts(d: &RootDatum, translation: Vec<i64>, w: FiniteWeylElement) -> Self {
        debug_assert_eq!(translation.len(), d.lattice_rank());
        ExtAffineElement {
            datum: d.id(),
            translation,
            finite: w,
        }
    }

    /// `t_λ w` with `λ` given in ambient coordinates.
    pub fn new(d: &RootDatum, lambda: &RationalVector, w: FiniteWeylElement) -> Result<Self> {
        d.check_dim(lambda)?;
        let c = d.lattice_coords(lambda).ok_or_else(|| {
            Error::Config(format!(
                "{lambda} is not in the cocharacter lattice of {}",
                d.label()
            ))
        })?;
        Ok(Self::from_parts(d, c, w))
    }

    pub fn translation(d: &RootDatum, lambda: &RationalVector) -> Result<Self> {
        Self::new(d, lambda, FiniteWeylElement::IDENTITY)
    }

    pub fn finite(d: &RootDatum, w: FiniteWeylElement) -> Self {
        Self::from_parts(d, vec![0; d.lattice_rank()], w)
    }

    /// Simple affine reflection `s_i`, `i ∈ 0..=rank`.
    pub fn simple_reflection(d: &RootDatum, i: usize) -> Self {
        left_mul_simple(d, i, &Self::identity(d))
    }

    /// Product `s_{i_1} ⋯ s_{i_k}`.
    pub fn from_word(d: &RootDatum, word: &[u8]) -> Self {
        let mut x = Self::identity(d);
        for &i in word.iter().rev() {
            x = left_mul_simple(d, i as usize, &x);
        }
        x
    }

    pub fn datum_id(&self) -> u64 {
        self.datum
    }

    /// Translation part in lattice coordinates.
    pub fn lattice_translation(&self) -> &[i64] {
        &self.translation
    }

    /// Translation part `λ = x(0)` in ambient coordinates.
    pub fn translation_vector(&self, d: &RootDatum) -> RationalVector {
        d.lattice_vector(&self.translation)
    }

    pub fn finite_part(&self) -> FiniteWeylElement {
        self.finite
    }

    pub fn is_identity(&self) -> bool {
        self.finite == FiniteWeylElement::IDENTITY && self.translation.iter().all(|&c| c == 0)
    }
}

fn same_datum(x: &ExtAffineElement, y: &ExtAffineElement) -> Result<()> {
    if x.datum != y.datum {
        return Err(Error::DatumMismatch);
    }
    Ok(())
}

/// `(λ₁, w₁)(λ₂, w₂) = (λ₁ + w₁λ₂, w₁w₂)`
pub fn compose(
    d: &RootDatum,
    x: &ExtAffineElement,
    y: &ExtAffineElement,
) -> Result<ExtAffineElement> {
    same_datum(x, y)?;
    let g = d.weyl()?;
    let moved = d.weyl_apply_lat(x.finite, &y.translation);
    let translation = x
        .translation
        .iter()
        .zip(&moved)
        .map(|(a, b)| a + b)
        .collect();
    Ok(ExtAffineElement {
        datum: x.datum,
        translation,
        finite: g.compose(x.finite, y.finite),
    })
}

/// `(λ, w)^{-1} = (−w^{-1}λ, w^{-1})`
pub fn inverse(d: &RootDatum, x: &ExtAffineElement) -> ExtAffineElement {
    let g = d.weyl().expect("finite Weyl group within guard");
    let wi = g.inverse(x.finite);
    let t = d.weyl_apply_lat(wi, &x.translation);
    ExtAffineElement {
        datum: x.datum,
        translation: t.into_iter().map(|c| -c).collect(),
        finite: wi,
    }
}

/// `x(v) = λ + w(v)`
pub fn act(d: &RootDatum, x: &ExtAffineElement, v: &RationalVector) -> RationalVector {
    &x.translation_vector(d) + &d.weyl_apply(x.finite, v)
}

/// Alcove coordinate `k_β(x A_0) = ⟨β, λ⟩ − [w^{-1}β < 0]` for any root index.
pub fn alcove_coordinate(d: &RootDatum, x: &ExtAffineElement, b: usize) -> i64 {
    let g = d.weyl().expect("finite Weyl group within guard");
    let pulled = g.act_root(g.inverse(x.finite), b);
    d.pair_root_lat(b, &x.translation) - i64::from(!d.is_positive_index(pulled))
}

/// Number of affine root hyperplanes separating `A_0` and `x(A_0)`.
pub fn length(d: &RootDatum, x: &ExtAffineElement) -> usize {
    (0..d.num_positive_roots())
        .map(|b| alcove_coordinate(d, x, b).unsigned_abs() as usize)
        .sum()
}

/// Whether `l(s_i x) < l(x)`.
pub fn is_left_descent(d: &RootDatum, i: usize, x: &ExtAffineElement) -> bool {
    if i == 0 {
        alcove_coordinate(d, x, d.highest_index()) >= 1
    } else {
        alcove_coordinate(d, x, i - 1) < 0
    }
}

/// Whether `l(x s_i) < l(x)`.
pub fn is_right_descent(d: &RootDatum, x: &ExtAffineElement, i: usize) -> bool {
    // the wall x(H_s) separates A_0 and x(A_0) iff s is a left descent of x^{-1}
    is_left_descent(d, i, &inverse(d, x))
}

pub fn left_descents(d: &RootDatum, x: &ExtAffineElement) -> Vec<usize> {
    (0..=d.rank())
        .filter(|&i| is_left_descent(d, i, x))
        .collect()
}

fn first_left_descent(d: &RootDatum, x: &ExtAffineElement) -> Option<usize> {
    (0..=d.rank()).find(|&i| is_left_descent(d, i, x))
}

/// `s_i · x`
pub fn left_mul_simple(d: &RootDatum, i: usize, x: &ExtAffineElement) -> ExtAffineElement {
    let mut t = x.translation.clone();
    let finite = if i == 0 {
        // s_0 (λ, w) = (λ − (⟨α̃, λ⟩ − 1) α̃^∨, s_α̃ w)
        let h = d.highest_index();
        let p = d.pair_root_lat(h, &t) - 1;
        if p != 0 {
            for (c, y) in t.iter_mut().zip(d.coroot_lat(h)) {
                *c -= p * y;
            }
        }
        d.left_highest(x.finite)
    } else {
        d.reflect_lat_in_place(i - 1, &mut t);
        d.weyl()
            .expect("finite Weyl group within guard")
            .left_simple(i, x.finite)
    };
    ExtAffineElement {
        datum: x.datum,
        translation: t,
        finite,
    }
}

/// `x · s_i`
pub fn right_mul_simple(d: &RootDatum, x: &ExtAffineElement, i: usize) -> ExtAffineElement {
    let g = d.weyl().expect("finite Weyl group within guard");
    if i == 0 {
        // (λ, w) s_0 = (λ + w(α̃^∨), w s_α̃)
        let img = g.act_root(x.finite, d.highest_index());
        let translation = x
            .translation
            .iter()
            .zip(d.coroot_lat(img))
            .map(|(a, b)| a + b)
            .collect();
        ExtAffineElement {
            datum: x.datum,
            translation,
            finite: d.right_highest(x.finite),
        }
    } else {
        ExtAffineElement {
            datum: x.datum,
            translation: x.translation.clone(),
            finite: g.right_simple(x.finite, i),
        }
    }
}

/// Whether `x ∈ W_aff`, i.e. `λ ∈ Q^∨`.
pub fn in_affine_weyl(d: &RootDatum, x: &ExtAffineElement) -> bool {
    d.in_coroot_lattice(&x.translation_vector(d))
}

/// Whether `x` and `y` lie in the same coset of `W_aff`.
pub fn same_coset(d: &RootDatum, x: &ExtAffineElement, y: &ExtAffineElement) -> bool {
    x.datum == y.datum
        && d.in_coroot_lattice(&(&x.translation_vector(d) - &y.translation_vector(d)))
}

/// Lexicographically least reduced word of the `W_aff`-part, and the
/// `Ω`-component `τ` with `x = s_{i_1} ⋯ s_{i_l} τ`.
pub fn word_and_omega(d: &RootDatum, x: &ExtAffineElement) -> (Vec<u8>, ExtAffineElement) {
    let mut cur = x.clone();
    let mut word = Vec::new();
    while let Some(s) = first_left_descent(d, &cur) {
        word.push(s as u8);
        cur = left_mul_simple(d, s, &cur);
    }
    (word, cur)
}

/// `x = waff · τ` with `τ ∈ Ω` and `waff ∈ W_aff`.
pub fn omega_decompose(
    d: &RootDatum,
    x: &ExtAffineElement,
) -> (ExtAffineElement, ExtAffineElement) {
    let (word, tau) = word_and_omega(d, x);
    (ExtAffineElement::from_word(d, &word), tau)
}

pub fn reduced_word(d: &RootDatum, x: &ExtAffineElement) -> Result<Vec<u8>> {
    let (word, tau) = word_and_omega(d, x);
    if !tau.is_identity() {
        return Err(Error::NotInAffine);
    }
    Ok(word)
}

/// Extended Bruhat order: false across `Ω`-cosets, otherwise the Coxeter
/// order by descent recursion on the larger element.
pub fn bruhat_leq(d: &RootDatum, x: &ExtAffineElement, y: &ExtAffineElement) -> bool {
    if !same_coset(d, x, y) {
        return false;
    }
    bruhat_leq_same_coset(d, x, y)
}

/// Bruhat comparison for elements already known to share a coset.
pub fn bruhat_leq_same_coset(d: &RootDatum, x: &ExtAffineElement, y: &ExtAffineElement) -> bool {
    let mut x = x.clone();
    let mut y = y.clone();
    let mut lx = length(d, &x);
    let mut ly = length(d, &y);
    loop {
        if lx > ly {
            return false;
        }
        if lx == ly {
            return x == y;
        }
        let s = first_left_descent(d, &y).expect("positive length has a descent");
        if is_left_descent(d, s, &x) {
            x = left_mul_simple(d, s, &x);
            lx -= 1;
        }
        y = left_mul_simple(d, s, &y);
        ly -= 1;
    }
}

/// `{x : x ≤ y}` by subword closure of the canonical reduced word.
pub fn lower_interval(d: &RootDatum, y: &ExtAffineElement) -> Result<Vec<ExtAffineElement>> {
    lower_interval_with_guard(d, y, LOWER_INTERVAL_MAX_LENGTH)
}

pub fn lower_interval_with_guard(
    d: &RootDatum,
    y: &ExtAffineElement,
    max_length: usize,
) -> Result<Vec<ExtAffineElement>> {
    let (word, tau) = word_and_omega(d, y);
    if word.len() > max_length {
        return Err(Error::Guard(format!(
            "lower interval of an element of length {} (limit {max_length})",
            word.len()
        )));
    }
    lower_interval_of_word(d, &word, &tau)
}

/// `{u τ : u a subword product of word}`.
pub fn lower_interval_of_word(
    d: &RootDatum,
    word: &[u8],
    tau: &ExtAffineElement,
) -> Result<Vec<ExtAffineElement>> {
    let mut set: HashSet<ExtAffineElement> = HashSet::new();
    set.insert(ExtAffineElement::identity(d));
    for &s in word {
        let extra: Vec<_> = set
            .iter()
            .map(|p| right_mul_simple(d, p, s as usize))
            .collect();
        set.extend(extra);
    }
    let mut out = set
        .into_iter()
        .map(|u| compose(d, &u, tau))
        .collect::<Result<Vec<_>>>()?;
    sort_elements(d, &mut out);
    Ok(out)
}

/// Canonical ordering: length, then ambient translation, then finite word.
pub fn sort_elements(d: &RootDatum, xs: &mut [ExtAffineElement]) {
    let g = d.weyl().expect("finite Weyl group within guard");
    xs.sort_by_cached_key(|x| {
        (
            length(d, x),
            x.translation_vector(d),
            g.word(x.finite).to_vec(),
        )
    });
}

/// `x` with all finite-part and translation information, for display.
pub fn describe(d: &RootDatum, x: &ExtAffineElement) -> String {
    let g = d.weyl().expect("finite Weyl group within guard");
    let word: Vec<String> = g.word(x.finite).iter().map(|i| i.to_string()).collect();
    format!("t{}·w[{}]", x.translation_vector(d), word.join(","))
}

/// Elements of `W_aff` of length at most `radius`, sorted.
pub fn affine_ball(d: &RootDatum, radius: usize) -> Vec<ExtAffineElement> {
    let mut all: HashSet<ExtAffineElement> = HashSet::new();
    let mut layer = vec![ExtAffineElement::identity(d)];
    all.insert(layer[0].clone());
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &layer {
            for i in 0..=d.rank() {
                if !is_left_descent(d, i, x) {
                    let y = left_mul_simple(d, i, x);
                    if all.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<_> = all.into_iter().collect();
    sort_elements(d, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qf, RationalVector};
    use crate::rootsys::{build_root_datum, Family};

    fn gl(n: usize) -> RootDatum {
        build_root_datum(Family::GL, n).unwrap()
    }

    #[test]
    fn translations_compose_additively() {
        let d = gl(3);
        let a = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[1, 0, -2])).unwrap();
        let b = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[0, 3, 1])).unwrap();
        let ab = compose(&d, &a, &b).unwrap();
        assert_eq!(
            ab.translation_vector(&d),
            RationalVector::from_ints(&[1, 3, -1])
        );
        let x = compose(&d, &ab, &ExtAffineElement::simple_reflection(&d, 0)).unwrap();
        assert!(compose(&d, &x, &inverse(&d, &x)).unwrap().is_identity());
    }

    #[test]
    fn reflection_pair_is_a_coroot_translation() {
        let d = gl(3);
        // s_{α,1} s_α for α = e1 − e3, the highest root: s_0 · s_α̃ = t_{α̃^∨}
        let sh = ExtAffineElement::finite(&d, d.reflection_element(d.highest_index()).unwrap());
        let x = compose(&d, &ExtAffineElement::simple_reflection(&d, 0), &sh).unwrap();
        assert_eq!(x.finite_part(), FiniteWeylElement::IDENTITY);
        assert_eq!(
            x.translation_vector(&d),
            RationalVector::from_ints(&[1, 0, -1])
        );
        for k in 0..10 {
            let p = RationalVector(vec![qf(k, 3), qf(1 - k, 7), qf(2 * k + 1, 5)]);
            assert_eq!(
                act(&d, &x, &p),
                &p + &RationalVector::from_ints(&[1, 0, -1])
            );
        }
    }

    #[test]
    fn lengths() {
        let d = gl(3);
        assert_eq!(length(&d, &ExtAffineElement::identity(&d)), 0);
        let t = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[1, 0, 0])).unwrap();
        assert_eq!(length(&d, &t), 2);
        let (_, tau) = omega_decompose(&d, &t);
        assert_eq!(length(&d, &tau), 0);
        assert!(!tau.is_identity());
    }

    #[test]
    fn gl2_omega() {
        let d = gl(2);
        let t = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[1, 0])).unwrap();
        let (waff, tau) = omega_decompose(&d, &t);
        assert_eq!(length(&d, &t), 1);
        assert_eq!(length(&d, &tau), 0);
        assert!(in_affine_weyl(&d, &waff));
        assert!(!in_affine_weyl(&d, &tau));
        assert_eq!(compose(&d, &waff, &tau).unwrap(), t);
        assert!(bruhat_leq(&d, &tau, &t));
        assert!(!bruhat_leq(&d, &ExtAffineElement::identity(&d), &t));
        assert!(matches!(reduced_word(&d, &t), Err(Error::NotInAffine)));
    }

    #[test]
    fn simple_words() {
        let d = build_root_datum(Family::C, 2).unwrap();
        assert!(reduced_word(&d, &ExtAffineElement::identity(&d))
            .unwrap()
            .is_empty());
        for i in 0..=2u8 {
            let s = ExtAffineElement::simple_reflection(&d, i as usize);
            assert_eq!(reduced_word(&d, &s).unwrap(), vec![i]);
            assert_eq!(length(&d, &s), 1);
        }
        let y = ExtAffineElement::from_word(&d, &[1, 2]);
        let iv = lower_interval(&d, &y).unwrap();
        assert_eq!(iv.len(), 4);
    }

    #[test]
    fn right_and_left_multiplication_agree_with_compose() {
        let d = build_root_datum(Family::G2, 2).unwrap();
        let x = ExtAffineElement::from_word(&d, &[0, 1, 2, 1, 0, 2]);
        for i in 0..=2 {
            let s = ExtAffineElement::simple_reflection(&d, i);
            assert_eq!(left_mul_simple(&d, i, &x), compose(&d, &s, &x).unwrap());
            assert_eq!(right_mul_simple(&d, &x, i), compose(&d, &x, &s).unwrap());
        }
    }
}
