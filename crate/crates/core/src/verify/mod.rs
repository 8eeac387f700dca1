//! Executable checks of the structural statements, each returning a
//! machine-readable verdict.
//!
//! Randomized checks draw from a ChaCha stream seeded by the statement id,
//! so every run is reproducible.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{self, ExtAffineElement};
use crate::error::{Error, Result};
use crate::rational::{q, RationalVector};
use crate::report::vector_json;
use crate::rootsys::{build_root_datum, Family, RootDatum};

mod cones;
mod sets;
mod theta;

pub const VERDICT_SCHEMA: &str = "verdict/1";

/// Statement ids with one-line descriptions.
pub const STATEMENTS: &[(&str, &str)] = &[
    (
        "thm3.2",
        "Adm(μ) ⊆ Perm(μ); equality for minuscule μ on GL and GSp",
    ),
    ("thm3.3", "Adm(μ) = Perm(μ) = Perm^st(μ) in type A"),
    ("prop4.3", "Perm^st(μ) ⊆ Adm(μ)"),
    (
        "lem4.4",
        "type A vertices: B(v,w) = W_aff(v) ∩ (v + w(B_0))",
    ),
    (
        "rem4.5",
        "special vertices give the Verma-type set; nonspecial witnesses recorded",
    ),
    (
        "lem5.3",
        "w-direction galleries are minimal, and direction is shared by all minimal galleries",
    ),
    ("prop5.5", "C_a(A,w) ⊆ C(A,w)"),
    ("cor5.6", "every alcove lies in some acute cone C(A,w)"),
    ("cor5.7", "t_{wμ}(A_0) ∈ C(A_0,w) for dominant μ"),
    (
        "lem5.8",
        "acute cone = intersection of w-positive half-spaces containing A",
    ),
    (
        "lem6.2",
        "left multiplication preserves Bruhat order when lengths add",
    ),
    ("lem6.3", "x ≤ y iff x^J ≤ y^J for every vertex parabolic J"),
    ("lem7.3", "w C̄_0 ∩ (wμ + w B_0) = w C̄_0 ∩ Conv(μ)"),
    (
        "prop7.2",
        "Adm(μ) ≠ Perm(μ) for sufficiently regular μ, rank ≥ 4 outside type A",
    ),
    (
        "lem7.5",
        "Bruhat order near t_λ copies the finite Bruhat order",
    ),
    (
        "prop8.1",
        "type A: w' ≤ w iff w'(λ) − w(λ) is a sum of positive coroots",
    ),
    ("lem8.2", "t_{w_0 μ} w(A_0) ∈ C(A_0, w_0)"),
    (
        "prop9.1",
        "the fixed affine Weyl group is the Θ-fixed part of W_aff",
    ),
    (
        "lem9.2",
        "averages of roots are fixed roots or half fixed roots",
    ),
    ("prop9.3", "alcoves restrict to alcoves or to nothing"),
    ("lem9.4", "restricted half-spaces are fixed half-spaces"),
    ("prop9.5", "acute cones restrict to acute cones"),
    ("prop9.6", "Bruhat order on the fixed group is inherited"),
    ("prop9.7", "Adm^Θ(μ) = Perm(μ) ∩ W̃^[Θ]"),
    ("thm10.1", "GSp: Adm(μ) = Perm(μ) for μ = (a^n, b^n)"),
    ("sec11", "B_n ⊂ C_n does not inherit the Bruhat order"),
    (
        "sec11-counts",
        "|Adm^B2(1,0)| = 13 and |Perm^A4 ∩ W̃(B2)| = |Adm^C2| = 19",
    ),
];

#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub family: Option<Family>,
    pub size: Option<usize>,
    /// ambient coordinates
    pub mu: Option<Vec<i64>>,
    /// random instances for randomized statements
    pub instances: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub schema: &'static str,
    pub version: &'static str,
    pub statement: String,
    pub datum: String,
    pub fingerprint: String,
    pub parameters: Value,
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

/// Tally of checked instances, keeping the first failure.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub checked: usize,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Label and fingerprint of the datum a verdict is about.
pub(crate) struct Subject {
    label: String,
    fingerprint: String,
}

impl Subject {
    pub fn of(d: &RootDatum) -> Subject {
        Subject {
            label: d.label(),
            fingerprint: d.fingerprint().to_string(),
        }
    }
}

pub(crate) struct Ctx<'a> {
    pub params: &'a VerifyParams,
    pub rng: ChaCha8Rng,
}

impl Ctx<'_> {
    pub fn datum(&self, family: Family, size: usize) -> Result<RootDatum> {
        build_root_datum(
            self.params.family.unwrap_or(family),
            self.params.size.unwrap_or(size),
        )
    }

    pub fn instances(&self, d: &RootDatum) -> usize {
        self.params
            .instances
            .unwrap_or(if d.rank() <= 2 { 200 } else { 50 })
    }

    /// The requested `μ`, or the default grid.
    pub fn mus(&self, d: &RootDatum) -> Result<Vec<RationalVector>> {
        match &self.params.mu {
            Some(m) => {
                let mu = RationalVector::from_ints(m);
                d.check_dim(&mu)?;
                d.require_dominant(&mu)?;
                if !d.in_lattice(&mu) {
                    return Err(Error::Config(format!(
                        "{mu} is not in the cocharacter lattice"
                    )));
                }
                Ok(vec![mu])
            }
            None => Ok(mu_grid(d, 2)),
        }
    }

    /// A random element of `W_aff` of length at most `max_len`.
    pub fn random_affine(&mut self, d: &RootDatum, max_len: usize) -> ExtAffineElement {
        let mut x = ExtAffineElement::identity(d);
        let n = self.rng.gen_range(0..=max_len);
        for _ in 0..n {
            let i = self.rng.gen_range(0..=d.rank());
            x = affine::left_mul_simple(d, i, &x);
        }
        x
    }

    pub fn random_word(&mut self, d: &RootDatum, max_len: usize) -> Vec<u8> {
        let n = self.rng.gen_range(0..=max_len);
        (0..n)
            .map(|_| self.rng.gen_range(0..=d.rank()) as u8)
            .collect()
    }

    /// A random point of the open base alcove.
    pub fn random_interior(&mut self, d: &RootDatum) -> RationalVector {
        let weights: Vec<i64> = d
            .vertices()
            .iter()
            .map(|_| self.rng.gen_range(1..=9))
            .collect();
        let total: i64 = weights.iter().sum();
        d.vertices()
            .iter()
            .zip(&weights)
            .fold(RationalVector::zeros(d.ambient_dim()), |acc, (v, &c)| {
                acc.add_scaled(q(c) / q(total), v)
            })
    }
}

/// Dominant lattice vectors with integer coordinates bounded by `bound`:
/// in `[0, bound]` when the lattice has central directions, `[−bound, bound]`
/// otherwise. Sorted.
pub fn mu_grid(d: &RootDatum, bound: i64) -> Vec<RationalVector> {
    let lo = if d.lattice_rank() > d.rank() {
        0
    } else {
        -bound
    };
    let dim = d.ambient_dim();
    let mut out = Vec::new();
    let mut c = vec![lo; dim];
    loop {
        let v = RationalVector::from_ints(&c);
        if d.is_dominant(&v) && d.in_lattice(&v) {
            out.push(v);
        }
        let mut j = 0;
        loop {
            if j == dim {
                out.sort();
                return out;
            }
            if c[j] < bound {
                c[j] += 1;
                break;
            }
            c[j] = lo;
            j += 1;
        }
    }
}

pub(crate) fn set_of(xs: &[ExtAffineElement]) -> HashSet<&ExtAffineElement> {
    xs.iter().collect()
}

/// First element of `a` missing from `b`.
pub(crate) fn first_missing<'a>(
    a: &'a [ExtAffineElement],
    b: &[ExtAffineElement],
) -> Option<&'a ExtAffineElement> {
    let bs = set_of(b);
    a.iter().find(|x| !bs.contains(x))
}

/// A finite Weyl element as its reduced word, `e` for the identity.
pub(crate) fn word(d: &RootDatum, w: crate::rootsys::FiniteWeylElement) -> String {
    let g = d.weyl().expect("finite Weyl group within guard");
    let word = g.word(w);
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect()
    }
}

fn seed_for(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

pub fn is_known(id: &str) -> bool {
    STATEMENTS.iter().any(|(s, _)| *s == id)
}

/// Runs one statement. Errors are configuration or guard failures; a false
/// statement is reported through `pass`.
pub fn run(id: &str, params: &VerifyParams) -> Result<Verdict> {
    if !is_known(id) {
        return Err(Error::Config(format!("unknown statement `{id}`")));
    }
    let mut ctx = Ctx {
        params,
        rng: ChaCha8Rng::seed_from_u64(seed_for(id)),
    };
    let mut out = Outcome::default();
    let d = match id {
        "thm3.2" => sets::adm_in_perm(&mut ctx, &mut out)?,
        "thm3.3" => sets::type_a_equality(&mut ctx, &mut out)?,
        "prop4.3" => sets::strong_in_adm(&mut ctx, &mut out)?,
        "lem4.4" => sets::type_a_strong_sets(&mut ctx, &mut out)?,
        "rem4.5" => sets::special_vertices(&mut ctx, &mut out)?,
        "lem7.3" => sets::chamber_slices(&mut ctx, &mut out)?,
        "prop7.2" => sets::counterexample(&mut ctx, &mut out)?,
        "prop8.1" => sets::deodhar_type_a(&mut ctx, &mut out)?,
        "lem5.3" => cones::direction_minimality(&mut ctx, &mut out)?,
        "prop5.5" => cones::pointed_inside_acute(&mut ctx, &mut out)?,
        "cor5.6" => cones::cones_cover(&mut ctx, &mut out)?,
        "cor5.7" => cones::translations_in_cones(&mut ctx, &mut out)?,
        "lem5.8" => cones::halfspace_characterization(&mut ctx, &mut out)?,
        "lem6.2" => cones::left_multiplication(&mut ctx, &mut out)?,
        "lem6.3" => cones::parabolic_projections(&mut ctx, &mut out)?,
        "lem7.5" => cones::near_translations(&mut ctx, &mut out)?,
        "lem8.2" => cones::antidominant_boundary(&mut ctx, &mut out)?,
        "prop9.1" => theta::fixed_affine_group(&mut ctx, &mut out)?,
        "lem9.2" => theta::averaged_roots(&mut ctx, &mut out)?,
        "prop9.3" => theta::alcove_restriction(&mut ctx, &mut out)?,
        "lem9.4" => theta::halfspace_restriction(&mut ctx, &mut out)?,
        "prop9.5" => theta::cone_restriction(&mut ctx, &mut out)?,
        "prop9.6" => theta::inherited_order(&mut ctx, &mut out)?,
        "prop9.7" => theta::adm_via_host(&mut ctx, &mut out)?,
        "thm10.1" => theta::gsp_equality(&mut ctx, &mut out)?,
        "sec11" => theta::odd_non_inheritance(&mut ctx, &mut out)?,
        "sec11-counts" => theta::odd_counts(&mut ctx, &mut out)?,
        _ => unreachable!("id checked above"),
    };
    let mut parameters = serde_json::Map::new();
    if let Some(f) = params.family {
        parameters.insert("family".into(), json!(f.name()));
    }
    if let Some(n) = params.size {
        parameters.insert("size".into(), json!(n));
    }
    if let Some(m) = &params.mu {
        parameters.insert("mu".into(), vector_json(&RationalVector::from_ints(m)));
    }
    if let Some(n) = params.instances {
        parameters.insert("instances".into(), json!(n));
    }
    Ok(Verdict {
        schema: VERDICT_SCHEMA,
        version: crate::VERSION,
        statement: id.to_string(),
        datum: d.label,
        fingerprint: d.fingerprint,
        parameters: Value::Object(parameters),
        pass: out.witness.is_none() && out.checked > 0,
        checked: out.checked,
        witness: out.witness,
        notes: out.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let gl2 = build_root_datum(Family::GL, 2).unwrap();
        assert_eq!(mu_grid(&gl2, 2).len(), 6);
        let g2 = build_root_datum(Family::G2, 2).unwrap();
        let grid = mu_grid(&g2, 2);
        assert!(grid.iter().all(|m| g2.is_dominant(m)));
        assert!(grid.contains(&RationalVector::from_ints(&[0, -1, 1])));
    }

    #[test]
    fn unknown_statement() {
        assert!(matches!(
            run("thm9.9", &VerifyParams::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn degenerate_mu() {
        let p = VerifyParams {
            size: Some(2),
            mu: Some(vec![0, 0]),
            ..Default::default()
        };
        let v = run("thm3.3", &p).unwrap();
        assert!(v.pass, "{v:?}");
    }
}
