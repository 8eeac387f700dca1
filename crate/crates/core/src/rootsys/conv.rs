//! Half-space description of `Conv(W_0 μ)`.

use num_traits::Signed;

use super::RootDatum;
use crate::error::Result;
use crate::rational::{RationalVector, Q};

/// `Conv(W_0 μ)` as `{v : ⟨u, v⟩ ≤ ⟨ϖ_i, μ⟩ for u ∈ W_0 ϖ_i}` together with
/// the requirement that `v − μ` lie in the coroot span.
///
/// A point `v` of `μ + span(coroots)` lies in the hull iff its dominant
/// representative `v⁺` satisfies `μ − v⁺ ∈ Σ ℝ_{≥0} α_i^∨`, and the
/// coefficient of `α_i^∨` there is `⟨ϖ_i, μ − v⁺⟩ = max_w ⟨wϖ_i, μ − v⟩`.
#[derive(Clone, Debug)]
pub struct ConvHull {
    mu: RationalVector,
    halfspaces: Vec<(RationalVector, Q)>,
    center: Vec<(RationalVector, Q)>,
}

impl ConvHull {
    pub fn new(datum: &RootDatum, mu: &RationalVector) -> Result<ConvHull> {
        datum.require_dominant(mu)?;
        let orbits = datum.weight_orbits()?;
        let mut halfspaces = Vec::new();
        for (i, orbit) in orbits.iter().enumerate() {
            let bound = datum.fundamental_weights()[i].dot(mu);
            for u in orbit {
                halfspaces.push((u.clone(), bound));
            }
        }
        let center = datum
            .center_basis()
            .iter()
            .map(|z| (z.clone(), z.dot(mu)))
            .collect();
        Ok(ConvHull {
            mu: mu.clone(),
            halfspaces,
            center,
        })
    }

    pub fn mu(&self) -> &RationalVector {
        &self.mu
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.center.iter().all(|(z, c)| z.dot(v) == *c)
            && self.halfspaces.iter().all(|(u, b)| u.dot(v) <= *b)
    }

    /// The defining functionals, for callers that precompute pairings.
    pub fn halfspaces(&self) -> &[(RationalVector, Q)] {
        &self.halfspaces
    }

    pub fn center_equations(&self) -> &[(RationalVector, Q)] {
        &self.center
    }

    /// Largest violation `⟨u, v⟩ − bound`, zero when inside.
    pub fn excess(&self, v: &RationalVector) -> Q {
        self.halfspaces
            .iter()
            .map(|(u, b)| u.dot(v) - b)
            .filter(|x| x.is_positive())
            .max()
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootsys::{build_root_datum, conv_membership, Family};

    #[test]
    fn agrees_with_cone_test_on_a_grid() {
        for (f, n, mu) in [
            (Family::GL, 3, vec![2, 1, 0]),
            (Family::B, 2, vec![1, 1]),
            (Family::C, 2, vec![2, 0]),
        ] {
            let d = build_root_datum(f, n).unwrap();
            let mu = RationalVector::from_ints(&mu);
            let hull = ConvHull::new(&d, &mu).unwrap();
            let dim = d.ambient_dim();
            let total = 7usize.pow(dim as u32);
            for idx in 0..total {
                let mut k = idx;
                let v = RationalVector(
                    (0..dim)
                        .map(|_| {
                            let x = (k % 7) as i64 - 3;
                            k /= 7;
                            qf(x, 2) + qf(1, 2)
                        })
                        .collect(),
                );
                assert_eq!(
                    hull.contains(&v),
                    conv_membership(&d, &mu, &v).unwrap(),
                    "{v}"
                );
            }
        }
    }
}
