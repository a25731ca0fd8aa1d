//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Conventions (all index-based; basis names are cosmetic):
//! - `mul[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`;
//! - `comul[i][j][k]` is the coefficient of `e_j (x) e_k` in `Δ(e_i)`;
//! - `antipode[i][j]` is the coefficient of `e_j` in `S(e_i)`;
//! - an element of `H (x) H` is a flat vector with `(j, k) -> j * n + k`.

mod algebra;
mod axioms;
mod primitive;
mod sweedler;

use serde::{Deserialize, Serialize};

use crate::exactmath::Rational;

pub use algebra::HopfOver;
pub use axioms::{verify_hopf_axioms, AxiomEntry, AxiomReport};
pub use primitive::{group_likes, is_group_like, skew_primitives};
pub use sweedler::{sweedler_h4, H4_BASIS, ONE, G, NU, G_NU};

#[derive(Debug, thiserror::Error)]
pub enum HopfError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("element is not group-like: {0}")]
    NotGroupLike(String),
    #[error("group-like solution set is not a finite rational set: {0}")]
    NonFiniteGroupLikes(String),
    #[error("invalid structure JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Exact(#[from] crate::exactmath::ExactError),
    #[error(transparent)]
    Solver(#[from] crate::classifier::SolveError),
}

/// A Hopf algebra over the rationals, stored as dense structure tensors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfStructure {
    pub dim: usize,
    #[serde(rename = "basis")]
    pub basis_names: Vec<String>,
    pub mul: Vec<Vec<Vec<Rational>>>,
    pub unit: Vec<Rational>,
    pub comul: Vec<Vec<Vec<Rational>>>,
    pub counit: Vec<Rational>,
    pub antipode: Vec<Vec<Rational>>,
}

impl HopfStructure {
    /// Check that every tensor has the shape implied by `dim`.
    pub fn validate_shape(&self) -> Result<(), HopfError> {
        let n = self.dim;
        let check = |what: &str, found: usize| {
            if found == n {
                Ok(())
            } else {
                Err(HopfError::Dimension {
                    what: what.to_string(),
                    expected: n,
                    found,
                })
            }
        };
        check("basis", self.basis_names.len())?;
        check("unit", self.unit.len())?;
        check("counit", self.counit.len())?;
        for (name, t) in [("mul", &self.mul), ("comul", &self.comul)] {
            check(name, t.len())?;
            for row in t {
                check(name, row.len())?;
                for v in row {
                    check(name, v.len())?;
                }
            }
        }
        check("antipode", self.antipode.len())?;
        for row in &self.antipode {
            check("antipode", row.len())?;
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, HopfError> {
        let h: HopfStructure = serde_json::from_str(s)?;
        h.validate_shape()?;
        Ok(h)
    }

    /// Canonical JSON form (pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("structure serializes");
        s.push('\n');
        s
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|b| b == name)
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial() -> Self {
        let one = Rational::one();
        HopfStructure {
            dim: 1,
            basis_names: vec!["1".into()],
            mul: vec![vec![vec![one.clone()]]],
            unit: vec![one.clone()],
            comul: vec![vec![vec![one.clone()]]],
            counit: vec![one.clone()],
            antipode: vec![vec![one]],
        }
    }

    /// Group algebra of a finite group given by its multiplication table
    /// (`table[i][j]` is the index of `g_i g_j`, index 0 the identity).
    pub fn group_algebra(names: &[&str], table: &[Vec<usize>]) -> Self {
        let n = names.len();
        let z = Rational::zero;
        let e = |i: usize| (0..n).map(|k| if k == i { Rational::one() } else { z() }).collect::<Vec<_>>();
        let mul = (0..n).map(|i| (0..n).map(|j| e(table[i][j])).collect()).collect();
        let comul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| if j == i && k == i { Rational::one() } else { z() }).collect())
                    .collect()
            })
            .collect();
        let antipode = (0..n)
            .map(|i| e((0..n).find(|&j| table[i][j] == 0).expect("group has inverses")))
            .collect();
        HopfStructure {
            dim: n,
            basis_names: names.iter().map(|s| s.to_string()).collect(),
            mul,
            unit: e(0),
            comul,
            counit: vec![Rational::one(); n],
            antipode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let h = sweedler_h4();
        let s = h.to_json();
        let back = HopfStructure::from_json(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn malformed_shapes_are_rejected() {
        let mut h = sweedler_h4();
        h.counit.pop();
        assert!(HopfStructure::from_json(&h.to_json()).is_err());
        let mut h = sweedler_h4();
        h.mul[2][1].push(Rational::zero());
        assert!(matches!(
            HopfStructure::from_json(&h.to_json()),
            Err(HopfError::Dimension { .. })
        ));
        assert!(HopfStructure::from_json("{\"dim\": 1}").is_err());
    }
}
