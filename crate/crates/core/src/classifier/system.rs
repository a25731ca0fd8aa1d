use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::multipoly::{Polynomial, Registry, Var};

/// Which axioms an operation must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Coalgebra homomorphism plus the distributive and weighted-associative laws.
    Relaxed,
    /// Relaxed, and additionally `1 ⊳ x = x`.
    Weak,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Relaxed => "relaxed",
            Mode::Weak => "weak",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "relaxed" => Ok(Mode::Relaxed),
            "weak" => Ok(Mode::Weak),
            other => Err(format!("unknown mode {other:?} (expected relaxed|weak)")),
        }
    }
}

/// Where an equation came from: the axiom, the basis indices, and the
/// coefficient position inside the residual vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub axiom: String,
    pub indices: Vec<usize>,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub poly: Polynomial,
    pub provenance: Provenance,
}

/// Polynomial equations `p = 0` over a registry of indeterminates.
///
/// `unknowns` are the indeterminates the solver may eliminate or split on;
/// any other indeterminate is a symbolic constant and the equations must
/// hold identically in it.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub registry: Registry,
    pub unknowns: Vec<Var>,
    pub equations: Vec<Equation>,
    pub mode: Option<Mode>,
    seen: BTreeMap<Polynomial, usize>,
}

impl ConstraintSystem {
    pub fn new(registry: Registry, unknowns: Vec<Var>, mode: Option<Mode>) -> Self {
        ConstraintSystem {
            registry,
            unknowns,
            equations: Vec::new(),
            mode,
            seen: BTreeMap::new(),
        }
    }

    /// Add `poly = 0`. Zero polynomials and scalar multiples of an already
    /// present equation are dropped. Returns whether the equation was new.
    pub fn add(&mut self, poly: Polynomial, provenance: Provenance) -> bool {
        if poly.is_zero() {
            return false;
        }
        let key = poly.monic();
        if self.seen.contains_key(&key) {
            return false;
        }
        self.seen.insert(key, self.equations.len());
        self.equations.push(Equation { poly, provenance });
        true
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Build from bare polynomials, all indeterminates unknown.
    pub fn from_polys(registry: Registry, polys: impl IntoIterator<Item = Polynomial>) -> Self {
        let unknowns = registry.vars().collect();
        let mut sys = ConstraintSystem::new(registry, unknowns, None);
        for (i, p) in polys.into_iter().enumerate() {
            sys.add(
                p,
                Provenance {
                    axiom: "input".into(),
                    indices: vec![i],
                    component: 0,
                },
            );
        }
        sys
    }

    pub fn contains(&self, poly: &Polynomial) -> bool {
        !poly.is_zero() && self.seen.contains_key(&poly.monic())
    }
}
