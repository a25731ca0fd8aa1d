use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClassifyError, ConstraintSystem, Mode, Provenance};
use crate::hopf::{HopfOver, HopfStructure, G, NU};
use crate::multipoly::{PolyRing, Polynomial, Registry, Var};
use crate::triangle::{check_mode, extend_generators, GeneratorTable, TriangleOp};

/// How the unknown operation is parametrised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    /// Unknown `x ⊳ g` and `x ⊳ v`; the other columns follow by distributivity.
    Generator32,
    /// One unknown per table coefficient.
    Full64,
}

impl fmt::Display for Parameterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameterization::Generator32 => "generator32",
            Parameterization::Full64 => "full64",
        })
    }
}

impl FromStr for Parameterization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generator32" => Ok(Parameterization::Generator32),
            "full64" => Ok(Parameterization::Full64),
            other => Err(format!("unknown parameterization {other:?} (expected generator32|full64)")),
        }
    }
}

/// A symbolic operation together with the registry of its unknowns.
#[derive(Clone, Debug)]
pub struct UnknownOp {
    pub op: TriangleOp<Polynomial>,
    pub registry: Registry,
    /// In creation order, row-major `(x, y, k)`.
    pub unknowns: Vec<Var>,
}

fn unknown(reg: &mut Registry, names: &[String], x: usize, y: usize, k: usize) -> Var {
    reg.var(&format!("c_{}_{}_{}", names[x], names[y], names[k]))
}

/// Fresh unknowns `c_x_y_k` (the coefficient of `e_k` in `e_x ⊳ e_y`).
pub fn build_unknown_op(h: &HopfStructure, p: Parameterization) -> Result<UnknownOp, ClassifyError> {
    let n = h.dim;
    let names = &h.basis_names;
    let mut reg = Registry::new();
    let mut unknowns = Vec::new();
    match p {
        Parameterization::Full64 => {
            let mut table = vec![vec![Vec::with_capacity(n); n]; n];
            for (x, row) in table.iter_mut().enumerate() {
                for (y, cell) in row.iter_mut().enumerate() {
                    for k in 0..n {
                        let v = unknown(&mut reg, names, x, y, k);
                        unknowns.push(v);
                        cell.push(Polynomial::var(v));
                    }
                }
            }
            Ok(UnknownOp {
                op: TriangleOp::new(n, table)?,
                registry: reg,
                unknowns,
            })
        }
        Parameterization::Generator32 => {
            if n != 4 || h.basis_names != ["1", "g", "v", "gv"] {
                return Err(ClassifyError::NotSweedler);
            }
            let mut rows = Vec::with_capacity(n);
            for x in 0..n {
                let mut col = |y: usize| -> Vec<Polynomial> {
                    (0..n)
                        .map(|k| {
                            let v = unknown(&mut reg, names, x, y, k);
                            unknowns.push(v);
                            Polynomial::var(v)
                        })
                        .collect()
                };
                let g = col(G);
                let nu = col(NU);
                rows.push((g, nu));
            }
            let ho = HopfOver::new(h, PolyRing)?;
            let op = extend_generators(&ho, &GeneratorTable { rows })?;
            Ok(UnknownOp {
                op,
                registry: reg,
                unknowns,
            })
        }
    }
}

/// Every residual component of the `mode` axioms as an equation.
pub fn generate_constraints(
    h: &HopfStructure,
    unknown: &UnknownOp,
    mode: Mode,
) -> Result<ConstraintSystem, ClassifyError> {
    let ho = HopfOver::new(h, PolyRing)?;
    let report = check_mode(&ho, &unknown.op, mode)?;
    let mut sys = ConstraintSystem::new(unknown.registry.clone(), unknown.unknowns.clone(), Some(mode));
    for entry in report.entries {
        for (component, poly) in entry.residual.into_iter().enumerate() {
            sys.add(
                poly,
                Provenance {
                    axiom: entry.axiom.to_string(),
                    indices: entry.indices.clone(),
                    component,
                },
            );
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{sweedler_h4, ONE};
    use crate::multipoly::parse_polynomial;

    #[test]
    fn unknown_counts() {
        let h = sweedler_h4();
        let g = build_unknown_op(&h, Parameterization::Generator32).unwrap();
        assert_eq!(g.unknowns.len(), 32);
        assert_eq!(g.registry.len(), 32);
        let f = build_unknown_op(&h, Parameterization::Full64).unwrap();
        assert_eq!(f.unknowns.len(), 64);
        assert_eq!(f.registry.name(f.unknowns[7]), "c_1_g_gv");
        assert!(build_unknown_op(&HopfStructure::trivial(), Parameterization::Generator32).is_err());
    }

    #[test]
    fn one_one_is_the_square_of_one_g() {
        let h = sweedler_h4();
        let mut u = build_unknown_op(&h, Parameterization::Generator32).unwrap();
        let e = u.op.entry(ONE, ONE)[ONE].clone();
        assert_eq!(e.total_degree(), 2);
        // (t1 + t2 g + t3 v + t4 gv)^2 has unit coefficient t1^2 + t2^2
        let expect = parse_polynomial("c_1_g_1^2 + c_1_g_g^2", &mut u.registry).unwrap();
        assert_eq!(e, expect);
        let row1: Vec<Var> = u.unknowns[..4].to_vec();
        assert!(e.vars().iter().all(|v| row1.contains(v)));
    }

    #[test]
    fn weak_mode_adds_the_identity_row_equations() {
        let h = sweedler_h4();
        let u = build_unknown_op(&h, Parameterization::Generator32).unwrap();
        let relaxed = generate_constraints(&h, &u, Mode::Relaxed).unwrap();
        let weak = generate_constraints(&h, &u, Mode::Weak).unwrap();
        assert!(weak.len() > relaxed.len());
        let mut reg = u.registry.clone();
        for s in ["c_1_g_1", "c_1_g_g - 1", "c_1_g_v", "c_1_g_gv"] {
            let p = parse_polynomial(s, &mut reg).unwrap();
            assert!(weak.contains(&p), "{s}");
            assert!(!relaxed.contains(&p), "{s}");
        }
    }

    #[test]
    fn zero_table_is_inconsistent() {
        let h = sweedler_h4();
        let u = UnknownOp {
            op: TriangleOp::filled(4, Polynomial::zero()),
            registry: Registry::new(),
            unknowns: vec![],
        };
        let sys = generate_constraints(&h, &u, Mode::Relaxed).unwrap();
        let counit = sys
            .equations
            .iter()
            .find(|e| e.provenance.axiom == "coalgebra_counit" && e.provenance.indices == vec![ONE, ONE])
            .unwrap();
        assert_eq!(counit.poly, Polynomial::int(-1));
    }
}
