use super::{HopfError, HopfOver, HopfStructure};
use crate::classifier::{solve, BranchStatus, ConstraintSystem, Provenance, SolveLimits};
use crate::exactmath::{kernel_basis, ExactMatrix, Rational, Rationals, Ring};
use crate::multipoly::{PolyRing, Polynomial, Registry};

pub fn is_group_like(h: &HopfStructure, x: &[Rational]) -> Result<bool, HopfError> {
    let ho = HopfOver::new(h, Rationals)?;
    let dx = ho.comultiply(x)?;
    Ok(dx == ho.tensor(x, x) && ho.counit(x).is_one())
}

/// All group-like elements with rational coordinates, sorted.
///
/// Solves `Δ(x) = x (x) x`, `ε(x) = 1` with the classifier's branch solver;
/// a parametrised or unresolved branch is reported as an error.
pub fn group_likes(h: &HopfStructure) -> Result<Vec<Vec<Rational>>, HopfError> {
    let ho = HopfOver::new(h, PolyRing)?;
    let n = h.dim;
    let mut reg = Registry::new();
    let vars: Vec<_> = (0..n).map(|i| reg.var(&format!("x_{i}"))).collect();
    let x: Vec<Polynomial> = vars.iter().map(|&v| Polynomial::var(v)).collect();

    let mut sys = ConstraintSystem::new(reg, vars.clone(), None);
    let delta = ho.sub(&ho.comultiply(&x)?, &ho.tensor(&x, &x));
    for (c, p) in delta.into_iter().enumerate() {
        sys.add(p, Provenance { axiom: "group_like_comul".into(), indices: vec![], component: c });
    }
    let eps = PolyRing.sub(&ho.counit(&x), &Polynomial::one());
    sys.add(eps, Provenance { axiom: "group_like_counit".into(), indices: vec![], component: 0 });

    let out = solve(&sys, SolveLimits::default())?;
    let mut found = Vec::new();
    for b in &out.branches {
        match &b.status {
            BranchStatus::Inconsistent => continue,
            BranchStatus::Unresolved(rest) => {
                return Err(HopfError::NonFiniteGroupLikes(format!(
                    "{} equations left unsolved",
                    rest.len()
                )))
            }
            BranchStatus::Resolved if !b.free_params.is_empty() => {
                return Err(HopfError::NonFiniteGroupLikes(format!(
                    "branch has {} free parameters",
                    b.free_params.len()
                )))
            }
            BranchStatus::Resolved => {
                let point = vars
                    .iter()
                    .map(|v| b.assignments[v].as_constant().expect("no free parameters"))
                    .collect::<Vec<_>>();
                found.push(point);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Canonical kernel basis of `c -> Δ(c) - g (x) c - c (x) h`.
pub fn skew_primitives(h: &HopfStructure, g: &[Rational], k: &[Rational]) -> Result<Vec<Vec<Rational>>, HopfError> {
    let ho = HopfOver::new(h, Rationals)?;
    for x in [g, k] {
        if !is_group_like(h, x)? {
            return Err(HopfError::NotGroupLike(format!("{x:?}")));
        }
    }
    let n = h.dim;
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let e = ho.basis(i);
            let d = ho.comul_unchecked(&e);
            ho.sub(&ho.sub(&d, &ho.tensor(g, &e)), &ho.tensor(&e, k))
        })
        .collect();
    let entries = (0..n * n).flat_map(|r| columns.iter().map(move |col| col[r].clone())).collect();
    let m = ExactMatrix::from_entries(n * n, n, entries)?;
    Ok(kernel_basis(&Rationals, &m))
}
