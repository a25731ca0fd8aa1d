use std::collections::BTreeMap;

use serde::Serialize;

use super::{solve, BranchStatus, ConstraintSystem, Provenance, SolveLimits};
use crate::multipoly::{Polynomial, Registry, Var};
use crate::triangle::TriangleOp;

/// A parametrised operation table: one solution family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub table: TriangleOp<Polynomial>,
    /// Parameters occurring in the table, in id order.
    pub free_params: Vec<Var>,
}

impl Family {
    pub fn new(table: TriangleOp<Polynomial>) -> Self {
        let mut params: Vec<Var> = table.coefficients().flat_map(|p| p.vars()).collect();
        params.sort();
        params.dedup();
        Family { table, free_params: params }
    }

    pub fn table_strings(&self, reg: &Registry) -> Vec<Vec<Vec<String>>> {
        self.table
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|p| p.display(reg).to_string()).collect()).collect())
            .collect()
    }

    /// Serialized table, used as the canonical sort key.
    pub fn key(&self, reg: &Registry) -> String {
        serde_json::to_string(&self.table_strings(reg)).expect("strings serialize")
    }
}

/// Whether some choice of `general`'s parameters, as polynomials in
/// `special`'s parameters, turns `general`'s table into `special`'s.
///
/// The parameters of `general` are renamed to fresh unknowns and the
/// coefficient-wise equations are handed to the branch solver, with the
/// parameters of `special` as symbolic constants. An unresolved matching
/// system counts as no specialization.
pub fn specializes(general: &Family, special: &Family, reg: &Registry) -> bool {
    if general.table.dim != special.table.dim {
        return false;
    }
    let mut work = reg.clone();
    let mut rename = BTreeMap::new();
    let mut unknowns = Vec::new();
    for (i, &p) in general.free_params.iter().enumerate() {
        let fresh = work.var(&format!("__s{i}"));
        rename.insert(p, Polynomial::var(fresh));
        unknowns.push(fresh);
    }
    let mut sys = ConstraintSystem::new(work, unknowns, None);
    for (idx, (x, y)) in general.table.coefficients().zip(special.table.coefficients()).enumerate() {
        let eq = &x.substitute_all(&rename) - y;
        if eq.is_constant() && !eq.is_zero() {
            return false;
        }
        sys.add(
            eq,
            Provenance {
                axiom: "match".into(),
                indices: vec![idx],
                component: 0,
            },
        );
    }
    match solve(&sys, SolveLimits::default()) {
        Ok(out) => out.branches.iter().any(|b| b.status == BranchStatus::Resolved),
        Err(_) => false,
    }
}

/// Same family up to reparametrization: each specializes to the other.
pub fn equivalent(a: &Family, b: &Family, reg: &Registry) -> bool {
    specializes(a, b, reg) && specializes(b, a, reg)
}

/// Drop every family that another one specializes to, keeping the first
/// of each equivalence class. Output is sorted by serialized table.
pub fn subsume(families: &[Family], reg: &Registry) -> Vec<Family> {
    let mut sorted: Vec<Family> = families.to_vec();
    // most parameters first
    sorted.sort_by_cached_key(|f| (std::cmp::Reverse(f.free_params.len()), f.key(reg)));
    sorted.dedup_by(|a, b| a.table == b.table);
    let mut kept: Vec<Family> = Vec::new();
    for f in sorted {
        if !kept.iter().any(|k| specializes(k, &f, reg)) {
            kept.retain(|k| !specializes(&f, k, reg));
            kept.push(f);
        }
    }
    kept.sort_by_cached_key(|f| f.key(reg));
    kept
}

/// Correspondence between computed families and a list of named tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    /// `(family index, known label)` for every equivalent pair.
    pub pairs: Vec<(usize, String)>,
    pub unmatched_found: Vec<usize>,
    pub unmatched_known: Vec<String>,
    pub bijection: bool,
}

/// Match `found` against `known` up to reparametrization. All tables must
/// live over `reg`.
pub fn match_families(found: &[Family], known: &[(String, Family)], reg: &Registry) -> MatchReport {
    let mut pairs = Vec::new();
    for (i, f) in found.iter().enumerate() {
        for (label, k) in known {
            if equivalent(f, k, reg) {
                pairs.push((i, label.clone()));
            }
        }
    }
    let unmatched_found: Vec<usize> = (0..found.len()).filter(|i| !pairs.iter().any(|(j, _)| j == i)).collect();
    let unmatched_known: Vec<String> = known
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| !pairs.iter().any(|(_, m)| m == l))
        .collect();
    let once_each = (0..found.len()).all(|i| pairs.iter().filter(|(j, _)| *j == i).count() == 1)
        && known.iter().all(|(l, _)| pairs.iter().filter(|(_, m)| m == l).count() == 1);
    MatchReport {
        bijection: once_each && unmatched_found.is_empty() && unmatched_known.is_empty(),
        pairs,
        unmatched_found,
        unmatched_known,
    }
}
