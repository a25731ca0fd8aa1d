use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::system::ConstraintSystem;
use crate::multipoly::{try_factor_split, Polynomial, Registry, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_branches: usize,
    pub max_depth: usize,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            max_branches: 10_000,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("resolved branch {branch} fails re-substitution into equation {equation}: residual {residual}")]
    VerificationFailed {
        branch: usize,
        equation: usize,
        residual: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchStatus {
    Resolved,
    Inconsistent,
    /// Equations the solver could neither eliminate from nor split.
    Unresolved(Vec<Polynomial>),
}

impl BranchStatus {
    pub fn label(&self) -> &'static str {
        match self {
            BranchStatus::Resolved => "resolved",
            BranchStatus::Inconsistent => "inconsistent",
            BranchStatus::Unresolved(_) => "unresolved",
        }
    }
}

/// One leaf of the case tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Every unknown mapped to a polynomial in the free parameters (for
    /// resolved branches), or the partial elimination reached so far.
    pub assignments: BTreeMap<Var, Polynomial>,
    /// Parameter indeterminates (named `a, b, ...` in the result registry).
    pub free_params: Vec<Var>,
    pub status: BranchStatus,
    /// The factor set to zero at each split, printed with the system names.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: usize,
    pub substitutions: usize,
    pub splits: usize,
    pub pruned: usize,
    pub resolved: usize,
    pub unresolved: usize,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// System registry extended with the parameter names.
    pub registry: Registry,
    pub branches: Vec<Branch>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn resolved(&self) -> impl Iterator<Item = &Branch> {
        self.branches.iter().filter(|b| b.status == BranchStatus::Resolved)
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &Branch> {
        self.branches
            .iter()
            .filter(|b| matches!(b.status, BranchStatus::Unresolved(_)))
    }
}

#[derive(Clone)]
struct Node {
    equations: Vec<Polynomial>,
    assignments: BTreeMap<Var, Polynomial>,
    depth: usize,
    path: Vec<String>,
}

struct Solver<'a> {
    sys: &'a ConstraintSystem,
    unknowns: BTreeSet<Var>,
    limits: SolveLimits,
    stats: SolveStats,
    leaves: Vec<Branch>,
}

/// Normalise an equation list: drop zeros, make monic, sort, dedupe.
fn normalize(eqs: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let set: BTreeSet<Polynomial> = eqs.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    set.into_iter().collect()
}

impl Solver<'_> {
    fn is_unknown(&self, v: Var) -> bool {
        self.unknowns.contains(&v)
    }

    /// Equation with no unknowns left that is not identically zero.
    fn is_contradiction(&self, p: &Polynomial) -> bool {
        !p.is_zero() && p.vars().iter().all(|v| !self.is_unknown(*v))
    }

    /// Pick `v := value` from an equation linear in an unknown `v` whose
    /// coefficient is a nonzero constant. Smallest support wins, then lowest id.
    fn pick_elimination(&self, eqs: &[Polynomial]) -> Option<(Var, Polynomial)> {
        let mut best: Option<((usize, Var), Polynomial)> = None;
        for p in eqs {
            let support = p.vars();
            for &v in support.iter().filter(|v| self.is_unknown(**v)) {
                let key = (support.len(), v);
                if best.as_ref().is_some_and(|(k, _)| key >= *k) {
                    continue;
                }
                let Some((coeff, rest)) = p.linear_in(v) else {
                    continue;
                };
                match coeff.as_constant() {
                    Some(c) if !c.is_zero() => {
                        best = Some((key, rest.scale(&-c.inv().expect("nonzero"))));
                    }
                    _ => {}
                }
            }
        }
        best.map(|((_, v), value)| (v, value))
    }

    /// Split order: forced splits (one distinct factor) first, then fewest
    /// unknowns, lowest degree, and finally the polynomial order itself.
    fn split_key<'p>(&self, p: &'p Polynomial, factors: &[Polynomial]) -> (usize, usize, u32, &'p Polynomial) {
        let mut distinct: Vec<Polynomial> = factors.iter().map(Polynomial::monic).collect();
        distinct.sort();
        distinct.dedup();
        let unknowns = p.vars().into_iter().filter(|v| self.is_unknown(*v)).count();
        (distinct.len(), unknowns, p.total_degree(), p)
    }

    fn run(&mut self, root: Node) {
        let mut stack = vec![root];
        while let Some(mut node) = stack.pop() {
            self.stats.nodes += 1;
            loop {
                if node.equations.iter().any(|p| self.is_contradiction(p)) {
                    self.stats.pruned += 1;
                    self.leaf(node, BranchStatus::Inconsistent);
                    break;
                }
                if node.equations.is_empty() {
                    self.leaf(node, BranchStatus::Resolved);
                    break;
                }
                if let Some((v, value)) = self.pick_elimination(&node.equations) {
                    self.stats.substitutions += 1;
                    node.equations = normalize(node.equations.iter().map(|p| p.substitute(v, &value)));
                    for rhs in node.assignments.values_mut() {
                        *rhs = rhs.substitute(v, &value);
                    }
                    node.assignments.insert(v, value);
                    continue;
                }
                let split = node
                    .equations
                    .iter()
                    .filter_map(|p| {
                        let factors = try_factor_split(p)?;
                        // splitting on symbolic constants alone is not a case distinction
                        if factors.iter().all(|f| f.vars().iter().all(|v| !self.is_unknown(*v))) {
                            return None;
                        }
                        let key = self.split_key(p, &factors);
                        Some((key, factors))
                    })
                    .min_by(|a, b| a.0.cmp(&b.0))
                    .map(|(_, factors)| factors);
                let Some(factors) = split else {
                    let rest = node.equations.clone();
                    self.leaf(node, BranchStatus::Unresolved(rest));
                    break;
                };
                if node.depth >= self.limits.max_depth
                    || self.stats.nodes + stack.len() + factors.len() > self.limits.max_branches
                {
                    let rest = node.equations.clone();
                    self.leaf(node, BranchStatus::Unresolved(rest));
                    break;
                }
                self.stats.splits += 1;
                let mut distinct: Vec<Polynomial> = Vec::new();
                for f in factors.into_iter().map(|f| f.monic()) {
                    if !distinct.contains(&f) {
                        distinct.push(f);
                    }
                }
                // push in reverse so the first factor is explored first
                for f in distinct.into_iter().rev() {
                    let mut child = node.clone();
                    child.depth += 1;
                    child.path.push(f.display(&self.sys.registry).to_string());
                    child.equations.push(f);
                    child.equations = normalize(std::mem::take(&mut child.equations));
                    stack.push(child);
                }
                break;
            }
        }
    }

    fn leaf(&mut self, node: Node, status: BranchStatus) {
        match status {
            BranchStatus::Resolved => self.stats.resolved += 1,
            BranchStatus::Unresolved(_) => self.stats.unresolved += 1,
            BranchStatus::Inconsistent => {}
        }
        self.leaves.push(Branch {
            assignments: node.assignments,
            free_params: Vec::new(),
            status,
            path: node.path,
        });
    }
}

/// Depth-first case split of `sys` into solution families.
///
/// Each node repeatedly eliminates an unknown that occurs linearly with a
/// constant coefficient; when none remains it splits on the first equation
/// (in canonical order) that [`try_factor_split`] can factor. Resolved
/// leaves have their remaining unknowns renamed to parameters `a, b, ...`
/// and are re-checked against the original equations.
pub fn solve(sys: &ConstraintSystem, limits: SolveLimits) -> Result<SolveOutcome, SolveError> {
    let mut solver = Solver {
        sys,
        unknowns: sys.unknowns.iter().copied().collect(),
        limits,
        stats: SolveStats::default(),
        leaves: Vec::new(),
    };
    solver.run(Node {
        equations: normalize(sys.equations.iter().map(|e| e.poly.clone())),
        assignments: BTreeMap::new(),
        depth: 0,
        path: Vec::new(),
    });
    let stats = solver.stats;
    let mut leaves = solver.leaves;

    let mut registry = sys.registry.clone();
    let mut params: Vec<Var> = Vec::new();
    for branch in leaves.iter_mut().filter(|b| b.status == BranchStatus::Resolved) {
        let free: Vec<Var> = sys
            .unknowns
            .iter()
            .copied()
            .filter(|v| !branch.assignments.contains_key(v))
            .collect();
        while params.len() < free.len() {
            let name = sys.registry.fresh_param_name(params.len());
            params.push(registry.var(&name));
        }
        let rename: BTreeMap<Var, Polynomial> =
            free.iter().zip(&params).map(|(&v, &p)| (v, Polynomial::var(p))).collect();
        for rhs in branch.assignments.values_mut() {
            *rhs = rhs.substitute_all(&rename);
        }
        branch.assignments.extend(rename);
        branch.free_params = params[..free.len()].to_vec();
    }

    for (bi, branch) in leaves.iter().enumerate() {
        if branch.status != BranchStatus::Resolved {
            continue;
        }
        for (ei, eq) in sys.equations.iter().enumerate() {
            let residual = eq.poly.substitute_all(&branch.assignments);
            if !residual.is_zero() {
                return Err(SolveError::VerificationFailed {
                    branch: bi,
                    equation: ei,
                    residual: residual.display(&registry).to_string(),
                });
            }
        }
    }

    Ok(SolveOutcome {
        registry,
        branches: leaves,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_polynomial;

    fn system(names: &[&str], eqs: &[&str]) -> ConstraintSystem {
        let mut reg = Registry::new();
        for n in names {
            reg.var(n);
        }
        let polys: Vec<_> = eqs.iter().map(|s| parse_polynomial(s, &mut reg).unwrap()).collect();
        ConstraintSystem::from_polys(reg, polys)
    }

    fn show(out: &SolveOutcome, b: &Branch) -> Vec<String> {
        b.assignments
            .iter()
            .map(|(v, p)| format!("{}={}", out.registry.name(*v), p.display(&out.registry)))
            .collect()
    }

    #[test]
    fn toy_product_and_square() {
        let sys = system(&["x", "y"], &["x*y", "x^2 - 1"]);
        let out = solve(&sys, SolveLimits::default()).unwrap();
        let resolved: Vec<_> = out.resolved().map(|b| show(&out, b)).collect();
        assert_eq!(resolved.len(), 2);
        assert!(resolved.contains(&vec!["x=1".into(), "y=0".into()]));
        assert!(resolved.contains(&vec!["x=-1".into(), "y=0".into()]));
        assert_eq!(out.unresolved().count(), 0);
    }

    #[test]
    fn irrational_roots_stay_unresolved() {
        let sys = system(&["x"], &["x^2 + 1"]);
        let out = solve(&sys, SolveLimits::default()).unwrap();
        assert_eq!(out.branches.len(), 1);
        assert!(matches!(&out.branches[0].status, BranchStatus::Unresolved(r) if r.len() == 1));
    }

    #[test]
    fn free_parameters_are_renamed() {
        let sys = system(&["x", "y", "z"], &["x - 2*y"]);
        let out = solve(&sys, SolveLimits::default()).unwrap();
        let b = out.resolved().next().unwrap();
        assert_eq!(b.free_params.len(), 2);
        assert_eq!(show(&out, b), ["x=2*a", "y=a", "z=b"]);
    }

    #[test]
    fn contradictions_are_pruned() {
        let sys = system(&["x"], &["x", "x - 1"]);
        let out = solve(&sys, SolveLimits::default()).unwrap();
        assert_eq!(out.resolved().count(), 0);
        assert_eq!(out.branches[0].status, BranchStatus::Inconsistent);
    }

    #[test]
    fn symbolic_constants_must_vanish_identically() {
        // x is unknown, s is a symbolic constant: x = s works, s*x = 1 does not split on s
        let mut reg = Registry::new();
        let x = reg.var("x");
        reg.var("s");
        let p = parse_polynomial("x - s", &mut reg).unwrap();
        let mut sys = ConstraintSystem::new(reg.clone(), vec![x], None);
        sys.add(p, super::super::system::Provenance { axiom: "t".into(), indices: vec![], component: 0 });
        let out = solve(&sys, SolveLimits::default()).unwrap();
        assert_eq!(show(&out, out.resolved().next().unwrap()), ["x=s"]);

        let q = parse_polynomial("s*x", &mut reg).unwrap();
        let mut sys = ConstraintSystem::new(reg, vec![x], None);
        sys.add(q, super::super::system::Provenance { axiom: "t".into(), indices: vec![], component: 0 });
        let out = solve(&sys, SolveLimits::default()).unwrap();
        let resolved: Vec<_> = out.resolved().map(|b| show(&out, b)).collect();
        assert_eq!(resolved, vec![vec!["x=0".to_string()]]);
    }

    #[test]
    fn depth_limit_reports_unresolved() {
        let sys = system(&["x", "y"], &["x*y", "x^2 - 1"]);
        let out = solve(&sys, SolveLimits { max_branches: 10_000, max_depth: 0 }).unwrap();
        assert_eq!(out.unresolved().count(), 1);
    }
}
