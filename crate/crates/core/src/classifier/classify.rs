use serde_json::{json, Value};

use super::{
    build_unknown_op, generate_constraints, match_families, solve, subsume, Branch, BranchStatus, ClassifyError,
    Family, MatchReport, Mode, Parameterization, SolveLimits, SolveStats,
};
use crate::hopf::HopfStructure;
use crate::multipoly::Registry;
use crate::triangle::{family_satisfies, family_table, render_table, FamilyId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub mode: Mode,
    pub parameterization: Parameterization,
    pub limits: SolveLimits,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: Mode::Relaxed,
            parameterization: Parameterization::Generator32,
            limits: SolveLimits::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub mode: Mode,
    pub parameterization: Parameterization,
    /// Unknowns plus the parameter names of every branch.
    pub registry: Registry,
    pub equations: usize,
    pub branches: Vec<Branch>,
    pub stats: SolveStats,
    /// The operation table of each resolved branch, indexed like `branches`.
    pub branch_tables: Vec<Option<Family>>,
    /// Resolved tables with specializations removed, canonically sorted.
    pub maximal_families: Vec<Family>,
}

/// Classify operations on `h` satisfying the `opts.mode` axioms.
pub fn classify(h: &HopfStructure, opts: ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    let unknown = build_unknown_op(h, opts.parameterization)?;
    let sys = generate_constraints(h, &unknown, opts.mode)?;
    let out = solve(&sys, opts.limits)?;
    let branch_tables: Vec<Option<Family>> = out
        .branches
        .iter()
        .map(|b| {
            (b.status == BranchStatus::Resolved)
                .then(|| Family::new(unknown.op.map(|p| p.substitute_all(&b.assignments))))
        })
        .collect();
    let resolved: Vec<Family> = branch_tables.iter().flatten().cloned().collect();
    let maximal_families = subsume(&resolved, &out.registry);
    Ok(ClassificationResult {
        mode: opts.mode,
        parameterization: opts.parameterization,
        registry: out.registry,
        equations: sys.len(),
        branches: out.branches,
        stats: out.stats,
        branch_tables,
        maximal_families,
    })
}

impl ClassificationResult {
    pub fn unresolved(&self) -> impl Iterator<Item = &Branch> {
        self.branches.iter().filter(|b| matches!(b.status, BranchStatus::Unresolved(_)))
    }

    pub fn resolved_tables(&self) -> impl Iterator<Item = &Family> {
        self.branch_tables.iter().flatten()
    }

    /// Compare the maximal families with the built-in Sweedler tables that
    /// satisfy this run's axioms: all six when relaxed, (i) to (iii) when weak.
    pub fn match_builtin(&self) -> MatchReport {
        let which: Vec<FamilyId> = FamilyId::ALL.into_iter().filter(|&w| family_satisfies(w, self.mode)).collect();
        self.match_known(&which)
    }

    pub fn match_known(&self, which: &[FamilyId]) -> MatchReport {
        let mut reg = self.registry.clone();
        let known: Vec<(String, Family)> = which
            .iter()
            .map(|&w| {
                let t = family_table(w, None, &mut reg).expect("built-in family");
                (w.label().to_string(), Family::new(t))
            })
            .collect();
        match_families(&self.maximal_families, &known, &reg)
    }

    pub fn to_json(&self) -> Value {
        let reg = &self.registry;
        let families: Vec<Value> = self
            .maximal_families
            .iter()
            .map(|f| {
                json!({
                    "table": f.table_strings(reg),
                    "free_params": f.free_params.iter().map(|&v| reg.name(v)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let unresolved: Vec<Value> = self
            .unresolved()
            .map(|b| {
                let BranchStatus::Unresolved(rest) = &b.status else { unreachable!() };
                json!({
                    "path": b.path,
                    "equations": rest.iter().map(|p| p.display(reg).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "mode": self.mode,
            "parameterization": self.parameterization,
            "equations": self.equations,
            "families": families,
            "stats": self.stats,
            "unresolved": unresolved,
        })
    }

    /// One table per maximal family, rows and columns in basis order.
    pub fn render(&self, basis: &[&str], symbol: &str) -> String {
        let mut out = String::new();
        for (i, f) in self.maximal_families.iter().enumerate() {
            let params: Vec<&str> = f.free_params.iter().map(|&v| self.registry.name(v)).collect();
            if params.is_empty() {
                out.push_str(&format!("family {}\n", i + 1));
            } else {
                out.push_str(&format!("family {} (parameters: {})\n", i + 1, params.join(", ")));
            }
            out.push_str(&render_table(&f.table, &self.registry, basis, symbol));
            out.push('\n');
        }
        out
    }
}
