//! Exhaustive enumeration of operations on the Sweedler algebra over a
//! small prime field, used as an independent check of the classification.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{build_unknown_op, generate_constraints, ClassifyError, Family, Mode, Parameterization};
use crate::exactmath::{ExactError, PrimeField, PrimeFieldElement, Rational};
use crate::hopf::{sweedler_h4, HopfError, HopfOver};
use crate::multipoly::{PolyError, Polynomial, Registry};
use crate::triangle::{check_counit_absorption, check_mode, extend_generators, GeneratorTable, TriangleError, TriangleOp};

/// Largest supported prime.
pub const MAX_PRIME: u64 = 13;

/// Unknowns assigned per search level: one column (`x ⊳ g` or `x ⊳ v`) of one row.
const LEVEL_WIDTH: usize = 4;
const LEVELS: usize = 8;
const UNKNOWNS: usize = LEVEL_WIDTH * LEVELS;

#[derive(Debug, thiserror::Error)]
pub enum EnumError {
    #[error("prime {0} unsupported (need an odd prime between 3 and {MAX_PRIME})")]
    UnsupportedPrime(u64),
    #[error("search exceeded {0} nodes")]
    LimitExceeded(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub prime: u64,
    pub mode: Mode,
    /// Cap on search nodes (partial assignments that passed their level).
    pub max_nodes: Option<usize>,
}

impl EnumerationTask {
    pub fn new(prime: u64, mode: Mode) -> Self {
        EnumerationTask { prime, mode, max_nodes: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Surviving partial assignments per level.
    pub level_survivors: Vec<usize>,
    /// Complete generator tables handed to the final check.
    pub completed: usize,
    /// Completed tables rejected by the full axiom check.
    pub rejected: usize,
    /// Emitted tables failing `x ⊳ 1 = ε(x) 1`.
    pub counit_absorption_failures: usize,
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub prime: u64,
    pub mode: Mode,
    /// Distinct, sorted by coefficient values.
    pub structures: Vec<TriangleOp<PrimeFieldElement>>,
    pub stats: EnumerationStats,
    pub elapsed: Duration,
}

impl EnumerationReport {
    pub fn count(&self) -> usize {
        self.structures.len()
    }

    /// Timing is left out so the output is reproducible.
    pub fn to_json(&self) -> Value {
        let structures: Vec<Value> = self
            .structures
            .iter()
            .map(|op| op.to_json_with(json!({"prime": self.prime}), |x| x.value().to_string()))
            .collect();
        json!({
            "prime": self.prime,
            "mode": self.mode,
            "count": self.count(),
            "structures": structures,
            "stats": self.stats,
        })
    }
}

/// `Σ c * Π x_v^e` with coefficients reduced mod p.
#[derive(Clone, Debug)]
struct ModPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl ModPoly {
    fn eval(&self, vals: &[u64; UNKNOWNS], p: u64) -> u64 {
        let mut acc = 0;
        for (c, mono) in &self.terms {
            let mut t = *c;
            for &(v, e) in mono {
                for _ in 0..e {
                    t = t * vals[v] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// The generator-parameterized constraint system reduced mod p, each
/// equation filed under the last level it mentions.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    prime: u64,
    mode: Mode,
    levels: Vec<Vec<ModPoly>>,
}

fn check_prime(p: u64) -> Result<PrimeField, EnumError> {
    if !(3..=MAX_PRIME).contains(&p) {
        return Err(EnumError::UnsupportedPrime(p));
    }
    PrimeField::new(p).map_err(|_| EnumError::UnsupportedPrime(p))
}

fn reduce(poly: &Polynomial, index: &BTreeMap<crate::multipoly::Var, usize>, p: u64) -> Result<ModPoly, EnumError> {
    let l = poly.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let scaled = poly.scale(&Rational::from_integer(l));
    let mut terms = Vec::new();
    for (m, c) in scaled.terms() {
        let c = PrimeFieldElement::from_rational(c, p)?.value();
        if c == 0 {
            continue;
        }
        terms.push((c, m.powers().iter().map(|(v, e)| (index[v], *e)).collect()));
    }
    Ok(ModPoly { terms })
}

impl CompiledSystem {
    pub fn new(prime: u64, mode: Mode) -> Result<Self, EnumError> {
        check_prime(prime)?;
        let h = sweedler_h4();
        let unknown = build_unknown_op(&h, Parameterization::Generator32)?;
        let sys = generate_constraints(&h, &unknown, mode)?;
        let index: BTreeMap<_, _> = unknown.unknowns.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut levels = vec![Vec::new(); LEVELS];
        for eq in &sys.equations {
            let m = reduce(&eq.poly, &index, prime)?;
            if m.terms.is_empty() {
                continue;
            }
            let last = m.terms.iter().flat_map(|(_, mono)| mono.iter().map(|(v, _)| *v)).max().unwrap_or(0);
            levels[last / LEVEL_WIDTH].push(m);
        }
        Ok(CompiledSystem { prime, mode, levels })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    fn level_ok(&self, level: usize, vals: &[u64; UNKNOWNS]) -> bool {
        self.levels[level].iter().all(|e| e.eval(vals, self.prime) == 0)
    }

    /// Every value of the level's unknowns, in lexicographic order.
    fn level_values(&self) -> impl Iterator<Item = [u64; LEVEL_WIDTH]> + '_ {
        let p = self.prime;
        (0..p.pow(LEVEL_WIDTH as u32)).map(move |mut n| {
            let mut out = [0; LEVEL_WIDTH];
            for slot in out.iter_mut().rev() {
                *slot = n % p;
                n /= p;
            }
            out
        })
    }

    fn set(vals: &mut [u64; UNKNOWNS], level: usize, x: &[u64; LEVEL_WIDTH]) {
        vals[level * LEVEL_WIDTH..(level + 1) * LEVEL_WIDTH].copy_from_slice(x);
    }
}

/// One row of generator values: `(x ⊳ g, x ⊳ v)` as residues.
pub type RowValue = ([u64; 4], [u64; 4]);

fn row_of(vals: &[u64; UNKNOWNS], row: usize) -> RowValue {
    let mut g = [0; 4];
    let mut v = [0; 4];
    g.copy_from_slice(&vals[row * 8..row * 8 + 4]);
    v.copy_from_slice(&vals[row * 8 + 4..row * 8 + 8]);
    (g, v)
}

fn load_rows(assigned: &[RowValue]) -> [u64; UNKNOWNS] {
    let mut vals = [0; UNKNOWNS];
    for (r, (g, v)) in assigned.iter().enumerate() {
        vals[r * 8..r * 8 + 4].copy_from_slice(g);
        vals[r * 8 + 4..r * 8 + 8].copy_from_slice(v);
    }
    vals
}

/// Candidates for row `assigned.len()` (rows run `1, g, v, gv`) given the
/// earlier rows: every pair satisfying all equations whose unknowns lie in
/// those rows. The `x ⊳ g` column is filtered before `x ⊳ v` is tried.
pub fn row_candidates(sys: &CompiledSystem, assigned: &[RowValue]) -> Vec<RowValue> {
    let row = assigned.len();
    assert!(row < 4, "four rows at most");
    let mut vals = load_rows(assigned);
    let mut out = Vec::new();
    for g in sys.level_values() {
        CompiledSystem::set(&mut vals, 2 * row, &g);
        if !sys.level_ok(2 * row, &vals) {
            continue;
        }
        for v in sys.level_values() {
            CompiledSystem::set(&mut vals, 2 * row + 1, &v);
            if sys.level_ok(2 * row + 1, &vals) {
                out.push(row_of(&vals, row));
            }
        }
    }
    out
}

/// As [`row_candidates`], but trying all `p^8` row values and checking the
/// row's equations only once both columns are set.
pub fn row_candidates_unpruned(sys: &CompiledSystem, assigned: &[RowValue]) -> Vec<RowValue> {
    let row = assigned.len();
    assert!(row < 4, "four rows at most");
    let mut vals = load_rows(assigned);
    let mut out = Vec::new();
    for g in sys.level_values() {
        CompiledSystem::set(&mut vals, 2 * row, &g);
        for v in sys.level_values() {
            CompiledSystem::set(&mut vals, 2 * row + 1, &v);
            if sys.level_ok(2 * row, &vals) && sys.level_ok(2 * row + 1, &vals) {
                out.push(row_of(&vals, row));
            }
        }
    }
    out
}

struct Search<'a> {
    sys: &'a CompiledSystem,
    limit: Option<usize>,
    nodes: &'a AtomicUsize,
}

#[derive(Default)]
struct Partial {
    leaves: Vec<[u64; UNKNOWNS]>,
    survivors: Vec<usize>,
    exceeded: bool,
}

impl Search<'_> {
    fn dfs(&self, level: usize, vals: &mut [u64; UNKNOWNS], acc: &mut Partial) {
        if acc.exceeded {
            return;
        }
        if level == LEVELS {
            acc.leaves.push(*vals);
            return;
        }
        for x in self.sys.level_values() {
            CompiledSystem::set(vals, level, &x);
            if !self.sys.level_ok(level, vals) {
                continue;
            }
            acc.survivors[level] += 1;
            let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if self.limit.is_some_and(|l| n > l) {
                acc.exceeded = true;
                return;
            }
            self.dfs(level + 1, vals, acc);
        }
    }
}

/// All operations over `F_p` satisfying the `task.mode` axioms.
///
/// Generator values are searched column by column; each completed table
/// is extended by distributivity and re-checked against the full axiom set.
pub fn enumerate(task: &EnumerationTask) -> Result<EnumerationReport, EnumError> {
    let sys = CompiledSystem::new(task.prime, task.mode)?;
    enumerate_compiled(&sys, task.max_nodes, None)
}

/// Enumerate with the top-level candidates split into `chunks` groups
/// searched independently; `None` gives each candidate its own group.
pub fn enumerate_compiled(
    sys: &CompiledSystem,
    max_nodes: Option<usize>,
    chunks: Option<usize>,
) -> Result<EnumerationReport, EnumError> {
    let start = Instant::now();
    let p = sys.prime;
    let field = PrimeField::new(p)?;
    let nodes = AtomicUsize::new(0);
    let search = Search { sys, limit: max_nodes, nodes: &nodes };

    let mut top: Vec<[u64; LEVEL_WIDTH]> = Vec::new();
    let mut root = [0; UNKNOWNS];
    for x in sys.level_values() {
        CompiledSystem::set(&mut root, 0, &x);
        if sys.level_ok(0, &root) {
            top.push(x);
        }
    }
    let chunk = chunks.map_or(1, |c| top.len().div_ceil(c.max(1)).max(1));
    let parts: Vec<Partial> = top
        .par_chunks(chunk)
        .map(|xs| {
            let mut acc = Partial {
                survivors: vec![0; LEVELS],
                ..Partial::default()
            };
            for x in xs {
                let mut vals = [0; UNKNOWNS];
                CompiledSystem::set(&mut vals, 0, x);
                search.dfs(1, &mut vals, &mut acc);
            }
            acc
        })
        .collect();
    if parts.iter().any(|p| p.exceeded) {
        return Err(EnumError::LimitExceeded(max_nodes.unwrap_or(0)));
    }

    let mut stats = EnumerationStats {
        level_survivors: vec![0; LEVELS],
        ..EnumerationStats::default()
    };
    stats.level_survivors[0] = top.len();
    let mut leaves = Vec::new();
    for part in parts {
        for (s, n) in stats.level_survivors.iter_mut().zip(&part.survivors) {
            *s += n;
        }
        leaves.extend(part.leaves);
    }
    stats.completed = leaves.len();

    let h = HopfOver::new(&sweedler_h4(), field)?;
    let checked: Vec<(Option<TriangleOp<PrimeFieldElement>>, bool)> = leaves
        .par_iter()
        .map(|vals| -> Result<_, EnumError> {
            let rows = (0..4)
                .map(|r| {
                    let (g, v) = row_of(vals, r);
                    (g.iter().map(|&x| field.element(x as i64)).collect(), v.iter().map(|&x| field.element(x as i64)).collect())
                })
                .collect();
            let op = extend_generators(&h, &GeneratorTable { rows })?;
            if !check_mode(&h, &op, sys.mode)?.passed() {
                return Ok((None, true));
            }
            let absorbs = check_counit_absorption(&h, &op)?.passed();
            Ok((Some(op), absorbs))
        })
        .collect::<Result<_, _>>()?;
    let mut structures = Vec::new();
    for (op, absorbs) in checked {
        match op {
            Some(op) => {
                if !absorbs {
                    stats.counit_absorption_failures += 1;
                }
                structures.push(op);
            }
            None => stats.rejected += 1,
        }
    }
    structures.sort();
    structures.dedup();
    Ok(EnumerationReport {
        prime: p,
        mode: sys.mode,
        structures,
        stats,
        elapsed: start.elapsed(),
    })
}

/// Structures on only one side of a comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyDiff {
    /// Family evaluations not found by the enumeration: label, parameter values, table.
    pub missing: Vec<FamilyEvaluation>,
    /// Enumerated structures that are no family evaluation.
    pub extra: Vec<TriangleOp<PrimeFieldElement>>,
    /// Distinct family evaluations.
    pub expected: usize,
}

impl FamilyDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Family label, parameter values and the resulting table.
pub type FamilyEvaluation = (String, Vec<u64>, TriangleOp<PrimeFieldElement>);

/// Every evaluation of each family at all parameter values in `F_p`,
/// deduplicated; the first label producing a table is kept.
pub fn family_evaluations(
    families: &[(String, Family)],
    prime: u64,
) -> Result<Vec<FamilyEvaluation>, EnumError> {
    let field = check_prime(prime)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (label, fam) in families {
        let k = fam.free_params.len() as u32;
        for n in 0..prime.pow(k) {
            let mut m = n;
            let mut point = Vec::new();
            let mut assignment = BTreeMap::new();
            for &v in &fam.free_params {
                point.push(m % prime);
                assignment.insert(v, field.element((m % prime) as i64));
                m /= prime;
            }
            let op = fam.table.try_map(|c| c.evaluate_mod_p(prime, &assignment))?;
            if seen.insert(op.clone()) {
                out.push((label.clone(), point, op));
            }
        }
    }
    Ok(out)
}

/// Compare an enumeration with the evaluations of `families`.
pub fn compare_with_families(report: &EnumerationReport, families: &[(String, Family)]) -> Result<FamilyDiff, EnumError> {
    let evals = family_evaluations(families, report.prime)?;
    let found: BTreeSet<&TriangleOp<PrimeFieldElement>> = report.structures.iter().collect();
    let expected: BTreeSet<&TriangleOp<PrimeFieldElement>> = evals.iter().map(|(_, _, op)| op).collect();
    Ok(FamilyDiff {
        missing: evals.iter().filter(|(_, _, op)| !found.contains(op)).cloned().collect(),
        extra: report.structures.iter().filter(|op| !expected.contains(op)).cloned().collect(),
        expected: evals.len(),
    })
}

/// The six built-in tables as families over a fresh registry.
pub fn builtin_families() -> Vec<(String, Family)> {
    builtin_families_for(Mode::Relaxed)
}

/// The built-in tables satisfying the `mode` axioms.
pub fn builtin_families_for(mode: Mode) -> Vec<(String, Family)> {
    use crate::triangle::{family_satisfies, family_table, FamilyId};
    let mut reg = Registry::new();
    FamilyId::ALL
        .iter()
        .filter(|&&w| family_satisfies(w, mode))
        .map(|&w| (w.label().to_string(), Family::new(family_table(w, None, &mut reg).expect("built-in family"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{G, G_NU, NU, ONE};

    fn e(i: usize) -> [u64; 4] {
        let mut x = [0; 4];
        x[i] = 1;
        x
    }

    #[test]
    fn unsupported_primes() {
        for p in [2, 4, 9, 17] {
            assert!(matches!(CompiledSystem::new(p, Mode::Relaxed), Err(EnumError::UnsupportedPrime(_))));
        }
    }

    #[test]
    fn first_row_is_group_like_compatible() {
        let sys = CompiledSystem::new(3, Mode::Relaxed).unwrap();
        let c = row_candidates(&sys, &[]);
        assert!(!c.is_empty());
        // 1 ⊳ g is 1 or g
        for (g, _) in &c {
            assert!(*g == e(ONE) || *g == e(G), "{g:?}");
        }
        assert!(c.iter().all(|(g, _)| *g != [2, 0, 0, 0]));
    }

    #[test]
    fn g_row_given_identity_first_row() {
        let sys = CompiledSystem::new(5, Mode::Relaxed).unwrap();
        let first = (e(G), e(NU));
        let c = row_candidates(&sys, &[first]);
        assert!(!c.is_empty());
        for (g, _) in &c {
            assert!(*g == e(ONE) || *g == e(G), "{g:?}");
        }
    }

    #[test]
    fn pruning_matches_raw_filtering_on_the_first_two_rows() {
        let sys = CompiledSystem::new(3, Mode::Relaxed).unwrap();
        let pruned = row_candidates(&sys, &[]);
        assert_eq!(pruned, row_candidates_unpruned(&sys, &[]));
        for r in &pruned {
            assert_eq!(row_candidates(&sys, &[*r]), row_candidates_unpruned(&sys, &[*r]));
        }
    }

    #[test]
    fn v_row_over_family_iii() {
        let sys = CompiledSystem::new(3, Mode::Relaxed).unwrap();
        let rows = [(e(G), e(NU)), (e(G), e(NU))];
        let c = row_candidates(&sys, &rows);
        assert_eq!(c, row_candidates_unpruned(&sys, &rows));
        assert!(c.contains(&([0; 4], [0; 4])));
        let _ = G_NU;
    }

    #[test]
    fn p3_relaxed_matches_families() {
        let rep = enumerate(&EnumerationTask::new(3, Mode::Relaxed)).unwrap();
        let diff = compare_with_families(&rep, &builtin_families()).unwrap();
        assert!(diff.is_empty(), "{diff:?}");
        assert_eq!(diff.expected, 10);
        assert_eq!(rep.count(), 10);
        assert_eq!(rep.stats.counit_absorption_failures, 0);
    }

    #[test]
    fn diff_reports_removed_structures() {
        let mut rep = enumerate(&EnumerationTask::new(3, Mode::Relaxed)).unwrap();
        rep.structures.pop();
        let diff = compare_with_families(&rep, &builtin_families()).unwrap();
        assert_eq!(diff.missing.len(), 1);
        assert!(diff.extra.is_empty());
        rep.structures.clear();
        assert_eq!(compare_with_families(&rep, &builtin_families()).unwrap().missing.len(), 10);
    }

    #[test]
    fn chunking_does_not_change_the_result() {
        let sys = CompiledSystem::new(3, Mode::Weak).unwrap();
        let a = enumerate_compiled(&sys, None, None).unwrap();
        let b = enumerate_compiled(&sys, None, Some(1)).unwrap();
        let c = enumerate_compiled(&sys, None, Some(2)).unwrap();
        assert_eq!(a.structures, c.structures);
        assert_eq!(a.structures, b.structures);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn node_limit() {
        let sys = CompiledSystem::new(3, Mode::Relaxed).unwrap();
        assert!(matches!(enumerate_compiled(&sys, Some(3), None), Err(EnumError::LimitExceeded(3))));
    }
}
