//! The `posthopf` command line.

use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classifier::{classify, ClassifyOptions, Mode, Parameterization, SolveLimits};
use crate::exactmath::{PrimeFieldElement, Rational, Rationals, Ring};
use crate::ffenum::{builtin_families_for, compare_with_families, enumerate, EnumerationTask};
use crate::hopf::{group_likes, skew_primitives, sweedler_h4, verify_hopf_axioms, AxiomReport, HopfOver, HopfStructure};
use crate::multipoly::{PolyRing, Polynomial, Registry};
use crate::triangle::{
    check_counit_absorption, check_mode, check_unitality, family_table, family_table_rational,
    render_element, render_table, FamilyId, OpFile, TriangleOp,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Outcome of one command: what to print and how to exit.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub status: Status,
    pub human: String,
    pub json: Value,
}

impl RunReport {
    fn error(msg: impl Display) -> Self {
        RunReport {
            status: Status::Error,
            human: format!("error: {msg}\n"),
            json: json!({"status": "error", "error": msg.to_string()}),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "posthopf", version, about = "Exact computations with post-Hopf operations on finite-dimensional Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Hopf axioms, and optionally the axioms of an operation.
    Verify {
        /// A Hopf structure JSON file, or `builtin:h4`.
        #[arg(long, default_value = "builtin:h4")]
        hopf: String,
        /// An operation JSON file, or `family:<i..vi>[:a=<rational>]`.
        #[arg(long)]
        op: Option<String>,
        #[arg(long, default_value = "relaxed")]
        mode: Mode,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the six built-in operation tables on the Sweedler algebra.
    Families {
        /// Check each table against the axioms.
        #[arg(long)]
        check: bool,
        /// Print v and gv as ν and gν, and the operation as ⊳.
        #[arg(long)]
        unicode: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Solve for all operations on the Sweedler algebra.
    Classify {
        #[arg(long, default_value = "relaxed")]
        mode: Mode,
        #[arg(long, default_value = "generator32")]
        param: Parameterization,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        unicode: bool,
        #[arg(long, default_value_t = SolveLimits::default().max_branches)]
        max_branches: usize,
        #[arg(long, default_value_t = SolveLimits::default().max_depth)]
        max_depth: usize,
    },
    /// List every operation on the Sweedler algebra over F_p.
    Enumerate {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value = "relaxed")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<usize>,
    },
    /// Group-like elements.
    Grouplikes {
        #[arg(long, default_value = "builtin:h4")]
        hopf: String,
    },
    /// Basis of the (g, h)-skew-primitive elements.
    Primitives {
        /// A group-like basis element, by name or index.
        g: String,
        h: String,
        #[arg(long, default_value = "builtin:h4")]
        hopf: String,
    },
}

fn load_hopf(src: &str) -> Result<HopfStructure, String> {
    if src == "builtin:h4" {
        return Ok(sweedler_h4());
    }
    let text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    HopfStructure::from_json(&text).map_err(|e| format!("{src}: {e}"))
}

fn load_op(src: &str) -> Result<OpFile, String> {
    if let Some(rest) = src.strip_prefix("family:") {
        let (id, param) = match rest.split_once(':') {
            Some((id, p)) => {
                let value = p.strip_prefix("a=").ok_or_else(|| format!("expected a=<rational>, got {p:?}"))?;
                (id, Some(value.parse::<Rational>().map_err(|e| e.to_string())?))
            }
            None => (rest, None),
        };
        let which: FamilyId = id.parse().map_err(|e: crate::triangle::TriangleError| e.to_string())?;
        if which.has_param() && param.is_none() {
            let mut reg = Registry::new();
            let op = family_table(which, None, &mut reg).map_err(|e| e.to_string())?;
            return Ok(OpFile::Poly(op, reg));
        }
        return family_table_rational(which, param.as_ref())
            .map(OpFile::Rational)
            .map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    OpFile::from_json(&text).map_err(|e| format!("{src}: {e}"))
}

fn index_label(indices: &[usize], names: &[String]) -> String {
    let parts: Vec<&str> = indices.iter().map(|&i| names.get(i).map_or("?", String::as_str)).collect();
    format!("({})", parts.join(", "))
}

fn render_report<E: Clone>(rep: &AxiomReport<E>, names: &[String], fmt: impl Fn(&E) -> String) -> String {
    let width = rep.axioms().iter().map(|a| a.len()).max().unwrap_or(0);
    let mut out = String::new();
    for axiom in rep.axioms() {
        match rep.entries.iter().find(|e| e.axiom == axiom && !e.is_zero) {
            None => out.push_str(&format!("  {axiom:<width$}  PASS\n")),
            Some(e) => {
                let res: Vec<String> = e.residual.iter().map(&fmt).collect();
                out.push_str(&format!(
                    "  {axiom:<width$}  FAIL at {}: residual [{}]\n",
                    index_label(&e.indices, names),
                    res.join(", ")
                ));
            }
        }
    }
    out
}

/// Mode axioms plus `x ⊳ 1 = ε(x) 1`.
fn op_suite<R: Ring>(
    h: &HopfStructure,
    ring: R,
    op: &TriangleOp<R::Elem>,
    mode: Mode,
) -> Result<AxiomReport<R::Elem>, String> {
    let ho = HopfOver::new(h, ring).map_err(|e| e.to_string())?;
    let mut rep = check_mode(&ho, op, mode).map_err(|e| e.to_string())?;
    rep.merge(check_counit_absorption(&ho, op).map_err(|e| e.to_string())?);
    Ok(rep)
}

fn cmd_verify(hopf: &str, op: Option<&str>, mode: Mode) -> Result<RunReport, String> {
    let h = load_hopf(hopf)?;
    let hrep = verify_hopf_axioms(&h).map_err(|e| e.to_string())?;
    let names = &h.basis_names;
    let mut human = format!("hopf axioms ({hopf})\n");
    human.push_str(&render_report(&hrep, names, |x| x.to_string()));
    let mut ok = hrep.passed();
    let mut js = json!({"hopf": {"source": hopf, "report": hrep.to_json(|x| x.to_string())}});

    if let Some(src) = op {
        let file = load_op(src)?;
        human.push_str(&format!("operation {src} ({mode})\n"));
        let (passed, text, rjson, ring) = match &file {
            OpFile::Rational(t) => {
                let rep = op_suite(&h, Rationals, t, mode)?;
                let f = |x: &Rational| x.to_string();
                (rep.passed(), render_report(&rep, names, f), rep.to_json(f), json!("rational"))
            }
            OpFile::Poly(t, reg) => {
                let rep = op_suite(&h, PolyRing, t, mode)?;
                let f = |x: &Polynomial| x.display(reg).to_string();
                (rep.passed(), render_report(&rep, names, f), rep.to_json(f), json!("poly"))
            }
            OpFile::Prime(t, field) => {
                let rep = op_suite(&h, *field, t, mode)?;
                let f = |x: &PrimeFieldElement| x.value().to_string();
                (rep.passed(), render_report(&rep, names, f), rep.to_json(f), json!({"prime": field.modulus()}))
            }
        };
        human.push_str(&text);
        ok &= passed;
        js["op"] = json!({"source": src, "ring": ring, "mode": mode, "report": rjson});
    }
    let status = Status::of(ok);
    human.push_str(&format!("result: {}\n", status.label().to_uppercase()));
    js["status"] = json!(status.label());
    Ok(RunReport { status, human, json: js })
}

fn glyphs(unicode: bool) -> ([&'static str; 4], &'static str) {
    if unicode {
        (["1", "g", "ν", "gν"], "⊳")
    } else {
        (["1", "g", "v", "gv"], "|>")
    }
}

fn cmd_families(check: bool, unicode: bool) -> Result<RunReport, String> {
    let (basis, symbol) = glyphs(unicode);
    let h = HopfOver::new(&sweedler_h4(), PolyRing).map_err(|e| e.to_string())?;
    let mut human = String::new();
    let mut list = Vec::new();
    let mut ok = true;
    for which in FamilyId::ALL {
        let mut reg = Registry::new();
        let op = family_table(which, None, &mut reg).map_err(|e| e.to_string())?;
        let params = if which.has_param() { " (parameter: a)" } else { "" };
        human.push_str(&format!("({which}){params}\n"));
        human.push_str(&render_table(&op, &reg, &basis, symbol));
        let cells: Vec<Vec<String>> = (0..4)
            .map(|i| (0..4).map(|j| render_element(op.entry(i, j), &reg, &basis)).collect())
            .collect();
        let mut entry = json!({"family": which.label(), "rows": cells});
        if check {
            let relaxed = check_mode(&h, &op, Mode::Relaxed).map_err(|e| e.to_string())?;
            let absorb = check_counit_absorption(&h, &op).map_err(|e| e.to_string())?;
            let unital = check_unitality(&h, &op).map_err(|e| e.to_string())?;
            let relaxed_ok = relaxed.passed() && absorb.passed();
            ok &= relaxed_ok;
            let witness = unital.first_failure().map(|e| basis[e.indices[0]].to_string());
            human.push_str(&format!("relaxed: {}\n", if relaxed_ok { "PASS" } else { "FAIL" }));
            match &witness {
                None => human.push_str("unitality: PASS (weak)\n"),
                Some(w) => human.push_str(&format!("unitality: FAIL at {w} (relaxed only)\n")),
            }
            entry["relaxed"] = json!(relaxed_ok);
            entry["unital"] = json!(witness.is_none());
            entry["unitality_witness"] = json!(witness);
        }
        human.push('\n');
        list.push(entry);
    }
    let status = Status::of(ok);
    Ok(RunReport {
        status,
        human,
        json: json!({"status": status.label(), "families": list}),
    })
}

fn cmd_classify(opts: ClassifyOptions, unicode: bool) -> Result<RunReport, String> {
    let res = classify(&sweedler_h4(), opts).map_err(|e| e.to_string())?;
    let (basis, symbol) = glyphs(unicode);
    let m = res.match_builtin();
    let unresolved = res.unresolved().count();
    let mut human = format!(
        "mode {}, {}: {} equations, {} branches ({} resolved, {} unresolved), {} maximal families\n\n",
        res.mode,
        res.parameterization,
        res.equations,
        res.branches.len(),
        res.stats.resolved,
        unresolved,
        res.maximal_families.len()
    );
    human.push_str(&res.render(&basis, symbol));
    for (i, label) in &m.pairs {
        human.push_str(&format!("family {} matches ({label})\n", i + 1));
    }
    for i in &m.unmatched_found {
        human.push_str(&format!("family {} matches no built-in table\n", i + 1));
    }
    for l in &m.unmatched_known {
        human.push_str(&format!("built-in ({l}) not found\n"));
    }
    let status = if unresolved > 0 {
        Status::Error
    } else {
        Status::of(m.bijection)
    };
    human.push_str(&format!("result: {}\n", status.label().to_uppercase()));
    let mut js = res.to_json();
    js["match"] = serde_json::to_value(&m).expect("serializable");
    js["status"] = json!(status.label());
    Ok(RunReport { status, human, json: js })
}

fn cmd_enumerate(task: EnumerationTask) -> Result<RunReport, String> {
    let rep = enumerate(&task).map_err(|e| e.to_string())?;
    let families = builtin_families_for(task.mode);
    let diff = compare_with_families(&rep, &families).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = families.iter().map(|(l, _)| l.as_str()).collect();
    let mut human = format!(
        "F_{} {}: {} structures; {} evaluations of families ({})\n",
        rep.prime,
        rep.mode,
        rep.count(),
        diff.expected,
        labels.join(", ")
    );
    for (label, point, _) in &diff.missing {
        human.push_str(&format!("missing: ({label}) at {point:?}\n"));
    }
    for op in &diff.extra {
        let cells: Vec<String> = op.coefficients().map(|x| x.value().to_string()).collect();
        human.push_str(&format!("extra: [{}]\n", cells.join(",")));
    }
    human.push_str(&format!(
        "x |> 1 = e(x) 1 violations: {}\n",
        rep.stats.counit_absorption_failures
    ));
    let ok = diff.is_empty() && rep.stats.counit_absorption_failures == 0;
    let status = Status::of(ok);
    human.push_str(&format!("result: {}\n", status.label().to_uppercase()));
    let mut js = rep.to_json();
    js["missing"] = json!(diff.missing.iter().map(|(l, p, _)| json!({"family": l, "params": p})).collect::<Vec<_>>());
    js["extra"] = json!(diff.extra.len());
    js["status"] = json!(status.label());
    Ok(RunReport { status, human, json: js })
}

fn element_string(h: &HopfStructure, x: &[Rational]) -> String {
    let coeffs: Vec<Polynomial> = x.iter().map(|c| Polynomial::constant(c.clone())).collect();
    let names: Vec<&str> = h.basis_names.iter().map(String::as_str).collect();
    render_element(&coeffs, &Registry::new(), &names)
}

fn cmd_grouplikes(hopf: &str) -> Result<RunReport, String> {
    let h = load_hopf(hopf)?;
    let mut gl = group_likes(&h).map_err(|e| e.to_string())?;
    // by first basis element in the support
    gl.sort_by_key(|x| x.iter().position(|c| !c.is_zero()));
    let shown: Vec<String> = gl.iter().map(|x| element_string(&h, x)).collect();
    Ok(RunReport {
        status: Status::Pass,
        human: format!("G(H) = {{{}}}\n", shown.join(", ")),
        json: json!({"status": "pass", "group_likes": shown}),
    })
}

fn basis_vector(h: &HopfStructure, s: &str) -> Result<Vec<Rational>, String> {
    let i = h
        .basis_index(s)
        .or_else(|| s.parse::<usize>().ok().filter(|&i| i < h.dim))
        .ok_or_else(|| format!("unknown basis element {s:?}"))?;
    let mut v = vec![Rational::zero(); h.dim];
    v[i] = Rational::one();
    Ok(v)
}

fn cmd_primitives(hopf: &str, g: &str, k: &str) -> Result<RunReport, String> {
    let h = load_hopf(hopf)?;
    let gv = basis_vector(&h, g)?;
    let kv = basis_vector(&h, k)?;
    let basis = skew_primitives(&h, &gv, &kv).map_err(|e| e.to_string())?;
    let shown: Vec<String> = basis.iter().map(|x| element_string(&h, x)).collect();
    let human = format!(
        "P_{{{g},{k}}}(H): dimension {}\n{}",
        basis.len(),
        shown.iter().map(|s| format!("  {s}\n")).collect::<String>()
    );
    Ok(RunReport {
        status: Status::Pass,
        human,
        json: json!({"status": "pass", "g": g, "h": k, "dimension": basis.len(), "basis": shown}),
    })
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Result<(), String> {
    if let Some(p) = path {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        std::fs::write(p, s).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Pass,
                _ => Status::Error,
            };
            return RunReport {
                status,
                human: e.render().to_string(),
                json: json!({"status": status.label()}),
            };
        }
    };
    let (result, json_path) = match cli.command {
        Command::Verify { hopf, op, mode, json } => (cmd_verify(&hopf, op.as_deref(), mode), json),
        Command::Families { check, unicode, json } => (cmd_families(check, unicode), json),
        Command::Classify {
            mode,
            param,
            json,
            unicode,
            max_branches,
            max_depth,
        } => {
            let opts = ClassifyOptions {
                mode,
                parameterization: param,
                limits: SolveLimits { max_branches, max_depth },
            };
            (cmd_classify(opts, unicode), json)
        }
        Command::Enumerate {
            prime,
            mode,
            out,
            max_nodes,
        } => (cmd_enumerate(EnumerationTask { prime, mode, max_nodes }), out),
        Command::Grouplikes { hopf } => (cmd_grouplikes(&hopf), None),
        Command::Primitives { g, h, hopf } => (cmd_primitives(&hopf, &g, &h), None),
    };
    match result {
        Ok(rep) => match write_json(&json_path, &rep.json) {
            Ok(()) => rep,
            Err(e) => RunReport::error(e),
        },
        Err(e) => RunReport::error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> RunReport {
        run(std::iter::once("posthopf").chain(args.iter().copied()))
    }

    #[test]
    fn verify_builtin() {
        let r = go(&["verify", "--hopf", "builtin:h4"]);
        assert_eq!(r.status, Status::Pass, "{}", r.human);
        assert!(r.human.contains("antipode_left"));
    }

    #[test]
    fn verify_families() {
        assert_eq!(go(&["verify", "--op", "family:vi"]).status, Status::Pass);
        let r = go(&["verify", "--op", "family:iv", "--mode", "weak"]);
        assert_eq!(r.status, Status::Fail);
        assert!(r.human.contains("unitality"), "{}", r.human);
        assert!(r.human.contains("FAIL at (v)"), "{}", r.human);
        assert_eq!(go(&["verify", "--op", "family:ii:a=-3/2", "--mode", "weak"]).status, Status::Pass);
        assert_eq!(go(&["verify", "--op", "family:i"]).status, Status::Pass);
        assert_eq!(go(&["verify", "--op", "family:iii:a=1"]).status, Status::Error);
        assert_eq!(go(&["verify", "--op", "family:vii"]).status, Status::Error);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert_eq!(go(&["verify", "--hopf", "/nonexistent.json"]).status, Status::Error);
        assert_eq!(go(&["verify", "--bogus"]).status, Status::Error);
        assert_eq!(go(&["enumerate", "--prime", "4"]).status, Status::Error);
        assert_eq!(go(&["primitives", "v", "1"]).status, Status::Error);
        assert_eq!(go(&["--help"]).status, Status::Pass);
    }

    #[test]
    fn families_render() {
        let r = go(&["families", "--unicode"]);
        assert!(r.human.contains("ν  | 0, a-ag, -aν, -agν"), "{}", r.human);
        let r = go(&["families", "--check"]);
        assert_eq!(r.status, Status::Pass);
        assert!(r.human.contains("unitality: FAIL at g"));
        assert_eq!(r.human, go(&["families", "--check"]).human);
    }

    #[test]
    fn primitive_commands() {
        let r = go(&["grouplikes"]);
        assert_eq!(r.human, "G(H) = {1, g}\n");
        let r = go(&["primitives", "g", "1"]);
        assert_eq!(r.human, "P_{g,1}(H): dimension 2\n  -1+g\n  v\n");
        assert_eq!(go(&["primitives", "1", "1"]).json["dimension"], 0);
    }
}
