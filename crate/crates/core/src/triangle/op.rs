use serde_json::{json, Value};

use super::TriangleError;
use crate::exactmath::{PrimeField, PrimeFieldElement, Rational, Ring};
use crate::hopf::HopfOver;
use crate::multipoly::{parse_polynomial, Polynomial, Registry};

/// A bilinear operation `⊳` given on basis pairs: `table[i][j]` is the
/// coefficient vector of `e_i ⊳ e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleOp<E> {
    pub dim: usize,
    pub table: Vec<Vec<Vec<E>>>,
}

/// Values on the generators `g` and `v` of the Sweedler algebra:
/// `rows[x] = (x ⊳ g, x ⊳ v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable<E> {
    pub rows: Vec<(Vec<E>, Vec<E>)>,
}

impl<E: Clone> TriangleOp<E> {
    pub fn new(dim: usize, table: Vec<Vec<Vec<E>>>) -> Result<Self, TriangleError> {
        let bad = |found| TriangleError::Dimension { expected: dim, found };
        if table.len() != dim {
            return Err(bad(table.len()));
        }
        for row in &table {
            if row.len() != dim {
                return Err(bad(row.len()));
            }
            for v in row {
                if v.len() != dim {
                    return Err(bad(v.len()));
                }
            }
        }
        Ok(TriangleOp { dim, table })
    }

    pub fn filled(dim: usize, value: E) -> Self {
        TriangleOp {
            dim,
            table: vec![vec![vec![value; dim]; dim]; dim],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &[E] {
        &self.table[i][j]
    }

    pub fn map<F>(&self, mut f: impl FnMut(&E) -> F) -> TriangleOp<F> {
        TriangleOp {
            dim: self.dim,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(&mut f).collect()).collect())
                .collect(),
        }
    }

    pub fn try_map<F, Err>(&self, mut f: impl FnMut(&E) -> Result<F, Err>) -> Result<TriangleOp<F>, Err> {
        let mut table = Vec::with_capacity(self.dim);
        for row in &self.table {
            let mut r = Vec::with_capacity(self.dim);
            for v in row {
                r.push(v.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?);
            }
            table.push(r);
        }
        Ok(TriangleOp { dim: self.dim, table })
    }

    /// All coefficients in row-major `(i, j, k)` order.
    pub fn coefficients(&self) -> impl Iterator<Item = &E> {
        self.table.iter().flatten().flatten()
    }

    /// Columns `g` and `v` of a Sweedler-algebra operation.
    pub fn generator_table(&self) -> GeneratorTable<E> {
        use crate::hopf::{G, NU};
        GeneratorTable {
            rows: (0..self.dim)
                .map(|x| (self.table[x][G].clone(), self.table[x][NU].clone()))
                .collect(),
        }
    }

    /// Serialize as `{"dim", "ring", "table"}` with entries printed by `fmt`.
    pub fn to_json_with(&self, ring_tag: Value, fmt: impl Fn(&E) -> String) -> Value {
        let table: Vec<Vec<Vec<String>>> = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(&fmt).collect()).collect())
            .collect();
        json!({"dim": self.dim, "ring": ring_tag, "table": table})
    }
}

/// `x ⊳ y`, extended bilinearly from the table.
pub fn apply<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
    x: &[R::Elem],
    y: &[R::Elem],
) -> Result<Vec<R::Elem>, TriangleError> {
    let n = op.dim;
    if h.dim() != n || x.len() != n || y.len() != n {
        return Err(TriangleError::Dimension {
            expected: h.dim(),
            found: if x.len() != n { x.len() } else if y.len() != n { y.len() } else { n },
        });
    }
    Ok(apply_unchecked(h.ring(), op, x, y))
}

pub(crate) fn apply_unchecked<R: Ring>(ring: &R, op: &TriangleOp<R::Elem>, x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
    let n = op.dim;
    let mut out = vec![ring.zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if ring.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if ring.is_zero(yj) {
                continue;
            }
            let c = ring.mul(xi, yj);
            for (o, t) in out.iter_mut().zip(&op.table[i][j]) {
                ring.add_product(o, &c, t);
            }
        }
    }
    out
}

/// `e_i ⊳ y` for a basis element on the left.
pub(crate) fn apply_basis_left<R: Ring>(ring: &R, op: &TriangleOp<R::Elem>, i: usize, y: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); op.dim];
    for (j, yj) in y.iter().enumerate() {
        if ring.is_zero(yj) {
            continue;
        }
        for (o, t) in out.iter_mut().zip(&op.table[i][j]) {
            ring.add_product(o, yj, t);
        }
    }
    out
}

/// `x ⊳ e_k` for a basis element on the right.
pub(crate) fn apply_basis_right<R: Ring>(ring: &R, op: &TriangleOp<R::Elem>, x: &[R::Elem], k: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); op.dim];
    for (i, xi) in x.iter().enumerate() {
        if ring.is_zero(xi) {
            continue;
        }
        for (o, t) in out.iter_mut().zip(&op.table[i][k]) {
            ring.add_product(o, xi, t);
        }
    }
    out
}

/// An operation file in any of the supported coefficient rings.
#[derive(Clone, Debug)]
pub enum OpFile {
    Rational(TriangleOp<Rational>),
    Poly(TriangleOp<Polynomial>, Registry),
    Prime(TriangleOp<PrimeFieldElement>, PrimeField),
}

impl OpFile {
    pub fn from_json(s: &str) -> Result<Self, TriangleError> {
        let v: Value = serde_json::from_str(s)?;
        let bad = |m: &str| TriangleError::Format(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("top level must be an object"))?;
        for key in obj.keys() {
            if !["dim", "ring", "table"].contains(&key.as_str()) {
                return Err(bad(&format!("unknown field {key:?}")));
            }
        }
        let dim = obj.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let raw: Vec<Vec<Vec<String>>> =
            serde_json::from_value(obj.get("table").cloned().ok_or_else(|| bad("missing table"))?)?;
        let raw = TriangleOp::new(dim, raw)?;
        match obj.get("ring") {
            Some(Value::String(s)) if s == "rational" => {
                Ok(OpFile::Rational(raw.try_map(|s| s.parse::<Rational>())?))
            }
            Some(Value::String(s)) if s == "poly" => {
                let mut reg = Registry::new();
                let op = raw.try_map(|s| parse_polynomial(s, &mut reg))?;
                Ok(OpFile::Poly(op, reg))
            }
            Some(Value::Object(m)) if m.len() == 1 && m.contains_key("prime") => {
                let p = m["prime"].as_u64().ok_or_else(|| bad("prime must be an integer"))?;
                let field = PrimeField::new(p)?;
                let op = raw.try_map(|s| {
                    let v: u64 = s.trim().parse().map_err(|_| bad(&format!("bad residue {s:?}")))?;
                    if v >= p {
                        return Err(bad(&format!("residue {v} not reduced mod {p}")));
                    }
                    Ok(field.element(v as i64))
                })?;
                Ok(OpFile::Prime(op, field))
            }
            _ => Err(bad("ring must be \"rational\", \"poly\" or {\"prime\": p}")),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            OpFile::Rational(op) => op.to_json_with(json!("rational"), |x| x.to_string()),
            OpFile::Poly(op, reg) => op.to_json_with(json!("poly"), |x| x.display(reg).to_string()),
            OpFile::Prime(op, f) => op.to_json_with(json!({"prime": f.modulus()}), |x| x.value().to_string()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            OpFile::Rational(op) => op.dim,
            OpFile::Poly(op, _) => op.dim,
            OpFile::Prime(op, _) => op.dim,
        }
    }
}

/// Render an element as e.g. `a-ag` or `-agv` using the basis names.
pub fn render_element(coeffs: &[Polynomial], reg: &Registry, basis: &[&str]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        let compact = c.display(reg).to_string().replace([' ', '*'], "");
        let term = if *name == "1" {
            if c.num_terms() > 1 && !out.is_empty() {
                format!("({compact})")
            } else {
                compact
            }
        } else if c.as_constant().is_some_and(|x| x.is_one()) {
            name.to_string()
        } else if c.as_constant().is_some_and(|x| (-x).is_one()) {
            format!("-{name}")
        } else if c.num_terms() == 1 {
            format!("{compact}{name}")
        } else {
            format!("({compact}){name}")
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The multiplication-table layout: one line per row element, cells
/// `x ⊳ 1, x ⊳ g, ...` separated by `, `.
pub fn render_table(op: &TriangleOp<Polynomial>, reg: &Registry, basis: &[&str], symbol: &str) -> String {
    let width = basis.iter().map(|b| b.chars().count()).max().unwrap_or(1).max(symbol.chars().count());
    let pad = |s: &str| format!("{s}{}", " ".repeat(width - s.chars().count()));
    let mut out = format!("{} | {}\n", pad(symbol), basis.join(", "));
    for (i, name) in basis.iter().enumerate() {
        let cells: Vec<String> = (0..op.dim).map(|j| render_element(&op.table[i][j], reg, basis)).collect();
        out.push_str(&format!("{} | {}\n", pad(name), cells.join(", ")));
    }
    out
}
