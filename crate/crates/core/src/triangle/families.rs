use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use super::{check_mode, TriangleError, TriangleOp};
use crate::classifier::Mode;
use crate::exactmath::Rational;
use crate::hopf::{sweedler_h4, HopfOver};
use crate::multipoly::{parse_polynomial, PolyRing, Polynomial, Registry};

/// The six operation tables on the Sweedler algebra, as coefficient vectors
/// over the basis `1, g, v, gv`, with the parameter written `a`.
pub const FAMILIES_JSON: &str = include_str!("../../data/families.json");

/// SHA-256 of [`FAMILIES_JSON`]; a test pins the file to this value.
pub const FAMILIES_SHA256: &str = "cba556f9bca6b4066ed97702be8360ec46b41d288204106d8f6c9d0bebf9b5b5";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl FamilyId {
    pub const ALL: [FamilyId; 6] = [FamilyId::I, FamilyId::II, FamilyId::III, FamilyId::IV, FamilyId::V, FamilyId::VI];

    pub fn label(self) -> &'static str {
        match self {
            FamilyId::I => "i",
            FamilyId::II => "ii",
            FamilyId::III => "iii",
            FamilyId::IV => "iv",
            FamilyId::V => "v",
            FamilyId::VI => "vi",
        }
    }

    pub fn has_param(self) -> bool {
        matches!(self, FamilyId::I | FamilyId::II)
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).expect("listed")
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FamilyId {
    type Err = TriangleError;
    fn from_str(s: &str) -> Result<Self, TriangleError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').to_ascii_lowercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.label() == t)
            .ok_or_else(|| TriangleError::UnknownFamily(s.to_string()))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    basis: Vec<String>,
    families: Vec<FamilyEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyEntry {
    id: String,
    param: Option<String>,
    table: Vec<Vec<Vec<String>>>,
}

fn load() -> FamilyFile {
    let f: FamilyFile = serde_json::from_str(FAMILIES_JSON).expect("embedded family data is valid");
    debug_assert_eq!(f.basis, ["1", "g", "v", "gv"]);
    f
}

/// The table of family `which`. The parameter `a` of families (i) and (ii)
/// becomes `param` when given, otherwise the indeterminate `a` of `reg`.
pub fn family_table(
    which: FamilyId,
    param: Option<&Polynomial>,
    reg: &mut Registry,
) -> Result<TriangleOp<Polynomial>, TriangleError> {
    if param.is_some() && !which.has_param() {
        return Err(TriangleError::UnexpectedParameter(which));
    }
    let file = load();
    let entry = &file.families[which.index()];
    debug_assert_eq!(entry.id, which.label());
    let value = match (param, &entry.param) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(name)) => Some(Polynomial::var(reg.var(name))),
        (None, None) => None,
    };
    let mut scratch = Registry::new();
    let raw = TriangleOp::new(file.basis.len(), entry.table.clone())?;
    let op = raw.try_map(|s| parse_polynomial(s, &mut scratch))?;
    Ok(match (scratch.lookup("a"), value) {
        (Some(a), Some(val)) => op.map(|p| p.substitute(a, &val)),
        _ => op,
    })
}

/// Family `which` with rational entries; families (i) and (ii) require a
/// parameter value.
pub fn family_table_rational(which: FamilyId, param: Option<&Rational>) -> Result<TriangleOp<Rational>, TriangleError> {
    if which.has_param() && param.is_none() {
        return Err(TriangleError::MissingParameter(which));
    }
    let p = param.map(|c| Polynomial::constant(c.clone()));
    let op = family_table(which, p.as_ref(), &mut Registry::new())?;
    Ok(op.map(|p| p.as_constant().expect("constant entries")))
}

/// Whether family `which`, with its parameter left symbolic, satisfies the
/// `mode` axioms on the Sweedler algebra.
pub fn family_satisfies(which: FamilyId, mode: Mode) -> bool {
    let h = HopfOver::new(&sweedler_h4(), PolyRing).expect("built-in structure");
    let op = family_table(which, None, &mut Registry::new()).expect("built-in family");
    check_mode(&h, &op, mode).expect("matching dimensions").passed()
}
