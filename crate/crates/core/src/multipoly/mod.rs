//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by monomials in graded
//! lexicographic order (lower indeterminate ids rank higher), so two equal
//! polynomials always have identical term sequences and identical printed
//! forms.

mod factor;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactmath::{ExactError, PrimeFieldElement, Rational, Ring};

pub use factor::try_factor_split;
pub use parse::parse_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("indeterminate {0} has no assigned value")]
    Uncovered(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Indeterminate handle; meaningful only together with the [`Registry`] that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

/// Names for indeterminates. Ids are dense and issued in creation order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the existing indeterminate called `name`, creating it if needed.
    pub fn var(&mut self, name: &str) -> Var {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.names.len() as u32).map(Var)
    }

    /// First name of the sequence `a, b, ..., z, a1, b1, ...` not yet taken.
    pub fn fresh_param_name(&self, skip: usize) -> String {
        let mut seen = 0;
        for round in 0.. {
            for c in 'a'..='z' {
                let name = if round == 0 {
                    c.to_string()
                } else {
                    format!("{c}{round}")
                };
                if self.index.contains_key(&name) {
                    continue;
                }
                if seen == skip {
                    return name;
                }
                seen += 1;
            }
        }
        unreachable!()
    }
}

/// Product of indeterminate powers; exponents are positive, sorted by var.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.0[i].1)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// This monomial with `v` removed entirely.
    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    /// Divide by a single `v`, if `v` divides this monomial.
    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        let i = self.0.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let mut out = self.0.clone();
        if out[i].1 == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    /// Graded lex: higher total degree is larger; ties go to the larger
    /// exponent of the lowest-id indeterminate where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // the monomial holding the lower id has a positive exponent where the other has 0
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients; never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a monomial with coefficient.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, x)| (n.mul(m), x * c)).collect(),
        }
    }

    /// Splits `self = coeff * v + rest` when `self` has degree exactly 1 in `v`.
    pub fn linear_in(&self, v: Var) -> Option<(Polynomial, Polynomial)> {
        if self.degree_in(v) != 1 {
            return None;
        }
        let mut coeff = Polynomial::zero();
        let mut rest = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == 1 {
                coeff.add_term(m.without(v), c);
            } else {
                rest.add_term(m.clone(), c);
            }
        }
        Some((coeff, rest))
    }

    /// Replace every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Polynomial {
        if !self.terms.keys().any(|m| m.exponent(v) > 0) {
            return self.clone();
        }
        let mut powers: Vec<Polynomial> = vec![Polynomial::one()];
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            if e == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let rest = m.without(v);
            for (n, x) in &powers[e].terms {
                out.add_term(n.mul(&rest), &(x * c));
            }
        }
        out
    }

    /// Simultaneous substitution; indeterminates absent from `map` stay as they are.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut acc = Polynomial::constant(c.clone());
            for &(v, e) in &m.0 {
                match map.get(&v) {
                    Some(val) => acc = &acc * &val.pow(e),
                    None => keep.push((v, e)),
                }
            }
            let keep = Monomial(keep);
            for (n, x) in acc.terms {
                out.add_term(n.mul(&keep), &x);
            }
        }
        out
    }

    /// Rename indeterminates; the map must be injective on the vars present.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_powers(m.0.iter().map(|&(v, e)| (f(v), e))), c.clone())),
        )
    }

    /// Evaluate in any ring, given a value for each indeterminate.
    pub fn eval<R: Ring>(
        &self,
        ring: &R,
        mut value: impl FnMut(Var) -> Option<R::Elem>,
        names: Option<&Registry>,
    ) -> Result<R::Elem, PolyError> {
        let mut cache: BTreeMap<Var, R::Elem> = BTreeMap::new();
        for v in self.vars() {
            let x = value(v).ok_or_else(|| {
                PolyError::Uncovered(names.map_or_else(|| format!("#{}", v.0), |r| r.name(v).to_string()))
            })?;
            cache.insert(v, x);
        }
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.from_rational(c)?;
            for &(v, e) in &m.0 {
                for _ in 0..e {
                    t = ring.mul(&t, &cache[&v]);
                }
            }
            ring.add_assign(&mut acc, &t);
        }
        Ok(acc)
    }

    /// Image under `Q -> F_p` followed by the given assignment.
    pub fn evaluate_mod_p(
        &self,
        modulus: u64,
        assignment: &BTreeMap<Var, PrimeFieldElement>,
    ) -> Result<PrimeFieldElement, PolyError> {
        let field = crate::exactmath::PrimeField::new(modulus)?;
        for x in assignment.values() {
            if x.modulus() != modulus {
                return Err(ExactError::MixedFields(modulus, x.modulus()).into());
            }
        }
        self.eval(&field, |v| assignment.get(&v).copied(), None)
    }

    pub fn display<'a>(&'a self, reg: &'a Registry) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, reg }
    }
}

impl Ord for Polynomial {
    /// Compare term sequences from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in &m.0 {
                write!(f, "*#{}^{}", v.0, e)?;
            }
        }
        Ok(())
    }
}

/// Canonical printed form, following the polynomial string grammar.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    reg: &'a Registry,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if m.is_one() || !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for &(v, e) in &m.0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.reg.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Ring context for polynomial coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PolyRing;

impl Ring for PolyRing {
    type Elem = Polynomial;

    fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }
    fn one(&self) -> Polynomial {
        Polynomial::one()
    }
    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }
    fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a - b
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        -a
    }
    fn from_rational(&self, r: &Rational) -> Result<Polynomial, ExactError> {
        Ok(Polynomial::constant(r.clone()))
    }
    fn add_assign(&self, acc: &mut Polynomial, b: &Polynomial) {
        for (m, c) in &b.terms {
            acc.add_term(m.clone(), c);
        }
    }
    fn add_product(&self, acc: &mut Polynomial, a: &Polynomial, b: &Polynomial) {
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                acc.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
    }
}
