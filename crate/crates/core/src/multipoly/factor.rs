use super::{Monomial, Polynomial, Var};
use crate::exactmath::Rational;

/// Split `p` into a product of non-constant factors, recognising only:
///
/// 1. a variable dividing every term (`x * (p / x)`),
/// 2. a univariate quadratic with rational roots (two linear factors,
///    larger root first, leading coefficient kept on the first factor).
///
/// Anything else, including quadratics with irrational roots, returns `None`.
pub fn try_factor_split(p: &Polynomial) -> Option<Vec<Polynomial>> {
    if p.is_constant() {
        return None;
    }
    if let Some(split) = split_common_var(p) {
        return Some(split);
    }
    split_rational_quadratic(p)
}

fn split_common_var(p: &Polynomial) -> Option<Vec<Polynomial>> {
    let v = p.vars().into_iter().find(|&v| p.terms.keys().all(|m| m.exponent(v) > 0))?;
    let cofactor = Polynomial::from_terms(
        p.terms
            .iter()
            .map(|(m, c)| (m.div_var(v).expect("v divides every term"), c.clone())),
    );
    if cofactor.is_constant() {
        return None;
    }
    Some(vec![Polynomial::var(v), cofactor])
}

fn split_rational_quadratic(p: &Polynomial) -> Option<Vec<Polynomial>> {
    let vars = p.vars();
    if vars.len() != 1 {
        return None;
    }
    let v: Var = *vars.iter().next()?;
    if p.degree_in(v) != 2 {
        return None;
    }
    let coeff = |e: u32| {
        let m = if e == 0 {
            Monomial::one()
        } else {
            Monomial::from_powers([(v, e)])
        };
        p.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    };
    let (a, b, c) = (coeff(2), coeff(1), coeff(0));
    let disc = &(&b * &b) - &(&Rational::from(4) * &(&a * &c));
    let root = disc.sqrt()?;
    let two_a = &Rational::from(2) * &a;
    let mut r1 = (&-&b + &root).checked_div(&two_a).ok()?;
    let mut r2 = (&-&b - &root).checked_div(&two_a).ok()?;
    if r1 < r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    let x = Polynomial::var(v);
    let first = (&x - &Polynomial::constant(r1)).scale(&a);
    let second = &x - &Polynomial::constant(r2);
    Some(vec![first, second])
}
