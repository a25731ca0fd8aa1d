use serde_json::{json, Value};

use super::{HopfError, HopfOver, HopfStructure};
use crate::exactmath::{Rational, Rationals, Ring};

/// One residual: the difference of the two sides of an axiom at the given
/// basis indices, as a coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomEntry<E> {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub residual: Vec<E>,
    pub is_zero: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<E> {
    pub entries: Vec<AxiomEntry<E>>,
}

impl<E> Default for AxiomReport<E> {
    fn default() -> Self {
        AxiomReport { entries: Vec::new() }
    }
}

impl<E: Clone> AxiomReport<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<R: Ring<Elem = E>>(&mut self, ring: &R, axiom: &'static str, indices: Vec<usize>, residual: Vec<E>) {
        let is_zero = residual.iter().all(|x| ring.is_zero(x));
        self.entries.push(AxiomEntry {
            axiom,
            indices,
            residual,
            is_zero,
        });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry<E>> {
        self.entries.iter().filter(|e| !e.is_zero)
    }

    pub fn first_failure(&self) -> Option<&AxiomEntry<E>> {
        self.failures().next()
    }

    pub fn merge(&mut self, other: AxiomReport<E>) {
        self.entries.extend(other.entries);
    }

    /// Distinct axiom ids in first-appearance order.
    pub fn axioms(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.axiom) {
                out.push(e.axiom);
            }
        }
        out
    }

    pub fn passed_axiom(&self, axiom: &str) -> bool {
        self.entries.iter().filter(|e| e.axiom == axiom).all(|e| e.is_zero)
    }

    /// JSON summary: per-axiom pass flag plus every failing residual.
    pub fn to_json(&self, fmt: impl Fn(&E) -> String) -> Value {
        let failures: Vec<Value> = self
            .failures()
            .map(|e| {
                json!({
                    "axiom": e.axiom,
                    "indices": e.indices,
                    "residual": e.residual.iter().map(&fmt).collect::<Vec<_>>(),
                })
            })
            .collect();
        let axioms: Vec<Value> = self
            .axioms()
            .into_iter()
            .map(|a| json!({"axiom": a, "passed": self.passed_axiom(a)}))
            .collect();
        json!({"passed": self.passed(), "axioms": axioms, "failures": failures})
    }
}

/// Residuals of every Hopf algebra axiom on basis elements.
pub fn verify_hopf_axioms(h: &HopfStructure) -> Result<AxiomReport<Rational>, HopfError> {
    let ho = HopfOver::new(h, Rationals)?;
    Ok(verify_over(&ho))
}

pub fn verify_over<R: Ring>(h: &HopfOver<R>) -> AxiomReport<R::Elem> {
    let r = h.ring();
    let n = h.dim();
    let mut rep = AxiomReport::new();
    let b = |i| h.basis(i);
    let one = h.unit().to_vec();

    for i in 0..n {
        for j in 0..n {
            let ij = h.mul_unchecked(&b(i), &b(j));
            for k in 0..n {
                let lhs = h.mul_unchecked(&ij, &b(k));
                let rhs = h.mul_unchecked(&b(i), &h.mul_unchecked(&b(j), &b(k)));
                rep.push(r, "associativity", vec![i, j, k], h.sub(&lhs, &rhs));
            }
        }
    }
    for i in 0..n {
        rep.push(r, "unit_left", vec![i], h.sub(&h.mul_unchecked(&one, &b(i)), &b(i)));
        rep.push(r, "unit_right", vec![i], h.sub(&h.mul_unchecked(&b(i), &one), &b(i)));
    }

    for i in 0..n {
        // (Δ ⊗ id)Δ(e_i) and (id ⊗ Δ)Δ(e_i) as n^3 vectors
        let mut left = vec![r.zero(); n * n * n];
        let mut right = vec![r.zero(); n * n * n];
        for (j, k, c) in h.comul_terms(i) {
            for (a, bb, d) in h.comul_terms(*j) {
                r.add_product(&mut left[(a * n + bb) * n + k], c, d);
            }
            for (a, bb, d) in h.comul_terms(*k) {
                r.add_product(&mut right[(j * n + a) * n + bb], c, d);
            }
        }
        rep.push(r, "coassociativity", vec![i], h.sub(&left, &right));

        let mut cl = h.zero();
        let mut cr = h.zero();
        for (j, k, c) in h.comul_terms(i) {
            r.add_product(&mut cl[*k], c, h.counit_of_basis(*j));
            r.add_product(&mut cr[*j], c, h.counit_of_basis(*k));
        }
        rep.push(r, "counit_left", vec![i], h.sub(&cl, &b(i)));
        rep.push(r, "counit_right", vec![i], h.sub(&cr, &b(i)));
    }

    for i in 0..n {
        let di = h.comul_unchecked(&b(i));
        for j in 0..n {
            let ij = h.mul_unchecked(&b(i), &b(j));
            let dj = h.comul_unchecked(&b(j));
            rep.push(
                r,
                "comul_multiplicative",
                vec![i, j],
                h.sub(&h.comul_unchecked(&ij), &h.tensor_mul(&di, &dj)),
            );
            let eps = r.sub(&h.counit(&ij), &r.mul(h.counit_of_basis(i), h.counit_of_basis(j)));
            rep.push(r, "counit_multiplicative", vec![i, j], vec![eps]);
        }
    }
    rep.push(r, "comul_unit", vec![], h.sub(&h.comul_unchecked(&one), &h.tensor(&one, &one)));
    rep.push(r, "counit_unit", vec![], vec![r.sub(&h.counit(&one), &r.one())]);

    for i in 0..n {
        let mut left = h.zero();
        let mut right = h.zero();
        for (j, k, c) in h.comul_terms(i) {
            let sl = h.mul_unchecked(&h.antipode(&b(*j)), &b(*k));
            let sr = h.mul_unchecked(&b(*j), &h.antipode(&b(*k)));
            for t in 0..n {
                r.add_product(&mut left[t], c, &sl[t]);
                r.add_product(&mut right[t], c, &sr[t]);
            }
        }
        let target = h.scale(h.counit_of_basis(i), &one);
        rep.push(r, "antipode_left", vec![i], h.sub(&left, &target));
        rep.push(r, "antipode_right", vec![i], h.sub(&right, &target));
    }
    rep
}
