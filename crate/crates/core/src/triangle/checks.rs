use super::op::{apply_basis_left, apply_basis_right};
use super::{TriangleError, TriangleOp};
use crate::classifier::Mode;
use crate::exactmath::Ring;
use crate::hopf::{AxiomReport, HopfOver};

fn check_dims<R: Ring>(h: &HopfOver<R>, op: &TriangleOp<R::Elem>) -> Result<(), TriangleError> {
    if h.dim() != op.dim {
        return Err(TriangleError::Dimension {
            expected: h.dim(),
            found: op.dim,
        });
    }
    Ok(())
}

/// `Δ(e_i ⊳ e_j) = (e_i1 ⊳ e_j1) (x) (e_i2 ⊳ e_j2)` and `ε(e_i ⊳ e_j) = ε(e_i) ε(e_j)`.
pub fn check_coalgebra_hom<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    check_dims(h, op)?;
    let r = h.ring();
    let n = op.dim;
    let mut rep = AxiomReport::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = h.comul_unchecked(op.entry(i, j));
            let mut rhs = vec![r.zero(); n * n];
            for (a, b, c) in h.comul_terms(i) {
                for (a2, b2, d) in h.comul_terms(j) {
                    let cd = r.mul(c, d);
                    let left = op.entry(*a, *a2);
                    let right = op.entry(*b, *b2);
                    for (p, x) in left.iter().enumerate() {
                        if r.is_zero(x) {
                            continue;
                        }
                        let w = r.mul(&cd, x);
                        for (q, y) in right.iter().enumerate() {
                            r.add_product(&mut rhs[p * n + q], &w, y);
                        }
                    }
                }
            }
            rep.push(r, "coalgebra_hom", vec![i, j], h.sub(&lhs, &rhs));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let eps = r.sub(
                &h.counit(op.entry(i, j)),
                &r.mul(h.counit_of_basis(i), h.counit_of_basis(j)),
            );
            rep.push(r, "coalgebra_counit", vec![i, j], vec![eps]);
        }
    }
    Ok(rep)
}

/// `x ⊳ (y z) = (x1 ⊳ y)(x2 ⊳ z)` on basis triples.
pub fn check_distributivity<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    check_dims(h, op)?;
    let r = h.ring();
    let n = op.dim;
    let mut rep = AxiomReport::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let jk = h.mul_unchecked(&h.basis(j), &h.basis(k));
                let lhs = apply_basis_left(r, op, i, &jk);
                let mut rhs = h.zero();
                for (a, b, c) in h.comul_terms(i) {
                    let prod = h.mul_unchecked(op.entry(*a, j), op.entry(*b, k));
                    for (o, x) in rhs.iter_mut().zip(&prod) {
                        r.add_product(o, c, x);
                    }
                }
                rep.push(r, "distributivity", vec![i, j, k], h.sub(&lhs, &rhs));
            }
        }
    }
    Ok(rep)
}

/// `x ⊳ (y ⊳ z) = (x1 (x2 ⊳ y)) ⊳ z` on basis triples.
pub fn check_weighted_assoc<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    check_dims(h, op)?;
    let r = h.ring();
    let n = op.dim;
    let mut rep = AxiomReport::new();
    // (x1 (x2 ⊳ y)) depends only on (i, j)
    let weights: Vec<Vec<Vec<R::Elem>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut w = h.zero();
                    for (a, b, c) in h.comul_terms(i) {
                        let prod = h.mul_unchecked(&h.basis(*a), op.entry(*b, j));
                        for (o, x) in w.iter_mut().zip(&prod) {
                            r.add_product(o, c, x);
                        }
                    }
                    w
                })
                .collect()
        })
        .collect();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = apply_basis_left(r, op, i, op.entry(j, k));
                let rhs = apply_basis_right(r, op, &weights[i][j], k);
                rep.push(r, "weighted_assoc", vec![i, j, k], h.sub(&lhs, &rhs));
            }
        }
    }
    Ok(rep)
}

/// `1 ⊳ e_j = e_j`.
pub fn check_unitality<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    check_dims(h, op)?;
    let r = h.ring();
    let mut rep = AxiomReport::new();
    for j in 0..op.dim {
        let lhs = apply_basis_right(r, op, h.unit(), j);
        rep.push(r, "unitality", vec![j], h.sub(&lhs, &h.basis(j)));
    }
    Ok(rep)
}

/// `e_i ⊳ 1 = ε(e_i) 1`.
pub fn check_counit_absorption<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    check_dims(h, op)?;
    let r = h.ring();
    let mut rep = AxiomReport::new();
    for i in 0..op.dim {
        let lhs = apply_basis_left(r, op, i, h.unit());
        let rhs = h.scale(h.counit_of_basis(i), h.unit());
        rep.push(r, "counit_absorption", vec![i], h.sub(&lhs, &rhs));
    }
    Ok(rep)
}

/// The defining axioms for `mode`, in a fixed order: coalgebra
/// homomorphism, distributivity, weighted associativity, then unitality
/// in weak mode.
pub fn check_mode<R: Ring>(
    h: &HopfOver<R>,
    op: &TriangleOp<R::Elem>,
    mode: Mode,
) -> Result<AxiomReport<R::Elem>, TriangleError> {
    let mut rep = check_coalgebra_hom(h, op)?;
    rep.merge(check_distributivity(h, op)?);
    rep.merge(check_weighted_assoc(h, op)?);
    if mode == Mode::Weak {
        rep.merge(check_unitality(h, op)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Rational, Rationals};
    use crate::hopf::{sweedler_h4, G, NU, ONE};

    fn h4() -> HopfOver<Rationals> {
        HopfOver::new(&sweedler_h4(), Rationals).unwrap()
    }

    /// `x ⊳ y := f(x, y)` on basis elements.
    fn op_from(h: &HopfOver<Rationals>, f: impl Fn(usize, usize) -> Vec<Rational>) -> TriangleOp<Rational> {
        let n = h.dim();
        TriangleOp::new(n, (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()).unwrap()
    }

    #[test]
    fn counit_constant_op_passes_everything_but_unitality() {
        let h = h4();
        // x ⊳ y := ε(x) ε(y) 1
        let op = op_from(&h, |i, j| h.scale(&(h.counit_of_basis(i) * h.counit_of_basis(j)), h.unit()));
        assert!(check_coalgebra_hom(&h, &op).unwrap().passed());
        assert!(check_distributivity(&h, &op).unwrap().passed());
        assert!(check_weighted_assoc(&h, &op).unwrap().passed());
        assert!(check_counit_absorption(&h, &op).unwrap().passed());
        assert!(!check_unitality(&h, &op).unwrap().passed());
    }

    #[test]
    fn counit_left_op_is_distributive() {
        let h = h4();
        // x ⊳ y := ε(x) y
        let op = op_from(&h, |i, j| h.scale(h.counit_of_basis(i), &h.basis(j)));
        assert!(check_distributivity(&h, &op).unwrap().passed());
        assert!(check_unitality(&h, &op).unwrap().passed());
    }

    #[test]
    fn minus_one_at_one_g_is_not_a_coalgebra_map() {
        let h = h4();
        // identity-like op (x ⊳ y := ε(x) y) with 1 ⊳ g := -1
        let op = op_from(&h, |i, j| {
            if (i, j) == (ONE, G) {
                h.scale(&Rational::from(-1), h.unit())
            } else {
                h.scale(h.counit_of_basis(i), &h.basis(j))
            }
        });
        let rep = check_coalgebra_hom(&h, &op).unwrap();
        let bad = rep.failures().find(|e| e.axiom == "coalgebra_hom").unwrap();
        assert_eq!(bad.indices, vec![ONE, G]);
        // Δ(-1) - (-1)(x)(-1) = -2 (1 (x) 1)
        assert_eq!(bad.residual[0], Rational::from(-2));
        assert!(bad.residual[1..].iter().all(Rational::is_zero));
    }

    #[test]
    fn case_one_obstruction_fails_weighted_assoc() {
        let h = h4();
        // 1 ⊳ g = 1, g ⊳ g = g, g ⊳ 1 = 1, everything else as x ⊳ y := ε(x) y
        let op = op_from(&h, |i, j| match (i, j) {
            (ONE, G) => h.unit().to_vec(),
            (G, G) => h.basis(G),
            _ => h.scale(h.counit_of_basis(i), &h.basis(j)),
        });
        let rep = check_weighted_assoc(&h, &op).unwrap();
        // g ⊳ (1 ⊳ g) = g ⊳ 1 = 1, but (g (g ⊳ 1)) ⊳ g = g ⊳ g = g
        let e = rep
            .entries
            .iter()
            .find(|e| e.indices == vec![G, ONE, G])
            .unwrap();
        assert!(!e.is_zero);
        assert_eq!(e.residual, vec![1, -1, 0, 0].into_iter().map(Rational::from).collect::<Vec<_>>());
    }

    #[test]
    fn dimension_mismatch() {
        let h = h4();
        let op = TriangleOp::filled(2, Rational::zero());
        assert!(check_distributivity(&h, &op).is_err());
        assert!(check_mode(&h, &op, Mode::Weak).is_err());
        let _ = NU;
    }
}
