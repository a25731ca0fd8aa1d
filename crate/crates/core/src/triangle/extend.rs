use super::{GeneratorTable, TriangleError, TriangleOp};
use crate::exactmath::Ring;
use crate::hopf::{HopfOver, G, G_NU, NU, ONE};

/// Complete a Sweedler-algebra operation from its `g` and `v` columns using
/// `x ⊳ 1 = (x1 ⊳ g)(x2 ⊳ g)` and `x ⊳ gv = (x1 ⊳ g)(x2 ⊳ v)`.
///
/// Nothing is checked; any distributive operation agrees with the result.
pub fn extend_generators<R: Ring>(
    h: &HopfOver<R>,
    gt: &GeneratorTable<R::Elem>,
) -> Result<TriangleOp<R::Elem>, TriangleError> {
    let n = h.dim();
    if n != 4 || gt.rows.len() != 4 {
        return Err(TriangleError::Dimension {
            expected: 4,
            found: if n != 4 { n } else { gt.rows.len() },
        });
    }
    for (a, b) in &gt.rows {
        if a.len() != n || b.len() != n {
            return Err(TriangleError::Dimension {
                expected: n,
                found: if a.len() != n { a.len() } else { b.len() },
            });
        }
    }
    let r = h.ring();
    let mut op = TriangleOp::filled(n, r.zero());
    for x in 0..n {
        let mut col1 = h.zero();
        let mut colgv = h.zero();
        for (a, b, c) in h.comul_terms(x) {
            let p = h.mul_unchecked(&gt.rows[*a].0, &gt.rows[*b].0);
            let q = h.mul_unchecked(&gt.rows[*a].0, &gt.rows[*b].1);
            for (o, t) in col1.iter_mut().zip(&p) {
                r.add_product(o, c, t);
            }
            for (o, t) in colgv.iter_mut().zip(&q) {
                r.add_product(o, c, t);
            }
        }
        op.table[x][ONE] = col1;
        op.table[x][G] = gt.rows[x].0.clone();
        op.table[x][NU] = gt.rows[x].1.clone();
        op.table[x][G_NU] = colgv;
    }
    Ok(op)
}
