use super::HopfStructure;
use crate::exactmath::Rational;

pub const ONE: usize = 0;
pub const G: usize = 1;
pub const NU: usize = 2;
pub const G_NU: usize = 3;

pub const H4_BASIS: [&str; 4] = ["1", "g", "v", "gv"];

/// Sweedler's four-dimensional Hopf algebra: `g^2 = 1`, `v^2 = 0`,
/// `gv = -vg`, with `g` group-like and `Δ(v) = g (x) v + v (x) 1`.
pub fn sweedler_h4() -> HopfStructure {
    let n = 4;
    let zero = || vec![Rational::zero(); n];
    let vec_with = |entries: &[(usize, i64)]| {
        let mut v = zero();
        for &(k, c) in entries {
            v[k] = Rational::from(c);
        }
        v
    };

    // products of basis elements, written as (basis index, coefficient)
    let table: [[&[(usize, i64)]; 4]; 4] = [
        [&[(ONE, 1)], &[(G, 1)], &[(NU, 1)], &[(G_NU, 1)]],
        [&[(G, 1)], &[(ONE, 1)], &[(G_NU, 1)], &[(NU, 1)]],
        [&[(NU, 1)], &[(G_NU, -1)], &[], &[]],
        [&[(G_NU, 1)], &[(NU, -1)], &[], &[]],
    ];
    let mul = table
        .iter()
        .map(|row| row.iter().map(|e| vec_with(e)).collect())
        .collect();

    let coproducts: [&[(usize, usize, i64)]; 4] = [
        &[(ONE, ONE, 1)],
        &[(G, G, 1)],
        &[(G, NU, 1), (NU, ONE, 1)],
        &[(ONE, G_NU, 1), (G_NU, G, 1)],
    ];
    let comul = coproducts
        .iter()
        .map(|terms| {
            let mut t = vec![zero(); n];
            for &(j, k, c) in terms.iter() {
                t[j][k] = Rational::from(c);
            }
            t
        })
        .collect();

    HopfStructure {
        dim: n,
        basis_names: H4_BASIS.iter().map(|s| s.to_string()).collect(),
        mul,
        unit: vec_with(&[(ONE, 1)]),
        comul,
        counit: vec_with(&[(ONE, 1), (G, 1)]),
        antipode: vec![
            vec_with(&[(ONE, 1)]),
            vec_with(&[(G, 1)]),
            vec_with(&[(G_NU, -1)]),
            vec_with(&[(NU, 1)]),
        ],
    }
}
