use super::{ExactError, Field, Ring};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ExactError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                let mut acc = ring.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    ring.add_product(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }
}

/// Reduced row echelon form and its pivot columns (strictly increasing).
pub fn rref<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> (ExactMatrix<F::Elem>, Vec<usize>) {
    let mut rows: Vec<Vec<F::Elem>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    let entries = rows.into_iter().flatten().collect();
    (ExactMatrix { rows: m.rows, cols: m.cols, entries }, pivots)
}

/// Null-space basis read off the RREF: each free column in increasing
/// order contributes the vector with that free variable set to 1 and the
/// other free variables set to 0.
pub fn kernel_basis<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(field, m);
    let free = (0..m.cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![field.zero(); m.cols];
        v[f] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(reduced.get(r, f));
        }
        v
    })
    .collect()
}

pub fn rank<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}
