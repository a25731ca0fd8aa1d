use super::{HopfError, HopfStructure};
use crate::exactmath::Ring;

/// A Hopf structure with its constants mapped into the ring `R`, stored
/// sparsely for the checkers' inner loops.
#[derive(Clone, Debug)]
pub struct HopfOver<R: Ring> {
    ring: R,
    dim: usize,
    /// `mul[i * n + j]` lists `(k, c)` with `e_i e_j = sum c e_k`.
    mul: Vec<Vec<(usize, R::Elem)>>,
    /// `comul[i]` lists `(j, k, c)` with `Δ(e_i) = sum c e_j (x) e_k`.
    comul: Vec<Vec<(usize, usize, R::Elem)>>,
    unit: Vec<R::Elem>,
    counit: Vec<R::Elem>,
    antipode: Vec<Vec<R::Elem>>,
}

impl<R: Ring> HopfOver<R> {
    pub fn new(h: &HopfStructure, ring: R) -> Result<Self, HopfError> {
        h.validate_shape()?;
        let n = h.dim;
        let conv = |v: &[crate::exactmath::Rational]| -> Result<Vec<R::Elem>, HopfError> {
            v.iter().map(|x| Ok(ring.from_rational(x)?)).collect()
        };
        let mut mul = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut entry = Vec::new();
                for (k, c) in h.mul[i][j].iter().enumerate() {
                    let c = ring.from_rational(c)?;
                    if !ring.is_zero(&c) {
                        entry.push((k, c));
                    }
                }
                mul.push(entry);
            }
        }
        let mut comul = Vec::with_capacity(n);
        for i in 0..n {
            let mut entry = Vec::new();
            for j in 0..n {
                for k in 0..n {
                    let c = ring.from_rational(&h.comul[i][j][k])?;
                    if !ring.is_zero(&c) {
                        entry.push((j, k, c));
                    }
                }
            }
            comul.push(entry);
        }
        Ok(HopfOver {
            dim: n,
            mul,
            comul,
            unit: conv(&h.unit)?,
            counit: conv(&h.counit)?,
            antipode: h.antipode.iter().map(|r| conv(r)).collect::<Result<_, _>>()?,
            ring,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&self) -> Vec<R::Elem> {
        vec![self.ring.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[i] = self.ring.one();
        v
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    pub fn counit_vector(&self) -> &[R::Elem] {
        &self.counit
    }

    pub fn counit_of_basis(&self, i: usize) -> &R::Elem {
        &self.counit[i]
    }

    pub fn comul_terms(&self, i: usize) -> &[(usize, usize, R::Elem)] {
        &self.comul[i]
    }

    pub fn mul_terms(&self, i: usize, j: usize) -> &[(usize, R::Elem)] {
        &self.mul[i * self.dim + j]
    }

    fn check_len(&self, what: &str, v: &[R::Elem], expected: usize) -> Result<(), HopfError> {
        if v.len() != expected {
            return Err(HopfError::Dimension {
                what: what.to_string(),
                expected,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>, HopfError> {
        self.check_len("left factor", a, self.dim)?;
        self.check_len("right factor", b, self.dim)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if r.is_zero(y) {
                    continue;
                }
                let xy = r.mul(x, y);
                for (k, c) in self.mul_terms(i, j) {
                    r.add_product(&mut out[*k], &xy, c);
                }
            }
        }
        out
    }

    pub fn comultiply(&self, a: &[R::Elem]) -> Result<Vec<R::Elem>, HopfError> {
        self.check_len("element", a, self.dim)?;
        Ok(self.comul_unchecked(a))
    }

    pub(crate) fn comul_unchecked(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.dim;
        let mut out = vec![r.zero(); n * n];
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, k, c) in &self.comul[i] {
                r.add_product(&mut out[j * n + k], x, c);
            }
        }
        out
    }

    pub fn counit(&self, a: &[R::Elem]) -> R::Elem {
        let mut acc = self.ring.zero();
        for (x, e) in a.iter().zip(&self.counit) {
            self.ring.add_product(&mut acc, x, e);
        }
        acc
    }

    pub fn antipode(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = self.zero();
        for (x, row) in a.iter().zip(&self.antipode) {
            for (o, s) in out.iter_mut().zip(row) {
                r.add_product(o, x, s);
            }
        }
        out
    }

    /// `a (x) b` as a flat `n^2` vector.
    pub fn tensor(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(if r.is_zero(x) || r.is_zero(y) { r.zero() } else { r.mul(x, y) });
            }
        }
        out
    }

    /// Product in the algebra `H (x) H`.
    pub fn tensor_mul(&self, s: &[R::Elem], t: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.dim;
        let mut out = vec![r.zero(); n * n];
        for (p, x) in s.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            let (i1, i2) = (p / n, p % n);
            for (q, y) in t.iter().enumerate() {
                if r.is_zero(y) {
                    continue;
                }
                let (j1, j2) = (q / n, q % n);
                let xy = r.mul(x, y);
                for (k1, c1) in self.mul_terms(i1, j1) {
                    let w = r.mul(&xy, c1);
                    for (k2, c2) in self.mul_terms(i2, j2) {
                        r.add_product(&mut out[k1 * n + k2], &w, c2);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem, v: &[R::Elem]) -> Vec<R::Elem> {
        v.iter().map(|x| self.ring.mul(c, x)).collect()
    }

    pub fn sub(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.ring.sub(x, y)).collect()
    }

    pub fn add(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect()
    }

    pub fn is_zero_vec(&self, v: &[R::Elem]) -> bool {
        v.iter().all(|x| self.ring.is_zero(x))
    }
}
