//! Small dense matrices over a [`Scalar`] field.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix with an explicit shape; needed when a dimension is zero.
    pub fn from_shape(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &a.mul_ref(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &a.mul_ref(x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> F {
        self.data
            .iter()
            .map(Scalar::magnitude)
            .fold(F::zero(), |m, x| if x > m { x } else { m })
    }

    /// Row-reduced echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // largest magnitude pivot; for exact arithmetic any nonzero would do
            let mut best: Option<(usize, f64)> = None;
            for i in r..m.rows {
                let v = m.get(i, c);
                if !v.is_zero() {
                    let a = v.to_f64().abs();
                    if best.is_none_or(|(_, b)| a > b) {
                        best = Some((i, a));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            m.swap_rows(r, p);
            let inv = F::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(r, j).mul_ref(&f);
                    if !v.is_zero() {
                        m.data[i * m.cols + j] -= &v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// A generalized inverse `G` with `self * G * self = self`.
    ///
    /// Built from the row reduction of `[self | I]`: for `b` in the column
    /// space, `G b` is the solution supported on the pivot columns.
    pub fn generalized_inverse(&self) -> Self {
        let (m, n) = (self.rows, self.cols);
        let mut aug = Self::zeros(m, n + m);
        for i in 0..m {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        let mut g = Self::zeros(n, m);
        for (row, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                break;
            }
            for j in 0..m {
                g.set(pc, j, r.get(row, n + j).clone());
            }
        }
        g
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        self.inverse()?.mul_vec(b)
    }

    /// Symmetric positive definiteness via the pivots of an LDLᵀ sweep.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut m = self.clone();
        for k in 0..n {
            let p = m.get(k, k).clone();
            if p <= F::zero() {
                return false;
            }
            for i in k + 1..n {
                let f = m.get(i, k).clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(k, j).mul_ref(&f);
                    m.data[i * n + j] -= &v;
                }
            }
        }
        true
    }
}

impl Matrix<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> Matrix<G> {
        self.map(G::from_rational)
    }
}

/// Bilinear form value `uᵀ G v`.
pub fn bilinear<F: Scalar>(g: &Matrix<F>, u: &[F], v: &[F]) -> F {
    let mut acc = F::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            let gij = g.get(i, j);
            if !vj.is_zero() && !gij.is_zero() {
                acc += &ui.mul_ref(gij).mul_ref(vj);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_traits::Zero;

    #[test]
    fn generalized_inverse_reproduces() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]]).unwrap();
        let g = m.generalized_inverse();
        assert_eq!(m.mul(&g).unwrap().mul(&m).unwrap(), m);
        let m = Matrix::from_rows(vec![vec![int(0)], vec![int(1)]]).unwrap();
        let g = m.generalized_inverse();
        assert_eq!(m.mul(&g).unwrap().mul(&m).unwrap(), m);
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn singular_is_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn definiteness() {
        assert!(m(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!m(&[&[1, 0], &[0, 0]]).is_positive_definite());
        let half = Matrix::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        assert!(half.is_positive_definite());
    }
}

/// Dense rank-3 array `t[a][b][k]` describing a bilinear map
/// `R^left x R^right -> R^out`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<F = Rational> {
    left: usize,
    right: usize,
    out: usize,
    data: Vec<F>,
}

impl<F: Scalar> Tensor3<F> {
    pub fn zeros(left: usize, right: usize, out: usize) -> Self {
        Tensor3 { left, right, out, data: vec![F::zero(); left * right * out] }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    fn idx(&self, a: usize, b: usize, k: usize) -> usize {
        debug_assert!(a < self.left && b < self.right && k < self.out);
        (a * self.right + b) * self.out + k
    }

    pub fn get(&self, a: usize, b: usize, k: usize) -> &F {
        &self.data[self.idx(a, b, k)]
    }

    pub fn set(&mut self, a: usize, b: usize, k: usize, v: F) {
        let i = self.idx(a, b, k);
        self.data[i] = v;
    }

    pub fn add_to(&mut self, a: usize, b: usize, k: usize, v: &F) {
        let i = self.idx(a, b, k);
        self.data[i] += v;
    }

    /// Output vector for basis inputs `e_a`, `e_b`.
    pub fn fiber(&self, a: usize, b: usize) -> &[F] {
        let s = (a * self.right + b) * self.out;
        &self.data[s..s + self.out]
    }

    pub fn apply(&self, u: &[F], v: &[F]) -> Vec<F> {
        assert_eq!(u.len(), self.left);
        assert_eq!(v.len(), self.right);
        let mut out = vec![F::zero(); self.out];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let s = ua.mul_ref(vb);
                for (k, t) in self.fiber(a, b).iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &s.mul_ref(t);
                    }
                }
            }
        }
        out
    }

    /// Nonzero entries as `(a, b, k, value)`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, F)> {
        let mut v = Vec::new();
        for a in 0..self.left {
            for b in 0..self.right {
                for k in 0..self.out {
                    let t = self.get(a, b, k);
                    if !t.is_zero() {
                        v.push((a, b, k, t.clone()));
                    }
                }
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Tensor3<G> {
        Tensor3 {
            left: self.left,
            right: self.right,
            out: self.out,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// The linear map `v -> t(e_a, v)` as an `out x right` matrix.
    pub fn left_slice(&self, a: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.out, self.right);
        for b in 0..self.right {
            for k in 0..self.out {
                m.set(k, b, self.get(a, b, k).clone());
            }
        }
        m
    }
}

impl Tensor3<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> Tensor3<G> {
        self.map(G::from_rational)
    }
}
