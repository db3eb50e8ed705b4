//! Matrices with jet-scalar entries: the workhorse representation for
//! group-valued fields, algebra-valued form components, metrics and frames.
//! All entries share a chart dimension; binary operations truncate to the
//! smaller jet order.

use crate::error::{KernelError, Result};
use crate::jets::JetScalar;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense matrix of jet scalars (row-major storage).
#[derive(Debug, Clone)]
pub struct JetMat {
    rows: usize,
    cols: usize,
    data: Vec<JetScalar>,
}

impl JetMat {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> JetScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        JetMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, n_vars: usize, order: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| {
            JetScalar::constant(Complex64::ZERO, n_vars, order)
        })
    }

    pub fn identity(n: usize, n_vars: usize, order: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            JetScalar::constant(
                if r == c { Complex64::ONE } else { Complex64::ZERO },
                n_vars,
                order,
            )
        })
    }

    /// Constant matrix lifted to jets.
    pub fn from_value(m: &DMatrix<Complex64>, n_vars: usize, order: usize) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| {
            JetScalar::constant(m[(r, c)], n_vars, order)
        })
    }

    /// Constant real matrix lifted to jets.
    pub fn from_value_re(m: &DMatrix<f64>, n_vars: usize, order: usize) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| {
            JetScalar::constant(Complex64::new(m[(r, c)], 0.0), n_vars, order)
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn n_vars(&self) -> usize {
        self.data[0].n_vars()
    }

    pub fn order(&self) -> usize {
        self.data.iter().map(|j| j.order()).min().unwrap()
    }

    pub fn get(&self, r: usize, c: usize) -> &JetScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: JetScalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Value part as a plain complex matrix.
    pub fn value(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).value())
    }

    /// Entrywise derivative along chart direction `i` (one order lower).
    pub fn deriv(&self, i: usize) -> JetMat {
        self.map(|j| j.deriv(i))
    }

    pub fn truncate(&self, order: usize) -> JetMat {
        self.map(|j| j.truncate(order))
    }

    pub fn map(&self, f: impl Fn(&JetScalar) -> JetScalar) -> JetMat {
        JetMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> JetMat {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose (entrywise jet conjugation).
    pub fn adjoint(&self) -> JetMat {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn conj(&self) -> JetMat {
        self.map(|j| j.conj())
    }

    pub fn neg(&self) -> JetMat {
        self.map(|j| j.neg())
    }

    pub fn scale(&self, s: Complex64) -> JetMat {
        self.map(|j| j.scale(s))
    }

    pub fn scale_re(&self, s: f64) -> JetMat {
        self.map(|j| j.scale_re(s))
    }

    pub fn scale_jet(&self, s: &JetScalar) -> JetMat {
        self.map(|j| j.mul(s))
    }

    pub fn add(&self, rhs: &JetMat) -> JetMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        JetMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &JetMat) -> JetMat {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &JetMat) -> JetMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let (n, m) = (self.n_vars(), self.order().min(rhs.order()));
        Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = JetScalar::constant(Complex64::ZERO, n, m);
            for k in 0..self.cols {
                acc = acc.add(&self.get(r, k).mul(rhs.get(k, c)));
            }
            acc
        })
    }

    /// Commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &JetMat) -> JetMat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> JetScalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = JetScalar::constant(Complex64::ZERO, self.n_vars(), self.order());
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Largest coefficient magnitude over all entries and jet slots.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|j| j.max_abs()).fold(0.0, f64::max)
    }

    /// Largest value-part magnitude over all entries.
    pub fn value_max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|j| j.value().norm())
            .fold(0.0, f64::max)
    }

    /// Inverse over the jet ring: requires the value part to be invertible;
    /// the jet corrections are the terminating Neumann series.
    pub fn inverse(&self) -> Result<JetMat> {
        assert_eq!(self.rows, self.cols);
        let (nv, ord) = (self.n_vars(), self.order());
        let v = self.value();
        let vinv = v.clone().try_inverse().ok_or_else(|| {
            KernelError::SingularFrame("value part of jet matrix not invertible".into())
        })?;
        let vinv_jet = JetMat::from_value(&vinv, nv, ord);
        // N = M − V has nilpotent entries; (V+N)⁻¹ = (I − X + X² − X³…) V⁻¹
        // with X = V⁻¹N, and the series terminates at the jet order.
        let x = vinv_jet.mul(&self.sub(&JetMat::from_value(&v, nv, ord)));
        let id = JetMat::identity(self.rows, nv, ord);
        let mut series = id.clone();
        let mut pw = id;
        for _ in 0..ord {
            pw = pw.mul(&x).neg();
            series = series.add(&pw);
        }
        Ok(series.mul(&vinv_jet))
    }

    /// Determinant over the jet ring (elimination with value-part pivoting).
    pub fn det(&self) -> Result<JetScalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (nv, ord) = (self.n_vars(), self.order());
        let mut rowsv: Vec<Vec<JetScalar>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut det = JetScalar::constant(Complex64::ONE, nv, ord);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    rowsv[a][col]
                        .value()
                        .norm()
                        .total_cmp(&rowsv[b][col].value().norm())
                })
                .unwrap();
            if rowsv[pivot][col].value().norm() < 1e-300 {
                return Ok(JetScalar::constant(Complex64::ZERO, nv, ord));
            }
            if pivot != col {
                rowsv.swap(pivot, col);
                det = det.neg();
            }
            let p = rowsv[col][col].clone();
            det = det.mul(&p);
            let pinv = p.recip().map_err(|_| {
                KernelError::SingularFrame("zero pivot in jet determinant".into())
            })?;
            for r in col + 1..n {
                let factor = rowsv[r][col].mul(&pinv);
                for c in col..n {
                    let delta = factor.mul(&rowsv[col][c]);
                    rowsv[r][c] = rowsv[r][c].sub(&delta);
                }
            }
        }
        Ok(det)
    }

    /// Matrix exponential over the jet ring (scaling and squaring with a
    /// truncated Taylor core; value-part accuracy ~1e-15 at these sizes).
    pub fn exp(&self) -> JetMat {
        assert_eq!(self.rows, self.cols);
        let (nv, ord) = (self.n_vars(), self.order());
        let norm = self.value().camax().max(self.max_abs() / 8.0);
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let a = self.scale_re(1.0 / 2f64.powi(s as i32));
        let mut acc = JetMat::identity(self.rows, nv, ord);
        let mut term = JetMat::identity(self.rows, nv, ord);
        for k in 1..=20 {
            term = term.mul(&a).scale_re(1.0 / k as f64);
            acc = acc.add(&term);
        }
        for _ in 0..s {
            acc = acc.mul(&acc);
        }
        acc
    }

    /// Principal square root over the jet ring (Denman–Beavers iteration).
    /// Requires the value part to have no eigenvalue on the closed negative
    /// real axis; non-convergence reports a domain error.
    pub fn sqrt(&self) -> Result<JetMat> {
        assert_eq!(self.rows, self.cols);
        let (nv, ord) = (self.n_vars(), self.order());
        let mut y = self.clone();
        let mut z = JetMat::identity(self.rows, nv, ord);
        for _ in 0..60 {
            let yn = y.add(&z.inverse()?).scale_re(0.5);
            let zn = z.add(&y.inverse()?).scale_re(0.5);
            y = yn;
            z = zn;
            let res = y.mul(&y).sub(self).max_abs();
            if res < 1e-28 {
                return Ok(y);
            }
        }
        let res = y.mul(&y).sub(self).max_abs();
        if res < 1e-11 {
            Ok(y)
        } else {
            Err(KernelError::LogDomain(format!(
                "matrix square root did not converge (residual {res:.3e})"
            )))
        }
    }

    /// Copy a block of `src` into position `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &JetMat) {
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.get(r, c).clone());
            }
        }
    }

    /// Extract the `(nr × nc)` block at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> JetMat {
        JetMat::from_fn(nr, nc, |r, c| self.get(r0 + r, c0 + c).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Polynomial;

    fn sample(order: usize) -> JetMat {
        // 3×3 jet matrix from polynomial entries at a fixed point
        let xs: Vec<JetScalar> = (0..2)
            .map(|i| JetScalar::variable([0.3, -0.2][i], i, 2, order))
            .collect();
        let polys = [
            [(1.0, vec![0, 0]), (0.2, vec![1, 0])],
            [(0.1, vec![0, 1]), (0.05, vec![1, 1])],
            [(0.0, vec![0, 0]), (0.3, vec![2, 0])],
        ];
        JetMat::from_fn(3, 3, |r, c| {
            let p = Polynomial::new_re(2, polys[(r + c) % 3].to_vec());
            let base = if r == c { 1.0 } else { 0.0 };
            p.eval_jet(&xs)
                .add(&JetScalar::constant_re(base * 0.5, 2, order))
        })
    }

    #[test]
    fn inverse_roundtrip() {
        let m = sample(3);
        let id = m.mul(&m.inverse().unwrap());
        assert!(id.sub(&JetMat::identity(3, 2, 3)).max_abs() < 1e-12);
    }

    #[test]
    fn det_multiplicative() {
        let m = sample(3);
        let n = sample(3).transpose();
        let lhs = m.mul(&n).det().unwrap();
        let rhs = m.det().unwrap().mul(&n.det().unwrap());
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn exp_of_commuting_sums() {
        let m = sample(2).scale_re(0.3);
        let lhs = m.exp().mul(&m.exp());
        let rhs = m.scale_re(2.0).exp();
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let m = sample(3).scale_re(0.3).add(&JetMat::identity(3, 2, 3));
        let r = m.sqrt().unwrap();
        assert!(r.mul(&r).sub(&m).max_abs() < 1e-11);
    }

    #[test]
    fn deriv_is_entrywise() {
        let m = sample(3);
        let d = m.deriv(0);
        assert_eq!(d.order(), 2);
        for r in 0..3 {
            for c in 0..3 {
                assert!(
                    d.get(r, c)
                        .sub(&m.get(r, c).deriv(0))
                        .max_abs()
                        < 1e-15
                );
            }
        }
    }
}
