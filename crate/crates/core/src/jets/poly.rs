//! Sparse multivariate polynomials, the standard carrier for test data and
//! metric-spec components: cheap to build, exactly jet-differentiable.

use super::{FieldHandle, JetScalar};
use num_complex::Complex64;

/// `Σ_k c_k · Π_j x_j^{e_{kj}}` with complex coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    pub n_vars: usize,
    pub terms: Vec<(Complex64, Vec<u8>)>,
}

impl Polynomial {
    pub fn new(n_vars: usize, terms: Vec<(Complex64, Vec<u8>)>) -> Self {
        for (_, e) in &terms {
            assert_eq!(e.len(), n_vars, "exponent vector arity mismatch");
        }
        Polynomial { n_vars, terms }
    }

    /// Polynomial with real coefficients.
    pub fn new_re(n_vars: usize, terms: Vec<(f64, Vec<u8>)>) -> Self {
        Self::new(
            n_vars,
            terms
                .into_iter()
                .map(|(c, e)| (Complex64::new(c, 0.0), e))
                .collect(),
        )
    }

    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(n_vars: usize, c: f64) -> Self {
        Self::new_re(n_vars, vec![(c, vec![0; n_vars])])
    }

    /// Evaluate on coordinate jets (exact chain rule).
    pub fn eval_jet(&self, xs: &[JetScalar]) -> JetScalar {
        let (n, m) = (xs[0].n_vars(), xs[0].order());
        let mut acc = JetScalar::constant(Complex64::ZERO, n, m);
        for (c, e) in &self.terms {
            let mut term = JetScalar::constant(*c, n, m);
            for (j, &pw) in e.iter().enumerate() {
                for _ in 0..pw {
                    term = term.mul(&xs[j]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Plain value at a point.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                c * e
                    .iter()
                    .enumerate()
                    .map(|(j, &pw)| x[j].powi(pw as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// As an evaluable scalar field.
    pub fn field(&self) -> FieldHandle {
        let p = self.clone();
        FieldHandle::new(self.n_vars, move |xs| Ok(p.eval_jet(xs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{fd_oracle, lift};

    #[test]
    fn jet_matches_pointwise_eval() {
        let p = Polynomial::new_re(
            2,
            vec![(1.0, vec![2, 0]), (-3.0, vec![1, 1]), (0.5, vec![0, 3])],
        );
        let x = [0.7, -0.4];
        let j = lift(&p.field(), &x, 2).unwrap();
        assert!((j.value() - p.eval(&x)).norm() < 1e-15);
    }

    #[test]
    fn jet_partials_match_fd_oracle() {
        // degree-5 polynomial in 3 variables vs central differences
        let p = Polynomial::new_re(
            3,
            vec![
                (0.8, vec![5, 0, 0]),
                (-1.2, vec![2, 2, 1]),
                (0.3, vec![1, 1, 3]),
                (2.0, vec![0, 4, 0]),
            ],
        );
        let f = p.field();
        let x = [0.35, -0.6, 0.85];
        let j = lift(&f, &x, 3).unwrap();
        for alpha in [
            vec![1u8, 0, 0],
            vec![0, 1, 1],
            vec![2, 0, 0],
            vec![1, 1, 1],
            vec![0, 0, 3],
        ] {
            let exact = j.partial(&alpha);
            let fd = fd_oracle(&f, &x, &alpha).unwrap();
            let total: usize = alpha.iter().map(|&e| e as usize).sum();
            let tol = if total == 3 { 1e-4 } else { 1e-6 };
            let denom = exact.norm().max(1.0);
            assert!(
                (exact - fd).norm() / denom < tol,
                "α = {alpha:?}: jet {exact} vs fd {fd}"
            );
        }
    }
}
