//! Truncated-Taylor (jet) arithmetic: exact mixed partial derivatives up to
//! order 3 of scalar fields on a chart, plus a finite-difference oracle used
//! by the test suites as an independent cross-check.

pub mod index;
pub mod poly;

use crate::error::{KernelError, Result};
use num_complex::Complex64;
use std::sync::Arc;

pub use poly::Polynomial;

/// Highest supported jet order.
pub const MAX_ORDER: usize = 3;

/// A scalar together with all of its mixed partial derivatives up to `order`
/// (≤ 3) in `n_vars` chart variables.
///
/// Internally the Taylor coefficients `c_α` of `f(x₀+δ) = Σ c_α δ^α` are
/// stored densely; the partial `∂^α f` is `α!·c_α`. Coefficients are complex;
/// real fields simply carry zero imaginary parts. Storage is by exponent
/// vector, so Schwarz symmetry of mixed partials holds by construction.
#[derive(Debug, Clone)]
pub struct JetScalar {
    n_vars: usize,
    order: usize,
    c: Vec<Complex64>,
}

impl JetScalar {
    /// Constant jet (all derivatives zero).
    pub fn constant(value: Complex64, n_vars: usize, order: usize) -> Self {
        let t = index::table(n_vars, order);
        let mut c = vec![Complex64::ZERO; t.len()];
        c[0] = value;
        JetScalar { n_vars, order, c }
    }

    /// Real constant jet.
    pub fn constant_re(value: f64, n_vars: usize, order: usize) -> Self {
        Self::constant(Complex64::new(value, 0.0), n_vars, order)
    }

    /// Jet of the coordinate function `x^i` seeded at the point value `x_i`.
    pub fn variable(value: f64, i: usize, n_vars: usize, order: usize) -> Self {
        let mut j = Self::constant_re(value, n_vars, order);
        if order >= 1 {
            let t = index::table(n_vars, order);
            let mut e = vec![0u8; n_vars];
            e[i] = 1;
            let p = t.position(&e).expect("first-order slot");
            j.c[p] = Complex64::ONE;
        }
        j
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value part (all derivatives dropped).
    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// The mixed partial `∂^α f` for the exponent vector `alpha`.
    pub fn partial(&self, alpha: &[u8]) -> Complex64 {
        let t = index::table(self.n_vars, self.order);
        match t.position(alpha) {
            Some(p) => self.c[p] * t.factorial(p),
            None => Complex64::ZERO,
        }
    }

    /// Jet of `∂f/∂x^i`, one order lower.
    pub fn deriv(&self, i: usize) -> JetScalar {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let t = index::table(self.n_vars, self.order);
        let td = index::table(self.n_vars, self.order - 1);
        let mut c = vec![Complex64::ZERO; td.len()];
        for (p, e) in td.exponents.iter().enumerate() {
            let mut up = e.clone();
            up[i] += 1;
            if let Some(q) = t.position(&up) {
                c[p] = self.c[q] * Complex64::new((up[i]) as f64, 0.0);
            }
        }
        JetScalar {
            n_vars: self.n_vars,
            order: self.order - 1,
            c,
        }
    }

    /// Same jet truncated to a lower order.
    pub fn truncate(&self, order: usize) -> JetScalar {
        if order >= self.order {
            return self.clone();
        }
        let t = index::table(self.n_vars, order);
        let src = index::table(self.n_vars, self.order);
        let mut c = vec![Complex64::ZERO; t.len()];
        for (p, e) in t.exponents.iter().enumerate() {
            let q = src.position(e).expect("truncation subset");
            c[p] = self.c[q];
        }
        JetScalar {
            n_vars: self.n_vars,
            order,
            c,
        }
    }

    /// Complex conjugate (valid because chart variables are real).
    pub fn conj(&self) -> JetScalar {
        JetScalar {
            n_vars: self.n_vars,
            order: self.order,
            c: self.c.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Real part as a jet.
    pub fn re(&self) -> JetScalar {
        JetScalar {
            n_vars: self.n_vars,
            order: self.order,
            c: self.c.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }

    /// Imaginary part as a jet (real-valued result).
    pub fn im(&self) -> JetScalar {
        JetScalar {
            n_vars: self.n_vars,
            order: self.order,
            c: self.c.iter().map(|z| Complex64::new(z.im, 0.0)).collect(),
        }
    }

    /// Largest coefficient magnitude (diagnostic norm).
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn common(&self, rhs: &JetScalar) -> (usize, usize) {
        assert_eq!(
            self.n_vars, rhs.n_vars,
            "jet arithmetic requires a common chart dimension"
        );
        (self.n_vars, self.order.min(rhs.order))
    }

    pub fn add(&self, rhs: &JetScalar) -> JetScalar {
        let (n, m) = self.common(rhs);
        let a = self.truncate(m);
        let b = rhs.truncate(m);
        JetScalar {
            n_vars: n,
            order: m,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, rhs: &JetScalar) -> JetScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> JetScalar {
        JetScalar {
            n_vars: self.n_vars,
            order: self.order,
            c: self.c.iter().map(|z| -z).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> JetScalar {
        JetScalar {
            n_vars: self.n_vars,
            order: self.order,
            c: self.c.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> JetScalar {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Truncated Taylor product (Leibniz rule at the stored order).
    pub fn mul(&self, rhs: &JetScalar) -> JetScalar {
        let (n, m) = self.common(rhs);
        let a = self.truncate(m);
        let b = rhs.truncate(m);
        let t = index::table(n, m);
        let mut c = vec![Complex64::ZERO; t.len()];
        for (pa, ea) in t.exponents.iter().enumerate() {
            if a.c[pa] == Complex64::ZERO {
                continue;
            }
            let da = t.degree(pa);
            for (pb, eb) in t.exponents.iter().enumerate() {
                if b.c[pb] == Complex64::ZERO {
                    continue;
                }
                if da + t.degree(pb) > m {
                    continue;
                }
                let sum: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let p = t.position(&sum).expect("degree-checked product index");
                c[p] += a.c[pa] * b.c[pb];
            }
        }
        JetScalar {
            n_vars: n,
            order: m,
            c,
        }
    }

    /// `Σ_k coeffs[k]·N^k` where `N = self − value(self)` is nilpotent at the
    /// truncation order. Backbone of every analytic primitive.
    fn nilpotent_series(&self, coeffs: &[Complex64]) -> JetScalar {
        let mut nil = self.clone();
        nil.c[0] = Complex64::ZERO;
        let mut acc = JetScalar::constant(coeffs[0], self.n_vars, self.order);
        let mut pw = JetScalar::constant(Complex64::ONE, self.n_vars, self.order);
        for &co in &coeffs[1..=self.order.min(coeffs.len() - 1)] {
            pw = pw.mul(&nil);
            acc = acc.add(&pw.scale(co));
        }
        acc
    }

    /// Truncated composition with the exponential series.
    pub fn exp(&self) -> JetScalar {
        let a = self.value().exp();
        let coeffs = [
            a,
            a,
            a * 0.5,
            a / 6.0,
        ];
        self.nilpotent_series(&coeffs)
    }

    /// Principal-branch logarithm; errors on the closed negative real axis.
    pub fn ln(&self) -> Result<JetScalar> {
        let a = self.value();
        if a.norm() == 0.0 || (a.im == 0.0 && a.re <= 0.0) {
            return Err(KernelError::Domain(format!(
                "log of {a} (principal branch undefined)"
            )));
        }
        let inv = a.inv();
        let coeffs = [
            a.ln(),
            inv,
            -0.5 * inv * inv,
            inv * inv * inv / 3.0,
        ];
        Ok(self.nilpotent_series(&coeffs))
    }

    /// Multiplicative inverse; errors when the value part vanishes.
    pub fn recip(&self) -> Result<JetScalar> {
        let a = self.value();
        if a.norm() == 0.0 {
            return Err(KernelError::Domain("reciprocal of a zero value".into()));
        }
        let inv = a.inv();
        let coeffs = [
            inv,
            -inv * inv,
            inv * inv * inv,
            -inv * inv * inv * inv,
        ];
        Ok(self.nilpotent_series(&coeffs))
    }

    /// Principal square root (via the binomial series around the value part).
    pub fn sqrt(&self) -> Result<JetScalar> {
        let a = self.value();
        if a.norm() == 0.0 || (a.im == 0.0 && a.re < 0.0) {
            return Err(KernelError::Domain(format!(
                "sqrt of {a} (principal branch undefined)"
            )));
        }
        let r = a.sqrt();
        let inv = a.inv();
        let coeffs = [
            r,
            r * inv * 0.5,
            -r * inv * inv / 8.0,
            r * inv * inv * inv / 16.0,
        ];
        Ok(self.nilpotent_series(&coeffs))
    }

    /// Real power `f^p` via the binomial series around the value part.
    pub fn powf(&self, p: f64) -> Result<JetScalar> {
        let a = self.value();
        if a.norm() == 0.0 || (a.im == 0.0 && a.re < 0.0) {
            return Err(KernelError::Domain(format!(
                "power of {a} (principal branch undefined)"
            )));
        }
        let v = a.powf(p);
        let inv = a.inv();
        let coeffs = [
            v,
            v * inv * p,
            v * inv * inv * (p * (p - 1.0) / 2.0),
            v * inv * inv * inv * (p * (p - 1.0) * (p - 2.0) / 6.0),
        ];
        Ok(self.nilpotent_series(&coeffs))
    }

    /// Composition: `self` read as a function of `inner.len()` variables,
    /// evaluated on the given jets (chain rule at the truncation order).
    pub fn compose(&self, inner: &[JetScalar]) -> JetScalar {
        assert_eq!(self.n_vars, inner.len(), "composition arity mismatch");
        let n = inner[0].n_vars;
        let m = inner.iter().map(|j| j.order).min().unwrap().min(self.order);
        let t = index::table(self.n_vars, self.order);
        // Δ_j = inner_j − value(inner_j): nilpotent at the truncation order.
        let deltas: Vec<JetScalar> = inner
            .iter()
            .map(|j| {
                let mut d = j.truncate(m);
                d.c[0] = Complex64::ZERO;
                d
            })
            .collect();
        let mut acc = JetScalar::constant(Complex64::ZERO, n, m);
        for (p, e) in t.exponents.iter().enumerate() {
            if self.c[p] == Complex64::ZERO {
                continue;
            }
            let mut term = JetScalar::constant(self.c[p], n, m);
            for (j, &pw) in e.iter().enumerate() {
                for _ in 0..pw {
                    term = term.mul(&deltas[j]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// True when every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// An evaluable scalar field on a chart: chart point ↦ jet of the field at
/// that point. Fields are pure closures built from jet primitives, so the
/// chain and product rules are exact at the stored order.
#[derive(Clone)]
pub struct FieldHandle {
    n_vars: usize,
    eval: Arc<dyn Fn(&[JetScalar]) -> Result<JetScalar> + Send + Sync>,
}

impl FieldHandle {
    /// Wrap a jet-arithmetic closure as a field on an `n_vars`-dimensional
    /// chart. The closure receives one seeded coordinate jet per variable.
    pub fn new(
        n_vars: usize,
        eval: impl Fn(&[JetScalar]) -> Result<JetScalar> + Send + Sync + 'static,
    ) -> Self {
        FieldHandle {
            n_vars,
            eval: Arc::new(eval),
        }
    }

    /// Field with a constant value.
    pub fn constant(n_vars: usize, value: Complex64) -> Self {
        FieldHandle::new(n_vars, move |xs| {
            Ok(JetScalar::constant(value, xs[0].n_vars(), xs[0].order()))
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
}

/// Evaluate `field` at `x`, returning its jet at the requested order.
pub fn lift(field: &FieldHandle, x: &[f64], order: usize) -> Result<JetScalar> {
    if order > MAX_ORDER {
        return Err(KernelError::UnsupportedOrder(order));
    }
    if x.len() != field.n_vars {
        return Err(KernelError::DimensionMismatch(format!(
            "field on {} variables evaluated at a {}-dimensional point",
            field.n_vars,
            x.len()
        )));
    }
    let seeds: Vec<JetScalar> = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| JetScalar::variable(xi, i, field.n_vars, order))
        .collect();
    let j = (field.eval)(&seeds)?;
    if !j.is_finite() {
        return Err(KernelError::Numeric("non-finite jet coefficients".into()));
    }
    Ok(j)
}

/// Central-difference estimate of the mixed partial `∂^α field` at `x`.
///
/// Test-only oracle, deliberately independent of the jet machinery: values
/// are obtained by order-0 evaluation at shifted points. Default steps are
/// 1e-4 for |α| ≤ 2 and 1e-3 for |α| = 3.
pub fn fd_oracle(field: &FieldHandle, x: &[f64], alpha: &[u8]) -> Result<Complex64> {
    let total: usize = alpha.iter().map(|&e| e as usize).sum();
    if total > MAX_ORDER {
        return Err(KernelError::UnsupportedOrder(total));
    }
    let step = if total == 3 { 1e-3 } else { 1e-4 };
    fd_recurse(field, &mut x.to_vec(), alpha, step)
}

fn fd_recurse(
    field: &FieldHandle,
    x: &mut Vec<f64>,
    alpha: &[u8],
    step: f64,
) -> Result<Complex64> {
    match alpha.iter().position(|&e| e > 0) {
        None => Ok(lift(field, x, 0)?.value()),
        Some(i) => {
            if step == 0.0 || x[i] + step == x[i] {
                return Err(KernelError::DegenerateStep);
            }
            let mut lower = alpha.to_vec();
            lower[i] -= 1;
            x[i] += step;
            let plus = fd_recurse(field, x, &lower, step)?;
            x[i] -= 2.0 * step;
            let minus = fd_recurse(field, x, &lower, step)?;
            x[i] += step;
            Ok((plus - minus) / Complex64::new(2.0 * step, 0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn square_function_jet() {
        // f(x) = x² at x = 3: value 9, f' = 6, f'' = 2.
        let f = FieldHandle::new(1, |xs| Ok(xs[0].mul(&xs[0])));
        let j = lift(&f, &[3.0], 2).unwrap();
        assert_eq!(j.value(), c(9.0));
        assert_eq!(j.partial(&[1]), c(6.0));
        assert_eq!(j.partial(&[2]), c(2.0));
    }

    #[test]
    fn exp_times_coordinate() {
        // f(x,y) = eˣ·y at (0,1): value 1, ∂x = 1, ∂y = 1.
        let f = FieldHandle::new(2, |xs| Ok(xs[0].exp().mul(&xs[1])));
        let j = lift(&f, &[0.0, 1.0], 1).unwrap();
        assert_eq!(j.value(), c(1.0));
        assert!((j.partial(&[1, 0]) - c(1.0)).norm() < 1e-15);
        assert!((j.partial(&[0, 1]) - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn product_rule_is_exact() {
        let f = FieldHandle::new(2, |xs| {
            let a = xs[0].mul(&xs[0]).add(&xs[1]);
            let b = xs[1].mul(&xs[1]).sub(&xs[0].scale_re(2.0));
            Ok(a.mul(&b))
        });
        // against symbolic expansion: (x²+y)(y²−2x)
        let g = FieldHandle::new(2, |xs| {
            let (x, y) = (&xs[0], &xs[1]);
            let x2 = x.mul(x);
            let y2 = y.mul(y);
            let t = x2.mul(&y2).sub(&x2.mul(x).scale_re(2.0));
            Ok(t.add(&y.mul(&y2)).sub(&x.mul(y).scale_re(2.0)))
        });
        let (a, b) = (
            lift(&f, &[0.7, -0.3], 3).unwrap(),
            lift(&g, &[0.7, -0.3], 3).unwrap(),
        );
        assert!(a.sub(&b).max_abs() < 1e-14);
    }

    #[test]
    fn recip_ln_exp_roundtrip() {
        let f = FieldHandle::new(1, |xs| {
            let g = xs[0].mul(&xs[0]).add(&JetScalar::constant_re(
                1.5,
                xs[0].n_vars(),
                xs[0].order(),
            ));
            g.ln()
        });
        let j = lift(&f, &[0.4], 3).unwrap();
        // exp(ln g) = g
        let g = lift(
            &FieldHandle::new(1, |xs| {
                Ok(xs[0].mul(&xs[0]).add(&JetScalar::constant_re(
                    1.5,
                    xs[0].n_vars(),
                    xs[0].order(),
                )))
            }),
            &[0.4],
            3,
        )
        .unwrap();
        assert!(j.exp().sub(&g).max_abs() < 1e-13);
        // g · g⁻¹ = 1
        let prod = g.recip().unwrap().mul(&g);
        assert!((prod.value() - c(1.0)).norm() < 1e-14);
        assert!(prod.sub(&JetScalar::constant_re(1.0, 1, 3)).max_abs() < 1e-13);
    }

    #[test]
    fn sqrt_squares_back() {
        let g = lift(
            &FieldHandle::new(2, |xs| {
                Ok(xs[0].mul(&xs[1]).add(&JetScalar::constant_re(
                    2.0,
                    xs[0].n_vars(),
                    xs[0].order(),
                )))
            }),
            &[0.3, -0.2],
            3,
        )
        .unwrap();
        let r = g.sqrt().unwrap();
        assert!(r.mul(&r).sub(&g).max_abs() < 1e-13);
    }

    #[test]
    fn fd_oracle_on_cubic() {
        // f(x) = x³: ∂² at x=1 is 6 up to O(h²).
        let f = FieldHandle::new(1, |xs| Ok(xs[0].mul(&xs[0]).mul(&xs[0])));
        let d2 = fd_oracle(&f, &[1.0], &[2]).unwrap();
        assert!((d2 - c(6.0)).norm() < 1e-5);
        // constant field: any partial is 0.
        let k = FieldHandle::constant(1, c(4.2));
        assert!(fd_oracle(&k, &[1.0], &[2]).unwrap().norm() < 1e-9);
    }

    #[test]
    fn ln_of_negative_real_errors() {
        let f = FieldHandle::new(1, |xs| xs[0].ln());
        assert!(lift(&f, &[-1.0], 1).is_err());
    }

    #[test]
    fn compose_chain_rule() {
        // h(t) = g(φ(t)) with g(u,v) = u·v², φ(t) = (t+1, t²)
        let g = lift(
            &FieldHandle::new(2, |xs| Ok(xs[0].mul(&xs[1]).mul(&xs[1]))),
            &[1.5, 0.25],
            3,
        )
        .unwrap();
        let t0 = 0.5f64;
        let phi = vec![
            JetScalar::variable(t0, 0, 1, 3).add(&JetScalar::constant_re(1.0, 1, 3)),
            JetScalar::variable(t0, 0, 1, 3).mul(&JetScalar::variable(t0, 0, 1, 3)),
        ];
        let h = g.compose(&phi);
        // direct: h(t) = (t+1)t⁴
        let direct = lift(
            &FieldHandle::new(1, |xs| {
                let t = &xs[0];
                let t2 = t.mul(t);
                Ok(t.add(&JetScalar::constant_re(1.0, t.n_vars(), t.order()))
                    .mul(&t2)
                    .mul(&t2))
            }),
            &[t0],
            3,
        )
        .unwrap();
        assert!(h.sub(&direct).max_abs() < 1e-13);
    }
}
