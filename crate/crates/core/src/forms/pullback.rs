//! Smooth maps between charts and pullback of forms along them, realized by
//! jet composition: component values are composed through the map and wedged
//! with the Jacobian factors.

use super::{combinations, tuple_lookup, Chart, LocalForm};
use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use std::sync::Arc;

/// A smooth map between charts, evaluated as jets of the target coordinates
/// in the source coordinates.
#[derive(Clone)]
pub struct ChartMap {
    pub src: Chart,
    pub dst: Chart,
    eval: Arc<dyn Fn(&[f64], usize) -> Result<Vec<JetScalar>> + Send + Sync>,
}

impl ChartMap {
    pub fn new(
        src: Chart,
        dst: Chart,
        eval: impl Fn(&[f64], usize) -> Result<Vec<JetScalar>> + Send + Sync + 'static,
    ) -> Self {
        ChartMap {
            src,
            dst,
            eval: Arc::new(eval),
        }
    }

    /// Target-coordinate jets at a source point.
    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<Vec<JetScalar>> {
        if x.len() != self.src.dim {
            return Err(KernelError::DimensionMismatch(
                "chart map evaluated off its source chart".into(),
            ));
        }
        let ys = (self.eval)(x, order)?;
        if ys.len() != self.dst.dim {
            return Err(KernelError::DimensionMismatch(
                "chart map produced the wrong number of coordinates".into(),
            ));
        }
        Ok(ys)
    }

    /// Target point (values only).
    pub fn image(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self
            .eval_at(x, 0)?
            .iter()
            .map(|j| j.value().re)
            .collect())
    }
}

impl LocalForm {
    /// Pullback along `phi`: components are composed through the map and
    /// contracted with products of Jacobian entries,
    /// (φ*a)_{μ…} = Σ a_{ν…}∘φ · ∂_μ φ^ν ….
    pub fn pullback(&self, phi: &ChartMap) -> Result<LocalForm> {
        if phi.dst.dim != self.chart.dim {
            return Err(KernelError::DimensionMismatch(
                "pullback: form lives on a different chart than the map's target".into(),
            ));
        }
        let m = phi.src.dim;
        let k = self.degree;
        let (rows, cols) = (self.rows, self.cols);
        let src_form = self.clone();
        let phi = phi.clone();
        let n_dst = self.chart.dim;
        let combos_src = combinations(m, k);
        let combos_dst = combinations(n_dst, k);
        Ok(LocalForm::new(
            phi.src.clone(),
            k,
            rows,
            cols,
            self.algebra.clone(),
            move |x, order| {
                let ys = phi.eval_at(x, order + 1)?;
                let y0: Vec<f64> = ys.iter().map(|j| j.value().re).collect();
                // components of the form at φ(x), composed to source jets
                let comps_dst = src_form.eval_at(&y0, order + 1)?;
                let composed: Vec<JetMat> = comps_dst
                    .iter()
                    .map(|c| c.map(|j| j.compose(&ys)))
                    .collect();
                let jac: Vec<Vec<JetScalar>> = (0..m)
                    .map(|mu| (0..n_dst).map(|nu| ys[nu].deriv(mu)).collect())
                    .collect();
                let mut out = Vec::with_capacity(combos_src.len());
                for mus in &combos_src {
                    let mut acc = JetMat::zeros(rows, cols, m, order);
                    // sum over all target tuples ν
                    let mut nus = vec![0usize; k];
                    if k == 0 {
                        out.push(composed[0].truncate(order));
                        continue;
                    }
                    'tuples: loop {
                        if let Some((pos, sign)) = tuple_lookup(&combos_dst, &nus) {
                            let mut w = JetScalar::constant_re(sign, m, order);
                            for (slot, &mu) in mus.iter().enumerate() {
                                w = w.mul(&jac[mu][nus[slot]]);
                            }
                            acc = acc.add(&composed[pos].truncate(order).scale_jet(&w));
                        }
                        let mut slot = 0;
                        loop {
                            nus[slot] += 1;
                            if nus[slot] < n_dst {
                                break;
                            }
                            nus[slot] = 0;
                            slot += 1;
                            if slot == k {
                                break 'tuples;
                            }
                        }
                    }
                    out.push(acc);
                }
                Ok(out)
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Chart, LocalForm};
    use crate::jets::Polynomial;

    /// Quadratic map (u,v) ↦ (u + 0.3·v², v − 0.2·u·v).
    fn quad_map() -> ChartMap {
        let src = Chart::centered_box(2);
        let dst = Chart::new(2, vec![(-1.0, 1.0), (-1.0, 1.0)]);
        ChartMap::new(src, dst, |x, order| {
            let u = JetScalar::variable(x[0], 0, 2, order);
            let v = JetScalar::variable(x[1], 1, 2, order);
            Ok(vec![
                u.add(&v.mul(&v).scale_re(0.3)),
                v.sub(&u.mul(&v).scale_re(0.2)),
            ])
        })
    }

    fn poly_one_form() -> LocalForm {
        let dst = Chart::new(2, vec![(-1.0, 1.0), (-1.0, 1.0)]);
        LocalForm::from_polys(
            dst,
            1,
            1,
            1,
            None,
            vec![
                vec![vec![Polynomial::new_re(2, vec![(1.0, vec![0, 1])])]], // y dx
                vec![vec![Polynomial::new_re(2, vec![(0.5, vec![2, 0])])]], // x²/2 dy
            ],
        )
    }

    #[test]
    fn pullback_of_exact_form_matches_d_of_composed_scalar() {
        // φ*(df) = d(f∘φ) with f = x²y
        let dst = Chart::new(2, vec![(-1.0, 1.0), (-1.0, 1.0)]);
        let f = crate::forms::scalar_form(dst, Polynomial::new_re(2, vec![(1.0, vec![2, 1])]));
        let phi = quad_map();
        let lhs = f.d().pullback(&phi).unwrap();
        let rhs = f.pullback(&phi).unwrap().d();
        for x in [[0.2, -0.3], [-0.1, 0.45], [0.33, 0.2]] {
            let u = lhs.eval_at(&x, 1).unwrap();
            let v = rhs.eval_at(&x, 1).unwrap();
            for (a, b) in u.iter().zip(&v) {
                assert!(a.sub(b).max_abs() < 1e-11);
            }
        }
    }

    #[test]
    fn pullback_commutes_with_wedge() {
        let a = poly_one_form();
        let b = a.d();
        let phi = quad_map();
        let lhs = a.wedge(&b).unwrap().pullback(&phi).unwrap();
        let rhs = a
            .pullback(&phi)
            .unwrap()
            .wedge(&b.pullback(&phi).unwrap())
            .unwrap();
        let x = [0.15, -0.25];
        let u = lhs.eval_at(&x, 0).unwrap();
        let v = rhs.eval_at(&x, 0).unwrap();
        for (m1, m2) in u.iter().zip(&v) {
            assert!(m1.sub(m2).max_abs() < 1e-11);
        }
    }

    #[test]
    fn pullback_along_identity_is_identity() {
        let chart = Chart::new(2, vec![(-1.0, 1.0), (-1.0, 1.0)]);
        let id = ChartMap::new(chart.clone(), chart, |x, order| {
            Ok(x.iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, 2, order))
                .collect())
        });
        let a = poly_one_form();
        let pa = a.pullback(&id).unwrap();
        let x = [0.4, -0.2];
        let u = a.eval_at(&x, 1).unwrap();
        let v = pa.eval_at(&x, 1).unwrap();
        for (m1, m2) in u.iter().zip(&v) {
            assert!(m1.sub(m2).max_abs() < 1e-11);
        }
    }
}
