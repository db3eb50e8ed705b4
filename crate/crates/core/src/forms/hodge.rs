//! Hodge star on a pseudo-Riemannian chart, with orientation ε_{01…n−1} = +1.

use super::{combinations, tuple_lookup, LocalForm, MetricField};
use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;

/// Sign of the permutation sending (tuple) to increasing order; `None` on a
/// repeated index. Levi-Civita on full n-tuples.
fn perm_sign(tuple: &[usize]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] == tuple[j] {
                return None;
            }
            if tuple[i] > tuple[j] {
                sign = -sign;
            }
        }
    }
    Some(sign)
}

impl LocalForm {
    /// Hodge star against `metric`:
    /// (∗a)_{J} = √|g| · Σ_{I increasing} a^{I} ε_{I J}, with indices raised
    /// by the inverse metric and ε the Levi-Civita symbol on ε_{01…} = +1.
    pub fn hodge_star(&self, metric: &MetricField) -> Result<LocalForm> {
        if metric.chart.dim != self.chart.dim {
            return Err(KernelError::DimensionMismatch(
                "hodge star: metric on a different chart dimension".into(),
            ));
        }
        let n = self.chart.dim;
        let k = self.degree;
        if k > n {
            return Err(KernelError::DegreeOverflow(format!(
                "hodge star of a degree-{k} form on an {n}-dimensional chart"
            )));
        }
        let (rows, cols) = (self.rows, self.cols);
        let src = self.clone();
        let metric = metric.clone();
        let combos_k = combinations(n, k);
        let combos_nk = combinations(n, n - k);
        Ok(LocalForm::new(
            self.chart.clone(),
            n - k,
            rows,
            cols,
            self.algebra.clone(),
            move |x, order| {
                let comps = src.eval_at(x, order)?;
                let ginv = metric.inverse_at(x, order)?;
                let vol = metric.sqrt_abs_det_at(x, order)?;
                // raise every increasing I: a^I = Σ_{j tuple} Π g^{i_t j_t} a_{j}
                let mut raised: Vec<JetMat> = Vec::with_capacity(combos_k.len());
                for iset in &combos_k {
                    let mut acc = JetMat::zeros(rows, cols, n, order);
                    let mut jt = vec![0usize; k];
                    'outer: loop {
                        if k == 0 {
                            acc = comps[0].clone();
                            break;
                        }
                        if let Some((pos, sign)) = tuple_lookup(&combos_k, &jt) {
                            let mut w = crate::jets::JetScalar::constant_re(sign, n, order);
                            for (t, &i) in iset.iter().enumerate() {
                                w = w.mul(ginv.get(i, jt[t]));
                            }
                            acc = acc.add(&comps[pos].scale_jet(&w));
                        }
                        let mut slot = 0;
                        loop {
                            jt[slot] += 1;
                            if jt[slot] < n {
                                break;
                            }
                            jt[slot] = 0;
                            slot += 1;
                            if slot == k {
                                break 'outer;
                            }
                        }
                    }
                    raised.push(acc);
                }
                let mut out = Vec::with_capacity(combos_nk.len());
                for jset in &combos_nk {
                    let mut acc = JetMat::zeros(rows, cols, n, order);
                    for (pi, iset) in combos_k.iter().enumerate() {
                        let full: Vec<usize> =
                            iset.iter().chain(jset.iter()).copied().collect();
                        if let Some(eps) = perm_sign(&full) {
                            acc = acc.add(&raised[pi].scale_re(eps));
                        }
                    }
                    out.push(acc.scale_jet(&vol));
                }
                Ok(out)
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use crate::forms::{Chart, LocalForm, MetricField};
    use crate::jets::Polynomial;

    fn mink() -> (Chart, MetricField) {
        let chart = Chart::centered_box(4);
        let g = MetricField::minkowski(chart.clone());
        (chart, g)
    }

    fn two_form(chart: Chart, coeffs: [f64; 6]) -> LocalForm {
        let polys = coeffs
            .iter()
            .map(|&c| vec![vec![Polynomial::constant(4, c)]])
            .collect();
        LocalForm::from_polys(chart, 2, 1, 1, None, polys)
    }

    #[test]
    fn star_dx0_dx1_minkowski() {
        // ∗(dx⁰∧dx¹) = −dx²∧dx³ for signature (+,−,−,−), ε_{0123} = +1
        let (chart, g) = mink();
        let a = two_form(chart, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let s = a.hodge_star(&g).unwrap();
        let comps = s.eval_at(&[0.1, 0.2, -0.1, 0.3], 0).unwrap();
        // storage order for degree 2: 01,02,03,12,13,23
        let vals: Vec<f64> = comps.iter().map(|m| m.get(0, 0).value().re).collect();
        assert!((vals[5] + 1.0).abs() < 1e-13, "got {vals:?}");
        for (i, v) in vals.iter().enumerate().take(5) {
            assert!(v.abs() < 1e-13, "component {i} = {v}");
        }
    }

    #[test]
    fn star_star_on_two_forms_is_minus_id() {
        let (chart, g) = mink();
        let a = two_form(chart, [0.7, -0.3, 1.1, 0.4, -0.9, 0.25]);
        let ss = a.hodge_star(&g).unwrap().hodge_star(&g).unwrap();
        let x = [0.05, -0.2, 0.3, 0.1];
        let u = a.eval_at(&x, 0).unwrap();
        let v = ss.eval_at(&x, 0).unwrap();
        for (m1, m2) in u.iter().zip(&v) {
            assert!(m1.add(m2).max_abs() < 1e-12);
        }
    }

    #[test]
    fn star_of_one_on_curved_metric_is_volume() {
        // ∗1 = √|g| dx⁰∧…∧dx³
        let chart = Chart::centered_box(4);
        let mut polys = vec![vec![Polynomial::constant(4, 0.0); 4]; 4];
        for mu in 0..4 {
            let sgn = if mu == 0 { 1.0 } else { -1.0 };
            polys[mu][mu] = Polynomial::new_re(
                4,
                vec![(sgn, vec![0; 4]), (sgn * 0.3, {
                    let mut e = vec![0u8; 4];
                    e[(mu + 1) % 4] = 1;
                    e
                })],
            );
        }
        let g = MetricField::from_polys(chart.clone(), polys);
        let one = LocalForm::from_polys(
            chart,
            0,
            1,
            1,
            None,
            vec![vec![vec![Polynomial::constant(4, 1.0)]]],
        );
        let s = one.hodge_star(&g).unwrap();
        let x = [0.1, -0.15, 0.2, 0.05];
        let comps = s.eval_at(&x, 0).unwrap();
        let vol = g.sqrt_abs_det_at(&x, 0).unwrap().value();
        assert!((comps[0].get(0, 0).value() - vol).norm() < 1e-12);
    }
}
