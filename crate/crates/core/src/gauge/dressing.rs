//! Dressing-field connections Γ = C(u)dC(u)⁻¹ and their gluing over chart
//! covers with C² polynomial partitions of unity.

use super::{cocycle_value_field, ConnForm};
use crate::cocycle::{GaugeField, LocalCocycle};
use crate::error::{KernelError, Result};
use crate::forms::LocalForm;
use crate::jets::JetScalar;
use std::sync::Arc;

type WeightFn = Arc<dyn Fn(&[f64], usize) -> Result<JetScalar> + Send + Sync>;

/// A family of weight fields expected to sum to 1; the sum is checked at
/// every evaluation point.
#[derive(Clone)]
pub struct PartitionOfUnity {
    pub n_vars: usize,
    weights: Vec<WeightFn>,
}

/// C² bump (1−t²)³ on |t| < 1, zero outside, with t = (x_axis − center)/radius.
pub fn bump_jet(
    x: &[f64],
    n_vars: usize,
    order: usize,
    axis: usize,
    center: f64,
    radius: f64,
) -> JetScalar {
    let t0 = (x[axis] - center) / radius;
    if t0.abs() >= 1.0 {
        return JetScalar::constant_re(0.0, n_vars, order);
    }
    let t = JetScalar::variable(x[axis], axis, n_vars, order)
        .add(&JetScalar::constant_re(-center, n_vars, order))
        .scale_re(1.0 / radius);
    let one = JetScalar::constant_re(1.0, n_vars, order);
    let w = one.sub(&t.mul(&t));
    w.mul(&w).mul(&w)
}

impl PartitionOfUnity {
    /// Raw weights (validated to sum to 1 at evaluation).
    pub fn from_weights(n_vars: usize, weights: Vec<WeightFn>) -> Self {
        PartitionOfUnity { n_vars, weights }
    }

    /// Normalized C² bumps centered along one axis; the centers/radius must
    /// cover the evaluation region (the normalizing sum must stay positive).
    pub fn normalized_bumps(n_vars: usize, axis: usize, centers: Vec<f64>, radius: f64) -> Self {
        let all = centers.clone();
        let weights = centers
            .iter()
            .map(|&c0| {
                let all = all.clone();
                let w: WeightFn = Arc::new(move |x: &[f64], order: usize| {
                    let mine = bump_jet(x, n_vars, order, axis, c0, radius);
                    let mut total = JetScalar::constant_re(0.0, n_vars, order);
                    for &cj in &all {
                        total = total.add(&bump_jet(x, n_vars, order, axis, cj, radius));
                    }
                    if total.value().re <= 1e-12 {
                        return Err(KernelError::BadPartition(1.0));
                    }
                    Ok(mine.mul(&total.recip()?))
                });
                w
            })
            .collect();
        PartitionOfUnity { n_vars, weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// All weights at a point; errors with the deviation if they fail to sum
    /// to 1 within 1e-10.
    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<Vec<JetScalar>> {
        let ws: Vec<JetScalar> = self
            .weights
            .iter()
            .map(|w| w(x, order))
            .collect::<Result<_>>()?;
        let sum: f64 = ws.iter().map(|w| w.value().re).sum();
        let dev = (sum - 1.0).abs();
        if dev > 1e-10 {
            return Err(KernelError::BadPartition(dev));
        }
        Ok(ws)
    }
}

/// The dressing connection Γ = C(u) dC(u)⁻¹ on a single chart.
pub fn dressing_connection(
    c: &LocalCocycle,
    u: &GaugeField,
    chart: crate::forms::Chart,
) -> Result<ConnForm> {
    if !u.spec.same_spec(&c.source) {
        return Err(KernelError::GroupMismatch(format!(
            "dressing field valued in {}, cocycle source is {}",
            u.spec.name(),
            c.source.name()
        )));
    }
    let dim = c.target.mat_dim();
    let n = chart.dim;
    let l = cocycle_value_field(c, u);
    let form = LocalForm::new(chart, 1, dim, dim, None, move |x, order| {
        let lm = l.eval_at(x, order + 1)?;
        let linv = lm.inverse()?;
        let lt = lm.truncate(order);
        (0..n).map(|mu| Ok(lt.mul(&linv.deriv(mu)))).collect()
    });
    ConnForm::new(form, c.clone())
}

/// Glue per-chart dressing connections through a partition of unity:
/// Γ = Σ_i δ_i Γ_i.
pub fn glued_dressing_connection(
    c: &LocalCocycle,
    dressings: &[GaugeField],
    partition: &PartitionOfUnity,
    chart: crate::forms::Chart,
) -> Result<ConnForm> {
    if dressings.len() != partition.len() {
        return Err(KernelError::DimensionMismatch(format!(
            "{} dressing fields for {} partition weights",
            dressings.len(),
            partition.len()
        )));
    }
    let pieces: Vec<LocalForm> = dressings
        .iter()
        .map(|u| Ok(dressing_connection(c, u, chart.clone())?.form))
        .collect::<Result<_>>()?;
    let dim = c.target.mat_dim();
    let n = chart.dim;
    let partition = partition.clone();
    let form = LocalForm::new(chart, 1, dim, dim, None, move |x, order| {
        let ws = partition.eval_at(x, order)?;
        let mut comps = vec![crate::jetmat::JetMat::zeros(dim, dim, partition.n_vars, order); n];
        for (w, piece) in ws.iter().zip(&pieces) {
            let pc = piece.eval_at(x, order)?;
            for (acc, term) in comps.iter_mut().zip(&pc) {
                *acc = acc.add(&term.scale_jet(w));
            }
        }
        Ok(comps)
    });
    ConnForm::new(form, c.clone())
}
