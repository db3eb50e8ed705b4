//! Metric specification files: a TOML schema describing a polynomial metric
//! (or vielbein) on a box chart, with an optional conformal factor and a
//! sampled nondegeneracy pre-flight.
//!
//! Schema: `dim` (must be 4), optional `bounds` (per-coordinate `[lo, hi]`,
//! default `[-1, 1]`), optional `signature` (`"+---"`, the only supported
//! value), entry tables `[[metric]]` or `[[vielbein]]` (mutually exclusive)
//! with `row`, `col`, and `terms = [{ coeff, powers }]`, and an optional
//! `conformal_factor` term list φ applying g → e^{2φ}g. Entries replace the
//! flat default (η for the metric, the identity for the vielbein);
//! unspecified metric entries stay at their η value and `[[metric]]`
//! entries are mirrored symmetrically.

use crate::error::{KernelError, Result};
use crate::forms::{Chart, MetricField};
use crate::jets::{JetScalar, Polynomial};
use crate::jetmat::JetMat;
use crate::lie::spin;
use crate::sample::sample_points;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: f64,
    pub powers: Vec<u8>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub dim: usize,
    #[serde(default)]
    pub bounds: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub signature: Option<String>,
    #[serde(default)]
    pub metric: Vec<EntrySpec>,
    #[serde(default)]
    pub vielbein: Vec<EntrySpec>,
    #[serde(default)]
    pub conformal_factor: Option<Vec<TermSpec>>,
}

fn poly_from_terms(terms: &[TermSpec], dim: usize) -> Result<Polynomial> {
    let mut parts = Vec::with_capacity(terms.len());
    for t in terms {
        if t.powers.len() != dim {
            return Err(KernelError::InvalidInput(format!(
                "term has {} exponents on a {dim}-dimensional chart",
                t.powers.len()
            )));
        }
        parts.push((t.coeff, t.powers.clone()));
    }
    Ok(Polynomial::new_re(dim, parts))
}

impl MetricSpec {
    pub fn load(path: &Path) -> Result<MetricSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| KernelError::InvalidInput(format!("reading {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| KernelError::InvalidInput(format!("parsing {}: {e}", path.display())))
    }

    pub fn chart(&self) -> Result<Chart> {
        if self.dim != 4 {
            return Err(KernelError::InvalidInput(format!(
                "only 4-dimensional charts are supported, got dim = {}",
                self.dim
            )));
        }
        match &self.bounds {
            None => Ok(Chart::centered_box(4)),
            Some(b) => {
                if b.len() != 4 || b.iter().any(|[lo, hi]| lo >= hi) {
                    return Err(KernelError::InvalidInput(
                        "bounds must be 4 ordered [lo, hi] pairs".into(),
                    ));
                }
                Ok(Chart::new(4, b.iter().map(|[lo, hi]| (*lo, *hi)).collect()))
            }
        }
    }

    /// Build the metric field, applying the conformal factor if present.
    pub fn build(&self) -> Result<MetricField> {
        if let Some(sig) = &self.signature {
            if sig != "+---" {
                return Err(KernelError::InvalidInput(format!(
                    "unsupported signature {sig:?}; only \"+---\" is available"
                )));
            }
        }
        if !self.metric.is_empty() && !self.vielbein.is_empty() {
            return Err(KernelError::InvalidInput(
                "specify either [[metric]] or [[vielbein]] entries, not both".into(),
            ));
        }
        let chart = self.chart()?;
        let n = self.dim;
        for e in self.metric.iter().chain(&self.vielbein) {
            if e.row >= n || e.col >= n {
                return Err(KernelError::InvalidInput(format!(
                    "entry index ({}, {}) outside a {n}×{n} matrix",
                    e.row, e.col
                )));
            }
        }

        let base = if !self.vielbein.is_empty() {
            // e defaults to the identity; g = eᵀηe.
            let mut polys: Vec<Vec<Polynomial>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            Polynomial::new_re(n, vec![(f64::from(r == c), vec![0; n])])
                        })
                        .collect()
                })
                .collect();
            for e in &self.vielbein {
                polys[e.row][e.col] = poly_from_terms(&e.terms, n)?;
            }
            MetricField::new(chart.clone(), move |x, order| {
                let xs: Vec<JetScalar> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &xi)| JetScalar::variable(xi, i, n, order))
                    .collect();
                let e = JetMat::from_fn(n, n, |r, c| polys[r][c].eval_jet(&xs));
                let etaj = JetMat::from_value_re(&spin::eta(), n, order);
                Ok(e.transpose().mul(&etaj).mul(&e))
            })
        } else {
            // g defaults to η; entries are mirrored.
            let eta = spin::eta();
            let mut polys: Vec<Vec<Polynomial>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| Polynomial::new_re(n, vec![(eta[(r, c)], vec![0; n])]))
                        .collect()
                })
                .collect();
            for e in &self.metric {
                let p = poly_from_terms(&e.terms, n)?;
                polys[e.row][e.col] = p.clone();
                polys[e.col][e.row] = p;
            }
            MetricField::from_polys(chart.clone(), polys)
        };

        match &self.conformal_factor {
            None => Ok(base),
            Some(terms) => {
                let phi = poly_from_terms(terms, n)?;
                Ok(MetricField::new(chart, move |x, order| {
                    let xs: Vec<JetScalar> = x
                        .iter()
                        .enumerate()
                        .map(|(i, &xi)| JetScalar::variable(xi, i, n, order))
                        .collect();
                    let scale = phi.eval_jet(&xs).scale_re(2.0).exp();
                    Ok(base.eval_at(x, order)?.scale_jet(&scale))
                }))
            }
        }
    }
}

/// Sampled nondegeneracy check: |det g| above threshold at seeded points.
/// Returns the first failing point, if any.
pub fn preflight(g: &MetricField, n_points: usize, seed: u64) -> Result<Option<(Vec<f64>, f64)>> {
    for x in sample_points(&g.chart, n_points, seed) {
        let det = g.eval_at(&x, 0)?.det()?.value().norm();
        if det < 1e-8 {
            return Ok(Some((x, det)));
        }
    }
    Ok(None)
}
