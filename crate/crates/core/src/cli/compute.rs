//! Tabular output for the compute subcommand: curvature block components
//! and Lagrangian densities at seeded sample points, as CSV text.

use crate::conformal::bundle::{standard_tractor, standard_twistor};
use crate::conformal::lagrangian::lagrangian_conformal;
use crate::error::Result;
use crate::forms::{LocalForm, MetricField};
use crate::sample::sample_points;
use std::fmt::Write;

/// Coordinate-pair labels of the six 2-form components on a 4-chart, in
/// component storage order.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn push_point(out: &mut String, x: &[f64]) {
    for xi in x {
        let _ = write!(out, "{xi:.12e},");
    }
}

fn block_rows(
    out: &mut String,
    x: &[f64],
    block: &str,
    form: &LocalForm,
    complex: bool,
) -> Result<()> {
    let comps = form.eval_at(x, 0)?;
    for (k, m) in comps.iter().enumerate() {
        let (mu, nu) = PAIRS[k];
        for i in 0..form.rows {
            for j in 0..form.cols {
                push_point(out, x);
                let v = m.get(i, j).value();
                if complex {
                    let _ = writeln!(out, "{mu},{nu},{block},{i},{j},{:.12e},{:.12e}", v.re, v.im);
                } else {
                    let _ = writeln!(out, "{mu},{nu},{block},{i},{j},{:.12e}", v.re);
                }
            }
        }
    }
    Ok(())
}

/// CSV of the tractor curvature blocks at seeded sample points.
pub fn tractor_table(g: &MetricField, n_points: usize, seed: u64) -> Result<String> {
    let t = standard_tractor(g)?;
    let blocks = t.curvature_blocks()?;
    let mut out = String::from("x0,x1,x2,x3,comp_mu,comp_nu,block,i,j,value\n");
    for x in sample_points(&g.chart, n_points, seed) {
        block_rows(&mut out, &x, "f", &blocks.f, false)?;
        block_rows(&mut out, &x, "torsion", &blocks.torsion, false)?;
        block_rows(&mut out, &x, "weyl", &blocks.weyl, false)?;
        block_rows(&mut out, &x, "cotton", &blocks.cotton, false)?;
    }
    Ok(out)
}

/// CSV of the twistor curvature blocks (complex entries) at seeded points.
pub fn twistor_table(g: &MetricField, n_points: usize, seed: u64) -> Result<String> {
    let tw = standard_twistor(g)?;
    let blocks = tw.curvature_blocks()?;
    let mut out = String::from("x0,x1,x2,x3,comp_mu,comp_nu,block,i,j,value_re,value_im\n");
    for x in sample_points(&g.chart, n_points, seed) {
        block_rows(&mut out, &x, "f", &blocks.f, true)?;
        block_rows(&mut out, &x, "torsion_bar", &blocks.torsion_bar, true)?;
        block_rows(&mut out, &x, "weyl_bar", &blocks.weyl_bar, true)?;
        block_rows(&mut out, &x, "cotton_bar", &blocks.cotton_bar, true)?;
    }
    Ok(out)
}

/// CSV of the three Lagrangian densities and their pairwise relative
/// differences at seeded points.
pub fn lagrangian_table(g: &MetricField, n_points: usize, seed: u64) -> Result<String> {
    let dens = lagrangian_conformal(&standard_tractor(g)?, &standard_twistor(g)?, g)?;
    let mut out = String::from(
        "x0,x1,x2,x3,tractor,twistor,weyl,rel_diff_tractor_twistor,\
         rel_diff_tractor_weyl,rel_diff_twistor_weyl\n",
    );
    for x in sample_points(&g.chart, n_points, seed) {
        let v: Vec<f64> = dens
            .iter()
            .map(|d| d.eval_at(&x, 0).map(|c| c[0].get(0, 0).value().re))
            .collect::<Result<_>>()?;
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-10);
        push_point(&mut out, &x);
        let _ = writeln!(
            out,
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
            v[0],
            v[1],
            v[2],
            rel(v[0], v[1]),
            rel(v[0], v[2]),
            rel(v[1], v[2]),
        );
    }
    Ok(out)
}
