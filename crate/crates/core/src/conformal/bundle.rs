//! Assembled tractor (6×6 real) and twistor (4×4 complex) connections with
//! their curvature block extraction and the Ricci contraction of the middle
//! block.

use super::{schouten, spin_connection, vielbein_from_metric};
use crate::cartan::Vielbein;
use crate::cocycle::catalog as ccat;
use crate::error::{KernelError, Result};
use crate::forms::{Chart, LocalForm, MetricField};
use crate::gauge::ConnForm;
use crate::jetmat::JetMat;
use crate::lie::catalog as groups;
use crate::lie::spin::{self, SpinLift};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// The Schouten block enters the connection with this sign, chosen so that
/// the middle curvature block of the standard construction is the Weyl
/// tensor (trace-free) under the crate's Riemann convention.
pub const SCHOUTEN_BLOCK_SIGN: f64 = -1.0;

/// The standard tractor data: vielbein, spin connection, Schouten 1-form,
/// and the assembled 6×6 connection ϖ with blocks
/// [[0, P, 0], [e, A, Pᵗ], [0, eᵗ, 0]] (P carrying the block sign).
#[derive(Clone)]
pub struct TractorData {
    pub chart: Chart,
    pub vielbein: Vielbein,
    pub spin_conn: LocalForm,
    pub schouten_form: LocalForm,
    pub conn: LocalForm,
}

/// Curvature blocks of the tractor connection: f (scalar), torsion 𝖳
/// (column), Weyl 𝖶 (4×4), Cotton 𝖢 (row).
#[derive(Clone)]
pub struct TractorCurvatureBlocks {
    pub f: LocalForm,
    pub torsion: LocalForm,
    pub weyl: LocalForm,
    pub cotton: LocalForm,
}

/// The twistor data: bar-mapped blocks ē, Ā, P̄ and the assembled 4×4
/// complex connection [[−Ā*, −iP̄], [iē, Ā]]. The ē and P̄ blocks carry a
/// √2 normalization relative to the plain bar maps so that the ē∧P̄
/// product splits into the spin lift of the vector-index blocks plus the
/// ±f/2 trace terms.
#[derive(Clone)]
pub struct TwistorData {
    pub chart: Chart,
    pub vielbein: Vielbein,
    pub e_bar: LocalForm,
    pub a_bar: LocalForm,
    pub p_bar: LocalForm,
    pub conn: LocalForm,
}

/// Twistor curvature blocks: f (scalar), T̄, 𝖶̄, 𝖢̄ (2×2 each).
#[derive(Clone)]
pub struct TwistorCurvatureBlocks {
    pub f: LocalForm,
    pub torsion_bar: LocalForm,
    pub weyl_bar: LocalForm,
    pub cotton_bar: LocalForm,
}

fn check_shapes(a: &LocalForm, p: &LocalForm) -> Result<()> {
    if a.degree != 1 || a.rows != 4 || a.cols != 4 {
        return Err(KernelError::DimensionMismatch(
            "spin connection must be a 4×4 1-form".into(),
        ));
    }
    if p.degree != 1 || p.rows != 1 || p.cols != 4 {
        return Err(KernelError::DimensionMismatch(
            "Schouten form must be a 1×4 row 1-form".into(),
        ));
    }
    Ok(())
}

/// Assemble the tractor connection from vielbein, spin connection, and
/// Schouten 1-form.
pub fn tractor_connection(e: &Vielbein, a: &LocalForm, p: &LocalForm) -> Result<TractorData> {
    check_shapes(a, p)?;
    let chart = e.chart.clone();
    let eta = spin::eta();
    let frame = e.frame.clone();
    let (af, pf) = (a.clone(), p.clone());
    let n = chart.dim;
    let conn = LocalForm::new(
        chart.clone(),
        1,
        6,
        6,
        Some(groups::tractor_gprime()),
        move |x, order| {
            let ej = frame.eval_at(x, order)?;
            let ac = af.eval_at(x, order)?;
            let pc = pf.eval_at(x, order)?;
            let nv = ej.n_vars();
            let mut comps = Vec::with_capacity(n);
            for mu in 0..n {
                let mut m = JetMat::zeros(6, 6, nv, order);
                for b in 0..4 {
                    let pb = pc[mu].get(0, b).scale_re(SCHOUTEN_BLOCK_SIGN);
                    m.set(0, 1 + b, pb.clone());
                    // Pᵗ = ηPᵀ, eᵗ = ηeᵀ (diagonal η)
                    m.set(1 + b, 5, pb.scale_re(eta[(b, b)]));
                    m.set(1 + b, 0, ej.get(b, mu).clone());
                    m.set(5, 1 + b, ej.get(b, mu).scale_re(eta[(b, b)]));
                }
                m.set_block(1, 1, &ac[mu]);
                comps.push(m);
            }
            Ok(comps)
        },
    );
    Ok(TractorData {
        chart,
        vielbein: e.clone(),
        spin_conn: a.clone(),
        schouten_form: p.clone(),
        conn,
    })
}

/// The standard tractor connection of a metric: vielbein from g, the
/// torsion-free spin connection, and the Schouten form.
pub fn standard_tractor(g: &MetricField) -> Result<TractorData> {
    let e = vielbein_from_metric(g);
    let a = spin_connection(&e);
    let (p, _) = schouten(g);
    tractor_connection(&e, &a, &p)
}

/// Assemble the twistor connection from the same inputs through the bar
/// maps and the spin lift of A.
pub fn twistor_connection(e: &Vielbein, a: &LocalForm, p: &LocalForm) -> Result<TwistorData> {
    check_shapes(a, p)?;
    let chart = e.chart.clone();
    let frame = e.frame.clone();
    let (af, pf) = (a.clone(), p.clone());
    let n = chart.dim;
    let mk = |which: usize| {
        let frame = frame.clone();
        let (af, pf) = (af.clone(), pf.clone());
        let lift = SpinLift::new();
        LocalForm::new(chart.clone(), 1, 2, 2, None, move |x, order| {
            let mut comps = Vec::with_capacity(n);
            for mu in 0..n {
                let m = match which {
                    0 => {
                        let ej = frame.eval_at(x, order)?;
                        spin::bar_vec_jet(&ej.block(0, mu, 4, 1)).scale_re(std::f64::consts::SQRT_2)
                    }
                    1 => {
                        let ac = af.eval_at(x, order)?;
                        lift.lift_jet(&ac[mu])
                    }
                    _ => {
                        let pc = pf.eval_at(x, order)?;
                        spin::bar_covec_jet(&pc[mu].scale_re(SCHOUTEN_BLOCK_SIGN))
                            .scale_re(std::f64::consts::SQRT_2)
                    }
                };
                comps.push(m);
            }
            Ok(comps)
        })
    };
    let e_bar = mk(0);
    let a_bar = mk(1);
    let p_bar = mk(2);
    let (eb, ab, pb) = (e_bar.clone(), a_bar.clone(), p_bar.clone());
    let i = Complex64::new(0.0, 1.0);
    let conn = LocalForm::new(
        chart.clone(),
        1,
        4,
        4,
        Some(groups::twistor_gprime()),
        move |x, order| {
            let ec = eb.eval_at(x, order)?;
            let ac = ab.eval_at(x, order)?;
            let pc = pb.eval_at(x, order)?;
            let nv = ac[0].n_vars();
            let mut comps = Vec::with_capacity(n);
            for mu in 0..n {
                let mut m = JetMat::zeros(4, 4, nv, order);
                m.set_block(0, 0, &ac[mu].adjoint().neg());
                m.set_block(0, 2, &pc[mu].scale(-i));
                m.set_block(2, 0, &ec[mu].scale(i));
                m.set_block(2, 2, &ac[mu]);
                comps.push(m);
            }
            Ok(comps)
        },
    );
    Ok(TwistorData {
        chart,
        vielbein: e.clone(),
        e_bar,
        a_bar,
        p_bar,
        conn,
    })
}

/// The standard twistor connection of a metric.
pub fn standard_twistor(g: &MetricField) -> Result<TwistorData> {
    let e = vielbein_from_metric(g);
    let a = spin_connection(&e);
    let (p, _) = schouten(g);
    twistor_connection(&e, &a, &p)
}

fn full_curvature(conn: &LocalForm) -> Result<LocalForm> {
    Ok(conn.d().add(&conn.wedge(conn)?))
}

impl TractorData {
    /// Curvature Ω = dϖ + ϖ∧ϖ.
    pub fn curvature(&self) -> Result<LocalForm> {
        full_curvature(&self.conn)
    }

    /// Extract the (f | 𝖳 | 𝖶 | 𝖢) blocks of the curvature.
    pub fn curvature_blocks(&self) -> Result<TractorCurvatureBlocks> {
        let omega = self.curvature()?;
        Ok(TractorCurvatureBlocks {
            f: omega.map_components(1, 1, |m| m.block(0, 0, 1, 1)),
            torsion: omega.map_components(4, 1, |m| m.block(1, 0, 4, 1)),
            weyl: omega.map_components(4, 4, |m| m.block(1, 1, 4, 4)),
            cotton: omega.map_components(1, 4, |m| m.block(0, 1, 1, 4)),
        })
    }

    /// The connection with its Weyl cocycle attached (frame = vielbein).
    pub fn conn_form(&self) -> Result<ConnForm> {
        ConnForm::new(
            self.conn.clone(),
            ccat::tractor_cocycle(self.vielbein.frame.clone()),
        )
    }
}

impl TwistorData {
    /// Curvature Ω̄ = dϖ̄ + ϖ̄∧ϖ̄.
    pub fn curvature(&self) -> Result<LocalForm> {
        full_curvature(&self.conn)
    }

    /// Extract (f | T̄ | 𝖶̄ | 𝖢̄) from the block layout
    /// [[−𝖶̄* + (f/2)𝟙, −i√2 𝖢̄], [i√2 T̄, 𝖶̄ − (f/2)𝟙]], undoing the √2
    /// normalization so T̄ and 𝖢̄ are the plain bar images of the tractor
    /// blocks.
    pub fn curvature_blocks(&self) -> Result<TwistorCurvatureBlocks> {
        let omega = self.curvature()?;
        let i = Complex64::new(0.0, 1.0);
        Ok(TwistorCurvatureBlocks {
            f: omega.map_components(1, 1, |m| {
                let tr = m.block(2, 2, 2, 2).trace();
                let mut out = JetMat::zeros(1, 1, m.n_vars(), m.order());
                out.set(0, 0, tr.neg());
                out
            }),
            torsion_bar: omega.map_components(2, 2, move |m| {
                m.block(2, 0, 2, 2).scale(-i / std::f64::consts::SQRT_2)
            }),
            weyl_bar: omega.map_components(2, 2, |m| {
                let d = m.block(2, 2, 2, 2);
                let half_f = d.trace().scale_re(-0.5);
                let eye = JetMat::identity(2, m.n_vars(), m.order());
                d.add(&eye.scale_jet(&half_f))
            }),
            cotton_bar: omega.map_components(2, 2, move |m| {
                m.block(0, 2, 2, 2).scale(i / std::f64::consts::SQRT_2)
            }),
        })
    }

    /// The connection with its Weyl cocycle attached (frame = vielbein).
    pub fn conn_form(&self) -> Result<ConnForm> {
        ConnForm::new(
            self.conn.clone(),
            ccat::twistor_cocycle(self.vielbein.frame.clone()),
        )
    }
}

/// Ricci contraction of the middle curvature block at a point:
/// Ricc(𝖶)_{bd} = Σ_a 𝖶(e_a, e_d)^a_b in frame indices.
pub fn ricc_w_at(w: &LocalForm, e: &Vielbein, x: &[f64]) -> Result<DMatrix<Complex64>> {
    let einv = e.frame.inverse_at(x, 0)?.value();
    let mut out = DMatrix::<Complex64>::zeros(4, 4);
    for a in 0..4 {
        let va: Vec<f64> = (0..4).map(|mu| einv[(mu, a)].re).collect();
        for d in 0..4 {
            let vd: Vec<f64> = (0..4).map(|mu| einv[(mu, d)].re).collect();
            let m = w.eval_on_vectors(x, &[va.clone(), vd])?.value();
            for b in 0..4 {
                out[(b, d)] += m[(a, b)];
            }
        }
    }
    Ok(out)
}
