//! Scalar Lagrangian densities: Yang–Mills-type trace pairings of curvature
//! 2-forms against their Hodge duals, and the minimally coupled matter
//! Lagrangian with a unitarity-checked representation.

use super::bundle::{TractorData, TwistorData};
use crate::error::{KernelError, Result};
use crate::forms::{LocalForm, MetricField};
use crate::gauge::{ConnForm, TensorialField};
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::sync::Arc;

/// weight·Tr(a∧∗a) as a top-degree 1×1 density; `real_part` replaces the
/// trace by its real part (the pairing used for complex-algebra forms).
pub fn trace_density(
    a: &LocalForm,
    g: &MetricField,
    weight: f64,
    real_part: bool,
) -> Result<LocalForm> {
    let star = a.hodge_star(g)?;
    let w = a.wedge_with(&star, 1, 1, move |m1, m2| {
        let mut tr = m1.mul(m2).trace();
        if real_part {
            tr = tr.add(&tr.conj()).scale_re(0.5);
        }
        let mut out = JetMat::zeros(1, 1, m1.n_vars(), m1.order());
        out.set(0, 0, tr);
        Ok(out)
    })?;
    Ok(w.scale_re(weight))
}

/// The three conformal-gravity densities for the standard construction:
/// ½Tr(Ω∧∗Ω), the twistor pairing of Ω̄ with ∗Ω̄, and ½Tr(𝖶∧∗𝖶). They
/// agree for torsion-free, trace-free curvature data. The twistor pairing
/// is ReTr(Ω̄∧∗Ω̄): the Killing form on the twistor algebra is normalized
/// to match the vector-representation trace on so(1,3) ≅ sl(2,ℂ), which
/// absorbs the index factor 4 between the fundamental 2×2 trace and the
/// vector 4×4 trace.
pub fn lagrangian_conformal(
    t: &TractorData,
    tw: &TwistorData,
    g: &MetricField,
) -> Result<[LocalForm; 3]> {
    let omega = t.curvature()?;
    let omega_bar = tw.curvature()?;
    let weyl = t.curvature_blocks()?.weyl;
    Ok([
        trace_density(&omega, g, 0.5, false)?,
        trace_density(&omega_bar, g, 1.0, true)?,
        trace_density(&weyl, g, 0.5, false)?,
    ])
}

/// Check ⟨ρ*(X)u,v⟩ + ⟨u,ρ*(X)v⟩ = 0 on the algebra basis for the pairing
/// ⟨u,v⟩ = u*Qv, i.e. ρ*(X)*Q + Qρ*(X) = 0.
fn check_unitarity(field: &TensorialField, q: &DMatrix<Complex64>, nv: usize) -> Result<()> {
    let spec = &field.rep.group;
    let m = field.rep.rows;
    for x in spec.basis() {
        let xj = JetMat::from_value(x, nv, 0);
        let mut rho = DMatrix::<Complex64>::zeros(m, m);
        for j in 0..m {
            let mut ej = JetMat::zeros(m, 1, nv, 0);
            ej.set(j, 0, JetScalar::constant_re(1.0, nv, 0));
            let col = field.rep.apply_alg(&xj, &ej)?.value();
            for i in 0..m {
                rho[(i, j)] = col[(i, 0)];
            }
        }
        let resid = (rho.adjoint() * q + q * &rho).camax();
        if resid > 1e-10 {
            return Err(KernelError::RepresentationNotUnitary(format!(
                "algebra residual {resid:.3e} on basis element"
            )));
        }
    }
    Ok(())
}

/// Matter density ½Tr(F∧∗F) + ⟨Dφ,∗Dφ⟩ + U(⟨φ,φ⟩)·√|g|·vol for a degree-0
/// column field φ with pairing matrix Q; the representation must be unitary
/// for Q on the algebra basis.
pub fn lagrangian_matter(
    a: &ConnForm,
    phi: &TensorialField,
    potential: impl Fn(&JetScalar) -> JetScalar + Send + Sync + 'static,
    q: &DMatrix<Complex64>,
    g: &MetricField,
) -> Result<LocalForm> {
    if phi.form.degree != 0 || phi.form.cols != 1 {
        return Err(KernelError::DimensionMismatch(
            "matter field must be a degree-0 column".into(),
        ));
    }
    if q.nrows() != phi.form.rows || q.ncols() != phi.form.rows {
        return Err(KernelError::DimensionMismatch(
            "pairing matrix must be square of the field dimension".into(),
        ));
    }
    let n = g.chart.dim;
    check_unitarity(phi, q, n)?;

    let f = a.curvature()?;
    let l_f = trace_density(&f, g, 0.5, false)?;

    let dphi = phi.covariant_derivative(a)?;
    let star_dphi = dphi.form.hodge_star(g)?;
    let qc = q.clone();
    let l_phi = dphi.form.wedge_with(&star_dphi, 1, 1, move |m1, m2| {
        let qj = JetMat::from_value(&qc, m1.n_vars(), m1.order());
        Ok(m1.adjoint().mul(&qj).mul(m2))
    })?;

    let pot = Arc::new(potential);
    let (phif, gf, qc) = (phi.form.clone(), g.clone(), q.clone());
    let l_pot = LocalForm::new(g.chart.clone(), n, 1, 1, None, move |x, order| {
        let pj = &phif.eval_at(x, order)?[0];
        let qj = JetMat::from_value(&qc, pj.n_vars(), order);
        let norm = pj.adjoint().mul(&qj).mul(pj).get(0, 0).clone();
        let dens = pot(&norm).mul(&gf.sqrt_abs_det_at(x, order)?);
        let mut m = JetMat::zeros(1, 1, pj.n_vars(), order);
        m.set(0, 0, dens);
        Ok(vec![m])
    });

    Ok(l_f.add(&l_phi).add(&l_pot))
}
