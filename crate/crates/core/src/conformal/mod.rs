//! Conformal tractor/twistor calculus: curvature tensors from metric jets,
//! the metric vielbein and torsion-free spin connection, the Schouten form,
//! the assembled tractor and twistor connections with their curvature
//! blocks, and the conformal-gravity Lagrangians.
//!
//! Conventions: Riemann R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ}
//! − Γ^ρ_{νλ}Γ^λ_{μσ}, Ricci R_{σν} = R^ρ_{σρν} (spheres positive), Schouten
//! P = (Ric − R/(2(n−1))·g)/(n−2).

pub mod bundle;
pub mod lagrangian;

use crate::cartan::{metric_from_soldering, Vielbein};
use crate::cocycle::FrameField;
use crate::error::Result;
use crate::forms::{LocalForm, MetricField};
use crate::gauge::JetField;
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use crate::lie::catalog as groups;
use crate::lie::spin;

/// Christoffel symbols Γ^λ_{μν} as jets at `x`: entry λ of the result is the
/// symmetric (μ,ν) matrix. Consumes one metric jet order.
pub fn christoffels_at(g: &MetricField, x: &[f64], order: usize) -> Result<Vec<JetMat>> {
    let n = g.chart.dim;
    let gj = g.eval_at(x, order + 1)?;
    let ginv = gj.truncate(order).inverse()?;
    let dg: Vec<JetMat> = (0..n).map(|r| gj.deriv(r)).collect();
    let nv = gj.n_vars();
    let mut out = Vec::with_capacity(n);
    for lam in 0..n {
        let mut m = JetMat::zeros(n, n, nv, order);
        for mu in 0..n {
            for nu in 0..n {
                let mut s = JetScalar::constant_re(0.0, nv, order);
                for rho in 0..n {
                    let term = dg[mu]
                        .get(rho, nu)
                        .add(dg[nu].get(rho, mu))
                        .sub(dg[rho].get(mu, nu));
                    s = s.add(&ginv.get(lam, rho).mul(&term));
                }
                m.set(mu, nu, s.scale_re(0.5));
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Riemann tensor jets at `x`: `riem[μ][ν]` is the (ρ,σ) matrix R^ρ_{σμν}.
/// Consumes two metric jet orders.
pub fn riemann_at(g: &MetricField, x: &[f64], order: usize) -> Result<Vec<Vec<JetMat>>> {
    let n = g.chart.dim;
    let gam_hi = christoffels_at(g, x, order + 1)?;
    let gam: Vec<JetMat> = gam_hi.iter().map(|m| m.truncate(order)).collect();
    let nv = gam[0].n_vars();
    let mut out = Vec::with_capacity(n);
    for mu in 0..n {
        let mut row = Vec::with_capacity(n);
        for nu in 0..n {
            let mut m = JetMat::zeros(n, n, nv, order);
            for rho in 0..n {
                for sig in 0..n {
                    let mut s = gam_hi[rho]
                        .deriv(mu)
                        .get(nu, sig)
                        .sub(gam_hi[rho].deriv(nu).get(mu, sig));
                    for lam in 0..n {
                        s = s
                            .add(&gam[rho].get(mu, lam).mul(gam[lam].get(nu, sig)))
                            .sub(&gam[rho].get(nu, lam).mul(gam[lam].get(mu, sig)));
                    }
                    m.set(rho, sig, s);
                }
            }
            row.push(m);
        }
        out.push(row);
    }
    Ok(out)
}

/// Ricci tensor jets R_{σν} = R^ρ_{σρν} at `x`.
pub fn ricci_at(g: &MetricField, x: &[f64], order: usize) -> Result<JetMat> {
    let n = g.chart.dim;
    let riem = riemann_at(g, x, order)?;
    let nv = riem[0][0].n_vars();
    let mut ric = JetMat::zeros(n, n, nv, order);
    for sig in 0..n {
        for nu in 0..n {
            let mut s = JetScalar::constant_re(0.0, nv, order);
            for rho in 0..n {
                s = s.add(riem[rho][nu].get(rho, sig));
            }
            ric.set(sig, nu, s);
        }
    }
    Ok(ric)
}

/// Scalar curvature jets R = g^{σν}R_{σν} at `x`.
pub fn scalar_curvature_at(g: &MetricField, x: &[f64], order: usize) -> Result<JetScalar> {
    let n = g.chart.dim;
    let ric = ricci_at(g, x, order)?;
    let ginv = g.inverse_at(x, order)?;
    let nv = ric.n_vars();
    let mut s = JetScalar::constant_re(0.0, nv, order);
    for sig in 0..n {
        for nu in 0..n {
            s = s.add(&ginv.get(sig, nu).mul(ric.get(sig, nu)));
        }
    }
    Ok(s)
}

/// Coordinate Schouten tensor jets P_{μν} = (R_{μν} − R/(2(n−1))·g_{μν})/(n−2).
pub fn schouten_coord_at(g: &MetricField, x: &[f64], order: usize) -> Result<JetMat> {
    let n = g.chart.dim;
    let ric = ricci_at(g, x, order)?;
    let r = scalar_curvature_at(g, x, order)?;
    let gj = g.eval_at(x, order)?;
    let trace_part = gj.scale_jet(&r.scale_re(1.0 / (2.0 * (n as f64 - 1.0))));
    Ok(ric.sub(&trace_part).scale_re(1.0 / (n as f64 - 2.0)))
}

/// Vielbein e^a_μ with eᵀηe = g, realized as the principal square root of
/// ηg (which is η-self-adjoint, so the root is too).
pub fn vielbein_from_metric(g: &MetricField) -> Vielbein {
    assert_eq!(g.chart.dim, 4);
    let chart = g.chart.clone();
    let gf = g.clone();
    let frame = FrameField::new(4, 4, move |x, order| {
        let gj = gf.eval_at(x, order)?;
        let etaj = JetMat::from_value_re(&spin::eta(), gj.n_vars(), order);
        etaj.mul(&gj).sqrt()
    });
    Vielbein {
        chart,
        frame,
        eta: spin::eta(),
    }
}

/// Torsion-free metric spin connection A^a_{b,μ} = e^a_ν(∂_μ(e⁻¹)^ν_b +
/// Γ^ν_{μσ}(e⁻¹)^σ_b) with Γ the Levi-Civita symbols of g = eᵀηe; satisfies
/// de + A∧e = 0 and η-antisymmetry. Consumes one jet order.
pub fn spin_connection(e: &Vielbein) -> LocalForm {
    let g = metric_from_soldering(e);
    let frame = e.frame.clone();
    let n = e.chart.dim;
    LocalForm::new(
        e.chart.clone(),
        1,
        n,
        n,
        Some(groups::so13()),
        move |x, order| {
            let gam = christoffels_at(&g, x, order)?;
            let ej = frame.eval_at(x, order)?;
            let einv_hi = frame.inverse_at(x, order + 1)?;
            let einv = einv_hi.truncate(order);
            let nv = ej.n_vars();
            let mut comps = Vec::with_capacity(n);
            for mu in 0..n {
                // D(ν,b) = ∂_μ(e⁻¹)^ν_b + Σ_σ Γ^ν_{μσ}(e⁻¹)^σ_b
                let mut d = einv_hi.deriv(mu);
                let mut corr = JetMat::zeros(n, n, nv, order);
                for nu in 0..n {
                    for b in 0..n {
                        let mut s = JetScalar::constant_re(0.0, nv, order);
                        for sig in 0..n {
                            s = s.add(&gam[nu].get(mu, sig).mul(einv.get(sig, b)));
                        }
                        corr.set(nu, b, s);
                    }
                }
                d = d.add(&corr);
                comps.push(ej.mul(&d));
            }
            Ok(comps)
        },
    )
}

/// Schouten data of a metric: the 1-form P with row values (P_μ)_a =
/// P_{νμ}(e⁻¹)^ν_a (frame covector index), and the scalar curvature as a
/// 1×1 jet field.
pub fn schouten(g: &MetricField) -> (LocalForm, JetField) {
    let e = vielbein_from_metric(g);
    let n = g.chart.dim;
    let gp = g.clone();
    let p = LocalForm::new(g.chart.clone(), 1, 1, n, None, move |x, order| {
        let pc = schouten_coord_at(&gp, x, order)?;
        let einv = e.frame.inverse_at(x, order)?;
        let nv = pc.n_vars();
        let mut comps = Vec::with_capacity(n);
        for mu in 0..n {
            let mut row = JetMat::zeros(1, n, nv, order);
            for a in 0..n {
                let mut s = JetScalar::constant_re(0.0, nv, order);
                for nu in 0..n {
                    s = s.add(&pc.get(nu, mu).mul(einv.get(nu, a)));
                }
                row.set(0, a, s);
            }
            comps.push(row);
        }
        Ok(comps)
    });
    let gr = g.clone();
    let r = JetField::new(n, move |x, order| {
        let s = scalar_curvature_at(&gr, x, order)?;
        let mut m = JetMat::zeros(1, 1, s.n_vars(), order);
        m.set(0, 0, s);
        Ok(m)
    });
    (p, r)
}
