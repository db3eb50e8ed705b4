//! Built-in cocycle catalog: group-morphism cocycles, the tractor and
//! twistor dilation cocycles (frame-dependent, jet-consuming), and the
//! abelian scalar cocycle.

use super::{FrameField, GaugeJet, KCompat, LocalCocycle};
use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use crate::lie::catalog as groups;
use crate::lie::{spin, GroupSpec};
use num_complex::Complex64;
use std::sync::Arc;

/// Jet-independent cocycle from a group morphism ρ: H → G, supplied with its
/// algebra differential ρ*.
pub fn morphism_cocycle(
    source: GroupSpec,
    target: GroupSpec,
    map: impl Fn(&JetMat) -> Result<JetMat> + Send + Sync + 'static,
    alg_map: impl Fn(&JetMat) -> Result<JetMat> + Send + Sync + 'static,
) -> LocalCocycle {
    let map = Arc::new(map);
    let alg_map = Arc::new(alg_map);
    let m2 = map.clone();
    LocalCocycle::new(
        source,
        target,
        None,
        None,
        None,
        Arc::new(move |_, gamma: &GaugeJet, _| m2(&gamma.mat)),
        Arc::new(move |_, chi: &JetMat, _| alg_map(chi)),
    )
}

/// The abelian cocycle into nonzero complex scalars: the identity morphism
/// on ℂ* (used by the dressing construction).
pub fn abelian_cocycle() -> LocalCocycle {
    let g = groups::complex_scalars();
    morphism_cocycle(g.clone(), g, |m| Ok(m.clone()), |m| Ok(m.clone()))
}

/// Υ(z)_a = z⁻¹ ∂_μz e^μ_a as a 1×4 row of jets; consumes one jet order.
fn upsilon_row(z: &JetScalar, einv: &JetMat) -> Result<JetMat> {
    let (nv, ord) = (einv.n_vars(), einv.order());
    let zrec = z.truncate(ord).recip()?;
    let mut ups = JetMat::zeros(1, 4, nv, ord);
    for a in 0..4 {
        let mut s = JetScalar::constant_re(0.0, nv, ord);
        for mu in 0..4 {
            s = s.add(&z.deriv(mu).mul(einv.get(mu, a)));
        }
        ups.set(0, a, zrec.mul(&s));
    }
    Ok(ups)
}

fn need_frame<'a>(frame: Option<&'a FrameField>, who: &str) -> Result<&'a FrameField> {
    frame.ok_or_else(|| KernelError::FrameDataMissing(format!("{who} cocycle needs a vielbein")))
}

/// υ_a = ∂_με e^μ_a for the identity differential (ε a scalar jet).
fn upsilon_lin(eps: &JetScalar, einv: &JetMat) -> JetMat {
    let (nv, ord) = (einv.n_vars(), einv.order());
    let mut ups = JetMat::zeros(1, 4, nv, ord);
    for a in 0..4 {
        let mut s = JetScalar::constant_re(0.0, nv, ord);
        for mu in 0..4 {
            s = s.add(&eps.deriv(mu).mul(einv.get(mu, a)));
        }
        ups.set(0, a, s);
    }
    ups
}

/// The tractor cocycle C(z) for Weyl dilations z, valued in the 6×6
/// parabolic target; needs a vielbein and consumes one jet order.
pub fn tractor_cocycle(frame: FrameField) -> LocalCocycle {
    let eta = spin::eta();
    let eta2 = eta.clone();
    let eval = Arc::new(move |x: &[f64], gamma: &GaugeJet, frame: Option<&FrameField>| {
        let frame = need_frame(frame, "tractor")?;
        let ord = gamma
            .order()
            .checked_sub(1)
            .ok_or(KernelError::UnsupportedOrder(0))?;
        let nv = gamma.mat.n_vars();
        let z = gamma.mat.get(0, 0).clone();
        let einv = frame.inverse_at(x, ord)?;
        let ups = upsilon_row(&z, &einv)?;
        let zt = z.truncate(ord);
        let zrec = zt.recip()?;
        let mut c = JetMat::identity(6, nv, ord);
        c.set(0, 0, zt);
        c.set(5, 5, zrec.clone());
        let mut quad = JetScalar::constant_re(0.0, nv, ord);
        for a in 0..4 {
            c.set(0, 1 + a, ups.get(0, a).clone());
            // Υᵗ = ηΥᵀ (diagonal η)
            let upst = ups.get(0, a).scale_re(eta[(a, a)]);
            c.set(1 + a, 5, zrec.mul(&upst));
            quad = quad.add(&ups.get(0, a).mul(&upst));
        }
        c.set(0, 5, zrec.mul(&quad).scale_re(0.5));
        Ok(c)
    });
    let diff = Arc::new(move |x: &[f64], chi: &JetMat, frame: Option<&FrameField>| {
        let frame = need_frame(frame, "tractor")?;
        let ord = chi
            .order()
            .checked_sub(1)
            .ok_or(KernelError::UnsupportedOrder(0))?;
        let nv = chi.n_vars();
        let eps = chi.get(0, 0).clone();
        let einv = frame.inverse_at(x, ord)?;
        let ups = upsilon_lin(&eps, &einv);
        let et = eps.truncate(ord);
        let mut c = JetMat::zeros(6, 6, nv, ord);
        c.set(0, 0, et.clone());
        c.set(5, 5, et.neg());
        for a in 0..4 {
            c.set(0, 1 + a, ups.get(0, a).clone());
            c.set(1 + a, 5, ups.get(0, a).scale_re(eta2[(a, a)]));
        }
        Ok(c)
    });
    let k_compat = KCompat {
        k_spec: groups::so13(),
        embed: Arc::new(|s| groups::tractor_embed_so_jet(s)),
        embed_alg: Arc::new(|s| {
            // diag(0, s, 0)
            let mut m = JetMat::zeros(6, 6, s.n_vars(), s.order());
            m.set_block(1, 1, s);
            m
        }),
        // e^S = S⁻¹e on the frame data
        frame_action: Arc::new(|zeta, frame| frame.transformed_at_point(zeta)),
    };
    LocalCocycle::new(
        groups::weyl_dilations(),
        groups::tractor_g(),
        Some(frame),
        Some(k_compat),
        // section dilation by z rescales the vielbein: e ↦ z·e
        Some(Arc::new(|g, frame| Ok(frame.scaled_at_point(g.get(0, 0))))),
        eval,
        diff,
    )
}

/// The twistor cocycle C̄(z) for Weyl dilations, valued in the 4×4 complex
/// target; needs a vielbein and consumes one jet order.
pub fn twistor_cocycle(frame: FrameField) -> LocalCocycle {
    let eval = Arc::new(move |x: &[f64], gamma: &GaugeJet, frame: Option<&FrameField>| {
        let frame = need_frame(frame, "twistor")?;
        let ord = gamma
            .order()
            .checked_sub(1)
            .ok_or(KernelError::UnsupportedOrder(0))?;
        let nv = gamma.mat.n_vars();
        let z = gamma.mat.get(0, 0).clone();
        let einv = frame.inverse_at(x, ord)?;
        let ups = upsilon_row(&z, &einv)?;
        let ubar = spin::bar_covec_jet(&ups);
        let zhalf = z.truncate(ord).sqrt()?;
        let zmhalf = zhalf.recip()?;
        let mut c = JetMat::zeros(4, 4, nv, ord);
        for i in 0..2 {
            c.set(i, i, zhalf.clone());
            c.set(2 + i, 2 + i, zmhalf.clone());
        }
        let mi = JetScalar::constant(Complex64::new(0.0, -1.0), nv, ord);
        for i in 0..2 {
            for j in 0..2 {
                c.set(i, 2 + j, mi.mul(&zmhalf).mul(ubar.get(i, j)));
            }
        }
        Ok(c)
    });
    let diff = Arc::new(move |x: &[f64], chi: &JetMat, frame: Option<&FrameField>| {
        let frame = need_frame(frame, "twistor")?;
        let ord = chi
            .order()
            .checked_sub(1)
            .ok_or(KernelError::UnsupportedOrder(0))?;
        let nv = chi.n_vars();
        let eps = chi.get(0, 0).clone();
        let einv = frame.inverse_at(x, ord)?;
        let ubar = spin::bar_covec_jet(&upsilon_lin(&eps, &einv));
        let half = eps.truncate(ord).scale_re(0.5);
        let mut c = JetMat::zeros(4, 4, nv, ord);
        for i in 0..2 {
            c.set(i, i, half.clone());
            c.set(2 + i, 2 + i, half.neg());
        }
        let mi = JetScalar::constant(Complex64::new(0.0, -1.0), nv, ord);
        for i in 0..2 {
            for j in 0..2 {
                c.set(i, 2 + j, mi.mul(ubar.get(i, j)));
            }
        }
        Ok(c)
    });
    let k_compat = KCompat {
        k_spec: groups::sl2c(),
        embed: Arc::new(|s| groups::twistor_embed_sl_jet(s)),
        embed_alg: Arc::new(|s| {
            // diag(−s̄*, s̄)
            let mut m = JetMat::zeros(4, 4, s.n_vars(), s.order());
            m.set_block(0, 0, &s.adjoint().neg());
            m.set_block(2, 2, s);
            m
        }),
        // e^{S̄} = S⁻¹e through the double cover of S̄
        frame_action: Arc::new(|zeta, frame| {
            frame.transformed_at_point(&spin::double_cover_jet(zeta))
        }),
    };
    LocalCocycle::new(
        groups::weyl_dilations(),
        groups::twistor_g(),
        Some(frame),
        Some(k_compat),
        // section dilation by z rescales the vielbein: e ↦ z·e
        Some(Arc::new(|g, frame| Ok(frame.scaled_at_point(g.get(0, 0))))),
        eval,
        diff,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::GaugeField;
    use crate::jets::Polynomial;
    use nalgebra::{DMatrix, RowDVector};

    const NV: usize = 4;

    fn test_frame() -> FrameField {
        // a well-conditioned non-constant frame: e = I + small polynomial skews
        FrameField::new(4, NV, |x, order| {
            let xs: Vec<JetScalar> = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, NV, order))
                .collect();
            let mut e = JetMat::identity(4, NV, order);
            let bump = |c: f64, i: usize, j: usize| {
                Polynomial::new_re(NV, vec![(c, {
                    let mut ex = vec![0u8; 4];
                    ex[i] = 1;
                    ex[j] += 1;
                    ex
                })])
            };
            e.set(0, 1, bump(0.12, 0, 1).eval_jet(&xs));
            e.set(1, 2, bump(-0.08, 1, 1).eval_jet(&xs));
            e.set(2, 3, bump(0.15, 2, 3).eval_jet(&xs));
            e.set(3, 0, bump(0.1, 0, 2).eval_jet(&xs));
            Ok(e)
        })
    }

    fn weyl_field(c: &[f64; 4]) -> GaugeField {
        let p = Polynomial::new_re(
            NV,
            vec![
                (c[0], vec![1, 0, 0, 0]),
                (c[1], vec![0, 1, 0, 0]),
                (c[2], vec![0, 0, 2, 0]),
                (c[3], vec![0, 1, 0, 1]),
            ],
        );
        GaugeField::from_alg_polys(groups::weyl_dilations(), NV, vec![p])
    }

    #[test]
    fn morphism_identity_jet_gives_identity() {
        let c = morphism_cocycle(
            groups::so13(),
            groups::tractor_gso(),
            |m| Ok(groups::tractor_embed_so_jet(m)),
            |m| {
                // dρ(χ) = diag(0, χ, 0)
                let mut out = JetMat::zeros(6, 6, m.n_vars(), m.order());
                out.set_block(1, 1, m);
                Ok(out)
            },
        );
        let id = GaugeJet::identity(&groups::so13(), vec![0.0; 4], NV, 2);
        let v = c.evaluate(&id).unwrap();
        assert!(v.sub(&JetMat::identity(6, NV, 2)).max_abs() < 1e-14);
    }

    #[test]
    fn abelian_cocycle_is_identity_map() {
        let c = abelian_cocycle();
        let g = GaugeField::from_alg_polys(
            groups::complex_scalars(),
            NV,
            vec![
                Polynomial::new_re(NV, vec![(0.4, vec![1, 0, 0, 0])]),
                Polynomial::new_re(NV, vec![(0.7, vec![0, 0, 1, 0])]),
            ],
        );
        let x = [0.2, -0.1, 0.3, 0.05];
        let jet = g.jet_at(&x, 2).unwrap();
        let v = c.evaluate(&jet).unwrap();
        assert!(v.sub(&jet.mat).max_abs() < 1e-14);
    }

    #[test]
    fn tractor_constant_z_is_diagonal() {
        // constant z: Υ = 0, C = diag(z, 1₄, z⁻¹)
        let z0 = 1.7;
        let g = GaugeField::new(groups::weyl_dilations(), NV, move |_, order| {
            Ok(JetMat::from_value_re(
                &DMatrix::from_element(1, 1, z0),
                NV,
                order,
            ))
        });
        let c = tractor_cocycle(test_frame());
        let x = [0.1, 0.2, -0.1, 0.3];
        let v = c.evaluate(&g.jet_at(&x, 2).unwrap()).unwrap().value();
        let expect = groups::tractor_elem(z0, &RowDVector::zeros(4));
        for r in 0..6 {
            for cc in 0..6 {
                assert!((v[(r, cc)].re - expect[(r, cc)]).abs() < 1e-12);
                assert!(v[(r, cc)].im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn tractor_upsilon_matches_direct_recomputation() {
        // z(x) = 1 + 0.4·x⁰ near x = 0: Υ_a = z⁻¹∂_μz e^μ_a recomputed by hand
        let g = GaugeField::new(groups::weyl_dilations(), NV, |x, order| {
            let z = JetScalar::variable(x[0], 0, NV, order)
                .scale_re(0.4)
                .add(&JetScalar::constant_re(1.0, NV, order));
            let mut m = JetMat::zeros(1, 1, NV, order);
            m.set(0, 0, z);
            Ok(m)
        });
        let frame = test_frame();
        let c = tractor_cocycle(frame.clone());
        let x = [0.0, 0.0, 0.0, 0.0];
        let v = c.evaluate(&g.jet_at(&x, 2).unwrap()).unwrap().value();
        let einv = frame.inverse_at(&x, 0).unwrap().value();
        // ∂_μ z = (0.4, 0, 0, 0), z = 1
        let ups: Vec<f64> = (0..4).map(|a| 0.4 * einv[(0, a)].re).collect();
        for a in 0..4 {
            assert!((v[(0, 1 + a)].re - ups[a]).abs() < 1e-12);
        }
        let eta = spin::eta();
        let quad: f64 = (0..4).map(|a| ups[a] * ups[a] * eta[(a, a)]).sum();
        assert!((v[(0, 5)].re - 0.5 * quad).abs() < 1e-12);
    }

    #[test]
    fn gauge_compose_coherence() {
        // composing with η then ξ equals composing with ηξ
        let c = tractor_cocycle(test_frame());
        let gamma = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let eta_f = weyl_field(&[-0.1, 0.25, 0.05, -0.3]);
        let xi_f = weyl_field(&[0.2, 0.1, -0.12, 0.08]);
        let x = [0.15, -0.2, 0.1, 0.25];
        let gj = gamma.jet_at(&x, 3).unwrap();
        let ej = eta_f.jet_at(&x, 3).unwrap();
        let xj = xi_f.jet_at(&x, 3).unwrap();
        // (C(γ)^η)^ξ = [C(η)^ξ]⁻¹ · C(γη)^ξ must equal C(γ)^{ηξ}
        let lhs = c.gauge_compose(&gj, &ej.product(&xj).unwrap()).unwrap();
        let cetaxi = c.gauge_compose(&ej, &xj).unwrap();
        let rhs = cetaxi
            .inverse()
            .unwrap()
            .mul(&c.gauge_compose(&gj.product(&ej).unwrap(), &xj).unwrap());
        assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }

    #[test]
    fn gauge_compose_tractor_both_sides() {
        // C(z)^{z′} = C(z′)⁻¹C(zz′), both sides evaluated independently
        let c = tractor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let zp_f = weyl_field(&[-0.15, 0.2, 0.1, -0.25]);
        let x = [0.1, 0.3, -0.2, 0.15];
        let zj = z_f.jet_at(&x, 2).unwrap();
        let zpj = zp_f.jet_at(&x, 2).unwrap();
        let lhs = c.gauge_compose(&zj, &zpj).unwrap();
        let rhs = c
            .evaluate(&zpj)
            .unwrap()
            .inverse()
            .unwrap()
            .mul(&c.evaluate(&zj.product(&zpj).unwrap()).unwrap());
        assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }

    #[test]
    fn identity_jet_composes_trivially() {
        let c = tractor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let x = [0.1, 0.3, -0.2, 0.15];
        let zj = z_f.jet_at(&x, 2).unwrap();
        let id = GaugeJet::identity(&groups::weyl_dilations(), x.to_vec(), NV, 2);
        let lhs = c.gauge_compose(&zj, &id).unwrap();
        let rhs = c.evaluate(&zj).unwrap();
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn diff_at_identity_matches_finite_difference() {
        for (name, c) in [
            ("tractor", tractor_cocycle(test_frame())),
            ("twistor", twistor_cocycle(test_frame())),
        ] {
            let x = [0.12, -0.2, 0.25, 0.1];
            let p = Polynomial::new_re(
                NV,
                vec![(0.5, vec![1, 0, 0, 0]), (-0.3, vec![0, 1, 1, 0]), (0.2, vec![0, 0, 0, 2])],
            );
            // χ as a 1×1 algebra-valued jet
            let xs: Vec<JetScalar> = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, NV, 2))
                .collect();
            let mut chi = JetMat::zeros(1, 1, NV, 2);
            chi.set(0, 0, p.eval_jet(&xs));
            let analytic = c.diff_at_identity(&x, &chi).unwrap();
            // finite difference of evaluate along z_τ = exp(τ·χ)
            let h = 1e-5;
            let eval_tau = |tau: f64| {
                let p2 = p.clone();
                let g = GaugeField::new(groups::weyl_dilations(), NV, move |y, order| {
                    let ys: Vec<JetScalar> = y
                        .iter()
                        .enumerate()
                        .map(|(i, &yi)| JetScalar::variable(yi, i, NV, order))
                        .collect();
                    let mut m = JetMat::zeros(1, 1, NV, order);
                    m.set(0, 0, p2.eval_jet(&ys).scale_re(tau).exp());
                    Ok(m)
                });
                c.evaluate(&g.jet_at(&x, 2).unwrap()).unwrap()
            };
            let fd = eval_tau(h).sub(&eval_tau(-h)).scale_re(0.5 / h);
            assert!(
                analytic.sub(&fd).max_abs() < 1e-7,
                "{name}: |analytic − fd| = {}",
                analytic.sub(&fd).max_abs()
            );
        }
    }

    #[test]
    fn diff_at_identity_zero_is_zero() {
        let c = tractor_cocycle(test_frame());
        let chi = JetMat::zeros(1, 1, NV, 2);
        let v = c.diff_at_identity(&[0.1, 0.0, 0.2, -0.1], &chi).unwrap();
        assert!(v.max_abs() < 1e-15);
    }

    #[test]
    fn k_conjugation_tractor_frame_route_matches_direct() {
        // C(z)^𝖲 via e^S = S⁻¹e equals 𝖲⁻¹C(z)𝖲
        let c = tractor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let s_f = GaugeField::from_alg_polys(
            groups::so13(),
            NV,
            vec![
                Polynomial::new_re(NV, vec![(0.2, vec![1, 0, 0, 0])]),
                Polynomial::new_re(NV, vec![(-0.15, vec![0, 1, 0, 0])]),
                Polynomial::new_re(NV, vec![(0.1, vec![0, 0, 1, 0])]),
                Polynomial::new_re(NV, vec![(0.25, vec![0, 0, 0, 1])]),
                Polynomial::new_re(NV, vec![(-0.1, vec![1, 1, 0, 0])]),
                Polynomial::new_re(NV, vec![(0.05, vec![0, 0, 1, 1])]),
            ],
        );
        let x = [0.1, 0.2, -0.15, 0.3];
        let zj = z_f.jet_at(&x, 2).unwrap();
        let sj = s_f.jet_at(&x, 2).unwrap();
        let via_frame = c.k_conjugation(&zj, &sj).unwrap();
        let direct = c.k_conjugation_direct(&zj, &sj).unwrap();
        assert!(via_frame.sub(&direct).max_abs() < 1e-10);
    }

    #[test]
    fn k_conjugation_twistor_frame_route_matches_direct() {
        let c = twistor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let mut polys = vec![Polynomial::zero(NV); 6];
        polys[0] = Polynomial::new_re(NV, vec![(0.2, vec![1, 0, 0, 0])]);
        polys[2] = Polynomial::new_re(NV, vec![(-0.12, vec![0, 0, 1, 0])]);
        polys[4] = Polynomial::new_re(NV, vec![(0.15, vec![0, 1, 0, 0])]);
        let s_f = GaugeField::from_alg_polys(groups::sl2c(), NV, polys);
        let x = [0.1, 0.2, -0.15, 0.3];
        let zj = z_f.jet_at(&x, 2).unwrap();
        let sj = s_f.jet_at(&x, 2).unwrap();
        let via_frame = c.k_conjugation(&zj, &sj).unwrap();
        let direct = c.k_conjugation_direct(&zj, &sj).unwrap();
        assert!(via_frame.sub(&direct).max_abs() < 1e-10);
    }

    #[test]
    fn k_conjugation_identity_is_noop() {
        let c = tractor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let x = [0.1, 0.2, -0.15, 0.3];
        let zj = z_f.jet_at(&x, 2).unwrap();
        let id = GaugeJet::identity(&groups::so13(), x.to_vec(), NV, 2);
        let v = c.k_conjugation(&zj, &id).unwrap();
        let plain = c.evaluate(&zj).unwrap();
        assert!(v.sub(&plain).max_abs() < 1e-12);
    }

    #[test]
    fn k_conjugation_without_declaration_errors() {
        let c = abelian_cocycle();
        let g = GaugeField::identity(groups::complex_scalars(), NV);
        let x = [0.0; 4];
        let gj = g.jet_at(&x, 1).unwrap();
        let id = GaugeJet::identity(&groups::so13(), x.to_vec(), NV, 1);
        assert!(matches!(
            c.k_conjugation(&gj, &id),
            Err(KernelError::NotKCompatible)
        ));
    }

    #[test]
    fn mixed_partial_commutator_identity() {
        // for the morphism cocycle ρ: the (σ,τ) mixed partial of
        // ρ(e^{σX}e^{τY}) − ρ(e^{τY}e^{σX}) at 0 equals dρ([X,Y])
        let so = groups::so13();
        let x_alg = so.alg_from_coords(&[0.7, -0.3, 0.4, 0.2, -0.5, 0.6]);
        let y_alg = so.alg_from_coords(&[-0.2, 0.5, 0.1, -0.4, 0.3, -0.6]);
        let rho = |m: &JetMat| groups::tractor_embed_so_jet(m);
        // jets in the group parameters (σ, τ)
        let sigma = JetScalar::variable(0.0, 0, 2, 2);
        let tau = JetScalar::variable(0.0, 1, 2, 2);
        let ex = JetMat::from_value(&x_alg.mat, 2, 2).scale_jet(&sigma).exp();
        let ey = JetMat::from_value(&y_alg.mat, 2, 2).scale_jet(&tau).exp();
        let p = rho(&ex.mul(&ey));
        let q = rho(&ey.mul(&ex));
        let mixed = p.sub(&q).deriv(0).deriv(1).value();
        let br = crate::lie::bracket(&x_alg, &y_alg).unwrap();
        // dρ([X,Y]) = diag(0, [X,Y], 0)
        let mut expect_jet = JetMat::zeros(6, 6, 2, 0);
        expect_jet.set_block(1, 1, &JetMat::from_value(&br.mat, 2, 0));
        let expect = expect_jet.value();
        let diff = (&mixed - &expect).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-9, "mixed-partial residual {diff}");
    }

    #[test]
    fn frame_missing_errors() {
        let c = tractor_cocycle(test_frame());
        let z_f = weyl_field(&[0.3, -0.2, 0.15, 0.1]);
        let x = [0.1, 0.2, -0.15, 0.3];
        let zj = z_f.jet_at(&x, 2).unwrap();
        assert!(matches!(
            c.evaluate_with_frame(&zj, None),
            Err(KernelError::FrameDataMissing(_))
        ));
    }
}
