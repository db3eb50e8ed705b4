//! Named verification suites: compact, seeded re-checks of the library's
//! structural identities, one `Check` per statement, reported with the
//! worst observed residual.

use crate::brst::{brst_apply, brst_apply_twice, check_nilpotency, BrstField, GrassmannElem};
use crate::cartan::{catalog as cart, CartanConn, Grading};
use crate::cocycle::{catalog as ccat, FrameField, GaugeField};
use crate::conformal::bundle::{ricc_w_at, standard_tractor, standard_twistor};
use crate::conformal::lagrangian::lagrangian_conformal;
use crate::error::{KernelError, Result};
use crate::forms::{Chart, LocalForm, MetricField};
use crate::gauge::dressing::{dressing_connection, glued_dressing_connection, PartitionOfUnity};
use crate::gauge::{
    cocycle_value_field, ConnForm, JetField, OverlapData, Representation, TensorialField,
};
use crate::jetmat::JetMat;
use crate::jets::{fd_oracle, lift, FieldHandle, JetScalar, Polynomial};
use crate::lie::catalog as groups;
use crate::lie::spin::{self, SpinLift};
use crate::lie::{killing, GroupSpec, KillingKind, SPIN_KILLING_RATIO};
use crate::sample::{sample_coeffs, sample_points, DEFAULT_SAMPLES};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const NV: usize = 4;

/// All suite names accepted by `verify`, in execution order for `all`.
pub const SUITE_NAMES: [&str; 9] = [
    "jets",
    "lie",
    "forms",
    "cocycle",
    "gauge",
    "mixed",
    "cartan",
    "conformal",
    "brst",
];

/// One verifiable statement: the closure returns (max residual, samples).
pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tol: f64,
    pub run: Box<dyn Fn(u64) -> Result<(f64, usize)> + Send + Sync>,
}

/// Sample count, overridable through `GAUGEGEOM_SAMPLES`.
pub fn n_samples() -> usize {
    std::env::var("GAUGEGEOM_SAMPLES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SAMPLES)
}

fn chart() -> Chart {
    Chart::centered_box(4)
}

fn pts(seed: u64, n: usize) -> Vec<Vec<f64>> {
    sample_points(&chart(), n, seed)
}

fn xs_at(x: &[f64], order: usize) -> Vec<JetScalar> {
    x.iter()
        .enumerate()
        .map(|(i, &xi)| JetScalar::variable(xi, i, NV, order))
        .collect()
}

fn rand_poly(coeffs: &[f64]) -> Polynomial {
    Polynomial::new_re(
        NV,
        vec![
            (coeffs[0] * 0.3, vec![0, 0, 0, 0]),
            (coeffs[1] * 0.3, vec![1, 0, 0, 0]),
            (coeffs[2] * 0.3, vec![0, 1, 0, 0]),
            (coeffs[3] * 0.3, vec![0, 0, 1, 0]),
            (coeffs[4] * 0.3, vec![0, 0, 0, 1]),
            (coeffs[5] * 0.3, vec![0, 1, 1, 0]),
        ],
    )
}

fn rand_conn(spec: &GroupSpec, seed: u64) -> LocalForm {
    let nb = spec.alg_dim();
    let coeffs = sample_coeffs(6 * nb * 4, 1.0, seed);
    let dim = spec.mat_dim();
    let basis: Vec<_> = spec.basis().to_vec();
    LocalForm::new(chart(), 1, dim, dim, Some(spec.clone()), move |x, order| {
        let xs = xs_at(x, order);
        let mut comps = Vec::with_capacity(4);
        for mu in 0..4 {
            let mut m = JetMat::zeros(dim, dim, NV, order);
            for (i, t) in basis.iter().enumerate() {
                let c = &coeffs[6 * (mu * nb + i)..6 * (mu * nb + i) + 6];
                m = m.add(&JetMat::from_value(t, NV, order).scale_jet(&rand_poly(c).eval_jet(&xs)));
            }
            comps.push(m);
        }
        Ok(comps)
    })
}

fn test_frame() -> FrameField {
    FrameField::new(4, NV, |x, order| {
        let xs = xs_at(x, order);
        let mut e = JetMat::identity(4, NV, order);
        let bump = |c: f64, i: usize, j: usize| {
            let mut ex = vec![0u8; 4];
            ex[i] = 1;
            ex[j] += 1;
            Polynomial::new_re(NV, vec![(c, ex)])
        };
        e.set(0, 1, bump(0.12, 0, 1).eval_jet(&xs));
        e.set(1, 2, bump(-0.08, 1, 1).eval_jet(&xs));
        e.set(2, 3, bump(0.15, 2, 3).eval_jet(&xs));
        e.set(3, 0, bump(0.1, 0, 2).eval_jet(&xs));
        Ok(e)
    })
}

fn weyl_field(seed: u64) -> GaugeField {
    let c = sample_coeffs(6, 1.0, seed);
    GaugeField::from_alg_polys(groups::weyl_dilations(), NV, vec![rand_poly(&c)])
}

fn so13_field(seed: u64) -> GaugeField {
    let c = sample_coeffs(36, 0.4, seed);
    let polys = (0..6).map(|i| rand_poly(&c[6 * i..6 * i + 6])).collect();
    GaugeField::from_alg_polys(groups::so13(), NV, polys)
}

fn tractor_conn(seed: u64) -> ConnForm {
    let c = ccat::tractor_cocycle(test_frame());
    ConnForm::new(rand_conn(&groups::tractor_g(), seed), c).unwrap()
}

fn max_form_diff(a: &LocalForm, b: &LocalForm, pts: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in pts {
        let u = a.eval_at(x, 0)?;
        let v = b.eval_at(x, 0)?;
        for (p, q) in u.iter().zip(&v) {
            worst = worst.max(p.sub(q).max_abs());
        }
    }
    Ok(worst)
}

fn max_form_abs(a: &LocalForm, pts: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in pts {
        worst = worst.max(a.max_abs_at(x, 0)?);
    }
    Ok(worst)
}

fn perturbed_metric(seed: u64) -> MetricField {
    let eta = spin::eta();
    let coeffs = sample_coeffs(10 * 6, 1.0, seed);
    let mut polys: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(NV); 4]; 4];
    let mut k = 0;
    for mu in 0..4 {
        for nu in mu..4 {
            let c = &coeffs[6 * k..6 * k + 6];
            let p = Polynomial::new_re(
                NV,
                vec![
                    (eta[(mu, nu)], vec![0, 0, 0, 0]),
                    (0.05 * c[0], vec![1, 0, 0, 0]),
                    (0.05 * c[1], vec![0, 0, 1, 0]),
                    (0.05 * c[2], vec![1, 1, 0, 0]),
                    (0.05 * c[3], vec![0, 0, 1, 1]),
                    (0.05 * c[4], vec![2, 1, 0, 0]),
                    (0.05 * c[5], vec![0, 1, 1, 1]),
                ],
            );
            polys[mu][nu] = p.clone();
            polys[nu][mu] = p;
            k += 1;
        }
    }
    MetricField::from_polys(chart(), polys)
}

fn conformally_flat_metric() -> MetricField {
    let phi = Polynomial::new_re(
        NV,
        vec![
            (0.1, vec![1, 0, 0, 0]),
            (0.05, vec![0, 2, 0, 0]),
            (0.04, vec![0, 0, 1, 1]),
            (0.02, vec![2, 1, 0, 0]),
        ],
    );
    let eta = spin::eta();
    MetricField::new(chart(), move |x, order| {
        let xs = xs_at(x, order);
        let w = phi.eval_jet(&xs).scale_re(2.0).exp();
        let mut g = JetMat::zeros(4, 4, NV, order);
        for mu in 0..4 {
            g.set(mu, mu, w.scale_re(eta[(mu, mu)]));
        }
        Ok(g)
    })
}

fn ghost_coeffs(spec: &GroupSpec, seed: u64) -> Vec<LocalForm> {
    let nb = spec.alg_dim();
    let dim = spec.mat_dim();
    let coeffs = sample_coeffs(6 * nb, 0.7, seed);
    (0..nb)
        .map(|a| {
            let x_a = spec.basis()[a].clone();
            let p = rand_poly(&coeffs[6 * a..6 * a + 6]);
            LocalForm::new(chart(), 0, dim, dim, Some(spec.clone()), move |x, order| {
                let xs = xs_at(x, order);
                Ok(vec![
                    JetMat::from_value(&x_a, NV, order).scale_jet(&p.eval_jet(&xs))
                ])
            })
        })
        .collect()
}

fn jets_suite() -> Vec<Check> {
    let handle = |seed: u64| {
        let p = rand_poly(&sample_coeffs(6, 1.0, seed));
        FieldHandle::new(NV, move |xs| Ok(p.eval_jet(xs).mul(&xs[0].exp())))
    };
    vec![
        Check {
            id: "jet-partials-low-order",
            anchor: "jet partial derivatives match central finite differences (orders 1-2)",
            tol: 1e-6,
            run: Box::new(move |seed| {
                let n = n_samples();
                let mut worst: f64 = 0.0;
                let mut count = 0;
                for k in 0..5 {
                    let f = handle(seed + k);
                    for x in pts(seed + 100 + k, n.min(5)) {
                        let j = lift(&f, &x, 2)?;
                        for alpha in [
                            vec![1, 0, 0, 0],
                            vec![0, 0, 1, 0],
                            vec![1, 1, 0, 0],
                            vec![0, 2, 0, 0],
                        ] {
                            let fd = fd_oracle(&f, &x, &alpha)?;
                            worst = worst.max((j.partial(&alpha) - fd).norm());
                            count += 1;
                        }
                    }
                }
                Ok((worst, count))
            }),
        },
        Check {
            id: "jet-partials-third-order",
            anchor: "jet partial derivatives match central finite differences (order 3)",
            tol: 1e-4,
            run: Box::new(move |seed| {
                let mut worst: f64 = 0.0;
                let mut count = 0;
                for k in 0..5 {
                    let f = handle(seed + 10 + k);
                    for x in pts(seed + 200 + k, 4) {
                        let j = lift(&f, &x, 3)?;
                        for alpha in [vec![1, 1, 1, 0], vec![3, 0, 0, 0], vec![0, 1, 2, 0]] {
                            let fd = fd_oracle(&f, &x, &alpha)?;
                            worst = worst.max((j.partial(&alpha) - fd).norm());
                            count += 1;
                        }
                    }
                }
                Ok((worst, count))
            }),
        },
        Check {
            id: "exp-log-round-trip",
            anchor: "scalar jet and matrix exponential/logarithm round-trips",
            tol: 1e-10,
            run: Box::new(|seed| {
                let n = n_samples();
                let mut worst: f64 = 0.0;
                let p = rand_poly(&sample_coeffs(6, 0.5, seed));
                for x in pts(seed + 1, n) {
                    let j = p.eval_jet(&xs_at(&x, 3)).add(&JetScalar::constant_re(
                        1.5, NV, 3,
                    ));
                    worst = worst.max(j.ln()?.exp().sub(&j).max_abs());
                }
                let so = groups::so13();
                for (i, c) in sample_coeffs(6 * 10, 0.4, seed + 2).chunks(6).enumerate() {
                    let x = so.alg_from_coords(c);
                    let g = crate::lie::exp_alg(&x)?;
                    let back = crate::lie::log_grp(&g)?;
                    worst = worst.max((&back.mat - &x.mat).map(|z| z.norm()).max());
                    let _ = i;
                }
                Ok((worst, n + 10))
            }),
        },
    ]
}

fn lie_suite() -> Vec<Check> {
    vec![
        Check {
            id: "spinor-determinant-interval",
            anchor: "4·det(x̄) equals the Minkowski interval of x",
            tol: 1e-12,
            run: Box::new(|seed| {
                let eta = spin::eta();
                let coords = sample_coeffs(400, 1.0, seed);
                let mut worst: f64 = 0.0;
                for c in coords.chunks(4) {
                    let x: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                    let m = spin::bar_vec(&[x[0], x[1], x[2], x[3]]);
                    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                    let v = DVector::from_vec(c.to_vec());
                    let interval = (v.transpose() * &eta * &v)[(0, 0)];
                    worst = worst.max((det * 4.0 - Complex64::new(interval, 0.0)).norm());
                }
                Ok((worst, 100))
            }),
        },
        Check {
            id: "killing-spin-bridge",
            anchor: "Killing pairing agrees across the so(1,3) ≅ sl(2,ℂ) isomorphism",
            tol: 1e-10,
            run: Box::new(|seed| {
                let lift = SpinLift::new();
                let so = groups::so13();
                let sl = groups::sl2c();
                let coords = sample_coeffs(50 * 12, 0.7, seed);
                let mut worst: f64 = 0.0;
                for c in coords.chunks(12) {
                    let m = so.alg_from_coords(&c[..6]);
                    let n = so.alg_from_coords(&c[6..]);
                    let mb = sl.alg_elem(lift.lift(&m.mat.map(|z| z.re))?)?;
                    let nb = sl.alg_elem(lift.lift(&n.mat.map(|z| z.re))?)?;
                    let lhs = killing(KillingKind::PlainTrace, &m, &n)?;
                    let rhs =
                        killing(KillingKind::HermitianSymmetrized, &mb, &nb)? * SPIN_KILLING_RATIO;
                    worst = worst.max((lhs - rhs).norm());
                }
                Ok((worst, 50))
            }),
        },
        Check {
            id: "algebra-closure",
            anchor: "catalog algebra bases close under commutators",
            tol: 1e-10,
            run: Box::new(|_| {
                let mut worst: f64 = 0.0;
                let mut count = 0;
                for spec in [
                    groups::so13(),
                    groups::sl2c(),
                    groups::weyl_dilations(),
                    groups::tractor_g(),
                ] {
                    let basis = spec.basis().to_vec();
                    for a in &basis {
                        for b in &basis {
                            let comm = a * b - b * a;
                            let (_, resid) = spec.algebra_coords(&comm);
                            worst = worst.max(resid);
                            count += 1;
                        }
                    }
                }
                Ok((worst, count))
            }),
        },
    ]
}

fn rand_scalar_form(degree: usize, seed: u64) -> LocalForm {
    let ncomp = match degree {
        1 => 4,
        2 => 6,
        _ => 1,
    };
    let coeffs = sample_coeffs(6 * ncomp, 1.0, seed);
    let polys: Vec<Polynomial> = (0..ncomp)
        .map(|i| rand_poly(&coeffs[6 * i..6 * i + 6]))
        .collect();
    LocalForm::new(chart(), degree, 1, 1, None, move |x, order| {
        let xs = xs_at(x, order);
        Ok(polys
            .iter()
            .map(|p| {
                let mut m = JetMat::zeros(1, 1, NV, order);
                m.set(0, 0, p.eval_jet(&xs));
                m
            })
            .collect())
    })
}

fn forms_suite() -> Vec<Check> {
    vec![
        Check {
            id: "d-squared-zero",
            anchor: "the exterior derivative squares to zero",
            tol: 1e-10,
            run: Box::new(|seed| {
                let n = n_samples();
                let p = pts(seed, n);
                let mut worst: f64 = 0.0;
                for (deg, s) in [(0, 1u64), (1, 2)] {
                    let a = rand_scalar_form(deg, seed + s);
                    worst = worst.max(max_form_abs(&a.d().d(), &p)?);
                }
                Ok((worst, 2 * n))
            }),
        },
        Check {
            id: "wedge-leibniz",
            anchor: "graded Leibniz rule d(a∧b) = da∧b + (−1)^p a∧db",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let p = pts(seed, n);
                let a = rand_scalar_form(1, seed + 3);
                let b = rand_scalar_form(1, seed + 4);
                let lhs = a.wedge(&b)?.d();
                let rhs = a.d().wedge(&b)?.sub(&a.wedge(&b.d())?);
                Ok((max_form_diff(&lhs, &rhs, &p)?, n))
            }),
        },
        Check {
            id: "double-hodge-star",
            anchor: "∗∗ = −1 on 2-forms in Lorentzian signature",
            tol: 1e-12,
            run: Box::new(|seed| {
                let n = n_samples();
                let p = pts(seed, n);
                let g = MetricField::minkowski(chart());
                let a = rand_scalar_form(2, seed + 5);
                let twice = a.hodge_star(&g)?.hodge_star(&g)?;
                Ok((max_form_diff(&twice, &a.scale_re(-1.0), &p)?, n))
            }),
        },
    ]
}

fn cocycle_suite() -> Vec<Check> {
    vec![
        Check {
            id: "gauge-composition-coherence",
            anchor: "Prop: gluing properties of the local representatives — (C(γ)^η)^ξ = C(γ)^{ηξ}",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::tractor_cocycle(test_frame());
                let gamma = weyl_field(seed + 1);
                let eta = weyl_field(seed + 2);
                let xi = weyl_field(seed + 3);
                let mut worst: f64 = 0.0;
                for x in pts(seed, n) {
                    let gj = gamma.jet_at(&x, 2)?;
                    let ej = eta.jet_at(&x, 2)?;
                    let xj = xi.jet_at(&x, 2)?;
                    // (C(γ)^η)^ξ expands to C(ηξ)⁻¹ C(γηξ) directly.
                    let two = c
                        .evaluate(&ej.product(&xj)?)?
                        .inverse()?
                        .mul(&c.evaluate(&gj.product(&ej)?.product(&xj)?)?);
                    let one = c.gauge_compose(&gj, &ej.product(&xj)?)?;
                    worst = worst.max(two.sub(&one).max_abs());
                }
                Ok((worst, n))
            }),
        },
        Check {
            id: "cocycle-law",
            anchor: "cocycle law C_p(hh′) = C_p(h)·C(h′)-factor coherence via gauge composition",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::twistor_cocycle(test_frame());
                let gamma = weyl_field(seed + 4);
                let eta = weyl_field(seed + 5);
                let mut worst: f64 = 0.0;
                for x in pts(seed, n) {
                    let gj = gamma.jet_at(&x, 2)?;
                    let ej = eta.jet_at(&x, 2)?;
                    let lhs = c.evaluate(&gj.product(&ej)?)?;
                    let rhs = c.evaluate(&gj)?.mul(&c.gauge_compose(&ej, &gj)?);
                    worst = worst.max(lhs.sub(&rhs).max_abs());
                }
                Ok((worst, n))
            }),
        },
        Check {
            id: "identity-differential-linearity",
            anchor: "the identity differential of the cocycle is linear in χ",
            tol: 1e-10,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::tractor_cocycle(test_frame());
                let p1 = rand_poly(&sample_coeffs(6, 1.0, seed + 6));
                let p2 = rand_poly(&sample_coeffs(6, 1.0, seed + 7));
                let mut worst: f64 = 0.0;
                for x in pts(seed, n) {
                    let xs = xs_at(&x, 2);
                    let mk = |j: JetScalar| {
                        let mut m = JetMat::zeros(1, 1, NV, 2);
                        m.set(0, 0, j);
                        m
                    };
                    let c1 = mk(p1.eval_jet(&xs));
                    let c2 = mk(p2.eval_jet(&xs));
                    let both = mk(p1.eval_jet(&xs).scale_re(0.7).add(&p2.eval_jet(&xs)));
                    let lhs = c.diff_at_identity(&x, &both)?;
                    let rhs = c
                        .diff_at_identity(&x, &c1)?
                        .scale_re(0.7)
                        .add(&c.diff_at_identity(&x, &c2)?);
                    worst = worst.max(lhs.sub(&rhs).max_abs());
                }
                Ok((worst, n))
            }),
        },
        Check {
            id: "three-chart-gluing",
            anchor: "passive gluing matches the active transform and is associative over three charts",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 8);
                let g_field = weyl_field(seed + 9);
                let glued = a.glue(&OverlapData {
                    g: g_field.clone(),
                    ell: None,
                })?;
                let active = a.transform_connection(&g_field)?;
                let p = pts(seed, n);
                let mut worst = max_form_diff(&glued.form, &active.form, &p)?;
                let g2_field = weyl_field(seed + 10);
                let two = glued.glue(&OverlapData {
                    g: g2_field.clone(),
                    ell: None,
                })?;
                let prod = GaugeField::new(groups::weyl_dilations(), NV, move |x, order| {
                    Ok(g_field
                        .jet_at(x, order)?
                        .mat
                        .mul(&g2_field.jet_at(x, order)?.mat))
                });
                let one = a.glue(&OverlapData { g: prod, ell: None })?;
                worst = worst.max(max_form_diff(&two.form, &one.form, &p)?);
                Ok((worst, n))
            }),
        },
    ]
}

fn gauge_suite() -> Vec<Check> {
    vec![
        Check {
            id: "right-action",
            anchor: "Prop: gauge transformations act on twisted connections as a right action",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 1);
                let gamma = weyl_field(seed + 2);
                let eta = weyl_field(seed + 3);
                let two = a
                    .transform_connection(&gamma)?
                    .transform_connection(&eta)?;
                let (g2, e2) = (gamma.clone(), eta.clone());
                let prod = GaugeField::new(groups::weyl_dilations(), NV, move |x, order| {
                    Ok(g2.jet_at(x, order)?.mat.mul(&e2.jet_at(x, order)?.mat))
                });
                let one = a.transform_connection(&prod)?;
                Ok((max_form_diff(&two.form, &one.form, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "curvature-covariance",
            anchor: "Prop: curvature transforms by cocycle conjugation",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 4);
                let gamma = weyl_field(seed + 5);
                let f = a.curvature()?;
                let f_after = a.transform_connection(&gamma)?.curvature()?;
                let l = cocycle_value_field(&a.cocycle, &gamma);
                let conj = LocalForm::new(chart(), 2, 6, 6, None, move |x, order| {
                    let lm = l.eval_at(x, order)?;
                    let linv = lm.inverse()?;
                    Ok(f
                        .eval_at(x, order)?
                        .iter()
                        .map(|c| linv.mul(c).mul(&lm))
                        .collect())
                });
                Ok((max_form_diff(&f_after, &conj, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "bianchi",
            anchor: "Bianchi identity dF + [A,F] = 0",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 6);
                let f = a.curvature()?;
                let resid = f.d().add(&a.form.wedge(&f)?).sub(&f.wedge(&a.form)?);
                Ok((max_form_abs(&resid, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "covariant-derivative-equivariance",
            anchor: "Prop: the covariant derivative of a tensorial field is tensorial",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 7);
                let gamma = weyl_field(seed + 8);
                let rep = Representation::fundamental(groups::tractor_g());
                let coeffs = sample_coeffs(36, 1.0, seed + 9);
                let phi_form = LocalForm::new(chart(), 0, 6, 1, None, move |x, order| {
                    let xs = xs_at(x, order);
                    let mut m = JetMat::zeros(6, 1, NV, order);
                    for r in 0..6 {
                        m.set(r, 0, rand_poly(&coeffs[6 * r..6 * r + 6]).eval_jet(&xs));
                    }
                    Ok(vec![m])
                });
                let phi = TensorialField::new(phi_form, rep)?;
                let r1 = phi
                    .covariant_derivative(&a)?
                    .transform_tensorial(&a.cocycle, &gamma)?;
                let r2 = phi
                    .transform_tensorial(&a.cocycle, &gamma)?
                    .covariant_derivative(&a.transform_connection(&gamma)?)?;
                Ok((max_form_diff(&r1.form, &r2.form, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "d-squared-curvature-action",
            anchor: "D²a = ρ*(F)a on tensorial fields",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 10);
                let rep = Representation::fundamental(groups::tractor_g());
                let coeffs = sample_coeffs(36, 1.0, seed + 11);
                let phi_form = LocalForm::new(chart(), 0, 6, 1, None, move |x, order| {
                    let xs = xs_at(x, order);
                    let mut m = JetMat::zeros(6, 1, NV, order);
                    for r in 0..6 {
                        m.set(r, 0, rand_poly(&coeffs[6 * r..6 * r + 6]).eval_jet(&xs));
                    }
                    Ok(vec![m])
                });
                let phi = TensorialField::new(phi_form, rep.clone())?;
                let ddphi = phi.covariant_derivative(&a)?.covariant_derivative(&a)?;
                let f = a.curvature()?;
                let pf = phi.form.clone();
                let action = f.wedge_with(&pf, 6, 1, move |fm, vm| rep.apply_alg(fm, vm))?;
                Ok((max_form_diff(&ddphi.form, &action, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "infinitesimal-finite-difference",
            anchor: "δ_χA matches the finite difference of the finite transformation",
            tol: 1e-5,
            run: Box::new(|seed| {
                let n = n_samples();
                let a = tractor_conn(seed + 12);
                let p = rand_poly(&sample_coeffs(6, 1.0, seed + 13));
                let p2 = p.clone();
                let chi = JetField::new(NV, move |x, order| {
                    let mut m = JetMat::zeros(1, 1, NV, order);
                    m.set(0, 0, p2.eval_jet(&xs_at(x, order)));
                    Ok(m)
                });
                let analytic = a.infinitesimal(Some(&chi), None)?;
                let tau = 1e-6;
                let p3 = p.clone();
                let gamma_tau = GaugeField::new(groups::weyl_dilations(), NV, move |x, order| {
                    let mut m = JetMat::zeros(1, 1, NV, order);
                    m.set(0, 0, p3.eval_jet(&xs_at(x, order)).scale_re(tau).exp());
                    Ok(m)
                });
                let fd = a
                    .transform_connection(&gamma_tau)?
                    .form
                    .sub(&a.form)
                    .scale_re(1.0 / tau);
                Ok((max_form_diff(&analytic, &fd, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "abelian-dressing-flat",
            anchor: "single-chart abelian dressing connections C(u)dC(u)⁻¹ are flat",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::abelian_cocycle();
                let u = GaugeField::from_alg_polys(
                    groups::complex_scalars(),
                    NV,
                    vec![
                        rand_poly(&sample_coeffs(6, 1.0, seed + 20)),
                        rand_poly(&sample_coeffs(6, 1.0, seed + 21)),
                    ],
                );
                let gamma = dressing_connection(&c, &u, chart())?;
                Ok((max_form_abs(&gamma.curvature()?, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "glued-dressing-tensorial",
            anchor: "partition-glued dressing connections curve but transform tensorially",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::abelian_cocycle();
                let mk_u = |s: u64| {
                    GaugeField::from_alg_polys(
                        groups::complex_scalars(),
                        NV,
                        vec![
                            rand_poly(&sample_coeffs(6, 1.0, s)),
                            rand_poly(&sample_coeffs(6, 1.0, s + 1)),
                        ],
                    )
                };
                let us = [mk_u(seed + 30), mk_u(seed + 32)];
                let partition = PartitionOfUnity::normalized_bumps(NV, 0, vec![-0.5, 0.5], 1.2);
                let glued = glued_dressing_connection(&c, &us, &partition, chart())?;
                let f = glued.curvature()?;
                let witness = f.max_abs_at(&[0.1, 0.2, -0.1, 0.15], 0)?;
                if witness <= 1e-6 {
                    return Err(KernelError::InvalidInput(format!(
                        "glued dressing curvature unexpectedly flat ({witness:.3e})"
                    )));
                }
                let after = glued.transform_connection(&mk_u(seed + 34))?.curvature()?;
                Ok((max_form_diff(&f, &after, &pts(seed, n))?, n))
            }),
        },
    ]
}

fn mixed_suite() -> Vec<Check> {
    vec![
        Check {
            id: "mixed-commutation",
            anchor: "Prop: H- and K-gauge actions commute and compose on mixed connections",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::tractor_cocycle(test_frame());
                let a = ConnForm::new(rand_conn(&groups::tractor_gso(), seed + 1), c)?;
                let z = weyl_field(seed + 2);
                let s = so13_field(seed + 3);
                let gz = a.transform_connection(&z)?.transform_k(&s)?;
                let zg = a.transform_k(&s)?.transform_connection(&z)?;
                let one = a.transform_mixed(Some(&z), Some(&s))?;
                let p = pts(seed, n);
                let w = max_form_diff(&gz.form, &zg.form, &p)?
                    .max(max_form_diff(&gz.form, &one.form, &p)?);
                Ok((w, n))
            }),
        },
        Check {
            id: "k-only-reduction",
            anchor: "K-only transformations reduce to the standard Yang–Mills law",
            tol: 1e-11,
            run: Box::new(|seed| {
                let n = n_samples();
                let c = ccat::tractor_cocycle(test_frame());
                let a = ConnForm::new(rand_conn(&groups::tractor_gso(), seed + 4), c)?;
                let s = so13_field(seed + 5);
                let mixed = a.transform_mixed(None, Some(&s))?;
                let plain = a.transform_k(&s)?;
                Ok((max_form_diff(&mixed.form, &plain.form, &pts(seed, n))?, n))
            }),
        },
    ]
}

fn cartan_suite() -> Vec<Check> {
    vec![
        Check {
            id: "flat-model-torsion",
            anchor: "the flat model connection is torsion-free",
            tol: 1e-12,
            run: Box::new(|seed| {
                let n = n_samples();
                let form = cart::tractor_flat_form(chart());
                let conn = CartanConn::new(
                    ConnForm::new(form, ccat::tractor_cocycle(test_frame()))?,
                    cart::tractor_split()?,
                    cart::quotient_eta(),
                    cart::tractor_grading()?,
                )?;
                Ok((max_form_abs(&conn.torsion()?, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "soldering-gauge-covariance",
            anchor: "Prop: the soldering form transforms by the quotient part of cocycle conjugation",
            tol: 1e-9,
            run: Box::new(|seed| {
                let n = n_samples();
                let inner = crate::gauge::ConnForm::new(
                    rand_conn(&groups::tractor_gprime(), seed + 1),
                    ccat::tractor_cocycle(test_frame()),
                )?;
                let conn = CartanConn::new(
                    inner,
                    cart::tractor_split()?,
                    cart::quotient_eta(),
                    cart::tractor_grading()?,
                )?;
                let z = weyl_field(seed + 2);
                let theta_z = conn.transform_connection(&z)?.soldering();
                let theta = conn.soldering();
                let l = cocycle_value_field(&conn.conn.cocycle, &z);
                let split = cart::tractor_split()?;
                let mut worst: f64 = 0.0;
                for x in pts(seed, n) {
                    let lt = l.eval_at(&x, 0)?;
                    let linv = lt.inverse()?;
                    let lhs = theta_z.eval_at(&x, 0)?;
                    let rhs = theta.eval_at(&x, 0)?;
                    for (u, v) in lhs.iter().zip(&rhs) {
                        let conj = split.quot_part(&linv.mul(v).mul(&lt));
                        worst = worst.max(u.sub(&conj).max_abs());
                    }
                }
                Ok((worst, n))
            }),
        },
        Check {
            id: "grading-closure",
            anchor: "catalog gradings close under brackets level-wise",
            tol: 1e-10,
            run: Box::new(|_| {
                let mut worst: f64 = 0.0;
                let mut count = 0;
                for (spec, grading) in [
                    (groups::tractor_gprime(), cart::tractor_grading()?),
                    (groups::twistor_gprime(), cart::twistor_grading()?),
                ] {
                    let Grading::Parabolic(split) = grading else {
                        continue;
                    };
                    let basis = spec.basis().to_vec();
                    for a in &basis {
                        for b in &basis {
                            let comm = a * b - b * a;
                            let sum = split.split_values(&comm).into_iter().fold(
                                DMatrix::zeros(comm.nrows(), comm.ncols()),
                                |acc, p| acc + p,
                            );
                            worst = worst.max((&comm - sum).map(|z| z.norm()).max());
                            count += 1;
                        }
                    }
                }
                Ok((worst, count))
            }),
        },
    ]
}

fn conformal_suite() -> Vec<Check> {
    vec![
        Check {
            id: "flat-blocks-vanish",
            anchor: "the flat metric has vanishing tractor and twistor curvature blocks",
            tol: 1e-10,
            run: Box::new(|seed| {
                let g = MetricField::minkowski(chart());
                let p = pts(seed, 3);
                let w = max_form_abs(&standard_tractor(&g)?.curvature()?, &p)?
                    .max(max_form_abs(&standard_twistor(&g)?.curvature()?, &p)?);
                Ok((w, 3))
            }),
        },
        Check {
            id: "standard-construction-residuals",
            anchor: "the standard construction is torsion-free with trace-free, Ricci-flat middle block",
            tol: 1e-6,
            run: Box::new(|seed| {
                let g = perturbed_metric(seed + 1);
                let t = standard_tractor(&g)?;
                let blocks = t.curvature_blocks()?;
                let p = pts(seed, 3);
                let mut w = max_form_abs(&blocks.f, &p)?.max(max_form_abs(&blocks.torsion, &p)?);
                let e = t.vielbein.clone();
                for x in &p {
                    let ricc = ricc_w_at(&blocks.weyl, &e, x)?;
                    w = w.max(ricc.iter().map(|z| z.norm()).fold(0.0, f64::max));
                }
                Ok((w, 3))
            }),
        },
        Check {
            id: "conformally-flat-weyl-cotton",
            anchor: "conformally flat metrics have vanishing Weyl and Cotton blocks",
            tol: 1e-6,
            run: Box::new(|seed| {
                let g = conformally_flat_metric();
                let blocks = standard_tractor(&g)?.curvature_blocks()?;
                let p = pts(seed, 3);
                let w = max_form_abs(&blocks.weyl, &p)?.max(max_form_abs(&blocks.cotton, &p)?);
                Ok((w, 3))
            }),
        },
        Check {
            id: "lagrangian-identity",
            anchor: "the tractor, twistor, and Weyl-tensor Lagrangian densities agree",
            tol: 1e-7,
            run: Box::new(|seed| {
                let g = perturbed_metric(seed + 2);
                let dens = lagrangian_conformal(
                    &standard_tractor(&g)?,
                    &standard_twistor(&g)?,
                    &g,
                )?;
                let mut worst: f64 = 0.0;
                for x in pts(seed, 3) {
                    let v: Vec<Complex64> = dens
                        .iter()
                        .map(|d| d.eval_at(&x, 0).map(|c| c[0].get(0, 0).value()))
                        .collect::<Result<_>>()?;
                    let scale = v.iter().map(|z| z.norm()).fold(1e-12, f64::max);
                    for i in 0..3 {
                        for j in i + 1..3 {
                            worst = worst.max((v[i] - v[j]).norm() / scale);
                        }
                    }
                }
                Ok((worst, 3))
            }),
        },
        Check {
            id: "weyl-gauge-covariance",
            anchor: "Weyl gauge scales the soldering block, conjugates twistor curvature, \
                     and commutes with Lorentz actions",
            tol: 1e-8,
            run: Box::new(|seed| {
                let g = perturbed_metric(seed + 3);
                let t = standard_tractor(&g)?;
                let cf = t.conn_form()?;
                let z = weyl_field(seed + 4);
                let p = pts(seed, 3);
                let mut worst: f64 = 0.0;
                let transformed = cf.transform_connection(&z)?;
                for x in &p {
                    let zv = z.jet_at(x, 0)?.mat.get(0, 0).value();
                    let ev = t.vielbein.frame.eval_at(x, 0)?.value();
                    for (mu, m) in transformed.form.eval_at(x, 0)?.iter().enumerate() {
                        let v = m.value();
                        for a in 0..4 {
                            worst = worst.max((v[(1 + a, 0)] - zv * ev[(a, mu)]).norm());
                        }
                    }
                }
                let cf2 = standard_twistor(&g)?.conn_form()?;
                let lhs = cf2.transform_connection(&z)?.curvature()?;
                let omega = cf2.curvature()?;
                let cval = cocycle_value_field(&cf2.cocycle, &z);
                for x in &p {
                    let cj = cval.eval_at(x, 0)?;
                    let cinv = cj.inverse()?;
                    let u = lhs.eval_at(x, 0)?;
                    let v = omega.eval_at(x, 0)?;
                    for (m1, m2) in u.iter().zip(&v) {
                        worst = worst.max(m1.sub(&cinv.mul(m2).mul(&cj)).max_abs());
                    }
                }
                let s = so13_field(seed + 5);
                let zs = cf.transform_connection(&z)?.transform_k(&s)?;
                let sz = cf.transform_k(&s)?.transform_connection(&z)?;
                worst = worst.max(max_form_diff(&zs.form, &sz.form, &p)?);
                Ok((worst, 3))
            }),
        },
    ]
}

fn brst_suite() -> Vec<Check> {
    vec![
        Check {
            id: "nilpotency",
            anchor: "s² = 0 on connection, curvature, matter, and ghost fields",
            tol: 1e-10,
            run: Box::new(|seed| {
                let spec = groups::so13();
                let c = GrassmannElem::ghost(&ghost_coeffs(&spec, seed + 1), 0, 6)?;
                let a = rand_conn(&spec, seed + 2);
                let f = a.d().add(&a.wedge(&a)?);
                let coeffs = sample_coeffs(24, 1.0, seed + 3);
                let phi_form = LocalForm::new(chart(), 0, 4, 1, None, move |x, order| {
                    let xs = xs_at(x, order);
                    let mut m = JetMat::zeros(4, 1, NV, order);
                    for r in 0..4 {
                        m.set(r, 0, rand_poly(&coeffs[6 * r..6 * r + 6]).eval_jet(&xs));
                    }
                    Ok(vec![m])
                });
                let fields = vec![
                    BrstField::Conn(GrassmannElem::from_form(&a, 6)),
                    BrstField::Curv(GrassmannElem::from_form(&f, 6)),
                    BrstField::Matter(
                        GrassmannElem::from_form(&phi_form, 6),
                        Representation::fundamental(spec),
                    ),
                    BrstField::Ghost(c.clone()),
                ];
                let report = check_nilpotency(&fields, &c, &pts(seed, 5))?;
                Ok((report.iter().map(|&(_, w)| w).fold(0.0, f64::max), 5))
            }),
        },
        Check {
            id: "mixed-sector-relations",
            anchor: "restricting the total s reproduces the mixed-sector ghost relations",
            tol: 1e-10,
            run: Box::new(|seed| {
                let c = GrassmannElem::ghost(&ghost_coeffs(&groups::so13(), seed + 4), 0, 12)?;
                let u = GrassmannElem::ghost(&ghost_coeffs(&groups::so13(), seed + 5), 6, 12)?;
                let ctot = c.add(&u);
                let s_tot = brst_apply(&BrstField::Ghost(ctot.clone()), &ctot)?;
                let chi_bits = 0b111111u32;
                let p = pts(seed, 5);
                let mut worst: f64 = 0.0;
                for (part, want) in [
                    (
                        s_tot.restrict(move |m| m & !chi_bits == 0),
                        c.bracket(&c)?.scale_re(-0.5),
                    ),
                    (
                        s_tot.restrict(move |m| m & chi_bits == 0),
                        u.bracket(&u)?.scale_re(-0.5),
                    ),
                    (
                        s_tot.restrict(move |m| m & chi_bits != 0 && m & !chi_bits != 0),
                        c.bracket(&u)?.neg(),
                    ),
                ] {
                    let d = part.sub(&want);
                    for x in &p {
                        worst = worst.max(d.max_abs_at(x, 0)?);
                    }
                }
                Ok((worst, 5))
            }),
        },
        Check {
            id: "gauge-consistency",
            anchor: "the generator-contracted s reproduces the infinitesimal gauge transformation",
            tol: 1e-9,
            run: Box::new(|seed| {
                let spec = groups::so13();
                let a_form = rand_conn(&spec, seed + 6);
                let cocycle = ccat::morphism_cocycle(
                    spec.clone(),
                    spec.clone(),
                    |m| Ok(m.clone()),
                    |m| Ok(m.clone()),
                );
                let conn = ConnForm::new(a_form.clone(), cocycle)?;
                let coeffs = ghost_coeffs(&spec, seed + 7);
                let chi_fields = coeffs.clone();
                let chi = JetField::new(NV, move |x, order| {
                    let mut m = JetMat::zeros(4, 4, NV, order);
                    for f in &chi_fields {
                        m = m.add(&f.eval_at(x, order)?[0]);
                    }
                    Ok(m)
                });
                let delta = conn.infinitesimal(Some(&chi), None)?;
                let c = GrassmannElem::ghost(&coeffs, 0, 6)?;
                let sa = brst_apply(&BrstField::Conn(GrassmannElem::from_form(&a_form, 6)), &c)?;
                let mut contracted = LocalForm::zero(chart(), 1, 4, 4);
                for mask in sa.masks() {
                    contracted = contracted.add(sa.coefficient(mask).unwrap());
                }
                let resid = contracted.add(&delta);
                let n = n_samples();
                Ok((max_form_abs(&resid, &pts(seed, n))?, n))
            }),
        },
        Check {
            id: "nilpotency-second-application",
            anchor: "the graded Leibniz expansion of s² vanishes via brst_apply_twice",
            tol: 1e-10,
            run: Box::new(|seed| {
                let spec = groups::so13();
                let c = GrassmannElem::ghost(&ghost_coeffs(&spec, seed + 8), 0, 6)?;
                let s2 = brst_apply_twice(&BrstField::Ghost(c.clone()), &c)?;
                let mut worst: f64 = 0.0;
                for x in pts(seed, 8) {
                    worst = worst.max(s2.max_abs_at(&x, 0)?);
                }
                Ok((worst, 8))
            }),
        },
        Check {
            id: "exterior-brst-consistency",
            anchor: "sF = [F,c] matches the graded Leibniz expansion −d(sA) + [sA, A]",
            tol: 1e-10,
            run: Box::new(|seed| {
                let spec = groups::so13();
                let c = GrassmannElem::ghost(&ghost_coeffs(&spec, seed + 9), 0, 6)?;
                let a_form = rand_conn(&spec, seed + 10);
                let f_form = a_form.d().add(&a_form.wedge(&a_form)?);
                let a = GrassmannElem::from_form(&a_form, 6);
                let sa = brst_apply(&BrstField::Conn(a.clone()), &c)?;
                let derived = sa.d().neg().add(&sa.bracket(&a)?);
                let direct =
                    brst_apply(&BrstField::Curv(GrassmannElem::from_form(&f_form, 6)), &c)?;
                let diff = direct.sub(&derived);
                let mut worst: f64 = 0.0;
                for x in pts(seed, 5) {
                    worst = worst.max(diff.max_abs_at(&x, 0)?);
                }
                Ok((worst, 5))
            }),
        },
    ]
}

/// The checks of a named suite, or `None` for an unknown name.
pub fn suite_checks(name: &str) -> Option<Vec<Check>> {
    match name {
        "jets" => Some(jets_suite()),
        "lie" => Some(lie_suite()),
        "forms" => Some(forms_suite()),
        "cocycle" => Some(cocycle_suite()),
        "gauge" => Some(gauge_suite()),
        "mixed" => Some(mixed_suite()),
        "cartan" => Some(cartan_suite()),
        "conformal" => Some(conformal_suite()),
        "brst" => Some(brst_suite()),
        _ => None,
    }
}
