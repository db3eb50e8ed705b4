//! Ghost-algebra integration tests: Grassmann product structure, the BRST
//! operator on each field type, nilpotency in the twisted and mixed
//! sectors, sector relations, and consistency with the gauge module's
//! infinitesimal transformations.

use gaugegeom::brst::{brst_apply, brst_apply_twice, check_nilpotency, BrstField, GrassmannElem};
use gaugegeom::cocycle::catalog as ccat;
use gaugegeom::forms::{Chart, LocalForm};
use gaugegeom::gauge::{ConnForm, JetField, Representation};
use gaugegeom::jetmat::JetMat;
use gaugegeom::jets::{JetScalar, Polynomial};
use gaugegeom::lie::catalog as groups;
use gaugegeom::lie::GroupSpec;
use gaugegeom::sample::{sample_coeffs, sample_points, DEFAULT_SAMPLES, DEFAULT_SEED};
use gaugegeom::KernelError;

const NV: usize = 4;

fn chart() -> Chart {
    Chart::centered_box(4)
}

fn pts() -> Vec<Vec<f64>> {
    sample_points(&chart(), DEFAULT_SAMPLES, DEFAULT_SEED)
}

/// Random polynomial (constant + linear + one quadratic term per slot).
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

fn scalar_monomial(c: f64, ex: Vec<u8>) -> Polynomial {
    Polynomial::new_re(NV, vec![(c, ex)])
}

/// Random algebra-valued connection 1-form on the chart.
fn rand_conn(spec: &GroupSpec, seed: u64) -> LocalForm {
    let nb = spec.alg_dim();
    let coeffs = sample_coeffs(6 * nb * 4, 1.0, seed);
    let dim = spec.mat_dim();
    let basis: Vec<_> = spec.basis().to_vec();
    LocalForm::new(chart(), 1, dim, dim, Some(spec.clone()), move |x, order| {
        let xs: Vec<JetScalar> = x
            .iter()
            .enumerate()
            .map(|(i, &xi)| JetScalar::variable(xi, i, NV, order))
            .collect();
        let mut comps = Vec::with_capacity(4);
        for mu in 0..4 {
            let mut m = JetMat::zeros(dim, dim, NV, order);
            for (i, t) in basis.iter().enumerate() {
                let c = &coeffs[6 * (mu * nb + i)..6 * (mu * nb + i) + 6];
                let p = rand_poly(c);
                m = m.add(&JetMat::from_value(t, NV, order).scale_jet(&p.eval_jet(&xs)));
            }
            comps.push(m);
        }
        Ok(comps)
    })
}

/// Degree-0 coefficient fields p_a(x)·X_a over the algebra basis.
fn ghost_coeffs(spec: &GroupSpec, seed: u64) -> Vec<LocalForm> {
    let nb = spec.alg_dim();
    let dim = spec.mat_dim();
    let coeffs = sample_coeffs(6 * nb, 0.7, seed);
    (0..nb)
        .map(|a| {
            let x_a = spec.basis()[a].clone();
            let p = rand_poly(&coeffs[6 * a..6 * a + 6]);
            LocalForm::new(chart(), 0, dim, dim, Some(spec.clone()), move |x, order| {
                let xs: Vec<JetScalar> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &xi)| JetScalar::variable(xi, i, NV, order))
                    .collect();
                Ok(vec![
                    JetMat::from_value(&x_a, NV, order).scale_jet(&p.eval_jet(&xs))
                ])
            })
        })
        .collect()
}

fn so13_ghost(seed: u64, offset: usize, n_gen: usize) -> GrassmannElem {
    GrassmannElem::ghost(&ghost_coeffs(&groups::so13(), seed), offset, n_gen).unwrap()
}

/// Random polynomial matter column for the fundamental representation.
fn rand_matter(spec: &GroupSpec, seed: u64) -> BrstField {
    let dim = spec.mat_dim();
    let coeffs = sample_coeffs(6 * dim, 1.0, seed);
    let form = LocalForm::new(chart(), 0, dim, 1, None, move |x, order| {
        let xs: Vec<JetScalar> = x
            .iter()
            .enumerate()
            .map(|(i, &xi)| JetScalar::variable(xi, i, NV, order))
            .collect();
        let mut m = JetMat::zeros(dim, 1, NV, order);
        for r in 0..dim {
            m.set(r, 0, rand_poly(&coeffs[6 * r..6 * r + 6]).eval_jet(&xs));
        }
        Ok(vec![m])
    });
    BrstField::Matter(
        GrassmannElem::from_form(&form, 6),
        Representation::fundamental(spec.clone()),
    )
}

fn field_set(spec: &GroupSpec, c: &GrassmannElem, seed: u64) -> Vec<BrstField> {
    let a = rand_conn(spec, seed);
    let f = a.d().add(&a.wedge(&a).unwrap());
    vec![
        BrstField::Conn(GrassmannElem::from_form(&a, c.n_gen)),
        BrstField::Curv(GrassmannElem::from_form(&f, c.n_gen)),
        rand_matter(spec, seed + 1),
        BrstField::Ghost(c.clone()),
    ]
}

fn max_elem_diff(a: &GrassmannElem, b: &GrassmannElem, pts: &[Vec<f64>]) -> f64 {
    let d = a.sub(b);
    pts.iter()
        .map(|x| d.max_abs_at(x, 0).unwrap())
        .fold(0.0, f64::max)
}

#[test]
fn repeated_generator_kills_product_exactly() {
    let f = LocalForm::from_polys(
        chart(),
        1,
        1,
        1,
        None,
        vec![
            vec![vec![scalar_monomial(1.3, vec![1, 0, 0, 0])]],
            vec![vec![scalar_monomial(0.0, vec![0; 4])]],
            vec![vec![scalar_monomial(0.0, vec![0; 4])]],
            vec![vec![scalar_monomial(0.0, vec![0; 4])]],
        ],
    );
    let x = GrassmannElem::monomial(&f, 0b1, 4).unwrap();
    let sq = x.wedge(&x).unwrap();
    assert!(sq.masks().is_empty());
    for p in pts() {
        assert_eq!(sq.max_abs_at(&p, 0).unwrap(), 0.0);
    }
}

#[test]
fn graded_sign_on_monomials_is_exact() {
    // Single-component scalar coefficients so both orderings multiply the
    // same floats: comparison is exact.
    let dx0 = |c: f64| {
        LocalForm::from_polys(
            chart(),
            1,
            1,
            1,
            None,
            vec![
                vec![vec![scalar_monomial(c, vec![0, 1, 0, 0])]],
                vec![vec![scalar_monomial(0.0, vec![0; 4])]],
                vec![vec![scalar_monomial(0.0, vec![0; 4])]],
                vec![vec![scalar_monomial(0.0, vec![0; 4])]],
            ],
        )
    };
    let f0 = |c: f64| {
        LocalForm::from_polys(
            chart(),
            0,
            1,
            1,
            None,
            vec![vec![vec![scalar_monomial(c, vec![0, 0, 2, 0])]]],
        )
    };

    // even (form 1, ghost 1) × odd (form 0, ghost 1): commute.
    let x = GrassmannElem::monomial(&dx0(1.7), 0b01, 4).unwrap();
    let y = GrassmannElem::monomial(&f0(-0.9), 0b10, 4).unwrap();
    assert_eq!(max_elem_diff(&x.wedge(&y).unwrap(), &y.wedge(&x).unwrap(), &pts()), 0.0);

    // odd (form 1, ghost 0) × odd (form 0, ghost 1): anticommute.
    let u = GrassmannElem::from_form(&dx0(0.6), 4);
    let v = GrassmannElem::monomial(&f0(1.1), 0b01, 4).unwrap();
    let uv = u.wedge(&v).unwrap();
    let vu = v.wedge(&u).unwrap();
    assert_eq!(max_elem_diff(&uv, &vu.neg(), &pts()), 0.0);
}

#[test]
fn zero_ghost_annihilates_everything() {
    let spec = groups::so13();
    let zero_coeffs: Vec<LocalForm> = (0..6).map(|_| LocalForm::zero(chart(), 0, 4, 4)).collect();
    let c = GrassmannElem::ghost(&zero_coeffs, 0, 6).unwrap();
    for field in field_set(&spec, &c, 11) {
        let s = brst_apply(&field, &c).unwrap();
        for x in pts() {
            assert!(s.max_abs_at(&x, 0).unwrap() <= 1e-15, "{}", field.label());
        }
    }
}

#[test]
fn abelian_one_generator_ghost_squares_to_zero() {
    let coeff = LocalForm::from_polys(
        chart(),
        0,
        1,
        1,
        None,
        vec![vec![vec![scalar_monomial(0.8, vec![1, 1, 0, 0])]]],
    );
    let c = GrassmannElem::ghost(&[coeff], 0, 1).unwrap();
    let sc = brst_apply(&BrstField::Ghost(c.clone()), &c).unwrap();
    for x in pts() {
        assert_eq!(sc.max_abs_at(&x, 0).unwrap(), 0.0);
    }
}

#[test]
fn s_of_zero_connection_is_minus_d_ghost() {
    let c = so13_ghost(21, 0, 6);
    let a = BrstField::Conn(GrassmannElem::from_form(&LocalForm::zero(chart(), 1, 4, 4), 6));
    let sa = brst_apply(&a, &c).unwrap();
    for mask in c.masks() {
        let want = c.coefficient(mask).unwrap().d().scale_re(-1.0);
        let got = sa.coefficient(mask).unwrap();
        for x in pts() {
            let u = got.eval_at(&x, 0).unwrap();
            let v = want.eval_at(&x, 0).unwrap();
            let diff = u
                .iter()
                .zip(&v)
                .map(|(p, q)| p.sub(q).max_abs())
                .fold(0.0, f64::max);
            assert!(diff <= 1e-12);
        }
    }
}

#[test]
fn s_of_constant_matter_is_matrix_action() {
    let spec = groups::so13();
    let rep = Representation::fundamental(spec.clone());
    let phi_vals = [0.4, -1.2, 0.7, 0.3];
    let phi_form = LocalForm::new(chart(), 0, 4, 1, None, move |_, order| {
        let mut m = JetMat::zeros(4, 1, NV, order);
        for (r, &v) in phi_vals.iter().enumerate() {
            m.set(r, 0, JetScalar::constant_re(v, NV, order));
        }
        Ok(vec![m])
    });
    let consts = [0.9, -0.4, 1.3, 0.2, -0.8, 0.5];
    let coeffs: Vec<LocalForm> = (0..6)
        .map(|a| {
            let x_a = spec.basis()[a].clone();
            let w = consts[a];
            LocalForm::new(chart(), 0, 4, 4, None, move |_, order| {
                Ok(vec![JetMat::from_value(&x_a, NV, order).scale_re(w)])
            })
        })
        .collect();
    let c = GrassmannElem::ghost(&coeffs, 0, 6).unwrap();
    let sphi = brst_apply(
        &BrstField::Matter(GrassmannElem::from_form(&phi_form, 6), rep),
        &c,
    )
    .unwrap();
    let x0 = vec![0.1, -0.2, 0.05, 0.3];
    for (a, mask) in (0..6).map(|a| (a, 1u32 << a)) {
        let got = sphi.coefficient(mask).unwrap().eval_at(&x0, 0).unwrap()[0].value();
        let xa = &spec.basis()[a];
        for r in 0..4 {
            let want: f64 = -consts[a] * (0..4).map(|k| xa[(r, k)].re * phi_vals[k]).sum::<f64>();
            assert!((got[(r, 0)].re - want).abs() <= 1e-12);
        }
    }
}

#[test]
fn ghost_degree_increases_by_one() {
    let spec = groups::so13();
    let c = so13_ghost(31, 0, 6);
    for field in field_set(&spec, &c, 33) {
        let s = brst_apply(&field, &c).unwrap();
        assert_eq!(s.ghost_degree, field.elem().ghost_degree + 1, "{}", field.label());
        let s2 = brst_apply_twice(&field, &c).unwrap();
        assert_eq!(s2.ghost_degree, field.elem().ghost_degree + 2, "{}", field.label());
    }
}

#[test]
fn s_squared_vanishes_twisted_so13() {
    let spec = groups::so13();
    let c = so13_ghost(41, 0, 6);
    let report = check_nilpotency(&field_set(&spec, &c, 43), &c, &pts()).unwrap();
    for (label, worst) in report {
        assert!(worst <= 1e-10, "s² on {label}: {worst:.3e}");
    }
}

#[test]
fn s_squared_vanishes_mixed_sector() {
    let spec = groups::so13();
    let c = so13_ghost(51, 0, 12);
    let u = so13_ghost(53, 6, 12);
    let ctot = c.add(&u);
    let report = check_nilpotency(&field_set(&spec, &ctot, 55), &ctot, &pts()).unwrap();
    for (label, worst) in report {
        assert!(worst <= 1e-10, "mixed s² on {label}: {worst:.3e}");
    }
}

#[test]
fn sector_relations_from_restricting_total_s() {
    let c = so13_ghost(61, 0, 12);
    let u = so13_ghost(63, 6, 12);
    let ctot = c.add(&u);
    let s_tot = brst_apply(&BrstField::Ghost(ctot.clone()), &ctot).unwrap();
    let chi_bits = 0b111111u32;

    let chi_part = s_tot.restrict(move |m| m & !chi_bits == 0);
    let want_chi = c.bracket(&c).unwrap().scale_re(-0.5);
    assert!(max_elem_diff(&chi_part, &want_chi, &pts()) <= 1e-10);

    let ups_part = s_tot.restrict(move |m| m & chi_bits == 0);
    let want_ups = u.bracket(&u).unwrap().scale_re(-0.5);
    assert!(max_elem_diff(&ups_part, &want_ups, &pts()) <= 1e-10);

    // The cross terms are all of s_υ on c(χ) = −[c(χ),υ]; s_χ on υ is zero.
    let cross_part = s_tot.restrict(move |m| m & chi_bits != 0 && m & !chi_bits != 0);
    let want_cross = c.bracket(&u).unwrap().neg();
    assert!(max_elem_diff(&cross_part, &want_cross, &pts()) <= 1e-10);
}

#[test]
fn s_of_curvature_matches_derivation_through_d() {
    // F = dA + A∧A, so the rule sF = [F,c] must agree with the graded
    // Leibniz expansion −d(sA) + [sA, A]; this is the sd + ds = 0 content.
    let spec = groups::so13();
    let c = so13_ghost(71, 0, 6);
    let a_form = rand_conn(&spec, 73);
    let f_form = a_form.d().add(&a_form.wedge(&a_form).unwrap());
    let a = GrassmannElem::from_form(&a_form, 6);
    let sa = brst_apply(&BrstField::Conn(a.clone()), &c).unwrap();
    let derived = sa.d().neg().add(&sa.bracket(&a).unwrap());
    let direct = brst_apply(&BrstField::Curv(GrassmannElem::from_form(&f_form, 6)), &c).unwrap();
    assert!(max_elem_diff(&direct, &derived, &pts()) <= 1e-10);
}

#[test]
fn contracted_s_matches_gauge_infinitesimal() {
    let spec = groups::so13();
    let a_form = rand_conn(&spec, 81);
    let cocycle = ccat::morphism_cocycle(
        spec.clone(),
        spec.clone(),
        |m| Ok(m.clone()),
        |m| Ok(m.clone()),
    );
    let conn = ConnForm::new(a_form.clone(), cocycle).unwrap();

    let coeffs = ghost_coeffs(&spec, 83);
    let chi_fields = coeffs.clone();
    let chi = JetField::new(NV, move |x, order| {
        let mut m = JetMat::zeros(4, 4, NV, order);
        for f in &chi_fields {
            m = m.add(&f.eval_at(x, order)?[0]);
        }
        Ok(m)
    });
    let delta = conn.infinitesimal(Some(&chi), None).unwrap();

    let c = GrassmannElem::ghost(&coeffs, 0, 6).unwrap();
    let sa = brst_apply(&BrstField::Conn(GrassmannElem::from_form(&a_form, 6)), &c).unwrap();
    let mut contracted = LocalForm::zero(chart(), 1, 4, 4);
    for mask in sa.masks() {
        contracted = contracted.add(sa.coefficient(mask).unwrap());
    }

    // sA = −dc − [A,c] while δ_χA = dc(χ) + [A,c(χ)]: the contraction is −δ.
    let resid = contracted.add(&delta);
    for x in pts() {
        assert!(resid.max_abs_at(&x, 0).unwrap() <= 1e-9);
    }
}

#[test]
fn empty_ghost_is_rejected() {
    assert!(matches!(
        GrassmannElem::ghost(&[], 0, 6),
        Err(KernelError::GhostNotInstantiated(_))
    ));
    let hollow = GrassmannElem::zero(chart(), 0, 1, 1, 1, 6);
    let a = BrstField::Conn(GrassmannElem::from_form(&LocalForm::zero(chart(), 1, 4, 4), 6));
    assert!(matches!(
        brst_apply(&a, &hollow),
        Err(KernelError::GhostNotInstantiated(_))
    ));
}

#[test]
fn mismatched_bidegree_is_rejected() {
    let c = so13_ghost(91, 0, 6);
    let wrong = BrstField::Conn(GrassmannElem::from_form(&LocalForm::zero(chart(), 2, 4, 4), 6));
    assert!(brst_apply(&wrong, &c).is_err());
}
