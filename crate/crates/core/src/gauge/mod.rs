//! Twisted and mixed local gauge fields: connection and tensorial forms,
//! curvature, covariant derivatives, finite and infinitesimal gauge
//! transformations, chart gluing, and dressing-field connections.

pub mod dressing;

use crate::cocycle::{GaugeField, LocalCocycle};
use crate::error::{KernelError, Result};
use crate::forms::{Chart, LocalForm};
use crate::jetmat::JetMat;
use crate::lie::GroupSpec;
use std::sync::Arc;

/// A field of jet matrices on a chart (no group structure assumed).
#[derive(Clone)]
pub struct JetField {
    pub n_vars: usize,
    eval: Arc<dyn Fn(&[f64], usize) -> Result<JetMat> + Send + Sync>,
}

impl JetField {
    pub fn new(
        n_vars: usize,
        eval: impl Fn(&[f64], usize) -> Result<JetMat> + Send + Sync + 'static,
    ) -> Self {
        JetField {
            n_vars,
            eval: Arc::new(eval),
        }
    }

    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<JetMat> {
        (self.eval)(x, order)
    }
}

/// The cocycle values C(γ(x)) as a jet field; requesting order o consumes a
/// jet of γ at order o+1.
pub fn cocycle_value_field(c: &LocalCocycle, gamma: &GaugeField) -> JetField {
    let c = c.clone();
    let g = gamma.clone();
    JetField::new(g.n_vars, move |x, order| {
        let j = g.jet_at(x, order + 1)?;
        Ok(c.evaluate(&j)?.truncate(order))
    })
}

/// The mixed transition values [C(γ(x)) ζ(x)] (K-factor through the
/// embedding); γ or ζ may be absent (treated as identity).
pub fn mixed_value_field(
    c: &LocalCocycle,
    gamma: Option<&GaugeField>,
    zeta: Option<&GaugeField>,
) -> Result<JetField> {
    let kc = match zeta {
        Some(z) => {
            let kc = c.k_compat.clone().ok_or(KernelError::NotKCompatible)?;
            if !z.spec.same_spec(&kc.k_spec) {
                return Err(KernelError::GroupMismatch(format!(
                    "mixed K-factor valued in {}, expected {}",
                    z.spec.name(),
                    kc.k_spec.name()
                )));
            }
            Some(kc)
        }
        None => None,
    };
    let c = c.clone();
    let gamma = gamma.cloned();
    let zeta = zeta.cloned();
    let n_vars = gamma
        .as_ref()
        .map(|g| g.n_vars)
        .or(zeta.as_ref().map(|z| z.n_vars))
        .ok_or_else(|| KernelError::InvalidInput("mixed transform with no factors".into()))?;
    let dim = c.target.mat_dim();
    Ok(JetField::new(n_vars, move |x, order| {
        let mut l = match &gamma {
            Some(g) => c.evaluate(&g.jet_at(x, order + 1)?)?.truncate(order),
            None => JetMat::identity(dim, n_vars, order),
        };
        if let (Some(z), Some(kc)) = (&zeta, &kc) {
            let zj = z.jet_at(x, order)?;
            l = l.mul(&(kc.embed)(&zj.mat));
        }
        Ok(l)
    }))
}

/// The cocycle with its frame data shifted by an H-valued gauge field
/// (section shift σ ↦ σγ, e.g. e ↦ z·e for dilations), so that repeated
/// transformations compose as a right action. Cocycles without frame data
/// are returned unchanged.
pub fn h_transformed_cocycle(c: &LocalCocycle, gamma: &GaugeField) -> Result<LocalCocycle> {
    let (fa, frame) = match (&c.h_frame_action, &c.frame) {
        (Some(fa), Some(frame)) => (fa.clone(), frame.clone()),
        _ => return Ok(c.clone()),
    };
    let g = gamma.clone();
    let f2 = frame.clone();
    let new_frame = crate::cocycle::FrameField::new(frame.dim, frame.n_vars, move |x, order| {
        let gj = g.jet_at(x, order)?;
        (fa)(&gj.mat, &f2)?.eval_at(x, order)
    });
    let mut out = c.clone();
    out.frame = Some(new_frame);
    Ok(out)
}

/// The cocycle with its frame data transformed by a K-valued gauge field
/// (e ↦ e^ζ), realizing C ↦ C^ζ for subsequent transformations.
pub fn k_transformed_cocycle(c: &LocalCocycle, zeta: &GaugeField) -> Result<LocalCocycle> {
    let kc = c.k_compat.clone().ok_or(KernelError::NotKCompatible)?;
    if !zeta.spec.same_spec(&kc.k_spec) {
        return Err(KernelError::GroupMismatch(format!(
            "K-transform by a {} field, expected {}",
            zeta.spec.name(),
            kc.k_spec.name()
        )));
    }
    let frame = c.frame.clone().ok_or_else(|| {
        KernelError::FrameDataMissing("K-transform needs frame data to act on".into())
    })?;
    let z = zeta.clone();
    let fa = kc.frame_action.clone();
    let f2 = frame.clone();
    let new_frame = crate::cocycle::FrameField::new(frame.dim, frame.n_vars, move |x, order| {
        let zj = z.jet_at(x, order)?;
        (fa)(&zj.mat, &f2)?.eval_at(x, order)
    });
    let mut out = c.clone();
    out.frame = Some(new_frame);
    Ok(out)
}

/// A representation of the cocycle target group on a space of matrices:
/// ρ(g)v and the algebra action ρ*(X)v.
#[derive(Clone)]
pub struct Representation {
    pub group: GroupSpec,
    pub rows: usize,
    pub cols: usize,
    pub name: String,
    act: Arc<dyn Fn(&JetMat, &JetMat) -> Result<JetMat> + Send + Sync>,
    act_alg: Arc<dyn Fn(&JetMat, &JetMat) -> Result<JetMat> + Send + Sync>,
}

impl Representation {
    /// Fundamental (defining) representation on column vectors.
    pub fn fundamental(group: GroupSpec) -> Self {
        let dim = group.mat_dim();
        Representation {
            group,
            rows: dim,
            cols: 1,
            name: "fundamental".into(),
            act: Arc::new(|g, v| Ok(g.mul(v))),
            act_alg: Arc::new(|x, v| Ok(x.mul(v))),
        }
    }

    /// Conjugation representation on the full matrix space (restricts to the
    /// adjoint representation on the algebra): ρ(g)v = gvg⁻¹, ρ*(X)v = [X,v].
    pub fn conjugation(group: GroupSpec) -> Self {
        let dim = group.mat_dim();
        Representation {
            group,
            rows: dim,
            cols: dim,
            name: "conjugation".into(),
            act: Arc::new(|g, v| Ok(g.mul(v).mul(&g.inverse()?))),
            act_alg: Arc::new(|x, v| Ok(x.commutator(v))),
        }
    }

    pub fn apply(&self, g: &JetMat, v: &JetMat) -> Result<JetMat> {
        (self.act)(g, v)
    }

    pub fn apply_alg(&self, x: &JetMat, v: &JetMat) -> Result<JetMat> {
        (self.act_alg)(x, v)
    }

    /// Structural checks: ρ(e) = id and ρ*([X,Y]) = [ρ*X, ρ*Y] as operators,
    /// probed on the algebra basis and a spread of value matrices.
    pub fn check(&self) -> Result<()> {
        let dim = self.group.mat_dim();
        let id = JetMat::identity(dim, 1, 0);
        let mut probe = JetMat::zeros(self.rows, self.cols, 1, 0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                probe.set(
                    r,
                    c,
                    crate::jets::JetScalar::constant_re(
                        0.3 + 0.1 * (r as f64) - 0.07 * (c as f64),
                        1,
                        0,
                    ),
                );
            }
        }
        let pv = self.apply(&id, &probe)?;
        if pv.sub(&probe).max_abs() > 1e-12 {
            return Err(KernelError::RepresentationMismatch(
                "ρ(identity) is not the identity operator".into(),
            ));
        }
        for a in 0..self.group.alg_dim() {
            for b in (a + 1)..self.group.alg_dim() {
                let ta = JetMat::from_value(&self.group.basis()[a], 1, 0);
                let tb = JetMat::from_value(&self.group.basis()[b], 1, 0);
                let br = ta.mul(&tb).sub(&tb.mul(&ta));
                let lhs = self.apply_alg(&br, &probe)?;
                let rhs = self
                    .apply_alg(&ta, &self.apply_alg(&tb, &probe)?)?
                    .sub(&self.apply_alg(&tb, &self.apply_alg(&ta, &probe)?)?);
                if lhs.sub(&rhs).max_abs() > 1e-12 {
                    return Err(KernelError::RepresentationMismatch(format!(
                        "ρ* fails the bracket homomorphism on basis pair ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A local twisted (or mixed) connection 1-form with its attached cocycle.
#[derive(Clone)]
pub struct ConnForm {
    pub form: LocalForm,
    pub cocycle: LocalCocycle,
}

/// A tensorial k-form valued in a representation space.
#[derive(Clone)]
pub struct TensorialField {
    pub form: LocalForm,
    pub rep: Representation,
}

/// Core transformation law shared by active gauge transformations, passive
/// gluing, and mixed transformations: A ↦ L⁻¹AL + L⁻¹dL.
fn transform_form_by(form: &LocalForm, l: &JetField) -> LocalForm {
    let n = form.chart.dim;
    let (rows, cols) = (form.rows, form.cols);
    let inner = form.clone();
    let l = l.clone();
    LocalForm::new(
        form.chart.clone(),
        1,
        rows,
        cols,
        form.algebra.clone(),
        move |x, order| {
            let lm = l.eval_at(x, order + 1)?;
            let lt = lm.truncate(order);
            let linv = lt.inverse()?;
            let comps = inner.eval_at(x, order)?;
            (0..n)
                .map(|mu| {
                    Ok(linv
                        .mul(&comps[mu])
                        .mul(&lt)
                        .add(&linv.mul(&lm.deriv(mu))))
                })
                .collect()
        },
    )
}

/// ρ(L)⁻¹-transformation of a tensorial form's components.
fn transform_tensorial_by(form: &LocalForm, rep: &Representation, l: &JetField) -> LocalForm {
    let inner = form.clone();
    let rep = rep.clone();
    let l = l.clone();
    LocalForm::new(
        form.chart.clone(),
        form.degree,
        form.rows,
        form.cols,
        form.algebra.clone(),
        move |x, order| {
            let linv = l.eval_at(x, order)?.inverse()?;
            inner
                .eval_at(x, order)?
                .iter()
                .map(|c| rep.apply(&linv, c))
                .collect()
        },
    )
}

impl ConnForm {
    /// Wrap a degree-1 algebra-valued form with its cocycle.
    pub fn new(form: LocalForm, cocycle: LocalCocycle) -> Result<Self> {
        if form.degree != 1 {
            return Err(KernelError::DegreeOverflow(format!(
                "connection form must have degree 1, got {}",
                form.degree
            )));
        }
        let dim = cocycle.target.mat_dim();
        if form.rows != dim || form.cols != dim {
            return Err(KernelError::DimensionMismatch(format!(
                "connection values {}×{} for a {}×{} target",
                form.rows, form.cols, dim, dim
            )));
        }
        Ok(ConnForm { form, cocycle })
    }

    /// Curvature F = dA + ½[A,A] (for 1-forms ½[A,A] = A∧A).
    pub fn curvature(&self) -> Result<LocalForm> {
        let da = self.form.d();
        let aa = self.form.wedge(&self.form)?;
        Ok(da.add(&aa))
    }

    /// Active gauge transformation A^γ = C(γ)⁻¹AC(γ) + C(γ)⁻¹dC(γ).
    pub fn transform_connection(&self, gamma: &GaugeField) -> Result<ConnForm> {
        if !gamma.spec.same_spec(&self.cocycle.source) {
            return Err(KernelError::GroupMismatch(format!(
                "gauge field valued in {}, cocycle source is {}",
                gamma.spec.name(),
                self.cocycle.source.name()
            )));
        }
        let l = cocycle_value_field(&self.cocycle, gamma);
        Ok(ConnForm {
            form: transform_form_by(&self.form, &l),
            cocycle: h_transformed_cocycle(&self.cocycle, gamma)?,
        })
    }

    /// K-gauge transformation A^ζ = ζ⁻¹Aζ + ζ⁻¹dζ (through the embedding);
    /// the attached cocycle picks up the transformed frame data.
    pub fn transform_k(&self, zeta: &GaugeField) -> Result<ConnForm> {
        let kc = self
            .cocycle
            .k_compat
            .clone()
            .ok_or(KernelError::NotKCompatible)?;
        if !zeta.spec.same_spec(&kc.k_spec) {
            return Err(KernelError::GroupMismatch(format!(
                "K-transform by {}, expected {}",
                zeta.spec.name(),
                kc.k_spec.name()
            )));
        }
        let z = zeta.clone();
        let embed = kc.embed.clone();
        let l = JetField::new(zeta.n_vars, move |x, order| {
            Ok((embed)(&z.jet_at(x, order)?.mat))
        });
        Ok(ConnForm {
            form: transform_form_by(&self.form, &l),
            cocycle: k_transformed_cocycle(&self.cocycle, zeta)?,
        })
    }

    /// One-shot mixed transformation with L = [C(γ)ζ].
    pub fn transform_mixed(
        &self,
        gamma: Option<&GaugeField>,
        zeta: Option<&GaugeField>,
    ) -> Result<ConnForm> {
        let l = mixed_value_field(&self.cocycle, gamma, zeta)?;
        let mut cocycle = match gamma {
            Some(g) => h_transformed_cocycle(&self.cocycle, g)?,
            None => self.cocycle.clone(),
        };
        if let Some(z) = zeta {
            cocycle = k_transformed_cocycle(&cocycle, z)?;
        }
        Ok(ConnForm {
            form: transform_form_by(&self.form, &l),
            cocycle,
        })
    }

    /// Passive gluing across charts: the same law with the transition data.
    pub fn glue(&self, overlap: &OverlapData) -> Result<ConnForm> {
        self.transform_mixed(Some(&overlap.g), overlap.ell.as_ref())
    }

    /// Infinitesimal transformation δ_χA = d(c(χ)) + [A, c(χ)], with the
    /// mixed total generator c(χ) + υ when a K-direction is supplied.
    pub fn infinitesimal(
        &self,
        chi: Option<&JetField>,
        upsilon: Option<&JetField>,
    ) -> Result<LocalForm> {
        let gen = total_generator(&self.cocycle, &self.form.chart, chi, upsilon)?;
        let dgen = gen.d();
        let bracket = self.form.wedge(&gen)?.sub(&gen.wedge(&self.form)?);
        Ok(dgen.add(&bracket))
    }
}

impl TensorialField {
    pub fn new(form: LocalForm, rep: Representation) -> Result<Self> {
        if form.rows != rep.rows || form.cols != rep.cols {
            return Err(KernelError::RepresentationMismatch(format!(
                "form values {}×{}, representation space {}×{}",
                form.rows, form.cols, rep.rows, rep.cols
            )));
        }
        Ok(TensorialField { form, rep })
    }

    fn check_conn(&self, a: &ConnForm) -> Result<()> {
        if !self.rep.group.same_spec(&a.cocycle.target) {
            return Err(KernelError::RepresentationMismatch(format!(
                "representation of {}, connection target {}",
                self.rep.group.name(),
                a.cocycle.target.name()
            )));
        }
        Ok(())
    }

    /// Covariant derivative Da = da + ρ*(A)∧a.
    pub fn covariant_derivative(&self, a: &ConnForm) -> Result<TensorialField> {
        self.check_conn(a)?;
        let da = self.form.d();
        let rep = self.rep.clone();
        let rho_a = a.form.wedge_with(&self.form, self.rep.rows, self.rep.cols, move |x, v| {
            rep.apply_alg(x, v)
        })?;
        TensorialField::new(da.add(&rho_a), self.rep.clone())
    }

    /// Active gauge transformation a^γ = ρ[C(γ)]⁻¹a.
    pub fn transform_tensorial(&self, c: &LocalCocycle, gamma: &GaugeField) -> Result<TensorialField> {
        if !gamma.spec.same_spec(&c.source) {
            return Err(KernelError::GroupMismatch(format!(
                "gauge field valued in {}, cocycle source is {}",
                gamma.spec.name(),
                c.source.name()
            )));
        }
        let l = cocycle_value_field(c, gamma);
        TensorialField::new(
            transform_tensorial_by(&self.form, &self.rep, &l),
            self.rep.clone(),
        )
    }

    /// Mixed transformation a^{γζ} = ρ[C(γ)ζ]⁻¹a.
    pub fn transform_mixed(
        &self,
        c: &LocalCocycle,
        gamma: Option<&GaugeField>,
        zeta: Option<&GaugeField>,
    ) -> Result<TensorialField> {
        let l = mixed_value_field(c, gamma, zeta)?;
        TensorialField::new(
            transform_tensorial_by(&self.form, &self.rep, &l),
            self.rep.clone(),
        )
    }

    /// Passive gluing a′ = ρ[C(g)ℓ]⁻¹a.
    pub fn glue(&self, c: &LocalCocycle, overlap: &OverlapData) -> Result<TensorialField> {
        self.transform_mixed(c, Some(&overlap.g), overlap.ell.as_ref())
    }

    /// Infinitesimal transformation δ_χa = −ρ*(c(χ) + υ)a.
    pub fn infinitesimal(
        &self,
        c: &LocalCocycle,
        chi: Option<&JetField>,
        upsilon: Option<&JetField>,
    ) -> Result<TensorialField> {
        let gen = total_generator(c, &self.form.chart, chi, upsilon)?;
        let rep = self.rep.clone();
        let out = gen
            .wedge_with(&self.form, self.rep.rows, self.rep.cols, move |x, v| {
                rep.apply_alg(x, v)
            })?
            .scale_re(-1.0);
        TensorialField::new(out, self.rep.clone())
    }
}

/// The total infinitesimal generator c(χ) + υ as a 0-form valued in the
/// target matrix size (υ through the algebra-level K-embedding).
fn total_generator(
    c: &LocalCocycle,
    chart: &Chart,
    chi: Option<&JetField>,
    upsilon: Option<&JetField>,
) -> Result<LocalForm> {
    if chi.is_none() && upsilon.is_none() {
        return Err(KernelError::InvalidInput(
            "infinitesimal transformation with no generator".into(),
        ));
    }
    let embed_alg = match upsilon {
        Some(_) => Some(
            c.k_compat
                .clone()
                .ok_or(KernelError::NotKCompatible)?
                .embed_alg,
        ),
        None => None,
    };
    let dim = c.target.mat_dim();
    let n = chart.dim;
    let c = c.clone();
    let chi = chi.cloned();
    let upsilon = upsilon.cloned();
    Ok(LocalForm::new(
        chart.clone(),
        0,
        dim,
        dim,
        None,
        move |x, order| {
            let mut g = JetMat::zeros(dim, dim, n, order);
            if let Some(chi) = &chi {
                let chij = chi.eval_at(x, order + 1)?;
                g = g.add(&c.diff_at_identity(x, &chij)?.truncate(order));
            }
            if let (Some(u), Some(embed_alg)) = (&upsilon, &embed_alg) {
                g = g.add(&(embed_alg)(&u.eval_at(x, order)?));
            }
            Ok(vec![g])
        },
    ))
}

/// Transition data across a chart overlap: the H-valued transition field and
/// an optional K-valued factor for the mixed setting.
#[derive(Clone)]
pub struct OverlapData {
    pub g: GaugeField,
    pub ell: Option<GaugeField>,
}
