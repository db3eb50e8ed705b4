//! Local group-action cocycles evaluated on jets of gauge-group elements:
//! gauge-jet and frame-field types, the cocycle evaluation/composition laws,
//! the differential at the identity, and K-conjugation realized through
//! frame transformations.

pub mod catalog;

use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;
use crate::jets::{JetScalar, Polynomial};
use crate::lie::GroupSpec;
use std::sync::Arc;

/// The jet of a group-valued field at a point: coordinates, jet matrix, and
/// the group it lives in. Construction checks value membership and that
/// γ⁻¹∂_μγ lies in the Lie-algebra span.
#[derive(Clone)]
pub struct GaugeJet {
    pub x: Vec<f64>,
    pub mat: JetMat,
    pub spec: GroupSpec,
}

impl GaugeJet {
    pub fn new(x: Vec<f64>, mat: JetMat, spec: GroupSpec) -> Result<Self> {
        if mat.nrows() != spec.mat_dim() || mat.ncols() != spec.mat_dim() {
            return Err(KernelError::DimensionMismatch(format!(
                "gauge jet is {}×{} for a {}×{} group",
                mat.nrows(),
                mat.ncols(),
                spec.mat_dim(),
                spec.mat_dim()
            )));
        }
        let v = mat.value();
        if !spec.is_member(&v) {
            return Err(KernelError::GroupMismatch(format!(
                "gauge jet value fails {} membership",
                spec.name()
            )));
        }
        if mat.order() >= 1 {
            let vinv = v
                .clone()
                .try_inverse()
                .ok_or_else(|| KernelError::Numeric("gauge jet value not invertible".into()))?;
            for mu in 0..mat.n_vars() {
                let mc = &vinv * mat.deriv(mu).value();
                let (_, residual) = spec.algebra_coords(&mc);
                let scale = 1.0 + mc.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if residual > 1e-9 * scale {
                    return Err(KernelError::GroupMismatch(format!(
                        "γ⁻¹∂_{mu}γ outside Lie({}) span (residual {residual:.3e})",
                        spec.name()
                    )));
                }
            }
        }
        Ok(GaugeJet { x, mat, spec })
    }

    /// The identity jet at `x`.
    pub fn identity(spec: &GroupSpec, x: Vec<f64>, n_vars: usize, order: usize) -> Self {
        GaugeJet {
            mat: JetMat::identity(spec.mat_dim(), n_vars, order),
            spec: spec.clone(),
            x,
        }
    }

    pub fn order(&self) -> usize {
        self.mat.order()
    }

    /// Pointwise product jet (Leibniz derivatives come with the jet product).
    pub fn product(&self, rhs: &GaugeJet) -> Result<GaugeJet> {
        if !self.spec.same_spec(&rhs.spec) {
            return Err(KernelError::GroupMismatch(format!(
                "product of {} jet with {} jet",
                self.spec.name(),
                rhs.spec.name()
            )));
        }
        if self.x != rhs.x {
            return Err(KernelError::InvalidInput(
                "product of gauge jets at different points".into(),
            ));
        }
        Ok(GaugeJet {
            x: self.x.clone(),
            mat: self.mat.mul(&rhs.mat),
            spec: self.spec.clone(),
        })
    }

    /// Inverse jet.
    pub fn inverse(&self) -> Result<GaugeJet> {
        Ok(GaugeJet {
            x: self.x.clone(),
            mat: self.mat.inverse()?,
            spec: self.spec.clone(),
        })
    }
}

/// A group-valued field on a chart, evaluated as jets.
#[derive(Clone)]
pub struct GaugeField {
    pub spec: GroupSpec,
    pub n_vars: usize,
    eval: Arc<dyn Fn(&[f64], usize) -> Result<JetMat> + Send + Sync>,
}

impl GaugeField {
    pub fn new(
        spec: GroupSpec,
        n_vars: usize,
        eval: impl Fn(&[f64], usize) -> Result<JetMat> + Send + Sync + 'static,
    ) -> Self {
        GaugeField {
            spec,
            n_vars,
            eval: Arc::new(eval),
        }
    }

    /// γ(x) = exp(Σ_i p_i(x) T_i) over the algebra basis — always a valid
    /// group field for connected targets.
    pub fn from_alg_polys(spec: GroupSpec, n_vars: usize, polys: Vec<Polynomial>) -> Self {
        assert_eq!(polys.len(), spec.alg_dim());
        let basis: Vec<_> = spec.basis().to_vec();
        let dim = spec.mat_dim();
        GaugeField::new(spec, n_vars, move |x, order| {
            let xs: Vec<JetScalar> = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, n_vars, order))
                .collect();
            let mut m = JetMat::zeros(dim, dim, n_vars, order);
            for (p, t) in polys.iter().zip(&basis) {
                m = m.add(&JetMat::from_value(t, n_vars, order).scale_jet(&p.eval_jet(&xs)));
            }
            Ok(m.exp())
        })
    }

    /// The constant identity field.
    pub fn identity(spec: GroupSpec, n_vars: usize) -> Self {
        let dim = spec.mat_dim();
        GaugeField::new(spec, n_vars, move |_, order| {
            Ok(JetMat::identity(dim, n_vars, order))
        })
    }

    pub fn jet_at(&self, x: &[f64], order: usize) -> Result<GaugeJet> {
        let mat = (self.eval)(x, order)?;
        GaugeJet::new(x.to_vec(), mat, self.spec.clone())
    }
}

/// A vielbein field e^a_μ (row a, column μ) on a chart, evaluated as jets.
#[derive(Clone)]
pub struct FrameField {
    pub dim: usize,
    pub n_vars: usize,
    eval: Arc<dyn Fn(&[f64], usize) -> Result<JetMat> + Send + Sync>,
}

impl FrameField {
    pub fn new(
        dim: usize,
        n_vars: usize,
        eval: impl Fn(&[f64], usize) -> Result<JetMat> + Send + Sync + 'static,
    ) -> Self {
        FrameField {
            dim,
            n_vars,
            eval: Arc::new(eval),
        }
    }

    /// Constant frame from a real matrix.
    pub fn constant(m: nalgebra::DMatrix<f64>, n_vars: usize) -> Self {
        let dim = m.nrows();
        assert_eq!(dim, m.ncols());
        FrameField::new(dim, n_vars, move |_, order| {
            Ok(JetMat::from_value_re(&m, n_vars, order))
        })
    }

    /// Frame jets at `x`, with an invertibility/conditioning check on the
    /// value (condition number above 1e8 is an error).
    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<JetMat> {
        let e = (self.eval)(x, order)?;
        let sv = e.value().svd(false, false).singular_values;
        let (smax, smin) = (sv.max(), sv.min());
        if smin <= 0.0 || smax / smin > 1e8 {
            return Err(KernelError::SingularFrame(format!(
                "frame at {x:?} has condition {:.3e}",
                if smin > 0.0 { smax / smin } else { f64::INFINITY }
            )));
        }
        Ok(e)
    }

    /// Inverse frame jets (e⁻¹)^μ_a (row μ, column a) at `x`.
    pub fn inverse_at(&self, x: &[f64], order: usize) -> Result<JetMat> {
        self.eval_at(x, order)?.inverse()
    }

    /// The frame field L⁻¹·e for a pointwise linear transformation given as
    /// a jet at one point; only valid where that jet is (evaluation at other
    /// points reuses the same jet, which is exact to the jet order).
    pub fn transformed_at_point(&self, l: &JetMat) -> Result<FrameField> {
        let linv = l.inverse()?;
        let inner = self.eval.clone();
        let dim = self.dim;
        Ok(FrameField::new(dim, self.n_vars, move |x, order| {
            Ok(linv.truncate(order).mul(&inner(x, order)?))
        }))
    }

    /// The frame field z·e for a scalar jet weight at one point (the frame
    /// shift induced by a dilation of the section).
    pub fn scaled_at_point(&self, z: &JetScalar) -> FrameField {
        let z = z.clone();
        let inner = self.eval.clone();
        FrameField::new(self.dim, self.n_vars, move |x, order| {
            Ok(inner(x, order)?.scale_jet(&z.truncate(order)))
        })
    }
}

/// K-compatibility data of a mixed cocycle: the acting group K, its
/// embedding into the target matrix size, and the realization of the
/// K-action on the frame data.
#[derive(Clone)]
pub struct KCompat {
    pub k_spec: GroupSpec,
    pub embed: Arc<dyn Fn(&JetMat) -> JetMat + Send + Sync>,
    /// Algebra-level embedding Lie K → Lie(target size), the differential of
    /// `embed` at the identity.
    pub embed_alg: Arc<dyn Fn(&JetMat) -> JetMat + Send + Sync>,
    /// ζ-jet × frame-field ↦ transformed frame-field (e ↦ e^ζ).
    pub frame_action: Arc<dyn Fn(&JetMat, &FrameField) -> Result<FrameField> + Send + Sync>,
}

type CocycleEval =
    Arc<dyn Fn(&[f64], &GaugeJet, Option<&FrameField>) -> Result<JetMat> + Send + Sync>;
type CocycleDiff =
    Arc<dyn Fn(&[f64], &JetMat, Option<&FrameField>) -> Result<JetMat> + Send + Sync>;

/// A local cocycle: source and target groups, optional frame data, optional
/// K-compatibility, an evaluator on gauge jets, and the analytic
/// differential at the identity jet.
#[derive(Clone)]
pub struct LocalCocycle {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub frame: Option<FrameField>,
    pub k_compat: Option<KCompat>,
    /// Action of an H-jet on the frame data, realizing the section shift
    /// σ ↦ σγ that makes repeated gauge transformations compose as a right
    /// action: C_e(γη) = C_e(γ)·C_{e^γ}(η).
    pub h_frame_action:
        Option<Arc<dyn Fn(&JetMat, &FrameField) -> Result<FrameField> + Send + Sync>>,
    eval: CocycleEval,
    diff: CocycleDiff,
}

impl LocalCocycle {
    pub fn new(
        source: GroupSpec,
        target: GroupSpec,
        frame: Option<FrameField>,
        k_compat: Option<KCompat>,
        h_frame_action: Option<
            Arc<dyn Fn(&JetMat, &FrameField) -> Result<FrameField> + Send + Sync>,
        >,
        eval: CocycleEval,
        diff: CocycleDiff,
    ) -> Self {
        LocalCocycle {
            source,
            target,
            frame,
            k_compat,
            h_frame_action,
            eval,
            diff,
        }
    }

    /// Evaluate C(γ) as a jet of target-group elements. Frame-consuming
    /// cocycles return jets one order below the input jet.
    pub fn evaluate(&self, gamma: &GaugeJet) -> Result<JetMat> {
        self.evaluate_with_frame(gamma, self.frame.as_ref())
    }

    /// Evaluate with an explicit frame override (used by K-conjugation).
    pub fn evaluate_with_frame(
        &self,
        gamma: &GaugeJet,
        frame: Option<&FrameField>,
    ) -> Result<JetMat> {
        if !gamma.spec.same_spec(&self.source) {
            return Err(KernelError::GroupMismatch(format!(
                "cocycle with source {} applied to a {} jet",
                self.source.name(),
                gamma.spec.name()
            )));
        }
        let c = (self.eval)(&gamma.x, gamma, frame)?;
        if !self.target.is_member(&c.value()) {
            return Err(KernelError::GroupMismatch(format!(
                "cocycle value fails {} membership",
                self.target.name()
            )));
        }
        Ok(c)
    }

    /// The gauge-transformed cocycle value C(γ)^η = C(η)⁻¹ C(γη).
    pub fn gauge_compose(&self, gamma: &GaugeJet, eta: &GaugeJet) -> Result<JetMat> {
        let c_eta = self.evaluate(eta)?;
        let c_prod = self.evaluate(&gamma.product(eta)?)?;
        Ok(c_eta.inverse()?.mul(&c_prod))
    }

    /// c(χ) = dC_{|e}(χ): the differential of the cocycle at the identity
    /// jet, applied to an algebra-valued jet χ (which carries dχ).
    pub fn diff_at_identity(&self, x: &[f64], chi: &JetMat) -> Result<JetMat> {
        let v = chi.value();
        let (_, residual) = self.source.algebra_coords(&v);
        if residual > 1e-9 * (1.0 + v.iter().map(|z| z.norm()).fold(0.0, f64::max)) {
            return Err(KernelError::GroupMismatch(format!(
                "χ outside Lie({}) span",
                self.source.name()
            )));
        }
        (self.diff)(x, chi, self.frame.as_ref())
    }

    /// C(γ)^ζ for ζ in the acting group K: realized through the K-action on
    /// the frame data when frame data exists, otherwise by conjugation
    /// through the embedding.
    pub fn k_conjugation(&self, gamma: &GaugeJet, zeta: &GaugeJet) -> Result<JetMat> {
        let kc = self
            .k_compat
            .as_ref()
            .ok_or(KernelError::NotKCompatible)?;
        if !zeta.spec.same_spec(&kc.k_spec) {
            return Err(KernelError::GroupMismatch(format!(
                "K-conjugation by a {} jet, expected {}",
                zeta.spec.name(),
                kc.k_spec.name()
            )));
        }
        match &self.frame {
            Some(frame) => {
                let new_frame = (kc.frame_action)(&zeta.mat, frame)?;
                self.evaluate_with_frame(gamma, Some(&new_frame))
            }
            None => {
                let ord = self.evaluate(gamma)?.order();
                let z = (kc.embed)(&zeta.mat.truncate(ord.min(zeta.order())));
                let c = self.evaluate(gamma)?;
                Ok(z.inverse()?.mul(&c).mul(&z))
            }
        }
    }

    /// Direct conjugation 𝖲⁻¹ C(γ) 𝖲 through the K-embedding (the law the
    /// frame route must reproduce).
    pub fn k_conjugation_direct(&self, gamma: &GaugeJet, zeta: &GaugeJet) -> Result<JetMat> {
        let kc = self
            .k_compat
            .as_ref()
            .ok_or(KernelError::NotKCompatible)?;
        let c = self.evaluate(gamma)?;
        let z = (kc.embed)(&zeta.mat.truncate(c.order().min(zeta.order())));
        Ok(z.inverse()?.mul(&c).mul(&z))
    }
}
