//! Matrix Lie groups and algebras: group specifications with membership
//! tests and algebra bases, exponential/logarithm, brackets, Killing forms,
//! semidirect products, and the spin machinery of the 4-dimensional
//! Lorentzian catalog.

pub mod catalog;
pub mod linalg;
pub mod spin;

use crate::error::{KernelError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

type CMat = DMatrix<Complex64>;

/// Scalar field of a matrix group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Real,
    Complex,
}

/// Which trace form `killing` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KillingKind {
    /// B(M,N) = Tr(MN)
    PlainTrace,
    /// B̄(M̄,N̄) = ½(Tr(M̄N̄) + Tr(N̄*M̄*)) — the hermitian-symmetrized form
    /// used for the complex spin algebras.
    HermitianSymmetrized,
}

struct GroupSpecInner {
    name: String,
    mat_dim: usize,
    scalar: ScalarKind,
    basis: Vec<CMat>,
    membership: Arc<dyn Fn(&CMat) -> bool + Send + Sync>,
    structure: Vec<f64>, // f^c_{ab} flattened as [a][b][c]
}

/// Immutable, shareable description of a matrix Lie group: name, matrix
/// dimension, membership predicate, a real basis of its Lie algebra, and the
/// structure constants derived from that basis.
#[derive(Clone)]
pub struct GroupSpec(Arc<GroupSpecInner>);

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupSpec({}, {}×{})",
            self.0.name, self.0.mat_dim, self.0.mat_dim
        )
    }
}

impl GroupSpec {
    /// Build a spec, deriving structure constants from the basis by real
    /// least squares. Construction fails if the basis does not close under
    /// the bracket (projection residual above 1e-10) or if membership
    /// rejects exponentials of small algebra elements.
    pub fn new(
        name: impl Into<String>,
        mat_dim: usize,
        scalar: ScalarKind,
        basis: Vec<CMat>,
        membership: impl Fn(&CMat) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let name = name.into();
        let n = basis.len();
        let mut structure = vec![0.0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = &basis[a] * &basis[b] - &basis[b] * &basis[a];
                let (coords, residual) = spin::span_coords(&basis, &br);
                if residual > 1e-10 {
                    return Err(KernelError::Construction(format!(
                        "algebra basis of {name} does not close: bracket ({a},{b}) \
                         has span residual {residual:.3e}"
                    )));
                }
                for cc in 0..n {
                    structure[(a * n + b) * n + cc] = coords[cc];
                }
            }
        }
        let spec = GroupSpec(Arc::new(GroupSpecInner {
            name,
            mat_dim,
            scalar,
            basis,
            membership: Arc::new(membership),
            structure,
        }));
        // membership must accept exponentials of small algebra elements
        for (i, t) in spec.0.basis.iter().enumerate() {
            let g = linalg::mat_exp(&t.map(|z| z * 0.05));
            if !spec.is_member(&g) {
                return Err(KernelError::Construction(format!(
                    "{}: membership rejects exp(0.05·T_{i})",
                    spec.0.name
                )));
            }
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn mat_dim(&self) -> usize {
        self.0.mat_dim
    }

    pub fn scalar(&self) -> ScalarKind {
        self.0.scalar
    }

    /// Real dimension of the Lie algebra.
    pub fn alg_dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.0.basis
    }

    /// Structure constant f^c_{ab} of the declared basis.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> f64 {
        let n = self.alg_dim();
        self.0.structure[(a * n + b) * n + c]
    }

    pub fn is_member(&self, m: &CMat) -> bool {
        m.nrows() == self.0.mat_dim && m.ncols() == self.0.mat_dim && (self.0.membership)(m)
    }

    /// Distance diagnostics: coordinates in the algebra span and residual.
    pub fn algebra_coords(&self, m: &CMat) -> (DVector<f64>, f64) {
        spin::span_coords(&self.0.basis, m)
    }

    pub fn same_spec(&self, other: &GroupSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn identity(&self) -> GrpElem {
        GrpElem {
            mat: CMat::identity(self.0.mat_dim, self.0.mat_dim),
            spec: self.clone(),
        }
    }

    /// Wrap a matrix as a group element, checking membership.
    pub fn group_elem(&self, mat: CMat) -> Result<GrpElem> {
        if !self.is_member(&mat) {
            return Err(KernelError::GroupMismatch(format!(
                "matrix fails {} membership",
                self.0.name
            )));
        }
        Ok(GrpElem {
            mat,
            spec: self.clone(),
        })
    }

    /// Wrap a matrix as an algebra element, checking it lies in the span.
    pub fn alg_elem(&self, mat: CMat) -> Result<AlgElem> {
        let (_, residual) = self.algebra_coords(&mat);
        if residual > 1e-10 * (1.0 + mat.iter().map(|z| z.norm()).fold(0.0, f64::max)) {
            return Err(KernelError::GroupMismatch(format!(
                "matrix outside Lie({}) span (residual {residual:.3e})",
                self.0.name
            )));
        }
        Ok(AlgElem {
            mat,
            spec: self.clone(),
        })
    }

    /// Algebra element from basis coordinates.
    pub fn alg_from_coords(&self, coords: &[f64]) -> AlgElem {
        let mut mat = CMat::zeros(self.0.mat_dim, self.0.mat_dim);
        for (c, b) in coords.iter().zip(&self.0.basis) {
            mat += b.map(|z| z * *c);
        }
        AlgElem {
            mat,
            spec: self.clone(),
        }
    }
}

/// A group element tied to its GroupSpec.
#[derive(Debug, Clone)]
pub struct GrpElem {
    pub mat: CMat,
    pub spec: GroupSpec,
}

/// An algebra element tied to its GroupSpec.
#[derive(Debug, Clone)]
pub struct AlgElem {
    pub mat: CMat,
    pub spec: GroupSpec,
}

/// Matrix exponential into the group; the result is membership-checked.
pub fn exp_alg(x: &AlgElem) -> Result<GrpElem> {
    if x.mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(KernelError::Numeric("non-finite algebra element".into()));
    }
    x.spec.group_elem(linalg::mat_exp(&x.mat))
}

/// Principal matrix logarithm into the algebra.
pub fn log_grp(m: &GrpElem) -> Result<AlgElem> {
    let l = linalg::mat_log(&m.mat)?;
    m.spec.alg_elem(l)
}

/// Commutator [X, Y]; operands must share a GroupSpec.
pub fn bracket(x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
    if !x.spec.same_spec(&y.spec) {
        return Err(KernelError::GroupMismatch(format!(
            "bracket of Lie({}) with Lie({})",
            x.spec.name(),
            y.spec.name()
        )));
    }
    Ok(AlgElem {
        mat: &x.mat * &y.mat - &y.mat * &x.mat,
        spec: x.spec.clone(),
    })
}

/// Killing-type bilinear form on algebra elements.
pub fn killing(kind: KillingKind, x: &AlgElem, y: &AlgElem) -> Result<Complex64> {
    if !x.spec.same_spec(&y.spec) {
        return Err(KernelError::GroupMismatch(format!(
            "killing form of Lie({}) with Lie({})",
            x.spec.name(),
            y.spec.name()
        )));
    }
    let plain = (&x.mat * &y.mat).trace();
    Ok(match kind {
        KillingKind::PlainTrace => plain,
        KillingKind::HermitianSymmetrized => {
            let conj = (y.mat.adjoint() * x.mat.adjoint()).trace();
            (plain + conj) * 0.5
        }
    })
}

/// Normalization bridging the two trace forms across the spin isomorphism:
/// with the ½-scaled hermitian basis (σ_a = τ_a/2, the scale fixed by
/// 4·det(x̄) = xᵀηx), the hermitian-symmetrized form on sl(2,ℂ) is exactly ¼
/// of the plain trace form on so(1,3). Checks of the cross-algebra identity
/// compare B_so(m,n) against `SPIN_KILLING_RATIO · B̄_sl(m̄,n̄)`.
pub const SPIN_KILLING_RATIO: f64 = 4.0;

/// A semidirect product G⋊K realized inside a common matrix dimension: the
/// acting factor is embedded next to the normal factor and acts by
/// conjugation through that embedding.
pub struct SemidirectSpec {
    pub normal: GroupSpec,
    pub acting: GroupSpec,
    /// Embedding of the acting factor into the normal factor's matrix size.
    pub embed: Arc<dyn Fn(&CMat) -> CMat + Send + Sync>,
}

impl SemidirectSpec {
    /// Composition law (g,k)·(g′,k′) = (g·(k g′ k⁻¹), k k′), with the
    /// K-conjugation taken through the embedding.
    pub fn compose(
        &self,
        a: (&GrpElem, &GrpElem),
        b: (&GrpElem, &GrpElem),
    ) -> Result<(GrpElem, GrpElem)> {
        let (g, k) = a;
        let (g2, k2) = b;
        for (e, spec) in [(g, &self.normal), (g2, &self.normal)] {
            if !e.spec.same_spec(spec) {
                return Err(KernelError::GroupMismatch(
                    "normal factor from the wrong group".into(),
                ));
            }
        }
        for (e, spec) in [(k, &self.acting), (k2, &self.acting)] {
            if !e.spec.same_spec(spec) {
                return Err(KernelError::GroupMismatch(
                    "acting factor from the wrong group".into(),
                ));
            }
        }
        let ke = (self.embed)(&k.mat);
        let kinv = ke.clone().try_inverse().ok_or_else(|| {
            KernelError::Numeric("acting factor not invertible".into())
        })?;
        let gnew = &g.mat * ke * &g2.mat * kinv;
        let knew = &k.mat * &k2.mat;
        Ok((
            self.normal.group_elem(gnew)?,
            self.acting.group_elem(knew)?,
        ))
    }
}

/// Ad_g X = g X g⁻¹.
pub fn adjoint_action(g: &GrpElem, x: &AlgElem) -> Result<AlgElem> {
    let ginv = g
        .mat
        .clone()
        .try_inverse()
        .ok_or_else(|| KernelError::Numeric("group element not invertible".into()))?;
    x.spec.alg_elem(&g.mat * &x.mat * ginv)
}
