//! Twisted and mixed Cartan connections: subalgebra/quotient splits with a
//! fixed complement basis, the soldering form and its vielbein, a local
//! injectivity report, the induced metric, torsion, and parabolic grading
//! splits.

pub mod catalog;

use crate::cocycle::{FrameField, GaugeField};
use crate::error::{KernelError, Result};
use crate::forms::{Chart, LocalForm, MetricField};
use crate::gauge::ConnForm;
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

/// Least-squares coordinates in a fixed matrix basis: flattens a matrix into
/// a real vector (real parts then imaginary parts) and applies the cached
/// pseudo-inverse of the basis.
fn basis_pinv(mat_dim: usize, basis: &[CMat]) -> Result<DMatrix<f64>> {
    let m2 = mat_dim * mat_dim;
    let nb = basis.len();
    let mut a = DMatrix::<f64>::zeros(2 * m2, nb);
    for (k, b) in basis.iter().enumerate() {
        if b.nrows() != mat_dim || b.ncols() != mat_dim {
            return Err(KernelError::DimensionMismatch(format!(
                "basis matrix {}×{} in a {mat_dim}×{mat_dim} split",
                b.nrows(),
                b.ncols()
            )));
        }
        for r in 0..mat_dim {
            for c in 0..mat_dim {
                a[(r * mat_dim + c, k)] = b[(r, c)].re;
                a[(m2 + r * mat_dim + c, k)] = b[(r, c)].im;
            }
        }
    }
    let svd = a.clone().svd(true, true);
    let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if nb > 0 && smin <= 1e-10 {
        return Err(KernelError::InvalidInput(
            "split basis is not linearly independent".into(),
        ));
    }
    svd.pseudo_inverse(1e-12)
        .map_err(|e| KernelError::Numeric(e.to_string()))
}

fn coords_jets(pinv: &DMatrix<f64>, mat_dim: usize, m: &JetMat) -> Vec<JetScalar> {
    let (nv, ord) = (m.n_vars(), m.order());
    let m2 = mat_dim * mat_dim;
    let nb = pinv.nrows();
    let mut coords = vec![JetScalar::constant_re(0.0, nv, ord); nb];
    for r in 0..mat_dim {
        for c in 0..mat_dim {
            let e = m.get(r, c);
            let (er, ei) = (e.re(), e.im());
            let pos = r * mat_dim + c;
            for k in 0..nb {
                let wr = pinv[(k, pos)];
                if wr != 0.0 {
                    coords[k] = coords[k].add(&er.scale_re(wr));
                }
                let wi = pinv[(k, m2 + pos)];
                if wi != 0.0 {
                    coords[k] = coords[k].add(&ei.scale_re(wi));
                }
            }
        }
    }
    coords
}

fn reconstruct(basis: &[CMat], coords: &[JetScalar], mat_dim: usize, nv: usize, ord: usize) -> JetMat {
    let mut out = JetMat::zeros(mat_dim, mat_dim, nv, ord);
    for (c, b) in coords.iter().zip(basis) {
        out = out.add(&JetMat::from_value(b, nv, ord).scale_jet(c));
    }
    out
}

fn coords_values(pinv: &DMatrix<f64>, mat_dim: usize, m: &CMat) -> DVector<f64> {
    let m2 = mat_dim * mat_dim;
    let mut v = DVector::<f64>::zeros(2 * m2);
    for r in 0..mat_dim {
        for c in 0..mat_dim {
            v[r * mat_dim + c] = m[(r, c)].re;
            v[m2 + r * mat_dim + c] = m[(r, c)].im;
        }
    }
    pinv * v
}

/// A fixed splitting Lie G′ = subalgebra ⊕ span{u_a}: the quotient
/// projection τ and its complement, realized jointly through a cached
/// pseudo-inverse so that sub and quotient coordinates are solved together.
#[derive(Clone)]
pub struct QuotientSplit {
    pub sub_basis: Vec<CMat>,
    pub quot_basis: Vec<CMat>,
    mat_dim: usize,
    pinv: DMatrix<f64>,
}

impl QuotientSplit {
    pub fn new(sub_basis: Vec<CMat>, quot_basis: Vec<CMat>) -> Result<Self> {
        let first = sub_basis
            .first()
            .or(quot_basis.first())
            .ok_or_else(|| KernelError::InvalidInput("empty split basis".into()))?;
        let mat_dim = first.nrows();
        let joint: Vec<CMat> = sub_basis.iter().chain(quot_basis.iter()).cloned().collect();
        let pinv = basis_pinv(mat_dim, &joint)?;
        Ok(QuotientSplit {
            sub_basis,
            quot_basis,
            mat_dim,
            pinv,
        })
    }

    pub fn mat_dim(&self) -> usize {
        self.mat_dim
    }

    /// Coordinates of the quotient part in the complement basis {u_a}.
    pub fn quot_coords(&self, m: &JetMat) -> Vec<JetScalar> {
        let all = coords_jets(&self.pinv, self.mat_dim, m);
        all[self.sub_basis.len()..].to_vec()
    }

    /// τ(m): the quotient part as a matrix (in the fixed complement).
    pub fn quot_part(&self, m: &JetMat) -> JetMat {
        let coords = self.quot_coords(m);
        reconstruct(&self.quot_basis, &coords, self.mat_dim, m.n_vars(), m.order())
    }

    /// The subalgebra part of m.
    pub fn sub_part(&self, m: &JetMat) -> JetMat {
        let all = coords_jets(&self.pinv, self.mat_dim, m);
        reconstruct(
            &self.sub_basis,
            &all[..self.sub_basis.len()],
            self.mat_dim,
            m.n_vars(),
            m.order(),
        )
    }
}

/// A graded decomposition of the full algebra into levels with a joint
/// coordinate solve; checks the level bracket closure [𝔤′_i, 𝔤′_j] ⊆
/// 𝔤′_{i+j} on basis pairs at construction.
#[derive(Clone)]
pub struct LevelSplit {
    pub levels: Vec<(i32, Vec<CMat>)>,
    mat_dim: usize,
    pinv: DMatrix<f64>,
}

impl LevelSplit {
    pub fn new(levels: Vec<(i32, Vec<CMat>)>) -> Result<Self> {
        let first = levels
            .iter()
            .flat_map(|(_, b)| b.first())
            .next()
            .ok_or_else(|| KernelError::InvalidInput("empty grading".into()))?;
        let mat_dim = first.nrows();
        let joint: Vec<CMat> = levels.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        let pinv = basis_pinv(mat_dim, &joint)?;
        let ls = LevelSplit {
            levels,
            mat_dim,
            pinv,
        };
        ls.check_closure(1e-12)?;
        Ok(ls)
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    fn check_closure(&self, tol: f64) -> Result<()> {
        for (i, bi) in &self.levels {
            for (j, bj) in &self.levels {
                for x in bi {
                    for y in bj {
                        let b = x * y - y * x;
                        let scale = b.camax().max(1.0);
                        let parts = self.split_values(&b);
                        for (k, part) in parts.iter().enumerate() {
                            if self.levels[k].0 != i + j && part.camax() > tol * scale {
                                return Err(KernelError::Construction(format!(
                                    "grading not closed: [level {i}, level {j}] leaks into level {}",
                                    self.levels[k].0
                                )));
                            }
                        }
                        let total: CMat = parts.iter().fold(CMat::zeros(self.mat_dim, self.mat_dim), |a, p| a + p);
                        if self.levels.iter().all(|(k, _)| *k != i + j)
                            && b.camax() > tol * scale
                        {
                            return Err(KernelError::Construction(format!(
                                "grading not closed: [level {i}, level {j}] is nonzero outside the grading"
                            )));
                        }
                        if (b - total).camax() > 1e-9 * scale && self.levels.iter().any(|(k, _)| *k == i + j) {
                            return Err(KernelError::Construction(
                                "grading bases do not span their brackets".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Value-level components per level (least-squares coordinates).
    pub fn split_values(&self, m: &CMat) -> Vec<CMat> {
        let coords = coords_values(&self.pinv, self.mat_dim, m);
        let mut out = Vec::with_capacity(self.levels.len());
        let mut off = 0;
        for (_, basis) in &self.levels {
            let mut part = CMat::zeros(self.mat_dim, self.mat_dim);
            for b in basis {
                part += b.map(|z| z * Complex::from(coords[off]));
                off += 1;
            }
            out.push(part);
        }
        out
    }

    /// Jet-level components per level; the last component is the remainder
    /// so that the pieces sum to the input exactly.
    pub fn split_jet(&self, m: &JetMat) -> Vec<JetMat> {
        let coords = coords_jets(&self.pinv, self.mat_dim, m);
        let (nv, ord) = (m.n_vars(), m.order());
        let mut out = Vec::with_capacity(self.levels.len());
        let mut off = 0;
        let mut partial = JetMat::zeros(self.mat_dim, self.mat_dim, nv, ord);
        for (k, (_, basis)) in self.levels.iter().enumerate() {
            if k + 1 == self.levels.len() {
                out.push(m.sub(&partial));
            } else {
                let part = reconstruct(basis, &coords[off..off + basis.len()], self.mat_dim, nv, ord);
                partial = partial.add(&part);
                out.push(part);
            }
            off += basis.len();
        }
        out
    }
}

/// Grading descriptor of a Cartan connection.
#[derive(Clone)]
pub enum Grading {
    None,
    Reductive,
    Parabolic(LevelSplit),
}

/// A vielbein e^a_μ as a jet-evaluable frame together with the internal
/// quotient metric η.
#[derive(Clone)]
pub struct Vielbein {
    pub chart: Chart,
    pub frame: FrameField,
    pub eta: DMatrix<f64>,
}

/// Per-point result of the local injectivity check.
#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub checked: usize,
    pub tol: f64,
    /// Failing points with the smallest singular value of e^a_μ there.
    pub failures: Vec<(Vec<f64>, f64)>,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A Cartan connection: a degree-1 Lie G′-valued form with its cocycle, the
/// fixed subalgebra/quotient split, the internal metric on the quotient, and
/// an optional grading.
#[derive(Clone)]
pub struct CartanConn {
    pub conn: ConnForm,
    pub split: QuotientSplit,
    pub eta: DMatrix<f64>,
    pub grading: Grading,
}

impl CartanConn {
    pub fn new(
        conn: ConnForm,
        split: QuotientSplit,
        eta: DMatrix<f64>,
        grading: Grading,
    ) -> Result<Self> {
        if conn.form.rows != split.mat_dim() || conn.form.cols != split.mat_dim() {
            return Err(KernelError::DimensionMismatch(format!(
                "connection values {}×{} for a {}×{} split",
                conn.form.rows,
                conn.form.cols,
                split.mat_dim(),
                split.mat_dim()
            )));
        }
        if split.quot_basis.len() != conn.form.chart.dim {
            return Err(KernelError::DimensionMismatch(format!(
                "quotient dimension {} does not match the chart dimension {}",
                split.quot_basis.len(),
                conn.form.chart.dim
            )));
        }
        if let Some(spec) = &conn.form.algebra {
            if spec.alg_dim() != split.sub_basis.len() + split.quot_basis.len() {
                return Err(KernelError::DimensionMismatch(format!(
                    "split of total dimension {} inside a {}-dimensional algebra",
                    split.sub_basis.len() + split.quot_basis.len(),
                    spec.alg_dim()
                )));
            }
        }
        let q = split.quot_basis.len();
        if eta.nrows() != q || eta.ncols() != q || (eta.transpose() - &eta).amax() > 1e-12 {
            return Err(KernelError::InvalidInput(
                "internal metric must be symmetric on the quotient".into(),
            ));
        }
        Ok(CartanConn {
            conn,
            split,
            eta,
            grading,
        })
    }

    /// The soldering form θ = τ(ϖ): quotient part of every component, still
    /// realized as matrices in the fixed complement.
    pub fn soldering(&self) -> LocalForm {
        let split = self.split.clone();
        let inner = self.conn.form.clone();
        LocalForm::new(
            inner.chart.clone(),
            1,
            inner.rows,
            inner.cols,
            inner.algebra.clone(),
            move |x, order| {
                Ok(inner
                    .eval_at(x, order)?
                    .iter()
                    .map(|c| split.quot_part(c))
                    .collect())
            },
        )
    }

    /// The subalgebra part ω of ϖ.
    pub fn sub_form(&self) -> LocalForm {
        let split = self.split.clone();
        let inner = self.conn.form.clone();
        LocalForm::new(
            inner.chart.clone(),
            1,
            inner.rows,
            inner.cols,
            inner.algebra.clone(),
            move |x, order| {
                Ok(inner
                    .eval_at(x, order)?
                    .iter()
                    .map(|c| split.sub_part(c))
                    .collect())
            },
        )
    }

    /// The vielbein e^a_μ read off the soldering form: coordinate a of the
    /// quotient part of component μ.
    pub fn vielbein(&self) -> Vielbein {
        let split = self.split.clone();
        let inner = self.conn.form.clone();
        let chart = inner.chart.clone();
        let n = chart.dim;
        let frame = FrameField::new(n, n, move |x, order| {
            let comps = inner.eval_at(x, order)?;
            let mut e = JetMat::zeros(n, n, n, order);
            for (mu, comp) in comps.iter().enumerate() {
                for (a, v) in split.quot_coords(comp).into_iter().enumerate() {
                    e.set(a, mu, v);
                }
            }
            Ok(e)
        });
        Vielbein {
            chart,
            frame,
            eta: self.eta.clone(),
        }
    }

    /// Local injectivity report: at each point the matrix e^a_μ mapping
    /// chart tangents into the quotient must have full column rank (smallest
    /// singular value above 1e-8). Degenerate points are listed, never
    /// thrown.
    pub fn check_injectivity(&self, points: &[Vec<f64>]) -> Result<InjectivityReport> {
        let tol = 1e-8;
        let n = self.conn.form.chart.dim;
        let q = self.split.quot_basis.len();
        let mut failures = Vec::new();
        for x in points {
            let comps = self.conn.form.eval_at(x, 0)?;
            let mut e = CMat::zeros(q, n);
            for (mu, comp) in comps.iter().enumerate() {
                for (a, v) in self.split.quot_coords(comp).into_iter().enumerate() {
                    e[(a, mu)] = v.value();
                }
            }
            let sv = e.svd(false, false).singular_values;
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            if !(smin > tol) {
                failures.push((x.clone(), smin));
            }
        }
        Ok(InjectivityReport {
            checked: points.len(),
            tol,
            failures,
        })
    }

    /// Curvature Ω = dϖ + ϖ∧ϖ.
    pub fn curvature(&self) -> Result<LocalForm> {
        self.conn.curvature()
    }

    /// Torsion Θ = τ(Ω): quotient part of the curvature.
    pub fn torsion(&self) -> Result<LocalForm> {
        let omega = self.curvature()?;
        let split = self.split.clone();
        Ok(omega.map_components(omega.rows, omega.cols, move |c| split.quot_part(c)))
    }

    /// Split a Lie G′-valued form into its declared grading levels; the
    /// components sum to the input exactly and each lies in its level span.
    pub fn grading_split(&self, form: &LocalForm) -> Result<Vec<LocalForm>> {
        let ls = match &self.grading {
            Grading::Parabolic(ls) => ls.clone(),
            _ => return Err(KernelError::NoGradingDeclared),
        };
        Ok((0..ls.n_levels())
            .map(|k| {
                let ls = ls.clone();
                form.map_components(form.rows, form.cols, move |c| {
                    ls.split_jet(c).swap_remove(k)
                })
            })
            .collect())
    }

    /// Active H-gauge transformation of the underlying connection.
    pub fn transform_connection(&self, gamma: &GaugeField) -> Result<CartanConn> {
        Ok(CartanConn {
            conn: self.conn.transform_connection(gamma)?,
            split: self.split.clone(),
            eta: self.eta.clone(),
            grading: self.grading.clone(),
        })
    }

    /// Mixed gauge transformation ϖ ↦ [C(γ)ζ]⁻¹ϖ[C(γ)ζ] + [C(γ)ζ]⁻¹d[C(γ)ζ].
    pub fn transform_mixed(
        &self,
        gamma: Option<&GaugeField>,
        zeta: Option<&GaugeField>,
    ) -> Result<CartanConn> {
        Ok(CartanConn {
            conn: self.conn.transform_mixed(gamma, zeta)?,
            split: self.split.clone(),
            eta: self.eta.clone(),
            grading: self.grading.clone(),
        })
    }
}

/// The induced metric g = η∘e: g_{μν} = e^a_μ η_{ab} e^b_ν as a jet-evaluable
/// metric field; degenerate vielbein points surface as singular-frame errors.
pub fn metric_from_soldering(e: &Vielbein) -> MetricField {
    let frame = e.frame.clone();
    let eta = e.eta.clone();
    let n = e.chart.dim;
    MetricField::new(e.chart.clone(), move |x, order| {
        let ej = frame.eval_at(x, order)?;
        let etaj = JetMat::from_value_re(&eta, n, order);
        Ok(ej.transpose().mul(&etaj.mul(&ej)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog as groups;

    #[test]
    fn quotient_split_roundtrip() {
        let spec = groups::tractor_gprime();
        let ranges = groups::gprime_level_ranges();
        let basis = spec.basis();
        let sub: Vec<CMat> = basis[ranges[1].clone()]
            .iter()
            .chain(basis[ranges[2].clone()].iter())
            .cloned()
            .collect();
        let quot: Vec<CMat> = basis[ranges[0].clone()].to_vec();
        let split = QuotientSplit::new(sub.clone(), quot.clone()).unwrap();
        // τ annihilates the subalgebra and fixes the complement
        for s in &sub {
            let j = JetMat::from_value(s, 1, 0);
            assert!(split.quot_part(&j).max_abs() <= 1e-12);
        }
        for (a, u) in quot.iter().enumerate() {
            let j = JetMat::from_value(u, 1, 0);
            let coords = split.quot_coords(&j);
            for (b, c) in coords.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((c.value().re - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn level_split_exact_sum() {
        let spec = groups::tractor_gprime();
        let ranges = groups::gprime_level_ranges();
        let basis = spec.basis();
        let ls = LevelSplit::new(vec![
            (-1, basis[ranges[0].clone()].to_vec()),
            (0, basis[ranges[1].clone()].to_vec()),
            (1, basis[ranges[2].clone()].to_vec()),
        ])
        .unwrap();
        let mut m = CMat::zeros(6, 6);
        for (k, b) in basis.iter().enumerate() {
            m += b.map(|z| z * Complex::from(0.1 + 0.05 * k as f64));
        }
        let j = JetMat::from_value(&m, 1, 0);
        let parts = ls.split_jet(&j);
        let mut sum = JetMat::zeros(6, 6, 1, 0);
        for p in &parts {
            sum = sum.add(p);
        }
        assert!(sum.sub(&j).max_abs() == 0.0 || sum.sub(&j).max_abs() <= 1e-15);
        // each part reprojects onto itself
        for (k, p) in parts.iter().enumerate() {
            let vals = ls.split_values(&p.value());
            for (l, v) in vals.iter().enumerate() {
                if l != k {
                    assert!(v.camax() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn twistor_levels_close() {
        let spec = groups::twistor_gprime();
        let ranges = groups::gprime_level_ranges();
        let basis = spec.basis();
        LevelSplit::new(vec![
            (-1, basis[ranges[0].clone()].to_vec()),
            (0, basis[ranges[1].clone()].to_vec()),
            (1, basis[ranges[2].clone()].to_vec()),
        ])
        .unwrap();
    }

    #[test]
    fn affine_is_reductive() {
        let spec = groups::affine13();
        let basis = spec.basis();
        let split = QuotientSplit::new(basis[..6].to_vec(), basis[6..].to_vec()).unwrap();
        // [sub, quot] stays in the quotient span
        for s in &split.sub_basis {
            for u in &split.quot_basis {
                let b = s * u - u * s;
                let j = JetMat::from_value(&b, 1, 0);
                assert!(j.sub(&JetMat::from_value(&split.quot_part(&j).value(), 1, 0)).max_abs() <= 1e-12);
            }
        }
    }
}
