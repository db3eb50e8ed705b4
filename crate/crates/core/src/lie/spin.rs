//! The 2×2-hermitian realization of Minkowski space and the double cover
//! SL(2,ℂ) → SO(1,3): bar maps on vectors and covectors, their inverses,
//! the algebra isomorphism so(1,3) ≅ sl(2,ℂ), and jet-valued lifts.

use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;
use crate::jets::JetScalar;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Minkowski metric η = diag(+,−,−,−).
pub fn eta() -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, -1.0, -1.0]))
}

/// σ_a = ½(1, τ₁, τ₂, τ₃): the hermitian basis carrying x ↦ x̄ = x^a σ_a.
pub fn sigma(a: usize) -> CMat {
    let m = match a {
        0 => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        1 => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        2 => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        3 => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        _ => panic!("sigma index out of range"),
    };
    CMat::from_fn(2, 2, |r, cc| m[r][cc] * 0.5)
}

/// Pauli matrix τ_a (τ₀ = identity), i.e. 2σ_a.
fn tau(a: usize) -> CMat {
    sigma(a).map(|z| z * 2.0)
}

/// Vector bar map: x ↦ x̄ = x^a σ_a (hermitian for real x).
pub fn bar_vec(x: &[Complex64; 4]) -> CMat {
    let mut m = CMat::zeros(2, 2);
    for a in 0..4 {
        m += sigma(a).map(|z| z * x[a]);
    }
    m
}

/// Covector bar map: r ↦ r̄ = r_a σ_a, chosen so that for r = x^t (index
/// lowered with η) this is x⁰σ₀ − x^iσ_i, the dual of the vector map.
pub fn bar_covec(r: &[Complex64; 4]) -> CMat {
    bar_vec(r)
}

/// Inverse of the vector bar map: x⁰ = Tr x̄, x^k = Tr(x̄ τ_k).
pub fn unbar_vec(m: &CMat) -> [Complex64; 4] {
    let mut x = [Complex64::ZERO; 4];
    x[0] = m.trace();
    for k in 1..4 {
        x[k] = (m * tau(k)).trace();
    }
    x
}

/// Jet-valued vector bar map: 4-component column of jets ↦ 2×2 jet matrix.
pub fn bar_vec_jet(x: &JetMat) -> JetMat {
    assert_eq!((x.nrows(), x.ncols()), (4, 1));
    let (nv, ord) = (x.n_vars(), x.order());
    let mut m = JetMat::zeros(2, 2, nv, ord);
    for a in 0..4 {
        let s = JetMat::from_value(&sigma(a), nv, ord);
        m = m.add(&s.scale_jet(x.get(a, 0)));
    }
    m
}

/// Jet-valued covector bar map: 4-component row of jets ↦ 2×2 jet matrix.
pub fn bar_covec_jet(r: &JetMat) -> JetMat {
    assert_eq!((r.nrows(), r.ncols()), (1, 4));
    bar_vec_jet(&r.transpose())
}

/// Real-linear least squares: coordinates of `target` in the span of `basis`
/// (matrices flattened with separated real/imaginary parts). Returns
/// `(coords, residual)`.
pub fn span_coords(basis: &[CMat], target: &CMat) -> (DVector<f64>, f64) {
    let rows = 2 * target.nrows() * target.ncols();
    let mut a = DMatrix::<f64>::zeros(rows, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, z) in b.iter().enumerate() {
            a[(2 * i, j)] = z.re;
            a[(2 * i + 1, j)] = z.im;
        }
    }
    let mut rhs = DVector::<f64>::zeros(rows);
    for (i, z) in target.iter().enumerate() {
        rhs[2 * i] = z.re;
        rhs[2 * i + 1] = z.im;
    }
    let svd = a.clone().svd(true, true);
    let coords = svd.solve(&rhs, 1e-13).expect("least-squares solve");
    let residual = (&a * &coords - &rhs).amax();
    (coords, residual)
}

/// so(1,3) image of an sl(2,ℂ) element: column b of the result is the
/// unbarred image of s̄σ_b + σ_b s̄*, per the algebra action on x̄.
pub fn spin_to_lorentz(sbar: &CMat) -> DMatrix<f64> {
    let mut s = DMatrix::<f64>::zeros(4, 4);
    for b in 0..4 {
        let col = sbar * sigma(b) + sigma(b) * sbar.adjoint();
        let x = unbar_vec(&col);
        for a in 0..4 {
            s[(a, b)] = x[a].re;
        }
    }
    s
}

/// Double cover SL(2,ℂ) → SO(1,3): column b of S is the unbarred image of
/// S̄ σ_b S̄*. Errors if S̄ is not unimodular.
pub fn double_cover(sbar: &CMat) -> Result<DMatrix<f64>> {
    let det = sbar[(0, 0)] * sbar[(1, 1)] - sbar[(0, 1)] * sbar[(1, 0)];
    if (det - Complex64::ONE).norm() > 1e-10 {
        return Err(KernelError::GroupMismatch(format!(
            "double cover needs det = 1, got {det}"
        )));
    }
    let mut s = DMatrix::<f64>::zeros(4, 4);
    for b in 0..4 {
        let col = sbar * sigma(b) * sbar.adjoint();
        let x = unbar_vec(&col);
        for a in 0..4 {
            s[(a, b)] = x[a].re;
        }
    }
    Ok(s)
}

/// Jet-valued double cover: 2×2 unimodular jets ↦ 4×4 Lorentz jets,
/// column b = unbar(S̄ σ_b S̄*).
pub fn double_cover_jet(sbar: &JetMat) -> JetMat {
    assert_eq!((sbar.nrows(), sbar.ncols()), (2, 2));
    let (nv, ord) = (sbar.n_vars(), sbar.order());
    let star = sbar.adjoint();
    let mut out = JetMat::zeros(4, 4, nv, ord);
    for b in 0..4 {
        let m = sbar
            .mul(&JetMat::from_value(&sigma(b), nv, ord))
            .mul(&star);
        out.set(0, b, m.trace());
        for k in 1..4 {
            out.set(k, b, m.mul(&JetMat::from_value(&tau(k), nv, ord)).trace());
        }
    }
    out
}

/// Precomputed real-linear lift so(1,3) → sl(2,ℂ), inverse of
/// [`spin_to_lorentz`]; also lifts jet-valued so(1,3) matrices.
pub struct SpinLift {
    sl_basis: Vec<CMat>,
    /// pseudo-inverse mapping vec(so(1,3) matrix) to sl(2,ℂ) coordinates
    pinv: DMatrix<f64>,
}

impl SpinLift {
    pub fn new() -> Self {
        // real basis of sl(2,ℂ): τ_k/2 and iτ_k/2
        let mut sl_basis = Vec::new();
        for k in 1..4 {
            sl_basis.push(tau(k).map(|z| z * 0.5));
        }
        for k in 1..4 {
            sl_basis.push(tau(k).map(|z| z * c(0.0, 0.5)));
        }
        // columns of M: flattened so(1,3) images of the sl(2,ℂ) basis
        let mut m = DMatrix::<f64>::zeros(16, 6);
        for (j, b) in sl_basis.iter().enumerate() {
            let img = spin_to_lorentz(b);
            for (i, v) in img.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        let mtm = m.transpose() * &m;
        let pinv = mtm
            .try_inverse()
            .expect("spin lift basis is independent")
            * m.transpose();
        SpinLift { sl_basis, pinv }
    }

    /// Lift a plain so(1,3) matrix. Errors if the input is outside the
    /// so(1,3) span (residual above 1e-8).
    pub fn lift(&self, s: &DMatrix<f64>) -> Result<CMat> {
        let v = DVector::<f64>::from_iterator(16, s.iter().copied());
        let coords = &self.pinv * v;
        let mut out = CMat::zeros(2, 2);
        for (j, b) in self.sl_basis.iter().enumerate() {
            out += b.map(|z| z * coords[j]);
        }
        let back = spin_to_lorentz(&out);
        if (back - s).amax() > 1e-8 * (1.0 + s.amax()) {
            return Err(KernelError::GroupMismatch(
                "matrix is not in the so(1,3) span".into(),
            ));
        }
        Ok(out)
    }

    /// Lift a jet-valued so(1,3) matrix entrywise-linearly (real jets).
    pub fn lift_jet(&self, s: &JetMat) -> JetMat {
        assert_eq!((s.nrows(), s.ncols()), (4, 4));
        let (nv, ord) = (s.n_vars(), s.order());
        // coords_j = Σ_i pinv[j,i] · vec(s)_i as jets
        let mut coords: Vec<JetScalar> = Vec::with_capacity(6);
        for j in 0..6 {
            let mut acc = JetScalar::constant(Complex64::ZERO, nv, ord);
            // nalgebra iteration order is column-major; match it here
            let mut i = 0;
            for col in 0..4 {
                for row in 0..4 {
                    let w = self.pinv[(j, i)];
                    if w != 0.0 {
                        acc = acc.add(&s.get(row, col).scale_re(w));
                    }
                    i += 1;
                }
            }
            coords.push(acc);
        }
        let mut out = JetMat::zeros(2, 2, nv, ord);
        for (j, b) in self.sl_basis.iter().enumerate() {
            out = out.add(&JetMat::from_value(b, nv, ord).scale_jet(&coords[j]));
        }
        out
    }
}

impl Default for SpinLift {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rvec(x: [f64; 4]) -> [Complex64; 4] {
        [c(x[0], 0.0), c(x[1], 0.0), c(x[2], 0.0), c(x[3], 0.0)]
    }

    fn interval(x: [f64; 4]) -> f64 {
        x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3]
    }

    fn det2(m: &CMat) -> Complex64 {
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
    }

    #[test]
    fn bar_of_time_axis() {
        let m = bar_vec(&rvec([1.0, 0.0, 0.0, 0.0]));
        assert!((m - CMat::identity(2, 2).map(|z| z * 0.5)).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn four_det_is_interval() {
        let x = [1.0, 2.0, 0.0, 0.0];
        let m = bar_vec(&rvec(x));
        assert!((det2(&m) * 4.0 - c(interval(x), 0.0)).norm() < 1e-14);
        let y = [0.3, -0.7, 0.45, 1.2];
        let my = bar_vec(&rvec(y));
        assert!((det2(&my) * 4.0 - c(interval(y), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn unbar_inverts_bar() {
        let x = rvec([0.4, -1.1, 0.6, 0.9]);
        let back = unbar_vec(&bar_vec(&x));
        for a in 0..4 {
            assert!((back[a] - x[a]).norm() < 1e-14);
        }
    }

    #[test]
    fn lift_roundtrip_and_action() {
        let lift = SpinLift::new();
        // random-ish so(1,3) element: boost + rotation mixture
        let eta = eta();
        let mut s = DMatrix::<f64>::zeros(4, 4);
        let w = [(0usize, 1usize, 0.37), (1, 2, -0.8), (0, 3, 0.21), (2, 3, 0.55)];
        for &(a, b, v) in &w {
            // generator with (M)^c_d = δ^c_a η_{bd} − δ^c_b η_{ad}
            for cidx in 0..4 {
                for d in 0..4 {
                    let g = if cidx == a { eta[(b, d)] } else { 0.0 }
                        - if cidx == b { eta[(a, d)] } else { 0.0 };
                    s[(cidx, d)] += v * g;
                }
            }
        }
        let sbar = lift.lift(&s).unwrap();
        // s̄ x̄ + x̄ s̄* = bar(s x)
        let x = [0.6, -0.2, 1.3, 0.8];
        let xv = DVector::from_vec(x.to_vec());
        let sx = &s * xv;
        let lhs = &sbar * bar_vec(&rvec(x)) + bar_vec(&rvec(x)) * sbar.adjoint();
        let rhs = bar_vec(&rvec([sx[0], sx[1], sx[2], sx[3]]));
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-10));
        // back through spin_to_lorentz
        assert!((spin_to_lorentz(&sbar) - s).amax() < 1e-10);
    }

    #[test]
    fn double_cover_identity_and_kernel() {
        let id = CMat::identity(2, 2);
        assert!((double_cover(&id).unwrap() - DMatrix::identity(4, 4)).amax() < 1e-14);
        let minus = id.map(|z| -z);
        assert!((double_cover(&minus).unwrap() - DMatrix::identity(4, 4)).amax() < 1e-14);
    }

    #[test]
    fn double_cover_group_action() {
        let lift = SpinLift::new();
        let eta = eta();
        // exponentiate a lifted algebra element and compare actions
        let mut s = DMatrix::<f64>::zeros(4, 4);
        s[(0, 1)] = 0.4;
        s[(1, 0)] = 0.4; // boost along x
        s[(2, 3)] = -0.7;
        s[(3, 2)] = 0.7; // rotation in yz
        let sbar = lift.lift(&s).unwrap();
        let gbar = super::super::linalg::mat_exp(&sbar);
        let g = double_cover(&gbar).unwrap();
        // S preserves η
        assert!((g.transpose() * &eta * &g - &eta).amax() < 1e-10);
        // overline(Sx) = S̄ x̄ S̄*
        let x = [1.2, 0.3, -0.5, 0.8];
        let gx = &g * DVector::from_vec(x.to_vec());
        let lhs = &gbar * bar_vec(&rvec(x)) * gbar.adjoint();
        let rhs = bar_vec(&rvec([gx[0], gx[1], gx[2], gx[3]]));
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-10));
    }
}
