//! The concrete group catalog: Weyl dilations, Lorentz and spin groups, the
//! tractor and twistor parabolic groups with their semidirect extensions,
//! and the multiplicative group of nonzero complex scalars.
//!
//! Catalog specs are constructed once and cached so that spec identity
//! (pointer equality) works across the crate.

use super::spin::{eta, sigma};
use super::{GroupSpec, ScalarKind, SemidirectSpec};
use crate::jetmat::JetMat;
use nalgebra::{DMatrix, RowDVector};
use num_complex::Complex64;
use std::sync::{Arc, OnceLock};

type CMat = DMatrix<Complex64>;

fn re(m: &DMatrix<f64>) -> CMat {
    m.map(|v| Complex64::new(v, 0.0))
}

fn is_real(m: &CMat, tol: f64) -> bool {
    m.iter().all(|z| z.im.abs() <= tol)
}

const MTOL: f64 = 1e-9;

/// Lorentz generator M_{ab} with (M_{ab})^c{}_d = δ^c_a η_{bd} − δ^c_b η_{ad}.
pub fn so13_gen(a: usize, b: usize) -> DMatrix<f64> {
    let eta = eta();
    DMatrix::from_fn(4, 4, |c, d| {
        let mut v = 0.0;
        if c == a {
            v += eta[(b, d)];
        }
        if c == b {
            v -= eta[(a, d)];
        }
        v
    })
}

/// W: positive reals under multiplication (1×1 matrices).
pub fn weyl_dilations() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        GroupSpec::new(
            "W(dilations)",
            1,
            ScalarKind::Real,
            vec![CMat::identity(1, 1)],
            |m| m[(0, 0)].im.abs() <= MTOL && m[(0, 0)].re > 0.0,
        )
        .expect("catalog group")
    })
    .clone()
}

/// SO(1,3): real matrices with SᵀηS = η and det S = 1.
pub fn so13() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let basis = lorentz_basis().into_iter().map(|m| re(&m)).collect();
        GroupSpec::new("SO(1,3)", 4, ScalarKind::Real, basis, |m| {
            if !is_real(m, MTOL) {
                return false;
            }
            let s = m.map(|z| z.re);
            let eta = eta();
            let resid = (s.transpose() * &eta * &s - &eta).amax();
            resid <= MTOL && (s.determinant() - 1.0).abs() <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

fn lorentz_basis() -> Vec<DMatrix<f64>> {
    let mut v = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            v.push(so13_gen(a, b));
        }
    }
    v
}

/// SL(2,ℂ): complex 2×2 with det = 1 (real algebra dimension 6).
pub fn sl2c() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        GroupSpec::new(
            "SL(2,C)",
            2,
            ScalarKind::Complex,
            sl2c_basis(),
            |m| {
                let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                (det - Complex64::ONE).norm() <= MTOL
            },
        )
        .expect("catalog group")
    })
    .clone()
}

fn sl2c_basis() -> Vec<CMat> {
    let mut v = Vec::new();
    for k in 1..4 {
        v.push(sigma(k)); // τ_k/2
    }
    for k in 1..4 {
        v.push(sigma(k).map(|z| z * Complex64::new(0.0, 1.0))); // iτ_k/2
    }
    v
}

/// ℂ*: nonzero complex scalars (1×1).
pub fn complex_scalars() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        GroupSpec::new(
            "C*",
            1,
            ScalarKind::Complex,
            vec![
                CMat::identity(1, 1),
                CMat::identity(1, 1).map(|z| z * Complex64::new(0.0, 1.0)),
            ],
            |m| m[(0, 0)].norm() > 1e-12,
        )
        .expect("catalog group")
    })
    .clone()
}

// ---------------------------------------------------------------------------
// tractor family (6×6 real, blocks of sizes 1, 4, 1)
// ---------------------------------------------------------------------------

/// Assemble the 6×6 tractor group element determined by a dilation z > 0 and
/// a covector row r: [[z, r, ½z⁻¹ r rᵗ], [0, 1₄, z⁻¹ rᵗ], [0, 0, z⁻¹]],
/// where rᵗ = η rᵀ is the η-transpose.
pub fn tractor_elem(z: f64, r: &RowDVector<f64>) -> DMatrix<f64> {
    let eta = eta();
    let rt = &eta * r.transpose(); // column
    let mut m = DMatrix::<f64>::identity(6, 6);
    m[(0, 0)] = z;
    m[(5, 5)] = 1.0 / z;
    for a in 0..4 {
        m[(0, 1 + a)] = r[a];
        m[(1 + a, 5)] = rt[a] / z;
    }
    m[(0, 5)] = 0.5 * (r * &rt)[(0, 0)] / z;
    m
}

/// ε-generator of the tractor algebra: diag(1, 0₄, −1).
fn tractor_eps_gen() -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(6, 6);
    m[(0, 0)] = 1.0;
    m[(5, 5)] = -1.0;
    m
}

/// ι-generator for the covector basis direction `a`: row block ι = f_a plus
/// the matching ιᵗ column block.
fn tractor_iota_gen(a: usize) -> DMatrix<f64> {
    let eta = eta();
    let mut m = DMatrix::<f64>::zeros(6, 6);
    m[(0, 1 + a)] = 1.0;
    for b in 0..4 {
        // ιᵗ = η ιᵀ
        m[(1 + b, 5)] = eta[(b, a)];
    }
    m
}

/// τ-generator for the vector basis direction `a`: column block τ = e_a plus
/// the matching τᵗ row block.
fn tractor_tau_gen(a: usize) -> DMatrix<f64> {
    let eta = eta();
    let mut m = DMatrix::<f64>::zeros(6, 6);
    m[(1 + a, 0)] = 1.0;
    for b in 0..4 {
        // τᵗ = (η τ)ᵀ
        m[(5, 1 + b)] = eta[(b, a)];
    }
    m
}

/// Embed a Lorentz matrix into the tractor size: diag(1, S, 1).
pub fn tractor_embed_so(s: &CMat) -> CMat {
    let mut m = CMat::identity(6, 6);
    for r in 0..4 {
        for c in 0..4 {
            m[(1 + r, 1 + c)] = s[(r, c)];
        }
    }
    m
}

/// Jet-valued version of [`tractor_embed_so`].
pub fn tractor_embed_so_jet(s: &JetMat) -> JetMat {
    let mut m = JetMat::identity(6, s.n_vars(), s.order());
    m.set_block(1, 1, s);
    m
}

/// The invariant bilinear form of the tractor family (signature (2,4)-type):
/// X ∈ Lie G′ satisfies XᵀQ + QX = 0 for this Q.
pub fn tractor_q() -> DMatrix<f64> {
    let eta = eta();
    let mut q = DMatrix::<f64>::zeros(6, 6);
    q[(0, 5)] = -1.0;
    q[(5, 0)] = -1.0;
    for a in 0..4 {
        for b in 0..4 {
            q[(1 + a, 1 + b)] = eta[(a, b)];
        }
    }
    q
}

/// Tractor G: the parabolic factor generated by dilations and ι-blocks.
pub fn tractor_g() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = vec![re(&tractor_eps_gen())];
        for a in 0..4 {
            basis.push(re(&tractor_iota_gen(a)));
        }
        GroupSpec::new("TractorG", 6, ScalarKind::Real, basis, |m| {
            if !is_real(m, MTOL) {
                return false;
            }
            let mr = m.map(|z| z.re);
            let z = mr[(0, 0)];
            if z <= 1e-12 {
                return false;
            }
            let r = RowDVector::from_fn(4, |_, a| mr[(0, 1 + a)]);
            (tractor_elem(z, &r) - mr).amax() <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Tractor G⋊SO: adds the Lorentz block to tractor G.
pub fn tractor_gso() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = vec![re(&tractor_eps_gen())];
        for a in 0..4 {
            basis.push(re(&tractor_iota_gen(a)));
        }
        for g in lorentz_basis() {
            let mut m = DMatrix::<f64>::zeros(6, 6);
            m.view_mut((1, 1), (4, 4)).copy_from(&g);
            basis.push(re(&m));
        }
        GroupSpec::new("TractorGxSO", 6, ScalarKind::Real, basis, |m| {
            if !is_real(m, MTOL) {
                return false;
            }
            let mr = m.map(|z| z.re);
            let z = mr[(0, 0)];
            if z <= 1e-12 {
                return false;
            }
            let eta = eta();
            let s = mr.view((1, 1), (4, 4)).into_owned();
            if (s.transpose() * &eta * &s - &eta).amax() > MTOL
                || (s.determinant() - 1.0).abs() > MTOL
            {
                return false;
            }
            // element = tractor_elem(z, r) · diag(1, S, 1)
            let sinv = &eta * s.transpose() * &eta;
            let rs = RowDVector::from_fn(4, |_, a| mr[(0, 1 + a)]);
            let r = &rs * sinv;
            let mut expect = tractor_elem(z, &r);
            let mut semb = DMatrix::<f64>::identity(6, 6);
            semb.view_mut((1, 1), (4, 4)).copy_from(&s);
            expect *= semb;
            (expect - mr).amax() <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Tractor G′: the full graded algebra (τ ⊕ (ε,s) ⊕ ι); group realized as
/// the real matrices preserving the tractor bilinear form.
pub fn tractor_gprime() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = Vec::new();
        for a in 0..4 {
            basis.push(re(&tractor_tau_gen(a)));
        }
        basis.push(re(&tractor_eps_gen()));
        for g in lorentz_basis() {
            let mut m = DMatrix::<f64>::zeros(6, 6);
            m.view_mut((1, 1), (4, 4)).copy_from(&g);
            basis.push(re(&m));
        }
        for a in 0..4 {
            basis.push(re(&tractor_iota_gen(a)));
        }
        GroupSpec::new("TractorGprime", 6, ScalarKind::Real, basis, |m| {
            if !is_real(m, MTOL) {
                return false;
            }
            let mr = m.map(|z| z.re);
            let q = tractor_q();
            (mr.transpose() * &q * &mr - &q).amax() <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Semidirect structure on the tractor pair (G, SO(1,3)).
pub fn tractor_semidirect() -> SemidirectSpec {
    SemidirectSpec {
        normal: tractor_g(),
        acting: so13(),
        embed: Arc::new(|s| tractor_embed_so(s)),
    }
}

// ---------------------------------------------------------------------------
// twistor family (4×4 complex, blocks of sizes 2, 2)
// ---------------------------------------------------------------------------

/// Assemble the twistor group element for a dilation z > 0 and a hermitian
/// 2×2 block r̄: [[√z, −i z^{−1/2} r̄], [0, z^{−1/2}]].
pub fn twistor_elem(z: f64, rbar: &CMat) -> CMat {
    let a = z.sqrt();
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        m[(i, i)] = Complex64::new(a, 0.0);
        m[(2 + i, 2 + i)] = Complex64::new(1.0 / a, 0.0);
    }
    for i in 0..2 {
        for j in 0..2 {
            m[(i, 2 + j)] = Complex64::new(0.0, -1.0 / a) * rbar[(i, j)];
        }
    }
    m
}

/// Embed an SL(2,ℂ) matrix into the twistor size: diag(S̄^{−*}, S̄).
pub fn twistor_embed_sl(sbar: &CMat) -> CMat {
    let inv_adj = sbar
        .adjoint()
        .try_inverse()
        .expect("SL(2,C) element invertible");
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = inv_adj[(i, j)];
            m[(2 + i, 2 + j)] = sbar[(i, j)];
        }
    }
    m
}

/// Jet-valued version of [`twistor_embed_sl`].
pub fn twistor_embed_sl_jet(sbar: &JetMat) -> JetMat {
    let inv_adj = sbar
        .adjoint()
        .inverse()
        .expect("SL(2,C) jet element invertible");
    let mut m = JetMat::zeros(4, 4, sbar.n_vars(), sbar.order());
    m.set_block(0, 0, &inv_adj);
    m.set_block(2, 2, sbar);
    m
}

fn twistor_eps_gen() -> CMat {
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        m[(i, i)] = Complex64::new(0.5, 0.0);
        m[(2 + i, 2 + i)] = Complex64::new(-0.5, 0.0);
    }
    m
}

fn twistor_iota_gen(a: usize) -> CMat {
    let s = sigma(a);
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, 2 + j)] = Complex64::new(0.0, -1.0) * s[(i, j)];
        }
    }
    m
}

fn twistor_tau_gen(a: usize) -> CMat {
    let s = sigma(a);
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, j)] = Complex64::new(0.0, 1.0) * s[(i, j)];
        }
    }
    m
}

fn twistor_sl_gen(sbar: &CMat) -> CMat {
    let mut m = CMat::zeros(4, 4);
    let neg_adj = sbar.adjoint().map(|z| -z);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = neg_adj[(i, j)];
            m[(2 + i, 2 + j)] = sbar[(i, j)];
        }
    }
    m
}

fn hermitian_residual(m: &CMat) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Twistor Ḡ: dilations and hermitian ι-blocks.
pub fn twistor_g() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = vec![twistor_eps_gen()];
        for a in 0..4 {
            basis.push(twistor_iota_gen(a));
        }
        GroupSpec::new("TwistorG", 4, ScalarKind::Complex, basis, |m| {
            let a = m[(0, 0)];
            if a.im.abs() > MTOL || a.re <= 1e-12 {
                return false;
            }
            let z = a.re * a.re;
            // r̄ = i·a·B must be hermitian
            let b = m.view((0, 2), (2, 2)).into_owned();
            let rbar = b.map(|v| Complex64::new(0.0, a.re) * v);
            if hermitian_residual(&rbar) > MTOL {
                return false;
            }
            (twistor_elem(z, &rbar) - m).iter().map(|v| v.norm()).fold(0.0, f64::max) <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Twistor Ḡ⋊SL: adds the spin block.
pub fn twistor_gsl() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = vec![twistor_eps_gen()];
        for a in 0..4 {
            basis.push(twistor_iota_gen(a));
        }
        for s in sl2c_basis() {
            basis.push(twistor_sl_gen(&s));
        }
        GroupSpec::new("TwistorGxSL", 4, ScalarKind::Complex, basis, |m| {
            // lower-left must vanish
            let ll = m.view((2, 0), (2, 2));
            if ll.iter().map(|v| v.norm()).fold(0.0, f64::max) > MTOL {
                return false;
            }
            let d = m.view((2, 2), (2, 2)).into_owned();
            let detd = d[(0, 0)] * d[(1, 1)] - d[(0, 1)] * d[(1, 0)];
            if detd.im.abs() > MTOL || detd.re <= 1e-12 {
                return false;
            }
            let ainv2 = detd.re; // det(a⁻¹S̄) = a⁻²
            let a = 1.0 / ainv2.sqrt();
            let sbar = d.map(|v| v * a);
            let ul_expect = sbar
                .adjoint()
                .try_inverse()
                .map(|x| x.map(|v| v * a));
            let ul_expect = match ul_expect {
                Some(x) => x,
                None => return false,
            };
            let ul = m.view((0, 0), (2, 2)).into_owned();
            if (ul - ul_expect).iter().map(|v| v.norm()).fold(0.0, f64::max) > MTOL {
                return false;
            }
            // r̄ = i·a·B·S̄⁻¹ must be hermitian
            let sinv = match sbar.clone().try_inverse() {
                Some(x) => x,
                None => return false,
            };
            let b = m.view((0, 2), (2, 2)).into_owned();
            let rbar = (b * sinv).map(|v| Complex64::new(0.0, a) * v);
            hermitian_residual(&rbar) <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Twistor Ḡ′: the full graded algebra (τ̄ ⊕ (ε, s̄) ⊕ ῑ); the group is
/// realized as unimodular complex matrices (the span checks carry the
/// structural content).
pub fn twistor_gprime() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = Vec::new();
        for a in 0..4 {
            basis.push(twistor_tau_gen(a));
        }
        basis.push(twistor_eps_gen());
        for s in sl2c_basis() {
            basis.push(twistor_sl_gen(&s));
        }
        for a in 0..4 {
            basis.push(twistor_iota_gen(a));
        }
        GroupSpec::new("TwistorGprime", 4, ScalarKind::Complex, basis, |m| {
            let lu = m.clone().lu();
            let det = lu.determinant();
            (det - Complex64::ONE).norm() <= 1e-7
        })
        .expect("catalog group")
    })
    .clone()
}

/// Index ranges of the graded levels (−1, 0, +1) in the bases of
/// [`tractor_gprime`] and [`twistor_gprime`]: τ-generators first, then the
/// dilation and rotation block, then the ι-generators.
pub fn gprime_level_ranges() -> [std::ops::Range<usize>; 3] {
    [0..4, 4..11, 11..15]
}

/// Affine Lorentz group SO(1,3)⋉ℝ⁴ as 5×5 block matrices [[Λ, v], [0, 1]];
/// the basis lists the six Lorentz generators first, then the four
/// translations, giving a reductive model pair with translations as the
/// quotient.
pub fn affine13() -> GroupSpec {
    static SPEC: OnceLock<GroupSpec> = OnceLock::new();
    SPEC.get_or_init(|| {
        let mut basis = Vec::new();
        for g in lorentz_basis() {
            let mut m = DMatrix::<f64>::zeros(5, 5);
            m.view_mut((0, 0), (4, 4)).copy_from(&g);
            basis.push(re(&m));
        }
        for a in 0..4 {
            let mut m = DMatrix::<f64>::zeros(5, 5);
            m[(a, 4)] = 1.0;
            basis.push(re(&m));
        }
        GroupSpec::new("Affine(1,3)", 5, ScalarKind::Real, basis, |m| {
            if !is_real(m, MTOL) {
                return false;
            }
            let mr = m.map(|z| z.re);
            let bottom_ok = (0..4).all(|c| mr[(4, c)].abs() <= MTOL) && (mr[(4, 4)] - 1.0).abs() <= MTOL;
            if !bottom_ok {
                return false;
            }
            let lam = mr.view((0, 0), (4, 4)).clone_owned();
            let eta = eta();
            (lam.transpose() * &eta * &lam - &eta).amax() <= MTOL
        })
        .expect("catalog group")
    })
    .clone()
}

/// Semidirect structure on the twistor pair (Ḡ, SL(2,ℂ)).
pub fn twistor_semidirect() -> SemidirectSpec {
    SemidirectSpec {
        normal: twistor_g(),
        acting: sl2c(),
        embed: Arc::new(|s| twistor_embed_sl(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{bracket, exp_alg, killing, log_grp, KillingKind};
    use nalgebra::RowDVector;

    #[test]
    fn catalog_constructs_and_closes() {
        // constructors run the closure + membership self-checks
        for spec in [
            weyl_dilations(),
            so13(),
            sl2c(),
            complex_scalars(),
            tractor_g(),
            tractor_gso(),
            tractor_gprime(),
            twistor_g(),
            twistor_gsl(),
            twistor_gprime(),
        ] {
            assert!(spec.alg_dim() > 0, "{} basis empty", spec.name());
        }
        assert_eq!(tractor_gprime().alg_dim(), 15);
        assert_eq!(twistor_gprime().alg_dim(), 15);
    }

    #[test]
    fn exp_log_roundtrip_on_so13() {
        let spec = so13();
        let x = spec.alg_from_coords(&[0.21, -0.35, 0.12, 0.3, -0.14, 0.23]);
        let g = exp_alg(&x).unwrap();
        let back = log_grp(&g).unwrap();
        assert!((back.mat - x.mat).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-10);
    }

    #[test]
    fn jacobi_on_so13() {
        let spec = so13();
        let x = spec.alg_from_coords(&[0.5, 0.1, -0.4, 0.2, 0.7, -0.3]);
        let y = spec.alg_from_coords(&[-0.2, 0.6, 0.3, -0.5, 0.1, 0.4]);
        let z = spec.alg_from_coords(&[0.3, -0.1, 0.8, 0.4, -0.6, 0.2]);
        let cyc = bracket(&x, &bracket(&y, &z).unwrap())
            .unwrap()
            .mat
            + bracket(&y, &bracket(&z, &x).unwrap()).unwrap().mat
            + bracket(&z, &bracket(&x, &y).unwrap()).unwrap().mat;
        assert!(cyc.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
    }

    #[test]
    fn structure_constants_reproduce_brackets() {
        let spec = tractor_gso();
        let n = spec.alg_dim();
        for a in 0..n {
            for b in 0..n {
                let br = &spec.basis()[a] * &spec.basis()[b]
                    - &spec.basis()[b] * &spec.basis()[a];
                let mut rec = CMat::zeros(6, 6);
                for c in 0..n {
                    rec += spec.basis()[c].map(|z| z * spec.structure_constant(a, b, c));
                }
                assert!(
                    (br - rec).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12,
                    "bracket ({a},{b}) mismatch"
                );
            }
        }
    }

    #[test]
    fn tractor_membership_and_product() {
        let spec = tractor_g();
        let r1 = RowDVector::from_vec(vec![0.3, -0.2, 0.5, 0.1]);
        let r2 = RowDVector::from_vec(vec![-0.1, 0.4, 0.2, -0.3]);
        let g1 = re(&tractor_elem(1.7, &r1));
        let g2 = re(&tractor_elem(0.6, &r2));
        assert!(spec.is_member(&g1));
        assert!(spec.is_member(&g2));
        assert!(spec.is_member(&(&g1 * &g2)), "G closed under product");
    }

    #[test]
    fn twistor_membership_and_product() {
        let spec = twistor_g();
        let rb = super::super::spin::bar_covec(&[
            Complex64::new(0.4, 0.0),
            Complex64::new(-0.3, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.7, 0.0),
        ]);
        let g1 = twistor_elem(1.4, &rb);
        assert!(spec.is_member(&g1));
        let g2 = twistor_elem(0.8, &rb.map(|z| z * 0.5));
        assert!(spec.is_member(&(&g1 * &g2)));
    }

    #[test]
    fn semidirect_associativity() {
        let sd = tractor_semidirect();
        let mk = |z: f64, r: [f64; 4], coords: [f64; 6]| {
            let g = sd
                .normal
                .group_elem(re(&tractor_elem(z, &RowDVector::from_vec(r.to_vec()))))
                .unwrap();
            let k = exp_alg(&sd.acting.alg_from_coords(&coords)).unwrap();
            (g, k)
        };
        let a = mk(1.3, [0.2, -0.1, 0.4, 0.3], [0.3, -0.2, 0.1, 0.25, -0.15, 0.05]);
        let b = mk(0.7, [-0.3, 0.5, 0.1, -0.2], [-0.1, 0.4, 0.2, -0.3, 0.1, 0.2]);
        let c = mk(2.1, [0.1, 0.2, -0.4, 0.5], [0.2, 0.1, -0.2, 0.15, 0.35, -0.1]);
        let ab = sd.compose((&a.0, &a.1), (&b.0, &b.1)).unwrap();
        let ab_c = sd.compose((&ab.0, &ab.1), (&c.0, &c.1)).unwrap();
        let bc = sd.compose((&b.0, &b.1), (&c.0, &c.1)).unwrap();
        let a_bc = sd.compose((&a.0, &a.1), (&bc.0, &bc.1)).unwrap();
        assert!((ab_c.0.mat - a_bc.0.mat).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
        assert!((ab_c.1.mat - a_bc.1.mat).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
        // identity is neutral
        let e = (sd.normal.identity(), sd.acting.identity());
        let r = sd.compose((&e.0, &e.1), (&b.0, &b.1)).unwrap();
        assert!((r.0.mat - &b.0.mat).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-14);
    }

    #[test]
    fn semidirect_product_matches_big_matrix_product() {
        // (g,k) ↦ g·embed(k) is a group morphism onto G⋊SO ⊂ 6×6 matrices
        let sd = tractor_semidirect();
        let gso = tractor_gso();
        let g1 = re(&tractor_elem(1.2, &RowDVector::from_vec(vec![0.3, 0.1, -0.2, 0.4])));
        let g2 = re(&tractor_elem(0.9, &RowDVector::from_vec(vec![-0.1, 0.2, 0.5, 0.0])));
        let k1 = exp_alg(&so13().alg_from_coords(&[0.2, -0.3, 0.1, 0.15, 0.25, -0.05]))
            .unwrap();
        let k2 = exp_alg(&so13().alg_from_coords(&[-0.15, 0.1, 0.3, -0.2, 0.05, 0.4]))
            .unwrap();
        let big1 = &g1 * tractor_embed_so(&k1.mat);
        let big2 = &g2 * tractor_embed_so(&k2.mat);
        assert!(gso.is_member(&big1));
        let pair = sd
            .compose(
                (&sd.normal.group_elem(g1).unwrap(), &k1),
                (&sd.normal.group_elem(g2).unwrap(), &k2),
            )
            .unwrap();
        let big = &pair.0.mat * tractor_embed_so(&pair.1.mat);
        let prod = big1 * big2;
        assert!((big - prod).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
    }

    #[test]
    fn killing_is_symmetric_and_zero_on_zero() {
        let spec = so13();
        let x = spec.alg_from_coords(&[0.3, 0.2, -0.1, 0.4, 0.0, 0.5]);
        let y = spec.alg_from_coords(&[-0.2, 0.5, 0.3, 0.1, -0.4, 0.2]);
        let z = spec.alg_from_coords(&[0.0; 6]);
        let bxy = killing(KillingKind::PlainTrace, &x, &y).unwrap();
        let byx = killing(KillingKind::PlainTrace, &y, &x).unwrap();
        assert_eq!(bxy, byx);
        assert_eq!(killing(KillingKind::PlainTrace, &x, &z).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn killing_bridge_so13_sl2c() {
        // B_{so(1,3)}(m,n) = B̄_{sl(2,C)}(m̄,n̄) through the algebra iso
        let lift = super::super::spin::SpinLift::new();
        let so = so13();
        let sl = sl2c();
        let m = so.alg_from_coords(&[0.4, -0.2, 0.3, 0.1, 0.5, -0.3]);
        let n = so.alg_from_coords(&[-0.1, 0.6, 0.2, -0.4, 0.3, 0.2]);
        let mb = sl
            .alg_elem(lift.lift(&m.mat.map(|z| z.re)).unwrap())
            .unwrap();
        let nb = sl
            .alg_elem(lift.lift(&n.mat.map(|z| z.re)).unwrap())
            .unwrap();
        let lhs = killing(KillingKind::PlainTrace, &m, &n).unwrap();
        let rhs = killing(KillingKind::HermitianSymmetrized, &mb, &nb).unwrap()
            * crate::lie::SPIN_KILLING_RATIO;
        assert!((lhs - rhs).norm() < 1e-10, "B_so = {lhs}, 4·B̄_sl = {rhs}");
    }

    #[test]
    fn tractor_grading_closes() {
        // levels: -1 = τ, 0 = (ε, s), +1 = ι
        let levels: [Vec<CMat>; 3] = [
            (0..4).map(|a| re(&tractor_tau_gen(a))).collect(),
            {
                let mut v = vec![re(&tractor_eps_gen())];
                for g in lorentz_basis() {
                    let mut m = DMatrix::<f64>::zeros(6, 6);
                    m.view_mut((1, 1), (4, 4)).copy_from(&g);
                    v.push(re(&m));
                }
                v
            },
            (0..4).map(|a| re(&tractor_iota_gen(a))).collect(),
        ];
        check_grading(&levels);
    }

    #[test]
    fn twistor_grading_closes() {
        let levels: [Vec<CMat>; 3] = [
            (0..4).map(twistor_tau_gen).collect(),
            {
                let mut v = vec![twistor_eps_gen()];
                for s in sl2c_basis() {
                    v.push(twistor_sl_gen(&s));
                }
                v
            },
            (0..4).map(twistor_iota_gen).collect(),
        ];
        check_grading(&levels);
    }

    fn check_grading(levels: &[Vec<CMat>; 3]) {
        for (i, li) in levels.iter().enumerate() {
            for (j, lj) in levels.iter().enumerate() {
                let target = (i as i32 - 1) + (j as i32 - 1);
                for x in li {
                    for y in lj {
                        let br = x * y - y * x;
                        if !(-1..=1).contains(&target) {
                            assert!(
                                br.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12,
                                "bracket outside grading should vanish"
                            );
                        } else {
                            let span = &levels[(target + 1) as usize];
                            let (_, resid) = super::super::spin::span_coords(span, &br);
                            assert!(
                                resid < 1e-12,
                                "level ({},{}) bracket escapes level {}",
                                i as i32 - 1,
                                j as i32 - 1,
                                target
                            );
                        }
                    }
                }
            }
        }
    }
}
