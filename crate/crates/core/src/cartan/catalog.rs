//! Fixed splits and gradings for the catalog families: tractor and twistor
//! parabolic splits (quotient = τ-generators), their three-level gradings,
//! and the reductive affine split.

use super::{Grading, LevelSplit, QuotientSplit};
use crate::error::Result;
use crate::forms::{Chart, LocalForm};
use crate::lie::catalog as groups;
use crate::lie::spin;
use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

fn gprime_split(basis: &[CMat]) -> Result<QuotientSplit> {
    let r = groups::gprime_level_ranges();
    let sub: Vec<CMat> = basis[r[1].clone()]
        .iter()
        .chain(basis[r[2].clone()].iter())
        .cloned()
        .collect();
    QuotientSplit::new(sub, basis[r[0].clone()].to_vec())
}

fn gprime_levels(basis: &[CMat]) -> Result<LevelSplit> {
    let r = groups::gprime_level_ranges();
    LevelSplit::new(vec![
        (-1, basis[r[0].clone()].to_vec()),
        (0, basis[r[1].clone()].to_vec()),
        (1, basis[r[2].clone()].to_vec()),
    ])
}

/// Tractor split: subalgebra ε ⊕ so(1,3) ⊕ ι, quotient basis the four
/// τ-generators.
pub fn tractor_split() -> Result<QuotientSplit> {
    gprime_split(groups::tractor_gprime().basis())
}

/// Tractor parabolic grading (−1 | 0 | +1) = (τ | ε, so | ι).
pub fn tractor_grading() -> Result<Grading> {
    Ok(Grading::Parabolic(gprime_levels(
        groups::tractor_gprime().basis(),
    )?))
}

/// Twistor split: subalgebra ε ⊕ s̄ ⊕ ῑ, quotient basis the four
/// τ̄-generators.
pub fn twistor_split() -> Result<QuotientSplit> {
    gprime_split(groups::twistor_gprime().basis())
}

/// Twistor parabolic grading (−1 | 0 | +1) = (τ̄ | ε, s̄ | ῑ).
pub fn twistor_grading() -> Result<Grading> {
    Ok(Grading::Parabolic(gprime_levels(
        groups::twistor_gprime().basis(),
    )?))
}

/// Reductive affine split: subalgebra so(1,3), quotient the translations.
pub fn affine_split() -> Result<QuotientSplit> {
    let spec = groups::affine13();
    let basis = spec.basis();
    QuotientSplit::new(basis[..6].to_vec(), basis[6..].to_vec())
}

/// The flat tractor form ϖ_μ = τ_μ (identity vielbein, no rotation or
/// ι-part) on the given 4-dimensional chart.
pub fn tractor_flat_form(chart: Chart) -> LocalForm {
    assert_eq!(chart.dim, 4);
    let spec = groups::tractor_gprime();
    let basis = spec.basis().to_vec();
    let alg = Some(spec.clone());
    LocalForm::new(chart, 1, 6, 6, alg, move |_, order| {
        Ok((0..4)
            .map(|mu| crate::jetmat::JetMat::from_value(&basis[mu], 4, order))
            .collect())
    })
}

/// The internal Minkowski metric on the 4-dimensional quotient.
pub fn quotient_eta() -> DMatrix<f64> {
    spin::eta()
}
