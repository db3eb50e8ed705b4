//! Dense matrix exponential / logarithm on plain complex matrices:
//! scaling-and-squaring with a degree-13 Padé core for `exp`, inverse
//! scaling-and-squaring (repeated principal square roots + Gregory series)
//! for `log`.

use crate::error::{KernelError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

fn one_norm(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|c| (0..a.nrows()).map(|r| a[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential (Padé(13) scaling and squaring).
pub fn mat_exp(a: &CMat) -> CMat {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA13: f64 = 5.371920351148152;
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.map(|z| z / 2f64.powi(s));
    let id = CMat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let w1 = a6.map(|z| z * B[13]) + a4.map(|z| z * B[11]) + a2.map(|z| z * B[9]);
    let w2 = a6.map(|z| z * B[7]) + a4.map(|z| z * B[5]) + a2.map(|z| z * B[3])
        + id.map(|z| z * B[1]);
    let u = &a * (&a6 * w1 + w2);
    let z1 = a6.map(|z| z * B[12]) + a4.map(|z| z * B[10]) + a2.map(|z| z * B[8]);
    let v = &a6 * z1
        + a6.map(|z| z * B[6])
        + a4.map(|z| z * B[4])
        + a2.map(|z| z * B[2])
        + id.map(|z| z * B[0]);
    let num = &v + &u;
    let den = &v - &u;
    let mut r = den
        .lu()
        .solve(&num)
        .expect("Padé denominator is invertible for scaled inputs");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Principal matrix square root via the Denman–Beavers iteration.
/// Fails (domain error) when an eigenvalue sits on the closed negative real
/// axis, where the principal root does not exist.
pub fn mat_sqrt(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    for _ in 0..80 {
        let zi = z.clone().try_inverse().ok_or_else(|| {
            KernelError::LogDomain("square-root iteration hit a singular matrix".into())
        })?;
        let yi = y.clone().try_inverse().ok_or_else(|| {
            KernelError::LogDomain("square-root iteration hit a singular matrix".into())
        })?;
        let yn = (&y + zi).map(|v| v * 0.5);
        let zn = (&z + yi).map(|v| v * 0.5);
        y = yn;
        z = zn;
        if one_norm(&(&y * &y - a)) < 1e-30 {
            return Ok(y);
        }
    }
    if one_norm(&(&y * &y - a)) < 1e-12 * (1.0 + one_norm(a)) {
        Ok(y)
    } else {
        Err(KernelError::LogDomain(
            "principal square root did not converge (eigenvalue on the negative real axis?)"
                .into(),
        ))
    }
}

/// Principal matrix logarithm (inverse scaling and squaring).
pub fn mat_log(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let id = CMat::identity(n, n);
    let mut b = a.clone();
    let mut k = 0u32;
    while one_norm(&(&b - &id)) > 0.25 {
        if k >= 40 {
            return Err(KernelError::LogDomain(
                "inverse scaling did not contract to the identity".into(),
            ));
        }
        b = mat_sqrt(&b)?;
        k += 1;
    }
    // Gregory series: log B = 2·atanh(X), X = (B−I)(B+I)⁻¹, ‖X‖ < 1/7.
    let den = (&b + &id)
        .try_inverse()
        .ok_or_else(|| KernelError::LogDomain("B + I singular in Gregory series".into()))?;
    let x = (&b - &id) * den;
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut acc = x.clone();
    for j in 1..=24 {
        term = &term * &x2;
        acc += term.map(|z| z / (2.0 * j as f64 + 1.0));
    }
    Ok(acc.map(|z| z * 2f64.powi(k as i32 + 1)))
}
