//! Symmetric alpha-stable sampling via the Chambers-Mallows-Stuck transform.

use rand::Rng;

use crate::FractalError;

/// Draws one sample from the symmetric alpha-stable law `S_alpha(scale)`,
/// parametrized so that the characteristic function is
/// `exp(-(scale*|t|)^alpha)`.
///
/// `alpha = 2` is the Gaussian `N(0, 2*scale^2)`; `alpha = 1` the Cauchy.
pub fn sample_alpha_stable<R: Rng + ?Sized>(
    alpha: f64,
    scale: f64,
    rng: &mut R,
) -> Result<f64, FractalError> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(FractalError::AlphaOutOfRange(alpha));
    }
    Ok(scale * standard_symmetric_stable(alpha, rng))
}

/// Chambers-Mallows-Stuck draw from the standard symmetric stable law.
fn standard_symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let u = std::f64::consts::PI * (rng.gen::<f64>() - 0.5);
    if (alpha - 1.0).abs() < 1e-12 {
        return u.tan();
    }
    let w = exp1(rng);
    let num = (alpha * u).sin();
    let den = u.cos().powf(1.0 / alpha);
    let tail = (((1.0 - alpha) * u).cos() / w).powf((1.0 - alpha) / alpha);
    num / den * tail
}

/// Unit-rate exponential draw; rejects the measure-zero 0 from `[0, 1)`.
fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return -x.ln();
        }
    }
}
