//! Scalar special functions: gamma and Bessel J.
//!
//! Gamma uses a Lanczos approximation (g = 7, 9 coefficients) with the
//! reflection formula for arguments below 1/2.  Bessel J of real order is
//! summed from its ascending series
//!
//! ```text
//! J_nu(x) = sum_k (-1)^k (x/2)^(2k+nu) / (k! * Gamma(nu+k+1))
//! ```
//!
//! truncated once a term drops below 1e-15 of the partial sum.  The series
//! loses accuracy for large arguments, so x > 50 is rejected.

use crate::error::{Error, Result};

/// Lanczos coefficients for g = 7, kept at their published digits.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Core Lanczos evaluation, valid for x >= 0.5.
fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let root = (2.0 * std::f64::consts::PI).sqrt();
    let log_power = (z + 0.5) * t.ln();
    if log_power > 700.0 {
        // t^(z+0.5) alone would overflow although the product may not.
        root * acc * (log_power - t).exp()
    } else {
        root * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// Gamma for arguments known to be positive; skips the pole check.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "gamma_pos needs x > 0, got {x}");
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos(1.0 - x))
    } else {
        lanczos(x)
    }
}

/// Gamma function on the real line.
///
/// Relative accuracy is 1e-12 or better on (0, 30).  Nonpositive integers
/// are poles and return [`Error::GammaPole`]; other negative arguments go
/// through the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole { x });
    }
    if x >= 0.5 {
        return Ok(lanczos(x));
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    let s = (std::f64::consts::PI * x).sin();
    Ok(std::f64::consts::PI / (s * lanczos(1.0 - x)))
}

/// Natural log of gamma for positive arguments.
///
/// Needed where gamma itself would overflow (arguments beyond ~171).
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::domain("ln_gamma", format!("x = {x} must be > 0")));
    }
    if x < 0.5 {
        // ln Gamma(x) = ln pi - ln sin(pi x) - ln Gamma(1 - x) on (0, 1/2).
        let s = (std::f64::consts::PI * x).sin();
        return Ok(std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

/// Largest argument the Bessel series is trusted for.
pub const BESSEL_MAX_X: f64 = 50.0;

/// Bessel function of the first kind, real order nu > -1.
///
/// Summed from the ascending series with relative truncation at 1e-15.
/// Arguments must satisfy x >= 0; x > 50 is a range error because the
/// alternating series sheds too many digits there.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu <= -1.0 {
        return Err(Error::domain(
            "bessel_j",
            format!("order nu = {nu} must exceed -1"),
        ));
    }
    if x < 0.0 {
        return Err(Error::domain("bessel_j", format!("x = {x} must be >= 0")));
    }
    if x > BESSEL_MAX_X {
        return Err(Error::range(
            "bessel_j",
            format!("x = {x} exceeds series limit {BESSEL_MAX_X}"),
        ));
    }
    if x == 0.0 {
        if nu == 0.0 {
            return Ok(1.0);
        }
        if nu < 0.0 {
            return Err(Error::domain(
                "bessel_j",
                "x = 0 diverges for negative order".to_string(),
            ));
        }
        return Ok(0.0);
    }

    let half = 0.5 * x;
    let mut term = half.powf(nu) / gamma_pos(nu + 1.0);
    let mut sum = term;
    for k in 0..500 {
        let kf = k as f64;
        term *= -(half * half) / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term.abs() < 1e-15 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_j series",
        terms: 500,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_half_integers() {
        // Gamma(1.5) = sqrt(pi)/2
        assert_relative_eq!(
            gamma(1.5).unwrap(),
            0.886_226_925_452_758,
            max_relative = 1e-12
        );
        // Gamma(0.5) = sqrt(pi)
        assert_relative_eq!(
            gamma(0.5).unwrap(),
            1.772_453_850_905_516,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gamma_factorials() {
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(13.0).unwrap(), 479_001_600.0, max_relative = 1e-12);
    }

    #[test]
    fn gamma_poles_rejected() {
        for x in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(gamma(x), Err(Error::GammaPole { .. })));
        }
    }

    #[test]
    fn gamma_negative_noninteger_reflects() {
        // Gamma(-0.5) = -2 sqrt(pi)
        assert_relative_eq!(
            gamma(-0.5).unwrap(),
            -3.544_907_701_811_032,
            max_relative = 1e-12
        );
        // Gamma(-1.5) = 4 sqrt(pi) / 3
        assert_relative_eq!(
            gamma(-1.5).unwrap(),
            2.363_271_801_207_355,
            max_relative = 1e-11
        );
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let mut x = 0.07;
        while x < 29.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            x += 0.193;
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in [0.3, 0.9, 1.5, 4.2, 20.0, 150.0] {
            assert_relative_eq!(
                ln_gamma(x).unwrap(),
                gamma(x).unwrap().ln(),
                max_relative = 1e-11
            );
        }
        // Beyond direct-gamma overflow territory.
        let big = ln_gamma(300.0).unwrap();
        assert!(big.is_finite() && big > 0.0);
        assert!(ln_gamma(-1.0).is_err());
    }

    #[test]
    fn bessel_at_origin() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.3, 0.0).unwrap(), 0.0);
        assert!(bessel_j(-0.5, 0.0).is_err());
    }

    #[test]
    fn bessel_half_order_closed_form() {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x, so J_{1/2}(pi/2) = 2/pi.
        let x = std::f64::consts::FRAC_PI_2;
        assert_relative_eq!(
            bessel_j(0.5, x).unwrap(),
            2.0 / std::f64::consts::PI,
            max_relative = 1e-12
        );
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x
        let x = 1.3;
        let expect = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos();
        assert_relative_eq!(bessel_j(-0.5, x).unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn bessel_recurrence() {
        // J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)
        for nu in [0.5, 1.0, 1.7, 3.0] {
            for x in [0.5, 2.0, 7.3, 10.0] {
                let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
                let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bessel_range_guard() {
        assert!(matches!(bessel_j(0.0, 51.0), Err(Error::Range { .. })));
        assert!(bessel_j(0.0, 49.9).is_ok());
        assert!(bessel_j(-1.0, 1.0).is_err());
    }
}
