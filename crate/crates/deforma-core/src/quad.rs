//! Internal quadrature helpers.
//!
//! Composite 8-point Gauss-Legendre panels, plus a weighted half-line
//! integral for the measure xi^(D-1) dxi.  The weight is integrable but
//! singular at the origin for D < 1, so the substitution u = xi^D is
//! applied first and the panels are graded geometrically toward zero.

/// 8-point Gauss-Legendre nodes (positive half) and weights on [-1, 1],
/// kept at their published digits.
#[allow(clippy::excessive_precision)]
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
#[allow(clippy::excessive_precision)]
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

fn gl8_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..4 {
        acc += GL8_W[i] * (f(mid + half * GL8_X[i]) + f(mid - half * GL8_X[i]));
    }
    acc * half
}

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
pub(crate) fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let lo = a + h * k as f64;
        acc += gl8_panel(&f, lo, lo + h);
    }
    acc
}

/// Integral of g(xi) * xi^(d-1) over [0, r] for d > 0.
///
/// Substituting u = xi^d gives (1/d) * integral of g(u^(1/d)) du over
/// [0, r^d]; panels are graded geometrically toward u = 0 where the
/// substituted integrand loses smoothness.
pub(crate) fn weighted_halfline(g: impl Fn(f64) -> f64, d: f64, r: f64) -> f64 {
    assert!(d > 0.0 && r > 0.0);
    let upper = r.powf(d);
    let inv = 1.0 / d;
    let sub = |u: f64| g(u.powf(inv));
    let mut acc = 0.0;
    let mut hi = upper;
    // 52 halvings put the leftover sliver at ~2e-16 * upper.
    for _ in 0..52 {
        let lo = 0.5 * hi;
        acc += gl8_panel(&sub, lo, hi);
        hi = lo;
    }
    acc += hi * sub(0.5 * hi);
    acc * inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exact() {
        let v = gl_integrate(|x| x * x, 0.0, 1.0, 4);
        assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn weighted_volume_identity() {
        // integral of xi^(d-1) over [0, r] = r^d / d, including d < 1.
        for d in [0.5, 1.0, 1.5] {
            for r in [0.7, 2.0] {
                let v = weighted_halfline(|_| 1.0, d, r);
                assert_relative_eq!(v, r.powf(d) / d, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn weighted_gaussian_matches_reference() {
        // Reference by substitution-free quadrature away from the origin
        // plus a series for the singular head.
        let d = 1.5f64;
        let g = |x: f64| (-x * x).exp();
        let v = weighted_halfline(g, d, 6.0);
        // Gamma(d/2)/2 * P(d/2, 36) with P ~ 1: integral_0^inf x^(d-1) e^(-x^2) dx
        // = Gamma(d/2)/2 = Gamma(0.75)/2.
        let expect = 1.225_416_702_465_178 / 2.0;
        assert_relative_eq!(v, expect, max_relative = 1e-10);
    }
}
