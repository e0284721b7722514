//! Spectra and eigenfunctions of deformed and fractional oscillators.
//!
//! Four oscillator spectra live here: the symmetric-q ladder spectrum,
//! the WKB closed form for the fractional oscillator, a dense-grid
//! numeric diagonalization of the fractional oscillator, and the exact
//! reflection-deformed spectrum n + D/2.  Alongside them: free-particle
//! wavefunctions in fractional dimension D (Bessel profiles), their
//! weighted probability density, the parity-split uncertainty bounds,
//! and application of the reflection-carrying Hamiltonian to a function.

use crate::dcalc::{self, d_bracket};
use crate::error::{Error, Result};
use crate::func::{FunctionHandle, Parity};
use crate::grid::{Grid, Profile};
use crate::qcalc::q_bracket;
use crate::special::{bessel_j, gamma};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// How a spectrum was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    ExactLadder,
    Wkb,
    NumericGrid,
    QExact,
}

/// A computed energy sequence with its provenance parameters.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// E(n) for n = 0.. in increasing order.
    pub energies: Vec<f64>,
    pub method: SpectrumMethod,
    pub params: BTreeMap<String, f64>,
}

fn params_of(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Symmetric-q oscillator spectrum E(n) = ([n] + [n+1])/2, n = 0..=nmax.
pub fn q_oscillator_energies(q: f64, nmax: usize) -> Result<SpectrumResult> {
    let mut energies = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let e = 0.5 * (q_bracket(n as f64, q)? + q_bracket(n as f64 + 1.0, q)?);
        energies.push(e);
    }
    Ok(SpectrumResult {
        energies,
        method: SpectrumMethod::QExact,
        params: params_of(&[("q", q), ("nmax", nmax as f64)]),
    })
}

fn wkb_prefactor(alpha: f64) -> Result<f64> {
    Ok(PI.powf(alpha / 2.0)
        * (alpha * gamma((1.0 + alpha) / (2.0 * alpha))? / gamma(1.0 / (2.0 * alpha))?).powf(alpha))
}

/// WKB fractional-oscillator spectrum
/// E(n) = (n + 1/2)^alpha * pi^(alpha/2) * [alpha G((1+alpha)/2 alpha) / G(1/2 alpha)]^alpha.
///
/// At alpha = 1 the prefactor collapses to 1 and E(n) = n + 1/2.
pub fn wkb_energies(alpha: f64, nmax: usize) -> Result<SpectrumResult> {
    check_wkb_alpha(alpha)?;
    let pref = wkb_prefactor(alpha)?;
    let energies = (0..=nmax)
        .map(|n| (n as f64 + 0.5).powf(alpha) * pref)
        .collect();
    Ok(SpectrumResult {
        energies,
        method: SpectrumMethod::Wkb,
        params: params_of(&[("alpha", alpha), ("nmax", nmax as f64)]),
    })
}

/// Variant of [`wkb_energies`] with the Gamma-ratio prefactor entering
/// linearly (no outer power alpha).  Kept purely for comparison: the two
/// readings coincide at alpha = 1 and separate everywhere else.
pub fn wkb_energies_linear_prefactor(alpha: f64, nmax: usize) -> Result<SpectrumResult> {
    check_wkb_alpha(alpha)?;
    let pref = PI.powf(alpha / 2.0) * alpha * gamma((1.0 + alpha) / (2.0 * alpha))?
        / gamma(1.0 / (2.0 * alpha))?;
    let energies = (0..=nmax)
        .map(|n| (n as f64 + 0.5).powf(alpha) * pref)
        .collect();
    Ok(SpectrumResult {
        energies,
        method: SpectrumMethod::Wkb,
        params: params_of(&[("alpha", alpha), ("nmax", nmax as f64)]),
    })
}

fn check_wkb_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::domain(
            "wkb_energies",
            format!("alpha = {alpha} outside (0, 2]"),
        ))
    }
}

/// Hard cap on the dense-grid eigenproblem size.
pub const NUMERIC_GRID_MAX_N: usize = 1000;
/// Points of |ground state| demanded above half its maximum.
const GROUND_SUPPORT_MIN_POINTS: usize = 8;

/// Centered fractional-difference coefficients: g_0 = G(1+a)/G(1+a/2)^2,
/// g_{k+1} = g_k (k - a/2)/(k + a/2 + 1); their symbol is |2 sin(t/2)|^a.
fn centered_coeffs(alpha: f64, n: usize) -> Result<Vec<f64>> {
    let g0 = gamma(1.0 + alpha)? / gamma(1.0 + alpha / 2.0)?.powi(2);
    let mut g = Vec::with_capacity(n);
    g.push(g0);
    for k in 0..n - 1 {
        let k = k as f64;
        let next = g[g.len() - 1] * (k - alpha / 2.0) / (k + alpha / 2.0 + 1.0);
        g.push(next);
    }
    Ok(g)
}

/// Numeric fractional-oscillator spectrum on a uniform grid over [-L, L].
///
/// The derivative operator of order alpha is the symmetric Toeplitz matrix
/// A = -h^(-alpha) T with T built from centered fractional-difference
/// coefficients (Fourier symbol -|2 sin(theta/2)/h|^alpha, the grid version
/// of -|k|^alpha); the squared-derivative term of the Hamiltonian is then
/// A^2, positive semidefinite, and
///
/// ```text
/// H = (A^2 + diag(|xi_i|^(2 alpha))) / 2.
/// ```
///
/// Values beyond the grid are treated as zero.  Returns the k lowest
/// eigenvalues.  At alpha = 1 the operator squares to the standard
/// discrete Laplacian symbol and E(n) converges to n + 1/2 at second
/// order in the spacing.
pub fn fractional_oscillator_numeric(
    alpha: f64,
    l: f64,
    n: usize,
    k: usize,
) -> Result<SpectrumResult> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(
            "fractional_oscillator_numeric",
            format!("alpha = {alpha} outside (0, 1]"),
        ));
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::domain(
            "fractional_oscillator_numeric",
            format!("half-width L = {l} must be > 0"),
        ));
    }
    if !(16..=NUMERIC_GRID_MAX_N).contains(&n) {
        return Err(Error::domain(
            "fractional_oscillator_numeric",
            format!("grid size N = {n} outside 16..={NUMERIC_GRID_MAX_N}"),
        ));
    }
    if k == 0 || k > n {
        return Err(Error::domain(
            "fractional_oscillator_numeric",
            format!("requested k = {k} eigenvalues outside 1..={n}"),
        ));
    }
    let h = 2.0 * l / (n - 1) as f64;
    let g = centered_coeffs(alpha, n)?;
    let scale = -h.powf(-alpha);
    let a = DMatrix::from_fn(n, n, |i, j| scale * g[i.abs_diff(j)]);
    let mut ham = &a * &a;
    for i in 0..n {
        let xi = -l + i as f64 * h;
        ham[(i, i)] += xi.abs().powf(2.0 * alpha);
    }
    ham *= 0.5;
    let eig = nalgebra::SymmetricEigen::new(ham);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let ground = eig.eigenvectors.column(order[0]);
    let peak = ground.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let support = ground.iter().filter(|v| v.abs() > 0.5 * peak).count();
    if support < GROUND_SUPPORT_MIN_POINTS {
        return Err(Error::GridTooCoarse {
            detail: format!(
                "ground state resolved by {support} points above half-maximum \
                 (need {GROUND_SUPPORT_MIN_POINTS}); increase N or shrink L"
            ),
        });
    }
    let energies = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
    Ok(SpectrumResult {
        energies,
        method: SpectrumMethod::NumericGrid,
        params: params_of(&[("alpha", alpha), ("L", l), ("N", n as f64), ("k", k as f64)]),
    })
}

/// Exact reflection-deformed oscillator spectrum E(n) = n + D/2,
/// computed as the bracket average ([n] + [n+1])/2.
pub fn d_oscillator_energies(d: f64, nmax: usize) -> Result<SpectrumResult> {
    let mut energies = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        energies.push(0.5 * (d_bracket(n as u32, d)? + d_bracket(n as u32 + 1, d)?));
    }
    Ok(SpectrumResult {
        energies,
        method: SpectrumMethod::ExactLadder,
        params: params_of(&[("D", d), ("nmax", nmax as f64)]),
    })
}

/// Surface measure constant sigma(D) = 2 pi^(D/2) / Gamma(D/2).
pub fn sigma(d: f64) -> Result<f64> {
    dcalc::check_dim(d, "sigma")?;
    Ok(2.0 * PI.powf(d / 2.0) / gamma(d / 2.0)?)
}

/// Free-particle momentum eigenfunction in dimension parameter D:
///
/// ```text
/// psi_p(xi) = A_p |p xi|^(1-D/2) [ J_{D/2-1}(|p xi|)
///             + i sgn(p xi) J_{D/2}(|p xi|) ],
/// A_p = sqrt(|p|^(D-1) / (2 sigma(D))),
/// ```
///
/// with the removable point at xi = 0 filled from the leading series
/// term, A_p 2^(1-D/2)/Gamma(D/2).  The real part is even and the
/// imaginary part odd.  The handle's domain is clipped to the argument
/// range the Bessel series supports; evaluation outside yields NaN.
pub fn free_particle_psi(p: f64, d: f64) -> Result<FunctionHandle> {
    dcalc::check_dim(d, "free_particle_psi")?;
    if p == 0.0 || !p.is_finite() {
        return Err(Error::domain(
            "free_particle_psi",
            format!("momentum p = {p} must be finite and nonzero"),
        ));
    }
    let amp = (p.abs().powf(d - 1.0) / (2.0 * sigma(d)?)).sqrt();
    let nu_even = d / 2.0 - 1.0;
    let nu_odd = d / 2.0;
    let at_zero = amp * 2.0f64.powf(1.0 - d / 2.0) / gamma(d / 2.0)?;
    let reach = crate::special::BESSEL_MAX_X / p.abs();
    let handle = FunctionHandle::new(move |xi| {
        let u = p * xi;
        if u == 0.0 {
            return Complex64::new(at_zero, 0.0);
        }
        let au = u.abs();
        let envelope = au.powf(1.0 - d / 2.0);
        match (bessel_j(nu_even, au), bessel_j(nu_odd, au)) {
            (Ok(je), Ok(jo)) => amp * envelope * Complex64::new(je, u.signum() * jo),
            _ => Complex64::new(f64::NAN, f64::NAN),
        }
    })
    .with_domain(-reach, reach);
    Ok(handle)
}

/// Weighted probability density rho(xi) = (sigma(D)/2) |xi|^(D-1) |psi|^2
/// of the free-particle state, sampled over a grid.
pub fn probability_density(p: f64, d: f64, grid: &Grid) -> Result<Profile> {
    let psi = free_particle_psi(p, d)?;
    let half_sigma = 0.5 * sigma(d)?;
    let values = grid
        .points()
        .iter()
        .map(|&xi| {
            let w = half_sigma * xi.abs().powf(d - 1.0);
            Complex64::new(w * psi.eval(xi).norm_sqr(), 0.0)
        })
        .collect();
    let profile = Profile::new(grid.clone(), values)?
        .with_meta("p", p)
        .with_meta("D", d)
        .with_meta("kind", "probability_density");
    Ok(profile)
}

/// Parity-resolved lower bound for the position-momentum uncertainty
/// product: D/2 on even states, (2-D)/2 on odd states, 1/2 for parity
/// mixtures.
pub fn uncertainty_bound(d: f64, parity: Parity) -> Result<f64> {
    dcalc::check_dim(d, "uncertainty_bound")?;
    Ok(match parity {
        Parity::Even => d / 2.0,
        Parity::Odd => (2.0 - d) / 2.0,
        Parity::None => 0.5,
    })
}

/// Apply the reflection-carrying Hamiltonian
///
/// ```text
/// (H f)(xi) = -1/2 [ f''(xi) + (D-1)/xi f'(xi)
///                    - (D-1)/(2 xi^2) (f(xi) - f(-xi)) ]
///             ( + xi^2/2 f(xi)  when include_potential )
/// ```
///
/// with the reflection evaluated literally.  Derivatives use f's analytic
/// closures when attached, else 4th-order central stencils.  Evaluation at
/// xi = 0 yields NaN.
pub fn dunkl_apply(f: &FunctionHandle, d: f64, include_potential: bool) -> Result<FunctionHandle> {
    dcalc::check_dim(d, "dunkl_apply")?;
    let inner = f.clone();
    let c = d - 1.0;
    let handle = FunctionHandle::new(move |xi| {
        if xi == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let kinetic = inner.second_derivative_at(xi) + (c / xi) * inner.derivative_at(xi)
            - (c / (2.0 * xi * xi)) * (inner.eval(xi) - inner.eval(-xi));
        let mut out = -0.5 * kinetic;
        if include_potential {
            out += 0.5 * xi * xi * inner.eval(xi);
        }
        out
    })
    .with_parity(f.parity_hint());
    Ok(handle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcalc::{eigenfunction, ladder, Flavor};
    use crate::quad::weighted_halfline;
    use approx::assert_relative_eq;

    #[test]
    fn q_oscillator_examples() {
        let s = q_oscillator_energies(2.0, 3).unwrap();
        assert_relative_eq!(s.energies[0], 0.5, epsilon = 1e-14);
        assert_relative_eq!(s.energies[1], 1.75, epsilon = 1e-14);
        assert_eq!(s.method, SpectrumMethod::QExact);
        let near = q_oscillator_energies(1.0 + 1e-7, 5).unwrap();
        for (n, e) in near.energies.iter().enumerate() {
            assert_relative_eq!(*e, n as f64 + 0.5, max_relative = 1e-9);
        }
    }

    #[test]
    fn wkb_alpha_one_is_half_integer_ladder() {
        let s = wkb_energies(1.0, 6).unwrap();
        for (n, e) in s.energies.iter().enumerate() {
            assert_relative_eq!(*e, n as f64 + 0.5, max_relative = 1e-12);
        }
        assert_relative_eq!(s.energies[3], 3.5, max_relative = 1e-12);
    }

    #[test]
    fn wkb_monotone_in_n() {
        for alpha in [0.6, 1.0, 1.5] {
            let s = wkb_energies(alpha, 11).unwrap();
            for w in s.energies.windows(2) {
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn wkb_prefactor_variants_diverge_away_from_alpha_one() {
        let a = wkb_energies(0.5, 0).unwrap().energies[0];
        let b = wkb_energies_linear_prefactor(0.5, 0).unwrap().energies[0];
        assert!(
            (a - b).abs() > 0.1,
            "expected distinct readings, got {a} vs {b}"
        );
        let a1 = wkb_energies(1.0, 0).unwrap().energies[0];
        let b1 = wkb_energies_linear_prefactor(1.0, 0).unwrap().energies[0];
        assert_relative_eq!(a1, b1, max_relative = 1e-12);
    }

    #[test]
    fn numeric_oscillator_classical_limit() {
        let s = fractional_oscillator_numeric(1.0, 8.0, 400, 5).unwrap();
        assert_relative_eq!(s.energies[0], 0.5, max_relative = 1e-2);
        for (n, e) in s.energies.iter().enumerate() {
            assert_relative_eq!(*e, n as f64 + 0.5, max_relative = 2e-2);
        }
    }

    #[test]
    fn numeric_oscillator_tracks_wkb_at_fractional_order() {
        let numeric = fractional_oscillator_numeric(0.8, 8.0, 400, 1).unwrap();
        let wkb = wkb_energies(0.8, 0).unwrap();
        let rel = (numeric.energies[0] - wkb.energies[0]).abs() / wkb.energies[0];
        assert!(rel < 0.10, "ground-state mismatch {rel}");
    }

    #[test]
    fn numeric_oscillator_second_order_convergence() {
        let e = |n: usize| {
            (
                fractional_oscillator_numeric(1.0, 8.0, n, 1)
                    .unwrap()
                    .energies[0],
                16.0 / (n - 1) as f64,
            )
        };
        let (e1, h1) = e(200);
        let (e2, h2) = e(400);
        let (e3, h3) = e(800);
        let p = ((e1 - e2) / (e2 - e3)).abs().ln() / (h1 / h2).ln();
        assert!(
            (1.8..=2.2).contains(&p),
            "order {p}, h-ratios {h1}/{h2}/{h3}"
        );
    }

    #[test]
    fn numeric_oscillator_guards() {
        assert!(matches!(
            fractional_oscillator_numeric(1.0, 40.0, 60, 3),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(fractional_oscillator_numeric(1.0, 8.0, 1001, 3).is_err());
        assert!(fractional_oscillator_numeric(1.2, 8.0, 100, 3).is_err());
        assert!(fractional_oscillator_numeric(1.0, 8.0, 100, 0).is_err());
    }

    #[test]
    fn d_oscillator_exact_spectrum() {
        let s = d_oscillator_energies(1.0, 4).unwrap();
        for (n, e) in s.energies.iter().enumerate() {
            assert_relative_eq!(*e, n as f64 + 0.5, epsilon = 1e-14);
        }
        let s = d_oscillator_energies(1.5, 4).unwrap();
        assert_relative_eq!(s.energies[0], 0.75, epsilon = 1e-14);
        for w in s.energies.windows(2) {
            assert_relative_eq!(w[1] - w[0], 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn d_oscillator_matches_ladder_matrix() {
        // Truncation corrupts only the very top basis state: the principal
        // block of the anticommutator (last row/column dropped after the
        // product) is exactly diagonal with entries n + D/2.
        let rep = ladder(1.5, Flavor::D, 64).unwrap();
        let full = 0.5 * (&rep.a * &rep.adag + &rep.adag * &rep.a);
        let trimmed = full.view((0, 0), (64, 64)).into_owned();
        let mut eigs: Vec<f64> = nalgebra::SymmetricEigen::new(trimmed)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigs.sort_by(f64::total_cmp);
        let exact = d_oscillator_energies(1.5, 62).unwrap();
        for (got, want) in eigs.iter().zip(&exact.energies) {
            assert_relative_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn free_particle_reduces_to_plane_wave() {
        let psi = free_particle_psi(1.3, 1.0).unwrap();
        // |psi| constant in xi at D = 1.
        let reference = psi.eval(0.17).norm();
        for xi in [-5.0, -1.2, 0.0, 0.4, 2.9, 6.0] {
            assert_relative_eq!(psi.eval(xi).norm(), reference, max_relative = 1e-8);
        }
    }

    #[test]
    fn free_particle_parity_split() {
        let psi = free_particle_psi(0.9, 1.4).unwrap();
        for xi in [0.3, 1.1, 4.2] {
            let plus = psi.eval(xi);
            let minus = psi.eval(-xi);
            assert_relative_eq!(plus.re, minus.re, max_relative = 1e-12);
            assert_relative_eq!(plus.im, -minus.im, max_relative = 1e-12);
        }
    }

    #[test]
    fn free_particle_is_hamiltonian_eigenfunction() {
        let (p, d) = (1.3, 1.4);
        let psi = free_particle_psi(p, d).unwrap();
        let h_psi = dunkl_apply(&psi, d, false).unwrap();
        let target = 0.5 * p * p;
        let mut xi = 0.5;
        while xi <= 6.0 {
            let value = psi.eval(xi);
            let residual = (h_psi.eval(xi) - target * value).norm() / value.norm();
            assert!(residual < 1e-4, "residual {residual} at xi = {xi}");
            xi += 0.25;
        }
    }

    #[test]
    fn density_is_flat_in_the_plane_wave_limit() {
        let grid = Grid::uniform(-6.0, 6.0, 241).unwrap();
        let profile = probability_density(0.7, 1.0, &grid).unwrap();
        for v in &profile.values {
            assert!(v.im == 0.0);
            assert_relative_eq!(v.re, 0.5 / PI, max_relative = 1e-9);
        }
    }

    #[test]
    fn density_regression_fixture() {
        // Frozen reference values for D = 1.5, p = 1 (cross-checked against
        // an independent Bessel implementation at build time).
        let grid = Grid::from_points(vec![0.5, 1.5, 2.5, 3.5]).unwrap();
        let profile = probability_density(1.0, 1.5, &grid).unwrap();
        let expect = [
            1.575588256859912e-1,
            1.832166208974885e-1,
            1.477530438338919e-1,
            1.575007902931557e-1,
        ];
        for (v, e) in profile.values.iter().zip(expect) {
            assert_relative_eq!(v.re, e, max_relative = 1e-10);
        }
    }

    #[test]
    fn density_nonnegative() {
        let grid = Grid::uniform(-8.0, 8.0, 321).unwrap();
        let profile = probability_density(1.0, 1.5, &grid).unwrap();
        for v in &profile.values {
            assert!(v.re >= 0.0);
        }
    }

    #[test]
    fn uncertainty_bounds_by_parity() {
        assert_relative_eq!(uncertainty_bound(1.5, Parity::Even).unwrap(), 0.75);
        assert_relative_eq!(uncertainty_bound(1.5, Parity::Odd).unwrap(), 0.25);
        assert_relative_eq!(uncertainty_bound(1.5, Parity::None).unwrap(), 0.5);
        // Same numbers as half the ladder commutator diagonal.
        let rep = ladder(1.5, Flavor::D, 6).unwrap();
        let comm = &rep.a * &rep.adag - &rep.adag * &rep.a;
        assert_relative_eq!(
            uncertainty_bound(1.5, Parity::Even).unwrap(),
            comm[(0, 0)].abs() / 2.0,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            uncertainty_bound(1.5, Parity::Odd).unwrap(),
            comm[(1, 1)].abs() / 2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn hamiltonian_on_exact_eigenfunctions() {
        // Ground and first excited states of the deformed oscillator.
        let d = 1.5;
        let ground = eigenfunction(0, d).unwrap().to_function(d).unwrap();
        let h0 = dunkl_apply(&ground, d, true).unwrap();
        let excited = eigenfunction(1, d).unwrap().to_function(d).unwrap();
        let h1 = dunkl_apply(&excited, d, true).unwrap();
        for xi in [0.4, 0.9, 1.7, -1.2] {
            assert_relative_eq!(
                h0.eval_real(xi),
                0.75 * ground.eval_real(xi),
                max_relative = 1e-8
            );
            assert_relative_eq!(
                h1.eval_real(xi),
                1.75 * excited.eval_real(xi),
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn parity_pure_reduction_matches_term_assembly() {
        let d = 1.3;
        let even = FunctionHandle::from_real(|x: f64| (-x * x / 2.0).exp())
            .with_parity(Parity::Even)
            .with_derivative(|x| Complex64::new(-x * (-x * x / 2.0).exp(), 0.0))
            .with_second_derivative(|x| Complex64::new((x * x - 1.0) * (-x * x / 2.0).exp(), 0.0));
        let h_even = dunkl_apply(&even, d, false).unwrap();
        let odd = FunctionHandle::from_real(|x: f64| x * (-x * x / 2.0).exp())
            .with_parity(Parity::Odd)
            .with_derivative(|x| Complex64::new((1.0 - x * x) * (-x * x / 2.0).exp(), 0.0))
            .with_second_derivative(|x| {
                Complex64::new(x * (x * x - 3.0) * (-x * x / 2.0).exp(), 0.0)
            });
        let h_odd = dunkl_apply(&odd, d, false).unwrap();
        for xi in [0.35f64, 1.0, 2.4] {
            // Even: reflection difference vanishes.
            let expect_even = -0.5
                * (even.second_derivative_at(xi).re + (d - 1.0) / xi * even.derivative_at(xi).re);
            assert_relative_eq!(h_even.eval_real(xi), expect_even, max_relative = 1e-10);
            // Odd: the reflection difference is 2 f.
            let expect_odd = -0.5
                * (odd.second_derivative_at(xi).re + (d - 1.0) / xi * odd.derivative_at(xi).re
                    - (d - 1.0) / (xi * xi) * odd.eval_real(xi));
            assert_relative_eq!(h_odd.eval_real(xi), expect_odd, max_relative = 1e-10);
        }
    }

    #[test]
    fn eigenvalue_ratio_constant_for_low_levels() {
        for d in [0.5, 1.0, 1.5] {
            for n in 0..=6usize {
                let f = eigenfunction(n, d).unwrap().to_function(d).unwrap();
                let hf = dunkl_apply(&f, d, true).unwrap();
                let expect = n as f64 + d / 2.0;
                let mut peak = 0.0f64;
                let mut xi = 0.3;
                while xi <= 3.0 {
                    peak = peak.max(f.eval_real(xi).abs());
                    xi += 0.05;
                }
                let mut xi = 0.3;
                while xi <= 3.0 {
                    let v = f.eval_real(xi);
                    if v.abs() > 1e-3 * peak {
                        let ratio = hf.eval_real(xi) / v;
                        assert!(
                            (ratio - expect).abs() < 1e-7 * expect.max(1.0),
                            "n={n} D={d} xi={xi}: ratio {ratio} vs {expect}"
                        );
                    }
                    xi += 0.05;
                }
            }
        }
    }

    #[test]
    fn weighted_orthonormality() {
        let d = 1.5;
        let half_sigma = 0.5 * sigma(d).unwrap();
        let funcs: Vec<FunctionHandle> = (0..=4)
            .map(|n| eigenfunction(n, d).unwrap().to_function(d).unwrap())
            .collect();
        let inner = |m: usize, n: usize| -> f64 {
            if (m + n) % 2 == 1 {
                return 0.0; // opposite parity: integrand odd in the weight
            }
            let (fm, fn_) = (funcs[m].clone(), funcs[n].clone());
            2.0 * half_sigma
                * weighted_halfline(move |xi| fm.eval_real(xi) * fn_.eval_real(xi), d, 12.0)
        };
        let norms: Vec<f64> = (0..=4).map(|n| inner(n, n).sqrt()).collect();
        for m in 0..=4usize {
            assert!(norms[m] > 0.0);
            for n in 0..m {
                let overlap = inner(m, n) / (norms[m] * norms[n]);
                assert!(overlap.abs() <= 1e-8, "<{m}|{n}> = {overlap}");
            }
        }
    }

    #[test]
    fn weight_integral_reproduces_sphere_volume() {
        let r0 = 2.0f64;
        for d in [0.5, 1.0, 1.5] {
            let got = 2.0 * (0.5 * sigma(d).unwrap()) * weighted_halfline(|_| 1.0, d, r0);
            let expect = PI.powf(d / 2.0) * r0.powf(d) / gamma(1.0 + d / 2.0).unwrap();
            assert_relative_eq!(got, expect, max_relative = 1e-8);
        }
    }
}
