//! Reflection-carrying deformed calculus on the line.
//!
//! The deformation is controlled by a dimension-like parameter D in (0, 2);
//! D = 1 recovers ordinary calculus.  The derivative carries a literal
//! reflection term,
//!
//! ```text
//! d_D f(xi) = f'(xi) + (D-1)/(2 xi) * (f(xi) - f(-xi)),
//! ```
//!
//! which is never collapsed to a parity scalar: the implementation always
//! evaluates f at -xi.  On monomials the bracket rule d_D xi^n =
//! [n] xi^(n-1) holds with [n] = n for even n and n + D - 1 for odd n.
//!
//! The module also provides the deformed factorial and exponential, the
//! inverse of the derivative as an alternating iterative integral, ladder
//! matrices for three deformation flavors, coherent-state coefficients,
//! and exact polynomial-times-Gaussian oscillator eigenfunctions.

use crate::error::{Error, Result};
use crate::func::FunctionHandle;
use crate::polygauss::PolyGauss;
use crate::qcalc;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest factorial order before f64 overflow.
pub const D_FACTORIAL_MAX_N: u32 = 170;
/// Hard cap on iterative-integral terms.
pub const D_INTEGRAL_MAX_TERMS: usize = 30;
/// Largest exact eigenfunction order.
pub const EIGENFUNCTION_MAX_N: usize = 40;

/// Consecutive non-decreasing iterates tolerated before the iterative
/// integral reports non-decay.
const D_INTEGRAL_DECAY_SPAN: usize = 5;
/// Target node spacing for the iterative integral's grid.
const D_INTEGRAL_SPACING: f64 = 5e-5;
/// Minimum midpoint nodes per half-axis for the iterative integral.
const D_INTEGRAL_MIN_NODES: usize = 1000;

pub(crate) fn check_dim(d: f64, what: &'static str) -> Result<()> {
    if d > 0.0 && d < 2.0 {
        Ok(())
    } else {
        Err(Error::domain(
            what,
            format!("dimension parameter D = {d} outside (0, 2)"),
        ))
    }
}

/// Deformed bracket: n for even n, n + D - 1 for odd n.
pub fn d_bracket(n: u32, d: f64) -> Result<f64> {
    check_dim(d, "d_bracket")?;
    Ok(if n.is_multiple_of(2) {
        n as f64
    } else {
        n as f64 + d - 1.0
    })
}

/// Deformed factorial: the product [1][2]...[n], with the empty product 1.
pub fn d_factorial(n: u32, d: f64) -> Result<f64> {
    check_dim(d, "d_factorial")?;
    if n > D_FACTORIAL_MAX_N {
        return Err(Error::range(
            "d_factorial",
            format!("n = {n} exceeds {D_FACTORIAL_MAX_N}; the product overflows f64"),
        ));
    }
    let mut acc = 1.0;
    for k in 1..=n {
        acc *= d_bracket(k, d)?;
    }
    Ok(acc)
}

/// Deformed derivative handle:
/// xi -> f'(xi) + (D-1)/(2 xi) * (f(xi) - f(-xi)).
///
/// The reflection is evaluated literally.  The ordinary-derivative part
/// uses f's analytic derivative when present, else the 4th-order central
/// stencil at f's fd step.  Evaluation at xi = 0 yields NaN (the quotient
/// is undefined there).
pub fn d_derivative(f: &FunctionHandle, d: f64) -> Result<FunctionHandle> {
    check_dim(d, "d_derivative")?;
    let inner = f.clone();
    let c = (d - 1.0) / 2.0;
    let handle = FunctionHandle::new(move |xi| {
        if xi == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let ordinary = inner.derivative_at(xi);
        ordinary + (c / xi) * (inner.eval(xi) - inner.eval(-xi))
    })
    .with_parity(f.parity_hint().flipped());
    Ok(handle)
}

/// Deformed exponential: sum_n z^n / ([1][2]...[n]).
pub fn d_exp(d: f64, z: f64, tol: f64) -> Result<f64> {
    check_dim(d, "d_exp")?;
    qcalc::deformed_exp_series(1.0, z, tol, "d_exp series", |n| {
        if (n as u64).is_multiple_of(2) {
            n
        } else {
            n + d - 1.0
        }
    })
}

/// One iterate layer: antiderivatives from 0 on the symmetric midpoint
/// grid, plus the extrapolated values at the two outer ends.
struct Iterate {
    nodes: Vec<f64>,
    at_pos_end: f64,
    at_neg_end: f64,
}

fn antiderivative(vals: &[f64], delta: f64) -> Iterate {
    let n2 = vals.len();
    let m = n2 / 2;
    let mut g = vec![0.0; n2];
    // [0, delta/2] with the integrand linearly extrapolated to 0.
    g[m] = delta * (5.0 * vals[m] - vals[m + 1]) / 8.0;
    for j in m + 1..n2 {
        g[j] = g[j - 1] + 0.5 * delta * (vals[j - 1] + vals[j]);
    }
    g[m - 1] = -delta * (5.0 * vals[m - 1] - vals[m - 2]) / 8.0;
    for j in (0..m - 1).rev() {
        g[j] = g[j + 1] - 0.5 * delta * (vals[j + 1] + vals[j]);
    }
    let at_pos_end = g[n2 - 1] + delta * (5.0 * vals[n2 - 1] - vals[n2 - 2]) / 8.0;
    let at_neg_end = g[0] - delta * (5.0 * vals[0] - vals[1]) / 8.0;
    Iterate {
        nodes: g,
        at_pos_end,
        at_neg_end,
    }
}

/// Iterative deformed integral of F from 0 to x:
///
/// ```text
/// integral = sum_n (-1)^n I_n(x),
/// I_0 = integral of F,  I_{n+1} = integral of (D-1)/(2 xi) (1-R) I_n,
/// ```
///
/// each layer computed by trapezoid sums on a symmetric midpoint grid
/// (no node at 0), the reflection by mirrored indices.  At most `terms`
/// layers are summed, stopping early once an iterate is negligible.
/// Five consecutive non-decreasing iterate magnitudes are reported as
/// non-decay.
pub fn d_integral(f: &FunctionHandle, d: f64, x: f64, terms: usize) -> Result<f64> {
    check_dim(d, "d_integral")?;
    if terms == 0 || terms > D_INTEGRAL_MAX_TERMS {
        return Err(Error::domain(
            "d_integral",
            format!("terms = {terms} outside 1..={D_INTEGRAL_MAX_TERMS}"),
        ));
    }
    if !x.is_finite() {
        return Err(Error::domain(
            "d_integral",
            format!("x = {x} must be finite"),
        ));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ax = x.abs();
    let m = ((ax / D_INTEGRAL_SPACING).ceil() as usize).max(D_INTEGRAL_MIN_NODES);
    let delta = ax / m as f64;
    let n2 = 2 * m;
    // Midpoints -ax + (j + 1/2) delta; index 2m-1-j mirrors j about 0.
    let vals: Vec<f64> = (0..n2)
        .map(|j| f.eval_real((j as f64 + 0.5 - m as f64) * delta))
        .collect();
    let c = (d - 1.0) / 2.0;
    let mut layer = antiderivative(&vals, delta);
    let mut total = 0.0;
    let mut sign = 1.0;
    let mut prev_mag = f64::INFINITY;
    let mut flat = 0usize;
    let mut floor = f64::INFINITY;
    for _ in 0..terms {
        total += sign
            * if x > 0.0 {
                layer.at_pos_end
            } else {
                layer.at_neg_end
            };
        sign = -sign;
        let mag = layer.nodes.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        floor = floor.min(mag.max(1e-300));
        if mag <= 1e-16 * floor.max(1.0) || mag == 0.0 {
            return Ok(total);
        }
        if mag >= prev_mag {
            flat += 1;
            if flat >= D_INTEGRAL_DECAY_SPAN {
                return Err(Error::NonDecay {
                    what: "d_integral iterates",
                    span: D_INTEGRAL_DECAY_SPAN,
                });
            }
        } else {
            flat = 0;
        }
        prev_mag = mag;
        let kernel: Vec<f64> = (0..n2)
            .map(|j| {
                let xi = (j as f64 + 0.5 - m as f64) * delta;
                c / xi * (layer.nodes[j] - layer.nodes[n2 - 1 - j])
            })
            .collect();
        layer = antiderivative(&kernel, delta);
    }
    Ok(total)
}

/// Deformation flavor selecting which bracket builds a ladder matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Symmetric bracket (q^n - q^-n)/(q - q^-1).
    Q,
    /// One-sided bracket (Q^n - 1)/(Q - 1).
    BigQ,
    /// Reflection-calculus bracket: n, or n + D - 1 for odd n.
    D,
}

impl Flavor {
    /// The bracket value [n] under this flavor's deformation parameter.
    pub fn bracket(self, n: u32, parameter: f64) -> Result<f64> {
        match self {
            Flavor::Q => qcalc::q_bracket(n as f64, parameter),
            Flavor::BigQ => qcalc::big_q_bracket(n as f64, parameter),
            Flavor::D => d_bracket(n, parameter),
        }
    }
}

/// Truncated ladder-operator representation on basis indices 0..=N.
///
/// `a` carries sqrt(bracket(n)) on its (n-1, n) entries, `adag` is its
/// transpose, `number` is diag(0..=N).  The top basis state is inevitably
/// corrupted by truncation; structural identities hold on indices below
/// the cut.
#[derive(Debug, Clone)]
pub struct LadderRep {
    pub dim: usize,
    pub a: DMatrix<f64>,
    pub adag: DMatrix<f64>,
    pub number: DMatrix<f64>,
    pub flavor: Flavor,
    pub parameter: f64,
}

/// Build the truncated ladder representation for a deformation flavor.
pub fn ladder(parameter: f64, flavor: Flavor, n_max: usize) -> Result<LadderRep> {
    if n_max < 2 {
        return Err(Error::domain(
            "ladder",
            format!("truncation N = {n_max} must be at least 2"),
        ));
    }
    let dim = n_max + 1;
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..=n_max {
        a[(n - 1, n)] = flavor.bracket(n as u32, parameter)?.sqrt();
    }
    let adag = a.transpose();
    let number = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        (0..dim).map(|n| n as f64),
    ));
    Ok(LadderRep {
        dim,
        a,
        adag,
        number,
        flavor,
        parameter,
    })
}

/// Squared-magnitude threshold the last coherent coefficient must stay
/// under for the truncation to be accepted.
pub const COHERENT_TAIL_TOL: f64 = 1e-12;

/// Coefficients of a coherent state in the truncated basis:
/// c_n = alpha^n / sqrt([n]!) / sqrt(E_D(|alpha|^2)), n = 0..=N.
pub fn coherent_coeffs(alpha: Complex64, d: f64, n_max: usize) -> Result<Vec<Complex64>> {
    check_dim(d, "coherent_coeffs")?;
    let norm_sq = alpha.norm_sqr();
    let scale = 1.0 / d_exp(d, norm_sq, 1e-15)?.sqrt();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut c = Complex64::new(scale, 0.0);
    coeffs.push(c);
    for n in 1..=n_max {
        c *= alpha / d_bracket(n as u32, d)?.sqrt();
        coeffs.push(c);
    }
    let tail = coeffs[n_max].norm_sqr();
    if tail >= COHERENT_TAIL_TOL {
        return Err(Error::Truncation {
            what: "coherent_coeffs",
            detail: format!(
                "|c_N|^2 = {tail:.3e} at N = {n_max} exceeds {COHERENT_TAIL_TOL:.0e}; raise N"
            ),
        });
    }
    Ok(coeffs)
}

/// Exact oscillator eigenfunction: n raising operators applied to the
/// Gaussian vacuum, kept unnormalized so every coefficient stays rational
/// in the deformation symbol.  Applying the lowering operator returns
/// 2 [n] times the previous eigenfunction, exactly.
pub fn eigenfunction(n: usize, d: f64) -> Result<PolyGauss> {
    check_dim(d, "eigenfunction")?;
    if n > EIGENFUNCTION_MAX_N {
        return Err(Error::domain(
            "eigenfunction",
            format!("n = {n} exceeds {EIGENFUNCTION_MAX_N}"),
        ));
    }
    let mut state = PolyGauss::vacuum();
    for _ in 0..n {
        state = state.raise();
    }
    Ok(state)
}
