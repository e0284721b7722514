//! Symmetric q-calculus and one-sided Q-calculus.
//!
//! Two deformations of ordinary calculus on the line:
//!
//! * the symmetric flavor, invariant under q -> 1/q:
//!   `[x] = (q^x - q^-x)/(q - q^-1)`, derivative
//!   `(f(qx) - f(x/q)) / ((q - 1/q) x)`;
//! * the one-sided flavor (named `big_q_*` here):
//!   `[x] = (Q^x - 1)/(Q - 1)`, derivative `(f(Qx) - f(x)) / ((Q - 1) x)`.
//!
//! Both reduce to the classical objects as the deformation parameter
//! approaches 1; the parameter must stay at least 1e-9 away from 1 so the
//! difference quotients keep significance.  Derivative handles evaluate to
//! NaN at x = 0, where the quotient is undefined and limits are the
//! caller's business.

use crate::error::{Error, Result};
use crate::func::FunctionHandle;
use num_complex::Complex64;

/// Reject deformation parameters outside (0, inf) or within 1e-9 of 1.
fn check_q(q: f64, what: &'static str) -> Result<()> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::domain(what, format!("parameter {q} must be > 0")));
    }
    if (q - 1.0).abs() <= 1e-9 {
        return Err(Error::domain(
            what,
            format!("parameter {q} is within 1e-9 of the classical point 1"),
        ));
    }
    Ok(())
}

/// Symmetric bracket [x] = (q^x - q^-x) / (q - q^-1).
pub fn q_bracket(x: f64, q: f64) -> Result<f64> {
    check_q(q, "q_bracket")?;
    Ok((q.powf(x) - q.powf(-x)) / (q - 1.0 / q))
}

/// One-sided bracket [x] = (Q^x - 1) / (Q - 1).
pub fn big_q_bracket(x: f64, q: f64) -> Result<f64> {
    check_q(q, "big_q_bracket")?;
    Ok((q.powf(x) - 1.0) / (q - 1.0))
}

/// Product of one-sided brackets [1][2]...[n].
fn big_q_factorial(n: u32, q: f64) -> Result<f64> {
    let mut acc = 1.0;
    for k in 1..=n {
        acc *= big_q_bracket(k as f64, q)?;
    }
    Ok(acc)
}

/// Symmetric derivative handle: x -> (f(qx) - f(x/q)) / ((q - 1/q) x).
pub fn q_derivative(f: &FunctionHandle, q: f64) -> Result<FunctionHandle> {
    check_q(q, "q_derivative")?;
    let inner = f.clone();
    let denom_factor = q - 1.0 / q;
    let handle = FunctionHandle::new(move |x| {
        if x == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        (inner.eval(q * x) - inner.eval(x / q)) / (denom_factor * x)
    })
    .with_parity(f.parity_hint().flipped());
    Ok(scale_domain(handle, f.domain(), q.max(1.0 / q)))
}

/// One-sided derivative handle: x -> (f(Qx) - f(x)) / ((Q - 1) x).
pub fn big_q_derivative(f: &FunctionHandle, q: f64) -> Result<FunctionHandle> {
    check_q(q, "big_q_derivative")?;
    let inner = f.clone();
    let handle = FunctionHandle::new(move |x| {
        if x == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        (inner.eval(q * x) - inner.eval(x)) / ((q - 1.0) * x)
    })
    .with_parity(f.parity_hint().flipped());
    Ok(scale_domain(handle, f.domain(), q.max(1.0 / q)))
}

fn scale_domain(handle: FunctionHandle, (lo, hi): (f64, f64), m: f64) -> FunctionHandle {
    let lo = if lo.is_finite() { lo / m } else { lo };
    let hi = if hi.is_finite() { hi / m } else { hi };
    if lo < hi {
        handle.with_domain(lo, hi)
    } else {
        handle
    }
}

/// Closed form for the twice-applied symmetric derivative:
///
/// ```text
/// D_q^2 f(x) = 1/((q - 1/q) x^2) * [ f(q^2 x)/(q^2 - 1)
///              + f(x/q^2)/(1 - q^-2)
///              - f(x) (1/(q^2 - 1) + 1/(1 - q^-2)) ]
/// ```
pub fn q_derivative_nested2(f: &FunctionHandle, q: f64) -> Result<FunctionHandle> {
    check_q(q, "q_derivative_nested2")?;
    let inner = f.clone();
    let c_up = 1.0 / (q * q - 1.0);
    let c_dn = 1.0 / (1.0 - 1.0 / (q * q));
    let denom_factor = q - 1.0 / q;
    let handle = FunctionHandle::new(move |x| {
        if x == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        (inner.eval(q * q * x) * c_up + inner.eval(x / (q * q)) * c_dn
            - inner.eval(x) * (c_up + c_dn))
            / (denom_factor * x * x)
    })
    .with_parity(f.parity_hint());
    Ok(scale_domain(handle, f.domain(), (q * q).max(1.0 / (q * q))))
}

/// Largest n-fold one-sided derivative order the closed form is built for.
pub const BIG_Q_DERIVATIVE_MAX_N: u32 = 12;

/// Gaussian binomial coefficient [n over k] built from bracket factorials.
fn big_q_binomial(n: u32, k: u32, q: f64) -> Result<f64> {
    Ok(big_q_factorial(n, q)? / (big_q_factorial(k, q)? * big_q_factorial(n - k, q)?))
}

/// n-fold one-sided derivative by the single-sum closed form
///
/// ```text
/// (D_Q)^n f(x) = (Q-1)^-n Q^(-n(n-1)/2) x^-n
///                * sum_k [n over k] (-1)^k Q^(k(k-1)/2) f(Q^(n-k) x)
/// ```
pub fn big_q_derivative_n(f: &FunctionHandle, q: f64, n: u32) -> Result<FunctionHandle> {
    check_q(q, "big_q_derivative_n")?;
    if n == 0 || n > BIG_Q_DERIVATIVE_MAX_N {
        return Err(Error::domain(
            "big_q_derivative_n",
            format!("order n = {n} outside 1..={BIG_Q_DERIVATIVE_MAX_N}"),
        ));
    }
    let mut weights = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = big_q_binomial(n, k, q)? * sign * q.powi((k * (k.max(1) - 1) / 2) as i32);
        weights.push((q.powi((n - k) as i32), c));
    }
    let prefactor = (q - 1.0).powi(-(n as i32)) * q.powi(-((n * (n - 1) / 2) as i32));
    let inner = f.clone();
    let handle = FunctionHandle::new(move |x| {
        if x == 0.0 {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (scale, c) in &weights {
            acc += *c * inner.eval(scale * x);
        }
        acc * (prefactor / x.powi(n as i32))
    });
    let m = q.powi(n as i32).max(q.powi(-(n as i32)));
    Ok(scale_domain(handle, f.domain(), m))
}

/// Hard cap on series terms for the deformed exponentials.
pub const SERIES_MAX_TERMS: usize = 500;

pub(crate) fn deformed_exp_series(
    a: f64,
    z: f64,
    tol: f64,
    what: &'static str,
    bracket: impl Fn(f64) -> f64,
) -> Result<f64> {
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::domain(what, format!("tolerance {tol} must be > 0")));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 1..=SERIES_MAX_TERMS {
        term *= a * z / bracket(n as f64);
        sum += term;
        if !sum.is_finite() {
            return Err(Error::NonConvergence { what, terms: n });
        }
        if term.abs() < tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: SERIES_MAX_TERMS,
    })
}

/// Symmetric deformed exponential e_q(a z) = sum a^n z^n / [n]!.
///
/// Eigenfunction of the symmetric derivative: D_q e_q(a z) = a e_q(a z).
pub fn q_exp(a: f64, z: f64, q: f64, tol: f64) -> Result<f64> {
    check_q(q, "q_exp")?;
    deformed_exp_series(a, z, tol, "q_exp series", |n| {
        (q.powf(n) - q.powf(-n)) / (q - 1.0 / q)
    })
}

/// One-sided deformed exponential e_Q(a x) = sum a^n x^n / [n]!.
///
/// Satisfies e_Q(x) e_{1/Q}(-x) = 1 where both series converge.
pub fn big_q_exp(a: f64, x: f64, q: f64, tol: f64) -> Result<f64> {
    check_q(q, "big_q_exp")?;
    deformed_exp_series(a, x, tol, "big_q_exp series", |n| {
        (q.powf(n) - 1.0) / (q - 1.0)
    })
}

/// Relative threshold below which geometric-grid integral terms stop.
const INTEGRAL_TERM_TOL: f64 = 1e-14;
/// Consecutive small terms demanded before the tail is declared dead.
const INTEGRAL_QUIET_RUN: usize = 3;
/// Hard cap on geometric-grid integral terms.
const INTEGRAL_MAX_TERMS: usize = 200_000;

/// Symmetric-grid integral of f from 0 to a:
///
/// ```text
/// integral = a (1/q - q) * sum_n q^(2n+1) f(q^(2n+1) a),   0 < q < 1
/// ```
///
/// Parameters q > 1 are mapped to 1/q first (the grid is q <-> 1/q
/// symmetric).  Terms stop once three consecutive terms fall below 1e-14
/// of the partial sum.
pub fn q_integral(f: &FunctionHandle, a: f64, q: f64) -> Result<f64> {
    check_q(q, "q_integral")?;
    let q = if q > 1.0 { 1.0 / q } else { q };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut node = q; // q^(2n+1) for n = 0
    let q2 = q * q;
    let mut quiet = 0usize;
    for n in 0..INTEGRAL_MAX_TERMS {
        let term = node * f.eval(node * a);
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonConvergence {
                what: "q_integral geometric series",
                terms: n + 1,
            });
        }
        if term.norm() < INTEGRAL_TERM_TOL * sum.norm().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= INTEGRAL_QUIET_RUN {
                return Ok((a * (1.0 / q - q) * sum).re);
            }
        } else {
            quiet = 0;
        }
        node *= q2;
    }
    Err(Error::NonConvergence {
        what: "q_integral geometric series",
        terms: INTEGRAL_MAX_TERMS,
    })
}

/// One-sided geometric-grid integral over [0, 1]:
/// (1 - Q) * sum_k f(Q^k) Q^k, requiring 0 < Q < 1.
///
/// Integrals over [0, a] follow by the scaling
/// `integral_0^a f = a * integral_0^1 f(a t) dt` on the same grid.
pub fn big_q_integral01(f: &FunctionHandle, q: f64) -> Result<f64> {
    check_q(q, "big_q_integral01")?;
    if q >= 1.0 {
        return Err(Error::domain(
            "big_q_integral01",
            format!("Q = {q} must lie in (0, 1); map Q -> 1/Q before calling"),
        ));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut node = 1.0f64; // Q^k
    let mut quiet = 0usize;
    for k in 0..INTEGRAL_MAX_TERMS {
        let term = node * f.eval(node);
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonConvergence {
                what: "big_q_integral01 geometric series",
                terms: k + 1,
            });
        }
        if term.norm() < INTEGRAL_TERM_TOL * sum.norm().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= INTEGRAL_QUIET_RUN {
                return Ok(((1.0 - q) * sum).re);
            }
        } else {
            quiet = 0;
        }
        node *= q;
    }
    Err(Error::NonConvergence {
        what: "big_q_integral01 geometric series",
        terms: INTEGRAL_MAX_TERMS,
    })
}
