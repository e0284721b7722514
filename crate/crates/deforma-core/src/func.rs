//! Black-box function values with optional analytic derivatives.
//!
//! Operators in this crate act on functions of one real variable with
//! complex values.  A [`FunctionHandle`] wraps the evaluator together with
//! a domain interval, a parity hint, and (when the source representation
//! provides them) analytic first and second derivatives.  Derivative
//! requests fall back to 4th-order central differences when no analytic
//! closure is attached.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Parity of a function about the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// Parity after one differentiation or one multiplication by the
    /// coordinate.
    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        }
    }

    /// Sign the function picks up under reflection, if parity-pure.
    pub fn sign(self) -> Option<f64> {
        match self {
            Parity::Even => Some(1.0),
            Parity::Odd => Some(-1.0),
            Parity::None => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
            Parity::None => write!(f, "none"),
        }
    }
}

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Default step for finite-difference derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// A function of one real variable with complex values.
#[derive(Clone)]
pub struct FunctionHandle {
    eval: EvalFn,
    deriv: Option<EvalFn>,
    deriv2: Option<EvalFn>,
    domain: (f64, f64),
    parity: Parity,
    fd_step: f64,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("domain", &self.domain)
            .field("parity", &self.parity)
            .field("analytic_deriv", &self.deriv.is_some())
            .field("analytic_deriv2", &self.deriv2.is_some())
            .finish()
    }
}

impl FunctionHandle {
    /// Wrap a complex-valued evaluator.  Domain defaults to the whole line
    /// and parity to [`Parity::None`].
    pub fn new(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        FunctionHandle {
            eval: Arc::new(eval),
            deriv: None,
            deriv2: None,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            parity: Parity::None,
            fd_step: DEFAULT_FD_STEP,
        }
    }

    /// Wrap a real-valued evaluator.
    pub fn from_real(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FunctionHandle::new(move |x| Complex64::new(eval(x), 0.0))
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo < hi, "domain must be a nonempty interval");
        self.domain = (lo, hi);
        self
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Attach an analytic first derivative.
    pub fn with_derivative(
        mut self,
        deriv: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.deriv = Some(Arc::new(deriv));
        self
    }

    /// Attach an analytic second derivative.
    pub fn with_second_derivative(
        mut self,
        deriv2: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.deriv2 = Some(Arc::new(deriv2));
        self
    }

    /// Override the finite-difference step used when no analytic
    /// derivative is attached.
    pub fn with_fd_step(mut self, h: f64) -> Self {
        assert!(h > 0.0 && h.is_finite());
        self.fd_step = h;
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn parity_hint(&self) -> Parity {
        self.parity
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }

    /// Real part of the value; used by operators defined on real data.
    pub fn eval_real(&self, x: f64) -> f64 {
        (self.eval)(x).re
    }

    /// First derivative: analytic closure when attached, otherwise the
    /// 4th-order central stencil
    /// (f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)) / (12 h).
    pub fn derivative_at(&self, x: f64) -> Complex64 {
        if let Some(d) = &self.deriv {
            return d(x);
        }
        let h = self.fd_step;
        (self.eval(x - 2.0 * h) - self.eval(x + 2.0 * h)
            + 8.0 * (self.eval(x + h) - self.eval(x - h)))
            / (12.0 * h)
    }

    /// Second derivative: analytic closure when attached, otherwise the
    /// 4th-order central stencil
    /// (-f(x-2h) + 16 f(x-h) - 30 f(x) + 16 f(x+h) - f(x+2h)) / (12 h^2).
    pub fn second_derivative_at(&self, x: f64) -> Complex64 {
        if let Some(d2) = &self.deriv2 {
            return d2(x);
        }
        let h = self.fd_step;
        (-self.eval(x - 2.0 * h) - self.eval(x + 2.0 * h)
            + 16.0 * (self.eval(x - h) + self.eval(x + h))
            - 30.0 * self.eval(x))
            / (12.0 * h * h)
    }

    /// Handle for the derivative as a function in its own right.  Analytic
    /// information is propagated one level down when available.
    pub fn derivative_handle(&self) -> FunctionHandle {
        let inner = self.clone();
        let mut out = FunctionHandle::new(move |x| inner.derivative_at(x))
            .with_parity(self.parity.flipped())
            .with_fd_step(self.fd_step);
        out.domain = self.domain;
        if let Some(d2) = &self.deriv2 {
            out.deriv = Some(d2.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fd_derivative_matches_analytic() {
        let f = FunctionHandle::from_real(|x| (-0.5 * x * x).exp());
        for x in [-1.3f64, 0.0, 0.7, 2.1] {
            let exact = -x * (-0.5 * x * x).exp();
            assert_relative_eq!(f.derivative_at(x).re, exact, epsilon = 1e-10);
            let exact2 = (x * x - 1.0) * (-0.5 * x * x).exp();
            assert_relative_eq!(
                f.second_derivative_at(x).re,
                exact2,
                epsilon = 1e-6,
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn analytic_path_is_used() {
        let f = FunctionHandle::from_real(|x| x * x * x)
            .with_derivative(|_x| Complex64::new(999.0, 0.0));
        assert_eq!(f.derivative_at(1.0).re, 999.0);
    }

    #[test]
    fn derivative_handle_flips_parity() {
        let f = FunctionHandle::from_real(|x| x * x).with_parity(Parity::Even);
        let g = f.derivative_handle();
        assert_eq!(g.parity_hint(), Parity::Odd);
        assert_relative_eq!(g.eval(1.5).re, 3.0, epsilon = 1e-9);
    }
}
