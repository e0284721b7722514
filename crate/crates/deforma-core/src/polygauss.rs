//! Exact arithmetic for functions of the form p(xi) * exp(-xi^2/2).
//!
//! Coefficients of p live in Q[D]: each is a polynomial in the dimension
//! symbol D with arbitrary-precision rational coefficients, so reflection
//! ladder algebra can be checked by exact equality rather than floating
//! tolerance.  The supported primitive operations are multiplication by
//! xi, the ordinary derivative (which maps p to p' - xi p), extraction of
//! the odd part divided by xi (exact because odd polynomials have no
//! constant term), and reflection xi -> -xi.  The deformed derivative and
//! the ladder maps are compositions of these.

use crate::error::{Error, Result};
use crate::func::{FunctionHandle, Parity};
use num::{BigRational, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

/// Convert an exact rational to f64, scaling by powers of two when the
/// parts individually overflow.
fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() || r.numer().is_zero() {
            return v;
        }
    }
    let nbits = r.numer().bits() as i64;
    let dbits = r.denom().bits() as i64;
    let shift = (nbits.min(dbits) - 64).max(0) as u64;
    let n = r.numer() >> shift;
    let d = r.denom() >> shift;
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}

/// Polynomial in the dimension symbol D with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DPoly {
    /// coeffs[j] multiplies D^j; trailing zeros are trimmed.
    coeffs: Vec<BigRational>,
}

impl DPoly {
    pub fn zero() -> DPoly {
        DPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> DPoly {
        DPoly { coeffs: vec![c] }.normalized()
    }

    pub fn from_int(c: i64) -> DPoly {
        DPoly::constant(BigRational::from_integer(c.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> DPoly {
        assert!(den != 0);
        DPoly::constant(BigRational::new(num.into(), den.into()))
    }

    /// The polynomial D - 1, the reflection coupling.
    pub fn dim_minus_one() -> DPoly {
        DPoly {
            coeffs: vec![
                BigRational::from_integer((-1).into()),
                BigRational::from_integer(1.into()),
            ],
        }
    }

    /// The deformed integer [n] = n for even n, n + D - 1 for odd n.
    pub fn deformed_int(n: u64) -> DPoly {
        if n.is_multiple_of(2) {
            DPoly::from_int(n as i64)
        } else {
            DPoly {
                coeffs: vec![
                    BigRational::from_integer(((n as i64) - 1).into()),
                    BigRational::from_integer(1.into()),
                ],
            }
        }
    }

    fn normalized(mut self) -> DPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &DPoly) -> DPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            let b = other
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        DPoly { coeffs: out }.normalized()
    }

    pub fn sub(&self, other: &DPoly) -> DPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DPoly {
        DPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &DPoly) -> DPoly {
        if self.is_zero() || other.is_zero() {
            return DPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DPoly { coeffs: out }.normalized()
    }

    pub fn scale_int(&self, k: i64) -> DPoly {
        let k = BigRational::from_integer(k.into());
        DPoly {
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
        .normalized()
    }

    /// Evaluate at a concrete dimension value.
    pub fn eval(&self, d: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * d + ratio_to_f64(c);
        }
        acc
    }

    /// Largest coefficient magnitude, for crude scale estimates.
    fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| ratio_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

/// p(xi) * exp(-xi^2/2) with p in (Q[D])[xi].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGauss {
    /// coeffs[k] multiplies xi^k; trailing zero coefficients are trimmed.
    coeffs: Vec<DPoly>,
}

impl PolyGauss {
    /// The bare Gaussian exp(-xi^2/2).
    pub fn vacuum() -> PolyGauss {
        PolyGauss {
            coeffs: vec![DPoly::from_int(1)],
        }
    }

    pub fn zero() -> PolyGauss {
        PolyGauss { coeffs: vec![] }
    }

    /// Build from explicit xi coefficients.
    pub fn from_coeffs(coeffs: Vec<DPoly>) -> PolyGauss {
        PolyGauss { coeffs }.normalized()
    }

    fn normalized(mut self) -> PolyGauss {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[DPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial part; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Parity by coefficient support: all-even indices, all-odd indices,
    /// or mixed.  The zero function counts as even.
    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if k % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (true, true) => Parity::None,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn add(&self, other: &PolyGauss) -> PolyGauss {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = other.coeffs.get(i).cloned().unwrap_or_default();
            out.push(a.add(&b));
        }
        PolyGauss { coeffs: out }.normalized()
    }

    pub fn sub(&self, other: &PolyGauss) -> PolyGauss {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = other.coeffs.get(i).cloned().unwrap_or_default();
            out.push(a.sub(&b));
        }
        PolyGauss { coeffs: out }.normalized()
    }

    /// Multiply every coefficient by a polynomial in D.
    pub fn scale(&self, s: &DPoly) -> PolyGauss {
        PolyGauss {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
        .normalized()
    }

    /// xi * p(xi) e^G.
    pub fn multiply_by_xi(&self) -> PolyGauss {
        if self.is_zero() {
            return PolyGauss::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(DPoly::zero());
        out.extend(self.coeffs.iter().cloned());
        PolyGauss { coeffs: out }.normalized()
    }

    /// Ordinary derivative of the full function:
    /// d/dxi [p e^G] = (p' - xi p) e^G.
    pub fn differentiate(&self) -> PolyGauss {
        let n = self.coeffs.len();
        let mut out = vec![DPoly::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k >= 1 {
                // p' contribution: k * c_k at power k-1.
                out[k - 1] = out[k - 1].add(&c.scale_int(k as i64));
            }
            // -xi p contribution at power k+1.
            out[k + 1] = out[k + 1].sub(c);
        }
        PolyGauss { coeffs: out }.normalized()
    }

    /// Odd-index part of p divided by xi (exact: odd parts have no
    /// constant term).
    pub fn divide_odd_part_by_xi(&self) -> PolyGauss {
        let mut out = vec![DPoly::zero(); self.coeffs.len().saturating_sub(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 1 {
                out[k - 1] = c.clone();
            }
        }
        PolyGauss { coeffs: out }.normalized()
    }

    /// Reflection xi -> -xi.
    pub fn reflect(&self) -> PolyGauss {
        PolyGauss {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { c.neg() })
                .collect(),
        }
        .normalized()
    }

    /// Deformed derivative: ordinary derivative plus the reflection term
    /// (D-1)/(2 xi) (1 - R), which on p e^G equals (D-1) * odd(p)/xi.
    pub fn deformed_derivative(&self) -> PolyGauss {
        self.differentiate()
            .add(&self.divide_odd_part_by_xi().scale(&DPoly::dim_minus_one()))
    }

    /// Unnormalized raising map: (xi - d_D) applied to p e^G.
    ///
    /// The physical raising operator carries an extra 1/sqrt(2), which is
    /// irrational and therefore left to numeric normalization.
    pub fn raise(&self) -> PolyGauss {
        self.multiply_by_xi().sub(&self.deformed_derivative())
    }

    /// Unnormalized lowering map: (xi + d_D) applied to p e^G.
    pub fn lower(&self) -> PolyGauss {
        self.multiply_by_xi().add(&self.deformed_derivative())
    }

    /// Evaluate at a point for a concrete dimension value.
    pub fn eval(&self, xi: f64, d: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * xi + c.eval(d);
        }
        acc * (-0.5 * xi * xi).exp()
    }

    /// Specialize the D symbol and wrap as a function handle carrying
    /// exact first and second derivatives.
    pub fn to_function(&self, d: f64) -> Result<FunctionHandle> {
        if !d.is_finite() {
            return Err(Error::domain("polygauss", format!("dimension {d}")));
        }
        let p0 = specialize(self, d);
        let p1 = specialize(&self.differentiate(), d);
        let p2 = specialize(&self.differentiate().differentiate(), d);
        let parity = self.parity();
        let f = move |x: f64| Complex64::new(gauss_horner(&p0, x), 0.0);
        let df = move |x: f64| Complex64::new(gauss_horner(&p1, x), 0.0);
        let d2f = move |x: f64| Complex64::new(gauss_horner(&p2, x), 0.0);
        Ok(FunctionHandle::new(f)
            .with_derivative(df)
            .with_second_derivative(d2f)
            .with_parity(parity))
    }

    /// Crude magnitude of the largest coefficient, used by tests to scale
    /// exactness assertions.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

fn specialize(p: &PolyGauss, d: f64) -> Vec<f64> {
    p.coeffs.iter().map(|c| c.eval(d)).collect()
}

fn gauss_horner(coeffs: &[f64], xi: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * xi + c;
    }
    acc * (-0.5 * xi * xi).exp()
}
