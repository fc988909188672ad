//! Two-point spectral theory of the order-unit extension: spectral family,
//! decomposition, integer powers, positive square roots, and scalar
//! functional calculus.
//!
//! Every element `(v, α)` decomposes as
//! `(α − ‖v‖)·(−v/2‖v‖, ½) + (α + ‖v‖)·(v/2‖v‖, ½)`,
//! so its spectrum is the pair `α ∓ ‖v‖` and everything scalar lifts through
//! the two eigenvalues.

use serde::Serialize;

use crate::error::Error;
use crate::order::{ConeClass, OrderElement, OrderProjection};
use crate::space::Space;
use crate::tol::Tol;
use crate::Result;

/// Eigenvalues `α ∓ ‖v‖` with the order projection carrying the upper one.
///
/// When `v = 0` the projection is fixed to `e` (and both eigenvalues
/// coincide), which keeps reconstruction exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralData {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub p: OrderProjection,
}

impl SpectralData {
    /// `e − p`.
    pub fn p_complement(&self) -> OrderElement {
        &OrderElement::unit(self.p.dim()) - self.p.element()
    }

    /// `λ₋·(e − p) + λ₊·p`, which recovers the decomposed element.
    pub fn reconstruct(&self) -> OrderElement {
        self.p_complement().scale(self.lambda_minus).add_scaled(self.lambda_plus, self.p.element())
    }
}

/// The increasing, right-continuous projection family of one element. It has
/// at most two jumps: to the middle projection `(−v/2‖v‖, ½)` at `λ₋` and to
/// `e` at `λ₊`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFamily {
    lambda_minus: f64,
    lambda_plus: f64,
    middle: OrderElement,
    dim: usize,
}

impl SpectralFamily {
    pub fn breakpoints(&self) -> (f64, f64) {
        (self.lambda_minus, self.lambda_plus)
    }

    pub fn middle_projection(&self) -> &OrderElement {
        &self.middle
    }

    /// `e_λ`: `0` below `λ₋`, the middle projection on `[λ₋, λ₊)`, and `e`
    /// from `λ₊` on.
    pub fn at(&self, lambda: f64) -> OrderElement {
        if lambda < self.lambda_minus {
            OrderElement::zero(self.dim)
        } else if lambda < self.lambda_plus {
            self.middle.clone()
        } else {
            OrderElement::unit(self.dim)
        }
    }
}

impl Space {
    /// Spectral decomposition of `x`. For `v = 0` the projection is fixed to
    /// `e` with both eigenvalues `α`.
    pub fn decompose(&self, x: &OrderElement) -> SpectralData {
        let n = self.norm(&x.v);
        if n == 0.0 || !(0.5 / n).is_finite() {
            let p = OrderProjection::try_new(self, self.order_unit(), Tol::default())
                .expect("e is a projection");
            return SpectralData { lambda_minus: x.alpha, lambda_plus: x.alpha, p };
        }
        let p = OrderProjection::try_new(
            self,
            OrderElement::new(x.v.scale(0.5 / n), 0.5),
            Tol::default(),
        )
        .expect("half-sphere point is a projection");
        SpectralData { lambda_minus: x.alpha - n, lambda_plus: x.alpha + n, p }
    }

    /// The projection family `λ ↦ e_λ` of `x`.
    pub fn spectral_family(&self, x: &OrderElement) -> SpectralFamily {
        let d = self.decompose(x);
        let middle = if d.lambda_minus == d.lambda_plus {
            // scalar element: single jump straight to e
            OrderElement::zero(x.dim())
        } else {
            d.p_complement()
        };
        SpectralFamily {
            lambda_minus: d.lambda_minus,
            lambda_plus: d.lambda_plus,
            middle,
            dim: x.dim(),
        }
    }

    /// `x² = (2αv, α² + ‖v‖²)`; always in the cone.
    pub fn square(&self, x: &OrderElement) -> OrderElement {
        let n = self.norm(&x.v);
        OrderElement::new(x.v.scale(2.0 * x.alpha), x.alpha * x.alpha + n * n)
    }

    /// `f(x) = f(λ₋)·(e − p) + f(λ₊)·p`.
    pub fn apply_scalar_function(
        &self,
        x: &OrderElement,
        f: impl Fn(f64) -> f64,
    ) -> OrderElement {
        let d = self.decompose(x);
        d.p_complement().scale(f(d.lambda_minus)).add_scaled(f(d.lambda_plus), d.p.element())
    }

    /// `xⁿ` through the spectral form. See [`Space::power_binomial`] for the
    /// series route used as an independent cross-check.
    pub fn power(&self, x: &OrderElement, n: u32) -> OrderElement {
        assert!(n >= 1, "power requires n ≥ 1");
        self.apply_scalar_function(x, |t| t.powi(n as i32))
    }

    /// `xⁿ` through the binomial expansion
    /// `( Σ_{odd j} C(n,j) αⁿ⁻ʲ ‖v‖ʲ⁻¹ · v , Σ_{even j} C(n,j) αⁿ⁻ʲ ‖v‖ʲ )`.
    ///
    /// Accumulates more rounding than the spectral route for large `n`; kept
    /// as a second, algebraically independent evaluation path.
    pub fn power_binomial(&self, x: &OrderElement, n: u32) -> OrderElement {
        assert!(n >= 1, "power requires n ≥ 1");
        let nv = self.norm(&x.v);
        let mut vec_coeff = 0.0f64;
        let mut scalar = 0.0f64;
        let mut binom = 1.0f64; // C(n, 0)
        for j in 0..=n {
            let term = x.alpha.powi((n - j) as i32);
            if j % 2 == 0 {
                scalar += binom * term * nv.powi(j as i32);
            } else {
                vec_coeff += binom * term * nv.powi(j as i32 - 1);
            }
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        OrderElement::new(x.v.scale(vec_coeff), scalar)
    }

    /// Unique positive square root of a cone element:
    /// `(λv, μ)` with `λ = √s / (‖v‖√2)`, `μ = ‖v‖ / √(2s)` where
    /// `s = α − √(α² − ‖v‖²)`, or `(0, √α)` when `v = 0`.
    ///
    /// `s` is evaluated as `‖v‖² / (α + √(α² − ‖v‖²))`, which is the same
    /// quantity without the cancellation when `‖v‖ ≪ α`.
    pub fn sqrt_positive(&self, x: &OrderElement) -> Result<OrderElement> {
        match self.cone_classify(x, Tol::default()) {
            ConeClass::Zero => return Ok(OrderElement::zero(x.dim())),
            ConeClass::Positive => {}
            _ => return Err(Error::NotPositive),
        }
        let n = self.norm(&x.v);
        let alpha = x.alpha;
        if n == 0.0 {
            return Ok(OrderElement::new(x.v.clone(), alpha.max(0.0).sqrt()));
        }
        // Tolerance may admit ‖v‖ marginally above α; clamp the discriminant.
        let disc = ((alpha - n).max(0.0) * (alpha + n)).sqrt();
        let s = n * n / (alpha + disc);
        if s < f64::MIN_POSITIVE {
            // ‖v‖² underflowed against α; indistinguishable from v = 0.
            return Ok(OrderElement::new(x.v.scale(0.0), alpha.sqrt()));
        }
        let lambda = s.sqrt() / (n * std::f64::consts::SQRT_2);
        let mu = n / (2.0 * s).sqrt();
        Ok(OrderElement::new(x.v.scale(lambda), mu))
    }
}
