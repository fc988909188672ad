//! The order-unit extension of a normed space: cone, order-unit norm,
//! absolute value, orthogonality, order projections, absolute covers, and
//! the absolutely-ordered axiom suite.
//!
//! Elements are pairs `(v, α) ∈ V × ℝ`. The positive cone is
//! `{(v, α) : ‖v‖ ≤ α}`, the order unit is `e = (0, 1)`, and the order-unit
//! norm is `‖(v, α)‖ = ‖v‖ + |α|`.

use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::report::{AxiomCheck, CheckReport};
use crate::rng::DetRng;
use crate::space::{Space, Vector};
use crate::tol::Tol;
use crate::Result;

/// A pair `(v, α)` in the order-unit extension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderElement {
    pub v: Vector,
    pub alpha: f64,
}

impl OrderElement {
    pub fn new(v: Vector, alpha: f64) -> Self {
        OrderElement { v, alpha }
    }

    pub fn zero(dim: usize) -> Self {
        OrderElement { v: Vector::zeros(dim), alpha: 0.0 }
    }

    /// The order unit `e = (0, 1)`.
    pub fn unit(dim: usize) -> Self {
        OrderElement { v: Vector::zeros(dim), alpha: 1.0 }
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    pub fn scale(&self, k: f64) -> Self {
        OrderElement { v: self.v.scale(k), alpha: k * self.alpha }
    }

    pub fn add_scaled(&self, k: f64, other: &Self) -> Self {
        OrderElement {
            v: self.v.add_scaled(k, &other.v),
            alpha: self.alpha + k * other.alpha,
        }
    }
}

impl Add for &OrderElement {
    type Output = OrderElement;
    fn add(self, rhs: &OrderElement) -> OrderElement {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &OrderElement {
    type Output = OrderElement;
    fn sub(self, rhs: &OrderElement) -> OrderElement {
        self.add_scaled(-1.0, rhs)
    }
}

impl Neg for &OrderElement {
    type Output = OrderElement;
    fn neg(self) -> OrderElement {
        self.scale(-1.0)
    }
}

/// Position of an element relative to the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeClass {
    Zero,
    Positive,
    Negative,
    Neither,
}

/// An element of `{0, e} ∪ {(u, ½) : ‖u‖ = ½}`, i.e. a `p` with
/// `0 ≤ p ≤ e` and `p ⊥ (e − p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct OrderProjection(OrderElement);

impl OrderProjection {
    pub fn try_new(space: &Space, element: OrderElement, tol: Tol) -> Result<Self> {
        if space.is_order_projection(&element, tol) {
            Ok(OrderProjection(element))
        } else {
            Err(Error::NotOrderProjection)
        }
    }

    /// The complementary projection `e − p`.
    pub fn complement(&self) -> OrderProjection {
        let e = OrderElement::unit(self.0.dim());
        OrderProjection(&e - &self.0)
    }

    pub fn element(&self) -> &OrderElement {
        &self.0
    }

    pub fn into_element(self) -> OrderElement {
        self.0
    }
}

impl std::ops::Deref for OrderProjection {
    type Target = OrderElement;
    fn deref(&self) -> &OrderElement {
        &self.0
    }
}

impl Space {
    /// Validating element constructor for externally supplied data.
    pub fn element(&self, coords: &[f64], alpha: f64) -> Result<OrderElement> {
        let v = self.vector(coords)?;
        if !alpha.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(OrderElement::new(v, alpha))
    }

    /// The order unit `e` of this space's extension.
    pub fn order_unit(&self) -> OrderElement {
        OrderElement::unit(self.dim())
    }

    /// `‖(v, α)‖ = ‖v‖ + |α|`.
    pub fn order_unit_norm(&self, x: &OrderElement) -> f64 {
        self.norm(&x.v) + x.alpha.abs()
    }

    /// Three-way cone position, with `Zero` split out. Boundary ties
    /// (`‖v‖ = |α|` up to `tol` at scale `1 + ‖x‖`) classify into the cone,
    /// matching the inclusive `‖v‖ ≤ α` membership criterion.
    pub fn cone_classify(&self, x: &OrderElement, tol: Tol) -> ConeClass {
        let n = self.norm(&x.v);
        let eff = tol.eff(1.0 + n + x.alpha.abs());
        if n <= eff && x.alpha.abs() <= eff {
            ConeClass::Zero
        } else if n <= x.alpha + eff {
            ConeClass::Positive
        } else if n <= -x.alpha + eff {
            ConeClass::Negative
        } else {
            ConeClass::Neither
        }
    }

    pub fn in_cone(&self, x: &OrderElement, tol: Tol) -> bool {
        matches!(self.cone_classify(x, tol), ConeClass::Positive | ConeClass::Zero)
    }

    /// How far `x` is from the cone: `max(0, ‖v‖ − α)`.
    pub fn cone_defect(&self, x: &OrderElement) -> f64 {
        (self.norm(&x.v) - x.alpha).max(0.0)
    }

    /// The absolute value: identity on the cone, negation on its mirror, and
    /// `((α/‖v‖)·v, ‖v‖)` in between. Always lands in the cone.
    pub fn abs_element(&self, x: &OrderElement) -> OrderElement {
        match self.cone_classify(x, Tol::default()) {
            ConeClass::Zero => OrderElement::zero(x.dim()),
            ConeClass::Positive => x.clone(),
            ConeClass::Negative => -x,
            ConeClass::Neither => {
                // |α| < ‖v‖ here, so the division is safe.
                let n = self.norm(&x.v);
                OrderElement::new(x.v.scale(x.alpha / n), n)
            }
        }
    }

    /// `x⁺ = (|x| + x)/2`; in the cone, and `x⁺ − x⁻ = x`.
    pub fn pos_part(&self, x: &OrderElement) -> OrderElement {
        self.abs_element(x).add_scaled(1.0, x).scale(0.5)
    }

    /// `x⁻ = (|x| − x)/2`; in the cone, and `x⁺ + x⁻ = |x|`.
    pub fn neg_part(&self, x: &OrderElement) -> OrderElement {
        self.abs_element(x).add_scaled(-1.0, x).scale(0.5)
    }

    /// Cone order: `x ≤ y` iff `y − x` lies in the cone.
    pub fn leq(&self, x: &OrderElement, y: &OrderElement, tol: Tol) -> bool {
        self.in_cone(&(y - x), tol)
    }

    /// Componentwise closeness in the order-unit norm, at the scale of the
    /// operands.
    pub fn elements_close(&self, x: &OrderElement, y: &OrderElement, tol: Tol) -> bool {
        let scale = 1.0 + self.order_unit_norm(x).max(self.order_unit_norm(y));
        self.order_unit_norm(&(x - y)) <= tol.eff(scale)
    }

    /// Raw residual of the orthogonality identity: `‖ |x−y| − (x+y) ‖`.
    pub fn orthogonality_defect(&self, x: &OrderElement, y: &OrderElement) -> f64 {
        let lhs = self.abs_element(&(x - y));
        let rhs = x + y;
        self.order_unit_norm(&(&lhs - &rhs))
    }

    /// `x ⊥ y`, i.e. `|x − y| = x + y`. True only when both operands lie in
    /// the cone.
    pub fn orthogonal(&self, x: &OrderElement, y: &OrderElement, tol: Tol) -> bool {
        let scale = 1.0 + self.order_unit_norm(x).max(self.order_unit_norm(y));
        self.orthogonality_defect(x, y) <= tol.eff(scale)
    }

    /// The canonical form of a nonzero orthogonal pair: the unique
    /// projection `p = (u/(2‖u‖), ½)` and scalars `λ = 2α`, `μ = 2β` with
    /// `x = λp` and `y = μ(e − p)`.
    pub fn orthogonal_structure(
        &self,
        x: &OrderElement,
        y: &OrderElement,
    ) -> Result<(OrderProjection, f64, f64)> {
        let tol = Tol::default();
        let zero = OrderElement::zero(x.dim());
        if self.elements_close(x, &zero, tol) || self.elements_close(y, &zero, tol) {
            return Err(Error::ZeroElement);
        }
        if !self.orthogonal(x, y, tol) {
            return Err(Error::NotOrthogonal);
        }
        let n = self.norm(&x.v);
        if n <= tol.eff(1.0) {
            return Err(Error::NotOrthogonal);
        }
        let p = OrderProjection(OrderElement::new(x.v.scale(0.5 / n), 0.5));
        Ok((p, 2.0 * x.alpha, 2.0 * y.alpha))
    }

    /// Membership in `{0, e} ∪ {(u, ½) : ‖u‖ = ½}`.
    pub fn is_order_projection(&self, x: &OrderElement, tol: Tol) -> bool {
        let zero = OrderElement::zero(x.dim());
        let e = self.order_unit();
        if self.elements_close(x, &zero, tol) || self.elements_close(x, &e, tol) {
            return true;
        }
        let eff = tol.eff(1.0);
        (x.alpha - 0.5).abs() <= eff && (self.norm(&x.v) - 0.5).abs() <= eff
    }

    /// Smallest order projection `p` with `|x| ≤ ‖x‖·p`: a half-sphere
    /// projection when `x` sits on the cone boundary (`‖v‖ = |α|`), and `e`
    /// otherwise.
    pub fn absolute_cover(&self, x: &OrderElement) -> Result<OrderProjection> {
        let tol = Tol::default();
        let n = self.norm(&x.v);
        let onorm = n + x.alpha.abs();
        if onorm <= tol.eff(1.0) {
            return Err(Error::ZeroElement);
        }
        let eff = tol.eff(1.0 + onorm);
        if (n - x.alpha.abs()).abs() <= eff && n > eff {
            let sign = if x.alpha >= 0.0 { 1.0 } else { -1.0 };
            Ok(OrderProjection(OrderElement::new(x.v.scale(sign * 0.5 / n), 0.5)))
        } else {
            Ok(OrderProjection(self.order_unit()))
        }
    }

    /// Absolute ∞-orthogonality of two cone elements: every pair of
    /// sub-elements `0 ≤ x₁ ≤ x`, `0 ≤ y₁ ≤ y` satisfies
    /// `‖x₁ + k·y₁‖ = max(‖x₁‖, ‖k·y₁‖)` over the grid.
    ///
    /// Sub-elements are sampled as scalar multiples plus rejection-sampled
    /// cone perturbations (in a strictly convex space only the multiples
    /// survive rejection).
    pub fn perp_inf_a_check(
        &self,
        x: &OrderElement,
        y: &OrderElement,
        sub_samples: usize,
        k_grid: &[f64],
        tol: Tol,
    ) -> Result<bool> {
        if !self.in_cone(x, tol) || !self.in_cone(y, tol) {
            return Err(Error::NotPositive);
        }
        let subs_x = self.sub_elements(x, sub_samples, 0xACE1);
        let subs_y = self.sub_elements(y, sub_samples, 0xACE2);
        for x1 in &subs_x {
            let nx = self.order_unit_norm(x1);
            for y1 in &subs_y {
                let ny = self.order_unit_norm(y1);
                for &k in k_grid {
                    let combined = self.order_unit_norm(&x1.add_scaled(k, y1));
                    let expected = nx.max(k.abs() * ny);
                    if (combined - expected).abs() > tol.eff(1.0 + nx + k.abs() * ny) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Deterministic sample of the order interval `[0, x]`: uniform scalar
    /// multiples plus perturbed candidates kept only if they genuinely stay
    /// in the interval.
    fn sub_elements(&self, x: &OrderElement, count: usize, salt: u64) -> Vec<OrderElement> {
        let count = count.max(2);
        let tight = Tol::new(1e-12, 1e-12);
        let scale = self.order_unit_norm(x);
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let t = i as f64 / (count - 1) as f64;
            out.push(x.scale(t));
        }
        let root = DetRng::new(salt);
        for i in 0..count {
            let mut rng = root.fork(i as u64);
            let t = rng.next_f64();
            let delta = Vector::new(rng.coords(x.dim(), 0.4 * scale));
            let cand = OrderElement::new(
                x.v.scale(t).add_scaled(1.0, &delta),
                t * x.alpha + rng.range(-0.4, 0.4) * scale,
            );
            if self.in_cone(&cand, tight) && self.leq(&cand, x, tight) {
                out.push(cand);
            }
        }
        out
    }

    /// Randomized check of the five absolutely-ordered-space axioms.
    ///
    /// All five pass exactly when the underlying space is strictly convex;
    /// the discriminating axiom is the hereditary one (orthogonality descends
    /// to sub-elements), for which a deterministic flat-segment battery runs
    /// ahead of the random samples on the non-strictly-convex ℓ_p spaces.
    ///
    /// Samples are partitioned across worker threads with per-sample forked
    /// streams, so the report does not depend on scheduling.
    pub fn axiom_suite(&self, samples: usize, seed: u64, tol: Tol) -> CheckReport {
        const IDS: [&str; 5] = [
            "abs-fixes-cone",
            "abs-pm-in-cone",
            "abs-homogeneity",
            "orthogonal-abs-closure",
            "orthogonal-hereditary",
        ];
        let mut worst = [0.0f64; 5];
        let mut witnesses: [Option<serde_json::Value>; 5] = Default::default();

        // Flat-segment battery for the hereditary axiom.
        if let Some((u_flat, v_flat)) = self.flat_unit_pair() {
            let w0 = (&u_flat + &v_flat).scale(0.5);
            let u = OrderElement::new(-&w0, 1.0);
            let v = OrderElement::new(w0, 1.0);
            let w = OrderElement::new(u_flat.scale(0.5), 0.5);
            debug_assert!(self.orthogonal(&u, &v, tol));
            debug_assert!(self.in_cone(&w, tol) && self.leq(&w, &v, tol));
            let defect = self.orthogonality_defect(&u, &w);
            if defect > tol.eff(1.0 + self.order_unit_norm(&u)) {
                worst[4] = defect;
                witnesses[4] = Some(serde_json::json!({ "u": u, "v": v, "w": w }));
            }
        }

        let root = DetRng::new(seed);
        let per_sample: Vec<[(f64, Option<serde_json::Value>); 5]> = (0..samples)
            .into_par_iter()
            .map(|i| self.axiom_sample(&root.fork(i as u64), tol))
            .collect();

        for sample in per_sample {
            for (slot, (defect, witness)) in sample.into_iter().enumerate() {
                worst[slot] = worst[slot].max(defect);
                if witnesses[slot].is_none() {
                    if let Some(w) = witness {
                        witnesses[slot] = Some(w);
                    }
                }
            }
        }

        let axioms = IDS
            .iter()
            .zip(worst.iter().zip(witnesses))
            .map(|(id, (defect, witness))| AxiomCheck {
                id: (*id).into(),
                pass: witness.is_none(),
                witness,
                max_defect: *defect,
            })
            .collect();
        CheckReport { campaign: "axiom-suite".into(), space: self.clone(), axioms, seed }
    }

    fn axiom_sample(&self, rng: &DetRng, tol: Tol) -> [(f64, Option<serde_json::Value>); 5] {
        let dim = self.dim();
        let mut rng = rng.clone();
        let mut out: [(f64, Option<serde_json::Value>); 5] = Default::default();

        // General element, cone element (boundary every so often), scalar.
        let x_any = OrderElement::new(Vector::new(rng.coords(dim, 1.0)), rng.range(-1.5, 1.5));
        let v_cone = Vector::new(rng.coords(dim, 1.0));
        let boundary = rng.next_u64().is_multiple_of(8);
        let slack = if boundary { 0.0 } else { rng.range(0.0, 1.5) };
        let x_cone = OrderElement::new(v_cone.clone(), self.norm(&v_cone) + slack);
        let k = rng.range(-3.0, 3.0);

        // |x| = x on the cone.
        {
            let defect = self.order_unit_norm(&(&self.abs_element(&x_cone) - &x_cone));
            let scale = 1.0 + self.order_unit_norm(&x_cone);
            out[0] = witness_if(defect, tol.eff(scale), || serde_json::json!({ "x": x_cone }));
        }

        // |x| ± x in the cone.
        {
            let a = self.abs_element(&x_any);
            let defect = self
                .cone_defect(&(&a + &x_any))
                .max(self.cone_defect(&(&a - &x_any)));
            let scale = 1.0 + self.order_unit_norm(&x_any);
            out[1] = witness_if(defect, tol.eff(scale), || serde_json::json!({ "x": x_any }));
        }

        // |k·x| = |k|·|x|.
        {
            let lhs = self.abs_element(&x_any.scale(k));
            let rhs = self.abs_element(&x_any).scale(k.abs());
            let defect = self.order_unit_norm(&(&lhs - &rhs));
            let scale = 1.0 + k.abs() * self.order_unit_norm(&x_any);
            out[2] =
                witness_if(defect, tol.eff(scale), || serde_json::json!({ "x": x_any, "k": k }));
        }

        // Orthogonal pairs are aligned: u = α(u₀, 1) ⊥ β(−u₀, 1).
        let u0 = match self.normalize(&Vector::new(rng.coords(dim, 1.0))) {
            Ok(u0) => u0,
            Err(_) => Vector::basis(dim, 0),
        };
        let (a, b, c) = (rng.range(0.2, 2.0), rng.range(0.2, 2.0), rng.range(0.2, 2.0));
        let u = OrderElement::new(u0.scale(a), a);
        let v = OrderElement::new(u0.scale(-b), b);

        // u ⊥ v, u ⊥ w ⟹ u ⊥ |v ± w|.
        {
            let w = OrderElement::new(u0.scale(-c), c);
            debug_assert!(self.orthogonal(&u, &v, tol) && self.orthogonal(&u, &w, tol));
            let plus = self.abs_element(&(&v + &w));
            let minus = self.abs_element(&(&v - &w));
            let defect = self
                .orthogonality_defect(&u, &plus)
                .max(self.orthogonality_defect(&u, &minus));
            let scale = 1.0 + self.order_unit_norm(&u) + self.order_unit_norm(&v);
            out[3] = witness_if(defect, tol.eff(scale), || {
                serde_json::json!({ "u": u, "v": v, "w": w })
            });
        }

        // u ⊥ v, 0 ≤ w ≤ v ⟹ u ⊥ w.
        {
            let mut defect = 0.0f64;
            let mut bad: Option<OrderElement> = None;
            for w in self.sub_elements_random(&v, 4, &mut rng) {
                let d = self.orthogonality_defect(&u, &w);
                let scale = 1.0 + self.order_unit_norm(&u) + self.order_unit_norm(&w);
                defect = defect.max(d);
                if d > tol.eff(scale) && bad.is_none() {
                    bad = Some(w);
                }
            }
            out[4] = match bad {
                Some(w) => (defect, Some(serde_json::json!({ "u": u, "v": v, "w": w }))),
                None => (defect, None),
            };
        }
        out
    }

    fn sub_elements_random(
        &self,
        x: &OrderElement,
        tries: usize,
        rng: &mut DetRng,
    ) -> Vec<OrderElement> {
        let tight = Tol::new(1e-12, 1e-12);
        let scale = self.order_unit_norm(x);
        let mut out = vec![x.scale(rng.next_f64())];
        for _ in 0..tries {
            let t = rng.next_f64();
            let delta = Vector::new(rng.coords(x.dim(), 0.4 * scale));
            let cand = OrderElement::new(
                x.v.scale(t).add_scaled(1.0, &delta),
                t * x.alpha + rng.range(-0.4, 0.4) * scale,
            );
            if self.in_cone(&cand, tight) && self.leq(&cand, x, tight) {
                out.push(cand);
            }
        }
        out
    }

    /// A pair of unit vectors whose midpoint still has norm one, when the
    /// sphere has a flat segment we can name analytically.
    fn flat_unit_pair(&self) -> Option<(Vector, Vector)> {
        let dim = self.dim();
        if dim < 2 {
            return None;
        }
        let p = self.lp_exponent()?;
        if p == 1.0 {
            Some((Vector::basis(dim, 0), Vector::basis(dim, 1)))
        } else if p.is_infinite() {
            let ones = Vector::new(vec![1.0; dim]);
            let mut flipped = vec![1.0; dim];
            flipped[dim - 1] = -1.0;
            Some((ones, Vector::new(flipped)))
        } else {
            None
        }
    }
}

fn witness_if(
    defect: f64,
    threshold: f64,
    witness: impl FnOnce() -> serde_json::Value,
) -> (f64, Option<serde_json::Value>) {
    if defect > threshold {
        (defect, Some(witness()))
    } else {
        (defect, None)
    }
}
