//! The symmetrized product `x ∘ y = ¼{(x+y)² − (x−y)²}` on the order-unit
//! extension, its bilinearity and zero-product classifications, and the
//! one- and two-direction subalgebras `V(u)` and `V(u, v)`.

use serde::Serialize;

use crate::error::Error;
use crate::order::OrderElement;
use crate::space::{Space, Vector};
use crate::tol::Tol;
use crate::Result;

impl Space {
    /// `(u, α) ∘ (v, β) = (αv + βu, αβ + ¼(‖u+v‖² − ‖u−v‖²))`.
    ///
    /// Commutative by symmetry of the formula and total on every space;
    /// bilinear exactly when the space is Hilbertian.
    pub fn circ(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        let np = self.norm(&(&x.v + &y.v));
        let nm = self.norm(&(&x.v - &y.v));
        OrderElement::new(
            y.v.scale(x.alpha).add_scaled(y.alpha, &x.v),
            x.alpha * y.alpha + 0.25 * (np * np - nm * nm),
        )
    }

    /// Residual of the distributivity instance
    /// `(2u+v, 0) ∘ (v, 0) = 2(u, 0) ∘ (v, 0) + (v, 0) ∘ (v, 0)`,
    /// together with the parallelogram defect it reduces to: the residual
    /// lands entirely in the scalar slot and equals half the parallelogram
    /// defect in magnitude.
    pub fn bilinearity_defect(&self, u: &Vector, v: &Vector) -> BilinearityDefect {
        let xu = OrderElement::new(u.clone(), 0.0);
        let xv = OrderElement::new(v.clone(), 0.0);
        let stretched = OrderElement::new(u.scale(2.0).add_scaled(1.0, v), 0.0);
        let lhs = self.circ(&stretched, &xv);
        let rhs = self.circ(&xu, &xv).scale(2.0).add_scaled(1.0, &self.circ(&xv, &xv));
        BilinearityDefect {
            defect: self.order_unit_norm(&(&lhs - &rhs)),
            parallelogram_defect: self.parallelogram_defect(u, v),
        }
    }

    /// `|x| ⊥ |y|`, decided through the closed conditions
    /// `βu + αv = 0`, `‖u‖ = |α|`, `‖v‖ = |β|`. Agrees with evaluating
    /// `orthogonal(|x|, |y|)` directly; a vanishing operand is orthogonal to
    /// everything (the closed conditions characterize the nondegenerate
    /// case).
    pub fn abs_orthogonal_check(&self, x: &OrderElement, y: &OrderElement, tol: Tol) -> bool {
        let nx = self.order_unit_norm(x);
        let ny = self.order_unit_norm(y);
        if nx <= tol.eff(1.0) || ny <= tol.eff(1.0) {
            return true;
        }
        let combo = x.v.scale(y.alpha).add_scaled(x.alpha, &y.v);
        self.norm(&combo) <= tol.eff(1.0 + nx * ny)
            && (self.norm(&x.v) - x.alpha.abs()).abs() <= tol.eff(1.0 + nx)
            && (self.norm(&y.v) - y.alpha.abs()).abs() <= tol.eff(1.0 + ny)
    }

    /// Classification of a pair by its `∘`-product.
    ///
    /// A vanishing product splits along linear dependence of the vector
    /// parts: independent pairs must have `α = β = 0` and
    /// `‖u+v‖ = ‖u−v‖`, dependent pairs must satisfy `|x| ⊥ |y|`. A zero
    /// product that satisfies neither side-condition set indicates a
    /// tolerance or implementation bug and is surfaced as an error.
    pub fn zero_product_classify(
        &self,
        x: &OrderElement,
        y: &OrderElement,
        tol: Tol,
    ) -> Result<ZeroProductClass> {
        let z = self.circ(x, y);
        let nx = self.order_unit_norm(x);
        let ny = self.order_unit_norm(y);
        let scale = 1.0 + nx * ny + nx + ny;
        if self.order_unit_norm(&z) > tol.eff(scale) {
            return Ok(ZeroProductClass::NotZero);
        }
        if linearly_independent(&x.v, &y.v) {
            let np = self.norm(&(&x.v + &y.v));
            let nm = self.norm(&(&x.v - &y.v));
            let eff = tol.eff(scale);
            if x.alpha.abs() <= eff && y.alpha.abs() <= eff && (np - nm).abs() <= eff {
                Ok(ZeroProductClass::ZeroIndependent)
            } else {
                Err(Error::InconsistentZeroProduct(format!(
                    "independent pair with zero product but alpha={}, beta={}, |‖u+v‖−‖u−v‖|={}",
                    x.alpha,
                    y.alpha,
                    (np - nm).abs()
                )))
            }
        } else if self.abs_orthogonal_check(x, y, tol) {
            Ok(ZeroProductClass::ZeroDependentOrthogonal)
        } else {
            Err(Error::InconsistentZeroProduct(
                "dependent pair with zero product but |x| not orthogonal to |y|".into(),
            ))
        }
    }
}

/// Verdict of [`Space::zero_product_classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroProductClass {
    NotZero,
    ZeroIndependent,
    ZeroDependentOrthogonal,
}

/// Residual pair reported by [`Space::bilinearity_defect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearityDefect {
    pub defect: f64,
    pub parallelogram_defect: f64,
}

/// Rank test for a pair of coordinate vectors: the 2×n matrix with rows
/// `u, v` has full rank iff its smaller singular value is non-negligible
/// against the larger.
fn linearly_independent(u: &Vector, v: &Vector) -> bool {
    let a = u.dot(u);
    let b = u.dot(v);
    let c = v.dot(v);
    let disc = ((a - c).powi(2) + 4.0 * b * b).sqrt();
    let s_max = (0.5 * (a + c + disc)).max(0.0).sqrt();
    let s_min = (0.5 * (a + c - disc)).max(0.0).sqrt();
    s_max > 0.0 && s_min > 1e-8 * s_max
}

/// A Jordan product together with the norm it is measured in. Provides the
/// defect meters shared by the raw product and the subalgebras.
pub trait JordanAlgebra {
    type Element: Clone;

    fn product(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn algebra_norm(&self, x: &Self::Element) -> f64;
    /// `x + k·y`.
    fn combine(&self, x: &Self::Element, k: f64, y: &Self::Element) -> Self::Element;
    fn unity(&self) -> Self::Element;

    fn square_of(&self, x: &Self::Element) -> Self::Element {
        self.product(x, x)
    }

    /// `‖x ∘ (y ∘ x²) − (x ∘ y) ∘ x²‖`.
    fn jordan_identity_defect(&self, x: &Self::Element, y: &Self::Element) -> f64 {
        let x2 = self.square_of(x);
        let lhs = self.product(x, &self.product(y, &x2));
        let rhs = self.product(&self.product(x, y), &x2);
        self.algebra_norm(&self.combine(&lhs, -1.0, &rhs))
    }

    /// `‖x² ∘ x² − x ∘ (x ∘ x²)‖`.
    fn power_associativity_defect(&self, x: &Self::Element) -> f64 {
        let x2 = self.square_of(x);
        let lhs = self.product(&x2, &x2);
        let rhs = self.product(x, &self.product(x, &x2));
        self.algebra_norm(&self.combine(&lhs, -1.0, &rhs))
    }

    /// `|‖x²‖ − ‖x‖²|`.
    fn jb_norm_defect(&self, x: &Self::Element) -> f64 {
        let n = self.algebra_norm(x);
        (self.algebra_norm(&self.square_of(x)) - n * n).abs()
    }
}

/// The raw `∘` on the full extension.
impl JordanAlgebra for Space {
    type Element = OrderElement;

    fn product(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        self.circ(x, y)
    }

    fn algebra_norm(&self, x: &OrderElement) -> f64 {
        self.order_unit_norm(x)
    }

    fn combine(&self, x: &OrderElement, k: f64, y: &OrderElement) -> OrderElement {
        x.add_scaled(k, y)
    }

    fn unity(&self) -> OrderElement {
        self.order_unit()
    }
}

/// Element `(a·u, b)` of the line algebra `V(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VuElement {
    pub a: f64,
    pub b: f64,
}

impl VuElement {
    pub fn new(a: f64, b: f64) -> Self {
        VuElement { a, b }
    }
}

/// The span of one unit direction and the order unit. `∘` restricts to the
/// associative, commutative product `(a,b)(c,d) = (ad + bc, ac + bd)`, and
/// the order-unit norm restricts to `|a| + |b|`.
#[derive(Debug, Clone)]
pub struct VuAlgebra {
    space: Space,
    u: Vector,
}

impl VuAlgebra {
    pub fn new(space: Space, u: Vector, tol: Tol) -> Result<Self> {
        let n = space.norm(&u);
        if (n - 1.0).abs() > tol.eff(1.0) {
            return Err(Error::InvalidFrame(format!("direction must be a unit vector, ‖u‖ = {n}")));
        }
        Ok(VuAlgebra { space, u })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn direction(&self) -> &Vector {
        &self.u
    }

    /// The element of the ambient extension this represents.
    pub fn embed(&self, x: VuElement) -> OrderElement {
        OrderElement::new(self.u.scale(x.a), x.b)
    }

    /// Unique positive square root within `V(u)`: positivity means
    /// `|a| ≤ b`, and the root is `(a/√(2(b+d)), √((b+d)/2))` with
    /// `d = √(b² − a²)`.
    pub fn sqrt(&self, x: VuElement) -> Result<VuElement> {
        let tol = Tol::default();
        if x.a.abs() > x.b + tol.eff(1.0 + x.b.abs()) {
            return Err(Error::NotPositive);
        }
        let d = ((x.b - x.a.abs()).max(0.0) * (x.b + x.a.abs())).sqrt();
        let denom = x.b + d;
        if denom <= 0.0 {
            return Ok(VuElement::new(0.0, 0.0));
        }
        Ok(VuElement::new(x.a / (2.0 * denom).sqrt(), (denom / 2.0).sqrt()))
    }
}

impl JordanAlgebra for VuAlgebra {
    type Element = VuElement;

    fn product(&self, x: &VuElement, y: &VuElement) -> VuElement {
        VuElement::new(x.a * y.b + x.b * y.a, x.a * y.a + x.b * y.b)
    }

    fn algebra_norm(&self, x: &VuElement) -> f64 {
        x.a.abs() + x.b.abs()
    }

    fn combine(&self, x: &VuElement, k: f64, y: &VuElement) -> VuElement {
        VuElement::new(x.a + k * y.a, x.b + k * y.b)
    }

    fn unity(&self) -> VuElement {
        VuElement::new(0.0, 1.0)
    }
}

/// Element `(a₁·u + a₂·v, b)` of the plane algebra `V(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VuvElement {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
}

impl VuvElement {
    pub fn new(a1: f64, a2: f64, b: f64) -> Self {
        VuvElement { a1, a2, b }
    }
}

/// The span of two unit directions with `u ⊥₂ v`, plus the order unit.
///
/// The Pythagorean relation collapses the norm terms of `∘` into
/// `(a₁,a₂,b)(c₁,c₂,d) = ((a₁d + bc₁), (a₂d + bc₂), a₁c₁ + a₂c₂ + bd)`:
/// a commutative, non-associative Jordan product. The restricted order-unit
/// norm is `√(a₁² + a₂²) + |b|`. The ⊥₂ hypothesis is load-bearing, so the
/// constructor verifies it on a grid and caches the certificate defect.
#[derive(Debug, Clone)]
pub struct VuvAlgebra {
    space: Space,
    u: Vector,
    v: Vector,
    perp2_certificate: f64,
}

impl VuvAlgebra {
    pub fn new(space: Space, u: Vector, v: Vector, k_grid: &[f64], tol: Tol) -> Result<Self> {
        for (name, w) in [("u", &u), ("v", &v)] {
            let n = space.norm(w);
            if (n - 1.0).abs() > tol.eff(1.0) {
                return Err(Error::InvalidFrame(format!("‖{name}‖ = {n}, expected 1")));
            }
        }
        let (ok, defect) = space.perp2_check(&u, &v, k_grid, tol);
        if !ok {
            return Err(Error::InvalidFrame(format!(
                "directions are not ⊥₂ on the grid: defect {defect}"
            )));
        }
        Ok(VuvAlgebra { space, u, v, perp2_certificate: defect })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn directions(&self) -> (&Vector, &Vector) {
        (&self.u, &self.v)
    }

    /// Worst ⊥₂ defect observed when the frame was certified.
    pub fn perp2_certificate(&self) -> f64 {
        self.perp2_certificate
    }

    pub fn embed(&self, x: VuvElement) -> OrderElement {
        OrderElement::new(self.u.scale(x.a1).add_scaled(x.a2, &self.v), x.b)
    }
}

impl JordanAlgebra for VuvAlgebra {
    type Element = VuvElement;

    fn product(&self, x: &VuvElement, y: &VuvElement) -> VuvElement {
        VuvElement::new(
            x.a1 * y.b + x.b * y.a1,
            x.a2 * y.b + x.b * y.a2,
            x.a1 * y.a1 + x.a2 * y.a2 + x.b * y.b,
        )
    }

    fn algebra_norm(&self, x: &VuvElement) -> f64 {
        x.a1.hypot(x.a2) + x.b.abs()
    }

    fn combine(&self, x: &VuvElement, k: f64, y: &VuvElement) -> VuvElement {
        VuvElement::new(x.a1 + k * y.a1, x.a2 + k * y.a2, x.b + k * y.b)
    }

    fn unity(&self) -> VuvElement {
        VuvElement::new(0.0, 0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DetRng;
    use crate::search::{default_k_grid, l42_example_pair, l43_example_pair};

    fn l2_2() -> Space {
        Space::lp(2.0, 2).unwrap()
    }

    fn el(space: &Space, coords: &[f64], alpha: f64) -> OrderElement {
        space.element(coords, alpha).unwrap()
    }

    #[test]
    fn circ_unit_and_commutativity() {
        let s = Space::lp(3.0, 3).unwrap();
        let e = s.order_unit();
        let root = DetRng::new(2);
        for i in 0..100 {
            let mut rng = root.fork(i);
            let x = OrderElement::new(Vector::new(rng.coords(3, 2.0)), rng.range(-2.0, 2.0));
            let y = OrderElement::new(Vector::new(rng.coords(3, 2.0)), rng.range(-2.0, 2.0));
            assert_eq!(s.circ(&x, &e), x); // exact
            assert_eq!(s.circ(&x, &y), s.circ(&y, &x)); // exact
        }
    }

    #[test]
    fn circ_zero_products() {
        let s = l2_2();
        let z = s.circ(&el(&s, &[1.0, 0.0], 0.0), &el(&s, &[0.0, 1.0], 0.0));
        assert!(s.order_unit_norm(&z) < 1e-15);

        let (l42, u, v) = l42_example_pair();
        let z = l42.circ(&OrderElement::new(u, 0.0), &OrderElement::new(v, 0.0));
        assert!(l42.order_unit_norm(&z) < 1e-12, "{z:?}");
    }

    #[test]
    fn circ_equals_square_on_diagonal() {
        let s = Space::lp(4.0, 3).unwrap();
        let root = DetRng::new(4);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let x = OrderElement::new(Vector::new(rng.coords(3, 2.0)), rng.range(-2.0, 2.0));
            let a = s.circ(&x, &x);
            let b = s.square(&x);
            assert!(s.order_unit_norm(&(&a - &b)) <= 1e-12 * (1.0 + s.order_unit_norm(&b)));
        }
    }

    #[test]
    fn circ_matches_spin_factor_product_on_hilbert() {
        let s = Space::hilbert(3).unwrap();
        let root = DetRng::new(6);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let x = OrderElement::new(Vector::new(rng.coords(3, 2.0)), rng.range(-2.0, 2.0));
            let y = OrderElement::new(Vector::new(rng.coords(3, 2.0)), rng.range(-2.0, 2.0));
            let got = s.circ(&x, &y);
            let want = OrderElement::new(
                y.v.scale(x.alpha).add_scaled(y.alpha, &x.v),
                x.alpha * y.alpha + s.try_inner(&x.v, &y.v).unwrap(),
            );
            assert!(s.order_unit_norm(&(&got - &want)) <= 1e-10 * (1.0 + s.order_unit_norm(&want)));
        }
    }

    #[test]
    fn bilinearity_defect_examples() {
        let s2 = Space::lp(2.0, 3).unwrap();
        let root = DetRng::new(9);
        for i in 0..100 {
            let mut rng = root.fork(i);
            let u = Vector::new(rng.coords(3, 1.0));
            let v = Vector::new(rng.coords(3, 1.0));
            let d = s2.bilinearity_defect(&u, &v);
            assert!(d.defect <= 1e-12);
        }

        let s4 = Space::lp(4.0, 2).unwrap();
        let d = s4.bilinearity_defect(&Vector::basis(2, 0), &Vector::basis(2, 1));
        // scalar-slot residual |√2 − 2|, i.e. half the parallelogram defect
        assert!((d.defect - (2.0 - 2.0f64.sqrt())).abs() < 1e-12);
        assert!((d.defect - 0.5 * d.parallelogram_defect.abs()).abs() < 1e-12);

        let z = Vector::zeros(2);
        assert_eq!(s4.bilinearity_defect(&z, &Vector::basis(2, 1)).defect, 0.0);
    }

    #[test]
    fn bilinearity_defect_is_half_parallelogram() {
        let s = Space::lp(1.5, 2).unwrap();
        let root = DetRng::new(14);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let u = Vector::new(rng.coords(2, 1.0));
            let v = Vector::new(rng.coords(2, 1.0));
            let d = s.bilinearity_defect(&u, &v);
            assert!(
                (d.defect - 0.5 * d.parallelogram_defect.abs()).abs()
                    <= 1e-10 * (1.0 + d.defect),
                "{d:?}"
            );
        }
    }

    #[test]
    fn abs_orthogonal_examples() {
        let s = l2_2();
        let tol = Tol::default();
        assert!(s.abs_orthogonal_check(&el(&s, &[0.5, 0.0], 0.5), &el(&s, &[-1.0, 0.0], 1.0), tol));
        // sign-insensitive under negating whole elements
        assert!(s.abs_orthogonal_check(
            &el(&s, &[-0.5, 0.0], -0.5),
            &el(&s, &[-1.0, 0.0], 1.0),
            tol
        ));
        assert!(s.abs_orthogonal_check(
            &el(&s, &[0.5, 0.0], 0.5),
            &el(&s, &[1.0, 0.0], -1.0),
            tol
        ));
        // flipping alpha alone breaks the linear condition βu + αv = 0
        assert!(!s.abs_orthogonal_check(
            &el(&s, &[0.5, 0.0], -0.5),
            &el(&s, &[-1.0, 0.0], 1.0),
            tol
        ));
        assert!(!s.abs_orthogonal_check(&el(&s, &[1.0, 0.0], 0.0), &el(&s, &[0.0, 1.0], 0.0), tol));
        // a vanishing operand is orthogonal to everything
        assert!(s.abs_orthogonal_check(&OrderElement::zero(2), &el(&s, &[0.0, 0.0], 2.0), tol));
        assert!(s.abs_orthogonal_check(&OrderElement::zero(2), &el(&s, &[0.3, 0.1], -1.0), tol));
        assert_eq!(
            s.zero_product_classify(&OrderElement::zero(2), &el(&s, &[0.0, 0.0], 2.0), tol)
                .unwrap(),
            ZeroProductClass::ZeroDependentOrthogonal
        );
    }

    #[test]
    fn abs_orthogonal_agrees_with_direct_route() {
        let s = Space::lp(3.0, 2).unwrap();
        let tol = Tol::default();
        let root = DetRng::new(23);
        let mut hits = 0;
        for i in 0..400 {
            let mut rng = root.fork(i);
            // half the samples from the aligned family that is truly
            // abs-orthogonal, half generic
            let (x, y) = if i % 2 == 0 {
                let u0 = s.normalize(&Vector::new(rng.coords(2, 1.0))).unwrap();
                let (a, b) = (rng.range(-2.0, 2.0), rng.range(0.1, 2.0));
                (
                    OrderElement::new(u0.scale(a), a),
                    OrderElement::new(u0.scale(b), -b * a.signum()),
                )
            } else {
                (
                    OrderElement::new(Vector::new(rng.coords(2, 1.0)), rng.range(-1.0, 1.0)),
                    OrderElement::new(Vector::new(rng.coords(2, 1.0)), rng.range(-1.0, 1.0)),
                )
            };
            let via_conditions = s.abs_orthogonal_check(&x, &y, tol);
            let direct = s.orthogonal(&s.abs_element(&x), &s.abs_element(&y), tol);
            assert_eq!(via_conditions, direct, "x={x:?} y={y:?}");
            hits += via_conditions as u32;
        }
        assert!(hits > 100, "aligned family should register as orthogonal");
    }

    #[test]
    fn zero_product_classification_examples() {
        let tol = Tol::default();
        let (l42, u, v) = l42_example_pair();
        let x = OrderElement::new(u, 0.0);
        let y = OrderElement::new(v, 0.0);
        assert_eq!(
            l42.zero_product_classify(&x, &y, tol).unwrap(),
            ZeroProductClass::ZeroIndependent
        );

        let s = l2_2();
        assert_eq!(
            s.zero_product_classify(&el(&s, &[0.5, 0.0], 0.5), &el(&s, &[-1.0, 0.0], 1.0), tol)
                .unwrap(),
            ZeroProductClass::ZeroDependentOrthogonal
        );
        assert_eq!(
            s.zero_product_classify(&s.order_unit(), &s.order_unit(), tol).unwrap(),
            ZeroProductClass::NotZero
        );
    }

    #[test]
    fn zero_product_consistency_on_random_pairs() {
        let tol = Tol::default();
        for space in [Space::lp(2.0, 2).unwrap(), Space::lp(4.0, 2).unwrap(), Space::h1()] {
            let root = DetRng::new(31);
            for i in 0..1000 {
                let mut rng = root.fork(i);
                let dim = space.dim();
                let x = OrderElement::new(Vector::new(rng.coords(dim, 1.0)), rng.range(-1.0, 1.0));
                let y = OrderElement::new(Vector::new(rng.coords(dim, 1.0)), rng.range(-1.0, 1.0));
                space.zero_product_classify(&x, &y, tol).unwrap();
            }
        }
    }

    #[test]
    fn dependent_orthogonal_pairs_stay_zero_under_scaling() {
        let s = l2_2();
        let x = el(&s, &[0.5, 0.0], 0.5);
        let y = el(&s, &[-1.0, 0.0], 1.0);
        for k in [-3.0, -1.0, 0.5, 2.0, 10.0] {
            for l in [-2.0, 0.25, 1.0, 5.0] {
                let z = s.circ(&x.scale(k), &y.scale(l));
                assert!(s.order_unit_norm(&z) <= 1e-12 * (1.0 + k.abs() * l.abs()));
            }
        }
    }

    #[test]
    fn independent_pair_scaling_vanishes_only_on_diagonal() {
        // for the quartic example pair, k·x ∘ l·y = 0 iff |k| = |l| (or a
        // factor is zero)
        let (l42, u, v) = l42_example_pair();
        let x = OrderElement::new(u, 0.0);
        let y = OrderElement::new(v, 0.0);
        let grid: Vec<f64> = (-4..=4).map(|j| 2.0f64.powi(j)).collect();
        for &k in &grid {
            for &l in &grid {
                for (sk, sl) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0)] {
                    let z = l42.circ(&x.scale(sk * k), &y.scale(sl * l));
                    let zero = l42.order_unit_norm(&z) <= 1e-9 * (1.0 + k * k + l * l);
                    assert_eq!(zero, k == l, "k={k} l={l} sk={sk} sl={sl}");
                }
            }
        }
    }

    #[test]
    fn vu_product_examples() {
        let alg = VuAlgebra::new(l2_2(), Vector::basis(2, 0), Tol::default()).unwrap();
        let x = VuElement::new(1.0, 2.0);
        assert_eq!(alg.product(&x, &alg.unity()), x);
        assert_eq!(
            alg.product(&VuElement::new(1.0, 0.0), &VuElement::new(1.0, 0.0)),
            VuElement::new(0.0, 1.0)
        );
        assert_eq!(
            alg.product(&VuElement::new(1.0, 2.0), &VuElement::new(3.0, 4.0)),
            VuElement::new(10.0, 11.0)
        );
    }

    #[test]
    fn vu_algebra_is_associative_and_jb() {
        let alg = VuAlgebra::new(Space::lp(4.0, 2).unwrap(), Vector::basis(2, 1), Tol::default())
            .unwrap();
        let root = DetRng::new(41);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let x = VuElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let y = VuElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let z = VuElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let assoc = alg.combine(
                &alg.product(&alg.product(&x, &y), &z),
                -1.0,
                &alg.product(&x, &alg.product(&y, &z)),
            );
            assert!(alg.algebra_norm(&assoc) <= 1e-12 * (1.0 + alg.algebra_norm(&x)));
            assert!(alg.jordan_identity_defect(&x, &y) <= 1e-10 * (1.0 + alg.algebra_norm(&x).powi(4)));
            assert!(alg.power_associativity_defect(&x) <= 1e-10 * (1.0 + alg.algebra_norm(&x).powi(4)));
            assert!(alg.jb_norm_defect(&x) <= 1e-10 * (1.0 + alg.algebra_norm(&x).powi(2)));
        }
        // ‖(1,1)‖ = 2 and (1,1)² = (2,2) has norm 4
        let x = VuElement::new(1.0, 1.0);
        assert_eq!(alg.algebra_norm(&x), 2.0);
        assert_eq!(alg.square_of(&x), VuElement::new(2.0, 2.0));
        assert_eq!(alg.jb_norm_defect(&x), 0.0);
        assert_eq!(alg.jb_norm_defect(&alg.unity()), 0.0);
    }

    #[test]
    fn vu_embedding_is_a_homomorphism() {
        let s = Space::lp(3.0, 3).unwrap();
        let u = s.normalize(&Vector::new(vec![1.0, -2.0, 0.5])).unwrap();
        let alg = VuAlgebra::new(s.clone(), u, Tol::default()).unwrap();
        let root = DetRng::new(43);
        for i in 0..100 {
            let mut rng = root.fork(i);
            let x = VuElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let y = VuElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let lhs = s.circ(&alg.embed(x), &alg.embed(y));
            let rhs = alg.embed(alg.product(&x, &y));
            assert!(s.order_unit_norm(&(&lhs - &rhs)) <= 1e-12 * (1.0 + s.order_unit_norm(&rhs)));
            assert!((s.order_unit_norm(&alg.embed(x)) - alg.algebra_norm(&x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn vu_sqrt_examples() {
        let alg = VuAlgebra::new(l2_2(), Vector::basis(2, 0), Tol::default()).unwrap();
        assert_eq!(alg.sqrt(VuElement::new(0.0, 4.0)).unwrap(), VuElement::new(0.0, 2.0));
        assert_eq!(alg.sqrt(alg.unity()).unwrap(), alg.unity());
        let r = alg.sqrt(VuElement::new(3.0, 5.0)).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.a - inv_sqrt2).abs() < 1e-12 && (r.b - 3.0 * inv_sqrt2).abs() < 1e-12);
        let sq = alg.square_of(&r);
        assert!((sq.a - 3.0).abs() < 1e-12 && (sq.b - 5.0).abs() < 1e-12);
        assert_eq!(alg.sqrt(VuElement::new(3.0, 1.0)), Err(Error::NotPositive));
        // negative a keeps its sign
        let r = alg.sqrt(VuElement::new(-3.0, 5.0)).unwrap();
        assert!(r.a < 0.0);
        let sq = alg.square_of(&r);
        assert!((sq.a + 3.0).abs() < 1e-12 && (sq.b - 5.0).abs() < 1e-12);
    }

    #[test]
    fn vuv_product_examples() {
        let (space, u, v) = l43_example_pair();
        let alg = VuvAlgebra::new(space, u, v, &default_k_grid(), Tol::default()).unwrap();
        assert!(alg.perp2_certificate() <= 1e-9);

        let x = VuvElement::new(0.3, -0.7, 1.1);
        assert_eq!(alg.product(&x, &alg.unity()), x);
        assert_eq!(
            alg.product(&VuvElement::new(1.0, 0.0, 0.0), &VuvElement::new(0.0, 1.0, 0.0)),
            VuvElement::new(0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn vuv_associativity_failure_witness() {
        let (space, u, v) = l43_example_pair();
        let alg = VuvAlgebra::new(space, u, v, &default_k_grid(), Tol::default()).unwrap();
        let xu = VuvElement::new(1.0, 0.0, 0.0);
        let xv = VuvElement::new(0.0, 1.0, 0.0);
        // u ∘ (v ∘ v) = u, but (u ∘ v) ∘ v = 0
        assert_eq!(alg.product(&xv, &xv), alg.unity());
        assert_eq!(alg.product(&xu, &alg.product(&xv, &xv)), xu);
        assert_eq!(alg.product(&alg.product(&xu, &xv), &xv), VuvElement::new(0.0, 0.0, 0.0));
    }

    #[test]
    fn vuv_jordan_identity_and_jb_norm() {
        let (space, u, v) = l43_example_pair();
        let alg = VuvAlgebra::new(space, u, v, &default_k_grid(), Tol::default()).unwrap();
        let root = DetRng::new(47);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let x = VuvElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let y = VuvElement::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let scale4 = 1.0 + alg.algebra_norm(&x).powi(4);
            assert!(alg.jordan_identity_defect(&x, &y) <= 1e-10 * scale4);
            assert!(alg.power_associativity_defect(&x) <= 1e-10 * scale4);
            assert!(alg.jb_norm_defect(&x) <= 1e-10 * (1.0 + alg.algebra_norm(&x).powi(2)));
        }
        // ‖(3,4,0)‖ = 5 and (3,4,0)² = (0,0,25)
        let x = VuvElement::new(3.0, 4.0, 0.0);
        assert_eq!(alg.algebra_norm(&x), 5.0);
        assert_eq!(alg.square_of(&x), VuvElement::new(0.0, 0.0, 25.0));
    }

    #[test]
    fn vuv_embedding_respects_product_within_certificate() {
        let (space, u, v) = l43_example_pair();
        let alg =
            VuvAlgebra::new(space.clone(), u, v, &default_k_grid(), Tol::default()).unwrap();
        let root = DetRng::new(53);
        for i in 0..100 {
            let mut rng = root.fork(i);
            let x = VuvElement::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
            let y = VuvElement::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
            let lhs = space.circ(&alg.embed(x), &alg.embed(y));
            let rhs = alg.embed(alg.product(&x, &y));
            assert!(space.order_unit_norm(&(&lhs - &rhs)) <= 1e-8);
        }
    }

    #[test]
    fn vuv_rejects_non_perp2_frames() {
        let s = Space::lp(4.0, 2).unwrap();
        let err = VuvAlgebra::new(
            s,
            Vector::basis(2, 0),
            Vector::basis(2, 1),
            &default_k_grid(),
            Tol::default(),
        );
        assert!(matches!(err, Err(Error::InvalidFrame(_))));
    }

    #[test]
    fn raw_circ_is_jordan_on_hilbert() {
        let s = Space::hilbert(3).unwrap();
        let root = DetRng::new(59);
        for i in 0..200 {
            let mut rng = root.fork(i);
            let x = OrderElement::new(Vector::new(rng.coords(3, 1.5)), rng.range(-1.5, 1.5));
            let y = OrderElement::new(Vector::new(rng.coords(3, 1.5)), rng.range(-1.5, 1.5));
            let scale4 = 1.0 + s.order_unit_norm(&x).powi(4);
            assert!(s.jordan_identity_defect(&x, &y) <= 1e-10 * scale4);
        }
    }
}
