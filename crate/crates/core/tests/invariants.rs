//! Property tests for the norm backends, the absolute-value calculus, and
//! the spectral/product layers across all supported space kinds.

use proptest::prelude::*;

use spinx_core::jordan::JordanAlgebra;
use spinx_core::search::default_k_grid;
use spinx_core::{OrderElement, Space, Tol, Vector, VuAlgebra, VuElement};

fn space_pool() -> Vec<Space> {
    vec![
        Space::lp(1.0, 2).unwrap(),
        Space::lp(1.5, 2).unwrap(),
        Space::lp(2.0, 3).unwrap(),
        Space::lp(3.0, 2).unwrap(),
        Space::lp(4.0, 3).unwrap(),
        Space::lp(f64::INFINITY, 2).unwrap(),
        Space::hilbert(3).unwrap(),
        Space::h1(),
    ]
}

prop_compose! {
    fn arb_space()(idx in 0..8usize) -> Space {
        space_pool()[idx].clone()
    }
}

fn arb_space_and_vectors(count: usize) -> impl Strategy<Value = (Space, Vec<Vector>)> {
    arb_space().prop_flat_map(move |s| {
        let dim = s.dim();
        (
            Just(s),
            prop::collection::vec(
                prop::collection::vec(-10.0..10.0f64, dim).prop_map(Vector::new),
                count,
            ),
        )
    })
}

fn arb_space_and_elements(count: usize) -> impl Strategy<Value = (Space, Vec<OrderElement>)> {
    arb_space().prop_flat_map(move |s| {
        let dim = s.dim();
        (
            Just(s),
            prop::collection::vec(
                (prop::collection::vec(-5.0..5.0f64, dim), -5.0..5.0f64)
                    .prop_map(|(c, a)| OrderElement::new(Vector::new(c), a)),
                count,
            ),
        )
    })
}

proptest! {
    #[test]
    fn norm_homogeneity_and_triangle((space, vs) in arb_space_and_vectors(2), k in -8.0..8.0f64) {
        let (u, v) = (&vs[0], &vs[1]);
        let scale = 1.0 + space.norm(u) + space.norm(v);
        let hom = (space.norm(&u.scale(k)) - k.abs() * space.norm(u)).abs();
        prop_assert!(hom <= 1e-10 * (1.0 + k.abs()) * scale);
        let tri = space.norm(&(u + v)) - space.norm(u) - space.norm(v);
        prop_assert!(tri <= 1e-10 * scale);
        prop_assert!(space.norm(u) >= 0.0);
    }

    #[test]
    fn hilbertian_spaces_satisfy_parallelogram_and_polarization(
        idx in 0..3usize,
        cu in prop::collection::vec(-10.0..10.0f64, 3),
        cv in prop::collection::vec(-10.0..10.0f64, 3),
    ) {
        let space = [Space::hilbert(3).unwrap(), Space::lp(2.0, 3).unwrap(), Space::h1()][idx].clone();
        let dim = space.dim();
        let u = Vector::new(cu[..dim].to_vec());
        let v = Vector::new(cv[..dim].to_vec());
        let scale = 1.0 + space.norm(&u).powi(2) + space.norm(&v).powi(2);
        prop_assert!(space.parallelogram_defect(&u, &v).abs() <= 1e-10 * scale);
        let np = space.norm(&(&u + &v));
        let nm = space.norm(&(&u - &v));
        let polarized = 0.25 * (np * np - nm * nm);
        prop_assert!((space.try_inner(&u, &v).unwrap() - polarized).abs() <= 1e-10 * scale);
    }

    #[test]
    fn perp2_defect_matched_grid_symmetry((space, vs) in arb_space_and_vectors(2)) {
        // defect(u, v; k) = k² · defect(v, u; 1/k) pointwise on dyadic k
        let (u, v) = (&vs[0], &vs[1]);
        for j in [-3i32, -1, 1, 2] {
            let k = 2.0f64.powi(j);
            let d_uv = space.perp2_defect(u, v, &[k]);
            let d_vu = space.perp2_defect(v, u, &[1.0 / k]);
            let scale = 1.0 + d_uv + d_vu;
            prop_assert!((d_uv - k * k * d_vu).abs() <= 1e-9 * (1.0 + k * k) * scale);
        }
    }

    #[test]
    fn abs_value_calculus((space, xs) in arb_space_and_elements(1), k in -6.0..6.0f64) {
        let x = &xs[0];
        let tol = Tol::default();
        let a = space.abs_element(x);
        let scale = 1.0 + space.order_unit_norm(x);

        prop_assert!(space.in_cone(&a, tol));
        // idempotent and even
        prop_assert!(space.order_unit_norm(&(&space.abs_element(&a) - &a)) <= 1e-12 * scale);
        prop_assert!(space.order_unit_norm(&(&space.abs_element(&-x) - &a)) <= 1e-12 * scale);
        // positively homogeneous, 1e-12 relative
        let lhs = space.abs_element(&x.scale(k));
        let rhs = a.scale(k.abs());
        prop_assert!(
            space.order_unit_norm(&(&lhs - &rhs)) <= 1e-12 * (1.0 + k.abs()) * scale
        );
    }

    #[test]
    fn parts_split_and_are_orthogonal((space, xs) in arb_space_and_elements(1)) {
        let x = &xs[0];
        let xp = space.pos_part(x);
        let xn = space.neg_part(x);
        let tol = Tol::default();
        let scale = 1.0 + space.order_unit_norm(x);
        prop_assert!(space.in_cone(&xp, tol));
        prop_assert!(space.in_cone(&xn, tol));
        prop_assert!(space.order_unit_norm(&(&(&xp - &xn) - x)) <= 1e-12 * scale);
        let sum = &xp + &xn;
        prop_assert!(space.order_unit_norm(&(&sum - &space.abs_element(x))) <= 1e-12 * scale);
        prop_assert!(space.orthogonality_defect(&xp, &xn) <= 1e-10 * scale);
    }

    #[test]
    fn orthogonality_forces_cone_membership((space, xs) in arb_space_and_elements(2)) {
        let tol = Tol::default();
        let (x, y) = (&xs[0], &xs[1]);
        if space.orthogonal(x, y, tol) {
            prop_assert!(space.in_cone(x, tol));
            prop_assert!(space.in_cone(y, tol));
        }
        // x ⊥ e forces x = 0
        if space.orthogonal(x, &space.order_unit(), tol) {
            prop_assert!(space.order_unit_norm(x) <= 1e-6);
        }
    }

    #[test]
    fn decompose_reconstruct_round_trip((space, xs) in arb_space_and_elements(1)) {
        let x = &xs[0];
        let d = space.decompose(x);
        prop_assert!(d.lambda_minus <= d.lambda_plus);
        let scale = 1.0 + space.order_unit_norm(x);
        prop_assert!(space.order_unit_norm(&(&d.reconstruct() - x)) <= 1e-12 * scale);
        prop_assert!(space.is_order_projection(d.p.element(), Tol::default()));
    }

    #[test]
    fn circ_unit_commutative_and_square((space, xs) in arb_space_and_elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(&space.circ(x, &space.order_unit()), x);
        prop_assert_eq!(space.circ(x, y), space.circ(y, x));
        let d = &space.circ(x, x) - &space.square(x);
        let scale = 1.0 + space.order_unit_norm(x).powi(2);
        prop_assert!(space.order_unit_norm(&d) <= 1e-12 * scale);
    }

    #[test]
    fn power_agrees_with_line_algebra(
        coords in prop::collection::vec(-3.0..3.0f64, 2),
        alpha in -3.0..3.0f64,
        n in 1u32..8,
    ) {
        // independent route: embed x in the associative line algebra along
        // its own direction and multiply out
        let space = Space::lp(4.0, 2).unwrap();
        let v = Vector::new(coords);
        let nv = space.norm(&v);
        prop_assume!(nv > 1e-6);
        let x = OrderElement::new(v.clone(), alpha);
        let alg = VuAlgebra::new(space.clone(), v.scale(1.0 / nv), Tol::default()).unwrap();
        let lx = VuElement::new(nv, alpha);
        let mut acc = lx;
        for _ in 1..n {
            acc = alg.product(&acc, &lx);
        }
        let via_algebra = alg.embed(acc);
        let via_spectral = space.power(&x, n);
        let scale = 1.0 + space.order_unit_norm(&via_spectral);
        prop_assert!(
            space.order_unit_norm(&(&via_algebra - &via_spectral)) <= 1e-9 * scale,
            "n={} algebra={:?} spectral={:?}", n, via_algebra, via_spectral
        );
    }

    #[test]
    fn aligned_pairs_are_orthogonal_in_any_space(
        (space, vs) in arb_space_and_vectors(1),
        a in 0.01..4.0f64,
        b in 0.01..4.0f64,
    ) {
        let tol = Tol::default();
        let dir = &vs[0];
        prop_assume!(space.norm(dir) > 1e-6);
        let u0 = space.normalize(dir).unwrap();
        let x = OrderElement::new(u0.scale(a), a);
        let y = OrderElement::new(u0.scale(-b), b);
        prop_assert!(space.orthogonal(&x, &y, tol));
        let (p, lambda, mu) = space.orthogonal_structure(&x, &y).unwrap();
        prop_assert!((lambda - 2.0 * a).abs() <= 1e-9 * (1.0 + a));
        prop_assert!((mu - 2.0 * b).abs() <= 1e-9 * (1.0 + b));
        prop_assert!(space.is_order_projection(p.element(), tol));
    }
}

#[test]
fn probe_and_suite_verdicts_match_analytic_on_lp() {
    let tol = Tol::default();
    for p in [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY] {
        for dim in [2usize, 3] {
            let space = Space::lp(p, dim).unwrap();
            let expected = space.strictly_convex();
            let probe = space.strict_convexity_probe(200, 9, tol);
            assert_eq!(probe.all_pass(), expected, "probe p={p} dim={dim}");
            let suite = space.axiom_suite(500, 9, tol);
            assert_eq!(suite.all_pass(), expected, "suite p={p} dim={dim}");
        }
    }
}

#[test]
fn perp_inf_matches_orthogonality_for_aligned_pairs() {
    let grid = default_k_grid();
    let tol = Tol::default();
    for space in [Space::lp(2.0, 2).unwrap(), Space::lp(4.0, 2).unwrap()] {
        let u0 = space.normalize(&Vector::new(vec![0.6, -0.8])).unwrap();
        let x = OrderElement::new(u0.scale(0.7), 0.7);
        let y = OrderElement::new(u0.scale(-1.3), 1.3);
        assert!(space.orthogonal(&x, &y, tol));
        assert!(space.perp_inf_a_check(&x, &y, 6, &grid, tol).unwrap());
        // non-orthogonal cone pair fails the max identity
        let z = OrderElement::new(u0.scale(0.5), 1.0);
        assert!(!space.perp_inf_a_check(&z, &y, 6, &grid, tol).unwrap());
    }
}
