//! Randomized structural properties.

use equisurf::{
    eval_rho, h_closed, spiral2d_point, spiral2d_velocity, to_cartesian, HParams, PolarPoint,
    SurfaceFamily,
};
use proptest::prelude::*;

fn float_order(x: f64) -> i64 {
    let b = x.to_bits() as i64;
    if b < 0 {
        i64::MIN - b
    } else {
        b
    }
}

fn ulp_distance(a: f64, b: f64) -> u128 {
    (float_order(a) as i128 - float_order(b) as i128).unsigned_abs()
}

proptest! {
    #[test]
    fn cartesian_image_has_norm_rho(
        theta in -20.0f64..20.0,
        psi in -20.0f64..20.0,
        rho in 0.0f64..1e6,
    ) {
        let x = to_cartesian(PolarPoint::new(theta, psi), rho);
        prop_assert!((x.norm() - rho).abs() <= 1e-12 * rho.max(1.0));
    }

    #[test]
    fn h_closed_is_odd(
        mu in 0.01f64..2.0,
        a in 0.1f64..30.0,
        frac in -0.999f64..0.999,
    ) {
        let params = HParams::new(mu, a).unwrap();
        let psi = frac * a.atan();
        let plus = h_closed(params, psi).unwrap();
        let minus = h_closed(params, -psi).unwrap();
        prop_assert!(ulp_distance(plus, -minus) <= 4);
    }

    #[test]
    fn h_closed_bounded_by_endpoint_value(
        mu in 0.01f64..2.0,
        a in 0.1f64..30.0,
        frac in -1.0f64..1.0,
    ) {
        let params = HParams::new(mu, a).unwrap();
        let psi = frac * a.atan();
        let h = h_closed(params, psi).unwrap();
        prop_assert!(h.abs() <= params.endpoint_limit() * (1.0 + 1e-12));
    }

    #[test]
    fn self_similar_shift_law(
        mu in -1.0f64..1.0,
        b in -1.0f64..1.0,
        theta in 0.0f64..6.28,
        psi in -1.5f64..1.5,
        d_theta in 0.0f64..3.15,
    ) {
        // Structural form of the functional equation; the 4-ulp version at
        // the figure parameters lives in the acceptance suite.
        let family = SurfaceFamily::self_similar(1.0, mu, b).unwrap();
        let here = eval_rho(&family, PolarPoint::new(theta, psi)).unwrap();
        let there = eval_rho(&family, PolarPoint::new(theta + d_theta, psi)).unwrap();
        let expected = (mu * d_theta).exp() * here;
        prop_assert!((there - expected).abs() <= 1e-13 * expected.abs());
    }

    #[test]
    fn spiral_cotangent_is_k(
        k in -3.0f64..3.0,
        r0 in 0.01f64..100.0,
        theta in -12.6f64..12.6,
    ) {
        let (px, py) = spiral2d_point(r0, k, theta);
        let (vx, vy) = spiral2d_velocity(r0, k, theta);
        let dot = px * vx + py * vy;
        let cross = (px * vy - py * vx).abs();
        prop_assert!((dot / cross - k).abs() < 1e-9);
    }

    #[test]
    fn sphere_rho_is_radius_everywhere(
        radius in 0.001f64..1e6,
        theta in -20.0f64..20.0,
        psi in -20.0f64..20.0,
    ) {
        let family = SurfaceFamily::sphere(radius).unwrap();
        prop_assert_eq!(eval_rho(&family, PolarPoint::new(theta, psi)).unwrap(), radius);
    }
}
