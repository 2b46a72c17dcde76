mod common;

use common::definitional_fidelity;
use nalgebra::{Rotation3, Unit, Vector3};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use qubit_fanout::qstate::{
    bloch_to_density, density_to_bloch, extrapolate_to_sphere, fidelity, geodesic_distance,
    BlochVector, DensityMatrix2,
};

fn ball_vector() -> impl Strategy<Value = BlochVector> {
    (0.0f64..=1.0, -1.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(u, z, phi)| {
        let r = u.cbrt();
        let s = (1.0 - z * z).max(0.0).sqrt();
        BlochVector::new(r * s * phi.cos(), r * s * phi.sin(), r * z)
    })
}

fn sphere_vector() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(z, phi)| {
        let s = (1.0 - z * z).max(0.0).sqrt();
        BlochVector::new(s * phi.cos(), s * phi.sin(), z)
    })
}

fn nonzero_vector() -> impl Strategy<Value = BlochVector> {
    (sphere_vector(), 1e-3f64..10.0).prop_map(|(v, s)| v.scale(s))
}

fn rotate(r: &Rotation3<f64>, v: &BlochVector) -> BlochVector {
    let w = r * Vector3::new(v.x, v.y, v.z);
    BlochVector::new(w.x, w.y, w.z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bloch_density_round_trip(v in ball_vector()) {
        let back = density_to_bloch(&bloch_to_density(&v).unwrap()).unwrap();
        prop_assert!((back - v).norm() < 1e-12);
    }

    #[test]
    fn density_bloch_round_trip(v in ball_vector()) {
        let rho = bloch_to_density(&v).unwrap();
        // rebuild through the validating constructor to exercise both directions
        let [a, b, c, d] = rho.entries();
        let rho = DensityMatrix2::new(a, b, c, d).unwrap();
        let again = bloch_to_density(&density_to_bloch(&rho).unwrap()).unwrap();
        prop_assert!(again.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn fidelity_symmetric_and_bounded(v1 in ball_vector(), v2 in ball_vector()) {
        let (r1, r2) = (bloch_to_density(&v1).unwrap(), bloch_to_density(&v2).unwrap());
        let f12 = fidelity(&r1, &r2).unwrap();
        let f21 = fidelity(&r2, &r1).unwrap();
        prop_assert!((f12 - f21).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&f12));
    }

    #[test]
    fn geodesic_rotation_invariant(
        v1 in nonzero_vector(), v2 in nonzero_vector(),
        axis in sphere_vector(), angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let rot = Rotation3::from_axis_angle(
            &Unit::new_normalize(Vector3::new(axis.x, axis.y, axis.z)), angle);
        let d = geodesic_distance(&v1, &v2).unwrap();
        let dr = geodesic_distance(&rotate(&rot, &v1), &rotate(&rot, &v2)).unwrap();
        // arccos loses precision near 0 and pi; compare cosines there
        prop_assert!((d - dr).abs() < 1e-10 || (d.cos() - dr.cos()).abs() < 1e-14);
    }

    #[test]
    fn geodesic_scale_invariant(v1 in nonzero_vector(), v2 in nonzero_vector(), s in 1e-3f64..1e3) {
        let d = geodesic_distance(&v1, &v2).unwrap();
        let ds = geodesic_distance(&v1.scale(s), &v2).unwrap();
        prop_assert!((d - ds).abs() < 1e-10 || (d.cos() - ds.cos()).abs() < 1e-14);
    }

    #[test]
    fn extrapolation_preserves_direction(v in nonzero_vector()) {
        let r = extrapolate_to_sphere(&v);
        prop_assert!(!r.degenerate);
        prop_assert!(r.t > 0.0);
        prop_assert!((r.point.norm() - 1.0).abs() < 1e-12);
        prop_assert!(r.point.cross(&v).norm() < 1e-12);
    }

    #[test]
    fn pure_state_fidelity_matches_geodesic(u1 in sphere_vector(), u2 in sphere_vector()) {
        let f = fidelity(&bloch_to_density(&u1).unwrap(), &bloch_to_density(&u2).unwrap()).unwrap();
        let d = geodesic_distance(&u1, &u2).unwrap();
        let c = (d / 2.0).cos();
        prop_assert!((f - c * c).abs() < 1e-10);
    }
}

#[test]
fn closed_form_fidelity_matches_definition() {
    // fixed-seed scan over random mixed-state pairs
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (ball_vector(), ball_vector());
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (v1, v2) = strat.new_tree(&mut runner).unwrap().current();
        let (r1, r2) = (
            bloch_to_density(&v1).unwrap(),
            bloch_to_density(&v2).unwrap(),
        );
        let diff = (fidelity(&r1, &r2).unwrap() - definitional_fidelity(&r1, &r2)).abs();
        worst = worst.max(diff);
    }
    assert!(worst < 1e-10, "worst deviation {worst:e}");
}

#[test]
fn definitional_oracle_sanity() {
    let z = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
    let mixed = bloch_to_density(&BlochVector::ORIGIN).unwrap();
    assert!((definitional_fidelity(&z, &mixed) - 0.5).abs() < 1e-12);
    assert!((definitional_fidelity(&mixed, &mixed) - 1.0).abs() < 1e-12);
}
