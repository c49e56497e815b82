//! Property tests for the quadrature and persistence layers.

use cdasym_core::field::{Field, Frame};
use cdasym_core::grid::Grid1D;
use cdasym_core::quadrature::{lp_norm, trapezoid_integral, Exponent};
use proptest::prelude::*;

fn grid(n: usize) -> Grid1D<f64> {
    Grid1D::new(-5.0, 5.0, n).unwrap()
}

fn field(values: Vec<f64>) -> Field<f64> {
    let g = grid(values.len());
    Field::new(g, values, 0.0, Frame::Physical).unwrap()
}

fn sample_values() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-100.0f64..100.0, 16..64)
}

proptest! {
    #[test]
    fn lp_norm_is_monotone_under_pointwise_domination(
        base in sample_values(),
        shrink in proptest::collection::vec(0.0f64..1.0, 64),
        p in prop_oneof![Just(Exponent::ONE), Just(Exponent::TWO),
                         Just(Exponent::Finite(3.5)), Just(Exponent::INF)],
    ) {
        // |u| <= |v| nodewise implies ||u||_p <= ||v||_p
        let v = field(base.clone());
        let u = field(base.iter().zip(&shrink).map(|(&b, &s)| b * s).collect());
        let nu = lp_norm(&u, p).unwrap();
        let nv = lp_norm(&v, p).unwrap();
        prop_assert!(nu <= nv * (1.0 + 1e-12), "{nu} > {nv} for {p:?}");
    }

    #[test]
    fn trapezoid_is_linear(
        u in sample_values(),
        w in sample_values(),
        alpha in -10.0f64..10.0,
        beta in -10.0f64..10.0,
    ) {
        let n = u.len().min(w.len());
        let fu = field(u[..n].to_vec());
        let fw = field(w[..n].to_vec());
        let combo = field(
            fu.values().iter().zip(fw.values()).map(|(&a, &b)| alpha * a + beta * b).collect(),
        );
        let lhs = trapezoid_integral(&combo).unwrap();
        let rhs = alpha * trapezoid_integral(&fu).unwrap() + beta * trapezoid_integral(&fw).unwrap();
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn field_csv_round_trip_is_bit_exact(values in sample_values()) {
        let f = field(values);
        let dir = std::env::temp_dir().join(format!("cdasym-prop-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.csv");
        cdasym_core::io::write_field_csv(&path, &f).unwrap();
        let (_, us) = cdasym_core::io::read_field_csv::<f64>(&path).unwrap();
        prop_assert_eq!(us, f.values().to_vec());
        std::fs::remove_file(&path).ok();
    }
}

/// The numerics are generic over the scalar; make sure the f32 instantiation
/// stays alive even though production runs in f64.
#[test]
fn f32_instantiation_works() {
    let g = Grid1D::<f32>::symmetric(20.0, 257).unwrap();
    let kernel = cdasym_core::exact::heat_kernel_field(&g, 1.0).unwrap();
    let mass = trapezoid_integral(&kernel).unwrap();
    assert!((mass - 1.0).abs() < 1e-5, "f32 kernel mass {mass}");
    let sup = lp_norm(&kernel, Exponent::INF).unwrap();
    assert!((sup - 0.282_094_8).abs() < 1e-6);
}
