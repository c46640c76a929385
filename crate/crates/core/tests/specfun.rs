use dunkl_pauli::specfun::{jacobi, laguerre, log_gamma, JacobiParams};
use dunkl_pauli::verify::jacobi_hypergeometric;
use proptest::prelude::*;
use twofloat::TwoFloat;

/// `Σ_k (-1)^k C(n+α, n-k) x^k / k!` in double-double arithmetic, so the
/// alternating sum keeps ~30 digits even where it cancels heavily.
fn laguerre_series_dd(n: u32, alpha: f64, x: f64) -> f64 {
    let x = TwoFloat::from(x);
    let mut sum = TwoFloat::from(0.0);
    for k in 0..=n {
        let mut term = TwoFloat::from(1.0);
        for j in 1..=n - k {
            term = term * (TwoFloat::from(alpha) + f64::from(k + j)) / f64::from(j);
        }
        for i in 1..=k {
            term = term * x / f64::from(i);
        }
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    f64::from(sum)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn laguerre_recurrence_matches_series(n in 0u32..=12, alpha in -0.9f64..=3.0, x in 0.0f64..=20.0) {
        let v = laguerre(n, alpha, x).unwrap();
        let s = laguerre_series_dd(n, alpha, x);
        prop_assert!((v - s).abs() / s.abs().max(1.0) <= 1e-10, "n={n} alpha={alpha} x={x}: {v} vs {s}");
    }

    #[test]
    fn jacobi_recurrence_matches_hypergeometric(
        n in 0u32..=10, a in -0.9f64..3.0, b in -0.9f64..3.0, x in -1.0f64..=1.0,
    ) {
        let v = jacobi(n, JacobiParams::new(a, b).unwrap(), x);
        let (h, scale) = jacobi_hypergeometric(n, a, b, x);
        prop_assert!((v - h).abs() <= 1e-12 * scale.max(1.0), "{v} vs {h}");
    }

    #[test]
    fn jacobi_reflection_symmetry(n in 0u32..=10, a in -0.9f64..3.0, b in -0.9f64..3.0, x in -3.0f64..=3.0) {
        let p = JacobiParams::new(a, b).unwrap();
        let lhs = jacobi(n, p, -x);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * jacobi(n, p.swapped(), x);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn laguerre_satisfies_its_ode(n in 0u32..=12, alpha in -0.9f64..=3.0, x in 0.01f64..=20.0) {
        // y' = -L_{n-1}^{α+1}, y'' = L_{n-2}^{α+2}
        let y = laguerre(n, alpha, x).unwrap();
        let dy = if n >= 1 { -laguerre(n - 1, alpha + 1.0, x).unwrap() } else { 0.0 };
        let d2y = if n >= 2 { laguerre(n - 2, alpha + 2.0, x).unwrap() } else { 0.0 };
        let terms = [x * d2y, (alpha + 1.0 - x) * dy, f64::from(n) * y];
        let residual: f64 = terms.iter().sum();
        let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max).max(1.0);
        prop_assert!(residual.abs() / scale <= 1e-8);
    }

    #[test]
    fn log_gamma_functional_equation(x in 0.5f64..=100.0) {
        let d = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap() - x.ln();
        prop_assert!(d.abs() <= 1e-12, "x={x}: {d:e}");
    }
}

#[test]
fn log_gamma_reflection_at_half() {
    // Γ(1/2)² = π
    let v = 2.0 * log_gamma(0.5).unwrap();
    assert!((v - std::f64::consts::PI.ln()).abs() < 1e-15);
}

#[test]
fn laguerre_rejects_alpha_at_or_below_minus_one() {
    assert!(laguerre(2, -1.0, 0.5).is_err());
    assert!(laguerre(2, -1.5, 0.5).is_err());
}
